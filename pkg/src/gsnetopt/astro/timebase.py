"""UTC epochs and Greenwich sidereal time.

All epochs are stored as real seconds relative to J2000.0 (2000-01-01
12:00:00 UTC).  Leap seconds are ignored: within a simulation window of
days to months the accumulated error is below one second, which is far
below contact-boundary tolerances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

import numpy as np

#: Julian date of the J2000.0 reference epoch.
JD_J2000 = 2451545.0

_J2000_DATETIME = datetime(2000, 1, 1, 12, 0, 0, tzinfo=timezone.utc)

#: Mean sidereal day in SI seconds.
SIDEREAL_DAY_S = 86164.0905

#: Earth rotation rate used for ECEF velocity transforms, rad/s.
OMEGA_EARTH = 7.292115146706979e-5


@dataclass(frozen=True, order=True, slots=True)
class EpochUtc:
    """A UTC instant, stored as seconds since J2000.0.

    Ordering and arithmetic operate directly on the underlying float,
    so comparisons are consistent with calendar UTC order.
    """

    seconds_since_reference: float

    @property
    def seconds(self) -> float:
        return self.seconds_since_reference

    @classmethod
    def from_datetime(cls, dt: datetime) -> "EpochUtc":
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return cls((dt - _J2000_DATETIME).total_seconds())

    @classmethod
    def from_iso(cls, text: str) -> "EpochUtc":
        """Parse an ISO-8601 timestamp (a trailing ``Z`` is accepted)."""
        cleaned = text.strip()
        if cleaned.endswith(("Z", "z")):
            cleaned = cleaned[:-1] + "+00:00"
        dt = datetime.fromisoformat(cleaned)
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return cls.from_datetime(dt)

    def to_datetime(self) -> datetime:
        return _J2000_DATETIME + timedelta(seconds=self.seconds_since_reference)

    def to_iso(self) -> str:
        """Format as ``YYYY-MM-DDTHH:MM:SS.mmmZ`` (millisecond precision)."""
        dt = self.to_datetime()
        # Round to the nearest millisecond before formatting so that the
        # text form round-trips losslessly at 1 ms.
        micros = dt.microsecond
        ms = round(micros / 1000.0)
        dt = dt.replace(microsecond=0) + timedelta(milliseconds=ms)
        return dt.strftime("%Y-%m-%dT%H:%M:%S.") + f"{dt.microsecond // 1000:03d}Z"

    def julian_date(self) -> float:
        return JD_J2000 + self.seconds_since_reference / 86400.0

    def __add__(self, seconds: float) -> "EpochUtc":
        return EpochUtc(self.seconds_since_reference + float(seconds))

    def __radd__(self, seconds: float) -> "EpochUtc":
        return self.__add__(seconds)

    def __sub__(self, other):
        if isinstance(other, EpochUtc):
            return self.seconds_since_reference - other.seconds_since_reference
        return EpochUtc(self.seconds_since_reference - float(other))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"EpochUtc({self.to_iso()})"


def gmst_rad(seconds_since_j2000) -> np.ndarray | float:
    """Greenwich mean sidereal time, radians in [0, 2*pi).

    Uses the classical 1982 polynomial in Julian centuries of UT1; UTC is
    taken as UT1 (sub-second error, irrelevant at a 10 deg elevation mask).
    Accepts a scalar or an ndarray of epoch offsets in seconds.
    """
    t = np.asarray(seconds_since_j2000, dtype=float) / (86400.0 * 36525.0)
    gmst_sec = (
        67310.54841
        + (876600.0 * 3600.0 + 8640184.812866) * t
        + 0.093104 * t * t
        - 6.2e-6 * t * t * t
    )
    theta = np.remainder(gmst_sec * (2.0 * math.pi / 86400.0), 2.0 * math.pi)
    theta = np.where(theta < 0.0, theta + 2.0 * math.pi, theta)
    if np.ndim(seconds_since_j2000) == 0:
        return float(theta)
    return theta
