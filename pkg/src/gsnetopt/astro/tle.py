"""Two-line element set parsing and validation."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone

from .timebase import EpochUtc

log = logging.getLogger(__name__)

#: Gravitational parameter matched to the propagation constants, km^3/s^2.
MU_EARTH_KM3 = 398600.8


class TleError(ValueError):
    """A TLE line or line pair failed validation."""


@dataclass(frozen=True, slots=True)
class TleRecord:
    """One parsed two-line element set.

    Angles are degrees, mean motion is revolutions per day, and ``bstar``
    is in inverse Earth radii, exactly as encoded in the element set.
    The raw lines are retained so the record can be re-serialized.
    """

    norad_id: int
    epoch: EpochUtc
    mean_motion: float
    eccentricity: float
    inclination: float
    raan: float
    arg_perigee: float
    mean_anomaly: float
    bstar: float
    ndot: float = 0.0
    nddot: float = 0.0
    name: str = ""
    line1: str = ""
    line2: str = ""

    @property
    def mean_motion_rad_s(self) -> float:
        return self.mean_motion * 2.0 * math.pi / 86400.0

    @property
    def semi_major_axis_m(self) -> float:
        """Semi-major axis recovered from the mean motion, metres."""
        n = self.mean_motion_rad_s
        return (MU_EARTH_KM3 * 1e9 / (n * n)) ** (1.0 / 3.0)

    @property
    def mean_altitude_m(self) -> float:
        return self.semi_major_axis_m - 6378137.0

    @property
    def period_minutes(self) -> float:
        return 1440.0 / self.mean_motion


@dataclass(slots=True)
class TleDiagnostic:
    """Reason a candidate record was skipped during catalog parsing."""

    line_number: int
    reason: str
    name: str = ""


def tle_checksum(line: str) -> int:
    """Mod-10 checksum over the first 68 columns: digits count their
    value, each minus sign counts 1."""
    total = 0
    for ch in line[:68]:
        if ch.isdigit():
            total += int(ch)
        elif ch == "-":
            total += 1
    return total % 10


def _check_line(line: str, expected_first: str) -> None:
    if len(line) < 69:
        raise TleError(f"line shorter than 69 columns ({len(line)})")
    if line[0] != expected_first:
        raise TleError(f"expected line to start with {expected_first!r}")
    if not line[68].isdigit():
        raise TleError("checksum column is not a digit")
    if int(line[68]) != tle_checksum(line):
        raise TleError(
            f"checksum mismatch: stated {line[68]}, computed {tle_checksum(line)}")


def _parse_epoch(field_text: str) -> EpochUtc:
    yy = int(field_text[:2])
    year = 2000 + yy if yy < 57 else 1900 + yy
    day_of_year = float(field_text[2:])
    base = datetime(year, 1, 1, tzinfo=timezone.utc)
    return EpochUtc.from_datetime(base + timedelta(days=day_of_year - 1.0))


def _parse_implied_decimal(field_text: str) -> float:
    """Parse the TLE exponent notation, e.g. `` 28098-4`` -> 0.28098e-4."""
    text = field_text.strip()
    if not text or text in {"00000-0", "00000+0", "+00000-0", "-00000-0"}:
        return 0.0
    sign = 1.0
    if text[0] in "+-":
        if text[0] == "-":
            sign = -1.0
        text = text[1:]
    mantissa_str, exp_str = text[:-2], text[-2:]
    return sign * float("0." + mantissa_str) * 10.0 ** int(exp_str)


def parse_tle_pair(line1: str, line2: str, name: str = "") -> TleRecord:
    """Parse and validate a single two-line element set."""
    _check_line(line1, "1")
    _check_line(line2, "2")
    norad1 = int(line1[2:7])
    norad2 = int(line2[2:7])
    if norad1 != norad2:
        raise TleError(f"catalog numbers differ between lines ({norad1} vs {norad2})")

    epoch = _parse_epoch(line1[18:32])
    ndot = float(line1[33:43])
    nddot = _parse_implied_decimal(line1[44:52])
    bstar = _parse_implied_decimal(line1[53:61])

    inclination = float(line2[8:16])
    raan = float(line2[17:25])
    eccentricity = float("0." + line2[26:33].strip())
    arg_perigee = float(line2[34:42])
    mean_anomaly = float(line2[43:51])
    mean_motion = float(line2[52:63])

    if not 0.0 <= eccentricity < 1.0:
        raise TleError(f"eccentricity {eccentricity} outside [0, 1)")
    if not 0.0 <= inclination <= 180.0:
        raise TleError(f"inclination {inclination} outside [0, 180]")
    for label, value in (("raan", raan), ("arg_perigee", arg_perigee),
                         ("mean_anomaly", mean_anomaly)):
        if not 0.0 <= value < 360.0:
            raise TleError(f"{label} {value} outside [0, 360)")
    if mean_motion <= 0.0:
        raise TleError(f"mean motion {mean_motion} not positive")

    record = TleRecord(
        norad_id=norad1, epoch=epoch, mean_motion=mean_motion,
        eccentricity=eccentricity, inclination=inclination, raan=raan,
        arg_perigee=arg_perigee, mean_anomaly=mean_anomaly, bstar=bstar,
        ndot=ndot, nddot=nddot, name=name.strip(),
        line1=line1.rstrip("\n"), line2=line2.rstrip("\n"),
    )
    if not math.isfinite(record.semi_major_axis_m) or record.semi_major_axis_m <= 0:
        raise TleError("derived semi-major axis not positive and finite")
    return record


def parse_tle_catalog(text: str, diagnostics: list[TleDiagnostic] | None = None
                      ) -> list[TleRecord]:
    """Parse a multi-record TLE file.

    Accepts both bare two-line and named three-line element sets, in any
    mixture.  Records that fail checksum or field-range validation are
    skipped; a diagnostic is logged and, when a ``diagnostics`` list is
    supplied, appended to it.  An empty input yields an empty list.
    """
    records: list[TleRecord] = []
    pending_name = ""
    pending_line1: str | None = None
    pending_line1_no = 0

    def report(line_no: int, reason: str, name: str) -> None:
        log.warning("skipping TLE record near line %d: %s", line_no, reason)
        if diagnostics is not None:
            diagnostics.append(TleDiagnostic(line_no, reason, name))

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip():
            continue
        if line.startswith("1 ") and pending_line1 is None:
            pending_line1 = line
            pending_line1_no = line_no
        elif line.startswith("2 ") and pending_line1 is not None:
            try:
                records.append(parse_tle_pair(pending_line1, line, pending_name))
            except TleError as exc:
                report(pending_line1_no, str(exc), pending_name)
            pending_name = ""
            pending_line1 = None
        elif line.startswith(("1 ", "2 ")):
            report(line_no, "orphan element line", pending_name)
            pending_name = ""
            pending_line1 = None
            if line.startswith("1 "):
                pending_line1 = line
                pending_line1_no = line_no
        else:
            if pending_line1 is not None:
                report(pending_line1_no, "name line interrupts element pair",
                       pending_name)
                pending_line1 = None
            pending_name = line
    if pending_line1 is not None:
        report(pending_line1_no, "dangling first line at end of input", pending_name)
    return records
