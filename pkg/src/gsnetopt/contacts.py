"""Contact-window computation between satellites and ground stations.

For every satellite/station pair the finder samples elevation on a
coarse grid over the simulation window, then refines each rise and set
boundary by bisection.  Any maximal above-mask interval whose true
duration exceeds twice the coarse step is guaranteed to be found;
windows are clipped to the simulation interval and identified
deterministically (sorted by satellite, start time, station).
"""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .astro import (
    EARTH_RADIUS_MEAN,
    GeodeticPoint,
    EpochUtc,
    PropagationError,
    enu_basis,
    geodetic_to_ecef,
    make_propagator,
)

log = logging.getLogger(__name__)

CONTACT_CSV_HEADER = ("id,satellite,provider,station,start_iso,end_iso,"
                      "duration_s,data_rate_bps,max_elevation_deg")

#: Default coarse sampling step, seconds.  The shortest operationally
#: relevant pass is bounded below by the 180 s minimum-duration filter,
#: so 30 s sampling cannot skip a relevant pass.
DEFAULT_COARSE_STEP_S = 30.0

#: Bisection stops once the boundary bracket is this narrow, seconds.
BOUNDARY_REFINE_TOL_S = 0.2


@dataclass(frozen=True, slots=True)
class ContactWindow:
    """One visibility pass: the atomic unit of the selection problem."""

    id: int
    satellite_id: int
    station_id: int
    provider_id: int
    start: EpochUtc
    end: EpochUtc
    duration: float
    data_rate: float
    max_elevation: float

    def __post_init__(self):
        if self.end.seconds <= self.start.seconds:
            raise ValueError("contact window must have positive duration")
        if self.duration != self.end.seconds - self.start.seconds:
            raise ValueError("duration field inconsistent with start/end")

    def overlaps(self, other: "ContactWindow") -> bool:
        """Closed-interval overlap (touching endpoints count)."""
        return (self.start.seconds <= other.end.seconds
                and other.start.seconds <= self.end.seconds)


def elevation(sat_ecef_m, station: GeodeticPoint) -> float:
    """Elevation of a satellite above a station's geodetic horizon plane,
    degrees in [-90, 90].  Raises on coincident positions."""
    sta = geodetic_to_ecef(station)
    up = enu_basis(station)[2]
    out = kernels.elevation_series(
        np.ascontiguousarray(np.atleast_2d(np.asarray(sat_ecef_m, dtype=float))),
        sta, np.ascontiguousarray(up))
    if math.isnan(out[0]):
        raise ValueError("satellite position coincides with the station")
    return float(out[0])


def coverage_cone_radius(altitude_m: float, min_elevation_deg: float) -> float:
    """Earth-central angle of the visibility cone, radians.

    The ground footprint within which a satellite at ``altitude_m``
    clears the elevation mask at a station.
    """
    if altitude_m <= 0.0:
        return 0.0
    eps = math.radians(min_elevation_deg)
    ratio = EARTH_RADIUS_MEAN / (EARTH_RADIUS_MEAN + altitude_m)
    return math.acos(min(1.0, ratio * math.cos(eps))) - eps


def _true_runs(mask: np.ndarray):
    """Start/end index pairs (inclusive) of maximal True runs."""
    if not mask.any():
        return []
    idx = np.flatnonzero(mask)
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate(([idx[0]], idx[breaks + 1]))
    ends = np.concatenate((idx[breaks], [idx[-1]]))
    return list(zip(starts.tolist(), ends.tolist()))


def _refine_crossings(prop, lo, hi, rising, sta_ecef, sta_up, sin_mask,
                      tol=BOUNDARY_REFINE_TOL_S):
    """Bisect many elevation-mask crossings in lockstep.

    ``lo``/``hi`` bracket each crossing (below-mask side and above-mask
    side depend on ``rising``); all arrays share one length.  Returns
    the bracket midpoints once every bracket is narrower than ``tol``.
    """
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    rising = np.asarray(rising, dtype=bool)
    if lo.size == 0:
        return lo
    span = float(np.max(hi - lo))
    n_iter = max(1, math.ceil(math.log2(max(span, tol) / tol)))
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        pos, _err = prop.propagate_grid(mid)
        delta = pos - sta_ecef
        rng = np.sqrt(np.einsum("ij,ij->i", delta, delta))
        sin_el = np.einsum("ij,ij->i", delta, sta_up) / rng
        above = sin_el >= sin_mask
        # Rising: keep the above sample as the upper end; setting: the
        # above sample is the lower end.
        take_hi = above == rising
        hi = np.where(take_hi, mid, hi)
        lo = np.where(take_hi, lo, mid)
    return 0.5 * (lo + hi)


def _station_visible_band(station_lat_deg: float, incl_deg: float,
                          apogee_alt_m: float, min_elevation_deg: float) -> bool:
    """Cheap latitude test: can this orbit ever clear the mask here?"""
    incl_eff = min(incl_deg, 180.0 - incl_deg)
    cone_deg = math.degrees(
        coverage_cone_radius(max(apogee_alt_m, 1.0), min_elevation_deg))
    return abs(station_lat_deg) <= incl_eff + cone_deg + 1.0


def find_contacts(satellites, stations, window, min_elevation=10.0,
                  coarse_step=DEFAULT_COARSE_STEP_S, model="sgp4",
                  prefilter=True, diagnostics=None) -> list[ContactWindow]:
    """Compute all contact windows over ``window = (start, end)``.

    Satellites whose propagation fails anywhere in the window are
    excluded with a diagnostic; the remaining satellites are unaffected.
    Windows are clipped to the simulation interval, zero-length ones are
    dropped, and ids are assigned after sorting by (satellite id, start,
    station id) so the numbering is reproducible.
    """
    t_start, t_end = window
    t0, t1 = t_start.seconds, t_end.seconds
    if coarse_step <= 0.0:
        raise ValueError("coarse_step must be positive")
    if t1 <= t0:
        raise ValueError("simulation window is empty")

    n_steps = int(math.floor((t1 - t0) / coarse_step))
    times = t0 + np.arange(n_steps + 1, dtype=float) * coarse_step
    if times[-1] < t1:
        times = np.append(times, t1)

    sin_mask = math.sin(math.radians(min_elevation))
    sta_ecef = {s.id: geodetic_to_ecef(s.geodetic) for s in stations}
    sta_up = {s.id: np.ascontiguousarray(enu_basis(s.geodetic)[2])
              for s in stations}

    found: list[ContactWindow] = []
    for sat in satellites:
        try:
            prop = make_propagator(sat.tle, model)
        except PropagationError as exc:
            log.warning("excluding satellite %s: %s", sat.id, exc)
            if diagnostics is not None:
                diagnostics.append((sat.id, str(exc)))
            continue
        pos, err = prop.propagate_grid(times)
        if np.any(err != 0):
            bad = int(np.argmax(err != 0))
            msg = (f"propagation failed at {EpochUtc(times[bad]).to_iso()} "
                   f"(code {int(err[bad])})")
            log.warning("excluding satellite %s: %s", sat.id, msg)
            if diagnostics is not None:
                diagnostics.append((sat.id, msg))
            continue

        apogee_alt = sat.tle.semi_major_axis_m * (1.0 + sat.tle.eccentricity) \
            - EARTH_RADIUS_MEAN
        brackets = []   # (lo, hi, rising, station index into arrays)
        pending = []    # (station, run_start_t, run_end_t, needs_rise, needs_set, max_el)
        b_ecef, b_up = [], []
        for station in stations:
            if prefilter and not _station_visible_band(
                    station.geodetic.latitude, sat.tle.inclination,
                    apogee_alt, min_elevation):
                continue
            elev = kernels.elevation_series(pos, sta_ecef[station.id],
                                            sta_up[station.id])
            above = elev >= min_elevation
            for i, j in _true_runs(above):
                max_el = float(np.max(elev[i:j + 1]))
                needs_rise = i > 0
                needs_set = j < len(times) - 1
                rise_idx = set_idx = -1
                if needs_rise:
                    rise_idx = len(brackets)
                    brackets.append((times[i - 1], times[i], True))
                    b_ecef.append(sta_ecef[station.id])
                    b_up.append(sta_up[station.id])
                if needs_set:
                    set_idx = len(brackets)
                    brackets.append((times[j], times[j + 1], False))
                    b_ecef.append(sta_ecef[station.id])
                    b_up.append(sta_up[station.id])
                pending.append((station, rise_idx, set_idx, max_el))

        if brackets:
            arr = np.array([(b[0], b[1]) for b in brackets])
            refined = _refine_crossings(
                prop, arr[:, 0], arr[:, 1],
                np.array([b[2] for b in brackets]),
                np.array(b_ecef), np.array(b_up), sin_mask)
        else:
            refined = np.empty(0)

        for station, rise_idx, set_idx, max_el in pending:
            start_s = refined[rise_idx] if rise_idx >= 0 else t0
            end_s = refined[set_idx] if set_idx >= 0 else t1
            start_s = max(start_s, t0)
            end_s = min(end_s, t1)
            if end_s <= start_s:
                continue
            found.append(ContactWindow(
                id=-1, satellite_id=sat.id, station_id=station.id,
                provider_id=station.provider_id,
                start=EpochUtc(start_s), end=EpochUtc(end_s),
                duration=end_s - start_s,
                data_rate=min(station.data_rate, sat.data_rate),
                max_elevation=max_el))

    found.sort(key=lambda w: (w.satellite_id, w.start.seconds, w.station_id))
    return [ContactWindow(
        id=k, satellite_id=w.satellite_id, station_id=w.station_id,
        provider_id=w.provider_id, start=w.start, end=w.end,
        duration=w.duration, data_rate=w.data_rate,
        max_elevation=w.max_elevation) for k, w in enumerate(found)]


def write_contacts_csv(path, windows, satellite_names, provider_names,
                       station_names) -> None:
    """Write the contacts table; name arguments map ids to labels."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CONTACT_CSV_HEADER.split(","))
        for w in windows:
            writer.writerow([
                w.id,
                satellite_names[w.satellite_id],
                provider_names[w.provider_id],
                station_names[w.station_id],
                w.start.to_iso(),
                w.end.to_iso(),
                repr(w.duration),
                repr(w.data_rate),
                repr(w.max_elevation),
            ])
