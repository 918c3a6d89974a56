"""Study harness: provider-subset baselines, surrogate-window stability
statistics, and mission metrics recomputed from solved assignments.

Baselines mirror standard operational practice: restrict the scenario
to every provider subset of size k (1 or 2), re-solve the same problem
variant, and normalize each subset optimum by the full-network optimum.
"""
from __future__ import annotations

import csv
import itertools
import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from .contacts import ContactWindow, find_contacts
from .formulation import build_model, scale_factors
from .model import Satellite, Scenario, sample_catalog_satellites
from .solver import MissionMetrics, Solution, SolveLimits, solve

log = logging.getLogger(__name__)

#: Simulation-window lengths (days) used by the stability study.
DEFAULT_STUDY_DURATIONS = (1, 2, 3, 5, 7, 10, 20, 30, 50, 60, 90, 100, 180)


@dataclass(frozen=True, slots=True)
class BaselineResult:
    provider_subset: tuple[int, ...]
    solution: Solution | None
    normalized_objective: float | None

    @property
    def feasible(self) -> bool:
        return (self.solution is not None
                and self.solution.certificate.status in
                ("Optimal", "FeasibleWithGap"))


@dataclass(frozen=True, slots=True)
class BaselineStudy:
    subset_size: int
    results: tuple[BaselineResult, ...]
    best: BaselineResult | None      # best feasible subset, objective-wise


@dataclass(frozen=True, slots=True)
class WindowStats:
    window_days: int
    mean_gap: float
    mean_contact_duration: float
    mean_contacts_per_day: float
    sample_size: int


def restrict_scenario(scenario: Scenario, provider_ids) -> Scenario:
    """Scenario filtered to a provider subset (stations follow)."""
    keep = frozenset(provider_ids)
    return replace(
        scenario,
        providers=tuple(p for p in scenario.providers if p.id in keep),
        stations=tuple(s for s in scenario.stations if s.provider_id in keep))


def run_baselines(scenario: Scenario, contacts, k: int,
                  full_solution: Solution,
                  limits: SolveLimits | None = None) -> BaselineStudy:
    """Solve the restricted problem for every provider subset of size k.

    The restriction happens before model build (contacts and stations
    are filtered to the subset), keeping subset models small.  Results
    are normalized by the full-network optimum; an infeasible subset is
    a valid outcome and is recorded as such.
    """
    if k not in (1, 2):
        raise ValueError("baseline subset size must be 1 or 2")
    full_obj = full_solution.certificate.best_objective
    results = []
    provider_ids = sorted(p.id for p in scenario.providers)
    for subset in itertools.combinations(provider_ids, k):
        sub_scenario = restrict_scenario(scenario, subset)
        sub_contacts = _reindex(
            [w for w in contacts if w.provider_id in subset])
        model = build_model(sub_scenario, sub_contacts)
        solution = solve(model, limits)
        if solution.certificate.status in ("Optimal", "FeasibleWithGap") \
                and full_obj not in (None, 0.0):
            normalized = solution.certificate.best_objective / full_obj
        else:
            normalized = None
        results.append(BaselineResult(subset, solution, normalized))

    feasible = [r for r in results if r.feasible]
    best = None
    if feasible:
        sense = scenario.config.objective
        key = (lambda r: r.solution.certificate.best_objective)
        best = (min if sense == "min_cost" or sense == "min_max_gap" else max)(
            feasible, key=key)
    return BaselineStudy(subset_size=k, results=tuple(results), best=best)


def _reindex(windows) -> list[ContactWindow]:
    """Re-number a filtered contact list (models expect dense ids)."""
    ordered = sorted(windows,
                     key=lambda w: (w.satellite_id, w.start.seconds, w.station_id))
    return [replace(w, id=k) for k, w in enumerate(ordered)]


def satellite_gap_stats(windows, sim_start, sim_end):
    """Per-satellite gap/duration statistics across all stations.

    Contacts are merged per satellite and sorted by start; consecutive
    differences clipped at zero (overlaps count as zero gap) form the
    gap samples.  Boundary gaps against the window edges are returned
    separately.
    """
    by_sat: dict[int, list[ContactWindow]] = {}
    for w in windows:
        by_sat.setdefault(w.satellite_id, []).append(w)
    stats = {}
    for sat_id, group in sorted(by_sat.items()):
        group.sort(key=lambda w: (w.start.seconds, w.id))
        gaps = []
        max_end = group[0].end.seconds
        for prev, nxt in zip(group, group[1:]):
            max_end = max(max_end, prev.end.seconds)
            gaps.append(max(0.0, nxt.start.seconds - max_end))
        start_gap = group[0].start.seconds - sim_start.seconds
        end_gap = sim_end.seconds - max(w.end.seconds for w in group)
        stats[sat_id] = {
            "gaps": gaps,
            "durations": [w.duration for w in group],
            "count": len(group),
            "start_gap": max(0.0, start_gap),
            "end_gap": max(0.0, end_gap),
        }
    return stats


def window_stability_study(catalog_records, stations, durations=None,
                           sample=20, seed=0, start=None,
                           min_elevation=10.0, coarse_step=60.0,
                           model="sgp4") -> list[WindowStats]:
    """Contact statistics versus simulation-window length.

    Samples ``sample`` catalog satellites in the experiment altitude
    band, computes their contacts against ``stations`` over the longest
    requested duration, then derives every shorter duration by clipping
    that window set (identical geometry, far less propagation).
    Satellites with fewer than two contacts in a window contribute no
    gap sample but still count toward duration/rate statistics.
    """
    durations = sorted(set(int(d) for d in (durations or DEFAULT_STUDY_DURATIONS)))
    sats = sample_catalog_satellites(catalog_records, sample, seed)
    if start is None:
        start = max(s.tle.epoch for s in sats)
    longest = durations[-1]
    horizon = (start, start + longest * 86400.0)
    all_windows = find_contacts(sats, stations, horizon,
                                min_elevation=min_elevation,
                                coarse_step=coarse_step, model=model)
    out = []
    for days in durations:
        cutoff = start + days * 86400.0
        clipped = []
        for w in all_windows:
            if w.start.seconds >= cutoff.seconds:
                continue
            if w.end.seconds <= cutoff.seconds:
                clipped.append(w)
            else:
                clipped.append(replace(
                    w, end=cutoff, duration=cutoff.seconds - w.start.seconds))
        stats = satellite_gap_stats(clipped, start, cutoff)
        per_sat_gap = [float(np.mean(s["gaps"]))
                       for s in stats.values() if s["gaps"]]
        per_sat_dur = [float(np.mean(s["durations"])) for s in stats.values()]
        per_sat_rate = [s["count"] / days for s in stats.values()]
        out.append(WindowStats(
            window_days=days,
            mean_gap=float(np.mean(per_sat_gap)) if per_sat_gap else math.nan,
            mean_contact_duration=float(np.mean(per_sat_dur)) if per_sat_dur else math.nan,
            mean_contacts_per_day=float(np.mean(per_sat_rate)) if per_sat_rate else 0.0,
            sample_size=len(sats)))
    return out


def compute_metrics(scenario: Scenario, contacts, solution: Solution) -> MissionMetrics:
    """Recompute mission metrics from the assignment and the scenario
    constants; nothing is read back from solver internals."""
    factors = scale_factors(scenario.sim_duration, scenario.opt_duration)
    station_by_id = {s.id: s for s in scenario.stations}
    provider_by_id = {p.id: p for p in scenario.providers}
    selected = [w for w in contacts if w.id in set(solution.selected_contacts)]

    contact_cost = 0.0
    data_bits = 0.0
    monthly_contact_cost = 0.0
    for w in selected:
        station = station_by_id[w.station_id]
        op_cost = station.per_minute_cost * w.duration / 60.0 + station.per_pass_cost
        contact_cost += op_cost
        monthly_contact_cost += op_cost
        data_bits += w.data_rate * w.duration

    location_cost = 0.0
    monthly_location_cost = 0.0
    for sid in solution.selected_locations:
        station = station_by_id[sid]
        location_cost += station.setup_cost \
            + factors.months_in_mission * station.monthly_cost
        monthly_location_cost += station.monthly_cost
    provider_cost = sum(provider_by_id[pid].integration_cost
                        for pid in solution.selected_providers)
    license_cost = sum(
        station_by_id[sta_id].license_cost
        for (sat_id, sta_id) in {(w.satellite_id, w.station_id) for w in selected})

    total_cost = (provider_cost + location_cost + license_cost
                  + factors.mission_over_sim * contact_cost)
    monthly_cost = (factors.per_month_from_sim * monthly_contact_cost
                    + monthly_location_cost)

    gap_stats = satellite_gap_stats(selected, scenario.sim_start,
                                    scenario.sim_end) if selected else {}
    max_gap_by_sat = {}
    boundary = {}
    for sat in scenario.satellites:
        s = gap_stats.get(sat.id)
        if s is None:
            max_gap_by_sat[sat.id] = scenario.sim_duration
            boundary[sat.id] = (scenario.sim_duration, scenario.sim_duration)
        else:
            max_gap_by_sat[sat.id] = max(s["gaps"]) if s["gaps"] else 0.0
            boundary[sat.id] = (s["start_gap"], s["end_gap"])
    overall = max(max_gap_by_sat.values()) if max_gap_by_sat else 0.0

    sim_days = scenario.sim_duration / 86400.0
    return MissionMetrics(
        total_mission_cost=total_cost,
        total_data_downlink=factors.mission_over_sim * data_bits,
        max_gap_overall=overall,
        max_gap_by_satellite=max_gap_by_sat,
        boundary_gap_by_satellite=boundary,
        monthly_operational_cost=monthly_cost,
        contacts_per_day=len(selected) / sim_days)


def write_window_stats_csv(path, stats) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["window_days", "mean_gap_s", "mean_contact_s",
                         "contacts_per_day", "sample_size"])
        for s in stats:
            writer.writerow([s.window_days, repr(s.mean_gap),
                             repr(s.mean_contact_duration),
                             repr(s.mean_contacts_per_day), s.sample_size])


def write_baselines_csv(path, studies) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["subset", "status", "objective", "normalized"])
        for study in studies:
            for r in study.results:
                cert = r.solution.certificate if r.solution else None
                writer.writerow([
                    "+".join(str(p) for p in r.provider_subset),
                    cert.status if cert else "NotSolved",
                    "" if not r.feasible else repr(cert.best_objective),
                    "" if r.normalized_objective is None
                    else repr(r.normalized_objective)])
