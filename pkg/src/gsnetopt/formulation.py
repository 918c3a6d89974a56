"""Integer-program construction for ground-station selection.

A scenario plus its contact set is turned into a solver-independent
model: binary selection variables for contacts, locations, providers,
and per-satellite station licenses; an objective (minimum mission cost,
maximum data downlink, or minimum maximum contact gap); and the enabled
constraint families (activation linking, contact exclusivity,
sliding-window downlink floors, monthly cost cap, and the various
count/fixing side constraints).

Construction is deterministic: a fixed scenario always yields the same
variable ordering, constraints, and coefficients.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace

from .contacts import ContactWindow
from .model import ConstraintConfig, Scenario

#: Average Gregorian month, seconds.
SECONDS_PER_MONTH = 365.25 * 86400.0 / 12.0

KIND_CONTACT = "contact"
KIND_LOCATION = "location"
KIND_PROVIDER = "provider"
KIND_VEHICLE = "vehicle_license"
KIND_GAP_SUCCESSOR = "gap_successor"
KIND_GAP_MAX = "gap_max"

FLAG_HORIZON_TRUNCATED = "gap_successor_horizon_truncated"

#: Human-readable description of each constraint-family tag prefix,
#: recorded as model provenance.
CONSTRAINT_FAMILIES = {
    "link_station": "contact selection activates its station",
    "link_provider": "station selection activates its provider",
    "link_vehicle": "contact selection activates the satellite-station license",
    "excl_station": "one satellite at a time per station antenna",
    "excl_sat": "one station at a time per satellite",
    "sat_data": "per-satellite sliding-window downlink floor",
    "fleet_data": "constellation sliding-window downlink floor",
    "monthly_cost_cap": "monthly operational cost ceiling",
    "gap_succ": "each selected contact names one later selected successor",
    "gap_bound": "successor gap bounded by the maximum-gap variable or limit",
    "gap_sel_i": "successor arc requires its earlier contact",
    "gap_sel_j": "successor arc requires its later contact",
    "provider_cap": "ceiling on the number of selected providers",
    "contact_floor": "per-satellite sliding-window contact count floor",
    "require_provider": "provider fixed into the solution",
    "require_location": "location fixed into the solution",
    "station_count_min": "floor on the number of selected stations",
    "station_count_max": "ceiling on the number of selected stations",
}


class ConfigurationError(ValueError):
    """The constraint configuration cannot produce a valid model."""


@dataclass(frozen=True, slots=True)
class ScaleFactors:
    """Weights that lift simulation-window quantities to mission scale."""

    mission_over_sim: float
    months_in_mission: float
    per_month_from_sim: float


def scale_factors(t_sim_s: float, t_opt_s: float) -> ScaleFactors:
    """Derive the mission-scaling weights from the window durations.

    ``mission_over_sim`` lifts per-simulation sums to the mission;
    ``months_in_mission`` multiplies monthly recurring charges;
    ``per_month_from_sim`` normalizes a simulation-window sum to one
    month of operations.
    """
    if t_sim_s <= 0:
        raise ValueError("simulation duration must be positive")
    if t_opt_s < t_sim_s:
        raise ValueError("mission duration shorter than simulation window")
    return ScaleFactors(
        mission_over_sim=t_opt_s / t_sim_s,
        months_in_mission=t_opt_s / SECONDS_PER_MONTH,
        per_month_from_sim=SECONDS_PER_MONTH / t_sim_s,
    )


@dataclass(frozen=True, slots=True)
class DecisionVar:
    index: int
    kind: str
    integrality: str            # "binary" | "continuous"
    lower: float
    upper: float
    tag: str
    meta: tuple = ()

    @property
    def is_binary(self) -> bool:
        return self.integrality == "binary"


@dataclass(frozen=True, slots=True)
class LinearConstraint:
    """``sum(coeff * var) sense rhs`` with a stable family tag."""

    terms: tuple[tuple[int, float], ...]
    sense: str                  # "<=", ">=", "="
    rhs: float
    tag: str

    def __post_init__(self):
        seen = set()
        for idx, coeff in self.terms:
            if idx in seen:
                raise ValueError(f"duplicate variable {idx} in {self.tag}")
            seen.add(idx)
            if not math.isfinite(coeff):
                raise ValueError(f"non-finite coefficient in {self.tag}")
        if self.sense not in ("<=", ">=", "="):
            raise ValueError(f"bad sense {self.sense!r}")


@dataclass(frozen=True, slots=True)
class IpModel:
    variables: tuple[DecisionVar, ...]
    constraints: tuple[LinearConstraint, ...]
    objective_sense: str        # "min" | "max"
    objective_terms: tuple[tuple[int, float], ...]
    objective_constant: float
    provenance: dict[str, str] = field(default_factory=dict)
    variant: str = ""
    flags: tuple[str, ...] = ()

    def var_by_tag(self, tag: str) -> DecisionVar:
        for v in self.variables:
            if v.tag == tag:
                return v
        raise KeyError(tag)


def _slug(text: str) -> str:
    slug = re.sub(r"[^A-Za-z0-9]+", "_", text.strip()).strip("_").lower()
    return slug or "x"


class _Builder:
    """Accumulates variables/constraints with deterministic ordering."""

    def __init__(self, scenario: Scenario, contacts):
        self.scenario = scenario
        self.contacts = sorted(contacts, key=lambda w: w.id)
        self.variables: list[DecisionVar] = []
        self.constraints: list[LinearConstraint] = []
        self.flags: set[str] = set()
        self.provenance: dict[str, str] = {}

        sc = scenario
        self.station_by_id = {s.id: s for s in sc.stations}
        self.provider_by_id = {p.id: p for p in sc.providers}
        station_token = {}
        for s in sc.stations:
            token = f"{_slug(self.provider_by_id[s.provider_id].name)}_{_slug(s.name)}"
            if token in station_token.values():
                token = f"{token}_{s.id}"
            station_token[s.id] = token
        self.station_token = station_token

        self.by_station: dict[int, list[ContactWindow]] = {}
        self.by_sat: dict[int, list[ContactWindow]] = {}
        self.by_pair: dict[tuple[int, int], list[ContactWindow]] = {}
        for w in self.contacts:
            self.by_station.setdefault(w.station_id, []).append(w)
            self.by_sat.setdefault(w.satellite_id, []).append(w)
            self.by_pair.setdefault((w.satellite_id, w.station_id), []).append(w)

        # Variable layout: contacts, vehicle licenses, locations, providers.
        self.c_var: dict[int, int] = {}
        for w in self.contacts:
            self.c_var[w.id] = self._add_var(
                KIND_CONTACT, f"c{w.id}", meta=("contact", w.id))
        self.v_var: dict[tuple[int, int], int] = {}
        for sat_id, sta_id in sorted(self.by_pair):
            self.v_var[(sat_id, sta_id)] = self._add_var(
                KIND_VEHICLE, f"v_{sat_id}_{station_token[sta_id]}",
                meta=("vehicle", sat_id, sta_id))
        self.l_var: dict[int, int] = {}
        for s in sorted(sc.stations, key=lambda s: s.id):
            self.l_var[s.id] = self._add_var(
                KIND_LOCATION, f"l_{station_token[s.id]}",
                meta=("location", s.id))
        self.p_var: dict[int, int] = {}
        for p in sorted(sc.providers, key=lambda p: p.id):
            self.p_var[p.id] = self._add_var(
                KIND_PROVIDER, f"p_{_slug(p.name)}", meta=("provider", p.id))
        self.gmax_var: int | None = None

    def _add_var(self, kind, tag, *, integrality="binary", lower=0.0,
                 upper=1.0, meta=()) -> int:
        index = len(self.variables)
        self.variables.append(DecisionVar(
            index=index, kind=kind, integrality=integrality,
            lower=lower, upper=upper, tag=tag, meta=meta))
        return index

    def _add_row(self, terms, sense, rhs, tag) -> None:
        self.constraints.append(LinearConstraint(
            terms=tuple(terms), sense=sense, rhs=rhs, tag=tag))
        family = tag.split("[", 1)[0]
        if family in CONSTRAINT_FAMILIES:
            self.provenance.setdefault(family, CONSTRAINT_FAMILIES[family])

    # --- constraint families ------------------------------------------------

    def add_linking(self) -> None:
        """Activation linking: contacts force stations, stations force
        providers, contacts force per-pair licenses.  The big-M weight
        is the exact member count of each group; empty groups get no
        constraint (and pairs with no contacts got no license variable).
        """
        for sta_id in sorted(self.by_station):
            group = self.by_station[sta_id]
            terms = [(self.c_var[w.id], 1.0) for w in group]
            terms.append((self.l_var[sta_id], -float(len(group))))
            self._add_row(terms, "<=", 0.0,
                          f"link_station[{self.station_token[sta_id]}]")
        for p in sorted(self.provider_by_id):
            stations = [s for s in self.scenario.stations if s.provider_id == p]
            if not stations:
                continue
            terms = [(self.l_var[s.id], 1.0) for s in
                     sorted(stations, key=lambda s: s.id)]
            terms.append((self.p_var[p], -float(len(stations))))
            self._add_row(terms, "<=", 0.0,
                          f"link_provider[{_slug(self.provider_by_id[p].name)}]")
        for (sat_id, sta_id) in sorted(self.v_var):
            group = self.by_pair[(sat_id, sta_id)]
            terms = [(self.c_var[w.id], 1.0) for w in group]
            terms.append((self.v_var[(sat_id, sta_id)], -float(len(group))))
            self._add_row(terms, "<=", 0.0,
                          f"link_vehicle[{sat_id}_{self.station_token[sta_id]}]")

    def _overlap_pairs(self, group):
        """Closed-interval overlapping pairs via a sweep over start times."""
        ordered = sorted(group, key=lambda w: (w.start.seconds, w.id))
        for i, wi in enumerate(ordered):
            end_i = wi.end.seconds
            for wj in ordered[i + 1:]:
                if wj.start.seconds > end_i:
                    break
                yield wi, wj

    def add_exclusion(self) -> None:
        """At most one of any two time-overlapping contacts per station
        and per satellite (touching endpoints conflict)."""
        if self.scenario.config.station_exclusion:
            for sta_id in sorted(self.by_station):
                for wi, wj in self._overlap_pairs(self.by_station[sta_id]):
                    self._add_row(
                        [(self.c_var[wi.id], 1.0), (self.c_var[wj.id], 1.0)],
                        "<=", 1.0, f"excl_station[{sta_id}_{wi.id}_{wj.id}]")
        if self.scenario.config.satellite_exclusion:
            for sat_id in sorted(self.by_sat):
                for wi, wj in self._overlap_pairs(self.by_sat[sat_id]):
                    self._add_row(
                        [(self.c_var[wi.id], 1.0), (self.c_var[wj.id], 1.0)],
                        "<=", 1.0, f"excl_sat[{sat_id}_{wi.id}_{wj.id}]")

    def apply_min_duration(self) -> None:
        """Eliminate short contacts by fixing their variables to zero."""
        t_min = self.scenario.config.min_contact_duration_s
        for w in self.contacts:
            if w.duration < t_min:
                idx = self.c_var[w.id]
                self.variables[idx] = replace(self.variables[idx],
                                              lower=0.0, upper=0.0)

    def _window_starts(self):
        t0 = self.scenario.sim_start.seconds
        t_sim = self.scenario.sim_duration
        period = self.scenario.config.period_s
        step = self.scenario.config.step_s
        count = int(math.floor((t_sim - period) / step + 1e-9)) + 1
        return [t0 + k * step for k in range(max(count, 0))], period

    def _window_rows(self, group, coeff_fn, rhs, sense, tag_fn) -> None:
        starts, period = self._window_starts()
        ordered = sorted(group, key=lambda w: (w.start.seconds, w.id))
        for k, w_start in enumerate(starts):
            w_end = w_start + period
            terms = [(self.c_var[w.id], coeff_fn(w)) for w in ordered
                     if w.start.seconds <= w_end and w.end.seconds >= w_start]
            self._add_row(terms, sense, rhs, tag_fn(k))

    def add_min_satellite_data(self) -> None:
        floor = self.scenario.config.min_satellite_data
        for sat in sorted(s.id for s in self.scenario.satellites):
            self._window_rows(
                self.by_sat.get(sat, []),
                lambda w: w.data_rate * w.duration, floor, ">=",
                lambda k: f"sat_data[{sat}_{k}]")

    def add_min_constellation_data(self) -> None:
        floor = self.scenario.config.min_constellation_data
        self._window_rows(
            self.contacts, lambda w: w.data_rate * w.duration, floor, ">=",
            lambda k: f"fleet_data[{k}]")

    def add_min_contacts_per_period(self) -> None:
        floor = float(self.scenario.config.min_contacts_per_period)
        for sat in sorted(s.id for s in self.scenario.satellites):
            self._window_rows(
                self.by_sat.get(sat, []), lambda w: 1.0, floor, ">=",
                lambda k: f"contact_floor[{sat}_{k}]")

    def add_monthly_cost_cap(self) -> None:
        cap = self.scenario.config.max_monthly_cost
        factors = scale_factors(self.scenario.sim_duration,
                                self.scenario.opt_duration)
        terms = []
        for w in self.contacts:
            station = self.station_by_id[w.station_id]
            cost = (station.per_minute_cost * w.duration / 60.0
                    + station.per_pass_cost)
            terms.append((self.c_var[w.id],
                          factors.per_month_from_sim * cost))
        for s in sorted(self.scenario.stations, key=lambda s: s.id):
            terms.append((self.l_var[s.id], s.monthly_cost))
        self._add_row(terms, "<=", cap, "monthly_cost_cap")

    def add_gap_machinery(self, bound_var: int | None,
                          bound_limit: float | None,
                          boundary_gaps: bool = False) -> None:
        """Successor arcs and gap bounds for every satellite.

        Every selected contact except those with an empty successor set
        must name exactly one later selected contact; the time gap of
        each selected arc is bounded by the maximum-gap variable (when
        ``bound_var`` is given) or by a fixed limit.  With
        ``boundary_gaps`` the simulation edges join as virtual always-on
        events, so leading/trailing idle time is bounded too.
        """
        horizon = self.scenario.config.gap_successor_horizon
        t0 = self.scenario.sim_start.seconds
        t1 = self.scenario.sim_end.seconds

        def bound_terms(gap, y_idx):
            if bound_var is not None:
                return [(y_idx, gap), (bound_var, -1.0)], "<=", 0.0
            return [(y_idx, gap)], "<=", float(bound_limit)

        for sat_id in sorted(self.by_sat):
            ordered = sorted(self.by_sat[sat_id],
                             key=lambda w: (w.start.seconds, w.id))
            boundary_arcs = []   # (contact idx or None, gap, tag piece)
            for pos, wi in enumerate(ordered):
                successors = [wj for wj in ordered[pos + 1:]
                              if wj.start.seconds > wi.start.seconds]
                if len(successors) > horizon:
                    successors = successors[:horizon]
                    self.flags.add(FLAG_HORIZON_TRUNCATED)
                succ_terms = []
                for wj in successors:
                    y_idx = self._add_var(
                        KIND_GAP_SUCCESSOR, f"y_{sat_id}_{wi.id}_{wj.id}",
                        meta=("gap_successor", sat_id, wi.id, wj.id))
                    gap = wj.start.seconds - wi.end.seconds
                    terms, sense, rhs = bound_terms(gap, y_idx)
                    self._add_row(terms, sense, rhs,
                                  f"gap_bound[{sat_id}_{wi.id}_{wj.id}]")
                    self._add_row([(y_idx, 1.0), (self.c_var[wi.id], -1.0)],
                                  "<=", 0.0, f"gap_sel_i[{sat_id}_{wi.id}_{wj.id}]")
                    self._add_row([(y_idx, 1.0), (self.c_var[wj.id], -1.0)],
                                  "<=", 0.0, f"gap_sel_j[{sat_id}_{wi.id}_{wj.id}]")
                    succ_terms.append((y_idx, 1.0))
                if boundary_gaps:
                    y_end = self._add_var(
                        KIND_GAP_SUCCESSOR, f"y_{sat_id}_{wi.id}_end",
                        meta=("gap_successor", sat_id, wi.id, -1))
                    gap = t1 - wi.end.seconds
                    terms, sense, rhs = bound_terms(gap, y_end)
                    self._add_row(terms, sense, rhs,
                                  f"gap_bound[{sat_id}_{wi.id}_end]")
                    self._add_row([(y_end, 1.0), (self.c_var[wi.id], -1.0)],
                                  "<=", 0.0, f"gap_sel_i[{sat_id}_{wi.id}_end]")
                    succ_terms.append((y_end, 1.0))
                if succ_terms:
                    succ_terms.append((self.c_var[wi.id], -1.0))
                    self._add_row(succ_terms, "=", 0.0,
                                  f"gap_succ[{sat_id}_{wi.id}]")
            if boundary_gaps:
                start_terms = []
                for wj in ordered:
                    y_idx = self._add_var(
                        KIND_GAP_SUCCESSOR, f"y_{sat_id}_start_{wj.id}",
                        meta=("gap_successor", sat_id, -1, wj.id))
                    gap = wj.start.seconds - t0
                    terms, sense, rhs = bound_terms(gap, y_idx)
                    self._add_row(terms, sense, rhs,
                                  f"gap_bound[{sat_id}_start_{wj.id}]")
                    self._add_row([(y_idx, 1.0), (self.c_var[wj.id], -1.0)],
                                  "<=", 0.0, f"gap_sel_j[{sat_id}_start_{wj.id}]")
                    start_terms.append((y_idx, 1.0))
                y_se = self._add_var(
                    KIND_GAP_SUCCESSOR, f"y_{sat_id}_start_end",
                    meta=("gap_successor", sat_id, -1, -1))
                terms, sense, rhs = bound_terms(t1 - t0, y_se)
                self._add_row(terms, sense, rhs, f"gap_bound[{sat_id}_start_end]")
                start_terms.append((y_se, 1.0))
                self._add_row(start_terms, "=", 1.0, f"gap_succ[{sat_id}_start]")

    # --- objectives ----------------------------------------------------------

    def contact_operating_cost(self, w: ContactWindow) -> float:
        """Per-contact charge: minutes at the per-minute rate plus the
        per-pass fee (one of the two is always zero)."""
        station = self.station_by_id[w.station_id]
        return (station.per_minute_cost * w.duration / 60.0
                + station.per_pass_cost)

    def min_cost_objective(self):
        factors = scale_factors(self.scenario.sim_duration,
                                self.scenario.opt_duration)
        terms = []
        for w in self.contacts:
            terms.append((self.c_var[w.id],
                          factors.mission_over_sim * self.contact_operating_cost(w)))
        for (sat_id, sta_id) in sorted(self.v_var):
            terms.append((self.v_var[(sat_id, sta_id)],
                          self.station_by_id[sta_id].license_cost))
        for s in sorted(self.scenario.stations, key=lambda s: s.id):
            terms.append((self.l_var[s.id],
                          s.setup_cost + factors.months_in_mission * s.monthly_cost))
        for p in sorted(self.scenario.providers, key=lambda p: p.id):
            terms.append((self.p_var[p.id], p.integration_cost))
        return terms

    def max_data_objective(self):
        factors = scale_factors(self.scenario.sim_duration,
                                self.scenario.opt_duration)
        return [(self.c_var[w.id],
                 factors.mission_over_sim * w.data_rate * w.duration)
                for w in self.contacts]

    def finish(self, sense, objective_terms, variant) -> IpModel:
        return IpModel(
            variables=tuple(self.variables),
            constraints=tuple(self.constraints),
            objective_sense=sense,
            objective_terms=tuple(objective_terms),
            objective_constant=0.0,
            provenance=dict(sorted(self.provenance.items())),
            variant=variant,
            flags=tuple(sorted(self.flags)),
        )


def _base_families(builder: _Builder) -> None:
    builder.add_linking()
    builder.add_exclusion()
    builder.apply_min_duration()


def build_min_cost(scenario: Scenario, contacts) -> IpModel:
    """Minimize total mission cost subject to the per-satellite
    downlink floor (when configured) and the physical-exclusivity and
    short-contact rules."""
    builder = _Builder(scenario, contacts)
    _base_families(builder)
    if scenario.config.min_satellite_data is not None:
        builder.add_min_satellite_data()
    return builder.finish("min", builder.min_cost_objective(), "min_cost")


def build_max_data(scenario: Scenario, contacts) -> IpModel:
    """Maximize mission data downlink under the monthly cost cap.

    The cap is mandatory: without it the optimizer would select every
    provider, location, and contact.
    """
    if scenario.config.max_monthly_cost is None:
        raise ConfigurationError(
            "max_data objective requires max_monthly_cost: without the "
            "monthly operational cost cap the maximization degenerates to "
            "selecting everything")
    builder = _Builder(scenario, contacts)
    _base_families(builder)
    builder.add_monthly_cost_cap()
    return builder.finish("max", builder.max_data_objective(), "max_data")


def build_min_max_gap(scenario: Scenario, contacts,
                      boundary_gaps: bool = False) -> IpModel:
    """Minimize the maximum time gap between selected contacts.

    Requires both the per-satellite downlink floor (otherwise selecting
    nothing is "optimal") and the monthly cost cap (otherwise selecting
    everything is free).
    """
    if scenario.config.min_satellite_data is None:
        raise ConfigurationError(
            "min_max_gap objective requires min_satellite_data to rule out "
            "the empty-schedule solution")
    if scenario.config.max_monthly_cost is None:
        raise ConfigurationError(
            "min_max_gap objective requires max_monthly_cost to rule out "
            "the select-everything solution")
    builder = _Builder(scenario, contacts)
    gmax = builder._add_var(
        KIND_GAP_MAX, "Gmax", integrality="continuous",
        lower=0.0, upper=scenario.sim_duration, meta=("gap_max",))
    builder.gmax_var = gmax
    builder.add_gap_machinery(bound_var=gmax, bound_limit=None,
                              boundary_gaps=boundary_gaps)
    _base_families(builder)
    builder.add_min_satellite_data()
    builder.add_monthly_cost_cap()
    return builder.finish("min", [(gmax, 1.0)], "min_max_gap")


_BUILDERS = {
    "min_cost": build_min_cost,
    "max_data": build_max_data,
    "min_max_gap": build_min_max_gap,
}


def build_model(scenario: Scenario, contacts) -> IpModel:
    """Dispatch on the configured objective and attach optional extras."""
    model = _BUILDERS[scenario.config.objective](scenario, contacts)
    return add_optional_constraints(model, scenario, contacts)


def add_optional_constraints(model: IpModel, scenario: Scenario,
                             contacts) -> IpModel:
    """Append every independently enabled optional constraint family.

    The fixed-gap-limit family may not be combined with the
    minimum-max-gap objective (the objective already carries the same
    machinery).
    """
    config = scenario.config
    builder = _Builder(scenario, contacts)
    # Rebuild bookkeeping on top of the existing model's content.
    builder.variables = list(model.variables)
    builder.constraints = list(model.constraints)
    builder.flags = set(model.flags)
    builder.provenance = dict(model.provenance)

    if config.max_gap_limit_s is not None:
        if model.variant == "min_max_gap":
            raise ConfigurationError(
                "a fixed gap limit duplicates the min_max_gap machinery; "
                "enable one or the other")
        builder.add_gap_machinery(bound_var=None,
                                  bound_limit=config.max_gap_limit_s)
    if config.min_constellation_data is not None:
        builder.add_min_constellation_data()
    if config.min_contacts_per_period is not None:
        builder.add_min_contacts_per_period()
    if config.max_providers is not None:
        builder._add_row(
            [(builder.p_var[p.id], 1.0)
             for p in sorted(scenario.providers, key=lambda p: p.id)],
            "<=", float(config.max_providers), "provider_cap")
    for pid in sorted(config.required_providers):
        builder._add_row([(builder.p_var[pid], 1.0)], "=", 1.0,
                         f"require_provider[{pid}]")
    for sid in sorted(config.required_locations):
        builder._add_row([(builder.l_var[sid], 1.0)], "=", 1.0,
                         f"require_location[{sid}]")
    station_terms = [(builder.l_var[s.id], 1.0)
                     for s in sorted(scenario.stations, key=lambda s: s.id)]
    if config.min_stations is not None:
        builder._add_row(station_terms, ">=", float(config.min_stations),
                         "station_count_min")
    if config.max_stations is not None:
        builder._add_row(station_terms, "<=", float(config.max_stations),
                         "station_count_max")

    return IpModel(
        variables=tuple(builder.variables),
        constraints=tuple(builder.constraints),
        objective_sense=model.objective_sense,
        objective_terms=model.objective_terms,
        objective_constant=model.objective_constant,
        provenance=dict(sorted(builder.provenance.items())),
        variant=model.variant,
        flags=tuple(sorted(builder.flags)),
    )


def linking_constraints(model: IpModel, scenario: Scenario, contacts) -> IpModel:
    """Standalone access to the activation-linking family (appended to a
    model that was built without it)."""
    return _append_family(model, scenario, contacts, "add_linking")


def exclusion_constraints(model: IpModel, scenario: Scenario, contacts) -> IpModel:
    """Standalone access to the pairwise exclusivity family."""
    return _append_family(model, scenario, contacts, "add_exclusion")


def _append_family(model, scenario, contacts, method) -> IpModel:
    builder = _Builder(scenario, contacts)
    builder.variables = list(model.variables)
    existing = {c.tag for c in model.constraints}
    builder.constraints = list(model.constraints)
    before = len(builder.constraints)
    getattr(builder, method)()
    appended = [c for c in builder.constraints[before:] if c.tag not in existing]
    builder.constraints = list(model.constraints) + appended
    builder.provenance = {**model.provenance, **builder.provenance}
    return IpModel(
        variables=tuple(builder.variables),
        constraints=tuple(builder.constraints),
        objective_sense=model.objective_sense,
        objective_terms=model.objective_terms,
        objective_constant=model.objective_constant,
        provenance=dict(sorted(builder.provenance.items())),
        variant=model.variant,
        flags=model.flags,
    )
