import dataclasses
import math

import numpy as np
import pytest

from gsnetopt.formulation import build_model
from gsnetopt.model import ConstraintConfig
from gsnetopt.solver import SolveLimits, audit, solve, solve_lp_relaxation

from conftest import make_contact, make_scenario
from oracles import enumerate_ip


def random_small_instance(seed):
    rng = np.random.default_rng(seed)
    objective = ("min_cost", "max_data", "min_max_gap")[seed % 3]
    cfg = ConstraintConfig(
        objective=objective,
        min_satellite_data=float(rng.choice([0.0, 4e10, 9e10])),
        max_monthly_cost=float(rng.choice([5e4, 1e9])),
        period_s=500.0, step_s=250.0,
        min_contact_duration_s=float(rng.choice([0.0, 40.0])),
        max_providers=None if rng.random() < 0.7 else 1)
    scenario = make_scenario(cfg, n_providers=2, stations_per_provider=2,
                             sim_s=1000.0)
    contacts = []
    for i in range(int(rng.integers(2, 9))):
        start = float(rng.integers(0, 900))
        end = min(start + float(rng.integers(20, 120)), 1000.0)
        station = int(rng.integers(0, 4))
        contacts.append(make_contact(i, start, end, station=station,
                                     provider=station // 2))
    return scenario, contacts


class TestExactness:
    def test_matches_enumeration_on_small_models(self):
        checked = 0
        seed = 0
        while checked < 12:
            scenario, contacts = random_small_instance(seed)
            seed += 1
            model = build_model(scenario, contacts)
            free_binaries = sum(1 for v in model.variables
                                if v.is_binary and v.lower != v.upper)
            if free_binaries > 16:
                continue
            solution = solve(model)
            oracle = enumerate_ip(model)
            if oracle is None:
                assert solution.certificate.status == "Infeasible"
            else:
                assert solution.certificate.status == "Optimal"
                assert solution.certificate.best_objective == pytest.approx(
                    oracle, rel=1e-6, abs=1e-6)
                assert audit(model, solution.assignment) == []
            checked += 1

    def test_own_lp_backend_agrees(self):
        for seed in (0, 1, 2, 5):
            scenario, contacts = random_small_instance(seed)
            model = build_model(scenario, contacts)
            default = solve(model)
            own = solve(model, lp_backend="own")
            assert default.certificate.status == own.certificate.status
            if default.certificate.status == "Optimal":
                assert default.certificate.best_objective == pytest.approx(
                    own.certificate.best_objective, rel=1e-9)

    def test_without_strengthening_agrees(self):
        for seed in (0, 3, 4):
            scenario, contacts = random_small_instance(seed)
            model = build_model(scenario, contacts)
            a = solve(model)
            b = solve(model, strengthen=False)
            assert a.certificate.status == b.certificate.status
            if a.certificate.status == "Optimal":
                assert a.certificate.best_objective == pytest.approx(
                    b.certificate.best_objective, rel=1e-9)


class TestCertificates:
    def test_contradictory_fixings_infeasible(self):
        cfg = ConstraintConfig(objective="min_cost", min_satellite_data=0.0,
                               period_s=600.0, step_s=300.0,
                               required_locations=frozenset({0}),
                               max_stations=0, min_contact_duration_s=0.0)
        scenario = make_scenario(cfg, sim_s=600.0)
        model = build_model(scenario, [make_contact(0, 0, 100)])
        solution = solve(model)
        assert solution.certificate.status == "Infeasible"
        assert solution.assignment == {}

    def test_unsatisfiable_floor_infeasible(self):
        cfg = ConstraintConfig(objective="min_cost", min_satellite_data=1e18,
                               period_s=600.0, step_s=300.0,
                               min_contact_duration_s=0.0)
        scenario = make_scenario(cfg, sim_s=600.0)
        model = build_model(scenario, [make_contact(0, 0, 100)])
        solution = solve(model)
        assert solution.certificate.status == "Infeasible"

    def test_limit_reached_reports_honest_gap(self):
        scenario, contacts = random_small_instance(1)
        model = build_model(scenario, contacts)
        reference = solve(model)
        if reference.certificate.status != "Optimal":
            pytest.skip("instance infeasible under this seed")
        limited = solve(model, SolveLimits(nodes=0))
        assert limited.certificate.status == "LimitReached"
        if limited.certificate.best_objective is not None:
            sense_min = model.objective_sense == "min"
            bound = limited.certificate.best_bound
            opt = reference.certificate.best_objective
            assert (bound <= opt + 1e-6) if sense_min else (bound >= opt - 1e-6)

    def test_determinism_except_wall_time(self):
        scenario, contacts = random_small_instance(2)
        model = build_model(scenario, contacts)
        a = solve(model)
        b = solve(model)
        fields_a = dataclasses.asdict(a.certificate)
        fields_b = dataclasses.asdict(b.certificate)
        fields_a.pop("wall_time")
        fields_b.pop("wall_time")
        assert fields_a == fields_b
        assert a.assignment == b.assignment

    def test_optimal_implies_tiny_gap(self):
        scenario, contacts = random_small_instance(0)
        model = build_model(scenario, contacts)
        solution = solve(model)
        if solution.certificate.status == "Optimal":
            assert solution.certificate.relative_gap <= 1e-6


class TestLpRelaxation:
    def test_relaxation_bounds_integer_optimum(self):
        scenario, contacts = random_small_instance(3)
        model = build_model(scenario, contacts)
        status, lp_obj, x = solve_lp_relaxation(model)
        solution = solve(model)
        if solution.certificate.status != "Optimal" or status != "optimal":
            pytest.skip("needs a feasible pair")
        ip_obj = solution.certificate.best_objective
        if model.objective_sense == "min":
            assert lp_obj <= ip_obj + 1e-6 * max(1, abs(ip_obj))
        else:
            assert lp_obj >= ip_obj - 1e-6 * max(1, abs(ip_obj))
        assert len(x) == len(model.variables)


class TestAudit:
    def _solved(self, seed=0):
        scenario, contacts = random_small_instance(seed)
        model = build_model(scenario, contacts)
        solution = solve(model)
        return model, solution

    def test_clean_on_optimal(self):
        model, solution = self._solved(0)
        if solution.certificate.status == "Optimal":
            assert audit(model, solution.assignment) == []

    def test_flipped_exclusion_pair_reported_exactly(self):
        cfg = ConstraintConfig(objective="min_cost", min_satellite_data=0.0,
                               period_s=600.0, step_s=300.0,
                               min_contact_duration_s=0.0)
        scenario = make_scenario(cfg, sim_s=600.0)
        contacts = [make_contact(0, 0, 100), make_contact(1, 50, 150)]
        model = build_model(scenario, contacts)
        assignment = {v.index: 0.0 for v in model.variables}
        for tag in ("c0", "c1", "l_p0_st0", "p_p0"):
            assignment[model.var_by_tag(tag).index] = 1.0
        for v in model.variables:
            if v.kind == "vehicle_license":
                assignment[v.index] = 1.0
        violations = audit(model, assignment)
        excl = [v for v in violations if v.tag.startswith("excl_")]
        assert len(excl) == 2      # station family and satellite family
        assert all(v.kind == "constraint" for v in excl)

    def test_fractional_binary_reported(self):
        cfg = ConstraintConfig(objective="min_cost", min_satellite_data=0.0,
                               period_s=600.0, step_s=300.0,
                               min_contact_duration_s=0.0)
        scenario = make_scenario(cfg, sim_s=600.0)
        model = build_model(scenario, [make_contact(0, 0, 100)])
        solution = solve(model)
        assignment = dict(solution.assignment)
        some_binary = next(v.index for v in model.variables if v.is_binary)
        assignment[some_binary] = 0.5
        violations = audit(model, assignment)
        assert any(v.kind == "integrality" for v in violations)

    def test_missing_variable_rejected(self):
        model, solution = self._solved(0)
        with pytest.raises(ValueError):
            audit(model, {})
