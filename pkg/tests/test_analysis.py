import itertools
import math

import numpy as np
import pytest

from gsnetopt.analysis import (
    DEFAULT_STUDY_DURATIONS,
    compute_metrics,
    restrict_scenario,
    run_baselines,
    satellite_gap_stats,
    window_stability_study,
    write_baselines_csv,
    write_window_stats_csv,
)
from gsnetopt.astro import EpochUtc
from gsnetopt.contacts import find_contacts
from gsnetopt.formulation import build_model, scale_factors
from gsnetopt.model import ConstraintConfig, randomize_scenario
from gsnetopt.solver import solve

from conftest import make_contact, make_scenario, make_station, make_tle


def _six_provider_scenario(objective="min_cost", **cfg_kwargs):
    defaults = dict(min_satellite_data=4e10, period_s=600.0, step_s=300.0,
                    max_monthly_cost=1e9, min_contact_duration_s=0.0)
    defaults.update(cfg_kwargs)
    cfg = ConstraintConfig(objective=objective, **defaults)
    base = make_scenario(cfg, n_providers=6, stations_per_provider=1,
                         sim_s=600.0)
    return randomize_scenario(base, seed=4)


def _contacts_everywhere(scenario):
    # One usable pass per provider plus an extra on provider 0; all
    # disjoint so exclusivity never binds.
    contacts = []
    for p in range(len(scenario.providers)):
        contacts.append(make_contact(p, 90 * p, 90 * p + 60, station=p,
                                     provider=p))
    contacts.append(make_contact(6, 540, 590, station=0, provider=0))
    return contacts


class TestBaselines:
    def test_subset_counts(self):
        scenario = _six_provider_scenario()
        contacts = _contacts_everywhere(scenario)
        full = solve(build_model(scenario, contacts))
        one = run_baselines(scenario, contacts, 1, full)
        two = run_baselines(scenario, contacts, 2, full)
        assert len(one.results) == 6
        assert len(two.results) == 15
        assert [r.provider_subset for r in two.results] == \
            list(itertools.combinations(range(6), 2))

    def test_min_cost_superset_dominance(self):
        scenario = _six_provider_scenario("min_cost")
        contacts = _contacts_everywhere(scenario)
        full = solve(build_model(scenario, contacts))
        assert full.certificate.status == "Optimal"
        one = run_baselines(scenario, contacts, 1, full)
        two = run_baselines(scenario, contacts, 2, full)
        f = full.certificate.best_objective
        b1 = one.best.solution.certificate.best_objective
        b2 = two.best.solution.certificate.best_objective
        assert f <= b2 * (1 + 1e-6) <= b1 * (1 + 1e-6) * (1 + 1e-6)
        assert one.best.normalized_objective >= 1.0 - 1e-9
        assert two.best.normalized_objective >= 1.0 - 1e-9

    def test_max_data_containment(self):
        scenario = _six_provider_scenario("max_data", max_monthly_cost=1e5)
        contacts = _contacts_everywhere(scenario)
        full = solve(build_model(scenario, contacts))
        one = run_baselines(scenario, contacts, 1, full)
        two = run_baselines(scenario, contacts, 2, full)
        b1 = one.best.solution.certificate.best_objective
        b2 = two.best.solution.certificate.best_objective
        assert b2 >= b1 * (1 - 1e-9)
        assert full.certificate.best_objective >= b2 * (1 - 1e-9)

    def test_infeasible_subsets_recorded(self):
        scenario = _six_provider_scenario(min_satellite_data=5.9e10)
        # Only provider 0's station can meet the floor (60 s at 1e9
        # plus the extra pass); every other singleton is infeasible.
        contacts = [make_contact(0, 0, 60, station=0, provider=0),
                    make_contact(1, 540, 590, station=0, provider=0)]
        full = solve(build_model(scenario, contacts))
        one = run_baselines(scenario, contacts, 1, full)
        statuses = {r.provider_subset: r.solution.certificate.status
                    for r in one.results}
        assert statuses[(0,)] == "Optimal"
        assert all(s == "Infeasible" for subset, s in statuses.items()
                   if subset != (0,))
        assert one.best.provider_subset == (0,)

    def test_restrict_scenario_filters_stations(self):
        scenario = _six_provider_scenario()
        sub = restrict_scenario(scenario, {2, 4})
        assert {p.id for p in sub.providers} == {2, 4}
        assert {s.provider_id for s in sub.stations} == {2, 4}

    def test_invalid_subset_size(self):
        scenario = _six_provider_scenario()
        with pytest.raises(ValueError):
            run_baselines(scenario, [], 3, None)


class TestGapStats:
    def test_merged_gap_and_boundary(self):
        windows = [make_contact(0, 100, 200, station=0),
                   make_contact(1, 150, 300, station=1),
                   make_contact(2, 500, 550, station=0)]
        stats = satellite_gap_stats(windows, EpochUtc(0.0), EpochUtc(600.0))
        s = stats[0]
        assert s["gaps"] == [0.0, 200.0]
        assert s["start_gap"] == 100.0
        assert s["end_gap"] == 50.0
        assert s["count"] == 3


class TestMetrics:
    def test_all_zero_assignment(self):
        scenario = _six_provider_scenario()
        contacts = _contacts_everywhere(scenario)
        cfg0 = ConstraintConfig(objective="min_cost", min_satellite_data=0.0,
                                period_s=600.0, step_s=300.0,
                                min_contact_duration_s=0.0)
        scenario0 = make_scenario(cfg0, sim_s=600.0)
        model = build_model(scenario0, [make_contact(0, 0, 100)])
        solution = solve(model)
        metrics = compute_metrics(scenario0, [make_contact(0, 0, 100)],
                                  solution)
        assert metrics.total_mission_cost == 0.0
        assert metrics.total_data_downlink == 0.0
        assert metrics.contacts_per_day == 0.0

    def test_minute_priced_contact_cost(self):
        cfg = ConstraintConfig(objective="min_cost", min_satellite_data=4e10,
                               period_s=600.0, step_s=300.0,
                               min_contact_duration_s=0.0)
        station = make_station(0, 0, per_pass=0.0, per_minute=12.0)
        from gsnetopt.model import Provider, Satellite, Scenario
        scenario = Scenario(
            satellites=(Satellite(0, "S", make_tle(), data_rate=1.0e9),),
            providers=(Provider(0, "P0"),), stations=(station,),
            sim_start=EpochUtc(0.0), sim_end=EpochUtc(600.0),
            opt_start=EpochUtc(0.0), opt_end=EpochUtc(600.0 * 52),
            config=cfg)
        contacts = [make_contact(0, 0, 90)]
        solution = solve(build_model(scenario, contacts))
        metrics = compute_metrics(scenario, contacts, solution)
        factors = scale_factors(600.0, 600.0 * 52)
        expected_contact = factors.mission_over_sim * (12.0 * 90.0 / 60.0)
        fixed = (scenario.providers[0].integration_cost + station.setup_cost
                 + factors.months_in_mission * station.monthly_cost
                 + station.license_cost)
        assert metrics.total_mission_cost == pytest.approx(
            fixed + expected_contact, rel=1e-12)
        assert metrics.monthly_operational_cost == pytest.approx(
            factors.per_month_from_sim * (12.0 * 90.0 / 60.0)
            + station.monthly_cost, rel=1e-12)

    def test_data_metric_matches_max_data_objective(self):
        scenario = _six_provider_scenario("max_data", max_monthly_cost=1e7)
        contacts = _contacts_everywhere(scenario)
        model = build_model(scenario, contacts)
        solution = solve(model)
        metrics = compute_metrics(scenario, contacts, solution)
        assert metrics.total_data_downlink == pytest.approx(
            solution.certificate.best_objective, rel=1e-6)

    def test_satellite_without_contacts_reports_full_window_gap(self):
        cfg = ConstraintConfig(objective="min_cost", min_satellite_data=0.0,
                               period_s=600.0, step_s=300.0,
                               min_contact_duration_s=0.0)
        scenario = make_scenario(cfg, n_satellites=2, sim_s=600.0)
        contacts = [make_contact(0, 0, 100, sat=0)]
        solution = solve(build_model(scenario, contacts))
        metrics = compute_metrics(scenario, contacts, solution)
        assert metrics.max_gap_by_satellite[1] == 600.0


class TestWindowStability:
    def test_default_duration_list(self):
        assert DEFAULT_STUDY_DURATIONS == (1, 2, 3, 5, 7, 10, 20, 30, 50,
                                           60, 90, 100, 180)

    def test_small_study_runs_and_is_deterministic(self, catalog, bundled):
        _, stations = bundled
        operational = [s for s in stations if s.status == "Operational"][:12]
        a = window_stability_study(catalog, operational, durations=(1, 2),
                                   sample=3, seed=5)
        b = window_stability_study(catalog, operational, durations=(1, 2),
                                   sample=3, seed=5)
        assert a == b
        assert [s.window_days for s in a] == [1, 2]
        assert all(s.sample_size == 3 for s in a)
        assert all(s.mean_contacts_per_day > 0 for s in a)

    def test_periodic_orbit_stats_repeat_with_window_multiples(self):
        # Equatorial circular orbit over an equatorial station: the
        # contact pattern repeats with the synodic period, so doubling
        # the window leaves per-pass stats unchanged.
        tle = make_tle(mean_motion=14.0, eccentricity=0.0, inclination=0.0)
        from gsnetopt.model import Satellite
        sat = Satellite(0, "S", tle, data_rate=1e9)
        station = make_station(0, 0, lat=0.0, lon=0.0)
        t_orbit = 86400.0 / 14.0
        t_sid = 86164.0905
        t_synodic = 1.0 / (1.0 / t_orbit - 1.0 / t_sid)
        t0 = EpochUtc(0.0)
        one = find_contacts([sat], [station], (t0, t0 + t_synodic),
                            model="j2", coarse_step=10.0)
        two = find_contacts([sat], [station], (t0, t0 + 2 * t_synodic),
                            model="j2", coarse_step=10.0)
        assert len(two) == 2 * len(one)
        dur_one = np.mean([w.duration for w in one])
        dur_two = np.mean([w.duration for w in two])
        assert dur_two == pytest.approx(dur_one, rel=1e-3)


class TestCsvWriters:
    def test_window_stats_csv(self, tmp_path):
        from gsnetopt.analysis import WindowStats
        stats = [WindowStats(1, 100.0, 50.0, 3.0, 5)]
        path = tmp_path / "w.csv"
        write_window_stats_csv(path, stats)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "window_days,mean_gap_s,mean_contact_s," \
                           "contacts_per_day,sample_size"
        assert lines[1].startswith("1,100.0,50.0,3.0,5")

    def test_baselines_csv(self, tmp_path):
        scenario = _six_provider_scenario()
        contacts = _contacts_everywhere(scenario)
        full = solve(build_model(scenario, contacts))
        study = run_baselines(scenario, contacts, 1, full)
        path = tmp_path / "b.csv"
        write_baselines_csv(path, [study])
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "subset,status,objective,normalized"
        assert len(lines) == 7
