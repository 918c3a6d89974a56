"""Command-line interface.

Subcommands cover the full pipeline: contact computation, optimization,
provider baselines, the window-stability study, LP export, and
reproducible scenario generation.  Every output embeds the scenario it
was produced from, so any run can be reproduced from its artifacts.

Exit codes: 0 success (an infeasible optimization result is still a
result), 2 configuration error, 3 compute error.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__, kernels
from .analysis import (
    DEFAULT_STUDY_DURATIONS,
    compute_metrics,
    run_baselines,
    window_stability_study,
    write_baselines_csv,
    write_window_stats_csv,
)
from .astro import EpochUtc, parse_tle_catalog
from .contacts import coverage_cone_radius, find_contacts, write_contacts_csv
from .formulation import ConfigurationError, build_model
from .model import (
    ConstraintConfig,
    DatasetError,
    Scenario,
    bundled_station_dataset,
    bundled_tle_catalog,
    filter_stations_by_bands,
    load_scenario,
    load_station_dataset,
    randomize_scenario,
    sample_catalog_satellites,
    save_scenario,
    scenario_to_dict,
)
from .solver import NumericalError, SolveLimits, audit, export_lp, solve

log = logging.getLogger(__name__)

DEFAULT_SIM_START = "2024-09-11T00:00:00Z"
DEFAULT_SIM_DAYS = 7.0
DEFAULT_OPT_DAYS = 365.0
DEFAULT_MIN_ELEVATION = 10.0

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3


class CliConfigError(ValueError):
    pass


def _scenario_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path,
                        help="scenario JSON (overrides the assembly flags)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for satellite sampling and cost randomization")
    parser.add_argument("--stations", type=Path,
                        help="station CSV (default: bundled dataset)")
    parser.add_argument("--tles", type=Path,
                        help="TLE catalog file (default: bundled sample)")
    parser.add_argument("--satellites", type=int, default=1,
                        help="number of satellites sampled from the catalog")
    parser.add_argument("--sim-start", default=DEFAULT_SIM_START)
    parser.add_argument("--sim-days", type=float, default=DEFAULT_SIM_DAYS)
    parser.add_argument("--opt-days", type=float, default=DEFAULT_OPT_DAYS)
    parser.add_argument("--min-elevation", type=float,
                        default=DEFAULT_MIN_ELEVATION)
    parser.add_argument("--objective", default="min_cost",
                        choices=["min_cost", "max_data", "min_max_gap"])
    parser.add_argument("--min-satellite-data", type=float, default=1e11)
    parser.add_argument("--period", type=float, default=86400.0)
    parser.add_argument("--step", type=float, default=3600.0)
    parser.add_argument("--min-duration", type=float, default=180.0)
    parser.add_argument("--max-monthly-cost", type=float, default=1e6,
                        help="monthly operational cost cap; pass 'nan' to disable")
    parser.add_argument("--bands", default="",
                        help="required frequency bands, ';'-separated")
    parser.add_argument("--propagator", default="sgp4", choices=["sgp4", "j2"])
    parser.add_argument("--coarse-step", type=float, default=30.0)


def _solver_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--time-limit", type=float, default=600.0)
    parser.add_argument("--node-limit", type=int, default=2_000_000)


def _build_scenario(args) -> Scenario:
    if args.config:
        return load_scenario(args.config)
    if args.stations:
        providers, stations = load_station_dataset(args.stations)
    else:
        providers, stations = bundled_station_dataset()
    catalog_text = (args.tles.read_text() if args.tles
                    else bundled_tle_catalog())
    records = parse_tle_catalog(catalog_text)
    if not records:
        raise CliConfigError("no valid TLE records in the catalog")

    bands = frozenset(b for b in args.bands.split(";") if b)
    stations = filter_stations_by_bands(stations, bands)
    if not stations:
        raise CliConfigError("band/status filtering removed every station")
    cap = args.max_monthly_cost
    config = ConstraintConfig(
        objective=args.objective,
        min_satellite_data=(None if math.isnan(args.min_satellite_data)
                            else args.min_satellite_data),
        period_s=args.period,
        step_s=args.step,
        max_monthly_cost=None if math.isnan(cap) else cap,
        min_contact_duration_s=args.min_duration,
        required_bands=bands)
    satellites = sample_catalog_satellites(records, args.satellites, args.seed)
    sim_start = EpochUtc.from_iso(args.sim_start)
    base = Scenario(
        satellites=satellites,
        providers=tuple(providers),
        stations=tuple(stations),
        sim_start=sim_start,
        sim_end=sim_start + args.sim_days * 86400.0,
        opt_start=sim_start,
        opt_end=sim_start + args.opt_days * 86400.0,
        config=config,
        rng_seed=args.seed)
    return randomize_scenario(base, args.seed)


def _find_scenario_contacts(scenario, args):
    return find_contacts(
        scenario.satellites, scenario.stations,
        (scenario.sim_start, scenario.sim_end),
        min_elevation=getattr(args, "min_elevation", DEFAULT_MIN_ELEVATION),
        coarse_step=getattr(args, "coarse_step", 30.0),
        model=getattr(args, "propagator", "sgp4"))


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def _dump_json(path: Path, document: dict) -> None:
    path.write_text(json.dumps(_json_safe(document), indent=2, sort_keys=True)
                    + "\n")


def _certificate_dict(cert) -> dict:
    # wall_time is deliberately excluded so identical runs produce
    # byte-identical documents.
    return {
        "status": cert.status,
        "best_objective": cert.best_objective,
        "best_bound": cert.best_bound,
        "relative_gap": cert.relative_gap,
        "nodes_explored": cert.nodes_explored,
        "model_flags": list(cert.model_flags),
    }


def _names(scenario):
    sat_names = {s.id: s.name for s in scenario.satellites}
    prov_names = {p.id: p.name for p in scenario.providers}
    sta_names = {s.id: s.name for s in scenario.stations}
    return sat_names, prov_names, sta_names


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


# --- subcommands -------------------------------------------------------------

def cmd_contacts(args) -> int:
    scenario = _build_scenario(args)
    out = _out_dir(args)
    windows = _find_scenario_contacts(scenario, args)
    sat_names, prov_names, sta_names = _names(scenario)
    write_contacts_csv(out / "contacts.csv", windows, sat_names, prov_names,
                       sta_names)
    per_provider = {}
    for w in windows:
        per_provider[prov_names[w.provider_id]] = \
            per_provider.get(prov_names[w.provider_id], 0) + 1
    _dump_json(out / "contacts_summary.json", {
        "n_contacts": len(windows),
        "per_provider": per_provider,
        "total_duration_s": sum(w.duration for w in windows),
        "scenario": scenario_to_dict(scenario),
        "kernels_backend": kernels.BACKEND,
    })
    print(f"wrote {len(windows)} contact windows to {out / 'contacts.csv'}")
    return EXIT_OK


def _coverage_ring(station, altitude_m, min_elevation, segments=64):
    lam = coverage_cone_radius(altitude_m, min_elevation)
    lat0 = math.radians(station.geodetic.latitude)
    lon0 = math.radians(station.geodetic.longitude)
    ring = []
    for k in range(segments + 1):
        theta = 2.0 * math.pi * k / segments
        lat = math.asin(math.sin(lat0) * math.cos(lam)
                        + math.cos(lat0) * math.sin(lam) * math.cos(theta))
        lon = lon0 + math.atan2(
            math.sin(theta) * math.sin(lam) * math.cos(lat0),
            math.cos(lam) - math.sin(lat0) * math.sin(lat))
        lon_deg = math.degrees(lon)
        lon_deg = (lon_deg + 180.0) % 360.0 - 180.0
        ring.append([round(lon_deg, 6), round(math.degrees(lat), 6)])
    return ring


def _solution_geojson(scenario, solution, altitude_m, min_elevation):
    sat_names, prov_names, sta_names = _names(scenario)
    features = []
    for sid in solution.selected_locations:
        station = next(s for s in scenario.stations if s.id == sid)
        props = {
            "station": station.name,
            "provider": prov_names[station.provider_id],
            "country": station.country,
            "bands": sorted(station.bands),
        }
        features.append({
            "type": "Feature",
            "geometry": {"type": "Point",
                         "coordinates": [station.geodetic.longitude,
                                         station.geodetic.latitude]},
            "properties": props,
        })
        features.append({
            "type": "Feature",
            "geometry": {"type": "Polygon",
                         "coordinates": [_coverage_ring(
                             station, altitude_m, min_elevation)]},
            "properties": {**props, "kind": "coverage_cone",
                           "cone_altitude_m": altitude_m,
                           "min_elevation_deg": min_elevation},
        })
    return {"type": "FeatureCollection", "features": features}


def cmd_optimize(args) -> int:
    scenario = _build_scenario(args)
    out = _out_dir(args)
    windows = _find_scenario_contacts(scenario, args)
    model = build_model(scenario, windows)
    solution = solve(model, SolveLimits(time_s=args.time_limit,
                                        nodes=args.node_limit))
    cert = solution.certificate
    metrics = None
    if cert.status in ("Optimal", "FeasibleWithGap", "LimitReached") \
            and cert.best_objective is not None:
        violations = audit(model, solution.assignment)
        if violations:
            log.error("audit found %d violations", len(violations))
            for v in violations[:10]:
                log.error("  %s", v.detail)
            return EXIT_COMPUTE
        metrics = compute_metrics(scenario, windows, solution)

    sat_names, prov_names, sta_names = _names(scenario)
    doc = {
        "tool_version": __version__,
        "objective": scenario.config.objective,
        "certificate": _certificate_dict(cert),
        "selected_providers": [prov_names[p] for p in solution.selected_providers],
        "selected_locations": [
            {"id": sid, "station": sta_names[sid],
             "provider": prov_names[next(s for s in scenario.stations
                                         if s.id == sid).provider_id]}
            for sid in solution.selected_locations],
        "selected_contact_ids": list(solution.selected_contacts),
        "n_contacts_considered": len(windows),
        "metrics": None if metrics is None else {
            "total_mission_cost": metrics.total_mission_cost,
            "total_data_downlink_bits": metrics.total_data_downlink,
            "max_gap_s": metrics.max_gap_overall,
            "max_gap_by_satellite_s": metrics.max_gap_by_satellite,
            "boundary_gap_by_satellite_s": metrics.boundary_gap_by_satellite,
            "monthly_operational_cost": metrics.monthly_operational_cost,
            "contacts_per_day": metrics.contacts_per_day,
        },
        "scenario": scenario_to_dict(scenario),
        "seed": scenario.rng_seed,
    }
    _dump_json(out / "solution.json", doc)
    geo = _solution_geojson(scenario, solution, altitude_m=525_000.0,
                            min_elevation=args.min_elevation)
    _dump_json(out / "map.geojson", geo)
    with open(out / "metrics.csv", "w") as fh:
        fh.write("objective,status,objective_value,total_cost,total_data_bits,"
                 "max_gap_s,monthly_cost,contacts_per_day,n_providers,"
                 "n_stations,n_contacts\n")
        fh.write(",".join([
            scenario.config.objective, cert.status,
            repr(cert.best_objective) if cert.best_objective is not None else "",
            repr(metrics.total_mission_cost) if metrics else "",
            repr(metrics.total_data_downlink) if metrics else "",
            repr(metrics.max_gap_overall) if metrics else "",
            repr(metrics.monthly_operational_cost) if metrics else "",
            repr(metrics.contacts_per_day) if metrics else "",
            str(len(solution.selected_providers)),
            str(len(solution.selected_locations)),
            str(len(solution.selected_contacts))]) + "\n")
    print(f"{cert.status}: objective "
          f"{cert.best_objective if cert.best_objective is not None else 'n/a'}"
          f" ({cert.nodes_explored} nodes)")
    return EXIT_OK


def cmd_baseline(args) -> int:
    scenario = _build_scenario(args)
    out = _out_dir(args)
    windows = _find_scenario_contacts(scenario, args)
    model = build_model(scenario, windows)
    limits = SolveLimits(time_s=args.time_limit, nodes=args.node_limit)
    full = solve(model, limits)
    studies = [run_baselines(scenario, windows, k, full, limits)
               for k in ([1, 2] if args.providers == 0 else [args.providers])]
    write_baselines_csv(out / "baselines.csv", studies)
    doc = {
        "full": _certificate_dict(full.certificate),
        "studies": [{
            "subset_size": st.subset_size,
            "best_subset": list(st.best.provider_subset) if st.best else None,
            "best_objective": (st.best.solution.certificate.best_objective
                               if st.best else None),
            "best_normalized": st.best.normalized_objective if st.best else None,
            "results": [{
                "subset": list(r.provider_subset),
                "status": (r.solution.certificate.status
                           if r.solution else "NotSolved"),
                "objective": (r.solution.certificate.best_objective
                              if r.feasible else None),
                "normalized": r.normalized_objective,
            } for r in st.results],
        } for st in studies],
        "scenario": scenario_to_dict(scenario),
    }
    _dump_json(out / "baselines.json", doc)
    print(f"baseline studies written to {out / 'baselines.csv'}")
    return EXIT_OK


def cmd_window_study(args) -> int:
    if args.stations:
        _, stations = load_station_dataset(args.stations)
    else:
        _, stations = bundled_station_dataset()
    stations = filter_stations_by_bands(stations, frozenset())
    records = parse_tle_catalog(args.tles.read_text() if args.tles
                                else bundled_tle_catalog())
    out = _out_dir(args)
    stats = window_stability_study(
        records, stations, durations=args.durations, sample=args.sample,
        seed=args.seed, start=EpochUtc.from_iso(args.sim_start),
        min_elevation=args.min_elevation, model=args.propagator)
    write_window_stats_csv(out / "window_stats.csv", stats)
    print(f"{len(stats)} rows written to {out / 'window_stats.csv'}")
    return EXIT_OK


def cmd_export_lp(args) -> int:
    scenario = _build_scenario(args)
    out = _out_dir(args)
    windows = _find_scenario_contacts(scenario, args)
    model = build_model(scenario, windows)
    export_lp(model, out / "model.lp")
    print(f"model with {len(model.variables)} variables / "
          f"{len(model.constraints)} constraints written to {out / 'model.lp'}")
    return EXIT_OK


def cmd_scenario_gen(args) -> int:
    scenario = _build_scenario(args)
    out = _out_dir(args)
    save_scenario(scenario, out / "scenario.json")
    print(f"scenario written to {out / 'scenario.json'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsnetopt",
        description="Ground station network selection trade studies")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("contacts", help="compute contact windows")
    _scenario_options(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_contacts)

    p = sub.add_parser("optimize", help="solve one selection problem")
    _scenario_options(p)
    _solver_options(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("baseline", help="one/two-provider baselines")
    _scenario_options(p)
    _solver_options(p)
    p.add_argument("--providers", type=int, default=0, choices=[0, 1, 2],
                   help="subset size; 0 runs both 1 and 2")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("window-study",
                       help="contact statistics vs simulation-window length")
    p.add_argument("--durations", type=int, nargs="*",
                   default=list(DEFAULT_STUDY_DURATIONS))
    p.add_argument("--sample", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stations", type=Path)
    p.add_argument("--tles", type=Path)
    p.add_argument("--sim-start", default=DEFAULT_SIM_START)
    p.add_argument("--min-elevation", type=float, default=DEFAULT_MIN_ELEVATION)
    p.add_argument("--propagator", default="sgp4", choices=["sgp4", "j2"])
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_window_study)

    p = sub.add_parser("export-lp", help="write the model in LP text format")
    _scenario_options(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_export_lp)

    p = sub.add_parser("scenario-gen",
                       help="write a reproducible randomized scenario")
    _scenario_options(p)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_scenario_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (CliConfigError, ConfigurationError, DatasetError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, KeyError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, RuntimeError, OSError) as exc:
        print(f"compute error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
