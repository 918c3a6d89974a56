"""Domain model: providers, stations, satellites, constraint
configuration, and randomized scenario generation.

Costs are an abstract currency unit.  Station pricing is exclusive:
a station charges either per pass or per minute, never both.
"""
from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field, replace
from importlib import resources

import numpy as np

from .astro import EpochUtc, GeodeticPoint, TleRecord

log = logging.getLogger(__name__)

BAND_NAMES = ("UHF", "L", "S", "X", "Ka")
STATION_STATUSES = ("Operational", "Planned", "Potential", "Decommissioned")

STATION_CSV_HEADER = ("provider,location,country,longitude_deg,latitude_deg,"
                      "bands,status")

#: Uniform sampling ranges used when randomizing scenario constants.
RANDOMIZATION_RANGES = {
    "integration_cost": (50_000.0, 200_000.0),
    "setup_cost": (10_000.0, 100_000.0),
    "monthly_cost": (200.0, 5_000.0),
    "license_cost": (1_000.0, 5_000.0),
    "per_pass_cost": (25.0, 175.0),
    "per_minute_cost": (5.0, 35.0),
    "satellite_data_rate": (9e8, 1.8e9),
    "station_data_rate": (1.2e9, 1.8e9),
}

#: Catalog altitude band for experiment satellites, metres.
ALTITUDE_BAND_M = (300_000.0, 1_000_000.0)


class DatasetError(ValueError):
    """A station dataset or scenario document failed validation."""


@dataclass(frozen=True, slots=True)
class Provider:
    id: int
    name: str
    integration_cost: float = 100_000.0

    def __post_init__(self):
        if self.integration_cost < 0:
            raise ValueError("integration_cost must be >= 0")


@dataclass(frozen=True, slots=True)
class StationLocation:
    """One ground antenna site with its cost model.

    Exactly one of ``per_pass_cost`` / ``per_minute_cost`` is nonzero.
    """

    id: int
    provider_id: int
    name: str
    country: str
    geodetic: GeodeticPoint
    bands: frozenset[str]
    status: str = "Operational"
    data_rate: float = 1.5e9
    setup_cost: float = 50_000.0
    monthly_cost: float = 2_000.0
    license_cost: float = 3_000.0
    per_pass_cost: float = 100.0
    per_minute_cost: float = 0.0

    def __post_init__(self):
        unknown = self.bands - set(BAND_NAMES)
        if unknown:
            raise ValueError(f"unknown band tokens {sorted(unknown)}")
        if self.status not in STATION_STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.data_rate <= 0:
            raise ValueError("data_rate must be positive")
        for label in ("setup_cost", "monthly_cost", "license_cost",
                      "per_pass_cost", "per_minute_cost"):
            if getattr(self, label) < 0:
                raise ValueError(f"{label} must be >= 0")
        if (self.per_pass_cost > 0) == (self.per_minute_cost > 0):
            raise ValueError("exactly one of per_pass_cost/per_minute_cost "
                             "must be nonzero")


@dataclass(frozen=True, slots=True)
class Satellite:
    id: int
    name: str
    tle: TleRecord
    data_rate: float = 1.2e9
    supported_bands: frozenset[str] = frozenset({"S", "X"})

    def __post_init__(self):
        if self.data_rate <= 0:
            raise ValueError("data_rate must be positive")


@dataclass(frozen=True, slots=True)
class ConstraintConfig:
    """Objective selection plus every optional constraint knob.

    Optional constraints are enabled by giving their field a value;
    ``None`` (or an empty set) leaves the family out of the model.
    """

    objective: str = "min_cost"             # min_cost | max_data | min_max_gap
    min_constellation_data: float | None = None      # bits per period window
    min_satellite_data: float | None = 1e11          # bits per period window
    period_s: float = 86_400.0
    step_s: float = 3_600.0
    max_monthly_cost: float | None = 1e6
    station_exclusion: bool = True
    satellite_exclusion: bool = True
    max_gap_limit_s: float | None = None
    max_providers: int | None = None
    min_contact_duration_s: float = 180.0
    min_contacts_per_period: int | None = None
    required_providers: frozenset[int] = frozenset()
    required_locations: frozenset[int] = frozenset()
    min_stations: int | None = None
    max_stations: int | None = None
    required_bands: frozenset[str] = frozenset()
    gap_successor_horizon: int = 25

    def __post_init__(self):
        if self.objective not in ("min_cost", "max_data", "min_max_gap"):
            raise ValueError(f"unknown objective {self.objective!r}")
        if self.step_s <= 0:
            raise ValueError("step_s must be positive")
        if (self.min_stations is not None and self.max_stations is not None
                and self.min_stations > self.max_stations):
            raise ValueError("min_stations exceeds max_stations")
        unknown = self.required_bands - set(BAND_NAMES)
        if unknown:
            raise ValueError(f"unknown band tokens {sorted(unknown)}")


@dataclass(frozen=True, slots=True)
class Scenario:
    """Everything needed to reproduce one trade study."""

    satellites: tuple[Satellite, ...]
    providers: tuple[Provider, ...]
    stations: tuple[StationLocation, ...]
    sim_start: EpochUtc
    sim_end: EpochUtc
    opt_start: EpochUtc
    opt_end: EpochUtc
    config: ConstraintConfig = ConstraintConfig()
    rng_seed: int = 0

    def __post_init__(self):
        if self.sim_duration <= 0:
            raise ValueError("simulation window must have positive duration")
        if self.opt_duration < self.sim_duration:
            raise ValueError("optimization window shorter than simulation window")
        if self.config.period_s > self.sim_duration:
            raise ValueError("period_s exceeds the simulation duration")

    @property
    def sim_duration(self) -> float:
        return self.sim_end - self.sim_start

    @property
    def opt_duration(self) -> float:
        return self.opt_end - self.opt_start


def _parse_bands(token: str) -> frozenset[str]:
    parts = [p.strip() for p in token.split(";") if p.strip()]
    bands = frozenset(parts)
    if bands - set(BAND_NAMES):
        raise DatasetError(f"unknown band token in {token!r}")
    return bands


def load_station_dataset(path_or_file) -> tuple[list[Provider], list[StationLocation]]:
    """Load providers and stations from the documented CSV schema.

    Rows with unknown band tokens or unparseable coordinates are
    rejected individually with a logged diagnostic; one provider is
    created per distinct provider name, in file order.
    """
    if hasattr(path_or_file, "read"):
        rows = list(csv.reader(path_or_file))
    else:
        with open(path_or_file, newline="") as fh:
            rows = list(csv.reader(fh))
    if not rows:
        raise DatasetError("empty station dataset")
    header = [c.strip() for c in rows[0]]
    if header != STATION_CSV_HEADER.split(","):
        raise DatasetError(f"unexpected station CSV header: {header}")

    providers: list[Provider] = []
    provider_ids: dict[str, int] = {}
    stations: list[StationLocation] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row or not any(cell.strip() for cell in row):
            continue
        try:
            name, location, country, lon_s, lat_s, bands_s, status = \
                (cell.strip() for cell in row)
            point = GeodeticPoint(latitude=float(lat_s), longitude=float(lon_s))
            bands = _parse_bands(bands_s)
            if name not in provider_ids:
                provider_ids[name] = len(providers)
                providers.append(Provider(id=len(providers), name=name))
            stations.append(StationLocation(
                id=len(stations), provider_id=provider_ids[name],
                name=location, country=country, geodetic=point,
                bands=bands, status=status))
        except (ValueError, DatasetError) as exc:
            log.warning("rejecting station row %d: %s", line_no, exc)
    return providers, stations


def bundled_station_dataset() -> tuple[list[Provider], list[StationLocation]]:
    """The station dataset shipped with the package."""
    ref = resources.files("gsnetopt.data").joinpath("stations.csv")
    with ref.open("r", newline="") as fh:
        return load_station_dataset(fh)


def bundled_tle_catalog() -> str:
    """Raw text of the sample TLE catalog shipped with the package."""
    ref = resources.files("gsnetopt.data").joinpath("sample_catalog.tle")
    return ref.read_text()


def filter_stations_by_bands(stations, required_bands,
                             operational_only: bool = True):
    """Keep stations supporting every required band.

    Non-operational stations are dropped unless ``operational_only`` is
    disabled.  An empty requirement is the identity on the retained set.
    """
    required = frozenset(required_bands)
    kept = []
    for station in stations:
        if operational_only and station.status != "Operational":
            continue
        if required <= station.bands:
            kept.append(station)
    return kept


def randomize_scenario(base: Scenario, seed: int) -> Scenario:
    """Redraw every cost and data-rate constant from its design range.

    Sampling is independent and uniform per entity; each station flips a
    fair coin between per-pass and per-minute pricing.  Deterministic
    for a fixed seed.
    """
    rng = np.random.default_rng(seed)
    r = RANDOMIZATION_RANGES

    def draw(lo_hi):
        lo, hi = lo_hi
        return float(rng.uniform(lo, hi))

    providers = tuple(
        replace(p, integration_cost=draw(r["integration_cost"]))
        for p in sorted(base.providers, key=lambda p: p.id))
    stations = []
    for station in sorted(base.stations, key=lambda s: s.id):
        setup = draw(r["setup_cost"])
        monthly = draw(r["monthly_cost"])
        license_ = draw(r["license_cost"])
        pass_cost = draw(r["per_pass_cost"])
        minute_cost = draw(r["per_minute_cost"])
        data_rate = draw(r["station_data_rate"])
        if rng.uniform() < 0.5:
            minute_cost = 0.0
        else:
            pass_cost = 0.0
        stations.append(replace(
            station, setup_cost=setup, monthly_cost=monthly,
            license_cost=license_, per_pass_cost=pass_cost,
            per_minute_cost=minute_cost, data_rate=data_rate))
    satellites = tuple(
        replace(s, data_rate=draw(r["satellite_data_rate"]))
        for s in sorted(base.satellites, key=lambda s: s.id))
    return replace(base, providers=providers, stations=tuple(stations),
                   satellites=satellites, rng_seed=seed)


def sample_catalog_satellites(records, count: int, seed: int,
                              data_rate: float = 1.2e9) -> tuple[Satellite, ...]:
    """Uniformly sample catalog records within the experiment altitude
    band, without replacement, and wrap them as satellites."""
    lo, hi = ALTITUDE_BAND_M
    eligible = [rec for rec in records if lo <= rec.mean_altitude_m <= hi]
    if count > len(eligible):
        raise ValueError(f"requested {count} satellites but only "
                         f"{len(eligible)} catalog records are in band")
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(eligible), size=count, replace=False)
    return tuple(
        Satellite(id=i, name=eligible[int(k)].name or f"SAT-{eligible[int(k)].norad_id}",
                  tle=eligible[int(k)], data_rate=data_rate)
        for i, k in enumerate(sorted(chosen.tolist())))


# --- scenario JSON serialization -------------------------------------------

def _config_to_dict(config: ConstraintConfig) -> dict:
    return {
        "objective": config.objective,
        "min_constellation_data": config.min_constellation_data,
        "min_satellite_data": config.min_satellite_data,
        "period_s": config.period_s,
        "step_s": config.step_s,
        "max_monthly_cost": config.max_monthly_cost,
        "station_exclusion": config.station_exclusion,
        "satellite_exclusion": config.satellite_exclusion,
        "max_gap_limit_s": config.max_gap_limit_s,
        "max_providers": config.max_providers,
        "min_contact_duration_s": config.min_contact_duration_s,
        "min_contacts_per_period": config.min_contacts_per_period,
        "required_providers": sorted(config.required_providers),
        "required_locations": sorted(config.required_locations),
        "min_stations": config.min_stations,
        "max_stations": config.max_stations,
        "required_bands": sorted(config.required_bands),
        "gap_successor_horizon": config.gap_successor_horizon,
    }


def config_from_dict(data: dict) -> ConstraintConfig:
    known = set(_config_to_dict(ConstraintConfig()))
    unknown = set(data) - known
    if unknown:
        raise DatasetError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(data)
    for key in ("required_providers", "required_locations", "required_bands"):
        if key in kwargs and kwargs[key] is not None:
            kwargs[key] = frozenset(kwargs[key])
    return ConstraintConfig(**kwargs)


def scenario_to_dict(scenario: Scenario) -> dict:
    return {
        "seed": scenario.rng_seed,
        "sim_start": scenario.sim_start.to_iso(),
        "sim_end": scenario.sim_end.to_iso(),
        "opt_start": scenario.opt_start.to_iso(),
        "opt_end": scenario.opt_end.to_iso(),
        "config": _config_to_dict(scenario.config),
        "providers": [
            {"id": p.id, "name": p.name, "integration_cost": p.integration_cost}
            for p in scenario.providers],
        "stations": [
            {"id": s.id, "provider_id": s.provider_id, "name": s.name,
             "country": s.country, "latitude": s.geodetic.latitude,
             "longitude": s.geodetic.longitude,
             "altitude": s.geodetic.altitude, "bands": sorted(s.bands),
             "status": s.status, "data_rate": s.data_rate,
             "setup_cost": s.setup_cost, "monthly_cost": s.monthly_cost,
             "license_cost": s.license_cost, "per_pass_cost": s.per_pass_cost,
             "per_minute_cost": s.per_minute_cost}
            for s in scenario.stations],
        "satellites": [
            {"id": s.id, "name": s.name, "data_rate": s.data_rate,
             "supported_bands": sorted(s.supported_bands),
             "tle": {
                 "norad_id": s.tle.norad_id,
                 "epoch": s.tle.epoch.to_iso(),
                 "epoch_seconds": s.tle.epoch.seconds_since_reference,
                 "mean_motion": s.tle.mean_motion,
                 "eccentricity": s.tle.eccentricity,
                 "inclination": s.tle.inclination,
                 "raan": s.tle.raan,
                 "arg_perigee": s.tle.arg_perigee,
                 "mean_anomaly": s.tle.mean_anomaly,
                 "bstar": s.tle.bstar,
                 "ndot": s.tle.ndot,
                 "nddot": s.tle.nddot,
                 "name": s.tle.name,
                 "line1": s.tle.line1,
                 "line2": s.tle.line2,
             }}
            for s in scenario.satellites],
    }


def scenario_from_dict(data: dict) -> Scenario:
    providers = tuple(Provider(**p) for p in data["providers"])
    stations = tuple(
        StationLocation(
            id=s["id"], provider_id=s["provider_id"], name=s["name"],
            country=s["country"],
            geodetic=GeodeticPoint(latitude=s["latitude"],
                                   longitude=s["longitude"],
                                   altitude=s.get("altitude", 0.0)),
            bands=frozenset(s["bands"]), status=s["status"],
            data_rate=s["data_rate"], setup_cost=s["setup_cost"],
            monthly_cost=s["monthly_cost"], license_cost=s["license_cost"],
            per_pass_cost=s["per_pass_cost"],
            per_minute_cost=s["per_minute_cost"])
        for s in data["stations"])
    satellites = []
    for s in data["satellites"]:
        t = s["tle"]
        epoch = (EpochUtc(t["epoch_seconds"]) if "epoch_seconds" in t
                 else EpochUtc.from_iso(t["epoch"]))
        record = TleRecord(
            norad_id=t["norad_id"], epoch=epoch,
            mean_motion=t["mean_motion"], eccentricity=t["eccentricity"],
            inclination=t["inclination"], raan=t["raan"],
            arg_perigee=t["arg_perigee"], mean_anomaly=t["mean_anomaly"],
            bstar=t["bstar"], ndot=t.get("ndot", 0.0),
            nddot=t.get("nddot", 0.0), name=t.get("name", ""),
            line1=t.get("line1", ""), line2=t.get("line2", ""))
        satellites.append(Satellite(
            id=s["id"], name=s["name"], data_rate=s["data_rate"],
            supported_bands=frozenset(s["supported_bands"]), tle=record))
    satellites = tuple(satellites)
    return Scenario(
        satellites=satellites, providers=providers, stations=stations,
        sim_start=EpochUtc.from_iso(data["sim_start"]),
        sim_end=EpochUtc.from_iso(data["sim_end"]),
        opt_start=EpochUtc.from_iso(data["opt_start"]),
        opt_end=EpochUtc.from_iso(data["opt_end"]),
        config=config_from_dict(data["config"]),
        rng_seed=data["seed"])


def save_scenario(scenario: Scenario, path) -> None:
    with open(path, "w") as fh:
        json.dump(scenario_to_dict(scenario), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_scenario(path) -> Scenario:
    with open(path) as fh:
        return scenario_from_dict(json.load(fh))
