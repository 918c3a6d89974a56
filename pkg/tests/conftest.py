import numpy as np
import pytest

from gsnetopt.astro import EpochUtc, GeodeticPoint, TleRecord, parse_tle_catalog
from gsnetopt.contacts import ContactWindow
from gsnetopt.model import (
    ConstraintConfig,
    Provider,
    Satellite,
    Scenario,
    StationLocation,
    bundled_station_dataset,
    bundled_tle_catalog,
)

# The canonical verification element set distributed with the standard
# propagation test suite, and its published TEME state at the epoch.
CANONICAL_TLE_LINE1 = \
    "1 00005U 58002B   00179.78495062  .00000023  00000-0  28098-4 0  4753"
CANONICAL_TLE_LINE2 = \
    "2 00005  34.2682 348.7242 1859667 331.7664  19.3264 10.82419157413667"
CANONICAL_POS_KM = (7022.46529266, -1400.08296755, 0.03995155)
CANONICAL_VEL_KMS = (1.893841015, 6.405893759, 4.534807250)


def make_tle(mean_motion=15.0, eccentricity=0.001, inclination=53.0,
             raan=0.0, arg_perigee=0.0, mean_anomaly=0.0, bstar=0.0,
             epoch=0.0, norad_id=90900, name="TESTSAT") -> TleRecord:
    return TleRecord(
        norad_id=norad_id, epoch=EpochUtc(epoch), mean_motion=mean_motion,
        eccentricity=eccentricity, inclination=inclination, raan=raan,
        arg_perigee=arg_perigee, mean_anomaly=mean_anomaly, bstar=bstar,
        name=name)


def make_station(station_id=0, provider_id=0, lat=0.0, lon=0.0,
                 data_rate=1.0e9, per_pass=100.0, per_minute=0.0,
                 setup=50_000.0, monthly=2_000.0, license_=3_000.0,
                 bands=("S",), name=None) -> StationLocation:
    return StationLocation(
        id=station_id, provider_id=provider_id,
        name=name or f"ST{station_id}", country="Nowhere",
        geodetic=GeodeticPoint(latitude=lat, longitude=lon),
        bands=frozenset(bands), data_rate=data_rate,
        setup_cost=setup, monthly_cost=monthly, license_cost=license_,
        per_pass_cost=per_pass, per_minute_cost=per_minute)


def make_scenario(config, n_providers=1, stations_per_provider=1,
                  n_satellites=1, sim_s=600.0, opt_factor=52.0,
                  sat_rate=1.0e9) -> Scenario:
    providers = tuple(Provider(p, f"P{p}", integration_cost=100_000.0)
                      for p in range(n_providers))
    stations = []
    for p in range(n_providers):
        for k in range(stations_per_provider):
            sid = p * stations_per_provider + k
            stations.append(make_station(sid, p, lat=float(k), lon=float(p)))
    sats = tuple(Satellite(i, f"SAT{i}", make_tle(), data_rate=sat_rate)
                 for i in range(n_satellites))
    t0 = EpochUtc(0.0)
    return Scenario(
        satellites=sats, providers=providers, stations=tuple(stations),
        sim_start=t0, sim_end=t0 + sim_s,
        opt_start=t0, opt_end=t0 + sim_s * opt_factor,
        config=config)


def make_contact(cid, start, end, station=0, sat=0, provider=0,
                 rate=1.0e9) -> ContactWindow:
    return ContactWindow(
        id=cid, satellite_id=sat, station_id=station, provider_id=provider,
        start=EpochUtc(float(start)), end=EpochUtc(float(end)),
        duration=float(end) - float(start), data_rate=rate,
        max_elevation=45.0)


@pytest.fixture(scope="session")
def bundled():
    providers, stations = bundled_station_dataset()
    return providers, stations


@pytest.fixture(scope="session")
def catalog():
    return parse_tle_catalog(bundled_tle_catalog())
