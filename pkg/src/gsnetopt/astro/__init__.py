"""Orbit and Earth-geometry foundations: epochs, TLE parsing, frames,
and satellite propagation."""
from .frames import (
    EARTH_RADIUS_MEAN,
    GeodeticPoint,
    ecef_to_geodetic,
    ecef_to_teme,
    enu_basis,
    geodetic_to_ecef,
    teme_to_ecef,
)
from .propagation import (
    EcefState,
    KeplerJ2Propagator,
    PropagationError,
    Sgp4Propagator,
    UnsupportedElementsError,
    make_propagator,
    propagate,
)
from .timebase import SIDEREAL_DAY_S, EpochUtc, gmst_rad
from .tle import TleDiagnostic, TleError, TleRecord, parse_tle_catalog, parse_tle_pair, tle_checksum

__all__ = [
    "EARTH_RADIUS_MEAN",
    "EcefState",
    "EpochUtc",
    "GeodeticPoint",
    "KeplerJ2Propagator",
    "PropagationError",
    "Sgp4Propagator",
    "SIDEREAL_DAY_S",
    "TleDiagnostic",
    "TleError",
    "TleRecord",
    "UnsupportedElementsError",
    "ecef_to_geodetic",
    "ecef_to_teme",
    "enu_basis",
    "geodetic_to_ecef",
    "gmst_rad",
    "make_propagator",
    "parse_tle_catalog",
    "parse_tle_pair",
    "propagate",
    "teme_to_ecef",
    "tle_checksum",
]
