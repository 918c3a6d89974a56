"""Earth-fixed geometry: WGS84 geodetic conversions and frame rotations.

The inertial-to-Earth-fixed rotation is a single Z rotation by Greenwich
mean sidereal time; polar motion and nutation are deliberately ignored
(sub-kilometre station-frame error, far below the elevation-mask
sensitivity of contact prediction).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .timebase import OMEGA_EARTH, gmst_rad

WGS84_A = 6378137.0
WGS84_F = 1.0 / 298.257223563
WGS84_B = WGS84_A * (1.0 - WGS84_F)
WGS84_E2 = WGS84_F * (2.0 - WGS84_F)

#: Mean Earth radius used for coverage-cone geometry, metres.
EARTH_RADIUS_MEAN = 6371000.0


@dataclass(frozen=True, slots=True)
class GeodeticPoint:
    """Geodetic coordinates on the WGS84 ellipsoid (degrees, metres)."""

    latitude: float
    longitude: float
    altitude: float = 0.0

    def __post_init__(self):
        if not -90.0 <= self.latitude <= 90.0:
            raise ValueError(f"latitude {self.latitude} outside [-90, 90]")
        if not -180.0 <= self.longitude <= 180.0:
            raise ValueError(f"longitude {self.longitude} outside [-180, 180]")


def geodetic_to_ecef(point: GeodeticPoint) -> np.ndarray:
    """WGS84 geodetic coordinates to Earth-fixed Cartesian metres."""
    lat = math.radians(point.latitude)
    lon = math.radians(point.longitude)
    sin_lat = math.sin(lat)
    cos_lat = math.cos(lat)
    n = WGS84_A / math.sqrt(1.0 - WGS84_E2 * sin_lat * sin_lat)
    x = (n + point.altitude) * cos_lat * math.cos(lon)
    y = (n + point.altitude) * cos_lat * math.sin(lon)
    z = (n * (1.0 - WGS84_E2) + point.altitude) * sin_lat
    return np.array([x, y, z])


def ecef_to_geodetic(position) -> GeodeticPoint:
    """Earth-fixed Cartesian metres to WGS84 geodetic coordinates.

    Iterative latitude recovery; converges well below 1e-6 degrees for
    any point from the surface up to GEO altitudes.
    """
    x, y, z = (float(v) for v in position)
    lon = math.atan2(y, x)
    p = math.hypot(x, y)
    lat = math.atan2(z, p * (1.0 - WGS84_E2))
    for _ in range(12):
        sin_lat = math.sin(lat)
        n = WGS84_A / math.sqrt(1.0 - WGS84_E2 * sin_lat * sin_lat)
        alt = p / math.cos(lat) - n if abs(lat) < math.radians(89.9) \
            else z / sin_lat - n * (1.0 - WGS84_E2)
        lat_new = math.atan2(z, p * (1.0 - WGS84_E2 * n / (n + alt)))
        if abs(lat_new - lat) < 1e-13:
            lat = lat_new
            break
        lat = lat_new
    sin_lat = math.sin(lat)
    n = WGS84_A / math.sqrt(1.0 - WGS84_E2 * sin_lat * sin_lat)
    if abs(lat) < math.radians(89.9):
        alt = p / math.cos(lat) - n
    else:
        alt = z / sin_lat - n * (1.0 - WGS84_E2)
    return GeodeticPoint(math.degrees(lat), math.degrees(lon), alt)


def enu_basis(point: GeodeticPoint) -> np.ndarray:
    """Rows east, north, up of the local geodetic horizon frame."""
    lat = math.radians(point.latitude)
    lon = math.radians(point.longitude)
    sin_lat, cos_lat = math.sin(lat), math.cos(lat)
    sin_lon, cos_lon = math.sin(lon), math.cos(lon)
    return np.array([
        [-sin_lon, cos_lon, 0.0],
        [-sin_lat * cos_lon, -sin_lat * sin_lon, cos_lat],
        [cos_lat * cos_lon, cos_lat * sin_lon, sin_lat],
    ])


def rotate_about_z(positions: np.ndarray, angles) -> np.ndarray:
    """Rotate position vectors about +Z by the given angles (radians).

    ``positions`` is (N, 3) or (3,); ``angles`` broadcasts against N.
    Rotation by +theta maps inertial coordinates into the Earth-fixed
    frame when theta is the sidereal angle.
    """
    pos = np.atleast_2d(np.asarray(positions, dtype=float))
    theta = np.broadcast_to(np.asarray(angles, dtype=float), pos.shape[:1])
    cos_t = np.cos(theta)
    sin_t = np.sin(theta)
    out = np.empty_like(pos)
    out[:, 0] = cos_t * pos[:, 0] + sin_t * pos[:, 1]
    out[:, 1] = -sin_t * pos[:, 0] + cos_t * pos[:, 1]
    out[:, 2] = pos[:, 2]
    if np.ndim(positions) == 1:
        return out[0]
    return out


def teme_to_ecef(positions: np.ndarray, seconds_since_j2000) -> np.ndarray:
    """Rotate TEME positions (metres) into the Earth-fixed frame."""
    return rotate_about_z(positions, gmst_rad(seconds_since_j2000))


def ecef_to_teme(positions: np.ndarray, seconds_since_j2000) -> np.ndarray:
    """Inverse of :func:`teme_to_ecef`."""
    theta = np.asarray(gmst_rad(seconds_since_j2000))
    return rotate_about_z(positions, -theta)


def teme_to_ecef_velocity(velocities: np.ndarray, positions_ecef: np.ndarray,
                          seconds_since_j2000) -> np.ndarray:
    """Rotate TEME velocities and remove the Earth-rotation term."""
    v_rot = rotate_about_z(velocities, gmst_rad(seconds_since_j2000))
    omega = np.array([0.0, 0.0, OMEGA_EARTH])
    pos = np.atleast_2d(positions_ecef)
    v = np.atleast_2d(v_rot) - np.cross(np.broadcast_to(omega, pos.shape), pos)
    if np.ndim(velocities) == 1:
        return v[0]
    return v
