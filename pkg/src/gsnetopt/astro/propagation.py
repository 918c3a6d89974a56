"""Satellite state propagation from mean elements.

Two propagators share one interface:

``Sgp4Propagator``
    Near-earth SGP4 mean-element theory (WGS-72 constants), the standard
    model for two-line element sets.  Element sets with periods of 225
    minutes or longer would require the deep-space extension and are
    rejected at construction.

``KeplerJ2Propagator``
    Keplerian motion with secular J2 rates on node, perigee, and mean
    anomaly.  A documented lower-fidelity fallback useful for synthetic
    orbits (including GEO-like cases) and for cross-checks.

Both produce Earth-fixed states by rotating the TEME output through
Greenwich mean sidereal time.  The hot per-epoch math lives in
``gsnetopt.kernels``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import kernels
from .frames import rotate_about_z, teme_to_ecef_velocity
from .timebase import EpochUtc, gmst_rad
from .tle import TleRecord

_DEG2RAD = math.pi / 180.0

# WGS-72 gravity constants, the conventional set for this theory.
_MU = 398600.8                      # km^3/s^2
_RADIUSEARTHKM = 6378.135
_XKE = 60.0 / math.sqrt(_RADIUSEARTHKM ** 3 / _MU)
_J2 = 0.001082616
_J3 = -0.00000253881
_J4 = -0.00000165597
_J3OJ2 = _J3 / _J2

#: Accuracy contract window for mean-element propagation, seconds.
MAX_PROPAGATION_SPAN_S = 30.0 * 86400.0

_ERROR_TEXT = {
    2: "eccentricity left the valid range during propagation",
    4: "semi-latus rectum became negative",
    6: "satellite decayed (radius below Earth surface)",
}


class PropagationError(RuntimeError):
    """Raised when a state cannot be produced for the requested epoch."""

    def __init__(self, message: str, epoch: EpochUtc | None = None):
        super().__init__(message)
        self.epoch = epoch


class UnsupportedElementsError(PropagationError):
    """The element set falls outside the supported model regime."""


@dataclass(frozen=True, slots=True)
class EcefState:
    """Earth-fixed position (m) and velocity (m/s) at an epoch."""

    epoch: EpochUtc
    position: tuple[float, float, float]
    velocity: tuple[float, float, float] = (0.0, 0.0, 0.0)

    @property
    def radius(self) -> float:
        x, y, z = self.position
        return math.sqrt(x * x + y * y + z * z)


def _sgp4_init_params(record: TleRecord) -> np.ndarray:
    """Derive the packed near-earth SGP4 constants for one element set.

    This is the classical initialization sequence of the SGP4 theory:
    un-Kozai the mean motion, then build the secular/short-period
    coefficient set consumed by the per-epoch kernel.
    """
    ecco = record.eccentricity
    inclo = record.inclination * _DEG2RAD
    nodeo = record.raan * _DEG2RAD
    argpo = record.arg_perigee * _DEG2RAD
    mo = record.mean_anomaly * _DEG2RAD
    no_kozai = record.mean_motion * 2.0 * math.pi / 1440.0   # rad/min
    bstar = record.bstar

    x2o3 = 2.0 / 3.0
    eccsq = ecco * ecco
    omeosq = 1.0 - eccsq
    rteosq = math.sqrt(omeosq)
    cosio = math.cos(inclo)
    cosio2 = cosio * cosio
    sinio = math.sin(inclo)

    # Recover the un-Kozai'd mean motion.
    ak = (_XKE / no_kozai) ** x2o3
    d1 = 0.75 * _J2 * (3.0 * cosio2 - 1.0) / (rteosq * omeosq)
    del_ = d1 / (ak * ak)
    adel = ak * (1.0 - del_ * del_ - del_ * (1.0 / 3.0 + 134.0 * del_ * del_ / 81.0))
    del_ = d1 / (adel * adel)
    no_unkozai = no_kozai / (1.0 + del_)

    if no_unkozai <= 0.0:
        raise UnsupportedElementsError("non-positive mean motion after un-Kozai")
    if 2.0 * math.pi / no_unkozai >= 225.0:
        raise UnsupportedElementsError(
            "orbital period >= 225 min requires the deep-space theory, "
            "which this propagator does not implement")

    ao = (_XKE / no_unkozai) ** x2o3
    po = ao * omeosq
    con42 = 1.0 - 5.0 * cosio2
    con41 = -con42 - cosio2 - cosio2
    posq = po * po
    rp = ao * (1.0 - ecco)

    isimp = 1.0 if rp < 220.0 / _RADIUSEARTHKM + 1.0 else 0.0
    sfour = 78.0 / _RADIUSEARTHKM + 1.0
    qzms2ttemp = (120.0 - 78.0) / _RADIUSEARTHKM
    qzms24 = qzms2ttemp ** 4
    perige = (rp - 1.0) * _RADIUSEARTHKM
    if perige < 156.0:
        sfour = perige - 78.0
        if perige < 98.0:
            sfour = 20.0
        qzms24temp = (120.0 - sfour) / _RADIUSEARTHKM
        qzms24 = qzms24temp ** 4
        sfour = sfour / _RADIUSEARTHKM + 1.0

    pinvsq = 1.0 / posq
    tsi = 1.0 / (ao - sfour)
    eta = ao * ecco * tsi
    etasq = eta * eta
    eeta = ecco * eta
    psisq = abs(1.0 - etasq)
    coef = qzms24 * tsi ** 4
    coef1 = coef / psisq ** 3.5
    cc2 = coef1 * no_unkozai * (
        ao * (1.0 + 1.5 * etasq + eeta * (4.0 + etasq))
        + 0.375 * _J2 * tsi / psisq * con41
        * (8.0 + 3.0 * etasq * (8.0 + etasq)))
    cc1 = bstar * cc2
    cc3 = 0.0
    if ecco > 1.0e-4:
        cc3 = -2.0 * coef * tsi * _J3OJ2 * no_unkozai * sinio / ecco
    x1mth2 = 1.0 - cosio2
    cc4 = 2.0 * no_unkozai * coef1 * ao * omeosq * (
        eta * (2.0 + 0.5 * etasq)
        + ecco * (0.5 + 2.0 * etasq)
        - _J2 * tsi / (ao * psisq)
        * (-3.0 * con41 * (1.0 - 2.0 * eeta + etasq * (1.5 - 0.5 * eeta))
           + 0.75 * x1mth2 * (2.0 * etasq - eeta * (1.0 + etasq))
           * math.cos(2.0 * argpo)))
    cc5 = 2.0 * coef1 * ao * omeosq * (1.0 + 2.75 * (etasq + eeta) + eeta * etasq)
    cosio4 = cosio2 * cosio2
    temp1 = 1.5 * _J2 * pinvsq * no_unkozai
    temp2 = 0.5 * temp1 * _J2 * pinvsq
    temp3 = -0.46875 * _J4 * pinvsq * pinvsq * no_unkozai
    mdot = no_unkozai + 0.5 * temp1 * rteosq * con41 \
        + 0.0625 * temp2 * rteosq * (13.0 - 78.0 * cosio2 + 137.0 * cosio4)
    argpdot = (-0.5 * temp1 * con42
               + 0.0625 * temp2 * (7.0 - 114.0 * cosio2 + 395.0 * cosio4)
               + temp3 * (3.0 - 36.0 * cosio2 + 49.0 * cosio4))
    xhdot1 = -temp1 * cosio
    nodedot = xhdot1 + (0.5 * temp2 * (4.0 - 19.0 * cosio2)
                        + 2.0 * temp3 * (3.0 - 7.0 * cosio2)) * cosio
    omgcof = bstar * cc3 * math.cos(argpo)
    xmcof = 0.0
    if ecco > 1.0e-4:
        xmcof = -x2o3 * coef * bstar / eeta
    nodecf = 3.5 * omeosq * xhdot1 * cc1
    t2cof = 1.5 * cc1
    if abs(cosio + 1.0) > 1.5e-12:
        xlcof = -0.25 * _J3OJ2 * sinio * (3.0 + 5.0 * cosio) / (1.0 + cosio)
    else:
        xlcof = -0.25 * _J3OJ2 * sinio * (3.0 + 5.0 * cosio) / 1.5e-12
    aycof = -0.5 * _J3OJ2 * sinio
    delmotemp = 1.0 + eta * math.cos(mo)
    delmo = delmotemp ** 3
    sinmao = math.sin(mo)
    x7thm1 = 7.0 * cosio2 - 1.0

    d2 = d3 = d4 = t3cof = t4cof = t5cof = 0.0
    if isimp == 0.0:
        cc1sq = cc1 * cc1
        d2 = 4.0 * ao * tsi * cc1sq
        temp = d2 * tsi * cc1 / 3.0
        d3 = (17.0 * ao + sfour) * temp
        d4 = 0.5 * temp * ao * tsi * (221.0 * ao + 31.0 * sfour) * cc1
        t3cof = d2 + 2.0 * cc1sq
        t4cof = 0.25 * (3.0 * d3 + cc1 * (12.0 * d2 + 10.0 * cc1sq))
        t5cof = 0.2 * (3.0 * d4 + 12.0 * cc1 * d3 + 6.0 * d2 * d2
                       + 15.0 * cc1sq * (2.0 * d2 + cc1sq))

    params = np.empty(kernels.N_SGP4_PARAMS)
    params[0:7] = (bstar, ecco, argpo, inclo, mo, no_unkozai, nodeo)
    params[7] = isimp
    params[8:35] = (aycof, con41, cc1, cc4, cc5, d2, d3, d4, delmo, eta,
                    argpdot, omgcof, sinmao, t2cof, t3cof, t4cof, t5cof,
                    x1mth2, x7thm1, mdot, nodedot, xlcof, xmcof, nodecf,
                    _XKE, _J2, _RADIUSEARTHKM)
    return params


class _PropagatorBase:
    record: TleRecord

    def _teme_grid(self, offsets_s: np.ndarray):
        raise NotImplementedError

    def propagate_grid(self, epochs_s: np.ndarray):
        """Earth-fixed positions (m) for an array of epochs.

        ``epochs_s`` are seconds since J2000.  Returns ``(pos, err)``
        where failed epochs carry a nonzero error code and NaN rows.
        """
        epochs_s = np.asarray(epochs_s, dtype=float)
        offsets = epochs_s - self.record.epoch.seconds
        pos_teme, _vel, err = self._teme_grid(offsets)
        pos_ecef = rotate_about_z(pos_teme, gmst_rad(epochs_s))
        return pos_ecef, err

    def propagate(self, epoch: EpochUtc) -> EcefState:
        """Earth-fixed state at a single epoch.

        Raises :class:`PropagationError` on decayed or otherwise invalid
        propagation, carrying the failing epoch.
        """
        offsets = np.array([epoch.seconds - self.record.epoch.seconds])
        pos_teme, vel_teme, err = self._teme_grid(offsets)
        if err[0] != 0:
            raise PropagationError(
                _ERROR_TEXT.get(int(err[0]), f"propagation error {int(err[0])}"),
                epoch=epoch)
        theta = gmst_rad(epoch.seconds)
        pos = rotate_about_z(pos_teme[0], theta)
        vel = teme_to_ecef_velocity(vel_teme[0], pos, epoch.seconds)
        return EcefState(epoch, tuple(pos), tuple(vel))


class Sgp4Propagator(_PropagatorBase):
    """Near-earth SGP4 propagation of one element set."""

    def __init__(self, record: TleRecord):
        self.record = record
        self._params = _sgp4_init_params(record)
        # The theory initializes by evaluating at the epoch itself;
        # surface errors (e.g. decayed elements) immediately.
        _, _, err = kernels.sgp4_grid(self._params, np.zeros(1))
        if err[0] != 0:
            raise PropagationError(
                _ERROR_TEXT.get(int(err[0]), f"propagation error {int(err[0])}"),
                epoch=record.epoch)

    def _teme_grid(self, offsets_s: np.ndarray):
        tsince_min = np.ascontiguousarray(offsets_s / 60.0)
        pos_km, vel_kms, err = kernels.sgp4_grid(self._params, tsince_min)
        return pos_km * 1000.0, vel_kms * 1000.0, err


class KeplerJ2Propagator(_PropagatorBase):
    """Keplerian motion with secular J2 drift of node/perigee/anomaly."""

    def __init__(self, record: TleRecord):
        self.record = record
        n = record.mean_motion_rad_s
        a = (_MU * 1e9 / (n * n)) ** (1.0 / 3.0)
        ecc = record.eccentricity
        incl = record.inclination * _DEG2RAD
        p_km = (a / 1000.0) * (1.0 - ecc * ecc)
        re_over_p = _RADIUSEARTHKM / p_km
        cos_i = math.cos(incl)
        factor = 1.5 * _J2 * re_over_p * re_over_p * n
        node_dot = -factor * cos_i
        argp_dot = 0.5 * factor * (5.0 * cos_i * cos_i - 1.0)
        m_dot = n + 0.5 * factor * math.sqrt(1.0 - ecc * ecc) \
            * (3.0 * cos_i * cos_i - 1.0)
        self._params = np.array([
            a, ecc, incl,
            record.raan * _DEG2RAD, record.arg_perigee * _DEG2RAD,
            record.mean_anomaly * _DEG2RAD,
            n, node_dot, argp_dot, m_dot,
        ])

    def _teme_grid(self, offsets_s: np.ndarray):
        offsets_s = np.ascontiguousarray(offsets_s, dtype=float)
        return kernels.j2_grid(self._params, offsets_s)


PROPAGATOR_MODELS = {
    "sgp4": Sgp4Propagator,
    "j2": KeplerJ2Propagator,
}


def make_propagator(record: TleRecord, model: str = "sgp4") -> _PropagatorBase:
    """Construct a propagator by configuration name (``sgp4`` or ``j2``)."""
    try:
        cls = PROPAGATOR_MODELS[model]
    except KeyError:
        raise ValueError(f"unknown propagator model {model!r}; "
                         f"expected one of {sorted(PROPAGATOR_MODELS)}") from None
    return cls(record)


def propagate(record: TleRecord, epoch: EpochUtc, model: str = "sgp4") -> EcefState:
    """One-shot convenience wrapper around :func:`make_propagator`."""
    return make_propagator(record, model).propagate(epoch)
