"""NumPy implementations of the propagation and visibility kernels.

This module is the reference backend; ``gsnetopt.kernels._core`` is a
compiled twin with identical signatures and semantics.  Both operate on
packed float64 parameter vectors so the two backends share all set-up
code.

SGP4 parameter packing (see ``astro.propagation`` for the initializer)::

    0 bstar    7 isimp   14 d3      21 t2cof   28 nodedot
    1 ecco     8 aycof   15 d4      22 t3cof   29 xlcof
    2 argpo    9 con41   16 delmo   23 t4cof   30 xmcof
    3 inclo   10 cc1     17 eta     24 t5cof   31 nodecf
    4 mo      11 cc4     18 argpdot 25 x1mth2  32 xke
    5 no      12 cc5     19 omgcof  26 x7thm1  33 j2
    6 nodeo   13 d2      20 sinmao  27 mdot    34 radiusearthkm

J2 parameter packing::

    0 a_m  1 ecc  2 incl  3 node0  4 argp0  5 m0
    6 n    7 node_dot    8 argp_dot  9 m_dot   (radians, metres, seconds)

Error codes returned by ``sgp4_grid``: 0 ok, 2 eccentricity out of
range, 4 negative semi-latus rectum, 6 decayed (radius below surface).
"""
from __future__ import annotations

import numpy as np

N_SGP4_PARAMS = 35
N_J2_PARAMS = 10

_TWOPI = 2.0 * np.pi


def sgp4_grid(params: np.ndarray, tsince_min: np.ndarray):
    """Propagate one satellite to many epochs.

    Parameters
    ----------
    params : (35,) float64
        Packed constants from the SGP4 initializer.
    tsince_min : (N,) float64
        Minutes since the element-set epoch.

    Returns
    -------
    pos_km : (N, 3) float64, TEME frame
    vel_kms : (N, 3) float64, TEME frame
    error : (N,) int32
    """
    p = np.asarray(params, dtype=float)
    t = np.asarray(tsince_min, dtype=float)
    n = t.shape[0]
    error = np.zeros(n, dtype=np.int32)

    (bstar, ecco, argpo, inclo, mo, no_unkozai, nodeo) = p[0:7]
    isimp = p[7] != 0.0
    (aycof, con41, cc1, cc4, cc5, d2, d3, d4, delmo, eta, argpdot, omgcof,
     sinmao, t2cof, t3cof, t4cof, t5cof, x1mth2, x7thm1, mdot, nodedot,
     xlcof, xmcof, nodecf, xke, j2, radiusearthkm) = p[8:35]

    vkmpersec = radiusearthkm * xke / 60.0

    # Secular gravity and atmospheric drag.
    xmdf = mo + mdot * t
    argpdf = argpo + argpdot * t
    nodedf = nodeo + nodedot * t
    t2 = t * t
    nodem = nodedf + nodecf * t2
    tempa = 1.0 - cc1 * t
    tempe = bstar * cc4 * t
    templ = t2cof * t2
    if not isimp:
        delomg = omgcof * t
        delmtemp = 1.0 + eta * np.cos(xmdf)
        delm = xmcof * (delmtemp * delmtemp * delmtemp - delmo)
        temp = delomg + delm
        mm = xmdf + temp
        argpm = argpdf - temp
        t3 = t2 * t
        t4 = t3 * t
        tempa = tempa - d2 * t2 - d3 * t3 - d4 * t4
        tempe = tempe + bstar * cc5 * (np.sin(mm) - sinmao)
        templ = templ + t3cof * t3 + t4 * (t4cof + t * t5cof)
    else:
        mm = xmdf
        argpm = argpdf

    am = (xke / no_unkozai) ** (2.0 / 3.0) * tempa * tempa
    nm = xke / am ** 1.5
    em = ecco - tempe

    bad_e = (em >= 1.0) | (em < -0.001)
    error[bad_e & (error == 0)] = 2
    em = np.clip(em, 1.0e-6, None)

    mm = mm + no_unkozai * templ
    xlm = mm + argpm + nodem

    nodem = np.where(nodem >= 0.0, np.remainder(nodem, _TWOPI),
                     -np.remainder(-nodem, _TWOPI))
    argpm = np.remainder(argpm, _TWOPI)
    xlm = np.remainder(xlm, _TWOPI)
    mm = np.remainder(xlm - argpm - nodem, _TWOPI)

    # Long-period periodics (near-earth: inclination is unperturbed).
    sinip = np.sin(inclo)
    cosip = np.cos(inclo)
    axnl = em * np.cos(argpm)
    temp = 1.0 / (am * (1.0 - em * em))
    aynl = em * np.sin(argpm) + temp * aycof
    xl = mm + argpm + nodem + temp * xlcof * axnl

    # Kepler's equation: damped Newton corrections, fixed iteration count.
    u = np.remainder(xl - nodem, _TWOPI)
    eo1 = u.copy()
    for _ in range(10):
        sineo1 = np.sin(eo1)
        coseo1 = np.cos(eo1)
        tem5 = 1.0 - coseo1 * axnl - sineo1 * aynl
        tem5 = (u - aynl * coseo1 + axnl * sineo1 - eo1) / tem5
        tem5 = np.clip(tem5, -0.95, 0.95)
        eo1 = eo1 + tem5
        if np.max(np.abs(tem5)) < 1.0e-12:
            break
    sineo1 = np.sin(eo1)
    coseo1 = np.cos(eo1)

    # Short-period preliminary quantities.
    ecose = axnl * coseo1 + aynl * sineo1
    esine = axnl * sineo1 - aynl * coseo1
    el2 = axnl * axnl + aynl * aynl
    pl = am * (1.0 - el2)
    bad_pl = pl < 0.0
    error[bad_pl & (error == 0)] = 4
    pl = np.where(bad_pl, np.nan, pl)

    rl = am * (1.0 - ecose)
    rdotl = np.sqrt(am) * esine / rl
    rvdotl = np.sqrt(pl) / rl
    betal = np.sqrt(np.clip(1.0 - el2, 0.0, None))
    temp = esine / (1.0 + betal)
    sinu = am / rl * (sineo1 - aynl - axnl * temp)
    cosu = am / rl * (coseo1 - axnl + aynl * temp)
    su = np.arctan2(sinu, cosu)
    sin2u = (cosu + cosu) * sinu
    cos2u = 1.0 - 2.0 * sinu * sinu
    temp = 1.0 / pl
    temp1 = 0.5 * j2 * temp
    temp2 = temp1 * temp

    mrt = rl * (1.0 - 1.5 * temp2 * betal * con41) \
        + 0.5 * temp1 * x1mth2 * cos2u
    su = su - 0.25 * temp2 * x7thm1 * sin2u
    xnode = nodem + 1.5 * temp2 * cosip * sin2u
    xinc = inclo + 1.5 * temp2 * cosip * sinip * cos2u
    mvt = rdotl - nm * temp1 * x1mth2 * sin2u / xke
    rvdot = rvdotl + nm * temp1 * (x1mth2 * cos2u + 1.5 * con41) / xke

    # Orientation vectors and final state.
    sinsu = np.sin(su)
    cossu = np.cos(su)
    snod = np.sin(xnode)
    cnod = np.cos(xnode)
    sini = np.sin(xinc)
    cosi = np.cos(xinc)
    xmx = -snod * cosi
    xmy = cnod * cosi
    ux = xmx * sinsu + cnod * cossu
    uy = xmy * sinsu + snod * cossu
    uz = sini * sinsu
    vx = xmx * cossu - cnod * sinsu
    vy = xmy * cossu - snod * sinsu
    vz = sini * cossu

    decayed = mrt < 1.0
    error[decayed & (error == 0)] = 6

    mr = mrt * radiusearthkm
    pos = np.empty((n, 3))
    vel = np.empty((n, 3))
    pos[:, 0] = mr * ux
    pos[:, 1] = mr * uy
    pos[:, 2] = mr * uz
    vel[:, 0] = (mvt * ux + rvdot * vx) * vkmpersec
    vel[:, 1] = (mvt * uy + rvdot * vy) * vkmpersec
    vel[:, 2] = (mvt * uz + rvdot * vz) * vkmpersec
    bad = error != 0
    if np.any(bad):
        pos[bad] = np.nan
        vel[bad] = np.nan
    return pos, vel, error


def j2_grid(params: np.ndarray, dt_s: np.ndarray):
    """Kepler propagation with secular J2 rates; returns TEME metres.

    Returns ``(pos_m, vel_ms, error)`` with the same error convention as
    :func:`sgp4_grid` (only code 6 can occur, for sub-surface radii).
    """
    p = np.asarray(params, dtype=float)
    dt = np.asarray(dt_s, dtype=float)
    a, ecc, incl, node0, argp0, m0, n, node_dot, argp_dot, m_dot = p

    node = node0 + node_dot * dt
    argp = argp0 + argp_dot * dt
    m = np.remainder(m0 + m_dot * dt, _TWOPI)

    # Newton iteration for the eccentric anomaly.
    e_anom = np.where(ecc < 0.8, m, np.pi * np.ones_like(m))
    for _ in range(12):
        f = e_anom - ecc * np.sin(e_anom) - m
        fp = 1.0 - ecc * np.cos(e_anom)
        step = f / fp
        e_anom = e_anom - step
        if np.max(np.abs(step)) < 1.0e-13:
            break

    cos_e = np.cos(e_anom)
    sin_e = np.sin(e_anom)
    r = a * (1.0 - ecc * cos_e)
    sqrt_1me2 = np.sqrt(1.0 - ecc * ecc)

    # Perifocal coordinates and velocities.
    x_pf = a * (cos_e - ecc)
    y_pf = a * sqrt_1me2 * sin_e
    mu = n * n * a ** 3
    rdot_coef = np.sqrt(mu * a) / r
    vx_pf = -rdot_coef * sin_e
    vy_pf = rdot_coef * sqrt_1me2 * cos_e

    cos_o = np.cos(argp)
    sin_o = np.sin(argp)
    cos_n = np.cos(node)
    sin_n = np.sin(node)
    cos_i = np.cos(incl)
    sin_i = np.sin(incl)

    r11 = cos_n * cos_o - sin_n * sin_o * cos_i
    r12 = -cos_n * sin_o - sin_n * cos_o * cos_i
    r21 = sin_n * cos_o + cos_n * sin_o * cos_i
    r22 = -sin_n * sin_o + cos_n * cos_o * cos_i
    r31 = sin_o * sin_i
    r32 = cos_o * sin_i

    pos = np.empty(dt.shape + (3,))
    vel = np.empty_like(pos)
    pos[..., 0] = r11 * x_pf + r12 * y_pf
    pos[..., 1] = r21 * x_pf + r22 * y_pf
    pos[..., 2] = r31 * x_pf + r32 * y_pf
    vel[..., 0] = r11 * vx_pf + r12 * vy_pf
    vel[..., 1] = r21 * vx_pf + r22 * vy_pf
    vel[..., 2] = r31 * vx_pf + r32 * vy_pf

    error = np.zeros(dt.shape, dtype=np.int32)
    error[r < 6378137.0 * 0.98] = 6
    return pos, vel, error


def elevation_series(sat_ecef_m: np.ndarray, station_ecef_m: np.ndarray,
                     up: np.ndarray) -> np.ndarray:
    """Elevation of each satellite position above a station's geodetic
    horizon plane, degrees in [-90, 90].

    A coincident satellite/station point yields NaN; callers decide how
    to handle that degenerate geometry.
    """
    pos = np.asarray(sat_ecef_m, dtype=float)
    delta = pos - np.asarray(station_ecef_m, dtype=float)
    rng = np.sqrt(np.einsum("ij,ij->i", delta, delta))
    with np.errstate(invalid="ignore", divide="ignore"):
        sin_el = np.where(rng > 0.0, delta @ np.asarray(up, dtype=float) / rng,
                          np.nan)
    return np.degrees(np.arcsin(np.clip(sin_el, -1.0, 1.0)))
