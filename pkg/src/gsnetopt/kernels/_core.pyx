# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled propagation and visibility kernels.

Twin of ``gsnetopt.kernels._ref``: identical signatures, identical
parameter packing, identical error codes.  Kept in lockstep with the
NumPy backend; any semantic change must land in both.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, cos, fabs, fmod, asin, sin, sqrt, pow, NAN

cnp.import_array()

N_SGP4_PARAMS = 35
N_J2_PARAMS = 10

cdef double TWOPI = 6.283185307179586476925286766559


cdef inline double _wrap_twopi(double x) nogil:
    cdef double r = fmod(x, TWOPI)
    if r < 0.0:
        r += TWOPI
    return r


def sgp4_grid(cnp.ndarray[cnp.float64_t, ndim=1] params,
              cnp.ndarray[cnp.float64_t, ndim=1] tsince_min):
    """Propagate one satellite to many epochs; TEME km and km/s."""
    cdef Py_ssize_t n = tsince_min.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pos = np.empty((n, 3))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] vel = np.empty((n, 3))
    cdef cnp.ndarray[cnp.int32_t, ndim=1] error = np.zeros(n, dtype=np.int32)

    cdef double bstar = params[0], ecco = params[1], argpo = params[2]
    cdef double inclo = params[3], mo = params[4], no_unkozai = params[5]
    cdef double nodeo = params[6]
    cdef bint isimp = params[7] != 0.0
    cdef double aycof = params[8], con41 = params[9], cc1 = params[10]
    cdef double cc4 = params[11], cc5 = params[12], d2 = params[13]
    cdef double d3 = params[14], d4 = params[15], delmo = params[16]
    cdef double eta = params[17], argpdot = params[18], omgcof = params[19]
    cdef double sinmao = params[20], t2cof = params[21], t3cof = params[22]
    cdef double t4cof = params[23], t5cof = params[24], x1mth2 = params[25]
    cdef double x7thm1 = params[26], mdot = params[27], nodedot = params[28]
    cdef double xlcof = params[29], xmcof = params[30], nodecf = params[31]
    cdef double xke = params[32], j2 = params[33], radiusearthkm = params[34]

    cdef double vkmpersec = radiusearthkm * xke / 60.0
    cdef double sinip = sin(inclo), cosip = cos(inclo)

    cdef Py_ssize_t k
    cdef int it
    cdef double t, xmdf, argpdf, nodedf, t2, t3, t4, nodem, tempa, tempe
    cdef double templ, delomg, delmtemp, delm, temp, mm, argpm, am, nm, em
    cdef double xlm, axnl, aynl, xl, u, eo1, tem5, sineo1, coseo1
    cdef double ecose, esine, el2, pl, rl, rdotl, rvdotl, betal, sinu, cosu
    cdef double su, sin2u, cos2u, temp1, temp2, mrt, xnode, xinc, mvt, rvdot
    cdef double sinsu, cossu, snod, cnod, sini, cosi, xmx, xmy
    cdef double ux, uy, uz, vxo, vyo, vzo, mr

    with nogil:
        for k in range(n):
            t = tsince_min[k]
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
                delmtemp = 1.0 + eta * cos(xmdf)
                delm = xmcof * (delmtemp * delmtemp * delmtemp - delmo)
                temp = delomg + delm
                mm = xmdf + temp
                argpm = argpdf - temp
                t3 = t2 * t
                t4 = t3 * t
                tempa = tempa - d2 * t2 - d3 * t3 - d4 * t4
                tempe = tempe + bstar * cc5 * (sin(mm) - sinmao)
                templ = templ + t3cof * t3 + t4 * (t4cof + t * t5cof)
            else:
                mm = xmdf
                argpm = argpdf

            am = pow(xke / no_unkozai, 2.0 / 3.0) * tempa * tempa
            nm = xke / pow(am, 1.5)
            em = ecco - tempe
            if em >= 1.0 or em < -0.001:
                error[k] = 2
                pos[k, 0] = pos[k, 1] = pos[k, 2] = NAN
                vel[k, 0] = vel[k, 1] = vel[k, 2] = NAN
                continue
            if em < 1.0e-6:
                em = 1.0e-6

            mm = mm + no_unkozai * templ
            xlm = mm + argpm + nodem
            if nodem >= 0.0:
                nodem = fmod(nodem, TWOPI)
            else:
                nodem = -fmod(-nodem, TWOPI)
            argpm = _wrap_twopi(argpm)
            xlm = _wrap_twopi(xlm)
            mm = _wrap_twopi(xlm - argpm - nodem)

            axnl = em * cos(argpm)
            temp = 1.0 / (am * (1.0 - em * em))
            aynl = em * sin(argpm) + temp * aycof
            xl = mm + argpm + nodem + temp * xlcof * axnl

            u = _wrap_twopi(xl - nodem)
            eo1 = u
            for it in range(10):
                sineo1 = sin(eo1)
                coseo1 = cos(eo1)
                tem5 = 1.0 - coseo1 * axnl - sineo1 * aynl
                tem5 = (u - aynl * coseo1 + axnl * sineo1 - eo1) / tem5
                if tem5 > 0.95:
                    tem5 = 0.95
                elif tem5 < -0.95:
                    tem5 = -0.95
                eo1 = eo1 + tem5
                if fabs(tem5) < 1.0e-12:
                    break
            sineo1 = sin(eo1)
            coseo1 = cos(eo1)

            ecose = axnl * coseo1 + aynl * sineo1
            esine = axnl * sineo1 - aynl * coseo1
            el2 = axnl * axnl + aynl * aynl
            pl = am * (1.0 - el2)
            if pl < 0.0:
                error[k] = 4
                pos[k, 0] = pos[k, 1] = pos[k, 2] = NAN
                vel[k, 0] = vel[k, 1] = vel[k, 2] = NAN
                continue

            rl = am * (1.0 - ecose)
            rdotl = sqrt(am) * esine / rl
            rvdotl = sqrt(pl) / rl
            betal = sqrt(1.0 - el2) if el2 < 1.0 else 0.0
            temp = esine / (1.0 + betal)
            sinu = am / rl * (sineo1 - aynl - axnl * temp)
            cosu = am / rl * (coseo1 - axnl + aynl * temp)
            su = atan2(sinu, cosu)
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

            sinsu = sin(su)
            cossu = cos(su)
            snod = sin(xnode)
            cnod = cos(xnode)
            sini = sin(xinc)
            cosi = cos(xinc)
            xmx = -snod * cosi
            xmy = cnod * cosi
            ux = xmx * sinsu + cnod * cossu
            uy = xmy * sinsu + snod * cossu
            uz = sini * sinsu
            vxo = xmx * cossu - cnod * sinsu
            vyo = xmy * cossu - snod * sinsu
            vzo = sini * cossu

            if mrt < 1.0:
                error[k] = 6
                pos[k, 0] = pos[k, 1] = pos[k, 2] = NAN
                vel[k, 0] = vel[k, 1] = vel[k, 2] = NAN
                continue

            mr = mrt * radiusearthkm
            pos[k, 0] = mr * ux
            pos[k, 1] = mr * uy
            pos[k, 2] = mr * uz
            vel[k, 0] = (mvt * ux + rvdot * vxo) * vkmpersec
            vel[k, 1] = (mvt * uy + rvdot * vyo) * vkmpersec
            vel[k, 2] = (mvt * uz + rvdot * vzo) * vkmpersec

    return pos, vel, error


def j2_grid(cnp.ndarray[cnp.float64_t, ndim=1] params,
            cnp.ndarray[cnp.float64_t, ndim=1] dt_s):
    """Kepler + secular-J2 propagation; TEME metres and m/s."""
    cdef Py_ssize_t n = dt_s.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] pos = np.empty((n, 3))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] vel = np.empty((n, 3))
    cdef cnp.ndarray[cnp.int32_t, ndim=1] error = np.zeros(n, dtype=np.int32)

    cdef double a = params[0], ecc = params[1], incl = params[2]
    cdef double node0 = params[3], argp0 = params[4], m0 = params[5]
    cdef double nmm = params[6], node_dot = params[7], argp_dot = params[8]
    cdef double m_dot = params[9]

    cdef double mu = nmm * nmm * a * a * a
    cdef double sqrt_1me2 = sqrt(1.0 - ecc * ecc)
    cdef double sqrt_mua = sqrt(mu * a)

    cdef Py_ssize_t k
    cdef int it
    cdef double dt, node, argp, m, e_anom, f, fp, step
    cdef double cos_e, sin_e, r, x_pf, y_pf, rdot_coef, vx_pf, vy_pf
    cdef double cos_o, sin_o, cos_n, sin_n, cos_i, sin_i
    cdef double r11, r12, r21, r22, r31, r32

    cos_i = cos(incl)
    sin_i = sin(incl)

    with nogil:
        for k in range(n):
            dt = dt_s[k]
            node = node0 + node_dot * dt
            argp = argp0 + argp_dot * dt
            m = _wrap_twopi(m0 + m_dot * dt)

            e_anom = m if ecc < 0.8 else 3.141592653589793
            for it in range(12):
                f = e_anom - ecc * sin(e_anom) - m
                fp = 1.0 - ecc * cos(e_anom)
                step = f / fp
                e_anom = e_anom - step
                if fabs(step) < 1.0e-13:
                    break

            cos_e = cos(e_anom)
            sin_e = sin(e_anom)
            r = a * (1.0 - ecc * cos_e)
            x_pf = a * (cos_e - ecc)
            y_pf = a * sqrt_1me2 * sin_e
            rdot_coef = sqrt_mua / r
            vx_pf = -rdot_coef * sin_e
            vy_pf = rdot_coef * sqrt_1me2 * cos_e

            cos_o = cos(argp)
            sin_o = sin(argp)
            cos_n = cos(node)
            sin_n = sin(node)

            r11 = cos_n * cos_o - sin_n * sin_o * cos_i
            r12 = -cos_n * sin_o - sin_n * cos_o * cos_i
            r21 = sin_n * cos_o + cos_n * sin_o * cos_i
            r22 = -sin_n * sin_o + cos_n * cos_o * cos_i
            r31 = sin_o * sin_i
            r32 = cos_o * sin_i

            pos[k, 0] = r11 * x_pf + r12 * y_pf
            pos[k, 1] = r21 * x_pf + r22 * y_pf
            pos[k, 2] = r31 * x_pf + r32 * y_pf
            vel[k, 0] = r11 * vx_pf + r12 * vy_pf
            vel[k, 1] = r21 * vx_pf + r22 * vy_pf
            vel[k, 2] = r31 * vx_pf + r32 * vy_pf

            if r < 6378137.0 * 0.98:
                error[k] = 6

    return pos, vel, error


def elevation_series(cnp.ndarray[cnp.float64_t, ndim=2] sat_ecef_m,
                     cnp.ndarray[cnp.float64_t, ndim=1] station_ecef_m,
                     cnp.ndarray[cnp.float64_t, ndim=1] up):
    """Elevation above the station's geodetic horizon, degrees."""
    cdef Py_ssize_t n = sat_ecef_m.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n)
    cdef double sx = station_ecef_m[0], sy = station_ecef_m[1]
    cdef double sz = station_ecef_m[2]
    cdef double ux = up[0], uy = up[1], uz = up[2]
    cdef double rad2deg = 57.29577951308232
    cdef Py_ssize_t k
    cdef double dx, dy, dz, rng, s

    with nogil:
        for k in range(n):
            dx = sat_ecef_m[k, 0] - sx
            dy = sat_ecef_m[k, 1] - sy
            dz = sat_ecef_m[k, 2] - sz
            rng = sqrt(dx * dx + dy * dy + dz * dz)
            if rng <= 0.0:
                out[k] = NAN
                continue
            s = (dx * ux + dy * uy + dz * uz) / rng
            if s > 1.0:
                s = 1.0
            elif s < -1.0:
                s = -1.0
            out[k] = asin(s) * rad2deg
    return out
