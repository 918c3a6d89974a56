"""Benchmark the compiled kernel core against the NumPy fallback.

Times the three hot kernels on contact-search-sized workloads and, as
an end-to-end sample, a one-day visibility sweep.  Run from a source
checkout after ``pip install -e .``:

    python3 benchmarks/bench_kernels.py [--steps N]

The backend used by the package at import time is reported too; set
``GSNETOPT_PURE_PYTHON=1`` to force the fallback in applications.
"""
import argparse
import time

import numpy as np

from gsnetopt import kernels
from gsnetopt.astro import (
    EpochUtc,
    GeodeticPoint,
    Sgp4Propagator,
    enu_basis,
    geodetic_to_ecef,
    parse_tle_catalog,
)
from gsnetopt.model import bundled_tle_catalog


def timeit(fn, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=200_000,
                        help="time-grid length per kernel call")
    args = parser.parse_args()

    backends = kernels.backends()
    print(f"active backend: {kernels.BACKEND}; "
          f"available: {', '.join(backends)}")
    if len(backends) < 2:
        print("compiled backend not built; nothing to compare")

    records = parse_tle_catalog(bundled_tle_catalog())
    record = next(r for r in records if 300e3 <= r.mean_altitude_m <= 1000e3)
    prop = Sgp4Propagator(record)
    tsince = np.linspace(0.0, 1440.0, args.steps)
    dt_s = tsince * 60.0

    station = GeodeticPoint(69.0, 18.0, 0.0)
    sta_ecef = geodetic_to_ecef(station)
    sta_up = np.ascontiguousarray(enu_basis(station)[2])

    from gsnetopt.astro.propagation import KeplerJ2Propagator
    j2 = KeplerJ2Propagator(record)

    rows = []
    for name, impl in backends.items():
        pos, _, _ = impl.sgp4_grid(prop._params, tsince)
        rows.append((name, "sgp4_grid",
                     timeit(lambda: impl.sgp4_grid(prop._params, tsince))))
        rows.append((name, "j2_grid",
                     timeit(lambda: impl.j2_grid(j2._params, dt_s))))
        pos_m = np.ascontiguousarray(pos * 1000.0)
        rows.append((name, "elevation_series",
                     timeit(lambda: impl.elevation_series(pos_m, sta_ecef,
                                                          sta_up))))

    print(f"\n{'backend':<10} {'kernel':<18} {'time':>10}   "
          f"{args.steps} epochs")
    base = {}
    for name, kernel, seconds in rows:
        base.setdefault(kernel, seconds if name == "python" else None)
    for name, kernel, seconds in rows:
        speedup = ""
        ref = base.get(kernel)
        if name != "python" and ref:
            speedup = f"  ({ref / seconds:4.1f}x vs python)"
        print(f"{name:<10} {kernel:<18} {seconds * 1e3:8.1f} ms{speedup}")

    # End-to-end sample with whichever backend the package selected:
    # one satellite against 14 stations for a day at the default step.
    from gsnetopt.contacts import find_contacts
    from gsnetopt.model import (Satellite, bundled_station_dataset,
                                filter_stations_by_bands)
    _, stations = bundled_station_dataset()
    stations = filter_stations_by_bands(stations, {"Ka"})
    sat = Satellite(0, record.name or "SAT", record, data_rate=1.2e9)
    window = (record.epoch, record.epoch + 86400.0)
    t0 = time.perf_counter()
    windows = find_contacts([sat], stations, window)
    dt = time.perf_counter() - t0
    print(f"\nend-to-end ({kernels.BACKEND}): 1 satellite x "
          f"{len(stations)} stations x 1 day -> {len(windows)} windows "
          f"in {dt * 1e3:.0f} ms")


if __name__ == "__main__":
    main()
