"""Generate the sample TLE catalog shipped under gsnetopt/data.

The records are synthetic (analyst-range catalog numbers) but fully
valid element sets: correct checksums, epoch at the default simulation
start, and mean motions consistent with the stated altitudes.  A few
records sit outside the 300-1000 km experiment band, plus one
GEO-period record, so catalog filtering paths have material to reject.

Run from the repository root:  python3 tools/gen_sample_catalog.py
"""
import math
from pathlib import Path

MU = 398600.8          # km^3/s^2
RE = 6378.135          # km
EPOCH_FIELD = "24255.00000000"   # 2024-09-11 00:00:00 UTC

# (name suffix, altitude km, inclination deg, ecc, raan, argp, ma, bstar)
IN_BAND = [
    ("01", 420.0, 51.60, 0.0006, 12.0, 45.0, 310.0, 2.1e-5),
    ("02", 450.0, 53.00, 0.0010, 95.0, 120.0, 240.0, 3.0e-5),
    ("03", 480.0, 53.05, 0.0004, 187.0, 200.0, 160.0, 2.4e-5),
    ("04", 500.0, 45.00, 0.0008, 278.0, 60.0, 300.0, 1.8e-5),
    ("05", 520.0, 97.45, 0.0012, 330.0, 90.0, 270.0, 1.2e-5),
    ("06", 540.0, 45.02, 0.0005, 45.0, 180.0, 180.0, 2.2e-5),
    ("07", 560.0, 97.60, 0.0009, 140.0, 250.0, 110.0, 1.4e-5),
    ("08", 575.0, 53.10, 0.0011, 223.0, 300.0, 60.0, 2.6e-5),
    ("09", 590.0, 63.40, 0.0014, 310.0, 30.0, 330.0, 1.6e-5),
    ("10", 610.0, 42.00, 0.0007, 28.0, 150.0, 210.0, 2.0e-5),
    ("11", 630.0, 97.80, 0.0010, 118.0, 210.0, 150.0, 1.1e-5),
    ("12", 650.0, 55.00, 0.0013, 205.0, 270.0, 90.0, 1.9e-5),
    ("13", 670.0, 60.00, 0.0006, 293.0, 330.0, 30.0, 1.5e-5),
    ("14", 690.0, 97.90, 0.0009, 15.0, 75.0, 285.0, 1.0e-5),
    ("15", 705.0, 98.20, 0.0011, 103.0, 135.0, 225.0, 9.0e-6),
    ("16", 720.0, 48.00, 0.0008, 190.0, 195.0, 165.0, 1.7e-5),
    ("17", 740.0, 52.00, 0.0012, 277.0, 255.0, 105.0, 1.3e-5),
    ("18", 760.0, 70.00, 0.0005, 4.0, 315.0, 45.0, 1.2e-5),
    ("19", 780.0, 98.40, 0.0010, 92.0, 15.0, 345.0, 8.0e-6),
    ("20", 800.0, 65.00, 0.0015, 179.0, 105.0, 255.0, 1.1e-5),
    ("21", 820.0, 28.50, 0.0009, 266.0, 165.0, 195.0, 1.4e-5),
    ("22", 840.0, 56.00, 0.0007, 353.0, 225.0, 135.0, 1.0e-5),
    ("23", 860.0, 98.60, 0.0012, 80.0, 285.0, 75.0, 7.0e-6),
    ("24", 880.0, 50.00, 0.0006, 167.0, 345.0, 15.0, 9.0e-6),
    ("25", 900.0, 74.00, 0.0011, 254.0, 45.8, 300.5, 8.0e-6),
    ("26", 920.0, 98.80, 0.0008, 341.0, 106.0, 240.7, 6.0e-6),
    ("27", 470.0, 51.64, 0.0013, 68.0, 166.0, 181.2, 2.8e-5),
    ("28", 505.0, 53.21, 0.0004, 155.0, 226.0, 121.4, 2.3e-5),
    ("29", 565.0, 97.52, 0.0010, 242.0, 286.0, 61.6, 1.3e-5),
    ("30", 615.0, 61.00, 0.0007, 329.0, 346.0, 1.8, 1.5e-5),
]
OUT_OF_BAND = [
    ("31", 1200.0, 66.00, 0.0010, 50.0, 80.0, 200.0, 5.0e-6),
    ("32", 250.0, 51.60, 0.0012, 130.0, 140.0, 100.0, 6.0e-5),
    ("33", 35786.0, 0.05, 0.0002, 80.0, 0.0, 0.0, 0.0),
]


def checksum(line68: str) -> int:
    total = 0
    for ch in line68:
        if ch.isdigit():
            total += int(ch)
        elif ch == "-":
            total += 1
    return total % 10


def bstar_field(value: float) -> str:
    if value == 0.0:
        return " 00000-0"
    exp = math.floor(math.log10(abs(value))) + 1
    mant = abs(value) / 10.0 ** exp
    mant_digits = f"{round(mant * 1e5):05d}"
    sign = " " if value >= 0 else "-"
    return f"{sign}{mant_digits}{exp:+d}".replace("+", "-") \
        if exp < 0 else f"{sign}{mant_digits}+{exp}"


def make_record(norad: int, name: str, alt_km: float, incl: float, ecc: float,
                raan: float, argp: float, ma: float, bstar: float) -> str:
    a = RE + alt_km
    n_rad_s = math.sqrt(MU / a ** 3)
    n_rev_day = n_rad_s * 86400.0 / (2.0 * math.pi)
    intl = f"24{norad - 90000 + 900:03d}A"
    l1 = (f"1 {norad:05d}U {intl:<8s} {EPOCH_FIELD} "
          f" .00000000  00000-0 {bstar_field(bstar)} 0  999")
    l1 += str(checksum(l1))
    l2 = (f"2 {norad:05d} {incl:8.4f} {raan:8.4f} {round(ecc * 1e7):07d} "
          f"{argp:8.4f} {ma:8.4f} {n_rev_day:11.8f}  100")
    l2 += str(checksum(l2))
    assert len(l1) == 69 and len(l2) == 69, (len(l1), len(l2))
    return f"{name}\n{l1}\n{l2}\n"


def main() -> None:
    out = []
    for i, (suffix, *rest) in enumerate(IN_BAND + OUT_OF_BAND):
        out.append(make_record(90001 + i, f"SAMPLE-{suffix}", *rest))
    target = Path(__file__).resolve().parents[1] / "src" / "gsnetopt" / \
        "data" / "sample_catalog.tle"
    target.write_text("".join(out))
    print(f"wrote {len(IN_BAND) + len(OUT_OF_BAND)} records to {target}")


if __name__ == "__main__":
    main()
