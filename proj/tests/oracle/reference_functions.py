#!/usr/bin/env python3
"""Reference evaluation of the 14 benchmark functions in 60-digit arithmetic.

Generates data/functions.json: for every function and each of the dimensions
2, 3 and 30, the documented optimum point plus a handful of deterministic probe
points, with the expected value computed here. Probe coordinates are dyadic
rationals so the double inputs seen by the C++ code are exactly the values
evaluated here.

Usage: reference_functions.py [output_path]
"""

import json
import random
import sys

import mpmath as mp

mp.mp.dps = 60

NAMES = [
    "Bent Cigar",
    "Discus",
    "Weierstrass",
    "Modified Schwefel",
    "Katsuura",
    "HappyCat",
    "HGBat",
    "Expanded Griewank plus Rosenbrock",
    "Expanded Scaffer's F6",
    "Rosenbrock's",
    "Griewank's",
    "Rastrigin's",
    "High Conditioned Elliptic",
    "Ackley",
]

PI = mp.pi


def bent_cigar(x):
    return x[0] ** 2 + mp.mpf(10) ** 6 * sum(v**2 for v in x[1:])


def discus(x):
    return mp.mpf(10) ** 6 * x[0] ** 2 + sum(v**2 for v in x[1:])


def weierstrass(x):
    a, b, kmax = mp.mpf("0.5"), mp.mpf(3), 20
    d = len(x)
    total = mp.mpf(0)
    for v in x:
        for k in range(kmax + 1):
            total += a**k * mp.cos(2 * PI * b**k * (v + mp.mpf("0.5")))
    bias = sum(a**k * mp.cos(PI * b**k) for k in range(kmax + 1))
    return total - d * bias


def modified_schwefel(x):
    d = len(x)
    total = mp.mpf(0)
    for v in x:
        z = v + mp.mpf("420.9687462275036")
        if abs(z) <= 500:
            g = z * mp.sin(mp.sqrt(abs(z)))
        elif z > 500:
            r = 500 - mp.fmod(z, 500)
            g = r * mp.sin(mp.sqrt(abs(r))) - (z - 500) ** 2 / (10000 * d)
        else:
            r = mp.fmod(abs(z), 500) - 500
            g = r * mp.sin(mp.sqrt(abs(r))) - (z + 500) ** 2 / (10000 * d)
        total += g
    return mp.mpf("418.9829") * d - total


def katsuura(x):
    d = len(x)
    prod = mp.mpf(1)
    for i, v in enumerate(x, start=1):
        inner = mp.mpf(0)
        for j in range(1, 33):
            t = mp.mpf(2) ** j * v
            inner += abs(t - mp.nint(t)) / mp.mpf(2) ** j
        prod *= (1 + i * inner) ** (mp.mpf(10) / mp.mpf(d) ** mp.mpf("1.2"))
    c = mp.mpf(10) / d**2
    return c * prod - c


def happycat(x):
    d = len(x)
    r2 = sum(v**2 for v in x)
    s = sum(x)
    return abs(r2 - d) ** mp.mpf("0.25") + (r2 / 2 + s) / d + mp.mpf("0.5")


def hgbat(x):
    d = len(x)
    r2 = sum(v**2 for v in x)
    s = sum(x)
    return mp.sqrt(abs(r2**2 - s**2)) + (r2 / 2 + s) / d + mp.mpf("0.5")


def _griewank1(v):
    return v**2 / 4000 - mp.cos(v) + 1


def _rosen2(u, v):
    return 100 * (u**2 - v) ** 2 + (u - 1) ** 2


def griewank_rosenbrock(x):
    d = len(x)
    return sum(_griewank1(_rosen2(x[i], x[(i + 1) % d])) for i in range(d))


def _scaffer(u, v):
    r2 = u**2 + v**2
    return mp.mpf("0.5") + (mp.sin(mp.sqrt(r2)) ** 2 - mp.mpf("0.5")) / (1 + mp.mpf("0.001") * r2) ** 2


def scaffer(x):
    d = len(x)
    return sum(_scaffer(x[i], x[(i + 1) % d]) for i in range(d))


def rosenbrock(x):
    return sum(_rosen2(x[i], x[i + 1]) for i in range(len(x) - 1))


def griewank(x):
    s = sum(v**2 for v in x) / 4000
    p = mp.mpf(1)
    for i, v in enumerate(x, start=1):
        p *= mp.cos(v / mp.sqrt(i))
    return 1 + s - p


def rastrigin(x):
    return sum(v**2 - 10 * mp.cos(2 * PI * v) + 10 for v in x)


def elliptic(x):
    d = len(x)
    if d == 1:
        return x[0] ** 2
    return sum(mp.mpf(10) ** (6 * mp.mpf(i) / (d - 1)) * v**2 for i, v in enumerate(x))


def ackley(x):
    d = len(x)
    r2 = sum(v**2 for v in x) / d
    c = sum(mp.cos(2 * PI * v) for v in x) / d
    return -20 * mp.exp(-mp.mpf("0.2") * mp.sqrt(r2)) - mp.exp(c) + 20 + mp.e


FUNCTIONS = [
    bent_cigar,
    discus,
    weierstrass,
    modified_schwefel,
    katsuura,
    happycat,
    hgbat,
    griewank_rosenbrock,
    scaffer,
    rosenbrock,
    griewank,
    rastrigin,
    elliptic,
    ackley,
]

# Documented optimum location of each standard definition.
OPTIMUM_COORD = {1: 0.0, 2: 0.0, 3: 0.0, 4: 0.0, 5: 0.0, 6: -1.0, 7: -1.0, 8: 1.0,
                 9: 0.0, 10: 1.0, 11: 0.0, 12: 0.0, 13: 0.0, 14: 0.0}


def dyadic(rng, magnitude):
    # Multiples of 1/64 within [-magnitude, magnitude].
    steps = int(magnitude * 64)
    return rng.randint(-steps, steps) / 64.0


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "data/functions.json"
    rng = random.Random(20241019)
    entries = []
    for fid, (name, fn) in enumerate(zip(NAMES, FUNCTIONS), start=1):
        for dim in (2, 3, 30):
            points = [[OPTIMUM_COORD[fid]] * dim]
            # Weierstrass loses absolute accuracy in double precision as |x| grows
            # (3^20 * x inside cos), so its probes stay near the origin.
            magnitude = 2.0 if fid == 3 else 100.0
            for _ in range(3):
                points.append([dyadic(rng, magnitude) for _ in range(dim)])
            probes = []
            for i, p in enumerate(points):
                value = fn([mp.mpf(v) for v in p])
                probes.append({"x": p, "expected_f": float(value), "optimum": i == 0})
            entries.append({"id": f"F{fid}", "name": name, "dim": dim, "probe_points": probes})
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(entries, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
