#!/usr/bin/env python3
"""Generate Taylor coefficients of the Riemann-Siegel remainder functions C0..C4.

Each C_k(p) is expanded in z = 1 - 2p around p = 1/2 and written to
src/rs_coefficients.inc as a C++ table.  Requires mpmath.
"""
import sys
import mpmath as mp

mp.mp.dps = 50
PI = mp.pi
NTERMS = 70  # Taylor terms of Psi about p = 1/2


def psi(p):
    return mp.cos(2 * PI * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * PI * p)


def psi_series():
    # Psi is entire; sample it on a circle around 1/2 to get the Taylor
    # coefficients without touching the removable singularities.
    return mp.taylor(psi, mp.mpf(1) / 2, NTERMS + 14, method="quad", radius=mp.mpf(1) / 2)


def derivative(coeffs, k):
    """Coefficients (in p - 1/2) of the k-th derivative of a power series."""
    out = []
    for j in range(len(coeffs) - k):
        out.append(coeffs[j + k] * mp.ff(j + k, k))
    return out


def combine(terms, length):
    res = [mp.mpf(0)] * length
    for weight, series in terms:
        for j in range(min(length, len(series))):
            res[j] += weight * series[j]
    return res


def main(out_path):
    a = psi_series()
    d = lambda k: derivative(a, k)
    L = NTERMS
    pi2, pi4, pi6, pi8 = PI**2, PI**4, PI**6, PI**8
    cs = [
        combine([(1, d(0))], L),
        combine([(-1 / (96 * pi2), d(3))], L),
        combine([(1 / (64 * pi2), d(2)), (1 / (18432 * pi4), d(6))], L),
        combine([(-1 / (64 * pi2), d(1)), (-1 / (3840 * pi4), d(5)),
                 (-1 / (5308416 * pi6), d(9))], L),
        combine([(1 / (128 * pi2), d(0)), (19 / (24576 * pi4), d(4)),
                 (11 / (5898240 * pi6), d(8)), (1 / (2038431744 * pi8), d(12))], L),
    ]
    # p - 1/2 = -z/2
    zs = [[mp.chop(mp.re(c[j]) * (-mp.mpf(1) / 2) ** j, tol=mp.mpf("1e-35")) for j in range(L)]
          for c in cs]
    # drop the tail once terms are below 1e-22 for |z| <= 1
    trimmed = []
    for c in zs:
        n = len(c)
        while n > 1 and all(abs(x) < mp.mpf("1e-22") for x in c[n - 1:]):
            n -= 1
        trimmed.append(c[:n])
    with open(out_path, "w") as f:
        f.write("// Generated by tools/gen_rs_coefficients.py; do not edit.\n")
        f.write("// Taylor coefficients of C_k(p) in z = 1 - 2p, k = 0..4.\n\n")
        for k, c in enumerate(trimmed):
            f.write(f"constexpr std::array<double, {len(c)}> kC{k} = {{\n")
            for x in c:
                f.write(f"    {mp.nstr(x, 20, min_fixed=0, max_fixed=0)},\n")
            f.write("};\n\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/rs_coefficients.inc")
