"""Extract large-degree expansion coefficients numerically from exact Jacobi sums.

For each ``n`` the Jacobi term of the local-curve formula is sampled on the
perfect squares ``d = l^2`` and expanded in ``1/l = d^(-1/2)`` by repeated
Richardson extrapolation. The normalized coefficients are printed next to the
tabulated values ``sum_j0 chat^(j)_j0(f) n^j0``, as bundled and as corrected.

    python3 scripts/extract_large_degree_coeffs.py --p 3 --n 1 2 3
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import mpmath

from gwasym.arith import big
from gwasym.asymptotics import SequenceSample, richardson
from gwasym.asymptotics.large_degree import xp_action_scale, xp_chat_table
from gwasym.geometries.local_curve import xp_critical


@dataclass
class ExtractConfig:
    p: int = 3
    ns: tuple = (1, 2, 3)
    lmin: int = 20
    lmax: int = 40
    order: int = 12
    jmax: int = 4
    dps: int = 500


def jacobi(N, a, b, z):
    zm, zp = (z - 1) / 2, (z + 1) / 2
    return mpmath.fsum(mpmath.binomial(N + a, N - j) * mpmath.binomial(N + b, j) * zm**j * zp ** (N - j) for j in range(N + 1))


def scaled_sequence(cfg: ExtractConfig, n: int) -> SequenceSample:
    f = (cfg.p - 1) ** 2
    _, tc = xp_critical(cfg.p)
    z = mpmath.mpf(f - 2) / f
    pts = []
    for l in range(cfg.lmin, cfg.lmax + 1):
        d = l * l
        P = mpmath.mpf(f) ** (d + n) * n * jacobi(d - 1, -d - n, d * (f - 1) + n, z)
        pts.append((l, P * (-1) ** (d - 1) * mpmath.exp(-d * tc) * mpmath.mpf(l) ** (-n)))
    return SequenceSample(tuple(pts))


def extract(cfg: ExtractConfig, n: int) -> list:
    cur, out = scaled_sequence(cfg, n), []
    for _ in range(cfg.jmax + 1):
        est = richardson(cur, cfg.order).last()
        out.append(est)
        cur = SequenceSample(tuple((l, (v - est) * l) for l, v in cur.points))
    return out


def tabulated(j: int, n: int, f: int, corrected: bool):
    if j == 0:
        return mpmath.mpf(1)
    table = xp_chat_table(corrected)
    return mpmath.fsum(table[(j, j0)](f) * mpmath.mpf(n) ** j0 for j0 in range(1, j + 1))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--dps", type=int, default=500)
    ap.add_argument("--jmax", type=int, default=4)
    ns = ap.parse_args()
    cfg = ExtractConfig(p=ns.p, ns=tuple(ns.n), dps=ns.dps, jmax=ns.jmax)
    f = (cfg.p - 1) ** 2
    with mpmath.workdps(cfg.dps):
        _, tc = xp_critical(cfg.p)
        scale = xp_action_scale(cfg.p)
        print(f"# p={cfg.p} f={f}  columns: n j extracted bundled corrected")
        for n in cfg.ns:
            for j, c in enumerate(extract(cfg, n)):
                if (n - j) <= 0 and (n - j) % 2 == 0:
                    continue  # 1/Gamma vanishes
                base = mpmath.exp(n * tc / 2) * scale ** (-n) * mpmath.rgamma(mpmath.mpf(n - j) / 2)
                val = c / base * (f * (f - 1)) ** (mpmath.mpf(j) / 2)
                row = [mpmath.nstr(val, 15), mpmath.nstr(tabulated(j, n, f, False), 15), mpmath.nstr(tabulated(j, n, f, True), 15)]
                print(n, j, *row, sep="\t")


if __name__ == "__main__":
    main()
