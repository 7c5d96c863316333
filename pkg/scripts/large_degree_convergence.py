"""Relative error of the large-degree expansions against exact invariants, by truncation order.

    python3 scripts/large_degree_convergence.py --g 3 --d 100 --p 3
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import mpmath

from gwasym.arith import big
from gwasym.asymptotics import hurwitz_large_degree_prediction, xp_large_degree_prediction
from gwasym.asymptotics.large_degree import hurwitz_chat_table, xp_chat_table
from gwasym.geometries import hurwitz_gw, xp_gw_poly


@dataclass
class ConvergenceConfig:
    g: int = 3
    d: int = 100
    p: int = 3
    dps: int = 60


def rows(cfg: ConvergenceConfig):
    xp_exact = big(xp_gw_poly(cfg.g, cfg.d, cfg.p))
    hz_exact = big(hurwitz_gw(cfg.g, cfg.d))
    top_xp = max(j for j, _ in xp_chat_table())
    top_hz = max(j for j, _ in hurwitz_chat_table())
    for j in range(max(top_xp, top_hz) + 1):
        out = [j]
        for exact, pred, top in ((xp_exact, xp_large_degree_prediction, top_xp), (hz_exact, hurwitz_large_degree_prediction, top_hz)):
            for corrected in (False, True):
                if j > top:
                    out.append("-")
                    continue
                args = (cfg.g, cfg.d, cfg.p, j) if pred is xp_large_degree_prediction else (cfg.g, cfg.d, j)
                out.append(mpmath.nstr(pred(*args, corrected=corrected) / exact - 1, 4))
        yield out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g", type=int, default=3)
    ap.add_argument("--d", type=int, default=100)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--dps", type=int, default=60)
    ns = ap.parse_args()
    cfg = ConvergenceConfig(ns.g, ns.d, ns.p, ns.dps)
    with mpmath.workdps(cfg.dps):
        print(f"# g={cfg.g} d={cfg.d} p={cfg.p}; ratio - 1")
        print("jmax\txp_bundled\txp_corrected\thurwitz_bundled\thurwitz_corrected")
        for r in rows(cfg):
            print(*r, sep="\t")


if __name__ == "__main__":
    main()
