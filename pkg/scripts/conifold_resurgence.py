"""Conifold checks of the large-order machinery: diagonal action, multi-action tower, saddle lines.

    python3 scripts/conifold_resurgence.py --dps 200
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import mpmath

from gwasym.arith import big
from gwasym.asymptotics import diagonal_action_extract, diagonal_prediction, saddle_linear_fit
from gwasym.geometries import conifold_free_energy, conifold_gw, conifold_tower_prediction
from gwasym.invariants import GwTable


@dataclass
class ResurgenceConfig:
    t_diag: int = 6
    q: int = 1
    dmax_diag: int = 40
    t_tower: int = 2
    g_tower: tuple = (60, 80, 100)
    mmax: int = 6
    saddle_genera: range = range(20, 61)
    saddle_ts: tuple = (4, 5, 6, 7, 8)
    dps: int = 200


def diagonal_report(cfg: ResurgenceConfig):
    half = cfg.t_diag // 2
    gw = GwTable("conifold", {(half * d + cfg.q, d): conifold_gw(half * d + cfg.q, d) for d in range(1, cfg.dmax_diag + 1)})
    print(f"## diagonal t={cfg.t_diag} q={cfg.q}")
    for order in range(5):
        fit = diagonal_action_extract(gw, cfg.t_diag, cfg.q, order)
        print(f"order {order}: A/(2 pi t) - 1 = {mpmath.nstr(fit.value / (2 * mpmath.pi * cfg.t_diag) - 1, 4)}")
    g = half * cfg.dmax_diag + cfg.q
    exact = big(conifold_gw(g, cfg.dmax_diag)) * mpmath.exp(-cfg.dmax_diag * cfg.t_diag)
    for h in range(7):
        err = diagonal_prediction(1, cfg.t_diag, cfg.q, g, h) / exact - 1
        print(f"hmax {h}: relative error at g={g}: {mpmath.nstr(err, 4)}")


def tower_report(cfg: ResurgenceConfig):
    print(f"## tower t={cfg.t_tower}")
    for g in cfg.g_tower:
        exact = conifold_free_energy(g, cfg.t_tower)
        errs = [abs(conifold_tower_prediction(g, cfg.t_tower, m, nmax=None) / exact - 1) for m in range(cfg.mmax + 1)]
        print(f"g={g}: " + " ".join(mpmath.nstr(e, 3) for e in errs))


def saddle_report(cfg: ResurgenceConfig):
    dmax = max(cfg.saddle_genera)
    gw = GwTable("conifold", {(g, d): conifold_gw(g, d) for g in cfg.saddle_genera for d in range(1, dmax + 1)})
    fit = saddle_linear_fit(gw, cfg.saddle_genera, list(cfg.saddle_ts))
    print("## saddle lines d = a0 + a1 g")
    for t, line in fit.per_t.items():
        print(f"t={t}: a1 = {mpmath.nstr(line.slope, 6)}  a0 = {mpmath.nstr(line.intercept, 6)}")
    print(f"1/a1 slope {mpmath.nstr(fit.inv_a1.slope, 6)}, 1/a0 slope {mpmath.nstr(fit.inv_a0.slope, 6)}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dps", type=int, default=200)
    ap.add_argument("--skip-saddle", action="store_true")
    ns = ap.parse_args()
    cfg = ResurgenceConfig(dps=ns.dps)
    with mpmath.workdps(cfg.dps):
        diagonal_report(cfg)
        tower_report(cfg)
        if not ns.skip_saddle:
            with mpmath.workdps(60):
                saddle_report(cfg)


if __name__ == "__main__":
    main()
