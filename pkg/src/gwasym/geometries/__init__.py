"""Per-geometry invariant generators and table ingestion."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from ..invariants import genus_bound, genus_bound_label
from .conifold import conifold_free_energy, conifold_gw, conifold_tower_prediction, conifold_tower_term
from .hurwitz import (
    hurwitz_closed,
    hurwitz_connected_exact,
    hurwitz_genus01,
    hurwitz_gw,
    hurwitz_gw_exact,
    hurwitz_large_genus_prediction,
    hurwitz_number,
    hurwitz_table,
    toda_residual,
)
from .local_curve import (
    reflection_constant,
    xp_alpha,
    xp_critical,
    xp_genus01,
    xp_gw,
    xp_gw_poly,
)
from .tables import TableParseError, dump_table, load_table, write_table

__all__ = [
    "GeometrySpec",
    "geometry_spec",
    "conifold_gw",
    "conifold_free_energy",
    "conifold_tower_prediction",
    "conifold_tower_term",
    "xp_alpha",
    "xp_gw",
    "xp_gw_poly",
    "xp_genus01",
    "xp_critical",
    "reflection_constant",
    "hurwitz_gw",
    "hurwitz_gw_exact",
    "hurwitz_number",
    "hurwitz_connected_exact",
    "hurwitz_closed",
    "hurwitz_genus01",
    "hurwitz_table",
    "hurwitz_large_genus_prediction",
    "toda_residual",
    "load_table",
    "dump_table",
    "write_table",
    "TableParseError",
]


@dataclass(frozen=True)
class GeometrySpec:
    """Static description of a geometry."""

    name: str
    kind: str  # closed-form | coefficient-based | table-based
    n01: Optional[int] = None
    p: Optional[int] = None
    G_label: str = "inferred"
    sign_convention: str = ""
    bound: Optional[Callable[[int], int]] = field(default=None, compare=False)

    @property
    def f(self) -> Optional[int]:
        return None if self.p is None else (self.p - 1) ** 2

    @property
    def w_c(self) -> Optional[Fraction]:
        return None if self.p is None else xp_critical(self.p)[0]

    def t_c(self):
        return None if self.p is None else xp_critical(self.p)[1]


def geometry_spec(name: str, p: int | None = None) -> GeometrySpec:
    n = name.lower()
    if n == "conifold":
        return GeometrySpec("conifold", "closed-form", 1, None, "0", bound=genus_bound("conifold"))
    if n == "xp":
        if p is None or p < 3:
            raise ValueError("local curve needs p >= 3")
        key = f"xp{p}"
        return GeometrySpec(
            key,
            "coefficient-based",
            (-1) ** (p - 1),
            p,
            genus_bound_label(key),
            "(-1)^(g-1) (-1)^(dp) times the p-polynomial family",
            genus_bound(key),
        )
    if n == "hurwitz":
        return GeometrySpec("hurwitz", "coefficient-based", 1, None, "none", "positive Hurwitz numbers")
    return GeometrySpec(n, "table-based", None, None, genus_bound_label(n), bound=genus_bound(n))
