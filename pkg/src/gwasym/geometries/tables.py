"""Plain-text table format for GV and GW invariants.

::

    # geometry: local_p2
    # kind: gv
    # G: (d-1)(d-2)/2
    0	1	3
    ...

GV values are integers, GW values ``num/den``.
"""

from __future__ import annotations

import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Union

from ..arith import rational_str
from ..invariants import GvTable, GwTable, genus_bound, genus_bound_label

__all__ = ["TableParseError", "load_table", "dump_table", "write_table", "atomic_write"]


class TableParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, path: str | None = None):
        where = f"{path}:{line}: " if line is not None else ""
        super().__init__(where + msg)
        self.line = line


def atomic_write(path: Union[str, Path], text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_table(table: Union[GvTable, GwTable], g_label: str | None = None) -> str:
    """Serialize a table; rows sorted by ``(g, d)``."""
    if isinstance(table, GvTable):
        kind = "gv"
        label = g_label or (genus_bound_label(table.geometry) if table.bound else "inferred")
        rows = []
        for d in sorted(table.degrees):
            for r in range(table.G(d) + 1):
                rows.append((r, d, str(table.n(r, d))))
        rows.sort()
    else:
        kind = "gw"
        label = g_label or (genus_bound_label(table.geometry) if table.bound else "inferred")
        rows = [(g, d, rational_str(v)) for (g, d), v in sorted(table.entries.items())]
    out = [f"# geometry: {table.geometry}", f"# kind: {kind}", f"# G: {label}"]
    out += [f"{g}\t{d}\t{v}" for g, d, v in rows]
    return "\n".join(out) + "\n"


def write_table(table: Union[GvTable, GwTable], path: Union[str, Path]) -> None:
    atomic_write(path, dump_table(table))


def load_table(path: Union[str, Path]) -> Union[GvTable, GwTable]:
    """Read and validate a GV or GW table file."""
    path = str(path)
    with open(path) as fh:
        lines = fh.read().splitlines()
    meta: dict[str, str] = {}
    entries: dict[tuple[int, int], Fraction] = {}
    for no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if ":" in line:
                key, _, val = line[1:].partition(":")
                meta[key.strip().lower()] = val.strip()
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise TableParseError(f"expected 3 tab-separated fields, got {len(parts)}", no, path)
        try:
            g, d = int(parts[0]), int(parts[1])
            v = Fraction(parts[2].strip())
        except ValueError as exc:
            raise TableParseError(f"bad number ({exc})", no, path) from None
        if g < 0 or d < 1:
            raise TableParseError(f"need g >= 0 and d >= 1, got ({g}, {d})", no, path)
        if (g, d) in entries:
            raise TableParseError(f"duplicate entry (g={g}, d={d})", no, path)
        if meta.get("kind") == "gv" and v.denominator != 1:
            raise TableParseError(f"GV invariant must be an integer, got {parts[2]}", no, path)
        entries[(g, d)] = v
    for key in ("geometry", "kind"):
        if key not in meta:
            raise TableParseError(f"missing header '# {key}: ...'", None, path)
    geometry, kind = meta["geometry"], meta["kind"].lower()
    label = meta.get("g", "inferred")
    bound = None if label == "inferred" else genus_bound(geometry)
    if label != "inferred" and bound is None:
        raise TableParseError(f"G formula {label!r} given for geometry {geometry!r} without a known bound", None, path)
    if kind == "gv":
        degs = frozenset(d for (_, d) in entries)
        return GvTable(geometry, {k: int(v) for k, v in entries.items()}, degs, bound)
    if kind == "gw":
        return GwTable(geometry, entries, bound)
    raise TableParseError(f"unknown kind {kind!r} (expected gv or gw)", None, path)
