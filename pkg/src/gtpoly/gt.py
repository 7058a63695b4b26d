"""Gelfand-Tsetlin patterns for the classical types.

Cells are named ``y{i}_{j}`` and ``z{i}_{j}``.  Rows are stored top to bottom:

* A_n:   y1, y2, ..., yn                  (row i is y_{i,i..n})
* B/C_n: z1, y2, z2, ..., yn, zn          (z_{i,i..n}, y_{i,i..n})
* D_n:   z1, y2, z2, ..., z(n-1), yn      (z_{i,i..n-1}, y_{i,i..n})

The weight itself is the marked top row and never part of the pattern.
Throughout, ``a <= b`` constraints are produced as pairs ``(a, b)`` so the
same generator can be evaluated on numbers or on symbolic expressions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .marked_poset import MarkedPoset
from .rootdata import LieType, Weight, frac

HALF = Fraction(1, 2)


@lru_cache(maxsize=None)
def pattern_rows(lt: LieType) -> tuple:
    """Cell names grouped by row."""
    n, fam = lt.rank, lt.family
    rows = []
    if fam == "A":
        for i in range(1, n + 1):
            rows.append(tuple(f"y{i}_{j}" for j in range(i, n + 1)))
    elif fam in ("B", "C"):
        rows.append(tuple(f"z1_{j}" for j in range(1, n + 1)))
        for i in range(2, n + 1):
            rows.append(tuple(f"y{i}_{j}" for j in range(i, n + 1)))
            rows.append(tuple(f"z{i}_{j}" for j in range(i, n + 1)))
    else:
        rows.append(tuple(f"z1_{j}" for j in range(1, n)))
        for i in range(2, n):
            rows.append(tuple(f"y{i}_{j}" for j in range(i, n + 1)))
            rows.append(tuple(f"z{i}_{j}" for j in range(i, n)))
        rows.append((f"y{n}_{n}",))
    return tuple(rows)


@lru_cache(maxsize=None)
def pattern_names(lt: LieType) -> tuple:
    return tuple(c for row in pattern_rows(lt) for c in row)


def _cell(kind: str, i: int, j: int) -> str:
    return f"{kind}{i}_{j}"


@dataclass(frozen=True)
class GTPattern:
    weight: Weight
    values: tuple

    def __post_init__(self):
        vals = tuple(frac(v) for v in self.values)
        names = pattern_names(self.weight.type)
        if len(vals) != len(names):
            raise ValueError(
                f"{self.weight.type} patterns have {len(names)} entries, got {len(vals)}"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_rows(cls, lam: Weight, rows: Sequence[Sequence]) -> "GTPattern":
        shape = pattern_rows(lam.type)
        if len(rows) != len(shape) or any(len(r) != len(s) for r, s in zip(rows, shape)):
            raise ValueError(f"row lengths must be {[len(s) for s in shape]}")
        return cls(lam, tuple(v for r in rows for v in r))

    @classmethod
    def from_mapping(cls, lam: Weight, cells: dict) -> "GTPattern":
        return cls(lam, tuple(cells[c] for c in pattern_names(lam.type)))

    @property
    def names(self) -> tuple:
        return pattern_names(self.weight.type)

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values))

    def rows(self) -> list:
        d = self.as_dict()
        return [[d[c] for c in row] for row in pattern_rows(self.weight.type)]

    def __getitem__(self, name: str) -> Fraction:
        return self.as_dict()[name]

    def getter(self) -> Callable[[str], Fraction]:
        return value_getter(self.weight, self.as_dict())

    def to_json(self) -> dict:
        return {
            "family": self.weight.family,
            "rank": self.weight.rank,
            "lambda": [[v.numerator, v.denominator] for v in self.weight.eps],
            "rows": [[[v.numerator, v.denominator] for v in r] for r in self.rows()],
        }

    def pretty(self) -> str:
        return pretty_pattern(self)


def value_getter(lam: Weight, cells: dict) -> Callable:
    """Lookup that reads y1_j as lambda_j (and lambda_{n+1} = 0 in type A)."""

    def get(name: str):
        if name in cells:
            return cells[name]
        if name.startswith("y1_"):
            return lam[int(name[3:])]
        raise KeyError(name)

    return get


def pretty_pattern(p: GTPattern) -> str:
    """Staggered text rendering with the weight as the top row."""
    lam = p.weight
    top = list(lam.eps)
    if lam.family in ("A", "B", "C"):
        top.append(Fraction(0))
    rows = [top] + p.rows()
    cells = [[str(v) for v in r] for r in rows]
    width = max(len(c) for r in cells for c in r)
    total = len(rows[0])
    lines = []
    for r in cells:
        pad = (total - len(r)) * (width + 1) // 2
        lines.append(" " * pad + " ".join(c.rjust(width) for c in r))
    return "\n".join(lines)


# layout of the marked posets (types A, B, C)


@lru_cache(maxsize=None)
def _layout(lt: LieType) -> dict:
    """(row, column) -> element name, top row included."""
    n, fam = lt.rank, lt.family
    grid = {}
    if fam == "A":
        for k in range(1, n + 2):
            grid[(0, 2 * (k - 1))] = f"lam{k}"
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                grid[(i, 2 * j - i)] = _cell("y", i, j)
        return grid
    for k in range(1, n + 1):
        grid[(0, 2 * (k - 1))] = f"lam{k}"
    grid[(0, 2 * n)] = "zero0"
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            grid[(2 * i - 1, 2 * j - 1)] = _cell("z", i, j)
        if i >= 2:
            for j in range(i, n + 1):
                grid[(2 * i - 2, 2 * j - 2)] = _cell("y", i, j)
            grid[(2 * i - 2, 2 * n)] = f"zero{i - 1}"
    grid[(2 * n, 2 * n)] = f"zero{n}"
    return grid


@lru_cache(maxsize=None)
def _layout_relations(lt: LieType) -> tuple:
    """Cover pairs (smaller, larger): each cell lies below its upper-left
    neighbour and above its upper-right neighbour."""
    grid = _layout(lt)
    rel = []
    for (r, c), name in sorted(grid.items()):
        if r == 0:
            continue
        ul = grid.get((r - 1, c - 1))
        ur = grid.get((r - 1, c + 1))
        if ul is not None:
            rel.append((name, ul))
        if ur is not None:
            rel.append((ur, name))
    return tuple(rel)


def _marker_value(lam: Weight, name: str) -> Fraction:
    if name.startswith("lam"):
        return lam[int(name[3:])]
    return Fraction(0)


def gt_poset(lam: Weight) -> MarkedPoset:
    if lam.family == "D":
        raise ValueError("type D patterns do not form a marked order polytope; use gt_membership")
    grid = _layout(lam.type)
    order = sorted(grid, key=lambda rc: (rc[0], rc[1]))
    elements = [grid[rc] for rc in order]
    marking = {e: _marker_value(lam, e) for e in elements if e.startswith(("lam", "zero"))}
    positions = {grid[rc]: (rc[1], rc[0]) for rc in order}
    return MarkedPoset(tuple(elements), _layout_relations(lam.type), marking, positions=positions)


def _abc_pairs(lam: Weight, get: Callable) -> Iterator[tuple]:
    def val(name):
        if name.startswith(("lam", "zero")):
            return _marker_value(lam, name)
        return get(name)

    for small, big in _layout_relations(lam.type):
        yield val(small), val(big)


def _d_pairs(lam: Weight, get: Callable) -> Iterator[tuple]:
    n = lam.rank
    y = lambda i, j: get(_cell("y", i, j))
    z = lambda i, j: get(_cell("z", i, j))
    for i in range(1, n):
        for j in range(i, n):
            yield z(i, j), y(i, j)
            yield y(i, j + 1), z(i, j)
    for i in range(2, n + 1):
        for j in range(i, n):
            yield y(i, j), z(i - 1, j - 1)
            yield z(i - 1, j), y(i, j)
        yield y(i, n), z(i - 1, n - 1)
    for i in range(1, n - 1):
        base = y(i, n) + y(i + 1, n)
        yield z(i, n - 1), base + y(i, n - 1)
        yield z(i, n - 1), base + y(i + 1, n - 1)
    yield z(n - 1, n - 1), y(n - 1, n) + y(n, n) + y(n - 1, n - 1)


def gt_inequalities(lam: Weight, get: Callable) -> Iterator[tuple]:
    """Pairs (a, b) meaning a <= b; ``get`` maps cell names to values."""
    if lam.family == "D":
        return _d_pairs(lam, get)
    return _abc_pairs(lam, get)


def gt_membership(lam: Weight, p: GTPattern | Sequence) -> bool:
    if not isinstance(p, GTPattern):
        p = GTPattern(lam, tuple(p))
    if p.weight.type != lam.type:
        raise ValueError("pattern shape does not match the weight")
    return all(a <= b for a, b in gt_inequalities(lam, value_getter(lam, p.as_dict())))


def _is_int(v: Fraction) -> bool:
    return v.denominator == 1


def _is_half_odd(v: Fraction) -> bool:
    return v.denominator == 2


def _one_coset(values) -> bool:
    values = list(values)
    return all(map(_is_int, values)) or all(map(_is_half_odd, values))


def is_standard(lam: Weight, p: GTPattern | Sequence) -> bool:
    if not isinstance(p, GTPattern):
        p = GTPattern(lam, tuple(p))
    if p.weight.type != lam.type:
        raise ValueError("pattern shape does not match the weight")
    vals = p.as_dict()
    fam, n = lam.family, lam.rank
    if fam in ("A", "C"):
        return all(map(_is_int, list(vals.values()) + list(lam.eps)))
    if fam == "B":
        last = [vals[_cell("z", i, n)] for i in range(1, n + 1)]
        rest = [v for k, v in vals.items() if not (k.startswith("z") and k.endswith(f"_{n}"))]
        return all(_is_int(2 * v) for v in last) and _one_coset(rest + list(lam.eps))
    return _one_coset(list(vals.values()) + list(lam.eps))


def _grid(lo: Fraction, hi: Fraction, offset: Fraction, step: Fraction):
    """Values offset + k*step inside [lo, hi]."""
    k = math.ceil((lo - offset) / step)
    v = offset + k * step
    while v <= hi:
        yield v
        v += step


def _coset_of(lam: Weight) -> Fraction:
    return HALF if any(v.denominator == 2 for v in lam.eps) else Fraction(0)


def _cell_grid(lam: Weight, name: str) -> tuple:
    """(offset, step) of the admissible coset for one cell."""
    fam, n = lam.family, lam.rank
    if fam in ("A", "C"):
        return Fraction(0), Fraction(1)
    if fam == "B" and name.startswith("z") and name.endswith(f"_{n}"):
        return Fraction(0), HALF
    return _coset_of(lam), Fraction(1)


def _cell_bounds(lt: LieType) -> dict:
    """Upper-left / upper-right neighbours for the interlacing bounds."""
    n = lt.rank
    bounds = {}
    if lt.family != "D":
        grid = _layout(lt)
        for (r, c), name in grid.items():
            if r == 0 or name.startswith("zero"):
                continue
            ul, ur = grid.get((r - 1, c - 1)), grid.get((r - 1, c + 1))
            bounds[name] = ([ur] if ur else [], [ul] if ul else [])
        return bounds
    for i in range(1, n):
        for j in range(i, n):
            bounds[_cell("z", i, j)] = ([_cell("y", i, j + 1)], [_cell("y", i, j)])
    for i in range(2, n + 1):
        for j in range(i, n):
            bounds[_cell("y", i, j)] = ([_cell("z", i - 1, j)], [_cell("z", i - 1, j - 1)])
        bounds[_cell("y", i, n)] = ([], [_cell("z", i - 1, n - 1)])
    return bounds


def enumerate_standard_patterns(lam: Weight) -> list:
    """All standard patterns, by depth-first search over the coset grid.

    Each cell ranges over its coset between the values of its interlacing
    neighbours already placed above it, clipped to the box spanned by the
    weight entries and 0.  Leaves are filtered by gt_membership and
    is_standard.
    """
    lt = lam.type
    names = pattern_names(lt)
    bounds = _cell_bounds(lt)
    extremes = list(lam.eps) + [Fraction(0)]
    if lt.family == "D":
        m = max(abs(v) for v in extremes)
        box = (-m, m)
    else:
        box = (min(extremes), max(extremes))
    grids = {c: _cell_grid(lam, c) for c in names}
    out = []
    cells = {}
    get = value_getter(lam, cells)

    def lookup(name):
        if name.startswith(("lam", "zero")):
            return _marker_value(lam, name)
        return get(name)

    def rec(k):
        if k == len(names):
            p = GTPattern(lam, tuple(cells[c] for c in names))
            if gt_membership(lam, p) and is_standard(lam, p):
                out.append(p)
            return
        c = names[k]
        lows, highs = bounds[c]
        lo = max([box[0]] + [lookup(x) for x in lows])
        hi = min([box[1]] + [lookup(x) for x in highs])
        off, step = grids[c]
        for v in _grid(lo, hi, off, step):
            cells[c] = v
            rec(k + 1)
        cells.pop(c, None)

    rec(0)
    return out


def b_witness(lam: Weight) -> GTPattern:
    """Pattern whose rows are the weight shifted left, padded with zeros."""
    if lam.family != "B":
        raise ValueError("the shifted pattern is defined for type B only")
    n = lam.rank
    cells = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            cells[_cell("z", i, j)] = lam[i + j] if i + j <= n else Fraction(0)
            if i >= 2:
                cells[_cell("y", i, j)] = lam[i + j - 1] if i + j - 1 <= n else Fraction(0)
    return GTPattern.from_mapping(lam, cells)


def pattern_to_json(p: GTPattern) -> str:
    return json.dumps(p.to_json(), sort_keys=True)
