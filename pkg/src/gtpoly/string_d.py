"""String coordinates for the standard reduced word in type D_n.

A point has entries a_{i,j} for 1 <= i <= n-1 and i <= j <= 2n-1-i, stored
row by row from i = n-1 up to i = 1, each row in increasing j.  The barred
entry is bar(i, j) = a_{i, 2n-1-j}; indices outside the shape read as 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .rootdata import Weight, epsilon_to_omega, frac
from .tweaked_d import TweakedPattern, _check_d, in_v_lambda, tweaked_names


@lru_cache(maxsize=None)
def string_index(n: int) -> tuple:
    """(i, j) pairs in storage order."""
    return tuple((i, j) for i in range(n - 1, 0, -1) for j in range(i, 2 * n - i))


@dataclass(frozen=True)
class StringPointD:
    rank: int
    values: tuple

    def __post_init__(self):
        vals = tuple(frac(v) for v in self.values)
        if self.rank < 2:
            raise ValueError("rank must be at least 2")
        if len(vals) != self.rank * (self.rank - 1):
            raise ValueError(f"D{self.rank} string points have {self.rank * (self.rank - 1)} entries")
        object.__setattr__(self, "values", vals)

    @property
    def _lookup(self) -> dict:
        return dict(zip(string_index(self.rank), self.values))

    def a(self, i: int, j: int):
        return self._lookup.get((i, j), Fraction(0))

    def bar(self, i: int, j: int):
        return self.a(i, 2 * self.rank - 1 - j)

    def to_json(self) -> list:
        return [[v.numerator, v.denominator] for v in self.values]


class _Coords:
    """Accessor over arbitrary entries (numbers or symbolic expressions)."""

    def __init__(self, n: int, entries: Sequence, zero=0):
        self.rank = n
        self.table = dict(zip(string_index(n), entries))
        self.zero = zero

    def a(self, i, j):
        return self.table.get((i, j), self.zero)

    def bar(self, i, j):
        return self.a(i, 2 * self.rank - 1 - j)


def string_inequalities(lam_omega: Sequence, a) -> Iterator[tuple]:
    """Pairs (u, v) meaning u <= v; lam_omega is the weight in the omega basis."""
    n = len(lam_omega)
    lw = [None] + [frac(v) for v in lam_omega]
    A, B = a.a, a.bar
    for i in range(1, n - 1):
        chain = [A(i, j) for j in range(i, n - 1)]
        for hi, lo in zip(chain, chain[1:]):
            yield lo, hi
        yield A(i, n - 1), A(i, n - 2)
        yield B(i, n - 1), A(i, n - 2)
        yield B(i, n - 2), A(i, n - 1)
        yield B(i, n - 2), B(i, n - 1)
        bars = [B(i, j) for j in range(n - 2, i - 1, -1)]
        for hi, lo in zip(bars, bars[1:]):
            yield lo, hi
        yield 0, B(i, i)
    yield 0, A(n - 1, n - 1)
    yield 0, B(n - 1, n - 1)

    def s(k, j):
        return A(k, j - 1) - 2 * A(k, j) + A(k, j + 1) + B(k, j + 1) - 2 * B(k, j) + B(k, j - 1)

    for i in range(1, n):
        for j in range(i, n - 1):
            tail = sum((s(k, j) for k in range(1, i)), 0)
            yield A(i, j), lw[j] + A(i, j + 1) + B(i, j + 1) - 2 * B(i, j) + B(i, j - 1) + tail
            yield B(i, j), lw[j] + B(i, j - 1) + tail
        tail_a = sum((A(k, n - 2) - 2 * A(k, n - 1) + B(k, n - 2) for k in range(1, i)), 0)
        tail_b = sum((A(k, n - 2) - 2 * B(k, n - 1) + B(k, n - 2) for k in range(1, i)), 0)
        yield A(i, n - 1), lw[n - 1] + B(i, n - 2) + tail_a
        yield B(i, n - 1), lw[n] + B(i, n - 2) + tail_b


def _as_point(n: int, a) -> StringPointD:
    if isinstance(a, StringPointD):
        if a.rank != n:
            raise ValueError("string point rank does not match the weight")
        return a
    return StringPointD(n, tuple(a))


def string_membership(lam_omega: Sequence, a) -> bool:
    n = len(lam_omega)
    if n < 2:
        raise ValueError("rank must be at least 2")
    a = _as_point(n, a)
    return all(u <= v for u, v in string_inequalities(lam_omega, a))


def _phi_tilde_cells(lam: Weight, a) -> dict:
    n = lam.rank
    y = {(1, j): lam[j] for j in range(1, n + 1)}
    A, B = a.a, a.bar
    for i in range(2, n + 1):
        for j in range(i, n):
            y[(i, j)] = y[(i - 1, j)] + A(i - 1, j - 1) - A(i - 1, j) - B(i - 1, j) + B(i - 1, j - 1)
        y[(i, n)] = y[(i - 1, n)] + A(i - 1, n - 1) - B(i - 1, n - 1)
    cells = {f"y{i}_{j}": v for (i, j), v in y.items() if i >= 2}
    for i in range(1, n - 1):
        for j in range(i, n - 1):
            cells[f"z{i}_{j}"] = y[(i, j)] + B(i, j - 1) - B(i, j)
        cells[f"zup{i}"] = y[(i, n)] + A(i, n - 1) - B(i, n - 2)
        cells[f"zdown{i}"] = y[(i, n)] + A(i, n - 2) - B(i, n - 1)
    cells[f"z{n - 1}_{n - 1}"] = y[(n - 1, n)] + A(n - 1, n - 1)
    return cells


def phi_tilde(lam: Weight, a) -> TweakedPattern:
    """Affine map from string coordinates to tweaked patterns."""
    _check_d(lam)
    a = _as_point(lam.rank, a)
    return TweakedPattern.from_mapping(lam, _phi_tilde_cells(lam, a))


def phi_tilde_literal(lam: Weight, a) -> dict:
    """Variant whose y rows end in bar(i, j-1) instead of bar(i-1, j-1).
    Its image leaves V_lambda, so it is kept only for a conformance test."""
    n = lam.rank
    a = _as_point(n, a)
    y = {(1, j): lam[j] for j in range(1, n + 1)}
    for i in range(2, n + 1):
        for j in range(i, n):
            y[(i, j)] = y[(i - 1, j)] + a.a(i - 1, j - 1) - a.a(i - 1, j) - a.bar(i - 1, j) + a.bar(i, j - 1)
        y[(i, n)] = y[(i - 1, n)] + a.a(i - 1, n - 1) - a.bar(i - 1, n - 1)
    cells = {f"y{i}_{j}": v for (i, j), v in y.items() if i >= 2}
    for i in range(1, n - 1):
        for j in range(i, n - 1):
            cells[f"z{i}_{j}"] = y[(i, j)] + a.bar(i, j - 1) - a.bar(i, j)
        cells[f"zup{i}"] = y[(i, n)] + a.a(i, n - 1) - a.bar(i, n - 2)
        cells[f"zdown{i}"] = y[(i, n)] + a.a(i, n - 2) - a.bar(i, n - 1)
    cells[f"z{n - 1}_{n - 1}"] = y[(n - 1, n)] + a.a(n - 1, n - 1)
    return cells


def phi_tilde_inverse(lam: Weight, t: TweakedPattern) -> StringPointD:
    """Exact inverse of phi_tilde on V_lambda.

    The linear part is assembled column by column from unit vectors, the
    system is solved exactly and the candidate is checked by mapping it back.
    """
    _check_d(lam)
    if t.weight.type != lam.type:
        raise ValueError("pattern shape does not match the weight")
    if not in_v_lambda(lam, t):
        raise ValueError("pattern is not in V_lambda")
    n = lam.rank
    idx = string_index(n)
    base = _phi_tilde_cells(lam, _Coords(n, [Fraction(0)] * len(idx), Fraction(0)))
    cols = []
    for k in range(len(idx)):
        unit = [Fraction(0)] * len(idx)
        unit[k] = Fraction(1)
        img = _phi_tilde_cells(lam, _Coords(n, unit, Fraction(0)))
        cols.append({c: img[c] - base[c] for c in base})
    names = tweaked_names(n)
    target = t.as_dict()
    rows = [[cols[k][c] for k in range(len(idx))] for c in names]
    rhs = [target[c] - base[c] for c in names]
    sol = _solve(rows, rhs)
    a = StringPointD(n, tuple(sol))
    if phi_tilde(lam, a).values != t.values:
        raise ValueError("pattern is not in the image of the map")
    return a


def _solve(rows, rhs) -> list:
    """Exact solve of a consistent system with full column rank."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncol = len(rows[0])
    piv_cols = []
    r = 0
    for c in range(ncol):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [u - f * v for u, v in zip(m[k], m[r])]
        piv_cols.append(c)
        r += 1
    if len(piv_cols) != ncol:
        raise ValueError("map is not injective")
    if any(row[-1] != 0 for row in m[r:]):
        raise ValueError("pattern is not in the image of the map")
    sol = [Fraction(0)] * ncol
    for k, c in enumerate(piv_cols):
        sol[c] = m[k][-1]
    return sol


def is_lattice_string_point(lam: Weight, a) -> bool:
    a = _as_point(lam.rank, a)
    return all(v.denominator == 1 for v in a.values)


def lambda_omega(lam: Weight) -> list:
    """Omega coordinates as integers, for string_membership."""
    om = epsilon_to_omega(lam)
    if any(v.denominator != 1 for v in om):
        raise ValueError("weight is not integral")
    return [int(v) for v in om]


def interior_point(n: int) -> StringPointD:
    """Lattice point of the string polytope of 2*rho used as translation
    vector: a row of length 2k reads 2k-1, ..., k, k, ..., 1."""
    vals = []
    for i in range(n - 1, 0, -1):
        length = 2 * n - 2 * i
        half = length // 2
        left = list(range(length - 1, half - 1, -1))
        right = list(range(half, 0, -1))
        vals.extend(left + right)
    return StringPointD(n, tuple(vals))
