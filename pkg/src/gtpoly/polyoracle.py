"""Exact polyhedral oracle: H-representations, vertices, lattice points.

Every polytope is built by evaluating the same inequality generators that
the membership tests use, but on symbolic linear expressions.  Vertices come
from an integer double description run on the homogenized cone after the
equality rows have been eliminated.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .gt import _cell, _coset_of, gt_inequalities, pattern_names, value_getter
from .rootdata import Weight, epsilon_to_omega, frac
from .string_d import _Coords, string_index, string_inequalities
from .tweaked_d import tweaked_equalities, tweaked_inequalities, tweaked_names

KINDS = ("gtA", "gtB", "gtC", "gtD", "tweakedD", "stringD")
LATTICES = ("integers", "half-shifted", "B-standard")


class Unbounded(ValueError):
    pass


class NotFullDimensional(ValueError):
    pass


# symbolic linear expressions


class LinExpr:
    """Affine expression sum(coef * var) + const with exact coefficients."""

    __slots__ = ("coef", "const")

    def __init__(self, coef=None, const=0):
        self.coef = {k: v for k, v in (coef or {}).items() if v != 0}
        self.const = frac(const)

    @classmethod
    def var(cls, name) -> "LinExpr":
        return cls({name: Fraction(1)})

    @staticmethod
    def lift(x) -> "LinExpr":
        return x if isinstance(x, LinExpr) else LinExpr(const=x)

    def __add__(self, other):
        other = LinExpr.lift(other)
        coef = dict(self.coef)
        for k, v in other.coef.items():
            coef[k] = coef.get(k, 0) + v
        return LinExpr(coef, self.const + other.const)

    __radd__ = __add__

    def __neg__(self):
        return LinExpr({k: -v for k, v in self.coef.items()}, -self.const)

    def __sub__(self, other):
        return self + (-LinExpr.lift(other))

    def __rsub__(self, other):
        return LinExpr.lift(other) - self

    def __mul__(self, scalar):
        if isinstance(scalar, LinExpr):
            raise TypeError("product of two linear expressions")
        scalar = frac(scalar)
        return LinExpr({k: v * scalar for k, v in self.coef.items()}, self.const * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return f"LinExpr({self.coef}, {self.const})"


# H-representation


@dataclass(frozen=True)
class HPolytope:
    """{x : A x <= b, E x = f} with named coordinates."""

    names: tuple
    ineqs: tuple
    eqs: tuple = ()
    kind: str = ""
    weight: Weight | None = field(default=None, compare=False)

    def __post_init__(self):
        d = len(self.names)
        norm = lambda rows: tuple((tuple(frac(c) for c in a), frac(b)) for a, b in rows)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "ineqs", norm(self.ineqs))
        object.__setattr__(self, "eqs", norm(self.eqs))
        for a, _ in self.ineqs + self.eqs:
            if len(a) != d:
                raise ValueError("row length does not match the dimension")
        if self.eqs and _rank([a for a, _ in self.eqs]) != len(self.eqs):
            raise ValueError("equality rows must be linearly independent")

    @property
    def dim(self) -> int:
        return len(self.names)

    def contains(self, x) -> bool:
        x = [frac(v) for v in x]
        if len(x) != self.dim:
            raise ValueError("point has the wrong number of coordinates")
        return all(_dot(a, x) <= b for a, b in self.ineqs) and all(_dot(a, x) == b for a, b in self.eqs)

    def to_json(self) -> dict:
        enc = lambda v: [v.numerator, v.denominator]
        return {
            "kind": self.kind,
            "dim": self.dim,
            "names": list(self.names),
            "ineqs": [[enc(c) for c in a] + [enc(b)] for a, b in self.ineqs],
            "eqs": [[enc(c) for c in a] + [enc(b)] for a, b in self.eqs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _dot(a, x) -> Fraction:
    return sum((u * v for u, v in zip(a, x)), Fraction(0))


def _rows_from_pairs(names, pairs, eq_pairs=()) -> tuple:
    """Turn (u, v) pairs into rows; u <= v for inequalities, u == v for equalities."""
    index = {nm: k for k, nm in enumerate(names)}

    def row(u, v):
        e = LinExpr.lift(u) - LinExpr.lift(v)
        a = [Fraction(0)] * len(names)
        for k, c in e.coef.items():
            a[index[k]] = c
        return tuple(a), -e.const

    ineqs, seen = [], set()
    for u, v in pairs:
        a, b = row(u, v)
        if not any(a):
            if b < 0:
                raise ValueError("inequality system is infeasible for this weight")
            continue
        key = _normalize_row(a, b)
        if key not in seen:
            seen.add(key)
            ineqs.append((a, b))
    eqs = []
    for u, v in eq_pairs:
        a, b = row(u, v)
        if not any(a):
            if b != 0:
                raise ValueError("equality system is infeasible for this weight")
            continue
        if _rank([r for r, _ in eqs] + [a]) > len(eqs):
            eqs.append((a, b))
    return tuple(ineqs), tuple(eqs)


def _normalize_row(a, b) -> tuple:
    scale = next(abs(c) for c in a if c != 0)
    return tuple(c / scale for c in a), b / scale


def hrep(kind: str, lam: Weight) -> HPolytope:
    """Inequality description whose points are exactly the accepted members."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    fam = "D" if kind in ("tweakedD", "stringD") else kind[-1]
    if lam.family != fam:
        raise ValueError(f"kind {kind} needs a type {fam} weight, got {lam.type}")
    if kind.startswith("gt"):
        names = pattern_names(lam.type)
        get = value_getter(lam, {nm: LinExpr.var(nm) for nm in names})
        ineqs, eqs = _rows_from_pairs(names, gt_inequalities(lam, get))
    elif kind == "tweakedD":
        if lam.rank < 3:
            raise ValueError("tweaked patterns need rank at least 3")
        names = tweaked_names(lam.rank)
        get = value_getter(lam, {nm: LinExpr.var(nm) for nm in names})
        ineqs, eqs = _rows_from_pairs(names, tweaked_inequalities(lam, get), tweaked_equalities(lam, get))
    else:
        n = lam.rank
        names = tuple(f"a{i}_{j}" for i, j in string_index(n))
        coords = _Coords(n, [LinExpr.var(nm) for nm in names], LinExpr())
        ineqs, eqs = _rows_from_pairs(names, string_inequalities(epsilon_to_omega(lam), coords))
    return HPolytope(names, ineqs, eqs, kind, lam)


# exact linear algebra


def _rank(rows) -> int:
    return len(_row_echelon([list(r) for r in rows])[1])


def _row_echelon(m):
    """Reduced row echelon form in place; returns (matrix, pivot columns)."""
    pivots = []
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / Fraction(m[r][c])
        m[r] = [v * inv for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [u - f * v for u, v in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _affine_param(h: HPolytope):
    """x = x0 + N t describing {E x = f}; None when inconsistent."""
    d = h.dim
    if not h.eqs:
        return [Fraction(0)] * d, [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    m, piv = _row_echelon([list(a) + [b] for a, b in h.eqs])
    if d in piv:
        return None
    free = [c for c in range(d) if c not in piv]
    x0 = [Fraction(0)] * d
    for r, c in enumerate(piv):
        x0[c] = m[r][d]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * d
        v[fcol] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -m[r][fcol]
        basis.append(v)
    # N has one column per free variable; stored as rows of length d
    return x0, basis


def _integer_row(values) -> list:
    den = reduce(math.lcm, (Fraction(v).denominator for v in values), 1)
    ints = [int(Fraction(v) * den) for v in values]
    g = reduce(math.gcd, (abs(v) for v in ints), 0)
    return [v // g for v in ints] if g > 1 else ints


def _reduced_rows(h: HPolytope):
    """Inequalities in the free coordinates t of the affine hull of E x = f."""
    param = _affine_param(h)
    if param is None:
        return None
    x0, basis = param
    rows = []
    for a, b in h.ineqs:
        coeffs = [_dot(a, v) for v in basis]
        rhs = b - _dot(a, x0)
        rows.append((coeffs, rhs))
    return x0, basis, rows


# double description


def _dd_rays(rows: list, width: int) -> list:
    """Extreme rays of the pointed cone {r : row . r <= 0} in integer arithmetic."""
    ints = [_integer_row(r) for r in rows]
    order = sorted(range(len(ints)), key=lambda k: ints[k])
    basis_idx = []
    for k in order:
        if _rank([ints[j] for j in basis_idx] + [ints[k]]) > len(basis_idx):
            basis_idx.append(k)
        if len(basis_idx) == width:
            break
    if len(basis_idx) < width:
        raise _Lineality
    # rays of the simplicial cone: columns of -B^{-1}
    inv = _inverse([[Fraction(v) for v in ints[k]] for k in basis_idx])
    processed = list(basis_idx)
    rays = []
    for j in range(width):
        col = [-inv[i][j] for i in range(width)]
        vec = _integer_row(col)
        zero = 0
        for pos, k in enumerate(processed):
            if pos != j:
                zero |= 1 << pos
        rays.append((tuple(vec), zero))
    rest = [k for k in order if k not in basis_idx]
    for k in rest:
        a = ints[k]
        pos_bit = 1 << len(processed)
        processed.append(k)
        plus, minus, keep = [], [], []
        for vec, zero in rays:
            s = sum(x * y for x, y in zip(a, vec))
            if s > 0:
                plus.append((vec, zero, s))
            elif s < 0:
                minus.append((vec, zero, s))
                keep.append((vec, zero))
            else:
                keep.append((vec, zero | pos_bit))
        if not plus:
            rays = keep
            continue
        need = width - 2
        new = []
        everyone = [z for _, z in rays]
        for pv, pz, ps in plus:
            for mv, mz, ms in minus:
                common = pz & mz
                if common.bit_count() < need:
                    continue
                if any((z & common) == common and z != pz and z != mz for z in everyone):
                    continue
                vec = _integer_row([ps * m - ms * p for p, m in zip(pv, mv)])
                new.append((tuple(vec), common | pos_bit))
        rays = keep + new
    return rays


class _Lineality(Exception):
    pass


def _inverse(m):
    n = len(m)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    aug, piv = _row_echelon(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in aug]


def _nullspace(rows, width) -> list:
    if not rows:
        return [[Fraction(int(i == j)) for j in range(width)] for i in range(width)]
    m, piv = _row_echelon([[Fraction(v) for v in r] for r in rows])
    out = []
    for fcol in (c for c in range(width) if c not in piv):
        v = [Fraction(0)] * width
        v[fcol] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -m[r][fcol]
        out.append(v)
    return out


def vertex_enumeration(h: HPolytope) -> set:
    """Vertex set as a set of coordinate tuples; empty when infeasible.

    Raises Unbounded when the polyhedron has a recession direction.
    """
    red = _reduced_rows(h)
    if red is None:
        return set()
    x0, basis, rows = red
    k = len(basis)
    if k == 0:
        return {tuple(x0)} if all(rhs >= 0 for _, rhs in rows) else set()
    # homogenize: a.t - b s <= 0 and -s <= 0
    cone = [list(a) + [-b] for a, b in rows] + [[Fraction(0)] * k + [Fraction(-1)]]
    try:
        rays = _dd_rays(cone, k + 1)
    except _Lineality:
        # a line in the cone: either the set is empty or it contains a line
        lines = _nullspace([_integer_row(r) for r in cone], k + 1)
        extra = []
        for v in lines:
            extra.append(list(v))
            extra.append([-c for c in v])
        rays = _dd_rays(cone + extra, k + 1)
        if any(vec[-1] > 0 for vec, _ in rays):
            raise Unbounded("polyhedron contains a line")
        return set()
    if any(vec[-1] == 0 for vec, _ in rays) and any(vec[-1] > 0 for vec, _ in rays):
        raise Unbounded("polyhedron has a recession direction")
    out = set()
    for vec, _ in rays:
        s = vec[-1]
        if s <= 0:
            continue
        t = [Fraction(c, s) for c in vec[:k]]
        out.add(tuple(x0[i] + sum((t[j] * basis[j][i] for j in range(k)), Fraction(0)) for i in range(h.dim)))
    return out


def sorted_vertices(h: HPolytope) -> list:
    return sorted(vertex_enumeration(h))


def is_vertex_by_perturbation(h: HPolytope, x) -> bool:
    """x is a vertex iff the rows tight at x have full rank."""
    x = [frac(v) for v in x]
    if not h.contains(x):
        raise ValueError("point does not satisfy the constraints")
    if h.dim == 0:
        return True
    tight = [a for a, b in h.ineqs if _dot(a, x) == b] + [a for a, _ in h.eqs]
    return _rank(tight) == h.dim


def affine_dimension(points: Iterable) -> int:
    pts = [list(p) for p in points]
    if not pts:
        return -1
    base = pts[0]
    return _rank([[u - v for u, v in zip(p, base)] for p in pts[1:]]) if len(pts) > 1 else 0


def polytope_dimension(h: HPolytope) -> int:
    return affine_dimension(vertex_enumeration(h))


# lattice points


def _coordinate_grids(h: HPolytope, lattice: str) -> list:
    """(offset, step) per coordinate for the declared lattice."""
    if lattice == "integers":
        return [(Fraction(0), Fraction(1))] * h.dim
    if lattice == "half-shifted":
        return [(Fraction(1, 2), Fraction(1))] * h.dim
    if lattice == "B-standard":
        lam = h.weight
        if h.kind != "gtB" or lam is None:
            raise ValueError("the B-standard lattice applies to gtB polytopes only")
        if any(v.denominator == 2 for v in lam.eps) and any(v.denominator == 1 for v in lam.eps):
            return None
        coset = _coset_of(lam)
        last = {_cell("z", i, lam.rank) for i in range(1, lam.rank + 1)}
        return [(Fraction(0), Fraction(1, 2)) if nm in last else (coset, Fraction(1)) for nm in h.names]
    raise ValueError(f"unknown lattice {lattice!r}; expected one of {', '.join(LATTICES)}")


def _bounding_box(h: HPolytope):
    verts = vertex_enumeration(h)
    if not verts:
        return None
    return [(min(v[i] for v in verts), max(v[i] for v in verts)) for i in range(h.dim)]


def lattice_points(h: HPolytope, lattice: str = "integers", strict: bool = False) -> list:
    """All points of the declared lattice in the polytope, in lexicographic order.

    With ``strict`` every inequality row must hold strictly.
    """
    grids = _coordinate_grids(h, lattice)
    box = _bounding_box(h)
    if grids is None or box is None:
        return []
    d = h.dim
    rows = [(list(a), b, strict) for a, b in h.ineqs]
    rows += [(list(a), b, False) for a, b in h.eqs] + [([-c for c in a], -b, False) for a, b in h.eqs]
    by_last = [[] for _ in range(d)]
    for a, b, s in rows:
        last = max(i for i, c in enumerate(a) if c != 0)
        by_last[last].append((a, b, s))
    x = [Fraction(0)] * d
    out = []

    def rec(k):
        if k == d:
            out.append(tuple(x))
            return
        lo, hi = box[k]
        lo_strict = hi_strict = False
        for a, b, s in by_last[k]:
            rest = b - sum((a[i] * x[i] for i in range(k)), Fraction(0))
            bound = rest / a[k]
            if a[k] > 0:
                if bound < hi or (bound == hi and s):
                    hi, hi_strict = bound, s
            else:
                if bound > lo or (bound == lo and s):
                    lo, lo_strict = bound, s
        offset, step = grids[k]
        j = math.ceil((lo - offset) / step)
        v = offset + j * step
        if lo_strict and v == lo:
            v += step
        while v < hi or (v == hi and not hi_strict):
            x[k] = v
            rec(k + 1)
            v += step

    rec(0)
    return out


def count_lattice_points(h: HPolytope, lattice: str = "integers") -> int:
    return len(lattice_points(h, lattice))


def interior_lattice_points(h: HPolytope, lattice: str = "integers") -> list:
    _require_full_dimension(h)
    return lattice_points(h, lattice, strict=True)


def _require_full_dimension(h: HPolytope):
    if h.eqs:
        raise NotFullDimensional(f"{h.kind or 'polytope'} has equality rows; its affine hull is not the ambient space")
    dim = polytope_dimension(h)
    if dim != h.dim:
        raise NotFullDimensional(f"polytope has dimension {dim} in an ambient space of dimension {h.dim}")


def facet_rows(h: HPolytope) -> list:
    """Indices of inequality rows that define facets."""
    verts = sorted(vertex_enumeration(h))
    out = []
    for k, (a, b) in enumerate(h.ineqs):
        tight = [v for v in verts if _dot(a, v) == b]
        if affine_dimension(tight) == h.dim - 1:
            out.append(k)
    return out


def polar_dual_vertices(h: HPolytope, p) -> set:
    """Vertices of the polar dual of h - p, for p strictly inside."""
    p = [frac(v) for v in p]
    out = set()
    for k in facet_rows(h):
        a, b = h.ineqs[k]
        shifted = b - _dot(a, p)
        if shifted <= 0:
            raise ValueError("translation point is not strictly interior")
        out.add(tuple(c / shifted for c in a))
    return out


def reflexive_after_translation(h: HPolytope, lattice: str = "integers"):
    """(True, p) when p is the only interior lattice point and the polar
    dual of h - p has integral vertices; (False, p or None) otherwise."""
    if lattice != "integers":
        raise ValueError("reflexivity is checked on the integer lattice only")
    if any(v.denominator != 1 for v in (c for verts in vertex_enumeration(h) for c in verts)):
        return False, None
    inner = interior_lattice_points(h, lattice)
    if len(inner) != 1:
        return False, None
    p = inner[0]
    dual = polar_dual_vertices(h, p)
    ok = all(c.denominator == 1 for v in dual for c in v)
    return ok, p


def vertices_on_lattice(h: HPolytope, lattice: str) -> bool:
    """Do all vertices lie on the declared lattice?"""
    grids = _coordinate_grids(h, lattice)
    if grids is None:
        return False
    for v in vertex_enumeration(h):
        for c, (offset, step) in zip(v, grids):
            if ((c - offset) / step).denominator != 1:
                return False
    return True


# the lattice experiment behind the sweep


def sweep_kind(lam: Weight) -> tuple:
    """(kind, lattice) used to decide latticeness for the weight's family."""
    fam = lam.family
    if fam == "B":
        return "gtB", "B-standard"
    if fam == "D":
        half = any(v.denominator == 2 for v in lam.eps)
        return "tweakedD", "half-shifted" if half else "integers"
    return f"gt{fam}", "integers"


def observed_lattice(lam: Weight) -> bool:
    kind, lattice = sweep_kind(lam)
    return vertices_on_lattice(hrep(kind, lam), lattice)


@dataclass(frozen=True)
class SweepRow:
    weight: Weight
    omega: tuple
    predicted: bool
    observed: bool
    vertices: int

    @property
    def agrees(self) -> bool:
        return self.predicted == self.observed


def sweep_rows(weights: Iterable[Weight]) -> list:
    from .rootdata import predicted_lattice

    rows = []
    for lam in weights:
        kind, lattice = sweep_kind(lam)
        h = hrep(kind, lam)
        verts = vertex_enumeration(h)
        rows.append(
            SweepRow(lam, epsilon_to_omega(lam), predicted_lattice(lam), vertices_on_lattice(h, lattice), len(verts))
        )
    return rows
