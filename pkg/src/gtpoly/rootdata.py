"""Root data for the classical families A_n, B_n, C_n, D_n.

Weights are kept in the epsilon basis as exact fractions.  In type A the
coordinate vector has length n and the implicit (n+1)-st coordinate is 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

FAMILIES = ("A", "B", "C", "D")


def frac(value) -> Fraction:
    """Parse an int, Fraction or string such as '1/2' into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an exact value")
    return Fraction(value)


@dataclass(frozen=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.rank < 1:
            raise ValueError("rank must be at least 1")
        if self.family == "D" and self.rank < 2:
            raise ValueError("type D needs rank at least 2")

    @property
    def num_positive_roots(self) -> int:
        n = self.rank
        return {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1)}[self.family]

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Weight:
    type: LieType
    eps: tuple

    def __post_init__(self):
        eps = tuple(frac(v) for v in self.eps)
        if len(eps) != self.type.rank:
            raise ValueError(f"expected {self.type.rank} epsilon coefficients, got {len(eps)}")
        object.__setattr__(self, "eps", eps)

    @property
    def family(self) -> str:
        return self.type.family

    @property
    def rank(self) -> int:
        return self.type.rank

    def __getitem__(self, i: int) -> Fraction:
        """1-based epsilon coefficient; out-of-range indices read as 0."""
        if 1 <= i <= self.rank:
            return self.eps[i - 1]
        return Fraction(0)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "eps": [[v.numerator, v.denominator] for v in self.eps],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Weight":
        lt = LieType(data["family"], int(data["rank"]))
        return cls(lt, tuple(Fraction(p, q) for p, q in data["eps"]))

    def __str__(self):
        return f"{self.type}({', '.join(str(v) for v in self.eps)})"


def weight(family: str, eps: Iterable) -> Weight:
    eps = tuple(eps)
    return Weight(LieType(family, len(eps)), eps)


@dataclass(frozen=True)
class RootDatum:
    type: LieType
    simple_roots: tuple
    positive_roots: tuple

    def coroot(self, alpha: Sequence[Fraction]) -> tuple:
        norm = sum(a * a for a in alpha)
        return tuple(2 * a / norm for a in alpha)


def _unit(m: int, i: int, scale=1) -> list:
    v = [Fraction(0)] * m
    v[i] = Fraction(scale)
    return v


def root_datum(lt: LieType) -> RootDatum:
    """Simple and positive roots as vectors in the epsilon basis.

    Type A uses n+1 coordinates; all other types use n.
    """
    n = lt.rank
    fam = lt.family
    m = n + 1 if fam == "A" else n

    def diff(i, j):
        v = _unit(m, i)
        v[j] -= 1
        return tuple(v)

    def plus(i, j):
        v = _unit(m, i)
        v[j] += 1
        return tuple(v)

    positive = []
    if fam == "A":
        simple = [diff(i, i + 1) for i in range(n)]
        positive = [diff(i, j) for i in range(m) for j in range(i + 1, m)]
    else:
        simple = [diff(i, i + 1) for i in range(n - 1)]
        positive = [diff(i, j) for i in range(n) for j in range(i + 1, n)]
        positive += [plus(i, j) for i in range(n) for j in range(i + 1, n)]
        if fam == "B":
            simple.append(tuple(_unit(m, n - 1)))
            positive += [tuple(_unit(m, i)) for i in range(n)]
        elif fam == "C":
            simple.append(tuple(_unit(m, n - 1, 2)))
            positive += [tuple(_unit(m, i, 2)) for i in range(n)]
        else:
            simple.append(plus(n - 2, n - 1))
    return RootDatum(lt, tuple(simple), tuple(positive))


def _ambient(lam: Weight) -> tuple:
    if lam.family == "A":
        return lam.eps + (Fraction(0),)
    return lam.eps


def _from_ambient(lt: LieType, vec: Sequence[Fraction]) -> Weight:
    vec = [frac(v) for v in vec]
    if lt.family == "A":
        last = vec[-1]
        vec = [v - last for v in vec[:-1]]
    return Weight(lt, tuple(vec))


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def pairing(lam: Weight, i: int) -> Fraction:
    """<lambda, alpha_i^vee> for the simple root with 1-based index i."""
    if not 1 <= i <= lam.rank:
        raise ValueError(f"simple root index {i} out of range 1..{lam.rank}")
    rd = root_datum(lam.type)
    return _dot(_ambient(lam), rd.coroot(rd.simple_roots[i - 1]))


def epsilon_to_omega(lam: Weight) -> tuple:
    return tuple(pairing(lam, i) for i in range(1, lam.rank + 1))


def fundamental_weight(lt: LieType, i: int) -> Weight:
    n = lt.rank
    half = Fraction(1, 2)
    if lt.family == "B" and i == n:
        return Weight(lt, (half,) * n)
    if lt.family == "D" and i >= n - 1:
        eps = [half] * n
        if i == n - 1:
            eps[-1] = -half
        return Weight(lt, tuple(eps))
    return Weight(lt, tuple(Fraction(1 if k < i else 0) for k in range(n)))


def omega_to_epsilon(lt: LieType, omega_coeffs: Sequence) -> Weight:
    coeffs = [frac(c) for c in omega_coeffs]
    if len(coeffs) != lt.rank:
        raise ValueError(f"expected {lt.rank} omega coefficients, got {len(coeffs)}")
    eps = [Fraction(0)] * lt.rank
    for i, c in enumerate(coeffs, start=1):
        if c:
            w = fundamental_weight(lt, i)
            eps = [e + c * f for e, f in zip(eps, w.eps)]
    return Weight(lt, tuple(eps))


def is_dominant(lam: Weight) -> bool:
    """All simple coroot pairings are nonnegative integers."""
    return all(p >= 0 and p.denominator == 1 for p in epsilon_to_omega(lam))


def rho(lt: LieType) -> Weight:
    return omega_to_epsilon(lt, [1] * lt.rank)


def weyl_dim(lam: Weight) -> int:
    """Weyl dimension formula as a product over positive roots."""
    rd = root_datum(lam.type)
    lam_v = _ambient(lam)
    rho_v = _ambient(rho(lam.type))
    num = Fraction(1)
    for alpha in rd.positive_roots:
        num *= _dot([a + b for a, b in zip(lam_v, rho_v)], alpha) / _dot(rho_v, alpha)
    if num.denominator != 1 or num <= 0:
        raise ValueError(f"{lam} is not a dominant integral weight (got {num})")
    return int(num)


def anticanonical_weight(lt: LieType, parabolic_simple_roots: Iterable[int] = ()) -> Weight:
    """Sum of the positive roots that are not roots of the Levi.

    The Levi is spanned by the given simple roots, so the empty set gives the
    full flag variety and 2*rho.
    """
    levi = set(parabolic_simple_roots)
    if not levi <= set(range(1, lt.rank + 1)):
        raise ValueError(f"simple root indices must lie in 1..{lt.rank}")
    rd = root_datum(lt)
    total = [Fraction(0)] * len(rd.simple_roots[0])
    for alpha in rd.positive_roots:
        if not _in_span(alpha, [rd.simple_roots[i - 1] for i in sorted(levi)]):
            total = [t + a for t, a in zip(total, alpha)]
    return _from_ambient(lt, total)


def _in_span(vec, basis) -> bool:
    """Membership of a root in the span of some simple roots."""
    if not basis:
        return not any(vec)
    rows = [list(b) for b in basis]
    return _rank(rows + [list(vec)]) == _rank(rows)


def _rank(rows) -> int:
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def coefficient_group_member(lam: Weight | Sequence, q) -> bool:
    """Is q in the additive group generated by the epsilon coefficients?

    The group is g*Z where g is the rational gcd of the coefficients.
    """
    coeffs = lam.eps if isinstance(lam, Weight) else tuple(frac(v) for v in lam)
    q = frac(q)
    g = _rational_gcd(coeffs)
    if g == 0:
        return q == 0
    return (q / g).denominator == 1


def _rational_gcd(values) -> Fraction:
    values = [v for v in values if v != 0]
    if not values:
        return Fraction(0)
    den = reduce(math.lcm, (v.denominator for v in values))
    num = reduce(math.gcd, (abs(v.numerator * (den // v.denominator)) for v in values))
    return Fraction(num, den)


def integrates_to_group(lam: Weight) -> bool:
    """Parity conditions for the weight to come from the classical matrix group."""
    fam, n = lam.family, lam.rank
    if fam in ("A", "C"):
        return True
    if fam == "B":
        return pairing(lam, n) % 2 == 0
    return (pairing(lam, n - 1) + pairing(lam, n)) % 2 == 0


def predicted_lattice(lam: Weight) -> bool:
    """Predicted integrality of the string polytope for the standard word."""
    if lam.family == "D" and lam.rank < 4:
        return True
    return integrates_to_group(lam)


def dominant_weights(lt: LieType, max_omega: int):
    """All dominant weights with omega coefficients in 0..max_omega, lexicographic."""
    for coeffs in itertools.product(range(max_omega + 1), repeat=lt.rank):
        yield omega_to_epsilon(lt, coeffs)
