from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import reference_d3_table, string_samples
from gtpoly.rootdata import LieType, epsilon_to_omega, fundamental_weight, omega_to_epsilon, weight
from gtpoly.string_d import (
    StringPointD,
    interior_point,
    is_lattice_string_point,
    lambda_omega,
    phi_tilde,
    phi_tilde_inverse,
    phi_tilde_literal,
    string_index,
    string_membership,
)
from gtpoly.tweaked_d import (
    TweakedPattern,
    enumerate_tweaked_lattice_points,
    in_v_lambda,
    phi,
    psi,
    tweaked_membership,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)

WEIGHTS = [
    weight("D", [2, 1, 0]),
    weight("D", [Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2)]),
    weight("D", [4, 2, 0]),
    fundamental_weight(LieType("D", 4), 4),
    weight("D", [2, 1, 1, 0]),
]


def string_point(n, draw_values):
    return StringPointD(n, tuple(draw_values))


def test_index_order():
    assert string_index(3) == ((2, 2), (2, 3), (1, 1), (1, 2), (1, 3), (1, 4))
    with pytest.raises(ValueError):
        StringPointD(3, (0,) * 5)


def test_known_membership():
    om = [2, 2, 2]
    assert string_membership(om, interior_point(3))
    assert string_membership(om, (0,) * 6)
    assert not string_membership(om, (0, 0, 0, 0, 0, -1))
    assert not string_membership(om, (0, 0, 9, 0, 0, 0))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_interior_point_shape(n):
    p = interior_point(n)
    assert p.values[-2 * n + 2:] == tuple(range(2 * n - 3, n - 2, -1)) + tuple(range(n - 1, 0, -1))


@settings(max_examples=60, deadline=None)
@given(st.lists(fractions, min_size=6, max_size=6), st.lists(fractions, min_size=6, max_size=6), fractions)
def test_phi_tilde_is_affine(xs, ys, t):
    lam = weight("D", [3, 1, 0])
    a, b = StringPointD(3, xs), StringPointD(3, ys)
    mix = StringPointD(3, tuple(t * x + (1 - t) * y for x, y in zip(a.values, b.values)))
    lhs = phi_tilde(lam, mix).values
    rhs = tuple(t * u + (1 - t) * v for u, v in zip(phi_tilde(lam, a).values, phi_tilde(lam, b).values))
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(st.lists(fractions, min_size=12, max_size=12))
def test_phi_tilde_round_trip(xs):
    lam = weight("D", [3, 2, 1, 0])
    a = StringPointD(4, xs)
    t = phi_tilde(lam, a)
    assert in_v_lambda(lam, t)
    assert phi_tilde_inverse(lam, t) == a


@pytest.mark.parametrize("lam", WEIGHTS, ids=str)
def test_membership_transport(lam, rng):
    om = epsilon_to_omega(lam)
    for v in string_samples(lam, 120, rng):
        a = StringPointD(lam.rank, v)
        assert string_membership(om, a) == tweaked_membership(lam, phi_tilde(lam, a))


@pytest.mark.parametrize("lam", WEIGHTS, ids=str)
def test_min_formula_factors_through_psi(lam, rng):
    for v in string_samples(lam, 60, rng):
        a = StringPointD(lam.rank, v)
        if string_membership(epsilon_to_omega(lam), a):
            assert psi(phi_tilde(lam, a)) == phi(lam, a)


@pytest.mark.parametrize("lam", WEIGHTS[:4], ids=str)
def test_lattice_transport(lam):
    om = lambda_omega(lam)
    pts = enumerate_tweaked_lattice_points(lam)
    for t in pts:
        a = phi_tilde_inverse(lam, t)
        assert is_lattice_string_point(lam, a)
        assert string_membership(om, a)


def test_lattice_transport_rejects_fractional_points():
    lam = weight("D", [2, 1, 0])
    a = StringPointD(3, (0, 0, Fraction(1, 2), 0, 0, 0))
    assert not is_lattice_string_point(lam, a)
    assert any(v.denominator != 1 for v in phi_tilde(lam, a).values)


def test_inverse_rejects_patterns_outside_v_lambda():
    lam = weight("D", [2, 1, 0])
    with pytest.raises(ValueError):
        phi_tilde_inverse(lam, TweakedPattern(lam, (2, 0, 1, 2, 0, 2, 2)[:1] + (1, 0, 2, 0, 2, 2)))


def test_literal_variant_leaves_v_lambda():
    lam = weight("D", [2, 1, 1, 0])
    a = interior_point(4)
    cells = phi_tilde_literal(lam, a)
    assert not in_v_lambda(lam, TweakedPattern.from_mapping(lam, cells))


def test_lambda_omega_requires_integral_weight():
    assert lambda_omega(omega_to_epsilon(LieType("D", 3), [1, 0, 2])) == [1, 0, 2]
    with pytest.raises(ValueError):
        lambda_omega(weight("D", [Fraction(1, 2), 0, 0]))


def test_reference_table_convention_is_not_injective():
    lam = weight("D", [4, 2, 0])
    a = interior_point(3)
    b = StringPointD(3, tuple(v + d for v, d in zip(a.values, (0, 0, 1, 1, 1, 1))))
    assert reference_d3_table(lam, a) == reference_d3_table(lam, b)
    assert phi_tilde(lam, a) != phi_tilde(lam, b)
