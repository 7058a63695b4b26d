import itertools
from fractions import Fraction

import pytest

from conftest import convex_samples
from gtpoly.gt import GTPattern, gt_membership
from gtpoly.polyoracle import (
    HPolytope,
    NotFullDimensional,
    Unbounded,
    count_lattice_points,
    facet_rows,
    hrep,
    interior_lattice_points,
    is_vertex_by_perturbation,
    lattice_points,
    polar_dual_vertices,
    polytope_dimension,
    reflexive_after_translation,
    sorted_vertices,
    sweep_rows,
    vertex_enumeration,
    vertices_on_lattice,
)
from gtpoly.rootdata import LieType, epsilon_to_omega, fundamental_weight, omega_to_epsilon, weight
from gtpoly.string_d import string_membership
from gtpoly.tweaked_d import TweakedPattern, tweaked_membership

H = Fraction(1, 2)


def box(*sides):
    d = len(sides)
    rows = []
    for i, (lo, hi) in enumerate(sides):
        e = [0] * d
        e[i] = 1
        rows.append((e, hi))
        rows.append(([-c for c in e], -lo))
    return HPolytope(tuple(f"x{i}" for i in range(d)), rows)


def brute_force_vertices(h):
    """Solve every square subsystem of tight rows; keep feasible solutions."""
    from gtpoly.polyoracle import _inverse

    rows = list(h.ineqs)
    eq = list(h.eqs)
    out = set()
    for pick in itertools.combinations(range(len(rows)), h.dim - len(eq)):
        sub = [rows[k] for k in pick] + eq
        m = [list(a) for a, _ in sub]
        try:
            inv = _inverse(m)
        except ValueError:
            continue
        x = tuple(sum(inv[r][c] * sub[c][1] for c in range(h.dim)) for r in range(h.dim))
        if h.contains(x):
            out.add(x)
    return out


def test_b2_hrep_shape():
    h = hrep("gtB", omega_to_epsilon(LieType("B", 2), [0, 1]))
    assert h.dim == 4 and len(h.ineqs) == 8 and not h.eqs
    assert len(vertex_enumeration(h)) == 5


def test_tweaked_hrep_has_the_v_lambda_equality():
    h = hrep("tweakedD", weight("D", [2, 1, 0]))
    assert h.dim == 7 and len(h.eqs) == 1


def test_hrep_rejects_mismatched_input():
    with pytest.raises(ValueError):
        hrep("gtB", weight("C", [1, 0]))
    with pytest.raises(ValueError):
        hrep("polygon", weight("A", [1, 0]))
    with pytest.raises(ValueError):
        hrep("tweakedD", weight("D", [1, 0]))


@pytest.mark.parametrize(
    "kind, lam",
    [
        ("gtA", weight("A", [4, 2, 0])),
        ("gtB", omega_to_epsilon(LieType("B", 2), [1, 1])),
        ("gtC", weight("C", [2, 1])),
        ("gtD", weight("D", [2, 1, 0])),
        ("tweakedD", weight("D", [2, 1, 0])),
        ("stringD", weight("D", [2, 1, 0])),
    ],
)
def test_oracle_rows_agree_with_the_membership_tests(kind, lam, rng):
    h = hrep(kind, lam)
    verts = vertex_enumeration(h)
    pts = convex_samples(verts, 80, rng)
    pts += [tuple(v + Fraction(rng.randint(-2, 2), 2) for v in p) for p in pts]
    for p in pts:
        if kind.startswith("gt"):
            direct = gt_membership(lam, GTPattern(lam, p))
        elif kind == "tweakedD":
            direct = tweaked_membership(lam, TweakedPattern(lam, p))
        else:
            direct = string_membership(epsilon_to_omega(lam), p)
        assert h.contains(p) == direct


@pytest.mark.parametrize(
    "h",
    [
        hrep("gtA", weight("A", [3, 1, 0])),
        hrep("gtB", omega_to_epsilon(LieType("B", 2), [1, 1])),
        hrep("tweakedD", weight("D", [2, 1, 0])),
        hrep("stringD", weight("D", [1, 1, 0])),
    ],
    ids=["A3", "B2", "tweakedD3", "stringD3"],
)
def test_double_description_matches_brute_force(h):
    assert vertex_enumeration(h) == brute_force_vertices(h)


def test_unit_interval_and_square():
    assert sorted_vertices(box((0, 1))) == [(0,), (1,)]
    assert len(vertex_enumeration(box((0, 1), (0, 2)))) == 4


def test_unbounded_and_infeasible():
    ray = HPolytope(("x", "y"), [([-1, 0], 0), ([0, -1], 0)])
    with pytest.raises(Unbounded):
        vertex_enumeration(ray)
    strip = HPolytope(("x", "y"), [([1, 0], 1), ([-1, 0], 1)])
    with pytest.raises(Unbounded):
        vertex_enumeration(strip)
    empty = HPolytope(("x",), [([1], 0), ([-1], -1)])
    assert vertex_enumeration(empty) == set()
    assert count_lattice_points(empty) == 0


def test_equality_rows_cut_a_face():
    tri = HPolytope(("x", "y", "z"), [([-1, 0, 0], 0), ([0, -1, 0], 0), ([0, 0, -1], 0)], [([1, 1, 1], 1)])
    assert vertex_enumeration(tri) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert polytope_dimension(tri) == 2
    with pytest.raises(NotFullDimensional):
        interior_lattice_points(tri)
    with pytest.raises(ValueError):
        HPolytope(("x",), [], [([1], 0), ([2], 0)])


def test_perturbation_test():
    sq = box((0, 1), (0, 1))
    assert is_vertex_by_perturbation(sq, (0, 1))
    assert not is_vertex_by_perturbation(sq, (H, 1))
    with pytest.raises(ValueError):
        is_vertex_by_perturbation(sq, (2, 0))


def test_lattice_points_and_interior():
    sq = box((0, 2), (0, 2))
    assert count_lattice_points(sq) == 9
    assert interior_lattice_points(sq) == [(1, 1)]
    assert lattice_points(box((0, 1)), "half-shifted") == [(H,)]
    with pytest.raises(ValueError):
        lattice_points(sq, "hexagonal")


def test_facets_skip_redundant_rows():
    h = HPolytope(("x",), [([1], 1), ([-1], 0), ([1], 2)])
    assert facet_rows(h) == [0, 1]


def test_reflexivity_on_boxes():
    assert reflexive_after_translation(box((0, 2), (0, 2))) == (True, (1, 1))
    assert reflexive_after_translation(box((0, 3), (0, 2)))[0] is False
    assert polar_dual_vertices(box((-1, 1)), (0,)) == {(1,), (-1,)}
    assert reflexive_after_translation(box((0, H)))[0] is False


def test_vertices_on_declared_lattices():
    b2 = hrep("gtB", omega_to_epsilon(LieType("B", 2), [0, 1]))
    assert vertices_on_lattice(b2, "B-standard") is False
    d3 = hrep("tweakedD", fundamental_weight(LieType("D", 3), 3))
    assert vertices_on_lattice(d3, "half-shifted")
    assert not vertices_on_lattice(d3, "integers")


def test_sweep_rows_record_agreement():
    lt = LieType("B", 2)
    rows = sweep_rows([fundamental_weight(lt, 1), fundamental_weight(lt, 2)])
    assert [(r.predicted, r.observed) for r in rows] == [(True, True), (False, False)]
    assert all(r.agrees for r in rows)


def test_json_round_trip_is_stable():
    h = hrep("gtA", weight("A", [2, 1, 0]))
    assert h.dumps() == hrep("gtA", weight("A", [2, 1, 0])).dumps()
