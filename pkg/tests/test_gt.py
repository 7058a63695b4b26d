from fractions import Fraction

import pytest

from gtpoly.gt import (
    GTPattern,
    b_witness,
    enumerate_standard_patterns,
    gt_membership,
    gt_poset,
    is_standard,
    pattern_names,
    pattern_to_json,
)
from gtpoly.marked_poset import enumerate_vertices, is_vertex
from gtpoly.rootdata import LieType, dominant_weights, omega_to_epsilon, weight, weyl_dim

H = Fraction(1, 2)


def test_pattern_shapes():
    assert pattern_names(LieType("A", 2)) == ("y1_1", "y1_2", "y2_2")
    assert pattern_names(LieType("B", 2)) == ("z1_1", "z1_2", "y2_2", "z2_2")
    assert pattern_names(LieType("D", 3)) == ("z1_1", "z1_2", "y2_2", "y2_3", "z2_2", "y3_3")
    with pytest.raises(ValueError):
        GTPattern(weight("A", [1, 0, 0]), (0, 0))


def test_rows_round_trip():
    lam = weight("A", [4, 2, 0])
    p = GTPattern.from_rows(lam, [[4, 2, 0], [3, 1], [2]])
    assert p.rows() == [[4, 2, 0], [3, 1], [2]]
    assert gt_membership(lam, p)
    assert '"family": "A"' in pattern_to_json(p)
    with pytest.raises(ValueError):
        GTPattern.from_rows(lam, [[4, 2], [3, 1], [2]])


def test_membership_rejects_broken_interlacing():
    lam = weight("A", [4, 2, 0])
    assert not gt_membership(lam, (5, 2, 0, 3, 1, 2))
    assert not gt_membership(lam, (4, 2, 0, 3, 1, 4))


def test_type_d_min_inequality():
    lam = weight("D", [2, 1, 0])
    names = pattern_names(lam.type)
    good = dict(zip(names, (2, 1, 1, 0, 0, 0)))
    assert gt_membership(lam, GTPattern.from_mapping(lam, good))
    # every interlacing relation still holds; only z1_2 <= y1_3 + y2_3 + min(y1_2, y2_2) breaks
    bad = dict(good, y2_3=-1)
    assert not gt_membership(lam, GTPattern.from_mapping(lam, bad))


def test_standard_coset_rules():
    lam = omega_to_epsilon(LieType("B", 2), [0, 1])
    assert is_standard(lam, (H, H, H, 0))
    assert is_standard(lam, (H, 0, H, 0))
    assert not is_standard(lam, (0, 0, H, 0))
    c = weight("C", [1, 0])
    assert not is_standard(c, (H, 0, H, 0))


@pytest.mark.parametrize(
    "family, rank, bound",
    [("A", 2, 2), ("A", 3, 1), ("B", 2, 2), ("B", 3, 1), ("C", 2, 2), ("C", 3, 1), ("D", 3, 1), ("D", 4, 1)],
)
def test_standard_patterns_count_to_weyl_dimension(family, rank, bound):
    for lam in dominant_weights(LieType(family, rank), bound):
        assert len(enumerate_standard_patterns(lam)) == weyl_dim(lam), lam


@pytest.mark.parametrize("omega", [[0, 1], [1, 1], [2, 1], [0, 3]])
def test_b_witness_is_a_nonstandard_vertex(omega):
    lam = omega_to_epsilon(LieType("B", 2), omega)
    w = b_witness(lam)
    assert gt_membership(lam, w)
    assert is_vertex(gt_poset(lam), w.values)
    assert not is_standard(lam, w)


def test_b_witness_requires_type_b():
    with pytest.raises(ValueError):
        b_witness(weight("C", [1, 0]))


def test_integral_vertices_for_even_b_weight():
    lam = omega_to_epsilon(LieType("B", 2), [1, 2])
    for v in enumerate_vertices(gt_poset(lam)):
        assert is_standard(lam, v)
