"""Unit tests for cone classes, convex paths, orders, and enumeration."""

from fractions import Fraction
from math import inf

import pytest

from ellhall.paths import (in_cone, slope, euler_form, ray_decompose,
                           class_deg, canonical_path, is_canonical,
                           path_weight, deg_profile, deg_at_or_above,
                           path_cmp, LESS, GREATER, EQUIVALENT, EQUAL,
                           hn_of_path, omega_index, omega_inverse,
                           sort_paths, group_by_class, enumerate_paths,
                           sl2_apply, sl2_check, NotConvex, OutOfCone)


def test_cone_membership():
    assert in_cone((1, -5))
    assert in_cone((0, 1))
    assert not in_cone((0, 0))
    assert not in_cone((0, -1))
    assert not in_cone((-1, 3))


def test_slope_values():
    assert slope((2, 3)) == Fraction(3, 2)
    assert slope((0, 4)) == inf
    with pytest.raises(ValueError):
        slope((0, 0))


def test_euler_form_antisymmetric():
    assert euler_form((1, 0), (0, 1)) == 1
    assert euler_form((2, 3), (1, -1)) == -euler_form((1, -1), (2, 3))


def test_ray_decompose():
    assert ray_decompose((4, -6)) == (2, (2, -3))
    assert ray_decompose((0, 5)) == (5, (0, 1))
    assert class_deg((3, 3)) == 3
    assert class_deg((1, 7)) == 1


def test_canonical_path_sorts_by_slope():
    p = canonical_path([(0, 1), (1, 0), (1, -1)])
    assert p == ((1, -1), (1, 0), (0, 1))
    assert is_canonical(p)
    assert not is_canonical(((1, 0), (1, -1)))
    with pytest.raises(NotConvex):
        canonical_path([])
    with pytest.raises(NotConvex):
        canonical_path([(0, -1)])


def test_equal_slope_multiples_descend():
    p = canonical_path([(1, 1), (2, 2), (3, 3)])
    assert p == ((3, 3), (2, 2), (1, 1))


def test_weak_order_top_down():
    # more mass on the top slope means smaller
    a = ((1, 0), (0, 2))          # deg 2 at slope inf
    b = ((1, 1), (0, 1))          # deg 1 at slope inf, 1 at slope 1
    assert path_weight(a) == path_weight(b) == (1, 2)
    assert path_cmp(a, b) == LESS
    assert path_cmp(b, a) == GREATER
    assert path_cmp(a, a) == EQUAL


def test_weak_order_equivalence():
    a = ((0, 2), (0, 1))
    b = ((0, 1), (0, 1), (0, 1))
    # same profile {inf: 3}
    assert deg_profile(a) == deg_profile(b)
    assert path_cmp(a, b) == EQUIVALENT


def test_sort_paths_partition_tiebreak():
    # on a single ray the one-row partition leads
    ps = [((0, 1), (0, 1), (0, 1)), ((0, 3),), ((0, 2), (0, 1))]
    assert sort_paths(ps) == [((0, 3),), ((0, 2), (0, 1)),
                              ((0, 1), (0, 1), (0, 1))]


def test_group_by_class():
    groups = group_by_class(enumerate_paths((0, 3), 1))
    assert [len(g) for g in groups] == [3]


def test_hn_merges_equal_slopes():
    assert hn_of_path(((1, 1), (1, 1), (0, 1))) == ((2, 2), (0, 1))
    assert hn_of_path(((1, -1), (1, 0))) == ((1, -1), (1, 0))


def test_omega_roundtrip():
    p = ((2, -2), (1, -1), (1, 0), (0, 2), (0, 1))
    assert omega_inverse(omega_index(p)) == p
    blocks = omega_index(p)
    assert blocks[0] == ((1, -1), (2, 1))


def test_deg_at_or_above():
    p = ((1, -1), (1, 0), (0, 2))
    assert deg_at_or_above(p, 0) == 3
    assert deg_at_or_above(p, inf) == 2
    assert deg_at_or_above(p, -1) == 4


def test_enumerate_paths_weight_and_floor():
    for alpha, floor in [((1, 1), -2), ((2, 0), -1), ((0, 4), 5),
                         ((2, -1), Fraction(-3, 2))]:
        paths = enumerate_paths(alpha, floor)
        assert len(paths) == len(set(paths))
        for p in paths:
            assert path_weight(p) == alpha
            assert is_canonical(p)
            assert slope(p[0]) >= floor
        assert list(paths) == sort_paths(paths)


def test_enumerate_paths_known_counts():
    # torsion weight m: one path per partition of m
    assert len(enumerate_paths((0, 4), 100)) == 5
    assert len(enumerate_paths((1, 0), 0)) == 1
    assert enumerate_paths((1, 0), 0) == (((1, 0),),)


def test_enumerate_monotone_in_floor():
    deep = set(enumerate_paths((2, 1), -2))
    shallow = set(enumerate_paths((2, 1), -1))
    assert shallow <= deep


def test_sl2_apply():
    shear = (1, 0, 1, 1)    # (r, d) -> (r, r + d)
    p = ((1, -1), (1, 0), (0, 1))
    q = sl2_apply(shear, p)
    assert path_weight(q) == (2, 2)
    with pytest.raises(ValueError):
        sl2_check((2, 0, 0, 1))
    with pytest.raises(OutOfCone):
        sl2_apply((1, -1, 0, 1), ((0, 1),) )  # torsion -> rank -1
