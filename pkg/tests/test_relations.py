"""Unit tests for the structure constants and straightening engine."""

from fractions import Fraction

import pytest

from ellhall.coeff import Coefficient, nu_pow, ONE, SIGMA, SIGMA_BAR
from ellhall.paths import slope, euler_form, sl2_apply, canonical_path
from ellhall.relations import (RelationConfig, default_config,
                               counting_config, log_config, theta_element,
                               bracket, straighten, straighten_raw,
                               support_bound_violations,
                               support_bound_report, ConfigIncoherent)

CFG = default_config()

XI = (ONE - SIGMA) * (ONE - SIGMA_BAR)


def test_default_config_is_counting():
    assert CFG.version == "counting-1"
    assert CFG.base_domain == "both"
    assert CFG.theta_xi is not None
    assert CFG.gamma is not None
    CFG.validate_scalars()


def test_config_doc_roundtrip():
    doc = CFG.to_doc()
    again = RelationConfig.from_doc(doc)
    assert again.content_hash == CFG.content_hash
    assert again.theta_log == CFG.theta_log
    assert again.gamma == CFG.gamma
    assert again.theta_xi == CFG.theta_xi


def test_config_rejects_bad_input():
    with pytest.raises(ValueError):
        RelationConfig(kappa=ONE, theta_log=[ONE], comm_sign=2)
    with pytest.raises(ValueError):
        RelationConfig(kappa=ONE, theta_log=[ONE], base_domain="sometimes")
    with pytest.raises(ValueError):
        RelationConfig(kappa=ONE, theta_log=[ONE], theta_xi=ONE)
    with pytest.raises(ConfigIncoherent):
        RelationConfig(kappa=ONE, theta_log=[SIGMA]).validate_scalars()


def test_det_one_bracket_value():
    out = bracket((0, 1), (1, 0), CFG)
    assert set(out) == {((1, 1),)}
    assert out[((1, 1),)] == nu_pow(1) * XI
    # bar-symmetric (palindromic) value
    assert out[((1, 1),)].bar() == out[((1, 1),)]


def test_bracket_antisymmetry_and_collinear():
    assert bracket((1, 1), (2, 2), CFG) == {}
    assert bracket((1, 0), (1, 0), CFG) == {}
    a = bracket((0, 1), (1, 0), CFG)
    b = bracket((1, 0), (0, 1), CFG)
    assert set(a) == set(b)
    for p in a:
        assert a[p] == -b[p]


def test_theta_element_degree_two_shape():
    out = theta_element((0, 1), 2, CFG)
    assert set(out) == {((0, 2),), ((0, 1), (0, 1))}
    # single-letter coefficient: xi * e_2 with e_2 = 1 + q^{-1}
    e2 = ONE + (SIGMA * SIGMA_BAR).bar()
    assert out[((0, 2),)] == XI * e2
    # double-letter coefficient: xi * eta * e_1^2 / 2
    eta = SIGMA * SIGMA_BAR - ONE
    assert out[((0, 1), (0, 1))] == \
        (XI * eta * nu_pow(2)).scale(Fraction(1, 2))


def test_det_two_bracket_matches_theta():
    out = bracket((1, 1), (1, -1), CFG)
    want = theta_element((1, 0), 2, CFG)
    assert out == want


def test_width_one_family():
    # [u_{l delta}, u_x] = gamma_l u_{x + l delta} when det(delta,x) = 1
    for l in (2, 3):
        out = bracket((0, l), (1, 0), CFG)
        gl = (nu_pow(l)
              * (ONE - Coefficient.monomial(2 * l, 0, 1))
              * (ONE - Coefficient.monomial(0, 2 * l, 1))).scale(
                  Fraction(1, l))
        assert out == {((1, l),): gl}
    # gamma_1 agrees with the degree-1 theta value
    assert CFG.gamma[0] == nu_pow(1) * XI


def test_slope_sector_property():
    pairs = [((0, 1), (1, 0)), ((1, 2), (1, 0)), ((1, 1), (1, -1)),
             ((0, 2), (1, 0)), ((2, 1), (1, 0))]
    for y, x in pairs:
        lo, hi = slope(x), slope(y)
        for p in bracket(y, x, CFG):
            for seg in p:
                assert lo <= slope(seg) <= hi, (y, x, p)


def test_straighten_sorted_word_is_identity():
    w = ((1, -1), (1, 0), (0, 1))
    assert straighten_raw(w, CFG) == {w: Coefficient.rational(1)}


def test_straighten_two_letters():
    # u_{(0,1)} u_{(1,0)} = u_{(1,0)} u_{(0,1)} + [u_{(0,1)}, u_{(1,0)}]
    out = straighten_raw(((0, 1), (1, 0)), CFG)
    assert out[((1, 0), (0, 1))] == Coefficient.rational(1)
    assert out[((1, 1),)] == nu_pow(1) * XI
    assert len(out) == 2


def test_straighten_floor_truncates():
    full = straighten_raw(((0, 1), (1, -2)), CFG)
    cut = straighten(((0, 1), (1, -2)), Fraction(-1), CFG)
    assert set(cut) <= set(full)
    for p in cut:
        assert min(slope(z) for z in p) >= Fraction(-1)


def test_associativity_probe_words():
    words = [((1, 0), (1, 1), (0, 1)), ((0, 1), (1, 0), (1, -1)),
             ((1, 1), (0, 1), (1, 0))]
    for w in words:
        lhs = straighten_raw(w, CFG)
        rhs = {}
        for p, c in straighten_raw(w[1:], CFG).items():
            for o, co in straighten_raw((w[0],) + p, CFG).items():
                cur = rhs.get(o, Coefficient()) + c * co
                if cur:
                    rhs[o] = cur
                elif o in rhs:
                    del rhs[o]
        assert lhs == rhs, w


def test_jacobi_probe():
    trips = [((0, 1), (1, 0), (1, 1)), ((1, -1), (1, 0), (0, 1))]
    for x, y, z in trips:
        total = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            inner = bracket(b, a, CFG)
            for p, cp in inner.items():
                word = p
                lhs = straighten_raw(word + (c,), CFG)
                rhs = straighten_raw((c,) + word, CFG)
                for o, co in lhs.items():
                    cur = total.get(o, Coefficient()) + cp * co
                    if cur:
                        total[o] = cur
                    elif o in total:
                        del total[o]
                for o, co in rhs.items():
                    cur = total.get(o, Coefficient()) - cp * co
                    if cur:
                        total[o] = cur
                    elif o in total:
                        del total[o]
        assert not total, (x, y, z)


def test_sl2_shear_equivariance():
    shear = (1, 0, 1, 1)
    pairs = [((0, 1), (1, 0)), ((1, 1), (1, -1)), ((0, 2), (1, 0))]
    for y, x in pairs:
        img = bracket(tuple(v for v in sl2_apply(shear, (y,))[0]),
                      tuple(v for v in sl2_apply(shear, (x,))[0]), CFG)
        src = bracket(y, x, CFG)
        moved = {}
        for p, c in src.items():
            moved[sl2_apply(shear, p)] = c
        assert img == moved, (y, x)


def test_support_bound_counterexample_recorded():
    # the merge of a torsion letter into a bundle letter violates the
    # literal right-factor bound; the engine records, never enforces
    out = straighten_raw(((0, 1), (2, 0)), CFG)
    assert ((2, 1),) in out
    assert support_bound_violations(((2, 1),), ((2, 0),)) == [0]
    report = support_bound_report(((0, 1),), ((2, 0),), out)
    assert report[((2, 1),)]["right"] == [0]


def test_bracket_determinism():
    a = bracket((1, 2), (1, 0), CFG)
    b = bracket((1, 2), (1, 0), CFG)
    assert a == b
    assert sorted(a) == sorted(b)


def test_sign_branch_is_distinct():
    neg = counting_config(sign=-1)
    out = bracket((0, 1), (1, 0), neg)
    assert out[((1, 1),)] == -(nu_pow(1) * XI)


def test_log_config_still_loads():
    cfg = log_config()
    cfg.validate_scalars()
    out = bracket((0, 1), (1, 0), cfg)
    assert set(out) == {((1, 1),)}
