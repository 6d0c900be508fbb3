"""Unit tests for the exact two-variable Laurent coefficient ring."""

from fractions import Fraction

import pytest

from ellhall.coeff import (Coefficient, NotDivisible, SplitObstruction,
                           ZERO, ONE, SIGMA, SIGMA_BAR, NU, T, nu_pow)


def test_monomial_parity_enforced():
    with pytest.raises(ValueError):
        Coefficient.monomial(1, 0, 1)


def test_ring_axioms_samples():
    a = SIGMA + SIGMA_BAR.scale(Fraction(2, 3))
    b = NU * T - ONE
    c = SIGMA_BAR + nu_pow(3)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO
    assert a * ONE == a


def test_nu_t_change_of_variables():
    # nu = -(s sb)^(-1/2), t = (s/sb)^(1/2); q = s sb = nu^-2 as ops
    q = SIGMA * SIGMA_BAR
    assert NU * NU * q == ONE
    assert T * T * SIGMA_BAR == SIGMA
    assert nu_pow(2) == NU * NU
    assert nu_pow(-3) * nu_pow(3) == ONE


def test_nt_form_roundtrip():
    a = SIGMA.scale(Fraction(5, 7)) - SIGMA_BAR + nu_pow(5) * T
    assert Coefficient.from_nt(a.nt_form()) == a


def test_bar_is_involution_and_ring_map():
    a = SIGMA + NU
    b = T - SIGMA_BAR.scale(2)
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()
    # bar fixes rationals and inverts sigma
    assert ONE.bar() == ONE
    assert SIGMA.bar() * SIGMA == ONE


def test_sigma_symmetry():
    assert (SIGMA + SIGMA_BAR).is_sigma_symmetric()
    assert not (SIGMA - SIGMA_BAR).is_sigma_symmetric()
    assert NU.is_sigma_symmetric()
    assert not T.is_sigma_symmetric()


def test_exact_div_monomial_and_poly():
    a = (ONE - SIGMA) * (ONE - SIGMA_BAR)
    b = ONE - SIGMA
    assert a.exact_div(b) == ONE - SIGMA_BAR
    assert (a * nu_pow(4)).exact_div(a) == nu_pow(4)
    with pytest.raises(NotDivisible):
        (ONE - SIGMA).exact_div(ONE - SIGMA_BAR)
    with pytest.raises(ZeroDivisionError):
        ONE.exact_div(ZERO)


def test_exact_div_random_products():
    import random
    rng = random.Random(11)
    mons = [SIGMA, SIGMA_BAR, NU, T, ONE - SIGMA, ONE + NU * T]
    for _ in range(25):
        a = mons[rng.randrange(len(mons))] + nu_pow(rng.randrange(4))
        b = mons[rng.randrange(len(mons))] * nu_pow(rng.randrange(3))
        if b.is_zero():
            continue
        assert (a * b).exact_div(b) == a


def test_positive_cone_and_split():
    assert NU.is_positive_cone()
    assert not SIGMA.is_positive_cone()
    x = NU - NU.bar()
    assert x.split_positive() == NU
    with pytest.raises(SplitObstruction):
        (ONE + NU).split_positive()
    with pytest.raises(SplitObstruction):
        (T - T.bar() + T).split_positive()


def test_doc_roundtrip():
    a = SIGMA.scale(Fraction(-3, 5)) + nu_pow(7) * T - ONE
    assert Coefficient.from_doc(a.to_doc()) == a


def test_nt_str_readable():
    assert ZERO.nt_str() == "0"
    assert ONE.nt_str() == "1"
    assert NU.nt_str() == "nu"
    assert (NU * T).nt_str() == "nu*t"
    assert (-NU).nt_str() == "-nu"
