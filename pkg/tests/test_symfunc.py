"""Unit tests for the symmetric-function oracles."""

from fractions import Fraction

import pytest

from ellhall.coeff import Coefficient, nu_pow
from ellhall.symfunc import (partitions, mult_vector, z_factor, dominates,
                             conjugate, character, schur_in_powersum,
                             h_in_powersum, p_in_h, ssyt, reading_word,
                             charge, kostka_foulkes, kostka_number,
                             kostka_foulkes_via_transition, kostka_matrix,
                             kostka_inverse, hl_P_in_powersum)


def test_partitions_counts():
    for n, cnt in [(1, 1), (2, 2), (3, 3), (4, 5), (5, 7), (6, 11),
                   (7, 15)]:
        assert len(partitions(n)) == cnt
    assert partitions(3) == ((3,), (2, 1), (1, 1, 1))


def test_z_factor():
    assert z_factor((1, 1, 1)) == 6
    assert z_factor((3,)) == 3
    assert z_factor((2, 1)) == 2
    assert mult_vector((2, 2, 1)) == {2: 2, 1: 1}


def test_dominance_and_conjugate():
    assert dominates((3,), (2, 1))
    assert dominates((2, 1), (1, 1, 1))
    assert not dominates((2, 2), (3, 1))
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(conjugate((4, 2, 1))) == (4, 2, 1)


def test_characters_s3():
    # chi^{(3)} is trivial, chi^{(1,1,1)} is sign
    for rho in partitions(3):
        assert character((3,), rho) == 1
    assert character((1, 1, 1), (1, 1, 1)) == 1
    assert character((1, 1, 1), (2, 1)) == -1
    assert character((1, 1, 1), (3,)) == 1
    assert character((2, 1), (1, 1, 1)) == 2
    assert character((2, 1), (3,)) == -1


def test_schur_in_powersum_orthogonality():
    # sum_rho chi^lam(rho) chi^mu(rho) / z_rho = delta_{lam,mu}
    for n in (3, 4):
        for lam in partitions(n):
            for mu in partitions(n):
                acc = Fraction(0)
                for rho in partitions(n):
                    acc += Fraction(character(lam, rho)
                                    * character(mu, rho), z_factor(rho))
                assert acc == (1 if lam == mu else 0)


def test_h_and_p_change_inverse():
    # substituting p_in_h into h_in_powersum must give the identity
    for n in range(1, 6):
        acc = {}
        for rho, c in h_in_powersum(n).items():
            # expand p_rho = prod p_r in h-monomials
            prods = [((), Fraction(1))]
            for r in rho:
                prods = [(tuple(sorted(mono + m2, reverse=True)), c1 * c2)
                         for mono, c1 in prods
                         for m2, c2 in p_in_h(r).items()]
            for mono, c2 in prods:
                acc[mono] = acc.get(mono, Fraction(0)) + c * c2
        acc = {m: c for m, c in acc.items() if c}
        assert acc == {(n,): Fraction(1)}


def test_ssyt_and_kostka_numbers():
    assert kostka_number((2, 1), (1, 1, 1)) == 2
    assert kostka_number((3,), (1, 1, 1)) == 1
    assert kostka_number((1, 1, 1), (2, 1)) == 0
    tabs = ssyt((2, 1), (2, 1))
    assert len(tabs) == 1
    assert sorted(reading_word(tabs[0])) == [1, 1, 2]


def test_charge_examples():
    assert charge((1, 2, 3)) == 0
    assert charge((3, 2, 1)) == 3
    assert kostka_foulkes((3,), (1, 1, 1)) == nu_pow(3)
    k21 = kostka_foulkes((2, 1), (1, 1, 1))
    assert k21 == nu_pow(1) + nu_pow(2)


def test_kostka_foulkes_two_oracles_agree():
    for n in range(1, 7):
        table = kostka_foulkes_via_transition(n)
        for lam in partitions(n):
            for mu in partitions(n):
                want = kostka_foulkes(lam, mu)
                got = Coefficient()
                for e, c in table.get((lam, mu), {}).items():
                    got = got + nu_pow(e).scale(c)
                assert got == want, (lam, mu)


def test_kostka_triangularity():
    for n in (4, 5):
        K = kostka_matrix(n)
        for (lam, mu) in K:
            assert dominates(lam, mu)
            if lam == mu:
                assert K[(lam, mu)] == Coefficient.rational(1)


def test_kostka_inverse_is_inverse():
    for n in (3, 4, 5):
        K = kostka_matrix(n)
        inv = kostka_inverse(n)
        parts = partitions(n)
        for lam in parts:
            for mu in parts:
                acc = Coefficient()
                for kap in parts:
                    a = K.get((lam, kap))
                    b = inv.get((kap, mu))
                    if a and b:
                        acc = acc + a * b
                assert acc == (Coefficient.rational(1) if lam == mu
                               else Coefficient())


def test_hl_P_specializations():
    # P_{1^n} = e_n = s_{1^n}; P_n at nu = 0 ... spot-check via power sums
    for n in (2, 3):
        p_e = hl_P_in_powersum((1,) * n)
        s_e = schur_in_powersum((1,) * n)
        assert set(p_e) == set(s_e)
        for rho, c in s_e.items():
            assert p_e[rho] == Coefficient.rational(c)
