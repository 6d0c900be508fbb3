"""Partition combinatorics and classical symmetric-function transitions.

Everything here is the one-ray model: the subalgebra attached to a single
primitive direction is a polynomial ring on commuting generators g_1, g_2,
..., identified with the ring of symmetric functions by g_l <-> p_l / l.
This module provides the transitions between one-row generators (h),
power sums (p), Schur functions (s) and Hall-Littlewood functions (P),
including two independent computations of the Kostka-Foulkes polynomials.

Partitions are tuples of weakly decreasing positive integers.  A "ray
polynomial" is a dict mapping partitions (the exponent multiset of a
monomial in the g_l or p_l) to scalars.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian

from .coeff import Coefficient, nu_pow


# -- partitions ------------------------------------------------------------

@lru_cache(maxsize=None)
def partitions(n, maxpart=None):
    """All partitions of n in reverse-lexicographic order ((n) first)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if maxpart is None or maxpart > n:
        maxpart = n
    if n == 0:
        return ((),)
    out = []
    for first in range(maxpart, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def mult_vector(lam):
    """Multiplicities {part: count}."""
    out = {}
    for a in lam:
        out[a] = out.get(a, 0) + 1
    return out


def z_factor(lam):
    """The centralizer order z_lambda = prod i^{m_i} m_i!."""
    z = 1
    for i, m in mult_vector(lam).items():
        fact = 1
        for j in range(2, m + 1):
            fact *= j
        z *= i ** m * fact
    return z


def dominates(lam, mu):
    """True iff lam >= mu in dominance order (equal sizes assumed)."""
    s1 = s2 = 0
    for i in range(max(len(lam), len(mu))):
        s1 += lam[i] if i < len(lam) else 0
        s2 += mu[i] if i < len(mu) else 0
        if s1 < s2:
            return False
    return True


def conjugate(lam):
    if not lam:
        return ()
    return tuple(sum(1 for a in lam if a > i) for i in range(lam[0]))


# -- symmetric group characters (Murnaghan-Nakayama) -----------------------

@lru_cache(maxsize=None)
def _mn_char(lam, rho):
    """Character value chi^lam(rho) by border-strip removal."""
    if not rho:
        return 1 if not lam else 0
    r = rho[0]
    rest = rho[1:]
    total = 0
    # remove a border strip of size r from lam; strips correspond to
    # pairs of beta-numbers differing by r
    beta = [lam[i] + len(lam) - 1 - i for i in range(len(lam))] if lam else []
    betaset = set(beta)
    for b in beta:
        if b - r >= 0 and b - r not in betaset:
            newbeta = sorted((x for x in beta if x != b), reverse=True)
            pos = sum(1 for x in newbeta if x > b - r)
            newbeta.insert(pos, b - r)
            height = pos - beta.index(b)
            # rebuild a partition from the new beta-numbers
            n = len(newbeta)
            newlam = tuple(newbeta[i] - (n - 1 - i) for i in range(n))
            newlam = tuple(a for a in newlam if a > 0)
            total += (-1) ** height * _mn_char(newlam, rest)
    return total


def character(lam, rho):
    if sum(lam) != sum(rho):
        raise ValueError("character needs equal sizes")
    return _mn_char(tuple(lam), tuple(rho))


@lru_cache(maxsize=None)
def schur_in_powersum(lam):
    """s_lam = sum_rho chi^lam(rho)/z_rho * p_rho, as {rho: Fraction}."""
    lam = tuple(lam)
    n = sum(lam)
    out = {}
    for rho in partitions(n):
        chi = character(lam, rho)
        if chi:
            out[rho] = Fraction(chi, z_factor(rho))
    return out


@lru_cache(maxsize=None)
def h_in_powersum(n):
    """h_n = sum_{rho |- n} p_rho / z_rho (the one-row Schur function)."""
    return {rho: Fraction(1, z_factor(rho)) for rho in partitions(n)}


@lru_cache(maxsize=None)
def p_in_h(n):
    """p_n expanded in products of h's via Newton's identity
    p_n = n h_n - sum_{i=1}^{n-1} h_i p_{n-i}; returns {h-monomial: Fraction}."""
    if n < 1:
        raise ValueError("n must be positive")
    out = {(n,): Fraction(n)}
    for i in range(1, n):
        for mono, c in p_in_h(n - i).items():
            key = tuple(sorted(mono + (i,), reverse=True))
            out[key] = out.get(key, Fraction(0)) - c
            if not out[key]:
                del out[key]
    return out


def generator_change_exp(direction, max_degree):
    """Triangular tables between one-row generators and power sums.

    G_TO_P: {n: {p-monomial: Fraction}} expressing h_n.
    P_TO_G: {n: {h-monomial: Fraction}} expressing p_n.
    """
    if direction == "G_TO_P":
        return {n: dict(h_in_powersum(n)) for n in range(1, max_degree + 1)}
    if direction == "P_TO_G":
        return {n: dict(p_in_h(n)) for n in range(1, max_degree + 1)}
    raise ValueError("direction must be G_TO_P or P_TO_G")


# -- semistandard tableaux, charge, Kostka-Foulkes -------------------------

def ssyt(shape, content):
    """All semistandard tableaux of the given shape and content, as
    tuples of row tuples."""
    shape = tuple(shape)
    content = tuple(content)
    if sum(shape) != sum(content):
        return []
    rows = len(shape)
    out = []
    counts = list(content)

    def fill(r, c, tab):
        if r == rows:
            out.append(tuple(tuple(row) for row in tab))
            return
        nr, nc = (r, c + 1) if c + 1 < shape[r] else (r + 1, 0)
        lo = tab[r][c - 1] if c > 0 else 1
        for v in range(lo, len(content) + 1):
            if counts[v - 1] == 0:
                continue
            if r > 0 and c < shape[r - 1] and tab[r - 1][c] >= v:
                continue
            counts[v - 1] -= 1
            tab[r][c] = v
            fill(nr, nc, tab)
            counts[v - 1] += 1
        tab[r][c] = 0

    if rows == 0:
        return [()]
    fill(0, 0, [[0] * k for k in shape])
    return out


def reading_word(tab):
    """Rows read right to left, top row first."""
    w = []
    for row in tab:
        w.extend(reversed(row))
    return w


def _charge_standard(word):
    """Charge of a word using each letter 1..m exactly once."""
    pos = {v: i for i, v in enumerate(word)}
    idx = 0
    total = 0
    for v in range(2, len(word) + 1):
        if pos[v] < pos[v - 1]:
            idx += 1
        total += idx
    return total


def charge(word):
    """Charge of a word with partition content, by extraction of standard
    subwords: mark the leftmost 1, then keep scanning rightward
    (cyclically) for a 2, a 3, ...; remove the marked subword and repeat.
    The convention is pinned against the independent Hall-Littlewood
    monomial oracle over all contents of size <= 6."""
    word = list(word)
    total = 0
    while word:
        marked = []
        need = 1
        maxval = max(word)
        i = word.index(1) if 1 in word else 0
        while need <= maxval and need in word:
            if word[i] == need:
                marked.append(i)
                need += 1
            i = (i + 1) % len(word)
        sub = [word[i] for i in sorted(marked)]
        total += _charge_standard(sub)
        for i in sorted(marked, reverse=True):
            del word[i]
    return total


def kostka_foulkes(lam, mu):
    """K_{lam,mu}(nu) by the charge statistic, as a Coefficient in nu."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        raise ValueError("equal sizes required")
    total = Coefficient()
    for tab in ssyt(lam, mu):
        total = total + nu_pow(charge(reading_word(tab)))
    return total


def kostka_number(lam, mu):
    """Classical Kostka number: count of SSYT of shape lam, content mu."""
    return len(ssyt(tuple(lam), tuple(mu)))


# -- independent Hall-Littlewood oracle (monomial expansion) ---------------

def _hl_P_monomials(lam, nvars):
    """P_lam(x_1..x_nvars; t) in the monomial-ish basis: dict mapping
    exponent tuples (sorted decreasingly, padded) to t-polynomials
    {power: Fraction}.  Computed by the branching rule over horizontal
    strips with the psi weight."""
    lam = tuple(lam)

    @lru_cache(maxsize=None)
    def P(shape, n):
        if not shape:
            return {(0,) * n: {0: Fraction(1)}}
        if n == 0:
            return {}
        if len(shape) > n:
            return {}
        out = {}
        # peel a horizontal strip shape/mu from the last variable
        for mu in _horizontal_substrips(shape):
            w = _psi_weight(shape, mu)
            sub = P(mu, n - 1)
            k = sum(shape) - sum(mu)
            for expo, poly in sub.items():
                e = expo + (k,)
                acc = out.setdefault(e, {})
                for a, ca in poly.items():
                    for b, cb in w.items():
                        acc[a + b] = acc.get(a + b, Fraction(0)) + ca * cb
        return {e: {a: c for a, c in poly.items() if c}
                for e, poly in out.items()}

    # keep one representative per monomial orbit (the polynomial is
    # symmetric, so the weakly decreasing arrangement carries the full
    # coefficient already)
    return {e: poly for e, poly in P(lam, nvars).items()
            if _is_partition_sorted(e) and any(c for c in poly.values())}


def _horizontal_substrips(shape):
    """All mu with shape/mu a horizontal strip (mu interleaves shape)."""
    bounds = []
    for i in range(len(shape)):
        hi = shape[i]
        lo = shape[i + 1] if i + 1 < len(shape) else 0
        bounds.append((lo, hi))
    for choice in cartesian(*[range(lo, hi + 1) for lo, hi in bounds]):
        mu = tuple(a for a in choice if a > 0)
        if all(mu[i] >= mu[i + 1] for i in range(len(mu) - 1)):
            yield mu


def _psi_weight(shape, mu):
    """psi_{shape/mu}(t) = prod over columns j with m_j(mu) = m_j(shape)+1
    of (1 - t^{m_j(mu)}), as {power: Fraction}."""
    ms, mm = mult_vector(shape), mult_vector(mu)
    poly = {0: Fraction(1)}
    for j, m in mm.items():
        if m == ms.get(j, 0) + 1:
            new = {}
            for a, c in poly.items():
                new[a] = new.get(a, Fraction(0)) + c
                new[a + m] = new.get(a + m, Fraction(0)) - c
            poly = {a: c for a, c in new.items() if c}
    return poly


def _schur_monomials(lam, nvars):
    """s_lam in the same exponent encoding, via SSYT with content bounds."""
    lam = tuple(lam)
    out = {}
    for weak in _weak_contents(sum(lam), nvars):
        cnt = kostka_number(lam, tuple(sorted((a for a in weak if a), reverse=True))) \
            if _is_partition_sorted(weak) else None
        if cnt:
            out[weak] = {0: Fraction(cnt)}
    return out


def _weak_contents(n, nvars):
    """Exponent tuples of length nvars summing to n, weakly decreasing
    (one representative per monomial orbit)."""
    def rec(rem, maxv, k):
        if k == 0:
            if rem == 0:
                yield ()
            return
        for v in range(min(rem, maxv), -1, -1):
            for rest in rec(rem - v, v, k - 1):
                yield (v,) + rest
    return rec(n, n, nvars)


def _is_partition_sorted(t):
    return all(t[i] >= t[i + 1] for i in range(len(t) - 1))


@lru_cache(maxsize=None)
def kostka_foulkes_via_transition(n):
    """The full Kostka-Foulkes matrix for partitions of n, computed by
    expanding Schur functions in the monomial-expanded Hall-Littlewood
    basis (unitriangular solve, no charge statistic involved).

    Returns {(lam, mu): {power: Fraction}} with the variable being t = nu.
    """
    parts = partitions(n)
    hl = {mu: _hl_P_monomials(mu, n) for mu in parts}
    out = {}
    for lam in parts:
        residual = {e: dict(poly) for e, poly in _schur_monomials(lam, n).items()}
        # subtract P_mu in reverse-lex order (refines dominance downward)
        for mu in parts:
            key = tuple(mu) + (0,) * (n - len(mu))
            poly = residual.get(key)
            if not poly or not any(poly.values()):
                coeff = {}
            else:
                coeff = dict(poly)
            if coeff:
                out[(lam, mu)] = coeff
                for e, ppoly in hl[mu].items():
                    acc = residual.setdefault(e, {})
                    for a, ca in coeff.items():
                        for b, cb in ppoly.items():
                            acc[a + b] = acc.get(a + b, Fraction(0)) - ca * cb
        for e, poly in residual.items():
            assert not any(poly.values()), \
                "Hall-Littlewood expansion of s_%s did not close" % (lam,)
    return out


# -- Hall-Littlewood P in power sums ---------------------------------------

@lru_cache(maxsize=None)
def kostka_matrix(n):
    """{(lam, mu): Coefficient} for partitions of n, charge statistic."""
    parts = partitions(n)
    out = {}
    for lam in parts:
        for mu in parts:
            k = kostka_foulkes(lam, mu)
            if k:
                out[(lam, mu)] = k
    return out


@lru_cache(maxsize=None)
def kostka_inverse(n):
    """Inverse of the Kostka-Foulkes matrix over Z[nu]; unitriangular in
    reverse-lex order so only back-substitution is needed."""
    parts = partitions(n)
    K = kostka_matrix(n)
    inv = {}
    for j, mu in enumerate(parts):
        col = {mu: Coefficient.rational(1)}
        # solve K * col = e_mu from the bottom of the column upward
        for i in range(j - 1, -1, -1):
            lam = parts[i]
            acc = Coefficient()
            for kap, c in col.items():
                k = K.get((lam, kap))
                if k:
                    acc = acc + k * c
            if acc:
                col[lam] = -acc
        for lam, c in col.items():
            if c:
                inv[(lam, mu)] = c
    return inv


@lru_cache(maxsize=None)
def hl_P_in_powersum(mu):
    """P_mu(nu) = sum_lam (K^{-1})_{mu,lam} s_lam expanded in power sums;
    returns {rho: Coefficient}."""
    mu = tuple(mu)
    n = sum(mu)
    inv = kostka_inverse(n)
    out = {}
    for lam in partitions(n):
        c = inv.get((mu, lam))
        if not c:
            continue
        for rho, q in schur_in_powersum(lam).items():
            cur = out.get(rho, Coefficient()) + c.scale(q)
            if cur:
                out[rho] = cur
            elif rho in out:
                del out[rho]
    return out
