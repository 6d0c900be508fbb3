"""Weight-graded truncated elements of the completed positive algebra.

An AlgebraElement is a finite linear combination of convex paths of a
fixed weight, truncated at a slope floor, expressed in one of four
bases: the PBW basis t~ (TTILDE), the semistable basis 1^ss (ONE_SS),
the Schur-block basis beta (BETA), or the Hall-Littlewood-block basis
rho (RHO).  Internally every computation normalizes to TTILDE, where
multiplication is straightening of concatenated words; the other three
bases are materialized views obtained from the per-ray dictionary

    t~_{l delta}  <->  p_l / l        1^ss_{l delta}  <->  h_l

under which a slope block with ray-multiple partition lam carries h_lam
(ONE_SS), s_lam (BETA), or the Hall-Littlewood P_lam (RHO).  Cross-block
factors concatenate in slope order, so all four bases are indexed by the
same convex paths and the transitions are block-diagonal across
slope-profile equivalence classes.
"""

from fractions import Fraction
from functools import lru_cache
from math import inf, prod

from .coeff import Coefficient, nu_pow
from .paths import (slope, in_cone, euler_form, canonical_path,
                    enumerate_paths, omega_index, hn_of_path, sort_paths,
                    path_weight, class_deg)
from .relations import straighten_raw
from .symfunc import (partitions, schur_in_powersum, h_in_powersum,
                      p_in_h, character, kostka_matrix, hl_P_in_powersum,
                      z_factor)

TTILDE = "ttilde"
ONE_SS = "oness"
BETA = "beta"
RHO = "rho"
BASES = (TTILDE, ONE_SS, BETA, RHO)


class SingularTransition(Exception):
    """A basis transition failed to invert; signals an internal bug."""


# -- elements ---------------------------------------------------------------

class AlgebraElement:
    """Immutable weight-graded element truncated at a slope floor.

    terms maps convex paths (in the basis named by `basis`) to nonzero
    Coefficients; every path has the element's weight and first-segment
    slope >= floor.
    """

    __slots__ = ("weight", "floor", "basis", "terms", "cfg")

    def __init__(self, weight, floor, basis, terms, cfg):
        if basis not in BASES:
            raise ValueError("unknown basis %r" % (basis,))
        clean = {}
        for p, c in terms.items():
            if not c:
                continue
            if path_weight(p) != tuple(weight):
                raise ValueError("path %r has weight %r, element has %r"
                                 % (p, path_weight(p), weight))
            if slope(p[0]) < floor:
                raise ValueError("path %r falls below floor %s" % (p, floor))
            clean[p] = c
        self.weight = tuple(weight)
        self.floor = floor
        self.basis = basis
        self.terms = clean
        self.cfg = cfg

    def is_zero(self):
        return not self.terms

    def coefficient(self, p):
        return self.terms.get(tuple(p), Coefficient())

    def _check_compatible(self, other):
        if self.weight != other.weight:
            raise ValueError("weights differ: %r vs %r"
                             % (self.weight, other.weight))
        if self.floor != other.floor:
            raise ValueError("floors differ: %s vs %s"
                             % (self.floor, other.floor))
        if self.basis != other.basis:
            raise ValueError("bases differ: %s vs %s"
                             % (self.basis, other.basis))
        if self.cfg.content_hash != other.cfg.content_hash:
            raise ValueError("elements built from different configs")

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self.terms)
        for p, c in other.terms.items():
            cur = terms.get(p, Coefficient()) + c
            if cur:
                terms[p] = cur
            elif p in terms:
                del terms[p]
        return AlgebraElement(self.weight, self.floor, self.basis, terms,
                              self.cfg)

    def __neg__(self):
        return self.scale(Coefficient.rational(-1))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = Coefficient.rational(c)
        return AlgebraElement(self.weight, self.floor, self.basis,
                              {p: v * c for p, v in self.terms.items()},
                              self.cfg)

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement)
                and self.weight == other.weight
                and self.floor == other.floor
                and self.basis == other.basis
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "<0 wt=%r floor=%s %s>" % (self.weight, self.floor,
                                              self.basis)
        bits = " + ".join("(%s)*%s" % (c.nt_str(), p)
                          for p, c in sorted(self.terms.items()))
        return "<%s wt=%r floor=%s %s>" % (self.basis, self.weight,
                                           self.floor, bits)

    def to_doc(self):
        paths = sort_paths(self.terms)
        return {"weight": list(self.weight),
                "floor": floor_str(self.floor),
                "basis": self.basis,
                "config": self.cfg.content_hash,
                "terms": [{"path": [list(x) for x in p],
                           "coeff": self.terms[p].to_doc()}
                          for p in paths]}


def floor_str(f):
    if f == inf:
        return "inf"
    if f == -inf:
        return "-inf"
    f = Fraction(f)
    if f.denominator == 1:
        return "%d" % f.numerator
    return "%d/%d" % (f.numerator, f.denominator)


def parse_floor(s):
    s = str(s).strip()
    if s in ("inf", "+inf"):
        return inf
    if s == "-inf":
        return -inf
    return Fraction(s)


def element_from_doc(doc, cfg):
    """Inverse of AlgebraElement.to_doc; the document's config hash must
    match the supplied config."""
    if doc.get("config") not in (None, cfg.content_hash):
        raise ValueError("element was built from config %s, not %s"
                         % (doc.get("config"), cfg.content_hash))
    terms = {}
    for rec in doc["terms"]:
        p = tuple(tuple(int(v) for v in x) for x in rec["path"])
        c = Coefficient.from_doc(rec["coeff"])
        if c:
            terms[p] = terms.get(p, Coefficient()) + c
    return AlgebraElement(tuple(doc["weight"]), parse_floor(doc["floor"]),
                          doc["basis"], terms, cfg)


def zero(weight, floor, cfg, basis=TTILDE):
    return AlgebraElement(weight, floor, basis, {}, cfg)


def basis_vector(p, floor, cfg, basis=TTILDE):
    p = canonical_path(p)
    return AlgebraElement(path_weight(p), floor, basis,
                          {p: Coefficient.rational(1)}, cfg)


def ttilde_path(p, floor, cfg):
    return basis_vector(p, floor, cfg, TTILDE)


# -- multiplication ---------------------------------------------------------

def mul(a, b):
    """Bilinear extension of straightening; result floor is the minimum
    of the factor floors."""
    if a.cfg.content_hash != b.cfg.content_hash:
        raise ValueError("factors built from different configs")
    at = convert(a, TTILDE)
    bt = convert(b, TTILDE)
    floor = min(a.floor, b.floor)
    weight = (a.weight[0] + b.weight[0], a.weight[1] + b.weight[1])
    # accumulate raw exponent dictionaries per output path and build one
    # Coefficient per path at the end; this loop dominates every table
    acc = {}
    for p, cp in at.terms.items():
        for q, cq in bt.terms.items():
            # every letter of p + q has slope >= floor, and the bracket
            # keeps derived letters inside the slope sector, so the
            # untruncated straightening never visits a word below the
            # floor and can be shared across floors
            c = cp * cq
            for o, co in straighten_raw(p + q, a.cfg).items():
                tgt = acc.get(o)
                if tgt is None:
                    tgt = acc[o] = {}
                for e, f in (c * co)._terms.items():
                    cur = tgt.get(e)
                    tgt[e] = f if cur is None else cur + f
    terms = {}
    for o, tgt in acc.items():
        cln = {e: f for e, f in tgt.items() if f}
        if cln:
            terms[o] = Coefficient._make(cln)
    return AlgebraElement(weight, floor, TTILDE, terms, a.cfg)


# -- the per-ray dictionary -------------------------------------------------
#
# A slope block of a path is a pair (delta, lam): primitive direction and
# the partition of ray-multiples.  The t~ monomial of the block is
# p_lam / prod(lam) under the dictionary, so expressing a block basis
# function f in power sums {rho: coeff} turns into t~ paths via the
# factor prod(rho).

def _powersum_to_block_paths(expansion, delta):
    """{rho: Fraction|Coefficient} in p_rho -> {block path: Coefficient}."""
    out = {}
    for rho, c in expansion.items():
        if isinstance(c, Fraction) or isinstance(c, int):
            c = Coefficient.rational(c)
        c = c.scale(Fraction(prod(rho)))
        path = tuple((a * delta[0], a * delta[1]) for a in rho)
        cur = out.get(path, Coefficient()) + c
        if cur:
            out[path] = cur
        elif path in out:
            del out[path]
    return out


def _block_to_powersum(lam, basis):
    """The block basis function of partition lam written in power sums,
    as {rho: Fraction|Coefficient}."""
    if basis == TTILDE:
        return {tuple(lam): Fraction(1, prod(lam))}
    if basis == BETA:
        return schur_in_powersum(tuple(lam))
    if basis == RHO:
        return hl_P_in_powersum(tuple(lam))
    if basis == ONE_SS:
        # product of complete homogeneous h_l over the parts
        acc = {(): Fraction(1)}
        for part in lam:
            nxt = {}
            for rho1, c1 in acc.items():
                for rho2, c2 in h_in_powersum(part).items():
                    rho = tuple(sorted(rho1 + rho2, reverse=True))
                    nxt[rho] = nxt.get(rho, Fraction(0)) + c1 * c2
            acc = {r: c for r, c in nxt.items() if c}
        return acc
    raise ValueError("unknown basis %r" % (basis,))


@lru_cache(maxsize=None)
def _powersum_in_block_basis(rho, basis):
    """p_rho written in the block basis, as {lam: Fraction|Coefficient}."""
    rho = tuple(rho)
    if basis == TTILDE:
        return {rho: Fraction(1)}
    if basis == BETA:
        # p_rho = sum_lam chi^lam(rho) s_lam
        n = sum(rho)
        out = {}
        for lam in partitions(n):
            chi = character(lam, rho)
            if chi:
                out[lam] = Fraction(chi)
        return out
    if basis == RHO:
        # through Schur, then s_lam = sum_mu K_{lam,mu} P_mu
        n = sum(rho)
        K = kostka_matrix(n)
        out = {}
        for lam in partitions(n):
            chi = character(lam, rho)
            if not chi:
                continue
            for mu in partitions(n):
                k = K.get((lam, mu))
                if not k:
                    continue
                cur = out.get(mu, Coefficient()) + k.scale(Fraction(chi))
                if cur:
                    out[mu] = cur
                elif mu in out:
                    del out[mu]
        return out
    if basis == ONE_SS:
        # multiply out Newton's identities part by part; keys become
        # h-multisets, i.e. partitions
        acc = {(): Fraction(1)}
        for part in rho:
            nxt = {}
            for m1, c1 in acc.items():
                for m2, c2 in p_in_h(part).items():
                    m = tuple(sorted(m1 + m2, reverse=True))
                    nxt[m] = nxt.get(m, Fraction(0)) + c1 * c2
            acc = {m: c for m, c in nxt.items() if c}
        return acc
    raise ValueError("unknown basis %r" % (basis,))


def _combine_blocks(block_expansions):
    """Distribute a list of {block path: Coefficient} into full paths."""
    acc = {(): Coefficient.rational(1)}
    for exp in block_expansions:
        nxt = {}
        for pre, c1 in acc.items():
            for blk, c2 in exp.items():
                path = pre + blk
                cur = nxt.get(path, Coefficient()) + c1 * c2
                if cur:
                    nxt[path] = cur
                elif path in nxt:
                    del nxt[path]
        acc = nxt
    return acc


def _view_path_to_ttilde(p, basis):
    """The basis element indexed by path p expanded in t~ paths."""
    blocks = []
    for delta, lam in omega_index(p):
        exp = _block_to_powersum(tuple(lam), basis)
        blocks.append(_powersum_to_block_paths(exp, delta))
    return _combine_blocks(blocks)


def _ttilde_path_to_view(p, basis):
    """The t~ monomial of path p expanded in the target view basis."""
    blocks = []
    for delta, lam in omega_index(p):
        lam = tuple(lam)
        scale = Fraction(1, prod(lam))
        exp = {}
        for mu, c in _powersum_in_block_basis(lam, basis).items():
            if isinstance(c, (Fraction, int)):
                c = Coefficient.rational(c)
            exp[tuple((a * delta[0], a * delta[1]) for a in mu)] = \
                c.scale(scale)
        blocks.append(exp)
    return _combine_blocks(blocks)


def convert(e, target):
    """Exact change of basis; roundtrips are the identity."""
    if target not in BASES:
        raise ValueError("unknown basis %r" % (target,))
    if e.basis == target:
        return e
    if e.basis != TTILDE:
        terms = {}
        for p, c in e.terms.items():
            for q, cq in _view_path_to_ttilde(p, e.basis).items():
                cur = terms.get(q, Coefficient()) + c * cq
                if cur:
                    terms[q] = cur
                elif q in terms:
                    del terms[q]
        e = AlgebraElement(e.weight, e.floor, TTILDE, terms, e.cfg)
        if target == TTILDE:
            return e
    terms = {}
    for p, c in e.terms.items():
        for q, cq in _ttilde_path_to_view(p, target).items():
            cur = terms.get(q, Coefficient()) + c * cq
            if cur:
                terms[q] = cur
            elif q in terms:
                del terms[q]
    return AlgebraElement(e.weight, e.floor, target, terms, e.cfg)


# -- distinguished elements -------------------------------------------------

def one_ss_path(p, floor, cfg):
    """Product over the segments of p of the semistable elements, in the
    t~ basis.  For a convex p no straightening is needed: each slope
    block expands inside its own ray and the blocks are already in slope
    order."""
    p = canonical_path(p)
    return AlgebraElement(path_weight(p), floor, TTILDE,
                          _view_path_to_ttilde(p, ONE_SS), cfg)


def beta_path(p, floor, cfg):
    """Per slope block, the Schur function of the block partition in the
    ray generators; blocks multiplied in slope order."""
    p = canonical_path(p)
    return AlgebraElement(path_weight(p), floor, TTILDE,
                          _view_path_to_ttilde(p, BETA), cfg)


def rho_path(p, floor, cfg):
    """Per slope block, the Hall-Littlewood polynomial P of the block
    partition in the ray generators."""
    p = canonical_path(p)
    return AlgebraElement(path_weight(p), floor, TTILDE,
                          _view_path_to_ttilde(p, RHO), cfg)


def one_alpha(alpha, floor, cfg):
    """The completed characteristic element of weight alpha, truncated:
    sum over decompositions of alpha into cone classes of strictly
    increasing slope (equivalently, HN types above the floor), each
    weighted by nu to the sum of pairwise pairings."""
    alpha = tuple(alpha)
    if not in_cone(alpha):
        raise ValueError("%r is not in the positive cone" % (alpha,))
    hn_types = sorted({hn_of_path(p) for p in enumerate_paths(alpha, floor)})
    terms = {}
    for blocks in hn_types:
        expo = sum(euler_form(blocks[i], blocks[j])
                   for i in range(len(blocks))
                   for j in range(i + 1, len(blocks)))
        c = nu_pow(expo)
        for q, cq in _view_path_to_ttilde(canonical_path(blocks),
                                          ONE_SS).items():
            cur = terms.get(q, Coefficient()) + cq * c
            if cur:
                terms[q] = cur
            elif q in terms:
                del terms[q]
    return AlgebraElement(alpha, floor, TTILDE, terms, cfg)


def _one_path_at(p, work_floor, cfg):
    acc = None
    for x in p:
        f = one_alpha(x, work_floor, cfg)
        acc = f if acc is None else mul(acc, f)
    return acc


def truncate(e, floor):
    """Drop the terms whose first segment falls below the (higher)
    floor."""
    if floor < e.floor:
        raise ValueError("cannot truncate %s below its floor %s"
                         % (floor, e.floor))
    return AlgebraElement(e.weight, floor, e.basis,
                          {p: c for p, c in e.terms.items()
                           if slope(p[0]) >= floor}, e.cfg)


class UnstableWindow(Exception):
    """A truncated product failed to stabilize under deepening."""


_ONE_PATH_MAX_DEEPEN = 14
# extra floor depth computed beyond the request; deeper windows cost
# sharply more, so by default nothing is precomputed and the deepest
# stabilized window is only reused for shallower requests by truncation
_ONE_PATH_LOOKAHEAD = 0


def one_path(p, floor, cfg):
    """Product of the completed elements over the segments of p, exact
    on the window above the floor.

    Unlike one_ss_path this genuinely multiplies, and the completed
    tails matter: terms of a factor below the floor can climb back above
    it when later letters absorb them during straightening.  The window
    is therefore computed at a deepened working floor, pushed down until
    the visible part stops changing.  The deepest stabilized window per
    path is kept and shallower requests are served by truncation."""
    p = canonical_path(p)
    vkey = (p, floor, cfg.content_hash)
    view = _ONE_PATH_VIEWS.get(vkey)
    if view is not None:
        return view
    key = (p, cfg.content_hash)
    cached = _ONE_PATH_CACHE.get(key)
    if cached is not None and cached.floor <= floor:
        view = truncate(cached, floor)
        _ONE_PATH_VIEWS[vkey] = view
        return view
    target = floor - _ONE_PATH_LOOKAHEAD
    if len(p) == 1:
        out = one_alpha(p[0], target, cfg)
    else:
        prev = None
        out = None
        for k in range(2, _ONE_PATH_MAX_DEEPEN + 1):
            cur = truncate(_one_path_at(p, target - k, cfg), target)
            if prev is not None and cur.terms == prev.terms:
                out = cur
                break
            prev = cur
        if out is None:
            raise UnstableWindow(
                "window of the product over %r at floor %s still moving "
                "at depth %d" % (p, target, _ONE_PATH_MAX_DEEPEN))
    _ONE_PATH_CACHE[key] = out
    view = truncate(out, floor)
    _ONE_PATH_VIEWS[vkey] = view
    return view


_ONE_PATH_CACHE = {}
_ONE_PATH_VIEWS = {}
