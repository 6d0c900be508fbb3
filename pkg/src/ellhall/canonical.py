"""Bar involution, canonical basis, and the Kostka-type tables.

The bar involution is the unique antilinear ring map fixing every
completed element 1_p; it is computed by triangular elimination against
{1_p} in the fixed path order.  The canonical basis element b_p is the
unique bar-invariant element whose beta-expansion has leading
coefficient 1 on beta_p and all other coefficients in the strictly
positive cone R^>; it is computed by the usual correction loop, fixing
the maximal unresolved stratum at each step via split_positive.

Tables collect the beta-expansions (TILDE flavor) or rho-expansions
(PLAIN flavor) of all b_p at a fixed weight and floor.
"""

from math import inf

from .coeff import Coefficient
from .paths import (enumerate_paths, sort_paths, path_order_key, slope,
                    _profile_cmp, sl2_apply, sl2_check, in_cone,
                    canonical_path, path_weight, OutOfCone)
from .algebra import (AlgebraElement, TTILDE, BETA, RHO, convert, mul,
                      one_path, beta_path, zero, floor_str, truncate,
                      UnstableWindow, SingularTransition)

TILDE = "tilde"
PLAIN = "plain"
FLAVOR_BASIS = {TILDE: BETA, PLAIN: RHO}


# -- bar involution ---------------------------------------------------------

def _one_basis_coordinates(e, work_floor=None):
    """Coordinates of e against {1_p : p above work_floor}, by
    elimination from the maximal path downward (each 1_p is
    unitriangular on t~_p in the fixed order)."""
    et = convert(e, TTILDE)
    if work_floor is None:
        work_floor = et.floor
    paths = enumerate_paths(et.weight, work_floor)
    d = dict(et.terms)
    coords = {}
    for p in paths:
        c = d.get(p)
        if not c:
            continue
        coords[p] = c
        for q, cq in one_path(p, work_floor, et.cfg).terms.items():
            cur = d.get(q, Coefficient()) - c * cq
            if cur:
                d[q] = cur
            elif q in d:
                del d[q]
    if d:
        raise SingularTransition(
            "element support escaped the enumerated paths: %r"
            % (sorted(d),))
    return coords


def _bar_at(e, work_floor):
    coords = _one_basis_coordinates(e, work_floor)
    acc = {}
    for p, c in coords.items():
        cb = c.bar()
        for q, cq in one_path(p, work_floor, e.cfg).terms.items():
            cur = acc.get(q)
            v = cb * cq
            cur = v if cur is None else cur + v
            if cur:
                acc[q] = cur
            elif q in acc:
                del acc[q]
    out = AlgebraElement(e.weight, work_floor, TTILDE, acc, e.cfg)
    return truncate(out, e.floor)


_BAR_MAX_DEEPEN = 12


def bar_element(e):
    """Antilinear involution fixing every completed element 1_p, exact
    on the element's window; returns an element in the same basis.

    The coordinates of an element against the 1-basis extend below any
    finite floor, and the windows of the below-floor 1_p are not zero
    (straightening climbs), so the elimination is run at a deepened
    working floor until the visible part of the image stops changing."""
    et = convert(e, TTILDE)
    if et.is_zero():
        return e
    prev = None
    for k in range(0, _BAR_MAX_DEEPEN + 1):
        cur = _bar_at(et, et.floor - k)
        if prev is not None and cur.terms == prev.terms:
            return convert(cur, e.basis)
        prev = cur
    raise UnstableWindow(
        "bar image window at floor %s still moving at depth %d"
        % (et.floor, _BAR_MAX_DEEPEN))


# -- canonical basis --------------------------------------------------------

def canonical_element(p, floor, cfg):
    """The unique bar-invariant element with beta-leading term beta_p and
    off-leading beta-coefficients in R^>, in the t~ basis."""
    p = canonical_path(p)
    if slope(p[0]) < floor:
        raise ValueError("path %r falls below floor %s" % (p, floor))
    key = (p, floor, cfg.content_hash)
    cached = _CANONICAL_CACHE.get(key)
    if cached is not None:
        return cached
    order = {q: i for i, q in enumerate(enumerate_paths(path_weight(p),
                                                        floor))}
    b = beta_path(p, floor, cfg)
    resolved = order[p]
    while True:
        d = convert(bar_element(b) - b, BETA)
        if d.is_zero():
            break
        q = min(d.terms, key=order.__getitem__)
        if order[q] <= resolved:
            raise SingularTransition(
                "correction at %r did not move down from %r" % (q, p))
        if _profile_cmp(q, p) != -1:
            raise SingularTransition(
                "correction path %r is not strictly below %r" % (q, p))
        resolved = order[q]
        x = d.terms[q].split_positive()
        b = b + beta_path(q, floor, cfg).scale(x)
    _CANONICAL_CACHE[key] = b
    return b


_CANONICAL_CACHE = {}


# -- tables -----------------------------------------------------------------

class KostkaTable:
    """Expansion coefficients of the canonical elements of one weight in
    the beta basis (TILDE flavor) or the rho basis (PLAIN flavor)."""

    def __init__(self, weight, floor, flavor, paths, entries, cfg):
        self.weight = tuple(weight)
        self.floor = floor
        self.flavor = flavor
        self.paths = tuple(paths)
        self.entries = entries          # {(p, q): Coefficient}
        self.cfg = cfg

    def entry(self, p, q):
        return self.entries.get((tuple(p), tuple(q)), Coefficient())

    def to_doc(self):
        return {"weight": list(self.weight),
                "floor": floor_str(self.floor),
                "flavor": self.flavor,
                "config": self.cfg.content_hash,
                "paths": [[list(x) for x in p] for p in self.paths],
                "entries": [[[[m, k, c.numerator, c.denominator]
                              for (m, k), c
                              in sorted(self.entry(p, q).nt_form().items())]
                             for q in self.paths]
                            for p in self.paths]}


def kostka_table(alpha, floor, flavor, cfg):
    if flavor not in FLAVOR_BASIS:
        raise ValueError("flavor must be %r or %r" % (TILDE, PLAIN))
    alpha = tuple(alpha)
    paths = enumerate_paths(alpha, floor)
    basis = FLAVOR_BASIS[flavor]
    entries = {}
    for p in paths:
        row = convert(canonical_element(p, floor, cfg), basis)
        for q, c in row.terms.items():
            entries[(p, q)] = c
    return KostkaTable(alpha, floor, flavor, paths, entries, cfg)


# -- SL(2,Z) invariance -----------------------------------------------------

def sl2_invariance_check(gamma, alpha, floor, cfg, flavor=PLAIN,
                         image_floor=None):
    """Compare table entries at weight alpha with the entries at the
    image weight for every pair of paths whose images stay in the cone
    and inside the image table; returns {(p, q): bool} plus the image
    weight and floor used."""
    sl2_check(gamma)
    a, b, c, d = gamma
    alpha = tuple(alpha)
    img_weight = (a * alpha[0] + b * alpha[1], c * alpha[0] + d * alpha[1])
    if not in_cone(img_weight):
        raise OutOfCone("image weight %r leaves the cone" % (img_weight,))
    table = kostka_table(alpha, floor, flavor, cfg)
    images = {}
    for p in table.paths:
        try:
            images[p] = sl2_apply(gamma, p)
        except OutOfCone:
            pass
    if image_floor is None:
        slopes = [slope(q[0]) for q in images.values()]
        finite = [s for s in slopes if s != inf]
        image_floor = min(finite) if finite else 0
    img_table = kostka_table(img_weight, image_floor, flavor, cfg)
    img_index = set(img_table.paths)
    report = {}
    for p in table.paths:
        for q in table.paths:
            gp, gq = images.get(p), images.get(q)
            if gp is None or gq is None:
                continue
            if gp not in img_index or gq not in img_index:
                continue
            report[(p, q)] = table.entry(p, q) == img_table.entry(gp, gq)
    return {"gamma": tuple(gamma), "weight": alpha, "floor": floor,
            "image_weight": img_weight, "image_floor": image_floor,
            "flavor": flavor, "pairs": report,
            "ok": all(report.values())}
