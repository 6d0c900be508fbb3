"""The positive weight cone, slopes, convex lattice paths, and their orders.

A class is a pair (rank, degree) of integers.  The positive cone consists
of the classes with rank > 0, together with the torsion classes (0, d),
d > 0.  A convex path is a sequence of cone classes with weakly increasing
slopes; within a run of equal slope the ray-multiples weakly decrease.
Convex paths index the PBW basis of the algebra built on top of this
module.

Classes are plain tuples (r, d) and paths are tuples of classes, so that
everything is hashable and cheap to use as dictionary keys.
"""

from fractions import Fraction
from functools import cmp_to_key, lru_cache
from math import gcd, inf


class NotConvex(Exception):
    """Raised when a path cannot be put in canonical convex form."""


class OutOfCone(Exception):
    """Raised when a matrix action pushes a segment outside the cone."""


# -- classes and slopes ----------------------------------------------------

def in_cone(x):
    r, d = x
    return r > 0 or (r == 0 and d > 0)


def slope(x):
    """degree/rank as an exact Fraction; inf for torsion classes."""
    r, d = x
    if r == 0:
        if d == 0:
            raise ValueError("slope of (0,0) is undefined")
        return inf
    return Fraction(d, r)


def euler_form(x, y):
    """The antisymmetric pairing <(r1,d1),(r2,d2)> = r1 d2 - d1 r2."""
    return x[0] * y[1] - x[1] * y[0]


def ray_decompose(x):
    """Write x = l * delta with delta primitive; returns (l, delta)."""
    if not in_cone(x):
        raise ValueError("%r is not in the positive cone" % (x,))
    r, d = x
    l = gcd(abs(r), abs(d))
    return l, (r // l, d // l)


def class_deg(x):
    """The ray-multiple l in the factorization x = l * delta."""
    return ray_decompose(x)[0]


# -- convex paths ----------------------------------------------------------

def _segment_key(x):
    # canonical within-path order: slopes ascending, ray-multiples
    # descending within a slope
    return (slope(x), -class_deg(x))


def canonical_path(segments):
    """The canonical convex path on a multiset of cone classes."""
    segs = tuple(segments)
    if not segs:
        raise NotConvex("a convex path needs at least one segment")
    for x in segs:
        if not in_cone(x):
            raise NotConvex("%r is not in the positive cone" % (x,))
    return tuple(sorted(segs, key=_segment_key))


def is_canonical(segments):
    segs = tuple(segments)
    return bool(segs) and all(_segment_key(segs[i]) <= _segment_key(segs[i + 1])
                              for i in range(len(segs) - 1))


def path_weight(p):
    r = sum(x[0] for x in p)
    d = sum(x[1] for x in p)
    return (r, d)


def deg_at_slope(p, mu):
    """Sum of ray-multiples of the segments of p with slope exactly mu."""
    return sum(class_deg(x) for x in p if slope(x) == mu)


def deg_above(p, mu):
    return sum(class_deg(x) for x in p if slope(x) > mu)


def deg_at_or_above(p, mu):
    return sum(class_deg(x) for x in p if slope(x) >= mu)


def deg_profile(p):
    """Association slope -> total ray-multiple at that slope."""
    prof = {}
    for x in p:
        mu = slope(x)
        prof[mu] = prof.get(mu, 0) + class_deg(x)
    return prof


# -- the weak order --------------------------------------------------------

LESS = "LESS"
GREATER = "GREATER"
EQUIVALENT = "EQUIVALENT"
EQUAL = "EQUAL"
INCOMPARABLE = "INCOMPARABLE"


def _profile_cmp(p, q):
    """-1 if p strictly below q in the weak order, 0 if same profile, +1 if
    strictly above.  Scanned from the highest slope downward; at the first
    divergence the path with the larger degree there is the smaller one."""
    pp, pq = deg_profile(p), deg_profile(q)
    for mu in sorted(set(pp) | set(pq), reverse=True):
        dp, dq = pp.get(mu, 0), pq.get(mu, 0)
        if dp != dq:
            return -1 if dp > dq else 1
    return 0


def path_cmp(p, q):
    """Compare two equal-weight convex paths in the weak order."""
    if path_weight(p) != path_weight(q):
        raise ValueError("paths of unequal weight are not comparable")
    c = _profile_cmp(p, q)
    if c < 0:
        return LESS
    if c > 0:
        return GREATER
    return EQUAL if p == q else EQUIVALENT


# -- HN types --------------------------------------------------------------

def hn_of_path(p):
    """Merge consecutive equal-slope segments into strictly increasing
    slope blocks."""
    blocks = []
    for x in p:
        if blocks and slope(blocks[-1]) == slope(x):
            y = blocks[-1]
            blocks[-1] = (y[0] + x[0], y[1] + x[1])
        else:
            blocks.append(x)
    return tuple(blocks)


def hn_cmp(h1, h2):
    """Order on HN types of equal weight, by degree profiles from the top
    slope down (higher top-degree means smaller)."""
    return path_cmp(h1, h2)


# -- the omega indexing ----------------------------------------------------

def omega_index(p):
    """Per-slope blocks of p as pairs (primitive direction, partition)."""
    out = []
    for x in p:
        l, delta = ray_decompose(x)
        if out and out[-1][0] == delta:
            out[-1] = (delta, out[-1][1] + (l,))
        else:
            out.append((delta, (l,)))
    return [(delta, lam) for delta, lam in out]


def omega_inverse(blocks):
    segs = []
    for delta, lam in blocks:
        for l in lam:
            segs.append((l * delta[0], l * delta[1]))
    return canonical_path(segs)


# -- deterministic total order (linear extension of the weak order) --------

def _path_order_cmp(p, q):
    # larger paths first; ties inside an equivalence class broken by
    # lexicographically larger partitions, scanning slopes from the top
    c = _profile_cmp(p, q)
    if c:
        return -c
    bp = list(reversed(omega_index(p)))
    bq = list(reversed(omega_index(q)))
    for (_, lp), (_, lq) in zip(bp, bq):
        if lp != lq:
            return -1 if lp > lq else 1
    return 0


path_order_key = cmp_to_key(_path_order_cmp)


def sort_paths(paths):
    """Fixed linear extension of the weak order: maximal paths first,
    within an equivalence class lexicographically larger partitions first
    (so the one-row partition leads on a single ray)."""
    return sorted(paths, key=path_order_key)


def group_by_class(paths):
    """Partition a set of equal-weight paths into equivalence classes of
    the weak order, listed from the maximal class downward."""
    groups = {}
    for p in sort_paths(paths):
        key = tuple(sorted(deg_profile(p).items(), reverse=True))
        groups.setdefault(key, []).append(p)
    return sorted(groups.values(),
                  key=lambda g: path_order_key(g[0]))


# -- enumeration under a slope floor ---------------------------------------

def _ceil_frac(q):
    return -((-q.numerator) // q.denominator) if isinstance(q, Fraction) else q


@lru_cache(maxsize=None)
def enumerate_paths(alpha, floor):
    """All canonical convex paths of weight alpha whose first segment has
    slope >= floor, in the fixed linear-extension order."""
    if not in_cone(alpha):
        raise ValueError("%r is not in the positive cone" % (alpha,))
    out = []

    def rec(remaining, min_key, prefix):
        r_rem, d_rem = remaining
        if remaining == (0, 0):
            out.append(tuple(prefix))
            return
        # vertical candidates
        if r_rem >= 0 and d_rem > 0:
            lmax = d_rem
            if min_key is not None and min_key[0] == inf:
                lmax = min(lmax, -min_key[1])
            if r_rem == 0:
                for l in range(lmax, 0, -1):
                    x = (0, l)
                    prefix.append(x)
                    rec((0, d_rem - l), (inf, -l), prefix)
                    prefix.pop()
            elif lmax >= 1:
                # a vertical segment forces all later ones vertical, so it
                # can only close out the positive-rank part -- but verticals
                # sort last, so positive-rank segments must already be done
                pass
        # positive-rank candidates
        for rho in range(1, r_rem + 1):
            lo_slope = floor
            if min_key is not None and min_key[0] != inf:
                lo_slope = max(lo_slope, min_key[0])
            if lo_slope == inf:
                continue
            d_lo = _ceil_frac(Fraction(lo_slope) * rho) if lo_slope != -inf else None
            if d_lo is None:
                raise ValueError("cannot enumerate positive rank at floor -inf")
            # remaining positive-rank part needs slope >= d/rho, and any
            # leftover verticals only add degree, so d <= d_rem * rho / r_rem
            d_hi = (d_rem * rho) // r_rem if r_rem > rho else d_rem
            for d in range(d_lo, d_hi + 1):
                x = (rho, d)
                key = _segment_key(x)
                if min_key is not None and key < min_key:
                    continue
                rest = (r_rem - rho, d_rem - d)
                if rest != (0, 0) and not in_cone(rest):
                    continue
                prefix.append(x)
                rec(rest, key, prefix)
                prefix.pop()

    rec(alpha, None, [])
    return tuple(sort_paths(set(out)))


# -- SL(2,Z) action --------------------------------------------------------

def sl2_check(gamma):
    a, b, c, d = gamma
    if a * d - b * c != 1:
        raise ValueError("matrix %r does not have determinant 1" % (gamma,))


def sl2_apply(gamma, p):
    """Apply (a,b;c,d) to every segment (acting on column vectors
    (rank, degree)) and re-canonicalize."""
    sl2_check(gamma)
    a, b, c, d = gamma
    segs = []
    for r, deg in p:
        img = (a * r + b * deg, c * r + d * deg)
        if not in_cone(img):
            raise OutOfCone("image segment %r of %r leaves the cone"
                            % (img, (r, deg)))
        segs.append(img)
    return canonical_path(segs)
