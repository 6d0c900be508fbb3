"""Exact arithmetic in the two-variable Laurent ring Q[s^{1/2}, sb^{1/2}].

A Coefficient is a finite sum of monomials c * s^(a2/2) * sb^(b2/2) with
rational c and integer half-exponent numerators a2, b2 of equal parity.
The parity constraint guarantees that the change of variables

    nu = -(s*sb)^(-1/2),   t = s^(1/2) * sb^(-1/2)

has integer exponents: s^a sb^b = (-1)^(a+b) nu^(-(a+b)) t^(a-b).

Coefficients are immutable and hashable; all operations return new values.
"""

from fractions import Fraction


class SplitObstruction(Exception):
    """Raised when the positive-cone splitting of a bar-antisymmetric
    element is requested for an input that is not bar-antisymmetric or
    has a nonzero degree-zero component."""


class NotDivisible(Exception):
    """Raised by exact_div when the quotient does not exist in the ring."""


class Coefficient:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        # terms: dict (a2, b2) -> Fraction, zeros pruned, parity checked
        clean = {}
        if terms:
            for (a2, b2), c in terms.items():
                if (a2 - b2) % 2 != 0:
                    raise ValueError("exponent parity mismatch: %r" % ((a2, b2),))
                c = Fraction(c)
                if c != 0:
                    clean[(a2, b2)] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def _make(terms):
        # internal fast path: terms must already be pruned of zeros, with
        # parity-consistent int keys and Fraction values
        c = object.__new__(Coefficient)
        object.__setattr__(c, "_terms", terms)
        object.__setattr__(c, "_hash", None)
        return c

    @staticmethod
    def monomial(a2, b2, c):
        """c * s^(a2/2) * sb^(b2/2); a2, b2 must have equal parity."""
        return Coefficient({(int(a2), int(b2)): Fraction(c)})

    @staticmethod
    def rational(c):
        return Coefficient({(0, 0): Fraction(c)})

    @staticmethod
    def from_nt(nt_terms):
        """Inverse of nt_form: {(m, k): c} meaning sum c nu^m t^k."""
        out = {}
        for (m, k), c in nt_terms.items():
            # nu^m t^k = (-1)^m s^((k-m)/2) sb^(-(m+k)/2)
            a2, b2 = k - m, -(m + k)
            c = Fraction(c) * (-1 if m % 2 else 1)
            if c:
                out[(a2, b2)] = out.get((a2, b2), Fraction(0)) + c
        return Coefficient({e: c for e, c in out.items() if c})

    # -- basic protocol ---------------------------------------------------

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Coefficient.rational(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = Coefficient.rational(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return Coefficient._make(out)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient._make({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Coefficient.rational(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coefficient.rational(other)
        # monomial factors cannot cancel anything: map straight through
        if len(self._terms) == 1:
            ((a1, b1), c1), = self._terms.items()
            return Coefficient._make({(a1 + a2, b1 + b2): c1 * c2
                                      for (a2, b2), c2
                                      in other._terms.items()})
        if len(other._terms) == 1:
            ((a2, b2), c2), = other._terms.items()
            return Coefficient._make({(a1 + a2, b1 + b2): c1 * c2
                                      for (a1, b1), c1
                                      in self._terms.items()})
        out = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                e = (a1 + a2, b1 + b2)
                s = out.get(e)
                v = c1 * c2
                s = v if s is None else s + v
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Coefficient._make(out)

    __rmul__ = __mul__

    def scale(self, q):
        q = Fraction(q)
        if not q:
            return Coefficient._make({})
        return Coefficient._make({e: c * q
                                  for e, c in self._terms.items()})

    # -- involutions and coordinates --------------------------------------

    def bar(self):
        """The ring involution s -> 1/s, sb -> 1/sb."""
        return Coefficient._make({(-a, -b): c
                                  for (a, b), c in self._terms.items()})

    def swap_sigma(self):
        """Swap the two variables s <-> sb."""
        return Coefficient._make({(b, a): c
                                  for (a, b), c in self._terms.items()})

    def is_sigma_symmetric(self):
        return self._terms == self.swap_sigma()._terms

    def nt_form(self):
        """Rewrite as {(m, k): c} with value sum c nu^m t^k (exact, bijective)."""
        out = {}
        for (a2, b2), c in self._terms.items():
            m = -(a2 + b2) // 2
            k = (a2 - b2) // 2
            out[(m, k)] = c * (-1 if m % 2 else 1)
        return out

    def is_positive_cone(self):
        """True iff every monomial s^a sb^b has a + b < 0 (the R^> cone)."""
        return all(a + b < 0 for a, b in self._terms)

    def positive_cone_part(self):
        return Coefficient._make({e: c for e, c in self._terms.items()
                                  if e[0] + e[1] < 0})

    def split_positive(self):
        """The unique r in R^> with r - bar(r) = self.

        Requires bar(self) = -self and no component on the line a + b = 0.
        """
        if any(a + b == 0 for a, b in self._terms):
            raise SplitObstruction("nonzero degree-zero component: %s" % (self,))
        if self.bar() != -self:
            raise SplitObstruction("input is not bar-antisymmetric: %s" % (self,))
        return self.positive_cone_part()

    # -- division ----------------------------------------------------------

    def exact_div(self, divisor):
        """Exact quotient self / divisor in the Laurent ring.

        Raises NotDivisible when no Laurent-polynomial quotient exists.
        """
        if not isinstance(divisor, Coefficient) or divisor.is_zero():
            raise ZeroDivisionError("division by zero coefficient")
        if self.is_zero():
            return Coefficient()
        if len(divisor._terms) == 1:
            ((da, db), dc), = divisor._terms.items()
            return Coefficient._make({(a - da, b - db): c / dc
                                      for (a, b), c in self._terms.items()})
        # Shift both to nonnegative exponents and run sparse exact division
        # in lex order (a well-order on N^2, so termination is guaranteed
        # once quotient exponents are constrained to stay nonnegative).
        smin = (min(a for a, _ in self._terms), min(b for _, b in self._terms))
        dmin = (min(a for a, _ in divisor._terms), min(b for _, b in divisor._terms))
        rem = {(a - smin[0], b - smin[1]): c for (a, b), c in self._terms.items()}
        div = {(a - dmin[0], b - dmin[1]): c for (a, b), c in divisor._terms.items()}
        dlead = max(div)
        dlc = div[dlead]
        quo = {}
        while rem:
            rlead = max(rem)
            qe = (rlead[0] - dlead[0], rlead[1] - dlead[1])
            if qe[0] < 0 or qe[1] < 0:
                raise NotDivisible("no exact quotient")
            qc = rem[rlead] / dlc
            quo[qe] = qc
            for de, dc in div.items():
                e = (qe[0] + de[0], qe[1] + de[1])
                s = rem.get(e, Fraction(0)) - qc * dc
                if s:
                    rem[e] = s
                elif e in rem:
                    del rem[e]
        shift = (smin[0] - dmin[0], smin[1] - dmin[1])
        return Coefficient({(a + shift[0], b + shift[1]): c for (a, b), c in quo.items()})

    # -- numeric spot checks (excluded from acceptance) --------------------

    def evaluate(self, s_half, sb_half):
        """Numeric specialization at given complex values of s^(1/2), sb^(1/2)."""
        total = 0j
        for (a2, b2), c in self._terms.items():
            total += complex(c) * s_half ** a2 * sb_half ** b2
        return total

    # -- serialization and display -----------------------------------------

    def to_doc(self):
        return [{"s_half": a, "sbar_half": b,
                 "num": c.numerator, "den": c.denominator}
                for (a, b), c in self.items()]

    @staticmethod
    def from_doc(doc):
        return Coefficient({(rec["s_half"], rec["sbar_half"]):
                            Fraction(rec["num"], rec["den"]) for rec in doc})

    def nt_str(self):
        """Human-readable string in the (nu, t) coordinates."""
        if self.is_zero():
            return "0"
        parts = []
        for (m, k) in sorted(self.nt_form(), key=lambda e: (e[0], e[1])):
            c = self.nt_form()[(m, k)]
            mono = []
            if m:
                mono.append("nu" if m == 1 else "nu^%d" % m)
            if k:
                mono.append("t" if k == 1 else "t^%d" % k)
            body = "*".join(mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append("%s*%s" % (c, body))
        out = parts[0]
        for p in parts[1:]:
            out += ("+" + p) if not p.startswith("-") else p
        return out

    def __repr__(self):
        return "Coefficient(%s)" % self.nt_str()


ZERO = Coefficient()
ONE = Coefficient.rational(1)
SIGMA = Coefficient.monomial(2, 0, 1)
SIGMA_BAR = Coefficient.monomial(0, 2, 1)
NU = Coefficient.monomial(-1, -1, -1)          # nu = -(s sb)^(-1/2)
T = Coefficient.monomial(1, -1, 1)             # t  = s^(1/2) sb^(-1/2)


def nu_pow(n):
    sign = -1 if n % 2 else 1
    return Coefficient.monomial(-n, -n, sign)
