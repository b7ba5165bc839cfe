"""Novikov-type coefficient rings with rational grading and q-filtration.

The ring attached to a finite set of positive rational weights is the group
algebra of the subgroup of QQ the weights generate. That subgroup is cyclic,
generated by a0 = gcd(weights), so the ring is the Laurent polynomial ring
k[q, q^{-1}] in the single generator q of grade a0. Exponents are stored as
plain integers n; q^n has grade n*a0 and filtration value n.

Being a Laurent ring over a field, the ring is Euclidean (after normalising
by the lowest power of q), which is what the Smith normal form code needs.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import field_from_description, fraction_gcd

INF = float("inf")


class NovikovElement:
    """Finite k-linear combination of integer powers of q."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = dict(terms)

    def __eq__(self, other):
        return isinstance(other, NovikovElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for n in sorted(self.terms):
            c = self.terms[n]
            if n == 0:
                bits.append(f"{c}")
            elif n == 1:
                bits.append(f"({c})q")
            else:
                bits.append(f"({c})q^{n}")
        return " + ".join(bits)

    def support(self):
        return sorted(self.terms)


class NovikovRing:
    def __init__(self, weights, base):
        weights = tuple(Fraction(w) for w in weights)
        if not weights or any(w <= 0 for w in weights):
            raise ValueError("weights must be positive rationals")
        self.weights = weights
        self.base = base
        self.a0 = fraction_gcd(weights)
        self.zero = NovikovElement({})
        self.one = NovikovElement({0: base.one})
        self.q = NovikovElement({1: base.one})

    # -- construction -----------------------------------------------------

    def monomial(self, n, coeff=None):
        c = self.base.one if coeff is None else self.base.coerce(coeff)
        if self.base.is_zero(c):
            return self.zero
        return NovikovElement({int(n): c})

    def from_terms(self, items):
        terms = {}
        for n, c in items:
            c = self.base.coerce(c)
            if not self.base.is_zero(c):
                terms[int(n)] = c
        return NovikovElement(terms)

    def coerce(self, x):
        if isinstance(x, NovikovElement):
            return x
        return self.monomial(0, self.base.coerce(x))

    # -- arithmetic --------------------------------------------------------

    def add(self, x, y):
        terms = dict(x.terms)
        for n, c in y.terms.items():
            s = self.base.add(terms.get(n, self.base.zero), c)
            if self.base.is_zero(s):
                terms.pop(n, None)
            else:
                terms[n] = s
        return NovikovElement(terms)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def neg(self, x):
        return NovikovElement({n: self.base.neg(c) for n, c in x.terms.items()})

    def mul(self, x, y):
        terms = {}
        for n1, c1 in x.terms.items():
            for n2, c2 in y.terms.items():
                n = n1 + n2
                s = self.base.add(
                    terms.get(n, self.base.zero), self.base.mul(c1, c2)
                )
                if self.base.is_zero(s):
                    terms.pop(n, None)
                else:
                    terms[n] = s
        return NovikovElement(terms)

    def scalar_mul(self, c, x):
        c = self.base.coerce(c)
        if self.base.is_zero(c):
            return self.zero
        return NovikovElement(
            {n: self.base.mul(c, cf) for n, cf in x.terms.items()}
        )

    def power(self, x, k):
        out = self.one
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def is_zero(self, x):
        return not x.terms

    def eq(self, x, y):
        return x.terms == y.terms

    def is_unit(self, x):
        return len(x.terms) == 1

    def inv(self, x):
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x!r} is not a unit")
        ((n, c),) = x.terms.items()
        return NovikovElement({-n: self.base.inv(c)})

    # -- grading / filtration ----------------------------------------------

    def grade_and_filtration(self, x):
        """(minimal grade, minimal q-exponent); (inf, inf) for zero."""
        if not x.terms:
            return (INF, INF)
        n = min(x.terms)
        return (n * self.a0, n)

    def filtration(self, x):
        if not x.terms:
            return INF
        return min(x.terms)

    def truncate(self, x, precision):
        """Drop every term of filtration >= precision."""
        return NovikovElement(
            {n: c for n, c in x.terms.items() if n < precision}
        )

    # -- Euclidean structure (for Smith normal form) -------------------------

    def euclidean_norm(self, x):
        """Width of the exponent support; 0 exactly for units."""
        if not x.terms:
            raise ZeroDivisionError("norm of 0")
        return max(x.terms) - min(x.terms)

    def divmod(self, a, b):
        """a = s*b + r with r = 0 or norm(r) < norm(b)."""
        if self.is_zero(b):
            raise ZeroDivisionError("division by 0")
        if self.is_zero(a):
            return self.zero, self.zero
        base = self.base
        alo, blo = min(a.terms), min(b.terms)
        # Shift both to honest polynomials with nonzero constant term, divide
        # by leading terms, shift back.
        adeg = max(a.terms) - alo
        bdeg = max(b.terms) - blo
        rem = {n - alo: c for n, c in a.terms.items()}
        quo = {}
        lead = b.terms[max(b.terms)]
        while rem:
            rdeg = max(rem)
            if rdeg < bdeg:
                break
            c = base.div(rem[rdeg], lead)
            quo[rdeg - bdeg] = c
            for n, bc in b.terms.items():
                k = (n - blo) + (rdeg - bdeg)
                s = base.sub(rem.get(k, base.zero), base.mul(c, bc))
                if base.is_zero(s):
                    rem.pop(k, None)
                else:
                    rem[k] = s
        s = NovikovElement({n + alo - blo: c for n, c in quo.items()})
        r = NovikovElement({n + alo: c for n, c in rem.items()})
        assert self.eq(a, self.add(self.mul(s, b), r))
        del adeg
        return s, r

    def normalize_unit(self, x):
        """(u, m) with x = u*m, u a unit and m monic with lowest power q^0."""
        if self.is_zero(x):
            return self.one, self.zero
        n = min(x.terms)
        lead = x.terms[max(x.terms)]
        u = NovikovElement({n: lead})
        m = self.mul(self.inv(u), x)
        return u, m

    # -- serialization -------------------------------------------------------

    def describe(self):
        return {
            "base": self.base.describe(),
            "weights": [str(w) for w in self.weights],
        }

    def element_to_json(self, x):
        return {"terms": {str(n): self.base.to_str(c) for n, c in sorted(x.terms.items())}}

    def element_from_json(self, d):
        return self.from_terms(
            (int(n), self.base.from_str(c)) for n, c in d["terms"].items()
        )

    def __repr__(self):
        return f"Novikov({self.base!r}; weights={[str(w) for w in self.weights]})"

    def __eq__(self, other):
        return (
            isinstance(other, NovikovRing)
            and other.base == self.base
            and other.weights == self.weights
        )

    def __hash__(self):
        return hash((self.base, self.weights))


def make_novikov_ring(weights, base):
    return NovikovRing(weights, base)


def ring_from_description(d):
    base = field_from_description(d["base"])
    return NovikovRing([Fraction(w) for w in d["weights"]], base)


def truncate_to_precision(ring, x, precision):
    """Truncation of a filtration-bounded-below series at the given precision.

    Accepts a NovikovElement or an iterable of (exponent, coefficient) pairs.
    Iterables must be supported on exponents bounded below; a term budget
    guards against malformed input with infinitely many terms below the cut.
    """
    if isinstance(x, NovikovElement):
        return ring.truncate(x, precision)
    budget = 10**6
    terms = []
    for n, c in x:
        if n < precision:
            terms.append((n, c))
            budget -= 1
            if budget < 0:
                raise ValueError(
                    "series has too many terms below the precision cut"
                )
    return ring.from_terms(terms)
