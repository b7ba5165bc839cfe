"""Sparse multivariate Laurent polynomials over an abstract field.

Terms map integer exponent vectors (tuples) to nonzero coefficients. Used
both for honest polynomials (non-negative exponents) and for Laurent rings
with inverted variables.
"""

from __future__ import annotations

from fractions import Fraction


class LaurentPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=()):
        self.nvars = nvars
        self.terms = dict(terms)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            mono = "*".join(
                f"z{i}^{k}" for i, k in enumerate(e) if k
            ) or "1"
            bits.append(f"({self.terms[e]})*{mono}")
        return " + ".join(bits)

    def is_zero(self):
        return not self.terms

    def min_exponents(self):
        """Componentwise minimum of the support (for clearing denominators)."""
        if not self.terms:
            return (0,) * self.nvars
        mins = [min(e[i] for e in self.terms) for i in range(self.nvars)]
        return tuple(mins)


class LaurentRing:
    def __init__(self, field, names):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.zero = LaurentPoly(self.nvars)
        self.one = LaurentPoly(
            self.nvars, {(0,) * self.nvars: field.one}
        )

    def variable(self, i, power=1):
        e = [0] * self.nvars
        e[i] = power
        return LaurentPoly(self.nvars, {tuple(e): self.field.one})

    def monomial(self, exps, coeff=None):
        c = self.field.one if coeff is None else self.field.coerce(coeff)
        if self.field.is_zero(c):
            return self.zero
        return LaurentPoly(self.nvars, {tuple(int(x) for x in exps): c})

    def from_terms(self, items):
        out = {}
        F = self.field
        if isinstance(items, dict):
            items = items.items()
        for exps, c in items:
            c = F.coerce(c)
            if F.is_zero(c):
                continue
            key = tuple(int(x) for x in exps)
            s = F.add(out.get(key, F.zero), c)
            if F.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
        return LaurentPoly(self.nvars, out)

    def add(self, a, b):
        F = self.field
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = F.add(out.get(e, F.zero), c)
            if F.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly(self.nvars, out)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        F = self.field
        return LaurentPoly(
            self.nvars, {e: F.neg(c) for e, c in a.terms.items()}
        )

    def mul(self, a, b):
        F = self.field
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = F.add(out.get(e, F.zero), F.mul(c1, c2))
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentPoly(self.nvars, out)

    def scalar_mul(self, c, a):
        F = self.field
        c = F.coerce(c)
        if F.is_zero(c):
            return self.zero
        return LaurentPoly(
            self.nvars, {e: F.mul(c, x) for e, x in a.terms.items()}
        )

    def power(self, a, k):
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def is_zero(self, a):
        return not a.terms

    def eq(self, a, b):
        return a.terms == b.terms

    def partial(self, a, i):
        """d/dz_i, Laurent-style (monomial rule with integer exponents)."""
        F = self.field
        out = {}
        for e, c in a.terms.items():
            k = e[i]
            if k == 0:
                continue
            ne = list(e)
            ne[i] = k - 1
            coef = F.mul(F.from_int(k), c)
            if F.is_zero(coef):
                continue
            key = tuple(ne)
            s = F.add(out.get(key, F.zero), coef)
            if F.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
        return LaurentPoly(self.nvars, out)

    def weighted_degrees(self, a, weights):
        """Set of total degrees of the terms of a, with the given variable
        weights (Fractions)."""
        return {
            sum(Fraction(w) * k for w, k in zip(weights, e))
            for e in a.terms
        }

    def shift(self, a, exps):
        """Multiply by the monomial z^exps."""
        return LaurentPoly(
            self.nvars,
            {
                tuple(x + s for x, s in zip(e, exps)): c
                for e, c in a.terms.items()
            },
        )
