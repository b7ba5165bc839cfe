"""Exact coefficient fields: rationals, prime fields, cyclotomic extensions.

Field elements are plain Python values (Fraction, int, tuple of Fractions);
all arithmetic goes through the field object so that generic code can be
written once over an abstract field.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce


class FieldError(ValueError):
    pass


class RationalField:
    """The field of rational numbers. Elements are Fraction instances."""

    kind = "rationals"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise FieldError(f"cannot coerce {x!r} into QQ")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def div(self, a, b):
        return a / self.coerce(b) if b != 0 else self.inv(b)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def from_int(self, n):
        return Fraction(n)

    def to_str(self, a):
        return str(a)

    def from_str(self, s):
        return Fraction(s)

    def random(self, rng, height=5):
        num = rng.randint(-height, height)
        den = rng.randint(1, height)
        return Fraction(num, den)

    def describe(self):
        return {"kind": "rationals"}

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


def _is_prime(p):
    if p < 2:
        return False
    for d in range(2, int(math.isqrt(p)) + 1):
        if p % d == 0:
            return False
    return True


class PrimeField:
    """F_p for a prime p. Elements are ints in [0, p)."""

    kind = "fp"

    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise FieldError(f"denominator of {x} vanishes mod {self.p}")
            return (x.numerator % self.p) * pow(den, -1, self.p) % self.p
        raise FieldError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def from_int(self, n):
        return n % self.p

    def to_str(self, a):
        return str(a % self.p)

    def from_str(self, s):
        return int(s) % self.p

    def random(self, rng, height=None):
        return rng.randrange(self.p)

    def describe(self):
        return {"kind": "fp", "p": self.p}

    def __repr__(self):
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a, b):
    """Division with remainder in QQ[x]; coefficient lists, low degree first."""
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b) and any(a):
        _poly_trim(a)
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        c = a[-1] * inv_lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a.pop()
    _poly_trim(a)
    return q, a


def cyclotomic_polynomial(m):
    """Coefficients of the m-th cyclotomic polynomial, low degree first."""
    # Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, computed recursively.
    if m == 1:
        return [Fraction(-1), Fraction(1)]
    num = [Fraction(0)] * (m + 1)
    num[0], num[m] = Fraction(-1), Fraction(1)
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return num


class CyclotomicField:
    """QQ(zeta_m), presented as QQ[x] modulo the m-th cyclotomic polynomial.

    Elements are tuples of Fractions of length deg(Phi_m), coefficients of
    powers of zeta_m.
    """

    kind = "cyclotomic"
    characteristic = 0

    def __init__(self, m):
        if not (1 <= m <= 30):
            raise FieldError("cyclotomic order must lie in [1, 30]")
        self.m = m
        self.modulus = cyclotomic_polynomial(m)
        self.degree = len(self.modulus) - 1
        self.zero = tuple([Fraction(0)] * self.degree)
        one = [Fraction(0)] * self.degree
        one[0] = Fraction(1)
        self.one = tuple(one)

    def zeta(self, power=1):
        """zeta_m^power as a field element."""
        coeffs = [Fraction(0)] * (power % self.m + 1)
        coeffs[power % self.m] = Fraction(1)
        return self._reduce(coeffs)

    def _reduce(self, coeffs):
        _, rem = _poly_divmod([Fraction(c) for c in coeffs], self.modulus)
        rem = rem + [Fraction(0)] * (self.degree - len(rem))
        return tuple(rem)

    def coerce(self, x):
        if isinstance(x, tuple) and len(x) == self.degree:
            return tuple(Fraction(c) for c in x)
        if isinstance(x, (int, Fraction)):
            out = [Fraction(0)] * self.degree
            out[0] = Fraction(x)
            return tuple(out)
        raise FieldError(f"cannot coerce {x!r} into QQ(zeta_{self.m})")

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        prod = [Fraction(0)] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y != 0:
                    prod[i + j] += x * y
        return self._reduce(prod)

    def inv(self, a):
        # Extended Euclid in QQ[x] against the minimal polynomial.
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        r0, r1 = list(self.modulus), _poly_trim(list(a))
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = _poly_divmod(r0, r1)
            if not r:
                break
            s = list(s0)
            s += [Fraction(0)] * (len(q) + len(s1) - 1 - len(s))
            for i, qc in enumerate(q):
                for j, sc in enumerate(s1):
                    s[i + j] -= qc * sc
            r0, r1, s0, s1 = r1, r, s1, _poly_trim(s)
        lead = r1[-1] if len(r1) > 1 else r1[0]
        if len(r1) > 1:
            raise FieldError("modulus not irreducible over the inputs")
        inv = [c / lead for c in s1]
        return self._reduce(inv)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return all(c == 0 for c in a)

    def eq(self, a, b):
        return a == b

    def from_int(self, n):
        return self.coerce(n)

    def to_str(self, a):
        return ";".join(str(c) for c in a)

    def from_str(self, s):
        parts = s.split(";")
        if len(parts) != self.degree:
            raise FieldError(f"expected {self.degree} coefficients")
        return tuple(Fraction(p) for p in parts)

    def random(self, rng, height=3):
        return tuple(
            Fraction(rng.randint(-height, height)) for _ in range(self.degree)
        )

    def describe(self):
        return {"kind": "cyclotomic", "m": self.m}

    def __repr__(self):
        return f"QQ(zeta_{self.m})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.m == self.m

    def __hash__(self):
        return hash(("cyclotomic", self.m))


QQ = RationalField()


def field_from_spec(spec):
    """Parse a field description: 'q', 'fp:P', or 'cyclotomic:M'."""
    if spec == "q":
        return QQ
    if spec.startswith("fp:"):
        return PrimeField(int(spec.split(":", 1)[1]))
    if spec.startswith("cyclotomic:"):
        return CyclotomicField(int(spec.split(":", 1)[1]))
    raise FieldError(f"unknown field spec {spec!r}")


def field_from_description(d):
    kind = d.get("kind")
    if kind == "rationals":
        return QQ
    if kind == "fp":
        return PrimeField(d["p"])
    if kind == "cyclotomic":
        return CyclotomicField(d["m"])
    raise FieldError(f"unknown field description {d!r}")


def fraction_gcd(values):
    """Positive generator of the subgroup of QQ generated by the values."""
    vals = [Fraction(v) for v in values if v != 0]
    if not vals:
        raise FieldError("need at least one nonzero value")

    def gcd2(a, b):
        return Fraction(
            math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
            a.denominator * b.denominator,
        )

    return reduce(gcd2, (abs(v) for v in vals))
