"""Groebner bases for polynomial ideals over an exact field, with the
Laurent case handled by saturation at the invertible variables.

Polynomials reuse LaurentPoly with non-negative exponents. The default
monomial order is graded reverse lexicographic; elimination of a block of
leading auxiliary variables uses a block order (auxiliary exponents
compared first, grevlex within each block).
"""

from __future__ import annotations

from itertools import combinations

from .laurent import LaurentPoly, LaurentRing


class GroebnerError(Exception):
    pass


# -- monomial orders -------------------------------------------------------


def grevlex_key(exps):
    """Sort key: larger key = larger monomial."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def block_key(n_aux):
    """Block order eliminating the first n_aux variables: compare the
    auxiliary block by grevlex first, then the rest by grevlex."""

    def key(exps):
        return (grevlex_key(exps[:n_aux]), grevlex_key(exps[n_aux:]))

    return key


def leading(f, key):
    if f.is_zero():
        raise GroebnerError("zero polynomial has no leading term")
    e = max(f.terms, key=key)
    return e, f.terms[e]


def monomial_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


# -- division and Buchberger ------------------------------------------------


def normal_form(ring, f, basis, key):
    """Remainder of f on division by basis (each nonzero)."""
    F = ring.field
    leads = [leading(g, key) for g in basis]
    rem = ring.zero
    work = f
    while not work.is_zero():
        e, c = leading(work, key)
        hit = None
        for idx, (le, lc) in enumerate(leads):
            if monomial_divides(le, e):
                hit = idx
                break
        if hit is None:
            rem = ring.add(rem, ring.monomial(e, c))
            work = ring.sub(work, ring.monomial(e, c))
        else:
            le, lc = leads[hit]
            factor = ring.monomial(monomial_div(e, le), F.div(c, lc))
            work = ring.sub(work, ring.mul(factor, basis[hit]))
    return rem


def s_polynomial(ring, f, g, key):
    F = ring.field
    ef, cf = leading(f, key)
    eg, cg = leading(g, key)
    l = monomial_lcm(ef, eg)
    a = ring.monomial(monomial_div(l, ef), F.inv(cf))
    b = ring.monomial(monomial_div(l, eg), F.inv(cg))
    return ring.sub(ring.mul(a, f), ring.mul(b, g))


def buchberger(ring, gens, key=grevlex_key, max_steps=200000):
    """A Groebner basis of the ideal generated by gens, reduced at the end.

    Uses the coprime-leading-monomial criterion; raises GroebnerError if
    the pair queue is not exhausted within max_steps reductions.
    """
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return []
    pairs = list(combinations(range(len(basis)), 2))
    steps = 0
    while pairs:
        i, j = pairs.pop()
        ei, _ = leading(basis[i], key)
        ej, _ = leading(basis[j], key)
        if monomial_lcm(ei, ej) == tuple(a + b for a, b in zip(ei, ej)):
            continue  # coprime leading monomials
        steps += 1
        if steps > max_steps:
            raise GroebnerError("Buchberger step budget exceeded")
        s = s_polynomial(ring, basis[i], basis[j], key)
        r = normal_form(ring, s, basis, key)
        if not r.is_zero():
            basis.append(r)
            k = len(basis) - 1
            pairs.extend((i2, k) for i2 in range(k))
    return reduce_basis(ring, basis, key)


def reduce_basis(ring, basis, key):
    """Minimal, monic, fully auto-reduced Groebner basis."""
    F = ring.field
    # minimal: drop elements whose lead is divisible by another lead
    keep = []
    leads = [leading(g, key)[0] for g in basis]
    for i, g in enumerate(basis):
        li = leads[i]
        if any(
            j != i
            and monomial_divides(leads[j], li)
            and (leads[j] != li or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form(ring, g, others, key) if others else g
        if r.is_zero():
            continue
        _, c = leading(r, key)
        out.append(ring.scalar_mul(F.inv(c), r))
    return sorted(out, key=lambda g: key(leading(g, key)[0]))


def in_ideal(ring, f, gb, key=grevlex_key):
    if f.is_zero():
        return True
    if not gb:
        return False
    return normal_form(ring, f, gb, key).is_zero()


def ideals_equal(ring, gb1, gb2, key=grevlex_key):
    return all(in_ideal(ring, g, gb2, key) for g in gb1) and all(
        in_ideal(ring, g, gb1, key) for g in gb2
    )


# -- Laurent ideals via saturation ------------------------------------------


def laurent_to_polynomial(ring, f):
    """Multiply f by the smallest monomial clearing negative exponents."""
    if f.is_zero():
        return f
    shift = [0] * ring.nvars
    for e in f.terms:
        for j in range(ring.nvars):
            shift[j] = max(shift[j], -e[j])
    return ring.shift(f, shift)


def saturate(ring, gens, sat_vars, key=grevlex_key, max_steps=200000):
    """Groebner basis of (gens) : (prod of sat_vars)^infinity in the
    polynomial ring, computed by eliminating an auxiliary variable t from
    gens + (1 - t * prod sat_vars)."""
    if not sat_vars:
        return buchberger(ring, gens, key, max_steps)
    n = ring.nvars
    ext = LaurentRing(ring.field, ("t_sat",) + ring.names)
    lifted = [
        LaurentPoly(n + 1, {(0,) + e: c for e, c in f.terms.items()})
        for f in gens
        if not f.is_zero()
    ]
    prod_exp = [0] * n
    for i in sat_vars:
        prod_exp[i] += 1
    reler = ext.sub(
        ext.one, ext.monomial(tuple([1] + prod_exp))
    )
    gb = buchberger(ext, lifted + [reler], block_key(1), max_steps)
    out = []
    for g in gb:
        if all(e[0] == 0 for e in g.terms):
            out.append(LaurentPoly(n, {e[1:]: c for e, c in g.terms.items()}))
    return reduce_basis(ring, out, key)


def laurent_ideal_groebner(ring, gens, invertible, key=grevlex_key,
                           max_steps=200000):
    """Groebner basis (in the polynomial ring) describing the ideal that
    the Laurent polynomials gens generate once the listed variables are
    inverted: clear denominators, then saturate at those variables."""
    cleared = [laurent_to_polynomial(ring, f) for f in gens]
    return saturate(ring, cleared, list(invertible), key, max_steps)


def laurent_ideals_equal(ring, gens1, gens2, invertible, key=grevlex_key):
    gb1 = laurent_ideal_groebner(ring, gens1, invertible, key)
    gb2 = laurent_ideal_groebner(ring, gens2, invertible, key)
    return ideals_equal(ring, gb1, gb2, key)


# -- quotient rings ----------------------------------------------------------


def standard_monomials(ring, gb, key=grevlex_key, free_vars=(), bound=10000):
    """Monomials outside the leading-term ideal, or None if there are
    infinitely many.

    With free_vars the quotient is treated as a module over the polynomial
    subring in those variables: the returned monomials involve only the
    remaining variables and form a module basis when no leading monomial
    touches a free variable (otherwise None, since freeness is not
    established by the leading-term data alone)."""
    if not gb:
        return None
    free = set(free_vars)
    leads = [leading(g, key)[0] for g in gb]
    n = ring.nvars
    if any(le[j] > 0 for le in leads for j in free):
        return None
    # the quotient is finitely generated over the free variables iff every
    # other variable has a pure power among the leading monomials
    caps = [None] * n
    for le in leads:
        nz = [j for j in range(n) if le[j] > 0]
        if len(nz) == 1:
            j = nz[0]
            if caps[j] is None or le[j] < caps[j]:
                caps[j] = le[j]
        elif len(nz) == 0:
            return []  # 1 is in the ideal
    if any(caps[j] is None for j in range(n) if j not in free):
        return None
    out = []

    def rec(j, prefix):
        if len(out) > bound:
            raise GroebnerError("standard monomial bound exceeded")
        if j == n:
            e = tuple(prefix)
            if not any(monomial_divides(le, e) for le in leads):
                out.append(e)
            return
        top = 1 if j in free else caps[j]
        for v in range(top):
            rec(j + 1, prefix + [v])

    rec(0, [])
    return sorted(out, key=key)


def quotient_dimension(ring, gb, key=grevlex_key):
    sm = standard_monomials(ring, gb, key)
    return None if sm is None else len(sm)


def multiplication_table(ring, gb, smons, key=grevlex_key, free_vars=()):
    """Products of standard monomials written in the standard-monomial
    basis: table[(i, j)] = {k: coefficient}, where each coefficient is a
    polynomial in the free variables (a LaurentPoly supported only on
    them; a plain field scalar when free_vars is empty)."""
    free = set(free_vars)
    idx = {e: i for i, e in enumerate(smons)}
    table = {}
    for i, a in enumerate(smons):
        for j, b in enumerate(smons):
            prod = ring.monomial(tuple(x + y for x, y in zip(a, b)))
            r = normal_form(ring, prod, gb, key)
            row = {}
            for e, c in r.terms.items():
                es = tuple(
                    0 if k in free else v for k, v in enumerate(e)
                )
                ef = tuple(
                    v if k in free else 0 for k, v in enumerate(e)
                )
                if es not in idx:
                    raise GroebnerError(
                        "normal form escaped the standard basis"
                    )
                if free:
                    row[idx[es]] = ring.add(
                        row.get(idx[es], ring.zero), ring.monomial(ef, c)
                    )
                else:
                    row[idx[es]] = ring.field.add(
                        row.get(idx[es], ring.field.zero), c
                    )
            table[(i, j)] = row
    return table


def dimension_over_coefficient_variable(smons, var_index):
    """Number of distinct standard monomials once the given variable is
    stripped: the rank of the quotient as a free module over the
    polynomial subring in that variable, when the quotient is free."""
    stripped = {
        tuple(v for j, v in enumerate(e) if j != var_index) for e in smons
    }
    return len(stripped)
