"""Seeded random constructions for cross-validation suites: filtered
complexes with verified d^2 = 0, chain self-maps, rays, inverse systems,
Laurent matrices, and polyvector fields.

Complexes come from a split model (two-term pairs plus singleton classes)
conjugated by a random filtration-respecting unipotent change of basis, so
d^2 = 0 and the filtration axiom hold by construction while the matrices
look generic. Chain maps are combinations a*id + d h + h d, which commute
with the differential for any degree-(-1) map h.
"""

from __future__ import annotations

from fractions import Fraction

from .complexes import ChainMap, FilteredComplex, Generator
from .laurent import LaurentRing
from .polyvec import PolyVector, _subsets
from .telescope import InverseSystem, OneRay


def random_scalar(rng, F, lo=-3, hi=3):
    return F.from_int(rng.randint(lo, hi))


def random_nonzero_scalar(rng, F, lo=-3, hi=3):
    while True:
        c = random_scalar(rng, F, lo, hi)
        if not F.is_zero(c):
            return c


def random_filtered_complex(rng, F, pairs=2, singles=2, degree_span=4,
                            filt_span=3, prefix="g"):
    """Filtered complex over a field with exact d^2 = 0: `pairs` two-term
    acyclic pieces and `singles` singleton generators, mixed by a random
    unipotent filtration-nondecreasing change of basis."""
    gens = []
    diff_pairs = []
    idx = 0

    def add_gen(degree, filtration):
        nonlocal idx
        g = Generator(f"{prefix}{idx}", degree, Fraction(filtration))
        idx += 1
        gens.append(g)
        return g

    for _ in range(pairs):
        d = rng.randint(-degree_span // 2, degree_span // 2)
        f = rng.randint(0, filt_span)
        src = add_gen(d, f)
        dst = add_gen(d + 1, f + rng.randint(0, 1))
        diff_pairs.append((src.label, dst.label))
    for _ in range(singles):
        add_gen(
            rng.randint(-degree_span // 2, degree_span // 2),
            rng.randint(0, filt_span),
        )
    D = {
        (s, t): random_nonzero_scalar(rng, F) for s, t in diff_pairs
    }
    cx0 = FilteredComplex(F, gens, D)
    return conjugate_by_random_basis(rng, cx0)


def conjugate_by_random_basis(rng, cx):
    """Replace d by P d P^{-1} for a random unipotent P whose off-diagonal
    entries only connect generators of equal degree with non-decreasing
    filtration, so the result is again a valid filtered complex."""
    F = cx.ring
    gens = cx.generators
    n = len(gens)
    pos = {g.label: i for i, g in enumerate(gens)}
    P = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    Pinv = [row[:] for row in P]
    # random unipotent: elementary moves P e_j = e_j + c e_i need
    # deg_i == deg_j and filt_i >= filt_j so P, P^{-1} respect filtration
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        gi, gj = gens[i], gens[j]
        if gi.degree != gj.degree or gi.filtration < gj.filtration:
            continue
        c = random_scalar(rng, F)
        for r in range(n):
            P[r][j] = F.add(P[r][j], F.mul(c, P[r][i]))
        nc = F.neg(c)
        for col in range(n):
            Pinv[i][col] = F.add(Pinv[i][col], F.mul(nc, Pinv[j][col]))
    D = [[F.zero] * n for _ in range(n)]
    for (s, t), c in cx.diff.items():
        D[pos[t]][pos[s]] = c
    # new matrix Pinv? conjugation: d' = P^{-1} d P  (basis change)
    tmp = [
        [
            _dot(F, Pinv[r], [D[k][c] for k in range(n)])
            for c in range(n)
        ]
        for r in range(n)
    ]
    nd = [
        [_dot(F, tmp[r], [P[k][c] for k in range(n)]) for c in range(n)]
        for r in range(n)
    ]
    diff = {}
    for r in range(n):
        for c in range(n):
            if not F.is_zero(nd[r][c]):
                diff[(gens[c].label, gens[r].label)] = nd[r][c]
    return FilteredComplex(F, gens, diff)


def _dot(F, row, col):
    s = F.zero
    for a, b in zip(row, col):
        s = F.add(s, F.mul(a, b))
    return s


def random_chain_self_map(rng, cx, allow_identity=True, min_gain=0):
    """Chain map cx -> cx of the form a*id + d h + h d for a random
    degree-(-1) h that raises the filtration by at least min_gain; with
    min_gain > 0 the identity part is dropped so the whole map gains."""
    F = cx.ring
    gens = cx.generators
    if min_gain > 0:
        allow_identity = False
    a = random_scalar(rng, F) if allow_identity else F.zero
    h = {}
    for s in gens:
        for t in gens:
            if (t.degree == s.degree - 1
                    and t.filtration >= s.filtration + min_gain):
                if rng.random() < 0.5:
                    h[(s.label, t.label)] = random_scalar(rng, F)
    entries = {}

    def add_entry(s, t, c):
        if F.is_zero(c):
            return
        key = (s, t)
        entries[key] = F.add(entries.get(key, F.zero), c)

    for g in gens:
        if not F.is_zero(a):
            add_entry(g.label, g.label, a)
    # d h: h then d
    for (s, t), c in h.items():
        for (u, v), cd in cx.diff.items():
            if u == t:
                add_entry(s, v, F.mul(c, cd))
    # h d: d then h
    for (s, t), cd in cx.diff.items():
        for (u, v), c in h.items():
            if u == t:
                add_entry(s, v, F.mul(cd, c))
    entries = {k: v for k, v in entries.items() if not F.is_zero(v)}
    return ChainMap(cx, cx, entries)


def random_ray(rng, F, length=3, **kw):
    """Ray C -> C -> ... on one random complex with random self maps."""
    cx = random_filtered_complex(rng, F, **kw)
    maps = [random_chain_self_map(rng, cx) for _ in range(length - 1)]
    return OneRay([cx] * length, maps)


def random_gain_ray(rng, F, length=3, gain=1, **kw):
    """Repeating ray whose maps all raise the filtration by at least
    `gain`, certifying acyclicity of the completed telescope."""
    kw.setdefault("filt_span", 4)
    cx = random_filtered_complex(rng, F, **kw)
    maps = [
        random_chain_self_map(rng, cx, min_gain=gain)
        for _ in range(length - 1)
    ]
    return OneRay([cx] * length, maps, policy="repeat")


def random_inverse_system(rng, F, length=4, **kw):
    """Inverse system C <- C <- ... with random self maps (scalar part may
    vanish, giving non-Mittag-Leffler-style truncations)."""
    cx = random_filtered_complex(rng, F, **kw)
    maps = [
        random_chain_self_map(rng, cx, allow_identity=rng.random() < 0.7)
        for _ in range(length - 1)
    ]
    return InverseSystem([cx] * length, maps)


def random_laurent_element(rng, ring, max_terms=3, exp_span=3):
    out = ring.zero
    for _ in range(rng.randint(0, max_terms)):
        out = ring.add(
            out,
            ring.monomial(
                rng.randint(-exp_span, exp_span),
                random_scalar(rng, ring.base),
            ),
        )
    return out


def random_laurent_matrix(rng, ring, rows, cols, max_terms=2, exp_span=2):
    return [
        [
            random_laurent_element(rng, ring, max_terms, exp_span)
            for _ in range(cols)
        ]
        for _ in range(rows)
    ]


def random_polyvector(rng, R, max_xi=None, max_terms=2, exp_span=2):
    """Random polyvector field on the Laurent ring R."""
    n = R.nvars
    parts = {}
    for S in _subsets(n):
        if max_xi is not None and len(S) > max_xi:
            continue
        if rng.random() < 0.5:
            continue
        f = R.zero
        for _ in range(rng.randint(1, max_terms)):
            e = tuple(rng.randint(-exp_span, exp_span) for _ in range(n))
            f = R.add(f, R.monomial(e, random_scalar(rng, R.field)))
        if not R.is_zero(f):
            parts[S] = f
    return PolyVector(R, parts)


def random_interior_point(rng, poly, denominator=7):
    """Random rational point strictly inside the polytope (rejection
    sampling on a denominator-`denominator` grid near the origin)."""
    for _ in range(10000):
        p = [
            Fraction(rng.randint(-2 * denominator, 2 * denominator),
                     denominator)
            for _ in range(poly.n)
        ]
        if poly.contains(p, strict=True):
            return tuple(p)
    raise ValueError("could not sample an interior point")


def random_second_filtration(rng, cx, p, bump=3):
    """Second-filtration values >= p on degrees < p (the hypothesis under
    which the truncated subquotient computes low-degree cohomology),
    non-decreasing along the differential by construction."""
    fvals = {}
    for g in cx.generators:
        base = p if g.degree < p else -bump
        fvals[g.label] = Fraction(base + rng.randint(0, bump))
    # enforce monotonicity along edges exactly: raise targets as needed
    changed = True
    while changed:
        changed = False
        for (s, t), _ in cx.diff.items():
            if fvals[t] < fvals[s]:
                fvals[t] = fvals[s]
                changed = True
    return fvals
