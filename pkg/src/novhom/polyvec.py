"""Polyvector fields on a Laurent torus: exterior algebra on the coordinate
derivations, the Schouten bracket, and windowed Koszul complexes.

A polyvector field is a sum of terms f * xi_S where f is a Laurent
polynomial and xi_S = xi_{s_1} ^ ... ^ xi_{s_k} (s_1 < ... < s_k) is a
wedge of the odd generators xi_i = d/dz_i. Internally: {S: LaurentPoly}.

Bracket convention (odd coordinates, left derivatives):

    [A, B] = sum_i (-1)^{|A|+1} dA/dxi_i * dB/dz_i - dA/dz_i * dB/dxi_i,

which satisfies [W, v] = -contraction(dW)(v) for a function W, [v, f] =
v(f) for a vector field, graded antisymmetry and Jacobi with respect to
the shifted degree |.| - 1, and the graded Leibniz rule
[A, B ^ C] = [A, B] ^ C + (-1)^{(|A|-1)|B|} B ^ [A, C].
"""

from __future__ import annotations

from fractions import Fraction

from .complexes import FilteredComplex, Generator
from .novikov import NovikovRing


class PolyVector:
    __slots__ = ("ring", "parts")

    def __init__(self, ring, parts=()):
        self.ring = ring  # LaurentRing
        self.parts = {
            S: f for S, f in dict(parts).items() if not f.is_zero()
        }

    def __eq__(self, other):
        return isinstance(other, PolyVector) and self.parts == other.parts

    def __repr__(self):
        if not self.parts:
            return "0"
        bits = []
        for S in sorted(self.parts):
            tail = "".join(f"^xi{i}" for i in S)
            bits.append(f"({self.parts[S]!r}){tail}")
        return " + ".join(bits)

    def is_zero(self):
        return not self.parts

    def degrees(self):
        return sorted({len(S) for S in self.parts})


def pv_zero(ring):
    return PolyVector(ring)


def pv_function(ring, f):
    return PolyVector(ring, {(): f})


def pv_term(ring, f, S):
    S = tuple(sorted(S))
    if len(set(S)) != len(S):
        raise ValueError("repeated odd generator")
    return PolyVector(ring, {S: f})


def pv_add(a, b):
    ring = a.ring
    parts = dict(a.parts)
    for S, f in b.parts.items():
        g = ring.add(parts.get(S, ring.zero), f)
        if g.is_zero():
            parts.pop(S, None)
        else:
            parts[S] = g
    return PolyVector(ring, parts)


def pv_neg(a):
    ring = a.ring
    return PolyVector(ring, {S: ring.neg(f) for S, f in a.parts.items()})


def pv_sub(a, b):
    return pv_add(a, pv_neg(b))


def pv_scalar(c, a):
    ring = a.ring
    return PolyVector(
        ring, {S: ring.scalar_mul(c, f) for S, f in a.parts.items()}
    )


def _merge_sign(S, T):
    """Sign of sorting the concatenation S+T (disjoint ascending tuples);
    None if they intersect."""
    if set(S) & set(T):
        return None, ()
    merged = S + T
    # count inversions
    inv = 0
    items = list(merged)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                inv += 1
    return (-1) ** inv, tuple(sorted(merged))


def pv_wedge(a, b):
    ring = a.ring
    parts = {}
    for S, f in a.parts.items():
        for T, g in b.parts.items():
            sign, U = _merge_sign(S, T)
            if sign is None:
                continue
            prod = ring.mul(f, g)
            if sign < 0:
                prod = ring.neg(prod)
            h = ring.add(parts.get(U, ring.zero), prod)
            if h.is_zero():
                parts.pop(U, None)
            else:
                parts[U] = h
    return PolyVector(ring, parts)


def _xi_partial(a, i):
    """Left derivative with respect to xi_i."""
    ring = a.ring
    parts = {}
    for S, f in a.parts.items():
        if i not in S:
            continue
        pos = S.index(i)
        rest = S[:pos] + S[pos + 1:]
        g = f if pos % 2 == 0 else ring.neg(f)
        h = ring.add(parts.get(rest, ring.zero), g)
        if h.is_zero():
            parts.pop(rest, None)
        else:
            parts[rest] = h
    return PolyVector(ring, parts)


def _z_partial(a, i):
    ring = a.ring
    parts = {}
    for S, f in a.parts.items():
        g = ring.partial(f, i)
        if not g.is_zero():
            parts[S] = g
    return PolyVector(ring, parts)


def schouten_bracket(a, b):
    """Schouten bracket of polyvector fields; a must be homogeneous in
    polyvector degree (apply to homogeneous pieces otherwise)."""
    ring = a.ring
    out = pv_zero(ring)
    by_degree = {}
    for S, f in a.parts.items():
        by_degree.setdefault(len(S), {})[S] = f
    for p, parts in by_degree.items():
        ap = PolyVector(ring, parts)
        for i in range(ring.nvars):
            t1 = pv_wedge(_xi_partial(ap, i), _z_partial(b, i))
            if p % 2 == 0:
                t1 = pv_neg(t1)
            out = pv_add(out, t1)
            out = pv_sub(out, pv_wedge(_z_partial(ap, i), _xi_partial(b, i)))
    return out


def contraction(dW_partials, a):
    """Contraction of the one-form dW into a polyvector field; partials is
    the list of dW/dz_i."""
    ring = a.ring
    parts = {}
    for S, f in a.parts.items():
        for pos, i in enumerate(S):
            rest = S[:pos] + S[pos + 1:]
            g = ring.mul(f, dW_partials[i])
            if pos % 2 == 1:
                g = ring.neg(g)
            h = ring.add(parts.get(rest, ring.zero), g)
            if h.is_zero():
                parts.pop(rest, None)
            else:
                parts[rest] = h
    return PolyVector(ring, parts)


def pv_weighted_degree(a, var_weights, xi_weights):
    """Total degrees of the terms; singleton set iff homogeneous."""
    ring = a.ring
    degs = set()
    for S, f in a.parts.items():
        base = sum(Fraction(xi_weights[i]) for i in S)
        for d in ring.weighted_degrees(f, var_weights):
            degs.add(d + base)
    return degs


# -- windowed Koszul complexes ---------------------------------------------------


def _boxes(W_partials, base_box, nvars, levels):
    """Per-level exponent boxes so no differential entry leaves the window:
    each step down in exterior degree may shift exponents by at most the
    spread of the partials."""
    shift = [0] * nvars
    for p in W_partials:
        for e in p.terms:
            for j in range(nvars):
                shift[j] = max(shift[j], abs(e[j]))
    # Level p box: base box shrunk by p * shift on both sides, so the chain
    # of differentials from level p stays inside the base box.
    out = {}
    for p in range(levels + 1):
        out[p] = [
            (lo + p * shift[j], hi - p * shift[j])
            for j, (lo, hi) in enumerate(base_box)
        ]
    return out


def eroded_windows(points, var_shifts, nvars):
    """Per-subset windows over an arbitrary lattice-point set.

    ``var_shifts[i]`` is the set of exponent shifts a differential entry
    may apply when it removes xi_i. The window of the empty subset is the
    given set, and window(S) keeps the points of the intersection of the
    windows of S minus one index whose shifted translates stay in that
    smaller window, so no differential chain leaves the base set."""
    base = frozenset(tuple(a) for a in points)
    out = {(): base}
    for S in _subsets(nvars)[1:]:
        win = None
        for pos, i in enumerate(S):
            Twin = out[S[:pos] + S[pos + 1:]]
            cur = frozenset(
                a
                for a in Twin
                if all(
                    tuple(x + y for x, y in zip(a, e)) in Twin
                    for e in var_shifts[i]
                )
            )
            win = cur if win is None else (win & cur)
        out[S] = win
    return out


def _subsets(n):
    out = [()]
    for i in range(n):
        out = out + [S + (i,) for S in out]
    return sorted(out, key=lambda S: (len(S), S))


def _box_points(box):
    def rec(j):
        if j == len(box):
            yield ()
            return
        lo, hi = box[j]
        for tail in rec(j + 1):
            for v in range(lo, hi + 1):
                yield (v,) + tail

    return list(rec(0))


def koszul_complex(
    ring,
    W,
    base_box,
    coeff_ring,
    q_power=0,
    var_degrees=None,
    xi_degrees=None,
    filtration="q",
):
    """Windowed Koszul complex of the superpotential W.

    Generators z^alpha xi_S for alpha in a level-dependent exponent box
    (shrunk so no differential entry leaves the window); differential is
    contraction with dW, multiplied by q^q_power when coeff_ring is a
    Novikov ring. Filtration conventions: "q" gives every generator
    filtration 0 (the plain q-exponent filtration after expansion);
    "q-minus-p" gives level-p generators filtration -p.
    """
    n = ring.nvars
    partials = [ring.partial(W, i) for i in range(n)]
    boxes = _boxes(partials, base_box, n, n)
    if var_degrees is None:
        var_degrees = [Fraction(0)] * n
    if xi_degrees is None:
        xi_degrees = [Fraction(-1)] * n
    gens = []
    index = set()
    for S in _subsets(n):
        p = len(S)
        box = boxes[min(p, n)]
        if any(lo > hi for lo, hi in box):
            continue
        for alpha in _box_points(box):
            label = _gen_label(alpha, S)
            deg = sum(
                Fraction(w) * a for w, a in zip(var_degrees, alpha)
            ) + sum(Fraction(xi_degrees[i]) for i in S)
            filt = -p if filtration == "q-minus-p" else 0
            gens.append(Generator(label, deg, Fraction(filt)))
            index.add((alpha, S))
    is_nov = isinstance(coeff_ring, NovikovRing)
    qc = (
        coeff_ring.monomial(q_power)
        if is_nov
        else None
    )
    diff = {}
    for S in _subsets(n):
        p = len(S)
        if p == 0:
            continue
        box = boxes[min(p, n)]
        if any(lo > hi for lo, hi in box):
            continue
        for alpha in _box_points(box):
            src = _gen_label(alpha, S)
            img = contraction(partials, pv_term(ring, ring.monomial(alpha), S))
            for T, f in img.parts.items():
                for e, c in f.terms.items():
                    if (e, T) not in index:
                        raise ValueError(
                            "differential leaves the window; enlarge the box"
                        )
                    tgt = _gen_label(e, T)
                    if is_nov:
                        val = coeff_ring.scalar_mul(c, qc)
                    else:
                        val = c
                    key = (src, tgt)
                    prev = diff.get(key)
                    if prev is None:
                        diff[key] = val
                    else:
                        diff[key] = coeff_ring.add(prev, val)
    ringc = coeff_ring
    diff = {k: v for k, v in diff.items() if not ringc.is_zero(v)}
    return FilteredComplex(coeff_ring, gens, diff, check=False)


def _gen_label(alpha, S):
    a = ",".join(str(x) for x in alpha)
    s = "".join(f"x{i}" for i in S)
    return f"z({a}){s}" if s else f"z({a})"
