"""Finite-rank free filtered cochain complexes.

A complex is a finite list of generators, each with a label, a rational
cohomological degree and a rational filtration value, together with a sparse
differential raising degree by exactly 1. Coefficients live either in a base
field or in a Novikov ring; in the latter case a coefficient contributes its
own filtration (the lowest q-exponent) to the filtration of an image term.

Elements of the complex are plain dicts {label: coefficient}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .novikov import INF, NovikovRing


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    label: str
    degree: Fraction
    filtration: Fraction

    def to_json(self):
        return {
            "label": self.label,
            "degree": str(self.degree),
            "filtration": str(self.filtration),
        }


def _gen_sort_key(g):
    return (g.degree, g.filtration, g.label)


def coeff_filtration(ring, c):
    if isinstance(ring, NovikovRing):
        return ring.filtration(c)
    return 0 if not ring.is_zero(c) else INF


class FilteredComplex:
    def __init__(self, ring, generators, diff, check=True):
        """diff maps (src_label, dst_label) to a nonzero ring coefficient;
        d(src) = sum of coeff * dst."""
        gens = [
            Generator(g.label, Fraction(g.degree), Fraction(g.filtration))
            if isinstance(g, Generator)
            else Generator(g[0], Fraction(g[1]), Fraction(g[2]))
            for g in generators
        ]
        gens.sort(key=_gen_sort_key)
        self.ring = ring
        self.generators = tuple(gens)
        self.by_label = {g.label: g for g in gens}
        if len(self.by_label) != len(gens):
            raise ComplexError("duplicate generator labels")
        self.diff = {
            k: v for k, v in diff.items() if not ring.is_zero(v)
        }
        self._out = {}
        for (s, t), c in self.diff.items():
            if s not in self.by_label or t not in self.by_label:
                raise ComplexError(f"differential entry {s}->{t} off basis")
            self._out.setdefault(s, {})[t] = c
        if check:
            self.validate()

    # -- structure -----------------------------------------------------------

    def degrees(self):
        return sorted({g.degree for g in self.generators})

    def gens_of_degree(self, d):
        return [g for g in self.generators if g.degree == d]

    def d_of(self, label):
        return dict(self._out.get(label, {}))

    def apply_d(self, elem):
        ring = self.ring
        out = {}
        for lbl, c in elem.items():
            if ring.is_zero(c):
                continue
            for t, dc in self._out.get(lbl, {}).items():
                s = ring.add(out.get(t, ring.zero), ring.mul(c, dc))
                if ring.is_zero(s):
                    out.pop(t, None)
                else:
                    out[t] = s
        return out

    def validate(self):
        ring = self.ring
        for (s, t), c in self.diff.items():
            gs, gt = self.by_label[s], self.by_label[t]
            if isinstance(ring, NovikovRing):
                # q carries degree a0, so every term must raise the total
                # degree by exactly 1.
                for nexp in c.terms:
                    if gt.degree + nexp * ring.a0 != gs.degree + 1:
                        raise ComplexError(
                            f"differential {s}->{t} not homogeneous of degree 1"
                        )
            elif gt.degree != gs.degree + 1:
                raise ComplexError(
                    f"differential {s}->{t} does not raise degree by 1"
                )
            cf = coeff_filtration(ring, c)
            if gt.filtration + cf < gs.filtration:
                raise ComplexError(
                    f"differential {s}->{t} decreases filtration"
                )
        for g in self.generators:
            dd = self.apply_d(self.apply_d({g.label: ring.one}))
            if dd:
                raise ComplexError(f"d^2 != 0 starting from {g.label}")

    def d_matrix(self, degree):
        """Matrix of d from degree to degree+1; rows = target generators."""
        src = self.gens_of_degree(degree)
        dst = self.gens_of_degree(degree + 1)
        dst_idx = {g.label: i for i, g in enumerate(dst)}
        M = [[self.ring.zero for _ in src] for _ in dst]
        for j, g in enumerate(src):
            for t, c in self._out.get(g.label, {}).items():
                if t in dst_idx:
                    M[dst_idx[t]][j] = c
        return M, src, dst

    def full_matrix(self):
        """One matrix for d over all generators (used over Novikov rings)."""
        gens = list(self.generators)
        idx = {g.label: i for i, g in enumerate(gens)}
        M = [[self.ring.zero for _ in gens] for _ in gens]
        for (s, t), c in self.diff.items():
            M[idx[t]][idx[s]] = c
        return M, gens

    # -- constructions ---------------------------------------------------------

    def shift(self, k, suffix=None):
        """Degree shift: generator degrees drop by k, differential gains
        the sign (-1)^k."""
        suffix = f"[{k}]" if suffix is None else suffix
        gens = [
            Generator(g.label + suffix, g.degree - k, g.filtration)
            for g in self.generators
        ]
        sign = self.ring.one if k % 2 == 0 else self.ring.neg(self.ring.one)
        diff = {
            (s + suffix, t + suffix): self.ring.mul(sign, c)
            for (s, t), c in self.diff.items()
        }
        return FilteredComplex(self.ring, gens, diff, check=False)

    def relabel(self, prefix):
        gens = [
            Generator(prefix + g.label, g.degree, g.filtration)
            for g in self.generators
        ]
        diff = {
            (prefix + s, prefix + t): c for (s, t), c in self.diff.items()
        }
        return FilteredComplex(self.ring, gens, diff, check=False)

    def to_json(self):
        ring = self.ring
        if isinstance(ring, NovikovRing):
            ring_json = {"novikov": ring.describe()}
            enc = ring.element_to_json
        else:
            ring_json = {"field": ring.describe()}
            enc = lambda c: ring.to_str(c)  # noqa: E731
        return {
            "ring": ring_json,
            "generators": [g.to_json() for g in self.generators],
            "differential": [
                {"from": s, "to": t, "coeff": enc(c)}
                for (s, t), c in sorted(self.diff.items())
            ],
        }


def direct_sum(cxs, prefixes=None):
    if not cxs:
        raise ComplexError("empty direct sum")
    ring = cxs[0].ring
    if prefixes is None:
        prefixes = [f"#{i}:" for i in range(len(cxs))]
    gens, diff = [], {}
    for p, cx in zip(prefixes, cxs):
        if cx.ring != ring:
            raise ComplexError("mixed coefficient rings in direct sum")
        for g in cx.generators:
            gens.append(Generator(p + g.label, g.degree, g.filtration))
        for (s, t), c in cx.diff.items():
            diff[(p + s, p + t)] = c
    return FilteredComplex(ring, gens, diff, check=False)


class ChainMap:
    """A degree-0, filtration-non-decreasing map of filtered complexes."""

    def __init__(self, src, dst, entries, check=True):
        self.src = src
        self.dst = dst
        ring = src.ring
        if dst.ring != ring:
            raise ComplexError("chain map between different rings")
        self.ring = ring
        self.entries = {
            k: v for k, v in entries.items() if not ring.is_zero(v)
        }
        self._out = {}
        for (s, t), c in self.entries.items():
            self._out.setdefault(s, {})[t] = c
        if check:
            self.validate()

    def apply(self, elem):
        ring = self.ring
        out = {}
        for lbl, c in elem.items():
            for t, fc in self._out.get(lbl, {}).items():
                s = ring.add(out.get(t, ring.zero), ring.mul(c, fc))
                if ring.is_zero(s):
                    out.pop(t, None)
                else:
                    out[t] = s
        return out

    def validate(self):
        ring = self.ring
        for (s, t), c in self.entries.items():
            gs = self.src.by_label[s]
            gt = self.dst.by_label[t]
            if gt.degree != gs.degree:
                raise ComplexError(f"chain map entry {s}->{t} shifts degree")
            if gt.filtration + coeff_filtration(ring, c) < gs.filtration:
                raise ComplexError(
                    f"chain map entry {s}->{t} decreases filtration"
                )
        for g in self.src.generators:
            lhs = self.dst.apply_d(self.apply({g.label: ring.one}))
            rhs = self.apply(self.src.apply_d({g.label: ring.one}))
            if not _elem_eq(ring, lhs, rhs):
                raise ComplexError(f"chain map does not commute with d at {g.label}")

    def filtration_gain(self):
        """min over entries of filt(target) + filt(coeff) - filt(source)."""
        gain = INF
        for (s, t), c in self.entries.items():
            g = (
                self.dst.by_label[t].filtration
                + coeff_filtration(self.ring, c)
                - self.src.by_label[s].filtration
            )
            gain = min(gain, g)
        return gain


def _elem_eq(ring, a, b):
    keys = set(a) | set(b)
    return all(
        ring.eq(a.get(k, ring.zero), b.get(k, ring.zero)) for k in keys
    )


def compose(f, g):
    """f after g."""
    if g.dst is not f.src and g.dst.by_label.keys() != f.src.by_label.keys():
        raise ComplexError("composition mismatch")
    ring = f.ring
    entries = {}
    for (s, mid), c in g.entries.items():
        for t, c2 in f._out.get(mid, {}).items():
            k = (s, t)
            v = ring.add(entries.get(k, ring.zero), ring.mul(c, c2))
            if ring.is_zero(v):
                entries.pop(k, None)
            else:
                entries[k] = v
    return ChainMap(g.src, f.dst, entries, check=False)


def cone(phi, src_prefix="s:", dst_prefix="t:"):
    """Mapping cone of a chain map phi: X -> Y.

    Cone^n = X^{n+1} (+) Y^n; d(x, y) = (-dx, phi(x) + dy). Source generators
    are shifted down by one in degree.
    """
    ring = phi.ring
    X, Y = phi.src, phi.dst
    gens = []
    for g in Y.generators:
        gens.append(Generator(dst_prefix + g.label, g.degree, g.filtration))
    for g in X.generators:
        gens.append(Generator(src_prefix + g.label, g.degree - 1, g.filtration))
    diff = {}
    for (s, t), c in Y.diff.items():
        diff[(dst_prefix + s, dst_prefix + t)] = c
    for (s, t), c in X.diff.items():
        diff[(src_prefix + s, src_prefix + t)] = ring.neg(c)
    for (s, t), c in phi.entries.items():
        diff[(src_prefix + s, dst_prefix + t)] = c
    return FilteredComplex(ring, gens, diff, check=False)


def associated_graded(cx):
    """Same generators, differential cut down to its filtration-preserving
    part. The graded pieces are the spans of generators of a fixed
    filtration value."""
    ring = cx.ring
    diff = {}
    for (s, t), c in cx.diff.items():
        gain = (
            cx.by_label[t].filtration
            + coeff_filtration(ring, c)
            - cx.by_label[s].filtration
        )
        if gain == 0:
            diff[(s, t)] = c
    return FilteredComplex(ring, cx.generators, diff, check=False)


def graded_piece(cx, level):
    """Subquotient complex spanned by generators of filtration == level."""
    gr = associated_graded(cx)
    gens = [g for g in gr.generators if g.filtration == level]
    keep = {g.label for g in gens}
    diff = {
        (s, t): c
        for (s, t), c in gr.diff.items()
        if s in keep and t in keep
    }
    return FilteredComplex(cx.ring, gens, diff, check=False)


def expand_over_base_field(cx, window):
    """Turn a complex over a Novikov ring into one over its base field.

    Each generator g spawns field generators g|q^a for a in [lo, hi), with
    degree deg(g) + a*a0 and filtration filt(g) + a. Differential terms whose
    q-exponent leaves the window are dropped, so conclusions are only
    trustworthy away from the window edges.
    """
    ring = cx.ring
    if not isinstance(ring, NovikovRing):
        raise ComplexError("expansion needs Novikov coefficients")
    lo, hi = window
    F = ring.base
    gens = []
    for g in cx.generators:
        for a in range(lo, hi):
            gens.append(
                Generator(
                    f"{g.label}|q^{a}",
                    g.degree + a * ring.a0,
                    g.filtration + a,
                )
            )
    diff = {}
    for (s, t), c in cx.diff.items():
        for a in range(lo, hi):
            for n, coeff in c.terms.items():
                b = a + n
                if lo <= b < hi:
                    diff[(f"{s}|q^{a}", f"{t}|q^{b}")] = coeff
    return FilteredComplex(F, gens, diff, check=False)


def truncate_below_filtration(cx, precision):
    """Quotient complex dropping all generators of filtration >= precision.

    Model of the precision-N completion of the complex: in the completed
    object a class is zero iff it is a boundary modulo filtration N, which
    is what cohomology of this quotient detects.
    """
    ring = cx.ring
    if isinstance(ring, NovikovRing):
        raise ComplexError(
            "truncate a Novikov complex after expanding over the base field"
        )
    gens = [g for g in cx.generators if g.filtration < precision]
    keep = {g.label for g in gens}
    diff = {
        (s, t): c
        for (s, t), c in cx.diff.items()
        if s in keep and t in keep
    }
    return FilteredComplex(ring, gens, diff, check=False)


# -- cohomology over a field ----------------------------------------------------


def field_cohomology(cx):
    """Per-degree cohomology of a complex over a field.

    Returns {degree: (dimension, representatives)} where representatives are
    element dicts spanning a complement of the coboundaries in the cocycles.
    """
    F = cx.ring
    if isinstance(F, NovikovRing):
        raise ComplexError("field_cohomology needs field coefficients")
    out = {}
    for d in cx.degrees():
        M, src, _ = cx.d_matrix(d)
        cocycles = linalg.nullspace(F, M, cols=len(src))
        Mp, prev, _ = cx.d_matrix(d - 1)
        boundaries = []
        if prev:
            for j in range(len(prev)):
                col = [Mp[i][j] for i in range(len(src))] if Mp else []
                boundaries.append(col)
        _, reps = linalg.complement_in(F, boundaries, cocycles)
        dim = len(reps)
        rep_elems = [
            {g.label: c for g, c in zip(src, v) if not F.is_zero(c)}
            for v in reps
        ]
        out[d] = (dim, rep_elems)
    return out


def class_coordinates(cx, elem, degree=None):
    """Coordinates of a cocycle's class in the basis field_cohomology picks.

    Returns None if the element is not a cocycle of a single degree.
    """
    F = cx.ring
    if not elem:
        return []
    degs = {cx.by_label[l].degree for l in elem}
    if len(degs) != 1:
        return None
    d = degs.pop()
    if cx.apply_d(elem):
        return None
    M, src, _ = cx.d_matrix(d)
    _, reps = _cohomology_basis(cx, d)
    Mp, prev, _ = cx.d_matrix(d - 1)
    cols = []
    for v in reps:
        cols.append(v)
    for j in range(len(prev)):
        cols.append([Mp[i][j] for i in range(len(src))])
    vec = [elem.get(g.label, F.zero) for g in src]
    sol = linalg.solve(F, linalg.transpose(cols), vec) if cols else (
        [] if all(F.is_zero(x) for x in vec) else None
    )
    if sol is None:
        return None
    return sol[: len(reps)]


def _cohomology_basis(cx, d):
    F = cx.ring
    M, src, _ = cx.d_matrix(d)
    cocycles = linalg.nullspace(F, M, cols=len(src))
    Mp, prev, _ = cx.d_matrix(d - 1)
    boundaries = []
    for j in range(len(prev)):
        boundaries.append([Mp[i][j] for i in range(len(src))])
    _, reps = linalg.complement_in(F, boundaries, cocycles)
    return src, reps


def find_primitive(cx, elem):
    """Solve d(x) = elem; returns an element dict or None."""
    ring = cx.ring
    if not elem:
        return {}
    degs = {cx.by_label[l].degree for l in elem}
    if len(degs) != 1:
        return None
    d = degs.pop() - 1
    if isinstance(ring, NovikovRing):
        raise ComplexError("find_primitive implemented over fields")
    M, src, dst = cx.d_matrix(d)
    vec = [elem.get(g.label, ring.zero) for g in dst]
    sol = linalg.solve(ring, M, vec)
    if sol is None:
        return None
    return {
        g.label: c for g, c in zip(src, sol) if not ring.is_zero(c)
    }
