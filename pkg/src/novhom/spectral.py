"""Spectral sequence of a finite filtered cochain complex over a field.

Filtration values must be integers (q-exponents after expanding over the
base field). Pages are computed from the classical cycle spaces

    Z_r(p, d) = { x in F_{>=p} C^d : d(x) in F_{>=p+r} },
    E_r(p, d) = Z_r(p, d) / ( Z_{r-1}(p+1, d) + d Z_{r-1}(p-r+1, d-1) ),

with d_r of bidegree (r, 1-r) in (filtration, complementary degree). Entries
are keyed by (p, k) with k = d - p, which buckets rational total degrees by
their fractional part automatically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import linalg
from .novikov import NovikovRing


class SpectralError(ValueError):
    pass


@dataclass
class PageEntry:
    dim: int
    reps: list  # vectors in global generator coordinates
    denom: list  # basis of the subspace killed in the quotient


@dataclass
class SpectralPage:
    r: int
    entries: dict  # (p, k) -> PageEntry
    differentials: dict = field(default_factory=dict)  # (p, k) -> matrix

    def dim(self, p, k):
        e = self.entries.get((p, k))
        return e.dim if e else 0

    def dims(self):
        return {key: e.dim for key, e in self.entries.items() if e.dim}

    def total_rank(self):
        return sum(e.dim for e in self.entries.values())

    def rank_at_filtration(self, p):
        return sum(e.dim for (pp, _), e in self.entries.items() if pp == p)

    def differential_is_zero(self):
        # Only genuinely nonzero matrices are recorded.
        return not self.differentials


class _Workspace:
    def __init__(self, cx):
        self.cx = cx
        self.F = cx.ring
        if isinstance(self.F, NovikovRing):
            raise SpectralError("spectral sequences are computed over a field")
        self.gens = list(cx.generators)
        self.index = {g.label: i for i, g in enumerate(self.gens)}
        filts = [g.filtration for g in self.gens]
        for f in filts:
            if f.denominator != 1:
                raise SpectralError("filtration values must be integers")
        self.pmin = min((int(f) for f in filts), default=0)
        self.pmax = max((int(f) for f in filts), default=0)
        # Differential as one global matrix.
        n = len(self.gens)
        self.D = [[self.F.zero] * n for _ in range(n)]
        for (s, t), c in cx.diff.items():
            self.D[self.index[t]][self.index[s]] = c
        self._zcache = {}

    def d_vec(self, v):
        return linalg.mat_vec(self.F, self.D, v)

    def gen_positions(self, degree, min_filt):
        return [
            i
            for i, g in enumerate(self.gens)
            if g.degree == degree and g.filtration >= min_filt
        ]

    def cycle_space(self, r, p, d):
        """Basis of Z_r(p, d) in global coordinates."""
        key = (r, p, d)
        if key in self._zcache:
            return self._zcache[key]
        F = self.F
        pos = self.gen_positions(d, p)
        n = len(self.gens)
        if not pos:
            self._zcache[key] = []
            return []
        if r <= 0:
            basis = [linalg.unit_vector(F, n, i) for i in pos]
            self._zcache[key] = basis
            return basis
        # Rows: components of d(x) on generators of filtration < p + r.
        bad = [
            i
            for i, g in enumerate(self.gens)
            if g.degree == d + 1 and g.filtration < p + r
        ]
        M = [[self.D[i][j] for j in pos] for i in bad]
        if not M:
            sol = [linalg.unit_vector(F, len(pos), i) for i in range(len(pos))]
        else:
            sol = linalg.nullspace(F, M, cols=len(pos))
        basis = []
        for v in sol:
            w = [F.zero] * n
            for c, j in zip(v, pos):
                w[j] = c
            basis.append(w)
        self._zcache[key] = basis
        return basis


def spectral_sequence(cx, max_page=None, verify=True):
    """All pages E_0 .. E_{r_max} with differentials; the last page is stable
    for the given (finite) filtration range."""
    ws = _Workspace(cx)
    F = ws.F
    n = len(ws.gens)
    width = ws.pmax - ws.pmin + 1
    r_max = width if max_page is None else max_page
    degrees = sorted({g.degree for g in ws.gens})
    pages = []
    for r in range(r_max + 1):
        entries = {}
        for d in degrees:
            for p in range(ws.pmin, ws.pmax + 1):
                Z = ws.cycle_space(r, p, d)
                if not Z:
                    continue
                denom = list(ws.cycle_space(r - 1, p + 1, d))
                for v in ws.cycle_space(r - 1, p - r + 1, d - 1):
                    dv = ws.d_vec(v)
                    if any(not F.is_zero(x) for x in dv):
                        denom.append(dv)
                denom = linalg.row_reduce_basis(F, denom)
                _, reps = linalg.complement_in(F, denom, Z)
                if reps or denom:
                    k = d - p
                    entries[(p, k)] = PageEntry(
                        dim=len(reps), reps=reps, denom=denom
                    )
        page = SpectralPage(r=r, entries=entries)
        # Induced differential d_r on representatives.
        for (p, k), e in entries.items():
            tgt_key = (p + r, k + 1 - r)
            tgt = entries.get(tgt_key)
            cols = []
            for v in e.reps:
                dv = ws.d_vec(v)
                if all(F.is_zero(x) for x in dv):
                    cols.append([F.zero] * (tgt.dim if tgt else 0))
                    continue
                if tgt is None:
                    raise SpectralError(
                        f"d_{r} lands outside the computed window at {(p, k)}"
                    )
                basis = [list(w) for w in tgt.reps] + [list(w) for w in tgt.denom]
                sol = linalg.coords_in_basis(
                    F, basis, dv
                )
                if sol is None:
                    raise SpectralError(f"d_{r} image not in target at {(p, k)}")
                cols.append(sol[: tgt.dim])
            if tgt and tgt.dim and cols:
                M = [[cols[j][i] for j in range(len(cols))] for i in range(tgt.dim)]
                if any(any(not F.is_zero(x) for x in row) for row in M):
                    page.differentials[(p, k)] = M
        pages.append(page)
        if verify and r >= 1:
            _verify_homology_step(F, pages[-2], page)
    return pages


def _verify_homology_step(F, prev, cur):
    """dim E_{r+1} must equal dim ker(d_r)/im(d_r) computed from ranks."""
    keys = set(prev.entries) | set(cur.entries)
    for key in keys:
        p, k = key
        dim_prev = prev.dim(p, k)
        out_rank = linalg.rank(F, prev.differentials.get(key, []))
        src_key = (p - prev.r, k - 1 + prev.r)
        in_rank = linalg.rank(F, prev.differentials.get(src_key, []))
        expected = dim_prev - out_rank - in_rank
        if cur.dim(p, k) != expected:
            raise SpectralError(
                f"page {cur.r} entry {key}: dim {cur.dim(p, k)} != "
                f"homology of page {prev.r} ({expected})"
            )


def degeneration_page(pages):
    """Smallest r such that d_s = 0 for all s >= r on the computed window."""
    r_deg = pages[-1].r + 1
    for page in reversed(pages):
        if page.differentials:
            return page.r + 1
        r_deg = page.r
    return r_deg


def einfinity_dims(pages):
    return pages[-1].dims()


def convergence_report(cx, a0=None, doubled=None, degree_window=None):
    """Diagnostics for convergence of the spectral sequence.

    - bounded_below: every generator of degree i has filtration <= floor(i/a0)
      (the witness rule; requires the grade a0 of q).
    - exhaustive: every generator carries a finite filtration value (always
      true at finite rank; recorded for the report).
    - window_stable: if a doubled-window complex is supplied, the stable page
      dimensions agree on the given degree window.
    """
    report = {}
    if a0 is not None:
        violations = []
        for g in cx.generators:
            bound = math.floor(g.degree / a0)
            if g.filtration > bound:
                violations.append(g.label)
        report["bounded_below"] = not violations
        report["bounded_below_violations"] = violations[:10]
    report["exhaustive"] = True
    pages = spectral_sequence(cx)
    report["stable_page"] = degeneration_page(pages)
    report["einf_dims"] = {
        f"{p},{k}": v for (p, k), v in einfinity_dims(pages).items()
    }
    if doubled is not None:
        pages2 = spectral_sequence(doubled)
        d1 = einfinity_dims(pages)
        d2 = einfinity_dims(pages2)
        if degree_window is None:
            stable = d1 == {
                key: v for key, v in d2.items() if key in d1 or v
            }
        else:
            lo, hi = degree_window
            in_win = lambda key: lo <= key[0] + key[1] <= hi  # noqa: E731
            stable = {k: v for k, v in d1.items() if in_win(k)} == {
                k: v for k, v in d2.items() if in_win(k)
            }
        report["window_stable"] = stable
    return report


def cross_check_einfinity(cx, pages=None):
    """Sum over p of dim E_inf(p, d-p) must match dim H^d directly."""
    from .complexes import field_cohomology

    if pages is None:
        pages = spectral_sequence(cx)
    einf = einfinity_dims(pages)
    by_degree = {}
    for (p, k), v in einf.items():
        by_degree[p + k] = by_degree.get(p + k, 0) + v
    H = field_cohomology(cx)
    hdims = {d: dim for d, (dim, _) in H.items() if dim}
    return by_degree == hdims, by_degree, hdims
