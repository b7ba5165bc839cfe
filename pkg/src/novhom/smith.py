"""Smith normal form over a field or over the Laurent ring k[q, q^{-1}].

The Laurent ring is Euclidean: units are the monomials c*q^n, and dividing
out the lowest power of q turns any element into an honest polynomial, whose
degree (the width of the exponent support) serves as the Euclidean norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .novikov import NovikovRing


class _FieldOps:
    """Every nonzero element of a field is a unit."""

    def __init__(self, F):
        self.F = F

    def is_unit(self, x):
        return not self.F.is_zero(x)

    def divmod(self, a, b):
        return self.F.div(a, b), self.F.zero

    def normalize_unit(self, x):
        if self.F.is_zero(x):
            return self.F.one, self.F.zero
        return x, self.F.one

    def norm(self, x):
        return 0


class _LaurentOps:
    def __init__(self, ring):
        self.ring = ring

    def is_unit(self, x):
        return self.ring.is_unit(x)

    def divmod(self, a, b):
        return self.ring.divmod(a, b)

    def normalize_unit(self, x):
        return self.ring.normalize_unit(x)

    def norm(self, x):
        return self.ring.euclidean_norm(x)


def _ops_for(ring):
    if isinstance(ring, NovikovRing):
        return _LaurentOps(ring)
    return _FieldOps(ring)


@dataclass
class SmithForm:
    """U * M * V = D with U, V invertible and D diagonal, d_i | d_{i+1}."""

    D: list
    U: list
    V: list
    U_inv: list
    V_inv: list
    rank: int
    diagonal: list = field(default_factory=list)


def _identity(ring, n):
    M = [[ring.zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        M[i][i] = ring.one
    return M


def smith_normal_form(ring, M):
    ops = _ops_for(ring)
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(row) for row in M]
    U, Uinv = _identity(ring, m), _identity(ring, m)
    V, Vinv = _identity(ring, n), _identity(ring, n)

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_add(i, j, c):
        # row_i += c * row_j
        A[i] = [ring.add(a, ring.mul(c, b)) for a, b in zip(A[i], A[j])]
        U[i] = [ring.add(a, ring.mul(c, b)) for a, b in zip(U[i], U[j])]
        nc = ring.neg(c)
        for r in Uinv:
            r[j] = ring.add(r[j], ring.mul(nc, r[i]))

    def col_add(i, j, c):
        # col_i += c * col_j
        for r in A:
            r[i] = ring.add(r[i], ring.mul(c, r[j]))
        for r in V:
            r[i] = ring.add(r[i], ring.mul(c, r[j]))
        nc = ring.neg(c)
        Vinv[j] = [ring.add(a, ring.mul(nc, b)) for a, b in zip(Vinv[j], Vinv[i])]

    def row_scale(i, u):
        A[i] = [ring.mul(u, a) for a in A[i]]
        U[i] = [ring.mul(u, a) for a in U[i]]
        uinv = ring.inv(u)
        for r in Uinv:
            r[i] = ring.mul(r[i], uinv)

    k = 0
    while k < min(m, n):
        # Pick a nonzero entry of minimal norm as the pivot.
        pivot = None
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if not ring.is_zero(A[i][j]):
                    nm = ops.norm(A[i][j])
                    if best is None or nm < best:
                        best, pivot = nm, (i, j)
        if pivot is None:
            break
        row_swap(k, pivot[0])
        col_swap(k, pivot[1])
        while True:
            dirty = False
            for i in range(k + 1, m):
                if ring.is_zero(A[i][k]):
                    continue
                quo, rem = ops.divmod(A[i][k], A[k][k])
                row_add(i, k, ring.neg(quo))
                if not ring.is_zero(rem):
                    row_swap(k, i)  # remainder has smaller norm
                    dirty = True
            for j in range(k + 1, n):
                if ring.is_zero(A[k][j]):
                    continue
                quo, rem = ops.divmod(A[k][j], A[k][k])
                col_add(j, k, ring.neg(quo))
                if not ring.is_zero(rem):
                    col_swap(k, j)
                    dirty = True
            if dirty:
                continue
            # Pivot now alone in its row and column; enforce divisibility.
            witness = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if ring.is_zero(A[i][j]):
                        continue
                    _, rem = ops.divmod(A[i][j], A[k][k])
                    if not ring.is_zero(rem):
                        witness = i
                        break
                if witness is not None:
                    break
            if witness is None:
                break
            row_add(k, witness, ring.one)
        u, _ = ops.normalize_unit(A[k][k])
        if not ring.eq(u, ring.one):
            row_scale(k, ring.inv(u))
        k += 1

    diag = [A[i][i] for i in range(min(m, n))]
    rank = sum(1 for d in diag if not ring.is_zero(d))
    return SmithForm(D=A, U=U, V=V, U_inv=Uinv, V_inv=Vinv, rank=rank, diagonal=diag)


def _mat_mul(ring, A, B):
    if not A or not B:
        return []
    n, m, k = len(A), len(B), len(B[0])
    out = [[ring.zero for _ in range(k)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            a = A[i][j]
            if ring.is_zero(a):
                continue
            for t in range(k):
                b = B[j][t]
                if not ring.is_zero(b):
                    out[i][t] = ring.add(out[i][t], ring.mul(a, b))
    return out


def _mat_vec(ring, A, v):
    out = []
    for row in A:
        acc = ring.zero
        for a, x in zip(row, v):
            if not ring.is_zero(a) and not ring.is_zero(x):
                acc = ring.add(acc, ring.mul(a, x))
        out.append(acc)
    return out


def verify_smith(ring, M, sf):
    lhs = _mat_mul(ring, _mat_mul(ring, sf.U, M), sf.V)
    if len(lhs) != len(sf.D):
        return False
    for ra, rb in zip(lhs, sf.D):
        if not all(ring.eq(a, b) for a, b in zip(ra, rb)):
            return False
    # U, V must actually be invertible.
    for P, Pinv in ((sf.U, sf.U_inv), (sf.V, sf.V_inv)):
        n = len(P)
        prod = _mat_mul(ring, P, Pinv)
        for i in range(n):
            for j in range(n):
                want = ring.one if i == j else ring.zero
                if not ring.eq(prod[i][j], want):
                    return False
    return True


def kernel_basis(ring, M, cols=None):
    """Basis of {x : Mx = 0} as a saturated submodule (columns of V past
    the nonzero part of the diagonal)."""
    if cols is None:
        cols = len(M[0]) if M else 0
    if not M or cols == 0:
        return [_unit(ring, cols, i) for i in range(cols)]
    sf = smith_normal_form(ring, M)
    out = []
    for j in range(cols):
        dj = sf.D[j][j] if j < min(len(M), cols) else ring.zero
        if j >= len(M) or ring.is_zero(dj):
            out.append([sf.V[i][j] for i in range(cols)])
    return out


def _unit(ring, n, i):
    v = [ring.zero] * n
    v[i] = ring.one
    return v


def solve_linear(ring, M, b):
    """One solution of Mx = b over the ring, or None."""
    if not M:
        return []
    sf = smith_normal_form(ring, M)
    return _solve_with_smith(ring, sf, len(M), len(M[0]), b)


def _solve_with_smith(ring, sf, m, n, b):
    """One solution of Mx = b given a precomputed Smith form of M."""
    ops = _ops_for(ring)
    c = _mat_vec(ring, sf.U, b)
    y = [ring.zero] * n
    for i in range(m):
        d = sf.D[i][i] if i < min(m, n) else ring.zero
        if ring.is_zero(d):
            if not ring.is_zero(c[i]):
                return None
        else:
            quo, rem = ops.divmod(c[i], d)
            if not ring.is_zero(rem):
                return None
            y[i] = quo
    return _mat_vec(ring, sf.V, y)


@dataclass
class ModuleInvariants:
    """A finitely generated module over the coefficient ring: free rank plus
    torsion divisors in divisibility order, with representing vectors."""

    free_rank: int
    torsion: list
    free_reps: list
    torsion_reps: list

    def to_json(self, ring):
        enc = (
            ring.element_to_json
            if isinstance(ring, NovikovRing)
            else ring.to_str
        )
        return {
            "free_rank": self.free_rank,
            "torsion": [enc(t) for t in self.torsion],
        }


def cokernel_invariants(ring, M, rows=None):
    """Invariants of R^rows / column-span(M)."""
    if rows is None:
        rows = len(M)
    if not M or not M[0]:
        return ModuleInvariants(
            free_rank=rows,
            torsion=[],
            free_reps=[_unit(ring, rows, i) for i in range(rows)],
            torsion_reps=[],
        )
    ops = _ops_for(ring)
    sf = smith_normal_form(ring, M)
    free_reps, torsion, torsion_reps = [], [], []
    ncols = len(M[0])
    for i in range(rows):
        d = sf.D[i][i] if i < min(rows, ncols) else ring.zero
        rep = [sf.U_inv[r][i] for r in range(rows)]
        if ring.is_zero(d):
            free_reps.append(rep)
        elif not ops.is_unit(d):
            torsion.append(d)
            torsion_reps.append(rep)
    return ModuleInvariants(
        free_rank=len(free_reps),
        torsion=torsion,
        free_reps=free_reps,
        torsion_reps=torsion_reps,
    )


def module_cohomology(cx):
    """Cohomology of a filtered complex with Novikov coefficients, as a
    module over the coefficient ring: ker(d)/im(d) computed by Smith normal
    form on the full differential matrix.

    Returns (invariants, representatives) where representatives are element
    dicts for the free part.
    """
    ring = cx.ring
    M, gens = cx.full_matrix()
    n = len(gens)
    kernel = kernel_basis(ring, M, cols=n)
    # Express each image column in kernel coordinates (one Smith form of
    # the kernel matrix, reused for every column).
    K = [[kernel[j][i] for j in range(len(kernel))] for i in range(n)]
    sfK = smith_normal_form(ring, K) if K and K[0] else None
    rel_cols = []
    for j in range(n):
        col = [M[i][j] for i in range(n)]
        if all(ring.is_zero(x) for x in col):
            continue
        sol = (
            None
            if sfK is None
            else _solve_with_smith(ring, sfK, n, len(kernel), col)
        )
        if sol is None:
            raise ArithmeticError("image does not lie in the kernel")
        rel_cols.append(sol)
    if rel_cols:
        R = [[rel_cols[j][i] for j in range(len(rel_cols))] for i in range(len(kernel))]
    else:
        R = []
    inv = cokernel_invariants(ring, R, rows=len(kernel))

    def to_elem(vec_in_kernel_coords):
        out = {}
        for c, kvec in zip(vec_in_kernel_coords, kernel):
            if ring.is_zero(c):
                continue
            for i, x in enumerate(kvec):
                if ring.is_zero(x):
                    continue
                lbl = gens[i].label
                s = ring.add(out.get(lbl, ring.zero), ring.mul(c, x))
                if ring.is_zero(s):
                    out.pop(lbl, None)
                else:
                    out[lbl] = s
        return out

    reps = [to_elem(v) for v in inv.free_reps]
    return inv, reps


def element_degree(cx, elem):
    """Total QQ-degree of a homogeneous element over a Novikov ring, taking
    deg(q^n) = n*a0 into account. None if not homogeneous."""
    ring = cx.ring
    degs = set()
    for lbl, c in elem.items():
        g = cx.by_label[lbl]
        for nexp in c.terms:
            degs.add(g.degree + nexp * ring.a0)
    if len(degs) == 1:
        return degs.pop()
    return None


def class_coordinates_module(cx, elems, basis_reps):
    """Coordinates of cocycles in a given basis of the free part of module
    cohomology; returns the matrix of coordinates or None if some element
    is not expressible."""
    ring = cx.ring
    M, gens = cx.full_matrix()
    n = len(gens)
    cols = []
    for rep in basis_reps:
        cols.append([rep.get(g.label, ring.zero) for g in gens])
    im_cols = []
    for j in range(n):
        col = [M[i][j] for i in range(n)]
        if any(not ring.is_zero(x) for x in col):
            im_cols.append(col)
    A = [[(cols + im_cols)[j][i] for j in range(len(cols) + len(im_cols))] for i in range(n)]
    out = []
    for e in elems:
        vec = [e.get(g.label, ring.zero) for g in gens]
        sol = solve_linear(ring, A, vec)
        if sol is None:
            return None
        out.append(sol[: len(basis_reps)])
    return out
