"""Dense exact linear algebra over an abstract field.

Matrices are lists of rows; vectors are lists. Everything is immutable in
spirit: functions return fresh objects and never mutate their inputs.
"""

from __future__ import annotations


def zeros(F, rows, cols):
    return [[F.zero for _ in range(cols)] for _ in range(rows)]


def identity(F, n):
    M = zeros(F, n, n)
    for i in range(n):
        M[i][i] = F.one
    return M


def mat_mul(F, A, B):
    if not A or not B:
        return []
    n, m, k = len(A), len(B), len(B[0])
    assert len(A[0]) == m, "shape mismatch"
    out = zeros(F, n, k)
    for i in range(n):
        Ai = A[i]
        for j, a in enumerate(Ai):
            if F.is_zero(a):
                continue
            Bj = B[j]
            row = out[i]
            for t in range(k):
                if not F.is_zero(Bj[t]):
                    row[t] = F.add(row[t], F.mul(a, Bj[t]))
    return out


def mat_vec(F, A, v):
    out = []
    for row in A:
        acc = F.zero
        for a, x in zip(row, v):
            if not F.is_zero(a) and not F.is_zero(x):
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def mat_add(F, A, B):
    return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(F, A, B):
    return [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_eq(F, A, B):
    if len(A) != len(B):
        return False
    return all(
        len(ra) == len(rb) and all(F.eq(a, b) for a, b in zip(ra, rb))
        for ra, rb in zip(A, B)
    )


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def rref(F, M):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    R = [list(row) for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if not F.is_zero(R[i][c])), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and not F.is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(F, M):
    if not M or not M[0]:
        return 0
    _, pivots = rref(F, M)
    return len(pivots)


def nullspace(F, M, cols=None):
    """Basis of {v : Mv = 0} as a list of vectors."""
    if cols is None:
        cols = len(M[0]) if M else 0
    if not M:
        return [unit_vector(F, cols, i) for i in range(cols)]
    R, pivots = rref(F, M)
    piv_set = set(pivots)
    free = [c for c in range(cols) if c not in piv_set]
    basis = []
    for fc in free:
        v = [F.zero] * cols
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(R[r][fc])
        basis.append(v)
    return basis


def unit_vector(F, n, i):
    v = [F.zero] * n
    v[i] = F.one
    return v


def solve(F, M, b):
    """One solution of Mv = b, or None if inconsistent."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    aug = [list(M[i]) + [b[i]] for i in range(rows)]
    R, pivots = rref(F, aug)
    if cols in pivots:
        return None
    v = [F.zero] * cols
    for r, pc in enumerate(pivots):
        v[pc] = R[r][cols]
    return v


def row_reduce_basis(F, vectors):
    """Echelon basis of the span of the given vectors (rows)."""
    if not vectors:
        return []
    R, pivots = rref(F, vectors)
    return [R[i] for i in range(len(pivots))]


def span_dim(F, vectors):
    return len(row_reduce_basis(F, vectors))


def in_span(F, vectors, v):
    if all(F.is_zero(x) for x in v):
        return True
    if not vectors:
        return False
    return span_dim(F, vectors) == span_dim(F, list(vectors) + [v])


def coords_in_basis(F, basis, v):
    """Coordinates of v in the given (independent) basis, or None."""
    if not basis:
        return [] if all(F.is_zero(x) for x in v) else None
    M = transpose(basis)
    return solve(F, M, v)


def complement_in(F, sub, whole):
    """Vectors of `whole` completing a basis of span(sub) to span(whole).

    Returns (indices, vectors): positions into `whole` and the vectors
    themselves. span(sub) must lie inside span(whole).
    """
    picked = []
    current = list(sub)
    dim = span_dim(F, current)
    target = span_dim(F, whole)
    for idx, v in enumerate(whole):
        if dim == target:
            break
        trial = current + [v]
        d = span_dim(F, trial)
        if d > dim:
            picked.append(idx)
            current = trial
            dim = d
    return picked, [whole[i] for i in picked]


def intersect_spans(F, A, B, n):
    """Basis of span(A) meet span(B) inside F^n."""
    if not A or not B:
        return []
    # Solve a*A - b*B = 0; intersection vectors are a*A parts.
    M = transpose(list(A) + [[F.neg(x) for x in v] for v in B])
    ker = nullspace(F, M)
    out = []
    for w in ker:
        v = [F.zero] * n
        for coef, vec in zip(w[: len(A)], A):
            if not F.is_zero(coef):
                v = [F.add(x, F.mul(coef, y)) for x, y in zip(v, vec)]
        out.append(v)
    return row_reduce_basis(F, out)
