"""Deformed differentials on windowed polyvector models, Maurer-Cartan
verification, completed cohomology, and finite Novikov algebras with their
generalized-eigenspace analysis.

A deforming element beta is a list of pairs (n, PolyVector): the element
sum_n q^n * B_n. The deformed differential on the windowed model is
x |-> d(x) + [beta, x] with the Schouten bracket.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    ComplexError,
    FilteredComplex,
    Generator,
    expand_over_base_field,
    field_cohomology,
    truncate_below_filtration,
)
from .linalg import solve as field_solve
from .novikov import NovikovRing
from .polyvec import (
    PolyVector,
    _boxes,
    _box_points,
    _gen_label,
    eroded_windows,
    _subsets,
    pv_add,
    pv_term,
    pv_weighted_degree,
    pv_zero,
    schouten_bracket,
)
from .smith import kernel_basis, solve_linear


class QuantumError(ValueError):
    pass


# -- DGLA models on a windowed torus ----------------------------------------


@dataclass
class DGLAModel:
    """Polyvector fields on a torus restricted to an exponent window, with
    the Schouten bracket and an optional intrinsic differential given as a
    map generator-polyvector -> polyvector (None means zero)."""

    laurent: object  # LaurentRing
    coeff: NovikovRing
    base_box: list
    var_degrees: list
    xi_degrees: list
    differential: object = None

    def term_degree(self, n, pv):
        """Cohomological degree of q^n * pv, or None if inhomogeneous."""
        degs = pv_weighted_degree(pv, self.var_degrees, self.xi_degrees)
        if len(degs) != 1:
            return None
        return next(iter(degs)) + Fraction(n) * self.coeff.a0


def beta_degree(model, beta):
    degs = {model.term_degree(n, pv) for n, pv in beta if not pv.is_zero()}
    if not degs:
        return Fraction(2)  # beta = 0 passes any degree requirement
    return degs.pop() if len(degs) == 1 else None


def beta_filtration(model, beta):
    ns = [n for n, pv in beta if not pv.is_zero()]
    return min(ns) if ns else None


def _apply_d(model, pv):
    if model.differential is None:
        return pv_zero(model.laurent)
    return model.differential(pv)


def maurer_cartan_check(model, beta):
    """True iff d(beta) + (1/2)[beta, beta] = 0.

    Requires beta homogeneous of degree 2 with q-filtration >= 1. In
    characteristic 2 the bracket square [beta, beta] must itself vanish
    (there is no 1/2); otherwise QuantumError.
    """
    R = model.laurent
    F = R.field
    if beta_degree(model, beta) not in (Fraction(2),):
        raise QuantumError("deforming element must be homogeneous of degree 2")
    filt = beta_filtration(model, beta)
    if filt is not None and filt < 1:
        raise QuantumError("deforming element must have q-filtration >= 1")
    # collect q^m -> polyvector for d(beta) + (1/2)[beta, beta]
    acc = {}

    def add(m, pv):
        cur = acc.get(m, pv_zero(R))
        s = pv_add(cur, pv)
        if s.is_zero():
            acc.pop(m, None)
        else:
            acc[m] = s

    for n, pv in beta:
        add(n, _apply_d(model, pv))
    char = F.characteristic
    for n1, p1 in beta:
        for n2, p2 in beta:
            br = schouten_bracket(p1, p2)
            if br.is_zero():
                continue
            if char == 2:
                raise QuantumError(
                    "[beta, beta] != 0 in characteristic 2: "
                    "Maurer-Cartan sum is undefined"
                )
            half = F.div(F.one, F.from_int(2))
            add(n1 + n2, _scale_pv(R, half, br))
    return not acc


def _scale_pv(R, c, pv):
    return PolyVector(R, {S: R.scalar_mul(c, f) for S, f in pv.parts.items()})


def deformed_differential(model, beta, q_filtration="exponent",
                          window_points=None):
    """Windowed complex with differential x -> d(x) + [beta, x].

    Requires maurer_cartan_check(model, beta). Generators are the monomial
    polyvectors z^alpha xi_S with alpha in a level-shrunk exponent window,
    so no differential entry leaves the window. The window is the model's
    base box by default; ``window_points`` supplies an arbitrary
    lattice-point set instead (shrunk per xi-subset by erosion, which
    allows windows aligned with the shifts of the differential). Generator
    filtration is 0; the q-filtration is the exponent filtration of the
    Novikov coefficients.
    """
    if not maurer_cartan_check(model, beta):
        raise QuantumError("deforming element fails the Maurer-Cartan equation")
    R = model.laurent
    Lam = model.coeff
    n = R.nvars
    # window shrink: spread of the z-partials of beta's parts
    probe = []
    for _, pv in beta:
        for S, f in pv.parts.items():
            for i in range(n):
                probe.append(R.partial(f, i))
    if window_points is not None:
        if model.differential is not None or any(
            T for _, pv in beta for T in pv.parts
        ):
            raise QuantumError(
                "point windows require a function-valued beta and no "
                "intrinsic differential"
            )
        # per-variable shifts: removing xi_i multiplies by a term of the
        # i-th partial, so the window of xi_S is the base set eroded by
        # the shifts of partial i for every i in S
        var_shifts = []
        for i in range(n):
            E = set()
            for _, pv in beta:
                for _, f in pv.parts.items():
                    E.update(R.partial(f, i).terms)
            var_shifts.append(E)
        points = {
            S: sorted(win)
            for S, win in eroded_windows(window_points, var_shifts, n).items()
        }
    else:
        boxes = _boxes(probe, model.base_box, n, n)
        points = {
            S: ([] if any(lo > hi for lo, hi in boxes[len(S)]) else
                list(_box_points(boxes[len(S)])))
            for S in _subsets(n)
        }
    gens = []
    index = set()
    for S in _subsets(n):
        for alpha in points[S]:
            deg = sum(
                Fraction(w) * a
                for w, a in zip(model.var_degrees, alpha)
            ) + sum(Fraction(model.xi_degrees[i]) for i in S)
            gens.append(Generator(_gen_label(alpha, S), deg, Fraction(0)))
            index.add((alpha, S))
    diff = {}

    def record(src, e, T, c, qexp):
        if (e, T) not in index:
            raise QuantumError(
                "differential leaves the window; enlarge the box"
            )
        tgt = _gen_label(e, T)
        val = Lam.scalar_mul(c, Lam.monomial(qexp))
        key = (src, tgt)
        prev = diff.get(key)
        diff[key] = val if prev is None else Lam.add(prev, val)

    for alpha, S in sorted(index):
        src = _gen_label(alpha, S)
        g = pv_term(R, R.monomial(alpha), S)
        img0 = _apply_d(model, g)
        for T, f in img0.parts.items():
            for e, c in f.terms.items():
                record(src, e, T, c, 0)
        for m, pv in beta:
            img = schouten_bracket(pv, g)
            for T, f in img.parts.items():
                for e, c in f.terms.items():
                    record(src, e, T, c, m)
    diff = {k: v for k, v in diff.items() if not Lam.is_zero(v)}
    return FilteredComplex(Lam, gens, diff, check=False)


# -- completed cohomology ----------------------------------------------------


@dataclass
class CompletedCohomology:
    dims: dict  # degree -> dimension over the base field, within the window
    stable: bool
    precision: int
    degree_window: tuple


def completed_cohomology(cx, precision, degree_window=None, q_window=None):
    """Cohomology of the filtration-(< N) truncation of the completed
    complex, reported per degree within degree_window (edge degrees of the
    q-expansion window carry artifacts and should be excluded by the
    caller). stable is True when the answer agrees with precision N/2."""

    def run(N):
        J = q_window if q_window is not None else 2 * N + 2
        exp = expand_over_base_field(cx, (-J, J))
        tr = truncate_below_filtration(exp, N)
        H = field_cohomology(tr)
        dims = {}
        for d, (dim, _) in H.items():
            if degree_window is not None and not (
                degree_window[0] <= d <= degree_window[1]
            ):
                continue
            if dim:
                dims[d] = dim
        return dims

    full = run(precision)
    half = run(max(1, precision // 2))
    return CompletedCohomology(
        dims=full,
        stable=(full == half),
        precision=precision,
        degree_window=tuple(degree_window) if degree_window else None,
    )


def is_nullhomologous(cx, elem):
    """Whether elem lies in the image of the differential, by solving
    d x = elem (over the Novikov ring via Smith normal form, over a field
    by Gaussian elimination)."""
    M, gens = cx.full_matrix()
    labels = [g.label for g in gens]
    pos = {lbl: i for i, lbl in enumerate(labels)}
    ring = cx.ring
    b = [ring.zero] * len(gens)
    for lbl, c in elem.items():
        b[pos[lbl]] = ring.coerce(c)
    if isinstance(ring, NovikovRing):
        return solve_linear(ring, M, b) is not None
    return field_solve(ring, M, b) is not None


# -- finite algebras over the Novikov ring -----------------------------------


class QuantumAlgebra:
    """A free finite-rank algebra over a Novikov ring: basis labels,
    structure constants table[(i, j)][k] in the ring, a unit index, and
    optional cohomological degrees for the basis."""

    def __init__(self, ring, labels, table, unit_index=0, degrees=None,
                 check=True):
        self.ring = ring
        self.labels = list(labels)
        self.n = len(self.labels)
        self.table = {
            k: {i: ring.coerce(c) for i, c in row.items() if not ring.is_zero(ring.coerce(c))}
            for k, row in table.items()
        }
        self.unit_index = unit_index
        self.degrees = list(degrees) if degrees is not None else None
        if check:
            self.verify()

    # elements are dense coordinate vectors over the ring
    def zero_vec(self):
        return [self.ring.zero] * self.n

    def basis_vec(self, i):
        v = self.zero_vec()
        v[i] = self.ring.one
        return v

    def unit(self):
        return self.basis_vec(self.unit_index)

    def add(self, u, v):
        return [self.ring.add(a, b) for a, b in zip(u, v)]

    def sub(self, u, v):
        return [self.ring.sub(a, b) for a, b in zip(u, v)]

    def scalar(self, c, v):
        return [self.ring.mul(c, a) for a in v]

    def multiply(self, u, v):
        ring = self.ring
        out = self.zero_vec()
        for i, a in enumerate(u):
            if ring.is_zero(a):
                continue
            for j, b in enumerate(v):
                if ring.is_zero(b):
                    continue
                ab = ring.mul(a, b)
                for k, c in self.table.get((i, j), {}).items():
                    out[k] = ring.add(out[k], ring.mul(ab, c))
        return out

    def power(self, v, m):
        out = self.unit()
        for _ in range(m):
            out = self.multiply(out, v)
        return out

    def eq(self, u, v):
        return all(self.ring.eq(a, b) for a, b in zip(u, v))

    def is_zero_vec(self, v):
        return all(self.ring.is_zero(a) for a in v)

    def operator_matrix(self, v):
        """Matrix of left multiplication by v on the basis."""
        cols = [self.multiply(v, self.basis_vec(j)) for j in range(self.n)]
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def element_filtration(self, v, weights=None):
        """Minimal q-filtration over the coordinates; ``weights`` adds a
        per-basis-element offset (a filtration weight for each label)."""
        vals = []
        for j, a in enumerate(v):
            if self.ring.is_zero(a):
                continue
            f = self.ring.filtration(a)
            if weights is not None:
                f += weights[j]
            vals.append(f)
        return min(vals) if vals else None

    def verify(self):
        ring = self.ring
        e = self.unit()
        for i in range(self.n):
            b = self.basis_vec(i)
            if not self.eq(self.multiply(e, b), b) or not self.eq(
                self.multiply(b, e), b
            ):
                raise QuantumError(f"unit fails on basis element {i}")
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    bi, bj, bk = (
                        self.basis_vec(i),
                        self.basis_vec(j),
                        self.basis_vec(k),
                    )
                    lhs = self.multiply(self.multiply(bi, bj), bk)
                    rhs = self.multiply(bi, self.multiply(bj, bk))
                    if not self.eq(lhs, rhs):
                        raise QuantumError(
                            f"associativity fails at ({i},{j},{k})"
                        )
        if self.degrees is not None:
            a0 = ring.a0
            for (i, j), row in self.table.items():
                want = self.degrees[i] + self.degrees[j]
                for k, c in row.items():
                    for m in c.terms:
                        if self.degrees[k] + m * a0 != want:
                            raise QuantumError(
                                f"structure constant ({i},{j})->{k} "
                                "breaks the grading"
                            )

    def describe(self, v):
        bits = []
        for i, a in enumerate(v):
            if not self.ring.is_zero(a):
                bits.append(f"({a!r})*{self.labels[i]}")
        return " + ".join(bits) if bits else "0"


def algebra_from_multiplication_table(ring, laurent, labels, smons, table,
                                      q_var=0, degrees=None):
    """Build a QuantumAlgebra from a Groebner multiplication table whose
    coefficients are polynomials in the q-variable of the Laurent ring."""
    conv = {}
    for (i, j), row in table.items():
        out = {}
        for k, c in row.items():
            if hasattr(c, "terms"):  # LaurentPoly in the free variable
                elem = ring.zero
                for e, cc in c.terms.items():
                    elem = ring.add(
                        elem, ring.scalar_mul(cc, ring.monomial(e[q_var]))
                    )
            else:
                elem = ring.scalar_mul(c, ring.one)
            out[k] = elem
        conv[(i, j)] = out
    return QuantumAlgebra(ring, labels, conv, degrees=degrees)


def geometric_series_inverse(algebra, c, x, precision):
    """Inverse of (c - x) in the completed algebra: the truncated series
    c^{-1} sum_j (c^{-1} x)^{*j}, for a scalar unit c and an element x of
    strictly positive q-filtration. Verifies that (c - x) * result differs
    from 1 only in filtration >= precision."""
    ring = algebra.ring
    F = ring.base
    c = F.coerce(c)
    if F.is_zero(c):
        raise QuantumError("scalar must be a unit")
    filt = algebra.element_filtration(x)
    if filt is not None and filt <= 0:
        raise QuantumError(
            "element must have strictly positive q-filtration"
        )
    cinv = F.inv(c)
    scaled = algebra.scalar(ring.scalar_mul(cinv, ring.one), x)
    total = algebra.unit()
    term = algebra.unit()
    step = filt if filt is not None else precision
    j = 1
    while j * step < precision and not algebra.is_zero_vec(term):
        term = algebra.multiply(term, scaled)
        total = algebra.add(total, term)
        j += 1
    result = algebra.scalar(ring.scalar_mul(cinv, ring.one), total)
    # verification: (c - x) * result = 1 + (filtration >= precision)
    cvec = algebra.scalar(ring.scalar_mul(c, ring.one), algebra.unit())
    err = algebra.sub(
        algebra.multiply(algebra.sub(cvec, x), result), algebra.unit()
    )
    bad = algebra.element_filtration(err)
    if bad is not None and bad < precision:
        raise QuantumError(
            f"series verification failed: error at filtration {bad}"
        )
    return result


def monomial_unit_inverse(algebra, scalar, qexp, x, precision, weights=None):
    """Inverse of (scalar * q^qexp - x) in the completed algebra, where the
    completion filtration is the q-filtration offset by per-basis weights.

    The unit part is a single Novikov monomial; x must have strictly
    positive weighted filtration (otherwise the series does not converge
    and QuantumError is raised). Verifies that (u - x) * result differs
    from the unit element only in weighted filtration >= precision."""
    ring = algebra.ring
    F = ring.base
    scalar = F.coerce(scalar)
    if F.is_zero(scalar):
        raise QuantumError("scalar must be a unit")
    u = ring.monomial(qexp, scalar)
    uinv = ring.monomial(-qexp, F.inv(scalar))
    filt = algebra.element_filtration(x, weights)
    if filt is None:
        return algebra.scalar(uinv, algebra.unit())
    step = filt - qexp  # weighted filtration of u^{-1} x
    if step <= 0:
        raise QuantumError(
            "element must have strictly positive weighted filtration "
            "relative to the unit part"
        )
    scaled = algebra.scalar(uinv, x)
    total = algebra.unit()
    term = algebra.unit()
    j = 1
    while j * step < precision and not algebra.is_zero_vec(term):
        term = algebra.multiply(term, scaled)
        total = algebra.add(total, term)
        j += 1
    result = algebra.scalar(uinv, total)
    uvec = algebra.scalar(u, algebra.unit())
    err = algebra.sub(
        algebra.multiply(algebra.sub(uvec, x), result), algebra.unit()
    )
    bad = algebra.element_filtration(err, weights)
    if bad is not None and bad < precision:
        raise QuantumError(
            f"series verification failed: error at filtration {bad}"
        )
    return result


def zero_generalized_eigenspace(ring, op, rank=None):
    """Saturated basis of ker(op^r) over the Novikov ring (r defaults to
    the size of the matrix)."""
    n = len(op)
    if rank is None:
        rank = n
    P = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
    for _ in range(rank):
        P = [
            [
                _dot(ring, P[i], [op[t][j] for t in range(n)])
                for j in range(n)
            ]
            for i in range(n)
        ]
    return kernel_basis(ring, P, cols=n)


def _dot(ring, row, col):
    s = ring.zero
    for a, b in zip(row, col):
        s = ring.add(s, ring.mul(a, b))
    return s


def intersect_eigenspaces(ring, ops, rank=None):
    """Saturated basis of the intersection of the zero generalized
    eigenspaces of several operators: kernel of the stacked powers."""
    if not ops:
        raise QuantumError("need at least one operator")
    n = len(ops[0])
    if rank is None:
        rank = n
    stacked = []
    for op in ops:
        P = [
            [ring.one if i == j else ring.zero for j in range(n)]
            for i in range(n)
        ]
        for _ in range(rank):
            P = [
                [
                    _dot(ring, P[i], [op[t][j] for t in range(n)])
                    for j in range(n)
                ]
                for i in range(n)
            ]
        stacked.extend(P)
    return kernel_basis(ring, stacked, cols=n)


@dataclass
class IdempotentResult:
    idempotent: object  # coordinate vector, or None on failure
    eigenspace_rank: int
    reason: str


def idempotent_for_eigenspace(algebra, ops, rank=None):
    """An idempotent a with a * e = e for every e in the intersection of
    the zero generalized eigenspaces of ops (so a generates that ideal),
    found by solving a Novikov-linear system; reports failure when no
    solution exists over the ring."""
    ring = algebra.ring
    basis = intersect_eigenspaces(ring, ops, rank)
    r = len(basis)
    if r == 0:
        return IdempotentResult(algebra.zero_vec(), 0, "zero eigenspace")
    # unknowns: coefficients c_j of a = sum c_j e_j; constraints
    # sum_j c_j (e_j * e_i) = e_i for each i, expanded in algebra coords.
    prods = [[algebra.multiply(ej, ei) for ei in basis] for ej in basis]
    rows = []
    rhs = []
    for i in range(r):
        for t in range(algebra.n):
            rows.append([prods[j][i][t] for j in range(r)])
            rhs.append(basis[i][t])
    sol = solve_linear(ring, rows, rhs)
    if sol is None:
        return IdempotentResult(
            None, r, "no unit of the eigenspace ideal exists over the ring"
        )
    a = algebra.zero_vec()
    for j in range(r):
        a = algebra.add(a, algebra.scalar(sol[j], basis[j]))
    if not algebra.eq(algebra.multiply(a, a), a):
        return IdempotentResult(None, r, "solution is not idempotent")
    return IdempotentResult(a, r, "ok")


# -- hypersurface relation factorization --------------------------------------


def fano_relation_factorization(n, a, i):
    """Check the identity

        H^{n+1} - q^i H^{a-1}
            = H^{a-1} * prod over m-th roots of unity zeta of (H - zeta q^{i/m})

    with m = n + 2 - a, by expanding the right-hand side over the m-th
    cyclotomic field with the q-generator refined so q^{i/m} is an integer
    power (q = q'^m). Returns True when the expansion matches exactly."""
    from .fields import QQ as _QQ, CyclotomicField

    m = n + 2 - a
    if m < 1:
        raise QuantumError("need a <= n + 1")
    F = _QQ if m <= 2 else CyclotomicField(m)
    ring = make_refined_q_ring(F, Fraction(1, m))
    # polynomials in H: list of NovikovElement coefficients, low degree first
    def pmul(p1, p2):
        out = [ring.zero] * (len(p1) + len(p2) - 1)
        for s, c1 in enumerate(p1):
            for t, c2 in enumerate(p2):
                out[s + t] = ring.add(out[s + t], ring.mul(c1, c2))
        return out

    if m <= 2:
        roots = [F.from_int(1)] if m == 1 else [F.from_int(1), F.from_int(-1)]
    else:
        roots = [F.zeta(j) for j in range(m)]
    rhs = [ring.one]
    for z in roots:
        # (H - zeta * q'^i)
        rhs = pmul(rhs, [ring.neg(ring.monomial(i, z)), ring.one])
    rhs = [ring.zero] * (a - 1) + rhs  # multiply by H^{a-1}
    lhs = [ring.zero] * (n + 2)
    lhs[n + 1] = ring.one
    lhs[a - 1] = ring.neg(ring.monomial(i * m))  # q^i = (q')^{i m}
    size = max(len(lhs), len(rhs))
    lhs += [ring.zero] * (size - len(lhs))
    rhs += [ring.zero] * (size - len(rhs))
    return all(ring.eq(x, y) for x, y in zip(lhs, rhs))


def make_refined_q_ring(field, generator):
    """Novikov ring whose q-variable has grade-generator `generator`."""
    from .novikov import make_novikov_ring

    return make_novikov_ring([Fraction(generator)], field)
