"""Rays of filtered complexes: telescopes, completed telescopes, inverse
telescopes with Milnor sequence verification, and two-filtration
subquotients.

Finite models: a ray C_0 -> C_1 -> ... -> C_{n-1} has telescope
Cone(id - f : (+)_{i<n-1} C_i -> (+)_{i<=n-1} C_i), which deformation
retracts onto C_{n-1} and therefore computes the colimit of the finite
diagram. An inverse system C_0 <- C_1 <- ... <- C_n is modelled by the
rectangular map id - i : prod_{p<=n} -> prod_{p<n}; its shifted cone
computes the limit of the finite diagram (every finite system satisfies
Mittag-Leffler, so lim^1 of the truncation vanishes; the Milnor sequence
is still verified term by term).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .complexes import (
    ChainMap,
    ComplexError,
    FilteredComplex,
    Generator,
    coeff_filtration,
    field_cohomology,
)
from .novikov import INF, NovikovRing


@dataclass
class OneRay:
    complexes: list
    maps: list  # maps[i] : complexes[i] -> complexes[i+1]
    policy: str = "stop"  # or "repeat"

    def __post_init__(self):
        if len(self.maps) != len(self.complexes) - 1:
            raise ComplexError("a ray on n complexes needs n-1 maps")
        for i, f in enumerate(self.maps):
            if f.src is not self.complexes[i] or f.dst is not self.complexes[i + 1]:
                raise ComplexError(f"map {i} does not connect C_{i} to C_{i+1}")
        if self.policy not in ("stop", "repeat"):
            raise ComplexError(f"unknown extension policy {self.policy!r}")


def telescope(ray):
    """Mapping cone of id - f on the direct sums; the finite model of the
    homotopy colimit. Target copies are t{i}:, source copies s{i}: (the
    latter shifted down by one in degree)."""
    cxs = ray.complexes
    ring = cxs[0].ring
    n = len(cxs)
    gens, diff = [], {}
    for i, cx in enumerate(cxs):
        for g in cx.generators:
            gens.append(Generator(f"t{i}:{g.label}", g.degree, g.filtration))
        for (s, t), c in cx.diff.items():
            diff[(f"t{i}:{s}", f"t{i}:{t}")] = c
    for i in range(n - 1):
        cx = cxs[i]
        for g in cx.generators:
            gens.append(
                Generator(f"s{i}:{g.label}", g.degree - 1, g.filtration)
            )
        for (s, t), c in cx.diff.items():
            diff[(f"s{i}:{s}", f"s{i}:{t}")] = ring.neg(c)
        for g in cx.generators:
            diff[(f"s{i}:{g.label}", f"t{i}:{g.label}")] = ring.one
        for (s, t), c in ray.maps[i].entries.items():
            key = (f"s{i}:{s}", f"t{i + 1}:{t}")
            diff[key] = ring.add(diff.get(key, ring.zero), ring.neg(c))
    diff = {k: v for k, v in diff.items() if not ring.is_zero(v)}
    return FilteredComplex(ring, gens, diff, check=False)


def colimit_cohomology(ray):
    """Cohomology of the colimit of the finite diagram, i.e. of the last
    complex."""
    return field_cohomology(ray.complexes[-1])


def induced_map_on_cohomology(f):
    """Per-degree matrices of H(f); None entries mark degrees where the
    image fails to be expressible (cannot happen for an actual chain map)."""
    F = f.ring
    Hs = field_cohomology(f.src)
    out = {}
    for d, (dim, reps) in Hs.items():
        if dim == 0:
            continue
        cols = []
        for rep in reps:
            img = f.apply(rep)
            coords = _class_coords(f.dst, img, d)
            if coords is None:
                out[d] = None
                break
            cols.append(coords)
        else:
            Hd = field_cohomology(f.dst).get(d, (0, []))
            rows = Hd[0]
            out[d] = [[cols[j][i] for j in range(len(cols))] for i in range(rows)]
    return out


def _class_coords(cx, elem, degree):
    from .complexes import class_coordinates

    if not elem:
        Hd = field_cohomology(cx).get(degree, (0, []))
        return [cx.ring.zero] * Hd[0]
    return class_coordinates(cx, elem)


def telescope_vs_colimit(ray):
    """Check that the inclusion of the last complex into the telescope is a
    quasi-isomorphism; returns (ok, dims of H(tel), dims of H(colim))."""
    tel = telescope(ray)
    last = len(ray.complexes) - 1
    cx = ray.complexes[last]
    entries = {
        (g.label, f"t{last}:{g.label}"): cx.ring.one for g in cx.generators
    }
    incl = ChainMap(cx, tel, entries, check=False)
    F = cx.ring
    Htel = {d: v[0] for d, v in field_cohomology(tel).items() if v[0]}
    Hcol = {d: v[0] for d, v in colimit_cohomology(ray).items() if v[0]}
    if Htel != Hcol:
        return False, Htel, Hcol
    induced = induced_map_on_cohomology(incl)
    for d, M in induced.items():
        if M is None:
            return False, Htel, Hcol
        if M and (len(M) != len(M[0]) or linalg.rank(F, M) != len(M)):
            return False, Htel, Hcol
    return True, Htel, Hcol


@dataclass
class AcyclicityCertificate:
    acyclic: bool
    reason: str
    per_step_gains: list
    steps_to_precision: dict  # start index -> number of steps needed


def completed_telescope_acyclicity(ray, r_growth, precision):
    """Acyclicity of the completed telescope at the given precision.

    The hypothesis is that composing enough ray maps increases the
    filtration beyond any bound. Once the composite out of every C_i gains
    at least `precision`, each class of C_i is homologous in the telescope
    to its composite image (the telescoping primitive), hence dies in the
    precision-N truncation of the completion. The check verifies the
    claimed per-step gains exactly and then accounts for the total gain,
    extending the ray formally under the 'repeat' policy.
    """
    gains = []
    for idx, f in enumerate(ray.maps):
        actual = f.filtration_gain()
        claimed = r_growth[idx] if idx < len(r_growth) else 0
        if actual < claimed:
            witness = _gain_witness(f, claimed)
            raise ComplexError(
                f"claimed gain {claimed} on map {idx} falsified by "
                f"generator {witness}"
            )
        gains.append(actual)
    steps = {}
    acyclic = True
    reason = "every class gains at least the precision"
    for i in range(len(ray.complexes)):
        total = 0
        count = 0
        for g in gains[i:]:
            if total >= precision:
                break
            total += g
            count += 1
        if total < precision:
            if ray.policy == "repeat" and gains and gains[-1] > 0:
                extra = -(-(precision - total) // gains[-1])  # ceil
                count += extra
                total += extra * gains[-1]
            else:
                acyclic = False
                reason = (
                    f"classes of C_{i} only gain {total} < {precision} "
                    "before the ray ends"
                )
                steps[i] = None
                continue
        steps[i] = count
    return AcyclicityCertificate(
        acyclic=acyclic,
        reason=reason if acyclic else reason,
        per_step_gains=gains,
        steps_to_precision=steps,
    )


def _gain_witness(f, claimed):
    for (s, t), c in f.entries.items():
        gain = (
            f.dst.by_label[t].filtration
            + coeff_filtration(f.ring, c)
            - f.src.by_label[s].filtration
        )
        if gain < claimed:
            return s
    return "?"


# -- inverse systems -------------------------------------------------------------


@dataclass
class InverseSystem:
    complexes: list  # C_0, C_1, ..., C_n
    maps: list  # maps[p] : C_{p+1} -> C_p

    def __post_init__(self):
        if len(self.maps) != len(self.complexes) - 1:
            raise ComplexError("a system on n complexes needs n-1 maps")
        for p, f in enumerate(self.maps):
            if f.src is not self.complexes[p + 1] or f.dst is not self.complexes[p]:
                raise ComplexError(f"map {p} does not connect C_{p+1} to C_{p}")


def inverse_telescope(sys):
    """Shifted cone of id - i on the finite products.

    Generators a{p}:g sit in the degree of g (the product part), b{p}:g one
    degree higher (the shifted cone part, p < n). d(a) = d(g) + (id-i)(g),
    d(b) = -d(g).
    """
    cxs = sys.complexes
    ring = cxs[0].ring
    n = len(cxs) - 1
    gens, diff = [], {}
    for p, cx in enumerate(cxs):
        for g in cx.generators:
            gens.append(Generator(f"a{p}:{g.label}", g.degree, g.filtration))
        for (s, t), c in cx.diff.items():
            diff[(f"a{p}:{s}", f"a{p}:{t}")] = c
    for p in range(n):
        cx = cxs[p]
        for g in cx.generators:
            gens.append(
                Generator(f"b{p}:{g.label}", g.degree + 1, g.filtration)
            )
        for (s, t), c in cx.diff.items():
            diff[(f"b{p}:{s}", f"b{p}:{t}")] = ring.neg(c)
        for g in cx.generators:
            diff[(f"a{p}:{g.label}", f"b{p}:{g.label}")] = ring.one
        for (s, t), c in sys.maps[p].entries.items():
            key = (f"a{p + 1}:{s}", f"b{p}:{t}")
            diff[key] = ring.add(diff.get(key, ring.zero), ring.neg(c))
    diff = {k: v for k, v in diff.items() if not ring.is_zero(v)}
    return FilteredComplex(ring, gens, diff, check=False)


def lim_and_lim1(F, spaces, maps_matrices):
    """Kernel and cokernel dimensions (and kernel basis) of the rectangular
    map id - i on a finite inverse system of vector spaces.

    spaces: list of dimensions [d_0..d_n]; maps_matrices[p]: matrix of the
    structure map V_{p+1} -> V_p.
    """
    n = len(spaces) - 1
    rows = sum(spaces[:n])
    cols = sum(spaces)
    offs_src = [sum(spaces[:p]) for p in range(len(spaces))]
    offs_dst = [sum(spaces[:p]) for p in range(n)]
    M = [[F.zero] * cols for _ in range(rows)]
    for p in range(n):
        for i in range(spaces[p]):
            M[offs_dst[p] + i][offs_src[p] + i] = F.one
        mat = maps_matrices[p]
        for i in range(spaces[p]):
            for j in range(spaces[p + 1]):
                if mat and not F.is_zero(mat[i][j]):
                    M[offs_dst[p] + i][offs_src[p + 1] + j] = F.neg(mat[i][j])
    ker = linalg.nullspace(F, M, cols=cols) if rows else [
        linalg.unit_vector(F, cols, i) for i in range(cols)
    ]
    rk = linalg.rank(F, M)
    coker_dim = rows - rk
    return ker, coker_dim


def milnor_verification(sys):
    """Verify 0 -> lim^1 H^{j-1} -> H^j(tel<-) -> lim H^j -> 0 per degree.

    Returns {degree: {"h_tel", "lim", "lim1_prev", "exact"}}.
    """
    F = sys.complexes[0].ring
    if isinstance(F, NovikovRing):
        raise ComplexError("Milnor verification runs over a field")
    tel = inverse_telescope(sys)
    Htel = field_cohomology(tel)
    Hs = [field_cohomology(cx) for cx in sys.complexes]
    degrees = sorted(
        {d for H in Hs for d in H} | set(Htel),
    )
    induced = [induced_map_on_cohomology(f) for f in sys.maps]
    report = {}
    for d in degrees:
        dims = [H.get(d, (0, []))[0] for H in Hs]
        mats = [induced[p].get(d, []) or [] for p in range(len(sys.maps))]
        ker, coker_unused = lim_and_lim1(F, dims, mats)
        lim_dim = len(ker)
        dims_prev = [H.get(d - 1, (0, []))[0] for H in Hs]
        mats_prev = [induced[p].get(d - 1, []) or [] for p in range(len(sys.maps))]
        _, lim1_prev = lim_and_lim1(F, dims_prev, mats_prev)
        htel_dim, htel_reps = Htel.get(d, (0, []))
        # The projection to the product part, in H-class coordinates.
        pi_rows = []
        ok = True
        for rep in htel_reps:
            vec = []
            for p, cx in enumerate(sys.complexes):
                comp = {
                    lbl[len(f"a{p}:"):]: c
                    for lbl, c in rep.items()
                    if lbl.startswith(f"a{p}:")
                }
                coords = _class_coords(cx, comp, d)
                if coords is None:
                    ok = False
                    coords = [F.zero] * dims[p]
                vec.extend(coords)
            pi_rows.append(vec)
        image_dim = linalg.span_dim(F, pi_rows) if pi_rows else 0
        # Exactness: image of pi = lim (as subspaces), ker pi has lim^1 size.
        lim_basis = ker
        image_in_lim = all(linalg.in_span(F, lim_basis, v) for v in pi_rows)
        surjective = image_dim == lim_dim
        kernel_dim = htel_dim - image_dim
        exact = (
            ok
            and image_in_lim
            and surjective
            and kernel_dim == lim1_prev
        )
        if htel_dim or lim_dim or lim1_prev:
            report[d] = {
                "h_tel": htel_dim,
                "lim": lim_dim,
                "lim1_prev": lim1_prev,
                "exact": exact,
            }
    return report


# -- two-filtration subquotients ---------------------------------------------------


def check_second_filtration(cx, fvals):
    """fvals: {label: rational}; must be non-decreasing along d."""
    ring = cx.ring
    for (s, t), c in cx.diff.items():
        if fvals[t] + coeff_filtration(ring, c) < fvals[s]:
            raise ComplexError(
                f"second filtration decreases along {s}->{t}"
            )


def subquotient_truncation(cx, fvals, p):
    """Generators of degree < p with second-filtration value >= p; the
    induced differential. A subquotient: degrees >= p are projected away,
    second filtration < p is not included."""
    check_second_filtration(cx, fvals)
    gens = [
        g
        for g in cx.generators
        if g.degree < p and fvals[g.label] >= p
    ]
    keep = {g.label for g in gens}
    diff = {
        (s, t): c
        for (s, t), c in cx.diff.items()
        if s in keep and t in keep
    }
    return FilteredComplex(cx.ring, gens, diff, check=False)


def truncation_comparison_map(cx, fvals, p, q):
    """The natural map sigma_{<p} F_{>=p} -> sigma_{<q} F_{>=q} for p >= q:
    identity on common generators (inclusion followed by projection)."""
    if p < q:
        raise ComplexError("comparison map needs p >= q")
    src = subquotient_truncation(cx, fvals, p)
    dst = subquotient_truncation(cx, fvals, q)
    entries = {
        (g.label, g.label): cx.ring.one
        for g in src.generators
        if g.label in dst.by_label
    }
    return ChainMap(src, dst, entries, check=False)


def subray_quasi_iso_check(ray, subray):
    """Landing hypothesis plus quasi-isomorphism of telescopes.

    subray complexes must be spanned by subsets of the ray's generators and
    the inclusion squares must commute. For each generator of each subray
    complex, some composite of ray maps must land back inside the subray;
    then tel(sub) -> tel(ray) is checked to be a quasi-isomorphism directly.
    """
    F = ray.complexes[0].ring
    n = len(ray.complexes)
    landing = {}
    for i, sub in enumerate(subray.complexes):
        for g in sub.generators:
            if g.label not in ray.complexes[i].by_label:
                raise ComplexError(
                    f"subray generator {g.label} missing from ray complex {i}"
                )
        for g in sub.generators:
            elem = {g.label: F.one}
            found = None
            cur = elem
            for steps in range(0, n - i):
                target = subray.complexes[i + steps] if i + steps < len(
                    subray.complexes
                ) else None
                if target is not None and all(
                    lbl in target.by_label for lbl in cur
                ):
                    found = steps
                    break
                if i + steps < n - 1:
                    cur = ray.maps[i + steps].apply(cur)
            if found is None:
                raise ComplexError(
                    f"landing hypothesis fails for generator {g.label} of "
                    f"complex {i}"
                )
            landing[(i, g.label)] = found
    tel_sub = telescope(subray)
    tel_ray = telescope(ray)
    entries = {}
    for g in tel_sub.generators:
        if g.label in tel_ray.by_label:
            entries[(g.label, g.label)] = F.one
    incl = ChainMap(tel_sub, tel_ray, entries, check=True)
    H1 = {d: v[0] for d, v in field_cohomology(tel_sub).items() if v[0]}
    H2 = {d: v[0] for d, v in field_cohomology(tel_ray).items() if v[0]}
    ok = H1 == H2
    if ok:
        for d, M in induced_map_on_cohomology(incl).items():
            if M is None or (M and linalg.rank(F, M) != len(M)):
                ok = False
                break
    return ok, landing
