"""Command-line example runner: reproduces the worked computations and the
randomized cross-validation suites, emitting pass/fail reports.

Exit codes: 0 all checks pass, 1 some check fails, 2 usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction

from . import models
from .complexes import expand_over_base_field, field_cohomology
from .fields import QQ, PrimeField, field_from_spec
from .polyvec import PolyVector, pv_add, pv_scalar, pv_sub, pv_wedge, schouten_bracket
from .quantum import completed_cohomology, is_nullhomologous
from .randomized import (
    random_filtered_complex,
    random_gain_ray,
    random_interior_point,
    random_inverse_system,
    random_laurent_matrix,
    random_polyvector,
    random_ray,
    random_second_filtration,
)
from .reports import Report, emit_report
from .laurent import LaurentRing
from .novikov import NovikovRing
from .smith import module_cohomology, smith_normal_form, verify_smith
from .spectral import cross_check_einfinity, degeneration_page, spectral_sequence
from .telescope import (
    completed_telescope_acyclicity,
    milnor_verification,
    subquotient_truncation,
    telescope_vs_colimit,
)
from .toric import (
    DelzantPolytope,
    enumerate_orbit_families,
    kcrit_rescaling,
    orbit_actions,
    orbit_indices,
    radius_bounds,
    sigma_crit,
    weights_at_point,
)


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def _module_summary(inv):
    return (
        f"free rank {inv.free_rank}, torsion {len(inv.torsion)}"
    )


def _s2_basis_check(cx, free_reps):
    """Degrees of the classes 1 and qz, plus whether they form a basis of
    the free part (unimodular coordinate matrix)."""
    from .smith import class_coordinates_module, element_degree

    L = cx.ring
    one = {"z0": L.one}
    qz = {"z1": L.q}
    degs = sorted(element_degree(cx, e) for e in (one, qz))
    C = class_coordinates_module(cx, [one, qz], free_reps)
    if C is None or len(C) != 2:
        return degs, False
    det = L.sub(L.mul(C[0][0], C[1][1]), L.mul(C[0][1], C[1][0]))
    return degs, L.is_unit(det)


# -- individual examples ------------------------------------------------------


def run_s2_point(rep, field, precision, window):
    J = window if window is not None else 12
    N = precision if precision is not None else 20
    with _Timer() as t:
        cx = models.s2_one_point(field, J)
        inv, reps = module_cohomology(cx)
        degs, basis_ok = _s2_basis_check(cx, reps)
    rep.add("module cohomology", "free rank 2, torsion 0",
            _module_summary(inv),
            inv.free_rank == 2 and not inv.torsion,
            window=J, seconds=t.seconds)
    rep.add("basis 1, qz in degrees [0, 2]",
            "[0, 2] and unimodular coordinates", degs,
            degs == [0, 2] and basis_ok, window=J)
    with _Timer() as t:
        cx2 = models.s2_one_point(field, 2 * J)
        inv2, reps2 = module_cohomology(cx2)
        degs2, basis2_ok = _s2_basis_check(cx2, reps2)
    rep.add("window-doubling stability", "same basis at doubled window",
            degs2, inv2.free_rank == 2 and degs2 == [0, 2] and basis2_ok,
            window=2 * J, seconds=t.seconds)
    with _Timer() as t:
        ccx, certs = models.s2_completion_primitives(field, precision=N)
        prims_ok = all(models.verify_primitive(ccx, c) for c in certs)
    rep.add("completion primitives", "d(primitive) = class + O(q^N)",
            "verified" if prims_ok else "failed", prims_ok,
            precision=N, seconds=t.seconds)
    with _Timer() as t:
        comp = completed_cohomology(ccx, N, degree_window=(-4, 4))
    rep.add("completed cohomology", "0 (stable)",
            f"{comp.dims} (stable={comp.stable})",
            comp.dims == {} and comp.stable,
            precision=N, window="degrees [-4, 4]", seconds=t.seconds)


def run_s2_two_points(rep, field, precision, window):
    J = window if window is not None else 12
    with _Timer() as t:
        cx = models.s2_two_point(field, J)
        inv, reps = module_cohomology(cx)
    rep.add("module cohomology", "free rank 2, torsion 0",
            _module_summary(inv),
            inv.free_rank == 2 and not inv.torsion,
            window=J, seconds=t.seconds)
    with _Timer() as t:
        L = cx.ring
        rel = {"x2": L.one, "x0": L.neg(L.one)}
        null = is_nullhomologous(cx, rel)
    rep.add("relation x^2 - 1", "nullhomologous", str(null), null,
            window=J, seconds=t.seconds)
    with _Timer() as t:
        bc = models.s2_base_change(field, J)
        ok = models.verify_base_change(bc)
    rep.add("base-change comparison", "exact matrix identity",
            "verified" if ok else "failed", ok, window=J,
            seconds=t.seconds)


def _run_toric(rep, poly, field, expected_rank, radii, ss_window):
    with _Timer() as t:
        jac = models.toric_jacobian(poly, field)
    rep.add("Jacobian ring dimension", expected_rank, jac.rank,
            jac.rank == expected_rank, seconds=t.seconds)
    for radius in radii:
        with _Timer() as t:
            cx = models.toric_deformed_complex(poly, field, radius=radius)
            inv, _ = module_cohomology(cx)
        rep.add(f"deformed cohomology (radius {radius})",
                f"free rank {expected_rank}, torsion 0",
                _module_summary(inv),
                inv.free_rank == expected_rank and not inv.torsion,
                window=f"radius {radius}", seconds=t.seconds)
    if ss_window is None:
        return
    with _Timer() as t:
        cx = models.toric_deformed_complex(poly, field, radius=radii[0])
        exp = expand_over_base_field(cx, ss_window)
        pages = spectral_sequence(exp)
        degen = degeneration_page(pages)
        interior = pages[-1].rank_at_filtration(0)
    rep.add("spectral sequence degeneration", "page 2", degen,
            degen == 2, window=str(ss_window), seconds=t.seconds)
    rep.add("E_2 rank at interior column", expected_rank, interior,
            interior == expected_rank, window=str(ss_window))


def run_toric_cp1(rep, field, precision, window):
    poly = models.cp1_polytope()
    ss_window = window if window is not None else (-1, 2)
    _run_toric(rep, poly, field, 2, (2, 4), ss_window)


def run_toric_cp2(rep, field, precision, window):
    poly = models.cp2_polytope()
    ss_window = window if window is not None else (-1, 2)
    _run_toric(rep, poly, field, 3, (1, 2), ss_window)


def run_quadric(rep, field, precision, window):
    N = precision if precision is not None else 12
    with _Timer() as t:
        qm = models.quadric_model(QQ)
    rep.add("ideal reduction (char 0)", "equivalent to reduced basis",
            "equivalent" if qm.ideals_equivalent else "inequivalent",
            qm.ideals_equivalent, seconds=t.seconds)
    rep.add("quotient rank", 3, qm.rank, qm.rank == 3)
    fields_to_run = [field] if field.characteristic == 2 else [
        field, PrimeField(2)
    ]
    for F in fields_to_run:
        expected = 3 if F.characteristic == 2 else 0
        with _Timer() as t:
            comp = models.quadric_completed_rank(F, precision=N)
        rep.add(f"completed rank (char {F.characteristic})", expected,
                comp.rank, comp.rank == expected, precision=N,
                seconds=t.seconds)


FANO_CASES = ((2, 2, 1, 1), (3, 3, 2, 4), (3, 3, 1, 2))


def run_fano(rep, field, precision, window):
    for n, a, i, expected in FANO_CASES:
        with _Timer() as t:
            fc = models.fano_completed_module(n, a, i, field)
        case = f"(n,a,i)=({n},{a},{i})"
        rep.add(f"{case} factorization", "verified by expansion",
                "verified" if fc.factorization_checked else "failed",
                fc.factorization_checked, seconds=t.seconds)
        if n + 2 - a > i:
            cert = (fc.relation_in_ideal and fc.base_in_ideal
                    and fc.step_in_ideal)
            rep.add(f"{case} vanishing certificates",
                    "relation, base, and step in the ideal",
                    "verified" if cert else "failed", cert)
        else:
            rep.add(f"{case} bounded grading",
                    "all generator degrees nonnegative",
                    "verified" if fc.grading_nonnegative else "failed",
                    fc.grading_nonnegative)
        rep.add(f"{case} completed rank", expected, fc.rank,
                fc.rank == expected)


def run_sigma_crit_table(rep, field, precision, window):
    for ws, expected in (((4,), Fraction(1, 2)), ((2, 2), Fraction(0))):
        s, _ = sigma_crit(ws)
        rep.add(f"sigma_crit{ws}", expected, s, s == expected)
    polys = [
        models.cp1_polytope(),
        models.cp2_polytope(),
        DelzantPolytope([(1, 0), (-1, 0), (0, 1), (0, -1)], 1),
    ]
    rng = random.Random(2024)
    with _Timer() as t:
        bad = 0
        for poly in polys:
            for _ in range(100):
                p = random_interior_point(rng, poly)
                s1, _ = kcrit_rescaling(poly, p)
                s2, _ = sigma_crit(weights_at_point(poly, p))
                if s1 != s2:
                    bad += 1
    rep.add("rescaling vs weight formula", "equal on 300 interior points",
            f"{bad} mismatches", bad == 0, seconds=t.seconds)
    R = Fraction(1, 10**7)
    tol = Fraction(1, 10**6)
    with _Timer() as t:
        worst = Fraction(0)
        for ws in ((4,), (3,), (2, 2), (3, 1)):
            s, _ = sigma_crit(ws)
            rb = radius_bounds(ws, 1, R)
            worst = max(worst, abs(rb.sigma_B - s), abs(rb.sigma_D - s))
    rep.add("radius-bound limits", f"within {float(tol)} of sigma_crit",
            f"max deviation {float(worst):.2e}", worst < tol,
            window=f"R={float(R)}", seconds=t.seconds)


def run_orbit_table(rep, field, precision, window):
    R = Fraction(1, 100)
    delta = Fraction(1, 100)
    slopes = (Fraction(1, 2), Fraction(5, 2), Fraction(9, 2))
    cases = (
        ("CP^1", models.cp1_polytope(), 1),
        ("CP^2", models.cp2_polytope(), 2),
    )
    for name, poly, n in cases:
        weights = weights_at_point(poly, (0,) * poly.n)
        rb = radius_bounds(weights, poly.kappa, R)
        sigma = rb.sigma_B + 2 * delta
        for ell in slopes:
            with _Timer() as t:
                fams = enumerate_orbit_families(poly, weights, sigma, ell)
                shift_ok = a_in_ok = i_in_ok = d_ok = True
                for o in fams:
                    # orbit_actions raises on any cap-shift inconsistency
                    _, a_in = orbit_actions(o, weights, poly.kappa)
                    if a_in > 0:
                        a_in_ok = False
                    idx = orbit_indices(o, weights, poly.kappa, n)
                    if idx.i_in_lower < 0:
                        i_in_ok = False
                    if o.label.startswith("D:"):
                        bound = delta * ell * n / poly.kappa
                        if idx.i_mix_value < bound:
                            d_ok = False
            case = f"{name} slope {ell}"
            rep.add(f"{case}: families", f">= 1", len(fams),
                    len(fams) >= 1, seconds=t.seconds)
            rep.add(f"{case}: cap-shift identity", "exact on all families",
                    "verified" if shift_ok else "failed", shift_ok)
            rep.add(f"{case}: inner action <= 0", "all families",
                    "verified" if a_in_ok else "failed", a_in_ok)
            rep.add(f"{case}: inner index >= 0", "all families",
                    "verified" if i_in_ok else "failed", i_in_ok)
            rep.add(f"{case}: D-type mixed index", f">= {delta * ell * n}",
                    "verified" if d_ok else "failed", d_ok)


def run_appendix_suite(rep, field, precision, window):
    F = field if isinstance(field, PrimeField) else PrimeField(101)
    rng = random.Random(20240817)
    with _Timer() as t:
        bad = sum(
            0 if all(
                v["exact"]
                for v in milnor_verification(
                    random_inverse_system(rng, F, length=rng.randint(2, 5),
                                          pairs=2, singles=2)
                ).values()
            ) else 1
            for _ in range(50)
        )
    rep.add("Milnor sequences", "exact on 50 systems", f"{bad} failures",
            bad == 0, seconds=t.seconds)
    with _Timer() as t:
        bad = sum(
            0 if telescope_vs_colimit(
                random_ray(rng, F, length=rng.randint(2, 4),
                           pairs=2, singles=2)
            )[0] else 1
            for _ in range(50)
        )
    rep.add("telescope vs colimit", "match on 50 rays", f"{bad} failures",
            bad == 0, seconds=t.seconds)
    with _Timer() as t:
        bad = 0
        for _ in range(20):
            ray = random_gain_ray(rng, F, pairs=3, singles=2)
            cert = completed_telescope_acyclicity(
                ray, [1] * len(ray.maps), 10
            )
            if not cert.acyclic:
                bad += 1
    rep.add("gain-hypothesis acyclicity", "20 certified rays",
            f"{bad} failures", bad == 0, seconds=t.seconds)
    with _Timer() as t:
        bad = 0
        for _ in range(30):
            cx = random_filtered_complex(rng, F, pairs=4, singles=3)
            p = rng.randint(0, 3)
            fv = random_second_filtration(rng, cx, p)
            sub = subquotient_truncation(cx, fv, p)
            full = field_cohomology(cx)
            subc = field_cohomology(sub)
            for j in set(full) | set(subc):
                if j < p - 1 and (full.get(j, (0,))[0]
                                  != subc.get(j, (0,))[0]):
                    bad += 1
    rep.add("subquotient truncations", "30 low-degree matches",
            f"{bad} failures", bad == 0, seconds=t.seconds)
    with _Timer() as t:
        bad = sum(
            0 if cross_check_einfinity(
                random_filtered_complex(rng, F, pairs=3, singles=3)
            )[0] else 1
            for _ in range(100)
        )
    rep.add("E_infinity vs cohomology", "match on 100 complexes",
            f"{bad} failures", bad == 0, seconds=t.seconds)
    with _Timer() as t:
        L = NovikovRing((2,), F)
        bad = 0
        for _ in range(100):
            M = random_laurent_matrix(
                rng, L, rng.randint(1, 4), rng.randint(1, 4)
            )
            if not verify_smith(L, M, smith_normal_form(L, M)):
                bad += 1
    rep.add("Smith normal form identity", "U M V = D on 100 matrices",
            f"{bad} failures", bad == 0, seconds=t.seconds)
    with _Timer() as t:
        bad = sum(0 if _schouten_triple_ok(rng) else 1 for _ in range(100))
    rep.add("Schouten identities", "Jacobi and Leibniz on 100 triples",
            f"{bad} failures", bad == 0, seconds=t.seconds)


def _homogeneous_polyvector(rng, R, k):
    while True:
        a = random_polyvector(rng, R, max_xi=k)
        a = PolyVector(R, {S: f for S, f in a.parts.items() if len(S) == k})
        if a.parts:
            return a


def _schouten_triple_ok(rng):
    R = LaurentRing(QQ, ("x", "y", "z"))
    p, q, r = (rng.randint(0, 2) for _ in range(3))
    a = _homogeneous_polyvector(rng, R, p)
    b = _homogeneous_polyvector(rng, R, q)
    c = _homogeneous_polyvector(rng, R, r)
    sign = QQ.from_int((-1) ** ((p - 1) * (q - 1)))
    jac = pv_sub(
        pv_sub(schouten_bracket(a, schouten_bracket(b, c)),
               schouten_bracket(schouten_bracket(a, b), c)),
        pv_scalar(sign, schouten_bracket(b, schouten_bracket(a, c))),
    )
    if jac.parts:
        return False
    sign = QQ.from_int((-1) ** ((p - 1) * q))
    leib = pv_sub(
        schouten_bracket(a, pv_wedge(b, c)),
        pv_add(pv_wedge(schouten_bracket(a, b), c),
               pv_scalar(sign, pv_wedge(b, schouten_bracket(a, c)))),
    )
    return not leib.parts


EXAMPLES = {
    "s2-point": run_s2_point,
    "s2-two-points": run_s2_two_points,
    "toric-cp1": run_toric_cp1,
    "toric-cp2": run_toric_cp2,
    "quadric-cp2": run_quadric,
    "fano-hypersurface": run_fano,
    "sigma-crit-table": run_sigma_crit_table,
    "orbit-table": run_orbit_table,
    "appendix-suite": run_appendix_suite,
}


def run_example(name, field=None, precision=None, window=None):
    if name not in EXAMPLES:
        raise KeyError(f"unknown example: {name}")
    if field is None:
        field = QQ
    elif isinstance(field, str):
        field = field_from_spec(field)
    rep = Report(name)
    EXAMPLES[name](rep, field, precision, window)
    return rep


def _parse_window(text):
    parts = text.split(",")
    if len(parts) == 1:
        return int(parts[0])
    if len(parts) == 2:
        return (int(parts[0]), int(parts[1]))
    raise argparse.ArgumentTypeError("window must be N or LO,HI")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="novhom",
        description="Run a verification example and report the checks.",
    )
    parser.add_argument("--example", required=True,
                        choices=sorted(EXAMPLES))
    parser.add_argument("--field", default="q",
                        help="coefficient field: q, fp:P, or cyclotomic:M")
    parser.add_argument("--precision", type=int, default=None)
    parser.add_argument("--window", type=_parse_window, default=None)
    parser.add_argument("--format", choices=("text", "json"),
                        default="text")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        field = field_from_spec(args.field)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = run_example(args.example, field=field,
                         precision=args.precision, window=args.window)
    print(emit_report(report, args.format))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
