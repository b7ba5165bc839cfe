"""Moment polytope bookkeeping for smooth projective toric models: weights
at interior points, the critical rescaling fraction, superpotentials, orbit
action/index formulas, radius-dependent bound functions, and a desk-scale
enumeration of one-periodic orbit families in dimension <= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd

from .fields import QQ
from .laurent import LaurentRing
from .linalg import nullspace, rank


class ToricError(ValueError):
    pass


def _frac(x):
    return Fraction(x)


class DelzantPolytope:
    """Polytope {x : nu_i(x) + c_i >= 0} with primitive integer normals.

    The default offsets c_i = 2*kappa give the monotone normalization; a
    rescaled polytope may carry general positive offsets.
    """

    def __init__(self, normals, kappa, offsets=None, require_interior=True):
        self.normals = [tuple(int(a) for a in nu) for nu in normals]
        if not self.normals:
            raise ToricError("need at least one facet")
        self.n = len(self.normals[0])
        self.kappa = _frac(kappa)
        if self.kappa <= 0:
            raise ToricError("kappa must be positive")
        if offsets is None:
            self.offsets = [2 * self.kappa] * len(self.normals)
        else:
            self.offsets = [_frac(c) for c in offsets]
        self._validate(require_interior)

    def _validate(self, require_interior):
        for nu in self.normals:
            if len(nu) != self.n:
                raise ToricError("normals of mixed dimension")
            g = 0
            for a in nu:
                g = gcd(g, abs(a))
            if g != 1:
                raise ToricError(f"normal {nu} is not primitive")
        if require_interior:
            if any(c <= 0 for c in self.offsets):
                raise ToricError(
                    "origin must be interior (all offsets positive)"
                )
        elif any(c < 0 for c in self.offsets):
            raise ToricError("origin must lie in the polytope")
        if not self._bounded():
            raise ToricError("polytope is unbounded")

    def _bounded(self):
        """The recession cone {d : nu_i(d) >= 0 for all i} must be {0}."""
        n = self.n
        M = [[Fraction(a) for a in nu] for nu in self.normals]
        if rank(QQ, M) < n:
            return False
        if n == 1:
            return any(nu[0] > 0 for nu in self.normals) and any(
                nu[0] < 0 for nu in self.normals
            )
        # any nonzero direction in a pointed cone cut out by halfspaces lies
        # on a face spanned by n-1 independent active constraints
        from itertools import combinations

        for S in combinations(range(len(self.normals)), n - 1):
            A = [[Fraction(a) for a in self.normals[i]] for i in S]
            if rank(QQ, A) < n - 1:
                continue
            for d in nullspace(QQ, A):
                for cand in (d, [-x for x in d]):
                    if all(
                        sum(Fraction(a) * x for a, x in zip(nu, cand)) >= 0
                        for nu in self.normals
                    ):
                        return False
        return True

    def pairing(self, i, p):
        return sum(Fraction(a) * _frac(x) for a, x in zip(self.normals[i], p))

    def contains(self, p, strict=False):
        for i in range(len(self.normals)):
            v = self.pairing(i, p) + self.offsets[i]
            if v < 0 or (strict and v == 0):
                return False
        return True

    def __repr__(self):
        return (
            f"DelzantPolytope(n={self.n}, facets={len(self.normals)}, "
            f"kappa={self.kappa})"
        )


def weights_at_point(poly, p):
    """Weight vector (nu_i(p)/kappa + 2)_i at a strictly interior point."""
    out = []
    for i in range(len(poly.normals)):
        a = poly.pairing(i, p)
        if a + 2 * poly.kappa <= 0:
            raise ToricError("point is not strictly interior")
        out.append(a / poly.kappa + 2)
    return tuple(out)


def sigma_crit(weights):
    """(max(0, 1 - 2/max weight), whether all weights are <= 2)."""
    lams = [_frac(w) for w in weights]
    if any(l <= 0 for l in lams):
        raise ToricError("weights must be positive")
    s = max(Fraction(0), 1 - Fraction(2) / max(lams))
    return s, all(l <= 2 for l in lams)


def kcrit_rescaling(poly, p):
    """Smallest s in [0,1) with 0 in p + s*(polytope - p), and that
    rescaled polytope. Equals sigma_crit of the weights at p."""
    a = [poly.pairing(i, p) for i in range(len(poly.normals))]
    if any(ai + ci <= 0 for ai, ci in zip(a, poly.offsets)):
        raise ToricError("point is not strictly interior")
    s = max([Fraction(0)] + [ai / (ai + ci) for ai, ci in zip(a, poly.offsets)])
    new_offsets = [
        s * (ai + ci) - ai for ai, ci in zip(a, poly.offsets)
    ]
    if s == 0:
        # degenerate rescaling: the polytope collapses to the point p
        return s, None
    return s, DelzantPolytope(
        poly.normals, poly.kappa * s, new_offsets, require_interior=False
    )


def superpotential(poly, ring=None):
    """sum_i z^{nu_i} in the Laurent ring (default: QQ coefficients)."""
    if ring is None:
        names = [f"z{i+1}" for i in range(poly.n)]
        ring = LaurentRing(QQ, names)
    out = ring.zero
    for nu in poly.normals:
        out = ring.add(out, ring.monomial(nu))
    return out


# -- orbit descriptors --------------------------------------------------------


@dataclass
class OrbitDescriptor:
    """Abstract record of a one-periodic orbit family of a radial
    Hamiltonian h(rho): the value rho, h and its slope there, wrapping
    numbers nu_i, toric radii r_i (None when the orbit leaves the i-th
    divisor neighbourhood), Hessian signature, and perturbation bound."""

    rho: Fraction
    h_val: Fraction
    h_slope: Fraction
    nu: tuple
    r: tuple
    hess_signature: int = 0
    epsilon: Fraction = Fraction(0)
    label: str = ""

    def __post_init__(self):
        self.rho = _frac(self.rho)
        self.h_val = _frac(self.h_val)
        self.h_slope = _frac(self.h_slope)
        self.nu = tuple(_frac(x) for x in self.nu)
        self.r = tuple(None if x is None else _frac(x) for x in self.r)
        self.epsilon = _frac(self.epsilon)
        if len(self.nu) != len(self.r):
            raise ToricError("nu and r must have equal length")
        for nu_i, r_i in zip(self.nu, self.r):
            if r_i is None and nu_i != 0:
                raise ToricError(
                    "wrapping must vanish where the radius is undefined"
                )
            if r_i is not None and r_i < 0:
                raise ToricError("radii must be nonnegative")
        j = sum(
            1 for nu_i, r_i in zip(self.nu, self.r)
            if nu_i != 0 and r_i is not None and r_i != 0
        )
        if abs(self.hess_signature) > j or (self.hess_signature - j) % 2:
            raise ToricError(
                "Hessian signature must match the Hessian size in "
                "magnitude and parity"
            )


def orbit_actions(o, weights, kappa):
    """(A_out, A_in): action with respect to the outer and inner caps.

    A_out = h + sum_i nu_i r_i; A_in = h - h' * rho. The cap-shift identity
    A_in = A_out - kappa * sum_i nu_i lambda_i is verified and its failure
    reported (it pins down the consistency rho = sum_i nu~_i (kappa
    lambda_i - r_i) of the descriptor data)."""
    kappa = _frac(kappa)
    lams = [_frac(w) for w in weights]
    a_out = o.h_val + sum(
        nu_i * r_i for nu_i, r_i in zip(o.nu, o.r) if r_i is not None
    )
    a_in = o.h_val - o.h_slope * o.rho
    shift = kappa * sum(nu_i * l for nu_i, l in zip(o.nu, lams))
    if a_in != a_out - shift:
        raise ToricError(
            "inconsistent descriptor: inner-cap action does not match the "
            f"cap shift (A_in = {a_in}, A_out - shift = {a_out - shift})"
        )
    return a_out, a_in


@dataclass
class OrbitIndices:
    cz_out: Fraction
    i_out_interval: tuple
    i_in_lower: Fraction
    i_mix_value: Fraction
    i_mix_interval: tuple


def orbit_indices(o, weights, kappa, n):
    """Index data of the orbit family in complex dimension n.

    cz_out is exact for the unperturbed orbit; i_out lies in
    [2 sum ceil(nu), 2 sum ceil(nu) + 2n]; the inner-cap index is bounded
    below by sum (2 - lambda_i) nu_i; the mixed index equals
    sum (2 - r_i/kappa) nu_i - h/kappa + D with D carried as an interval
    (ceiling defects plus the perturbation allowance)."""
    kappa = _frac(kappa)
    lams = [_frac(w) for w in weights]
    ceil_sum = 2 * sum(Fraction(ceil(nu_i)) for nu_i in o.nu)
    cz_out = ceil_sum + Fraction(o.hess_signature, 2)
    i_out = (ceil_sum, ceil_sum + 2 * n)
    i_in_lower = sum((2 - l) * nu_i for l, nu_i in zip(lams, o.nu))
    i_mix = (
        sum(
            (2 - r_i / kappa) * nu_i
            for nu_i, r_i in zip(o.nu, o.r)
            if r_i is not None
        )
        - o.h_val / kappa
    )
    defect = 2 * sum(Fraction(ceil(nu_i)) - nu_i for nu_i in o.nu)
    d_lo = defect - o.epsilon / kappa
    d_hi = defect + 2 * n + o.epsilon / kappa
    return OrbitIndices(
        cz_out=cz_out,
        i_out_interval=i_out,
        i_in_lower=i_in_lower,
        i_mix_value=i_mix,
        i_mix_interval=(i_mix + d_lo, i_mix + d_hi),
    )


# -- radius-dependent bounds --------------------------------------------------


@dataclass
class RadiusBounds:
    R: Fraction
    R0: Fraction
    eps1: Fraction
    eps2: Fraction
    sigma_B: Fraction
    sigma_D: Fraction
    eta: Fraction


def radius_bounds(weights, kappa, R):
    """Exact rational bound functions at collar radius R in (0, R0),
    R0 = kappa * min weight. eps2 is one valid witness (the explicit bound
    extracted from the wrapping-sum estimate), not a canonical value."""
    kappa = _frac(kappa)
    lams = [_frac(w) for w in weights]
    R = _frac(R)
    R0 = kappa * min(lams)
    if not (0 < R < R0):
        raise ToricError(f"R must lie in (0, {R0})")
    alpha = R / (2 * kappa * min(lams))
    one_plus_eps1 = 1 / (1 - alpha)
    eps1 = one_plus_eps1 - 1
    sigma_b = max(
        Fraction(0),
        one_plus_eps1 - (2 - R / (2 * kappa)) / max(lams),
    )
    sigma_d = max(
        [Fraction(0)]
        + [(l - 2) * one_plus_eps1 / (l - R / (2 * kappa)) for l in lams]
    )
    eta = min((l - R / (2 * kappa)) / one_plus_eps1 for l in lams)
    eps2 = (
        max(kappa * l / (kappa * l - R / 2) for l in lams) * one_plus_eps1
        - 1
    )
    return RadiusBounds(
        R=R, R0=R0, eps1=eps1, eps2=eps2,
        sigma_B=sigma_b, sigma_D=sigma_d, eta=eta,
    )


# -- orbit family enumeration (dimension <= 2) --------------------------------


def _adjacent_pairs(poly):
    """Pairs of facets meeting in a vertex (2D), or all pairs in 1D: none,
    since distinct 1D facets never intersect."""
    if poly.n == 1:
        return []
    pairs = []
    m = len(poly.normals)
    for i in range(m):
        for j in range(i + 1, m):
            A = [
                [Fraction(a) for a in poly.normals[i]],
                [Fraction(a) for a in poly.normals[j]],
            ]
            if rank(QQ, A) < 2:
                continue
            # solve nu_i(x) = -c_i, nu_j(x) = -c_j and check feasibility
            from .linalg import solve as lin_solve

            b = [-poly.offsets[i], -poly.offsets[j]]
            x = lin_solve(QQ, A, b)
            if x is not None and poly.contains(x):
                pairs.append((i, j))
    return pairs


def enumerate_orbit_families(poly, weights, sigma, ell, facets=None):
    """Orbit families of the model radial Hamiltonian that vanishes for
    rho <= sigma and has maximal slope ell: the constant family, the
    circle ("SH-type") families at each facet where the slope sweep meets
    an integer wrapping, and the divisor ("D-type") families at p_i = 0.

    The toric data is the piecewise model nu~_i = 1/(kappa lambda_i),
    rho = sum_{i in I} (1 - r_i / (kappa lambda_i)) on the region indexed
    by I. A slope ell with ell * nu~_i an exact integer is resonant
    (ToricError): an integrality condition would hold on a
    positive-dimensional set."""
    kappa = poly.kappa
    lams = [_frac(w) for w in weights]
    sigma = _frac(sigma)
    ell = _frac(ell)
    if len(lams) != len(poly.normals):
        raise ToricError("one weight per facet required")
    if ell < 0 or not (0 <= sigma < 1):
        raise ToricError("need slope >= 0 and sigma in [0, 1)")
    m = len(poly.normals)
    chosen = list(range(m)) if facets is None else list(facets)
    nutil = [1 / (kappa * l) for l in lams]
    for i in chosen:
        if ell * nutil[i] == int(ell * nutil[i]) and ell > 0:
            raise ToricError(
                f"resonant slope: ell * nu~_{i} = {ell * nutil[i]} is an "
                "integer"
            )
    fams = [
        OrbitDescriptor(
            rho=Fraction(0), h_val=Fraction(0), h_slope=Fraction(0),
            nu=[Fraction(0)] * m, r=[None] * m, label="constant",
        )
    ]
    # single-facet families
    for i in chosen:
        # SH-type: slope sweep h' in (0, ell) hits h' * nu~_i = k
        k = 1
        while Fraction(k) < ell * nutil[i]:
            slope = Fraction(k) / nutil[i]
            # orbit sits where rho = sigma: r_i = kappa lambda_i (1 - sigma)
            r = [None] * m
            nu = [Fraction(0)] * m
            r[i] = kappa * lams[i] * (1 - sigma)
            nu[i] = Fraction(k)
            fams.append(
                OrbitDescriptor(
                    rho=sigma, h_val=Fraction(0), h_slope=slope,
                    nu=nu, r=r, hess_signature=1,
                    label=f"SH:facet{i}:wind{k}",
                )
            )
            k += 1
        # D-type: p_i = 0 on the divisor, full slope
        if ell > 0 and sigma < 1:
            r = [None] * m
            nu = [Fraction(0)] * m
            r[i] = Fraction(0)
            nu[i] = ell * nutil[i]
            fams.append(
                OrbitDescriptor(
                    rho=Fraction(1), h_val=ell * (1 - sigma), h_slope=ell,
                    nu=nu, r=r, label=f"D:facet{i}",
                )
            )
    # two-facet families at the corners (2D): both divisors, p_i = p_j = 0
    if poly.n == 2 and ell > 0:
        for (i, j) in _adjacent_pairs(poly):
            if facets is not None and (i not in chosen or j not in chosen):
                continue
            r = [None] * m
            nu = [Fraction(0)] * m
            r[i] = r[j] = Fraction(0)
            nu[i] = ell * nutil[i]
            nu[j] = ell * nutil[j]
            fams.append(
                OrbitDescriptor(
                    rho=Fraction(2), h_val=ell * (2 - sigma), h_slope=ell,
                    nu=nu, r=r, label=f"D:corner{i},{j}",
                )
            )
    return fams


def s2_collar_profile(weights, kappa):
    """Retained disc areas for a two-sphere with weights summing to 4:
    kappa * lambda_i when lambda_i <= 2, else 2*kappa (a collar caps the
    retained part at half the total area 4*kappa)."""
    kappa = _frac(kappa)
    lams = [_frac(w) for w in weights]
    if sum(lams) != 4 or any(l <= 0 for l in lams):
        raise ToricError("weights must be positive and sum to 4")
    return tuple(min(kappa * l, 2 * kappa) for l in lams)
