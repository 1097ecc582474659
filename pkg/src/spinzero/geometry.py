"""Circular zero-free regions for ferromagnetic 2-spin systems.

The edge polynomial gamma*z^2 + 2*z + beta has the conjugate root pair
zeta = (-1 +- i*sqrt(beta*gamma - 1)) / gamma. The discriminant
Phi = log(sqrt(beta/gamma)) - arctan(sqrt(beta*gamma-1)) * sqrt(beta*gamma-1)
selects which circular region K through the zeta pair is contraction-stable:

  Phi < 0  ->  K is the complement of an open disk D(c, r) with 0 <= c < r
  Phi > 0  ->  K is a closed disk with center c < -r < -beta
  Phi = 0  ->  K is the closed half plane Re z <= -1/gamma

The d-fold signed product K_d = (-1)^{d+1} * K * ... * K captures where
zeros can land after contracting a degree-d vertex. This module provides
the closed forms for c, r, the critical degree and field threshold, plus an
independent numerical optimizer for the minimum-modulus program over K_d
that deliberately does not assume the symmetry of the closed-form solution.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InfeasibleError
from .partition import SpinParams

PHI_TOL = 1e-9

EXTERIOR = "exterior_of_disk"
DISK = "closed_disk"
HALFPLANE = "half_plane"


@dataclass(frozen=True)
class CircularRegion:
    case: str
    c: float = math.nan  # center, disk cases
    r: float = math.nan  # radius, disk cases
    bound: float = math.nan  # Re z <= bound, half-plane case


@dataclass(frozen=True)
class ContractionGeometry:
    params: SpinParams
    phi: float
    region: CircularRegion
    c_star: float
    r: float
    zeta1: complex
    zeta2: complex
    d_star: float
    lambda_star: float


@dataclass(frozen=True)
class OracleProblem:
    """Minimize prod r_i over points r_i*e^{i theta_i} in the region subject
    to the product having argument target_angle after the (-1)^{d+1} sign.

    Internally the angle-sum constraint is
    sum theta_i = target_angle + (pi if d even else 0)  (mod 2 pi).
    target_angle = 0 recovers the positive-real-intercept program.
    """

    region: CircularRegion
    d: int
    target_angle: float = 0.0


@dataclass(frozen=True)
class Thresholds:
    lambda_mcmc: float
    d_c: float
    lambda_c: float
    d_star: float
    lambda_star: float


def phi_discriminant(params: SpinParams) -> float:
    params.require_ferro()
    b, g = params.beta, params.gamma
    s = math.sqrt(b * g - 1)
    return math.log(math.sqrt(b / g)) - math.atan(s) * s


def build_geometry(params: SpinParams) -> ContractionGeometry:
    params.require_ferro()
    b, g = params.beta, params.gamma
    phi = phi_discriminant(params)
    s = math.sqrt(b * g - 1)
    zeta1 = complex(-1, s) / g
    zeta2 = complex(-1, -s) / g
    d_star = math.pi / math.atan(s)
    lambda_star = (b / g) ** (d_star / 2)
    if abs(phi) < PHI_TOL:
        region = CircularRegion(case=HALFPLANE, bound=-1.0 / g)
        return ContractionGeometry(
            params=params, phi=phi, region=region, c_star=math.inf, r=math.inf,
            zeta1=zeta1, zeta2=zeta2, d_star=d_star, lambda_star=lambda_star,
        )
    c = -b * math.log(math.sqrt(b / g)) / phi
    r = math.sqrt((b * g - 1) / g**2 + (c + 1 / g) ** 2)
    case = EXTERIOR if phi < 0 else DISK
    region = CircularRegion(case=case, c=c, r=r)
    return ContractionGeometry(
        params=params, phi=phi, region=region, c_star=c, r=r,
        zeta1=zeta1, zeta2=zeta2, d_star=d_star, lambda_star=lambda_star,
    )


def thresholds(params: SpinParams) -> Thresholds:
    params.require_ferro()
    b, g = params.beta, params.gamma
    root_bg = math.sqrt(b * g)
    d_c = root_bg / (root_bg - 1)
    s = math.sqrt(b * g - 1)
    d_star = math.pi / math.atan(s)
    return Thresholds(
        lambda_mcmc=b / g,
        d_c=d_c,
        lambda_c=(b / g) ** d_c,
        d_star=d_star,
        lambda_star=(b / g) ** (d_star / 2),
    )


def region_contains(region: CircularRegion, z: complex, tol: float = 1e-9) -> bool:
    """Closed-set membership with a small absolute-relative tolerance."""
    if region.case == HALFPLANE:
        return z.real <= region.bound + tol * max(1.0, abs(region.bound))
    dist = abs(z - region.c)
    slack = tol * max(1.0, region.r)
    if region.case == EXTERIOR:
        return dist >= region.r - slack
    return dist <= region.r + slack


def _feasible_interval(region: CircularRegion):
    """Feasible angle window [lo, hi] for rays from the origin hitting the
    region, or None when every direction is feasible."""
    if region.case == EXTERIOR:
        return None
    if region.case == HALFPLANE:
        return (math.pi / 2, 3 * math.pi / 2)
    c, r = region.c, region.r
    # ray hits the disk iff cos(theta) <= -sqrt(1 - r^2/c^2)
    t0 = math.sqrt(max(0.0, 1.0 - (r * r) / (c * c)))
    w = math.acos(t0)
    return (math.pi - w, math.pi + w)


def boundary_polar(region: CircularRegion, theta: float) -> float:
    """Distance from the origin to the nearest boundary crossing along the
    ray at angle theta. Raises DomainError for infeasible directions."""
    window = _feasible_interval(region)
    th = theta % (2 * math.pi)
    if window is not None:
        lo, hi = window
        eps = 1e-12
        if not (lo - eps <= th <= hi + eps):
            raise DomainError(f"angle {theta} outside feasible window [{lo}, {hi}]")
    if region.case == HALFPLANE:
        ct = math.cos(th)
        if ct >= -1e-300:
            raise DomainError(f"angle {theta} parallel to the half-plane boundary")
        return region.bound / ct
    c, r = region.c, region.r
    disc = c * c * math.cos(th) ** 2 + r * r - c * c
    if disc < 0:
        if disc > -1e-12 * max(1.0, c * c):
            disc = 0.0
        else:
            raise DomainError(f"angle {theta} misses the disk")
    root = math.sqrt(disc)
    if region.case == EXTERIOR:
        return c * math.cos(th) + root
    return c * math.cos(th) - root


def boundary_polar_far(region: CircularRegion, theta: float) -> float:
    """Distance to the far boundary crossing (ClosedDisk case only)."""
    if region.case != DISK:
        raise DomainError("far crossing defined only for the closed-disk case")
    th = theta % (2 * math.pi)
    lo, hi = _feasible_interval(region)
    if not (lo - 1e-12 <= th <= hi + 1e-12):
        raise DomainError(f"angle {theta} misses the disk")
    c, r = region.c, region.r
    disc = max(0.0, c * c * math.cos(th) ** 2 + r * r - c * c)
    return c * math.cos(th) + math.sqrt(disc)


def lambda_star_d(geometry: ContractionGeometry, d) -> float:
    """Positive-real intercept of K_d from the closed forms; d may be real.

    Returns +inf when the disk-case program is infeasible for this d
    (notably always at d = 2 there).
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    region = geometry.region
    x = math.pi / d  # evaluation angle is pi - pi/d
    if region.case == HALFPLANE:
        g = geometry.params.gamma
        return (g * math.cos(x)) ** (-d)
    c, r = region.c, region.r
    disc = c * c * math.cos(x) ** 2 + r * r - c * c
    if region.case == EXTERIOR:
        return (-c * math.cos(x) + math.sqrt(disc)) ** d
    # closed disk: the symmetric point must exist and lie in the angular window
    if d <= 2 or disc < 0:
        return math.inf
    return (-c * math.cos(x) - math.sqrt(disc)) ** d


def _log_radius_terms(region: CircularRegion, th: np.ndarray, far: bool) -> np.ndarray:
    """Penalized per-angle objective term: log of the boundary radius where
    feasible, else the clamped value plus 10x the angular distance to the
    feasible window. Continuous, so descent is pulled back to feasibility."""
    th = np.mod(th, 2 * np.pi)
    window = _feasible_interval(region)
    if window is None:
        c, r = region.c, region.r
        disc = c * c * np.cos(th) ** 2 + r * r - c * c
        return np.log(c * np.cos(th) + np.sqrt(disc))
    lo, hi = window
    if region.case == HALFPLANE:
        lo_c, hi_c = lo + 1e-9, hi - 1e-9
    else:
        lo_c, hi_c = lo, hi
    inside = (th >= lo) & (th <= hi)
    dlo = np.minimum(np.abs(th - lo), 2 * np.pi - np.abs(th - lo))
    dhi = np.minimum(np.abs(th - hi), 2 * np.pi - np.abs(th - hi))
    dist = np.where(inside, 0.0, np.minimum(dlo, dhi))
    thc = np.clip(th, lo_c, hi_c)
    if region.case == HALFPLANE:
        val = np.log(region.bound / np.cos(thc))
    else:
        c, r = region.c, region.r
        disc = np.maximum(0.0, c * c * np.cos(thc) ** 2 + r * r - c * c)
        if far:
            val = np.log(c * np.cos(thc) + np.sqrt(disc))
        else:
            val = np.log(c * np.cos(thc) - np.sqrt(disc))
    sign = -1.0 if far else 1.0
    return sign * val + 10.0 * dist


def _required_total(d: int, target_angle: float) -> float:
    return (target_angle + (math.pi if d % 2 == 0 else 0.0)) % (2 * math.pi)


def _check_feasible(region: CircularRegion, d: int, required: float):
    window = _feasible_interval(region)
    if window is None:
        return
    lo, hi = window
    span_lo, span_hi = d * lo, d * hi
    k_min = math.floor((span_lo - required) / (2 * math.pi))
    k_max = math.ceil((span_hi - required) / (2 * math.pi))
    for k in range(int(k_min), int(k_max) + 1):
        t = required + 2 * math.pi * k
        if span_lo - 1e-12 <= t <= span_hi + 1e-12:
            return
    raise InfeasibleError(
        f"no angle assignment sums to {required} with d={d} in window {window}"
    )


def _descend(region: CircularRegion, d: int, required: np.ndarray,
             theta: np.ndarray, maximize: bool):
    """Shrinking-step coordinate descent over theta_1..theta_{d-1} for every
    row at once; theta_d is eliminated by the row's angle-sum target."""
    terms = _log_radius_terms(region, theta, maximize)
    th_d = np.mod(required - theta.sum(axis=1), 2 * np.pi)
    term_d = _log_radius_terms(region, th_d, maximize)
    step = math.pi / 2
    while step > 1e-8:
        for _ in range(8):
            improved = False
            for i in range(d - 1):
                for sgn in (1.0, -1.0):
                    cand = np.mod(theta[:, i] + sgn * step, 2 * np.pi)
                    new_ti = _log_radius_terms(region, cand, maximize)
                    new_thd = np.mod(th_d - sgn * step, 2 * np.pi)
                    new_td = _log_radius_terms(region, new_thd, maximize)
                    delta = (new_ti - terms[:, i]) + (new_td - term_d)
                    accept = delta < -1e-15
                    if np.any(accept):
                        improved = True
                        theta[accept, i] = cand[accept]
                        terms[accept, i] = new_ti[accept]
                        th_d[accept] = new_thd[accept]
                        term_d[accept] = new_td[accept]
            if not improved:
                break
        step *= 0.5
    return theta, th_d, terms.sum(axis=1) + term_d


def oracle_values_batch(region: CircularRegion, d: int, psis, restarts: int = 24,
                        seed: int = 0, maximize: bool = False) -> np.ndarray:
    """Extremal product modulus for a whole batch of target arguments.

    Returns one value per target: the minimum product modulus (or the
    maximum when maximize is set); +inf marks an infeasible target in the
    minimization sense, -inf in the maximization sense. One shared descent
    over restarts*targets rows; deterministic given seed.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if maximize and region.case != DISK:
        raise ValueError("maximization applies only to the closed-disk case")
    psis = np.asarray(psis, dtype=float)
    T = psis.size
    shift = math.pi if d % 2 == 0 else 0.0
    reqs = np.mod(psis + shift, 2 * math.pi)
    window = _feasible_interval(region)
    if window is None:
        lo, hi = 0.0, 2 * math.pi
        target_ok = np.ones(T, dtype=bool)
    else:
        lo, hi = window
        span = d * (hi - lo)
        target_ok = (span >= 2 * math.pi - 1e-12) | (
            np.mod(reqs - d * lo, 2 * math.pi) <= span + 1e-12
        )
    R = max(1, restarts)
    rng = np.random.default_rng(seed)
    required = np.repeat(reqs, R)
    theta = rng.uniform(lo, hi, size=(T * R, d - 1))
    theta, th_d, obj = _descend(region, d, required, theta, maximize)
    if window is not None:
        thd_mod = np.mod(th_d, 2 * np.pi)
        row_ok = (thd_mod >= lo - 1e-7) & (thd_mod <= hi + 1e-7)
    else:
        row_ok = np.ones(T * R, dtype=bool)
    obj = np.where(row_ok, obj, np.inf)
    best = obj.reshape(T, R).min(axis=1)
    if maximize:
        vals = np.where(target_ok & np.isfinite(best), np.exp(-best), -np.inf)
    else:
        vals = np.where(target_ok & np.isfinite(best), np.exp(best), np.inf)
    return vals


def oracle_min_product(problem: OracleProblem, restarts: int = 64, seed: int = 0,
                       maximize: bool = False):
    """Multi-start coordinate descent for the extremal product modulus.

    Variables are theta_1..theta_{d-1}; theta_d is eliminated by the
    angle-sum constraint and all radii are projected to the boundary
    (shrinking any r_i toward the boundary only improves the minimum, and
    the analogous far projection serves the maximum). No symmetry between
    the angles is assumed. Deterministic given seed.

    Returns (value, [(r_i, theta_i)] for i = 1..d).
    """
    region, d = problem.region, problem.d
    if d < 2:
        raise ValueError("d must be >= 2")
    if maximize and region.case != DISK:
        raise ValueError("maximization applies only to the closed-disk case")
    required = _required_total(d, problem.target_angle)
    _check_feasible(region, d, required)
    window = _feasible_interval(region)
    if window is None:
        lo, hi = 0.0, 2 * math.pi
    else:
        lo, hi = window
    R = max(1, restarts)
    # per-restart seeds keep restarts independent of the array layout
    theta = np.stack(
        [np.random.default_rng(seed + i).uniform(lo, hi, size=d - 1) for i in range(R)]
    )
    theta, th_d, obj = _descend(
        region, d, np.full(R, required), theta, maximize
    )
    # only restarts whose angles all ended up feasible count
    if window is not None:
        thd_mod = np.mod(th_d, 2 * np.pi)
        feasible = (thd_mod >= lo - 1e-7) & (thd_mod <= hi + 1e-7)
        th_mod = np.mod(theta, 2 * np.pi)
        feasible &= np.all((th_mod >= lo - 1e-7) & (th_mod <= hi + 1e-7), axis=1)
    else:
        feasible = np.ones(R, dtype=bool)
    if not np.any(feasible):
        raise InfeasibleError("no restart reached a feasible angle assignment")
    obj = np.where(feasible, obj, np.inf)
    best = int(np.argmin(obj))
    angles = [float(t) % (2 * math.pi) for t in list(theta[best]) + [float(th_d[best])]]
    # the region is conjugation-symmetric, so when the target argument is 0
    # or pi the reflected assignment is equally optimal; canonicalize to the
    # upper-half-plane representative
    if min(abs(required), abs(required - math.pi), abs(required - 2 * math.pi)) < 1e-12:
        if sum(angles) / d > math.pi:
            angles = [(2 * math.pi - t) % (2 * math.pi) for t in angles]
    if window is not None:
        # feasible restarts may still sit a hair outside the window from the
        # 1e-7 tolerance; nudge them back before evaluating the boundary
        angles = [min(max(t, lo), hi) for t in angles]
    bp = boundary_polar_far if maximize else boundary_polar
    radii = [bp(region, float(t)) for t in angles]
    log_value = sum(math.log(r) for r in radii)
    # deterministic tie-break: when an all-equal assignment matches the
    # optimum (the objective can be flat, e.g. d = 2 where the product is
    # constant in the angle), prefer the symmetric representative
    best_sym = None
    for j in range(d):
        th_s = ((required + 2 * math.pi * j) / d) % (2 * math.pi)
        if window is not None and not (lo <= th_s <= hi):
            continue
        ls = d * math.log(bp(region, th_s))
        if best_sym is None or ls < best_sym[0]:
            best_sym = (ls, th_s)
    if best_sym is not None and best_sym[0] <= log_value + 1e-10:
        th_s = best_sym[1]
        if min(abs(required), abs(required - math.pi),
               abs(required - 2 * math.pi)) < 1e-12 and th_s > math.pi:
            th_s = 2 * math.pi - th_s
        r_s = bp(region, th_s)
        return math.exp(best_sym[0]), [(r_s, th_s)] * d
    return math.exp(log_value), [(r, float(t)) for r, t in zip(radii, angles)]


def kd_contains_batch(geometry: ContractionGeometry, d: int, zs,
                      restarts: int = 24, seed: int = 0,
                      rel_slack: float = 0.0) -> list:
    """Membership of each z in K_d = (-1)^{d+1} K * ... * K.

    At fixed product argument the attainable moduli form an interval, so
    membership reduces to the extremal-product oracles. In the exterior
    case the region is radially outward-closed and only the minimum binds.
    """
    zs = [complex(z) for z in zs]
    psis = np.array([cmath.phase(z) % (2 * math.pi) for z in zs])
    mods = np.array([abs(z) for z in zs])
    m_d = oracle_values_batch(geometry.region, d, psis, restarts=restarts, seed=seed)
    ok = (mods > 0) & (mods >= m_d * (1 - rel_slack))
    if geometry.region.case == DISK and np.any(ok):
        big = oracle_values_batch(
            geometry.region, d, psis, restarts=restarts, seed=seed, maximize=True
        )
        ok &= mods <= big * (1 + rel_slack)
    return [bool(b) for b in ok]


def kd_contains(geometry: ContractionGeometry, d: int, z: complex,
                restarts: int = 64, seed: int = 0, rel_slack: float = 0.0) -> bool:
    """Single-point version of kd_contains_batch."""
    if z == 0:
        return False
    return kd_contains_batch(
        geometry, d, [z], restarts=restarts, seed=seed, rel_slack=rel_slack
    )[0]


def kd_boundary_cloud(geometry: ContractionGeometry, d: int, angle_samples: int = 360,
                      restarts: int = 16, seed: int = 0) -> list:
    """Boundary point cloud of K_d: extremal-modulus points on a uniform
    grid of product arguments. Infeasible directions are skipped."""
    psis = 2 * math.pi * np.arange(angle_samples) / angle_samples
    m_d = oracle_values_batch(geometry.region, d, psis, restarts=restarts, seed=seed)
    out = []
    big = None
    if geometry.region.case == DISK:
        big = oracle_values_batch(
            geometry.region, d, psis, restarts=restarts, seed=seed, maximize=True
        )
    for j in range(angle_samples):
        if not math.isfinite(m_d[j]):
            continue
        out.append(cmath.rect(float(m_d[j]), float(psis[j])))
        if big is not None and math.isfinite(big[j]):
            out.append(cmath.rect(float(big[j]), float(psis[j])))
    return out


def region_sample(region: CircularRegion, count: int, seed: int = 0,
                  radial_spread: float = 3.0) -> list:
    """Random points of the region (boundary and interior), for spot checks."""
    rng = np.random.default_rng(seed)
    window = _feasible_interval(region)
    out = []
    if region.case == HALFPLANE:
        scale = max(1.0, abs(region.bound))
        for _ in range(count):
            x = region.bound - rng.uniform(0.0, radial_spread) * scale
            y = rng.uniform(-radial_spread, radial_spread) * scale
            out.append(complex(x, y))
        return out
    lo, hi = window if window is not None else (0.0, 2 * math.pi)
    for _ in range(count):
        th = rng.uniform(lo, hi)
        near = boundary_polar(region, th)
        if region.case == EXTERIOR:
            rad = near * (1.0 + rng.uniform(0.0, radial_spread))
        else:
            far = boundary_polar_far(region, th)
            rad = rng.uniform(near, far)
        out.append(cmath.rect(rad, th))
    return out


@dataclass
class ConvexityReport:
    case: str
    min_g_second: float
    min_h_second: float
    h_prime_at_d_star: float
    grid_size: int
    d_grid: tuple = field(default=(2.0, 50.0))


def _g_second(geometry: ContractionGeometry, x: np.ndarray) -> np.ndarray:
    """Second derivative of the log boundary radius along the angle, in the
    window where the program lives; nonnegative there in both disk cases."""
    b, g = geometry.params.beta, geometry.params.gamma
    c = geometry.c_star
    denom = b + 2 * c + c * c * g * np.cos(x) ** 2
    core = np.cos(x) * c * math.sqrt(g) * (b + 2 * c + c * c * g) / denom**1.5
    if geometry.region.case == EXTERIOR:
        return -core
    return core


def _h_prime(geometry: ContractionGeometry, d: np.ndarray) -> np.ndarray:
    b, g = geometry.params.beta, geometry.params.gamma
    if geometry.region.case == HALFPLANE:
        x = np.pi / d
        return -np.log(g) - np.log(np.cos(x)) - x * np.tan(x)
    c = geometry.c_star
    x = np.pi / d
    lam = np.array([lambda_star_d(geometry, float(dd)) for dd in np.atleast_1d(d)])
    lam = lam.reshape(np.shape(d))
    denom = np.sqrt(b + 2 * c + c * c * g * np.cos(x) ** 2)
    correction = c * np.pi * math.sqrt(g) * np.sin(x) / (d * denom)
    if geometry.region.case == EXTERIOR:
        return np.log(lam) / d - correction
    return np.log(lam) / d + correction


def _h_second(geometry: ContractionGeometry, d: np.ndarray) -> np.ndarray:
    # h''(d) = (pi^2 / d^3) * g''(pi - pi/d)
    if geometry.region.case == HALFPLANE:
        x = np.pi / d
        return np.pi**2 / (d**3 * np.cos(x) ** 2)
    return (np.pi**2 / d**3) * _g_second(geometry, np.pi - np.pi / d)


def convexity_diagnostics(geometry: ContractionGeometry, grid_size: int = 1000) -> ConvexityReport:
    """Numerical check of the convexity and stationarity facts behind the
    critical degree: the angular log-radius is convex on its window, the
    per-degree intercept exponent is convex in d, and its derivative
    vanishes at the critical degree."""
    region = geometry.region
    if region.case == HALFPLANE:
        x = np.linspace(math.pi / 2 + 1e-6, 3 * math.pi / 2 - 1e-6, grid_size)
        g2 = 1.0 / np.cos(x) ** 2  # (log radius)'' along the window, positive
    else:
        window = _feasible_interval(region)
        if window is None:
            lo, hi = math.pi / 2, 3 * math.pi / 2
        else:
            lo, hi = window
        x = np.linspace(lo + 1e-9, hi - 1e-9, grid_size)
        g2 = _g_second(geometry, x)
    if region.case == DISK:
        # stay inside the feasible degree range
        dgrid = np.linspace(2.0, 50.0, grid_size)
        feas = np.array([math.isfinite(lambda_star_d(geometry, float(dd))) for dd in dgrid])
        dgrid = dgrid[feas]
    else:
        dgrid = np.linspace(2.0, 50.0, grid_size)
    h2 = _h_second(geometry, dgrid)
    hp = float(_h_prime(geometry, np.array([geometry.d_star]))[0])
    return ConvexityReport(
        case=region.case,
        min_g_second=float(np.min(g2)),
        min_h_second=float(np.min(h2)),
        h_prime_at_d_star=hp,
        grid_size=grid_size,
        d_grid=(float(dgrid[0]), float(dgrid[-1])),
    )
