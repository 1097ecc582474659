"""Deterministic approximation of the partition function.

The pipeline approximates Z(G; lambda) through the univariate ray
f(t) = Z(G; t * fields): a low-degree covering map phi sends the closed
unit disk into a thin zero-free strip around [0, 1], the composition
h = f o phi is therefore zero-free on a disk of radius rho > 1, and the
truncated Taylor series of log h at 0 evaluated at w = 1 recovers log f(1)
with a certified tail bound.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, DomainError, RegimeError
from .geometry import ContractionGeometry, build_geometry
from .graphs import Graph, prune_leaves
from .partition import SpinParams, z_coeffs_ray
from .polys import Poly, compose_truncate, log_series, roots
from .verification import StripSpec, _degree_set, _segment_distance, cached_cloud

MATERIALIZE_N_CAP = 8192  # largest covering-map degree kept as coefficients
COMPOSE_M_CAP = 4096  # largest truncation order composed into a log series
M_SEARCH_CAP = 200000
BOUNDARY_SAMPLES = 10**4


class CoveringMap:
    """Polynomial map of the closed unit disk into a delta-strip of
    [0, lambda_prime], with phi(0) = 0 and phi(1) = lambda_prime.

    Shape: phi(w) = lambda_prime * (sum_{j=1}^N (alpha w)^j / j) / S with
    S the value of the sum at w = 1. Small maps carry their coefficients;
    large maps store eps = 1 - alpha and evaluate through the closed form
    -log((1 - w) + eps*w), whose distance to the degree-N truncation is
    below 1e-16 on the disk once N >= 36/eps (certified by the geometric
    tail alpha^{N+1} / ((N+1) * (1-alpha))).
    """

    def __init__(self, lambda_prime: float, alpha: float, n_degree: int,
                 coeffs=None, s_norm: float = None):
        self.lambda_prime = lambda_prime
        self.alpha = alpha
        self.eps = 1.0 - alpha
        self.N = n_degree
        self._coeffs = coeffs  # low-to-high, includes the zero constant
        if s_norm is not None:
            self.s_norm = s_norm
        else:
            self.s_norm = -math.log(self.eps)

    @property
    def degree(self) -> int:
        return self.N

    @property
    def materialized(self) -> bool:
        return self._coeffs is not None

    def coeff(self, j: int) -> float:
        if j == 0:
            return 0.0
        if self._coeffs is not None:
            return self._coeffs[j] if j < len(self._coeffs) else 0.0
        if j > self.N:
            return 0.0
        # alpha^j / (j * S), scaled; log1p keeps tiny eps exact
        return self.lambda_prime * math.exp(j * math.log1p(-self.eps)) / (j * self.s_norm)

    def poly(self, m: int) -> Poly:
        return Poly([self.coeff(j) for j in range(min(m, self.N) + 1)])

    def full_poly(self) -> Poly:
        if self._coeffs is None:
            raise BudgetError(f"covering map degree {self.N} too large to materialize")
        return Poly(list(self._coeffs))

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        if self._coeffs is not None:
            val = np.polyval(self._coeffs[::-1], w)
        else:
            val = self.lambda_prime * (-np.log((1.0 - w) + self.eps * w)) / self.s_norm
        if val.ndim == 0:
            return complex(val)
        return val


def _image_ok(phi: CoveringMap, delta: float, samples: int = BOUNDARY_SAMPLES) -> float:
    """Worst excursion of the sampled unit-circle image beyond the strip
    (<= 0 means contained)."""
    th = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    img = phi(np.exp(1j * th))
    lp = phi.lambda_prime
    excess = np.maximum.reduce(
        [
            np.abs(img.imag) - delta,
            -delta - img.real,
            img.real - (lp + delta),
        ]
    )
    return float(np.max(excess))


_COVER_CACHE: dict = {}


def covering_map(delta: float, lambda_prime: float,
                 budget: int = MATERIALIZE_N_CAP) -> CoveringMap:
    """Construct a covering map for the delta-strip of [0, lambda_prime].

    Escalates the degree N with an alpha grid, accepting the first map whose
    sampled unit-circle image stays inside the strip; beyond the budget it
    switches to the closed-form family, whose required eps = e^{-pi/(2 dhat)}
    makes N astronomically large but evaluation and coefficients stay cheap.
    """
    if delta <= 0 or lambda_prime <= 0:
        raise ValueError("delta and lambda_prime must be positive")
    dhat = delta / lambda_prime
    key = (round(dhat, 9), budget)
    if key in _COVER_CACHE:
        base = _COVER_CACHE[key]
        return _rescale(base, lambda_prime)
    phi = _build_normalized(dhat, budget)
    _COVER_CACHE[key] = phi
    return _rescale(phi, lambda_prime)


def _rescale(phi: CoveringMap, lambda_prime: float) -> CoveringMap:
    if phi.lambda_prime == lambda_prime:
        return phi
    scale = lambda_prime / phi.lambda_prime
    coeffs = None if phi._coeffs is None else [c * scale for c in phi._coeffs]
    out = CoveringMap(lambda_prime, phi.alpha, phi.N, coeffs=coeffs, s_norm=phi.s_norm)
    return out


def _build_normalized(dhat: float, budget: int) -> CoveringMap:
    delta, lp = dhat, 1.0
    if dhat >= 1.0:
        # the scaled identity already fits the fat strip
        return CoveringMap(lp, 1.0, 1, coeffs=[0.0, 1.0], s_norm=1.0)
    best_excess = math.inf
    best_tag = None
    n = 2
    while n <= budget:
        for c in (0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0):
            alpha = 1.0 - c / n
            if alpha <= 0:
                continue
            js = np.arange(1, n + 1, dtype=float)
            terms = alpha**js / js
            s = float(terms.sum())
            coeffs = [0.0] + list(lp * terms / s)
            phi = CoveringMap(lp, alpha, n, coeffs=coeffs, s_norm=s)
            excess = _image_ok(phi, delta)
            if excess <= 0:
                return phi
            if excess < best_excess:
                best_excess = excess
                best_tag = (alpha, n)
        n *= 2
    # closed-form regime: |Im(-log(1 - alpha w))| <= arcsin(alpha) < pi/2,
    # so eps = e^{-pi/(2 dhat)} puts the image strictly inside the strip
    eps = math.exp(-math.pi / (2 * dhat))
    for _ in range(200):
        n_big = int(math.ceil(36.0 / eps))
        phi = CoveringMap(lp, 1.0 - eps, n_big)
        if _image_ok(phi, delta) <= 0:
            return phi
        eps *= 0.7
    raise BudgetError(
        f"covering map search exhausted; best excursion {best_excess} at {best_tag}"
    )


@dataclass
class TruncationPlan:
    k: int
    N: int
    m: int
    alpha: float
    rho_estimate: float
    epsilon: float


@dataclass
class ApproxResult:
    value: float
    plan: TruncationPlan
    tail_bound: float
    prune_multiplier: complex
    strip: StripSpec = None
    exact_route: bool = False

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "k": self.plan.k,
            "N": self.plan.N,
            "m": self.plan.m,
            "alpha": self.plan.alpha,
            "rho": self.plan.rho_estimate,
            "tail_bound": self.tail_bound,
            "prune_multiplier": [
                complex(self.prune_multiplier).real,
                complex(self.prune_multiplier).imag,
            ],
        }


def rho_estimate(h: Poly) -> float:
    """Smallest root modulus of h, floored just above 1."""
    if h.coeff(0) == 0:
        raise ValueError("rho estimate undefined: h(0) = 0")
    if h.degree < 1:
        return math.inf
    rts = roots(h)
    rho = min(abs(z) for z in rts)
    floor = 1.0 + 1e-9
    if rho < floor:
        warnings.warn(f"zero-free radius estimate {rho} at floor", RuntimeWarning)
        return floor
    return rho


def zero_free_radius(f: Poly, phi: CoveringMap, r_cap: float = 4.0,
                     samples: int = 8192) -> float:
    """Largest sampled radius r <= r_cap with h = f(phi(w)) zero-free on
    |w| <= r, found by argument-principle winding and bisection.

    h is zero-free on the closed unit disk by construction (phi maps it
    into the zero-free strip), so the returned radius always exceeds 1.
    Evaluation goes through phi directly, which stays stable at degrees
    where the composed coefficient vector is hopeless to root-find.
    """
    fc = np.asarray([complex(x) for x in f.c], dtype=complex)[::-1]
    w = np.exp(2j * np.pi * np.arange(samples) / samples)

    def winding(r: float) -> int:
        hv = np.polyval(fc, phi(r * w))
        ph = np.angle(hv)
        d = np.diff(np.concatenate([ph, ph[:1]]))
        d = (d + np.pi) % (2 * np.pi) - np.pi
        return abs(int(round(float(d.sum()) / (2 * np.pi))))

    lo = 1.0
    excess = 1e-6
    hi = None
    while lo + excess <= r_cap:
        if winding(lo + excess) > 0:
            hi = lo + excess
            break
        lo = lo + excess
        excess *= 2.0
    if hi is None:
        return r_cap
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if winding(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-12 * hi:
            break
    if lo <= 1.0 + 1e-9:
        warnings.warn(f"zero-free radius estimate {lo} at floor", RuntimeWarning)
        return 1.0 + 1e-9
    return lo


def _tail_bound(big_d: float, rho: float, m: int) -> float:
    # |L_j| <= D / (j * rho^j) summed over j > m
    return big_d * rho ** (-m) / ((1.0 - 1.0 / rho) * m)


def _choose_m(big_d: float, rho: float, epsilon: float, cap: int = M_SEARCH_CAP) -> int:
    for m in range(1, cap + 1):
        if _tail_bound(big_d, rho, m) <= epsilon / 2:
            return m
    raise BudgetError(
        f"truncation order beyond {cap} needed (D={big_d}, rho={rho}, eps={epsilon})"
    )


def approx_strip(geometry: ContractionGeometry, g: Graph, lam_max: float,
                 samples: int = 180) -> StripSpec:
    """Zero-free strip around the actual field segment [0, lam_max]."""
    best = math.inf
    for d in _degree_set(geometry, g, lam_max):
        for z in cached_cloud(geometry, d, samples):
            best = min(best, _segment_distance(z, lam_max))
    delta = best / 2
    if not (delta > 1e-6):
        raise DomainError(f"strip width {delta} below floor 1e-6")
    return StripSpec(lambda_prime=lam_max, delta=delta)


def approx_z(g: Graph, params: SpinParams, fields, epsilon: float,
             use_connected_route: bool = False) -> ApproxResult:
    """Certified (1 +- epsilon) approximation of Z(g; fields).

    Requires nonnegative real fields strictly below the field threshold of
    the parameters. Leaf pruning runs first and is exact; the remaining
    min-degree-2 graph goes through the covering-map pipeline.
    """
    params.require_ferro()
    if not (0 < epsilon < 1):
        raise RegimeError(f"epsilon {epsilon} outside (0, 1)")
    geometry = build_geometry(params)
    for lam in fields:
        if isinstance(lam, complex) or lam < 0:
            raise RegimeError(f"fields must be nonnegative reals, got {lam}")
        if lam >= geometry.lambda_star:
            raise RegimeError(
                f"field {lam} is not below the threshold {geometry.lambda_star}"
            )
    pruned = prune_leaves(g, list(fields), params)
    g2, fields2 = pruned.graph, pruned.fields
    multiplier = pruned.multiplier
    trivial_plan = TruncationPlan(k=0, N=0, m=0, alpha=0.0, rho_estimate=math.inf,
                                  epsilon=epsilon)
    lam_max = max((float(x) for x in fields2), default=0.0)
    base = params.beta ** g2.m
    if g2.n == 0 or lam_max == 0.0:
        # all remaining fields zero: f is the constant beta^{|E'|}
        return ApproxResult(
            value=float(multiplier * base),
            plan=trivial_plan,
            tail_bound=0.0,
            prune_multiplier=multiplier,
            exact_route=True,
        )
    strip = approx_strip(geometry, g2, lam_max)
    # work along t in [0, 1]: each t*lambda_v stays delta_t away from the
    # product regions, with delta_t the spatial clearance over lam_max
    delta_t = strip.delta / lam_max
    k = g2.n
    if use_connected_route:
        from .partition import log_series_connected
        from .polys import exp_series

        ls0 = log_series_connected(g2, params, fields2, k)
        e = exp_series(ls0.coeffs, k)
        f = Poly([x * math.exp(ls0.log_p0) for x in e])
    else:
        f = z_coeffs_ray(g2, params, fields2, k)
    phi = covering_map(delta_t, 1.0)
    big_d = float(k) * float(phi.N)
    if not phi.materialized:
        # the map is so contracted near w = 1 that the zero-free radius of
        # the composition exceeds 1 by roughly e^{-pi/(2*dhat)}; no feasible
        # truncation order can certify the tail
        raise BudgetError(
            f"strip ratio {delta_t:.4g} needs covering-map degree {phi.N}; "
            "certified truncation is out of reach at this scale"
        )
    rho = zero_free_radius(f, phi)
    m = _choose_m(big_d, rho, epsilon)
    if m > COMPOSE_M_CAP:
        raise BudgetError(
            f"certified truncation order {m} exceeds the composition cap "
            f"{COMPOSE_M_CAP}"
        )
    # the order-m coefficients of h = f(phi(w)) only need phi truncated at m
    h_trunc = compose_truncate(f, phi.poly(m), m)
    ls = log_series(h_trunc, m)
    tail = _tail_bound(big_d, rho, m)
    log_h1 = ls.log_p0 + sum(ls.coeffs)
    value = multiplier * math.exp(log_h1.real if isinstance(log_h1, complex) else log_h1)
    plan = TruncationPlan(k=k, N=phi.N, m=m, alpha=phi.alpha, rho_estimate=rho,
                          epsilon=epsilon)
    return ApproxResult(
        value=float(value),
        plan=plan,
        tail_bound=tail,
        prune_multiplier=multiplier,
        strip=strip,
    )
