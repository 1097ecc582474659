"""Empirical zero-freeness checks: root loci of the partition polynomial
against the delta-strip around the field segment and against the union of
the per-degree product regions, plus stability spot checks for the polar
form and for the coefficient contraction step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RegimeError
from .geometry import (
    DISK,
    EXTERIOR,
    ContractionGeometry,
    kd_boundary_cloud,
    kd_contains,
    kd_contains_batch,
    region_contains,
    region_sample,
)
from .graphs import Graph
from .partition import SpinParams, uniform_fields, z_coeffs_ray
from .polys import Poly, polar_form_eval, polar_form_weights, roots


@dataclass(frozen=True)
class StripSpec:
    """Closed region {z : |Im z| <= delta, -delta <= Re z <= lambda_prime + delta}."""

    lambda_prime: float
    delta: float


@dataclass
class RootReport:
    roots: list
    strip_distances: list
    containment: list
    min_strip_distance: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "roots": [[z.real, z.imag] for z in self.roots],
            "min_strip_distance": self.min_strip_distance,
            "containment": self.containment,
            "pass": self.passed,
        }


def strip_distance(strip: StripSpec, z: complex) -> float:
    """Euclidean distance from z to the closed strip (0 if inside)."""
    dx = max(-strip.delta - z.real, z.real - (strip.lambda_prime + strip.delta), 0.0)
    dy = max(abs(z.imag) - strip.delta, 0.0)
    return math.hypot(dx, dy)


_CLOUD_CACHE: dict = {}


def cached_cloud(geometry: ContractionGeometry, d: int, samples: int = 180) -> list:
    key = (geometry.params.beta, geometry.params.gamma, d, samples)
    if key not in _CLOUD_CACHE:
        _CLOUD_CACHE[key] = kd_boundary_cloud(geometry, d, angle_samples=samples)
    return _CLOUD_CACHE[key]


def _segment_distance(z: complex, hi: float) -> float:
    """Distance from z to the real segment [0, hi]."""
    x = min(max(z.real, 0.0), hi)
    return abs(z - x)


def _degree_set(geometry: ContractionGeometry, g: Graph, lam_max: float) -> list:
    """Degrees of g, truncated once the product region provably clears the
    relevant window: the region modulus floor grows geometrically in d, so
    degrees whose K_d stays beyond 2*lambda_star cannot constrain the strip."""
    degs = sorted(set(g.degrees()))
    out = []
    region = geometry.region
    for d in degs:
        if d < 2:
            raise RegimeError("strip construction needs minimum degree >= 2")
        if region.case == DISK:
            floor = (abs(region.c) - region.r) ** d
        elif region.case == EXTERIOR:
            floor = (region.r - region.c) ** d
        else:
            floor = (1.0 / geometry.params.gamma) ** d
        if floor > 2 * geometry.lambda_star and floor > 4 * max(lam_max, 1.0):
            continue
        out.append(d)
    if not out:
        out = [min(degs)]
    return out


def default_strip(geometry: ContractionGeometry, g: Graph, safety: float,
                  samples: int = 180) -> StripSpec:
    """Strip around [0, safety * lambda_star] with half-width set to half the
    sampled distance from the segment to the nearest relevant K_d."""
    if not (0 < safety < 1):
        raise ValueError("safety must be in (0, 1)")
    lam_prime = safety * geometry.lambda_star
    best = math.inf
    from .geometry import lambda_star_d

    for d in _degree_set(geometry, g, lam_prime):
        cloud = cached_cloud(geometry, d, samples)
        for z in cloud:
            best = min(best, _segment_distance(z, lam_prime))
        # the positive-real intercept of K_d is its closest approach to the
        # segment endpoint; include it exactly so sampling cannot overshoot
        intercept = lambda_star_d(geometry, d)
        if math.isfinite(intercept):
            best = min(best, _segment_distance(complex(intercept, 0.0), lam_prime))
    if not math.isfinite(best):
        raise DomainError("no region cloud points available for the degree set")
    delta = best / 2
    if delta < 1e-6:
        raise DomainError(f"strip width {delta} below floor 1e-6")
    return StripSpec(lambda_prime=lam_prime, delta=delta)


def root_locus_check(g: Graph, params: SpinParams, strip: StripSpec,
                     geometry: ContractionGeometry = None,
                     restarts: int = 24, seed: int = 0,
                     slack: float = 1e-4) -> RootReport:
    """Roots of Z(g; lambda) with uniform field versus the strip and the
    per-degree product regions."""
    from .geometry import build_geometry

    if min(g.degrees()) < 2:
        raise RegimeError("root locus check requires minimum degree >= 2")
    if geometry is None:
        geometry = build_geometry(params)
    p = z_coeffs_ray(g, params, uniform_fields(g.n, 1.0), g.n)
    rts = roots(p)
    dists = [strip_distance(strip, z) for z in rts]
    degs = sorted(set(g.degrees()))
    contain = [False] * len(rts)
    for d in degs:
        pending = [i for i, ok in enumerate(contain) if not ok]
        if not pending:
            break
        got = kd_contains_batch(
            geometry, d, [rts[i] for i in pending],
            restarts=restarts, seed=seed, rel_slack=slack,
        )
        for i, ok in zip(pending, got):
            contain[i] = ok
    passed = all(d > 0 for d in dists) and all(contain)
    return RootReport(
        roots=rts,
        strip_distances=dists,
        containment=contain,
        min_strip_distance=min(dists) if dists else math.inf,
        passed=passed,
    )


def gws_spot_check(p: Poly, d: int, region, samples: int = 1000, seed: int = 0,
                   stability_floor: float = 1e-9):
    """Sample tuples from the complement of the region and check the polar
    form never vanishes there. Precondition: p itself has no root in the
    complement. Returns (True, None) or (False, witness_tuple)."""
    for z in roots(p):
        if not region_contains(region, z, tol=1e-7):
            raise ValueError(f"precondition violated: root {z} outside the region")
    weights = polar_form_weights(p, d)
    rng = np.random.default_rng(seed)
    # bounding box around the complement
    if region.case == DISK:
        span = 2.0 * (abs(region.c) + region.r) + 2.0
        center = 0.0
    elif region.case == EXTERIOR:
        span = 2.0 * (abs(region.c) + region.r)
        center = region.c
    else:
        span = 4.0 * max(1.0, abs(region.bound))
        center = region.bound + span / 2
    scale = max(abs(w) for w in weights) or 1.0
    got = 0
    while got < samples:
        zs = []
        while len(zs) < d:
            z = complex(
                center + rng.uniform(-span, span), rng.uniform(-span, span)
            )
            if not region_contains(region, z):
                zs.append(z)
        got += 1
        val = polar_form_eval(weights, zs)
        if abs(val) <= stability_floor * scale:
            return False, tuple(zs)
    return True, None


def asano_spot_check(geometry: ContractionGeometry, d: int, trials: int = 100,
                     seed: int = 0, restarts: int = 24) -> bool:
    """Draw d points of K, contract the degree-d polynomial with those roots
    to its extreme coefficients, and confirm the surviving root lies in K_d.

    By Vieta the contracted root is (-1)^{d+1} times the product of the
    drawn points, so this exercises kd_contains against explicit members.
    """
    pts = region_sample(geometry.region, trials * d, seed=seed)
    targets = []
    for t in range(trials):
        prod = 1.0 + 0.0j
        for z in pts[t * d : (t + 1) * d]:
            prod *= z
        targets.append((-1) ** (d + 1) * prod)
    got = kd_contains_batch(
        geometry, d, targets, restarts=restarts, seed=seed, rel_slack=1e-6
    )
    return all(got)


@dataclass
class SweepSummary:
    total: int
    passed: int
    worst_strip_distance: float
    worst_containment_ok: bool
    failures: list

    def to_json_dict(self) -> dict:
        return {
            "total": self.total,
            "passed": self.passed,
            "worst_strip_distance": self.worst_strip_distance,
            "all_contained": self.worst_containment_ok,
            "failures": self.failures,
        }


def verify_sweep(count: int, n_max: int, deg_max: int, params_list, seed: int = 0,
                 safety: float = 0.9, restarts: int = 24) -> SweepSummary:
    """Random min-degree-2 instances at each parameter pair, checked for
    strip zero-freeness and product-region containment."""
    from .geometry import build_geometry
    from .graphs import random_min2_graph

    rng = np.random.default_rng(seed)
    total = 0
    passed = 0
    worst = math.inf
    all_contained = True
    failures = []
    for params in params_list:
        geometry = build_geometry(params)
        for i in range(count):
            n = int(rng.integers(3, n_max + 1))
            g = random_min2_graph(n, deg_max, int(rng.integers(0, 2**31)))
            strip = default_strip(geometry, g, safety)
            report = root_locus_check(
                g, params, strip, geometry=geometry, restarts=restarts, seed=seed + i
            )
            total += 1
            worst = min(worst, report.min_strip_distance)
            if not all(report.containment):
                all_contained = False
            if report.passed:
                passed += 1
            else:
                failures.append(
                    {
                        "params": [params.beta, params.gamma],
                        "n": g.n,
                        "edges": g.edge_list(),
                        "min_strip_distance": report.min_strip_distance,
                        "containment": report.containment,
                    }
                )
    return SweepSummary(
        total=total,
        passed=passed,
        worst_strip_distance=worst if total else math.inf,
        worst_containment_ok=all_contained,
        failures=failures,
    )
