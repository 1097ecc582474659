"""Exact partition functions for two-state spin systems.

Configurations assign each vertex state 0 or 1. A configuration with m0
edges inside the 0-set, m1 edges inside the 1-set, and 1-set S weighs
beta^m0 * gamma^m1 * prod_{v in S} lambda_v. The partition function sums
this over all 2^n configurations; viewed along the ray t -> t*lambda it is
a polynomial in t whose coefficients this module extracts, either by subset
enumeration or via connected induced subgraphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BudgetError, RegimeError
from .graphs import Graph, induced_subgraph
from .polys import LogSeries, Poly, log_series

Z_EXACT_BUDGET = 24  # 2^24 configurations
SUBGRAPH_BUDGET = 10**7


@dataclass(frozen=True)
class SpinParams:
    """Edge interaction pair; ferromagnetic means beta*gamma > 1, beta >= gamma."""

    beta: float
    gamma: float

    def __post_init__(self):
        if not (self.beta > 0 and self.gamma > 0):
            raise RegimeError(f"interactions must be positive, got ({self.beta}, {self.gamma})")

    @property
    def ferromagnetic(self) -> bool:
        return self.beta >= self.gamma and self.beta * self.gamma > 1

    def require_ferro(self):
        if not self.ferromagnetic:
            raise RegimeError(
                f"({self.beta}, {self.gamma}) violates beta >= gamma and beta*gamma > 1"
            )


def uniform_fields(n: int, lam) -> list:
    return [lam] * n


def _edges_inside(g: Graph, mask: int) -> int:
    count = 0
    for e in g.edges:
        u, v = tuple(e)
        if (mask >> u) & 1 and (mask >> v) & 1:
            count += 1
    return count


def z_exact(g: Graph, params: SpinParams, fields):
    """Direct enumeration over all 2^n configurations.

    Generic arithmetic: exact for Fraction inputs. Raises BudgetError above
    the enumeration budget (default n = 24).
    """
    n = g.n
    if n > Z_EXACT_BUDGET:
        raise BudgetError(
            f"n={n} exceeds exact-enumeration budget {Z_EXACT_BUDGET}; "
            "use the approximation pipeline"
        )
    if len(fields) != n:
        raise ValueError("field vector length mismatch")
    beta, gamma = params.beta, params.gamma
    m = g.m
    edge_pairs = [tuple(e) for e in g.edges]
    total = 0
    for mask in range(1 << n):
        m1 = 0
        for u, v in edge_pairs:
            if (mask >> u) & 1 and (mask >> v) & 1:
                m1 += 1
        m_cross = 0
        for u, v in edge_pairs:
            if ((mask >> u) & 1) != ((mask >> v) & 1):
                m_cross += 1
        m0 = m - m1 - m_cross
        w = beta**m0 * gamma**m1
        for v in range(n):
            if (mask >> v) & 1:
                w = w * fields[v]
        total = total + w
    return total


def z_coeffs_ray(g: Graph, params: SpinParams, fields, k: int) -> Poly:
    """Coefficients of f(t) = Z(g; t * fields) for powers 0..k.

    Coefficient of t^j sums over j-subsets S:
    (prod_{v in S} lambda_v) * beta^{edges outside S} * gamma^{edges inside S}.
    """
    n = g.n
    if k > n:
        k = n
    beta, gamma = params.beta, params.gamma
    m = g.m
    edge_pairs = [tuple(e) for e in g.edges]
    coeffs = []
    for j in range(k + 1):
        acc = 0
        for subset in combinations(range(n), j):
            inset = set(subset)
            m1 = 0
            m_cross = 0
            for u, v in edge_pairs:
                ui, vi = u in inset, v in inset
                if ui and vi:
                    m1 += 1
                elif ui or vi:
                    m_cross += 1
            w = beta ** (m - m1 - m_cross) * gamma**m1
            for v in subset:
                w = w * fields[v]
            acc = acc + w
        coeffs.append(acc)
    return Poly(coeffs)


def _connected_induced_subsets(g: Graph, max_size: int, budget: int = SUBGRAPH_BUDGET):
    """Yield all connected induced vertex sets of size <= max_size, each
    exactly once.

    Sets grow from their minimum vertex; a new candidate may only be an
    exclusive neighbor (adjacent to the just-added vertex but to nothing
    already in the set), which is what makes the enumeration duplicate-free.
    """
    count = 0
    for root in range(g.n):
        count += 1
        if count > budget:
            raise BudgetError(f"connected-subgraph budget {budget} exceeded")
        yield frozenset([root])
        if max_size == 1:
            continue
        stack = [(frozenset([root]), [u for u in g.adjacency[root] if u > root])]
        while stack:
            vs, ext = stack.pop()
            ext = list(ext)
            while ext:
                w = ext.pop()
                nvs = vs | {w}
                count += 1
                if count > budget:
                    raise BudgetError(f"connected-subgraph budget {budget} exceeded")
                yield nvs
                if len(nvs) < max_size:
                    closed = set(nvs)
                    for v in vs:
                        closed.update(g.adjacency[v])
                    new_ext = ext + [
                        u
                        for u in g.adjacency[w]
                        if u > root and u not in closed and u not in ext
                    ]
                    stack.append((nvs, new_ext))


def log_series_connected(g: Graph, params: SpinParams, fields, m: int) -> LogSeries:
    """Order-m log series of f(t)/f(0) from connected induced subgraphs only.

    Works with the normalized ratio q(t) = f(t) / beta^{|E|}: writing
    mu_v = lambda_v * beta^{-deg(v)}, each vertex subset S contributes
    prod_{v in S}(mu_v t) * (beta*gamma)^{edges inside S}, so q is
    multiplicative over vertex-disjoint unions and log q is additive. Each
    connected induced subgraph H of size <= m gets a cluster coefficient
    a(H) = ell(H) - sum over proper connected induced subgraphs of H, where
    ell(H) is the order-m log series of H's own ratio polynomial; summing
    a(H) over all H reproduces log q through order m. The constant term is
    |E| * log(beta).
    """
    if m < 1:
        raise ValueError("order must be >= 1")
    beta, gamma = params.beta, params.gamma
    exact = isinstance(beta, Fraction) or isinstance(gamma, Fraction)
    bg = beta * gamma
    mu = []
    for v in range(g.n):
        d = g.degree(v)
        if exact:
            mu.append(Fraction(fields[v]) / Fraction(beta) ** d)
        else:
            mu.append(fields[v] * beta ** (-d))

    def ratio_series(vs: frozenset) -> list:
        # order-m log series of q_H(t) = sum_S prod(mu_v t) * bg^{e(S)}
        vlist = sorted(vs)
        idx = {v: i for i, v in enumerate(vlist)}
        h = induced_subgraph(g, vlist)
        edge_pairs = [tuple(e) for e in h.edges]
        size = len(vlist)
        coeffs = [0] * (min(size, m) + 1)
        coeffs[0] = 1
        for j in range(1, len(coeffs)):
            acc = 0
            for subset in combinations(range(size), j):
                inset = set(subset)
                e_in = sum(1 for u, v in edge_pairs if u in inset and v in inset)
                w = bg**e_in
                for i in subset:
                    w = w * mu[vlist[i]]
                acc = acc + w
            coeffs[j] = acc
        return log_series(Poly(coeffs), m).coeffs

    # cluster coefficients via inclusion-exclusion over connected induced subsets
    a = {}
    all_sets = sorted(_connected_induced_subsets(g, m), key=len)
    for vs in all_sets:
        ell = ratio_series(vs)
        sub = [0] * m
        for other in all_sets:
            if other != vs and other < vs:
                avals = a[other]
                for j in range(m):
                    sub[j] = sub[j] + avals[j]
        a[vs] = [ell[j] - sub[j] for j in range(m)]
    total = [0] * m
    for vals in a.values():
        for j in range(m):
            total[j] = total[j] + vals[j]
    return LogSeries(log_p0=g.m * math.log(float(beta)), coeffs=total, order=m)
