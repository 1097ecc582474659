"""Simple undirected graphs, random min-degree-2 instances, and leaf pruning.

Vertices are 0-indexed integers. Graphs are immutable once built; all
operations return new objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GraphError, SingularPruneError


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset  # of frozenset({u, v}) pairs
    adjacency: tuple  # adjacency[v] = sorted tuple of neighbors

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list:
        return [len(a) for a in self.adjacency]

    def edge_list(self) -> list:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edges


def build_graph(n: int, edge_list) -> Graph:
    """Validate an edge list and build adjacency.

    Rejects self-loops, duplicate edges (in either orientation), and
    endpoints outside [0, n).
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    seen = set()
    adj = [[] for _ in range(n)]
    for pair in edge_list:
        u, v = pair
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        key = frozenset((u, v))
        if key in seen:
            raise GraphError(f"duplicate edge ({u},{v})")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
    return Graph(n=n, edges=frozenset(seen), adjacency=tuple(tuple(sorted(a)) for a in adj))


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Induced subgraph on the given vertex set, relabelled 0..k-1 in sorted order."""
    vs = sorted(vertices)
    index = {v: i for i, v in enumerate(vs)}
    edges = []
    for e in g.edges:
        u, v = tuple(e)
        if u in index and v in index:
            edges.append((index[u], index[v]))
    return build_graph(len(vs), edges)


def remove_vertex(g: Graph, v: int) -> Graph:
    """Graph with vertex v deleted; remaining vertices keep their labels
    shifted down by one above v."""
    keep = [u for u in range(g.n) if u != v]
    index = {u: i for i, u in enumerate(keep)}
    edges = []
    for e in g.edges:
        a, b = tuple(e)
        if a != v and b != v:
            edges.append((index[a], index[b]))
    return build_graph(g.n - 1, edges)


@dataclass
class PruneResult:
    graph: Graph
    fields: list
    multiplier: complex
    removed: list = field(default_factory=list)


def prune_leaves(g: Graph, fields, params) -> PruneResult:
    """Repeatedly strip degree-<=1 vertices, preserving Z exactly.

    Removing a leaf v with neighbor u multiplies the accumulated factor by
    (beta + lambda_v) and replaces lambda_u by
    lambda_u * (lambda_v*gamma + 1) / (lambda_v + beta).
    Isolated vertices contribute a factor (1 + lambda_v). The identity
    Z(G; fields) = multiplier * Z(G'; fields') holds exactly.

    Arithmetic is generic: Fraction fields with Fraction beta/gamma stay
    exact. Raises SingularPruneError if any intermediate field equals -beta.
    """
    beta, gamma = params.beta, params.gamma
    if len(fields) != g.n:
        raise GraphError(f"field vector length {len(fields)} != n {g.n}")
    lam = list(fields)
    labels = list(range(g.n))  # original labels, for the removal record
    cur = g
    multiplier = 1
    removed = []
    while True:
        target = None
        for v in range(cur.n):
            if cur.degree(v) <= 1:
                target = v
                break
        if target is None:
            break
        v = target
        removed.append(labels[v])
        if cur.degree(v) == 0:
            multiplier = multiplier * (1 + lam[v])
        else:
            u = cur.adjacency[v][0]
            factor = beta + lam[v]
            if factor == 0:
                raise SingularPruneError(f"field at vertex {labels[v]} equals -beta")
            multiplier = multiplier * factor
            lam[u] = lam[u] * (lam[v] * gamma + 1) / factor
        cur = remove_vertex(cur, v)
        del lam[v]
        del labels[v]
    return PruneResult(graph=cur, fields=lam, multiplier=multiplier, removed=removed)


def connected_components(g: Graph) -> list:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def random_min2_graph(n: int, max_degree: int, seed: int) -> Graph:
    """Random simple connected graph with all degrees in [2, max_degree].

    Configuration-model attempts with rejection; falls back to a cycle with
    deterministic chords if pairing keeps failing. Deterministic given seed.
    """
    if n < 3 or max_degree < 2:
        raise GraphError(f"no min-degree-2 graph with n={n}, max_degree={max_degree}")
    if n == 3 or max_degree == 2:
        # cycle is forced when max_degree == 2
        return build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    rng = np.random.default_rng(seed)
    for _ in range(100):
        degs = rng.integers(2, max_degree + 1, size=n)
        if int(degs.sum()) % 2 == 1:
            i = int(rng.integers(0, n))
            degs[i] += -1 if degs[i] > 2 else 1
            if degs[i] > max_degree:
                continue
        stubs = np.repeat(np.arange(n), degs)
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        edges = set()
        ok = True
        for u, v in pairs:
            u, v = int(u), int(v)
            if u == v or frozenset((u, v)) in edges:
                ok = False
                break
            edges.add(frozenset((u, v)))
        if not ok:
            continue
        g = build_graph(n, [tuple(sorted(e)) for e in edges])
        if is_connected(g) and all(2 <= d <= max_degree for d in g.degrees()):
            return g
    # deterministic fallback: Hamiltonian cycle plus a few chords
    edges = [(i, (i + 1) % n) for i in range(n)]
    present = {frozenset(e) for e in edges}
    degs = [2] * n
    # enumerate candidate chords in a seed-shuffled order
    candidates = [(u, v) for u in range(n) for v in range(u + 2, n) if not (u == 0 and v == n - 1)]
    order = rng.permutation(len(candidates))
    added = 0
    want = max(1, n // 3)
    for idx in order:
        u, v = candidates[int(idx)]
        if degs[u] < max_degree and degs[v] < max_degree and frozenset((u, v)) not in present:
            edges.append((u, v))
            present.add(frozenset((u, v)))
            degs[u] += 1
            degs[v] += 1
            added += 1
            if added >= want:
                break
    return build_graph(n, edges)


def read_edge_list(text: str) -> Graph:
    """Parse the edge-list format: first line "n m", then m lines "u v"."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError(f"bad header line: {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise GraphError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return build_graph(n, edges)


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    for u, v in g.edge_list():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def read_fields(text: str, n: int) -> list:
    """Parse a fields file: n lines, one decimal or "real imag" per line."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != n:
        raise GraphError(f"expected {n} field lines, got {len(lines)}")
    out = []
    for ln in lines:
        parts = ln.split()
        if len(parts) == 1:
            out.append(float(parts[0]))
        elif len(parts) == 2:
            out.append(complex(float(parts[0]), float(parts[1])))
        else:
            raise GraphError(f"bad field line: {ln!r}")
    return out
