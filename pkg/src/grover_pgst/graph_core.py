"""Simple graphs, their symmetric arcs, and the Grover-walk matrices.

Arcs are ordered lexicographically by ``(origin, terminus)`` so that two
builds of the same graph give identical matrices.  All walk matrices are
real; they are dense up to :data:`DENSE_ARC_LIMIT` arcs and
``scipy.sparse`` CSR matrices above that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sparse

DENSE_ARC_LIMIT = 4096


class GraphError(ValueError):
    """Raised for malformed graphs or generator descriptors."""


@dataclass(frozen=True)
class Graph:
    """Finite simple graph on vertices ``0..n-1``.

    ``edges`` holds each unordered edge once as ``(u, v)`` with ``u < v``,
    sorted.  Isolated vertices are allowed here but walk matrices refuse
    them (see :attr:`isolated`).
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    degree: tuple[int, ...]

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: int | None = None) -> "Graph":
        seen: set[tuple[int, int]] = set()
        pairs = []
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {tuple(e)!r} is not a pair")
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if u < 0 or v < 0:
                raise GraphError(f"negative vertex index in edge ({u}, {v})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            pairs.append(key)
        top = max((v for _, v in pairs), default=-1) + 1
        if n is None:
            n = top
        elif top > n:
            raise GraphError(f"vertex index {top - 1} out of range for n={n}")
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        deg = [0] * n
        for u, v in pairs:
            deg[u] += 1
            deg[v] += 1
        return cls(n=n, edges=tuple(sorted(pairs)), degree=tuple(deg))

    @property
    def isolated(self) -> tuple[int, ...]:
        return tuple(u for u, d in enumerate(self.degree) if d == 0)

    @property
    def is_regular(self) -> bool:
        return len(set(self.degree)) == 1

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set

    @property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        # cached lazily on the frozen instance
        cache = self.__dict__.get("_edge_set_cache")
        if cache is None:
            cache = frozenset(self.edges)
            object.__setattr__(self, "_edge_set_cache", cache)
        return cache

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1.0
        return A

    def neighbors(self, u: int) -> list[int]:
        return sorted([b for a, b in self.edges if a == u] + [a for a, b in self.edges if b == u])

    def is_connected(self) -> bool:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n


# ---------------------------------------------------------------------------
# construction


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)], n)


def complete(n: int) -> Graph:
    if n < 2:
        raise GraphError(f"complete graph needs n >= 2, got {n}")
    return Graph.from_edges(itertools.combinations(range(n), 2), n)


def path(n: int) -> Graph:
    if n < 2:
        raise GraphError(f"path needs n >= 2, got {n}")
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], n)


def star(n: int) -> Graph:
    """Star with centre 0 and ``n - 1`` leaves."""
    if n < 2:
        raise GraphError(f"star needs n >= 2, got {n}")
    return Graph.from_edges([(0, i) for i in range(1, n)], n)


def hypercube(d: int) -> Graph:
    if d < 1:
        raise GraphError(f"hypercube needs d >= 1, got {d}")
    n = 1 << d
    return Graph.from_edges([(x, x ^ (1 << b)) for x in range(n) for b in range(d) if x < x ^ (1 << b)], n)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(outer + spokes + inner, 10)


def random_connected(n: int, p: float = 0.3, seed: int = 0) -> Graph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    if n < 2:
        raise GraphError(f"random graph needs n >= 2, got {n}")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability {p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    edges = set()
    for i in range(1, n):
        j = int(rng.integers(i))
        a, b = int(order[i]), int(order[j])
        edges.add((min(a, b), max(a, b)))
    for a, b in itertools.combinations(range(n), 2):
        if (a, b) not in edges and rng.random() < p:
            edges.add((a, b))
    return Graph.from_edges(sorted(edges), n)


_GENERATORS = {
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "path": (path, 1),
    "star": (star, 1),
    "hypercube": (hypercube, 1),
    "petersen": (petersen, 0),
}


def from_generator(descriptor: str) -> Graph:
    """Build a graph from ``kind[:params]``, e.g. ``cycle:4`` or ``random:10:0.3:7``."""
    kind, *params = descriptor.strip().split(":")
    kind = kind.lower()
    try:
        if kind == "random":
            if not 1 <= len(params) <= 3:
                raise GraphError("random takes n[:p[:seed]]")
            n = int(params[0])
            p = float(params[1]) if len(params) > 1 else 0.3
            seed = int(params[2]) if len(params) > 2 else 0
            return random_connected(n, p, seed)
        if kind not in _GENERATORS:
            raise GraphError(f"unknown generator {kind!r}; choose from {sorted(_GENERATORS) + ['random']}")
        fn, arity = _GENERATORS[kind]
        if len(params) != arity:
            raise GraphError(f"generator {kind!r} takes {arity} parameter(s), got {len(params)}")
        return fn(*(int(x) for x in params))
    except ValueError as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"bad generator parameter in {descriptor!r}: {exc}") from None


def read_edge_list(source: str | Path) -> Graph:
    """Parse a whitespace ``u v`` edge list; ``#`` starts a comment."""
    edges = []
    for lineno, raw in enumerate(Path(source).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"{source}:{lineno}: expected 'u v', got {raw.strip()!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"{source}:{lineno}: non-integer vertex in {raw.strip()!r}") from None
    if not edges:
        raise GraphError(f"{source}: no edges")
    return Graph.from_edges(edges)


def build_graph(spec, n: int | None = None) -> Graph:
    """Build a :class:`Graph` from an edge iterable or a generator descriptor string."""
    if isinstance(spec, Graph):
        return spec
    if isinstance(spec, str):
        return from_generator(spec)
    return Graph.from_edges(spec, n)


# ---------------------------------------------------------------------------
# arcs and walk matrices


@dataclass(frozen=True)
class ArcSpace:
    arcs: tuple[tuple[int, int], ...]
    inverse: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.arcs)

    def origin(self, a: int) -> int:
        return self.arcs[a][0]

    def terminus(self, a: int) -> int:
        return self.arcs[a][1]

    def index(self, arc: tuple[int, int]) -> int:
        return self._index[arc]

    @property
    def _index(self) -> dict[tuple[int, int], int]:
        cache = self.__dict__.get("_index_cache")
        if cache is None:
            cache = {a: i for i, a in enumerate(self.arcs)}
            object.__setattr__(self, "_index_cache", cache)
        return cache


def arc_space(g: Graph) -> ArcSpace:
    arcs = tuple(sorted([(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges]))
    where = {a: i for i, a in enumerate(arcs)}
    inverse = tuple(where[(v, u)] for u, v in arcs)
    return ArcSpace(arcs=arcs, inverse=inverse)


@dataclass(frozen=True)
class WalkMatrices:
    """Shift ``R``, boundary ``N``, coin ``C`` and evolution ``U = RC``."""

    arcs: ArcSpace
    R: np.ndarray | sparse.csr_matrix
    N: np.ndarray | sparse.csr_matrix
    C: np.ndarray | sparse.csr_matrix
    U: np.ndarray | sparse.csr_matrix

    @property
    def is_sparse(self) -> bool:
        return sparse.issparse(self.U)


def _require_walkable(g: Graph) -> None:
    if g.isolated:
        raise GraphError(f"isolated vertices {list(g.isolated)}: walk matrices need every degree >= 1")


def walk_matrices(g: Graph, dense: bool | None = None) -> WalkMatrices:
    _require_walkable(g)
    arcs = arc_space(g)
    m = len(arcs)
    if dense is None:
        dense = m <= DENSE_ARC_LIMIT
    rows = np.arange(m)
    R = sparse.csr_matrix((np.ones(m), (rows, np.array(arcs.inverse))), shape=(m, m))
    heads = np.array([t for _, t in arcs.arcs])
    weights = 1.0 / np.sqrt(np.array(g.degree, dtype=float)[heads])
    N = sparse.csr_matrix((weights, (heads, rows)), shape=(g.n, m))
    C = (2.0 * (N.T @ N) - sparse.identity(m)).tocsr()
    U = (R @ C).tocsr()
    if dense:
        return WalkMatrices(arcs, R.toarray(), N.toarray(), C.toarray(), U.toarray())
    return WalkMatrices(arcs, R, N, C, U)


@dataclass(frozen=True)
class Discriminant:
    """``P = N R N*`` together with the adjacency and degree data behind it."""

    P: np.ndarray
    adjacency: np.ndarray
    degrees: np.ndarray

    @property
    def n(self) -> int:
        return self.P.shape[0]

    @property
    def D(self) -> np.ndarray:
        return np.diag(self.degrees)

    @property
    def stationary(self) -> np.ndarray:
        """Unit-eigenvalue eigenvector ``D^{1/2} j`` (not normalised)."""
        return np.sqrt(self.degrees)


def discriminant(g: Graph) -> Discriminant:
    w = walk_matrices(g, dense=False)
    P = (w.N @ w.R @ w.N.T).toarray()
    P = 0.5 * (P + P.T)
    return Discriminant(P=P, adjacency=g.adjacency(), degrees=np.array(g.degree, dtype=float))


def as_matrix(P) -> np.ndarray:
    """Accept a :class:`Discriminant` or a plain square array."""
    if isinstance(P, Discriminant):
        return P.P
    return np.asarray(P, dtype=float)


def verify_automorphism(g: Graph, perm: Sequence[int]) -> tuple[bool, float]:
    """Check that ``perm`` preserves the edge set; report ``max|M P - P M|``."""
    perm = [int(x) for x in perm]
    if sorted(perm) != list(range(g.n)):
        raise GraphError(f"{perm} is not a permutation of 0..{g.n - 1}")
    is_aut = all(g.has_edge(perm[u], perm[v]) for u, v in g.edges)
    M = np.zeros((g.n, g.n))
    M[perm, np.arange(g.n)] = 1.0
    P = discriminant(g).P
    residual = float(np.max(np.abs(M @ P - P @ M)))
    return is_aut, residual
