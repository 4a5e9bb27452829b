"""Right-angled Artin groups: clique pairs and the two-clique number z.

For a simple graph G the associated group has one generator per vertex
and a commuting relation per edge.  The quantity z(G) -- the maximum
number of vertices covered by two cliques -- equals the topological
complexity of the group (Cohen-Pruidze); a disjoint clique pair (K1,
K2) certifies the lower bound |K1| + |K2| via the coordinate retraction
onto the free abelian subgroup spanned by K2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .presentations import Presentation
from .words import Word, commutator, generator


class GraphError(ValueError):
    """Invalid graph data or size limit exceeded."""


DEFAULT_VERTEX_LIMIT = 64


@dataclass(frozen=True)
class SimpleGraph:
    """A finite simple graph on vertices 1..n."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (1 <= u < v <= self.n):
                raise GraphError(f"edge ({u},{v}) not of the form 1 <= u < v <= n")

    @staticmethod
    def from_edges(n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        normalized = frozenset((min(u, v), max(u, v)) for u, v in edges)
        return SimpleGraph(n, normalized)

    def adjacency_masks(self) -> list[int]:
        """adj[v] = bitmask of neighbours of v (bit i <-> vertex i+1)."""
        adj = [0] * (self.n + 1)
        for u, v in self.edges:
            adj[u] |= 1 << (v - 1)
            adj[v] |= 1 << (u - 1)
        return adj

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = sorted(set(vertices))
        for v in vs:
            if not 1 <= v <= self.n:
                raise GraphError(f"vertex {v} out of range")
        return all((u, v) in self.edges for u, v in combinations(vs, 2))

    def clique_number(self) -> int:
        if self.n == 0:
            return 0
        return max(len(c) for c in maximal_cliques(self))


@dataclass(frozen=True)
class CliquePair:
    """Two cliques and the size of their vertex union."""

    k1: tuple[int, ...]
    k2: tuple[int, ...]
    union_size: int

    def __post_init__(self) -> None:
        if self.union_size != len(set(self.k1) | set(self.k2)):
            raise GraphError("union size does not match the clique pair")


def maximal_cliques(graph: SimpleGraph, vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> list[tuple[int, ...]]:
    """All inclusion-maximal cliques, each sorted, via Bron-Kerbosch with pivot."""
    if graph.n > vertex_limit:
        raise GraphError(f"graph has {graph.n} vertices, limit is {vertex_limit}")
    adj = graph.adjacency_masks()
    nbr = [0] * graph.n
    for v in range(1, graph.n + 1):
        nbr[v - 1] = adj[v]
    out: list[tuple[int, ...]] = []

    def bits(mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(tuple(i + 1 for i in bits(r)))
            return
        pivot = max(bits(p | x), key=lambda i: (nbr[i] & p).bit_count())
        for i in list(bits(p & ~nbr[pivot])):
            b = 1 << i
            expand(r | b, p & nbr[i], x & nbr[i])
            p &= ~b
            x |= b

    if graph.n:
        expand(0, (1 << graph.n) - 1, 0)
    return sorted(out)


def z_number(graph: SimpleGraph, vertex_limit: int = DEFAULT_VERTEX_LIMIT) -> tuple[int, CliquePair]:
    """max |K1 union K2| over clique pairs, with a lexicographically
    minimal witness among the maximizing pairs of maximal cliques."""
    if graph.n < 1:
        raise GraphError("graph must have at least one vertex")
    cliques = maximal_cliques(graph, vertex_limit)
    masks = [sum(1 << (v - 1) for v in c) for c in cliques]
    best = -1
    witness = None
    for i in range(len(cliques)):
        for j in range(i, len(cliques)):
            size = (masks[i] | masks[j]).bit_count()
            if size > best:
                best = size
                witness = (cliques[i], cliques[j])
    assert witness is not None
    return best, CliquePair(witness[0], witness[1], best)


def raag_presentation(graph: SimpleGraph) -> Presentation:
    """One generator per vertex, a commutator relator per edge."""
    names = tuple(f"x{v}" for v in range(1, graph.n + 1))
    rels: list[Word] = []
    for u, v in sorted(graph.edges):
        rels.append(commutator(generator(u, graph.n), generator(v, graph.n)))
    return Presentation(names, tuple(rels))


def clique_pair_bound(graph: SimpleGraph, k1: Sequence[int], k2: Sequence[int]):
    """Certified lower bound |K1| + |K2| = chd(Z^m x Z^n) from disjoint cliques.

    Returns (bound, certificate); the certificate machine-checks the
    coordinate retraction killing every generator outside K2.
    """
    from .bounds import verify_raag_retraction

    s1, s2 = sorted(set(k1)), sorted(set(k2))
    if set(s1) & set(s2):
        raise GraphError("cliques must be disjoint")
    if not graph.is_clique(s1):
        raise GraphError(f"K1 = {s1} is not a clique")
    if not graph.is_clique(s2):
        raise GraphError(f"K2 = {s2} is not a clique")
    cert = verify_raag_retraction(graph, s1, s2)
    return len(s1) + len(s2), cert
