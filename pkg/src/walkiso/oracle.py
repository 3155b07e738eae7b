"""Ground-truth isomorphism by complete backtracking search.

This module deliberately shares nothing with the diagonal-comparison
pipeline except the Graph type itself.  Its pruning is limited to degree
sequences and a single round of neighbor-degree signatures; anything
stronger would smuggle in the machinery this oracle exists to audit.
Within its node budget the answer is exact: the search space is the full
set of degree-compatible bijections.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional

from .graphs import Graph, Permutation, apply_permutation

MAX_ENUMERATION_N = 7


class BudgetExhausted(RuntimeError):
    """The search hit its node limit before completing; not a verdict."""

    def __init__(self, budget: int, nodes_explored: int):
        super().__init__(f"search budget {budget} exhausted after {nodes_explored} nodes")
        self.budget = budget
        self.nodes_explored = nodes_explored


@dataclass(frozen=True)
class OracleResult:
    """Outcome of a completed search.

    ``isomorphic`` True carries a witness ``mapping`` (already verified
    edge by edge); False means the whole space was exhausted.
    """

    isomorphic: bool
    mapping: Optional[Permutation]
    nodes_explored: int


def _neighbor_degree_signature(g: Graph) -> list[tuple[int, tuple[int, ...]]]:
    deg = g.degrees()
    adj = g.neighbors()
    return [(deg[v], tuple(sorted(deg[u] for u in adj[v]))) for v in range(g.n)]


def exact_isomorphic(g1: Graph, g2: Graph, budget: int = 10_000_000) -> OracleResult:
    """Complete search for a vertex bijection carrying g1's edges onto g2's.

    Raises BudgetExhausted if more than ``budget`` assignment attempts are
    needed; the caller decides what an unfinished search means.
    """
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return OracleResult(False, None, 0)
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return OracleResult(False, None, 0)

    sig1 = _neighbor_degree_signature(g1)
    sig2 = _neighbor_degree_signature(g2)
    if Counter(sig1) != Counter(sig2):
        return OracleResult(False, None, 0)

    n = g1.n
    deg1 = g1.degrees()
    adj1 = [set(a) for a in g1.neighbors()]
    adj2 = [set(a) for a in g2.neighbors()]

    # Deterministic assignment order: highest degree first, ties by input order.
    order = sorted(range(n), key=lambda v: (-deg1[v], v))
    candidates = [[u for u in range(n) if sig2[u] == sig1[v]] for v in order]

    mapping: list[Optional[int]] = [None] * n
    used = [False] * n
    placed: list[tuple[int, int]] = []
    nodes = 0

    def consistent(v: int, u: int) -> bool:
        # edges and non-edges to already-placed vertices must both carry over
        for w, img in placed:
            if (w in adj1[v]) != (img in adj2[u]):
                return False
        return True

    def search(depth: int) -> bool:
        nonlocal nodes
        if depth == n:
            return True
        v = order[depth]
        for u in candidates[depth]:
            if used[u]:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted(budget, nodes)
            if consistent(v, u):
                mapping[v] = u
                used[u] = True
                placed.append((v, u))
                if search(depth + 1):
                    return True
                placed.pop()
                mapping[v] = None
                used[u] = False
        return False

    if search(0):
        p = Permutation(tuple(mapping))  # type: ignore[arg-type]
        assert apply_permutation(g1, p) == g2, "internal witness failed verification"
        return OracleResult(True, p, nodes)
    return OracleResult(False, None, nodes)


def enumerate_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on n vertices, exactly once.

    Pair t of the lexicographic list (0,1), (0,2), ..., (n-2,n-1) is an edge
    iff bit t of the running index is set, so graph 0 is empty and the last
    graph is complete.
    """
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise ValueError(f"enumeration supported for 1 <= n <= {MAX_ENUMERATION_N}, got {n}")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        edges = frozenset(p for t, p in enumerate(pairs) if mask >> t & 1)
        yield Graph(n, edges)
