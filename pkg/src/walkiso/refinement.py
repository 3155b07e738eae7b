"""Vertex ordering by closed-walk profiles and ordered-partition refinement.

A vertex's profile at order k is the vector of its closed-walk counts for
lengths 2..k (length 1 is identically zero on simple graphs and refines
nothing).  Sorting vertices lexicographically by profile induces an ordered
partition into maximal equal-profile runs; raising the order refines that
partition block by block.  The partition always stores original vertex ids,
so no matrix is ever physically permuted: relabeling commutes with matrix
powering, which makes the virtual ordering equivalent to conjugating and
re-powering at every step.

Tie-breaking within an equal-profile block is stable by current position.
Any other tie-break is equally valid and, by design, yields the same
per-order diagonal vectors; tests exercise that with randomized tie-breaks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Sequence

from .graphs import Permutation
from .matrices import OpCounter, PowerDiagonals


@dataclass(frozen=True)
class ConnectivityProfile:
    """Per-vertex closed-walk count vectors for orders 2..k.

    ``rows[i]`` is indexed by original vertex id and holds
    (count at order 2, ..., count at order k); ``rows[i][0]`` equals the
    degree of vertex i.
    """

    k: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"profiles start at order 2, got k={self.k}")
        want = self.k - 1
        for i, row in enumerate(self.rows):
            if len(row) != want:
                raise ValueError(f"row {i} has {len(row)} orders, expected {want}")
            if any(v < 0 for v in row):
                raise ValueError(f"negative walk count in row {i}")

    @property
    def n(self) -> int:
        return len(self.rows)

    @staticmethod
    def from_power_diagonals(diags: PowerDiagonals, k: int) -> "ConnectivityProfile":
        cols = [diags.diagonal(order) for order in range(2, k + 1)]
        return ConnectivityProfile(k, tuple(zip(*cols)))


@dataclass(frozen=True)
class OrderedPartition:
    """Ordered blocks of original vertex ids.

    Reading the blocks left to right gives the current labeling; vertices in
    one block are interchangeable at the current order, and block boundaries
    are strict profile increases.
    """

    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen = sorted(v for block in self.classes for v in block)
        if seen != list(range(len(seen))) or not seen:
            raise ValueError("blocks must partition 0..n-1 and be non-empty")
        if any(not block for block in self.classes):
            raise ValueError("empty block")

    @staticmethod
    def single_block(n: int) -> "OrderedPartition":
        return OrderedPartition((tuple(range(n)),))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.classes)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.classes)

    @property
    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.classes)

    def ordering(self) -> tuple[int, ...]:
        """Original vertex ids in current-position order."""
        return tuple(v for block in self.classes for v in block)

    def position_permutation(self) -> Permutation:
        """Permutation sending original id to current position."""
        mapping = [0] * self.n
        for pos, v in enumerate(self.ordering()):
            mapping[v] = pos
        return Permutation(tuple(mapping))


@dataclass(frozen=True)
class KDiagonal:
    """Order-k closed-walk counts listed in rearranged vertex order."""

    values: tuple[int, ...]


def self_connectivity(diags: PowerDiagonals, k: int) -> tuple[int, ...]:
    """Closed-walk counts of length k, one per vertex, in original labeling."""
    return diags.diagonal(k)


def _scalar_cmp(a: int, b: int, counter: OpCounter | None) -> int:
    if counter is not None:
        counter.count_comparisons()
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def _lex_cmp(a: Sequence[int], b: Sequence[int], counter: OpCounter | None) -> int:
    for x, y in zip(a, b):
        c = _scalar_cmp(x, y, counter)
        if c:
            return c
    return 0


def k_rearrangement(
    profile: ConnectivityProfile, counter: OpCounter | None = None
) -> tuple[Permutation, OrderedPartition]:
    """Sort vertices by profile; return the relabeling and the run partition.

    The sort is lexicographic over the full order-2..k profile vectors and
    stable with respect to vertex id, so equal-profile vertices keep their
    relative order.  Blocks are the maximal runs of equal profiles.
    """
    rows = profile.rows
    order = sorted(
        range(profile.n),
        key=cmp_to_key(lambda i, j: _lex_cmp(rows[i], rows[j], counter)),
    )

    blocks: list[tuple[int, ...]] = []
    start = 0
    for idx in range(1, len(order)):
        if _lex_cmp(rows[order[idx - 1]], rows[order[idx]], counter) != 0:
            blocks.append(tuple(order[start:idx]))
            start = idx
    blocks.append(tuple(order[start:]))

    partition = OrderedPartition(tuple(blocks))
    return partition.position_permutation(), partition


def k_diagonal(profile: ConnectivityProfile, p: Permutation) -> KDiagonal:
    """Order-k counts read off in the order given by rearrangement ``p``.

    ``p`` may be any rearrangement that sorts the profiles; the result is
    the same for all of them.  A permutation that does not sort the profiles
    violates the contract and is rejected.
    """
    if len(p) != profile.n:
        raise ValueError(f"permutation length {len(p)} != vertex count {profile.n}")
    inv = p.inverse()
    by_position = tuple(profile.rows[inv[pos]] for pos in range(profile.n))
    for pos in range(1, profile.n):
        if by_position[pos - 1] > by_position[pos]:
            raise ValueError(f"permutation does not sort profiles at position {pos}")
    return KDiagonal(tuple(row[-1] for row in by_position))


def refine(
    prev: OrderedPartition,
    new_values: Sequence[int],
    counter: OpCounter | None = None,
) -> OrderedPartition:
    """Split each block of ``prev`` by sorting it on the next-order counts.

    ``new_values`` is indexed by original vertex id.  Within a block the
    sort is stable by current position; block order is preserved, so the
    result refines ``prev``.
    """
    if len(new_values) != prev.n:
        raise ValueError(f"got {len(new_values)} values for {prev.n} vertices")
    blocks: list[tuple[int, ...]] = []
    for block in prev.classes:
        if len(block) == 1:
            blocks.append(block)
            continue
        order = sorted(
            block,
            key=cmp_to_key(lambda u, v: _scalar_cmp(new_values[u], new_values[v], counter)),
        )
        start = 0
        for idx in range(1, len(order)):
            if _scalar_cmp(new_values[order[idx - 1]], new_values[order[idx]], counter) != 0:
                blocks.append(tuple(order[start:idx]))
                start = idx
        blocks.append(tuple(order[start:]))
    return OrderedPartition(tuple(blocks))
