"""Dense symmetric matrices over exact non-negative integers.

Python ints are arbitrary precision, which is load-bearing here: entries of
high matrix powers overflow any fixed-width type long before the interesting
instance sizes, and every downstream comparison must be exact.  Powers are
computed incrementally (multiply by the base once per step) because every
intermediate diagonal is consumed; repeated squaring would skip the ones we
need.  Multiplication is schoolbook O(n^3) on purpose: the operation counter
models exactly that cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import mul
from typing import Iterable, Iterator, Sequence, Union

Rows = tuple[tuple[int, ...], ...]


@dataclass
class OpCounter:
    """Running tally of scalar work and of integer growth.

    Multiplications and additions are credited in bulk per matrix multiply
    (n^3 and n^2*(n-1) for schoolbook n x n) rather than inside the inner
    loop, so counting does not distort the timings it is meant to explain.
    Comparisons are credited by the sort and equality routines that perform
    them.  ``max_bitlen`` tracks the widest integer seen in any observed
    matrix.
    """

    mults: int = 0
    adds: int = 0
    comparisons: int = 0
    max_bitlen: int = 0

    def count_matmul(self, n: int) -> None:
        self.mults += n * n * n
        self.adds += n * n * (n - 1)

    def count_comparisons(self, k: int = 1) -> None:
        self.comparisons += k

    def observe_entries(self, rows: Rows) -> None:
        widest = max(max(row) for row in rows)
        bits = widest.bit_length()
        if bits > self.max_bitlen:
            self.max_bitlen = bits

    def to_json_dict(self) -> dict:
        return {
            "mults": self.mults,
            "adds": self.adds,
            "comparisons": self.comparisons,
            "max_bitlen": self.max_bitlen,
        }


@dataclass(frozen=True)
class ExactSymMatrix:
    """Immutable n x n symmetric matrix with non-negative integer entries."""

    rows: Rows

    def __post_init__(self) -> None:
        n = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            for j, v in enumerate(row):
                if v < 0:
                    raise ValueError(f"negative entry {v} at ({i},{j})")
                if j < i and v != self.rows[j][i]:
                    raise ValueError(f"asymmetric at ({i},{j}): {v} != {self.rows[j][i]}")

    @property
    def n(self) -> int:
        return len(self.rows)

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]]) -> "ExactSymMatrix":
        return ExactSymMatrix(tuple(tuple(int(v) for v in row) for row in rows))

    @staticmethod
    def identity(n: int) -> "ExactSymMatrix":
        return ExactSymMatrix(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(n: int) -> "ExactSymMatrix":
        return ExactSymMatrix(tuple((0,) * n for _ in range(n)))

    def is_unit_hollow(self) -> bool:
        """True for 0/1 entries with an all-zero diagonal (adjacency shape)."""
        return all(
            row[i] == 0 and all(v in (0, 1) for v in row)
            for i, row in enumerate(self.rows)
        )


MatrixLike = Union[ExactSymMatrix, Sequence[Sequence[int]]]


def _as_rows(m: MatrixLike) -> Rows:
    if isinstance(m, ExactSymMatrix):
        return m.rows
    return tuple(tuple(row) for row in m)


def mat_mul(a: MatrixLike, b: MatrixLike, counter: OpCounter | None = None) -> Rows:
    """Exact product of two square matrices, returned as raw rows.

    ``a`` is typically an accumulated power (not necessarily an
    ExactSymMatrix instance); ``b`` is the base.  Cost is schoolbook:
    n^3 multiplications and n^2*(n-1) additions, credited to ``counter``.
    """
    arows = _as_rows(a)
    brows = _as_rows(b)
    n = len(arows)
    if len(brows) != n or any(len(r) != n for r in brows):
        raise ValueError(f"dimension mismatch: {n} x {len(brows)}")
    bcols = tuple(zip(*brows))
    out = tuple(
        tuple(sum(map(mul, arow, bcol)) for bcol in bcols) for arow in arows
    )
    if counter is not None:
        counter.count_matmul(n)
        counter.observe_entries(out)
    return out


def trace(m: MatrixLike) -> int:
    rows = _as_rows(m)
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("trace requires a square matrix")
    return sum(rows[i][i] for i in range(len(rows)))


def _diag(rows: Rows) -> tuple[int, ...]:
    return tuple(rows[i][i] for i in range(len(rows)))


@dataclass(frozen=True)
class PowerDiagonals:
    """Diagonals of A^1 .. A^k_max; ``diag[k-1]`` holds the order-k vector."""

    k_max: int
    diag: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.k_max < 1 or len(self.diag) != self.k_max:
            raise ValueError(f"expected {self.k_max} diagonal vectors, got {len(self.diag)}")

    @property
    def n(self) -> int:
        return len(self.diag[0])

    def diagonal(self, k: int) -> tuple[int, ...]:
        if not 1 <= k <= self.k_max:
            raise ValueError(f"power {k} outside computed range 1..{self.k_max}")
        return self.diag[k - 1]


def walk_diagonal_stream(
    a: ExactSymMatrix, counter: OpCounter | None = None
) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield (k, diagonal of A^k) for k = 1, 2, 3, ... without end.

    For adjacency-shaped inputs (0/1, zero diagonal) every entry of A^k is
    also checked against the closed-form ceiling n^(k-1); a violation would
    mean the arithmetic itself is broken, so it is a hard assertion rather
    than a recoverable error.
    """
    bound_checked = a.is_unit_hollow()
    n = a.n
    if counter is not None:
        counter.observe_entries(a.rows)
    yield 1, _diag(a.rows)
    cur: Rows = a.rows
    k = 1
    while True:
        cur = mat_mul(cur, a, counter)
        k += 1
        if bound_checked:
            ceiling = n ** (k - 1)
            assert all(
                v <= ceiling for row in cur for v in row
            ), f"entry of power {k} exceeds {n}^{k - 1}"
        yield k, _diag(cur)


def power_sequence(
    a: ExactSymMatrix, k_max: int, counter: OpCounter | None = None
) -> PowerDiagonals:
    """Diagonals of A^1 .. A^k_max, computed by incremental powering."""
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    diags = []
    for k, d in walk_diagonal_stream(a, counter):
        diags.append(d)
        if k == k_max:
            break
    return PowerDiagonals(k_max, tuple(diags))
