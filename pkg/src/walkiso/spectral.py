"""Trace-based characteristic polynomials and a diagonal-equality probe.

The power traces g_k = tr(A^k) determine the characteristic polynomial of a
symmetric matrix through Newton's identities; since the traces are in turn
sums of per-vertex closed-walk counts, equal walk diagonals at every order
force equal spectra.  The probe below tests the stronger claim that equal
diagonals of A^j and B^j for all j up to the dimension force A == B as
matrices.  That claim is refutable: a pair of distinct adjacency matrices of
the same vertex-transitive graph has constant, equal diagonals at every
power.  The probe reports exactly what it finds and the harness persists any
Identical outcome on distinct matrices as a falsification event.

Everything here is exact integer/rational arithmetic.  The float variant
exists for poking at real-valued matrices and is quarantined from the
falsification machinery: tolerance choices must never manufacture evidence.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Optional, Sequence

from .matrices import ExactSymMatrix, walk_diagonal_stream


class ProbeOutcome(str, enum.Enum):
    IDENTICAL = "Identical"
    FIRST_DIFFERENCE = "FirstDifference"


@dataclass(frozen=True)
class ProbeResult:
    outcome: ProbeOutcome
    power: Optional[int] = None
    index: Optional[int] = None

    @staticmethod
    def identical() -> "ProbeResult":
        return ProbeResult(ProbeOutcome.IDENTICAL)

    @staticmethod
    def first_difference(power: int, index: int) -> "ProbeResult":
        return ProbeResult(ProbeOutcome.FIRST_DIFFERENCE, power, index)

    @property
    def is_identical(self) -> bool:
        return self.outcome is ProbeOutcome.IDENTICAL


@dataclass(frozen=True)
class CharPoly:
    """Monic polynomial, coefficients leading-first; integer when possible."""

    coefficients: tuple

    def __post_init__(self) -> None:
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("characteristic polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def charpoly_from_traces(traces: Sequence[int]) -> CharPoly:
    """Characteristic polynomial recovered from tr(A^1) .. tr(A^n).

    Newton's identities give the elementary symmetric functions e_m of the
    eigenvalues from the power sums: m*e_m = sum_{j=1..m} (-1)^(j-1)
    e_{m-j} * g_j.  The coefficient of x^(n-m) is then (-1)^m * e_m.
    Arithmetic runs over exact rationals; integer inputs always reduce to
    integer coefficients.
    """
    if not traces:
        raise ValueError("need at least one power trace")
    n = len(traces)
    g = [Fraction(t) for t in traces]
    e = [Fraction(1)]  # e[0]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(1, m + 1):
            term = e[m - j] * g[j - 1]
            acc += term if j % 2 == 1 else -term
        e.append(acc / m)

    coeffs = []
    for m in range(n + 1):
        c = e[m] if m % 2 == 0 else -e[m]
        coeffs.append(int(c) if c.denominator == 1 else c)
    return CharPoly(tuple(coeffs))


def theorem1_probe(a: ExactSymMatrix, b: ExactSymMatrix) -> ProbeResult:
    """Compare diag(A^j) with diag(B^j) exactly for j = 1..n.

    Returns the first (power, index) where they differ, or Identical if all
    n powers agree entrywise on the diagonal.
    """
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    n = a.n
    stream_a = walk_diagonal_stream(a)
    stream_b = walk_diagonal_stream(b)
    for _ in range(n):
        j, da = next(stream_a)
        _, db = next(stream_b)
        for i in range(n):
            if da[i] != db[i]:
                return ProbeResult.first_difference(j, i)
    return ProbeResult.identical()


def theorem1_probe_float(
    a: Sequence[Sequence[float]],
    b: Sequence[Sequence[float]],
    rel_tol: float = 1e-9,
) -> ProbeResult:
    """Float analogue of the probe, for exploration only.

    Closeness is decided by ``math.isclose`` with the given relative
    tolerance (plus a tiny absolute floor for zeros).  Results from this
    function must never be treated as exact evidence.
    """
    n = len(a)
    if len(b) != n or any(len(r) != n for r in a) or any(len(r) != n for r in b):
        raise ValueError("both matrices must be square with equal dimension")

    def fmul(x, y):
        return [
            [sum(x[i][t] * y[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]

    pa = [list(r) for r in a]
    pb = [list(r) for r in b]
    for j in range(1, n + 1):
        for i in range(n):
            if not math.isclose(pa[i][i], pb[i][i], rel_tol=rel_tol, abs_tol=1e-12):
                return ProbeResult.first_difference(j, i)
        if j < n:
            pa = fmul(pa, a)
            pb = fmul(pb, b)
    return ProbeResult.identical()


def probe_falsification_event(a: ExactSymMatrix, b: ExactSymMatrix) -> dict:
    """Evidence bundle for distinct matrices whose power diagonals all agree."""
    return {
        "claim": "distinct_matrices_identical_diagonals",
        "description": (
            "two unequal symmetric non-negative matrices have identical "
            "power diagonals at every order up to the dimension"
        ),
        "n": a.n,
        "matrix_a": [list(r) for r in a.rows],
        "matrix_b": [list(r) for r in b.rows],
    }


def random_symmetric_matrix(
    rng: Random, n: int, max_entry: int = 1, equal_row_sums: bool = False
) -> ExactSymMatrix:
    """Random symmetric non-negative matrix for probe harnesses.

    Plain mode draws every entry on or above the diagonal uniformly from
    0..max_entry.  Equal-row-sum mode instead sums t = max(1, ceil of
    max_entry/2) terms of the form P + P^T for uniform random permutation
    matrices P, which keeps all row sums at exactly 2t while still varying
    the entry pattern; entries then range up to 2t.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if max_entry < 1:
        raise ValueError(f"max_entry must be >= 1, got {max_entry}")
    if not equal_row_sums:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = rng.randint(0, max_entry)
                rows[i][j] = v
                rows[j][i] = v
        return ExactSymMatrix(tuple(tuple(r) for r in rows))

    t = max(1, (max_entry + 1) // 2)
    rows = [[0] * n for _ in range(n)]
    for _ in range(t):
        perm = list(range(n))
        rng.shuffle(perm)
        for i, j in enumerate(perm):
            rows[i][j] += 1
            rows[j][i] += 1
    return ExactSymMatrix(tuple(tuple(r) for r in rows))
