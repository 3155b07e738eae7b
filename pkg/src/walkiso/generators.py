"""Seeded instance generators and graph6 corpus ingestion.

All randomness flows through ``random.Random`` (the Mersenne Twister) seeded
with a caller-supplied 64-bit value, and every draw pattern below is fixed:
same seed, same instance, on any platform.  Permutations use an explicit
Fisher-Yates loop rather than library shuffle so the exact PRNG consumption
is spelled out in this file.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from random import Random
from typing import Callable, Iterable, Iterator, Optional, Union

from .graphs import Graph, ParseError, Permutation, apply_permutation, parse_graph6

_SEED_LIMIT = 1 << 64
# odd constant with well-mixed bits; spaces derived streams apart
_SEED_STRIDE = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class Seed:
    """64-bit unsigned seed value."""

    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < _SEED_LIMIT:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.value}")


SeedLike = Union[Seed, int]


def _seed_value(seed: SeedLike) -> int:
    if isinstance(seed, Seed):
        return seed.value
    return Seed(seed).value


def rng_from_seed(seed: SeedLike) -> Random:
    return Random(_seed_value(seed))


def derive_seed(seed: SeedLike, index: int) -> Seed:
    """Child seed for stream ``index``; distinct indices give distinct seeds."""
    if index < 0:
        raise ValueError(f"stream index must be non-negative, got {index}")
    return Seed((_seed_value(seed) + _SEED_STRIDE * (index + 1)) % _SEED_LIMIT)


def random_permutation(rng: Random, n: int) -> Permutation:
    """Uniform permutation by Fisher-Yates, consuming one randrange per step."""
    mapping = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.randrange(i + 1)
        mapping[i], mapping[j] = mapping[j], mapping[i]
    return Permutation(tuple(mapping))


def gnp(n: int, p: float, seed: SeedLike) -> Graph:
    """Each unordered pair kept independently with probability ``p``.

    Pairs are visited row-major ((0,1), (0,2), ..., (n-2,n-1)) with one
    uniform draw per pair, compared as ``draw < p``.
    """
    if n < 1:
        raise ValueError(f"vertex count must be positive, got {n}")
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = rng_from_seed(seed)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return Graph(n, frozenset(edges))


def random_regular(n: int, d: int, seed: SeedLike, max_attempts: int = 100_000) -> Graph:
    """Uniform-ish d-regular graph via the pairing model with full restarts.

    Each attempt shuffles n*d half-edge points and pairs them consecutively;
    any self-loop or repeated edge discards the whole attempt.  Restarting
    keeps the sampler simple and the success chance per attempt is roughly
    exp((1 - d*d) / 4), so this is practical for small d only.
    """
    if d < 0 or d >= max(n, 1):
        raise ValueError(f"degree {d} must satisfy 0 <= d < n = {n}")
    if (n * d) % 2 != 0:
        raise ValueError(f"no {d}-regular graph on {n} vertices: n*d must be even")
    if d == 0:
        return Graph(n, frozenset())
    rng = rng_from_seed(seed)
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(max_attempts):
        for i in range(len(points) - 1, 0, -1):
            j = rng.randrange(i + 1)
            points[i], points[j] = points[j], points[i]
        edges = set()
        ok = True
        for t in range(0, len(points), 2):
            u, v = points[t], points[t + 1]
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph(n, frozenset(edges))
    raise RuntimeError(
        f"pairing model failed to produce a simple {d}-regular graph on {n} "
        f"vertices in {max_attempts} attempts; success odds fall off sharply "
        f"with d, try a larger attempt budget or a smaller degree"
    )


def permuted_pair(g: Graph, seed: SeedLike) -> tuple[Graph, Graph, Permutation]:
    """(g, relabeled g, the relabeling), with the relabeling drawn uniformly."""
    sigma = random_permutation(rng_from_seed(seed), g.n)
    return g, apply_permutation(g, sigma), sigma


@dataclass(frozen=True)
class CorpusEntry:
    """One parsed corpus line; the source line number starts at 1."""

    lineno: int
    graph: Graph
    text: str


def load_corpus(
    path: str,
    on_error: str = "raise",
    error_sink: Optional[Callable[[int, str], None]] = None,
) -> Iterator[CorpusEntry]:
    """Stream graphs from a file of graph6 lines, in file order.

    Blank lines are ignored.  A malformed line either aborts with a
    ParseError naming the line (``on_error="raise"``) or is skipped
    (``on_error="skip"``), reporting through ``error_sink`` when given and
    a warning otherwise.
    """
    if on_error not in ("raise", "skip"):
        raise ValueError(f"on_error must be 'raise' or 'skip', got {on_error!r}")
    with open(path, encoding="ascii") as handle:
        for lineno, raw in enumerate(handle, start=1):
            text = raw.strip()
            if not text:
                continue
            try:
                graph = parse_graph6(text)
            except ParseError as exc:
                message = f"line {lineno}: {exc}"
                if on_error == "raise":
                    raise ParseError(message) from None
                if error_sink is not None:
                    error_sink(lineno, str(exc))
                else:
                    warnings.warn(f"skipping malformed corpus {message}")
                continue
            yield CorpusEntry(lineno, graph, text)
