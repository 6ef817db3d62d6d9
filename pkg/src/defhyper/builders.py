"""Named example hypergraphs and sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import ArityError
from .geometry import Cell, ConstructibleSet
from .hypergraph import DefinableHypergraph, hypergraph_ring
from .polycore import DEFAULT_PRIME, Ring, as_rng


@dataclass(frozen=True)
class SplitSet:
    """A set in F^n x F^m; the first n coordinates form the base block."""

    set: ConstructibleSet
    n: int
    m: int
    name: str = ""

    def __post_init__(self):
        if self.set.arity != self.n + self.m:
            raise ArityError("split does not match the ambient arity")


def split_ring(n: int, m: int, p: int = DEFAULT_PRIME) -> Ring:
    return Ring.make([f"u{j}" for j in range(1, n + 1)] + [f"v{j}" for j in range(1, m + 1)], p)


def ap(n: int = 1, t: int = 3, p: int = DEFAULT_PRIME) -> DefinableHypergraph:
    """t-term arithmetic progressions in F^n with x_1 != x_2."""
    if t < 3:
        raise ValueError("progressions need t >= 3")
    ring = hypergraph_ring(n, t, p)
    x = lambda i, j: ring.var(f"x{i}_{j}")
    eqs = tuple(x(i + 2, j) - 2 * x(i + 1, j) + x(i, j) for i in range(1, t - 1) for j in range(1, n + 1))
    # x_1 != x_2 is a disjunction over coordinates
    cells = tuple(Cell.make(ring, eqs, [x(1, j) - x(2, j)]) for j in range(1, n + 1))
    return DefinableHypergraph(n, t, ConstructibleSet(ring, cells), n == 1, f"ap(n={n},t={t})")


def subspace(n: int = 3, k: int = 1, p: int = DEFAULT_PRIME) -> DefinableHypergraph:
    """Pairs x != y with x - y in V, V the coordinate subspace {v_1 = ... = v_k = 0}.

    dim V = n - k, so dim E = 2n - k.
    """
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    ring = hypergraph_ring(n, 2, p)
    x = lambda i, j: ring.var(f"x{i}_{j}")
    eqs = [x(1, j) - x(2, j) for j in range(1, k + 1)]
    cells = tuple(Cell.make(ring, eqs, [x(1, j) - x(2, j)]) for j in range(k + 1, n + 1))
    return DefinableHypergraph(n, 2, ConstructibleSet(ring, cells), n - k == 1, f"subspace(n={n},k={k})")


def sharpness(n: int = 2, p: int = DEFAULT_PRIME) -> DefinableHypergraph:
    """Non-collinear triples: the complement of the rank <= 1 locus of
    [x_2 - x_1; x_3 - x_1].  Every affine line pulls it back to the empty set."""
    if n < 2:
        raise ValueError("collinearity is vacuous for n < 2")
    ring = hypergraph_ring(n, 3, p)
    x = lambda i, j: ring.var(f"x{i}_{j}")
    cells = []
    for a, b in combinations(range(1, n + 1), 2):
        minor = (x(2, a) - x(1, a)) * (x(3, b) - x(1, b)) - (x(2, b) - x(1, b)) * (x(3, a) - x(1, a))
        cells.append(Cell.make(ring, (), [minor]))
    return DefinableHypergraph(n, 3, ConstructibleSet(ring, tuple(cells)), False, f"sharpness(n={n})")


def axes(n: int = 1, p: int = DEFAULT_PRIME) -> DefinableHypergraph:
    """(F^n x {0}) union ({0} x F^n), cells asserted to be the components."""
    ring = hypergraph_ring(n, 2, p)
    x = lambda i, j: ring.var(f"x{i}_{j}")
    cells = (
        Cell.make(ring, [x(2, j) for j in range(1, n + 1)]),
        Cell.make(ring, [x(1, j) for j in range(1, n + 1)]),
    )
    return DefinableHypergraph(n, 2, ConstructibleSet(ring, cells), True, f"axes(n={n})")


def full(n: int = 1, t: int = 2, p: int = DEFAULT_PRIME) -> DefinableHypergraph:
    ring = hypergraph_ring(n, t, p)
    return DefinableHypergraph(n, t, ConstructibleSet.full(ring), True, f"full(n={n},t={t})")


def lines(p: int = DEFAULT_PRIME) -> SplitSet:
    """A = {(x, y, z) : y = z x, x != 0} in F^2 x F, written as (u1, u2, v1)."""
    ring = split_ring(2, 1, p)
    u1, u2, v1 = ring.gens()
    return SplitSet(ConstructibleSet(ring, (Cell.make(ring, [u2 - v1 * u1], [u1]),)), 2, 1, "lines")


def linear_graph(n: int = 2, m: int = 1, seed=0, p: int = DEFAULT_PRIME) -> SplitSet:
    """Graph {v = M u} of a random linear map F^n -> F^m."""
    rng = as_rng(seed)
    ring = split_ring(n, m, p)
    g = ring.gens()
    eqs = []
    for i in range(m):
        row = ring.zero
        for j in range(n):
            row = row + g[j].scale(rng.randrange(p))
        eqs.append(g[n + i] - row)
    return SplitSet(ConstructibleSet(ring, (Cell.make(ring, eqs),)), n, m, f"linear_graph(n={n},m={m})")


BUILDERS = {
    "ap": ap,
    "subspace": subspace,
    "sharpness": sharpness,
    "axes": axes,
    "full": full,
    "lines": lines,
    "linear_graph": linear_graph,
}


def build_example(name: str, **params):
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown example {name!r}; choose from {', '.join(sorted(BUILDERS))}") from None
    return builder(**params)
