"""Definable hypergraphs E in (F^n)^t: density reports, injectivity, induced
subhypergraphs E[f], partial substitutions and the independence criterion."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import ceil
from typing import Sequence

from .errors import ArityError, RingMismatchError
from .geometry import (
    Cell,
    ConstructibleSet,
    cell_dimension,
    complement,
    dimension,
    is_empty,
    projection_closure,
)
from .groebner import DEFAULT_PAIR_BUDGET, Ideal
from .maps import AffineMap, RationalMap, compose_affine
from .polycore import DEFAULT_PRIME, BlockMap, Polynomial, Ring, substitute_rational


def hypergraph_ring(n: int, t: int, p: int = DEFAULT_PRIME, stem: str = "x") -> Ring:
    """Variables x{i}_{j}: block i in 1..t, coordinate j in 1..n."""
    return Ring.make([f"{stem}{i}_{j}" for i in range(1, t + 1) for j in range(1, n + 1)], p)


def vertex_ring(n: int, p: int = DEFAULT_PRIME) -> Ring:
    return Ring.make([f"v{j}" for j in range(1, n + 1)], p)


@dataclass(frozen=True)
class DefinableHypergraph:
    n: int
    t: int
    set: ConstructibleSet
    components_asserted: bool = False  # user claims the cells are the irreducible components
    name: str = ""

    def __post_init__(self):
        if self.n < 1 or self.t < 1:
            raise ValueError("need n >= 1 and t >= 1")
        if self.set.arity != self.n * self.t:
            raise ArityError(f"set has arity {self.set.arity}, expected t*n = {self.t * self.n}")

    @property
    def ring(self) -> Ring:
        return self.set.ring

    @property
    def p(self) -> int:
        return self.ring.p

    def block(self, i: int) -> list:
        """0-based coordinate indices of vertex slot i (0-based)."""
        return list(range(i * self.n, (i + 1) * self.n))

    def coords(self, S: Sequence[int]) -> list:
        return [c for i in sorted(S) for c in self.block(i)]

    def with_prime(self, q: int) -> "DefinableHypergraph":
        return DefinableHypergraph(self.n, self.t, self.set.with_prime(q), self.components_asserted, self.name)

    def contains(self, edge) -> bool:
        """``edge`` is a sequence of t vertices, each of length n."""
        flat = [a for v in edge for a in v]
        return self.set.contains(flat)


def make_hypergraph(n, t, cells, p=DEFAULT_PRIME, components_asserted=False, name="") -> DefinableHypergraph:
    """Build from cells given as (equations, inequations) lists of strings or polynomials."""
    ring = hypergraph_ring(n, t, p)
    out = []
    for eqs, neqs in cells:
        conv = lambda f: ring.parse(f) if isinstance(f, str) else f
        out.append(Cell.make(ring, [conv(f) for f in eqs], [conv(g) for g in neqs]))
    return DefinableHypergraph(n, t, ConstructibleSet(ring, tuple(out)), components_asserted, name)


# ---------------------------------------------------------------- density

@dataclass(frozen=True)
class DensityReport:
    n: int
    t: int
    prime: int
    projection_dims: dict  # 1-based subset tuple -> dim proj_S E
    minimal_r: int | None  # None when some single projection is deficient
    injective: bool | None
    r: int | None = None
    thresholds: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return self.projection_dims[tuple(range(1, self.t + 1))]

    @property
    def passes(self) -> bool | None:
        if self.r is None:
            return None
        return all(self.verdicts.values())

    def to_dict(self) -> dict:
        key = lambda S: ",".join(map(str, S))
        return {
            "n": self.n,
            "t": self.t,
            "prime": self.prime,
            "dimension": self.dimension,
            "projection_dims": {key(S): d for S, d in self.projection_dims.items()},
            "minimal_r": self.minimal_r,
            "injective": self.injective,
            "r": self.r,
            "thresholds": {key(S): v for S, v in self.thresholds.items()},
            "verdicts": {key(S): v for S, v in self.verdicts.items()},
            "passes": self.passes,
        }


def threshold(size: int, n: int, r: int) -> int:
    return size * n - (size - 1) * r


def minimal_r_from_dims(dims: dict, n: int) -> int | None:
    if any(d < n for S, d in dims.items() if len(S) == 1):
        return None
    best = 0
    for S, d in dims.items():
        s = len(S)
        if s >= 2:
            best = max(best, ceil((s * n - d) / (s - 1)))
    return best


def density_report(
    E: DefinableHypergraph, r: int | None = None, check_injective: bool = True,
    budget: int = DEFAULT_PAIR_BUDGET,
) -> DensityReport:
    """dim proj_S E for every nonempty S, the minimal almost-density parameter
    and, if ``r`` is given, the verdict of each inequality."""
    dims = {}
    for size in range(1, E.t + 1):
        for S in combinations(range(E.t), size):
            if size == E.t:
                d = dimension(E.set, budget)
            else:
                d = projection_closure(E.set, E.coords(S), budget).dimension
            dims[tuple(i + 1 for i in S)] = d
    thresholds, verdicts = {}, {}
    if r is not None:
        for S, d in dims.items():
            thresholds[S] = threshold(len(S), E.n, r)
            verdicts[S] = d >= thresholds[S]
    inj = is_injective(E, budget) if check_injective else None
    return DensityReport(E.n, E.t, E.p, dims, minimal_r_from_dims(dims, E.n), inj, r, thresholds, verdicts)


def is_injective(E: DefinableHypergraph, budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    """No edge repeats a vertex: every cell meets every diagonal block_i = block_j emptily."""
    ring = E.ring
    gens = ring.gens()
    for cell in E.set.cells:
        for i, j in combinations(range(E.t), 2):
            diag = tuple(gens[a] - gens[b] for a, b in zip(E.block(i), E.block(j)))
            if cell_dimension(Cell(cell.equations + diag, cell.inequations), budget) >= 0:
                return False
    return True


# ---------------------------------------------------------------- induced hypergraphs

def _blockwise(f: RationalMap, target: Ring, offset: int, src_indices) -> BlockMap:
    positions = [offset + a for a in range(f.k)]
    nums = tuple(g.embed(target, positions) for g in f.numerators)
    den = None if f.q == f.ring.one else f.q.embed(target, positions)
    return BlockMap(tuple(src_indices), nums, den)


def induce(E: DefinableHypergraph, f: RationalMap) -> DefinableHypergraph:
    """E[f] = {(y_1..y_t) : (f(y_1), ..., f(y_t)) in E, q(y_i) != 0}."""
    if f.n != E.n:
        raise ArityError(f"map lands in F^{f.n}, hypergraph vertices live in F^{E.n}")
    if f.ring.p != E.p:
        raise RingMismatchError("map and hypergraph over different fields")
    target = hypergraph_ring(f.k, E.t, E.p)
    blocks = [_blockwise(f, target, i * f.k, E.block(i)) for i in range(E.t)]
    domain = () if f.q.is_constant() else tuple(b.denominator for b in blocks)
    cells = []
    for c in E.set.cells:
        eqs = tuple(substitute_rational(g, blocks, target) for g in c.equations.generators)
        neqs = tuple(substitute_rational(g, blocks, target) for g in c.inequations) + domain
        cells.append(Cell(Ideal(target, eqs), neqs))
    name = f"{E.name}[f]" if E.name else ""
    return DefinableHypergraph(f.k, E.t, ConstructibleSet(target, tuple(cells)), False, name)


def partial_induce(
    E: DefinableHypergraph, f: RationalMap, ells: Sequence[AffineMap], budget: int = DEFAULT_PAIR_BUDGET,
) -> ConstructibleSet:
    """Closure of E(f; l_1..l_s): the first s slots are replaced by (f o l_i)(z_i)
    and the z_i are projected away.  Lives on (F^n)^(t-s)."""
    s = len(ells)
    if s > E.t - 1:
        raise ArityError("at most t-1 slots can be substituted")
    if s == 0:
        return E.set
    comps = [compose_affine(f, ell) for ell in ells]
    znames = [f"z{i}_{j}" for i, g in enumerate(comps, 1) for j in range(1, g.k + 1)]
    rest = hypergraph_ring(E.n, E.t - s, E.p)
    target = Ring.make(znames + list(rest.names), E.p)
    blocks = []
    offset = 0
    for i, g in enumerate(comps):
        blocks.append(_blockwise(g, target, offset, E.block(i)))
        offset += g.k
    gens = target.gens()
    for i in range(s, E.t):
        src = E.block(i)
        blocks.append(BlockMap(tuple(src), tuple(gens[offset + a] for a in range(E.n))))
        offset += E.n
    domain = tuple(b.denominator for b in blocks[:s] if b.denominator is not None and not b.denominator.is_constant())
    cells = []
    for c in E.set.cells:
        eqs = tuple(substitute_rational(h, blocks, target) for h in c.equations.generators)
        neqs = tuple(substitute_rational(h, blocks, target) for h in c.inequations) + domain
        cells.append(Cell(Ideal(target, eqs), neqs))
    zcount = len(znames)
    pc = projection_closure(ConstructibleSet(target, tuple(cells)), range(zcount, target.nvars), budget)
    out = tuple(
        Cell(Ideal(rest, tuple(Polynomial(rest, g.terms, _clean=False) for g in I.generators)))
        for I, d in zip(pc.ideals, pc.cell_dimensions) if d >= 0
    )
    return ConstructibleSet(rest, out)


# ---------------------------------------------------------------- independence criterion

@dataclass(frozen=True)
class IndependenceResult:
    has_fulldim_independent_set: bool
    witness: ConstructibleSet | None
    witness_dimension: int | None
    cell_projection_dims: tuple  # per cell, dim proj_i for each slot i
    decomposition_verified: bool  # False: cells were not asserted as components

    @property
    def label(self) -> str:
        return "component-level" if self.decomposition_verified else "cell-level, decomposition-unverified"


def independence_criterion(E: DefinableHypergraph, budget: int = DEFAULT_PAIR_BUDGET) -> IndependenceResult:
    """If some cell H has dim proj_i H = n for every slot, no full-dimensional
    definable independent set exists.  Otherwise the intersection, over cells,
    of the complement of one deficient projection closure is independent."""
    vring = vertex_ring(E.n, E.p)
    per_cell = []
    chosen = []
    for cell in E.set.cells:
        single = ConstructibleSet(E.ring, (cell,))
        dims, ideals = [], []
        for i in range(E.t):
            pc = projection_closure(single, E.block(i), budget)
            dims.append(pc.dimension)
            ideals.append(pc.ideals[0])
        per_cell.append(tuple(dims))
        deficient = [i for i, d in enumerate(dims) if d < E.n]
        if not deficient:
            return IndependenceResult(False, None, None, tuple(per_cell), E.components_asserted)
        I = ideals[deficient[0]]
        chosen.append(Ideal(vring, tuple(Polynomial(vring, g.terms, _clean=False) for g in I.generators)))
    witness = ConstructibleSet.full(vring)
    for I in chosen:
        witness = witness.intersection(complement(ConstructibleSet(vring, (Cell(I),))))
    return IndependenceResult(True, witness, dimension(witness, budget), tuple(per_cell), E.components_asserted)


def witness_is_independent(E: DefinableHypergraph, W: ConstructibleSet, q: int, budget: int | None = None) -> bool:
    """Exhaustive check over F_q that no edge of E has all its vertices in W."""
    from . import oracle

    if W.arity != E.n:
        raise ArityError("witness must live in the vertex space F^n")
    kw = {} if budget is None else {"budget": budget}
    pts = oracle.enumerate_points(W, q, **kw)
    return oracle.check_edge_free(pts, E, q, **kw)
