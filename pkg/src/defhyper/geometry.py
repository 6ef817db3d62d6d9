"""Constructible sets as finite unions of cells V(I) minus V(g_1 ... g_s).

Every dimension is the Krull dimension of a Zariski closure.  A cell with
inequations is handled through its Rabinowitsch model V(I, 1 - w*g), which
is isomorphic to the cell itself; dimensions and projection closures of the
model and of the cell coincide, so no explicit saturation is needed on the
hot paths.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ArityError, CellBudgetError, RingMismatchError, SamplingError
from .groebner import DEFAULT_PAIR_BUDGET, Ideal, buchberger, eliminate, krull_dimension, saturate
from .polycore import GREVLEX, Polynomial, Ring, derive_rng
from .solve import find_rational_point, random_affine_form

DEFAULT_CELL_BUDGET = 4096


@dataclass(frozen=True)
class Cell:
    """V(equations) minus the zero sets of the inequations."""

    equations: Ideal
    inequations: tuple = ()

    def __post_init__(self):
        ring = self.equations.ring
        ineqs = []
        for g in self.inequations:
            if g.ring != ring:
                raise RingMismatchError("inequation outside the cell's ring")
            if g.is_constant() and not g.is_zero():
                continue
            if g not in ineqs:
                ineqs.append(g)
        object.__setattr__(self, "inequations", tuple(ineqs))

    @classmethod
    def make(cls, ring, equations=(), inequations=()):
        return cls(Ideal(ring, tuple(equations)), tuple(inequations))

    @property
    def ring(self) -> Ring:
        return self.equations.ring

    def is_syntactically_empty(self) -> bool:
        return any(g.is_zero() for g in self.inequations) or any(
            f.is_constant() for f in self.equations.generators
        )

    def inequation_product(self) -> Polynomial:
        out = self.ring.one
        for g in self.inequations:
            out = out * g
        return out

    def contains(self, point) -> bool:
        return all(f.evaluate(point) == 0 for f in self.equations.generators) and all(
            g.evaluate(point) != 0 for g in self.inequations
        )

    def intersect(self, other: "Cell") -> "Cell":
        return Cell(self.equations + other.equations, self.inequations + other.inequations)

    def with_prime(self, q: int, ring: Ring) -> "Cell":
        return Cell(
            Ideal(ring, tuple(f.with_prime(q, ring) for f in self.equations.generators)),
            tuple(g.with_prime(q, ring) for g in self.inequations),
        )


@dataclass(frozen=True)
class ConstructibleSet:
    ring: Ring
    cells: tuple = ()

    def __post_init__(self):
        for c in self.cells:
            if c.ring != self.ring:
                raise RingMismatchError("cell outside the set's ring")
        object.__setattr__(self, "cells", tuple(self.cells))

    @classmethod
    def full(cls, ring):
        return cls(ring, (Cell(Ideal(ring)),))

    @classmethod
    def empty(cls, ring):
        return cls(ring, ())

    @classmethod
    def variety(cls, *equations, ring=None):
        ring = ring or equations[0].ring
        return cls(ring, (Cell(Ideal(ring, equations)),))

    @property
    def arity(self) -> int:
        return self.ring.nvars

    def union(self, other: "ConstructibleSet") -> "ConstructibleSet":
        if other.ring != self.ring:
            raise RingMismatchError("union of sets in different rings")
        return ConstructibleSet(self.ring, self.cells + other.cells)

    def intersection(self, other: "ConstructibleSet", budget: int = DEFAULT_CELL_BUDGET) -> "ConstructibleSet":
        if other.ring != self.ring:
            raise RingMismatchError("intersection of sets in different rings")
        cells = _absorb(_prune(a.intersect(b) for a in self.cells for b in other.cells))
        if len(cells) > budget:
            raise CellBudgetError(f"{len(cells)} cells exceed the budget of {budget}")
        return ConstructibleSet(self.ring, tuple(cells))

    __or__ = union
    __and__ = intersection

    def contains(self, point) -> bool:
        return any(c.contains(point) for c in self.cells)

    def with_prime(self, q: int) -> "ConstructibleSet":
        """Same integer-literal description, read modulo another prime."""
        if q == self.ring.p:
            return self
        ring = self.ring.with_prime(q)
        return ConstructibleSet(ring, tuple(c.with_prime(q, ring) for c in self.cells))


@dataclass(frozen=True)
class GenericTrialPolicy:
    """Majority vote standing in for 'a generic point satisfies P'."""

    trials: int = 5
    accept_threshold: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("at least one trial required")
        if not 0 < self.accept_threshold <= self.trials:
            raise ValueError("accept_threshold must lie in [1, trials]")


def majority(values: Sequence, policy: GenericTrialPolicy):
    """(most common value, its count, whether the count reaches the threshold)."""
    if not values:
        return None, 0, False
    counts = Counter(values)
    # ties resolve to the value seen first, keeping verdicts schedule-independent
    best = max(counts.items(), key=lambda kv: (kv[1], -values.index(kv[0])))
    return best[0], best[1], best[1] >= policy.accept_threshold


def _prune(cells):
    out = []
    for c in cells:
        if c.is_syntactically_empty() or c in out:
            continue
        out.append(c)
    return out


def _subsumes(big: Cell, small: Cell) -> bool:
    """Every constraint of ``big`` also appears in ``small``, so small is inside big."""
    return set(big.equations.generators) <= set(small.equations.generators) and set(
        big.inequations
    ) <= set(small.inequations)


def _absorb(cells):
    cells = list(cells)
    return [
        c for i, c in enumerate(cells)
        if not any(j != i and _subsumes(o, c) and not (_subsumes(c, o) and j > i) for j, o in enumerate(cells))
    ]


# ---------------------------------------------------------------- closures and dimension

def _model(cell: Cell):
    """Rabinowitsch model of the cell: (ideal, has_w); w is variable 0 when present."""
    if not cell.inequations:
        return cell.equations, False
    ring = cell.ring
    name = "w"
    while name in ring.names:
        name += "_"
    wring = ring.extend([name], front=True)
    shift = list(range(1, ring.nvars + 1))
    w = wring.gen(0)
    gens = tuple(f.embed(wring, shift) for f in cell.equations.generators)
    gens += (wring.one - w * cell.inequation_product().embed(wring, shift),)
    return Ideal(wring, gens), True


def cell_closure(c: Cell, budget: int = DEFAULT_PAIR_BUDGET) -> Ideal:
    """Ideal whose zero set is the Zariski closure of the cell."""
    if any(g.is_zero() for g in c.inequations):
        return Ideal(c.ring, (c.ring.one,))
    if not c.inequations:
        return c.equations
    return saturate(c.equations, c.inequation_product(), budget)


def cell_dimension(c: Cell, budget: int = DEFAULT_PAIR_BUDGET) -> int:
    if c.is_syntactically_empty():
        return -1
    ideal, _ = _model(c)
    return buchberger(ideal, GREVLEX, budget).dimension()


def dimension(S: ConstructibleSet, budget: int = DEFAULT_PAIR_BUDGET) -> int:
    """dim of the closure; -1 for the empty set."""
    return max((cell_dimension(c, budget) for c in S.cells), default=-1)


def is_empty(S: ConstructibleSet, budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    return all(cell_dimension(c, budget) < 0 for c in S.cells)


@dataclass(frozen=True)
class ProjectionClosure:
    coords: tuple
    ring: Ring  # ring of the kept coordinates
    ideals: tuple  # one closure ideal per cell
    cell_dimensions: tuple
    dimension: int

    def as_set(self) -> ConstructibleSet:
        return ConstructibleSet(self.ring, tuple(Cell(I) for I in self.ideals))


def _project_cell(cell, coords, kring, budget):
    if cell.is_syntactically_empty():
        return Ideal(kring, (kring.one,)), -1
    ideal, has_w = _model(cell)
    offset = 1 if has_w else 0
    keep = {c + offset for c in coords}
    drop = [i for i in range(ideal.ring.nvars) if i not in keep]
    elim = eliminate(ideal, drop, budget)
    gens = tuple(Polynomial(kring, g.terms, _clean=False) for g in elim.generators)
    lms = [g.leading_monomial(GREVLEX) for g in gens]
    return Ideal(kring, gens), krull_dimension(lms, kring.nvars)


def projection_closure(S: ConstructibleSet, coords: Sequence[int], budget: int = DEFAULT_PAIR_BUDGET) -> ProjectionClosure:
    """Closure of the coordinate projection onto ``coords`` (0-based), cell by cell."""
    coords = tuple(sorted(set(coords)))
    if not coords:
        raise ValueError("projection needs at least one coordinate")
    if coords[0] < 0 or coords[-1] >= S.arity:
        raise ArityError("projection coordinate out of range")
    kring = Ring(tuple(S.ring.names[i] for i in coords), S.ring.field)
    ideals, dims = [], []
    for cell in S.cells:
        I, d = _project_cell(cell, coords, kring, budget)
        ideals.append(I)
        dims.append(d)
    return ProjectionClosure(coords, kring, tuple(ideals), tuple(dims), max(dims, default=-1))


def projection_dimension(S: ConstructibleSet, coords: Sequence[int], budget: int = DEFAULT_PAIR_BUDGET) -> int:
    return projection_closure(S, coords, budget).dimension


# ---------------------------------------------------------------- boolean operations

def complement(S: ConstructibleSet, budget: int = DEFAULT_CELL_BUDGET) -> ConstructibleSet:
    """De Morgan expansion of the complement as a union of cells."""
    ring = S.ring
    result = [Cell(Ideal(ring))]
    for cell in S.cells:
        if cell.is_syntactically_empty():
            continue
        # not (all f = 0 and all g != 0)  ==  some f != 0  or  some g = 0
        pieces = [Cell(Ideal(ring), (f,)) for f in cell.equations.generators]
        pieces += [Cell(Ideal(ring, (g,))) for g in cell.inequations]
        result = _absorb(_prune(a.intersect(b) for a in result for b in pieces))
        if len(result) > budget:
            raise CellBudgetError(f"{len(result)} cells exceed the budget of {budget}")
    return ConstructibleSet(ring, tuple(result))


# ---------------------------------------------------------------- fibers

def fiber(S: ConstructibleSet, point: Sequence[int], split: int | None = None) -> ConstructibleSet:
    """Fiber over ``point`` in the first ``len(point)`` coordinates."""
    split = len(point) if split is None else split
    if len(point) != split or split > S.arity:
        raise ArityError("fiber point must cover exactly the base coordinates")
    ring = S.ring
    vring = Ring(ring.names[split:], ring.field)
    values = {i: a % ring.p for i, a in enumerate(point)}
    keep = list(range(split, ring.nvars))
    cells = []
    for c in S.cells:
        eqs = tuple(f.partial_evaluate(values, vring, keep) for f in c.equations.generators)
        ineqs = tuple(g.partial_evaluate(values, vring, keep) for g in c.inequations)
        cells.append(Cell(Ideal(vring, eqs), ineqs))
    return ConstructibleSet(vring, tuple(_prune(cells)))


def sample_point(cell: Cell, rng, retries: int = 10, budget: int = DEFAULT_PAIR_BUDGET):
    """A random F_p-point of the cell, found by slicing its closure with
    dim-many random affine hyperplanes."""
    d = cell_dimension(cell, budget)
    if d < 0:
        raise SamplingError("cannot sample from an empty cell")
    closure = cell_closure(cell, budget)
    for _ in range(retries):
        slices = tuple(random_affine_form(cell.ring, rng) for _ in range(d))
        pt = find_rational_point(closure + slices, rng)
        if pt is not None and cell.contains(pt):
            return pt
    raise SamplingError(f"no F_p-rational point found after {retries} slicings")


@dataclass(frozen=True)
class FiberDimensionResult:
    value: int | None
    count: int
    accepted: bool
    trials: tuple = field(default=())  # (base point, fiber dimension) per trial


def generic_fiber_dimension(
    S: ConstructibleSet, split: int, policy: GenericTrialPolicy = GenericTrialPolicy(),
    retries: int = 10, budget: int = DEFAULT_PAIR_BUDGET,
) -> FiberDimensionResult:
    """Majority fiber dimension over random points of the first projection.

    Base points are projections of random points of a top-dimensional cell,
    so they land in the actual image of the projection.
    """
    dims = [cell_dimension(c, budget) for c in S.cells]
    top = max(dims, default=-1)
    if top < 0:
        raise SamplingError("the set is empty")
    cell = S.cells[dims.index(top)]
    trials = []
    for i in range(policy.trials):
        rng = derive_rng(policy.seed, "fiber", i)
        pt = sample_point(cell, rng, retries, budget)
        base = pt[:split]
        trials.append((base, dimension(fiber(S, base, split), budget)))
    value, count, accepted = majority([d for _, d in trials], policy)
    return FiberDimensionResult(value, count, accepted, tuple(trials))
