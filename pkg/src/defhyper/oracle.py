"""Brute-force enumeration over small prime fields.

Everything here is independent of the Groebner machinery: polynomials are
evaluated on explicit grids with numpy, so the counts serve as a second
opinion on every symbolic dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import median
from typing import Sequence

import numpy as np

from .errors import ArityError, EnumerationBudgetError
from .geometry import ConstructibleSet

DEFAULT_ENUMERATION_BUDGET = 10**7
_CHUNK = 1 << 18


def _poly_values(f, cols, q):
    """Values of f mod q at the points whose coordinates are the columns ``cols``."""
    npts = cols.shape[1] if cols.ndim == 2 else 0
    acc = np.zeros(npts, dtype=np.int64)
    pw = {}
    for m, c in f.terms.items():
        term = np.full(npts, c % q, dtype=np.int64)
        for i, e in enumerate(m):
            if e:
                key = (i, e)
                if key not in pw:
                    pw[key] = np.array([pow(a, e, q) for a in range(q)], dtype=np.int64)[cols[i]]
                term = term * pw[key] % q
        acc = (acc + term) % q
    return acc


def _membership(S: ConstructibleSet, cols, q):
    npts = cols.shape[1]
    hit = np.zeros(npts, dtype=bool)
    for cell in S.cells:
        ok = np.ones(npts, dtype=bool)
        for f in cell.equations.generators:
            ok &= _poly_values(f, cols, q) == 0
        for g in cell.inequations:
            ok &= _poly_values(g, cols, q) != 0
        hit |= ok
    return hit


def _grid_chunks(nvars, q):
    total = q**nvars
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        cols = np.empty((nvars, idx.size), dtype=np.int64)
        # first coordinate most significant, matching itertools.product order
        for i in range(nvars - 1, -1, -1):
            cols[i] = idx % q
            idx = idx // q
        yield cols


def _reduced(S: ConstructibleSet, q: int) -> ConstructibleSet:
    return S if S.ring.p == q else S.with_prime(q)


def _check_budget(size, budget):
    if size > budget:
        raise EnumerationBudgetError(f"{size} grid points exceed the enumeration budget of {budget}")


def membership_mask(S: ConstructibleSet, q: int, budget: int = DEFAULT_ENUMERATION_BUDGET):
    Sq = _reduced(S, q)
    _check_budget(q**S.arity, budget)
    if S.arity == 0:
        return np.array([bool(Sq.contains(()))])
    return np.concatenate([_membership(Sq, cols, q) for cols in _grid_chunks(S.arity, q)])


def enumerate_points(S: ConstructibleSet, q: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> list:
    """All F_q-points of S in lexicographic order, coefficients reduced mod q."""
    Sq = _reduced(S, q)
    _check_budget(q**S.arity, budget)
    if S.arity == 0:
        return [()] if Sq.contains(()) else []
    out = []
    for cols in _grid_chunks(S.arity, q):
        mask = _membership(Sq, cols, q)
        out.extend(map(tuple, cols[:, mask].T.tolist()))
    return out


def count_points(S: ConstructibleSet, q: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    return int(membership_mask(S, q, budget).sum())


def count_projection(S: ConstructibleSet, coords: Sequence[int], q: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    """Number of distinct images of F_q-points of S under a coordinate projection."""
    return count_projections(S, [coords], q, budget)[0]


def count_projections(S: ConstructibleSet, coord_sets: Sequence, q: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> list:
    """count_projection for several coordinate sets from a single grid scan."""
    Sq = _reduced(S, q)
    _check_budget(q**S.arity, budget)
    coord_sets = [sorted(set(c)) for c in coord_sets]
    for c in coord_sets:
        if not c or c[0] < 0 or c[-1] >= S.arity:
            raise ArityError("projection coordinates out of range")
    seen = [set() for _ in coord_sets]
    for cols in _grid_chunks(S.arity, q):
        mask = _membership(Sq, cols, q)
        if not mask.any():
            continue
        pts = cols[:, mask]
        for c, acc in zip(coord_sets, seen):
            weights = np.array([q ** (len(c) - 1 - a) for a in range(len(c))], dtype=np.int64)
            acc.update(np.unique(weights @ pts[c]).tolist())
    return [len(s) for s in seen]


@dataclass(frozen=True)
class CountProfile:
    primes: tuple
    counts: tuple
    estimated_dim: int | None  # None means indeterminate

    def to_dict(self) -> dict:
        return {
            "primes": list(self.primes),
            "counts": list(self.counts),
            "estimated_dim": "indeterminate" if self.estimated_dim is None else self.estimated_dim,
        }


def profile_from_counts(primes, counts) -> CountProfile:
    primes, counts = tuple(primes), tuple(counts)
    if len(primes) < 2:
        raise ValueError("dimension estimation needs at least two primes")
    if all(c == 0 for c in counts):
        return CountProfile(primes, counts, -1)
    if any(c == 0 for c in counts):
        return CountProfile(primes, counts, None)
    slopes = [
        math.log(counts[i + 1] / counts[i]) / math.log(primes[i + 1] / primes[i])
        for i in range(len(primes) - 1)
    ]
    return CountProfile(primes, counts, max(0, round(median(slopes))))


def estimate_dimension(S: ConstructibleSet, primes: Sequence[int] = (5, 7, 11), budget: int = DEFAULT_ENUMERATION_BUDGET) -> CountProfile:
    """Dimension guess from the growth |S(F_q)| ~ c q^dim."""
    primes = sorted(primes)
    return profile_from_counts(primes, [count_points(S, q, budget) for q in primes])


def estimate_projection_dimension(S, coords, primes=(5, 7, 11), budget=DEFAULT_ENUMERATION_BUDGET) -> CountProfile:
    primes = sorted(primes)
    return profile_from_counts(primes, [count_projection(S, coords, q, budget) for q in primes])


def check_edge_free(W: Sequence, E, q: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> bool:
    """True iff no t-tuple of points of W (repetitions allowed) is an edge of E over F_q."""
    W = [tuple(int(a) % q for a in w) for w in W]
    if not W:
        return True
    if any(len(w) != E.n for w in W):
        raise ArityError("vertices must have length n")
    size = len(W) ** E.t
    _check_budget(size, budget)
    Sq = _reduced(E.set, q)
    pts = np.array(W, dtype=np.int64).T  # n x |W|
    for start in range(0, size, _CHUNK):
        idx = np.arange(start, min(size, start + _CHUNK), dtype=np.int64)
        slots = []
        for _ in range(E.t):
            slots.append(idx % len(W))
            idx = idx // len(W)
        cols = np.concatenate([pts[:, s] for s in reversed(slots)], axis=0)
        if _membership(Sq, cols, q).any():
            return False
    return True
