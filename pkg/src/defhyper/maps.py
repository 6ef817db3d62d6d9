"""Rational-map families R_d(k, n; q), affine maps, restrictions and the
interpolation system whose full rank makes evaluation at distinct points generic."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import ArityError, HypothesisViolation, InvalidCompositeError, RingMismatchError
from .linalg import nullspace, rank
from .polycore import DEFAULT_PRIME, Polynomial, Ring, as_rng, monomials_up_to, random_polynomial


def param_ring(k: int, p: int = DEFAULT_PRIME, stem: str = "y") -> Ring:
    """Ring of the parameter space F^k with variables y1..yk."""
    return Ring.make([f"{stem}{i}" for i in range(1, k + 1)], p)


def family_dimension(d: int, k: int, n: int) -> int:
    """Number of free coefficients of a map in R_d(k, n; q)."""
    return n * comb(k + d, d)


@dataclass(frozen=True)
class RationalMap:
    """(q; p_1, ..., p_n) with deg p_j <= d; equality is coefficientwise."""

    k: int
    n: int
    d: int
    q: Polynomial
    numerators: tuple

    def __post_init__(self):
        object.__setattr__(self, "numerators", tuple(self.numerators))
        if self.q.is_zero():
            raise ValueError("denominator q must not vanish identically")
        if self.q.ring.nvars != self.k:
            raise ArityError("denominator must be a polynomial in k variables")
        if len(self.numerators) != self.n:
            raise ArityError(f"expected {self.n} numerators")
        for f in self.numerators:
            if f.ring != self.q.ring:
                raise RingMismatchError("numerators and denominator must share a ring")
            if f.degree() > self.d:
                raise ValueError(f"numerator degree {f.degree()} exceeds bound {self.d}")

    @property
    def ring(self) -> Ring:
        return self.q.ring

    def __call__(self, point):
        den = self.q.evaluate(point)
        if den == 0:
            raise ZeroDivisionError("point lies on the denominator locus")
        inv = pow(den, -1, self.ring.p)
        return tuple(f.evaluate(point) * inv % self.ring.p for f in self.numerators)

    def coefficients(self) -> tuple:
        mons = monomials_up_to(self.k, self.d)
        return tuple(f.terms.get(m, 0) for f in self.numerators for m in mons)

    def same_family(self, other: "RationalMap") -> bool:
        return (self.k, self.n, self.d, self.q) == (other.k, other.n, other.d, other.q)


@dataclass(frozen=True)
class AffineMap:
    """z -> matrix . z + offset from F^r to F^k (an element of L(r, k))."""

    r: int
    k: int
    matrix: tuple  # k rows of length r
    offset: tuple
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        matrix = tuple(tuple(v % self.p for v in row) for row in self.matrix)
        offset = tuple(v % self.p for v in self.offset)
        if len(matrix) != self.k or any(len(row) != self.r for row in matrix) or len(offset) != self.k:
            raise ArityError("affine map shape does not match (r, k)")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "offset", offset)

    def __call__(self, z):
        if len(z) != self.r:
            raise ArityError("point has the wrong arity")
        return tuple(
            (sum(a * b for a, b in zip(row, z)) + c) % self.p for row, c in zip(self.matrix, self.offset)
        )

    def polynomials(self, ring: Ring | None = None) -> list:
        ring = ring or param_ring(self.r, self.p, "z")
        gens = ring.gens()
        out = []
        for row, c in zip(self.matrix, self.offset):
            f = ring.const(c)
            for a, g in zip(row, gens):
                if a:
                    f = f + g.scale(a)
            out.append(f)
        return out

    def as_rational_map(self) -> RationalMap:
        ring = param_ring(self.r, self.p)
        return RationalMap(self.r, self.k, 1, ring.one, tuple(self.polynomials(ring)))

    def is_injective(self) -> bool:
        return rank([list(row) for row in self.matrix], self.p) == self.r


def identity_map(k: int, p: int = DEFAULT_PRIME) -> RationalMap:
    ring = param_ring(k, p)
    return RationalMap(k, k, 1, ring.one, tuple(ring.gens()))


def sample_map(d: int, k: int, n: int, q: Polynomial | None = None, seed=0, through_origin=False, p=None) -> RationalMap:
    """Generic element of R_d(k, n; q): i.i.d. uniform numerator coefficients.

    ``through_origin`` zeroes the constant terms, a deliberately non-generic
    subfamily.
    """
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    if q is None:
        q = param_ring(k, p or DEFAULT_PRIME).one
    rng = as_rng(seed)
    nums = []
    for _ in range(n):
        f = random_polynomial(q.ring, d, rng)
        if through_origin:
            f = f - f.constant_value()
        nums.append(f)
    return RationalMap(k, n, d, q, tuple(nums))


def sample_affine(r: int, k: int, seed=0, p: int = DEFAULT_PRIME, through_origin=False) -> AffineMap:
    rng = as_rng(seed)
    matrix = tuple(tuple(rng.randrange(p) for _ in range(r)) for _ in range(k))
    offset = tuple(0 if through_origin else rng.randrange(p) for _ in range(k))
    return AffineMap(r, k, matrix, offset, p)


def compose_affine(f: RationalMap, ell: AffineMap) -> RationalMap:
    """f o ell : F^r -> F^n, numerators and denominator precomposed with ell."""
    if ell.k != f.k:
        raise ArityError(f"affine map lands in F^{ell.k}, rational map starts at F^{f.k}")
    if ell.p != f.ring.p:
        raise RingMismatchError("maps over different fields")
    ring = param_ring(ell.r, ell.p)
    images = ell.polynomials(ring)
    q = f.q.compose(images, ring)
    if q.is_zero():
        raise InvalidCompositeError("denominator vanishes identically on the image of the affine map")
    nums = tuple(g.compose(images, ring) for g in f.numerators)
    return RationalMap(ell.r, f.n, f.d, q, nums)


# ---------------------------------------------------------------- restrictions

@dataclass(frozen=True)
class RestrictionFamily:
    """Maps f of the family with f o l = g o l for every pinned l."""

    d: int
    k: int
    n: int
    q: Polynomial
    anchor: RationalMap
    pins: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pins", tuple(self.pins))
        if (self.anchor.k, self.anchor.n, self.anchor.d, self.anchor.q) != (self.k, self.n, self.d, self.q):
            raise ValueError("anchor is not in R_d(k, n; q)")
        for ell in self.pins:
            if ell.k != self.k or ell.r >= self.k:
                raise ArityError("pins must be affine maps F^r -> F^k with r < k")


def restriction_contains(R: RestrictionFamily, f: RationalMap) -> bool:
    if (f.k, f.n, f.d, f.q) != (R.k, R.n, R.d, R.q):
        raise ValueError("map is not in the family's R_d(k, n; q)")
    return all(
        compose_affine(f, ell).numerators == compose_affine(R.anchor, ell).numerators for ell in R.pins
    )


def vanishing_form(ell: AffineMap, ring: Ring | None = None) -> Polynomial:
    """A nonzero affine form on F^k that vanishes on the image of ell (needs r < k)."""
    ring = ring or param_ring(ell.k, ell.p)
    # a . (M z + c) = 0 for all z  <=>  a in ker(M^T), constant term -a . c
    mt = [[ell.matrix[i][j] for i in range(ell.k)] for j in range(ell.r)]
    basis = nullspace(mt, ell.k, ell.p)
    if not basis:
        raise ValueError("affine map is surjective; no form vanishes on its image")
    a = basis[0]
    const = -sum(ai * ci for ai, ci in zip(a, ell.offset))
    out = ring.const(const)
    for ai, g in zip(a, ring.gens()):
        if ai:
            out = out + g.scale(ai)
    return out


def restriction_perturbation(R: RestrictionFamily, seed=0) -> RationalMap:
    """A member of the restriction other than the anchor.

    Adds c_j * prod(phi_i) to each numerator, where phi_i vanishes on im(l_i);
    needs len(pins) <= d to stay inside the degree bound.
    """
    if len(R.pins) > R.d:
        raise ValueError("more pins than the degree bound allows")
    rng = as_rng(seed)
    ring = R.q.ring
    prod = ring.one
    for ell in R.pins:
        prod = prod * vanishing_form(ell, ring)
    nums = tuple(g + prod.scale(1 + rng.randrange(ring.p - 1)) for g in R.anchor.numerators)
    return RationalMap(R.k, R.n, R.d, R.q, nums)


# ---------------------------------------------------------------- interpolation

@dataclass(frozen=True)
class InterpolationSystem:
    """Linear conditions p_j(y_i) = q(y_i) * x_i(j) on the numerator coefficients."""

    k: int
    n: int
    t: int
    d: int
    matrix: tuple
    rhs: tuple
    rank: int
    solution_dim: int  # -1 when inconsistent

    @property
    def predicted_rank(self) -> int:
        return self.t * self.n

    @property
    def predicted_solution_dim(self) -> int:
        return (comb(self.k + self.d, self.d) - self.t) * self.n

    @property
    def ncols(self) -> int:
        return self.n * comb(self.k + self.d, self.d)


def interpolation_system(points: Sequence, targets: Sequence, d: int, q: Polynomial) -> InterpolationSystem:
    t = len(points)
    k = q.ring.nvars
    p = q.ring.p
    if len(targets) != t or t == 0:
        raise ArityError("need one target per point and at least one point")
    n = len(targets[0])
    pts = [tuple(v % p for v in y) for y in points]
    if any(len(y) != k for y in pts) or any(len(x) != n for x in targets):
        raise ArityError("points must lie in F^k and targets in F^n")
    if len(set(pts)) != t:
        raise HypothesisViolation("interpolation points must be pairwise distinct")
    qs = [q.evaluate(y) for y in pts]
    if any(v == 0 for v in qs):
        raise HypothesisViolation("denominator vanishes at an interpolation point")
    mons = monomials_up_to(k, d)
    width = len(mons)
    rows, rhs = [], []
    for y, qy, x in zip(pts, qs, targets):
        vals = [_monomial_value(m, y, p) for m in mons]
        for j in range(n):
            row = [0] * (n * width)
            row[j * width:(j + 1) * width] = vals
            rows.append(row)
            rhs.append(qy * x[j] % p)
    rk = rank(rows, p)
    aug = rank([r + [b] for r, b in zip(rows, rhs)], p)
    sol = n * width - rk if aug == rk else -1
    return InterpolationSystem(k, n, t, d, tuple(map(tuple, rows)), tuple(rhs), rk, sol)


def interpolation_solution_dim(points, targets, d, q) -> int:
    return interpolation_system(points, targets, d, q).solution_dim


def _monomial_value(m, y, p):
    v = 1
    for e, a in zip(m, y):
        if e:
            v = v * pow(a, e, p) % p
    return v
