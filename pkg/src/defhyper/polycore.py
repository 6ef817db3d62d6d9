"""Sparse multivariate polynomials over a prime field Z/pZ.

A polynomial is a map from exponent tuples to nonzero residues.  Values are
immutable once built; every arithmetic operation returns a fresh object.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from sympy import isprime

from .errors import ArityError, RingMismatchError

DEFAULT_PRIME = 2147483647

# digit width of packed order keys; exponents and degrees stay far below this
_BASE_BITS = 24
_BASE = 1 << _BASE_BITS
_MASK = _BASE - 1

Monomial = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def __call__(self, c: int) -> int:
        return c % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def lift(self, a: int) -> int:
        """Symmetric representative in (-p/2, p/2]."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a


# ---------------------------------------------------------------- orders

def _grevlex_digits(m, lo, hi):
    key = sum(m[lo:hi])
    for i in range(hi - 1, lo - 1, -1):
        key = (key << _BASE_BITS) | (_MASK - m[i])
    return key


@lru_cache(maxsize=1 << 18)
def _order_key(kind, split, m):
    n = len(m)
    if kind == "grevlex":
        return _grevlex_digits(m, 0, n)
    if kind == "lex":
        key = 0
        for e in m:
            key = (key << _BASE_BITS) | e
        return key
    # block: eliminated block [0, split) compared first, grevlex inside both
    tail = _grevlex_digits(m, split, n)
    head = _grevlex_digits(m, 0, split)
    return (head << (_BASE_BITS * (n - split + 1))) | tail


@dataclass(frozen=True)
class MonomialOrder:
    """Term order.  ``kind`` is ``lex``, ``grevlex`` or ``block``.

    ``block`` is the two-block elimination order: variables ``[0, split)``
    form the eliminated block and dominate, grevlex within each block.
    """

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.split < 0:
            raise ValueError("block split must be nonnegative")

    def key(self, m: Monomial) -> int:
        """Integer sort key; larger key means larger monomial."""
        return _order_key(self.kind, self.split, m)

    def __str__(self):
        return f"block({self.split})" if self.kind == "block" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


# ---------------------------------------------------------------- rings

@dataclass(frozen=True)
class Ring:
    names: tuple
    field: PrimeField = PrimeField()

    @classmethod
    def make(cls, names, p=DEFAULT_PRIME):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        return cls(names, PrimeField(p))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i: int) -> "Polynomial":
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def var(self, name: str) -> "Polynomial":
        return self.gen(self.index(name))

    def parse(self, text: str) -> "Polynomial":
        from .polyparse import parse_polynomial

        return parse_polynomial(text, self)

    def with_prime(self, p: int) -> "Ring":
        return Ring(self.names, PrimeField(p))

    def extend(self, names: Sequence[str], front=False) -> "Ring":
        names = tuple(names)
        return Ring(names + self.names if front else self.names + names, self.field)

    def __str__(self):
        return f"GF({self.p})[{', '.join(self.names)}]"


# ---------------------------------------------------------------- polynomials

class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to residues."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, int], _clean=True):
        self.ring = ring
        if _clean:
            p = ring.p
            n = ring.nvars
            clean = {}
            for m, c in terms.items():
                if len(m) != n:
                    raise ArityError(f"monomial {m} has wrong length for {ring}")
                c %= p
                if c:
                    clean[tuple(m)] = c
            terms = clean
        self.terms = terms
        self._hash = None

    # -- construction helpers
    @classmethod
    def from_terms(cls, ring, terms):
        return cls(ring, dict(terms))

    def _new(self, terms):
        # terms already reduced and free of zeros
        return Polynomial(self.ring, terms, _clean=False)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return self._new({m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero
        p = self.ring.p
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0) + c1 * c2
        return self._new({m: c % p for m, c in acc.items() if c % p})

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero
        return self._new({m: v * c % p for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero
        return self._new(
            {tuple(a + b for a, b in zip(m, mono)): v * c % p for m, v in self.terms.items()}
        )

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparisons
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, indices: Iterable[int]) -> int:
        idx = list(indices)
        return max((sum(m[i] for i in idx) for m in self.terms), default=-1)

    def support(self) -> set:
        """Indices of variables that actually occur."""
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    # -- evaluation and substitution
    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.ring.nvars:
            raise ArityError(f"point has {len(point)} coordinates, ring has {self.ring.nvars}")
        p = self.ring.p
        pts = [v % p for v in point]
        powers = [dict() for _ in pts]
        total = 0
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    cache = powers[i]
                    pw = cache.get(e)
                    if pw is None:
                        pw = cache[e] = pow(pts[i], e, p)
                    v = v * pw % p
                    if not v:
                        break
            total += v
        return total % p

    def compose(self, images: Sequence["Polynomial"], target: Ring | None = None) -> "Polynomial":
        """Substitute ``images[i]`` for variable ``i`` (polynomial substitution)."""
        if len(images) != self.ring.nvars:
            raise ArityError("one image per variable required")
        if target is None:
            if not images:
                raise ArityError("target ring required for a ring without variables")
            target = images[0].ring
        if any(img.ring != target for img in images):
            raise RingMismatchError("images must share the target ring")
        cache = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] ** e
            return cache[key]

        out = target.zero
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def embed(self, target: Ring, positions: Sequence[int]) -> "Polynomial":
        """Rename variables: variable ``i`` becomes ``target`` variable ``positions[i]``."""
        if len(positions) != self.ring.nvars:
            raise ArityError("one position per variable required")
        if target.p != self.ring.p:
            raise RingMismatchError("embedding must preserve the field")
        n = target.nvars
        out = {}
        for m, c in self.terms.items():
            mm = [0] * n
            for i, e in enumerate(m):
                if e:
                    mm[positions[i]] += e
            out[tuple(mm)] = c
        return Polynomial(target, out, _clean=False)

    def partial_evaluate(self, values: Mapping[int, int], target: Ring, keep: Sequence[int]) -> "Polynomial":
        """Fix variables in ``values``; the remaining ``keep`` become ``target``'s variables."""
        p = self.ring.p
        out = {}
        for m, c in self.terms.items():
            v = c
            for i, a in values.items():
                if m[i]:
                    v = v * pow(a, m[i], p) % p
            if v:
                mm = tuple(m[i] for i in keep)
                out[mm] = (out.get(mm, 0) + v) % p
        return Polynomial(target, out)

    def with_prime(self, q: int, ring: Ring | None = None) -> "Polynomial":
        """Reinterpret integer coefficients (symmetric lift) modulo another prime."""
        ring = ring or self.ring.with_prime(q)
        lift = self.ring.field.lift
        return Polynomial(ring, {m: lift(c) for m, c in self.terms.items()})

    # -- display
    def to_str(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        lift = self.ring.field.lift
        names = self.ring.names
        parts = []
        for m, c in self.sorted_terms(order):
            c = lift(c)
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e:
                    factors.append(f"{names[i]}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r} over GF({self.ring.p}))"


# ---------------------------------------------------------------- operations

def poly_arith(a: Polynomial, b: Polynomial | None, op: str, c: int | None = None) -> Polynomial:
    """Dispatch table over the four ring operations: add, sub, mul, scale."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(c)
    raise ValueError(f"unknown operation {op!r}")


def evaluate(f: Polynomial, point: Sequence[int]) -> int:
    return f.evaluate(point)


@dataclass(frozen=True)
class BlockMap:
    """Rational substitution for one block of source variables.

    Source variable ``indices[j]`` is replaced by ``numerators[j] / denominator``;
    all polynomials live in the target ring.  ``denominator=None`` means 1.
    """

    indices: tuple
    numerators: tuple
    denominator: Polynomial | None = None


def substitute_rational(P: Polynomial, blocks: Sequence[BlockMap], target: Ring) -> Polynomial:
    """Clear denominators of P(num/den, ...) blockwise.

    Returns N with P(f(y_1), ..., f(y_t)) = N / prod_i q_i^{d_i}, where d_i is
    the total degree of P in the variables of block i.
    """
    covered = sorted(i for b in blocks for i in b.indices)
    if covered != list(range(P.ring.nvars)):
        raise ArityError("blocks must partition the source variables")
    for b in blocks:
        if len(b.indices) != len(b.numerators):
            raise ArityError("one numerator per block variable required")
        if b.denominator is not None and b.denominator.is_zero():
            raise ValueError("denominator is identically zero")
        for f in b.numerators + ((b.denominator,) if b.denominator is not None else ()):
            if f.ring != target:
                raise RingMismatchError("substitution images must live in the target ring")

    pcache = {}

    def power(key, base, e):
        k = (key, e)
        got = pcache.get(k)
        if got is None:
            got = pcache[k] = base ** e
        return got

    block_deg = [P.degree_in(b.indices) for b in blocks]
    out = target.zero
    for m, c in P.terms.items():
        term = target.const(c)
        for bi, b in enumerate(blocks):
            deg_here = 0
            for j, idx in enumerate(b.indices):
                e = m[idx]
                if e:
                    deg_here += e
                    term = term * power(("num", bi, j), b.numerators[j], e)
            if b.denominator is not None:
                gap = block_deg[bi] - deg_here
                if gap:
                    term = term * power(("den", bi), b.denominator, gap)
        out = out + term
    return out


def monomials_up_to(nvars: int, d: int) -> list:
    """All exponent tuples of total degree <= d, graded then lex-descending."""
    out = []
    for deg in range(d + 1):
        level = []
        for combo in combinations_with_replacement(range(nvars), deg):
            m = [0] * nvars
            for i in combo:
                m[i] += 1
            level.append(tuple(m))
        out.extend(sorted(set(level), reverse=True))
    return out


def as_rng(seed) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def derive_rng(seed, *labels) -> random.Random:
    """Independent stream keyed by (seed, labels); stable across runs and platforms."""
    return random.Random("/".join(str(x) for x in (seed,) + labels))


def random_polynomial(ring: Ring, d: int, seed) -> Polynomial:
    """Uniform coefficients on every monomial of total degree <= d."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    rng = as_rng(seed)
    p = ring.p
    return Polynomial(ring, {m: rng.randrange(p) for m in monomials_up_to(ring.nvars, d)})
