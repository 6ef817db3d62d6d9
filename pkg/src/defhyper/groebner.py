"""Buchberger's algorithm over Z/pZ, plus the ideal operations built on it.

S-pairs are selected by the normal strategy (smallest lcm degree, ties broken
by the term order) and pruned with the Gebauer-Moeller update, which applies
both the coprime-leading-term criterion and the chain criterion.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .errors import GroebnerBudgetError, RingMismatchError
from .polycore import GREVLEX, MonomialOrder, Polynomial, Ring, block_order

DEFAULT_PAIR_BUDGET = 200_000


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: tuple = ()

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatchError(f"generator {g} not in {self.ring}")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def of(cls, *gens, ring=None):
        if ring is None:
            if not gens:
                raise ValueError("ring required for the zero ideal")
            ring = gens[0].ring
        return cls(ring, tuple(gens))

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + tuple(other))

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")" if self.generators else "(0)"


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis, sorted by decreasing leading monomial."""

    ideal: Ideal
    order: MonomialOrder
    basis: tuple
    pairs_processed: int = field(default=0, compare=False)

    @property
    def ring(self) -> Ring:
        return self.ideal.ring

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.basis]

    def is_trivial(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def dimension(self) -> int:
        return krull_dimension(self.leading_monomials(), self.ring.nvars)

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)


# ---------------------------------------------------------------- internals

def _mask(m):
    bits = 0
    for i, e in enumerate(m):
        if e:
            bits |= 1 << i
    return bits


class _Elem:
    __slots__ = ("lm", "mask", "tail", "terms")

    def __init__(self, terms, lm):
        self.terms = terms
        self.lm = lm
        self.mask = _mask(lm)
        self.tail = [(m, c) for m, c in terms.items() if m != lm]


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _make_monic(terms, key, p):
    lm = max(terms, key=key)
    inv = pow(terms[lm], -1, p)
    if inv != 1:
        terms = {m: c * inv % p for m, c in terms.items()}
    return terms, lm


def _reduce(terms, elems, key, p, full=True):
    """Remainder of ``terms`` modulo monic ``elems``.

    With ``full=False`` only the leading term is reduced (top reduction).
    """
    work = dict(terms)
    heap = [(-key(m), m) for m in work]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        mmask = _mask(m)
        for g in elems:
            if g.mask & ~mmask == 0 and _divides(g.lm, m):
                break
        else:
            rem[m] = c
            if not full:
                rem.update(work)
                return rem
            continue
        shift = tuple(a - b for a, b in zip(m, g.lm))
        for gm, gc in g.tail:
            mm = tuple(a + b for a, b in zip(gm, shift))
            # mm < m, so it can never already sit in the remainder
            old = work.get(mm)
            if old is None:
                work[mm] = (-c * gc) % p
                heapq.heappush(heap, (-key(mm), mm))
            else:
                v = (old - c * gc) % p
                if v:
                    work[mm] = v
                else:
                    del work[mm]
    return rem


def _spoly(f, g, p):
    lcm = _lcm(f.lm, g.lm)
    s1 = tuple(a - b for a, b in zip(lcm, f.lm))
    s2 = tuple(a - b for a, b in zip(lcm, g.lm))
    out = {}
    for m, c in f.tail:
        mm = tuple(a + b for a, b in zip(m, s1))
        out[mm] = c
    for m, c in g.tail:
        mm = tuple(a + b for a, b in zip(m, s2))
        v = (out.get(mm, 0) - c) % p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _buchberger_core(polys, order, p, budget):
    key = order.key
    elems = []  # every basis element ever added (indices are stable)
    active = []  # indices currently in the basis
    pairs = {}  # (i, j) -> lcm
    heap = []
    processed = 0

    def push_pair(i, j, lcm):
        pairs[(i, j)] = lcm
        heapq.heappush(heap, (sum(lcm), key(lcm), i, j))

    def update(h_idx):
        nonlocal active
        h = elems[h_idx]
        cands = [(g, _lcm(elems[g].lm, h.lm)) for g in active]
        kept = []
        while cands:
            g1, l1 = cands.pop()
            if _coprime(elems[g1].lm, h.lm) or not any(
                _divides(l2, l1) for _, l2 in cands
            ) and not any(_divides(l2, l1) for _, l2 in kept):
                kept.append((g1, l1))
        new_pairs = [(g, l) for g, l in kept if not _coprime(elems[g].lm, h.lm)]
        for (i, j), l in list(pairs.items()):
            if _divides(h.lm, l) and _lcm(elems[i].lm, h.lm) != l and _lcm(elems[j].lm, h.lm) != l:
                del pairs[(i, j)]
        for g, l in new_pairs:
            push_pair(g, h_idx, l)
        active = [g for g in active if not _divides(h.lm, elems[g].lm)] + [h_idx]

    def add(terms):
        terms, lm = _make_monic(terms, key, p)
        elems.append(_Elem(terms, lm))
        idx = len(elems) - 1
        if not any(lm):
            return True
        update(idx)
        return False

    for terms in polys:
        r = _reduce(terms, [elems[i] for i in active], key, p)
        if r and add(r):
            return [elems[-1]], processed

    while heap:
        _, _, i, j = heapq.heappop(heap)
        if pairs.pop((i, j), None) is None:
            continue
        processed += 1
        if processed > budget:
            raise GroebnerBudgetError(f"S-pair budget of {budget} exhausted")
        s = _spoly(elems[i], elems[j], p)
        if not s:
            continue
        r = _reduce(s, [elems[k] for k in active], key, p)
        if r and add(r):
            return [elems[-1]], processed

    basis = [elems[i] for i in active]
    # minimalize, then inter-reduce tails
    basis.sort(key=lambda e: key(e.lm))
    minimal = []
    for e in basis:
        if not any(_divides(f.lm, e.lm) for f in minimal):
            minimal.append(e)
    reduced = []
    for idx, e in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = _reduce(dict(e.tail), others, key, p)
        tail[e.lm] = 1
        reduced.append(_Elem(tail, e.lm))
    reduced.sort(key=lambda e: key(e.lm), reverse=True)
    return reduced, processed


@lru_cache(maxsize=1024)
def _cached_gb(ideal, order, budget):
    ring = ideal.ring
    polys = [dict(g.terms) for g in ideal.generators]
    if not polys:
        return GroebnerBasis(ideal, order, ())
    elems, processed = _buchberger_core(polys, order, ring.p, budget)
    basis = tuple(Polynomial(ring, e.terms, _clean=False) for e in elems)
    return GroebnerBasis(ideal, order, basis, processed)


# ---------------------------------------------------------------- public API

def buchberger(I: Ideal, order: MonomialOrder = GREVLEX, budget: int = DEFAULT_PAIR_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` under ``order``."""
    if order.kind == "block" and order.split > I.ring.nvars:
        raise ValueError("block split exceeds the number of variables")
    return _cached_gb(I, order, budget)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ring != G.ring:
        raise RingMismatchError("polynomial and basis in different rings")
    key = G.order.key
    elems = [_Elem(g.terms, g.leading_monomial(G.order)) for g in G.basis]
    return Polynomial(f.ring, _reduce(f.terms, elems, key, f.ring.p), _clean=False)


def ideal_membership(f: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    return normal_form(f, buchberger(I, order)).is_zero()


def is_trivial(I: Ideal) -> bool:
    return buchberger(I).is_trivial()


def krull_dimension(leading_monomials: Sequence, nvars: int) -> int:
    """Dimension of V(I) from the leading monomials of a Groebner basis of I.

    Equals the size of the largest variable set U such that no leading
    monomial is supported inside U; -1 when the ideal is the unit ideal.
    """
    masks = set()
    for m in leading_monomials:
        mk = _mask(m)
        if mk == 0:
            return -1
        masks.add(mk)
    masks = [mk for mk in masks if not any(o != mk and o & mk == o for o in masks)]
    # the complement of U must hit every support; search hitting sets by size
    for h in range(nvars + 1):
        for hit in combinations(range(nvars), h):
            bits = 0
            for i in hit:
                bits |= 1 << i
            if all(mk & bits for mk in masks):
                return nvars - h
    return -1  # unreachable: the full variable set hits every nonempty support


def elimination_ideal(G: GroebnerBasis, keep: Sequence[int] | None = None) -> Ideal:
    """``<G>`` intersected with the ring of the non-eliminated block.

    ``G`` must be computed under ``block_order(s)``; the first ``s`` variables
    are eliminated.  The returned generators form a grevlex Groebner basis of
    the elimination ideal in the ring of the remaining variables.
    """
    if G.order.kind != "block":
        raise ValueError("elimination requires a block elimination order")
    s = G.order.split
    ring = G.ring
    keep = list(range(s, ring.nvars)) if keep is None else list(keep)
    if keep != list(range(s, ring.nvars)):
        raise ValueError("keep must be exactly the second block of the order")
    sub = Ring(ring.names[s:], ring.field)
    gens = []
    for g in G.basis:
        if all(not any(m[:s]) for m in g.terms):
            gens.append(Polynomial(sub, {m[s:]: c for m, c in g.terms.items()}, _clean=False))
    return Ideal(sub, tuple(gens))


def eliminate(I: Ideal, drop: Sequence[int], budget: int = DEFAULT_PAIR_BUDGET) -> Ideal:
    """Elimination ideal of ``I`` for arbitrary variable indices ``drop``.

    The kept variables retain their relative order; the result's generators
    are a grevlex Groebner basis in the kept ring.
    """
    ring = I.ring
    drop = sorted(set(drop))
    keep = [i for i in range(ring.nvars) if i not in drop]
    perm = drop + keep
    pring = Ring(tuple(ring.names[i] for i in perm), ring.field)
    pos = {old: new for new, old in enumerate(perm)}
    gens = tuple(g.embed(pring, [pos[i] for i in range(ring.nvars)]) for g in I.generators)
    G = buchberger(Ideal(pring, gens), block_order(len(drop)), budget)
    return elimination_ideal(G)


def saturate(I: Ideal, g: Polynomial, budget: int = DEFAULT_PAIR_BUDGET) -> Ideal:
    """``I : g^inf`` via a fresh variable w, the generator 1 - w*g, and elimination of w."""
    if g.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if g.ring != I.ring:
        raise RingMismatchError("saturating polynomial in a different ring")
    ring = I.ring
    wname = _fresh_name(ring, "w")
    wring = ring.extend([wname], front=True)
    shift = list(range(1, ring.nvars + 1))
    w = wring.gen(0)
    gens = tuple(f.embed(wring, shift) for f in I.generators) + (wring.one - w * g.embed(wring, shift),)
    G = buchberger(Ideal(wring, gens), block_order(1), budget)
    out = elimination_ideal(G)
    return Ideal(ring, tuple(Polynomial(ring, f.terms, _clean=False) for f in out.generators))


def _fresh_name(ring, stem):
    name = stem
    k = 0
    while name in ring.names:
        k += 1
        name = f"{stem}{k}"
    return name
