"""Rational points of zero-dimensional systems over F_p, found by lex triangulation."""

from __future__ import annotations

import random

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor_sqf, gf_gcd, gf_pow_mod, gf_sub

from .groebner import Ideal, buchberger
from .polycore import LEX, Polynomial, Ring

# below this size roots are found by trying every residue
_BRUTE_FORCE_LIMIT = 512


def univariate_roots(coeffs_low_to_high, p):
    """Distinct roots in F_p of a univariate polynomial given low-to-high."""
    coeffs = [c % p for c in coeffs_low_to_high]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial has every element as a root")
    if len(coeffs) == 1:
        return []
    if p <= _BRUTE_FORCE_LIMIT:
        out = []
        for a in range(p):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * a + c) % p
            if acc == 0:
                out.append(a)
        return out
    f = [ZZ(c) for c in reversed(coeffs)]
    # gcd with x^p - x isolates the product of distinct linear factors
    xp = gf_pow_mod([ZZ(1), ZZ(0)], p, f, p, ZZ)
    g = gf_gcd(gf_sub(xp, [ZZ(1), ZZ(0)], p, ZZ), f, p, ZZ)
    if len(g) <= 1:
        return []
    _, factors = gf_factor_sqf(g, p, ZZ)
    return sorted(int(-fac[1]) % p for fac in factors if len(fac) == 2)


def find_rational_point(I: Ideal, rng: random.Random, root_cap: int = 8):
    """An F_p-point of V(I), or None.

    Variables are solved from last to first; a variable left free by the
    system receives a random value.
    """
    ring = I.ring
    n = ring.nvars
    if n == 0:
        return () if all(g.is_zero() for g in I.generators) else None
    G = buchberger(I, LEX)
    if G.is_trivial():
        return None
    last = n - 1
    uni = [g for g in G.basis if g.support() <= {last}]
    if uni:
        h = uni[0]
        coeffs = [0] * (h.degree() + 1)
        for m, c in h.terms.items():
            coeffs[m[last]] = c
        roots = univariate_roots(coeffs, ring.p)
        rng.shuffle(roots)
        roots = roots[:root_cap]
    else:
        roots = [rng.randrange(ring.p)]
    sub = Ring(ring.names[:last], ring.field)
    keep = list(range(last))
    for a in roots:
        gens = tuple(g.partial_evaluate({last: a}, sub, keep) for g in G.basis)
        pt = find_rational_point(Ideal(sub, gens), rng, root_cap)
        if pt is not None:
            return pt + (a,)
    return None


def random_affine_form(ring: Ring, rng: random.Random) -> Polynomial:
    p = ring.p
    n = ring.nvars
    terms = {(0,) * n: rng.randrange(p)}
    for i in range(n):
        m = [0] * n
        m[i] = 1
        terms[tuple(m)] = rng.randrange(p)
    return Polynomial(ring, terms)
