"""Exact Gaussian elimination over Z/pZ on lists of rows."""

from __future__ import annotations


def row_reduce(rows, p):
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    m = [[v % p for v in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, p) -> int:
    return len(row_reduce(rows, p)[1])


def nullspace(rows, ncols, p):
    """Basis of {v : rows . v = 0}."""
    rref, pivots = row_reduce(rows, p) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(rref, pivots):
            v[pc] = (-row[fc]) % p
        basis.append(v)
    return basis
