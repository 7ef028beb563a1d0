"""Small exact linear algebra over Q and Z (matrices are lists of rows)."""

from __future__ import annotations

import math
from fractions import Fraction


def as_fractions(M):
    return [[Fraction(x) for x in row] for row in M]


def det(M) -> Fraction:
    A = as_fractions(M)
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return d


def inverse(M):
    A = as_fractions(M)
    n = len(A)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def common_denominator(rows) -> int:
    d = 1
    for row in rows:
        for x in row:
            d = math.lcm(d, Fraction(x).denominator)
    return d


def hnf_rows(rows) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix, zero rows dropped.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    """
    A = [list(map(int, r)) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    out: list[list[int]] = []
    for c in range(ncols):
        live = [r for r in A if r[c] != 0]
        rest = [r for r in A if r[c] == 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            pivot = live[0]
            nxt = [pivot]
            for r in live[1:]:
                q = r[c] // pivot[c]
                r = [x - q * y for x, y in zip(r, pivot)]
                (nxt if r[c] != 0 else rest).append(r)
            live = nxt
        pivot = live[0]
        if pivot[c] < 0:
            pivot = [-x for x in pivot]
        out.append(pivot)
        A = rest
    # reduce entries above pivots
    for i in range(len(out)):
        c = next(j for j, x in enumerate(out[i]) if x)
        for k in range(i):
            q = out[k][c] // out[i][c]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return out


def integer_kernel(row) -> list[list[int]]:
    """Basis of {c in Z^n : row·c = 0} for a nonzero integer row vector."""
    n = len(row)
    r = [int(x) for x in row]
    # track column operations on the identity
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    cols = list(range(n))

    def col_op(dst, src, q):
        # column dst -= q * column src
        r[dst] -= q * r[src]
        for i in range(n):
            U[i][dst] -= q * U[i][src]

    while sum(1 for x in r if x) > 1:
        nz = [c for c in cols if r[c]]
        nz.sort(key=lambda c: abs(r[c]))
        p = nz[0]
        for c in nz[1:]:
            col_op(c, p, r[c] // r[p])
    kernel = [[U[i][c] for i in range(n)] for c in cols if r[c] == 0]
    return kernel


def coordinates(basis, v):
    """Coordinates c with v = c·basis (basis given as rows)."""
    inv = inverse(basis)
    return [sum(Fraction(v[i]) * inv[i][j] for i in range(len(v))) for j in range(len(inv[0]))]
