"""Positive definite integral ternary quadratic forms."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from twistlift._exact import det, inverse


@dataclass(frozen=True)
class TernaryForm:
    """ax² + by² + cz² + dyz + exz + fxy (coefficients in the printed order)."""

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def __post_init__(self):
        a, b, c, d, e, f = self.coefficients
        if not (a > 0 and 4 * a * b - f * f > 0 and self.discriminant > 0):
            raise ValueError(f"form {self} is not positive definite")

    @property
    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    @property
    def gram(self) -> list[list[int]]:
        """Even Gram matrix G with Q(v) = vᵀGv/2."""
        a, b, c, d, e, f = self.coefficients
        return [[2 * a, f, e], [f, 2 * b, d], [e, d, 2 * c]]

    @property
    def discriminant(self) -> int:
        return int(det(self.gram))

    def __call__(self, v) -> int:
        x, y, z = v
        a, b, c, d, e, f = self.coefficients
        return a * x * x + b * y * y + c * z * z + d * y * z + e * x * z + f * x * y

    def bilinear(self, v, w) -> int:
        """vᵀGw, so that bilinear(v, v) = 2Q(v)."""
        G = self.gram
        return sum(v[i] * G[i][j] * w[j] for i in range(3) for j in range(3))

    def transform(self, T) -> "TernaryForm":
        """The form v ↦ Q(Tv); the columns of T are the new basis vectors."""
        G = self.gram
        H = [[sum(T[k][i] * G[k][l] * T[l][j] for k in range(3) for l in range(3)) for j in range(3)]
             for i in range(3)]
        return TernaryForm(H[0][0] // 2, H[1][1] // 2, H[2][2] // 2, H[1][2], H[0][2], H[0][1])

    @classmethod
    def from_gram(cls, G) -> "TernaryForm":
        G = [[Fraction(x) for x in row] for row in G]
        coeffs = [G[0][0] / 2, G[1][1] / 2, G[2][2] / 2, G[1][2], G[0][2], G[0][1]]
        if any(x.denominator != 1 for x in coeffs):
            raise ValueError("Gram matrix does not define an integral form")
        return cls(*(int(x) for x in coeffs))

    @classmethod
    def parse(cls, text: str) -> "TernaryForm":
        """Parse either six integers or a polynomial like ``4x^2+27y^2-4xz``."""
        text = text.strip()
        if re.fullmatch(r"[-+\d\s]+", text):
            return cls(*(int(t) for t in text.split()))
        slots = {"x^2": 0, "y^2": 1, "z^2": 2, "yz": 3, "xz": 4, "xy": 5, "zy": 3, "zx": 4, "yx": 5}
        coeffs = [0] * 6
        for sign, num, mono in re.findall(r"([+-]?)\s*(\d*)\s*\*?\s*([xyz]\^2|[xyz]{2})", text.replace(" ", "")):
            value = int(num) if num else 1
            coeffs[slots[mono]] += -value if sign == "-" else value
        return cls(*coeffs)

    def __str__(self) -> str:
        terms = []
        for coeff, mono in zip(self.coefficients, ("x^2", "y^2", "z^2", "yz", "xz", "xy")):
            if coeff == 0:
                continue
            mag = "" if abs(coeff) == 1 else str(abs(coeff))
            sign = "-" if coeff < 0 else "+"
            terms.append(f"{sign}{mag}{mono}")
        out = "".join(terms)
        return out[1:] if out.startswith("+") else out


def _row_ranges(Q: TernaryForm, bound: int):
    """Yield (y, z, xlo, xhi) covering every v with Q(v) <= bound.

    Completing squares over the integers: fixing z bounds y, fixing (y, z)
    bounds x.  Ranges are widened by one and callers filter exactly.
    """
    a, b, c, d, e, f = Q.coefficients
    A2 = 4 * a * b - f * f
    C2 = 4 * a * c - e * e
    B2 = 4 * a * d - 2 * e * f
    K = 4 * A2 * C2 - B2 * B2
    zmax = math.isqrt(16 * a * A2 * bound // K) + 1
    for z in range(-zmax, zmax + 1):
        # A2 y² + B2 z y + C2 z² <= 4a·bound
        disc_y = (B2 * z) ** 2 - 4 * A2 * (C2 * z * z - 4 * a * bound)
        if disc_y < 0:
            continue
        s = math.isqrt(disc_y) + 1
        ylo = (-B2 * z - s) // (2 * A2)
        yhi = -((B2 * z - s) // (2 * A2))
        for y in range(ylo, yhi + 1):
            B1 = f * y + e * z
            C0 = b * y * y + c * z * z + d * y * z
            disc_x = B1 * B1 - 4 * a * (C0 - bound)
            if disc_x < 0:
                continue
            s = math.isqrt(disc_x) + 1
            xlo = (-B1 - s) // (2 * a)
            xhi = -((B1 - s) // (2 * a))
            yield y, z, xlo, xhi


def vector_arrays(Q: TernaryForm, bound: int):
    """All v with Q(v) <= bound as numpy arrays (X, Y, Z, values), unordered."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    a, b, c, d, e, f = Q.coefficients
    xs, ys, zs = [], [], []
    for y, z, lo, hi in _row_ranges(Q, bound):
        x = np.arange(lo, hi + 1, dtype=np.int64)
        xs.append(x)
        ys.append(np.full_like(x, y))
        zs.append(np.full_like(x, z))
    X, Y, Z = (np.concatenate(t) if t else np.zeros(0, dtype=np.int64) for t in (xs, ys, zs))
    V = a * X * X + b * Y * Y + c * Z * Z + d * Y * Z + e * X * Z + f * X * Y
    keep = V <= bound
    return X[keep], Y[keep], Z[keep], V[keep]


def enumerate_vectors(Q: TernaryForm, bound: int) -> list[tuple[tuple[int, int, int], int]]:
    """Every (v, Q(v)) with Q(v) <= bound, in lexicographic order of v."""
    X, Y, Z, V = vector_arrays(Q, bound)
    order = np.lexsort((Z, Y, X))
    return [((int(X[i]), int(Y[i]), int(Z[i])), int(V[i])) for i in order]


def theta_coefficients(Q: TernaryForm, bound: int) -> list:
    """Coefficients of ½·Σ q^{Q(v)} up to q^bound.

    Index 0 holds the exact constant term 1/2; every other entry is an
    integer because v and -v pair up.
    """
    _, _, _, V = vector_arrays(Q, bound)
    counts = np.bincount(V, minlength=bound + 1)
    if np.any(counts[1:] % 2):
        raise AssertionError("representation counts must be even")
    return [Fraction(1, 2)] + [int(n) // 2 for n in counts[1:]]


def short_vectors(gram, bound) -> list[tuple[tuple[int, ...], Fraction]]:
    """All integer x with xᵀAx <= bound for a positive definite rational A.

    Fincke-Pohst with exact rational pivots: A is written as
    Σ dᵢ(xᵢ + Σ_{j>i} μᵢⱼxⱼ)² and coordinates are fixed from the last one.
    Zero is included.
    """
    A = [[Fraction(x) for x in row] for row in gram]
    n = len(A)
    bound = Fraction(bound)
    dvals, mu = [], [[Fraction(0)] * n for _ in range(n)]
    W = [row[:] for row in A]
    for i in range(n):
        if W[i][i] <= 0:
            raise ValueError("form is not positive definite")
        dvals.append(W[i][i])
        for j in range(i + 1, n):
            mu[i][j] = W[i][j] / W[i][i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                W[j][k] -= W[i][j] * W[i][k] / W[i][i]
    out = []
    x = [0] * n

    def rec(i, budget):
        if i < 0:
            out.append((tuple(x), bound - budget))
            return
        centre = -sum(mu[i][j] * x[j] for j in range(i + 1, n))
        radius = math.sqrt(float(budget / dvals[i]))
        lo = math.floor(float(centre) - radius) - 1
        hi = math.ceil(float(centre) + radius) + 1
        for xi in range(lo, hi + 1):
            t = dvals[i] * (xi - centre) ** 2
            if t <= budget:
                x[i] = xi
                rec(i - 1, budget - t)
        x[i] = 0

    rec(n - 1, bound)
    return out


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _columns(v1, v2, v3):
    return [[v1[i], v2[i], v3[i]] for i in range(3)]


def _size_reduced_bound(Q: TernaryForm) -> int:
    """Max diagonal entry after greedy pairwise size reduction (bounds the third minimum)."""
    basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    changed = True
    while changed:
        changed = False
        basis.sort(key=Q)
        for i in range(1, 3):
            for j in range(i):
                bj = basis[j]
                q = round(Fraction(Q.bilinear(basis[i], bj), 2 * Q(bj)))
                if q:
                    cand = [basis[i][k] - q * bj[k] for k in range(3)]
                    if Q(cand) < Q(basis[i]):
                        basis[i] = cand
                        changed = True
    return max(Q(v) for v in basis)


def reduce_with_transform(Q: TernaryForm) -> tuple[TernaryForm, list[list[int]]]:
    """Canonical representative R and unimodular T with R(v) = Q(Tv).

    R minimizes (a, b, c) lexicographically over all bases, which forces
    (a, b, c) to be the successive minima; ties are broken by the smallest
    (d, e, f).
    """
    bound = _size_reduced_bound(Q)
    vecs = [(v, q) for v, q in enumerate_vectors(Q, bound) if q > 0]
    a = min(q for _, q in vecs)
    firsts = [v for v, q in vecs if q == a]
    pairs, best_b = [], None
    for v1 in firsts:
        for v2, q in vecs:
            if best_b is not None and q > best_b:
                continue
            n = _cross(v1, v2)
            if math.gcd(*n) != 1:
                continue
            if best_b is None or q < best_b:
                best_b, pairs = q, []
            pairs.append((v1, v2))
    best, best_T = None, None
    for v1, v2 in pairs:
        n = _cross(v1, v2)
        for v3, q in vecs:
            if abs(n[0] * v3[0] + n[1] * v3[1] + n[2] * v3[2]) != 1:
                continue
            T = _columns(v1, v2, v3)
            R = Q.transform(T)
            key = (R.a, R.b, R.c, R.d, R.e, R.f)
            if best is None or key < best:
                best, best_T = key, T
    if best is None:
        raise AssertionError("no basis found among short vectors")
    return TernaryForm(*best), best_T


def reduce(Q: TernaryForm) -> TernaryForm:
    return reduce_with_transform(Q)[0]


def equivalent(Q1: TernaryForm, Q2: TernaryForm):
    """A unimodular T with Q2(Tv) = Q1(v), or None if the forms are inequivalent."""
    if Q1.discriminant != Q2.discriminant:
        return None
    R1, T1 = reduce_with_transform(Q1)
    R2, T2 = reduce_with_transform(Q2)
    if R1 != R2:
        return None
    T = [[int(x) for x in row] for row in _matmul_frac(T2, inverse(T1))]
    return T


def _matmul_frac(A, B):
    return [[sum(Fraction(A[i][k]) * B[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
