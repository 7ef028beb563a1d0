"""Definite quaternion algebras over Q: lattices, orders, ideals and Brandt matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from twistlift import _exact
from twistlift.ternary import TernaryForm, reduce, short_vectors


@dataclass(frozen=True)
class QuaternionAlgebra:
    """The algebra (a, b): i² = a, j² = b, k = ij = -ji."""

    a: int
    b: int

    def __post_init__(self):
        if self.a >= 0 or self.b >= 0:
            raise ValueError("only definite algebras (a, b < 0) are supported")

    def element(self, *coeffs) -> "QuatElement":
        return QuatElement(self, tuple(Fraction(c) for c in coeffs))


@dataclass(frozen=True)
class QuatElement:
    algebra: QuaternionAlgebra
    coeffs: tuple[Fraction, Fraction, Fraction, Fraction]

    def __mul__(self, other: "QuatElement") -> "QuatElement":
        if isinstance(other, (int, Fraction)):
            return QuatElement(self.algebra, tuple(c * other for c in self.coeffs))
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coeffs
        y0, y1, y2, y3 = other.coeffs
        return QuatElement(self.algebra, (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ))

    __rmul__ = __mul__

    def __add__(self, other: "QuatElement") -> "QuatElement":
        return QuatElement(self.algebra, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "QuatElement") -> "QuatElement":
        return QuatElement(self.algebra, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def conjugate(self) -> "QuatElement":
        x0, x1, x2, x3 = self.coeffs
        return QuatElement(self.algebra, (x0, -x1, -x2, -x3))

    def norm(self) -> Fraction:
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coeffs
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    def trace(self) -> Fraction:
        return 2 * self.coeffs[0]


def multiply(x: QuatElement, y: QuatElement) -> QuatElement:
    return x * y


def conjugate(x: QuatElement) -> QuatElement:
    return x.conjugate()


def norm(x: QuatElement) -> Fraction:
    return x.norm()


def trace(x: QuatElement) -> Fraction:
    return x.trace()


class QuatLattice:
    """A full-rank Z-lattice in B, kept in canonical form.

    The basis is stored as (integer HNF rows, common denominator) so equal
    lattices have identical representations regardless of the generators.
    """

    def __init__(self, algebra: QuaternionAlgebra, generators):
        rows = [tuple(Fraction(c) for c in (g.coeffs if isinstance(g, QuatElement) else g))
                for g in generators]
        denom = _exact.common_denominator(rows)
        hnf = _exact.hnf_rows([[int(c * denom) for c in row] for row in rows])
        if len(hnf) != 4:
            raise ValueError(f"generators span a lattice of rank {len(hnf)}, expected 4")
        content = math.gcd(denom, *(x for row in hnf for x in row))
        self.algebra = algebra
        self.denominator = denom // content
        self.numerators = tuple(tuple(x // content for x in row) for row in hnf)

    @property
    def basis(self) -> list[QuatElement]:
        return [QuatElement(self.algebra, tuple(Fraction(x, self.denominator) for x in row))
                for row in self.numerators]

    @property
    def matrix(self) -> list[list[Fraction]]:
        return [list(e.coeffs) for e in self.basis]

    def __eq__(self, other) -> bool:
        return (isinstance(other, QuatLattice) and self.algebra == other.algebra
                and self.denominator == other.denominator and self.numerators == other.numerators)

    def __hash__(self) -> int:
        return hash((self.algebra, self.denominator, self.numerators))

    def __repr__(self) -> str:
        return f"QuatLattice({[list(map(str, e.coeffs)) for e in self.basis]})"

    def coordinates(self, x: QuatElement) -> list[Fraction]:
        return _exact.coordinates(self.matrix, x.coeffs)

    def contains(self, x: QuatElement) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(x))

    def contains_lattice(self, other: "QuatLattice") -> bool:
        return all(self.contains(e) for e in other.basis)

    @property
    def covolume(self) -> Fraction:
        """|det| of the basis in the (1, i, j, k) coordinates."""
        return abs(_exact.det(self.matrix))

    def norm_gram(self, scale=1) -> list[list[Fraction]]:
        """Matrix A with Nr(Σ cᵢeᵢ)·scale = cᵀAc."""
        basis = self.basis
        scale = Fraction(scale)
        return [[(ei * ej.conjugate()).trace() / 2 * scale for ej in basis] for ei in basis]

    def elements_of_norm(self, n, scale=1) -> list[QuatElement]:
        """Lattice elements x with Nr(x)·scale = n."""
        basis = self.basis
        out = []
        for c, value in short_vectors(self.norm_gram(scale), n):
            if value == n:
                x = QuatElement(self.algebra, (Fraction(0),) * 4)
                for ci, e in zip(c, basis):
                    if ci:
                        x = x + e * ci
                out.append(x)
        return out


def canonicalize(algebra: QuaternionAlgebra, generators) -> QuatLattice:
    return QuatLattice(algebra, generators)


def lattice_product(I: QuatLattice, J: QuatLattice) -> QuatLattice:
    return QuatLattice(I.algebra, [x * y for x in I.basis for y in J.basis])


def is_order(L: QuatLattice) -> bool:
    one = L.algebra.element(1, 0, 0, 0)
    if not L.contains(one):
        return False
    basis = L.basis
    if any(e.norm().denominator != 1 or e.trace().denominator != 1 for e in basis):
        return False
    return all(L.contains(x * y) for x in basis for y in basis)


def left_order(L: QuatLattice) -> QuatLattice:
    return _multiplier_ring(L, side="left")


def right_order(L: QuatLattice) -> QuatLattice:
    """{x in B : L·x ⊆ L}, computed as a dual lattice."""
    return _multiplier_ring(L, side="right")


def _multiplier_ring(L: QuatLattice, side: str) -> QuatLattice:
    algebra = L.algebra
    inv = _exact.inverse(L.matrix)
    units = [algebra.element(*[int(i == j) for j in range(4)]) for i in range(4)]
    # condition: coordinates of e·x (or x·e) in L are integral for each basis e.
    # x ↦ coordinates is linear, row r of the stacked matrix acts on x's coefficients
    rows = []
    for e in L.basis:
        images = [(e * u if side == "right" else u * e).coeffs for u in units]
        # images[t] = e·u_t in B-coordinates; coordinates in L: images[t]·inv
        coords = [[sum(images[t][s] * inv[s][m] for s in range(4)) for m in range(4)] for t in range(4)]
        for m in range(4):
            rows.append([coords[t][m] for t in range(4)])
    # {x : rows·x ∈ Z} is the dual of the Z-span of rows
    denom = _exact.common_denominator(rows)
    span = _exact.hnf_rows([[int(c * denom) for c in r] for r in rows])
    span = [[Fraction(c, denom) for c in r] for r in span]
    dual = _exact.transpose(_exact.inverse(span))
    result = QuatLattice(algebra, dual)
    if not is_order(result):
        raise ValueError("multiplier ring is not an order; lattice data is inconsistent")
    return result


def ideal_norm(I: QuatLattice, order: QuatLattice) -> Fraction:
    """N(I) with [R : I] = N(I)², via covolumes."""
    ratio = I.covolume / order.covolume
    num, den = math.isqrt(ratio.numerator), math.isqrt(ratio.denominator)
    if num * num != ratio.numerator or den * den != ratio.denominator:
        raise ValueError("index is not a square; not an ideal of this order")
    return Fraction(num, den)


def ideal_inverse(I: QuatLattice, order: QuatLattice) -> QuatLattice:
    """conjugate(I)/N(I); valid for locally principal ideals."""
    n = ideal_norm(I, order)
    return QuatLattice(I.algebra, [e.conjugate() * (1 / n) for e in I.basis])


def is_left_ideal(I: QuatLattice, order: QuatLattice) -> bool:
    return all(I.contains(r * x) for r in order.basis for x in I.basis)


def unit_half_count(O: QuatLattice) -> int:
    """Half the number of norm-one elements of the order."""
    return len(O.elements_of_norm(1)) // 2


def ternary_form(O: QuatLattice) -> TernaryForm:
    """Reduced norm on the trace-zero part of Z + 2O, in canonical reduced form."""
    algebra = O.algebra
    lattice = QuatLattice(algebra, [e * 2 for e in O.basis] + [algebra.element(1, 0, 0, 0)])
    basis = lattice.basis
    traces = [e.trace() for e in basis]
    denom = _exact.common_denominator([traces])
    kernel = _exact.integer_kernel([int(t * denom) for t in traces])
    if len(kernel) != 3:
        raise AssertionError("trace-zero sublattice must have rank 3")
    vecs = []
    for c in kernel:
        x = algebra.element(0, 0, 0, 0)
        for ci, e in zip(c, basis):
            x = x + e * ci
        vecs.append(x)
    G = [[(u * v.conjugate()).trace() for v in vecs] for u in vecs]
    return reduce(TernaryForm.from_gram(G))


def brandt_matrix(ideals: list[QuatLattice], order: QuatLattice, n: int, level: int) -> list[list[Fraction]]:
    """B(n)[i][j] = #{x in I_j⁻¹I_i : Nr(x)·N(I_j)/N(I_i) = n} / (2·w_j)."""
    if math.gcd(n, level) != 1:
        raise ValueError("Brandt matrices are only supported for n coprime to the level")
    norms = [ideal_norm(I, order) for I in ideals]
    inverses = [ideal_inverse(I, order) for I in ideals]
    weights = [unit_half_count(right_order(I)) for I in ideals]
    h = len(ideals)
    B = [[Fraction(0)] * h for _ in range(h)]
    for i in range(h):
        for j in range(h):
            M = lattice_product(inverses[j], ideals[i])
            count = len(M.elements_of_norm(n, scale=norms[j] / norms[i]))
            B[i][j] = Fraction(count, 2 * weights[j])
    return B
