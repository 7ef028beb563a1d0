"""Central values of quadratic twists from the curve's own Dirichlet coefficients.

The oracle is independent of the theta machinery: a(m) come from point
counts, and L(f, D, 1) is summed with the exponentially smoothed series of
an even functional equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from twistlift.numbers import factorize, is_fundamental, kronecker, primes_up_to

TAIL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class EllipticCurve:
    label: str
    ainvs: tuple[int, int, int, int, int]
    conductor: int
    sign: int
    atkin_lehner: dict = field(default_factory=dict, hash=False)  # prime -> eigenvalue of W_{p^e}
    self_twist: int | None = None  # D0 with f ⊗ χ_{D0} = f

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError(f"curve {self.label} is singular")
        if self.sign not in (1, -1):
            raise ValueError("root number must be ±1")

    @property
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def _count_points_small(curve: EllipticCurve, p: int) -> int:
    a1, a2, a3, a4, a6 = curve.ainvs
    affine = sum(
        1
        for x in range(p)
        for y in range(p)
        if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p == 0
    )
    return affine + 1


def ap(curve: EllipticCurve, p: int) -> int:
    """p + 1 - #Ẽ(F_p), counting the singular point at bad primes."""
    if p < 5:
        return p + 1 - _count_points_small(curve, p)
    b2, b4, b6, _ = curve.b_invariants
    x = np.arange(p, dtype=np.int64)
    # (2y + a1x + a3)² = 4x³ + b2x² + 2b4x + b6
    f = (4 * x + b2) % p
    f = (f * x + 2 * b4) % p
    f = (f * x + b6) % p
    chi = -np.ones(p, dtype=np.int64)
    chi[(x * x) % p] = 1
    chi[0] = 0
    return -int(chi[f].sum())


def coefficients(curve: EllipticCurve, M: int) -> np.ndarray:
    """a(0..M) with a(0) = 0, filled by the Hecke recursion and multiplicativity."""
    a = np.zeros(M + 1, dtype=np.int64)
    if M >= 1:
        a[1] = 1
    N = curve.conductor
    spf = list(range(M + 1))
    for p in primes_up_to(math.isqrt(M)):
        for m in range(p * p, M + 1, p):
            if spf[m] == m:
                spf[m] = p
    for p in primes_up_to(M):
        app = ap(curve, p)
        if N % p and abs(app) > 2 * math.sqrt(p):
            raise AssertionError(f"Hasse bound violated at p={p}")
        prev, cur, q = 1, app, p
        a[p] = app
        while q * p <= M:
            q *= p
            nxt = app * cur if N % p == 0 else app * cur - p * prev
            prev, cur = cur, nxt
            a[q] = cur
    for m in range(2, M + 1):
        p = spf[m]
        if p == m:
            continue
        q = p
        while m % (q * p) == 0:
            q *= p
        if q != m:
            a[m] = a[q] * a[m // q]
    return a


class UnsupportedTwist(ValueError):
    pass


def _reduce_self_twist(curve: EllipticCurve, D: int) -> int:
    """Replace D by D/D0 when the twist by D0 fixes f and D shares D0's primes."""
    D0 = curve.self_twist
    if D0 is None:
        return D
    shared = [p for p in factorize(D0) if D % p == 0]
    if not shared:
        return D
    if D % D0:
        raise UnsupportedTwist(f"cannot reduce D={D} by the self-twist {D0}")
    E = D // D0
    if not is_fundamental(E):
        raise UnsupportedTwist(f"D/{D0} = {E} is not fundamental")
    return E


def twist_sign(curve: EllipticCurve, D: int) -> int:
    """Root number of the twist of f by χ_D.

    For gcd(D, N) = 1 this is ε(f)·χ_D(-N).  A prime p exactly dividing both
    D and N contributes its Atkin-Lehner eigenvalue in place of χ_D(p).
    """
    if not is_fundamental(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    D = _reduce_self_twist(curve, D)
    sign = curve.sign * (1 if D > 0 else -1)
    for p, e in factorize(curve.conductor).items():
        if D % p:
            sign *= kronecker(D, p) ** e
        elif e == 1:
            sign *= curve.atkin_lehner[p]
        else:
            raise UnsupportedTwist(f"p={p} divides D={D} and p² divides the conductor")
    return sign


def twist_conductor(curve: EllipticCurve, D: int) -> int:
    D = _reduce_self_twist(curve, D)
    C = curve.conductor * D * D
    for p, e in factorize(curve.conductor).items():
        if D % p == 0:
            if e != 1:
                raise UnsupportedTwist(f"p={p} divides D={D} and p² divides the conductor")
            C //= p
    return C


def _truncation(C: int, factor: float) -> int:
    step = 2 * math.pi / math.sqrt(C)
    # 2Σ_{m>M} d(m)m^{-1/2}e^{-m·step} <= 4e^{-(M+1)step}/(1-e^{-step})
    M = 1
    while 4 * math.exp(-(M + 1) * step) / (1 - math.exp(-step)) >= TAIL_TOLERANCE:
        M = int(M * 1.25) + 1
    return int(math.ceil(M * factor))


class Oracle:
    """Cached coefficient table and twisted central values for one curve."""

    def __init__(self, curve: EllipticCurve):
        self.curve = curve
        self._a = coefficients(curve, 1000)
        self._cache: dict[tuple[int, float], float] = {}

    def coefficients(self, M: int) -> np.ndarray:
        if M >= len(self._a):
            self._a = coefficients(self.curve, max(M, 2 * (len(self._a) - 1)))
        return self._a[: M + 1]

    def truncation(self, D: int, length_factor: float = 1.0) -> int:
        return _truncation(twist_conductor(self.curve, D), length_factor)

    def central_value(self, D: int, length_factor: float = 1.0) -> float:
        """L(f, D, 1); exactly 0.0 when the functional equation is odd."""
        key = (D, length_factor)
        if key in self._cache:
            return self._cache[key]
        if twist_sign(self.curve, D) == -1:
            value = 0.0
        else:
            C = twist_conductor(self.curve, D)
            M = _truncation(C, length_factor)
            a = self.coefficients(M)[1:].astype(np.float64)
            m = np.arange(1, M + 1)
            period = abs(D)
            chi = np.array([kronecker(D, r) for r in range(period)], dtype=np.float64)
            chi_m = chi[m % period] if period > 1 else np.ones(M)
            terms = a * chi_m / m * np.exp(-2 * math.pi * m / math.sqrt(C))
            value = 2 * math.fsum(terms.tolist())
        self._cache[key] = value
        return value


def central_value(curve: EllipticCurve, D: int, length_factor: float = 1.0) -> float:
    return Oracle(curve).central_value(D, length_factor)
