"""Mod-p weight functions on ternary forms and their per-class sign calibration."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from twistlift.numbers import is_prime, kronecker, primitive_root, rank1_decompose, rank_mod_p
from twistlift.ternary import TernaryForm

FIRST = "first"
SECOND = "second"


class CalibrationError(ValueError):
    pass


def second_kind_character(p: int):
    """Odd ±1-valued function on (Z/p)^× applied to the linear form.

    For p ≡ 3 (mod 4) this is the Legendre symbol.  For p ≡ 1 (mod 4) the
    Legendre symbol is even, so the real combination Re χ + Im χ of the
    quartic character with χ(g) = i (g the least primitive root) is used.
    That character is itself even when p ≡ 1 (mod 8), which is rejected.
    """
    if p % 4 == 3:
        return lambda r: kronecker(r, p)
    if p % 8 == 1:
        raise ValueError(f"no odd second-kind weight is available at p={p}")
    g = primitive_root(p)
    log = {}
    x = 1
    for k in range(p - 1):
        log[x] = k
        x = x * g % p
    return lambda r: 0 if r % p == 0 else (1 if log[r % p] % 4 in (0, 1) else -1)


@dataclass
class WeightFunction:
    """A function on Z³ that depends only on v mod prime.

    Second kind: ψ(ℓ(v)) with Q ≡ u·ℓ² (mod p).  First kind: zero off the
    cone l | Q(v); on it, the Legendre symbol of the pairing with a fixed cone
    point w, falling back to λ when v ≡ λw.
    """

    form: TernaryForm
    prime: int
    kind: str
    linear_form: tuple[int, int, int] | None = None
    base_point: tuple[int, int, int] | None = None
    sign: int = 1
    _table: np.ndarray | None = field(default=None, repr=False, compare=False)

    def _raw(self, v) -> int:
        p = self.prime
        if self.kind == SECOND:
            r = sum(c * x for c, x in zip(self.linear_form, v)) % p
            return second_kind_character(p)(r)
        if self.form(v) % p:
            return 0
        w = self.base_point
        b = self.form.bilinear(v, w) % p
        if b:
            return kronecker(b, p)
        k = next(i for i in range(3) if w[i] % p)
        lam = v[k] * pow(w[k], -1, p) % p
        return kronecker(lam, p)

    @property
    def table(self) -> np.ndarray:
        """Values on (Z/p)³ as a p×p×p array (before the calibration sign)."""
        if self._table is None:
            p = self.prime
            t = np.zeros((p, p, p), dtype=np.int8)
            for v in itertools.product(range(p), repeat=3):
                t[v] = self._raw(v)
            self._table = t
        return self._table

    def __call__(self, v) -> int:
        p = self.prime
        return self.sign * int(self.table[v[0] % p, v[1] % p, v[2] % p])

    def values(self, X, Y, Z) -> np.ndarray:
        p = self.prime
        return self.sign * self.table[X % p, Y % p, Z % p].astype(np.int64)

    def with_sign(self, sign: int) -> "WeightFunction":
        return WeightFunction(self.form, self.prime, self.kind, self.linear_form, self.base_point,
                              sign, self._table)


def second_kind(Q: TernaryForm, p: int) -> WeightFunction:
    ell, _ = rank1_decompose(Q.gram, p)
    return WeightFunction(Q, p, SECOND, linear_form=ell)


def cone_points(Q: TernaryForm, l: int) -> list[tuple[int, int, int]]:
    return [w for w in itertools.product(range(l), repeat=3) if any(w) and Q(w) % l == 0]


def first_kind(Q: TernaryForm, l: int, base_point=None) -> WeightFunction:
    if l == 2 or not is_prime(l):
        raise ValueError("first-kind weights need an odd prime")
    if rank_mod_p(Q.gram, l) != 3:
        raise ValueError(f"form is degenerate modulo {l}")
    if base_point is None:
        base_point = cone_points(Q, l)[0]
    elif Q(base_point) % l or not any(x % l for x in base_point):
        raise ValueError("base point must be a nonzero cone point")
    return WeightFunction(Q, l, FIRST, base_point=tuple(base_point))


def evaluate(omega: WeightFunction, v) -> int:
    return omega(v)


def calibrate_signs(thetas, eigenvector, admissible, oracle, *, probe_limit=None,
                    tolerance=1e-6, zero_tolerance=1e-6):
    """Choose class signs ε (first active entry +1) for g = Σ vᵢεᵢθᵢ.

    ``thetas`` are per-class coefficient arrays indexed by |D|;
    ``admissible`` maps a discriminant to its star factor or None.  A choice
    is accepted when g is nonzero, no group of identical nonzero class
    series cancels out, every probe with c(D) = 0 has a vanishing
    oracle value, and √|D|·L/(⋆c²) is constant within ``tolerance`` over at
    least two probes.  Returns (signs, fitted ratio).
    """
    n = len(thetas)
    bound = len(thetas[0]) - 1
    if probe_limit is not None:
        bound = min(bound, probe_limit)
    probes = [(D, star) for D, star in admissible(bound)]
    active = [i for i in range(n) if eigenvector[i]]
    # classes with identical series (e.g. equal forms) are grouped; a choice
    # that cancels a whole nonzero group discards that group's information
    groups: dict[tuple, list[int]] = {}
    for i in active:
        groups.setdefault(tuple(thetas[i][1:bound + 1]), []).append(i)
    for choice in itertools.product((1, -1), repeat=len(active) - 1):
        signs = [1] * n
        for i, s in zip(active[1:], choice):
            signs[i] = s
        if any(any(key) and sum(eigenvector[i] * signs[i] for i in members) == 0
               for key, members in groups.items()):
            continue
        g = [sum(eigenvector[i] * signs[i] * thetas[i][m] for i in active) for m in range(bound + 1)]
        if not any(g[1:]):
            continue
        ratios, coherent = [], True
        for D, star in probes:
            c = g[abs(D)]
            L = oracle(D)
            if c == 0:
                if abs(L) > zero_tolerance:
                    coherent = False
                    break
                continue
            ratios.append(math.sqrt(abs(D)) * L / (star * c * c))
        if not coherent or len(ratios) < 2 or min(ratios) <= 0:
            continue
        spread = (max(ratios) - min(ratios)) / min(ratios)
        if spread < tolerance:
            return tuple(signs), sorted(ratios)[len(ratios) // 2]
    raise CalibrationError("no sign choice makes the lift proportional to the central values")
