"""Generalized theta series and the weight-3/2 forms g attached to twist families."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from twistlift.lseries import Oracle
from twistlift.numbers import TypePattern, is_fundamental, is_prime, type_of
from twistlift.ternary import TernaryForm, vector_arrays
from twistlift.weights import FIRST, WeightFunction, first_kind, second_kind


class InadmissibleDiscriminant(ValueError):
    pass


@dataclass
class TwistFamily:
    """One weight-3/2 form g and the discriminants its coefficients govern.

    ``types`` maps each admissible TypePattern (over ``primes``) to its star
    factor.  ``aux`` is the auxiliary discriminant ±l, or 1 when no
    first-kind weight is used; ``second_kind`` lists the level primes that
    carry second-kind weights.  ``scale`` multiplies the signed sum of class
    theta series so that g matches its reference normalization.
    """

    name: str
    curve: str
    sign: int
    primes: tuple[int, ...]
    types: dict[TypePattern, int]
    aux: int = 1
    second_kind: tuple[int, ...] = ()
    scale: Fraction = Fraction(1)
    k_printed: str | None = None
    identity: str | None = None
    expansion: str | None = None
    excluded_primes: tuple[int, ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("family sign must be ±1")
        if any(s not in (1, 2, 4) for s in self.types.values()):
            raise ValueError("star factors must be 1, 2 or 4")
        if self.aux != 1 and not is_prime(abs(self.aux)):
            raise ValueError("auxiliary discriminant must be ±l for a prime l")
        self.scale = Fraction(self.scale)

    @property
    def divisor(self) -> int:
        return abs(self.aux)

    @property
    def weight_primes(self) -> list[tuple[int, str]]:
        out = [(self.divisor, FIRST)] if self.divisor != 1 else []
        return out + [(p, "second") for p in self.second_kind]

    def star(self, D: int):
        """Star factor of D, or None when D is not admissible for this family."""
        if D == 0 or (1 if D > 0 else -1) != self.sign or not is_fundamental(D):
            return None
        if any(D % p == 0 for p in self.excluded_primes):
            return None
        return self.types.get(type_of(D, self.primes))

    def admissible(self, bound: int) -> list[tuple[int, int]]:
        """(D, star) for admissible D with |D| <= bound, ascending in |D|."""
        out = []
        for n in range(1, bound + 1):
            D = self.sign * n
            s = self.star(D)
            if s is not None:
                out.append((D, s))
        return out

    def weights(self, Q: TernaryForm) -> list[WeightFunction]:
        ws = [first_kind(Q, self.divisor)] if self.divisor != 1 else []
        return ws + [second_kind(Q, p) for p in self.second_kind]


def find_auxiliary_prime(oracle: Oracle, sign: int, required: TypePattern, *, limit: int = 1000,
                         threshold: float = 1e-3) -> int:
    """Smallest l with D = sign·l fundamental of the required type and L(f, D, 1) safely nonzero.

    l ≡ 1 (mod 4) when sign = +1 and l ≡ 3 (mod 4) when sign = -1, so that
    ±l is a fundamental discriminant; l must not divide 2N.
    """
    N = oracle.curve.conductor
    for l in range(3, limit + 1):
        if not is_prime(l) or N % l == 0 or l % 4 != (1 if sign > 0 else 3):
            continue
        D = sign * l
        if type_of(D, required.primes) != required:
            continue
        if abs(oracle.central_value(D)) > threshold:
            return l
    raise ValueError(f"no auxiliary prime below {limit}")


def weighted_theta(Q: TernaryForm, weights: list[WeightFunction], divisor: int, bound: int) -> list[Fraction]:
    """Coefficients 0..bound of ½·Σ_v Πω(v)·q^{Q(v)/divisor}."""
    if any(w.kind == FIRST and w.prime != divisor for w in weights):
        raise ValueError("first-kind weights must use the divisor as their prime")
    X, Y, Z, V = vector_arrays(Q, divisor * bound)
    prod = np.ones(len(V), dtype=np.int64)
    for w in weights:
        prod *= w.values(X, Y, Z)
    live = prod != 0
    if np.any(V[live] % divisor):
        raise AssertionError("nonzero weight off the divisor lattice")
    sums = np.bincount(V[live] // divisor, weights=prod[live], minlength=bound + 1)
    sums = np.rint(sums).astype(np.int64)
    if np.any(sums[1:] % 2):
        raise AssertionError("weighted counts must be even")
    return [Fraction(int(sums[0]), 2)] + [Fraction(int(s) // 2) for s in sums[1:]]


@dataclass
class Eigenform:
    family: TwistFamily
    coefficients: list[Fraction]  # index 0..bound, index 0 unused
    signs: tuple[int, ...] = ()
    bound: int = field(init=False)

    def __post_init__(self):
        self.bound = len(self.coefficients) - 1

    def coefficient_at(self, D: int) -> Fraction:
        if self.family.star(D) is None:
            raise InadmissibleDiscriminant(f"D={D} is not admissible for family {self.family.name}")
        if abs(D) > self.bound:
            raise ValueError(f"|D|={abs(D)} exceeds the computed bound {self.bound}")
        return self.coefficients[abs(D)]

    def expansion(self, bound: int | None = None) -> str:
        return format_expansion(self.coefficients, bound)


def class_thetas(family: TwistFamily, forms: list[TernaryForm], bound: int,
                 cache: dict | None = None) -> list[list[Fraction]]:
    """Per-class weighted theta series; identical forms are computed once."""
    cache = {} if cache is None else cache
    out = []
    for Q in forms:
        key = (Q, family.aux, family.second_kind, bound)
        if key not in cache:
            cache[key] = weighted_theta(Q, family.weights(Q), family.divisor, bound)
        out.append(cache[key])
    return out


def build_eigenform(family: TwistFamily, forms: list[TernaryForm], eigenvector, signs, bound: int,
                    thetas=None) -> Eigenform:
    """g = scale·Σ vᵢεᵢ·Θᵢ truncated at ``bound``."""
    if thetas is None:
        thetas = class_thetas(family, forms, bound)
    coeffs = [Fraction(0)] * (bound + 1)
    for v, e, th in zip(eigenvector, signs, thetas):
        if v:
            for n in range(1, bound + 1):
                coeffs[n] += v * e * th[n]
    coeffs = [family.scale * c for c in coeffs]
    if not any(coeffs[1:]):
        raise ValueError(f"family {family.name}: eigenform vanishes identically")
    return Eigenform(family, coeffs, tuple(signs))


def format_expansion(coefficients, bound: int | None = None) -> str:
    """Render c[1..] as ``2q^3 - 4q^8 + q^9``."""
    top = len(coefficients) - 1 if bound is None else min(bound, len(coefficients) - 1)
    parts = []
    for n in range(1, top + 1):
        c = coefficients[n]
        if c == 0:
            continue
        mag = abs(c)
        mono = "q" if n == 1 else f"q^{n}"
        body = mono if mag == 1 else f"{mag}{mono}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


def parse_expansion(text: str) -> dict[int, Fraction]:
    """Inverse of format_expansion; a trailing ``+ ...`` is ignored."""
    text = text.replace(" ", "").replace("{", "").replace("}", "")
    text = re.sub(r"[+]?(\.\.\.|\\cdots)$", "", text)
    terms = re.findall(r"([+-]?)(\d+(?:/\d+)?)?q(?:\^(\d+))?", text)
    if not terms or "".join(s + c + "q" + (f"^{e}" if e else "") for s, c, e in terms) != text:
        raise ValueError(f"cannot parse q-expansion {text!r}")
    out: dict[int, Fraction] = {}
    for sign, coeff, exp in terms:
        c = Fraction(coeff) if coeff else Fraction(1)
        n = int(exp) if exp else 1
        out[n] = out.get(n, Fraction(0)) + (-c if sign == "-" else c)
    return out
