"""Relating theta-lift coefficients to twisted central values."""

from __future__ import annotations

import math
import re
import statistics
from dataclasses import dataclass
from fractions import Fraction

from twistlift.lseries import Oracle
from twistlift.theta_lift import Eigenform, InadmissibleDiscriminant, TwistFamily

TABLE_TOLERANCE = 1e-5  # absolute, against 6-decimal printed values
RATIO_TOLERANCE = 1e-6  # relative, for constancy and identity checks


@dataclass
class TableRow:
    D: int
    c: int
    star: int
    L_predicted: float
    L_oracle: float

    @property
    def ratio(self) -> float:
        """Predicted over oracle value; nan on rows with c = 0."""
        if self.c == 0:
            return math.nan
        return self.L_predicted / self.L_oracle

    def consistent(self, tolerance: float = RATIO_TOLERANCE) -> bool:
        if self.c == 0:
            return abs(self.L_oracle) <= tolerance
        return abs(self.ratio - 1) <= tolerance


def _integral(c: Fraction) -> int:
    if Fraction(c).denominator != 1:
        raise AssertionError(f"coefficient {c} is not integral")
    return int(c)


def predict(family: TwistFamily, g: Eigenform, D: int, k: float) -> float:
    """⋆·k·c(D)²/√|D|."""
    star = family.star(D)
    if star is None:
        raise InadmissibleDiscriminant(f"D={D} is not admissible for family {family.name}")
    c = g.coefficient_at(D)
    return star * k * float(c * c) / math.sqrt(abs(D))


def ratios(family: TwistFamily, g: Eigenform, oracle: Oracle, discriminants) -> list[tuple[int, float]]:
    """(D, √|D|·L/(⋆c²)) for the given D with c(D) ≠ 0 and L ≠ 0."""
    out = []
    for D in discriminants:
        c = g.coefficient_at(D)
        if c == 0:
            continue
        L = oracle.central_value(D)
        if L == 0:
            continue
        out.append((D, math.sqrt(abs(D)) * L / (family.star(D) * float(c * c))))
    return out


def fit_k(family: TwistFamily, g: Eigenform, oracle: Oracle, discriminants=None) -> tuple[float, float]:
    """Median ratio k̂ and its maximal relative deviation over the probes."""
    if discriminants is None:
        discriminants = [D for D, _ in family.admissible(g.bound)]
    rs = [r for _, r in ratios(family, g, oracle, discriminants)]
    if len(rs) < 3:
        raise ValueError(f"family {family.name}: only {len(rs)} usable probes, need 3")
    k = statistics.median(rs)
    spread = max(abs(r - k) for r in rs) / k
    return k, spread


def evaluate_identity(identity: str, oracle: Oracle) -> float:
    """Evaluate expressions like ``2*L(-4)``, ``1/4*L(1)`` or ``L(1)``."""
    m = re.fullmatch(r"\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*?\s*)?L\(\s*(-?\d+)\s*\)\s*", identity)
    if not m:
        raise ValueError(f"cannot parse identity {identity!r}")
    coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
    return float(coeff) * oracle.central_value(int(m.group(2)))


@dataclass
class IdentityReport:
    expression: str
    value: float
    k_hat: float
    relative_error: float

    @property
    def ok(self) -> bool:
        return self.relative_error < RATIO_TOLERANCE


def verify_identity(family: TwistFamily, k_hat: float, oracle: Oracle) -> IdentityReport:
    if not family.identity:
        raise ValueError(f"family {family.name} has no identity for k")
    value = evaluate_identity(family.identity, oracle)
    return IdentityReport(family.identity, value, k_hat, abs(value - k_hat) / abs(k_hat))


def make_table(family: TwistFamily, g: Eigenform, oracle: Oracle, dmax: int, k: float) -> list[TableRow]:
    """One row per admissible fundamental D with |D| < dmax, ascending in |D|."""
    if dmax - 1 > g.bound:
        raise ValueError(f"eigenform bound {g.bound} too small; need at least {dmax - 1}")
    rows = []
    for D, star in family.admissible(dmax - 1):
        c = _integral(g.coefficient_at(D))
        rows.append(TableRow(D, c, star, predict(family, g, D, k), oracle.central_value(D)))
    return rows
