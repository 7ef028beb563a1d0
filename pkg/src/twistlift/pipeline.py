"""End-to-end assembly: fixture -> calibrated eigenform -> fitted constant."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from twistlift import quaternion as qa
from twistlift.fixtures import FixtureFile
from twistlift.lseries import Oracle
from twistlift.ternary import TernaryForm, equivalent, theta_coefficients
from twistlift.theta_lift import Eigenform, TwistFamily, build_eigenform, class_thetas
from twistlift.waldspurger import fit_k
from twistlift.weights import calibrate_signs

PROBE_LIMIT = 200


@dataclass
class LiftResult:
    family: TwistFamily
    eigenform: Eigenform
    signs: tuple[int, ...]
    k_hat: float
    spread: float


class Workspace:
    """Per-fixture caches for the oracle and class theta series."""

    def __init__(self, fixture: FixtureFile):
        self.fixture = fixture
        self.oracle = Oracle(fixture.curve)
        self._thetas: dict = {}
        self._results: dict[tuple[str, int], LiftResult] = {}

    def lift(self, name: str, bound: int = PROBE_LIMIT) -> LiftResult:
        key = (name, bound)
        if key in self._results:
            return self._results[key]
        fx = self.fixture
        family = fx.family(name)
        size = max(bound, PROBE_LIMIT)
        thetas = class_thetas(family, fx.forms, size, self._thetas)
        signs, _ = calibrate_signs(thetas, fx.eigenvector, family.admissible, self.oracle.central_value,
                                   probe_limit=PROBE_LIMIT)
        g = build_eigenform(family, fx.forms, fx.eigenvector, signs, size, thetas)
        k, spread = fit_k(family, g, self.oracle, [D for D, _ in family.admissible(PROBE_LIMIT)])
        if size != bound:
            g = Eigenform(family, g.coefficients[: bound + 1], g.signs)
        result = LiftResult(family, g, signs, k, spread)
        self._results[key] = result
        return result


def form_unit_half_count(Q: TernaryForm) -> int:
    """Half the unit count of the order whose ternary form is Q.

    A norm-one unit x with trace t corresponds to s = 2x - t in the form's
    lattice with Q(s) = 4 - t², so #units = 2 + r_Q(4) + 2·r_Q(3).
    """
    th = theta_coefficients(Q, 4)
    return 1 + th[4] + 2 * th[3]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


def verify_fixture(fx: FixtureFile) -> list[CheckResult]:
    """Recompute the quaternion-side data a fixture asserts."""
    checks = []
    discs = {Q.discriminant for Q in fx.forms}
    checks.append(CheckResult("genus discriminant", len(discs) == 1, f"det G values {sorted(discs)}"))
    weights = [form_unit_half_count(Q) for Q in fx.forms]
    q = fx.quaternion
    if q is not None:
        R = q.order_lattice()
        checks.append(CheckResult("order", qa.is_order(R), "R is closed under multiplication"))
        lattices = q.class_lattices() if q.classes else [R]
        for idx, (name, I) in enumerate(zip(q.classes or ["R"], lattices)):
            if name != "R":
                ok = qa.is_left_ideal(I, R)
                checks.append(CheckResult(f"ideal {name}", ok, "R·I ⊆ I"))
            O = qa.right_order(I)
            T = qa.ternary_form(O)
            match = equivalent(T, fx.forms[idx]) is not None
            checks.append(CheckResult(f"form Q{idx + 1}", match, f"ternary form of O_R({name}) is {T}"))
            w = qa.unit_half_count(O)
            checks.append(CheckResult(f"units Q{idx + 1}", w == weights[idx],
                                      f"unit half-count {w}, from form {weights[idx]}"))
    height = sum(v * v * w for v, w in zip(fx.eigenvector, weights))
    checks.append(CheckResult("height", height == fx.height, f"Σ v²w = {height}, fixture {fx.height}"))
    return checks


def brandt(fx: FixtureFile, n: int) -> list[list[Fraction]]:
    q = fx.quaternion
    if q is None or not q.classes:
        raise ValueError("fixture has no ideal class representatives")
    return qa.brandt_matrix(q.class_lattices(), q.order_lattice(), n, q.level)


def eigen_orientations(B, vector) -> dict[str, Fraction | None]:
    """Eigenvalue of ``vector`` under B acting on the right (vB) and on the left (Bv)."""
    h = len(B)
    left = [sum(vector[i] * B[i][j] for i in range(h)) for j in range(h)]
    right = [sum(B[i][j] * vector[j] for j in range(h)) for i in range(h)]

    def ratio(image):
        k = next(i for i in range(h) if vector[i])
        lam = Fraction(image[k], vector[k])
        return lam if all(image[i] == lam * vector[i] for i in range(h)) else None

    return {"row vector (vB)": ratio(left), "column vector (Bv)": ratio(right)}
