"""Line-oriented fixture files describing one curve and its theta-lift data.

Format::

    # comment
    [curve]
    label = 27A
    ainvs = 0 0 1 0 -7
    ...
    [order]
    1 0 0 0            <- one quaternion per line, coefficients of 1, i, j, k
    [ideal I]
    ...
    [family real]
    aux = -7
    ...

Values are plain text; rationals are written ``p/q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from twistlift.lseries import EllipticCurve
from twistlift.numbers import TypePattern
from twistlift.quaternion import QuaternionAlgebra, QuatLattice
from twistlift.ternary import TernaryForm
from twistlift.theta_lift import TwistFamily, parse_expansion


class FixtureError(ValueError):
    """Malformed fixture; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, section: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if section is not None:
            where.append(f"section [{section}]")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.section = section


@dataclass
class QuaternionData:
    a: int
    b: int
    level: int
    order: list[tuple[Fraction, ...]]
    ideals: dict[str, list[tuple[Fraction, ...]]] = field(default_factory=dict)
    classes: list[str] = field(default_factory=list)

    @property
    def algebra(self) -> QuaternionAlgebra:
        return QuaternionAlgebra(self.a, self.b)

    def order_lattice(self) -> QuatLattice:
        return QuatLattice(self.algebra, self.order)

    def class_lattices(self) -> list[QuatLattice]:
        """Left ideal representatives, with the name ``R`` standing for the order."""
        out = []
        for name in self.classes:
            rows = self.order if name == "R" else self.ideals[name]
            out.append(QuatLattice(self.algebra, rows))
        return out


@dataclass
class FixtureFile:
    curve: EllipticCurve
    forms: list[TernaryForm]
    eigenvector: list[int]
    height: int
    families: dict[str, TwistFamily]
    quaternion: QuaternionData | None = None

    def family(self, name: str) -> TwistFamily:
        try:
            return self.families[name]
        except KeyError:
            known = ", ".join(self.families)
            raise KeyError(f"unknown family {name!r} (known: {known})") from None


def _sign(text: str) -> int:
    value = int(text)
    if value not in (1, -1):
        raise ValueError(f"expected ±1, got {text}")
    return value


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split()]


def _sections(text: str):
    """Yield (name, start line, [(line number, raw line)])."""
    current, start, body = None, 0, []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise FixtureError("unterminated section header", number)
            if current is not None:
                yield current, start, body
            current, start, body = line[1:-1].strip(), number, []
            continue
        if current is None:
            raise FixtureError("content before the first section", number)
        body.append((number, line))
    if current is not None:
        yield current, start, body


def _keyvalues(name: str, body) -> dict[str, tuple[int, str]]:
    out = {}
    for number, line in body:
        if "=" not in line:
            raise FixtureError(f"expected 'key = value', got {line!r}", number, name)
        key, value = (s.strip() for s in line.split("=", 1))
        if key in out:
            raise FixtureError(f"duplicate key {key!r}", number, name)
        out[key] = (number, value)
    return out


def _basis(name: str, body) -> list[tuple[Fraction, ...]]:
    rows = []
    for number, line in body:
        try:
            row = tuple(Fraction(t) for t in line.split())
        except ValueError:
            raise FixtureError(f"bad rational in {line!r}", number, name) from None
        if len(row) != 4:
            raise FixtureError("quaternion lines need four rationals", number, name)
        rows.append(row)
    if len(rows) != 4:
        raise FixtureError(f"expected 4 basis elements, got {len(rows)}", None, name)
    return rows


def _required(kv, key, section):
    if key not in kv:
        raise FixtureError(f"missing key {key!r}", None, section)
    return kv[key]


def _convert(kv, key, section, fn, default=None, required=True):
    if key not in kv:
        if required:
            raise FixtureError(f"missing key {key!r}", None, section)
        return default
    number, value = kv[key]
    try:
        return fn(value)
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        raise FixtureError(f"bad value for {key!r}: {exc}", number, section) from None


def _parse_types(text: str, primes) -> dict[TypePattern, int]:
    out = {}
    for item in text.split():
        pattern, _, star = item.partition(":")
        out[TypePattern.parse(pattern, primes)] = int(star) if star else 1
    return out


def _parse_al(text: str) -> dict[int, int]:
    out = {}
    for item in text.split():
        p, _, s = item.partition(":")
        out[int(p)] = _sign(s)
    return out


def parse_fixture_text(text: str) -> FixtureFile:
    sections = list(_sections(text))
    if not sections:
        raise FixtureError("empty fixture", 1)
    seen: dict[str, int] = {}
    curve_kv = forms_kv = quat_kv = None
    order = None
    ideals: dict[str, list] = {}
    family_kvs: dict[str, dict] = {}
    for name, start, body in sections:
        if name in seen:
            raise FixtureError(f"duplicate section [{name}]", start)
        seen[name] = start
        if name == "curve":
            curve_kv = _keyvalues(name, body)
        elif name == "forms":
            forms_kv = _keyvalues(name, body)
        elif name == "quaternion":
            quat_kv = _keyvalues(name, body)
        elif name == "order":
            order = _basis(name, body)
        elif name.startswith("ideal "):
            ideals[name.split(None, 1)[1]] = _basis(name, body)
        elif name.startswith("family "):
            family_kvs[name.split(None, 1)[1]] = _keyvalues(name, body)
        else:
            raise FixtureError(f"unknown section [{name}]", start)
    if curve_kv is None:
        raise FixtureError("missing [curve] section")
    if forms_kv is None:
        raise FixtureError("missing [forms] section")

    s = "curve"
    label = _required(curve_kv, "label", s)[1]
    ainvs = _convert(curve_kv, "ainvs", s, _ints)
    if len(ainvs) != 5:
        raise FixtureError("ainvs needs five integers", curve_kv["ainvs"][0], s)
    try:
        curve = EllipticCurve(
            label=label,
            ainvs=tuple(ainvs),
            conductor=_convert(curve_kv, "conductor", s, int),
            sign=_convert(curve_kv, "sign", s, _sign),
            atkin_lehner=_convert(curve_kv, "atkin_lehner", s, _parse_al, {}, required=False),
            self_twist=_convert(curve_kv, "self_twist", s, int, None, required=False),
        )
    except ValueError as exc:
        raise FixtureError(str(exc), None, s) from None

    s = "forms"
    eigenvector = _convert(forms_kv, "eigenvector", s, _ints)
    height = _convert(forms_kv, "height", s, int)
    forms = []
    for i in range(1, len(eigenvector) + 1):
        forms.append(_convert(forms_kv, f"Q{i}", s, TernaryForm.parse))
    extra = set(forms_kv) - {"eigenvector", "height"} - {f"Q{i}" for i in range(1, len(forms) + 1)}
    if extra:
        key = sorted(extra)[0]
        raise FixtureError(f"unexpected key {key!r}", forms_kv[key][0], s)

    quaternion = None
    if quat_kv is not None:
        s = "quaternion"
        a, b = _convert(quat_kv, "algebra", s, _ints)
        classes = _convert(quat_kv, "classes", s, str.split, [], required=False)
        if order is None:
            raise FixtureError("[quaternion] requires an [order] section", None, s)
        for c in classes:
            if c != "R" and c not in ideals:
                raise FixtureError(f"class {c!r} has no [ideal {c}] section", quat_kv["classes"][0], s)
        if classes and len(classes) != len(forms):
            raise FixtureError("number of classes differs from number of forms", quat_kv["classes"][0], s)
        quaternion = QuaternionData(a, b, _convert(quat_kv, "level", s, int), order, ideals, classes)
    elif order is not None or ideals:
        raise FixtureError("[order]/[ideal] sections need a [quaternion] section")

    families = {}
    for name, kv in family_kvs.items():
        s = f"family {name}"
        primes = tuple(_convert(kv, "primes", s, _ints))
        try:
            fam = TwistFamily(
                name=name,
                curve=label,
                sign=_convert(kv, "sign", s, _sign),
                primes=primes,
                types=_convert(kv, "types", s, lambda t: _parse_types(t, primes)),
                aux=_convert(kv, "aux", s, int, 1, required=False),
                second_kind=tuple(_convert(kv, "second_kind", s, _ints, [], required=False)),
                scale=_convert(kv, "scale", s, Fraction, Fraction(1), required=False),
                k_printed=_convert(kv, "k", s, str, None, required=False),
                identity=_convert(kv, "identity", s, str, None, required=False),
                expansion=_convert(kv, "expansion", s, str, None, required=False),
                excluded_primes=tuple(_convert(kv, "exclude", s, _ints, [], required=False)),
            )
        except ValueError as exc:
            raise FixtureError(str(exc), None, s) from None
        if fam.expansion:
            try:
                parse_expansion(fam.expansion)
            except ValueError as exc:
                raise FixtureError(str(exc), kv["expansion"][0], s) from None
        families[name] = fam
    return FixtureFile(curve, forms, eigenvector, height, families, quaternion)


def parse_fixture(path) -> FixtureFile:
    return parse_fixture_text(Path(path).read_text())


def _rational_row(row) -> str:
    return " ".join(str(Fraction(x)) for x in row)


def serialize_fixture(fx: FixtureFile) -> str:
    c = fx.curve
    lines = ["[curve]", f"label = {c.label}", "ainvs = " + " ".join(map(str, c.ainvs)),
             f"conductor = {c.conductor}", f"sign = {c.sign:+d}"]
    if c.atkin_lehner:
        lines.append("atkin_lehner = " + " ".join(f"{p}:{s:+d}" for p, s in sorted(c.atkin_lehner.items())))
    if c.self_twist is not None:
        lines.append(f"self_twist = {c.self_twist}")
    q = fx.quaternion
    if q is not None:
        lines += ["", "[quaternion]", f"algebra = {q.a} {q.b}", f"level = {q.level}",
                  ]
        if q.classes:
            lines.append("classes = " + " ".join(q.classes))
        lines += ["", "[order]"]
        lines += [_rational_row(r) for r in q.order]
        for name, rows in q.ideals.items():
            lines += ["", f"[ideal {name}]"] + [_rational_row(r) for r in rows]
    lines += ["", "[forms]", "eigenvector = " + " ".join(map(str, fx.eigenvector)), f"height = {fx.height}"]
    lines += [f"Q{i} = {Q}" for i, Q in enumerate(fx.forms, 1)]
    for name, f in fx.families.items():
        lines += ["", f"[family {name}]", f"sign = {f.sign:+d}", "primes = " + " ".join(map(str, f.primes)),
                  "types = " + " ".join(f"{t}:{s}" for t, s in f.types.items())]
        if f.aux != 1:
            lines.append(f"aux = {f.aux}")
        if f.second_kind:
            lines.append("second_kind = " + " ".join(map(str, f.second_kind)))
        if f.excluded_primes:
            lines.append("exclude = " + " ".join(map(str, f.excluded_primes)))
        lines.append(f"scale = {f.scale}")
        for key, value in (("k", f.k_printed), ("identity", f.identity), ("expansion", f.expansion)):
            if value:
                lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


BUNDLED = {"27a": "27a.fx", "15a": "15a.fx", "75a": "75a.fx"}


def data_path(name: str) -> Path:
    return Path(str(resources.files("twistlift") / "data" / name))


def load_bundled(label: str) -> FixtureFile:
    """One of the shipped fixtures: ``27a``, ``15a`` or ``75a``."""
    return parse_fixture(data_path(BUNDLED[label.lower()]))


def resolve(path_or_label: str) -> Path:
    """A fixture path, accepting the bare names of the bundled fixtures too."""
    p = Path(path_or_label)
    if p.exists():
        return p
    key = p.name.lower().removesuffix(".fx")
    if key in BUNDLED:
        return data_path(BUNDLED[key])
    return p
