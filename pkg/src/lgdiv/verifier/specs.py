"""Curve-spec files: JSON descriptions of a curve over F_q(t) and, optionally,
a Mordell-Weil presentation for it.

A spec looks like::

    {"label": "prop32", "q": 2, "a": "t^8", "b": "1/t^8",
     "mordell_weil": {"free": [{"x": "...", "y": "...", "name": "P"}],
                      "torsion": [{"x": "0", "y": "1/t^4", "order": 2, "name": "T"}],
                      "provenance": "..."}}

A pair file {"label": ..., "pair": [spec, spec]} bundles two constant curves
for point-count comparisons.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..algebra.field import FieldCtx, gf_q
from ..algebra.parse import parse_ratfunc
from ..algebra.ratfunc import RatFunc
from ..curve import Curve, MWPresentation, Point
from ..errors import LgdivError, SpecError

BUNDLED = ("prop31.json", "prop32.json", "prop34_aux.json", "constant_b.json")
MAX_Q = 1 << 8


@dataclass
class GeneratorSpec:
    x: str
    y: str
    name: str
    order: int | None = None


@dataclass
class MWSpec:
    free: list[GeneratorSpec]
    torsion: list[GeneratorSpec]
    provenance: str = ""


@dataclass
class CurveSpec:
    label: str
    q: int
    a_expr: str
    b_expr: str
    mordell_weil: MWSpec | None = None
    note: str = ""
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def ctx(self) -> FieldCtx:
        return gf_q(self.q)

    def parse(self, text: str) -> RatFunc:
        return parse_ratfunc(text, self.ctx)

    def curve(self) -> Curve:
        a, b = self.parse(self.a_expr), self.parse(self.b_expr)
        if b.is_zero():
            raise SpecError(f"{self.label}: b = 0 gives a singular curve")
        return Curve(a, b)

    def constant_curve(self) -> Curve:
        """The curve over GF(q) itself; a and b must be constants."""
        a, b = self.parse(self.a_expr), self.parse(self.b_expr)
        if not (a.is_constant() and b.is_constant()):
            raise SpecError(f"{self.label}: a and b must be constants for point counting")
        if b.is_zero():
            raise SpecError(f"{self.label}: b = 0 gives a singular curve")
        F = self.ctx
        return Curve(F.from_bits(a.constant_bits()), F.from_bits(b.constant_bits()))

    def presentation(self) -> MWPresentation:
        """The Mordell-Weil data as points.  On-curve checks are left to the caller."""
        if self.mordell_weil is None:
            raise SpecError(f"{self.label}: spec has no mordell_weil section (MissingMW)")
        mw = self.mordell_weil
        free = [Point(self.parse(g.x), self.parse(g.y)) for g in mw.free]
        tors = [(Point(self.parse(g.x), self.parse(g.y)), g.order) for g in mw.torsion]
        try:
            return MWPresentation(free, tors, mw.provenance,
                                  [g.name for g in mw.free], [g.name for g in mw.torsion])
        except ValueError as exc:
            raise SpecError(f"{self.label}: {exc}") from None

    def generator_names(self) -> list[str]:
        if self.mordell_weil is None:
            return []
        return [g.name for g in self.mordell_weil.free + self.mordell_weil.torsion]

    def to_json(self) -> dict:
        return self.raw


@dataclass
class CurvePair:
    label: str
    curves: tuple[CurveSpec, CurveSpec]
    raw: dict = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        return self.raw


def _req(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise SpecError(f"{where}: missing field '{key}'")
    val = obj[key]
    if kind is int and isinstance(val, bool) or not isinstance(val, kind):
        raise SpecError(f"{where}: field '{key}' must be {kind.__name__}")
    return val


def _generators(items, where, with_order, default_names):
    if not isinstance(items, list):
        raise SpecError(f"{where}: expected a list")
    out = []
    for i, g in enumerate(items):
        w = f"{where}[{i}]"
        if not isinstance(g, dict):
            raise SpecError(f"{w}: expected an object")
        order = _req(g, "order", int, w) if with_order else None
        if with_order and order < 2:
            raise SpecError(f"{w}: torsion order must be at least 2")
        name = g.get("name", default_names[i])
        if not isinstance(name, str) or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise SpecError(f"{w}: bad generator name {name!r}")
        out.append(GeneratorSpec(_req(g, "x", str, w), _req(g, "y", str, w), name, order))
    return out


def _default_names(prefix: str, k: int) -> list[str]:
    return [prefix] if k == 1 else [f"{prefix}{i + 1}" for i in range(k)]


def spec_from_dict(obj: dict) -> CurveSpec:
    if not isinstance(obj, dict):
        raise SpecError("spec must be a JSON object")
    label = _req(obj, "label", str, "spec")
    q = _req(obj, "q", int, label)
    if q < 2 or q > MAX_Q or q & (q - 1):
        raise SpecError(f"{label}: q = {q} is not a power of 2 in 2..{MAX_Q}")
    mw = None
    if obj.get("mordell_weil") is not None:
        m = obj["mordell_weil"]
        if not isinstance(m, dict):
            raise SpecError(f"{label}: mordell_weil must be an object")
        free_raw, tors_raw = m.get("free", []), m.get("torsion", [])
        free = _generators(free_raw, f"{label}.free", False, _default_names("P", len(free_raw)))
        tors = _generators(tors_raw, f"{label}.torsion", True, _default_names("T", len(tors_raw)))
        names = [g.name for g in free + tors]
        if len(set(names)) != len(names):
            raise SpecError(f"{label}: generator names must be distinct")
        mw = MWSpec(free, tors, str(m.get("provenance", "")))
    spec = CurveSpec(label, q, _req(obj, "a", str, label), _req(obj, "b", str, label), mw,
                     str(obj.get("note", "")), obj)
    try:
        spec.curve()  # parse a and b now so syntax errors surface at load
        if mw is not None:
            spec.presentation()
    except SpecError:
        raise
    except LgdivError as exc:
        raise SpecError(f"{label}: {exc}") from None
    return spec


def load_spec(source) -> CurveSpec | CurvePair:
    """Load a spec from a path, a JSON string or an already-decoded dict."""
    if isinstance(source, dict):
        obj = source
    else:
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON: {exc}") from None
    if isinstance(obj, dict) and "pair" in obj:
        label = _req(obj, "label", str, "pair")
        items = obj["pair"]
        if not isinstance(items, list) or len(items) != 2:
            raise SpecError(f"{label}: 'pair' must list exactly two curve specs")
        return CurvePair(label, (spec_from_dict(items[0]), spec_from_dict(items[1])), obj)
    return spec_from_dict(obj)


def bundled_path(name: str, spec_dir=None) -> Path:
    if spec_dir is not None:
        return Path(spec_dir) / name
    return Path(str(resources.files("lgdiv") / "data" / name))


def load_bundled(name: str, spec_dir=None) -> CurveSpec | CurvePair:
    if not name.endswith(".json"):
        name += ".json"
    return load_spec(bundled_path(name, spec_dir))


# -- point expressions -----------------------------------------------------------

_PTOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*]))")


def parse_point_expr(text: str, spec: CurveSpec) -> tuple[list[int], list[int]]:
    """Parse an integer combination of the spec's generators, e.g. "4*P + T".

    Returns (free coordinates, torsion coordinates).  "0" and "O" denote the
    identity.  Here '-' is group subtraction.
    """
    if spec.mordell_weil is None:
        raise SpecError(f"{spec.label}: spec has no mordell_weil section (MissingMW)")
    mw = spec.mordell_weil
    index = {g.name: ("free", i) for i, g in enumerate(mw.free)}
    index.update({g.name: ("tors", i) for i, g in enumerate(mw.torsion)})
    free = [0] * len(mw.free)
    tors = [0] * len(mw.torsion)

    toks = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _PTOK.match(stripped, pos)
        if m is None:
            raise SpecError(f"bad point expression {text!r} at position {pos}")
        toks.append((m.lastindex, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    if not toks:
        raise SpecError("empty point expression")

    i, sign, expect_term = 0, 1, True
    while i < len(toks):
        kind, val, at = toks[i]
        if kind == 3 and val in "+-":
            if val == "-":
                sign = -sign
            i += 1
            expect_term = True
            continue
        if not expect_term:
            raise SpecError(f"expected '+' or '-' at position {at} in {text!r}")
        coeff = 1
        if kind == 1:
            coeff = int(val)
            i += 1
            if i < len(toks) and toks[i][1] == "*":
                i += 1
            if i >= len(toks) or toks[i][0] != 2:
                if coeff != 0:
                    raise SpecError(f"integer {coeff} must multiply a generator in {text!r}")
                sign, expect_term = 1, False
                continue
            kind, val, at = toks[i]
        if kind != 2:
            raise SpecError(f"expected a generator name at position {at} in {text!r}")
        if val == "O" and val not in index:
            pass
        elif val not in index:
            raise SpecError(f"unknown generator {val!r}; known: {sorted(index)}")
        else:
            which, j = index[val]
            if which == "free":
                free[j] += sign * coeff
            else:
                tors[j] += sign * coeff
        i += 1
        sign, expect_term = 1, False
    if expect_term:
        raise SpecError(f"point expression {text!r} ends with an operator")
    return free, tors
