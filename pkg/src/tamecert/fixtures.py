"""Fixture files and report serialization.

Fixture schema (rationals are integers or "p/q" strings; indices 0-based):

    {
      "name": str,
      "dim": int,
      "basis": [str],
      "brackets": [ {"i": int, "j": int, "v": {"<k>": rational}} ],   # i < j
      "J": [[rational]],                # optional, row-major, column action
      "omega": [ {"i": int, "j": int, "v": rational} ]   # optional, i < j
    }

Report JSON is emitted with floats at 17 significant digits so parsing it
back reproduces the exact double values.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import LieAlgebra
from .errors import FixtureError, NotAComplexStructure
from .forms import ComplexStructure, TwoForm
from .linalg import frac


@dataclass(frozen=True)
class Fixture:
    name: str
    algebra: LieAlgebra
    J: ComplexStructure | None
    omega: TwoForm | None


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise FixtureError(f"{where}: booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise FixtureError(f"{where}: bad rational {value!r}: {exc}") from exc
    raise FixtureError(f"{where}: expected an integer or 'p/q' string, got {value!r}")


def parse_fixture(doc: dict, source: str = "<fixture>") -> Fixture:
    if not isinstance(doc, dict):
        raise FixtureError(f"{source}: top level must be an object")
    try:
        name = doc["name"]
        dim = doc["dim"]
    except KeyError as exc:
        raise FixtureError(f"{source}: missing required field {exc}") from exc
    if not isinstance(name, str):
        raise FixtureError(f"{source}: 'name' must be a string")
    if not isinstance(dim, int) or dim < 0:
        raise FixtureError(f"{source}: 'dim' must be a nonnegative integer")
    basis = doc.get("basis")
    if basis is not None:
        if not isinstance(basis, list) or len(basis) != dim:
            raise FixtureError(f"{source}: 'basis' must list {dim} labels")
    brackets = {}
    for idx, entry in enumerate(doc.get("brackets", [])):
        where = f"{source}: brackets[{idx}]"
        try:
            i, j, v = entry["i"], entry["j"], entry["v"]
        except (TypeError, KeyError) as exc:
            raise FixtureError(f"{where}: needs fields i, j, v") from exc
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < dim):
            raise FixtureError(f"{where}: need 0 <= i < j < dim, got i={i}, j={j}")
        if not isinstance(v, dict):
            raise FixtureError(f"{where}: 'v' must map component index to rational")
        comps = {}
        for k, c in v.items():
            try:
                ki = int(k)
            except ValueError as exc:
                raise FixtureError(f"{where}: component key {k!r} is not an integer") from exc
            if not 0 <= ki < dim:
                raise FixtureError(f"{where}: component {ki} outside dimension {dim}")
            comps[ki] = _rational(c, f"{where}.v[{k}]")
        brackets[(i, j)] = comps
    try:
        algebra = LieAlgebra.from_brackets(dim, brackets, labels=basis)
    except FixtureError:
        raise
    except Exception as exc:
        raise FixtureError(f"{source}: invalid algebra: {exc}") from exc

    J = None
    if "J" in doc and doc["J"] is not None:
        rows = doc["J"]
        if not isinstance(rows, list) or len(rows) != dim or any(
            not isinstance(r, list) or len(r) != dim for r in rows
        ):
            raise FixtureError(f"{source}: 'J' must be a {dim}x{dim} matrix")
        entries = [[_rational(x, f"{source}: J[{a}][{b}]") for b, x in enumerate(r)] for a, r in enumerate(rows)]
        try:
            J = ComplexStructure.from_matrix(entries)
        except NotAComplexStructure as exc:
            raise FixtureError(f"{source}: J is not a complex structure: {exc}") from exc

    omega = None
    if "omega" in doc and doc["omega"] is not None:
        entries = {}
        for idx, entry in enumerate(doc["omega"]):
            where = f"{source}: omega[{idx}]"
            try:
                i, j, v = entry["i"], entry["j"], entry["v"]
            except (TypeError, KeyError) as exc:
                raise FixtureError(f"{where}: needs fields i, j, v") from exc
            if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < dim):
                raise FixtureError(f"{where}: need 0 <= i < j < dim, got i={i}, j={j}")
            entries[(i, j)] = _rational(v, f"{where}.v")
        omega = TwoForm.from_dict(dim, entries)

    return Fixture(name=name, algebra=algebra, J=J, omega=omega)


def load_fixture(path: str | Path) -> Fixture:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    except OSError as exc:
        raise FixtureError(f"{path}: {exc}") from exc
    return parse_fixture(doc, source=str(path))


def fixture_to_doc(fx: Fixture) -> dict:
    doc: dict = {
        "name": fx.name,
        "dim": fx.algebra.dim,
        "basis": list(fx.algebra.basis_labels),
        "brackets": [
            {"i": i, "j": j, "v": {str(k): rational_str(c) for k, c in comps}}
            for (i, j), comps in fx.algebra.structure_constants
        ],
    }
    if fx.J is not None:
        doc["J"] = [[rational_str(x) for x in row] for row in fx.J.matrix]
    if fx.omega is not None:
        doc["omega"] = [{"i": i, "j": j, "v": rational_str(c)} for (i, j), c in fx.omega.coeffs]
    return doc


def rational_str(x: Fraction) -> int | str:
    x = frac(x)
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


# --- report JSON with pinned float formatting ---


def _render(obj, indent: int, level: int) -> str:
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isnan(obj):
            return "NaN"
        if math.isinf(obj):
            return "Infinity" if obj > 0 else "-Infinity"
        return format(obj, ".17g")
    if isinstance(obj, Fraction):
        return json.dumps(rational_str(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad_in}{json.dumps(str(k))}: {_render(v, indent, level + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            return "[]"
        items = [f"{pad_in}{_render(v, indent, level + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_report(obj, indent: int = 2) -> str:
    """JSON text with floats rendered at 17 significant digits."""
    return _render(obj, indent, 0)
