"""JSON file formats for algebras, representations, graded data and reports."""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import StringAlgebra
from .decompose import DecompositionReport, make_report
from .exactla import Field
from .laurent import BandCoefficient, parse_poly
from .repmod import Representation, graded_ingest
from .words import Word


class MalformedInput(ValueError):
    """The input file is not valid JSON or does not have the expected shape."""


def read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from exc


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInput(f"{where} needs a '{key}' entry")
    return obj[key]


def parse_field(value) -> Field:
    """"Q", {"Fp": p}, or the shorthands "F5" / 5."""
    if isinstance(value, dict) and "Fp" in value:
        value = value["Fp"]
    if isinstance(value, str):
        s = value.strip()
        if s.upper() == "Q":
            return Field()
        if s[:1] in "Ff":
            s = s[1:].lstrip("p_")
        try:
            value = int(s)
        except ValueError:
            raise MalformedInput(f"unknown field {value!r}") from None
    if isinstance(value, int) and not isinstance(value, bool):
        try:
            return Field(value)
        except ValueError as exc:
            raise MalformedInput(str(exc)) from None
    raise MalformedInput(f"unknown field {value!r}")


def field_to_json(field: Field):
    return "Q" if field.p is None else {"Fp": field.p}


# algebras


def algebra_from_json(obj) -> StringAlgebra:
    verts = _require(obj, "vertices", "algebra")
    arrows = _require(obj, "arrows", "algebra")
    try:
        arrows = [(str(a["name"]), str(a["head"]), str(a["tail"])) for a in arrows]
    except (KeyError, TypeError):
        raise MalformedInput("each arrow needs 'name', 'head' and 'tail'") from None
    rels = []
    for r in obj.get("relations", []):
        rels.append(tuple(r.split()) if isinstance(r, str) else tuple(map(str, r)))
    signs = obj.get("signs")
    if signs is not None and not isinstance(signs, dict):
        raise MalformedInput("'signs' must map letters to +1 or -1")
    return StringAlgebra.build([str(v) for v in verts], arrows, rels, signs)


def algebra_to_json(alg: StringAlgebra, with_signs: bool = True) -> dict:
    out = {
        "vertices": list(alg.vertices),
        "arrows": [{"name": a.name, "head": a.head, "tail": a.tail} for a in alg.quiver.arrows],
        "relations": [list(r) for r in alg.relations],
    }
    if with_signs:
        out["signs"] = {str(ell): alg.sign(ell) for ell in alg.letters()}
    return out


def load_algebra(ref, base: Path | None = None) -> StringAlgebra:
    if isinstance(ref, (str, Path)):
        path = Path(ref)
        if base is not None and not path.is_absolute():
            path = base / path
        return algebra_from_json(read_json(path))
    return algebra_from_json(ref)


# representations


def representation_from_json(obj, base: Path | None = None) -> Representation:
    alg = load_algebra(_require(obj, "algebra", "representation"), base)
    field = parse_field(_require(obj, "field", "representation"))
    dims = {str(v): n for v, n in obj.get("dims", {}).items()}
    action = obj.get("action", {})
    if not isinstance(dims, dict) or not isinstance(action, dict):
        raise MalformedInput("'dims' and 'action' must be objects")
    try:
        return Representation(alg, field, dims, action)
    except (TypeError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad matrix entry: {exc}") from None


def representation_to_json(m: Representation, algebra_ref=None) -> dict:
    f = m.field
    return {
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_json(m.algebra, with_signs=False),
        "field": field_to_json(f),
        "dims": dict(m.dims),
        "action": {a: f.to_lists(mat) for a, mat in m.action.items()},
    }


def load_representation(path) -> Representation:
    path = Path(path)
    return representation_from_json(read_json(path), path.parent)


# graded data


def graded_from_json(obj, window=None):
    field = parse_field(_require(obj, "field", "graded input"))
    dims = _require(obj, "dims", "graded input")
    win = obj.get("window")
    start = int(win[0]) if win else int(obj.get("start", 0))
    if win and int(win[1]) - int(win[0]) + 1 != len(dims):
        raise MalformedInput("'window' must cover exactly the listed degrees")
    try:
        return graded_ingest(field, dims, obj.get("x", []), obj.get("y", []), start, window)
    except (TypeError, IndexError) as exc:
        raise MalformedInput(f"bad graded data: {exc}") from None


# reports


def report_to_json(rep: DecompositionReport) -> dict:
    return rep.to_json()


def report_from_json(obj, alg: StringAlgebra) -> DecompositionReport:
    field = parse_field(_require(obj, "field", "report"))
    strings, bands = [], []
    try:
        for s in obj.get("strings", []):
            strings.append((Word.parse(alg, s["word"]), int(s["mult"])))
        for b in obj.get("bands", []):
            coeff = BandCoefficient(field, parse_poly(field, b["poly"]), int(b.get("power", 1)))
            bands.append((Word.parse(alg, b["word"]), coeff, int(b["mult"])))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad report entry: {exc}") from None
    rep = make_report(field, strings, bands)
    if "audit" in obj:
        rep.audit = {str(v): int(n) for v, n in obj["audit"].items()}
    return rep


def parse_budget(items) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise MalformedInput(f"budget entries look like v=n, got {item!r}")
        v, n = item.split("=", 1)
        try:
            out[v.strip()] = int(n)
        except ValueError:
            raise MalformedInput(f"budget entries look like v=n, got {item!r}") from None
    return out


def parse_vector(field: Field, text: str):
    parts = [p for p in text.replace(",", " ").split() if p]
    try:
        return field.vector(parts)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise MalformedInput(f"bad vector {text!r}: {exc}") from None

