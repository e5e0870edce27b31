"""JSON encoding of scalars, matrices, algebras, vector fields and quadruples.

Rationals travel as ``"num/den"`` strings (``str(Fraction)``), so every
round trip is bit-exact.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from importlib import resources
from typing import Any

import jsonschema
from referencing import Registry, Resource

from .jordan import JordanSuperAlgebra
from .liealg import LieSuperAlgebra
from .scalars import SuperPolynomial, VariableContext, odd_indices
from .supermatrix import BlockSignature, SuperMatrix
from .vectorfields import PolyVectorField

__all__ = [
    "InvalidDocument",
    "dumps",
    "digest",
    "load_schema",
    "validate",
    "context_to_json",
    "context_from_json",
    "poly_to_json",
    "poly_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "lie_to_json",
    "lie_from_json",
    "jordan_to_json",
    "jordan_from_json",
    "field_to_json",
    "field_from_json",
]


class InvalidDocument(ValueError):
    pass


def dumps(doc: Any) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def load_schema(name: str) -> dict:
    text = resources.files("superalg").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _registry() -> Registry:
    common = Resource.from_contents(load_schema("common"))
    return Registry().with_resource("superalg/common", common)


def validate(doc: Any, schema_name: str, definition: str | None = None):
    """Validate against a shipped schema (or one ``$defs`` entry of it)."""
    schema = load_schema(schema_name)
    if definition is not None:
        if definition not in schema.get("$defs", {}):
            raise InvalidDocument(f"no schema for {definition!r}")
        schema = {**schema, "$ref": f"#/$defs/{definition}"}
    validator = jsonschema.Draft202012Validator(schema, registry=_registry())
    try:
        validator.validate(doc)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise InvalidDocument(f"{schema_name}: {exc.message} at '{path}'") from exc


def _frac(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InvalidDocument(f"not a rational: {s!r}") from exc


# scalars ------------------------------------------------------------------


def context_to_json(ctx: VariableContext) -> dict:
    doc = {"even_count": ctx.even_count, "odd_count": ctx.odd_count}
    if ctx.names is not None:
        doc["names"] = list(ctx.names)
    return doc


def context_from_json(doc: dict) -> VariableContext:
    return VariableContext.create(doc["even_count"], doc["odd_count"], names=doc.get("names"))


def poly_to_json(x: SuperPolynomial) -> list:
    return [{"even": list(ev), "odd": odd_indices(mask), "c": str(c)} for (ev, mask), c in x.items()]


def poly_from_json(ctx: VariableContext, terms: list) -> SuperPolynomial:
    out = ctx.zero()
    for t in terms:
        even = t.get("even") or [0] * ctx.even_count
        if len(even) != ctx.even_count:
            raise InvalidDocument("even exponent vector has the wrong length")
        odd = t.get("odd", [])
        if any(not 0 <= i < ctx.odd_count for i in odd):
            raise InvalidDocument("odd index out of range")
        if len(set(odd)) != len(odd):
            raise InvalidDocument("repeated odd index in a monomial")
        if list(odd) != sorted(odd):
            raise InvalidDocument("odd indices must be increasing")
        mask = 0
        for i in odd:
            mask |= 1 << i
        out = out + SuperPolynomial(ctx, {(tuple(even), mask): _frac(t["c"])})
    return out


# matrices -----------------------------------------------------------------


def matrix_to_json(x: SuperMatrix, with_context: bool = True) -> dict:
    doc = {
        "rows": [x.rows.even_dim, x.rows.odd_dim],
        "cols": [x.cols.even_dim, x.cols.odd_dim],
        "parity": "odd" if x.parity else "even",
        "entries": [[poly_to_json(e) for e in row] for row in x.entries],
    }
    if with_context:
        doc["context"] = context_to_json(x.context)
    return doc


def matrix_from_json(doc: dict, ctx: VariableContext | None = None) -> SuperMatrix:
    ctx = ctx or context_from_json(doc["context"])
    rows = BlockSignature(*doc["rows"])
    cols = BlockSignature(*doc.get("cols", doc["rows"]))
    parity = {"even": 0, "odd": 1}[doc.get("parity", "even")]
    entries = [[poly_from_json(ctx, e) for e in row] for row in doc["entries"]]
    try:
        return SuperMatrix(ctx, rows, cols, entries, parity)
    except ValueError as exc:
        raise InvalidDocument(str(exc)) from exc


# algebras -----------------------------------------------------------------


def _basis(names, parities, degrees):
    out = []
    for i, (n, p) in enumerate(zip(names, parities)):
        entry = {"name": n, "parity": "odd" if p else "even"}
        if degrees is not None:
            entry["degree"] = degrees[i]
        out.append(entry)
    return out


def _table(table):
    return [{"i": i, "j": j, "coeffs": {str(k): str(c) for k, c in sorted(v.items())}}
            for (i, j), v in sorted(table.items())]


def _table_from(rows, dim):
    table = {}
    for r in rows:
        i, j = r["i"], r["j"]
        if not (0 <= i < dim and 0 <= j < dim):
            raise InvalidDocument("structure constant index out of range")
        coeffs = {}
        for k, c in r["coeffs"].items():
            k = int(k)
            if not 0 <= k < dim:
                raise InvalidDocument("structure constant index out of range")
            coeffs[k] = _frac(c)
        table[(i, j)] = coeffs
    return table


def lie_to_json(g: LieSuperAlgebra) -> dict:
    doc = {"kind": "lie", "label": g.label, "basis": _basis(g.names, g.parities, g.degrees),
           "brackets": _table(g.table)}
    if g.matrices is not None:
        doc["realisation"] = {
            "signature": list(g.signature),
            "matrices": [[[r, c, str(v)] for (r, c), v in sorted(x.items())] for x in g.matrices],
        }
    return doc


def lie_from_json(doc: dict) -> LieSuperAlgebra:
    validate(doc, "algebra")
    if doc.get("kind", "lie") != "lie":
        raise InvalidDocument("expected a Lie superalgebra document")
    basis = doc["basis"]
    names = [b["name"] for b in basis]
    parities = [1 if b["parity"] == "odd" else 0 for b in basis]
    degrees = [b["degree"] for b in basis] if basis and all("degree" in b for b in basis) else None
    table = _table_from(doc["brackets"], len(basis))
    mats = sig = None
    if "realisation" in doc:
        sig = tuple(doc["realisation"]["signature"])
        mats = tuple({(r, c): _frac(v) for r, c, v in x} for x in doc["realisation"]["matrices"])
        if len(mats) != len(basis):
            raise InvalidDocument("one realising matrix per basis element required")
    return LieSuperAlgebra(tuple(names), tuple(parities), table, degrees=tuple(degrees) if degrees else None,
                           matrices=mats, signature=sig, label=doc.get("label", ""))


def jordan_to_json(J: JordanSuperAlgebra) -> dict:
    doc = {"kind": "jordan", "label": J.label, "basis": _basis(J.names, J.parities, None),
           "products": _table(J.table)}
    if J.unit is not None:
        doc["unit"] = {str(k): str(v) for k, v in sorted(J.unit.items())}
    return doc


def jordan_from_json(doc: dict) -> JordanSuperAlgebra:
    validate(doc, "jordan")
    basis = doc["basis"]
    names = [b["name"] for b in basis]
    parities = [1 if b["parity"] == "odd" else 0 for b in basis]
    table = _table_from(doc["products"], len(basis))
    unit = {int(k): _frac(v) for k, v in doc["unit"].items()} if "unit" in doc else None
    return JordanSuperAlgebra(tuple(names), tuple(parities), table, unit=unit, label=doc.get("label", ""))


# vector fields --------------------------------------------------------------


def field_to_json(x: PolyVectorField) -> dict:
    return {"kind": "field", "context": context_to_json(x.context),
            "components": [poly_to_json(c) for c in x.components]}


def field_from_json(doc: dict) -> PolyVectorField:
    validate(doc, "field")
    ctx = context_from_json(doc["context"])
    comps = [poly_from_json(ctx, c) for c in doc["components"]]
    if len(comps) != ctx.size:
        raise InvalidDocument("one component per coordinate required")
    return PolyVectorField(ctx, tuple(comps))


# point sets -----------------------------------------------------------------


def quadruple_from_json(doc: dict):
    from .crossratio import PointQuadruple

    validate(doc, "quadruple")
    ctx = context_from_json(doc["context"])
    sig = doc["signature"]
    pts = [matrix_from_json({"rows": sig, "cols": sig, "parity": "even", "entries": e}, ctx) for e in doc["points"]]
    try:
        return PointQuadruple(*pts)
    except ValueError as exc:
        raise InvalidDocument(str(exc)) from exc


def quadruple_to_json(q) -> dict:
    sig = q.signature
    return {"context": context_to_json(q.context), "signature": [sig.even_dim, sig.odd_dim],
            "points": [matrix_to_json(p, with_context=False)["entries"] for p in q.points]}


def quadric_from_json(doc: dict):
    """Returns ``(points, gram, parities)``."""
    validate(doc, "quadric")
    ctx = context_from_json(doc["context"])
    gram = [[_frac(x) for x in row] for row in doc["gram"]]
    parities = [1 if p == "odd" else 0 for p in doc["parities"]]
    size = len(parities)
    if len(gram) != size or any(len(r) != size for r in gram):
        raise InvalidDocument("gram matrix must be square of size len(parities)")
    points = []
    for pt in doc["points"]:
        if len(pt) != size:
            raise InvalidDocument("point has the wrong number of coordinates")
        coords = [poly_from_json(ctx, t) for t in pt]
        for x, p in zip(coords, parities):
            if x and x.parity() != p:
                raise InvalidDocument("coordinate parity must match its basis vector (even points)")
        points.append(coords)
    return points, gram, parities
