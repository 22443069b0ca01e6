"""JSON algebra specification files: schema validation and loading.

Every numeric coefficient is a string literal parsed exactly ("1/4",
"1 + zeta").  Errors carry a JSON pointer to the offending location.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema

from .cartan import CartanData, CartanError
from .colorlie import ColorLieAlgebra, ColorLieBialgebra
from .grading import CommutationFactor, GradingGroup
from .scalars import CyclotomicField
from .tensoralg import DeformedTensor, GradedBasis

__all__ = ["SCHEMA", "AlgebraSpec", "SpecError", "load_spec", "parse_spec"]

_SCALAR = {"type": "string", "minLength": 1}
_COEFF = {"oneOf": [_SCALAR, {"type": "array", "items": _SCALAR, "minItems": 1}]}
_LABEL = {"oneOf": [{"type": "string", "minLength": 1}, {"type": "integer", "minimum": 0}]}
_INT_VEC = {"type": "array", "items": {"type": "integer"}}
_STRUCT = {
    "type": "array",
    "items": {
        "type": "object",
        "additionalProperties": False,
        "required": ["i", "j", "terms"],
        "properties": {
            "i": _LABEL,
            "j": _LABEL,
            "terms": {
                "type": "array",
                "items": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["k", "coeff"],
                    "properties": {"k": _LABEL, "coeff": _SCALAR},
                },
            },
        },
    },
}
_SLOT = {"oneOf": [_LABEL, {"type": "array", "items": _LABEL}]}

SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "scalars": {
            "type": "object",
            "additionalProperties": False,
            "required": ["conductor"],
            "properties": {"conductor": {"type": "integer", "minimum": 1}},
        },
        "group": {
            "type": "object",
            "additionalProperties": False,
            "required": ["free_rank"],
            "properties": {
                "free_rank": {"type": "integer", "minimum": 0},
                "torsion_orders": {"type": "array", "items": {"type": "integer", "minimum": 2}},
            },
        },
        "epsilon": {
            "type": "object",
            "additionalProperties": False,
            "required": ["matrix"],
            "properties": {"matrix": {"type": "array", "items": {"type": "array", "items": _SCALAR}}},
        },
        "basis": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["name", "degree"],
                "properties": {"name": {"type": "string", "minLength": 1}, "degree": _INT_VEC},
            },
        },
        "bracket": _STRUCT,
        "cobracket": _STRUCT,
        "rmatrix": {
            "type": "object",
            "additionalProperties": False,
            "required": ["terms"],
            "properties": {
                "terms": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["indices", "coeff"],
                        "properties": {
                            "indices": {"type": "array", "items": _SLOT, "minItems": 2, "maxItems": 2},
                            "coeff": _COEFF,
                        },
                    },
                }
            },
        },
        "cartan": {
            "type": "object",
            "additionalProperties": False,
            "required": ["A"],
            "properties": {
                "A": {"type": "array", "minItems": 1, "items": _INT_VEC},
                "tau": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "d": {"type": "array", "items": _SCALAR},
                "eps_consts": {"type": "array", "items": {"type": "array", "items": _SCALAR}},
                "reading": {"enum": ["standard", "literal"]},
                "parity_rule": {"enum": ["both", "either"]},
            },
        },
        "options": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "lambda_order": {"type": "integer", "minimum": 1},
                "word_bound": {"type": "integer", "minimum": 0},
                "degree_bound": {"type": "integer", "minimum": 1},
            },
        },
    },
    "if": {"not": {"required": ["cartan"]}},
    "then": {"required": ["group", "epsilon", "basis"]},
}


class SpecError(ValueError):
    """Invalid specification; ``pointer`` is a JSON pointer into the document."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message

    def to_json(self) -> dict:
        return {"pointer": self.pointer, "message": self.message}


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def _schema_error(err: jsonschema.ValidationError) -> SpecError:
    path = list(err.absolute_path)
    if err.validator == "required":
        missing = [k for k in err.validator_value if k not in err.instance]
        if missing:
            return SpecError(_pointer(path + [missing[0]]), f"missing required section {missing[0]!r}")
    if err.validator == "additionalProperties" and isinstance(err.instance, dict):
        allowed = set(err.schema.get("properties", {}))
        extra = sorted(k for k in err.instance if k not in allowed)
        if extra:
            return SpecError(_pointer(path + [extra[0]]), f"unknown key {extra[0]!r}")
    return SpecError(_pointer(path), err.message)


@dataclass
class AlgebraSpec:
    """A loaded specification; sections that were absent are None."""

    raw: dict
    field: CyclotomicField
    eps: CommutationFactor | None = None
    basis: GradedBasis | None = None
    algebra: ColorLieAlgebra | None = None
    bialgebra: ColorLieBialgebra | None = None
    rmatrix: DeformedTensor | None = None
    cartan: CartanData | None = None
    eps_consts: list | None = None
    reading: str = "standard"
    options: dict = field(default_factory=dict)

    def option(self, name: str, default: Any = None) -> Any:
        return self.options.get(name, default)


def _scalar(fld: CyclotomicField, text: str, ptr: str):
    try:
        return fld(text)
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        raise SpecError(ptr, f"bad scalar {text!r}: {exc}") from None


def _label(basis: GradedBasis, x, ptr: str) -> int:
    try:
        i = basis.index(x)
    except (KeyError, ValueError, IndexError):
        raise SpecError(ptr, f"unknown basis element {x!r}") from None
    if not 0 <= i < basis.dim:
        raise SpecError(ptr, f"basis index {x!r} out of range")
    return i


def _structure(doc: list, basis: GradedBasis, fld, section: str) -> dict:
    out: dict = {}
    for n, entry in enumerate(doc):
        base = f"/{section}/{n}"
        i = _label(basis, entry["i"], base + "/i")
        j = _label(basis, entry["j"], base + "/j")
        for m, t in enumerate(entry["terms"]):
            k = _label(basis, t["k"], f"{base}/terms/{m}/k")
            c = _scalar(fld, t["coeff"], f"{base}/terms/{m}/coeff")
            out.setdefault((i, j), {})
            out[(i, j)][k] = out[(i, j)].get(k, 0) + c
    return out


def parse_spec(doc: Any) -> AlgebraSpec:
    """Validate against :data:`SCHEMA`, then build the declared structures."""
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        raise _schema_error(errors[0])
    m = doc.get("scalars", {}).get("conductor", 1)
    try:
        fld = CyclotomicField(m)
    except ValueError as exc:
        raise SpecError("/scalars/conductor", str(exc)) from None
    spec = AlgebraSpec(raw=doc, field=fld, options=dict(doc.get("options", {})))

    if "group" in doc:
        g = doc["group"]
        try:
            group = GradingGroup(g["free_rank"], g.get("torsion_orders", []))
        except ValueError as exc:
            raise SpecError("/group", str(exc)) from None
        if "epsilon" not in doc:
            raise SpecError("/epsilon", "missing required section 'epsilon'")
        mat = doc["epsilon"]["matrix"]
        if len(mat) != group.ngens or any(len(r) != group.ngens for r in mat):
            raise SpecError("/epsilon/matrix", f"matrix must be {group.ngens}x{group.ngens}")
        rows = [[_scalar(fld, x, f"/epsilon/matrix/{i}/{j}") for j, x in enumerate(r)] for i, r in enumerate(mat)]
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                if x == 0:
                    raise SpecError(f"/epsilon/matrix/{i}/{j}", "commutation factor values must be nonzero")
        spec.eps = CommutationFactor(group, rows, fld)
    if "basis" in doc:
        if spec.eps is None:
            raise SpecError("/group", "a basis needs 'group' and 'epsilon'")
        names = [b["name"] for b in doc["basis"]]
        seen: set = set()
        for n, name in enumerate(names):
            if name in seen:
                raise SpecError(f"/basis/{n}/name", f"duplicate basis label {name!r}")
            seen.add(name)
        for n, b in enumerate(doc["basis"]):
            if len(b["degree"]) != spec.eps.group.ngens:
                raise SpecError(f"/basis/{n}/degree", f"degree needs {spec.eps.group.ngens} components")
        spec.basis = GradedBasis(names, [b["degree"] for b in doc["basis"]], spec.eps)
        bracket = _structure(doc.get("bracket", []), spec.basis, fld, "bracket")
        spec.algebra = ColorLieAlgebra(spec.basis, bracket)
    if "rmatrix" in doc:
        if spec.basis is None:
            raise SpecError("/rmatrix", "an r-matrix needs a basis")
        terms: dict = {}
        for n, t in enumerate(doc["rmatrix"]["terms"]):
            key = []
            for s, slot in enumerate(t["indices"]):
                ptr = f"/rmatrix/terms/{n}/indices/{s}"
                if isinstance(slot, list):
                    if len(slot) != 1:
                        raise SpecError(ptr, "r-matrix slots must be single basis elements")
                    slot = slot[0]
                key.append((_label(spec.basis, slot, ptr),))
            c = t["coeff"]
            if isinstance(c, list):
                if len(c) != 1:
                    raise SpecError(f"/rmatrix/terms/{n}/coeff", "r-matrix coefficients are scalars")
                c = c[0]
            val = _scalar(fld, c, f"/rmatrix/terms/{n}/coeff")
            terms[tuple(key)] = terms.get(tuple(key), 0) + val
        spec.rmatrix = DeformedTensor(spec.basis, 2, terms, 1)
    if "cobracket" in doc:
        if spec.basis is None:
            raise SpecError("/cobracket", "a cobracket needs a basis")
        cob: dict = {}
        for (i, j), vec in _structure(doc["cobracket"], spec.basis, fld, "cobracket").items():
            for k, c in vec.items():
                cob.setdefault(k, {})[(i, j)] = c
        spec.bialgebra = ColorLieBialgebra(spec.algebra, cob, spec.rmatrix, coboundary=spec.rmatrix is not None)
    elif spec.rmatrix is not None:
        spec.bialgebra = ColorLieBialgebra.from_r(spec.algebra, spec.rmatrix)
    if "cartan" in doc:
        c = doc["cartan"]
        d = None
        if "d" in c:
            d = [_scalar(CyclotomicField(1), x, f"/cartan/d/{i}") for i, x in enumerate(c["d"])]
        try:
            spec.cartan = CartanData(c["A"], frozenset(c.get("tau", [])), d, c.get("parity_rule", "both"))
        except CartanError as exc:
            raise SpecError("/cartan", str(exc)) from None
        s = spec.cartan.rank
        if "eps_consts" in c:
            mat = c["eps_consts"]
            if len(mat) != s or any(len(r) != s for r in mat):
                raise SpecError("/cartan/eps_consts", f"eps_consts must be {s}x{s}")
            spec.eps_consts = [
                [_scalar(CyclotomicField(1), x, f"/cartan/eps_consts/{i}/{j}") for j, x in enumerate(r)]
                for i, r in enumerate(mat)
            ]
            for i, r in enumerate(spec.eps_consts):
                for j, x in enumerate(r):
                    if x == 0:
                        raise SpecError(f"/cartan/eps_consts/{i}/{j}", "twisting constants must be nonzero")
        spec.reading = c.get("reading", "standard")
    return spec


def load_spec(path: str | Path) -> AlgebraSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError("", f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_spec(doc)
