"""JSON forms for quasipolynomials, weights, and module descriptors.

All scalars travel as strings in the shared literal grammar.  Half-odd
label positions k - 1/2 are keyed by the integer k under the "half"
group, so JSON keys stay integral.  Validation errors carry a JSON path.
"""

from __future__ import annotations

import json

from .classify import ModuleDescriptor, SSqWeight, weight_from_raw_labels
from .grammar import ParseError, parse_scalar
from .infmatrix import GlWeight, LabelSeq
from .quasipoly import QuasiPolynomial
from .scalars import Scalar, scalar_str


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _scalar_in(value, path: str):
    if isinstance(value, int):
        value = str(value)
    if not isinstance(value, str):
        raise SchemaError(path, "expected a scalar string")
    try:
        return parse_scalar(value)
    except ParseError as exc:
        raise SchemaError(path, f"bad scalar literal: {exc}") from exc


def _scalar_list_in(value, path: str, length: int | None = None):
    if isinstance(value, (str, int)):
        value = [value]
    if not isinstance(value, list):
        raise SchemaError(path, "expected a list of scalar strings")
    if length is not None and len(value) > length:
        raise SchemaError(path, f"expected at most {length} entries")
    return [_scalar_in(v, f"{path}[{i}]") for i, v in enumerate(value)]


def qp_from_json(data, path: str = "$") -> QuasiPolynomial:
    if not isinstance(data, dict) or "terms" not in data:
        raise SchemaError(path, 'expected {"terms": [...]}')
    terms = data["terms"]
    if not isinstance(terms, list):
        raise SchemaError(f"{path}.terms", "expected a list")
    acc = {}
    for i, term in enumerate(terms):
        tp = f"{path}.terms[{i}]"
        if not isinstance(term, dict) or "base" not in term or "coeffs" not in term:
            raise SchemaError(tp, 'expected {"base": ..., "coeffs": [...]}')
        base = _scalar_in(term["base"], f"{tp}.base")
        coeffs = _scalar_list_in(term["coeffs"], f"{tp}.coeffs")
        if base in acc:
            raise SchemaError(f"{tp}.base", "duplicate base")
        acc[base] = coeffs
    try:
        return QuasiPolynomial(acc)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


def qp_to_json(P: QuasiPolynomial) -> dict:
    terms = []
    for b, p in sorted(P.items(), key=lambda kv: scalar_str(kv[0])):
        terms.append({"base": scalar_str(b), "coeffs": [scalar_str(c) for c in p]})
    return {"terms": terms}


def _labelseq_from_json(data, path: str, m: int):
    if not isinstance(data, dict):
        raise SchemaError(path, "expected an object")
    neg = _scalar_list_in(data.get("neg_tail", []), f"{path}.neg_tail", m + 1)
    pos = _scalar_list_in(data.get("pos_tail", []), f"{path}.pos_tail", m + 1)
    neg += [None] * (m + 1 - len(neg))
    pos += [None] * (m + 1 - len(pos))
    excepts = data.get("except", {})
    if not isinstance(excepts, dict):
        raise SchemaError(f"{path}.except", "expected an object keyed by integers")
    per_l = [dict() for _ in range(m + 1)]
    for key, value in excepts.items():
        try:
            k = int(key)
        except (TypeError, ValueError):
            raise SchemaError(f"{path}.except.{key}", "keys must be integers")
        vals = _scalar_list_in(value, f"{path}.except.{key}", m + 1)
        for l, v in enumerate(vals):
            per_l[l][k] = v
    seqs = []
    from .scalars import ZERO
    for l in range(m + 1):
        try:
            seqs.append(LabelSeq.make(neg[l] if neg[l] is not None else ZERO,
                                      pos[l] if pos[l] is not None else ZERO,
                                      per_l[l]))
        except ValueError as exc:
            raise SchemaError(f"{path}.except", str(exc)) from exc
    return seqs


def _labelseq_to_json(seqs, m: int) -> dict:
    out = {"neg_tail": [scalar_str(s.neg_tail) for s in seqs],
           "pos_tail": [scalar_str(s.pos_tail) for s in seqs],
           "except": {}}
    keys = sorted({k for s in seqs for k, _ in s.values})
    for k in keys:
        out["except"][str(k)] = [scalar_str(s.at(k)) for s in seqs]
    return out


def glweight_from_json(data, path: str = "$") -> GlWeight:
    if not isinstance(data, dict) or "labels" not in data:
        raise SchemaError(path, 'expected {"m": ..., "charges": [...], "labels": {...}}')
    m = data.get("m", 0)
    if not isinstance(m, int) or m < 0:
        raise SchemaError(f"{path}.m", "expected a non-negative integer")
    charges = _scalar_list_in(data.get("charges", []), f"{path}.charges", m + 1)
    labels = data["labels"]
    if not isinstance(labels, dict):
        raise SchemaError(f"{path}.labels", "expected an object with int/half groups")
    int_seqs = _labelseq_from_json(labels.get("int", {}), f"{path}.labels.int", m)
    half_seqs = _labelseq_from_json(labels.get("half", {}), f"{path}.labels.half", m)
    return GlWeight.make(m, charges, int_seqs, half_seqs)


def glweight_to_json(w: GlWeight) -> dict:
    return {
        "m": w.m,
        "charges": [scalar_str(c) for c in w.charges],
        "labels": {
            "int": _labelseq_to_json(w.int_seqs, w.m),
            "half": _labelseq_to_json(w.half_seqs, w.m),
        },
    }


def _raw_labels_in(data, path: str):
    if not isinstance(data, dict):
        raise SchemaError(path, "expected an object keyed by integers")
    out = {}
    for key, value in data.items():
        try:
            n = int(key)
        except (TypeError, ValueError):
            raise SchemaError(f"{path}.{key}", "keys must be integers")
        out[n] = _scalar_in(value, f"{path}.{key}")
    return out


def ssq_from_json(data, path: str = "$"):
    """SSqWeight from JSON; None when raw labels admit no annihilator."""
    if not isinstance(data, dict):
        raise SchemaError(path, "expected an object")
    if "labels1" in data or "labels2" in data:
        d1 = _raw_labels_in(data.get("labels1", {}), f"{path}.labels1")
        d2 = _raw_labels_in(data.get("labels2", {}), f"{path}.labels2")
        c = _scalar_in(data.get("c", "0"), f"{path}.c")
        bound = data.get("bound", 16)
        if not isinstance(bound, int) or bound < 1:
            raise SchemaError(f"{path}.bound", "expected a positive integer")
        return weight_from_raw_labels(d1, d2, c, bound)
    if "p12" not in data or "p21" not in data:
        raise SchemaError(path, 'expected {"p12": ..., "p21": ..., "c": ...}')
    p12 = qp_from_json(data["p12"], f"{path}.p12")
    p21 = qp_from_json(data["p21"], f"{path}.p21")
    c = _scalar_in(data.get("c", "0"), f"{path}.c")
    split = None
    if "zero_split" in data:
        parts = _scalar_list_in(data["zero_split"], f"{path}.zero_split", 2)
        if len(parts) != 2:
            raise SchemaError(f"{path}.zero_split", "expected two scalars")
        split = (parts[0], parts[1])
    try:
        return SSqWeight(p12, p21, c, zero_split=split)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


def ssq_to_json(w: SSqWeight) -> dict:
    out = {"p12": qp_to_json(w.p12), "p21": qp_to_json(w.p21), "c": scalar_str(w.c)}
    if w.zero_split is not None:
        out["zero_split"] = [scalar_str(v) for v in w.zero_split]
    return out


def descriptor_from_json(data, path: str = "$") -> ModuleDescriptor:
    if not isinstance(data, dict) or "s" not in data or "weight" not in data:
        raise SchemaError(path, 'expected {"s": ..., "m": ..., "weight": {...}}')
    s = _scalar_in(data["s"], f"{path}.s")
    weight = glweight_from_json(data["weight"], f"{path}.weight")
    m = data.get("m", weight.m)
    if m != weight.m:
        raise SchemaError(f"{path}.m", "descriptor order must match the weight")
    try:
        return ModuleDescriptor(s, weight.m, weight)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from exc


def descriptor_to_json(d: ModuleDescriptor) -> dict:
    return {"s": scalar_str(d.s), "m": d.m, "weight": glweight_to_json(d.weight)}


def load_weight(text: str):
    """Parse a weight file: SSqWeight, GlWeight, or None (raw-label failure)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    if isinstance(data, dict) and ("p12" in data or "labels1" in data or "labels2" in data):
        return ssq_from_json(data)
    if isinstance(data, dict) and "labels" in data:
        return glweight_from_json(data)
    raise SchemaError("$", "unrecognized weight format")


def load_descriptors(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    if isinstance(data, list):
        return [descriptor_from_json(d, f"$[{i}]") for i, d in enumerate(data)]
    return [descriptor_from_json(data)]
