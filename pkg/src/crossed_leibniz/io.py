"""JSON encodings of algebras, actions, maps, cochains and formal maps.

Scalars are strings ``"p/q"`` or ``"p"``.  Basis indices in files are
1-based; a basis label may be used wherever an index is expected.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from crossed_leibniz.algebra import ActionPair, LeibnizAlgebra, LeibnizGRepresentation
from crossed_leibniz.cochains import Cochain
from crossed_leibniz.linalg import as_matrix, format_scalar, parse_scalar, zeros


class InputError(ValueError):
    """A file could not be read or does not follow its schema."""


def load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _scalar(v, where):
    try:
        return parse_scalar(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: bad scalar {v!r}") from exc


def _index(value, labels, where) -> int:
    if isinstance(value, str):
        if value not in labels:
            raise InputError(f"{where}: unknown basis label {value!r}")
        return labels.index(value)
    if isinstance(value, bool) or not isinstance(value, int) or not 1 <= value <= len(labels):
        raise InputError(f"{where}: basis index {value!r} out of range 1..{len(labels)}")
    return value - 1


def _coords(value: dict, labels, where):
    if not isinstance(value, dict):
        raise InputError(f"{where}: value must be an object keyed by basis labels")
    out = zeros(len(labels))
    for key, v in value.items():
        if key not in labels:
            raise InputError(f"{where}: unknown basis label {key!r}")
        out[labels.index(key)] = _scalar(v, where)
    return out


def _encode_coords(vec, labels) -> dict:
    return {labels[k]: format_scalar(v) for k, v in enumerate(vec) if v != 0}


def algebra_from_json(data, where="algebra") -> LeibnizAlgebra:
    if not isinstance(data, dict) or "dim" not in data:
        raise InputError(f"{where}: expected an object with 'dim'")
    dim = data["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise InputError(f"{where}: 'dim' must be a non-negative integer")
    labels = data.get("basis") or [f"e{i + 1}" for i in range(dim)]
    if len(labels) != dim or len(set(labels)) != dim:
        raise InputError(f"{where}: 'basis' must list {dim} distinct labels")
    c = zeros(dim, dim, dim)
    for n, entry in enumerate(data.get("brackets", [])):
        w = f"{where}.brackets[{n}]"
        if not isinstance(entry, dict) or not {"i", "j", "value"} <= entry.keys():
            raise InputError(f"{w}: expected keys i, j, value")
        i = _index(entry["i"], labels, w)
        j = _index(entry["j"], labels, w)
        c[i, j] = c[i, j] + _coords(entry["value"], labels, w)
    return LeibnizAlgebra(c, labels, dim=dim)


def algebra_to_json(a: LeibnizAlgebra) -> dict:
    brackets = []
    for i in range(a.dim):
        for j in range(a.dim):
            value = _encode_coords(a.structure[i, j], a.basis)
            if value:
                brackets.append({"i": i + 1, "j": j + 1, "value": value})
    return {"dim": a.dim, "basis": list(a.basis), "brackets": brackets}


def matrix_from_json(rows, shape, where):
    if not isinstance(rows, list) or len(rows) != shape[0] \
            or any(not isinstance(r, list) or len(r) != shape[1] for r in rows):
        raise InputError(f"{where}: expected a {shape[0]}x{shape[1]} matrix")
    out = zeros(*shape)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = _scalar(v, where)
    return out


def matrix_to_json(M) -> list:
    return [[format_scalar(v) for v in row] for row in np.asarray(M, dtype=object)]


def action_from_json(data, g: LeibnizAlgebra, target_dim: int, where="action") -> ActionPair:
    if not isinstance(data, dict) or not {"rhoL", "rhoR"} <= data.keys():
        raise InputError(f"{where}: expected keys rhoL and rhoR")
    mats = {}
    for key in ("rhoL", "rhoR"):
        seq = data[key]
        if not isinstance(seq, list) or len(seq) != g.dim:
            raise InputError(f"{where}.{key}: need one matrix per basis element of g ({g.dim})")
        mats[key] = [matrix_from_json(M, (target_dim, target_dim), f"{where}.{key}[{a}]")
                     for a, M in enumerate(seq)]
    return ActionPair(g, mats["rhoL"], mats["rhoR"], target_dim)


def action_to_json(a: ActionPair) -> dict:
    return {"rhoL": [matrix_to_json(M) for M in a.rhoL],
            "rhoR": [matrix_to_json(M) for M in a.rhoR]}


def context_from_json(data, where="ctx", max_dim=None) -> LeibnizGRepresentation:
    """``{"g": algebra, "h": algebra | "g", "action": action | "regular" | absent}``."""
    from crossed_leibniz.algebra import MAX_TOTAL_DIM

    if not isinstance(data, dict) or "g" not in data:
        raise InputError(f"{where}: expected an object with 'g'")
    g = algebra_from_json(data["g"], f"{where}.g")
    h_data = data.get("h", "g")
    h = g if h_data == "g" else algebra_from_json(h_data, f"{where}.h")
    act = data.get("action")
    if act is None:
        action = ActionPair.zero(g, h.dim)
    elif act == "regular":
        if h is not g:
            raise InputError(f"{where}: the regular action needs h = g")
        action = ActionPair.regular(g)
    else:
        action = action_from_json(act, g, h.dim, f"{where}.action")
    return LeibnizGRepresentation(g, h, action, max_dim=max_dim or MAX_TOTAL_DIM)


def context_to_json(r: LeibnizGRepresentation) -> dict:
    return {"g": algebra_to_json(r.g), "h": algebra_to_json(r.h), "action": action_to_json(r.action)}


def map_from_json(data, ctx: LeibnizGRepresentation, where="map"):
    if isinstance(data, dict):
        if "matrix" not in data:
            raise InputError(f"{where}: expected key 'matrix'")
        data = data["matrix"]
    if ctx.h.dim == 0:
        return zeros(0, ctx.g.dim)
    return matrix_from_json(data, (ctx.h.dim, ctx.g.dim), where)


def map_to_json(M) -> dict:
    return {"matrix": matrix_to_json(M)}


def cochain_to_json(c: Cochain, target_labels) -> dict:
    entries = []
    for idx in np.ndindex(*c.coeffs.shape[:-1]):
        value = _encode_coords(c.coeffs[idx], target_labels)
        if value:
            entries.append({"args": [i + 1 for i in idx], "value": value})
    return {"arity": c.arity, "entries": entries}


def cochain_from_json(data, source_dim, target_labels, source_labels=None, where="cochain") -> Cochain:
    if not isinstance(data, dict) or "arity" not in data:
        raise InputError(f"{where}: expected key 'arity'")
    n = data["arity"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise InputError(f"{where}: bad arity {n!r}")
    c = Cochain.zero(n, source_dim, len(target_labels))
    src = source_labels or [f"e{i + 1}" for i in range(source_dim)]
    for k, entry in enumerate(data.get("entries", [])):
        w = f"{where}.entries[{k}]"
        args = entry.get("args") if isinstance(entry, dict) else None
        if not isinstance(args, list) or len(args) != n:
            raise InputError(f"{w}: 'args' must list {n} basis indices")
        idx = tuple(_index(a, src, w) for a in args)
        c.coeffs[idx] = c.coeffs[idx] + _coords(entry.get("value", {}), list(target_labels), w)
    return c


def formal_map_from_json(data, ctx, where="deformation"):
    from crossed_leibniz.deformation import FormalMap

    if not isinstance(data, dict) or "terms" not in data:
        raise InputError(f"{where}: expected key 'terms'")
    terms = [map_from_json(T, ctx, f"{where}.terms[{i}]") for i, T in enumerate(data["terms"])]
    if not terms:
        raise InputError(f"{where}: at least the constant term is required")
    if "order" in data and data["order"] != len(terms) - 1:
        raise InputError(f"{where}: order {data['order']} but {len(terms)} terms")
    return FormalMap(ctx, terms)


def formal_map_to_json(Ht) -> dict:
    return {"order": Ht.order, "terms": [matrix_to_json(T) for T in Ht.terms]}


def vector_from_json(data, dim, where="vector"):
    if isinstance(data, dict):
        data = data.get("vector")
    if not isinstance(data, list) or len(data) != dim:
        raise InputError(f"{where}: expected {dim} coordinates")
    out = zeros(dim)
    for i, v in enumerate(data):
        out[i] = _scalar(v, where)
    return out
