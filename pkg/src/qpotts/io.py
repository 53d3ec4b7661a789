"""Model files, representation files and machine-readable reports.

A model file is a JSON document::

    {"vertices": ["1", "2"], "edges": [{"u": "1", "v": "2", "weight": "1/2+i"}],
     "default_weight": "1", "q": 2}

Weights are exact scalar strings; ``default_weight`` applies to edges that
omit ``weight``.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .classify import NumericRep, rep_from_exact
from .model import ModelError, PottsModel, build_model
from .scalars import GaussianRational, format_scalar, parse_scalar


class ParseError(ValueError):
    """Malformed input document; the message names the offending field."""


def _field_scalar(value: Any, where: str) -> GaussianRational:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"{where}: expected an exact scalar string, got {value!r}")
    try:
        return parse_scalar(str(value))
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def parse_model(text: str) -> PottsModel:
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    if "q" not in doc:
        raise ParseError("q: missing")
    q = doc["q"]
    if isinstance(q, bool) or not isinstance(q, int) or q < 2:
        raise ParseError(f"q: expected an integer >= 2, got {q!r}")
    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise ParseError("vertices: expected a list of strings")
    default = _field_scalar(doc.get("default_weight", "1"), "default_weight")
    edges_doc = doc.get("edges", [])
    if not isinstance(edges_doc, list):
        raise ParseError("edges: expected a list")
    known = set(vertices)
    edges, weights, seen = [], {}, set()
    for k, e in enumerate(edges_doc):
        where = f"edges[{k}]"
        if not isinstance(e, dict) or "u" not in e or "v" not in e:
            raise ParseError(f"{where}: expected an object with fields u, v")
        u, v = str(e["u"]), str(e["v"])
        for name, x in (("u", u), ("v", v)):
            if x not in known:
                raise ParseError(f"{where}.{name}: unknown vertex {x!r}")
        key = frozenset((u, v))
        if key in seen:
            raise ParseError(f"{where}: duplicate edge {{{u}, {v}}}")
        seen.add(key)
        edges.append((u, v))
        weights[(u, v)] = _field_scalar(e["weight"], f"{where}.weight") if "weight" in e else default
    try:
        return build_model(vertices, edges, weights, q, default)
    except ModelError as exc:
        raise ParseError(str(exc)) from None


def model_document(model: PottsModel) -> dict:
    return {
        "vertices": list(model.labels),
        "edges": [
            {"u": model.labels[i], "v": model.labels[j], "weight": format_scalar(model.J[i][j])}
            for i, j in model.sorted_edges()
        ],
        "default_weight": "1",
        "q": model.q,
    }


def serialize_model(model: PottsModel) -> str:
    return json.dumps(model_document(model), indent=2) + "\n"


def load_model(path: str) -> PottsModel:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return parse_model(text)


# --- representation documents ------------------------------------------------


def rep_document(exact: np.ndarray | None, entries: np.ndarray) -> dict:
    """``{"dimension": d, "entries": [[M_ij, ...], ...]}`` with exact strings where possible."""
    n, _, d, _ = entries.shape
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if exact is not None:
                row.append([[format_scalar(exact[i, j, a, b]) for b in range(d)] for a in range(d)])
            else:
                row.append([[[float(z.real), float(z.imag)] for z in r] for r in entries[i, j]])
        rows.append(row)
    return {"dimension": d, "entries": rows}


def parse_rep(doc: Any, n: int) -> NumericRep:
    """Build a :class:`NumericRep`; all-string entries give an exact representation.

    Also accepts a full analyze report and uses its certificate.
    """
    if isinstance(doc, str):
        doc = _load_json(doc)
    if isinstance(doc, dict) and "classification" in doc:
        doc = (doc["classification"] or {}).get("certificate")
        if doc is None:
            raise ParseError("report carries no certificate")
    if not isinstance(doc, dict) or "entries" not in doc:
        raise ParseError("representation: expected an object with field entries")
    rows = doc["entries"]
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ParseError(f"entries: expected an {n} x {n} grid of matrices")
    d = doc.get("dimension", len(rows[0][0]) if n else 1)
    exact = np.empty((n, n, d, d), dtype=object)
    numeric = np.zeros((n, n, d, d), dtype=complex)
    all_exact = True
    for i in range(n):
        for j in range(n):
            m = rows[i][j]
            if not isinstance(m, list) or len(m) != d or any(not isinstance(r, list) or len(r) != d for r in m):
                raise ParseError(f"entries[{i}][{j}]: expected a {d} x {d} matrix")
            for a in range(d):
                for b in range(d):
                    x = m[a][b]
                    where = f"entries[{i}][{j}][{a}][{b}]"
                    if isinstance(x, str):
                        z = _field_scalar(x, where)
                        exact[i, j, a, b] = z
                        numeric[i, j, a, b] = complex(z)
                    elif isinstance(x, list) and len(x) == 2:
                        all_exact = False
                        numeric[i, j, a, b] = complex(float(x[0]), float(x[1]))
                    elif isinstance(x, (int, float)) and not isinstance(x, bool):
                        all_exact = False
                        numeric[i, j, a, b] = float(x)
                    else:
                        raise ParseError(f"{where}: expected a scalar string, number or [re, im]")
    if all_exact:
        return rep_from_exact(exact)
    return NumericRep(d, numeric)
