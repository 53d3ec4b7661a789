"""Report documents for every CLI command, plus their text rendering."""

from __future__ import annotations

import json
from datetime import datetime, timezone

from . import __version__
from .classical import AutGroup, automorphisms, format_cycles, group_name
from .classify import Classification, Verification, classify
from .io import model_document, rep_document
from .model import PottsModel, color_table, level_function
from .oracle import EnergySpectrum
from .relations import Presentation, RelationSet, extract_presentation, saturate
from .scalars import format_scalar

ENGINE_VERSION = f"qpotts {__version__} (relation engine 1)"
HAMILTONIAN_CONVENTION = "sum over ordered vertex pairs: each agreeing edge contributes twice its coupling"


def _header(command: str, model: PottsModel | None = None, timestamp: bool = False) -> dict:
    doc = {"engine_version": ENGINE_VERSION, "command": command}
    if timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
    if model is not None:
        doc["model"] = model_document(model)
        doc["vertex_index"] = {lab: k for k, lab in enumerate(model.labels)}
    return doc


def _num(value: float, exact: str | None = None) -> dict:
    return {"value": value, "exact": exact}


def group_section(aut: AutGroup, labels) -> dict:
    return {
        "order": aut.order,
        "name": group_name(aut),
        "generators": [format_cycles(g, labels) for g in aut.generators],
        "base": [labels[b] for b in aut.base],
        "orbit_sizes": list(aut.orbit_sizes),
    }


def presentation_section(pres: Presentation, labels) -> dict:
    n = len(labels)

    def ent(e):
        i, j = divmod(e, n)
        return [labels[i], labels[j]]

    return {
        "grid": [list(r) for r in pres.grid],
        "variables": [{"name": pres.names[r], "entries": [ent(e) for e in pres.members[r]]} for r in pres.names],
        "independent": [pres.names[r] for r in pres.independent],
        "complements": [[pres.names[a], pres.names[b]] for a, b in pres.complements],
        "relations": list(pres.relations),
        "blocks": [{"rows": [labels[i] for i in r], "cols": [labels[j] for j in c]} for r, c in pres.blocks],
        "components": [[pres.names[r] for r in comp] for comp in pres.components],
    }


def verification_section(ver: Verification, labels) -> dict:
    exact = "0" if ver.exact else None
    out = {
        "tol": ver.tol,
        "exact_arithmetic": ver.exact,
        "passed": ver.passed,
        "residuals": {k: _num(v, exact if v == 0 else None) for k, v in ver.residuals.items()},
        "commutator": _num(ver.commutator, None if ver.commutator_exact is None else format_scalar(ver.commutator_exact)),
    }
    if ver.commutator_pair is not None:
        (a, b), (c, d) = ver.commutator_pair
        out["commutator_pair"] = [[labels[a], labels[b]], [labels[c], labels[d]]]
    return out


def classification_section(c: Classification, labels) -> dict:
    out = {
        "verdict": c.verdict,
        "structure_hint": c.structure_hint,
        "certificate": None,
        "verification": None,
        "notes": list(c.notes),
    }
    if c.certificate is not None:
        cert = rep_document(c.certificate.exact, c.certificate.entries)
        if c.certificate.witness is not None:
            cert["witness"] = [format_cycles(g, labels) for g in c.certificate.witness]
        out["certificate"] = cert
    if c.verification is not None:
        out["verification"] = verification_section(c.verification, labels)
    return out


def trace_section(rs: RelationSet) -> list[dict]:
    return [{"rule": t.rule, "message": t.message, "measure": t.measure} for t in rs.trace]


def analyze(model: PottsModel, with_trace: bool = False, timestamp: bool = False) -> dict:
    labels = model.labels
    rs = saturate(model)
    aut = automorphisms(model)
    cls = classify(model, rs, aut)
    ct = color_table(model)
    doc = _header("analyze", model, timestamp)
    doc["conventions"] = {"hamiltonian": HAMILTONIAN_CONVENTION, "q_enters_classification": False}
    doc["level_function"] = [{"vertex": lab, "value": format_scalar(v)} for lab, v in zip(labels, level_function(model))]
    doc["colors"] = [{"id": c, "value": format_scalar(v)} for v, c in sorted(ct.colors.items(), key=lambda t: t[1])]
    doc["zero_pattern_matches_adjacency"] = model.zero_pattern_matches_adjacency()
    doc["classical_group"] = group_section(aut, labels)
    doc["presentation"] = presentation_section(extract_presentation(rs), labels)
    doc["classification"] = classification_section(cls, labels)
    if with_trace:
        doc["trace"] = trace_section(rs)
    return doc


def relations(model: PottsModel, with_trace: bool = False) -> tuple[dict, str]:
    rs = saturate(model)
    pres = extract_presentation(rs)
    doc = _header("relations", model)
    doc["presentation"] = presentation_section(pres, model.labels)
    if with_trace:
        doc["trace"] = trace_section(rs)
    return doc, pres.text(model.labels)


def spectrum_section(spec: EnergySpectrum) -> list[dict]:
    return [{"energy": format_scalar(e), "multiplicity": m} for e, m in spec.levels]


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# --- text rendering ----------------------------------------------------------


def analyze_text(doc: dict, pres_text: str | None = None) -> str:
    lines = [f"# {doc['engine_version']}"]
    m = doc["model"]
    lines.append(f"vertices: {' '.join(m['vertices'])}   q = {m['q']}")
    lines.append("level function: " + ", ".join(f"f({x['vertex']})={x['value']}" for x in doc["level_function"]))
    lines.append("coupling colours: " + ", ".join(f"{c['id']}:{c['value']}" for c in doc["colors"]))
    g = doc["classical_group"]
    lines.append(f"classical group: order {g['order']} ({g['name']})")
    for gen in g["generators"]:
        lines.append(f"  {gen}")
    if pres_text:
        lines.append(pres_text)
    c = doc["classification"]
    lines.append(f"verdict: {c['verdict']}")
    if c["structure_hint"]:
        lines.append(f"structure hint: {c['structure_hint']}")
    if c["verification"]:
        v = c["verification"]
        lines.append(f"certificate: passed={v['passed']} commutator={v['commutator']['value']:.6g}")
        for k, r in v["residuals"].items():
            lines.append(f"  residual {k}: {r['value']:.3g}")
    for note in c["notes"]:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"
