"""Plain-text and delimited summaries of an ontology and its categorification check."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter

from .onto.compile import ontology_to_quiver
from .onto.model import OntologyDoc
from .quiver import accepts_categorification


def _yn(b: bool) -> str:
    return "true" if b else "false"


def describe_cycle(doc: OntologyDoc, cycle) -> str:
    q = ontology_to_quiver(doc)
    arrows = [q.arrow(a) for a in cycle]
    parts = [arrows[0].src]
    for a in arrows:
        parts.append(f"-[{a.label}]-> {a.tgt}")
    return " ".join(parts)


def report_rows(doc: OntologyDoc) -> list[tuple[str, str]]:
    """Flat (key, value) rows; the text, TSV and JSON reports are all built from these."""
    q = ontology_to_quiver(doc)
    rep = accepts_categorification(q)
    rows = [
        ("ontology", doc.name),
        ("concepts", str(len(doc.concepts))),
        ("relations", str(len(doc.relations))),
        ("units", str(len(doc.units))),
        ("annotations", str(len(doc.annotations))),
    ]
    kinds = Counter(r.kind.label for r in doc.relations)
    for kind, n in sorted(kinds.items()):
        rows.append((f"kind.{kind}", str(n)))
    rows += [
        ("finite", _yn(rep.finite)),
        ("nonempty", _yn(rep.nonempty)),
        ("connected", _yn(rep.connected)),
        ("acyclic", _yn(rep.acyclic)),
    ]
    if rep.witness_cycle:
        rows.append(("witness_cycle", describe_cycle(doc, rep.witness_cycle)))
        rows.append(("witness_length", str(len(rep.witness_cycle))))
    rows.append(("verdict", "categorifiable" if rep.accepted else "not categorifiable"))
    return rows


def report(doc: OntologyDoc) -> str:
    rows = dict(report_rows(doc))
    kinds = [(k[5:], v) for k, v in report_rows(doc) if k.startswith("kind.")]
    out = [
        f"ontology: {rows['ontology']}",
        f"concepts: {rows['concepts']}",
        f"relations: {rows['relations']}",
        f"units: {rows['units']}",
        "relation kinds:",
    ]
    out += [f"  {k}: {v}" for k, v in kinds] or ["  (none)"]
    out.append("categorification:")
    for key in ("finite", "nonempty", "connected", "acyclic"):
        out.append(f"  {key}: {rows[key]}")
    if "witness_cycle" in rows:
        out.append(f"  oriented cycle ({rows['witness_length']} arrows): {rows['witness_cycle']}")
    out.append(f"verdict: {rows['verdict']}")
    return "\n".join(out) + "\n"


def report_tsv(doc: OntologyDoc) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
    writer.writerow(["key", "value"])
    writer.writerows(report_rows(doc))
    return buf.getvalue()


def report_json(doc: OntologyDoc) -> str:
    q = ontology_to_quiver(doc)
    data = {
        "ontology": doc.name,
        "concepts": len(doc.concepts),
        "relations": len(doc.relations),
        "relation_kinds": dict(sorted(Counter(r.kind.label for r in doc.relations).items())),
        "categorification": accepts_categorification(q).as_dict(),
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
