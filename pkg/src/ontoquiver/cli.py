"""``oq`` command line.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.  With
``--json`` a domain error is also written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dot import export_dot
from .errors import IoFailure, OqError
from .kb import kb_add, kb_init, kb_merge, load_kb
from .linrep import (
    check_rep_morphism,
    hom_space,
    is_exact_representation,
    rep_morphism_to_dict,
    representation_from_dict,
    validate_representation,
)
from .marked import check_marking, marking_from_dict
from .onto.compile import ontology_to_quiver
from .onto.model import OntologyDoc
from .onto.parser import parse_file, serialize_ontology
from .onto.units import normalize_declaration
from .paths import enumerate_paths
from .quiver import quiver_from_dict, quiver_to_dict
from .report import report, report_json, report_tsv


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise IoFailure(f"{path} is not valid JSON: {exc}") from exc


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def ontology_to_dict(doc: OntologyDoc) -> dict:
    units = {}
    for u in doc.units:
        try:
            units[u.name] = normalize_declaration(doc, u.name)
        except OqError as exc:
            units[u.name] = exc.to_json()
    return {
        "name": doc.name,
        "concepts": [{"id": c.id, "description": c.description} for c in doc.concepts],
        "relations": [{"kind": r.kind.label, "src": r.src, "tgt": r.tgt} for r in doc.relations],
        "units": units,
        "annotations": [{"kind": a.kind, "text": a.text} for a in doc.annotations],
        "quiver": quiver_to_dict(ontology_to_quiver(doc)),
    }


# -- commands -----------------------------------------------------------------


def cmd_parse(args, out):
    doc = parse_file(args.file)
    if args.dot:
        out.write(export_dot(ontology_to_quiver(doc)))
    elif args.json:
        out.write(_dump(ontology_to_dict(doc)))
    else:
        out.write(serialize_ontology(doc))


def cmd_report(args, out):
    doc = parse_file(args.file)
    render = {"text": report, "tsv": report_tsv, "json": report_json}[args.format]
    out.write(render(doc))
    if args.figure:
        from .plotting import render_report_figure

        render_report_figure(doc, args.figure)


def cmd_paths(args, out):
    q = ontology_to_quiver(parse_file(args.file))
    found = enumerate_paths(q, args.src, args.tgt, args.max_len)
    if args.json:
        out.write(_dump([p.to_dict() | {"source": p.source, "target": p.target} for p in found]))
    else:
        for p in found:
            out.write(f"{p}\n")


def _load_quiver(path):
    try:
        return quiver_from_dict(_read_json(path))
    except (KeyError, TypeError) as exc:
        raise OqError(f"{path}: malformed quiver ({exc})") from exc


def _load_rep(q, path):
    try:
        return representation_from_dict(q, _read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise OqError(f"{path}: malformed representation ({exc})") from exc


def cmd_rep_check(args, out):
    q = _load_quiver(args.quiver)
    m = _load_rep(q, args.rep)
    ok = validate_representation(m)
    if args.json:
        out.write(_dump({"valid": ok}))
    else:
        out.write("valid\n" if ok else "invalid\n")
    return 0 if ok else 1


def cmd_rep_hom(args, out):
    q = _load_quiver(args.quiver)
    m1, m2 = _load_rep(q, args.m1), _load_rep(q, args.m2)
    for m in (m1, m2):
        if not validate_representation(m):
            raise OqError("representation does not match the quiver")
    hs = hom_space(m1, m2)
    assert all(check_rep_morphism(f, m1, m2) for f in hs.basis)
    if args.json:
        out.write(_dump({"dimension": hs.dimension, "basis": [rep_morphism_to_dict(f) for f in hs.basis]}))
    else:
        out.write(f"dimension: {hs.dimension}\n")


def cmd_rep_exact(args, out):
    q = _load_quiver(args.quiver)
    m = _load_rep(q, args.rep)
    if not validate_representation(m):
        raise OqError("representation does not match the quiver")
    exact = is_exact_representation(q, m)
    out.write(_dump({"exact": exact}) if args.json else f"{'exact' if exact else 'not exact'}\n")


def cmd_marking_check(args, out):
    try:
        mq = marking_from_dict(_read_json(args.file))
    except (KeyError, TypeError, ValueError) as exc:
        raise OqError(f"{args.file}: malformed marking ({exc})") from exc
    violations = check_marking(mq)
    if args.json:
        out.write(_dump([{"kind": v.kind, "detail": v.detail} for v in violations]))
    else:
        for v in violations:
            out.write(f"{v.kind}: {v.detail}\n")
        if not violations:
            out.write("ok\n")
    return 1 if violations else 0


def cmd_kb_init(args, out):
    kb = kb_init(args.dir, args.name)
    out.write(f"initialized knowledge base {kb.name!r} in {args.dir}\n")


def cmd_kb_add(args, out):
    kb = load_kb(args.dir)
    for f in args.files:
        doc = parse_file(f)
        kb = kb_add(kb, doc)
        out.write(f"added {doc.name}\n")


def cmd_kb_list(args, out):
    kb = load_kb(args.dir)
    if args.json:
        out.write(_dump(kb.to_dict()))
        return
    for e in kb.entries:
        out.write(f"{e.name}\t{e.path}\t{e.digest}\n")


def cmd_kb_merge(args, out):
    kb = load_kb(args.dir)
    shared = [s for s in (args.shared or "").split(",") if s]
    merged = kb_merge(kb, args.name1, args.name2, shared, args.add_as)
    text = serialize_ontology(merged)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    if args.add_as:
        kb_add(kb, merged)


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="oq", description="Ontologies as quivers: parse, check, merge, report.")
    p.add_argument("--json", action="store_true", help="machine-readable output and diagnostics")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("parse", help="parse an ontology file")
    sp.add_argument("file")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    fmt.add_argument("--dot", action="store_true")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("report", help="summary and categorification check")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("text", "tsv", "json"), default="text")
    sp.add_argument("--figure", metavar="PATH", help="also render a figure (PNG, SVG or PDF)")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("paths", help="list paths between two concepts")
    sp.add_argument("file")
    sp.add_argument("--from", dest="src", required=True)
    sp.add_argument("--to", dest="tgt", required=True)
    sp.add_argument("--max-len", type=int, required=True)
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_paths)

    rep = sub.add_parser("rep", help="quiver representations").add_subparsers(
        dest="rep_command", required=True, parser_class=_Parser
    )
    sp = rep.add_parser("check")
    sp.add_argument("quiver")
    sp.add_argument("rep")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_rep_check)
    sp = rep.add_parser("hom")
    sp.add_argument("quiver")
    sp.add_argument("m1")
    sp.add_argument("m2")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_rep_hom)
    sp = rep.add_parser("exact")
    sp.add_argument("quiver")
    sp.add_argument("rep")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_rep_exact)

    mk = sub.add_parser("marking", help="marked quivers").add_subparsers(
        dest="marking_command", required=True, parser_class=_Parser
    )
    sp = mk.add_parser("check")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_marking_check)

    kb = sub.add_parser("kb", help="knowledge bases").add_subparsers(dest="kb_command", required=True, parser_class=_Parser)
    sp = kb.add_parser("init")
    sp.add_argument("dir")
    sp.add_argument("--name")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_kb_init)
    sp = kb.add_parser("add")
    sp.add_argument("dir")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_kb_add)
    sp = kb.add_parser("list")
    sp.add_argument("dir")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_kb_list)
    sp = kb.add_parser("merge")
    sp.add_argument("dir")
    sp.add_argument("name1")
    sp.add_argument("name2")
    sp.add_argument("--shared", help="comma-separated concept ids")
    sp.add_argument("--add-as", metavar="NAME", help="store the result in the knowledge base under NAME")
    sp.add_argument("-o", "--output", metavar="FILE")
    sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_kb_merge)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    raw = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in raw
    try:
        args = build_parser().parse_args(raw)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        status = args.func(args, out)
    except OqError as exc:
        if want_json:
            err.write(json.dumps(exc.to_json(), sort_keys=True) + "\n")
        else:
            err.write(f"oq: error: {exc}\n")
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
