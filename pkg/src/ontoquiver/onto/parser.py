"""Recursive-descent parser and canonical serializer for ``.onto`` documents.

Grammar (EBNF)::

    doc        := "ontology" ident "{" item* "}"
    item       := concept | relation | annotation | unitdecl
    concept    := "concept" ident string? ";"
    relation   := "relation" kind ident "->" ident ";"
    kind       := atom | "custom" "(" ident ")"
    annotation := ("axiom" | "postulate" | "rule" | "confirmation" | "induction") string ";"
    unitdecl   := "(" "defobject" atom+ uexpr ")"
    uexpr      := atom
                | "(" "basic-unit" atom ")"
                | "(" "unit*" uexpr* ")"
                | "(" "unit^" uexpr integer ")"
                | "(" "=" atom+ uexpr ")"          -- only directly under defobject
    ident      := atom | string

Atoms are runs of characters other than whitespace, ``(){};"#``, and the
``->`` digraph.  ``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..errors import DslSyntaxError, DuplicateConcept, IoFailure, OntologyError, UndeclaredConcept, UnknownRelationKind
from .model import (
    ANNOTATION_KINDS,
    BUILTIN_KINDS,
    KIND_ALIASES,
    Annotation,
    BasicUnit,
    Concept,
    OntologyDoc,
    Relation,
    RelationKind,
    Span,
    UnitDecl,
    UnitPower,
    UnitProduct,
    UnitRef,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<arrow>->)
  | (?P<punct>[{}();])
  | (?P<atom>(?:[^\s(){};"\#-]|-(?!>))+)
    """,
    re.VERBOSE,
)

_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


@dataclass(frozen=True)
class Token:
    kind: str  # atom, string, arrow, punct, eof
    value: str
    line: int
    col: int

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        return repr(self.value)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            col = pos - line_start + 1
            if text[pos] == '"':
                raise DslSyntaxError("unterminated string", line, col)
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            if kind == "string":
                value = re.sub(r"\\(.)", lambda e: _ESCAPES.get(e.group(1), e.group(1)), value[1:-1])
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, source: Optional[str]):
        self.tokens = tokenize(text)
        self.i = 0
        self.source = source

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def fail(self, tok: Token, expected) -> DslSyntaxError:
        return DslSyntaxError(f"unexpected {tok.describe()}", tok.line, tok.col, expected)

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        tok = self.next()
        if tok.kind != kind or (value is not None and tok.value != value):
            raise self.fail(tok, [repr(value) if value else kind])
        return tok

    def span(self, tok: Token) -> Span:
        return Span(self.source, tok.line, tok.col)

    def ident(self) -> Token:
        tok = self.next()
        if tok.kind not in ("atom", "string") or (tok.kind == "string" and not tok.value):
            raise self.fail(tok, ["identifier"])
        return tok

    # -- document -------------------------------------------------------------

    def document(self) -> OntologyDoc:
        self.expect("atom", "ontology")
        name = self.ident().value
        self.expect("punct", "{")
        concepts: list[Concept] = []
        relations: list[tuple[Relation, Token, Token]] = []
        units: list[UnitDecl] = []
        annotations: list[Annotation] = []
        while True:
            tok = self.peek()
            if tok.kind == "punct" and tok.value == "}":
                self.next()
                break
            if tok.kind == "atom" and tok.value == "concept":
                concepts.append(self.concept())
            elif tok.kind == "atom" and tok.value == "relation":
                relations.append(self.relation())
            elif tok.kind == "atom" and tok.value in ANNOTATION_KINDS:
                self.next()
                text = self.expect("string").value
                self.expect("punct", ";")
                annotations.append(Annotation(tok.value, text, self.span(tok)))
            elif tok.kind == "punct" and tok.value == "(":
                units.append(self.unitdecl())
            else:
                raise self.fail(tok, ["'concept'", "'relation'", "'('", "'}'", *(repr(k) for k in ANNOTATION_KINDS)])
        end = self.next()
        if end.kind != "eof":
            raise self.fail(end, ["end of input"])

        seen = {}
        for c in concepts:
            if c.id in seen:
                raise DuplicateConcept(f"concept {c.id!r} declared twice", c.span.line, c.span.col)
            seen[c.id] = c
        for rel, src_tok, tgt_tok in relations:
            for cid, t in ((rel.src, src_tok), (rel.tgt, tgt_tok)):
                if cid not in seen:
                    raise UndeclaredConcept(f"relation refers to undeclared concept {cid!r}", t.line, t.col)
        names = set()
        for u in units:
            key = " ".join(u.name.split()).lower()
            if key in names:
                raise OntologyError(f"unit {u.name!r} declared twice", u.span.line, u.span.col)
            names.add(key)
        return OntologyDoc(
            name,
            tuple(concepts),
            tuple(r for r, _, _ in relations),
            tuple(units),
            tuple(annotations),
            source=self.source,
        )

    def concept(self) -> Concept:
        kw = self.next()
        cid = self.ident().value
        desc = None
        if self.peek().kind == "string":
            desc = self.next().value
        tok = self.next()
        if not (tok.kind == "punct" and tok.value == ";"):
            raise self.fail(tok, ["';'", "string"] if desc is None else ["';'"])
        return Concept(cid, desc, self.span(kw))

    def relation(self):
        kw = self.next()
        kind = self.kind()
        src = self.ident()
        self.expect("arrow")
        tgt = self.ident()
        self.expect("punct", ";")
        return Relation(kind, src.value, tgt.value, self.span(kw)), src, tgt

    def kind(self) -> RelationKind:
        tok = self.next()
        if tok.kind != "atom":
            raise self.fail(tok, ["relation kind"])
        if tok.value == "custom":
            self.expect("punct", "(")
            label = self.ident().value
            self.expect("punct", ")")
            try:
                return RelationKind(label, custom=True)
            except UnknownRelationKind as exc:
                raise UnknownRelationKind(str(exc), tok.line, tok.col) from None
        name = KIND_ALIASES.get(tok.value, tok.value)
        if name not in BUILTIN_KINDS:
            raise UnknownRelationKind(
                f"unknown relation kind {tok.value!r}; use custom({tok.value}) for new kinds", tok.line, tok.col
            )
        return RelationKind(name)

    # -- unit declarations ----------------------------------------------------------

    def sexpr(self):
        """Parse one parenthesized form into nested lists of atom tokens."""
        self.expect("punct", "(")
        items = []
        while True:
            tok = self.peek()
            if tok.kind == "punct" and tok.value == ")":
                self.next()
                return items
            if tok.kind == "punct" and tok.value == "(":
                items.append(self.sexpr())
            elif tok.kind == "atom":
                items.append(self.next())
            else:
                raise self.fail(tok, ["atom", "'('", "')'"])

    def unitdecl(self) -> UnitDecl:
        start = self.peek()
        form = self.sexpr()
        if not form or not isinstance(form[0], Token) or form[0].value != "defobject":
            raise DslSyntaxError("expected a defobject form", start.line, start.col, ["'defobject'"])
        if len(form) < 3:
            raise DslSyntaxError("defobject needs a name and a body", start.line, start.col)
        name = self._atoms_name(form[1:-1], start)
        body = form[-1]
        alias = None
        if isinstance(body, list) and body and isinstance(body[0], Token) and body[0].value == "=":
            if len(body) < 3:
                raise DslSyntaxError("(= name expr) needs a name and an expression", body[0].line, body[0].col)
            alias = self._atoms_name(body[1:-1], body[0])
            body = body[-1]
        return UnitDecl(name, self.unit_expr(body, start), alias, self.span(start))

    @staticmethod
    def _atoms_name(items, where: Token) -> str:
        if not items or not all(isinstance(t, Token) for t in items):
            raise DslSyntaxError("unit names are sequences of atoms", where.line, where.col)
        return " ".join(t.value for t in items)

    def unit_expr(self, form, where: Token):
        if isinstance(form, Token):
            if _is_int(form.value):
                raise DslSyntaxError("a number is not a unit expression", form.line, form.col)
            return UnitRef(form.value)
        if not form or not isinstance(form[0], Token):
            raise DslSyntaxError("empty unit expression", where.line, where.col, ["'basic-unit'", "'unit*'", "'unit^'"])
        head = form[0]
        if head.value == "basic-unit":
            if len(form) != 2 or not isinstance(form[1], Token):
                raise DslSyntaxError("(basic-unit NAME) takes one name", head.line, head.col)
            return BasicUnit(form[1].value)
        if head.value == "unit*":
            return UnitProduct(tuple(self.unit_expr(f, head) for f in form[1:]))
        if head.value == "unit^":
            if len(form) != 3 or not isinstance(form[2], Token) or not _is_int(form[2].value):
                raise DslSyntaxError("(unit^ EXPR INTEGER) needs an integer exponent", head.line, head.col)
            return UnitPower(self.unit_expr(form[1], head), int(form[2].value))
        raise DslSyntaxError(
            f"unknown unit operator {head.value!r}", head.line, head.col, ["'basic-unit'", "'unit*'", "'unit^'"]
        )


def _is_int(s: str) -> bool:
    return re.fullmatch(r"[+-]?\d+", s) is not None


def parse_ontology(text: str, source: Optional[str] = None) -> OntologyDoc:
    """Parse one ``ontology NAME { ... }`` document."""
    return _Parser(text, source).document()


def parse_file(path) -> OntologyDoc:
    from pathlib import Path

    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise IoFailure(f"cannot read {p}: {exc}") from exc
    return parse_ontology(text, str(p))


# -- serialization -------------------------------------------------------------

_BARE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.:+@'\-]*")


def quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t") + '"'


def fmt_ident(s: str) -> str:
    if _BARE.fullmatch(s) and "->" not in s:
        return s
    return quote(s)


def fmt_unit_expr(e) -> str:
    if isinstance(e, UnitRef):
        return e.name
    if isinstance(e, BasicUnit):
        return f"(basic-unit {e.name})"
    if isinstance(e, UnitProduct):
        return "(" + " ".join(["unit*"] + [fmt_unit_expr(f) for f in e.factors]) + ")"
    if isinstance(e, UnitPower):
        return f"(unit^ {fmt_unit_expr(e.base)} {e.exponent})"
    raise TypeError(f"not a unit expression: {e!r}")


def fmt_unit_decl(u: UnitDecl) -> str:
    body = fmt_unit_expr(u.body)
    if u.alias is not None:
        body = f"(= {u.alias} {body})"
    return f"(defobject {u.name} {body})"


def _fmt_kind(k: RelationKind) -> str:
    return f"custom({fmt_ident(k.name)})" if k.custom else k.name


def serialize_ontology(doc: OntologyDoc) -> str:
    """Canonical text: concepts, relations, units, annotations, each in declared order."""
    lines = []
    for c in doc.concepts:
        desc = f" {quote(c.description)}" if c.description is not None else ""
        lines.append(f"concept {fmt_ident(c.id)}{desc};")
    for r in doc.relations:
        lines.append(f"relation {_fmt_kind(r.kind)} {fmt_ident(r.src)} -> {fmt_ident(r.tgt)};")
    for u in doc.units:
        lines.append(fmt_unit_decl(u))
    for a in doc.annotations:
        lines.append(f"{a.kind} {quote(a.text)};")
    head = f"ontology {fmt_ident(doc.name)} {{"
    if not lines:
        return head + " }\n"
    return head + "\n" + "".join(f"  {line}\n" for line in lines) + "}\n"
