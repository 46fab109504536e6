"""Knowledge bases of ontologies: a directory holding ``manifest.json`` and one
``.onto`` file per ontology, plus pushout-based merging of two entries.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Optional

from filelock import FileLock

from .errors import DigestMismatch, DuplicateName, IoFailure, SharedConceptMissing, UnknownOntology
from .onto.compile import ontology_to_quiver, quiver_to_ontology
from .onto.model import OntologyDoc
from .onto.parser import parse_ontology, serialize_ontology
from .onto.units import unit_key
from .quiver import Arrow, GraphMorphism, Quiver, Vertex, pushout

MANIFEST = "manifest.json"
LOCK = ".lock"


@dataclass(frozen=True)
class KbEntry:
    name: str
    path: str
    digest: str


@dataclass(frozen=True)
class KbManifest:
    name: str
    entries: tuple[KbEntry, ...] = ()
    created: str = ""
    modified: str = ""
    root: Optional[Path] = field(default=None, compare=False)

    def entry(self, name: str) -> KbEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise UnknownOntology(f"no ontology named {name!r} in knowledge base {self.name!r}")

    @property
    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "created": self.created,
            "modified": self.modified,
            "entries": [{"name": e.name, "path": e.path, "digest": e.digest} for e in self.entries],
        }


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def manifest_text(kb: KbManifest) -> str:
    return json.dumps(kb.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _atomic_write(path: Path, data: bytes) -> None:
    try:
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def _lock(root: Path) -> FileLock:
    return FileLock(str(root / LOCK), timeout=30)


def save_manifest(kb: KbManifest) -> None:
    if kb.root is None:
        raise IoFailure("knowledge base has no directory")
    _atomic_write(kb.root / MANIFEST, manifest_text(kb).encode("utf-8"))


def kb_init(root, name: Optional[str] = None, now: Optional[str] = None) -> KbManifest:
    """Create an empty knowledge base directory."""
    root = Path(root)
    try:
        root.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"cannot create {root}: {exc}") from exc
    if (root / MANIFEST).exists():
        raise DuplicateName(f"{root} already holds a knowledge base")
    stamp = now or _now()
    kb = KbManifest(name or root.name, (), stamp, stamp, root)
    with _lock(root):
        save_manifest(kb)
    return kb


def load_kb(root, verify: bool = True) -> KbManifest:
    """Read the manifest; with ``verify``, every entry's digest is recomputed."""
    root = Path(root)
    try:
        data = json.loads((root / MANIFEST).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise IoFailure(f"{root} is not a knowledge base (no {MANIFEST})") from None
    except (OSError, ValueError) as exc:
        raise IoFailure(f"cannot read {root / MANIFEST}: {exc}") from exc
    kb = KbManifest(
        data["name"],
        tuple(KbEntry(e["name"], e["path"], e["digest"]) for e in data.get("entries", ())),
        data.get("created", ""),
        data.get("modified", ""),
        root,
    )
    if verify:
        for e in kb.entries:
            try:
                actual = digest_bytes((root / e.path).read_bytes())
            except OSError as exc:
                raise IoFailure(f"cannot read {e.path}: {exc}") from exc
            if actual != e.digest:
                raise DigestMismatch(f"{e.path} does not match its recorded digest")
    return kb


def _slug(name: str, taken: Iterable[str]) -> str:
    base = re.sub(r"[^A-Za-z0-9_.-]+", "_", name).strip("._") or "ontology"
    taken = set(taken)
    candidate = f"{base}.onto"
    n = 2
    while candidate in taken:
        candidate = f"{base}_{n}.onto"
        n += 1
    return candidate


def kb_add(kb: KbManifest, doc: OntologyDoc, now: Optional[str] = None) -> KbManifest:
    """Store ``doc`` (canonically serialized) and append it to the manifest."""
    if kb.root is None:
        raise IoFailure("knowledge base has no directory")
    if doc.name in kb.names:
        raise DuplicateName(f"an ontology named {doc.name!r} is already in the knowledge base")
    data = serialize_ontology(doc).encode("utf-8")
    with _lock(kb.root):
        current = load_kb(kb.root, verify=False)
        if doc.name in current.names:
            raise DuplicateName(f"an ontology named {doc.name!r} is already in the knowledge base")
        path = _slug(doc.name, (e.path for e in current.entries))
        _atomic_write(kb.root / path, data)
        new = KbManifest(
            current.name,
            current.entries + (KbEntry(doc.name, path, digest_bytes(data)),),
            current.created,
            now or _now(),
            kb.root,
        )
        save_manifest(new)
    return new


def kb_get(kb: KbManifest, name: str) -> OntologyDoc:
    e = kb.entry(name)
    path = kb.root / e.path
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return parse_ontology(text, str(path))


def merge_ontologies(d1: OntologyDoc, d2: OntologyDoc, shared: Iterable[str], name: Optional[str] = None) -> OntologyDoc:
    """Glue two ontologies along the shared concepts by a quiver pushout.

    The gluing quiver holds the shared concepts and, for each relation that
    both sides state between shared concepts, as many copies as both sides
    have in common; relations therefore merge as a multiset union.
    """
    shared = list(dict.fromkeys(shared))
    ids1, ids2 = set(d1.concept_ids), set(d2.concept_ids)
    missing = [c for c in shared if c not in ids1 or c not in ids2]
    if missing:
        raise SharedConceptMissing(f"shared concepts missing from one side: {missing}")
    q1, q2 = ontology_to_quiver(d1), ontology_to_quiver(d2)
    shared_set = set(shared)

    def between_shared(q: Quiver):
        out = defaultdict(list)
        for a in q.arrows:
            if a.src in shared_set and a.tgt in shared_set:
                out[a.label, a.src, a.tgt].append(a.id)
        return out

    b1, b2 = between_shared(q1), between_shared(q2)
    glue_arrows, amap1, amap2 = [], {}, {}
    for key in sorted(set(b1) & set(b2)):
        for k, (x, y) in enumerate(zip(b1[key], b2[key])):
            gid = f"g{len(glue_arrows)}"
            glue_arrows.append(Arrow(gid, key[1], key[2], key[0]))
            amap1[gid], amap2[gid] = x, y
    g0 = Quiver(tuple(Vertex(c, c) for c in shared), tuple(glue_arrows))
    ident = {c: c for c in shared}
    f = GraphMorphism(g0, q1, ident, amap1)
    g = GraphMorphism(g0, q2, ident, amap2)
    g3, inj1, inj2 = pushout(f, g)

    descriptions = {}
    for doc, inj in ((d2, inj2), (d1, inj1)):
        for c in doc.concepts:
            if c.description is not None:
                descriptions[inj.vertex_map[c.id]] = c.description
    units = list(d1.units)
    seen_units = {unit_key(u.name) for u in units}
    units += [u for u in d2.units if unit_key(u.name) not in seen_units]
    annotations = list(d1.annotations)
    annotations += [a for a in d2.annotations if a not in annotations]
    return quiver_to_ontology(
        g3,
        name or f"{d1.name}+{d2.name}",
        descriptions,
        units=tuple(units),
        annotations=tuple(annotations),
    )


def kb_merge(kb: KbManifest, name1: str, name2: str, shared: Iterable[str], name: Optional[str] = None) -> OntologyDoc:
    return merge_ontologies(kb_get(kb, name1), kb_get(kb, name2), shared, name)


def relation_multiset(doc: OntologyDoc) -> Counter:
    return Counter((r.kind, r.src, r.tgt) for r in doc.relations)
