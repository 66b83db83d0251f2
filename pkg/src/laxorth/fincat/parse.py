"""Reader for the line-oriented category description format.

::

    category C            # or: category C free   (close an acyclic graph freely)
      object x
      arrow u : x -> y
      compose g f = h
    end
    functor F : C -> D
      object x |-> y
      arrow u |-> v
    end
    nattrans a : F => G
      at x = u
    end

Identities are implicit and named ``id_<object>``.  Functors and
transformations may refer to categories from the built-in catalogue
(``1``, ``2``, ``3``, ``empty``, ...) that the file does not define.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import CategoryError, DuplicateId, ParseError, UnknownId
from .constructions import free_category
from .core import FinCategory, Functor, NatTrans, build_category, make_functor, make_nat_trans


@dataclass
class Document:
    categories: dict[str, FinCategory] = field(default_factory=dict)
    functors: dict[str, Functor] = field(default_factory=dict)
    nattrans: dict[str, NatTrans] = field(default_factory=dict)

    def merge(self, other: "Document") -> None:
        for attr in ("categories", "functors", "nattrans"):
            mine, theirs = getattr(self, attr), getattr(other, attr)
            for k, v in theirs.items():
                if k in mine:
                    raise DuplicateId(f"{k!r} defined in more than one input")
                mine[k] = v


_HEADERS = {
    "category": re.compile(r"^category\s+(\S+)(\s+free)?$"),
    "functor": re.compile(r"^functor\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$"),
    "nattrans": re.compile(r"^nattrans\s+(\S+)\s*:\s*(\S+)\s*=>\s*(\S+)$"),
}
_LINES = {
    "category": {
        "object": re.compile(r"^object\s+(\S+)$"),
        "arrow": re.compile(r"^arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$"),
        "compose": re.compile(r"^compose\s+(\S+)\s+(\S+)\s*=\s*(\S+)$"),
    },
    "functor": {
        "object": re.compile(r"^object\s+(\S+)\s*\|->\s*(\S+)$"),
        "arrow": re.compile(r"^arrow\s+(\S+)\s*\|->\s*(\S+)$"),
    },
    "nattrans": {
        "at": re.compile(r"^at\s+(\S+)\s*=\s*(\S+)$"),
    },
}


def _strip(line: str) -> str:
    i = line.find("#")
    return (line if i < 0 else line[:i]).strip()


def parse_text(text: str, builtins: dict[str, FinCategory] | None = None) -> Document:
    """Parse and validate every block of ``text``."""
    if builtins is None:
        from .catalog import catalogue

        builtins = catalogue()
    doc = Document()
    lines = text.splitlines()
    i = 0
    names: dict[str, int] = {}
    while i < len(lines):
        ln = i + 1
        s = _strip(lines[i])
        i += 1
        if not s:
            continue
        kind = s.split()[0]
        if kind not in _HEADERS:
            raise ParseError(f"unknown block keyword {kind!r}", ln)
        m = _HEADERS[kind].match(s)
        if not m:
            raise ParseError(f"malformed {kind} header", ln)
        name = m.group(1)
        if name in names:
            raise DuplicateId(f"{name!r} already defined at line {names[name]}", ln)
        names[name] = ln
        body: list[tuple[int, str, tuple[str, ...]]] = []
        while True:
            if i >= len(lines):
                raise ParseError(f"{kind} {name!r} has no matching 'end'", ln)
            s2 = _strip(lines[i])
            i += 1
            if not s2:
                continue
            if s2 == "end":
                break
            key = s2.split()[0]
            pat = _LINES[kind].get(key)
            if pat is None:
                raise ParseError(f"unknown key {key!r} in {kind} block", i)
            m2 = pat.match(s2)
            if not m2:
                raise ParseError(f"malformed {key} line", i)
            body.append((i, key, m2.groups()))
        try:
            if kind == "category":
                doc.categories[name] = _category(name, bool(m.group(2)), body)
            elif kind == "functor":
                src = _lookup_cat(doc, builtins, m.group(2), ln)
                tgt = _lookup_cat(doc, builtins, m.group(3), ln)
                doc.functors[name] = _functor(name, src, tgt, body)
            else:
                F = _lookup(doc.functors, m.group(2), "functor", ln)
                G = _lookup(doc.functors, m.group(3), "functor", ln)
                doc.nattrans[name] = _nattrans(name, F, G, body)
        except CategoryError as e:
            if e.line is None:
                raise type(e)(str(e), ln) from None
            raise
    return doc


def _lookup_cat(doc: Document, builtins, name: str, ln: int) -> FinCategory:
    if name in doc.categories:
        return doc.categories[name]
    if name in builtins:
        return builtins[name]
    raise UnknownId(f"unknown category {name!r}", ln)


def _lookup(table, name: str, what: str, ln: int):
    if name not in table:
        raise UnknownId(f"unknown {what} {name!r}", ln)
    return table[name]


def _category(name: str, free: bool, body) -> FinCategory:
    objects: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    composites: list[tuple[str, str, str]] = []
    where: dict = {}
    for ln, key, g in body:
        if key == "object":
            if ("object", g[0]) in where:
                raise DuplicateId(f"{name}: duplicate object {g[0]!r}", ln)
            where[("object", g[0])] = ln
            objects.append(g[0])
        elif key == "arrow":
            if ("arrow", g[0]) in where:
                raise DuplicateId(f"{name}: duplicate arrow {g[0]!r}", ln)
            where[("arrow", g[0])] = ln
            arrows.append(g)
        else:
            where.setdefault(("compose", g[0], g[1]), ln)
            composites.append(g)
    if free:
        if composites:
            raise ParseError(f"{name}: a free category takes no compose lines", where[("compose",) + composites[0][:2]])
        return free_category(name, objects, arrows)
    return build_category(name, objects, arrows, composites, lines=where)


def _functor(name: str, src: FinCategory, tgt: FinCategory, body) -> Functor:
    om: dict[str, str] = {}
    am: dict[str, str] = {}
    where: dict = {}
    for ln, key, (a, b) in body:
        table = om if key == "object" else am
        if a in table:
            raise DuplicateId(f"{name}: {key} {a!r} mapped twice", ln)
        table[a] = b
        where[(key, a)] = ln
    return make_functor(src, tgt, om, am, name=name, lines=where)


def _nattrans(name: str, F: Functor, G: Functor, body) -> NatTrans:
    comps: dict[str, str] = {}
    where: dict = {}
    for ln, _, (x, a) in body:
        if x in comps:
            raise DuplicateId(f"{name}: component at {x!r} given twice", ln)
        comps[x] = a
        where[("at", x)] = ln
    return make_nat_trans(F, G, comps, name=name, lines=where)


def parse_files(paths) -> Document:
    doc = Document()
    for p in paths:
        doc.merge(parse_text(Path(p).read_text(encoding="utf-8")))
    return doc


def validate_category(text: str) -> FinCategory:
    """Parse a text holding exactly one category block."""
    doc = parse_text(text)
    if len(doc.categories) != 1:
        raise ParseError(f"expected one category, found {len(doc.categories)}")
    return next(iter(doc.categories.values()))
