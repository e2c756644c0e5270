"""A small declaration language for orthogonal categories and their algebras.

Example::

    # the non-factorizing wedge
    category vee
    object c1, c2, d
    morphism g1 : c1 -> d
    morphism g2 : c2 -> d
    orth (g1, g2)
    orth (g2, g1)
    subcategory C of vee { c1, c2 } via j
    monoid Z2 { elems e a; unit e; table e a | a e }
    monfunctor B on C { c1 -> Z2; c2 -> Z2 }

Object, morphism, compose and orth lines belong to the most recent
``category`` (or to an implicit category ``main``). Identities ``id_X`` are
declared along with each object and composites involving identities are
filled in by the loader. In words, ``1`` stands for the empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from . import fixtures as fixture_library
from .algebra import MonFunctor
from .errors import DslError, DuplicateDeclaration, ParseError, UndeclaredIdentifier
from .extension import GroupAction
from .monoid import FiniteMonoid, PresentedMonoid
from .orthocat import OrthCategory, OrthFunctor, build_category, full_subcategory

# ---------------------------------------------------------------- syntax tree

Span = tuple[int, int]


@dataclass(frozen=True)
class CategoryDecl:
    name: str
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class FixtureDecl:
    name: str
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ObjectDecl:
    names: tuple[str, ...]
    category: str = ""
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class MorphismDecl:
    name: str
    source: str
    target: str
    category: str = ""
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ComposeDecl:
    g: str
    f: str
    result: str
    category: str = ""
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class OrthDecl:
    f1: str
    f2: str
    category: str = ""
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class SubcategoryDecl:
    name: str
    parent: str
    objects: tuple[str, ...]
    functor: str
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class FunctorDecl:
    name: str
    source: str
    target: str
    mapping: tuple[tuple[str, str], ...]
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class MonoidDecl:
    name: str
    elements: tuple[str, ...]
    unit: str
    table: tuple[tuple[str, ...], ...]
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class PresentedDecl:
    name: str
    generators: tuple[str, ...]
    relations: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class MonFunctorDecl:
    name: str
    category: str
    carriers: tuple[tuple[str, str], ...]
    maps: tuple[tuple[str, tuple[tuple[str, tuple[str, ...]], ...]], ...]
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ActionDecl:
    name: str
    algebra: str
    group: str
    entries: tuple[tuple[str, str, tuple[tuple[str, str], ...]], ...]
    span: Span = field(default=(0, 0), compare=False)


Decl = (
    CategoryDecl
    | FixtureDecl
    | ObjectDecl
    | MorphismDecl
    | ComposeDecl
    | OrthDecl
    | SubcategoryDecl
    | FunctorDecl
    | MonoidDecl
    | PresentedDecl
    | MonFunctorDecl
    | ActionDecl
)


@dataclass(frozen=True)
class DslDocument:
    decls: tuple = ()


# ---------------------------------------------------------------- tokens

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<arrow>->)|(?P<ident>[A-Za-z0-9_][A-Za-z0-9_']*)"
    r"|(?P<sym>[:.=(),{};|\[\]@])"
)

KEYWORDS = {
    "category",
    "fixture",
    "object",
    "morphism",
    "compose",
    "orth",
    "subcategory",
    "functor",
    "monoid",
    "presented",
    "monfunctor",
    "action",
}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ident":
            tokens.append(Token("ident", chunk, line, col))
        elif kind in ("arrow", "sym"):
            tokens.append(Token(chunk, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.category = ""

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, *expected: str) -> None:
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(
            f"expected {' or '.join(expected)}, found {found}", t.line, t.column, expected
        )

    def accept(self, kind: str) -> Token | None:
        if self.tok.kind == kind:
            t = self.tok
            self.pos += 1
            return t
        return None

    def expect(self, kind: str) -> Token:
        t = self.accept(kind)
        if t is None:
            self.fail(repr(kind) if kind != "ident" else "an identifier")
        return t

    def ident(self) -> str:
        if self.tok.kind == "ident" and self.tok.text in KEYWORDS:
            self.fail("an identifier")
        return self.expect("ident").text

    def keyword(self, word: str) -> None:
        if self.tok.kind != "ident" or self.tok.text != word:
            self.fail(repr(word))
        self.pos += 1

    def at_keyword(self, word: str) -> bool:
        return self.tok.kind == "ident" and self.tok.text == word

    def ident_list(self, sep: str) -> tuple[str, ...]:
        out = [self.ident()]
        while self.accept(sep):
            out.append(self.ident())
        return tuple(out)

    def word(self, stop: tuple[str, ...]) -> tuple[str, ...]:
        """Identifiers up to one of the ``stop`` token kinds; ``1`` is the empty word."""
        out = []
        while self.tok.kind == "ident" and self.tok.text not in KEYWORDS:
            out.append(self.tok.text)
            self.pos += 1
        if not out:
            self.fail("a word")
        if self.tok.kind not in stop:
            self.fail(*(repr(s) for s in stop))
        return () if out == ["1"] else tuple(out)

    def parse(self) -> DslDocument:
        decls = []
        while self.tok.kind != "eof":
            decls.append(self.decl())
        return DslDocument(tuple(decls))

    def decl(self):
        t = self.tok
        span = (t.line, t.column)
        if t.kind != "ident" or t.text not in KEYWORDS:
            self.fail("a declaration keyword")
        self.pos += 1
        method = getattr(self, "_" + t.text)
        return method(span)

    def _category(self, span):
        name = self.ident()
        self.category = name
        return CategoryDecl(name, span)

    def _fixture(self, span):
        name = self.ident()
        self.category = name
        return FixtureDecl(name, span)

    def _object(self, span):
        return ObjectDecl(self.ident_list(","), self.category, span)

    def _morphism(self, span):
        name = self.ident()
        self.expect(":")
        src = self.ident()
        self.expect("->")
        return MorphismDecl(name, src, self.ident(), self.category, span)

    def _compose(self, span):
        g = self.ident()
        self.expect(".")
        f = self.ident()
        self.expect("=")
        return ComposeDecl(g, f, self.ident(), self.category, span)

    def _orth(self, span):
        self.expect("(")
        f1 = self.ident()
        self.expect(",")
        f2 = self.ident()
        self.expect(")")
        return OrthDecl(f1, f2, self.category, span)

    def _subcategory(self, span):
        name = self.ident()
        self.keyword("of")
        parent = self.ident()
        self.expect("{")
        objs = self.ident_list(",")
        self.expect("}")
        self.keyword("via")
        return SubcategoryDecl(name, parent, objs, self.ident(), span)

    def _entries(self, entry) -> tuple:
        """``{ entry ; entry ; ... }`` allowing an empty block and a trailing ``;``."""
        self.expect("{")
        out = []
        while not self.accept("}"):
            out.append(entry())
            if not self.accept(";"):
                if self.tok.kind != "}":
                    self.fail("';'", "'}'")
        return tuple(out)

    def _functor(self, span):
        name = self.ident()
        self.expect(":")
        src = self.ident()
        self.expect("->")
        tgt = self.ident()

        def entry():
            a = self.ident()
            self.expect("->")
            return (a, self.ident())

        return FunctorDecl(name, src, tgt, self._entries(entry), span)

    def _monoid(self, span):
        name = self.ident()
        self.expect("{")
        self.keyword("elems")
        elems = []
        while self.tok.kind == "ident":
            elems.append(self.ident())
        self.expect(";")
        self.keyword("unit")
        unit = self.ident()
        self.expect(";")
        self.keyword("table")
        rows = []
        while True:
            row = []
            while self.tok.kind == "ident":
                row.append(self.ident())
            rows.append(tuple(row))
            if not self.accept("|"):
                break
        self.accept(";")
        self.expect("}")
        return MonoidDecl(name, tuple(elems), unit, tuple(rows), span)

    def _presented(self, span):
        name = self.ident()
        self.expect("{")
        self.keyword("gens")
        gens = []
        while self.tok.kind == "ident":
            gens.append(self.ident())
        rels = []
        while self.accept(";"):
            if self.tok.kind == "}":
                break
            self.keyword("rel")
            lhs = self.word(("=",))
            self.expect("=")
            rels.append((lhs, self.word((";", "}"))))
        self.expect("}")
        return PresentedDecl(name, tuple(gens), tuple(rels), span)

    def _monfunctor(self, span):
        name = self.ident()
        self.keyword("on")
        cat = self.ident()
        carriers, maps = [], []

        def entry():
            a = self.ident()
            self.expect("->")
            if self.accept("["):
                images = []
                if not self.accept("]"):
                    while True:
                        x = self.ident()
                        self.expect("->")
                        images.append((x, self.word((",", "]"))))
                        if self.accept("]"):
                            break
                        self.expect(",")
                maps.append((a, tuple(images)))
            else:
                carriers.append((a, self.ident()))

        self._entries(entry)
        return MonFunctorDecl(name, cat, tuple(carriers), tuple(maps), span)

    def _action(self, span):
        name = self.ident()
        self.keyword("on")
        algebra = self.ident()
        self.keyword("by")
        group = self.ident()

        def entry():
            s = self.ident()
            self.expect("@")
            obj = self.ident()
            self.expect(":")
            pairs = []
            while True:
                a = self.ident()
                self.expect("->")
                pairs.append((a, self.ident()))
                if not self.accept(","):
                    break
            return (s, obj, tuple(pairs))

        return ActionDecl(name, algebra, group, self._entries(entry), span)


def parse(text: str) -> DslDocument:
    """Parse and check that every identifier is declared before use."""
    doc = _Parser(text).parse()
    _Resolver().check(doc)
    return doc


# ---------------------------------------------------------------- name resolution


class _Resolver:
    def __init__(self):
        self.toplevel: dict[str, str] = {}
        self.cat_names: dict[str, dict[str, str]] = {}
        self.cat_objects: dict[str, set[str]] = {}
        self.cat_morphisms: dict[str, dict[str, tuple[str, str]]] = {}
        self.monoid_elements: dict[str, set[str]] = {}
        self.monfunctor_cat: dict[str, str] = {}

    def declare_top(self, name: str, kind: str, span: Span) -> None:
        if name in self.toplevel:
            raise DuplicateDeclaration(f"{name} is already declared", *span)
        self.toplevel[name] = kind

    def need(self, name: str, kinds: tuple[str, ...], span: Span) -> None:
        if self.toplevel.get(name) not in kinds:
            raise UndeclaredIdentifier(f"{' or '.join(kinds)} {name} is not declared", *span)

    def ensure_category(self, name: str, span: Span) -> str:
        name = name or "main"
        if name not in self.cat_names:
            self.declare_top(name, "category", span)
            self.cat_names[name] = {}
            self.cat_objects[name] = set()
            self.cat_morphisms[name] = {}
        return name

    def add_object(self, cat: str, obj: str, span: Span) -> None:
        names = self.cat_names[cat]
        for n, kind in ((obj, "object"), (f"id_{obj}", "morphism")):
            if n in names:
                raise DuplicateDeclaration(f"{n} is already declared in {cat}", *span)
            names[n] = kind
        self.cat_objects[cat].add(obj)
        self.cat_morphisms[cat][f"id_{obj}"] = (obj, obj)

    def need_in(self, cat: str, name: str, kind: str, span: Span) -> None:
        if self.cat_names[cat].get(name) != kind:
            raise UndeclaredIdentifier(f"{kind} {name} is not declared in {cat}", *span)

    def check(self, doc: DslDocument) -> None:
        for d in doc.decls:
            getattr(self, "_" + type(d).__name__)(d)

    def _CategoryDecl(self, d):
        if d.name in self.toplevel:
            raise DuplicateDeclaration(f"{d.name} is already declared", *d.span)
        self.ensure_category(d.name, d.span)

    def _FixtureDecl(self, d):
        library = fixture_library.all_fixtures()
        if d.name not in library:
            raise UndeclaredIdentifier(f"no built-in fixture named {d.name}", *d.span)
        self.ensure_category(d.name, d.span)
        cat = library[d.name].dbar.cat
        for o in cat.objects:
            self.cat_names[d.name][o] = "object"
            self.cat_objects[d.name].add(o)
        for f, st in cat.morphisms.items():
            self.cat_names[d.name][f] = "morphism"
            self.cat_morphisms[d.name][f] = st

    def _ObjectDecl(self, d):
        cat = self.ensure_category(d.category, d.span)
        for o in d.names:
            self.add_object(cat, o, d.span)

    def _MorphismDecl(self, d):
        cat = self.ensure_category(d.category, d.span)
        self.need_in(cat, d.source, "object", d.span)
        self.need_in(cat, d.target, "object", d.span)
        if d.name in self.cat_names[cat]:
            raise DuplicateDeclaration(f"{d.name} is already declared in {cat}", *d.span)
        self.cat_names[cat][d.name] = "morphism"
        self.cat_morphisms[cat][d.name] = (d.source, d.target)

    def _ComposeDecl(self, d):
        cat = self.ensure_category(d.category, d.span)
        for f in (d.g, d.f, d.result):
            self.need_in(cat, f, "morphism", d.span)

    def _OrthDecl(self, d):
        cat = self.ensure_category(d.category, d.span)
        for f in (d.f1, d.f2):
            self.need_in(cat, f, "morphism", d.span)

    def _SubcategoryDecl(self, d):
        self.need(d.parent, ("category",), d.span)
        for o in d.objects:
            self.need_in(d.parent, o, "object", d.span)
        self.ensure_category(d.name, d.span)
        keep = set(d.objects)
        for o in d.objects:
            self.cat_names[d.name][o] = "object"
            self.cat_objects[d.name].add(o)
        for f, (s, t) in self.cat_morphisms[d.parent].items():
            if s in keep and t in keep:
                self.cat_names[d.name][f] = "morphism"
                self.cat_morphisms[d.name][f] = (s, t)
        self.declare_top(d.functor, "functor", d.span)

    def _FunctorDecl(self, d):
        self.need(d.source, ("category",), d.span)
        self.need(d.target, ("category",), d.span)
        self.declare_top(d.name, "functor", d.span)
        for a, b in d.mapping:
            kind = self.cat_names[d.source].get(a)
            if kind is None:
                raise UndeclaredIdentifier(f"{a} is not declared in {d.source}", *d.span)
            self.need_in(d.target, b, kind, d.span)

    def _MonoidDecl(self, d):
        self.declare_top(d.name, "monoid", d.span)
        self.monoid_elements[d.name] = set(d.elements)
        for x in (d.unit,) + tuple(x for row in d.table for x in row):
            if x not in self.monoid_elements[d.name]:
                raise UndeclaredIdentifier(f"element {x} is not declared in {d.name}", *d.span)

    def _PresentedDecl(self, d):
        self.declare_top(d.name, "monoid", d.span)
        self.monoid_elements[d.name] = set(d.generators)
        for lhs, rhs in d.relations:
            for x in lhs + rhs:
                if x not in self.monoid_elements[d.name]:
                    raise UndeclaredIdentifier(f"generator {x} is not declared in {d.name}", *d.span)

    def _MonFunctorDecl(self, d):
        self.need(d.category, ("category",), d.span)
        self.declare_top(d.name, "monfunctor", d.span)
        self.monfunctor_cat[d.name] = d.category
        for obj, monoid in d.carriers:
            self.need_in(d.category, obj, "object", d.span)
            self.need(monoid, ("monoid",), d.span)
        for f, _ in d.maps:
            self.need_in(d.category, f, "morphism", d.span)

    def _ActionDecl(self, d):
        self.need(d.algebra, ("monfunctor",), d.span)
        self.need(d.group, ("monoid",), d.span)
        self.declare_top(d.name, "action", d.span)
        cat = self.monfunctor_cat[d.algebra]
        for s, obj, _ in d.entries:
            if s not in self.monoid_elements[d.group]:
                raise UndeclaredIdentifier(f"element {s} is not declared in {d.group}", *d.span)
            self.need_in(cat, obj, "object", d.span)


# ---------------------------------------------------------------- printer


def _word(w: tuple[str, ...]) -> str:
    return " ".join(w) if w else "1"


def print_decl(d) -> str:
    if isinstance(d, CategoryDecl):
        return f"category {d.name}"
    if isinstance(d, FixtureDecl):
        return f"fixture {d.name}"
    if isinstance(d, ObjectDecl):
        return "object " + ", ".join(d.names)
    if isinstance(d, MorphismDecl):
        return f"morphism {d.name} : {d.source} -> {d.target}"
    if isinstance(d, ComposeDecl):
        return f"compose {d.g} . {d.f} = {d.result}"
    if isinstance(d, OrthDecl):
        return f"orth ({d.f1}, {d.f2})"
    if isinstance(d, SubcategoryDecl):
        return f"subcategory {d.name} of {d.parent} {{ {', '.join(d.objects)} }} via {d.functor}"
    if isinstance(d, FunctorDecl):
        body = "; ".join(f"{a} -> {b}" for a, b in d.mapping)
        return f"functor {d.name} : {d.source} -> {d.target} {{ {body} }}"
    if isinstance(d, MonoidDecl):
        rows = " | ".join(" ".join(r) for r in d.table)
        return f"monoid {d.name} {{ elems {' '.join(d.elements)}; unit {d.unit}; table {rows} }}"
    if isinstance(d, PresentedDecl):
        parts = ["gens " + " ".join(d.generators) if d.generators else "gens"]
        parts += [f"rel {_word(l)} = {_word(r)}" for l, r in d.relations]
        return f"presented {d.name} {{ {'; '.join(parts)} }}"
    if isinstance(d, MonFunctorDecl):
        parts = [f"{o} -> {m}" for o, m in d.carriers]
        for f, images in d.maps:
            inner = ", ".join(f"{x} -> {_word(w)}" for x, w in images)
            parts.append(f"{f} -> [{inner}]")
        return f"monfunctor {d.name} on {d.category} {{ {'; '.join(parts)} }}"
    if isinstance(d, ActionDecl):
        parts = [
            f"{s} @ {o} : " + ", ".join(f"{a} -> {b}" for a, b in pairs) for s, o, pairs in d.entries
        ]
        return f"action {d.name} on {d.algebra} by {d.group} {{ {'; '.join(parts)} }}"
    raise TypeError(f"not a declaration: {d!r}")


def print_document(doc: DslDocument) -> str:
    return "".join(print_decl(d) + "\n" for d in doc.decls)


def iter_decls(doc: DslDocument, kind: type) -> Iterator:
    return (d for d in doc.decls if isinstance(d, kind))


# ---------------------------------------------------------------- loading


@dataclass
class Workspace:
    """Everything a document declares, built into library objects."""

    categories: dict[str, OrthCategory] = field(default_factory=dict)
    functors: dict[str, OrthFunctor] = field(default_factory=dict)
    embeddings: set[str] = field(default_factory=set)
    monoids: dict[str, FiniteMonoid | PresentedMonoid] = field(default_factory=dict)
    monfunctors: dict[str, MonFunctor] = field(default_factory=dict)
    actions: dict[str, tuple[GroupAction, str]] = field(default_factory=dict)


@dataclass
class _CategoryData:
    objects: list[str] = field(default_factory=list)
    morphisms: dict[str, tuple[str, str]] = field(default_factory=dict)
    composites: dict[tuple[str, str], str] = field(default_factory=dict)
    orth: list[tuple[str, str]] = field(default_factory=list)
    span: Span = (0, 0)
    fixture: str = ""


def load(doc: DslDocument | str) -> Workspace:
    if isinstance(doc, str):
        doc = parse(doc)
    ws = Workspace()
    data: dict[str, _CategoryData] = {}
    for d in doc.decls:
        if isinstance(d, (CategoryDecl, FixtureDecl)):
            data.setdefault(d.name, _CategoryData(span=d.span))
            if isinstance(d, FixtureDecl):
                data[d.name].fixture = d.name
        elif isinstance(d, (ObjectDecl, MorphismDecl, ComposeDecl, OrthDecl)):
            cd = data.setdefault(d.category or "main", _CategoryData(span=d.span))
            if isinstance(d, ObjectDecl):
                cd.objects.extend(d.names)
            elif isinstance(d, MorphismDecl):
                cd.morphisms[d.name] = (d.source, d.target)
            elif isinstance(d, ComposeDecl):
                key = (d.g, d.f)
                if cd.composites.get(key, d.result) != d.result:
                    raise DslError(f"{d.g} . {d.f} is given two values", *d.span)
                cd.composites[key] = d.result
            else:
                cd.orth.append((d.f1, d.f2))
    for name, cd in data.items():
        ws.categories[name] = _build_category(name, cd)

    for d in doc.decls:
        if isinstance(d, SubcategoryDecl):
            cbar, j = full_subcategory(ws.categories[d.parent], d.objects, d.name, d.functor)
            ws.categories[d.name] = cbar
            ws.functors[d.functor] = j
            ws.embeddings.add(d.functor)
        elif isinstance(d, FunctorDecl):
            ws.functors[d.name] = _build_functor(ws, d)
        elif isinstance(d, MonoidDecl):
            ws.monoids[d.name] = _build_monoid(d)
        elif isinstance(d, PresentedDecl):
            if "1" in d.generators:
                raise DslError("a generator may not be named 1", *d.span)
            ws.monoids[d.name] = PresentedMonoid(d.generators, d.relations, name=d.name)
        elif isinstance(d, MonFunctorDecl):
            ws.monfunctors[d.name] = _build_monfunctor(ws, d)
        elif isinstance(d, ActionDecl):
            ws.actions[d.name] = (_build_action(ws, d), d.algebra)
    return ws


def _build_category(name: str, cd: _CategoryData) -> OrthCategory:
    if cd.fixture:
        base = fixture_library.all_fixtures()[cd.fixture].dbar
        objects = list(base.objects) + cd.objects
        morphisms = {f: st for f, st in base.cat.morphisms.items() if f not in base.cat.identities.values()}
        morphisms.update(cd.morphisms)
        composites = dict(base.cat.composition)
        composites.update(cd.composites)
        orth = list(base.orth) + cd.orth
    else:
        objects, morphisms, composites, orth = cd.objects, cd.morphisms, cd.composites, cd.orth
    try:
        cat = build_category(objects, morphisms, composites)
    except ValueError as exc:
        raise DslError(f"category {name}: {exc}", *cd.span) from None
    return OrthCategory(cat, frozenset(orth), name)


def _build_functor(ws: Workspace, d: FunctorDecl) -> OrthFunctor:
    src, tgt = ws.categories[d.source], ws.categories[d.target]
    obj_map, mor_map = {}, {}
    for a, b in d.mapping:
        (obj_map if a in src.cat.identities else mor_map)[a] = b
    for o, i in src.cat.identities.items():
        if o in obj_map:
            mor_map.setdefault(i, tgt.cat.identities[obj_map[o]])
    missing = [x for x in list(src.objects) + list(src.cat.morphisms) if x not in obj_map and x not in mor_map]
    if missing:
        raise DslError(f"functor {d.name} does not map {', '.join(missing)}", *d.span)
    return OrthFunctor(src, tgt, obj_map, mor_map, d.name)


def _build_monoid(d: MonoidDecl) -> FiniteMonoid:
    n = len(d.elements)
    if len(set(d.elements)) != n:
        raise DslError(f"monoid {d.name} repeats an element", *d.span)
    if "1" in d.elements and d.unit != "1":
        raise DslError("only the unit may be named 1", *d.span)
    if len(d.table) != n or any(len(row) != n for row in d.table):
        raise DslError(f"monoid {d.name} needs a {n} by {n} table", *d.span)
    table = {(a, b): d.table[i][k] for i, a in enumerate(d.elements) for k, b in enumerate(d.elements)}
    m = FiniteMonoid(d.elements, table, d.unit, d.name)
    problems = m.violations()
    if problems:
        raise DslError(f"monoid {d.name}: {problems[0]}", *d.span)
    return m


def _build_monfunctor(ws: Workspace, d: MonFunctorDecl) -> MonFunctor:
    ocat = ws.categories[d.category]
    carriers = {o: ws.monoids[m] for o, m in d.carriers}
    missing = [o for o in ocat.objects if o not in carriers]
    if missing:
        raise DslError(f"monfunctor {d.name} has no carrier at {', '.join(missing)}", *d.span)
    maps = {}
    for f, images in d.maps:
        source, target = carriers[ocat.cat.src(f)], carriers[ocat.cat.tgt(f)]
        letters = set(_letters(target))
        given = {x for x, _ in images}
        unmapped = [x for x in _letters(source) if x not in given]
        if unmapped:
            raise DslError(f"{f} gives no image for {unmapped[0]}", *d.span)
        for x, w in images:
            if x not in set(_letters(source)):
                raise DslError(f"{x} is not a generator of the carrier at the source of {f}", *d.span)
            bad = [y for y in w if y not in letters]
            if bad:
                raise DslError(f"{bad[0]} is not a generator of the carrier at the target of {f}", *d.span)
        if isinstance(target, FiniteMonoid):
            maps[f] = {x: target.evaluate(w) for x, w in images}
        else:
            maps[f] = dict(images)
    try:
        return MonFunctor.build(ocat, carriers, maps, d.name)
    except ValueError as exc:
        raise DslError(f"monfunctor {d.name}: {exc}", *d.span) from None


def _letters(m: FiniteMonoid | PresentedMonoid) -> tuple:
    return m.elements if isinstance(m, FiniteMonoid) else m.alphabet


def _build_action(ws: Workspace, d: ActionDecl) -> GroupAction:
    group = ws.monoids[d.group]
    if not isinstance(group, FiniteMonoid):
        raise DslError(f"{d.group} must be a finite monoid", *d.span)
    A = ws.monfunctors[d.algebra]
    action = {}
    for s in group.elements:
        for o, m in A.carriers.items():
            if isinstance(m, FiniteMonoid):
                action[(s, o)] = {a: a for a in m.elements}
    for s, o, pairs in d.entries:
        if (s, o) not in action:
            raise DslError(f"carrier at {o} is not finite", *d.span)
        action[(s, o)].update(pairs)
    return GroupAction(group, action, d.name)


# ---------------------------------------------------------------- generating declarations


def category_decls(ocat: OrthCategory, name: str | None = None) -> list:
    """Declarations rebuilding ``ocat``; identities must be named ``id_<obj>``."""
    name = name or ocat.name
    cat = ocat.cat
    ids = set(cat.identities.values())
    decls: list = [CategoryDecl(name), ObjectDecl(tuple(cat.objects), name)]
    for f, (s, t) in cat.morphisms.items():
        if f not in ids:
            decls.append(MorphismDecl(f, s, t, name))
    for (g, f), h in sorted(cat.composition.items()):
        if g not in ids and f not in ids:
            decls.append(ComposeDecl(g, f, h, name))
    for f1, f2 in sorted(ocat.orth):
        decls.append(OrthDecl(f1, f2, name))
    return decls


def monoid_decl(m: FiniteMonoid | PresentedMonoid, name: str | None = None):
    name = name or m.name
    if isinstance(m, PresentedMonoid):
        return PresentedDecl(name, tuple(m.alphabet), tuple(m.relations))
    table = tuple(tuple(m.mul(a, b) for b in m.elements) for a in m.elements)
    return MonoidDecl(name, tuple(m.elements), m.unit, table)


def monfunctor_decl(A: MonFunctor, monoid_names: dict[int, str], category: str | None = None) -> MonFunctorDecl:
    """``monoid_names`` maps ``id`` of each carrier to its declared name."""
    cat = A.ocat.cat
    carriers = tuple((o, monoid_names[id(A.carriers[o])]) for o in cat.objects)
    ids = set(cat.identities.values())
    maps = []
    for f in cat.morphisms:
        if f in ids:
            continue
        h = A.maps[f]
        images = []
        for x in _letters(h.source):
            images.append((x, h.image_word((x,))))
        maps.append((f, tuple(images)))
    return MonFunctorDecl(A.name, category or A.ocat.name, carriers, tuple(maps))


def action_decl(G: GroupAction, algebra: str, group: str) -> ActionDecl:
    entries = []
    for (s, o), phi in G.action.items():
        moved = tuple((a, b) for a, b in phi.items() if a != b)
        if moved:
            entries.append((s, o, moved))
    return ActionDecl(G.name, algebra, group, tuple(entries))
