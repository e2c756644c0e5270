"""Finite categories given by full composition tables, orthogonality relations,
orthogonal functors and the j-closedness decision procedure."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping

from .errors import InvalidSeedPair, UnknownObject

Pair = tuple[str, str]


@dataclass(frozen=True)
class FinCategory:
    """A finite category stored extensionally.

    ``morphisms`` maps a morphism name to ``(source, target)``;
    ``composition`` maps a composable pair ``(g, f)`` to the name of ``g . f``.
    Construction does not check the category axioms, see :func:`validate`.
    """

    objects: tuple[str, ...]
    morphisms: Mapping[str, tuple[str, str]]
    identities: Mapping[str, str]
    composition: Mapping[tuple[str, str], str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", dict(self.morphisms))
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "composition", dict(self.composition))
        homs: dict[tuple[str, str], list[str]] = {}
        for name, (s, t) in self.morphisms.items():
            homs.setdefault((s, t), []).append(name)
        object.__setattr__(self, "_homs", {k: tuple(v) for k, v in homs.items()})

    def __hash__(self) -> int:
        return hash((self.objects, tuple(self.morphisms.items())))

    def src(self, f: str) -> str:
        return self.morphisms[f][0]

    def tgt(self, f: str) -> str:
        return self.morphisms[f][1]

    def identity(self, obj: str) -> str:
        try:
            return self.identities[obj]
        except KeyError:
            raise UnknownObject(f"unknown object {obj!r}") from None

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._homs.get((a, b), ())  # type: ignore[attr-defined]

    def into(self, b: str) -> Iterator[str]:
        """Morphisms with target ``b``."""
        for f, (_, t) in self.morphisms.items():
            if t == b:
                yield f

    def out_of(self, a: str) -> Iterator[str]:
        for f, (s, _) in self.morphisms.items():
            if s == a:
                yield f

    def compose(self, g: str, f: str) -> str:
        """``g . f``; raises ``KeyError`` for pairs missing from the table."""
        return self.composition[(g, f)]

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        for g, (gs, _) in self.morphisms.items():
            for f in self.into(gs):
                yield g, f

    def is_iso(self, f: str) -> bool:
        return self.inverse_of(f) is not None

    def inverse_of(self, f: str) -> str | None:
        s, t = self.morphisms[f]
        for h in self.hom(t, s):
            if (
                self.composition.get((h, f)) == self.identities[s]
                and self.composition.get((f, h)) == self.identities[t]
            ):
                return h
        return None


@dataclass(frozen=True)
class OrthCategory:
    cat: FinCategory
    orth: frozenset[Pair] = frozenset()
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "orth", frozenset(self.orth))

    @property
    def objects(self) -> tuple[str, ...]:
        return self.cat.objects

    def is_orth(self, f1: str, f2: str) -> bool:
        return (f1, f2) in self.orth

    def pairs_with_target(self, t: str) -> list[Pair]:
        return sorted(p for p in self.orth if self.cat.tgt(p[0]) == t)

    def with_orth(self, orth: Iterable[Pair], name: str | None = None) -> OrthCategory:
        return OrthCategory(self.cat, frozenset(orth), self.name if name is None else name)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str) -> None:
        self.violations.append(message)


def validate(cat: FinCategory, orth: Iterable[Pair] = ()) -> ValidationReport:
    """List every violated category or orthogonality axiom instance."""
    report = ValidationReport()
    mors = cat.morphisms
    for obj in cat.objects:
        idn = cat.identities.get(obj)
        if idn is None:
            report.add(f"object {obj} has no identity")
        elif mors.get(idn) != (obj, obj):
            report.add(f"identity {idn} of {obj} is not an endomorphism of {obj}")
    for f, (s, t) in mors.items():
        if s not in cat.identities or t not in cat.identities:
            report.add(f"morphism {f} has an undeclared endpoint")
    if not report.ok:
        return report

    for key, h in cat.composition.items():
        g, f = key
        if g not in mors or f not in mors or h not in mors:
            report.add(f"composition {g} . {f} = {h} names an unknown morphism")
        elif cat.src(g) != cat.tgt(f):
            report.add(f"composition {g} . {f} defined on a non-composable pair")
        elif mors[h] != (cat.src(f), cat.tgt(g)):
            report.add(f"composite {g} . {f} = {h} has wrong source or target")
    if not report.ok:
        return report

    for g, f in cat.composable_pairs():
        if (g, f) not in cat.composition:
            report.add(f"missing composite {g} . {f}")
    if not report.ok:
        return report

    for f, (s, t) in mors.items():
        if cat.compose(cat.identities[t], f) != f:
            report.add(f"left identity law fails for {f}")
        if cat.compose(f, cat.identities[s]) != f:
            report.add(f"right identity law fails for {f}")
    for h, (hs, _) in mors.items():
        for g in cat.into(hs):
            gh = cat.compose(h, g)
            for f in cat.into(cat.src(g)):
                if cat.compose(gh, f) != cat.compose(h, cat.compose(g, f)):
                    report.add(f"associativity fails for ({h}, {g}, {f})")

    for f1, f2 in sorted(orth):
        if f1 not in mors or f2 not in mors:
            report.add(f"orthogonal pair ({f1}, {f2}) names an unknown morphism")
            continue
        if cat.tgt(f1) != cat.tgt(f2):
            report.add(f"orthogonal pair ({f1}, {f2}) has different targets")
    if not report.ok:
        return report
    orth = frozenset(orth)
    for f1, f2 in sorted(orth):
        if (f2, f1) not in orth:
            report.add(f"symmetry fails: ({f1}, {f2}) without ({f2}, {f1})")
        for g in cat.out_of(cat.tgt(f1)):
            if (cat.compose(g, f1), cat.compose(g, f2)) not in orth:
                report.add(f"post-composition stability fails for ({f1}, {f2}) with {g}")
        for h1 in cat.into(cat.src(f1)):
            for h2 in cat.into(cat.src(f2)):
                if (cat.compose(f1, h1), cat.compose(f2, h2)) not in orth:
                    report.add(
                        f"pre-composition stability fails for ({f1}, {f2}) with ({h1}, {h2})"
                    )
    return report


def orth_closure(cat: FinCategory, seed: Iterable[Pair]) -> frozenset[Pair]:
    """Smallest orthogonality relation containing ``seed``."""
    todo: list[Pair] = []
    for f1, f2 in seed:
        if f1 not in cat.morphisms or f2 not in cat.morphisms:
            raise InvalidSeedPair(f"({f1}, {f2}) names an unknown morphism")
        if cat.tgt(f1) != cat.tgt(f2):
            raise InvalidSeedPair(f"({f1}, {f2}) do not share a target")
        todo.append((f1, f2))
    closed: set[Pair] = set()
    while todo:
        pair = todo.pop()
        if pair in closed:
            continue
        closed.add(pair)
        f1, f2 = pair
        todo.append((f2, f1))
        for g in cat.out_of(cat.tgt(f1)):
            todo.append((cat.compose(g, f1), cat.compose(g, f2)))
        for h1 in cat.into(cat.src(f1)):
            for h2 in cat.into(cat.src(f2)):
                todo.append((cat.compose(f1, h1), cat.compose(f2, h2)))
    return frozenset(closed)


@dataclass(frozen=True)
class OrthFunctor:
    source: OrthCategory
    target: OrthCategory
    obj_map: Mapping[str, str]
    mor_map: Mapping[str, str]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "obj_map", dict(self.obj_map))
        object.__setattr__(self, "mor_map", dict(self.mor_map))

    def __hash__(self) -> int:
        return hash((self.name, tuple(self.obj_map.items()), tuple(self.mor_map.items())))

    def ob(self, obj: str) -> str:
        return self.obj_map[obj]

    def __call__(self, f: str) -> str:
        return self.mor_map[f]

    def then(self, other: OrthFunctor) -> OrthFunctor:
        """The composite ``other . self``."""
        return OrthFunctor(
            self.source,
            other.target,
            {o: other.ob(self.ob(o)) for o in self.source.objects},
            {f: other(self(f)) for f in self.source.cat.morphisms},
            name=f"{other.name}.{self.name}" if self.name and other.name else "",
        )

    def validate(self) -> ValidationReport:
        report = ValidationReport()
        C, D = self.source.cat, self.target.cat
        for o in C.objects:
            if self.obj_map.get(o) not in D.identities:
                report.add(f"object {o} is not sent to an object of the target")
        for f in C.morphisms:
            if self.mor_map.get(f) not in D.morphisms:
                report.add(f"morphism {f} is not sent to a morphism of the target")
        if not report.ok:
            return report
        for f, (s, t) in C.morphisms.items():
            if D.morphisms[self(f)] != (self.ob(s), self.ob(t)):
                report.add(f"{f} is not sent to a morphism between the image objects")
        for o in C.objects:
            if self(C.identities[o]) != D.identities[self.ob(o)]:
                report.add(f"identity of {o} is not preserved")
        for (g, f), h in C.composition.items():
            if D.composition.get((self(g), self(f))) != self(h):
                report.add(f"composite {g} . {f} is not preserved")
        for f1, f2 in sorted(self.source.orth):
            if not self.target.is_orth(self(f1), self(f2)):
                report.add(f"orthogonal pair ({f1}, {f2}) is not preserved")
        return report


def identity_functor(cat: OrthCategory) -> OrthFunctor:
    return OrthFunctor(
        cat, cat, {o: o for o in cat.objects}, {f: f for f in cat.cat.morphisms}, name="id"
    )


def pullback_orth(F: OrthFunctor) -> frozenset[Pair]:
    """F*(perp_D): pairs with common target whose images are orthogonal."""
    C = F.source.cat
    pairs = set()
    for t in C.objects:
        into = list(C.into(t))
        for f1, f2 in product(into, into):
            if F.target.is_orth(F(f1), F(f2)):
                pairs.add((f1, f2))
    return frozenset(pairs)


def full_subcategory(
    dbar: OrthCategory, objs: Iterable[str], name: str = "", functor_name: str = "j"
) -> tuple[OrthCategory, OrthFunctor]:
    """The full orthogonal subcategory on ``objs`` with its embedding."""
    objs = list(objs)
    D = dbar.cat
    for o in objs:
        if o not in D.identities:
            raise UnknownObject(f"unknown object {o!r}")
    keep = [o for o in D.objects if o in set(objs)]
    keep_set = set(keep)
    mors = {f: st for f, st in D.morphisms.items() if st[0] in keep_set and st[1] in keep_set}
    comp = {(g, f): h for (g, f), h in D.composition.items() if g in mors and f in mors}
    C = FinCategory(tuple(keep), mors, {o: D.identities[o] for o in keep}, comp)
    orth = frozenset((f1, f2) for f1, f2 in dbar.orth if f1 in mors and f2 in mors)
    cbar = OrthCategory(C, orth, name or f"{dbar.name}|{','.join(keep)}")
    j = OrthFunctor(cbar, dbar, {o: o for o in keep}, {f: f for f in mors}, name=functor_name)
    return cbar, j


@dataclass(frozen=True)
class Factorization:
    """``(g1, g2) = (g . f1, g . f2)`` through the subcategory object ``c``."""

    c: str
    g: str
    f1: str
    f2: str


@dataclass
class JClosedness:
    obj: str
    closed: bool
    witnesses: dict[Pair, Factorization] = field(default_factory=dict)
    counterexample: Pair | None = None


def is_j_closed(dbar: OrthCategory, j: OrthFunctor, d: str) -> JClosedness:
    """Decide whether ``d`` is j-closed, returning witnesses or a failing pair.

    Every orthogonal pair into ``d`` whose sources lie in the image of ``j``
    must factor as ``(g . j(f1), g . j(f2))`` with ``(f1, f2)`` orthogonal in
    the source of ``j``.
    """
    D = dbar.cat
    if d not in D.identities:
        raise UnknownObject(f"unknown object {d!r}")
    cbar = j.source
    C = cbar.cat
    preimages: dict[str, list[str]] = {}
    for c in C.objects:
        preimages.setdefault(j.ob(c), []).append(c)

    result = JClosedness(d, True)
    for g1, g2 in dbar.pairs_with_target(d):
        s1, s2 = D.src(g1), D.src(g2)
        if s1 not in preimages or s2 not in preimages:
            continue
        found = _find_factorization(D, C, cbar, j, preimages[s1], preimages[s2], g1, g2, d)
        if found is None:
            result.closed = False
            result.counterexample = (g1, g2)
            result.witnesses.clear()
            return result
        result.witnesses[(g1, g2)] = found
    return result


def _find_factorization(D, C, cbar, j, sources1, sources2, g1, g2, d) -> Factorization | None:
    for c in C.objects:
        for g in D.hom(j.ob(c), d):
            for c1 in sources1:
                for f1 in C.hom(c1, c):
                    if D.compose(g, j(f1)) != g1:
                        continue
                    for c2 in sources2:
                        for f2 in C.hom(c2, c):
                            if D.compose(g, j(f2)) == g2 and cbar.is_orth(f1, f2):
                                return Factorization(c, g, f1, f2)
    return None


def is_fully_faithful(F: OrthFunctor) -> bool:
    C, D = F.source.cat, F.target.cat
    for a, b in product(C.objects, C.objects):
        images = [F(f) for f in C.hom(a, b)]
        if len(set(images)) != len(images):
            return False
        if set(images) != set(D.hom(F.ob(a), F.ob(b))):
            return False
    return True


def is_essentially_surjective(F: OrthFunctor) -> bool:
    D = F.target.cat
    image = {F.ob(c) for c in F.source.objects}
    for d in D.objects:
        if d in image:
            continue
        if not any(D.hom(c, d) and any(D.is_iso(f) for f in D.hom(c, d)) for c in image):
            return False
    return True


def is_orthogonal_equivalence(F: OrthFunctor) -> bool:
    return (
        is_fully_faithful(F)
        and is_essentially_surjective(F)
        and pullback_orth(F) == F.source.orth
    )


def identity_name(obj: str) -> str:
    return f"id_{obj}"


def build_category(
    objects: Iterable[str],
    morphisms: Mapping[str, tuple[str, str]],
    composites: Mapping[tuple[str, str], str] = (),  # type: ignore[assignment]
    identities: Mapping[str, str] | None = None,
) -> FinCategory:
    """Assemble a category from its non-identity data.

    Identity morphisms (named ``id_<obj>`` unless given) and all composites
    involving an identity are filled in. Any other composable pair missing
    from ``composites`` is an error.
    """
    objects = tuple(objects)
    ids = dict(identities or {})
    for o in objects:
        ids.setdefault(o, identity_name(o))
    mors: dict[str, tuple[str, str]] = {}
    for o in objects:
        mors[ids[o]] = (o, o)
    for f, st in morphisms.items():
        if f in mors and mors[f] != tuple(st):
            raise ValueError(f"morphism {f} declared twice")
        mors[f] = (st[0], st[1])
    comp = dict(composites or {})
    id_set = set(ids.values())
    for f, (s, t) in mors.items():
        comp.setdefault((ids[t], f), f)
        comp.setdefault((f, ids[s]), f)
    cat = FinCategory(objects, mors, ids, comp)
    missing = [
        f"{g} . {f}"
        for g, f in cat.composable_pairs()
        if (g, f) not in comp and g not in id_set and f not in id_set
    ]
    if missing:
        raise ValueError("missing composites: " + ", ".join(missing))
    return cat
