"""Monoid-valued functors and algebras over the operads of orthogonal categories.

A functor ``A`` from a finite category to monoids is turned into an operad
algebra by letting ``[sigma, f]`` send ``(a_1, ..., a_n)`` to the product of
the ``A(f_i)(a_i)`` taken in the order ``sigma^-1(1), ..., sigma^-1(n)``.
This is well defined on classes exactly when ``A`` is perp-commutative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping, Sequence

from .errors import AxiomViolation, BudgetExceeded, NotPerpCommutative
from .monoid import (
    DEFAULT_BOUND,
    EQUAL,
    FiniteMonoid,
    MonoidHom,
    PresentedMonoid,
    as_presented,
    automorphisms,
    compose_homs,
    enumerate_monoids,
    equal_within_bound,
    generators,
    homomorphisms,
    identity_hom,
    same_element,
)
from .operad import ColoredOperad, OperadElement
from .orthocat import OrthCategory, OrthFunctor
from .perm import Permutation, all_permutations, right_act

Monoid = FiniteMonoid | PresentedMonoid


@dataclass(frozen=True)
class MonFunctor:
    ocat: OrthCategory
    carriers: Mapping[str, Monoid]
    maps: Mapping[str, MonoidHom]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "carriers", dict(self.carriers))
        object.__setattr__(self, "maps", dict(self.maps))

    def __hash__(self) -> int:
        return id(self)

    @classmethod
    def build(
        cls,
        ocat: OrthCategory,
        carriers: Mapping[str, Monoid],
        maps: Mapping[str, MonoidHom | Mapping],
        name: str = "",
    ) -> MonFunctor:
        """Fill in identities and any composite of given maps.

        ``maps`` may hold plain dictionaries of generator images; they are
        wrapped into homomorphisms between the right carriers.
        """
        cat = ocat.cat
        full: dict[str, MonoidHom] = {}
        for f, h in maps.items():
            s, t = cat.morphisms[f]
            if not isinstance(h, MonoidHom):
                h = MonoidHom(carriers[s], carriers[t], h)
            full[f] = h
        for o in cat.objects:
            full.setdefault(cat.identities[o], identity_hom(carriers[o]))
        changed = True
        while changed:
            changed = False
            for (g, f), h in cat.composition.items():
                if h not in full and g in full and f in full:
                    full[h] = compose_homs(full[g], full[f])
                    changed = True
        missing = [f for f in cat.morphisms if f not in full]
        if missing:
            raise ValueError("no homomorphism for " + ", ".join(missing))
        return cls(ocat, carriers, full, name)

    def carrier(self, obj: str) -> Monoid:
        return self.carriers[obj]

    def hom(self, f: str) -> MonoidHom:
        return self.maps[f]

    def violations(self, L: int | None = None) -> list[str]:
        cat = self.ocat.cat
        found = []
        for f, (s, t) in cat.morphisms.items():
            h = self.maps.get(f)
            if h is None:
                found.append(f"no homomorphism for {f}")
                continue
            if h.source != self.carriers[s] or h.target != self.carriers[t]:
                found.append(f"homomorphism for {f} has the wrong source or target")
                continue
            found.extend(f"{f}: {v}" for v in h.violations(L))
        if found:
            return found
        for o in cat.objects:
            if not _homs_agree(self.maps[cat.identities[o]], identity_hom(self.carriers[o]), L):
                found.append(f"identity of {o} is not sent to the identity")
        for (g, f), h in cat.composition.items():
            if not _homs_agree(self.maps[h], compose_homs(self.maps[g], self.maps[f]), L):
                found.append(f"composite {g} . {f} is not preserved")
        return found

    def restrict(self, F: OrthFunctor) -> MonFunctor:
        """Precomposition with ``F``."""
        carriers = {c: self.carriers[F.ob(c)] for c in F.source.objects}
        maps = {f: self.maps[F(f)] for f in F.source.cat.morphisms}
        return MonFunctor(F.source, carriers, maps, self.name)


def _homs_agree(h1: MonoidHom, h2: MonoidHom, L: int | None) -> bool:
    return all(
        same_element(h1.target, h1.image_word((x,)), h2.image_word((x,)), L)
        for x in generators(h1.source)
    )


def _elements_or_generators(m: Monoid) -> tuple:
    return m.elements if isinstance(m, FiniteMonoid) else m.alphabet


@dataclass
class PerpReport:
    per_object: dict[str, bool]
    violations: list[tuple[str, str, object, object]] = field(default_factory=list)
    exact: bool = True

    @property
    def ok(self) -> bool:
        return all(self.per_object.values())


def check_perp_commutative(
    A: MonFunctor,
    ocat: OrthCategory | None = None,
    L: int | None = None,
    objects: Sequence[str] | None = None,
) -> PerpReport:
    """Check that images along orthogonal pairs commute.

    Finite carriers are checked on all element pairs; presented carriers on
    generator pairs, which suffices because the maps are homomorphisms.
    ``exact`` is false when some failure is only known within the bound.
    """
    ocat = A.ocat if ocat is None else ocat
    cat = ocat.cat
    report = PerpReport({})
    for d in cat.objects if objects is None else objects:
        report.per_object[d] = True
        target = A.carriers[d]
        for f1, f2 in ocat.pairs_with_target(d):
            h1, h2 = A.maps[f1], A.maps[f2]
            for a1 in _elements_or_generators(h1.source):
                w1 = h1.image_word((a1,))
                for a2 in _elements_or_generators(h2.source):
                    w2 = h2.image_word((a2,))
                    if isinstance(target, FiniteMonoid):
                        same = target.evaluate(w1 + w2) == target.evaluate(w2 + w1)
                    else:
                        verdict = equal_within_bound(target, w1 + w2, w2 + w1, L)
                        same = verdict == EQUAL
                        if not same and verdict != "distinct":
                            report.exact = False
                    if not same:
                        report.per_object[d] = False
                        report.violations.append((f1, f2, a1, a2))
    return report


# ---------------------------------------------------------------- operad algebras


Evaluator = Callable[[OperadElement, tuple], object]


@dataclass
class OperadAlgebraView:
    """An algebra over the operad of ``ocat`` with finite carriers."""

    ocat: OrthCategory
    carriers: Mapping[str, tuple]
    evaluate: Evaluator


def nullary(t: str) -> OperadElement:
    return OperadElement(t, (), Permutation(()), (), True)


def functor_evaluator(A: MonFunctor) -> Evaluator:
    def evaluate(el: OperadElement, args: tuple):
        m = A.carriers[el.target]
        out = m.unit
        for i in el.evaluation_order():
            out = m.mul(out, A.maps[el.morphisms[i]](args[i]))
        return out

    return evaluate


def to_operad_algebra(A: MonFunctor, ocat: OrthCategory | None = None) -> OperadAlgebraView:
    ocat = A.ocat if ocat is None else ocat
    for m in A.carriers.values():
        if not isinstance(m, FiniteMonoid):
            raise TypeError("operad algebra views need finite carriers")
    report = check_perp_commutative(A, ocat)
    if not report.ok:
        f1, f2, a1, a2 = report.violations[0]
        raise NotPerpCommutative(f"images of {a1!r} along {f1} and {a2!r} along {f2} do not commute")
    carriers = {o: A.carriers[o].elements for o in ocat.objects}
    return OperadAlgebraView(ocat, carriers, functor_evaluator(A))


def from_operad_algebra(
    view: OperadAlgebraView, ocat: OrthCategory | None = None, check_arity: int = 3
) -> MonFunctor:
    """Read off units, multiplications and structure maps from the evaluator."""
    ocat = view.ocat if ocat is None else ocat
    if check_arity >= 0:
        report = check_algebra_axioms(view, check_arity)
        if not report.ok:
            raise AxiomViolation(report.violations[0][1])
    cat = ocat.cat
    ev = view.evaluate
    carriers = {}
    for c in cat.objects:
        els = tuple(view.carriers[c])
        idc = cat.identities[c]
        mul_op = OperadElement(c, (c, c), Permutation.identity(2), (idc, idc), True)
        table = {(a, b): ev(mul_op, (a, b)) for a in els for b in els}
        carriers[c] = FiniteMonoid(els, table, ev(nullary(c), ()), c)
    maps = {}
    for f, (s, t) in cat.morphisms.items():
        op = OperadElement(t, (s,), Permutation.identity(1), (f,), True)
        maps[f] = MonoidHom(carriers[s], carriers[t], {a: ev(op, (a,)) for a in carriers[s].elements})
    return MonFunctor(ocat, carriers, maps)


@dataclass
class AlgebraReport:
    arity_bound: int
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_algebra_axioms(
    view: OperadAlgebraView, arity_bound: int = 3, budget: int = 10**7
) -> AlgebraReport:
    """Check descent to classes, equivariance, associativity and unit.

    Equivariance and descent are checked on every operation; as for the
    operad itself, associativity is then checked on operations whose
    permutation is the identity.
    """
    ocat = view.ocat
    op = ColoredOperad(ocat)
    ev = view.evaluate
    objs = ocat.objects
    report = AlgebraReport(arity_bound, {"descent": 0, "equivariance": 0, "associativity": 0, "unit": 0})
    spent = 0

    def tick(kind: str) -> None:
        nonlocal spent
        spent += 1
        report.checked[kind] += 1
        if spent > budget:
            raise BudgetExceeded(f"algebra check exceeded its budget of {budget}", report)

    def arg_tuples(profile):
        return product(*(view.carriers[c] for c in profile))

    for t in objs:
        for a in view.carriers[t]:
            tick("unit")
            if ev(op.unit(t), (a,)) != a:
                report.violations.append(("unit", f"unit at {t} moves {a!r}"))

    generic: dict[tuple[str, int], list[OperadElement]] = {}
    for t in objs:
        for n in range(arity_bound + 1):
            generic[(t, n)] = []
            for profile in product(objs, repeat=n):
                e = Permutation.identity(n)
                seen = set()
                for fs in product(*(ocat.cat.hom(c, t) for c in profile)):
                    el = op.canonicalize(OperadElement(t, profile, e, fs))
                    if el not in seen:
                        seen.add(el)
                        generic[(t, n)].append(el)
                for raw in op.raw_elements(t, profile):
                    canon = op.canonicalize(raw)
                    for args in arg_tuples(profile):
                        tick("descent")
                        value = ev(canon, args)
                        if ev(raw, args) != value:
                            report.violations.append(("descent", f"{raw} on {args!r}"))
                        if raw.sigma.is_identity():
                            for sp in all_permutations(n):
                                tick("equivariance")
                                moved = op.act(canon, sp)
                                if ev(moved, right_act(args, sp)) != value:
                                    report.violations.append(
                                        ("equivariance", f"{canon} by {sp} on {args!r}")
                                    )

    def families(colors, total):
        if not colors:
            yield ()
            return
        for k in range(total + 1):
            for el in generic[(colors[0], k)]:
                for tail in families(colors[1:], total - k):
                    yield (el,) + tail

    for t in objs:
        for n in range(arity_bound + 1):
            for el in generic[(t, n)]:
                for inners in families(el.profile, arity_bound):
                    composite = op.gamma(el, inners)
                    for args in arg_tuples(composite.profile):
                        tick("associativity")
                        grouped, pos = [], 0
                        for inner in inners:
                            grouped.append(ev(inner, args[pos : pos + inner.arity]))
                            pos += inner.arity
                        if ev(composite, args) != ev(el, tuple(grouped)):
                            report.violations.append(
                                ("associativity", f"{el} on {[str(i) for i in inners]} at {args!r}")
                            )
    return report


# ---------------------------------------------------------------- free algebras and reflection


def free_algebra(
    ocat: OrthCategory, X: Mapping[str, Sequence], bound: int = DEFAULT_BOUND, name: str = "free"
) -> MonFunctor:
    """The free algebra on generators ``X[c]`` sitting over the objects ``c``.

    At ``t`` the letters are pairs ``(f, x)`` with ``f : c -> t`` and ``x``
    in ``X[c]``; letters along orthogonal pairs commute.
    """
    cat = ocat.cat
    carriers: dict[str, PresentedMonoid] = {}
    for t in cat.objects:
        letters = [(f, x) for f in cat.into(t) for x in X.get(cat.src(f), ())]
        rels = []
        for f1, f2 in ocat.pairs_with_target(t):
            for x1 in X.get(cat.src(f1), ()):
                for x2 in X.get(cat.src(f2), ()):
                    a, b = (f1, x1), (f2, x2)
                    if a < b:
                        rels.append(((a, b), (b, a)))
        carriers[t] = PresentedMonoid(tuple(letters), tuple(rels), bound, f"{name}({t})")
    maps = {}
    for h, (s, t) in cat.morphisms.items():
        images = {(f, x): ((cat.compose(h, f), x),) for f, x in carriers[s].alphabet}
        maps[h] = MonoidHom(carriers[s], carriers[t], images)
    return MonFunctor(ocat, carriers, maps, name)


def presented_version(A: MonFunctor, bound: int = DEFAULT_BOUND) -> MonFunctor:
    """The same functor with every carrier given by a presentation."""
    carriers = {o: as_presented(m, bound) for o, m in A.carriers.items()}
    maps = {}
    for f, h in A.maps.items():
        s, t = A.ocat.cat.morphisms[f]
        maps[f] = MonoidHom(carriers[s], carriers[t], {x: h.image_word((x,)) for x in carriers[s].alphabet})
    return MonFunctor(A.ocat, carriers, maps, A.name)


def perp_abelianization(B: MonFunctor, ocat: OrthCategory | None = None, bound: int | None = None) -> MonFunctor:
    """Force images along orthogonal pairs to commute, objectwise."""
    ocat = B.ocat if ocat is None else ocat
    P = presented_version(B, bound if bound is not None else DEFAULT_BOUND)
    carriers = {}
    for d, m in P.carriers.items():
        rels = list(m.relations)
        for f1, f2 in ocat.pairs_with_target(d):
            h1, h2 = P.maps[f1], P.maps[f2]
            for a in h1.source.alphabet:
                for b in h2.source.alphabet:
                    u, v = h1.image_word((a,)), h2.image_word((b,))
                    if u + v != v + u:
                        rels.append((u + v, v + u))
        rels = _dedupe(rels)
        carriers[d] = PresentedMonoid(m.alphabet, tuple(rels), bound if bound is not None else m.bound, m.name)
    maps = {}
    for f, h in P.maps.items():
        s, t = ocat.cat.morphisms[f]
        maps[f] = MonoidHom(carriers[s], carriers[t], h.images)
    return MonFunctor(ocat, carriers, maps, f"ab({B.name})")


def _dedupe(rels: list) -> list:
    seen, out = set(), []
    for l, r in rels:
        key = frozenset([l, r])
        if key not in seen:
            seen.add(key)
            out.append((l, r))
    return out


# ---------------------------------------------------------------- small algebras up to isomorphism


class AlgebraCatalogue:
    """Perp-commutative functors whose carriers are monoids of bounded size.

    Carriers are drawn from one representative per isomorphism class of
    monoid, so two such functors are isomorphic exactly when a family of
    carrier automorphisms transports one onto the other.
    """

    def __init__(self, max_size: int):
        self.max_size = max_size
        self.monoids: list[FiniteMonoid] = [
            m for n in range(1, max_size + 1) for m in enumerate_monoids(n)
        ]
        self.index = {id(m): i for i, m in enumerate(self.monoids)}
        self.auts = [
            [tuple(a[x] for x in m.elements) for a in automorphisms(m)] for m in self.monoids
        ]
        self._homs: dict[tuple[int, int], list[tuple]] = {}

    def homs(self, i: int, j: int) -> list[tuple]:
        key = (i, j)
        if key not in self._homs:
            src, tgt = self.monoids[i], self.monoids[j]
            self._homs[key] = [tuple(h[x] for x in src.elements) for h in homomorphisms(src, tgt)]
        return self._homs[key]

    def algebras(self, ocat: OrthCategory, order: Sequence[str] | None = None) -> list[MonFunctor]:
        """One perp-commutative functor per isomorphism class."""
        cat = ocat.cat
        objs = list(order) if order is not None else _search_order(ocat)
        mors = [f for f in cat.morphisms if f not in set(cat.identities.values())]
        idx: dict[str, int] = {}
        hom: dict[str, tuple] = {}
        found: dict[tuple, MonFunctor] = {}

        def compose_ok() -> bool:
            for (g, f), h in cat.composition.items():
                if g in hom and f in hom and h in hom:
                    hg, hf = hom[g], hom[f]
                    if tuple(hg[x] for x in hf) != hom[h]:
                        return False
            return True

        def assign_morphisms(pending: list[str], k: int):
            if not pending:
                yield
                return
            f = pending[0]
            s, t = cat.morphisms[f]
            for h in self.homs(idx[s], idx[t]):
                hom[f] = h
                if compose_ok():
                    yield from assign_morphisms(pending[1:], k)
                del hom[f]

        def assign(k: int):
            if k == len(objs):
                A = self._functor(ocat, idx, hom)
                if check_perp_commutative(A, ocat).ok:
                    key = self.iso_key(ocat, idx, hom)
                    found.setdefault(key, A)
                return
            o = objs[k]
            for i in range(len(self.monoids)):
                idx[o] = i
                n = len(self.monoids[i])
                hom[cat.identities[o]] = tuple(range(n))
                done = set(objs[: k + 1])
                pending = [
                    f for f in mors if f not in hom and cat.src(f) in done and cat.tgt(f) in done
                ]
                if compose_ok():
                    for _ in assign_morphisms(pending, k):
                        assign(k + 1)
                del hom[cat.identities[o]]
                del idx[o]

        assign(0)
        return [found[k] for k in sorted(found)]

    def _functor(self, ocat: OrthCategory, idx: dict, hom: dict) -> MonFunctor:
        carriers = {o: self.monoids[i] for o, i in idx.items()}
        maps = {}
        for f, (s, t) in ocat.cat.morphisms.items():
            src = carriers[s]
            maps[f] = MonoidHom(src, carriers[t], dict(zip(src.elements, hom[f])))
        return MonFunctor(ocat, carriers, maps)

    def iso_key(self, ocat: OrthCategory, idx: Mapping[str, int], hom: Mapping[str, tuple]) -> tuple:
        cat = ocat.cat
        objs = list(cat.objects)
        mors = sorted(f for f in cat.morphisms if f not in set(cat.identities.values()))
        best = None
        for alphas in product(*(self.auts[idx[o]] for o in objs)):
            a = dict(zip(objs, alphas))
            maps = []
            for f in mors:
                s, t = cat.morphisms[f]
                inv_s = [0] * len(a[s])
                for x, y in enumerate(a[s]):
                    inv_s[y] = x
                h = hom[f]
                maps.append(tuple(a[t][h[inv_s[y]]] for y in range(len(a[s]))))
            key = (tuple(idx[o] for o in objs), tuple(maps))
            if best is None or key < best:
                best = key
        return best

    def key_of(self, A: MonFunctor) -> tuple:
        """Isomorphism-class key of a functor whose carriers come from this catalogue."""
        idx = {o: self.index[id(m)] for o, m in A.carriers.items()}
        hom = {
            f: tuple(h.images[x] for x in A.carriers[A.ocat.cat.src(f)].elements)
            for f, h in A.maps.items()
        }
        return self.iso_key(A.ocat, idx, hom)


def _search_order(ocat: OrthCategory) -> list[str]:
    """Objects joined by isomorphisms first, so the search prunes early."""
    cat = ocat.cat
    ids = set(cat.identities.values())
    weight = {o: 0 for o in cat.objects}
    for f, (s, t) in cat.morphisms.items():
        if f in ids:
            continue
        bonus = 3 if cat.is_iso(f) else 1
        weight[s] += bonus
        weight[t] += bonus
    return sorted(cat.objects, key=lambda o: (-weight[o], cat.objects.index(o)))
