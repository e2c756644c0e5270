"""Extending algebras along orthogonal functors.

``lan_extension`` computes the left Kan extension of the underlying
monoid-valued functor by an explicit presentation: at ``d`` the generators
are pairs ``(g, b)`` with ``g : F(c) -> d`` and ``b`` a generator of
``B(c)``, subject to

* ``(g . F(f), b) = (g, B(f)(b))`` letterwise, and
* every relation of ``B(c)`` written with a fixed ``g``.

The operadic left adjoint is the perp-abelianization of that functor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .algebra import (
    AlgebraCatalogue,
    MonFunctor,
    check_perp_commutative,
    free_algebra,
    perp_abelianization,
)
from .errors import ActionNotCompatible
from .monoid import (
    DEFAULT_BOUND,
    DEFAULT_BUDGET,
    FiniteMonoid,
    MonoidHom,
    PresentedMonoid,
    as_presented,
    element_count,
    EQUAL,
    equal_within_bound,
)
from .orthocat import OrthFunctor, is_j_closed

Monoid = FiniteMonoid | PresentedMonoid


def _letter(F: OrthFunctor, g: str, c: str, b) -> tuple:
    injective = len(set(F.obj_map.values())) == len(F.obj_map)
    return (g, b) if injective else (g, (c, b))


def lan_presentation(
    F: OrthFunctor, B: MonFunctor, d: str, bound: int = DEFAULT_BOUND
) -> PresentedMonoid:
    C, D = F.source.cat, F.target.cat
    pres = {c: as_presented(B.carriers[c], bound) for c in C.objects}
    letters = []
    for c in C.objects:
        for g in D.hom(F.ob(c), d):
            letters.extend(_letter(F, g, c, b) for b in pres[c].alphabet)
    rels = []
    for f, (c1, c) in C.morphisms.items():
        if f == C.identities[c1]:
            continue
        Bf = B.maps[f]
        for g in D.hom(F.ob(c), d):
            gf = D.compose(g, F(f))
            for b in pres[c1].alphabet:
                lhs = (_letter(F, gf, c1, b),)
                rhs = tuple(_letter(F, g, c, x) for x in _image(Bf, b))
                if lhs != rhs:
                    rels.append((lhs, rhs))
    for c in C.objects:
        for g in D.hom(F.ob(c), d):
            for l, r in pres[c].relations:
                rels.append(
                    (
                        tuple(_letter(F, g, c, x) for x in l),
                        tuple(_letter(F, g, c, x) for x in r),
                    )
                )
    return PresentedMonoid(tuple(letters), tuple(_dedupe(rels)), bound, f"Lan({d})")


def _image(h: MonoidHom, b) -> tuple:
    """Image of a generator as a word over the generators of the target presentation."""
    return h.image_word((b,))


def _dedupe(rels):
    seen, out = set(), []
    for l, r in rels:
        key = frozenset([l, r])
        if key not in seen:
            seen.add(key)
            out.append((l, r))
    return out


def lan_extension(F: OrthFunctor, B: MonFunctor, bound: int = DEFAULT_BOUND) -> MonFunctor:
    D = F.target.cat
    carriers = {d: lan_presentation(F, B, d, bound) for d in D.objects}
    maps = {}
    for h, (s, t) in D.morphisms.items():
        images = {}
        for letter in carriers[s].alphabet:
            g, rest = letter
            images[letter] = ((D.compose(h, g), rest),)
        maps[h] = MonoidHom(carriers[s], carriers[t], images)
    return MonFunctor(F.target, carriers, maps, f"Lan({B.name})")


def operadic_left_adjoint(F: OrthFunctor, A: MonFunctor, bound: int = DEFAULT_BOUND) -> MonFunctor:
    ext = perp_abelianization(lan_extension(F, A, bound), F.target, bound)
    return MonFunctor(ext.ocat, ext.carriers, ext.maps, f"Op({A.name})")


def check_lan_perp_commutative(
    j: OrthFunctor, A: MonFunctor, d: str, L: int = DEFAULT_BOUND
):
    """Perp-commutativity of the Kan extension over the single object ``d``."""
    ext = lan_extension(j, A, L)
    return check_perp_commutative(ext, j.target, L, objects=[d])


# ---------------------------------------------------------------- comparing presentations


@dataclass
class IsoVerdict:
    """Whether a generator map induces a bijection on classes of short words."""

    bound: int
    well_defined: bool
    injective: bool
    surjective: bool
    source_count: int
    target_count: int
    exact: bool

    @property
    def iso(self) -> bool:
        return self.well_defined and self.injective and self.surjective

    def as_dict(self) -> dict:
        return {
            "bound": self.bound,
            "well_defined": self.well_defined,
            "injective": self.injective,
            "surjective": self.surjective,
            "source_count": self.source_count,
            "target_count": self.target_count,
            "exact": self.exact,
            "iso": self.iso,
        }


def compare_presentations(
    P: PresentedMonoid,
    Q: PresentedMonoid,
    letter_map: Mapping,
    L: int,
    budget: int = DEFAULT_BUDGET,
) -> IsoVerdict:
    """Test the map ``P -> Q`` given on letters (images are words) up to length ``L``.

    Well-defined: every relation of ``P`` holds after mapping. Injective: words
    of length at most ``L`` in different classes of ``P`` have different
    images. Surjective: every class of ``Q`` with a representative of length
    at most ``L`` contains an image of such a word.
    """

    def image(w):
        out = []
        for x in w:
            out.extend(letter_map[x])
        return tuple(out)

    well_defined = all(
        equal_within_bound(Q, image(l), image(r), max(L, len(image(l)), len(image(r)))) == EQUAL
        for l, r in P.relations
    )
    p_classes = P.classes(L, budget)
    longest = max((len(letter_map[x]) for x in P.alphabet), default=0)
    q_bound = max(L, L * longest)
    q_classes = Q.classes(q_bound, budget) if Q.rewriting is None else None

    def q_key(w):
        if q_classes is None:
            return Q.normal_form(w)
        return q_classes.class_of[w]

    seen: dict = {}
    injective = True
    for part in p_classes.classes:
        key = q_key(image(part[0]))
        if key in seen:
            injective = False
        seen[key] = part[0]
    q_short = Q.classes(L, budget) if q_classes is None else q_classes
    surjective = True
    counted = 0
    for part in q_short.classes:
        if len(part[0]) > L:
            continue
        counted += 1
        if q_key(part[0]) not in seen:
            surjective = False
    exact = P.exact and Q.exact
    return IsoVerdict(L, well_defined, injective, surjective, p_classes.count, counted, exact)


@dataclass
class ExtensionReport:
    method: str
    functor: MonFunctor
    perp_commutative: dict[str, bool]
    bound: int
    counts: dict[str, int]
    iso: dict[str, IsoVerdict] = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            "method": self.method,
            "bound": self.bound,
            "perp_commutative": dict(sorted(self.perp_commutative.items())),
            "counts": dict(sorted(self.counts.items())),
        }
        if self.iso:
            out["iso"] = {d: v.as_dict() for d, v in sorted(self.iso.items())}
        return out


def _report(method: str, A: MonFunctor, L: int) -> ExtensionReport:
    perp = check_perp_commutative(A, A.ocat, L).per_object
    counts = {d: element_count(m, L) for d, m in A.carriers.items()}
    return ExtensionReport(method, A, perp, L, counts)


def extension_report(F: OrthFunctor, A: MonFunctor, method: str, L: int = DEFAULT_BOUND) -> ExtensionReport:
    if method == "kan":
        return _report("kan", lan_extension(F, A, L), L)
    if method == "operadic":
        return _report("operadic", operadic_left_adjoint(F, A, L), L)
    raise ValueError(f"unknown extension method {method!r}")


def compare_extensions(
    j: OrthFunctor, A: MonFunctor, L: int = DEFAULT_BOUND
) -> tuple[ExtensionReport, ExtensionReport]:
    """Both extensions, with the canonical comparison at every object.

    The identity on generators passes from the Kan extension to the operadic
    one; it is an isomorphism within the bound exactly where no extra
    commutations were forced.
    """
    kan = extension_report(j, A, "kan", L)
    op = extension_report(j, A, "operadic", L)
    for d in j.target.objects:
        P, Q = kan.functor.carriers[d], op.functor.carriers[d]
        kan.iso[d] = compare_presentations(P, Q, {x: (x,) for x in P.alphabet}, L)
    op.iso = kan.iso
    return kan, op


def unit_comparison(j: OrthFunctor, A: MonFunctor, c: str, L: int = DEFAULT_BOUND) -> IsoVerdict:
    """The map ``A(c) -> (operadic extension)(j(c))``, ``b -> (id, b)``."""
    ext = operadic_left_adjoint(j, A, L)
    d = j.ob(c)
    P = as_presented(A.carriers[c], L)
    idd = j.target.cat.identities[d]
    letter_map = {b: (_letter(j, idd, c, b),) for b in P.alphabet}
    return compare_presentations(P, ext.carriers[d], letter_map, L)


@dataclass
class LocalityReport:
    bound: int
    per_object: dict[str, IsoVerdict]

    @property
    def local(self) -> bool:
        return all(v.iso for v in self.per_object.values())


def is_j_local(j: OrthFunctor, A_D: MonFunctor, L: int = DEFAULT_BOUND) -> LocalityReport:
    """Compare the operadic extension of the restriction with ``A_D`` itself."""
    ext = operadic_left_adjoint(j, A_D.restrict(j), L)
    per_object = {}
    for d in j.target.objects:
        P = ext.carriers[d]
        target = as_presented(A_D.carriers[d], L)
        letter_map = {}
        for g, rest in P.alphabet:
            b = rest
            if len(set(j.obj_map.values())) != len(j.obj_map):
                _, b = rest
            letter_map[(g, rest)] = A_D.maps[g].image_word((b,))
        per_object[d] = compare_presentations(P, target, letter_map, L)
    return LocalityReport(L, per_object)


# ---------------------------------------------------------------- j-closedness probe


def probe_generators(j: OrthFunctor) -> dict[str, list[str]]:
    """One generator per subcategory object, two where an orthogonal pair of
    the big category has both legs starting at that object."""
    D = j.target.cat
    doubled = {D.src(f1) for f1, f2 in j.target.orth if D.src(f1) == D.src(f2)}
    X = {}
    for c in j.source.objects:
        X[c] = [f"x_{c}", f"y_{c}"] if j.ob(c) in doubled else [f"x_{c}"]
    return X


@dataclass
class ClosednessComparison:
    obj: str
    syntactic: bool
    semantic: bool
    exact: bool

    @property
    def agree(self) -> bool:
        return self.syntactic == self.semantic


def j_closedness_agreement(j: OrthFunctor, L: int = 2) -> list[ClosednessComparison]:
    """Syntactic j-closedness against perp-commutativity of the Kan extension
    of the free probe algebra, at every object of the big category."""
    probe = free_algebra(j.source, probe_generators(j), L, name="probe")
    ext = lan_extension(j, probe, L)
    out = []
    for d in j.target.objects:
        report = check_perp_commutative(ext, j.target, L, objects=[d])
        closed = is_j_closed(j.target, j, d).closed
        out.append(ClosednessComparison(d, closed, report.ok, report.exact))
    return out


# ---------------------------------------------------------------- orbifolds


@dataclass(frozen=True)
class GroupAction:
    """A finite group acting on a functor with finite carriers.

    ``action[(s, d)]`` is the automorphism of ``A(d)`` by which ``s`` acts.
    """

    group: FiniteMonoid
    action: Mapping[tuple, Mapping]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "action", {k: dict(v) for k, v in self.action.items()})

    def __hash__(self) -> int:
        return id(self)


def trivial_action(A: MonFunctor) -> GroupAction:
    group = FiniteMonoid(("e",), {("e", "e"): "e"}, "e", "1")
    return GroupAction(group, {("e", d): {a: a for a in m.elements} for d, m in A.carriers.items()})


def action_violations(G: GroupAction, A: MonFunctor) -> list[str]:
    found = []
    group = G.group
    for s in group.elements:
        if not any(group.mul(s, t) == group.unit for t in group.elements):
            found.append(f"{s} has no inverse, so the acting monoid is not a group")
    for d, m in A.carriers.items():
        if not isinstance(m, FiniteMonoid):
            found.append(f"carrier at {d} is not finite")
            continue
        for s in group.elements:
            phi = G.action.get((s, d))
            if phi is None:
                found.append(f"no action of {s} at {d}")
                continue
            if sorted(map(repr, phi.values())) != sorted(map(repr, m.elements)):
                found.append(f"{s} does not act bijectively at {d}")
            if phi.get(m.unit) != m.unit or any(
                phi[m.mul(a, b)] != m.mul(phi[a], phi[b]) for a, b in product(m.elements, repeat=2)
            ):
                found.append(f"{s} does not act by a homomorphism at {d}")
    if found:
        return found
    for d, m in A.carriers.items():
        for a in m.elements:
            if G.action[(group.unit, d)][a] != a:
                found.append(f"the unit moves {a!r} at {d}")
            for s, t in product(group.elements, repeat=2):
                st = group.mul(s, t)
                if G.action[(st, d)][a] != G.action[(s, d)][G.action[(t, d)][a]]:
                    found.append(f"({s}{t}) and {s} after {t} differ at {d}")
    cat = A.ocat.cat
    for f, (c, d) in cat.morphisms.items():
        h = A.maps[f]
        for s in group.elements:
            for a in A.carriers[c].elements:
                if h(G.action[(s, c)][a]) != G.action[(s, d)][h(a)]:
                    found.append(f"{s} does not commute with {f}")
                    break
    return found


def orbifoldize(G: GroupAction, A: MonFunctor) -> MonFunctor:
    """Fixed points of the action, objectwise."""
    problems = action_violations(G, A)
    if problems:
        raise ActionNotCompatible(problems[0])
    carriers = {}
    for d, m in A.carriers.items():
        fixed = tuple(a for a in m.elements if all(G.action[(s, d)][a] == a for s in G.group.elements))
        table = {(a, b): m.mul(a, b) for a in fixed for b in fixed}
        carriers[d] = FiniteMonoid(fixed, table, m.unit, f"{m.name}^G")
    maps = {
        f: MonoidHom(carriers[s], carriers[t], {a: A.maps[f](a) for a in carriers[s].elements})
        for f, (s, t) in A.ocat.cat.morphisms.items()
    }
    return MonFunctor(A.ocat, carriers, maps, f"{A.name}^G")


# ---------------------------------------------------------------- restriction on isomorphism classes


@dataclass
class RestrictionReport:
    max_size: int
    big_classes: int
    small_classes: int
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    def as_dict(self) -> dict:
        return {
            "max_size": self.max_size,
            "big_classes": self.big_classes,
            "small_classes": self.small_classes,
            "injective": self.injective,
            "surjective": self.surjective,
            "bijective": self.bijective,
        }


def restriction_on_classes(j: OrthFunctor, max_size: int) -> RestrictionReport:
    """Restriction along ``j`` on isomorphism classes of perp-commutative
    functors whose carriers have at most ``max_size`` elements."""
    catalogue = AlgebraCatalogue(max_size)
    big = catalogue.algebras(j.target)
    small = {catalogue.key_of(A) for A in catalogue.algebras(j.source)}
    images = [catalogue.key_of(A.restrict(j)) for A in big]
    return RestrictionReport(
        max_size,
        len(big),
        len(small),
        len(set(images)) == len(images),
        small <= set(images),
    )
