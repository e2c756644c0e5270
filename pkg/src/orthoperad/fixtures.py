"""Small orthogonal categories used throughout the tests and by the CLI.

``ptmin`` / ``ptmax``
    one object ``pt``; no orthogonal pairs / the single pair ``(id_pt, id_pt)``.
``vee``
    ``g1 : c1 -> d`` and ``g2 : c2 -> d`` declared orthogonal. With the full
    subcategory on ``{c1, c2}`` the object ``d`` is not j-closed.
``wedge``
    ``f1 : c1 -> c``, ``f2 : c2 -> c``, ``g : c -> d`` with the composites
    ``g1 = g . f1`` and ``g2 = g . f2``; orthogonality generated by
    ``(f1, f2)``. With the subcategory on ``{c1, c2, c}`` every object is
    j-closed.
``disc``
    non-empty proper subsets of ``{0, 1, 2, 3}`` ordered by inclusion, with
    disjoint inclusions orthogonal. The subcategory keeps singletons,
    cyclically adjacent pairs and all three-element subsets, so the two
    non-adjacent pairs are not j-closed.
``skeleton``
    ``k : p -> q`` together with an isomorphic copy ``q2`` of ``q``
    (``u : q -> q2`` with inverse ``v``); orthogonality generated by
    ``(k, k)``. The subcategory on ``{p, q}`` is a skeleton.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .orthocat import (
    OrthCategory,
    OrthFunctor,
    build_category,
    full_subcategory,
    orth_closure,
)


@dataclass(frozen=True)
class Fixture:
    name: str
    dbar: OrthCategory
    sub_objects: tuple[str, ...]

    def embedding(self) -> tuple[OrthCategory, OrthFunctor]:
        return full_subcategory(self.dbar, self.sub_objects, name=f"{self.name}_sub")


def ptmin() -> OrthCategory:
    cat = build_category(["pt"], {})
    return OrthCategory(cat, frozenset(), "ptmin")


def ptmax() -> OrthCategory:
    cat = build_category(["pt"], {})
    return OrthCategory(cat, frozenset({("id_pt", "id_pt")}), "ptmax")


def vee(orthogonal: bool = True) -> OrthCategory:
    cat = build_category(["c1", "c2", "d"], {"g1": ("c1", "d"), "g2": ("c2", "d")})
    orth = frozenset({("g1", "g2"), ("g2", "g1")}) if orthogonal else frozenset()
    return OrthCategory(cat, orth, "vee" if orthogonal else "vee_empty")


def wedge() -> OrthCategory:
    cat = build_category(
        ["c1", "c2", "c", "d"],
        {
            "f1": ("c1", "c"),
            "f2": ("c2", "c"),
            "g": ("c", "d"),
            "g1": ("c1", "d"),
            "g2": ("c2", "d"),
        },
        {("g", "f1"): "g1", ("g", "f2"): "g2"},
    )
    return OrthCategory(cat, orth_closure(cat, [("f1", "f2")]), "wedge")


def _subset_name(s: tuple[int, ...]) -> str:
    return "s" + "".join(map(str, s))


def disc() -> OrthCategory:
    subsets = [s for r in (1, 2, 3) for s in combinations(range(4), r)]
    objects = [_subset_name(s) for s in subsets]
    morphisms: dict[str, tuple[str, str]] = {}
    incl: dict[tuple[tuple[int, ...], tuple[int, ...]], str] = {}
    for a in subsets:
        for b in subsets:
            if a != b and set(a) <= set(b):
                name = f"i_{_subset_name(a)}_{_subset_name(b)}"
                morphisms[name] = (_subset_name(a), _subset_name(b))
                incl[(a, b)] = name
    composites = {}
    for (a, b), f in incl.items():
        for (b2, c), g in incl.items():
            if b2 == b:
                composites[(g, f)] = incl[(a, c)]
    cat = build_category(objects, morphisms, composites)
    ids = {_subset_name(s): f"id_{_subset_name(s)}" for s in subsets}

    def mor(a, b):
        return ids[_subset_name(a)] if a == b else incl[(a, b)]

    orth = set()
    for t in subsets:
        below = [s for s in subsets if set(s) <= set(t)]
        for a in below:
            for b in below:
                if not set(a) & set(b):
                    orth.add((mor(a, t), mor(b, t)))
    return OrthCategory(cat, frozenset(orth), "disc")


DISC_SUB = tuple(
    _subset_name(s)
    for s in [(0,), (1,), (2,), (3,), (0, 1), (1, 2), (2, 3), (0, 3)]
    + list(combinations(range(4), 3))
)


def skeleton() -> OrthCategory:
    cat = build_category(
        ["p", "q", "q2"],
        {"k": ("p", "q"), "u": ("q", "q2"), "v": ("q2", "q"), "uk": ("p", "q2")},
        {
            ("u", "k"): "uk",
            ("v", "u"): "id_q",
            ("u", "v"): "id_q2",
            ("v", "uk"): "k",
        },
    )
    return OrthCategory(cat, orth_closure(cat, [("k", "k")]), "skeleton")


def all_fixtures() -> dict[str, Fixture]:
    return {
        "ptmin": Fixture("ptmin", ptmin(), ("pt",)),
        "ptmax": Fixture("ptmax", ptmax(), ("pt",)),
        "vee": Fixture("vee", vee(), ("c1", "c2")),
        "vee_empty": Fixture("vee_empty", vee(orthogonal=False), ("c1", "c2")),
        "wedge": Fixture("wedge", wedge(), ("c1", "c2", "c")),
        "disc": Fixture("disc", disc(), DISC_SUB),
        "skeleton": Fixture("skeleton", skeleton(), ("p", "q")),
    }
