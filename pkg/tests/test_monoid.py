from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthoperad.errors import BudgetExceeded
from orthoperad.monoid import (
    DISTINCT,
    EQUAL,
    FiniteMonoid,
    MonoidHom,
    PresentedMonoid,
    are_isomorphic,
    automorphisms,
    congruence_classes,
    cyclic_group,
    direct_product,
    element_count,
    enumerate_monoids,
    equal_within_bound,
    free_monoid,
    homomorphisms,
    knuth_bendix,
    to_presentation,
)


def words(alphabet, L):
    for n in range(L + 1):
        yield from product(alphabet, repeat=n)


def bounded_oracle(alphabet, relations, L):
    """Plain search: connect words of length <= L by single relation applications."""
    ws = list(words(alphabet, L))
    comp = {}
    for start in ws:
        if start in comp:
            continue
        comp[start] = start
        stack = [start]
        while stack:
            w = stack.pop()
            for l, r in relations:
                for pat, rep in ((l, r), (r, l)):
                    for i in range(len(w) - len(pat) + 1):
                        if w[i : i + len(pat)] == tuple(pat):
                            v = w[:i] + tuple(rep) + w[i + len(pat) :]
                            if len(v) <= L and v not in comp:
                                comp[v] = start
                                stack.append(v)
    parts = {}
    for w, root in comp.items():
        parts.setdefault(root, set()).add(w)
    return list(parts.values())


def as_sets(classes):
    return sorted((frozenset(c) for c in classes.classes), key=lambda s: sorted(s))


def test_free_monoid_classes():
    m = free_monoid("ab")
    c = congruence_classes(m, 2)
    assert c.count == 7
    assert all(len(part) == 1 for part in c.classes)


def test_classes_examples():
    m = PresentedMonoid(("a", "b"), [(("a", "a"), ())])
    c = congruence_classes(m, 2)
    assert c.count == 6
    assert c.same((), ("a", "a"))
    z2z2 = PresentedMonoid(("a", "b"), [(("a", "b"), ("b", "a")), (("a", "a"), ()), (("b", "b"), ())])
    expected = [{()} | {("a", "a"), ("b", "b")}, {("a",)}, {("b",)}, {("a", "b"), ("b", "a")}]
    assert sorted(map(frozenset, expected), key=sorted) == as_sets(congruence_classes(z2z2, 2))


def test_equal_within_bound_examples():
    free_product = PresentedMonoid(("a", "b"), [(("a", "a"), ()), (("b", "b"), ())])
    assert equal_within_bound(free_product, ("a",), ("a",)) == EQUAL
    # the rewriting system aa -> 1, bb -> 1 is confluent, so this is certified
    assert equal_within_bound(free_product, ("a", "b"), ("b", "a"), 4) == DISTINCT
    # the bounded closure alone separates them as well
    assert not congruence_classes(free_product, 4).same(("a", "b"), ("b", "a"))
    ab = PresentedMonoid(free_product.alphabet, free_product.relations + ((("a", "b"), ("b", "a")),))
    assert equal_within_bound(ab, ("a", "b"), ("b", "a")) == EQUAL
    assert element_count(free_product, 2) == 5
    assert element_count(ab, 2) == 4
    assert element_count(free_monoid("x"), 3) == 4


def test_length_preserving_relations_are_exact():
    m = PresentedMonoid(("a", "b", "c"), [(("a", "b"), ("b", "a")), (("b", "c"), ("c", "b"))])
    assert m.length_preserving and m.exact
    assert equal_within_bound(m, ("a", "c"), ("c", "a")) == DISTINCT
    assert equal_within_bound(m, ("a", "b", "c"), ("c", "b", "a")) == DISTINCT
    assert equal_within_bound(m, ("a", "b", "c"), ("b", "c", "a")) == DISTINCT
    assert equal_within_bound(m, ("a", "b", "b"), ("b", "b", "a")) == EQUAL


def test_equality_only_through_longer_words():
    # x y = 1 and y z = 1 force x = x y z = z, but only through a word of length 3
    m = PresentedMonoid(("x", "y", "z"), [(("x", "y"), ()), (("y", "z"), ())])
    assert equal_within_bound(m, ("x",), ("z",)) == EQUAL
    oracle = bounded_oracle("xyz", m.relations, 2)
    assert not any({("x",), ("z",)} <= part for part in oracle)
    assert any({("x",), ("z",)} <= part for part in bounded_oracle("xyz", m.relations, 3))


def test_unknown_verdict_without_completion():
    # commutation plus a length-increasing relation; completion is cut short by a tiny budget
    rels = [((0, 1), (1, 0)), ((0, 0), (1, 1, 1))]
    assert knuth_bendix(rels, max_rules=1) is None


@pytest.mark.parametrize("seed", range(12))
def test_engine_refines_bounded_search(seed):
    rng = random.Random(seed)
    alphabet = "ab" if seed % 2 else "abc"
    rels = []
    for _ in range(rng.randint(1, 3)):
        l = tuple(rng.choice(alphabet) for _ in range(rng.randint(1, 2)))
        r = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 2)))
        rels.append((l, r))
    m = PresentedMonoid(tuple(alphabet), rels)
    L = 3
    engine = m.classes(L)
    for part in bounded_oracle(alphabet, rels, L):
        ids = {engine.class_of[w] for w in part}
        assert len(ids) == 1
    if not m.exact:
        assert as_sets(engine) == sorted(map(frozenset, bounded_oracle(alphabet, rels, L)), key=sorted)


def test_increasing_bound_never_splits_classes():
    m = PresentedMonoid(("a", "b"), [(("a", "b", "a"), ("b",)), (("b", "b"), ("a",))])
    small, large = m.classes(3), m.classes(5)
    for part in small.classes:
        assert len({large.class_of[w] for w in part}) == 1


def test_budget():
    with pytest.raises(BudgetExceeded):
        free_monoid("abcd").classes(10, budget=1000)


def test_finite_monoids():
    assert [len(enumerate_monoids(n)) for n in range(1, 5)] == [1, 2, 7, 35]
    z4 = cyclic_group(4)
    assert z4.violations() == []
    assert len(automorphisms(z4)) == 2
    v4 = direct_product(cyclic_group(2), cyclic_group(2))
    assert len(automorphisms(v4)) == 6
    assert not are_isomorphic(z4, v4)
    assert sum(1 for _ in homomorphisms(cyclic_group(2), v4)) == 4


def test_finite_monoid_violations():
    bad = FiniteMonoid(("e", "x"), {("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "e", ("x", "x"): "x"}, "e")
    assert bad.violations()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_presentation_of_finite_monoid_stabilizes(n):
    for m in enumerate_monoids(n):
        P = to_presentation(m)
        for L in (2, 3, 4):
            assert element_count(P, L) == len(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 6))
def test_cyclic_presentations(n, L):
    # a^n = 1: the classes of words of length <= L are a^0 .. a^min(L, n-1)
    m = PresentedMonoid(("a",), [(("a",) * n, ())])
    assert element_count(m, L) == min(L, n - 1) + 1


def test_hom_validation():
    z2, z4 = cyclic_group(2), cyclic_group(4)
    good = MonoidHom(z2, z4, {"z0": "z0", "z1": "z2"})
    assert good.violations() == []
    bad = MonoidHom(z2, z4, {"z0": "z0", "z1": "z1"})
    assert bad.violations()
    P = PresentedMonoid(("a",), [(("a", "a"), ())])
    assert MonoidHom(P, z4, {"a": "z2"}).violations() == []
    assert MonoidHom(P, z4, {"a": "z1"}).violations()
    F = free_monoid("xy")
    assert MonoidHom(F, P, {"x": ("a",), "y": ()}).violations() == []
