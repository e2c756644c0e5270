from __future__ import annotations

import random
from itertools import product

import pytest

from orthoperad.algebra import MonFunctor, check_perp_commutative, free_algebra
from orthoperad.corpus import documents
from orthoperad.dsl import load
from orthoperad.errors import ActionNotCompatible
from orthoperad.extension import (
    GroupAction,
    compare_extensions,
    is_j_local,
    j_closedness_agreement,
    lan_extension,
    lan_presentation,
    operadic_left_adjoint,
    orbifoldize,
    probe_generators,
    restriction_on_classes,
    trivial_action,
    unit_comparison,
)
from orthoperad.fixtures import all_fixtures
from orthoperad.monoid import (
    automorphisms,
    cyclic_group,
    direct_product,
    element_count,
    enumerate_monoids,
    homomorphisms,
    trivial_monoid,
)
from orthoperad.orthocat import full_subcategory, is_j_closed

from random_cats import random_poset


def embedding(name):
    return all_fixtures()[name].embedding()[1]


def constant(ocat, m):
    maps = {f: {x: x for x in m.elements} for f in ocat.cat.morphisms}
    return MonFunctor.build(ocat, {o: m for o in ocat.objects}, maps)


# ---------------------------------------------------------------- Kan and operadic extensions


def test_vee_counts_at_apex():
    j = embedding("vee")
    kan, op = compare_extensions(j, constant(j.source, cyclic_group(2)), 2)
    # words in two involutions of length <= 2: 1, a, b, ab, ba; commuting merges ab and ba
    assert kan.counts["d"] == 5
    assert op.counts["d"] == 4
    assert not kan.perp_commutative["d"]
    assert op.perp_commutative["d"]
    assert not kan.iso["d"].iso
    assert kan.iso["c1"].iso and kan.iso["c2"].iso


def test_wedge_iso_everywhere():
    j = embedding("wedge")
    kan, op = compare_extensions(j, constant(j.source, cyclic_group(2)), 4)
    assert all(v.iso for v in kan.iso.values())
    assert kan.counts == op.counts


def test_lan_presentation_letters():
    j = embedding("vee")
    P = lan_presentation(j, constant(j.source, cyclic_group(2)), "d", 2)
    assert set(P.alphabet) == {("g1", "z0"), ("g1", "z1"), ("g2", "z0"), ("g2", "z1")}


def test_lan_of_trivial_is_trivial():
    j = embedding("wedge")
    ext = lan_extension(j, constant(j.source, trivial_monoid()), 3)
    assert all(element_count(m, 3) == 1 for m in ext.carriers.values())


def test_operadic_extension_is_perp_commutative():
    j = embedding("disc")
    ext = operadic_left_adjoint(j, free_algebra(j.source, {"s0": ["x"], "s2": ["y"]}, 2), 2)
    assert check_perp_commutative(ext, L=2).ok


@pytest.mark.parametrize("name", ["ptmin", "ptmax", "vee", "wedge", "skeleton"])
def test_unit_comparison_on_probes(name):
    j = embedding(name)
    probe = free_algebra(j.source, probe_generators(j), 3)
    for c in j.source.objects:
        assert unit_comparison(j, probe, c, 3).iso


def test_wedge_unit_at_four():
    j = embedding("wedge")
    probe = free_algebra(j.source, probe_generators(j), 4)
    for c in j.source.objects:
        v = unit_comparison(j, probe, c, 4)
        assert v.iso and v.exact


# ---------------------------------------------------------------- j-closedness


@pytest.mark.parametrize("name", sorted(all_fixtures()))
def test_closedness_agreement_fixtures(name):
    results = j_closedness_agreement(embedding(name))
    assert all(r.agree for r in results), [r for r in results if not r.agree]


def test_closedness_expected_objects():
    by_obj = {r.obj: r.syntactic for r in j_closedness_agreement(embedding("vee"))}
    assert by_obj == {"c1": True, "c2": True, "d": False}
    disc = {r.obj: r.syntactic for r in j_closedness_agreement(embedding("disc"))}
    assert sorted(o for o, v in disc.items() if not v) == ["s02", "s13"]


def test_closedness_agreement_random_posets():
    rng = random.Random(7)
    for _ in range(12):
        dbar = random_poset(rng, rng.randint(2, 4))
        subset = [o for o in dbar.objects if rng.random() < 0.6] or [dbar.objects[0]]
        _, j = full_subcategory(dbar, subset)
        assert all(r.agree for r in j_closedness_agreement(j))


def test_probe_doubles_shared_sources():
    j = embedding("ptmax")
    assert probe_generators(j) == {"pt": ["x_pt", "y_pt"]}
    assert probe_generators(embedding("vee")) == {"c1": ["x_c1"], "c2": ["x_c2"]}


def test_closed_objects_in_image():
    j = embedding("disc")
    for c in j.source.objects:
        assert is_j_closed(j.target, j, j.ob(c)).closed


# ---------------------------------------------------------------- locality


def test_wedge_constant_is_local():
    j = embedding("wedge")
    assert is_j_local(j, constant(j.target, cyclic_group(2)), 3).local


def test_vee_product_algebra_is_local():
    ws = load(documents()["vee"])
    assert is_j_local(ws.functors["j"], ws.monfunctors["A"], 3).local


def test_vee_constant_not_local():
    j = embedding("vee")
    report = is_j_local(j, constant(j.target, cyclic_group(2)), 3)
    assert report.per_object["c1"].iso
    v = report.per_object["d"]
    # the extension at d is Z2 x Z2, mapped onto Z2
    assert v.surjective and not v.injective


# ---------------------------------------------------------------- orbifolds


def test_orbifold_swap():
    ws = load(documents()["ptmax"])
    G, name = ws.actions["G"]
    fixed = orbifoldize(G, ws.monfunctors[name])
    assert fixed.carriers["pt"].elements == ("z0_z0", "z1_z1")


def test_trivial_action_fixes_everything():
    A = constant(all_fixtures()["wedge"].dbar, cyclic_group(3))
    fixed = orbifoldize(trivial_action(A), A)
    assert all(len(m) == 3 for m in fixed.carriers.values())


def test_incompatible_action_rejected():
    A = constant(all_fixtures()["ptmax"].dbar, cyclic_group(3))
    z2 = cyclic_group(2)
    bad = {
        ("z0", "pt"): {x: x for x in ("z0", "z1", "z2")},
        ("z1", "pt"): {"z0": "z1", "z1": "z0", "z2": "z2"},
    }
    with pytest.raises(ActionNotCompatible):
        orbifoldize(GroupAction(z2, bad), A)


def test_non_natural_action_rejected():
    v4 = direct_product(cyclic_group(2), cyclic_group(2))
    fx = all_fixtures()["vee"]
    A = constant(fx.dbar, v4)
    swap = {"z0_z0": "z0_z0", "z0_z1": "z1_z0", "z1_z0": "z0_z1", "z1_z1": "z1_z1"}
    ident = {x: x for x in v4.elements}
    action = {("z0", o): ident for o in fx.dbar.objects}
    action.update({("z1", "d"): swap, ("z1", "c1"): ident, ("z1", "c2"): ident})
    with pytest.raises(ActionNotCompatible, match="commute"):
        orbifoldize(GroupAction(cyclic_group(2), action), A)


# ---------------------------------------------------------------- restriction on classes


def burnside_arrow_classes(max_size):
    """Orbits of Aut(M) x Aut(N) on the homomorphisms M -> N with commutative
    image, summed over small monoids; k is orthogonal to itself."""
    monoids = [m for n in range(1, max_size + 1) for m in enumerate_monoids(n)]
    total = 0
    for M, N in product(monoids, repeat=2):
        homs = [
            h
            for h in homomorphisms(M, N)
            if all(N.mul(h[x], h[y]) == N.mul(h[y], h[x]) for x in M.elements for y in M.elements)
        ]
        group = list(product(automorphisms(M), automorphisms(N)))
        fixed = 0
        for a, b in group:
            for h in homs:
                fixed += all(b[h[x]] == h[a[x]] for x in M.elements)
        assert fixed % len(group) == 0
        total += fixed // len(group)
    return total


def test_skeleton_restriction_bijective():
    report = restriction_on_classes(embedding("skeleton"), 3)
    assert report.bijective
    assert report.small_classes == burnside_arrow_classes(3)


def test_vee_restriction_not_injective():
    report = restriction_on_classes(embedding("vee"), 2)
    assert report.surjective and not report.injective
