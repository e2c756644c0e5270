"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS`` or ``FAIL`` line (visible
without ``-s``) with the measured figures, then asserts.
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from importlib import resources

import pytest

from orthoperad.algebra import (
    AlgebraCatalogue,
    MonFunctor,
    check_algebra_axioms,
    check_perp_commutative,
    free_algebra,
    from_operad_algebra,
    perp_abelianization,
    presented_version,
    to_operad_algebra,
)
from orthoperad.cli import COMMANDS, run
from orthoperad.corpus import documents, names, source
from orthoperad.dsl import load, parse, print_document
from orthoperad.extension import (
    compare_extensions,
    j_closedness_agreement,
    probe_generators,
    restriction_on_classes,
    unit_comparison,
)
from orthoperad.fixtures import all_fixtures
from orthoperad.monoid import cyclic_group, direct_product, element_count, enumerate_monoids
from orthoperad.operad import ColoredOperad, check_operad_axioms
from orthoperad.orthocat import full_subcategory

import perm_laws
from random_cats import random_poset

DATA = resources.files("orthoperad") / "data"


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run_criterion(number: int, title: str):
        notes: list[str] = []
        start = time.perf_counter()
        try:
            yield notes
        except BaseException:
            line = f"criterion {number}: FAIL  {title}"
            with capsys.disabled():
                print(f"\n{line}  [{time.perf_counter() - start:.1f}s] {'; '.join(notes)}")
            raise
        with capsys.disabled():
            line = f"criterion {number}: PASS  {title}"
            print(f"\n{line}  [{time.perf_counter() - start:.1f}s] {'; '.join(notes)}")

    return run_criterion


def constant(ocat, m):
    maps = {f: {x: x for x in m.elements} for f in ocat.cat.morphisms}
    return MonFunctor.build(ocat, {o: m for o in ocat.objects}, maps)


def same_functor(A, B):
    for o, m in A.carriers.items():
        n = B.carriers[o]
        if m.elements != n.elements or m.unit != n.unit:
            return False
        if any(m.mul(a, b) != n.mul(a, b) for a in m.elements for b in m.elements):
            return False
    return all(
        A.maps[f](a) == B.maps[f](a)
        for f, (s, _) in A.ocat.cat.morphisms.items()
        for a in A.carriers[s].elements
    )


def small_monoids(max_size):
    return [m for n in range(1, max_size + 1) for m in enumerate_monoids(n)]


def test_criterion_1_permutation_laws(criterion):
    with criterion(1, "block permutation identities, exhaustive") as notes:
        start = time.perf_counter()
        total = 0
        for name, law in perm_laws.LAWS.items():
            checked, failures = law()
            total += checked
            notes.append(f"{name}: {checked} cases")
            assert failures == [], (name, failures[:3])
        elapsed = time.perf_counter() - start
        notes.append(f"{total} cases in {elapsed:.1f}s")
        assert elapsed < 10


def test_criterion_2_operad_axioms(criterion):
    fx = all_fixtures()
    with criterion(2, "operad axioms to arity 3") as notes:
        start = time.perf_counter()
        for name in ("ptmin", "ptmax", "vee", "wedge"):
            report = check_operad_axioms(fx[name].dbar, 3, budget=10**7)
            notes.append(f"{name}: {sum(report.checked.values())} checks")
            assert report.ok, report.violations[:3]
        elapsed = time.perf_counter() - start
        assert elapsed < 60


def test_criterion_3_quotient(criterion):
    fx = all_fixtures()
    with criterion(3, "component sizes with and without orthogonality") as notes:
        with_orth = ColoredOperad(fx["vee"].dbar).component("d", ("c1", "c2"))
        without = ColoredOperad(fx["vee_empty"].dbar).component("d", ("c1", "c2"))
        notes.append(f"{len(with_orth)} vs {len(without)}")
        assert len(with_orth) == 1
        assert len(without) == 2


def test_criterion_4_algebra_round_trip(criterion):
    fx = all_fixtures()
    with criterion(4, "functor <-> operad algebra round trip") as notes:
        count = 0

        def round_trip(A, arity):
            nonlocal count
            view = to_operad_algebra(A)
            report = check_algebra_axioms(view, arity)
            assert report.ok, report.violations[:3]
            assert same_functor(A, from_operad_algebra(view, check_arity=-1))
            count += 1

        monoids = small_monoids(4)
        assert len(monoids) == 45
        for m in monoids:
            round_trip(constant(fx["ptmin"].dbar, m), 3)
            if m.is_commutative():
                round_trip(constant(fx["ptmax"].dbar, m), 3)
        catalogue = AlgebraCatalogue(2)
        for name in ("vee", "vee_empty", "wedge", "skeleton"):
            for A in catalogue.algebras(fx[name].dbar):
                round_trip(A, 2)
        for name, doc in documents().items():
            for A in load(doc).monfunctors.values():
                round_trip(A, 2 if name == "disc" else 3)
        v4 = direct_product(cyclic_group(2), cyclic_group(2))
        round_trip(constant(fx["disc"].dbar, v4), 2)
        notes.append(f"{count} functors checked")
        larger = AlgebraCatalogue(3).algebras(fx["vee"].dbar)
        for A in larger:
            assert same_functor(A, from_operad_algebra(to_operad_algebra(A), check_arity=-1))
        notes.append(f"{len(larger)} more on vee without axiom checks")


def test_criterion_5_reflectivity(criterion):
    fx = all_fixtures()
    with criterion(5, "abelianization fixes perp-commutative functors") as notes:
        functors = []
        catalogue = AlgebraCatalogue(2)
        for name in ("ptmin", "ptmax", "vee", "wedge", "skeleton"):
            functors += catalogue.algebras(fx[name].dbar)
        for doc in documents().values():
            functors += load(doc).monfunctors.values()
        for name in ("vee", "wedge", "disc"):
            _, j = fx[name].embedding()
            functors.append(free_algebra(j.target, probe_generators(j), 4))
        compared = 0
        for A in functors:
            assert check_perp_commutative(A, L=4).ok
            before = presented_version(A, 4) if not _presented(A) else A
            after = perp_abelianization(A, bound=4)
            for d in A.carriers:
                for L in range(5):
                    assert element_count(after.carriers[d], L) == element_count(before.carriers[d], L), (A.name, d, L)
                    compared += 1
        notes.append(f"{len(functors)} functors, {compared} counts")


def _presented(A):
    return all(hasattr(m, "alphabet") for m in A.carriers.values())


def test_criterion_6_unit_isomorphism(criterion):
    with criterion(6, "unit of the operadic extension on the closed wedge") as notes:
        _, j = all_fixtures()["wedge"].embedding()
        probe = free_algebra(j.source, probe_generators(j), 4)
        for c in j.source.objects:
            v = unit_comparison(j, probe, c, 4)
            notes.append(f"{c}: {v.source_count}->{v.target_count}")
            assert v.iso and v.exact


def test_criterion_7_j_closed(criterion):
    with criterion(7, "syntactic and semantic j-closedness agree") as notes:
        start = time.perf_counter()
        objects = 0
        for name, fxt in sorted(all_fixtures().items()):
            _, j = fxt.embedding()
            for r in j_closedness_agreement(j):
                objects += 1
                assert r.agree, (name, r)
        rng = random.Random(2024)
        for _ in range(40):
            dbar = random_poset(rng, rng.randint(2, 5))
            subset = [o for o in dbar.objects if rng.random() < 0.6] or [dbar.objects[0]]
            _, j = full_subcategory(dbar, subset)
            for r in j_closedness_agreement(j):
                objects += 1
                assert r.agree, (dbar, subset, r)
        elapsed = time.perf_counter() - start
        notes.append(f"{objects} objects")
        assert elapsed < 120


def test_criterion_8_extension_comparison(criterion):
    fx = all_fixtures()
    with criterion(8, "Kan against operadic extension") as notes:
        _, jw = fx["wedge"].embedding()
        for A in (constant(jw.source, cyclic_group(2)), free_algebra(jw.source, probe_generators(jw), 4)):
            kan, _ = compare_extensions(jw, A, 4)
            assert all(v.iso for v in kan.iso.values())
        _, jv = fx["vee"].embedding()
        kan, op = compare_extensions(jv, constant(jv.source, cyclic_group(2)), 2)
        notes.append(f"vee at d: kan {kan.counts['d']}, operadic {op.counts['d']}")
        assert kan.counts["d"] == 5
        assert op.counts["d"] == 4


def test_criterion_9_morita(criterion):
    with criterion(9, "restriction to the skeleton is bijective on classes") as notes:
        _, j = all_fixtures()["skeleton"].embedding()
        report = restriction_on_classes(j, 4)
        notes.append(f"{report.big_classes} -> {report.small_classes} classes")
        assert report.bijective


def test_criterion_10_cli_determinism(criterion):
    with criterion(10, "byte-identical CLI output and corpus round trip") as notes:
        runs = 0
        for name in names():
            doc = parse(source(name))
            assert parse(print_document(doc)) == doc
            for command in sorted(COMMANDS):
                argv = [command, str(DATA / f"{name}.oc"), "--bound", "2", "--arity", "2"]
                first = run(argv)
                assert run(argv) == first
                runs += 2
        outputs = set()
        for seed in ("0", "1", "12345"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            proc = subprocess.run(
                [sys.executable, "-m", "orthoperad.cli", "compare", str(DATA / "vee.oc"), "--bound", "2"],
                capture_output=True,
                env=env,
            )
            outputs.add(proc.stdout)
        notes.append(f"{runs} in-process runs, 3 hash seeds")
        assert len(outputs) == 1
