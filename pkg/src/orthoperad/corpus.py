"""The shipped example documents, one per fixture.

Each document declares the fixture category, its full subcategory with
embedding ``j`` and a few small algebras. ``documents()`` builds them from
the library; the files under ``data/`` are their printed form.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .algebra import MonFunctor
from .dsl import (
    DslDocument,
    SubcategoryDecl,
    action_decl,
    category_decls,
    monfunctor_decl,
    monoid_decl,
    print_document,
)
from .extension import GroupAction
from .fixtures import all_fixtures
from .monoid import FiniteMonoid, cyclic_group, direct_product, trivial_monoid
from .orthocat import OrthCategory


def _z2() -> FiniteMonoid:
    m = cyclic_group(2)
    return FiniteMonoid(m.elements, m.table, m.unit, "Z2")


def _v4() -> FiniteMonoid:
    m = direct_product(cyclic_group(2), cyclic_group(2))
    return FiniteMonoid(m.elements, m.table, m.unit, "V4")


def _constant(ocat: OrthCategory, m: FiniteMonoid, name: str) -> MonFunctor:
    maps = {f: {a: a for a in m.elements} for f in ocat.cat.morphisms}
    return MonFunctor.build(ocat, {o: m for o in ocat.objects}, maps, name)


def _vee_algebra(ocat: OrthCategory, z2: FiniteMonoid, v4: FiniteMonoid) -> MonFunctor:
    carriers = {"c1": z2, "c2": z2, "d": v4}
    maps = {"g1": {"z0": "z0_z0", "z1": "z1_z0"}, "g2": {"z0": "z0_z0", "z1": "z0_z1"}}
    return MonFunctor.build(ocat, carriers, maps, "A")


def _swap(v4: FiniteMonoid, z2: FiniteMonoid) -> GroupAction:
    swap = {"z0_z0": "z0_z0", "z0_z1": "z1_z0", "z1_z0": "z0_z1", "z1_z1": "z1_z1"}
    ident = {a: a for a in v4.elements}
    return GroupAction(z2, {("z0", "pt"): ident, ("z1", "pt"): swap}, "G")


def documents() -> dict[str, DslDocument]:
    z2, v4, one = _z2(), _v4(), trivial_monoid()
    one = FiniteMonoid(one.elements, one.table, one.unit, "One")
    names = {id(z2): "Z2", id(v4): "V4", id(one): "One"}
    out = {}
    for name, fx in all_fixtures().items():
        cbar, _ = fx.embedding()
        decls = category_decls(fx.dbar)
        decls.append(SubcategoryDecl(cbar.name, name, tuple(cbar.objects), "j"))
        if name == "disc":
            decls.append(monoid_decl(one))
            decls.append(monfunctor_decl(_constant(cbar, one, "B"), names))
        elif name == "ptmax":
            decls += [monoid_decl(z2), monoid_decl(v4)]
            decls.append(monfunctor_decl(_constant(fx.dbar, v4, "A"), names))
            decls.append(action_decl(_swap(v4, z2), "A", "Z2"))
        else:
            decls.append(monoid_decl(z2))
            if name == "vee":
                decls.append(monoid_decl(v4))
                decls.append(monfunctor_decl(_vee_algebra(fx.dbar, z2, v4), names))
            decls.append(monfunctor_decl(_constant(cbar, z2, "B"), names))
        out[name] = DslDocument(tuple(decls))
    return out


def names() -> list[str]:
    return sorted(all_fixtures())


def source(name: str) -> str:
    return resources.files(__package__).joinpath("data", f"{name}.oc").read_text()


def write_all(directory) -> None:
    """Regenerate the shipped files."""
    for name, doc in documents().items():
        header = f"# {name}: written by orthoperad.corpus.write_all\n"
        Path(directory, f"{name}.oc").write_text(header + print_document(doc))
