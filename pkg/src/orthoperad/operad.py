"""The colored operads O_C and their quotients by orthogonal swaps.

An operation with target ``t`` and profile ``(c_1, ..., c_n)`` is a pair
``(sigma, f)`` with ``sigma`` in Sigma_n and ``f_i : c_i -> t``. Reading
``f`` in the order ``right_act(f, sigma^-1)`` gives the order in which the
inputs get multiplied; two operations are identified when one ordering is
reached from the other by swapping adjacent orthogonal entries.
Every element handed out by this module is the canonical representative of
its class: the lexicographically least ``sigma`` in the swap orbit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, LengthMismatch, ProfileMismatch, UnknownObject
from .orthocat import FinCategory, OrthCategory, OrthFunctor
from .perm import (
    Permutation,
    all_permutations,
    block_perm,
    block_sum,
    compose,
    compose_family,
    right_act,
)


@dataclass(frozen=True, order=True)
class OperadElement:
    target: str
    profile: tuple[str, ...]
    sigma: Permutation
    morphisms: tuple[str, ...]
    canonical: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.sigma)
        if len(self.profile) != n or len(self.morphisms) != n:
            raise LengthMismatch(
                f"permutation of length {n} with {len(self.profile)} colors "
                f"and {len(self.morphisms)} morphisms"
            )

    @property
    def arity(self) -> int:
        return len(self.sigma)

    def evaluation_order(self) -> tuple[int, ...]:
        """0-based input indices in the order their values get multiplied."""
        inv = self.sigma.inverse()
        return tuple(i - 1 for i in inv.images)

    def __str__(self) -> str:
        return f"{self.target}{list(self.sigma.images)}({', '.join(self.morphisms)})"


@lru_cache(maxsize=1 << 16)
def _least_in_orbit(
    images: tuple[int, ...], morphisms: tuple[str, ...], orth: frozenset
) -> tuple[int, ...]:
    start = Permutation(images)
    seen = {images}
    queue = deque([start])
    n = len(images)
    while queue:
        sigma = queue.popleft()
        seq = right_act(morphisms, sigma.inverse())
        for k in range(1, n):
            if (seq[k - 1], seq[k]) in orth:
                nxt = compose(Permutation.transposition(n, k), sigma)
                if nxt.images not in seen:
                    seen.add(nxt.images)
                    queue.append(nxt)
    return min(seen)


def orbit(el: OperadElement, orth: frozenset) -> set[Permutation]:
    """All permutations reachable from ``el.sigma`` by orthogonal swaps."""
    n = el.arity
    seen = {el.sigma}
    queue = deque([el.sigma])
    while queue:
        sigma = queue.popleft()
        seq = right_act(el.morphisms, sigma.inverse())
        for k in range(1, n):
            if (seq[k - 1], seq[k]) in orth:
                nxt = compose(Permutation.transposition(n, k), sigma)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


def canonicalize(el: OperadElement, orth: Iterable[tuple[str, str]]) -> OperadElement:
    orth = orth if isinstance(orth, frozenset) else frozenset(orth)
    least = _least_in_orbit(el.sigma.images, el.morphisms, orth)
    return replace(el, sigma=Permutation(least), canonical=True)


def equivalent(a: OperadElement, b: OperadElement, orth: Iterable[tuple[str, str]]) -> bool:
    if (a.target, a.profile, a.morphisms) != (b.target, b.profile, b.morphisms):
        return False
    return canonicalize(a, orth).sigma == canonicalize(b, orth).sigma


class ColoredOperad:
    """The operad of an orthogonal category, with memoized components."""

    def __init__(self, ocat: OrthCategory):
        self.ocat = ocat
        self.cat: FinCategory = ocat.cat
        self.orth: frozenset = ocat.orth
        self._components: dict[tuple[str, tuple[str, ...]], tuple[OperadElement, ...]] = {}

    def _check_object(self, obj: str) -> None:
        if obj not in self.cat.identities:
            raise UnknownObject(f"unknown object {obj!r}")

    def element(
        self, target: str, sigma: Permutation | Sequence[int], morphisms: Sequence[str]
    ) -> OperadElement:
        """Build and canonicalize ``(sigma, morphisms)``; the profile is read off the sources."""
        self._check_object(target)
        if not isinstance(sigma, Permutation):
            sigma = Permutation(tuple(sigma))
        profile = []
        for f in morphisms:
            if f not in self.cat.morphisms:
                raise KeyError(f"unknown morphism {f!r}")
            s, t = self.cat.morphisms[f]
            if t != target:
                raise ProfileMismatch(f"{f} has target {t}, expected {target}")
            profile.append(s)
        raw = OperadElement(target, tuple(profile), sigma, tuple(morphisms))
        return self.canonicalize(raw)

    def canonicalize(self, el: OperadElement) -> OperadElement:
        return canonicalize(el, self.orth)

    def raw_elements(self, target: str, profile: Sequence[str]) -> Iterator[OperadElement]:
        """Every pair ``(sigma, f)`` before passing to classes."""
        self._check_object(target)
        for c in profile:
            self._check_object(c)
        profile = tuple(profile)
        homs = [self.cat.hom(c, target) for c in profile]
        for sigma in all_permutations(len(profile)):
            for fs in product(*homs):
                yield OperadElement(target, profile, sigma, fs)

    def component(self, target: str, profile: Sequence[str]) -> tuple[OperadElement, ...]:
        key = (target, tuple(profile))
        cached = self._components.get(key)
        if cached is not None:
            return cached
        classes = {self.canonicalize(el) for el in self.raw_elements(target, profile)}
        return self._components.setdefault(key, tuple(sorted(classes)))

    def unit(self, t: str) -> OperadElement:
        self._check_object(t)
        return OperadElement(t, (t,), Permutation.identity(1), (self.cat.identities[t],), True)

    def act(self, el: OperadElement, sigma_prime: Permutation) -> OperadElement:
        if len(sigma_prime) != el.arity:
            raise LengthMismatch(
                f"permutation of length {len(sigma_prime)} on an operation of arity {el.arity}"
            )
        moved = OperadElement(
            el.target,
            right_act(el.profile, sigma_prime),
            compose(el.sigma, sigma_prime),
            right_act(el.morphisms, sigma_prime),
        )
        return self.canonicalize(moved)

    def gamma(self, outer: OperadElement, inners: Sequence[OperadElement]) -> OperadElement:
        if len(inners) != outer.arity:
            raise ProfileMismatch(f"{len(inners)} inputs for an operation of arity {outer.arity}")
        for i, (c, inner) in enumerate(zip(outer.profile, inners)):
            if inner.target != c:
                raise ProfileMismatch(
                    f"input {i + 1} has target {inner.target}, expected color {c}"
                )
        sigma = compose_family(outer.sigma, [inner.sigma for inner in inners])
        fs: list[str] = []
        profile: list[str] = []
        for f, inner in zip(outer.morphisms, inners):
            fs.extend(self.cat.compose(f, g) for g in inner.morphisms)
            profile.extend(inner.profile)
        return self.canonicalize(OperadElement(outer.target, tuple(profile), sigma, tuple(fs)))


def operad_morphism_apply(F: OrthFunctor, el: OperadElement) -> OperadElement:
    """The induced operad morphism: ``(sigma, f) -> (sigma, F(f))``."""
    image = OperadElement(
        F.ob(el.target),
        tuple(F.ob(c) for c in el.profile),
        el.sigma,
        tuple(F(f) for f in el.morphisms),
    )
    return canonicalize(image, F.target.orth)


@dataclass
class AxiomReport:
    arity_bound: int
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "arity_bound": self.arity_bound,
            "checked": dict(sorted(self.checked.items())),
            "violations": [list(v) for v in self.violations],
        }


AXIOMS = (
    "action",
    "unit",
    "equivariance_outer",
    "equivariance_inner",
    "associativity",
    "descent",
)


class _Checker:
    """Exhaustive axiom checker over a bounded part of the operad.

    Every class is ``act([e, f], sigma)`` for an operation ``[e, f]`` with
    identity permutation. So once ``act`` is verified to be a right action on
    all classes and both equivariance laws hold for every permutation, the
    composition laws need only be checked on operations of the form
    ``[e, f]``; with ``full=True`` all classes are used instead.
    """

    def __init__(
        self, op: ColoredOperad, bound: int, pool: Sequence[str], budget: int, full: bool
    ):
        self.op = op
        self.bound = bound
        self.pool = tuple(pool)
        self.budget = budget
        self.full = full
        self.report = AxiomReport(bound, {a: 0 for a in AXIOMS})
        self.spent = 0
        self._ops: dict[tuple[str, int, bool], list[OperadElement]] = {}
        self._ids: dict[OperadElement, int] = {}
        self._els: list[OperadElement] = []
        self._gamma: dict[tuple[int, tuple[int, ...]], int] = {}

    def tick(self, axiom: str) -> None:
        self.report.checked[axiom] += 1
        self.spent += 1
        if self.spent > self.budget:
            raise BudgetExceeded(
                f"axiom check exceeded its budget of {self.budget} instances", self.report
            )

    def fail(self, axiom: str, message: str) -> None:
        self.report.violations.append((axiom, message))

    def intern(self, el: OperadElement) -> int:
        i = self._ids.get(el)
        if i is None:
            i = self._ids[el] = len(self._els)
            self._els.append(el)
        return i

    def gamma(self, outer: int, inners: tuple[int, ...]) -> int:
        key = (outer, inners)
        out = self._gamma.get(key)
        if out is None:
            els = self._els
            out = self.intern(self.op.gamma(els[outer], [els[i] for i in inners]))
            self._gamma[key] = out
        return out

    def operations(self, target: str, arity: int, generic: bool) -> list[OperadElement]:
        """Classes of the given target and arity; only ``[e, f]`` ones if ``generic``."""
        key = (target, arity, generic)
        if key not in self._ops:
            out: set[OperadElement] = set()
            cat = self.op.cat
            for profile in product(self.pool, repeat=arity):
                if generic:
                    homs = [cat.hom(c, target) for c in profile]
                    e = Permutation.identity(arity)
                    for fs in product(*homs):
                        out.add(self.op.canonicalize(OperadElement(target, profile, e, fs)))
                else:
                    out.update(self.op.component(target, profile))
            self._ops[key] = sorted(out)
        return self._ops[key]

    def all_operations(self, max_arity: int, generic: bool) -> Iterator[OperadElement]:
        for t in self.pool:
            for n in range(max_arity + 1):
                yield from self.operations(t, n, generic)

    def families(
        self, colors: Sequence[str], total: int, generic: bool
    ) -> Iterator[tuple[OperadElement, ...]]:
        """Families of operations with the given targets and total arity at most ``total``."""
        if not colors:
            yield ()
            return
        head, rest = colors[0], colors[1:]
        for k in range(total + 1):
            for el in self.operations(head, k, generic):
                for tail in self.families(rest, total - k, generic):
                    yield (el,) + tail

    def run(self) -> AxiomReport:
        self._check_action_and_unit()
        self._check_composition()
        self._check_descent()
        return self.report

    def _check_action_and_unit(self) -> None:
        op = self.op
        for el in self.all_operations(self.bound, generic=False):
            self.tick("unit")
            if op.gamma(op.unit(el.target), [el]) != el:
                self.fail("unit", f"left unit fails at {el}")
            if op.gamma(el, [op.unit(c) for c in el.profile]) != el:
                self.fail("unit", f"right unit fails at {el}")
            perms = list(all_permutations(el.arity))
            if op.act(el, Permutation.identity(el.arity)) != el:
                self.fail("action", f"identity does not act trivially on {el}")
            for a in perms:
                moved = op.act(el, a)
                for b in perms:
                    self.tick("action")
                    if op.act(moved, b) != op.act(el, compose(a, b)):
                        self.fail("action", f"{el} by {a} then {b}")

    def _check_composition(self) -> None:
        op, bound, generic = self.op, self.bound, not self.full
        for el in self.all_operations(bound, generic):
            m = el.arity
            el_id = self.intern(el)
            for inners in self.families(el.profile, bound, generic):
                inner_ids = tuple(self.intern(i) for i in inners)
                composite = self.gamma(el_id, inner_ids)
                composite_el = self._els[composite]
                sizes = [inner.arity for inner in inners]
                for sp in all_permutations(m):
                    self.tick("equivariance_outer")
                    lhs = op.gamma(op.act(el, sp), right_act(inners, sp))
                    rhs = op.act(composite_el, block_perm(sp, sizes))
                    if lhs != rhs:
                        self.fail("equivariance_outer", f"{el} with {sp} on {_fmt(inners)}")
                for sps in product(*(list(all_permutations(k)) for k in sizes)):
                    self.tick("equivariance_inner")
                    lhs = op.gamma(el, [op.act(inner, s) for inner, s in zip(inners, sps)])
                    rhs = op.act(composite_el, block_sum(sps))
                    if lhs != rhs:
                        self.fail("equivariance_inner", f"{el} on {_fmt(inners)}")
                for leaves in self.families(composite_el.profile, bound, generic):
                    self.tick("associativity")
                    leaf_ids = tuple(self.intern(x) for x in leaves)
                    lhs_id = self.gamma(composite, leaf_ids)
                    grouped, pos = [], 0
                    for inner_id, k in zip(inner_ids, sizes):
                        grouped.append(self.gamma(inner_id, leaf_ids[pos : pos + k]))
                        pos += k
                    if lhs_id != self.gamma(el_id, tuple(grouped)):
                        self.fail("associativity", f"{el} on {_fmt(inners)} on {_fmt(leaves)}")

    def _check_descent(self) -> None:
        """gamma and act computed on arbitrary representatives land in the same class."""
        op, bound = self.op, self.bound
        for t in self.pool:
            for m in range(1, bound + 1):
                for profile in product(self.pool, repeat=m):
                    for raw in op.raw_elements(t, profile):
                        canon = op.canonicalize(raw)
                        for inners in self.families(profile, bound, generic=not self.full):
                            self.tick("descent")
                            if _raw_gamma(op, raw, inners) != op.gamma(canon, inners):
                                self.fail("descent", f"gamma at {raw} on {_fmt(inners)}")
                        for sp in all_permutations(m):
                            moved = OperadElement(
                                raw.target,
                                right_act(raw.profile, sp),
                                compose(raw.sigma, sp),
                                right_act(raw.morphisms, sp),
                            )
                            self.tick("descent")
                            if op.canonicalize(moved) != op.act(canon, sp):
                                self.fail("descent", f"act at {raw} by {sp}")


def _raw_gamma(op: ColoredOperad, outer: OperadElement, inners) -> OperadElement:
    # use the largest representative of each inner class instead of the least
    raw_inners = []
    for inner in inners:
        rep = max(orbit(inner, op.orth))
        raw_inners.append(replace(inner, sigma=rep, canonical=False))
    return op.gamma(outer, raw_inners)


def _fmt(els: Sequence[OperadElement]) -> str:
    return "[" + ", ".join(map(str, els)) + "]"


def check_operad_axioms(
    ocat: OrthCategory,
    arity_bound: int = 3,
    profile_pool: Sequence[str] | None = None,
    budget: int = 10**6,
    full: bool = False,
) -> AxiomReport:
    """Check the action, unit, equivariance, associativity and descent laws.

    Instances are built from operations of arity at most ``arity_bound``
    whose colors come from ``profile_pool`` (default: all objects), with every
    composite of arity at most ``arity_bound`` as well. Composition laws are
    checked on identity-permutation operations unless ``full`` is set.
    """
    op = ColoredOperad(ocat)
    pool = ocat.objects if profile_pool is None else tuple(profile_pool)
    return _Checker(op, arity_bound, pool, budget, full).run()
