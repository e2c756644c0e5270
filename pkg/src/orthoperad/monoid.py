"""Finite monoids, finitely presented monoids and their word problem.

Words are tuples of letters. A presented monoid decides equality in one of
two ways:

* if bounded Knuth-Bendix completion (shortlex order) finishes, the
  resulting confluent rewriting system gives exact normal forms;
* otherwise the congruence is closed by union-find over all words of length
  at most ``L``. When every relation is length-preserving this is still
  exact; in general two words may be equal only through longer words, and a
  "distinct" answer is then only "distinct within the bound".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations, product
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import BudgetExceeded

Letter = Hashable
Word = tuple

DEFAULT_BOUND = 6
DEFAULT_BUDGET = 10**6

EQUAL = "equal"
DISTINCT = "distinct"
DISTINCT_WITHIN_BOUND = "distinct-within-bound"


# ---------------------------------------------------------------- finite monoids


@dataclass(frozen=True)
class FiniteMonoid:
    elements: tuple
    table: Mapping[tuple, Hashable]
    unit: Hashable
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "table", dict(self.table))

    def __hash__(self) -> int:
        return hash((self.elements, tuple(sorted(self.table.items(), key=repr)), self.unit))

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, a, b):
        return self.table[(a, b)]

    def evaluate(self, word: Iterable) -> Hashable:
        out = self.unit
        for x in word:
            out = self.table[(out, x)]
        return out

    def violations(self) -> list[str]:
        found = []
        els = set(self.elements)
        if self.unit not in els:
            found.append(f"unit {self.unit!r} is not an element")
        for a, b in product(self.elements, repeat=2):
            if self.table.get((a, b)) not in els:
                found.append(f"product {a!r}*{b!r} missing or outside the carrier")
        if found:
            return found
        for a in self.elements:
            if self.mul(self.unit, a) != a or self.mul(a, self.unit) != a:
                found.append(f"unit law fails at {a!r}")
        for a, b, c in product(self.elements, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                found.append(f"associativity fails at ({a!r}, {b!r}, {c!r})")
        return found

    def is_commutative(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a, b in product(self.elements, repeat=2))

    def relabel(self, mapping: Mapping) -> FiniteMonoid:
        return FiniteMonoid(
            tuple(mapping[a] for a in self.elements),
            {(mapping[a], mapping[b]): mapping[c] for (a, b), c in self.table.items()},
            mapping[self.unit],
            self.name,
        )


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(("1",), {("1", "1"): "1"}, "1", "trivial")


def cyclic_group(n: int, prefix: str = "z") -> FiniteMonoid:
    els = tuple(f"{prefix}{i}" for i in range(n))
    table = {(els[i], els[j]): els[(i + j) % n] for i in range(n) for j in range(n)}
    return FiniteMonoid(els, table, els[0], f"Z{n}")


def direct_product(m: FiniteMonoid, n: FiniteMonoid) -> FiniteMonoid:
    els = tuple(f"{a}_{b}" for a in m.elements for b in n.elements)
    table = {
        (f"{a}_{b}", f"{c}_{d}"): f"{m.mul(a, c)}_{n.mul(b, d)}"
        for a in m.elements
        for b in n.elements
        for c in m.elements
        for d in n.elements
    }
    return FiniteMonoid(els, table, f"{m.unit}_{n.unit}", f"{m.name}x{n.name}")


def is_hom(f: Mapping, source: FiniteMonoid, target: FiniteMonoid) -> bool:
    if f.get(source.unit) != target.unit:
        return False
    return all(
        f[source.mul(a, b)] == target.mul(f[a], f[b])
        for a, b in product(source.elements, repeat=2)
    )


def homomorphisms(source: FiniteMonoid, target: FiniteMonoid) -> Iterator[dict]:
    """All monoid homomorphisms, by backtracking over the elements of ``source``."""
    src = [a for a in source.elements if a != source.unit]
    assignment = {source.unit: target.unit}

    def consistent() -> bool:
        for a, b in product(assignment, repeat=2):
            ab = source.mul(a, b)
            if ab in assignment and assignment[ab] != target.mul(assignment[a], assignment[b]):
                return False
        return True

    def extend(i: int) -> Iterator[dict]:
        if i == len(src):
            yield dict(assignment)
            return
        for y in target.elements:
            assignment[src[i]] = y
            if consistent():
                yield from extend(i + 1)
            del assignment[src[i]]

    yield from extend(0)


def isomorphisms(source: FiniteMonoid, target: FiniteMonoid) -> Iterator[dict]:
    if len(source) != len(target):
        return
    for f in homomorphisms(source, target):
        if len(set(f.values())) == len(source):
            yield f


def automorphisms(m: FiniteMonoid) -> list[dict]:
    return list(isomorphisms(m, m))


def are_isomorphic(m: FiniteMonoid, n: FiniteMonoid) -> bool:
    return next(isomorphisms(m, n), None) is not None


def _canonical_table(n: int, table: dict) -> tuple:
    best = None
    for perm in permutations(range(1, n)):
        p = (0,) + perm
        key = tuple(p[table[(a, b)]] for a, b in _inv_pairs(n, p))
        if best is None or key < best:
            best = key
    return best


def _inv_pairs(n: int, p: tuple) -> list[tuple[int, int]]:
    inv = [0] * n
    for i, x in enumerate(p):
        inv[x] = i
    return [(inv[a], inv[b]) for a in range(n) for b in range(n)]


@lru_cache(maxsize=None)
def enumerate_monoids(n: int) -> tuple[FiniteMonoid, ...]:
    """One monoid on ``{0, ..., n-1}`` (unit ``0``) per isomorphism class."""
    if n < 1:
        return ()
    cells = [(a, b) for a in range(1, n) for b in range(1, n)]
    table = {(0, a): a for a in range(n)}
    table.update({(a, 0): a for a in range(n)})
    seen: dict[tuple, FiniteMonoid] = {}

    def associative_so_far() -> bool:
        for a, b, c in product(range(n), repeat=3):
            ab = table.get((a, b))
            bc = table.get((b, c))
            if ab is None or bc is None:
                continue
            left = table.get((ab, c))
            right = table.get((a, bc))
            if left is not None and right is not None and left != right:
                return False
        return True

    def fill(i: int) -> None:
        if i == len(cells):
            key = _canonical_table(n, table)
            if key not in seen:
                els = tuple(range(n))
                seen[key] = FiniteMonoid(els, dict(table), 0, f"M{n}_{len(seen)}")
            return
        for v in range(n):
            table[cells[i]] = v
            if associative_so_far():
                fill(i + 1)
            del table[cells[i]]

    fill(0)
    return tuple(seen.values())


# ---------------------------------------------------------------- rewriting


def _shortlex_key(w: tuple) -> tuple:
    return (len(w), w)


def _find(word: tuple, pattern: tuple, start: int = 0) -> int:
    n, k = len(word), len(pattern)
    for i in range(start, n - k + 1):
        if word[i : i + k] == pattern:
            return i
    return -1


class RewritingSystem:
    """A confluent, shortlex-decreasing rewriting system on integer words."""

    def __init__(self, rules: Sequence[tuple[tuple, tuple]]):
        self.rules = sorted(rules, key=lambda r: (_shortlex_key(r[0]), r[1]))
        self._by_len: dict[int, dict[tuple, tuple]] = {}
        for lhs, rhs in self.rules:
            self._by_len.setdefault(len(lhs), {})[lhs] = rhs
        self._lengths = sorted(self._by_len)

    def _step(self, w: tuple) -> tuple | None:
        for i in range(len(w)):
            for k in self._lengths:
                if i + k > len(w):
                    break
                rhs = self._by_len[k].get(w[i : i + k])
                if rhs is not None:
                    return w[:i] + rhs + w[i + k :]
        return None

    def normal_form(self, w: tuple) -> tuple:
        while True:
            nxt = self._step(w)
            if nxt is None:
                return w
            w = nxt

    def is_irreducible(self, w: tuple) -> bool:
        return self._step(w) is None


def knuth_bendix(
    relations: Iterable[tuple[tuple, tuple]], max_rules: int = 64, max_rounds: int = 32
) -> RewritingSystem | None:
    """Shortlex Knuth-Bendix completion; ``None`` when the budget runs out."""
    rules: list[tuple[tuple, tuple]] = []
    system = RewritingSystem(rules)
    pending = [(tuple(l), tuple(r)) for l, r in relations]

    for _ in range(max_rounds):
        while pending:
            u, v = pending.pop()
            u, v = system.normal_form(u), system.normal_form(v)
            if u == v:
                continue
            lhs, rhs = (u, v) if _shortlex_key(u) > _shortlex_key(v) else (v, u)
            kept = []
            for l2, r2 in rules:
                if _find(l2, lhs) >= 0:
                    pending.append((l2, r2))
                else:
                    kept.append((l2, r2))
            system = RewritingSystem(kept + [(lhs, rhs)])
            rules = [(l2, system.normal_form(r2)) for l2, r2 in system.rules]
            system = RewritingSystem(rules)
            if len(rules) > max_rules:
                return None
        for (l1, r1), (l2, r2) in product(rules, repeat=2):
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    a = system.normal_form(r1 + l2[k:])
                    b = system.normal_form(l1[:-k] + r2)
                    if a != b:
                        pending.append((a, b))
        if not pending:
            return system
    return None


# ---------------------------------------------------------------- presented monoids


@dataclass
class BoundedClasses:
    """Congruence classes of all words of length at most ``bound``."""

    bound: int
    exact: bool
    classes: list[list[tuple]]
    class_of: dict[tuple, int] = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.classes)

    def same(self, w1: Sequence, w2: Sequence) -> bool:
        return self.class_of[tuple(w1)] == self.class_of[tuple(w2)]

    def representative(self, w: Sequence) -> tuple:
        return self.classes[self.class_of[tuple(w)]][0]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def _words_upto(n_letters: int, length: int) -> Iterator[tuple]:
    for k in range(length + 1):
        yield from product(range(n_letters), repeat=k)


@dataclass(frozen=True)
class PresentedMonoid:
    alphabet: tuple
    relations: tuple = ()
    bound: int = DEFAULT_BOUND
    name: str = ""

    def __post_init__(self) -> None:
        alphabet = tuple(self.alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet has repeated letters")
        letters = set(alphabet)
        rels = []
        for lhs, rhs in self.relations:
            lhs, rhs = tuple(lhs), tuple(rhs)
            for x in lhs + rhs:
                if x not in letters:
                    raise ValueError(f"relation uses {x!r}, which is not a generator")
            rels.append((lhs, rhs))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "relations", tuple(rels))

    @cached_property
    def _index(self) -> dict:
        return {x: i for i, x in enumerate(self.alphabet)}

    def encode(self, word: Sequence) -> tuple:
        index = self._index
        return tuple(index[x] for x in word)

    def decode(self, word: Sequence[int]) -> tuple:
        return tuple(self.alphabet[i] for i in word)

    @cached_property
    def _int_relations(self) -> tuple:
        return tuple((self.encode(l), self.encode(r)) for l, r in self.relations)

    @cached_property
    def length_preserving(self) -> bool:
        return all(len(l) == len(r) for l, r in self.relations)

    @cached_property
    def rewriting(self) -> RewritingSystem | None:
        return knuth_bendix(self._int_relations)

    @property
    def exact(self) -> bool:
        """Whether bounded answers are guaranteed to be the true answers."""
        return self.rewriting is not None or self.length_preserving

    def normal_form(self, word: Sequence) -> tuple | None:
        """Exact normal form when a confluent system is known, else ``None``."""
        system = self.rewriting
        if system is None:
            return None
        return self.decode(system.normal_form(self.encode(word)))

    def classes(self, L: int | None = None, budget: int = DEFAULT_BUDGET) -> BoundedClasses:
        L = self.bound if L is None else L
        return _classes(self, L, budget)

    def equal(self, w1: Sequence, w2: Sequence, L: int | None = None) -> str:
        return equal_within_bound(self, w1, w2, L)

    def element_count(self, L: int | None = None, budget: int = DEFAULT_BUDGET) -> int:
        return element_count(self, L, budget)

    def irreducible_words(self, L: int) -> Iterator[tuple]:
        """Normal forms of length at most ``L`` (needs a confluent system)."""
        system = self.rewriting
        if system is None:
            raise ValueError("no confluent rewriting system is known")
        frontier = [()]
        while frontier:
            nxt = []
            for w in frontier:
                yield self.decode(w)
                if len(w) < L:
                    for i in range(len(self.alphabet)):
                        v = w + (i,)
                        if system.is_irreducible(v):
                            nxt.append(v)
            frontier = nxt


@lru_cache(maxsize=256)
def _classes(m: PresentedMonoid, L: int, budget: int) -> BoundedClasses:
    if L < 0:
        raise ValueError("length bound must be non-negative")
    n = len(m.alphabet)
    total = sum(n**k for k in range(L + 1))
    if total > budget:
        raise BudgetExceeded(
            f"{total} words of length <= {L} over {n} letters exceed the budget {budget}"
        )
    words = list(_words_upto(n, L))
    index = {w: i for i, w in enumerate(words)}
    system = m.rewriting
    if system is not None:
        groups: dict[tuple, list[tuple]] = {}
        for w in words:
            groups.setdefault(system.normal_form(w), []).append(w)
        parts = list(groups.values())
    else:
        uf = _UnionFind(len(words))
        rules = list(m._int_relations)
        for w in words:
            for lhs, rhs in rules:
                for pat, rep in ((lhs, rhs), (rhs, lhs)):
                    if len(w) - len(pat) + len(rep) > L:
                        continue
                    i = _find(w, pat)
                    while i >= 0:
                        uf.union(index[w], index[w[:i] + rep + w[i + len(pat) :]])
                        i = _find(w, pat, i + 1)
        grouped: dict[int, list[tuple]] = {}
        for w in words:
            grouped.setdefault(uf.find(index[w]), []).append(w)
        parts = list(grouped.values())
    decoded = [sorted((m.decode(w) for w in part), key=_sort_key) for part in parts]
    decoded.sort(key=lambda part: _sort_key(part[0]))
    class_of = {w: i for i, part in enumerate(decoded) for w in part}
    return BoundedClasses(L, m.exact, decoded, class_of)


def _sort_key(word: tuple) -> tuple:
    return (len(word), tuple(map(repr, word)))


def congruence_classes(m: PresentedMonoid, L: int | None = None) -> BoundedClasses:
    return m.classes(L)


def equal_within_bound(m: PresentedMonoid, w1: Sequence, w2: Sequence, L: int | None = None) -> str:
    """``equal``, ``distinct`` (certified) or ``distinct-within-bound``."""
    w1, w2 = tuple(w1), tuple(w2)
    if w1 == w2:
        return EQUAL
    if m.rewriting is not None:
        return EQUAL if m.normal_form(w1) == m.normal_form(w2) else DISTINCT
    L = max(m.bound if L is None else L, len(w1), len(w2))
    if m.length_preserving and len(w1) != len(w2):
        return DISTINCT
    if m.length_preserving:
        L = len(w1)
    same = m.classes(L).same(w1, w2)
    if same:
        return EQUAL
    return DISTINCT if m.length_preserving else DISTINCT_WITHIN_BOUND


def element_count(m: PresentedMonoid, L: int | None = None, budget: int = DEFAULT_BUDGET) -> int:
    """Number of classes having a representative of length at most ``L``."""
    L = m.bound if L is None else L
    if m.rewriting is not None:
        return sum(1 for _ in m.irreducible_words(L))
    return m.classes(L, budget).count


def free_monoid(alphabet: Iterable, bound: int = DEFAULT_BOUND) -> PresentedMonoid:
    return PresentedMonoid(tuple(alphabet), (), bound)


def to_presentation(m: FiniteMonoid, bound: int = DEFAULT_BOUND) -> PresentedMonoid:
    """Generators are the elements; relations are the table and ``unit = 1``."""
    rels = [((m.unit,), ())]
    for (a, b), c in m.table.items():
        rels.append(((a, b), () if c == m.unit else (c,)))
    return PresentedMonoid(m.elements, tuple(rels), bound, m.name)


def as_presented(m: FiniteMonoid | PresentedMonoid, bound: int = DEFAULT_BOUND) -> PresentedMonoid:
    return m if isinstance(m, PresentedMonoid) else to_presentation(m, bound)


def generators(m: FiniteMonoid | PresentedMonoid) -> tuple:
    """Letters of a presentation; all elements of a finite monoid."""
    return m.alphabet if isinstance(m, PresentedMonoid) else m.elements


# ---------------------------------------------------------------- homomorphisms


@dataclass(frozen=True)
class MonoidHom:
    """A homomorphism given on generators.

    For a finite source the generators are all elements and the images are
    elements of a finite target; for a presented source each generator is
    sent to a word (finite target: an element, or a word of elements).
    """

    source: FiniteMonoid | PresentedMonoid
    target: FiniteMonoid | PresentedMonoid
    images: Mapping

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", dict(self.images))

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(sorted(self.images.items(), key=repr))))

    def image_word(self, word: Sequence) -> tuple:
        """Image of a word over the source generators as a word over target generators."""
        out: list = []
        for x in word:
            img = self.images[x]
            if isinstance(self.target, FiniteMonoid):
                if img != self.target.unit:
                    out.append(img)
            else:
                out.extend(img)
        return tuple(out)

    def __call__(self, x):
        """Image of a generator (finite target: an element; presented: a word)."""
        if isinstance(self.target, FiniteMonoid):
            return self.target.evaluate(self.image_word((x,)))
        return self.image_word((x,))

    def violations(self, L: int | None = None) -> list[str]:
        found = []
        gens = generators(self.source)
        for x in gens:
            if x not in self.images:
                found.append(f"generator {x!r} has no image")
        if found:
            return found
        if isinstance(self.source, FiniteMonoid):
            src = self.source
            if isinstance(self.target, FiniteMonoid):
                if self.images[src.unit] != self.target.unit:
                    found.append("unit is not preserved")
                for a, b in product(src.elements, repeat=2):
                    if self.images[src.mul(a, b)] != self.target.mul(self.images[a], self.images[b]):
                        found.append(f"product {a!r}*{b!r} is not preserved")
                return found
            relations = to_presentation(src).relations
        else:
            relations = self.source.relations
        for lhs, rhs in relations:
            if not _same_in(self.target, self.image_word(lhs), self.image_word(rhs), L):
                found.append(f"relation {lhs!r} = {rhs!r} is not preserved")
        return found


def _same_in(m: FiniteMonoid | PresentedMonoid, w1: tuple, w2: tuple, L: int | None) -> bool:
    if isinstance(m, FiniteMonoid):
        return m.evaluate(w1) == m.evaluate(w2)
    return equal_within_bound(m, w1, w2, L) == EQUAL


def same_element(m: FiniteMonoid | PresentedMonoid, w1: Sequence, w2: Sequence, L: int | None = None) -> bool:
    return _same_in(m, tuple(w1), tuple(w2), L)


def identity_hom(m: FiniteMonoid | PresentedMonoid) -> MonoidHom:
    if isinstance(m, FiniteMonoid):
        return MonoidHom(m, m, {a: a for a in m.elements})
    return MonoidHom(m, m, {x: (x,) for x in m.alphabet})


def compose_homs(g: MonoidHom, f: MonoidHom) -> MonoidHom:
    """``g . f``."""
    if isinstance(g.target, FiniteMonoid):
        images = {x: g.target.evaluate(g.image_word(f.image_word((x,)))) for x in f.images}
    else:
        images = {x: g.image_word(f.image_word((x,))) for x in f.images}
    return MonoidHom(f.source, g.target, images)
