"""Random small posets with orthogonality relations, for property tests."""

from __future__ import annotations

import random
from itertools import product

from orthoperad.orthocat import OrthCategory, build_category, orth_closure


def random_poset(rng: random.Random, n: int, density: float = 0.4) -> OrthCategory:
    """Objects ``o0..o{n-1}``; ``o_i <= o_j`` for some i < j, transitively closed;
    orthogonality generated by a few random pairs with a common target."""
    objs = [f"o{i}" for i in range(n)]
    below = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(below), list(below)):
            if b == c and (a, d) not in below:
                below.add((a, d))
                changed = True

    def name(a, b):
        return f"m{a}_{b}" if a != b else f"id_o{a}"

    morphisms = {name(a, b): (objs[a], objs[b]) for a, b in below}
    composites = {
        (name(b, c), name(a, b)): name(a, c) for (a, b) in below for (b2, c) in below if b == b2
    }
    cat = build_category(objs, morphisms, composites)
    into: dict[str, list[str]] = {}
    for f, (_, t) in cat.morphisms.items():
        into.setdefault(t, []).append(f)
    seed = []
    for t in sorted(into):
        fs = sorted(into[t])
        if len(fs) >= 2 and rng.random() < 0.6:
            seed.append((rng.choice(fs), rng.choice(fs)))
    return OrthCategory(cat, orth_closure(cat, seed), f"poset{n}")
