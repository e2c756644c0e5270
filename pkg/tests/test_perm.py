from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import perm_laws
from orthoperad.errors import LengthMismatch
from orthoperad.perm import (
    Permutation,
    all_permutations,
    block_perm,
    block_sum,
    compose,
    compose_family,
    right_act,
)


def P(*images: int) -> Permutation:
    return Permutation(images)


@st.composite
def perms(draw, n: int | None = None):
    if n is None:
        n = draw(st.integers(0, 6))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


def test_rejects_non_permutations():
    with pytest.raises(ValueError):
        Permutation((1, 1))
    with pytest.raises(ValueError):
        Permutation((0, 1))


def test_compose_examples():
    assert compose(Permutation.identity(3), Permutation.identity(3)) == Permutation.identity(3)
    assert compose(P(2, 1), P(2, 1)) == Permutation.identity(2)
    # hand evaluation of i -> sigma(tau(i))
    assert compose(P(2, 3, 1), P(2, 1, 3)) == P(3, 2, 1)


def test_compose_length_mismatch():
    with pytest.raises(LengthMismatch):
        compose(P(1), P(2, 1))


def test_right_act_examples():
    assert right_act("abc", Permutation.identity(3)) == ("a", "b", "c")
    assert right_act("abc", P(2, 3, 1)) == ("b", "c", "a")
    with pytest.raises(LengthMismatch):
        right_act("ab", P(1))


def test_right_act_is_a_right_action_exhaustively():
    for n in range(5):
        x = tuple(range(10, 10 + n))
        for s in all_permutations(n):
            for t in all_permutations(n):
                assert right_act(right_act(x, s), t) == right_act(x, compose(s, t))


@given(st.data())
def test_right_act_law_random(data):
    n = data.draw(st.integers(0, 5))
    x = data.draw(st.lists(st.integers(), min_size=n, max_size=n))
    s, t = data.draw(perms(n)), data.draw(perms(n))
    assert right_act(right_act(x, s), t) == right_act(x, compose(s, t))


def _blocks(sizes):
    out, start = [], 0
    for k in sizes:
        out.append(tuple(f"x{start + i}" for i in range(k)))
        start += k
    return out


def test_block_perm_moves_blocks():
    # block-concatenation oracle
    assert right_act(("x1", "x2", "x3"), block_perm(P(2, 1), (2, 1))) == ("x3", "x1", "x2")
    assert block_perm(Permutation.identity(3), (2, 0, 1)) == Permutation.identity(3)
    assert block_perm(P(3, 1, 2), (1, 1, 1)) == P(3, 1, 2)
    with pytest.raises(LengthMismatch):
        block_perm(P(2, 1), (1,))


@given(st.data())
def test_block_perm_characterization(data):
    m = data.draw(st.integers(1, 4))
    s = data.draw(perms(m))
    sizes = data.draw(st.lists(st.integers(0, 3), min_size=m, max_size=m))
    blocks = _blocks(sizes)
    flat = tuple(x for b in blocks for x in b)
    expected = tuple(x for i in range(1, m + 1) for x in blocks[s(i) - 1])
    assert right_act(flat, block_perm(s, sizes)) == expected


def test_block_sum_examples():
    e = Permutation.identity(1)
    assert block_sum([e, e, e]) == Permutation.identity(3)
    assert block_sum([P(2, 1)]) == P(2, 1)
    assert block_sum([P(2, 1), P(2, 1)]) == P(2, 1, 4, 3)
    assert block_sum([]) == Permutation.identity(0)
    assert block_sum([Permutation.identity(0), P(2, 1)]) == P(2, 1)


@given(st.lists(perms(), max_size=4))
def test_block_sum_acts_blockwise(sigmas):
    sizes = [len(s) for s in sigmas]
    blocks = _blocks(sizes)
    flat = tuple(x for b in blocks for x in b)
    expected = tuple(x for b, s in zip(blocks, sigmas) for x in right_act(b, s))
    assert right_act(flat, block_sum(sigmas)) == expected


def test_compose_family_examples():
    e1 = Permutation.identity(1)
    assert compose_family(Permutation.identity(2), [e1, e1]) == Permutation.identity(2)
    for s in all_permutations(3):
        assert compose_family(s, [e1] * 3) == s
    # block_perm((2 1), (1, 2)) after block_sum((2 1), e)
    assert block_perm(P(2, 1), (1, 2)) == P(2, 3, 1)
    assert compose_family(P(2, 1), [P(2, 1), e1]) == compose(P(2, 3, 1), P(2, 1, 3))
    assert compose_family(P(2, 1), [P(2, 1), e1]) == P(3, 2, 1)
    with pytest.raises(LengthMismatch):
        compose_family(P(2, 1), [e1])


def test_transposition_and_inverse():
    t = Permutation.transposition(4, 2)
    assert t == P(1, 3, 2, 4)
    for s in all_permutations(4):
        assert compose(s, s.inverse()).is_identity()
    assert str(P(2, 3, 1)) == "(2 3 1)"


@pytest.mark.parametrize("name", ["i", "ii", "iii", "iv", "v", "vi"])
def test_block_identities_small_ranges(name):
    law = perm_laws.LAWS[name]
    if name in ("i", "ii", "iii"):
        checked, failures = law(3, 2)
    elif name == "vi":
        checked, failures = law(4)
    else:
        checked, failures = law(2, 2, 2)
    assert checked > 0
    assert failures == []


def test_identities_catch_a_wrong_block_convention(monkeypatch):
    # moving blocks by sigma inverse instead of sigma breaks identity (i)
    def inverse_blocks(sigma, sizes):
        return block_perm(sigma.inverse(), [sizes[sigma(i) - 1] for i in range(1, len(sigma) + 1)])

    monkeypatch.setattr(perm_laws, "block_perm", inverse_blocks)
    _, failures = perm_laws.law_i(3, 2)
    assert failures


def test_checker_composition_matches_library():
    for n in range(5):
        for s in all_permutations(n):
            for t in all_permutations(n):
                assert perm_laws._precomposer(t.images)(s.images) == compose(s, t).images


def test_identity_iii_catches_a_wrong_block_sum(monkeypatch):
    # inverting each block is not multiplicative on non-abelian blocks
    def inverted_sum(sigmas):
        return block_sum([s.inverse() for s in sigmas])

    monkeypatch.setattr(perm_laws, "block_sum", inverted_sum)
    _, failures = perm_laws.law_iii(2, 3)
    assert failures
