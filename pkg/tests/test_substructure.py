from itertools import combinations

import pytest
from hypothesis import given

from skewbrace import bits as Bits
from skewbrace.construct import enumerate_braces
from skewbrace.errors import NotAnIdeal, NotASubbrace
from skewbrace.groups import is_closed, is_normal
from skewbrace.substructure import (
    additive_subgroups,
    all_substructures,
    classify,
    core_of,
    extremal,
    ideal_closure,
    require_ideal,
    require_subbrace,
    subbrace_closure,
    sum_and_product,
)

from conftest import brace_and_subset, braces, trivial


def _brute_flags(B, s):
    els = Bits.members(s)
    sub = is_closed(B.add, s) and is_closed(B.mul, s)
    left = sub and all(B.lam[b][x] in els for b in range(B.order) for x in els)
    strong = left and is_normal(B.add, B.neg, s)
    ideal = strong and is_normal(B.mul, B.inv, s)
    return sub, left, strong, ideal


@given(braces(6))
def test_flags_against_definitions(B):
    # every subset containing 0 of a brace of order <= 6
    n = B.order
    for mask in range(1 << (n - 1)):
        s = 1 | (mask << 1)
        S = classify(B, s)
        assert (S.is_subbrace, S.is_left_ideal, S.is_strong_left_ideal, S.is_ideal) == _brute_flags(B, s)


@given(braces())
def test_flag_hierarchy_and_star_criteria(B):
    for S in all_substructures(B, "subbrace"):
        assert 0 in S
        els = set(S)
        if S.is_left_ideal:
            assert all(B.star(b, x) in els for b in range(B.order) for x in els)
        if S.is_ideal:
            assert S.is_strong_left_ideal and S.is_left_ideal
            assert all(B.star(x, b) in els for b in range(B.order) for x in els)


def test_b32a_S_not_left_ideal(b32a):
    B = b32a.brace
    S = classify(B, b32a.named("S"))
    assert S.is_subbrace and not S.is_left_ideal
    m1 = next(c for c in range(B.order) if b32a.spec.actor_labels[c] == "m1")
    moved = b32a.spec.action[m1][b32a.element("2a1+2a2")]
    assert b32a.label(moved) == "2a2"


def test_b32c_S5_only_left_ideal_of_order_two(b32c):
    B = b32c.brace
    twos = [S for S in all_substructures(B, "subbrace") if len(S) == 2]
    left = [S for S in twos if S.is_left_ideal]
    assert [S.bits for S in left] == [b32c.named("S5")]


def test_closures(b32a, b32b):
    assert subbrace_closure(b32a.brace, []).bits == 1
    TU = b32a.named("T") | b32a.named("U")
    assert subbrace_closure(b32a.brace, TU).bits == Bits.full(32)
    assert ideal_closure(b32b.brace, [0]).bits == 1
    assert ideal_closure(b32b.brace, [b32b.element("c")]).bits == b32b.named("J")


def _word_closure(B, gens):
    found = {0, *gens}
    while True:
        new = {B.add[a][b] for a in found for b in found} | {B.mul[a][b] for a in found for b in found}
        if new <= found:
            return found
        found |= new


@given(brace_and_subset())
def test_subbrace_closure_matches_words(pair):
    B, s = pair
    assert set(subbrace_closure(B, s)) == _word_closure(B, Bits.members(s))


@given(brace_and_subset())
def test_ideal_closure_is_intersection(pair):
    B, s = pair
    inter = Bits.full(B.order)
    for I in all_substructures(B, "ideal"):
        if Bits.is_subset(s, I.bits):
            inter &= I.bits
    assert ideal_closure(B, s).bits == inter


def test_b16_ideal_closure_of_2x(b16):
    B = b16.brace
    s = 1 | 1 << b16.element("2x")
    inter = Bits.full(16)
    for I in all_substructures(B, "ideal"):
        if Bits.is_subset(s, I.bits):
            inter &= I.bits
    assert ideal_closure(B, s).bits == inter


def test_lattices(b32b, b32c):
    assert [S.bits for S in all_substructures(enumerate_braces(1)[0], "ideal")] == [1]
    subs = {S.bits for S in all_substructures(b32c.brace, "subbrace")}
    want = {1, Bits.full(32)} | {b32c.named(f"S{k}") for k in range(1, 19)}
    assert subs == want
    ideals = {S.bits for S in all_substructures(b32b.brace, "ideal")}
    assert ideals == {1, Bits.full(32)} | {b32b.named(k) for k in ("J", "I1", "I2", "I3")}


def test_lattice_order_is_deterministic(fixture):
    subs = all_substructures(fixture.brace, "subbrace")
    keys = [Bits.sort_key(S.bits) for S in subs]
    assert keys == sorted(keys)


def test_unknown_kind():
    with pytest.raises(ValueError):
        all_substructures(trivial(2), "normal")


def test_additive_subgroups_complete():
    B = trivial(12)
    assert len(additive_subgroups(B)) == 6  # divisors of 12


def test_extremal(b32c, b24):
    P = trivial(5)
    assert [S.bits for S in extremal(P, "ideal", "minimal")] == [Bits.full(5)]
    assert [S.bits for S in extremal(P, "ideal", "maximal")] == [1]
    assert [S.bits for S in extremal(b32c.brace, "subbrace", "maximal")] == [b32c.named("S18")]
    twelve = [S.bits for S in all_substructures(b24.brace, "ideal") if len(S) == 12]
    assert twelve == [b24.named("I")]
    assert [S.bits for S in extremal(b24.brace, "ideal", "maximal")] == twelve


def test_core_of(b32a, b32c):
    B = b32a.brace
    assert core_of(B, Bits.full(32)).bits == Bits.full(32)
    assert core_of(B, b32a.named("S")).bits == 1
    C = b32c.brace
    for k in range(1, 19):
        s = b32c.named(f"S{k}")
        inside = [I.bits for I in all_substructures(C, "ideal") if Bits.is_subset(I.bits, s)]
        assert core_of(C, s).bits == max(inside, key=int.bit_count)


def test_sums(b32b, fixture):
    B = b32b.brace
    I1 = b32b.named("I1")
    assert sum_and_product(B, I1, 1).bits == I1
    assert sum_and_product(B, I1, b32b.named("I2")).bits == Bits.full(32)
    ideals = all_substructures(fixture.brace, "ideal")
    for I, J in combinations(ideals, 2):
        assert sum_and_product(fixture.brace, I, J).is_ideal


def test_require_errors(b32a):
    B = b32a.brace
    with pytest.raises(NotAnIdeal):
        require_ideal(B, b32a.named("S"))
    with pytest.raises(NotASubbrace):
        require_subbrace(B, 0b110)
