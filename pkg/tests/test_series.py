import pytest
from hypothesis import given

from skewbrace import bits as Bits
from skewbrace.commutator import commutator_bits
from skewbrace.construct import enumerate_braces, quotient, restrict
from skewbrace.series import (
    b_central_class,
    b_central_series,
    centre_bits,
    check_central_chain,
    chief_chain,
    chief_series,
    derived_length,
    derived_series,
    image,
    is_centrally_nilpotent,
    is_soluble,
    lower_central_series,
    nilpotency_class,
    upper_central_series,
)
from skewbrace.substructure import all_substructures, classify

from conftest import braces, trivial


def _brute_centre(B):
    n = B.order
    return Bits.from_elements(
        a for a in range(n)
        if all(B.add[a][b] == B.add[b][a] == B.mul[a][b] == B.mul[b][a] for b in range(n))
    )


@given(braces())
def test_centre_definition(B):
    assert centre_bits(B) == _brute_centre(B)


@given(braces())
def test_chain_invariants(B):
    full = Bits.full(B.order)
    up = upper_central_series(B).chain
    for lo, hi in zip(up, up[1:]):
        assert lo < hi and lo.is_ideal and hi.is_ideal
        Q, proj = quotient(B, lo.bits)
        assert image(proj, hi.bits) == centre_bits(Q)
    low = lower_central_series(B).chain
    assert low[0].bits == full
    for a, b in zip(low, low[1:]):
        assert b.bits == commutator_bits(B, a.bits, full)
    der = derived_series(B).chain
    for a, b in zip(der, der[1:]):
        assert b.bits == commutator_bits(B, a.bits, a.bits)


@given(braces())
def test_duality(B):
    full = Bits.full(B.order)
    up = [s.bits for s in upper_central_series(B).chain]
    low = [s.bits for s in lower_central_series(B).chain]
    n_up = up.index(full) if full in up else None
    n_low = low.index(1) if 1 in low else None
    assert n_up == n_low == nilpotency_class(B)


def test_small_examples():
    T = trivial(4)
    assert [s.bits for s in upper_central_series(T).chain] == [1, Bits.full(4)]
    assert nilpotency_class(T) == 1
    assert [s.bits for s in lower_central_series(T).chain] == [Bits.full(4), 1]
    assert derived_length(T) == 1
    assert nilpotency_class(enumerate_braces(1)[0]) == 0
    ch = chief_series(trivial(5))
    assert [f["order"] for f in ch.factors] == [5]


def test_b32b_not_centrally_nilpotent(b32b):
    B = b32b.brace
    assert [s.bits for s in upper_central_series(B).chain] == [1]
    assert nilpotency_class(B) is None
    for name in ("I1", "I2", "I3"):
        sub, _ = restrict(B, b32b.named(name))
        assert nilpotency_class(sub) is not None and nilpotency_class(sub) <= 3
    not_bcn = [k for k in ("I1", "I2", "I3") if b_central_class(B, b32b.named(k)) is None]
    assert len(not_bcn) >= 2


def test_b32b_exhibited_chains(b32b):
    for k in ("1", "2", "3"):
        sub, emb = restrict(b32b.brace, b32b.named(f"I{k}"))
        pos = {e: i for i, e in enumerate(emb)}

        def local(bits):
            return Bits.from_elements(pos[x] for x in Bits.members(bits))

        chain = [1, local(b32b.named(f"I{k}_c1")), local(b32b.named(f"I{k}_c2")), Bits.full(16)]
        assert check_central_chain(sub, chain)["valid"]


def test_b16_centrally_nilpotent(b16):
    B = b16.brace
    assert upper_central_series(B).terminal.bits == Bits.full(16)
    assert nilpotency_class(B) == 3


def test_b32c_series(b32c):
    B = b32c.brace
    s18 = b32c.named("S18")
    assert [s.bits for s in lower_central_series(B).chain] == [Bits.full(32), s18]
    assert derived_series(B).terminal.bits == s18
    assert not is_soluble(B)
    for choice in ("first", "last"):
        ch = chief_series(B, choice)
        assert s18 in [s.bits for s in ch.chain]
        assert [f["order"] for f in ch.factors] == [16, 2]


def test_chief_criterion(fixture):
    B = fixture.brace
    for choice in ("first", "last"):
        ch = chief_series(B, choice)
        assert is_centrally_nilpotent(B) == all(f["central"] for f in ch.factors)


@given(braces())
def test_chief_chains_are_maximal(B):
    ideals = [I.bits for I in all_substructures(B, "ideal")]
    for choice in ("first", "last"):
        ch = chief_chain(B, choice)
        for lo, hi in zip(ch, ch[1:]):
            assert not any(k not in (lo, hi) and Bits.is_subset(lo, k) and Bits.is_subset(k, hi) for k in ideals)


def test_derived_length_bounded_by_class(fixture):
    B = fixture.brace
    c = nilpotency_class(B)
    if c is not None:
        assert derived_length(B) <= max(c, 1)


def test_b_central_examples(fixture):
    B = fixture.brace
    assert b_central_class(B, 1) == 0
    c = nilpotency_class(B)
    if c is not None:
        assert b_central_class(B, Bits.full(B.order)) == c


def test_b_central_series_directions(b16):
    s = b_central_series(b16.brace, b16.named("I"), "upper")
    assert s.verdict["b_centrally_nilpotent"]
    with pytest.raises(ValueError):
        b_central_series(b16.brace, b16.named("I"), "sideways")


def test_check_central_chain_rejects():
    T = trivial(4)
    assert not check_central_chain(T, [1, 0b0101])["valid"]
    assert check_central_chain(T, [1, 0b0101, Bits.full(4)])["valid"]


def test_series_to_dict(b24):
    d = upper_central_series(b24.brace).to_dict()
    assert d["kind"] == "upper_central" and d["orders"][0] == 1
    assert classify(b24.brace, 1).is_ideal
