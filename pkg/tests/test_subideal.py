from hypothesis import given

from skewbrace import bits as Bits
from skewbrace.subideal import (
    closure_chain,
    defect,
    ideal_closure_series,
    idealiser_report,
    index_of,
    strong_left_normaliser,
    subideal_audit,
)
from skewbrace.substructure import all_substructures, is_ideal_bits

from conftest import braces, s3


def test_defect_of_B_and_ideals(fixture):
    B = fixture.brace
    full = Bits.full(B.order)
    assert ideal_closure_series(B, full).defect == 0
    for I in all_substructures(B, "ideal"):
        if I.bits != full:
            assert defect(B, I.bits) == 1


def test_b32c_S7(b32c):
    B = b32c.brace
    s = ideal_closure_series(B, b32c.named("S7"))
    assert s.is_subideal and s.defect <= 4
    chain = [b32c.named(k) for k in ("S7", "S11", "S16", "S18")] + [Bits.full(32)]
    for a, b in zip(chain, chain[1:]):
        assert is_ideal_bits(B, a, b)


def test_closure_series_definition(fixture):
    B = fixture.brace
    for S in all_substructures(B, "subbrace"):
        chain = closure_chain(B, S.bits)
        assert chain[0] == Bits.full(B.order)
        for a, b in zip(chain, chain[1:]):
            assert Bits.is_subset(S.bits, b) and is_ideal_bits(B, b, a)


def test_index(b32c, b32a):
    full = Bits.full(32)
    assert index_of(b32c.brace, full)["common_index"] == 1
    assert index_of(b32c.brace, b32c.named("S10"))["common_index"] == 8
    assert index_of(b32a.brace, b32a.named("S"))["common_index"] == 16


def test_idealiser(b32a, b32c):
    B = b32a.brace
    full = Bits.full(32)
    r = idealiser_report(B, full)
    assert r.exists and r.idealiser.bits == full
    r = idealiser_report(B, b32a.named("S"))
    assert not r.exists
    T, U = b32a.named("T"), b32a.named("U")
    pairs = {frozenset((t.bits, u.bits)) for t, u in r.failing_pairs}
    assert frozenset((T, U)) in pairs
    assert not is_ideal_bits(B, b32a.named("S"))
    r = idealiser_report(b32c.brace, b32c.named("S7"))
    assert len(r.family) >= 2
    assert r.to_dict()["exists"] == r.exists


@given(braces())
def test_idealiser_family(B):
    for S in all_substructures(B, "subbrace"):
        r = idealiser_report(B, S.bits)
        for N in r.family:
            assert is_ideal_bits(B, S.bits, N.bits)
        if r.exists:
            assert all(Bits.is_subset(N.bits, r.idealiser.bits) for N in r.family)


def test_strong_left_normaliser(b32a):
    B = b32a.brace
    full = Bits.full(32)
    assert strong_left_normaliser(B, 1).normaliser.bits == full
    assert strong_left_normaliser(B, full).normaliser.bits == full
    r = strong_left_normaliser(B, b32a.named("S"))
    assert r.unique_maximum


def test_audits(b16, b32c):
    a = subideal_audit(b16.brace)
    assert a.centrally_nilpotent and a.all_subideal
    a = subideal_audit(b32c.brace)
    assert a.all_subideal and not a.soluble
    a = subideal_audit(s3())
    twos = [e for e in a.entries if e["order"] == 2]
    assert twos and not any(e["subideal"] for e in twos)


@given(braces())
def test_cn_implies_all_subideal(B):
    a = subideal_audit(B)
    if a.centrally_nilpotent:
        assert a.all_subideal
        assert all(e["defect"] <= a.nilpotency_class for e in a.entries)
