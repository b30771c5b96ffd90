import json

import numpy as np
import pytest
from hypothesis import given

from skewbrace.core import (
    audit_tables,
    brace_from_dict,
    dump_brace,
    identity_audit,
    lambda_,
    star,
    validate_brace,
    zero_brace,
)
from skewbrace.errors import BraceError, DistributivityFailure, IdentityMismatch, IndexOutOfRange, NotAGroup
from skewbrace.groups import relabel
from skewbrace.smallgroups import abelian, cyclic

from conftest import braces, trivial


def test_zero_brace():
    Z = validate_brace(1, [[0]], [[0]])
    assert Z.order == 1 and Z.lam == ((0,),)
    assert identity_audit(Z).passed and identity_audit(Z).triples_checked == 1


def test_trivial_c4_has_identity_lambda():
    B = trivial(4)
    assert all(B.lam[a] == tuple(range(4)) for a in range(4))
    assert star(B, 1, 3) == 0
    assert B.is_trivial and B.is_abelian_type


def _distributive(A, M, n):
    neg = [next(y for y in range(n) if A[x][y] == 0) for x in range(n)]
    return all(
        M[a][A[b][c]] == A[A[M[a][b]][neg[a]]][M[a][c]]
        for a in range(n) for b in range(n) for c in range(n)
    )


def test_c4_with_klein_mul_is_a_brace():
    A, M = cyclic(4), abelian([2, 2])
    assert _distributive(A, M, 4)
    B = validate_brace(4, A, M)
    assert B.lam[1] == (0, 3, 2, 1) and B.lam[2] == (0, 1, 2, 3)


def test_distributivity_witness():
    A = cyclic(4)
    M = relabel(cyclic(4), [0, 2, 1, 3])  # a group, but 2 is its generator
    assert not _distributive(A, M, 4)
    with pytest.raises(DistributivityFailure) as err:
        validate_brace(4, A, M)
    a, b, c = err.value.witness
    assert M[a][A[b][c]] != A[A[M[a][b]][(-a) % 4]][M[a][c]]


def test_bad_tables():
    with pytest.raises(NotAGroup):
        validate_brace(2, [[0, 1], [1, 0]], [[0, 1], [0, 1]])
    with pytest.raises(NotAGroup):
        validate_brace(2, [[0, 1]], [[0, 1], [1, 0]])
    with pytest.raises(IndexOutOfRange):
        validate_brace(2, [[0, 1], [1, 2]], [[0, 1], [1, 0]])
    with pytest.raises(NotAGroup):
        # Latin square without associativity
        validate_brace(3, [[0, 1, 2], [1, 0, 2], [2, 2, 0]], cyclic(3))


def test_identity_mismatch():
    add = [[0, 1], [1, 0]]
    mul = [[1, 0], [0, 1]]
    with pytest.raises(IdentityMismatch):
        validate_brace(2, add, mul)


def test_shared_nonzero_identity_relabelled():
    # C3 relabelled so that element 1 is the identity
    perm = [1, 0, 2]
    c3 = cyclic(3)
    t = [[0] * 3 for _ in range(3)]
    for a in range(3):
        for b in range(3):
            t[perm[a]][perm[b]] = perm[c3[a][b]]
    B = validate_brace(3, t, t)
    assert B.add[0] == (0, 1, 2)


def test_star_absorbs_zero(fixture):
    B = fixture.brace
    for x in range(B.order):
        assert star(B, 0, x) == 0 and star(B, x, 0) == 0


def test_star_out_of_range():
    with pytest.raises(IndexOutOfRange):
        star(trivial(3), 0, 3)
    with pytest.raises(IndexOutOfRange):
        lambda_(trivial(3), -1, 0)


def test_b16_star_on_I(b16):
    B = b16.brace
    I = [x for x in range(16) if b16.span(["2x", "y"]) >> x & 1]
    values = {star(B, u, v) for u in I for v in I}
    assert values == {0, b16.element("2x")}


def test_fixtures_pass_identity_audit(fixture):
    assert identity_audit(fixture.brace).passed


def test_corrupted_mul_entry_fails_audit(b16):
    B = b16.brace
    mul = [list(r) for r in B.mul]
    mul[3][5], mul[3][6] = mul[3][6], mul[3][5]
    report = audit_tables(B.add, mul)
    assert not report.passed
    assert report.failures
    with pytest.raises(BraceError):
        validate_brace(16, B.add, mul)


def test_json_round_trip(fixture):
    B = fixture.brace
    again = brace_from_dict(json.loads(dump_brace(B)))
    assert again.add == B.add and again.mul == B.mul


def test_brace_from_dict_requires_tables():
    with pytest.raises(ValueError):
        brace_from_dict({"add": [[0]]})


def test_zero_helper():
    assert zero_brace().order == 1


@given(braces())
def test_axioms(B):
    n = B.order
    A, M, N = B.np_add, B.np_mul, B.np_neg
    lam = np.asarray(B.lam)
    # λ is a homomorphism (B,.) -> Aut(B,+)
    for a in range(n):
        for b in range(n):
            assert B.lam[B.mul[a][b]] == tuple(lam[a][lam[b]])
    # ab = a + a*b + b
    for a in range(n):
        for b in range(n):
            assert B.mul[a][b] == A[A[a, B.star(a, b)], b]
    assert (A[N[:, None], M] == lam).all()
