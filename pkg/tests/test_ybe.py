import numpy as np
import pytest
from hypothesis import given

from skewbrace.ybe import YBESolution, check_braid, flip, solution_from_brace

from conftest import braces, s3, small_braces, trivial


def test_trivial_abelian_is_flip():
    sol = solution_from_brace(trivial(5))
    f = flip(5)
    assert (sol.first == f.first).all() and (sol.second == f.second).all()
    assert sol(2, 3) == (3, 2)


def test_trivial_s3_is_conjugation():
    B = s3()
    sol = solution_from_brace(B)
    for a in range(6):
        for b in range(6):
            assert sol(a, b) == (b, B.mul[B.mul[B.inv[b]][a]][b])
    assert sol.braid and sol.nondegenerate


def test_fixtures(fixture):
    sol = solution_from_brace(fixture.brace)
    assert sol.braid and sol.nondegenerate


def test_small_enumerated():
    for B in small_braces(8):
        sol = solution_from_brace(B)
        assert sol.braid and sol.nondegenerate


def test_flip_braid():
    assert check_braid(flip(4)) == (True, None)


def test_sum_map_fails_with_witness():
    n = 4
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    sol = YBESolution.from_tables((a + b) % n, np.broadcast_to(a, (n, n)))
    ok, w = check_braid(sol)
    assert not ok and w == (1, 0, 0)


def test_shift_map_satisfies_braid():
    # (a, b) -> (b + 1, a): both sides send (a, b, c) to (c + 2, b + 1, a)
    n = 5
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    sol = YBESolution.from_tables(np.broadcast_to((b + 1) % n, (n, n)), np.broadcast_to(a, (n, n)))
    assert sol.braid


def _brute_braid(sol):
    n = sol.order
    for x in range(n):
        for y in range(n):
            for z in range(n):
                a, b = sol(x, y)
                b2, c = sol(b, z)
                a3, b3 = sol(a, b2)
                left = (a3, b3, c)
                b, c = sol(y, z)
                a, b2 = sol(x, b)
                b3, c3 = sol(b2, c)
                if left != (a, b3, c3):
                    return False
    return True


@given(braces(6))
def test_braid_matches_brute_force(B):
    sol = solution_from_brace(B)
    assert sol.braid == _brute_braid(sol)


def test_degenerate_detected():
    n = 3
    z = np.zeros((n, n), dtype=int)
    sol = YBESolution.from_tables(z, z)
    assert not sol.nondegenerate_left and not sol.nondegenerate_right
    assert sol.braid


def test_bad_tables():
    with pytest.raises(ValueError):
        YBESolution.from_tables([[0, 1]], [[0, 1]])
    with pytest.raises(ValueError):
        YBESolution.from_tables([[0, 2], [0, 1]], [[0, 1], [1, 0]])


def test_to_dict(b16):
    d = solution_from_brace(b16.brace).to_dict()
    assert d["braid"] and d["braid_witness"] is None and d["order"] == 16
