import pytest
from hypothesis import given

from skewbrace.properties import CHECKS, run_checks

from conftest import braces


@pytest.mark.parametrize("name", sorted(CHECKS))
def test_check_on_fixture(fixture, name):
    r = CHECKS[name](fixture.brace)
    assert r["passed"], r


@given(braces())
def test_checks_on_small_braces(B):
    for name, r in run_checks(B).items():
        assert r["passed"], (name, r)


def test_run_checks_subset(b16):
    out = run_checks(b16.brace, ["grun", "sylow_structure"])
    assert set(out) == {"grun", "sylow_structure"}
    assert out["sylow_structure"]["applicable"]
