import os
import sys
from functools import lru_cache

import pytest
from hypothesis import settings, strategies as st

from skewbrace import bits as Bits
from skewbrace.construct import enumerate_braces, relabel_brace, trivial_brace
from skewbrace.fixtures import FIXTURE_IDS, load_fixture
from skewbrace.smallgroups import abelian, cyclic, dihedral

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@lru_cache(maxsize=None)
def small_braces(max_order: int = 8) -> tuple:
    out = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_braces(n))
    return tuple(out)


@st.composite
def braces(draw, max_order: int = 8):
    """A small enumerated brace, randomly relabelled (0 stays fixed)."""
    B = draw(st.sampled_from(small_braces(max_order)))
    rest = draw(st.permutations(list(range(1, B.order))))
    return relabel_brace(B, [0, *rest], B.name)


@st.composite
def brace_and_subset(draw, max_order: int = 8):
    B = draw(braces(max_order))
    els = draw(st.sets(st.integers(0, B.order - 1), max_size=3))
    return B, Bits.from_elements(els) | 1


def trivial(n: int):
    return trivial_brace(cyclic(n), f"C{n}")


def klein():
    return trivial_brace(abelian([2, 2]), "C2xC2")


def s3():
    return trivial_brace(dihedral(3), "S3")


@pytest.fixture(scope="session", params=FIXTURE_IDS)
def fixture(request):
    return load_fixture(request.param)


@pytest.fixture(scope="session")
def b16():
    return load_fixture("b16")


@pytest.fixture(scope="session")
def b32a():
    return load_fixture("b32a")


@pytest.fixture(scope="session")
def b32b():
    return load_fixture("b32b")


@pytest.fixture(scope="session")
def b24():
    return load_fixture("b24")


@pytest.fixture(scope="session")
def b32c():
    return load_fixture("b32c")
