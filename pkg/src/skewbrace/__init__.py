"""Finite left skew braces: construction, substructures, commutators, series,
radicals, subideals and the attached Yang-Baxter solutions."""

from .commutator import commutator_ideal, star_span, star_sum_is_ideal
from .construct import (
    CocycleSpec,
    canonical_form,
    direct_product,
    enumerate_braces,
    from_cocycle,
    from_regular_subgroup,
    is_isomorphic,
    quotient,
    restrict,
    trivial_brace,
)
from .core import FiniteBrace, brace_from_dict, dump_brace, identity_audit, load_brace, validate_brace, zero_brace
from .errors import BraceError
from .fixtures import FIXTURE_IDS, fixture_brace, load_fixture
from .radicals import (
    centraliser,
    distinguished_ideal,
    element_profiles,
    fitting_ideal,
    frattini_ideal,
    gaschutz_check,
    non_generators,
    sylow,
    zeta_b_radical,
)
from .series import (
    b_central_series,
    chief_series,
    derived_series,
    is_soluble,
    lower_central_series,
    nilpotency_class,
    upper_central_series,
)
from .subideal import ideal_closure_series, idealiser_report, index_of, strong_left_normaliser, subideal_audit
from .substructure import SubSet, all_substructures, classify, ideal_closure, subbrace_closure
from .verify import paper_verify
from .ybe import YBESolution, check_braid, solution_from_brace

__version__ = "0.1.0"

__all__ = [
    "all_substructures",
    "b_central_series",
    "brace_from_dict",
    "BraceError",
    "canonical_form",
    "centraliser",
    "check_braid",
    "chief_series",
    "classify",
    "CocycleSpec",
    "commutator_ideal",
    "derived_series",
    "direct_product",
    "distinguished_ideal",
    "dump_brace",
    "element_profiles",
    "enumerate_braces",
    "FiniteBrace",
    "fitting_ideal",
    "fixture_brace",
    "FIXTURE_IDS",
    "frattini_ideal",
    "from_cocycle",
    "from_regular_subgroup",
    "gaschutz_check",
    "ideal_closure",
    "ideal_closure_series",
    "idealiser_report",
    "identity_audit",
    "index_of",
    "is_isomorphic",
    "is_soluble",
    "load_brace",
    "load_fixture",
    "lower_central_series",
    "nilpotency_class",
    "non_generators",
    "paper_verify",
    "quotient",
    "restrict",
    "solution_from_brace",
    "star_span",
    "star_sum_is_ideal",
    "strong_left_normaliser",
    "subbrace_closure",
    "subideal_audit",
    "SubSet",
    "sylow",
    "trivial_brace",
    "upper_central_series",
    "validate_brace",
    "YBESolution",
    "zero_brace",
    "zeta_b_radical",
]
