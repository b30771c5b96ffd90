"""Print a one-screen summary of every bundled fixture."""

from skewbrace import (
    FIXTURE_IDS,
    all_substructures,
    fitting_ideal,
    frattini_ideal,
    is_soluble,
    load_fixture,
    nilpotency_class,
    solution_from_brace,
)

for fid in FIXTURE_IDS:
    B = load_fixture(fid).brace
    ideals = all_substructures(B, "ideal")
    sol = solution_from_brace(B)
    print(
        f"{fid:5} order {B.order:2}  ideals {len(ideals):2}  "
        f"class {nilpotency_class(B)!s:4}  soluble {is_soluble(B)!s:5}  "
        f"|Fit| {len(fitting_ideal(B)):2}  |Frat| {len(frattini_ideal(B)):2}  "
        f"YBE ok {sol.braid and sol.nondegenerate}"
    )
