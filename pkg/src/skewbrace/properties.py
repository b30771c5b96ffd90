"""Exhaustive property checks tying the series, radicals and subideal
machinery together.  Every check returns a dict with a ``passed`` flag
(``applicable`` is False when the hypothesis of the statement fails) and
enough detail to locate a failure."""

from itertools import combinations_with_replacement

from . import bits as Bits
from .commutator import commutator_bits, commutator_span_bits
from .construct import _quotient_bits, restrict
from .core import FiniteBrace
from .groups import upper_central_series as group_upper_central
from .radicals import (
    brace_exponent,
    centraliser_bits,
    chief_centraliser_intersection,
    element_profiles,
    fitting_bits,
    maximal_left_ideals,
    prime_factors,
    sylow,
)
from .series import (
    b_central_class,
    b_upper_chain,
    centre_bits,
    derived_chain,
    image,
    lower_central_chain,
    nilpotency_class,
    upper_central_chain,
)
from .subideal import defect
from .substructure import (
    all_substructures,
    classify,
    extremal,
    ideal_bits_list,
    is_ideal_bits,
    set_sum,
)


def _at(chain: list[int], k: int) -> int:
    return chain[min(k, len(chain) - 1)]


def series_duality(B: FiniteBrace) -> dict:
    full = Bits.full(B.order)
    up, low = upper_central_chain(B), lower_central_chain(B)
    n_up = up.index(full) if up[-1] == full else None
    n_low = low.index(1) if low[-1] == 1 else None
    return {"passed": n_up == n_low, "applicable": True, "class_upper": n_up, "class_lower": n_low}


def derived_inside_lower(B: FiniteBrace) -> dict:
    """∂_n(B) ⊆ Γ_{n+1}(B) for every n (chains extended by their terminals)."""
    der, low = derived_chain(B), lower_central_chain(B)
    bad = [n for n in range(max(len(der), len(low)) + 1) if not Bits.is_subset(_at(der, n), _at(low, n))]
    return {"passed": not bad, "applicable": True, "failures": bad}


def centre_in_group_centres(B: FiniteBrace) -> dict:
    """ζ_k(B) ⊆ Z_k(B,+) ∩ Z_k(B,·)."""
    up = upper_central_chain(B)
    za = group_upper_central(B.add, B.neg)
    zm = group_upper_central(B.mul, B.inv)
    bad = [k for k in range(len(up)) if not Bits.is_subset(up[k], _at(za, k) & _at(zm, k))]
    return {"passed": not bad, "applicable": True, "failures": bad}


def grun(B: FiniteBrace) -> dict:
    """If ζ_2 ⊋ ζ then [B,B]_+ or [B,B]_· is proper."""
    up = upper_central_chain(B)
    if len(up) < 3:
        return {"passed": True, "applicable": False}
    full = Bits.full(B.order)
    add_proper = commutator_span_bits(B, full, full, "add") != full
    mul_proper = commutator_span_bits(B, full, full, "mul") != full
    return {"passed": add_proper or mul_proper, "applicable": True,
            "additive_proper": add_proper, "multiplicative_proper": mul_proper}


def _factor_exponent(B: FiniteBrace, lo: int, hi: int) -> int:
    Q, proj = _quotient_bits(B, lo)
    return brace_exponent(Q, image(proj, hi))


def exponent_bound(B: FiniteBrace) -> dict:
    """With n the exponent of ζ(B), ζ_{i+1}/ζ_i has exponent dividing n^(2^i)."""
    if nilpotency_class(B) is None or B.order == 1:
        return {"passed": True, "applicable": False}
    up = upper_central_chain(B)
    n = brace_exponent(B, up[1])
    factors = []
    ok = True
    for i, (lo, hi) in enumerate(zip(up, up[1:])):
        e = _factor_exponent(B, lo, hi)
        divides = n ** (2 ** i) % e == 0
        ok &= divides
        factors.append({"i": i, "exponent": e, "bound": f"{n}^{2 ** i}", "divides": divides})
    return {"passed": ok, "applicable": True, "centre_exponent": n, "factors": factors}


def _p_elements(Q: FiniteBrace, bits: int, p: int) -> list[int]:
    from .radicals import _is_p_power
    from .substructure import subbrace_closure_bits

    return [x for x in Bits.members(bits) if x and _is_p_power(subbrace_closure_bits(Q, 1 << x).bit_count(), p)]


def pi_free_hypercentre(B: FiniteBrace) -> dict:
    """For each prime p with ζ(B) p-free, every upper central factor is p-free."""
    up = upper_central_chain(B)
    per_prime = {}
    ok = True
    for p in prime_factors(B.order):
        if _p_elements(B, up[1] if len(up) > 1 else 1, p):
            per_prime[p] = {"applicable": False}
            continue
        bad = []
        for i, (lo, hi) in enumerate(zip(up, up[1:])):
            Q, proj = _quotient_bits(B, lo)
            if _p_elements(Q, image(proj, hi), p):
                bad.append(i)
        per_prime[p] = {"applicable": True, "failures": bad}
        ok &= not bad
    return {"passed": ok, "applicable": any(v["applicable"] for v in per_prime.values()), "primes": per_prime}


def b_central_sum_bound(B: FiniteBrace) -> dict:
    """Sum of B-centrally nilpotent ideals of classes n0, m0 has class <= n0 + m0."""
    cn = [(i, b_central_class(B, i)) for i in ideal_bits_list(B)]
    cn = [(i, c) for i, c in cn if c is not None]
    bad = []
    for (i, ci), (j, cj) in combinations_with_replacement(cn, 2):
        c = b_central_class(B, set_sum(B, i, j))
        if c is None or c > ci + cj:
            bad.append({"I": Bits.members(i), "J": Bits.members(j), "class": c, "bound": ci + cj})
    return {"passed": not bad, "applicable": True, "pairs": len(cn) * (len(cn) + 1) // 2, "failures": bad}


def frattini_lemma(B: FiniteBrace) -> dict:
    """L ∩ Fit(B) is an ideal for every maximal left ideal L."""
    fit = fitting_bits(B)
    bad = [Bits.members(L.bits) for L in maximal_left_ideals(B) if not is_ideal_bits(B, L.bits & fit)]
    return {"passed": not bad, "applicable": True, "failures": bad}


def fitting_two_routes(B: FiniteBrace) -> dict:
    """Fit(B) as a sum of B-centrally nilpotent ideals and as ∩ chief-factor centralisers."""
    fit = fitting_bits(B)
    routes = {c: chief_centraliser_intersection(B, c) for c in ("first", "last")}
    return {"passed": all(r == fit for r in routes.values()), "applicable": True,
            "fitting": Bits.members(fit), "via_chief": {k: Bits.members(v) for k, v in routes.items()}}


def fitting_self_centralising(B: FiniteBrace) -> dict:
    """In a soluble brace C_B(Fit) = ζ(Fit), the centre of Fit taken relative to B
    (first term of its upper B-central series)."""
    if derived_chain(B)[-1] != 1:
        return {"passed": True, "applicable": False}
    fit = fitting_bits(B)
    up = b_upper_chain(B, fit)
    z = up[1] if len(up) > 1 else 1
    F, emb = restrict(B, fit)
    standalone = Bits.from_elements(emb[k] for k in Bits.members(centre_bits(F)))
    c = centraliser_bits(B, fit)
    return {"passed": c == z, "applicable": True, "centraliser": Bits.members(c),
            "relative_centre": Bits.members(z), "standalone_centre": Bits.members(standalone)}


def fitting_quotient_monotone(B: FiniteBrace) -> dict:
    """The image of Fit(B) in B/I lies in Fit(B/I) for every ideal I."""
    fit = fitting_bits(B)
    bad = []
    for i in ideal_bits_list(B):
        Q, proj = _quotient_bits(B, i)
        if not Bits.is_subset(image(proj, fit), fitting_bits(Q)):
            bad.append(Bits.members(i))
    return {"passed": not bad, "applicable": True, "failures": bad}


def fitting_autocentraliser(B: FiniteBrace) -> dict:
    """(C_B(F) + F)/F contains no non-zero ideal of B/F that is soluble relative to B/F."""
    fit = fitting_bits(B)
    k = set_sum(B, centraliser_bits(B, fit), fit)
    Q, proj = _quotient_bits(B, fit)
    kq = image(proj, k)
    bad = [Bits.members(x) for x in ideal_bits_list(Q)
           if x != 1 and Bits.is_subset(x, kq) and derived_chain(Q, x)[-1] == 1]
    return {"passed": not bad, "applicable": True, "failures": bad}


def minimal_and_maximal(B: FiniteBrace) -> dict:
    """Centrally nilpotent: minimal ideals lie in ζ(B) with prime order; maximal subbraces are ideals."""
    if nilpotency_class(B) is None:
        return {"passed": True, "applicable": False}
    z = centre_bits(B)
    bad_min = [Bits.members(m.bits) for m in extremal(B, "ideal", "minimal")
               if not Bits.is_subset(m.bits, z) or prime_factors(len(m)) != [len(m)]]
    bad_max = [Bits.members(m.bits) for m in extremal(B, "subbrace", "maximal") if not m.is_ideal]
    return {"passed": not bad_min and not bad_max, "applicable": True,
            "bad_minimal": bad_min, "bad_maximal": bad_max}


def chief_criterion(B: FiniteBrace) -> dict:
    """Centrally nilpotent iff every chief factor is central (both chief series)."""
    from .series import chief_series

    cn = nilpotency_class(B) is not None
    verdicts = {c: all(f["central"] for f in chief_series(B, c).factors) for c in ("first", "last")}
    return {"passed": all(v == cn for v in verdicts.values()), "applicable": True,
            "centrally_nilpotent": cn, "all_central": verdicts}


def commutator_distributes(B: FiniteBrace) -> dict:
    """[I, J + K] = [I, J] + [I, K] for all ideal triples."""
    ideals = ideal_bits_list(B)
    bad = 0
    for i in ideals:
        for j, k in combinations_with_replacement(ideals, 2):
            lhs = commutator_bits(B, i, set_sum(B, j, k))
            rhs = set_sum(B, commutator_bits(B, i, j), commutator_bits(B, i, k))
            bad += lhs != rhs
    return {"passed": not bad, "applicable": True, "failures": bad}


def left_plus_strong(B: FiniteBrace) -> dict:
    """L + I is a left ideal for a left ideal L and a strong left ideal I."""
    lefts = all_substructures(B, "left_ideal")
    strongs = [s for s in lefts if s.is_strong_left_ideal]
    bad = sum(not classify(B, set_sum(B, L.bits, S.bits)).is_left_ideal for L in lefts for S in strongs)
    return {"passed": not bad, "applicable": True, "failures": bad}


def sylow_structure(B: FiniteBrace) -> dict:
    """Centrally nilpotent: Sylow decomposition and matching prime supports."""
    if nilpotency_class(B) is None:
        return {"passed": True, "applicable": False}
    rep = sylow(B)
    profiles, _ = element_profiles(B)
    mismatched = [p.element for p in profiles if p.additive_primes != p.multiplicative_primes]
    return {"passed": rep.decomposes and not mismatched, "applicable": True,
            "decomposes": rep.decomposes, "support_mismatch": mismatched, "failures": rep.failures}


def subideal_properties(B: FiniteBrace) -> dict:
    """Defect consistency, intersection heredity, and defect <= class when centrally nilpotent."""
    subs = [s.bits for s in all_substructures(B, "subbrace")]
    cls = nilpotency_class(B)
    full = Bits.full(B.order)
    fails = []
    for c in subs:
        d = defect(B, c)
        if d is None:
            continue
        if cls is not None and d > cls:
            fails.append(("defect_above_class", Bits.members(c)))
        if d >= 1:
            from .subideal import closure_chain

            top = closure_chain(B, c)[1]
            if defect(B, c, top) != d - 1:
                fails.append(("defect_consistency", Bits.members(c)))
        for D in subs:
            if D == full:
                continue
            e = defect(B, c & D, D)
            if e is None or e > d:
                fails.append(("intersection", Bits.members(c), Bits.members(D)))
    return {"passed": not fails, "applicable": True, "failures": fails[:10], "failure_count": len(fails)}


CHECKS = {
    "series_duality": series_duality,
    "derived_inside_lower": derived_inside_lower,
    "centre_in_group_centres": centre_in_group_centres,
    "grun": grun,
    "exponent_bound": exponent_bound,
    "pi_free_hypercentre": pi_free_hypercentre,
    "chief_criterion": chief_criterion,
    "minimal_and_maximal": minimal_and_maximal,
    "b_central_sum_bound": b_central_sum_bound,
    "frattini_lemma": frattini_lemma,
    "fitting_two_routes": fitting_two_routes,
    "fitting_self_centralising": fitting_self_centralising,
    "fitting_quotient_monotone": fitting_quotient_monotone,
    "fitting_autocentraliser": fitting_autocentraliser,
    "commutator_distributes": commutator_distributes,
    "left_plus_strong": left_plus_strong,
    "sylow_structure": sylow_structure,
    "subideal_properties": subideal_properties,
}


def run_checks(B: FiniteBrace, names=None) -> dict:
    names = list(CHECKS) if names is None else names
    return {n: CHECKS[n](B) for n in names}
