"""Distinguished ideals: socle, fix, centre, kernel of λ, Fitting and Frattini
ideals, centralisers, the ζ_B-radical, Sylow decomposition and element orders."""

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import bits as Bits
from .commutator import commutator_bits
from .construct import direct_product, restrict
from .core import FiniteBrace
from .errors import NotNested
from .groups import element_orders, is_cyclic, is_normal
from .iso import verify_isomorphism
from .series import (
    b_central_class,
    centre_bits,
    chief_chain,
    is_centrally_nilpotent,
)
from .substructure import (
    SubSet,
    all_substructures,
    classify,
    extremal,
    ideal_bits_list,
    require_ideal,
    set_sum,
    subbrace_closure_bits,
)


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _is_p_power(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def socle_bits(B: FiniteBrace) -> int:
    A, M = B.np_add, B.np_mul
    ok = (M == A).all(axis=1) & (A == A.T).all(axis=1)
    return Bits.from_elements(np.flatnonzero(ok).tolist())


def fix_bits(B: FiniteBrace) -> int:
    L = np.asarray(B.lam)
    ok = (L == np.arange(B.order)[None, :]).all(axis=0)
    return Bits.from_elements(np.flatnonzero(ok).tolist())


def kernel_lambda_bits(B: FiniteBrace) -> int:
    L = np.asarray(B.lam)
    ok = (L == np.arange(B.order)[None, :]).all(axis=1)
    return Bits.from_elements(np.flatnonzero(ok).tolist())


def distinguished_ideal(B: FiniteBrace, which: str) -> SubSet:
    if which == "socle":
        s = classify(B, socle_bits(B))
        if not s.is_ideal:
            raise AssertionError("socle failed to classify as an ideal")
    elif which == "centre":
        bits = centre_bits(B)
        if bits != socle_bits(B) & fix_bits(B):
            raise AssertionError("centre differs from socle intersected with fix")
        s = classify(B, bits)
        if not s.is_ideal:
            raise AssertionError("centre failed to classify as an ideal")
    elif which == "fix":
        s = classify(B, fix_bits(B))
        if not s.is_left_ideal:
            raise AssertionError("fix failed to classify as a left ideal")
    elif which == "kernel_lambda":
        s = classify(B, kernel_lambda_bits(B))
    else:
        raise ValueError("which must be socle, fix, centre or kernel_lambda")
    return s


def fitting_bits(B: FiniteBrace) -> int:
    def compute():
        total = 1
        for i in ideal_bits_list(B):
            if b_central_class(B, i) is not None:
                total = set_sum(B, total, i)
        if b_central_class(B, total) is None:
            raise AssertionError("sum of B-centrally nilpotent ideals is not B-centrally nilpotent")
        return total

    return B.memo("fitting", compute)


def fitting_ideal(B: FiniteBrace) -> SubSet:
    return classify(B, fitting_bits(B))


def maximal_left_ideals(B: FiniteBrace) -> list[SubSet]:
    return extremal(B, "left_ideal", "maximal")


def frattini_bits(B: FiniteBrace) -> int:
    def compute():
        inter = Bits.full(B.order)
        for L in maximal_left_ideals(B):
            inter &= L.bits
        result = inter & fitting_bits(B)
        if not classify(B, result).is_ideal:
            raise AssertionError("Frattini ideal failed to classify as an ideal")
        return result

    return B.memo("frattini", compute)


def frattini_ideal(B: FiniteBrace) -> SubSet:
    return classify(B, frattini_bits(B))


def non_generators(B: FiniteBrace) -> tuple[int, ...]:
    """Elements b such that <b, S> = B forces S = B for every subbrace S."""
    full = Bits.full(B.order)
    proper = [s.bits for s in all_substructures(B, "subbrace") if s.bits != full]
    out = []
    for b in range(B.order):
        if all(subbrace_closure_bits(B, s | 1 << b) != full for s in proper):
            out.append(b)
    return tuple(out)


def centraliser_bits(B: FiniteBrace, i: int, j: int = 1) -> int:
    """Largest ideal K with [K, I] inside J."""
    total = 1
    for k in ideal_bits_list(B):
        if Bits.is_subset(commutator_bits(B, k, i), j):
            total = set_sum(B, total, k)
    if not Bits.is_subset(commutator_bits(B, total, i), j):
        raise AssertionError("centralising ideals are not closed under sums")
    return total


def centraliser(B: FiniteBrace, I, modulo=None) -> SubSet:
    ib = require_ideal(B, I)
    jb = 1 if modulo is None else require_ideal(B, modulo)
    if not Bits.is_subset(jb, ib):
        raise NotNested("the modulus must be an ideal contained in I")
    return classify(B, centraliser_bits(B, ib, jb))


def chief_centraliser_intersection(B: FiniteBrace, choice: str = "first") -> int:
    chain = chief_chain(B, choice)
    inter = Bits.full(B.order)
    for lo, hi in zip(chain, chain[1:]):
        inter &= centraliser_bits(B, hi, lo)
    return inter


def zeta_b_radical(B: FiniteBrace) -> SubSet:
    """Intersection of the centralisers of the chief factors, computed on two
    different chief series and required to agree."""
    a = chief_centraliser_intersection(B, "first")
    b = chief_centraliser_intersection(B, "last")
    if a != b:
        raise AssertionError("chief-factor centraliser intersection depends on the chief series")
    return classify(B, a)


def is_abelian_ideal(B: FiniteBrace, i: int) -> bool:
    return commutator_bits(B, i, i) == 1


@dataclass
class GaschutzReport:
    applicable: bool
    holds: bool | None
    fitting: tuple[int, ...]
    abelian_minimal_sum: tuple[int, ...] | None

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "holds": self.holds,
            "fitting": list(self.fitting),
            "abelian_minimal_sum": None if self.abelian_minimal_sum is None else list(self.abelian_minimal_sum),
        }


def gaschutz_check(B: FiniteBrace) -> GaschutzReport:
    """When Frat(B) = 0, Fit(B) should be the sum of the abelian minimal ideals."""
    fit = fitting_bits(B)
    if frattini_bits(B) != 1:
        return GaschutzReport(False, None, tuple(Bits.members(fit)), None)
    total = 1
    for m in extremal(B, "ideal", "minimal"):
        if is_abelian_ideal(B, m.bits):
            total = set_sum(B, total, m.bits)
    return GaschutzReport(True, total == fit, tuple(Bits.members(fit)), tuple(Bits.members(total)))


@dataclass
class SylowPart:
    prime: int
    additive: tuple[int, ...] | None
    multiplicative: tuple[int, ...] | None
    additive_unique: bool
    multiplicative_unique: bool
    coincide: bool
    is_ideal: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__, additive=list(self.additive or ()), multiplicative=list(self.multiplicative or ()))


@dataclass
class SylowReport:
    centrally_nilpotent: bool
    parts: list[SylowPart]
    decomposes: bool
    certificate: tuple[int, ...] | None = field(default=None)
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "centrally_nilpotent": self.centrally_nilpotent,
            "parts": [p.to_dict() for p in self.parts],
            "decomposes": self.decomposes,
            "certificate": list(self.certificate) if self.certificate else None,
            "failures": self.failures,
        }


def _p_elements(table, p: int) -> int:
    return Bits.from_elements(x for x, o in enumerate(element_orders(table)) if _is_p_power(o, p))


def _unique_sylow(table, inv, n: int, p: int) -> tuple[int, bool]:
    """The set of p-elements, and whether it is a (hence the unique) Sylow p-subgroup."""
    s = _p_elements(table, p)
    pk = 1
    while n % (pk * p) == 0:
        pk *= p
    from .groups import is_closed

    ok = s.bit_count() == pk and is_closed(table, s) and is_normal(table, inv, s)
    return s, ok


def sylow(B: FiniteBrace, p: int | None = None) -> SylowReport:
    n = B.order
    primes = prime_factors(n) if p is None else [p]
    cn = is_centrally_nilpotent(B)
    parts = []
    failures = []
    for q in primes:
        sa, ua = _unique_sylow(B.add, B.neg, n, q)
        sm, um = _unique_sylow(B.mul, B.inv, n, q)
        same = ua and um and sa == sm
        ideal = same and classify(B, sa).is_ideal
        parts.append(SylowPart(q, tuple(Bits.members(sa)), tuple(Bits.members(sm)), ua, um, same, ideal))
        if not ua:
            failures.append(f"p={q}: Sylow subgroup of (B,+) not unique")
        if not um:
            failures.append(f"p={q}: Sylow subgroup of (B,.) not unique")
        if ua and um and not same:
            failures.append(f"p={q}: additive and multiplicative Sylow subgroups differ")
        if same and not ideal:
            failures.append(f"p={q}: Sylow subbrace is not an ideal")
    cert = None
    decomposes = False
    if p is None and not failures:
        cert = _product_certificate(B, [Bits.from_elements(pt.additive) for pt in parts])
        decomposes = cert is not None
        if cert is None:
            failures.append("the product of the Sylow subbraces is not isomorphic to B")
    return SylowReport(cn, parts, decomposes, cert, failures)


def _product_certificate(B: FiniteBrace, parts: list[int]) -> tuple[int, ...] | None:
    """Map from the index set of the direct product of the parts onto B,
    sending (x_1, ..., x_k) to x_1 + ... + x_k; verified on both tables."""
    if not parts:
        return (0,) if B.order == 1 else None
    factors = [restrict(B, s) for s in parts]
    P = factors[0][0]
    for br, _ in factors[1:]:
        P = direct_product(P, br)
    sizes = [br.order for br, _ in factors]
    perm = []
    for idx in range(P.order):
        digits = []
        r = idx
        for m in reversed(sizes):
            digits.append(r % m)
            r //= m
        digits.reverse()
        x = 0
        for (br, emb), d in zip(factors, digits):
            x = B.add[x][emb[d]]
        perm.append(x)
    if verify_isomorphism([P.add, P.mul], [B.add, B.mul], perm):
        return tuple(perm)
    return None


@dataclass(frozen=True)
class ElementProfile:
    element: int
    additive_order: int
    multiplicative_order: int
    subbrace_order: int

    @property
    def additive_primes(self) -> tuple[int, ...]:
        return tuple(prime_factors(self.additive_order))

    @property
    def multiplicative_primes(self) -> tuple[int, ...]:
        return tuple(prime_factors(self.multiplicative_order))

    def to_dict(self) -> dict:
        return {
            "element": self.element,
            "additive_order": self.additive_order,
            "multiplicative_order": self.multiplicative_order,
            "subbrace_order": self.subbrace_order,
            "additive_primes": list(self.additive_primes),
            "multiplicative_primes": list(self.multiplicative_primes),
        }


def element_profiles(B: FiniteBrace) -> tuple[list[ElementProfile], int | None]:
    """Per-element orders, and a common generator of (B,+) and (B,.) when both are cyclic."""
    ao = element_orders(B.add)
    mo = element_orders(B.mul)
    profiles = [
        ElementProfile(b, ao[b], mo[b], subbrace_closure_bits(B, 1 << b).bit_count())
        for b in range(B.order)
    ]
    common = None
    if is_cyclic(B.add) and is_cyclic(B.mul):
        common = next((b for b in range(B.order) if ao[b] == B.order and mo[b] == B.order), None)
        if common is None:
            raise AssertionError("both groups cyclic but no common generator")
    return profiles, common


def brace_exponent(B: FiniteBrace, bits: int | None = None) -> int:
    """lcm over the elements of lcm(additive order, multiplicative order)."""
    ao = element_orders(B.add)
    mo = element_orders(B.mul)
    els = range(B.order) if bits is None else Bits.members(bits)
    e = 1
    for x in els:
        for o in (ao[x], mo[x]):
            e = e * o // gcd(e, o)
    return e
