"""Central, derived, chief and B-central series.

Chains are lists of bitsets internally and :class:`Series` objects at the API
boundary.  Centres of quotients are computed on the quotient brace itself and
pulled back through the projection.
"""

from dataclasses import dataclass, field

import numpy as np

from . import bits as Bits
from .commutator import commutator_bits
from .construct import _quotient_bits, restrict
from .core import FiniteBrace
from .substructure import (
    SubSet,
    as_bits,
    classify,
    ideal_bits_list,
    require_ideal,
)

KINDS = ("upper_central", "lower_central", "derived", "chief", "b_lower", "b_upper", "ideal_closure")


@dataclass
class Series:
    kind: str
    chain: list[SubSet]
    stabilised: bool
    terminal: SubSet
    factors: list[dict] = field(default_factory=list)
    verdict: dict = field(default_factory=dict)

    def orders(self) -> list[int]:
        return [len(s) for s in self.chain]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "chain": [list(s.elements) for s in self.chain],
            "orders": self.orders(),
            "stabilised": self.stabilised,
            "terminal": list(self.terminal.elements),
            "factors": self.factors,
            "verdict": self.verdict,
        }


def _series(B: FiniteBrace, kind: str, chain: list[int], stabilised: bool = True, factors=None) -> Series:
    subs = [classify(B, c) for c in chain]
    return Series(kind, subs, stabilised, subs[-1], factors or [])


def centre_bits(B: FiniteBrace) -> int:
    """{a : a + b = b + a = ab = ba for all b}."""
    A, M = B.np_add, B.np_mul
    ok = (A == A.T).all(axis=1) & (M == A).all(axis=1) & (M.T == A).all(axis=1)
    return Bits.from_elements(np.flatnonzero(ok).tolist())


def preimage(proj, q_bits: int) -> int:
    return Bits.from_elements(b for b, c in enumerate(proj) if q_bits >> c & 1)


def image(proj, bits: int) -> int:
    return Bits.from_elements(proj[b] for b in Bits.members(bits))


def upper_central_chain(B: FiniteBrace) -> list[int]:
    """[ζ_0, ζ_1, ...]; the last entry is the hypercentre."""

    def compute():
        chain = [1]
        while True:
            Q, proj = _quotient_bits(B, chain[-1])
            nxt = preimage(proj, centre_bits(Q))
            if nxt == chain[-1]:
                return chain
            chain.append(nxt)

    return B.memo("upper_central_chain", compute)


def lower_central_chain(B: FiniteBrace) -> list[int]:
    """[Γ_1 = B, Γ_2, ...] until the chain stops shrinking."""

    def compute():
        full = Bits.full(B.order)
        chain = [full]
        while True:
            nxt = commutator_bits(B, chain[-1], full)
            if nxt == chain[-1]:
                return chain
            chain.append(nxt)

    return B.memo("lower_central_chain", compute)


def derived_chain(B: FiniteBrace, i: int | None = None) -> list[int]:
    start = Bits.full(B.order) if i is None else i

    def compute():
        chain = [start]
        while True:
            nxt = commutator_bits(B, chain[-1], chain[-1])
            if nxt == chain[-1]:
                return chain
            chain.append(nxt)

    return B.memo(("derived_chain", start), compute)


def upper_central_series(B: FiniteBrace) -> Series:
    s = _series(B, "upper_central", upper_central_chain(B))
    s.verdict = {"class": nilpotency_class(B), "hypercentre_order": len(s.terminal)}
    return s


def lower_central_series(B: FiniteBrace) -> Series:
    s = _series(B, "lower_central", lower_central_chain(B))
    s.verdict = {"class": nilpotency_class(B), "hypocentre_order": len(s.terminal)}
    return s


def derived_series(B: FiniteBrace, I=None) -> Series:
    ib = None if I is None else require_ideal(B, I)
    chain = derived_chain(B, ib)
    s = _series(B, "derived", chain)
    s.verdict = {"soluble": chain[-1] == 1, "derived_length": derived_length_of(chain)}
    return s


def derived_length_of(chain: list[int]) -> int | None:
    return chain.index(1) if chain[-1] == 1 else None


def derived_length(B: FiniteBrace, I=None) -> int | None:
    ib = None if I is None else require_ideal(B, I)
    return derived_length_of(derived_chain(B, ib))


def is_soluble(B: FiniteBrace) -> bool:
    return derived_chain(B)[-1] == 1


def nilpotency_class(B: FiniteBrace) -> int | None:
    """Smallest n with ζ_n = B, or None; checked against the lower central series."""
    full = Bits.full(B.order)
    up = upper_central_chain(B)
    low = lower_central_chain(B)
    n_up = up.index(full) if up[-1] == full else None
    n_low = low.index(1) if low[-1] == 1 else None
    if n_up != n_low:
        raise AssertionError(f"upper ({n_up}) and lower ({n_low}) central series disagree")
    return n_up


def is_centrally_nilpotent(B: FiniteBrace) -> bool:
    return nilpotency_class(B) is not None


def _minimal_covers(B: FiniteBrace, j: int) -> list[int]:
    above = [k for k in ideal_bits_list(B) if k != j and Bits.is_subset(j, k)]
    return [k for k in above if not any(m != k and Bits.is_subset(m, k) for m in above)]


def factor_is_central(B: FiniteBrace, lower: int, upper: int) -> bool:
    """Is upper/lower contained in ζ(B/lower)?"""
    Q, proj = _quotient_bits(B, lower)
    return Bits.is_subset(image(proj, upper), centre_bits(Q))


def chief_chain(B: FiniteBrace, choice: str = "first") -> list[int]:
    """A maximal chain of ideals from {0} to B.

    At each step the next member is the minimal ideal above the current one
    with the smallest (``choice='first'``) or largest (``'last'``) sort key.
    """
    full = Bits.full(B.order)
    chain = [1]
    while chain[-1] != full:
        covers = sorted(_minimal_covers(B, chain[-1]), key=Bits.sort_key)
        chain.append(covers[0] if choice == "first" else covers[-1])
    return chain


def chief_series(B: FiniteBrace, choice: str = "first") -> Series:
    chain = chief_chain(B, choice)
    factors = []
    for lo, hi in zip(chain, chain[1:]):
        factors.append({
            "order": hi.bit_count() // lo.bit_count(),
            "central": factor_is_central(B, lo, hi),
        })
    return _series(B, "chief", chain, True, factors)


def b_lower_chain(B: FiniteBrace, i: int) -> list[int]:
    """Γ_1(I) = I, Γ_{k+1}(I) = [Γ_k(I), I]."""

    def compute():
        chain = [i]
        while True:
            nxt = commutator_bits(B, chain[-1], i)
            if nxt == chain[-1]:
                return chain
            chain.append(nxt)

    return B.memo(("b_lower", i), compute)


def b_upper_chain(B: FiniteBrace, i: int) -> list[int]:
    """ζ_0 = 0; ζ_{k+1}/ζ_k = the largest ideal of B/ζ_k inside the centre of I/ζ_k."""
    from .substructure import core_of

    def compute():
        chain = [1]
        while True:
            Q, proj = _quotient_bits(B, chain[-1])
            iq = image(proj, i)
            Ibr, emb = restrict(Q, iq)
            z = Bits.from_elements(emb[k] for k in Bits.members(centre_bits(Ibr)))
            core = core_of(Q, z).bits
            nxt = preimage(proj, core)
            if nxt == chain[-1]:
                return chain
            chain.append(nxt)

    return B.memo(("b_upper", i), compute)


def b_central_class(B: FiniteBrace, i) -> int | None:
    """Class of I as a B-centrally nilpotent ideal, or None."""
    ib = as_bits(i)
    low = b_lower_chain(B, ib)
    up = b_upper_chain(B, ib)
    n_low = low.index(1) if low[-1] == 1 else None
    n_up = up.index(ib) if up[-1] == ib else None
    if (n_low is None) != (n_up is None):
        raise AssertionError("lower and upper B-central series give different verdicts")
    return n_low


def is_b_centrally_nilpotent(B: FiniteBrace, i) -> bool:
    return b_central_class(B, i) is not None


def b_central_series(B: FiniteBrace, I, direction: str = "lower") -> Series:
    ib = require_ideal(B, I)
    if direction == "lower":
        chain = b_lower_chain(B, ib)
        kind = "b_lower"
    elif direction == "upper":
        chain = b_upper_chain(B, ib)
        kind = "b_upper"
    else:
        raise ValueError("direction must be 'lower' or 'upper'")
    s = _series(B, kind, chain)
    low, up = b_lower_chain(B, ib), b_upper_chain(B, ib)
    s.verdict = {
        "b_centrally_nilpotent": b_central_class(B, ib) is not None,
        "class_lower": low.index(1) if low[-1] == 1 else None,
        "class_upper": up.index(ib) if up[-1] == ib else None,
    }
    return s


def check_central_chain(B: FiniteBrace, chain) -> dict:
    """Is the ascending chain 0 = C_0 <= ... <= C_n = B a chain of ideals with
    central factors?  Returns a per-step report."""
    bits_chain = [as_bits(c) for c in chain]
    ideals = set(ideal_bits_list(B))
    steps = []
    ok = bits_chain[0] == 1 and bits_chain[-1] == Bits.full(B.order)
    for lo, hi in zip(bits_chain, bits_chain[1:]):
        step = {
            "ideal": hi in ideals,
            "nested": Bits.is_subset(lo, hi),
            "central": hi in ideals and lo in ideals and Bits.is_subset(lo, hi) and factor_is_central(B, lo, hi),
        }
        ok = ok and all(step.values())
        steps.append(step)
    return {"valid": ok, "length": len(bits_chain) - 1, "steps": steps}
