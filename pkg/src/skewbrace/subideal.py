"""Ideal closure series, subideal defect, indices, idealisers and the
strong-left-ideal normaliser."""

from dataclasses import dataclass, field

from . import bits as Bits
from .core import FiniteBrace
from .substructure import (
    SubSet,
    all_substructures,
    classify,
    ideal_closure_bits,
    is_ideal_bits,
    require_subbrace,
    subbrace_closure_bits,
)


@dataclass
class ClosureSeries:
    """C^{B,0} = B and C^{B,k+1} = the ideal closure of C inside C^{B,k}."""

    subbrace: SubSet
    chain: list[SubSet]
    stabilised: bool = True

    @property
    def terminal(self) -> SubSet:
        return self.chain[-1]

    @property
    def is_subideal(self) -> bool:
        return self.terminal.bits == self.subbrace.bits

    @property
    def defect(self) -> int | None:
        if not self.is_subideal:
            return None
        return next(k for k, c in enumerate(self.chain) if c.bits == self.subbrace.bits)

    def to_dict(self) -> dict:
        return {
            "kind": "ideal_closure",
            "subbrace": list(self.subbrace.elements),
            "chain": [list(c.elements) for c in self.chain],
            "orders": [len(c) for c in self.chain],
            "stabilised": self.stabilised,
            "subideal": self.is_subideal,
            "defect": self.defect,
        }


def closure_chain(B: FiniteBrace, c: int, top: int | None = None) -> list[int]:
    start = Bits.full(B.order) if top is None else top

    def compute():
        chain = [start]
        while True:
            nxt = ideal_closure_bits(B, c, chain[-1])
            if nxt == chain[-1]:
                return chain
            chain.append(nxt)

    return B.memo(("closure_chain", c, start), compute)


def ideal_closure_series(B: FiniteBrace, C) -> ClosureSeries:
    cb = require_subbrace(B, C)
    return ClosureSeries(classify(B, cb), [classify(B, x) for x in closure_chain(B, cb)])


def defect(B: FiniteBrace, c: int, top: int | None = None) -> int | None:
    """Subideal defect of c in the subbrace ``top`` (default B), or None."""
    chain = closure_chain(B, c, top)
    return chain.index(c) if chain[-1] == c else None


def index_of(B: FiniteBrace, C) -> dict:
    cb = require_subbrace(B, C)
    k = cb.bit_count()
    # cosets counted directly rather than by Lagrange
    add_cosets = {min(B.add[x][c] for c in Bits.members(cb)) for x in range(B.order)}
    mul_cosets = {min(B.mul[x][c] for c in Bits.members(cb)) for x in range(B.order)}
    common = len(add_cosets) if len(add_cosets) == len(mul_cosets) == B.order // k else None
    d = defect(B, cb)
    return {
        "order": k,
        "additive_index": len(add_cosets),
        "multiplicative_index": len(mul_cosets),
        "common_index": common,
        "subideal": d is not None,
        "defect": d,
    }


@dataclass
class IdealiserReport:
    subbrace: SubSet
    family: list[SubSet]
    maximal: list[SubSet]
    idealiser: SubSet | None
    witnesses: tuple[SubSet, SubSet] | None = None
    join: SubSet | None = None
    failing_pairs: list[tuple[SubSet, SubSet]] = field(default_factory=list)

    @property
    def exists(self) -> bool:
        return self.idealiser is not None

    def to_dict(self) -> dict:
        return {
            "subbrace": list(self.subbrace.elements),
            "exists": self.exists,
            "idealiser": list(self.idealiser.elements) if self.idealiser else None,
            "family_orders": [len(s) for s in self.family],
            "maximal": [list(s.elements) for s in self.maximal],
            "witnesses": [list(w.elements) for w in self.witnesses] if self.witnesses else None,
            "join": list(self.join.elements) if self.join else None,
            "ideal_of_join": False if self.join else None,
            "failing_pairs": [[list(t.elements), list(u.elements)] for t, u in self.failing_pairs],
        }


def idealiser_report(B: FiniteBrace, S) -> IdealiserReport:
    """All subbraces N in which S is an ideal, and whether they have a largest member.

    When there is no largest member, two maximal members T, U are returned
    whose join <T, U> no longer has S as an ideal.
    """
    sb = require_subbrace(B, S)
    family = [
        N for N in all_substructures(B, "subbrace")
        if Bits.is_subset(sb, N.bits) and is_ideal_bits(B, sb, N.bits)
    ]
    maximal = [N for N in family if not any(M.bits != N.bits and Bits.is_subset(N.bits, M.bits) for M in family)]
    sub = classify(B, sb)
    if len(maximal) == 1:
        return IdealiserReport(sub, family, maximal, maximal[0])
    failing = []
    for a, T in enumerate(maximal):
        for U in maximal[a + 1:]:
            if not is_ideal_bits(B, sb, subbrace_closure_bits(B, T.bits | U.bits)):
                failing.append((T, U))
    if not failing:
        raise AssertionError("several maximal members but every join keeps S as an ideal")
    T, U = failing[0]
    join = classify(B, subbrace_closure_bits(B, T.bits | U.bits))
    return IdealiserReport(sub, family, maximal, None, (T, U), join, failing)


@dataclass
class NormaliserReport:
    subbrace: SubSet
    normaliser: SubSet | None
    qualifying: list[SubSet] = field(default_factory=list)
    contains_subbrace: bool | None = None

    @property
    def unique_maximum(self) -> bool:
        return self.normaliser is not None

    def to_dict(self) -> dict:
        return {
            "subbrace": list(self.subbrace.elements),
            "normaliser": list(self.normaliser.elements) if self.normaliser else None,
            "unique_maximum": self.unique_maximum,
            "qualifying_orders": [len(s) for s in self.qualifying],
            "contains_subbrace": self.contains_subbrace,
        }


def _normalises(B: FiniteBrace, x: int, c: int) -> bool:
    add, mul, neg, inv, lam = B.add, B.mul, B.neg, B.inv, B.lam[x]
    for y in Bits.members(c):
        if not (c >> add[add[x][y]][neg[x]] & 1 and c >> mul[mul[x][y]][inv[x]] & 1 and c >> lam[y] & 1):
            return False
    return True


def strong_left_normaliser(B: FiniteBrace, C) -> NormaliserReport:
    """Largest strong left ideal N normalising C in both groups with λ_N(C) = C."""
    cb = require_subbrace(B, C)
    good = Bits.from_elements(x for x in range(B.order) if _normalises(B, x, cb))
    qualifying = [L for L in all_substructures(B, "strong_left_ideal") if Bits.is_subset(L.bits, good)]
    top = [L for L in qualifying if all(Bits.is_subset(M.bits, L.bits) for M in qualifying)]
    sub = classify(B, cb)
    if not top:
        return NormaliserReport(sub, None, qualifying)
    n = top[0]
    return NormaliserReport(sub, n, qualifying, Bits.is_subset(cb, n.bits))


@dataclass
class SubidealAudit:
    entries: list[dict]
    all_subideal: bool
    centrally_nilpotent: bool
    nilpotency_class: int | None
    soluble: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def subideal_audit(B: FiniteBrace) -> SubidealAudit:
    from .series import is_soluble, nilpotency_class

    entries = []
    for s in all_substructures(B, "subbrace"):
        d = defect(B, s.bits)
        entries.append({"subbrace": list(s.elements), "order": len(s), "subideal": d is not None, "defect": d})
    cls = nilpotency_class(B)
    return SubidealAudit(
        entries,
        all(e["subideal"] for e in entries),
        cls is not None,
        cls,
        is_soluble(B),
    )
