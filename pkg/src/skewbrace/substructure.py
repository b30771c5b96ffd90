"""Subbraces, left ideals, strong left ideals and ideals.

Subsets are bitsets (Python ints).  The lattice engine enumerates the
subgroups of (B,+) by extending each known subgroup with one element at a
time, then filters by multiplicative closure and the λ / normality flags.
"""

from dataclasses import dataclass, field
from typing import Iterable

from . import bits as Bits
from .core import FiniteBrace
from .errors import NotAnIdeal, NotASubbrace
from .groups import closure, is_closed, is_normal

KINDS = ("subbrace", "left_ideal", "strong_left_ideal", "ideal")


@dataclass(frozen=True)
class SubSet:
    bits: int
    owner: FiniteBrace = field(repr=False, compare=False)
    is_subbrace: bool = False
    is_left_ideal: bool = False
    is_strong_left_ideal: bool = False
    is_ideal: bool = False

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(Bits.members(self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self):
        return iter(Bits.members(self.bits))

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __le__(self, other: "SubSet") -> bool:
        return Bits.is_subset(self.bits, _bits(other))

    def __lt__(self, other: "SubSet") -> bool:
        return self.bits != _bits(other) and self <= other

    def flags(self) -> dict[str, bool]:
        return {k: getattr(self, "is_" + k) for k in KINDS}

    def has_kind(self, kind: str) -> bool:
        return getattr(self, "is_" + kind)

    def to_dict(self) -> dict:
        return {"elements": list(self.elements), "order": len(self), **self.flags()}


def _bits(x) -> int:
    if isinstance(x, SubSet):
        return x.bits
    if isinstance(x, int):
        return x
    return Bits.from_elements(x)


def as_bits(x) -> int:
    """Accept a SubSet, a bitset int, or an iterable of elements."""
    return _bits(x)


# flag tests on raw bitsets

def is_subbrace_bits(B: FiniteBrace, s: int) -> bool:
    return is_closed(B.add, s) and is_closed(B.mul, s)


def is_lambda_invariant(B: FiniteBrace, s: int, actors: int | None = None) -> bool:
    els = Bits.members(s)
    act = range(B.order) if actors is None else Bits.members(actors)
    for b in act:
        row = B.lam[b]
        for x in els:
            if not s >> row[x] & 1:
                return False
    return True


def _flags(B: FiniteBrace, s: int, ambient: int | None = None) -> tuple[bool, bool, bool, bool]:
    if not is_subbrace_bits(B, s):
        return (False, False, False, False)
    left = is_lambda_invariant(B, s, ambient)
    strong = left and is_normal(B.add, B.neg, s, ambient)
    ideal = strong and is_normal(B.mul, B.inv, s, ambient)
    return (True, left, strong, ideal)


def classify(B: FiniteBrace, s) -> SubSet:
    s = _bits(s)
    return SubSet(s, B, *_flags(B, s))


def is_ideal_bits(B: FiniteBrace, s: int, ambient: int | None = None) -> bool:
    """Is s an ideal of the subbrace ``ambient`` (default: of B)?"""
    return _flags(B, s, ambient)[3]


def require_ideal(B: FiniteBrace, s) -> int:
    bits = _bits(s)
    if isinstance(s, SubSet) and s.owner is B:
        ok = s.is_ideal
    else:
        ok = is_ideal_bits(B, bits)
    if not ok:
        raise NotAnIdeal(f"{Bits.members(bits)} is not an ideal")
    return bits


def require_subbrace(B: FiniteBrace, s) -> int:
    bits = _bits(s)
    if not is_subbrace_bits(B, bits):
        raise NotASubbrace(f"{Bits.members(bits)} is not a subbrace")
    return bits


# closures

def subbrace_closure_bits(B: FiniteBrace, s: int) -> int:
    cur = s | 1
    while True:
        nxt = closure(B.add, Bits.members(cur))
        nxt = closure(B.mul, Bits.members(nxt))
        if nxt == cur:
            return cur
        cur = nxt


def subbrace_closure(B: FiniteBrace, elements: Iterable[int] | int = ()) -> SubSet:
    return classify(B, subbrace_closure_bits(B, _bits(elements)))


def ideal_closure_bits(B: FiniteBrace, s: int, ambient: int | None = None) -> int:
    """Smallest ideal of the subbrace ``ambient`` containing s (ambient defaults to B)."""
    amb = Bits.members(Bits.full(B.order) if ambient is None else ambient)
    add, mul, lam, neg, inv = B.add, B.mul, B.lam, B.neg, B.inv
    cur = subbrace_closure_bits(B, s | 1)
    while True:
        extra = 0
        for x in Bits.members(cur):
            for b in amb:
                extra |= (1 << lam[b][x]) | (1 << add[add[b][x]][neg[b]]) | (1 << mul[mul[b][x]][inv[b]])
        if Bits.is_subset(extra, cur):
            return cur
        cur = subbrace_closure_bits(B, cur | extra)


def ideal_closure(B: FiniteBrace, elements: Iterable[int] | int = ()) -> SubSet:
    return classify(B, ideal_closure_bits(B, _bits(elements)))


# lattice

def additive_subgroups(B: FiniteBrace) -> list[int]:
    """All subgroups of (B,+) as bitsets, found by one-element extensions."""

    def compute():
        table = B.add
        found = {1}
        queue = [1]
        while queue:
            h = queue.pop()
            tried = h
            for g in range(B.order):
                if tried >> g & 1:
                    continue
                k = closure(table, [g], h)
                # every element of the coset h + g gives the same extension
                for x in Bits.members(h):
                    tried |= 1 << table[x][g]
                if k not in found:
                    found.add(k)
                    queue.append(k)
        return sorted(found, key=Bits.sort_key)

    return B.memo("additive_subgroups", compute)


def _lattice(B: FiniteBrace) -> list[SubSet]:
    def compute():
        out = []
        for h in additive_subgroups(B):
            if is_closed(B.mul, h):
                out.append(SubSet(h, B, *_flags(B, h)))
        return out

    return B.memo("subbrace_lattice", compute)


def all_substructures(B: FiniteBrace, kind: str = "subbrace") -> list[SubSet]:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    return [s for s in _lattice(B) if s.has_kind(kind)]


def ideal_bits_list(B: FiniteBrace) -> list[int]:
    return B.memo("ideal_bits", lambda: [s.bits for s in all_substructures(B, "ideal")])


def extremal(B: FiniteBrace, kind: str, direction: str) -> list[SubSet]:
    members = all_substructures(B, kind)
    full = Bits.full(B.order)
    if direction == "minimal":
        cands = [s for s in members if s.bits != 1]
        return [
            s for s in cands
            if not any(t.bits != s.bits and Bits.is_subset(t.bits, s.bits) for t in cands)
        ]
    if direction == "maximal":
        cands = [s for s in members if s.bits != full]
        return [
            s for s in cands
            if not any(t.bits != s.bits and Bits.is_subset(s.bits, t.bits) for t in cands)
        ]
    raise ValueError("direction must be 'minimal' or 'maximal'")


def core_of(B: FiniteBrace, c) -> SubSet:
    """Largest ideal of B contained in the subbrace c."""
    cb = require_subbrace(B, c)
    inside = [i for i in ideal_bits_list(B) if Bits.is_subset(i, cb)]
    union = 0
    for i in inside:
        union |= i
    result = ideal_closure_bits(B, union)
    if result not in inside:
        raise AssertionError("ideals inside a subbrace failed to have a largest member")
    return classify(B, result)


def set_sum(B: FiniteBrace, x: int, y: int) -> int:
    """{x + y} as a set (no closure)."""
    out = 0
    ys = Bits.members(y)
    for a in Bits.members(x):
        row = B.add[a]
        for b in ys:
            out |= 1 << row[b]
    return out


def set_product(B: FiniteBrace, x: int, y: int) -> int:
    out = 0
    ys = Bits.members(y)
    for a in Bits.members(x):
        row = B.mul[a]
        for b in ys:
            out |= 1 << row[b]
    return out


def sum_and_product(B: FiniteBrace, i, j) -> SubSet:
    ib, jb = require_ideal(B, i), require_ideal(B, j)
    s = set_sum(B, ib, jb)
    p = set_product(B, ib, jb)
    if s != p:
        raise AssertionError("I + J and IJ differ for a pair of ideals")
    result = classify(B, s)
    if not result.is_ideal:
        raise AssertionError("sum of ideals failed to be an ideal")
    return result


def ideal_sum_bits(B: FiniteBrace, i: int, j: int) -> int:
    """I + J for ideals; cheaper internal version without assertions."""
    return set_sum(B, i, j)
