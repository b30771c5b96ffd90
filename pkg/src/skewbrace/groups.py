"""Finite groups given by Cayley tables.

A table is a sequence of rows with ``table[i][j] = i * j``.  Element 0 is the
identity everywhere in this module; callers that accept arbitrary tables
relabel first (see :func:`find_identity`).
"""

from math import lcm
from typing import Sequence

import numpy as np

from . import bits as B
from .errors import NotAGroup

Table = Sequence[Sequence[int]]


def as_tuple_table(table: Table) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in table)


def find_identity(table: Table) -> int | None:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    return None


def check_group(table: Table, which: str = "group") -> np.ndarray:
    """Verify that ``table`` is a group with identity 0; return it as an array.

    Raises :class:`NotAGroup` with a witness describing the first failure.
    """
    n = len(table)
    if n == 0:
        raise NotAGroup(which, (), "empty table")
    if any(len(row) != n for row in table):
        raise NotAGroup(which, (), "table is not square")
    t = np.asarray(table, dtype=np.int64)
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        i, j = map(int, bad[0])
        raise NotAGroup(which, (i, j), "entry out of range")
    ar = np.arange(n)
    if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
        raise NotAGroup(which, (0,), "0 is not the identity")
    # latin square: every row and column a permutation
    for axis, label in ((1, "row"), (0, "column")):
        s = np.sort(t, axis=axis)
        ok = np.all(s == (ar if axis == 1 else ar[:, None]), axis=axis)
        if not ok.all():
            k = int(np.argmin(ok))
            raise NotAGroup(which, (k,), f"{label} {k} is not a permutation")
    lhs = t[t[:, :, None], ar[None, None, :]]  # (ab)c
    rhs = t[ar[:, None, None], t[None, :, :]]  # a(bc)
    diff = np.argwhere(lhs != rhs)
    if len(diff):
        a, b, c = map(int, diff[0])
        raise NotAGroup(which, (a, b, c), "not associative")
    return t


def inverses(table: Table) -> tuple[int, ...]:
    n = len(table)
    out = [0] * n
    for i in range(n):
        row = table[i]
        for j in range(n):
            if row[j] == 0:
                out[i] = j
                break
    return tuple(out)


def closure(table: Table, gens, start: int = 1) -> int:
    """Subgroup generated by ``gens`` together with the set ``start``.

    ``start`` must already be a subgroup (the default is the trivial one).
    """
    gens = [g for g in gens if g]
    seen = start
    frontier = B.members(start)
    while frontier:
        nxt = []
        for x in frontier:
            row = table[x]
            for g in gens:
                y = row[g]
                if not seen >> y & 1:
                    seen |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return seen


def generate(table: Table, bits: int) -> int:
    return closure(table, B.members(bits))


def is_closed(table: Table, bits: int) -> bool:
    if not bits & 1:
        return False
    els = B.members(bits)
    for x in els:
        row = table[x]
        for y in els:
            if not bits >> row[y] & 1:
                return False
    return True


def conjugate(table: Table, inv: Sequence[int], g: int, x: int) -> int:
    """g x g^-1."""
    return table[table[g][x]][inv[g]]


def commutator(table: Table, inv: Sequence[int], x: int, y: int) -> int:
    """x^-1 y^-1 x y (written -x - y + x + y additively)."""
    return table[table[table[inv[x]][inv[y]]][x]][y]


def is_normal(table: Table, inv: Sequence[int], h: int, ambient: int | None = None) -> bool:
    n = len(table)
    amb = B.members(B.full(n) if ambient is None else ambient)
    for x in B.members(h):
        for g in amb:
            if not h >> conjugate(table, inv, g, x) & 1:
                return False
    return True


def commutator_subgroup(table: Table, inv: Sequence[int], x_bits: int, y_bits: int) -> int:
    """Subgroup generated by all [x, y] with x in X and y in Y."""
    xs, ys = B.members(x_bits), B.members(y_bits)
    gens = {commutator(table, inv, x, y) for x in xs for y in ys}
    return closure(table, sorted(gens))


def normal_closure(table: Table, inv: Sequence[int], bits: int, ambient: int | None = None) -> int:
    n = len(table)
    amb = B.members(B.full(n) if ambient is None else ambient)
    cur = generate(table, bits | 1)
    while True:
        extra = 0
        for x in B.members(cur):
            for g in amb:
                extra |= 1 << conjugate(table, inv, g, x)
        nxt = generate(table, cur | extra)
        if nxt == cur:
            return cur
        cur = nxt


def centre(table: Table) -> int:
    n = len(table)
    return B.from_elements(
        x for x in range(n) if all(table[x][y] == table[y][x] for y in range(n))
    )


def upper_central_series(table: Table, inv: Sequence[int]) -> list[int]:
    """[Z_0, Z_1, ...] until the chain stops growing (the last entry repeats nothing)."""
    n = len(table)
    chain = [1]
    while True:
        z = chain[-1]
        nxt = B.from_elements(
            g for g in range(n)
            if all(z >> commutator(table, inv, g, h) & 1 for h in range(n))
        )
        if nxt == z:
            return chain
        chain.append(nxt)


def element_order(table: Table, g: int) -> int:
    k, x = 1, g
    while x != 0:
        x = table[x][g]
        k += 1
    return k


def element_orders(table: Table) -> tuple[int, ...]:
    return tuple(element_order(table, g) for g in range(len(table)))


def exponent(table: Table, bits: int | None = None) -> int:
    els = range(len(table)) if bits is None else B.members(bits)
    return lcm(1, *(element_order(table, g) for g in els))


def is_abelian(table: Table) -> bool:
    t = np.asarray(table)
    return bool(np.array_equal(t, t.T))


def is_cyclic(table: Table) -> bool:
    n = len(table)
    return any(o == n for o in element_orders(table))


def automorphisms(table: Table) -> list[tuple[int, ...]]:
    """All automorphisms as permutation tuples, identity first."""
    from .iso import isomorphisms

    auts = list(isomorphisms([table], [table]))
    ident = tuple(range(len(table)))
    auts.sort(key=lambda p: (p != ident, p))
    return auts


def is_isomorphic_group(t1: Table, t2: Table) -> bool:
    from .iso import find_isomorphism

    return find_isomorphism([t1], [t2]) is not None


def relabel(table: Table, perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Transport ``table`` along the bijection ``perm`` (old index -> new index)."""
    n = len(table)
    back = [0] * n
    for old, new in enumerate(perm):
        back[new] = old
    return tuple(
        tuple(perm[table[back[i]][back[j]]] for j in range(n)) for i in range(n)
    )
