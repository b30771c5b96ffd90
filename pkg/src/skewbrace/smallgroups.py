"""Catalog of all groups of order at most 16, one Cayley table per isomorphism type.

Every group is built from an explicit multiplication rule on tuples and then
turned into a table whose element 0 is the identity.  Element numbering is the
breadth-first order from the identity over the listed generators, so tables are
reproducible.
"""

from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .groups import as_tuple_table

Elem = Hashable


def table_from_rule(gens: Sequence[Elem], identity: Elem, mul: Callable[[Elem, Elem], Elem]):
    elems = [identity]
    index = {identity: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = mul(x, g)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
        i += 1
    n = len(elems)
    return tuple(tuple(index[mul(elems[a], elems[b])] for b in range(n)) for a in range(n))


def cyclic(n: int):
    return as_tuple_table([[(i + j) % n for j in range(n)] for i in range(n)])


def abelian(orders: Sequence[int]):
    orders = tuple(orders)
    ident = tuple(0 for _ in orders)
    gens = [tuple(int(i == k) for i in range(len(orders))) for k in range(len(orders))]

    def mul(x, y):
        return tuple((a + b) % o for a, b, o in zip(x, y, orders))

    return table_from_rule(gens or [ident], ident, mul)


def semidirect_cyclic(m: int, k: int, r: int):
    """C_m x| C_k where the generator of C_k acts by x -> r x (needs r^k = 1 mod m)."""
    assert pow(r, k, m) == 1 % m

    def mul(x, y):
        a, b = x
        c, d = y
        return ((a + pow(r, b, m) * c) % m, (b + d) % k)

    return table_from_rule([(1, 0), (0, 1)], (0, 0), mul)


def dihedral(m: int):
    """Dihedral group of order 2m."""
    return semidirect_cyclic(m, 2, m - 1)


def dicyclic(m: int):
    """Dicyclic group of order 4m: <a, x | a^(2m), x^2 = a^m, x a x^-1 = a^-1>."""
    n2 = 2 * m

    def mul(x, y):
        k1, s1 = x
        k2, s2 = y
        if s1 == 0:
            return ((k1 + k2) % n2, s2)
        if s2 == 0:
            return ((k1 - k2) % n2, 1)
        return ((k1 - k2 + m) % n2, 0)

    return table_from_rule([(1, 0), (0, 1)], (0, 0), mul)


def direct_product_tables(t1, t2):
    n2 = len(t2)
    n = len(t1) * n2
    return tuple(
        tuple(t1[i // n2][j // n2] * n2 + t2[i % n2][j % n2] for j in range(n))
        for i in range(n)
    )


def alternating4():
    # C2^2 x| C3, the 3-cycle permuting the three involutions
    def act(v, t):
        for _ in range(t):
            v = (v[1], (v[0] + v[1]) % 2)
        return v

    def mul(x, y):
        v, t = x
        w, s = y
        w2 = act(w, t)
        return (((v[0] + w2[0]) % 2, (v[1] + w2[1]) % 2), (t + s) % 3)

    return table_from_rule([((1, 0), 0), ((0, 0), 1)], ((0, 0), 0), mul)


def klein_by_c4():
    # (C2 x C2) x| C4, the generator of C4 swapping the two factors
    def mul(x, y):
        v, t = x
        w, s = y
        if t % 2:
            w = (w[1], w[0])
        return (((v[0] + w[0]) % 2, (v[1] + w[1]) % 2), (t + s) % 4)

    return table_from_rule([((1, 0), 0), ((0, 0), 1)], ((0, 0), 0), mul)


def pauli():
    # i^k X^a Z^b with ZX = -XZ; the central product C4 o D4
    def mul(x, y):
        k1, a1, b1 = x
        k2, a2, b2 = y
        return ((k1 + k2 + 2 * b1 * a2) % 4, a1 ^ a2, b1 ^ b2)

    return table_from_rule([(1, 0, 0), (0, 1, 0), (0, 0, 1)], (0, 0, 0), mul)


def _builders() -> dict[int, list[tuple[str, Callable]]]:
    c2 = cyclic(2)
    return {
        1: [("C1", lambda: cyclic(1))],
        2: [("C2", lambda: cyclic(2))],
        3: [("C3", lambda: cyclic(3))],
        4: [("C4", lambda: cyclic(4)), ("C2xC2", lambda: abelian([2, 2]))],
        5: [("C5", lambda: cyclic(5))],
        6: [("C6", lambda: cyclic(6)), ("S3", lambda: dihedral(3))],
        7: [("C7", lambda: cyclic(7))],
        8: [
            ("C8", lambda: cyclic(8)),
            ("C4xC2", lambda: abelian([4, 2])),
            ("C2xC2xC2", lambda: abelian([2, 2, 2])),
            ("D8", lambda: dihedral(4)),
            ("Q8", lambda: dicyclic(2)),
        ],
        9: [("C9", lambda: cyclic(9)), ("C3xC3", lambda: abelian([3, 3]))],
        10: [("C10", lambda: cyclic(10)), ("D10", lambda: dihedral(5))],
        11: [("C11", lambda: cyclic(11))],
        12: [
            ("C12", lambda: cyclic(12)),
            ("C6xC2", lambda: abelian([6, 2])),
            ("D12", lambda: dihedral(6)),
            ("A4", alternating4),
            ("Dic3", lambda: dicyclic(3)),
        ],
        13: [("C13", lambda: cyclic(13))],
        14: [("C14", lambda: cyclic(14)), ("D14", lambda: dihedral(7))],
        15: [("C15", lambda: cyclic(15))],
        16: [
            ("C16", lambda: cyclic(16)),
            ("C4xC4", lambda: abelian([4, 4])),
            ("C8xC2", lambda: abelian([8, 2])),
            ("C4xC2xC2", lambda: abelian([4, 2, 2])),
            ("C2^4", lambda: abelian([2, 2, 2, 2])),
            ("D16", lambda: dihedral(8)),
            ("Q16", lambda: dicyclic(4)),
            ("SD16", lambda: semidirect_cyclic(8, 2, 3)),
            ("M16", lambda: semidirect_cyclic(8, 2, 5)),
            ("C4:C4", lambda: semidirect_cyclic(4, 4, 3)),
            ("C2^2:C4", klein_by_c4),
            ("D8xC2", lambda: direct_product_tables(dihedral(4), c2)),
            ("Q8xC2", lambda: direct_product_tables(dicyclic(2), c2)),
            ("Pauli", pauli),
        ],
    }


MAX_CATALOG_ORDER = 16


@lru_cache(maxsize=None)
def groups_of_order(n: int) -> tuple[tuple[str, tuple], ...]:
    """(name, table) for each isomorphism type of group of order n."""
    builders = _builders()
    if n not in builders:
        raise ValueError(f"no group catalog for order {n} (max {MAX_CATALOG_ORDER})")
    return tuple((name, make()) for name, make in builders[n])


def identify(table) -> str | None:
    """Name of the catalog group isomorphic to ``table``."""
    from .groups import is_isomorphic_group

    n = len(table)
    if n > MAX_CATALOG_ORDER:
        return None
    for name, t in groups_of_order(n):
        if is_isomorphic_group(table, t):
            return name
    return None
