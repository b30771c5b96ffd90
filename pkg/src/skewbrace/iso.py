"""Backtracking isomorphism search for finite structures with several binary operations.

A structure is a list of Cayley tables over {0, ..., n-1} sharing the identity 0.
The search fixes a generating sequence of the source, records how every other
element is derived from earlier ones, and then only branches on the images of
the generators.  Candidate images are filtered by the per-operation element
orders, which are preserved by any isomorphism.
"""

from typing import Iterator, Sequence

from .groups import element_orders

Table = Sequence[Sequence[int]]


def _profiles(tables: list[Table]) -> list[tuple[int, ...]]:
    per_op = [element_orders(t) for t in tables]
    return list(zip(*per_op))


class _Plan:
    """Generating sequence plus derivation of every element from earlier ones."""

    def __init__(self, tables: list[Table], profile: list[tuple[int, ...]]):
        n = len(tables[0])
        order = sorted(range(1, n), key=lambda e: (-_weight(profile[e]), e))
        reached = [0]
        pos = {0: 0}
        deriv: list[tuple] = [("id",)]
        gens: list[int] = []
        level_end: list[int] = []
        for cand in order:
            if len(reached) == n:
                break
            if cand in pos:
                continue
            gens.append(cand)
            pos[cand] = len(reached)
            reached.append(cand)
            deriv.append(("gen", len(gens) - 1))
            done = pos[cand]
            while done < len(reached):
                k = done
                ek = reached[k]
                for j in range(k + 1):
                    ej = reached[j]
                    for op, t in enumerate(tables):
                        for a, b, ia, ib in ((ej, ek, j, k), (ek, ej, k, j)):
                            r = t[a][b]
                            if r not in pos:
                                pos[r] = len(reached)
                                reached.append(r)
                                deriv.append((op, ia, ib))
                done += 1
            level_end.append(len(reached))
        self.n = n
        self.reached = reached
        self.deriv = deriv
        self.gens = gens
        self.level_end = level_end


def _weight(p: tuple[int, ...]) -> int:
    w = 1
    for v in p:
        w *= v
    return w


def isomorphisms(src: list[Table], dst: list[Table], first_only: bool = False) -> Iterator[tuple[int, ...]]:
    """Yield every isomorphism src -> dst as a tuple ``perm`` with perm[x] = image."""
    n = len(src[0])
    if len(dst[0]) != n or len(src) != len(dst):
        return
    p1, p2 = _profiles(src), _profiles(dst)
    if sorted(p1) != sorted(p2):
        return
    if n == 1:
        yield (0,)
        return
    plan = _Plan(src, p1)
    by_profile: dict[tuple, list[int]] = {}
    for e in range(1, n):
        by_profile.setdefault(p2[e], []).append(e)

    reached, deriv = plan.reached, plan.deriv
    img = [-1] * n  # indexed by position in `reached`
    img[0] = 0
    used = [False] * n
    used[0] = True
    n_ops = len(src)

    def extend(level: int) -> list[int] | None:
        start = plan.level_end[level - 1] if level else 1
        stop = plan.level_end[level]
        assigned = []
        for idx in range(start + 1, stop):
            op, ia, ib = deriv[idx]
            v = dst[op][img[ia]][img[ib]]
            if used[v]:
                for k in assigned:
                    used[img[k]] = False
                    img[k] = -1
                return None
            img[idx] = v
            used[v] = True
            assigned.append(idx)
        # homomorphism check on the new block against everything reached so far
        pos_of = {reached[i]: i for i in range(stop)}
        for i in range(start, stop):
            x, ix = reached[i], img[i]
            for j in range(stop):
                y, iy = reached[j], img[j]
                for op in range(n_ops):
                    s, d = src[op], dst[op]
                    if img[pos_of[s[x][y]]] != d[ix][iy] or img[pos_of[s[y][x]]] != d[iy][ix]:
                        for k in assigned:
                            used[img[k]] = False
                            img[k] = -1
                        return None
        return assigned

    def search(level: int):
        if level == len(plan.gens):
            perm = [0] * n
            for i, e in enumerate(reached):
                perm[e] = img[i]
            yield tuple(perm)
            return
        gpos = plan.level_end[level - 1] if level else 1
        g = reached[gpos]
        for c in by_profile.get(p1[g], ()):
            if used[c]:
                continue
            img[gpos] = c
            used[c] = True
            assigned = extend(level)
            if assigned is not None:
                yield from search(level + 1)
                for k in assigned:
                    used[img[k]] = False
                    img[k] = -1
            used[c] = False
            img[gpos] = -1

    for perm in search(0):
        yield perm
        if first_only:
            return


def find_isomorphism(src: list[Table], dst: list[Table]) -> tuple[int, ...] | None:
    return next(isomorphisms(src, dst, first_only=True), None)


def verify_isomorphism(src: list[Table], dst: list[Table], perm: Sequence[int]) -> bool:
    n = len(src[0])
    if sorted(perm) != list(range(n)) or len(dst[0]) != n:
        return False
    for s, d in zip(src, dst):
        for x in range(n):
            px, row = perm[x], s[x]
            for y in range(n):
                if perm[row[y]] != d[px][perm[y]]:
                    return False
    return True
