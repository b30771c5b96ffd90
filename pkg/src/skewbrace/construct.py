"""Ways of building braces: trivial braces, bijective 1-cocycles, regular
subgroups of the holomorph, direct products, quotients and restrictions.

Enumeration works over a fixed additive group A from the small-group catalog.
A regular subgroup of Hol(A) = A x| Aut(A) is the same thing as a map
b -> λ_b in Aut(A) with λ_{a + λ_a(b)} = λ_a λ_b; the search assigns λ on the
smallest unassigned point, closes the generated pair group and backtracks on
any clash.  Each regular subgroup is reached along exactly one path.
"""

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import bits as Bits
from .core import FiniteBrace, validate_brace
from .errors import (
    ActionNotHomomorphism,
    CocycleIdentityFailure,
    DeltaNotBijective,
    NotAGroup,
    NotASubgroup,
    NotRegular,
    OrderTooLarge,
)
from .groups import automorphisms, check_group, relabel
from .iso import find_isomorphism, verify_isomorphism
from .smallgroups import MAX_CATALOG_ORDER, groups_of_order
from .substructure import require_ideal, require_subbrace

ENV_BOUND = "SKEWBRACE_MAX_ORDER"
DEFAULT_BOUND = 16
# the backtracking search branches over Aut(A); beyond this it does not finish
MAX_AUTOMORPHISMS = 2048


def trivial_brace(group_table, name: str | None = None) -> FiniteBrace:
    check_group(group_table, "group")
    return validate_brace(len(group_table), group_table, group_table, name)


@dataclass(frozen=True)
class CocycleSpec:
    """Data for a brace built from a bijective 1-cocycle δ: C -> (B,+).

    ``action[c][b]`` is λ_c(b) and ``delta[c]`` is δ(c).  ``labels`` optionally
    names the elements of B; ``actor_labels`` names the elements of C.
    """

    additive: tuple
    actor: tuple
    action: tuple
    delta: tuple
    labels: tuple[str, ...] | None = None
    actor_labels: tuple[str, ...] | None = None
    name: str | None = None

    @classmethod
    def from_complement(cls, additive, actor, action, complement: Iterable[tuple[int, int]], **kw):
        """Build from a complement D = {(δ(c), c)} of B in the semidirect product."""
        delta = [-1] * len(actor)
        for b, c in complement:
            if delta[c] != -1:
                raise DeltaNotBijective(f"actor element {c} appears twice in the complement")
            delta[c] = b
        if -1 in delta:
            raise DeltaNotBijective("complement misses some actor element")
        return cls(additive, actor, action, tuple(delta), **kw)

    def to_dict(self) -> dict:
        d = {
            "additive": [list(r) for r in self.additive],
            "actor": [list(r) for r in self.actor],
            "action": [list(r) for r in self.action],
            "delta": list(self.delta),
        }
        if self.name is not None:
            d["name"] = self.name
        if self.labels is not None:
            d["labels"] = list(self.labels)
        if self.actor_labels is not None:
            d["actor_labels"] = list(self.actor_labels)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CocycleSpec":
        def tt(t):
            return tuple(tuple(int(v) for v in row) for row in t)

        kw = dict(
            name=d.get("name"),
            labels=tuple(d["labels"]) if d.get("labels") else None,
            actor_labels=tuple(d["actor_labels"]) if d.get("actor_labels") else None,
        )
        if "delta" in d:
            return cls(tt(d["additive"]), tt(d["actor"]), tt(d["action"]), tuple(int(v) for v in d["delta"]), **kw)
        return cls.from_complement(
            tt(d["additive"]), tt(d["actor"]), tt(d["action"]), [tuple(p) for p in d["complement"]], **kw
        )


def from_cocycle(spec: CocycleSpec) -> FiniteBrace:
    add, act, lam, delta = spec.additive, spec.actor, spec.action, spec.delta
    check_group(add, "additive")
    check_group(act, "actor")
    n = len(add)
    if len(act) != n:
        raise DeltaNotBijective(f"|B| = {n} but |C| = {len(act)}")
    if len(lam) != n or any(len(r) != n for r in lam):
        raise ActionNotHomomorphism("action table must be |C| x |B|")
    for c in range(n):
        row = lam[c]
        if sorted(row) != list(range(n)):
            raise ActionNotHomomorphism(f"lambda_{c} is not a bijection")
        for x in range(n):
            for y in range(n):
                if row[add[x][y]] != add[row[x]][row[y]]:
                    raise ActionNotHomomorphism(f"lambda_{c} is not additive at ({x}, {y})")
    for c in range(n):
        for d in range(n):
            cd = act[c][d]
            for x in range(n):
                if lam[cd][x] != lam[c][lam[d][x]]:
                    raise ActionNotHomomorphism(f"lambda_({c}{d}) != lambda_{c} lambda_{d}")
    if sorted(delta) != list(range(n)):
        raise DeltaNotBijective("delta is not a bijection C -> B")
    for c in range(n):
        for d in range(n):
            if delta[act[c][d]] != add[delta[c]][lam[c][delta[d]]]:
                raise CocycleIdentityFailure((c, d))
    dinv = [0] * n
    for c, b in enumerate(delta):
        dinv[b] = c
    if delta[0] != 0:
        # δ(1) = 0 follows from the cocycle identity; 0 must index the identity of C
        raise CocycleIdentityFailure((0, 0))
    mul = [[delta[act[dinv[a]][dinv[b]]] for b in range(n)] for a in range(n)]
    B = validate_brace(n, add, mul, spec.name)
    for c in range(n):
        for d in range(n):
            if B.lam[delta[c]][delta[d]] != lam[c][delta[d]]:
                raise AssertionError("brace λ does not reproduce the input action")
    return B


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """p after q."""
    return tuple(p[x] for x in q)


def from_regular_subgroup(add_table, holomorph_subgroup: Iterable[tuple[Sequence[int], int]], name: str | None = None) -> FiniteBrace:
    """Brace from a regular subgroup of Hol(A), given as pairs (automorphism, element).

    The pair (φ, b) acts on A by x -> b + φ(x).
    """
    add = tuple(tuple(r) for r in add_table)
    check_group(add, "additive")
    n = len(add)
    pairs = {(tuple(phi), int(b)) for phi, b in holomorph_subgroup}
    for phi, b in pairs:
        if sorted(phi) != list(range(n)) or any(
            phi[add[x][y]] != add[phi[x]][phi[y]] for x in range(n) for y in range(n)
        ):
            raise NotASubgroup("a pair does not carry an automorphism of the additive group")
    for (phi, b) in pairs:
        for (psi, c) in pairs:
            if (_compose(phi, psi), add[b][phi[c]]) not in pairs:
                raise NotASubgroup("the pair set is not closed under composition")
    if (tuple(range(n)), 0) not in pairs:
        raise NotASubgroup("the pair set lacks the identity")
    lam: list = [None] * n
    for phi, b in pairs:
        if lam[b] is not None:
            raise NotRegular(f"two elements move 0 to {b}")
        lam[b] = phi
    if any(v is None for v in lam):
        raise NotRegular("the subgroup is not transitive")
    mul = [[add[a][lam[a][b]] for b in range(n)] for a in range(n)]
    return validate_brace(n, add, mul, name)


class _AutData:
    """Automorphisms of a group table with composition looked up by index."""

    def __init__(self, add):
        self.perms = automorphisms(add)
        self.index = {p: i for i, p in enumerate(self.perms)}
        self.n = len(add)
        self._comp: dict[tuple[int, int], int] = {}

    def comp(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._comp.get(key)
        if r is None:
            r = self.index[_compose(self.perms[i], self.perms[j])]
            self._comp[key] = r
        return r

    def inverse(self, i: int) -> int:
        p = self.perms[i]
        q = [0] * self.n
        for x, y in enumerate(p):
            q[y] = x
        return self.index[tuple(q)]


def regular_subgroups(add_table, auts: _AutData | None = None) -> list[tuple[int, ...]]:
    """All regular subgroups of Hol(A) as λ-maps (tuple of automorphism indices)."""
    add = tuple(tuple(r) for r in add_table)
    n = len(add)
    A = auts or _AutData(add)
    perms = A.perms
    results: list[tuple[int, ...]] = []
    lam = [-1] * n
    lam[0] = 0

    def close(group: list[tuple[int, int]], gens: list[tuple[int, int]]):
        """Extend ``group`` (a list of (point, aut)) by the last generator; None on clash."""
        changed = []
        members = list(group)
        frontier = list(group)
        while frontier:
            nxt = []
            for p, f in frontier:
                row = add[p]
                pf = perms[f]
                for q, g in gens:
                    r = row[pf[q]]
                    h = A.comp(f, g)
                    cur = lam[r]
                    if cur == -1:
                        lam[r] = h
                        changed.append(r)
                        members.append((r, h))
                        nxt.append((r, h))
                    elif cur != h:
                        for c in changed:
                            lam[c] = -1
                        return None, None
            frontier = nxt
        return members, changed

    def search(group, gens):
        if len(group) == n:
            results.append(tuple(lam))
            return
        x = lam.index(-1)
        for f in range(len(perms)):
            pf = perms[f]
            # (x, f) times any old element must land on a fresh point
            ok = True
            for p, g in group:
                if lam[add[x][pf[p]]] != -1 or lam[add[p][perms[g][x]]] != -1:
                    ok = False
                    break
            if not ok:
                continue
            lam[x] = f
            new_gens = gens + [(x, f)]
            members, changed = close(group + [(x, f)], new_gens)
            if members is not None:
                search(members, new_gens)
                for c in changed:
                    lam[c] = -1
            lam[x] = -1

    search([(0, 0)], [])
    return results


def _canonical_key(lmap: tuple[int, ...], A: _AutData, conj: list[list[int]], add) -> tuple:
    n = len(lmap)
    best = None
    for psi, perm in enumerate(A.perms):
        # λ'_{ψ(a)} = ψ λ_a ψ^-1
        key = [0] * n
        for a in range(n):
            key[perm[a]] = conj[psi][lmap[a]]
        key = tuple(key)
        if best is None or key < best:
            best = key
    return best


def _conjugation_table(A: _AutData) -> list[list[int]]:
    m = len(A.perms)
    table = []
    for psi in range(m):
        pinv = A.inverse(psi)
        table.append([A.comp(A.comp(psi, f), pinv) for f in range(m)])
    return table


def enumeration_bound() -> int:
    raw = os.environ.get(ENV_BOUND)
    if raw is None:
        return DEFAULT_BOUND
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_BOUND


def braces_with_additive_group(add_table, up_to_iso: bool = True, group_name: str = "") -> list[FiniteBrace]:
    add = tuple(tuple(r) for r in add_table)
    n = len(add)
    A = _AutData(add)
    if len(A.perms) > MAX_AUTOMORPHISMS:
        raise OrderTooLarge(
            f"additive group {group_name or n} has {len(A.perms)} automorphisms; "
            f"the holomorph search is limited to {MAX_AUTOMORPHISMS}"
        )
    lmaps = regular_subgroups(add, A)
    if up_to_iso:
        conj = _conjugation_table(A)
        keys = sorted({_canonical_key(lm, A, conj, add) for lm in lmaps})
        lmaps = keys
    out = []
    for k, lm in enumerate(lmaps):
        mul = [[add[a][A.perms[lm[a]][b]] for b in range(n)] for a in range(n)]
        label = f"{group_name}#{k}" if group_name else None
        out.append(validate_brace(n, add, mul, label))
    return out


_ENUM_CACHE: dict[tuple[int, bool], tuple[FiniteBrace, ...]] = {}


def enumerate_braces(n: int, up_to_iso: bool = True) -> list[FiniteBrace]:
    """All braces of order n (one per isomorphism class when ``up_to_iso``).

    Results are cached per process; the list order is deterministic: catalog
    order of the additive group, then canonical key.
    """
    bound = min(enumeration_bound(), MAX_CATALOG_ORDER)
    if n < 1 or n > bound:
        raise OrderTooLarge(f"order {n} exceeds the enumeration bound {bound} (set {ENV_BOUND})")
    key = (n, up_to_iso)
    if key not in _ENUM_CACHE:
        out: list[FiniteBrace] = []
        for gname, table in groups_of_order(n):
            out.extend(braces_with_additive_group(table, up_to_iso, f"{n}:{gname}"))
        _ENUM_CACHE[key] = tuple(out)
    return list(_ENUM_CACHE[key])


def direct_product(B1: FiniteBrace, B2: FiniteBrace, name: str | None = None) -> FiniteBrace:
    n1, n2 = B1.order, B2.order
    n = n1 * n2

    def prod(t1, t2):
        return [
            [t1[i // n2][j // n2] * n2 + t2[i % n2][j % n2] for j in range(n)]
            for i in range(n)
        ]

    label = name or (f"{B1.name}x{B2.name}" if B1.name and B2.name else None)
    return validate_brace(n, prod(B1.add, B2.add), prod(B1.mul, B2.mul), label)


def quotient(B: FiniteBrace, ideal) -> tuple[FiniteBrace, tuple[int, ...]]:
    """B/I with cosets labelled in increasing order of their smallest element."""
    ib = require_ideal(B, ideal)
    return _quotient_bits(B, ib)


def _quotient_bits(B: FiniteBrace, ib: int) -> tuple[FiniteBrace, tuple[int, ...]]:
    def compute():
        n = B.order
        members = Bits.members(ib)
        proj = [-1] * n
        reps = []
        for b in range(n):
            if proj[b] == -1:
                k = len(reps)
                reps.append(b)
                for i in members:
                    proj[B.add[b][i]] = k
        m = len(reps)
        add = [[proj[B.add[reps[x]][reps[y]]] for y in range(m)] for x in range(m)]
        mul = [[proj[B.mul[reps[x]][reps[y]]] for y in range(m)] for x in range(m)]
        Q = validate_brace(m, add, mul, f"{B.name}/I" if B.name else None)
        return Q, tuple(proj)

    return B.memo(("quotient", ib), compute)


def restrict(B: FiniteBrace, s, name: str | None = None) -> tuple[FiniteBrace, tuple[int, ...]]:
    """The subbrace s as a standalone brace, plus its embedding (new index -> old)."""
    sb = require_subbrace(B, s)

    def compute():
        els = Bits.members(sb)
        pos = {e: k for k, e in enumerate(els)}
        m = len(els)
        add = [[pos[B.add[els[x]][els[y]]] for y in range(m)] for x in range(m)]
        mul = [[pos[B.mul[els[x]][els[y]]] for y in range(m)] for x in range(m)]
        return validate_brace(m, add, mul, name), tuple(els)

    return B.memo(("restrict", sb), compute)


def relabel_brace(B: FiniteBrace, perm: Sequence[int], name: str | None = None) -> FiniteBrace:
    """Transport B along ``perm`` (old -> new); perm must fix 0."""
    if perm[0] != 0:
        raise ValueError("relabelling must fix the identity 0")
    return validate_brace(B.order, relabel(B.add, perm), relabel(B.mul, perm), name or B.name)


@dataclass(frozen=True)
class IsoCertificate:
    isomorphic: bool
    forward: tuple[int, ...] | None = field(default=None)

    def to_dict(self) -> dict:
        return {"isomorphic": self.isomorphic, "forward": list(self.forward) if self.forward else None}


def is_isomorphic(B1: FiniteBrace, B2: FiniteBrace) -> IsoCertificate:
    if B1.order != B2.order:
        return IsoCertificate(False)
    src, dst = [B1.add, B1.mul], [B2.add, B2.mul]
    perm = find_isomorphism(src, dst)
    if perm is None:
        return IsoCertificate(False)
    if not verify_isomorphism(src, dst, perm):
        raise AssertionError("isomorphism search returned a map that fails verification")
    return IsoCertificate(True, perm)


def canonical_form(B: FiniteBrace) -> FiniteBrace:
    """Canonical representative for braces whose additive group is in the catalog.

    The additive group is transported onto the catalog table and λ is replaced by
    the least member of its Aut(+)-conjugacy orbit, so isomorphic inputs give
    identical tables.
    """
    n = B.order
    if n > MAX_CATALOG_ORDER:
        raise OrderTooLarge(f"canonical form needs the group catalog (order <= {MAX_CATALOG_ORDER})")
    for gname, table in groups_of_order(n):
        perm = find_isomorphism([B.add], [table])
        if perm is None:
            continue
        A = _AutData(table)
        lmap = [0] * n
        for a in range(n):
            # λ on the catalog copy: perm λ_a perm^-1
            img = [0] * n
            for x in range(n):
                img[perm[x]] = perm[B.lam[a][x]]
            lmap[perm[a]] = A.index[tuple(img)]
        key = _canonical_key(tuple(lmap), A, _conjugation_table(A), table)
        mul = [[table[a][A.perms[key[a]][b]] for b in range(n)] for a in range(n)]
        return validate_brace(n, table, mul, B.name)
    raise NotAGroup("add", (), "additive group not found in the catalog")
