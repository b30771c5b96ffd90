"""Finite left skew braces stored as a pair of Cayley tables.

Elements are the integers 0..n-1 and 0 is the identity of both groups.  A
:class:`FiniteBrace` is only ever produced by :func:`validate_brace`, which
checks every axiom by exhaustion, so downstream code can trust the tables.
"""

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import (
    BraceError,
    DistributivityFailure,
    IdentityMismatch,
    IndexOutOfRange,
    NotAGroup,
)
from .groups import as_tuple_table, check_group, find_identity, inverses

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class FiniteBrace:
    order: int
    add: Table
    mul: Table
    neg: tuple[int, ...]
    inv: tuple[int, ...]
    lam: Table
    name: str | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteBrace{label} order={self.order}>"

    # numpy views, built once and shared
    @property
    def np_add(self) -> np.ndarray:
        return self._array("add")

    @property
    def np_mul(self) -> np.ndarray:
        return self._array("mul")

    @property
    def np_neg(self) -> np.ndarray:
        return self._array("neg")

    @property
    def np_inv(self) -> np.ndarray:
        return self._array("inv")

    def _array(self, key: str) -> np.ndarray:
        ck = "np_" + key
        if ck not in self._cache:
            arr = np.asarray(getattr(self, key), dtype=np.int64)
            arr.setflags(write=False)
            self._cache[ck] = arr
        return self._cache[ck]

    def memo(self, key, compute):
        """Per-brace cache for derived data such as substructure lattices."""
        try:
            return self._cache[key]
        except KeyError:
            value = compute()
            self._cache[key] = value
            return value

    # element arithmetic
    def sub(self, a: int, b: int) -> int:
        """a - b."""
        return self.add[a][self.neg[b]]

    def star(self, a: int, b: int) -> int:
        return self.add[self.lam[a][b]][self.neg[b]]

    @property
    def is_trivial(self) -> bool:
        return self.add == self.mul

    @property
    def is_abelian_type(self) -> bool:
        a = self.np_add
        return bool(np.array_equal(a, a.T))

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {}
        if self.name is not None:
            d["name"] = self.name
        d["order"] = self.order
        d["add"] = [list(r) for r in self.add]
        d["mul"] = [list(r) for r in self.mul]
        return d


def _relabel_to_zero(add, mul, e: int):
    """Swap element e with 0 in both tables."""
    n = len(add)
    perm = list(range(n))
    perm[0], perm[e] = e, 0

    def tr(t):
        return tuple(tuple(perm[t[perm[i]][perm[j]]] for j in range(n)) for i in range(n))

    return tr(add), tr(mul)


def validate_brace(order: int, add_table, mul_table, name: str | None = None) -> FiniteBrace:
    """Check every brace axiom by exhaustion and return the validated brace.

    If both tables share an identity element other than 0, the element set is
    relabelled by swapping that element with 0.
    """
    n = int(order)
    if n < 1:
        raise BraceError("order must be positive")
    for label, t in (("add", add_table), ("mul", mul_table)):
        if len(t) != n or any(len(row) != n for row in t):
            raise NotAGroup(label, (), f"expected a {n}x{n} table")
        for i, row in enumerate(t):
            for j, v in enumerate(row):
                if not (isinstance(v, (int, np.integer)) and 0 <= v < n):
                    raise IndexOutOfRange(f"{label}[{i}][{j}] = {v!r} is not in range(0, {n})")
    add = as_tuple_table(add_table)
    mul = as_tuple_table(mul_table)
    ea, em = find_identity(add), find_identity(mul)
    if ea is None:
        raise NotAGroup("add", (), "no identity element")
    if em is None:
        raise NotAGroup("mul", (), "no identity element")
    if ea != em:
        raise IdentityMismatch(f"additive identity {ea} differs from multiplicative identity {em}")
    if ea != 0:
        add, mul = _relabel_to_zero(add, mul, ea)
    A = check_group(add, "add")
    M = check_group(mul, "mul")
    neg = inverses(add)
    inv = inverses(mul)
    N = np.asarray(neg)
    # a(b+c) == ab - a + ac
    lhs = M[:, A]                                   # [a, b, c] -> a(b + c)
    ab_minus_a = A[M, N[:, None]]                   # [a, b] -> ab - a
    rhs = A[ab_minus_a[:, :, None], M[:, None, :]]  # [a, b, c] -> ab - a + ac
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        raise DistributivityFailure(tuple(int(v) for v in bad[0]))
    lam = A[N[:, None], M]  # -a + ab
    brace = FiniteBrace(
        order=n,
        add=add,
        mul=mul,
        neg=neg,
        inv=inv,
        lam=as_tuple_table(lam),
        name=name,
    )
    _check_lambda(brace, lam, A, M)
    return brace


def _check_lambda(brace: FiniteBrace, lam: np.ndarray, A: np.ndarray, M: np.ndarray) -> None:
    # Distributivity already forces these; they are re-checked because the
    # invariants are part of the contract and cheap at this scale.
    n = brace.order
    ar = np.arange(n)
    if not np.array_equal(np.sort(lam, axis=1), np.broadcast_to(ar, (n, n))) or not (lam[:, 0] == 0).all():
        raise BraceError("some lambda_a is not a permutation fixing 0")
    hom = lam[:, A] == A[lam[:, :, None], lam[:, None, :]]
    if not hom.all():
        a, b, c = (int(v) for v in np.argwhere(~hom)[0])
        raise BraceError(f"lambda_{a} is not additive on ({b}, {c})")
    comp = lam[M] == lam[ar[:, None, None], lam[None, :, :]]  # lam[ab][c] vs lam[a][lam[b][c]]
    if not comp.all():
        a, b, c = (int(v) for v in np.argwhere(~comp)[0])
        raise BraceError(f"lambda_(ab) != lambda_a lambda_b at (a, b, c) = ({a}, {b}, {c})")


def _check_index(B: FiniteBrace, *xs: int) -> None:
    for x in xs:
        if not (0 <= x < B.order):
            raise IndexOutOfRange(f"element {x} outside 0..{B.order - 1}")


def star(B: FiniteBrace, a: int, b: int) -> int:
    """a * b = -a + ab - b."""
    _check_index(B, a, b)
    return B.add[B.add[B.neg[a]][B.mul[a][b]]][B.neg[b]]


def lambda_(B: FiniteBrace, a: int, b: int) -> int:
    _check_index(B, a, b)
    return B.lam[a][b]


@dataclass(frozen=True)
class AuditReport:
    passed: bool
    triples_checked: int
    failures: dict[str, tuple[int, int, int]]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "triples_checked": self.triples_checked,
            "failures": {k: list(v) for k, v in self.failures.items()},
        }


def star_table(add, mul, neg) -> np.ndarray:
    A, M, N = (np.asarray(x) for x in (add, mul, neg))
    return A[A[N[:, None], M], N[None, :]]


def identity_audit(B: FiniteBrace) -> AuditReport:
    """Exhaustively check the three star-product identities on all triples.

    (ab)*c = a*(b*c) + b*c + a*c,  ab = a + a*b + b,  a*(b+c) = a*b + b + a*c - b.
    """
    return audit_tables(B.add, B.mul)


def audit_tables(add, mul) -> AuditReport:
    """Identity audit on raw tables (usable on corrupted data that would not validate)."""
    A = np.asarray(add)
    M = np.asarray(mul)
    n = len(A)
    N = np.asarray(inverses(add))
    S = star_table(A, M, N)
    failures = {}
    # (ab)*c == a*(b*c) + b*c + a*c
    lhs1 = S[M][:, :, :]                          # [a,b,c] -> (ab)*c
    bc = S[None, :, :]                            # b*c
    a_bc = S[np.arange(n)[:, None, None], S[None, :, :]]
    rhs1 = A[A[a_bc, np.broadcast_to(bc, (n, n, n))], np.broadcast_to(S[:, None, :], (n, n, n))]
    _first(failures, "eq1", lhs1 != rhs1)
    # ab == a + a*b + b, reported with c = 0
    rhs2 = A[A[np.arange(n)[:, None], S], np.arange(n)[None, :]]
    bad2 = M != rhs2
    if bad2.any():
        a, b = (int(v) for v in np.argwhere(bad2)[0])
        failures["eq2"] = (a, b, 0)
    # a*(b+c) == a*b + b + a*c - b
    lhs3 = S[np.arange(n)[:, None, None], A[None, :, :]]
    t = A[S[:, :, None], np.arange(n)[None, :, None]]       # a*b + b
    t = A[t, S[:, None, :]]                                 # + a*c
    rhs3 = A[t, N[None, :, None]]                           # - b
    _first(failures, "eq3", lhs3 != rhs3)
    return AuditReport(not failures, n ** 3, failures)


def _first(failures: dict, key: str, mask: np.ndarray) -> None:
    if mask.any():
        failures[key] = tuple(int(v) for v in np.argwhere(mask)[0])


# JSON I/O

def brace_from_dict(d: dict) -> FiniteBrace:
    if not isinstance(d, dict) or "add" not in d or "mul" not in d:
        raise ValueError("brace JSON needs 'add' and 'mul' tables")
    order = d.get("order", len(d["add"]))
    return validate_brace(order, d["add"], d["mul"], d.get("name"))


def load_brace(path) -> FiniteBrace:
    with open(path) as fh:
        return brace_from_dict(json.load(fh))


def dump_brace(B: FiniteBrace) -> str:
    return json.dumps(B.to_dict(), separators=(",", ":"))


def zero_brace() -> FiniteBrace:
    return validate_brace(1, [[0]], [[0]], "zero")
