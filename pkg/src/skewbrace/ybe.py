"""Set-theoretic solutions of the Yang-Baxter equation attached to braces."""

from dataclasses import dataclass

import numpy as np

from .core import FiniteBrace


@dataclass(frozen=True, eq=False)
class YBESolution:
    """r(a, b) = (first[a][b], second[a][b]) on {0, ..., n-1}."""

    order: int
    first: np.ndarray
    second: np.ndarray

    @classmethod
    def from_tables(cls, first, second) -> "YBESolution":
        f = np.asarray(first, dtype=np.int64)
        s = np.asarray(second, dtype=np.int64)
        n = f.shape[0]
        if f.shape != (n, n) or s.shape != (n, n):
            raise ValueError("solution tables must both be n x n")
        if n and (f.min() < 0 or f.max() >= n or s.min() < 0 or s.max() >= n):
            raise ValueError("solution table entry out of range")
        return cls(n, f, s)

    def __call__(self, a: int, b: int) -> tuple[int, int]:
        return int(self.first[a, b]), int(self.second[a, b])

    @property
    def nondegenerate_left(self) -> bool:
        """Every map b -> first[a][b] is a bijection."""
        return _rows_are_perms(self.first)

    @property
    def nondegenerate_right(self) -> bool:
        """Every map a -> second[a][b] is a bijection."""
        return _rows_are_perms(self.second.T)

    @property
    def nondegenerate(self) -> bool:
        return self.nondegenerate_left and self.nondegenerate_right

    @property
    def braid(self) -> bool:
        return check_braid(self)[0]

    def to_dict(self) -> dict:
        ok, witness = check_braid(self)
        return {
            "order": self.order,
            "first": self.first.tolist(),
            "second": self.second.tolist(),
            "braid": ok,
            "braid_witness": witness,
            "nondegenerate_left": self.nondegenerate_left,
            "nondegenerate_right": self.nondegenerate_right,
        }


def _rows_are_perms(t: np.ndarray) -> bool:
    n = t.shape[0]
    return bool((np.sort(t, axis=1) == np.arange(n)[None, :]).all())


def solution_from_brace(B: FiniteBrace) -> YBESolution:
    """r(a, b) = (λ_a(b), λ_a(b)^-1 a b)."""
    lam = np.asarray(B.lam, dtype=np.int64)
    M, I = B.np_mul, B.np_inv
    n = B.order
    a = np.repeat(np.arange(n), n).reshape(n, n)
    b = np.tile(np.arange(n), n).reshape(n, n)
    second = M[I[lam], M[a, b]]
    return YBESolution(n, lam.copy(), second)


def flip(n: int) -> YBESolution:
    a = np.repeat(np.arange(n), n).reshape(n, n)
    return YBESolution(n, a.T.copy(), a.copy())


def check_braid(sol: YBESolution) -> tuple[bool, tuple[int, int, int] | None]:
    """Exhaustive test of r12 r23 r12 = r23 r12 r23; returns the
    lexicographically first failing triple (a, b, c) when it fails."""
    n = sol.order
    if n == 0:
        return True, None
    F, S = sol.first, sol.second
    a, b, c = (g.ravel() for g in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij"))

    def r12(x, y, z):
        return F[x, y], S[x, y], z

    def r23(x, y, z):
        return x, F[y, z], S[y, z]

    left = r12(*r23(*r12(a, b, c)))
    right = r23(*r12(*r23(a, b, c)))
    bad = (left[0] != right[0]) | (left[1] != right[1]) | (left[2] != right[2])
    if not bad.any():
        return True, None
    k = int(np.flatnonzero(bad)[0])
    return False, (int(a[k]), int(b[k]), int(c[k]))
