"""Commutators of ideals and the absorbing-polynomial witness.

The commutator [I,J] of two ideals is computed along two independent routes:

* the ideal generated by the raw set [I,J]_+ u [I,J]_. u {ij - (i+j)},
* the ideal generated by the additive subgroup I*J + J*I + [I,J]_+.

They always agree; :func:`commutator_ideal` asserts it.  Random absorbing
2-variable words give a stochastic lower bound: every value p(i, j) must land
inside the commutator.
"""

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import bits as Bits
from .core import FiniteBrace
from .groups import closure
from .substructure import (
    SubSet,
    as_bits,
    classify,
    ideal_closure_bits,
    require_ideal,
)


def _pairs(x: int, y: int):
    ys = Bits.members(y)
    for a in Bits.members(x):
        for b in ys:
            yield a, b


def star_span_bits(B: FiniteBrace, x: int, y: int) -> int:
    gens = {B.star(a, b) for a, b in _pairs(x, y)}
    return closure(B.add, sorted(gens))


def star_span(B: FiniteBrace, X, Y) -> SubSet:
    """Additive subgroup generated by {x*y : x in X, y in Y}."""
    return classify(B, star_span_bits(B, as_bits(X), as_bits(Y)))


def commutator_span_bits(B: FiniteBrace, x: int, y: int, op: str = "add") -> int:
    if op == "add":
        t, inv = B.add, B.neg
    elif op == "mul":
        t, inv = B.mul, B.inv
    else:
        raise ValueError("op must be 'add' or 'mul'")
    gens = {t[t[t[inv[a]][inv[b]]][a]][b] for a, b in _pairs(x, y)}
    return closure(t, sorted(gens))


def additive_commutator_span(B: FiniteBrace, X, Y, op: str = "add") -> SubSet:
    """Subgroup generated by the group commutators -x-y+x+y (or x^-1 y^-1 x y when op='mul')."""
    return classify(B, commutator_span_bits(B, as_bits(X), as_bits(Y), op))


def raw_generators_bits(B: FiniteBrace, i: int, j: int) -> int:
    """X_{I,J} = [I,J]_+ u [I,J]_. u {ij - (i+j)} as a plain element set."""
    add, mul, neg, inv = B.add, B.mul, B.neg, B.inv
    out = 0
    for a, b in _pairs(i, j):
        out |= 1 << add[add[add[neg[a]][neg[b]]][a]][b]
        out |= 1 << mul[mul[mul[inv[a]][inv[b]]][a]][b]
        out |= 1 << add[mul[a][b]][neg[add[a][b]]]
    return out


def star_sum_bits(B: FiniteBrace, i: int, j: int) -> int:
    """I*J + J*I + [I,J]_+ (sum of additive subgroups, no ideal closure)."""
    gens = star_span_bits(B, i, j) | star_span_bits(B, j, i) | commutator_span_bits(B, i, j, "add")
    return closure(B.add, Bits.members(gens))


@dataclass(frozen=True)
class CommutatorRoutes:
    via_generators: int
    via_star_sum: int

    @property
    def agree(self) -> bool:
        return self.via_generators == self.via_star_sum


def commutator_routes(B: FiniteBrace, i, j) -> CommutatorRoutes:
    ib, jb = as_bits(i), as_bits(j)
    return CommutatorRoutes(
        ideal_closure_bits(B, raw_generators_bits(B, ib, jb)),
        ideal_closure_bits(B, star_sum_bits(B, ib, jb)),
    )


def commutator_bits(B: FiniteBrace, i: int, j: int) -> int:
    """[I,J] for ideals given as bitsets, cached on the brace."""
    key = ("commutator", min(i, j), max(i, j))

    def compute():
        r = commutator_routes(B, i, j)
        if not r.agree:
            raise AssertionError(
                f"commutator routes disagree: {Bits.members(r.via_generators)} vs {Bits.members(r.via_star_sum)}"
            )
        return r.via_generators

    return B.memo(key, compute)


def commutator_ideal(B: FiniteBrace, I, J) -> SubSet:
    ib, jb = require_ideal(B, I), require_ideal(B, J)
    return classify(B, commutator_bits(B, ib, jb))


@dataclass(frozen=True)
class StarSumVerdict:
    is_ideal: bool
    plain_sum: int
    witness: int | None

    def to_dict(self) -> dict:
        return {
            "is_ideal": self.is_ideal,
            "plain_sum": Bits.members(self.plain_sum),
            "witness": self.witness,
        }


def star_sum_is_ideal(B: FiniteBrace, I, J) -> StarSumVerdict:
    """Is I*J + J*I + [I,J]_+ already an ideal?  If not, name an element of
    its ideal closure that it misses."""
    ib, jb = require_ideal(B, I), require_ideal(B, J)
    s = star_sum_bits(B, ib, jb)
    if classify(B, s).is_ideal:
        return StarSumVerdict(True, s, None)
    missing = ideal_closure_bits(B, s) & ~s
    return StarSumVerdict(False, s, Bits.members(missing)[0])


# absorbing words

TOKENS = ("x", "y", "neg", "inv", "add", "mul")
_ARITY = {"x": 0, "y": 0, "neg": 1, "inv": 1, "add": 2, "mul": 2}
_ZERO_X = ("x", "x", "neg", "add")
_ZERO_Y = ("y", "y", "neg", "add")


@dataclass(frozen=True)
class PolynomialWord:
    """A 2-variable word in postfix form over x, y, neg, inv, add, mul."""

    tokens: tuple[str, ...]
    absorbing: bool = field(default=False, compare=False)

    def __post_init__(self):
        depth = 0
        for t in self.tokens:
            if t not in _ARITY:
                raise ValueError(f"unknown token {t!r}")
            a = _ARITY[t]
            if depth < a:
                raise ValueError("word underflows its stack")
            depth += 1 - a
        if depth != 1:
            raise ValueError("word must leave exactly one value")

    def __len__(self) -> int:
        return len(self.tokens)

    def evaluate(self, B: FiniteBrace, xs, ys) -> np.ndarray:
        A, M, N, I = B.np_add, B.np_mul, B.np_neg, B.np_inv
        xs = np.asarray(xs)
        ys = np.asarray(ys)
        stack: list[np.ndarray] = []
        for t in self.tokens:
            if t == "x":
                stack.append(xs)
            elif t == "y":
                stack.append(ys)
            elif t == "neg":
                stack.append(N[stack.pop()])
            elif t == "inv":
                stack.append(I[stack.pop()])
            else:
                b = stack.pop()
                a = stack.pop()
                stack.append(A[a, b] if t == "add" else M[a, b])
        return stack[0]

    def __call__(self, B: FiniteBrace, x: int, y: int) -> int:
        return int(self.evaluate(B, np.array([x]), np.array([y]))[0])

    def is_absorbing_on(self, B: FiniteBrace) -> bool:
        """Exhaustive test of p(x, 0) = 0 and p(0, y) = 0."""
        n = B.order
        ar = np.arange(n)
        z = np.zeros(n, dtype=np.int64)
        return not self.evaluate(B, ar, z).any() and not self.evaluate(B, z, ar).any()

    def substitute(self, x: Sequence[str] | None = None, y: Sequence[str] | None = None) -> "PolynomialWord":
        out: list[str] = []
        for t in self.tokens:
            if t == "x" and x is not None:
                out.extend(x)
            elif t == "y" and y is not None:
                out.extend(y)
            else:
                out.append(t)
        return PolynomialWord(tuple(out))

    def infix(self) -> str:
        stack: list[str] = []
        for t in self.tokens:
            if t in ("x", "y"):
                stack.append(t)
            elif t == "neg":
                stack.append(f"-({stack.pop()})")
            elif t == "inv":
                stack.append(f"({stack.pop()})^-1")
            else:
                b, a = stack.pop(), stack.pop()
                stack.append(f"({a} + {b})" if t == "add" else f"({a} . {b})")
        return stack[0]


def _word(s: str) -> PolynomialWord:
    return PolynomialWord(tuple(s.split()), absorbing=True)


# [x,y]_+ = -x - y + x + y,  [x,y]_. = x^-1 y^-1 x y,  xy - (x + y)
P1 = _word("x neg y neg add x add y add")
P2 = _word("x inv y inv mul x mul y mul")
P3 = _word("x y mul x y add neg add")
CANONICAL_WORDS = (P1, P2, P3)


def random_word(rng: np.random.Generator, max_len: int = 24) -> PolynomialWord:
    """Uniformly chosen length, then tokens drawn uniformly among those that
    can still complete to a single value."""
    length = int(rng.integers(1, max_len + 1))
    tokens: list[str] = []
    depth = 0
    for k in range(length):
        left = length - k - 1
        allowed = []
        if (depth + 1) - left <= 1:
            allowed += ["x", "y"]
        if depth >= 1 and depth - left <= 1:
            allowed += ["neg", "inv"]
        if depth >= 2:
            allowed += ["add", "mul"]
        t = allowed[int(rng.integers(len(allowed)))]
        tokens.append(t)
        depth += 1 - _ARITY[t]
    return PolynomialWord(tuple(tokens))


def absorbing_completion(w: PolynomialWord) -> PolynomialWord:
    """w(x,y) - w(x,0) + w(0,0) - w(0,y), absorbing for every brace."""
    wx0 = w.substitute(y=_ZERO_X)
    w00 = w.substitute(x=_ZERO_X, y=_ZERO_X)
    w0y = w.substitute(x=_ZERO_Y)
    toks = w.tokens + wx0.tokens + ("neg", "add") + w00.tokens + ("add",) + w0y.tokens + ("neg", "add")
    return PolynomialWord(toks)


@dataclass
class SamplerStats:
    requested: int
    candidates: int = 0
    raw_candidates: int = 0
    raw_absorbing: int = 0
    completions: int = 0
    accepted: int = 0

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def sample_absorbing_words(
    B: FiniteBrace, count: int, seed: int, max_len: int = 24
) -> tuple[list[PolynomialWord], SamplerStats]:
    """``count`` words verified absorbing on B, drawn from a seeded stream.

    Candidates alternate between raw random words (kept only when absorbing on
    B) and absorbing completions of random words; both are checked
    exhaustively before acceptance.
    """
    key = ("absorbing_words", count, seed, max_len)

    def compute():
        rng = np.random.default_rng(seed)
        stats = SamplerStats(requested=count)
        words: list[PolynomialWord] = []
        n = B.order
        ar = np.arange(n)
        z = np.zeros(n, dtype=np.int64)
        xs = np.concatenate([ar, z])
        ys = np.concatenate([z, ar])
        while len(words) < count:
            stats.candidates += 1
            base = random_word(rng, max_len)
            if stats.candidates % 2:
                stats.raw_candidates += 1
                cand = base
            else:
                stats.completions += 1
                cand = absorbing_completion(base)
            if cand.evaluate(B, xs, ys).any():
                continue
            if cand is base:
                stats.raw_absorbing += 1
            words.append(PolynomialWord(cand.tokens, absorbing=True))
        stats.accepted = len(words)
        return words, stats

    return B.memo(key, compute)


def _grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    ar = np.arange(n)
    return np.repeat(ar, n), np.tile(ar, n)


def word_value_grid(B: FiniteBrace, w: PolynomialWord) -> np.ndarray:
    """n x n array of p(x, y)."""
    xs, ys = _grid(B.order)
    return w.evaluate(B, xs, ys).reshape(B.order, B.order)


@dataclass
class AbsorbingSample:
    values: int
    stats: SamplerStats
    canonical_values: int

    def to_dict(self) -> dict:
        return {
            "values": Bits.members(self.values),
            "canonical_values": Bits.members(self.canonical_values),
            "stats": self.stats.to_dict(),
        }


def _values_on(B: FiniteBrace, w: PolynomialWord, i: int, j: int) -> int:
    ii, jj = Bits.members(i), Bits.members(j)
    xs = np.repeat(np.array(ii), len(jj))
    ys = np.tile(np.array(jj), len(ii))
    return Bits.from_elements(np.unique(w.evaluate(B, xs, ys)).tolist())


def sample_absorbing_values(B: FiniteBrace, I, J, samples: int = 1000, seed: int = 0) -> AbsorbingSample:
    """Union of p(i, j) over sampled absorbing words p and all (i, j) in I x J.

    The three canonical words p1, p2, p3 are always included.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    ib, jb = require_ideal(B, I), require_ideal(B, J)
    words, stats = sample_absorbing_words(B, samples, seed)
    canon = 0
    for w in CANONICAL_WORDS:
        canon |= _values_on(B, w, ib, jb)
    values = canon
    for w in words:
        values |= _values_on(B, w, ib, jb)
    return AbsorbingSample(values, stats, canon)


@dataclass
class AbsorbingAudit:
    words: int
    pairs: int
    escapes: list = field(default_factory=list)
    nonzero_words: int = 0
    stats: SamplerStats | None = None

    @property
    def passed(self) -> bool:
        return not self.escapes

    def to_dict(self) -> dict:
        return {
            "words": self.words,
            "ideal_pairs": self.pairs,
            "escapes": self.escapes[:10],
            "escape_count": len(self.escapes),
            "nonzero_words": self.nonzero_words,
            "sampler": self.stats.to_dict() if self.stats else None,
        }


def absorbing_audit(
    B: FiniteBrace, ideals: Iterable[int], samples: int, seed: int
) -> AbsorbingAudit:
    """Evaluate sampled absorbing words on all of B x B once and check that
    every value at (i, j) lies in [I, J] for every pair of the given ideals."""
    ideals = list(ideals)
    n = B.order
    pairs = []
    for a, ib in enumerate(ideals):
        for jb in ideals[a:]:
            mask = np.zeros((n, n), dtype=bool)
            mask[np.ix_(Bits.members(ib), Bits.members(jb))] = True
            comm = np.zeros(n, dtype=bool)
            comm[Bits.members(commutator_bits(B, ib, jb))] = True
            pairs.append((ib, jb, mask | mask.T, comm))
    words, stats = sample_absorbing_words(B, samples, seed)
    audit = AbsorbingAudit(words=len(words), pairs=len(pairs), stats=stats)
    for w in list(CANONICAL_WORDS) + words:
        grid = word_value_grid(B, w)
        if grid.any():
            audit.nonzero_words += 1
        for ib, jb, mask, comm in pairs:
            bad = mask & ~comm[grid]
            if bad.any():
                x, y = (int(v) for v in np.argwhere(bad)[0])
                audit.escapes.append({"word": " ".join(w.tokens), "x": x, "y": y, "I": Bits.members(ib), "J": Bits.members(jb)})
    return audit
