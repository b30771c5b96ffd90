"""Symbolic fixture files: braces given by a bijective 1-cocycle on a finite
abelian group, written in generators.

A fixture describes

* the additive group Z_{o1} x ... x Z_{ok} through named generators,
* the acting generators, each with its automorphism (images of the additive
  generators) and its δ-value (the complement generator),
* optional derived actor generators defined by words,
* a printed δ table keyed by words, used as a transcription audit.

The brace is obtained by closing the generator pairs (δ(g), λ_g) inside the
holomorph; the pairs form the complement D = {(δ(c), λ_c)}.  Every δ table
entry is then re-evaluated from its word and compared with the printed value.
"""

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import prod
from pathlib import Path
from typing import Any

from .construct import CocycleSpec, from_cocycle
from .core import FiniteBrace
from .errors import FixtureError

FIXTURE_IDS = ("b16", "b32a", "b32b", "b24", "b32c")

_TERM = re.compile(r"([+-]?)(\d*)([A-Za-z]\w*)")
_TOKEN = re.compile(r"([A-Za-z]\w*?)(?:\^(-?\d+))?")


class AbelianGroup:
    """Z_{o1} x ... x Z_{ok}; element index = c1 + o1*(c2 + o2*(...))."""

    def __init__(self, generators: list[str], orders: list[int]):
        if len(generators) != len(orders) or not generators:
            raise FixtureError("additive generators and orders must be non-empty and match")
        self.generators = list(generators)
        self.orders = [int(o) for o in orders]
        self.n = prod(self.orders)
        self.vectors = [self._vec(k) for k in range(self.n)]
        self.table = tuple(
            tuple(self.index(self.add_vec(u, v)) for v in self.vectors) for u in self.vectors
        )

    def _vec(self, k: int) -> tuple[int, ...]:
        out = []
        for o in self.orders:
            out.append(k % o)
            k //= o
        return tuple(out)

    def index(self, v) -> int:
        r, m = 0, 1
        for c, o in zip(v, self.orders):
            r += (c % o) * m
            m *= o
        return r

    def add_vec(self, u, v):
        return tuple((a + b) % o for a, b, o in zip(u, v, self.orders))

    def parse(self, expr: str) -> int:
        s = str(expr).replace(" ", "")
        v = [0] * len(self.orders)
        if s == "0":
            return 0
        pos = 0
        for m in _TERM.finditer(s):
            if m.start() != pos:
                break
            sign, coef, name = m.groups()
            if name not in self.generators:
                raise FixtureError(f"unknown additive generator {name!r} in {expr!r}")
            c = int(coef) if coef else 1
            if sign == "-":
                c = -c
            k = self.generators.index(name)
            v[k] += c
            pos = m.end()
        if pos != len(s) or not s:
            raise FixtureError(f"cannot parse additive expression {expr!r}")
        return self.index(v)

    def label(self, k: int) -> str:
        parts = []
        for c, g in zip(self.vectors[k], self.generators):
            if c:
                parts.append(g if c == 1 else f"{c}{g}")
        return "+".join(parts) if parts else "0"

    def automorphism(self, images: dict[str, str]) -> tuple[int, ...]:
        if set(images) != set(self.generators):
            raise FixtureError(f"automorphism must give images of exactly {self.generators}")
        cols = [self.vectors[self.parse(images[g])] for g in self.generators]
        for o, col in zip(self.orders, cols):
            if any((o * c) % q for c, q in zip(col, self.orders)):
                raise FixtureError("generator images do not respect the generator orders")
        perm = []
        for v in self.vectors:
            acc = [0] * len(self.orders)
            for c, col in zip(v, cols):
                for k, x in enumerate(col):
                    acc[k] += c * x
            perm.append(self.index(acc))
        if sorted(perm) != list(range(self.n)):
            raise FixtureError("generator images do not define a bijection")
        return tuple(perm)


@dataclass
class Fixture:
    id: str
    brace: FiniteBrace
    group: AbelianGroup
    spec: CocycleSpec
    record: dict = field(repr=False)
    audit: dict = field(repr=False, default_factory=dict)

    def element(self, expr: str) -> int:
        return self.group.parse(expr)

    def label(self, k: int) -> str:
        return self.group.label(k)

    def span(self, exprs) -> int:
        """Additive subgroup generated by the given expressions, as a bitset."""
        from .groups import closure

        return closure(self.group.table, [self.element(e) for e in exprs])

    def named(self, name: str) -> int:
        subsets = self.record.get("named_subsets", {})
        if name not in subsets:
            raise FixtureError(f"fixture {self.id} has no named subset {name!r}")
        return self.span(subsets[name])


def build_fixture(record: dict, fid: str | None = None) -> Fixture:
    fid = fid or record.get("id", "fixture")
    try:
        add = record["additive"]
        group = AbelianGroup(add["generators"], add["orders"])
        actor = record["actor"]
        gens = list(actor["generators"])
        auts = {g: group.automorphism(actor["action"][g]) for g in gens}
        deltas = {g: group.parse(record["complement"][g]) for g in gens}
    except (KeyError, TypeError) as exc:
        raise FixtureError(f"{fid}: malformed fixture record ({exc})") from exc
    n = group.n
    ident = tuple(range(n))
    gen_pairs = {g: (deltas[g], auts[g]) for g in gens}

    def mul(p, q):
        (b, f), (c, g) = p, q
        return (group.table[b][f[c]], tuple(f[x] for x in g))

    elems = [(0, ident)]
    index = {elems[0]: 0}
    words = ["1"]
    i = 0
    while i < len(elems):
        for g in gens:
            r = mul(elems[i], gen_pairs[g])
            if r not in index:
                index[r] = len(elems)
                elems.append(r)
                words.append(g if words[i] == "1" else f"{words[i]} {g}")
                if len(elems) > n:
                    raise FixtureError(f"{fid}: complement generators produce more than |B| = {n} pairs")
        i += 1
    if len(elems) != n or len({b for b, _ in elems}) != n:
        raise FixtureError(f"{fid}: complement is not regular ({len(elems)} pairs for |B| = {n})")

    reverse = actor.get("word_order", "left-to-right") == "right-to-left"
    defs = actor.get("definitions", {})

    def pinv(p):
        b, f = p
        finv = [0] * n
        for x, y in enumerate(f):
            finv[y] = x
        return (group.index(tuple(-c for c in group.vectors[finv[b]])), tuple(finv))

    def evaluate(word: str, depth: int = 0):
        if depth > 8:
            raise FixtureError(f"{fid}: definitions nest too deeply")
        w = word.strip()
        if w in ("1", ""):
            return (0, ident)
        toks = w.split()
        if reverse:
            toks = toks[::-1]
        acc = (0, ident)
        for tok in toks:
            m = _TOKEN.fullmatch(tok)
            if not m:
                raise FixtureError(f"{fid}: bad word token {tok!r}")
            name, e = m.group(1), int(m.group(2) or 1)
            if name in defs:
                q = evaluate(defs[name], depth + 1)
            elif name in gen_pairs:
                q = gen_pairs[name]
            else:
                raise FixtureError(f"{fid}: unknown actor generator {name!r}")
            if e < 0:
                q, e = pinv(q), -e
            for _ in range(e):
                acc = mul(acc, q)
        return acc

    mismatches = []
    table = record.get("delta_table", {})
    for word, value in table.items():
        got = evaluate(word)[0]
        want = group.parse(value)
        if got != want:
            mismatches.append({"word": word, "printed": value, "computed": group.label(got)})
    if mismatches:
        raise FixtureError(f"{fid}: delta table disagrees with the cocycle at {len(mismatches)} entries: {mismatches[:3]}")

    actor_table = tuple(tuple(index[mul(p, q)] for q in elems) for p in elems)
    spec = CocycleSpec(
        additive=group.table,
        actor=actor_table,
        action=tuple(f for _, f in elems),
        delta=tuple(b for b, _ in elems),
        labels=tuple(group.label(k) for k in range(n)),
        actor_labels=tuple(words),
        name=fid,
    )
    brace = from_cocycle(spec)
    audit = {"pairs": n, "table_entries": len(table), "mismatches": 0}
    return Fixture(fid, brace, group, spec, record, audit)


def fixture_dir() -> Path:
    return Path(str(resources.files("skewbrace") / "fixtures"))


def read_record(fid: str, directory=None) -> dict:
    base = Path(directory) if directory else fixture_dir()
    path = base / f"{fid}.json"
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise FixtureError(f"no fixture file {path}") from exc
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: malformed JSON ({exc})") from exc


@lru_cache(maxsize=None)
def load_fixture(fid: str) -> Fixture:
    """Load a shipped fixture (cached)."""
    return build_fixture(read_record(fid), fid)


def load_fixture_from(fid: str, directory) -> Fixture:
    return build_fixture(read_record(fid, directory), fid)


def fixture_brace(fid: str) -> FiniteBrace:
    return load_fixture(fid).brace


def is_symbolic_record(d: Any) -> bool:
    return isinstance(d, dict) and "complement" in d and "actor" in d and isinstance(d.get("additive"), dict)
