"""Claim engine behind ``skewbrace paper-verify``.

Each fixture file may carry a list of claims; ``manifest.json`` carries the
sampler seed and sample count plus claims that are not tied to a single
fixture.  A claim names an operation from :data:`OPS`, its arguments and an
expectation.  Subset arguments are written as

* ``"B"`` or ``"0"``,
* the name of a subset listed under ``named_subsets`` in the fixture,
* ``{"span": [exprs]}`` (additive span) or ``{"set": [exprs]}`` (literal set).

Expectations: ``{"equals": v}``, ``{"subset": ref}``, ``{"subsets": [refs]}``
(as an unordered family), ``{"order": k}``, ``{"at_most": k}``,
``{"fields": {...}}`` (partial dict match).

A claim with ``"status": "disputed"`` records a printed statement that the
engine contradicts; it is reported as XFAIL (or XPASS) and only affects the
exit code under ``strict``.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import bits as Bits
from .commutator import (
    _values_on,
    CANONICAL_WORDS,
    absorbing_audit,
    commutator_bits,
    commutator_routes,
    sample_absorbing_words,
    star_span_bits,
    star_sum_is_ideal,
)
from .construct import _quotient_bits, enumerate_braces, restrict, trivial_brace
from .core import FiniteBrace, identity_audit
from .errors import BraceError, FixtureError
from .fixtures import FIXTURE_IDS, Fixture, fixture_dir, load_fixture, load_fixture_from
from .groups import is_cyclic
from .properties import CHECKS
from .radicals import (
    distinguished_ideal,
    element_profiles,
    fitting_bits,
    frattini_bits,
    gaschutz_check,
    sylow,
)
from .series import (
    check_central_chain,
    derived_chain,
    is_soluble,
    lower_central_chain,
    nilpotency_class,
)
from .subideal import defect, idealiser_report, subideal_audit
from .substructure import (
    all_substructures,
    classify,
    extremal,
    ideal_bits_list,
    ideal_closure_bits,
    is_ideal_bits,
    set_sum,
    subbrace_closure_bits,
)
from .ybe import check_braid, flip, solution_from_brace

DEFAULT_SEED = 20240611
DEFAULT_SAMPLES = 10_000


@dataclass
class Context:
    """Brace plus the means of resolving subset references into it."""

    fixture: Fixture | None
    brace: FiniteBrace
    settings: dict
    embed: tuple[int, ...] | None = None  # standalone index -> fixture index

    def ref(self, r) -> int:
        if self.fixture is None:
            raise FixtureError("subset references need a fixture")
        if r == "B":
            return Bits.full(self.brace.order)
        if r == "0":
            return 1
        if isinstance(r, str):
            bits = self.fixture.named(r)
        elif isinstance(r, dict) and "span" in r:
            bits = self.fixture.span(r["span"])
        elif isinstance(r, dict) and "set" in r:
            bits = Bits.from_elements(self.fixture.element(e) for e in r["set"])
        else:
            raise FixtureError(f"bad subset reference {r!r}")
        return self._into(bits)

    def _into(self, bits: int) -> int:
        if self.embed is None:
            return bits
        pos = {b: k for k, b in enumerate(self.embed)}
        if any(b not in pos for b in Bits.members(bits)):
            raise FixtureError("subset reference leaves the standalone brace")
        return Bits.from_elements(pos[b] for b in Bits.members(bits))

    def out(self, bits: int) -> int:
        """Map a result bitset back to fixture indices."""
        if self.embed is None:
            return bits
        return Bits.from_elements(self.embed[k] for k in Bits.members(bits))

    def label(self, bits: int) -> list[str]:
        """Labels of a fixture-level bitset."""
        els = Bits.members(bits)
        if self.fixture is None:
            return [str(e) for e in els]
        return [self.fixture.label(e) for e in els]


class Subset(int):
    """Marks a bitset result so it is compared and printed as a set."""


class Family(tuple):
    """Unordered family of bitsets."""


def _subsets(ctx: Context, items) -> Family:
    return Family(sorted(Subset(ctx.out(s)) for s in items))


OPS: dict[str, Callable[..., Any]] = {}


def op(name: str):
    def deco(fn):
        OPS[name] = fn
        return fn

    return deco


@op("identity_audit")
def _identity_audit(ctx):
    return identity_audit(ctx.brace).passed


@op("classify")
def _classify(ctx, S):
    return classify(ctx.brace, ctx.ref(S)).flags()


@op("star_span")
def _star_span(ctx, X, Y):
    return Subset(ctx.out(star_span_bits(ctx.brace, ctx.ref(X), ctx.ref(Y))))


@op("star_sum_is_ideal")
def _star_sum(ctx, I, J):
    return star_sum_is_ideal(ctx.brace, ctx.ref(I), ctx.ref(J)).is_ideal


@op("commutator")
def _commutator(ctx, I, J):
    return Subset(ctx.out(commutator_bits(ctx.brace, ctx.ref(I), ctx.ref(J))))


@op("commutator_routes_agree")
def _routes(ctx):
    ideals = ideal_bits_list(ctx.brace)
    bad = 0
    for a, i in enumerate(ideals):
        for j in ideals[a:]:
            bad += not commutator_routes(ctx.brace, i, j).agree
    return {"pairs": len(ideals) * (len(ideals) + 1) // 2, "disagreements": bad}


@op("absorbing_audit")
def _absorbing(ctx):
    s = ctx.settings
    a = absorbing_audit(ctx.brace, ideal_bits_list(ctx.brace), s["samples"], s["seed"])
    return {"words": a.words, "escapes": len(a.escapes)}


@op("absorbing_closure")
def _absorbing_closure(ctx, I, J):
    """Ideal closure of sampled absorbing values on I x J, canonical words included."""
    B, s = ctx.brace, ctx.settings
    ib, jb = ctx.ref(I), ctx.ref(J)
    words, _ = sample_absorbing_words(B, s["samples"], s["seed"])
    values = 0
    for w in list(CANONICAL_WORDS) + words:
        values |= _values_on(B, w, ib, jb)
    return Subset(ctx.out(ideal_closure_bits(B, values)))


@op("ideal_in")
def _ideal_in(ctx, S, N):
    return is_ideal_bits(ctx.brace, ctx.ref(S), ctx.ref(N))


@op("subbrace_closure")
def _sb_closure(ctx, sets):
    bits = 0
    for r in sets:
        bits |= ctx.ref(r)
    return Subset(ctx.out(subbrace_closure_bits(ctx.brace, bits)))


@op("ideal_closure")
def _id_closure(ctx, S):
    return Subset(ctx.out(ideal_closure_bits(ctx.brace, ctx.ref(S))))


@op("idealiser")
def _idealiser(ctx, S, pair=None):
    rep = idealiser_report(ctx.brace, ctx.ref(S))
    out = {"exists": rep.exists}
    if pair is not None:
        want = {ctx.ref(pair[0]), ctx.ref(pair[1])}
        out["pair_fails"] = any({t.bits, u.bits} == want for t, u in rep.failing_pairs)
        t, u = (ctx.ref(p) for p in pair)
        out["pair_join_is_B"] = subbrace_closure_bits(ctx.brace, t | u) == Bits.full(ctx.brace.order)
    return out


@op("distinguished")
def _distinguished(ctx, which):
    return Subset(ctx.out(distinguished_ideal(ctx.brace, which).bits))


@op("lattice")
def _lattice(ctx, kind, order=None):
    items = [s.bits for s in all_substructures(ctx.brace, kind) if order is None or len(s) == order]
    return _subsets(ctx, items)


@op("proper_left_ideals")
def _proper_left(ctx):
    full = Bits.full(ctx.brace.order)
    return _subsets(ctx, [s.bits for s in all_substructures(ctx.brace, "left_ideal") if s.bits not in (1, full)])


@op("extremal")
def _extremal(ctx, kind, direction):
    return _subsets(ctx, [s.bits for s in extremal(ctx.brace, kind, direction)])


@op("nilpotency_class")
def _class(ctx):
    return nilpotency_class(ctx.brace)


@op("central_chain")
def _central_chain(ctx, chain):
    return check_central_chain(ctx.brace, [ctx.ref(c) for c in chain])["valid"]


@op("sum")
def _sum(ctx, I, J):
    return Subset(ctx.out(set_sum(ctx.brace, ctx.ref(I), ctx.ref(J))))


@op("quotient_is_abelian")
def _quot_abelian(ctx, I):
    Q, _ = _quotient_bits(ctx.brace, ctx.ref(I))
    full = Bits.full(Q.order)
    return commutator_bits(Q, full, full) == 1


@op("all_subideal")
def _all_subideal(ctx):
    return subideal_audit(ctx.brace).all_subideal


@op("defect")
def _defect(ctx, S):
    return defect(ctx.brace, ctx.ref(S))


@op("derived_terminal")
def _derived_terminal(ctx):
    return Subset(ctx.out(derived_chain(ctx.brace)[-1]))


@op("soluble")
def _soluble(ctx):
    return is_soluble(ctx.brace)


@op("lower_central_terminal")
def _lower_terminal(ctx):
    return Subset(ctx.out(lower_central_chain(ctx.brace)[-1]))


@op("in_centrally_nilpotent_ideal")
def _in_cn_ideal(ctx, S):
    """Is S inside some ideal that is centrally nilpotent as a brace?"""
    s = ctx.ref(S)
    B = ctx.brace
    for i in ideal_bits_list(B):
        if Bits.is_subset(s, i) and nilpotency_class(restrict(B, i)[0]) is not None:
            return True
    return False


@op("fitting")
def _fitting(ctx):
    return Subset(ctx.out(fitting_bits(ctx.brace)))


@op("frattini")
def _frattini(ctx):
    return Subset(ctx.out(frattini_bits(ctx.brace)))


@op("property")
def _property(ctx, name):
    r = CHECKS[name](ctx.brace)
    return {"passed": r["passed"], "applicable": r["applicable"]}


@op("sylow")
def _sylow(ctx):
    rep = sylow(ctx.brace)
    return {"decomposes": rep.decomposes, "failures": len(rep.failures)}


@op("ybe")
def _ybe(ctx):
    sol = solution_from_brace(ctx.brace)
    return {"braid": check_braid(sol)[0], "nondegenerate": sol.nondegenerate}


# claims that range over enumerated braces

@op("enumerate_count")
def _enum_count(ctx, n):
    return len(enumerate_braces(n))


def _enumerated(max_n: int):
    for n in range(1, max_n + 1):
        yield from enumerate_braces(n)


@op("enumerated_gaschutz")
def _enum_gaschutz(ctx, max_order):
    applicable = failed = 0
    for B in _enumerated(max_order):
        rep = gaschutz_check(B)
        if rep.applicable:
            applicable += 1
            failed += not rep.holds
    return {"applicable": applicable, "failures": failed}


@op("enumerated_ybe")
def _enum_ybe(ctx, max_order):
    bad = 0
    count = 0
    for B in _enumerated(max_order):
        sol = solution_from_brace(B)
        count += 1
        bad += not (check_braid(sol)[0] and sol.nondegenerate)
    return {"braces": count, "failures": bad}


@op("enumerated_common_generator")
def _enum_common(ctx, max_order):
    both_cyclic = failed = 0
    for B in _enumerated(max_order):
        if not (is_cyclic(B.add) and is_cyclic(B.mul)):
            continue
        both_cyclic += 1
        try:
            _, gen = element_profiles(B)
        except AssertionError:
            gen = None
        failed += gen is None
    return {"both_cyclic": both_cyclic, "failures": failed}


@op("fit_equals_frat_example")
def _fit_frat(ctx, n, order):
    """Some brace of order n has Fit = Frat of the given order, equal to its
    only non-zero proper left ideal."""
    for B in enumerate_braces(n):
        fit, frat = fitting_bits(B), frattini_bits(B)
        full = Bits.full(n)
        lefts = [s.bits for s in all_substructures(B, "left_ideal") if s.bits not in (1, full)]
        if fit == frat and fit.bit_count() == order and lefts == [fit]:
            return True
    return False


@op("trivial_flip")
def _flip(ctx, n):
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    sol = solution_from_brace(trivial_brace(table))
    f = flip(n)
    return bool(np.array_equal(sol.first, f.first) and np.array_equal(sol.second, f.second))


# evaluation

def check_expectation(ctx: Context, value, expect: dict) -> bool:
    for kind, want in expect.items():
        if kind == "equals":
            if isinstance(value, (Subset, Family)):
                return False
            if value != want:
                return False
        elif kind == "subset":
            if not isinstance(value, Subset) or value != ctx.out(ctx.ref(want)):
                return False
        elif kind == "subsets":
            if not isinstance(value, Family):
                return False
            if sorted(value) != sorted(ctx.out(ctx.ref(r)) for r in want):
                return False
        elif kind == "order":
            n = value.bit_count() if isinstance(value, Subset) else len(value)
            if n != want:
                return False
        elif kind == "at_most":
            if value is None or value > want:
                return False
        elif kind == "fields":
            if not isinstance(value, dict) or any(value.get(k) != v for k, v in want.items()):
                return False
        else:
            raise FixtureError(f"unknown expectation {kind!r}")
    return True


def render(ctx: Context, value):
    if isinstance(value, Subset):
        return ctx.label(value) if ctx.fixture else Bits.members(value)
    if isinstance(value, Family):
        return [render(ctx, Subset(v)) for v in value]
    return value


@dataclass
class ClaimResult:
    id: str
    criterion: int | None
    status: str  # PASS, FAIL, XFAIL, XPASS, ERROR
    expected: Any = None
    actual: Any = None
    note: str = ""

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def run_claim(claim: dict, fixture: Fixture | None, settings: dict) -> ClaimResult:
    cid = claim["id"]
    disputed = claim.get("status") == "disputed"
    try:
        ctx = Context(fixture, fixture.brace if fixture else None, settings)
        if "within" in claim:
            sub = ctx.ref(claim["within"])
            br, emb = restrict(fixture.brace, sub)
            ctx = Context(fixture, br, settings, tuple(emb))
        fn = OPS[claim["op"]]
        value = fn(ctx, **claim.get("args", {}))
        ok = check_expectation(ctx, value, claim["expect"])
        shown = render(ctx, value)
        want = claim["expect"]
        if "subset" in want:
            want = {"subset": ctx.label(ctx.out(ctx.ref(want["subset"])))}
    except (AssertionError, BraceError, KeyError, TypeError, ValueError) as exc:
        return ClaimResult(cid, claim.get("criterion"), "ERROR", claim.get("expect"), repr(exc), claim.get("note", ""))
    if disputed:
        status = "XPASS" if ok else "XFAIL"
    else:
        status = "PASS" if ok else "FAIL"
    return ClaimResult(cid, claim.get("criterion"), status, want, shown, claim.get("note", ""))


@dataclass
class Report:
    results: list[ClaimResult] = field(default_factory=list)
    load_errors: list[dict] = field(default_factory=list)

    def failed(self, strict: bool = False) -> list[ClaimResult]:
        bad = {"FAIL", "ERROR"} | ({"XFAIL", "XPASS"} if strict else set())
        return [r for r in self.results if r.status in bad]

    def ok(self, strict: bool = False) -> bool:
        return not self.load_errors and not self.failed(strict)

    def to_dict(self, strict: bool = False) -> dict:
        counts: dict[str, int] = {}
        for r in self.results:
            counts[r.status] = counts.get(r.status, 0) + 1
        return {
            "ok": self.ok(strict),
            "counts": counts,
            "load_errors": self.load_errors,
            "results": [r.to_dict() for r in self.results],
        }


def read_manifest(directory=None) -> dict:
    base = Path(directory) if directory else fixture_dir()
    path = base / "manifest.json"
    if not path.exists():
        path = fixture_dir() / "manifest.json"
    with open(path) as fh:
        return json.load(fh)


def paper_verify(
    fixtures_dir=None,
    only: list[str] | None = None,
    fail_fast: bool = False,
    seed: int | None = None,
    samples: int | None = None,
    progress: Callable[[ClaimResult], None] | None = None,
) -> Report:
    manifest = read_manifest(fixtures_dir)
    settings = {
        "seed": manifest.get("seed", DEFAULT_SEED) if seed is None else seed,
        "samples": manifest.get("samples", DEFAULT_SAMPLES) if samples is None else samples,
    }
    report = Report()
    ids = [f for f in FIXTURE_IDS if only is None or f in only]
    for fid in ids:
        try:
            fx = load_fixture_from(fid, fixtures_dir) if fixtures_dir else load_fixture(fid)
        except (BraceError, FileNotFoundError, ValueError) as exc:
            report.load_errors.append({"fixture": fid, "error": str(exc)})
            if fail_fast:
                return report
            continue
        for claim in fx.record.get("claims", []):
            r = run_claim(claim, fx, settings)
            report.results.append(r)
            if progress:
                progress(r)
            if fail_fast and r.status in ("FAIL", "ERROR"):
                return report
    if only is None or "global" in only:
        for claim in manifest.get("claims", []):
            r = run_claim(claim, None, settings)
            report.results.append(r)
            if progress:
                progress(r)
            if fail_fast and r.status in ("FAIL", "ERROR"):
                return report
    return report
