"""Command-line interface.

Every command except ``paper-verify`` prints one JSON document on standard
output.  Exit status: 0 on success, 1 when a validation or claim check fails,
2 on usage errors or unreadable input.
"""

import argparse
import json
import sys
from pathlib import Path

from . import bits as Bits
from .commutator import (
    commutator_routes,
    sample_absorbing_values,
    star_span_bits,
    star_sum_is_ideal,
)
from .construct import CocycleSpec, canonical_form, enumerate_braces, from_cocycle
from .core import FiniteBrace, audit_tables, brace_from_dict
from .errors import BraceError
from .fixtures import FIXTURE_IDS, build_fixture, is_symbolic_record, load_fixture
from .groups import is_abelian
from .radicals import (
    distinguished_ideal,
    element_profiles,
    fitting_ideal,
    frattini_ideal,
    gaschutz_check,
    non_generators,
    sylow,
    zeta_b_radical,
)
from .series import (
    b_central_series,
    chief_series,
    derived_length,
    derived_series,
    is_soluble,
    lower_central_series,
    nilpotency_class,
    upper_central_series,
)
from .smallgroups import identify
from .subideal import (
    ideal_closure_series,
    idealiser_report,
    index_of,
    strong_left_normaliser,
    subideal_audit,
)
from .substructure import KINDS, all_substructures, classify, require_ideal
from .verify import DEFAULT_SAMPLES, DEFAULT_SEED, paper_verify
from .ybe import check_braid, solution_from_brace


class UsageError(Exception):
    pass


class Input:
    """A brace together with the fixture it came from, if any."""

    def __init__(self, brace: FiniteBrace, fixture=None, source: str = ""):
        self.brace = brace
        self.fixture = fixture
        self.source = source

    def subset(self, text: str) -> int:
        """Parse ``--set``-style input into a bitset.

        Accepts comma-separated indices.  For fixtures, a named subset or
        element expressions such as ``2x,y`` (additive span) also work.
        """
        text = text.strip()
        fx = self.fixture
        if fx is not None and text in fx.record.get("named_subsets", {}):
            return fx.named(text)
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            return 1
        if all(p.lstrip("-").isdigit() for p in parts):
            xs = [int(p) for p in parts]
            bad = [x for x in xs if not 0 <= x < self.brace.order]
            if bad:
                raise UsageError(f"indices out of range for order {self.brace.order}: {bad}")
            return Bits.from_elements(xs) | 1
        if fx is None:
            raise UsageError(f"cannot parse element list {text!r}")
        try:
            return fx.span(parts)
        except BraceError as exc:
            raise UsageError(str(exc)) from exc


def load_input(ref: str) -> Input:
    if ref in FIXTURE_IDS and not Path(ref).exists():
        fx = load_fixture(ref)
        return Input(fx.brace, fx, ref)
    try:
        with open(ref) as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file or fixture: {ref}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{ref}: malformed JSON ({exc})") from exc
    if is_symbolic_record(data):
        fx = build_fixture(data, data.get("id", Path(ref).stem))
        return Input(fx.brace, fx, ref)
    if isinstance(data, dict) and "add" in data and "mul" in data:
        return Input(brace_from_dict(data), None, ref)
    if isinstance(data, dict) and "additive" in data and "action" in data:
        try:
            spec = CocycleSpec.from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{ref}: malformed cocycle spec ({exc})") from exc
        return Input(from_cocycle(spec), None, ref)
    raise UsageError(f"{ref}: expected brace JSON (add/mul) or cocycle JSON (additive/actor/action)")


def members(bits: int) -> list[int]:
    return Bits.members(bits)


# commands

def cmd_validate(args, inp: Input) -> tuple[dict, int]:
    B = inp.brace
    audit = audit_tables(B.add, B.mul)
    out = {
        "valid": True,
        "order": B.order,
        "abelian_type": B.is_abelian_type,
        "trivial": B.is_trivial,
        "identities": audit.to_dict(),
    }
    if inp.fixture is not None:
        out["transcription_audit"] = inp.fixture.audit
    if args.emit:
        out["brace"] = (canonical_form(B) if args.canonical else B).to_dict()
    return out, 0 if audit.passed else 1


def cmd_analyze(args, inp: Input) -> tuple[dict, int]:
    B = inp.brace
    profiles, common = element_profiles(B)
    zb = zeta_b_radical(B)
    out = {
        "order": B.order,
        "additive_group": identify(B.add),
        "multiplicative_group": identify(B.mul),
        "abelian_type": B.is_abelian_type,
        "multiplicative_abelian": is_abelian(B.mul),
        "distinguished": {w: members(distinguished_ideal(B, w).bits) for w in ("socle", "fix", "centre", "kernel_lambda")},
        "fitting": members(fitting_ideal(B).bits),
        "frattini": members(frattini_ideal(B).bits),
        "non_generators": list(non_generators(B)),
        "zeta_b_radical": members(zb.bits),
        "gaschutz": gaschutz_check(B).to_dict(),
        "nilpotency_class": nilpotency_class(B),
        "soluble": is_soluble(B),
        "derived_length": derived_length(B),
        "sylow": sylow(B).to_dict(),
        "element_profiles": [p.to_dict() for p in profiles],
        "common_cyclic_generator": common,
    }
    return out, 0


def cmd_ideals(args, inp: Input) -> tuple[dict, int]:
    kind = args.kind or "ideal"
    if kind not in KINDS:
        raise UsageError(f"--kind must be one of {', '.join(KINDS)}")
    subs = all_substructures(inp.brace, kind)
    return {"kind": kind, "count": len(subs), "members": [s.to_dict() for s in subs]}, 0


SERIES_KINDS = ("upper", "lower", "derived", "chief", "chief_last", "b_lower", "b_upper")


def cmd_series(args, inp: Input) -> tuple[dict, int]:
    B = inp.brace
    kind = args.kind or "upper"
    ideal = inp.subset(args.ideal) if args.ideal else None
    if kind == "upper":
        s = upper_central_series(B)
    elif kind == "lower":
        s = lower_central_series(B)
    elif kind == "derived":
        s = derived_series(B, ideal)
    elif kind in ("chief", "chief_last"):
        s = chief_series(B, "last" if kind == "chief_last" else "first")
    elif kind in ("b_lower", "b_upper"):
        if ideal is None:
            raise UsageError(f"--kind {kind} needs --ideal")
        s = b_central_series(B, ideal, kind[2:])
    else:
        raise UsageError(f"--kind must be one of {', '.join(SERIES_KINDS)}")
    out = s.to_dict()
    out["verdict"] = dict(out["verdict"], nilpotency_class=nilpotency_class(B), soluble=is_soluble(B))
    return out, 0


def cmd_commutator(args, inp: Input) -> tuple[dict, int]:
    B = inp.brace
    if not args.i or not args.j:
        raise UsageError("commutator needs --i and --j")
    i = require_ideal(B, inp.subset(args.i))
    j = require_ideal(B, inp.subset(args.j))
    routes = commutator_routes(B, i, j)
    sample = sample_absorbing_values(B, i, j, samples=args.samples, seed=args.seed)
    escapes = members(sample.values & ~routes.via_generators)
    out = {
        "I": members(i),
        "J": members(j),
        "via_generators": members(routes.via_generators),
        "via_star_sum": members(routes.via_star_sum),
        "routes_agree": routes.agree,
        "star_span": members(star_span_bits(B, i, j)),
        "plain_sum": star_sum_is_ideal(B, i, j).to_dict(),
        "sampler": dict(sample.to_dict(), escapes=escapes, seed=args.seed, samples=args.samples),
    }
    return out, 0 if routes.agree and not escapes else 1


def cmd_subideal(args, inp: Input) -> tuple[dict, int]:
    B = inp.brace
    if not args.set:
        raise UsageError("subideal needs --set")
    s = inp.subset(args.set)
    series = ideal_closure_series(B, s)
    out = {
        "subbrace": classify(B, s).to_dict(),
        "closure_series": series.to_dict(),
        "index": index_of(B, s),
        "idealiser": idealiser_report(B, s).to_dict(),
        "strong_left_normaliser": strong_left_normaliser(B, s).to_dict(),
    }
    return out, 0


def cmd_audit(args, inp: Input) -> tuple[dict, int]:
    return subideal_audit(inp.brace).to_dict(), 0


def cmd_ybe(args, inp: Input) -> tuple[dict, int]:
    sol = solution_from_brace(inp.brace)
    out = sol.to_dict()
    out["nondegenerate"] = sol.nondegenerate
    ok, _ = check_braid(sol)
    return out, 0 if ok and sol.nondegenerate else 1


def cmd_enumerate(args) -> tuple[dict, int]:
    braces = enumerate_braces(args.order, up_to_iso=not args.all)
    rows = []
    for B in braces:
        row = {
            "name": B.name,
            "additive_group": identify(B.add),
            "multiplicative_group": identify(B.mul),
            "trivial": B.is_trivial,
            "abelian_type": B.is_abelian_type,
        }
        if args.tables:
            row["brace"] = B.to_dict()
        rows.append(row)
    return {"order": args.order, "up_to_iso": not args.all, "count": len(rows), "braces": rows}, 0


def _fmt(v) -> str:
    return json.dumps(v, sort_keys=True)


def cmd_paper_verify(args) -> int:
    only = args.only.split(",") if args.only else None
    report = paper_verify(
        fixtures_dir=args.fixtures_dir,
        only=only,
        fail_fast=args.fail_fast,
        seed=args.seed,
        samples=args.samples,
    )
    width = max((len(r.id) for r in report.results), default=10)
    for e in report.load_errors:
        print(f"{'LOAD ' + e['fixture']:<{width}}  FAIL   {e['error']}")
    for r in report.results:
        crit = "-" if r.criterion is None else str(r.criterion)
        print(f"{r.id:<{width}}  {r.status:<5}  criterion {crit}")
    counts = report.to_dict(args.strict)["counts"]
    print("summary: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    failed = report.failed(args.strict)
    if report.load_errors:
        print(f"first failure: fixture {report.load_errors[0]['fixture']} did not load")
    elif failed:
        r = failed[0]
        print(f"first failure: {r.id}")
        print(f"  expected: {_fmt(r.expected)}")
        print(f"  actual:   {_fmt(r.actual)}")
    if args.json:
        Path(args.json).write_text(json.dumps(report.to_dict(args.strict), indent=2, sort_keys=True) + "\n")
    return 0 if report.ok(args.strict) else 1


BRACE_COMMANDS = {
    "validate": cmd_validate,
    "analyze": cmd_analyze,
    "ideals": cmd_ideals,
    "series": cmd_series,
    "commutator": cmd_commutator,
    "subideal": cmd_subideal,
    "audit": cmd_audit,
    "ybe": cmd_ybe,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewbrace", description="Computations with finite skew braces.")
    sub = p.add_subparsers(dest="command", required=True)

    def brace_cmd(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("brace", help="brace JSON, cocycle JSON, fixture JSON or a fixture id")
        sp.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")
        return sp

    sp = brace_cmd("validate", "check the brace axioms and identities")
    sp.add_argument("--emit", action="store_true", help="include the brace tables in the output")
    sp.add_argument("--canonical", action="store_true", help="emit the canonical relabelling")
    brace_cmd("analyze", "distinguished ideals, Fitting and Frattini ideals, Sylow data")
    sp = brace_cmd("ideals", "substructure lattice")
    sp.add_argument("--kind", help=f"one of {', '.join(KINDS)} (default ideal)")
    sp = brace_cmd("series", "central, derived, chief and B-central series")
    sp.add_argument("--kind", help=f"one of {', '.join(SERIES_KINDS)} (default upper)")
    sp.add_argument("--ideal", help="ideal for derived or B-central series")
    sp = brace_cmd("commutator", "commutator of two ideals by both routes plus sampling")
    sp.add_argument("--i", required=False)
    sp.add_argument("--j", required=False)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp = brace_cmd("subideal", "ideal closure series, index, idealiser and normaliser of a subbrace")
    sp.add_argument("--set", help="comma-separated elements of the subbrace")
    brace_cmd("audit", "subideal status of every subbrace")
    brace_cmd("ybe", "set-theoretic Yang-Baxter solution of the brace")

    sp = sub.add_parser("enumerate", help="all braces of a given order")
    sp.add_argument("order", type=int)
    sp.add_argument("--all", action="store_true", help="do not reduce up to isomorphism")
    sp.add_argument("--tables", action="store_true", help="include the tables")
    sp.add_argument("--json", metavar="PATH")

    sp = sub.add_parser("paper-verify", help="run every fixture and manifest claim")
    sp.add_argument("--fixtures-dir", help="directory holding the fixture JSON files")
    sp.add_argument("--only", help="comma-separated fixture ids (use 'global' for manifest claims)")
    sp.add_argument("--fail-fast", action="store_true")
    sp.add_argument("--strict", action="store_true", help="treat disputed claims as failures")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--samples", type=int, default=None, help=f"absorbing words per fixture (manifest default {DEFAULT_SAMPLES})")
    sp.add_argument("--json", metavar="PATH", help="write the full report as JSON")
    return p


def emit(out: dict, path: str | None) -> None:
    text = json.dumps(out, indent=2, sort_keys=True)
    print(text)
    if path:
        Path(path).write_text(text + "\n")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "paper-verify":
            return cmd_paper_verify(args)
        if args.command == "enumerate":
            out, code = cmd_enumerate(args)
        else:
            inp = load_input(args.brace)
            out, code = BRACE_COMMANDS[args.command](args, inp)
    except UsageError as exc:
        print(f"skewbrace: {exc}", file=sys.stderr)
        return 2
    except BraceError as exc:
        emit({"valid": False, "error": type(exc).__name__, "message": str(exc)}, None)
        return 1
    emit(out, getattr(args, "json", None))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
