"""Command-line surface: compute outcomes, check axioms, hunt, reproduce.

Exit codes let CI separate outcomes from tool misuse:

* 0 — command ran and every checked property holds (or nothing was checked);
* 1 — command ran and found a violation / failing expectation;
* 2 — usage error (bad flags, unknown rule or fixture);
* 3 — input error (unreadable file, malformed election, domain violation).

JSON output is byte-deterministic for identical invocations: keys are
sorted, committees stay in canonical order, rationals are rendered exactly
as p/q strings, and no wall-clock timings are included. Election texts
embedded in JSON witnesses re-parse with the library's own reader.

``--jobs N`` (default: the AMW_JOBS environment variable, then 1) caps the
worker count for batch commands. Every evaluation is a pure function of its
arguments and results are merged in a fixed order, so output is identical
for every jobs value; the flag is validated and affects wall time only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .core import Election, ParseError, parse_election, serialize_election
from .fixtures import FIXTURE_IDS, get_fixture, list_fixtures, run_fixture
from .monotonicity import (
    MonotonicityVerdict,
    MonotonicityWitness,
    check_candidate_monotonicity,
    check_committee_monotonicity,
    check_smwopi,
    check_smwpi,
)
from .representation import (
    CHECKS,
    RuleRepresentationVerdict,
    check_pr,
    rule_satisfies_on,
)
from .rules import RULE_IDS, Rule, ScoredOutcome, get_rule, winning_committees
from .search import (
    MONOTONICITY_AXIOMS,
    REPRESENTATION_AXIOMS,
    GenerationBounds,
    hunt,
    parse_axiom,
    shrink,
)


class _UsageError(Exception):
    """Bad flags or identifiers; maps to exit code 2."""


class _InputError(Exception):
    """Unreadable or invalid input data; maps to exit code 3."""


# ---------------------------------------------------------------------------
# Rendering helpers
# ---------------------------------------------------------------------------


def _frac_str(value) -> str:
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _member_names(e: Election, committee) -> list[str]:
    return [e.names[c] for c in committee]


def _set_str(names) -> str:
    return "{" + ",".join(names) + "}"


def _committee_str(e: Election, committee) -> str:
    return _set_str(_member_names(e, committee))


def _committees_json(e: Election, committees) -> list[list[str]]:
    return [_member_names(e, w) for w in committees]


def _jsonable(value):
    """Exact JSON image: fractions as p/q strings, tuples as arrays."""
    if isinstance(value, Fraction):
        return _frac_str(value)
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    return value


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _election_summary(e: Election) -> str:
    return f"election: {e.n} voters, {e.m} candidates, committee size {e.k}"


def _witness_json(w: MonotonicityWitness) -> dict:
    e = w.election
    return {
        "axiom": w.axiom,
        "strength": w.strength,
        "clause": w.clause,
        "group": _member_names(e, w.group) if w.group is not None else None,
        "voter": w.voter,
        "before": _committees_json(e, w.before),
        "after": _committees_json(e, w.after),
        "offender": _member_names(e, w.offender) if w.offender is not None else None,
        "election": serialize_election(e),
        "mutated": serialize_election(w.mutated),
    }


def _axiom_phrase(axiom: str, strength: str | None, clause: str) -> str:
    noun = "condition" if axiom == "committee-monotonicity" else "clause"
    what = axiom if strength is None else f"{strength} {axiom}"
    return f"{what} ({noun} {clause})"


def _witness_lines(w: MonotonicityWitness) -> list[str]:
    e = w.election
    lines = []
    if w.axiom == "committee-monotonicity":
        lines.append(f"committee sizes {e.k} -> {w.mutated.k}")
    else:
        lines.append(f"group: {_committee_str(e, w.group)}")
        if w.voter is not None:
            ballot = sorted(e.ballots[w.voter])
            lines.append(f"voter {w.voter} (ballot {_committee_str(e, ballot)}) extends")
        else:
            lines.append("a new voter approving exactly the group joins")
    lines.append("before: " + " ".join(_committee_str(e, x) for x in w.before))
    lines.append("after:  " + " ".join(_committee_str(e, x) for x in w.after))
    if w.offender is not None:
        lines.append(f"offender: {_committee_str(e, w.offender)}")
    return lines


def _cohesive_json(e: Election, witness) -> dict | None:
    if witness is None:
        return None
    return {
        "level": witness.level,
        "voters": list(witness.voters),
        "common": _member_names(e, witness.common),
    }


def _rep_verdict_json(e: Election, v: RuleRepresentationVerdict) -> dict:
    inner = v.offender_verdict.witness if v.offender_verdict is not None else None
    return {
        "axiom": v.axiom,
        "holds": v.holds,
        "offender": _member_names(e, v.offender) if v.offender is not None else None,
        "witness": _cohesive_json(e, inner),
        "election": serialize_election(e),
    }


def _rep_verdict_lines(e: Election, v: RuleRepresentationVerdict) -> list[str]:
    lines = [f"offending committee: {_committee_str(e, v.offender)}"]
    inner = v.offender_verdict.witness if v.offender_verdict is not None else None
    if inner is not None:
        lines.append(
            f"violating group: level {inner.level}, voters"
            f" {list(inner.voters)}, jointly approving"
            f" {_committee_str(e, inner.common)}"
        )
    return lines


# ---------------------------------------------------------------------------
# Shared argument plumbing
# ---------------------------------------------------------------------------


def _load_election(path: str) -> Election:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from None
    try:
        return parse_election(text)
    except ParseError as exc:
        raise _InputError(f"{path}: {exc}") from None


def _rule(args) -> Rule:
    try:
        return get_rule(args.rule, getattr(args, "ties", "put"))
    except KeyError as exc:
        raise _UsageError(exc.args[0]) from None


def _resolve_jobs(args) -> int:
    jobs = getattr(args, "jobs", None)
    if jobs is None:
        raw = os.environ.get("AMW_JOBS", "1")
        try:
            jobs = int(raw)
        except ValueError:
            raise _UsageError(f"AMW_JOBS must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise _UsageError(f"--jobs must be at least 1, got {jobs}")
    return jobs


def _parse_k_spec(spec: str, m_max: int) -> tuple[int, ...]:
    """Committee sizes: "3", "2..4", or "1,3,4"."""
    try:
        if ".." in spec:
            lo, hi = spec.split("..", 1)
            ks = tuple(range(int(lo), int(hi) + 1))
        else:
            ks = tuple(int(tok) for tok in spec.split(","))
    except ValueError:
        raise _UsageError(f"bad committee-size spec {spec!r}") from None
    if not ks or any(k < 1 or k > m_max for k in ks):
        raise _UsageError(f"committee sizes {spec!r} outside 1..{m_max}")
    return ks


def _parse_fraction(spec: str) -> Fraction:
    try:
        return Fraction(spec)
    except (ValueError, ZeroDivisionError):
        raise _UsageError(f"bad fraction {spec!r}") from None


def _committee_arg(e: Election, spec: str):
    names = [tok.strip() for tok in spec.split(",") if tok.strip()]
    try:
        return e.committee_of_names(names)
    except (KeyError, ValueError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        raise _InputError(message) from None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_compute(args) -> int:
    rule = _rule(args)
    e = _load_election(args.election)
    result = rule.evaluate(e)
    committees = winning_committees(result)
    objective = result.objective if isinstance(result, ScoredOutcome) else None

    if args.format == "json":
        _print_json(
            {
                "command": "compute",
                "rule": rule.id,
                "ties": rule.ties,
                "election": serialize_election(e),
                "committees": _committees_json(e, committees),
                "objective": None if objective is None else _frac_str(objective),
                "objective_label": rule.objective_label,
            }
        )
        return 0
    if args.verbose:
        print(_election_summary(e))
    for w in committees:
        line = _committee_str(e, w)
        if objective is not None:
            line += f"  {rule.objective_label}={_frac_str(objective)}"
        print(line)
    return 0


def _cmd_axioms(args) -> int:
    e = _load_election(args.election)
    axiom = args.check

    if args.committee is not None:
        committee = _committee_arg(e, args.committee)
        try:
            verdict = (CHECKS[axiom] if axiom != "pr" else check_pr)(e, committee)
        except ValueError as exc:
            raise _InputError(str(exc)) from None
        payload = {
            "command": "axioms",
            "axiom": axiom,
            "mode": "committee",
            "committee": _member_names(e, committee),
            "holds": verdict.holds,
            "witness": _cohesive_json(e, verdict.witness),
            "assignment": None
            if verdict.assignment is None
            else [
                [e.names[member], list(voters)]
                for member, voters in verdict.assignment.parts
            ],
            "election": serialize_election(e),
        }
        lines = [
            f"{axiom} {'holds' if verdict.holds else 'fails'} for"
            f" {_committee_str(e, committee)}"
        ]
        if verdict.witness is not None:
            wit = verdict.witness
            lines.append(
                f"violating group: level {wit.level}, voters {list(wit.voters)},"
                f" jointly approving {_committee_str(e, wit.common)}"
            )
        if args.verbose and verdict.assignment is not None:
            for member, voters in verdict.assignment.parts:
                lines.append(f"  {e.names[member]} represents voters {list(voters)}")
        holds = verdict.holds
    else:
        rule = _rule(args)
        try:
            verdict = rule_satisfies_on(e, rule, axiom)
        except ValueError as exc:
            raise _InputError(str(exc)) from None
        payload = {
            "command": "axioms",
            "axiom": axiom,
            "mode": "rule",
            "rule": rule.id,
            "holds": verdict.holds,
            **{
                k: v
                for k, v in _rep_verdict_json(e, verdict).items()
                if k in ("offender", "witness", "election")
            },
        }
        lines = [
            f"{rule.id} {'satisfies' if verdict.holds else 'violates'} {axiom}"
            " on this election"
        ]
        if not verdict.holds:
            lines.extend(_rep_verdict_lines(e, verdict))
        holds = verdict.holds

    if args.format == "json":
        _print_json(payload)
    else:
        if args.verbose:
            lines.insert(0, _election_summary(e))
        print("\n".join(lines))
    return 0 if holds else 1


def _run_monotonic(rule: Rule, e: Election, token: str, k_to: int | None) -> MonotonicityVerdict:
    axiom, strength = parse_axiom(token)
    if axiom in ("smwpi", "smwopi"):
        if strength not in ("strong", "weak"):
            raise _UsageError(f"axiom {axiom} needs a strong-/weak- prefix")
        check = check_smwpi if axiom == "smwpi" else check_smwopi
        return check(rule, e, strength)
    if strength is not None:
        raise _UsageError(f"axiom {axiom} takes no strong-/weak- prefix")
    if axiom == "candidate-monotonicity":
        return check_candidate_monotonicity(rule, e)
    if axiom == "committee-monotonicity":
        hi = e.k + 1 if k_to is None else k_to
        try:
            return check_committee_monotonicity(rule, e, e.k, hi)
        except ValueError as exc:
            raise _InputError(str(exc)) from None
    raise _UsageError(f"unknown axiom {token!r}")


def _cmd_monotonic(args) -> int:
    rule = _rule(args)
    e = _load_election(args.election)
    verdict = _run_monotonic(rule, e, args.axiom, args.k_to)

    if args.format == "json":
        _print_json(
            {
                "command": "monotonic",
                "rule": rule.id,
                "axiom": verdict.axiom,
                "strength": verdict.strength,
                "holds": verdict.holds,
                "checked": verdict.checked,
                "witness": None
                if verdict.witness is None
                else _witness_json(verdict.witness),
            }
        )
        return 0 if verdict.holds else 1

    what = verdict.axiom if verdict.strength is None else f"{verdict.strength} {verdict.axiom}"
    lines = []
    if args.verbose:
        lines.append(_election_summary(e))
    if verdict.holds:
        lines.append(
            f"{what} holds for {rule.id} on this election"
            f" ({verdict.checked} mutated-election evaluations)"
        )
    else:
        w = verdict.witness
        lines.append(
            f"{_axiom_phrase(w.axiom, w.strength, w.clause)} violated by {rule.id}"
        )
        lines.extend(_witness_lines(w))
    print("\n".join(lines))
    return 0 if verdict.holds else 1


def _cmd_hunt(args) -> int:
    rule = _rule(args)
    axiom, strength = parse_axiom(args.axiom)
    if axiom in ("smwpi", "smwopi"):
        if strength not in ("strong", "weak"):
            raise _UsageError(f"axiom {axiom} needs a strong-/weak- prefix")
    elif axiom in MONOTONICITY_AXIOMS + REPRESENTATION_AXIOMS:
        if strength is not None:
            raise _UsageError(f"axiom {axiom} takes no strong-/weak- prefix")
    else:
        raise _UsageError(f"unknown axiom {args.axiom!r}")
    _resolve_jobs(args)

    ks = _parse_k_spec(args.k, args.max_candidates)
    try:
        bounds = GenerationBounds(
            args.max_voters,
            args.max_candidates,
            ks,
            _parse_fraction(args.p),
            args.seed,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None

    result = hunt(
        rule,
        args.axiom,
        bounds,
        budget=args.budget,
        exhaustive=args.exhaustive,
        max_instances=args.max_instances,
    )

    found = result.found
    shrunk = False
    if found is not None and args.shrink:
        election, witness = shrink(rule, found[0], found[1])
        found = (election, witness)
        shrunk = True

    payload = {
        "command": "hunt",
        "rule": rule.id,
        "axiom": args.axiom,
        "bounds": {
            "max_voters": bounds.n_max,
            "max_candidates": bounds.m_max,
            "k": list(bounds.k_range),
            "p": _frac_str(bounds.p),
            "seed": bounds.seed,
        },
        "exhaustive": args.exhaustive,
        "budget": args.budget,
        "found": found is not None,
        "instances": result.instances_checked,
        "evaluations": result.evaluations,
        "shrunk": shrunk,
        "witness": None,
    }
    lines = []
    if found is not None:
        election, witness = found
        if isinstance(witness, MonotonicityWitness):
            payload["witness"] = _witness_json(witness)
            lines.append(
                _axiom_phrase(witness.axiom, witness.strength, witness.clause)
                + f" violated by {rule.id}"
            )
            lines.extend(_witness_lines(witness))
        else:
            payload["witness"] = _rep_verdict_json(election, witness)
            lines.append(f"{rule.id} violates {witness.axiom}")
            lines.extend(_rep_verdict_lines(election, witness))
        head = (
            f"violation found after {result.instances_checked} instances"
            f" ({result.evaluations} rule evaluations)"
        )
        if shrunk:
            head += f", shrunk to {election.n} voters x {election.m} candidates"
        lines.insert(0, head)
    else:
        lines.append(
            f"no violation found: {result.instances_checked} instances,"
            f" {result.evaluations} rule evaluations"
        )

    if args.format == "json":
        _print_json(payload)
    else:
        print("\n".join(lines))
    return 1 if found is not None else 0


def _cmd_reproduce(args) -> int:
    _resolve_jobs(args)
    if args.fixture == "all":
        ids = FIXTURE_IDS
    else:
        try:
            get_fixture(args.fixture)
        except KeyError as exc:
            raise _UsageError(exc.args[0]) from None
        ids = (args.fixture,)

    reports = [run_fixture(fid) for fid in ids]
    ok = all(r.ok for r in reports)

    if args.format == "json":
        _print_json(
            {
                "command": "reproduce",
                "ok": ok,
                "fixtures": [
                    {
                        "id": r.fixture_id,
                        "source": r.source,
                        "ok": r.ok,
                        "checks": [
                            {
                                "description": c.description,
                                "ok": c.ok,
                                "expected": _jsonable(c.expected),
                                "actual": _jsonable(c.actual),
                            }
                            for c in r.checks
                        ],
                    }
                    for r in reports
                ],
            }
        )
        return 0 if ok else 1

    for r in reports:
        mark = "pass" if r.ok else "FAIL"
        print(f"{r.fixture_id:4} {mark}  {len(r.checks)} checks")
        if args.verbose and r.ok:
            for c in r.checks:
                print(f"       ok: {c.description}")
        for c in r.checks:
            if not c.ok:
                print(f"   !! {c.description}")
                print(f"      expected: {_jsonable(c.expected)}")
                print(f"      actual:   {_jsonable(c.actual)}")
    passed = sum(1 for r in reports if r.ok)
    print(f"{passed}/{len(reports)} fixtures pass")
    return 0 if ok else 1


def _cmd_list_fixtures(args) -> int:
    catalog = list_fixtures()
    if args.format == "json":
        _print_json(
            {
                "command": "list-fixtures",
                "fixtures": [{"id": fid, "source": src} for fid, src in catalog],
            }
        )
        return 0
    for fid, src in catalog:
        print(f"{fid:4} {src}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common(sub, *, jobs: bool = False) -> None:
    sub.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format (default: text)",
    )
    sub.add_argument(
        "-v", "--verbose", action="store_true", help="extra detail in text output"
    )
    if jobs:
        sub.add_argument(
            "--jobs",
            type=int,
            default=None,
            metavar="N",
            help="worker cap (default: AMW_JOBS, then 1); output is identical"
            " for every value",
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amw",
        description="Exact multiwinner approval voting: rules, axioms, hunts.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("compute", help="winning committees of a rule on an election")
    p.add_argument("--rule", required=True, help=f"one of: {', '.join(RULE_IDS)}")
    p.add_argument("--ties", choices=("put", "lex"), default="put",
                   help="sequential-rule tie policy (default: put = all paths)")
    p.add_argument("election", help="election file (.abme text; '-' for stdin)")
    _add_common(p)
    p.set_defaults(func=_cmd_compute)

    p = subs.add_parser("axioms", help="representation axioms on a committee or rule")
    p.add_argument("--election", required=True, help="election file")
    p.add_argument("--check", required=True, choices=("jr", "pjr", "ejr", "pr"))
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--committee", help="comma-separated candidate names")
    group.add_argument("--rule", help="check every winning committee of this rule")
    p.add_argument("--ties", choices=("put", "lex"), default="put")
    _add_common(p)
    p.set_defaults(func=_cmd_axioms)

    p = subs.add_parser("monotonic", help="support/committee monotonicity on one election")
    p.add_argument("--rule", required=True)
    p.add_argument(
        "--axiom",
        required=True,
        help="strong-smwpi, weak-smwpi, strong-smwopi, weak-smwopi,"
        " candidate-monotonicity, or committee-monotonicity",
    )
    p.add_argument("--election", required=True, help="election file")
    p.add_argument("--k-to", type=int, default=None, metavar="K",
                   help="top size for committee-monotonicity (default: k+1)")
    p.add_argument("--ties", choices=("put", "lex"), default="put")
    _add_common(p)
    p.set_defaults(func=_cmd_monotonic)

    p = subs.add_parser("hunt", help="search bounded instance space for a violation")
    p.add_argument("--rule", required=True)
    p.add_argument("--axiom", required=True,
                   help="monotonicity or representation axiom (jr, pjr, ejr, pr)")
    p.add_argument("--max-voters", type=int, required=True, metavar="N")
    p.add_argument("--max-candidates", type=int, required=True, metavar="M")
    p.add_argument("--k", default="1", metavar="SPEC",
                   help='committee sizes: "3", "2..4", or "1,3" (default: 1)')
    p.add_argument("--p", default="1/2", metavar="FRAC",
                   help="per-candidate approval probability (default: 1/2)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=100_000,
                   help="max rule evaluations on mutated elections")
    p.add_argument("--exhaustive", action="store_true",
                   help="sweep isomorphism classes up to the bounds instead of sampling")
    p.add_argument("--max-instances", type=int, default=None, metavar="N",
                   help="cap on sampled instances (random mode)")
    p.add_argument("--shrink", action="store_true",
                   help="minimize the found violation before reporting")
    p.add_argument("--ties", choices=("put", "lex"), default="put")
    _add_common(p, jobs=True)
    p.set_defaults(func=_cmd_hunt)

    p = subs.add_parser("reproduce", help="re-run bundled scenarios against frozen outcomes")
    p.add_argument("--fixture", required=True, metavar="ID",
                   help="a fixture id (F1..F16) or 'all'")
    _add_common(p, jobs=True)
    p.set_defaults(func=_cmd_reproduce)

    p = subs.add_parser("list-fixtures", help="catalog of bundled scenarios")
    _add_common(p)
    p.set_defaults(func=_cmd_list_fixtures)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except _InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
