"""Representation axioms: justified representation and its relatives.

A group of voters is l-cohesive when it holds at least l * n / k voters
(exact rational comparison, never floored) and jointly approves at least l
common candidates. The three group axioms ask, for every l and every
l-cohesive group, that the committee give the group:

* jr   (l = 1 only): some member approves some committee member;
* pjr: the union of the group's ballots meets the committee in >= l members;
* ejr: some single member approves >= l committee members.

Each check has an optimized path (enumerating candidate sets instead of the
2^n voter subsets) and an independent brute-force path used to validate it.
Perfect representation (pr) partitions the voters into k groups of exactly
n/k, each unanimously approving its own committee member; it is defined only
when k divides n, and every entry point raises otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Committee, Election, enumerate_committees
from .rules import Rule, winning_committees
from .solvers import PrAssignment, pr_assignment


@dataclass(frozen=True)
class CohesiveWitness:
    """An l-cohesive group violating a group axiom for some committee."""

    level: int
    voters: tuple[int, ...]
    common: tuple[int, ...]  # >= level candidates jointly approved


@dataclass(frozen=True)
class RepresentationVerdict:
    axiom: str  # "jr" | "pjr" | "ejr" | "pr"
    holds: bool
    witness: CohesiveWitness | None = None  # violating group, when one exists
    assignment: PrAssignment | None = None  # pr witness, when pr holds


def is_cohesive(e: Election, voters, level: int) -> bool:
    """Size at least level * n / k (exact) and >= level common candidates."""
    group = sorted(set(voters))
    if not group or not 1 <= level <= e.k:
        return False
    if len(group) * e.k < level * e.n:
        return False
    common = set(e.ballots[group[0]])
    for v in group[1:]:
        common &= e.ballots[v]
    return len(common) >= level


def _committee_set(e: Election, committee) -> frozenset[int]:
    w = frozenset(committee)
    if len(w) != e.k or any(not 0 <= c < e.m for c in w):
        raise ValueError(f"not a committee of size k={e.k}: {sorted(w)}")
    return w


# ---------------------------------------------------------------------------
# Optimized checks
# ---------------------------------------------------------------------------


def check_ejr(e: Election, committee) -> RepresentationVerdict:
    """For every l, it suffices to scan candidate l-sets T: the voters who
    approve all of T but fewer than l committee members form the largest
    possible violating group with common set containing T, so a violation
    exists iff one of these groups is large enough."""
    w = _committee_set(e, committee)
    for level in range(1, e.k + 1):
        for t in combinations(range(e.m), level):
            tset = set(t)
            group = [
                v
                for v, ballot in enumerate(e.ballots)
                if tset <= ballot and len(ballot & w) < level
            ]
            if len(group) * e.k >= level * e.n and group:
                return RepresentationVerdict(
                    "ejr", False, CohesiveWitness(level, tuple(group), t)
                )
    return RepresentationVerdict("ejr", True)


def check_jr(e: Election, committee) -> RepresentationVerdict:
    """jr is the level-1 slice of ejr: a group of >= n/k voters sharing an
    approved candidate, none of whom approves any committee member."""
    w = _committee_set(e, committee)
    for c in range(e.m):
        group = [v for v, ballot in enumerate(e.ballots) if c in ballot and not ballot & w]
        if len(group) * e.k >= e.n and group:
            return RepresentationVerdict("jr", False, CohesiveWitness(1, tuple(group), (c,)))
    return RepresentationVerdict("jr", True)


def check_pjr(e: Election, committee) -> RepresentationVerdict:
    """A violating group of minimum qualifying size ceil(l * n / k) exists
    iff, for some candidate l-set T and some (l-1)-subset U of the committee,
    at least that many T-approvers have their committee approvals inside U.
    (Any violating group embeds: T from its common set, U from its committee
    footprint; conversely the found voters form one.)"""
    w = _committee_set(e, committee)
    wt = tuple(sorted(w))
    for level in range(1, e.k + 1):
        need = -(-level * e.n // e.k)  # ceil, exact
        for t in combinations(range(e.m), level):
            tset = set(t)
            approvers = [v for v, ballot in enumerate(e.ballots) if tset <= ballot]
            if len(approvers) < need:
                continue
            for u in combinations(wt, level - 1):
                uset = set(u)
                inside = [v for v in approvers if e.ballots[v] & w <= uset]
                if len(inside) >= need:
                    group = tuple(inside[:need])
                    return RepresentationVerdict(
                        "pjr", False, CohesiveWitness(level, group, t)
                    )
    return RepresentationVerdict("pjr", True)


# ---------------------------------------------------------------------------
# Brute-force oracles: sweep every non-empty voter subset
# ---------------------------------------------------------------------------


def _bruteforce(e: Election, committee, axiom: str) -> RepresentationVerdict:
    w = _committee_set(e, committee)
    if e.n > 16:
        raise ValueError(f"brute-force subset sweep too large (n = {e.n})")
    for smask in range(1, 1 << e.n):
        voters = [v for v in range(e.n) if smask >> v & 1]
        common = set(e.ballots[voters[0]])
        union_w: set[int] = set()
        best_single = 0
        for v in voters:
            common &= e.ballots[v]
            union_w |= e.ballots[v] & w
            best_single = max(best_single, len(e.ballots[v] & w))
        for level in range(1, e.k + 1):
            if len(voters) * e.k < level * e.n or len(common) < level:
                continue
            if axiom == "jr":
                if level != 1:
                    continue  # jr only constrains 1-cohesive groups
                satisfied = bool(union_w)
            elif axiom == "pjr":
                satisfied = len(union_w) >= level
            else:
                satisfied = best_single >= level
            if not satisfied:
                return RepresentationVerdict(
                    axiom, False, CohesiveWitness(level, tuple(voters), tuple(sorted(common))[:level])
                )
    return RepresentationVerdict(axiom, True)


def check_jr_bruteforce(e: Election, committee) -> RepresentationVerdict:
    return _bruteforce(e, committee, "jr")


def check_pjr_bruteforce(e: Election, committee) -> RepresentationVerdict:
    return _bruteforce(e, committee, "pjr")


def check_ejr_bruteforce(e: Election, committee) -> RepresentationVerdict:
    return _bruteforce(e, committee, "ejr")


CHECKS = {"jr": check_jr, "pjr": check_pjr, "ejr": check_ejr}
BRUTE_CHECKS = {
    "jr": check_jr_bruteforce,
    "pjr": check_pjr_bruteforce,
    "ejr": check_ejr_bruteforce,
}


# ---------------------------------------------------------------------------
# Perfect representation
# ---------------------------------------------------------------------------


def provides_pr(e: Election, committee) -> bool:
    return pr_assignment(e, committee) is not None


def check_pr(e: Election, committee) -> RepresentationVerdict:
    got = pr_assignment(e, committee)
    return RepresentationVerdict("pr", got is not None, assignment=got)


def pr_committees(e: Election) -> tuple[Committee, ...]:
    """Every committee admitting a perfect-representation partition."""
    if e.n % e.k:
        raise ValueError(f"perfect representation needs k | n, got n={e.n}, k={e.k}")
    return tuple(w for w in enumerate_committees(e.m, e.k) if pr_assignment(e, w) is not None)


@dataclass(frozen=True)
class RuleRepresentationVerdict:
    """Whether every winning committee of a rule passes an axiom on one
    election. For pr the rule is off the hook when no committee at all
    provides pr there."""

    axiom: str
    holds: bool
    offender: Committee | None = None
    offender_verdict: RepresentationVerdict | None = None


def rule_satisfies_on(e: Election, rule: Rule, axiom: str) -> RuleRepresentationVerdict:
    """Evaluate `rule` on `e` and test every tied winner against `axiom`."""
    if axiom == "pr":
        return rule_respects_pr_on(e, rule)
    if axiom not in CHECKS:
        raise KeyError(f"unknown representation axiom {axiom!r}")
    for w in winning_committees(rule.evaluate(e)):
        verdict = CHECKS[axiom](e, w)
        if not verdict.holds:
            return RuleRepresentationVerdict(axiom, False, w, verdict)
    return RuleRepresentationVerdict(axiom, True)


def rule_respects_pr_on(e: Election, rule: Rule) -> RuleRepresentationVerdict:
    """A rule respects pr on an election if, whenever any committee provides
    pr, every winning committee does. Raises when k does not divide n."""
    if e.n % e.k:
        raise ValueError(f"perfect representation needs k | n, got n={e.n}, k={e.k}")
    offender = None
    for w in winning_committees(rule.evaluate(e)):
        if pr_assignment(e, w) is None:
            offender = w
            break
    if offender is None:
        return RuleRepresentationVerdict("pr", True)
    if not pr_committees(e):
        return RuleRepresentationVerdict("pr", True)
    return RuleRepresentationVerdict("pr", False, offender, RepresentationVerdict("pr", False))
