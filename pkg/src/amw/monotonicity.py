"""Support-insertion monotonicity checks.

All four axioms compare the winning committees before and after a support
insertion. Two mutation shapes exist: a brand-new voter approving exactly a
group G (committee-internal group, "with personal insertion" in the group
case is the opposite: see below), and an existing voter extending a ballot
disjoint from G by G. Concretely:

* candidate monotonicity: one candidate c gains one approval from a voter
  not yet approving c. Clause (i): if c was in some winning committee it
  must remain in some; clause (ii): if c was in every winning committee it
  must remain in every one.
* smwpi ("with personal insertion"): a new voter approving exactly G joins.
  Premise (i): G inside some winning committee; premise (ii): G inside all.
  Strong conclusions keep G inside (some / every) committee after; weak
  conclusions only require a non-empty intersection with (some / every)
  committee after.
* smwopi ("without personal insertion"): an existing voter with ballot
  disjoint from G extends it by G; premises and conclusions as above.
* committee monotonicity: no mutation, the target size grows from k to k+1.
  Condition (1): every winner at k extends to some winner at k+1;
  condition (2): every winner at k+1 contains some winner at k.

Checkers enumerate G over non-empty subsets of winning committees in
lexicographic order (and voters in ascending index, skipping duplicate
ballots, whose mutated elections coincide as multisets), so the reported
witness is deterministic. `checked` counts rule evaluations on mutated
elections, the currency hunting budgets are quoted in.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from itertools import combinations

from .core import Committee, Election, add_new_voter, extend_ballot
from .rules import Rule

AXIOMS = ("candidate-monotonicity", "smwpi", "smwopi", "committee-monotonicity")
STRENGTHS = ("strong", "weak")


@dataclass(frozen=True)
class MonotonicityWitness:
    """A concrete violation: both elections, both outcomes, and the clause
    that fails. `group` is G (or the single candidate), `voter` the extended
    voter when the mutation is an extension, `offender` the committee
    breaking an all-quantified clause when one is singled out."""

    axiom: str
    strength: str | None
    clause: str  # "i" / "ii", or "1" / "2" for committee monotonicity
    group: Committee | None
    voter: int | None
    before: tuple[Committee, ...]
    after: tuple[Committee, ...]
    election: Election
    mutated: Election
    offender: Committee | None = None


@dataclass(frozen=True)
class MonotonicityVerdict:
    axiom: str
    strength: str | None
    holds: bool
    witness: MonotonicityWitness | None
    checked: int  # rule evaluations on mutated elections


def _keeps(strength: str | None, group, committee) -> bool:
    g = set(group)
    w = set(committee)
    if strength == "weak":
        return bool(g & w)
    return g <= w  # strong; singleton groups make the two coincide


def _clause_violation(strength, group, before, after):
    """Return (clause, offender) for the first failing clause, else None."""
    g = set(group)
    if any(g <= set(w) for w in before):
        if not any(_keeps(strength, group, w) for w in after):
            return "i", None
    if all(g <= set(w) for w in before):
        for w in after:
            if not _keeps(strength, group, w):
                return "ii", w
    return None


def _subset_groups(winners: tuple[Committee, ...]) -> list[Committee]:
    groups: set[Committee] = set()
    for w in winners:
        for size in range(1, len(w) + 1):
            groups.update(combinations(w, size))
    return sorted(groups)


def _distinct_voters(e: Election, eligible) -> list[int]:
    """Ascending voter indices, one per distinct ballot among `eligible`."""
    seen: set[frozenset[int]] = set()
    out = []
    for v in eligible:
        if e.ballots[v] not in seen:
            seen.add(e.ballots[v])
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# Single-case probes (used by the checkers and by shrinking)
# ---------------------------------------------------------------------------


def smwpi_case(rule, e, group, strength, before=None):
    """Check one G for smwpi. Returns (witness_or_none, evaluations)."""
    if before is None:
        before = rule.committees(e)
    mutated = add_new_voter(e, group)
    after = rule.committees(mutated)
    hit = _clause_violation(strength, group, before, after)
    if hit is None:
        return None, 1
    clause, offender = hit
    return (
        MonotonicityWitness(
            "smwpi", strength, clause, tuple(sorted(group)), None,
            before, after, e, mutated, offender,
        ),
        1,
    )


def smwopi_case(rule, e, group, voter, strength, before=None):
    """Check one (G, voter) for smwopi. Returns (witness_or_none, evaluations)."""
    if before is None:
        before = rule.committees(e)
    mutated = extend_ballot(e, voter, group)
    after = rule.committees(mutated)
    hit = _clause_violation(strength, group, before, after)
    if hit is None:
        return None, 1
    clause, offender = hit
    return (
        MonotonicityWitness(
            "smwopi", strength, clause, tuple(sorted(group)), voter,
            before, after, e, mutated, offender,
        ),
        1,
    )


def candidate_case(rule, e, candidate, voter, before=None):
    if before is None:
        before = rule.committees(e)
    mutated = extend_ballot(e, voter, {candidate})
    after = rule.committees(mutated)
    hit = _clause_violation(None, (candidate,), before, after)
    if hit is None:
        return None, 1
    clause, offender = hit
    return (
        MonotonicityWitness(
            "candidate-monotonicity", None, clause, (candidate,), voter,
            before, after, e, mutated, offender,
        ),
        1,
    )


# ---------------------------------------------------------------------------
# Full checkers
# ---------------------------------------------------------------------------


def check_smwpi(rule: Rule, e: Election, strength: str = "strong") -> MonotonicityVerdict:
    _need_strength(strength)
    before = rule.committees(e)
    checked = 0
    for group in _subset_groups(before):
        witness, used = smwpi_case(rule, e, group, strength, before)
        checked += used
        if witness is not None:
            return MonotonicityVerdict("smwpi", strength, False, witness, checked)
    return MonotonicityVerdict("smwpi", strength, True, None, checked)


def check_smwopi(rule: Rule, e: Election, strength: str = "strong") -> MonotonicityVerdict:
    _need_strength(strength)
    before = rule.committees(e)
    checked = 0
    for group in _subset_groups(before):
        gset = set(group)
        eligible = [v for v in range(e.n) if not e.ballots[v] & gset]
        for voter in _distinct_voters(e, eligible):
            witness, used = smwopi_case(rule, e, group, voter, strength, before)
            checked += used
            if witness is not None:
                return MonotonicityVerdict("smwopi", strength, False, witness, checked)
    return MonotonicityVerdict("smwopi", strength, True, None, checked)


def check_candidate_monotonicity(rule: Rule, e: Election) -> MonotonicityVerdict:
    before = rule.committees(e)
    winners = sorted({c for w in before for c in w})
    checked = 0
    for c in winners:
        eligible = [v for v in range(e.n) if c not in e.ballots[v]]
        for voter in _distinct_voters(e, eligible):
            witness, used = candidate_case(rule, e, c, voter, before)
            checked += used
            if witness is not None:
                return MonotonicityVerdict(
                    "candidate-monotonicity", None, False, witness, checked
                )
    return MonotonicityVerdict("candidate-monotonicity", None, True, None, checked)


def check_committee_monotonicity(
    rule: Rule, e: Election, k_from: int, k_to: int
) -> MonotonicityVerdict:
    """Compare winners at consecutive sizes k_from..k_to on e's profile."""
    if not 1 <= k_from < k_to <= e.m:
        raise ValueError(f"need 1 <= k_from < k_to <= m, got {k_from}..{k_to}, m={e.m}")
    checked = 0
    prev_e = dataclasses.replace(e, k=k_from)
    prev = rule.committees(prev_e)
    checked += 1
    for k in range(k_from + 1, k_to + 1):
        cur_e = dataclasses.replace(e, k=k)
        cur = rule.committees(cur_e)
        checked += 1
        for w in prev:
            if not any(set(w) <= set(w2) for w2 in cur):
                witness = MonotonicityWitness(
                    "committee-monotonicity", None, "1", None, None,
                    prev, cur, prev_e, cur_e, w,
                )
                return MonotonicityVerdict(
                    "committee-monotonicity", None, False, witness, checked
                )
        for w2 in cur:
            if not any(set(w) <= set(w2) for w in prev):
                witness = MonotonicityWitness(
                    "committee-monotonicity", None, "2", None, None,
                    prev, cur, prev_e, cur_e, w2,
                )
                return MonotonicityVerdict(
                    "committee-monotonicity", None, False, witness, checked
                )
        prev_e, prev = cur_e, cur
    return MonotonicityVerdict("committee-monotonicity", None, True, None, checked)


def _need_strength(strength: str) -> None:
    if strength not in STRENGTHS:
        raise ValueError(f"strength must be one of {STRENGTHS}, got {strength!r}")


# ---------------------------------------------------------------------------
# Witness validation: everything in a witness is re-derivable
# ---------------------------------------------------------------------------


def validate_witness(rule: Rule, w: MonotonicityWitness) -> bool:
    """Re-run the rule on both elections and re-check the failing clause.

    Hunting and shrinking run every candidate witness through this before
    reporting it, so a stale or hand-edited witness cannot masquerade as a
    violation."""
    if w.axiom not in AXIOMS:
        return False
    if not _mutation_consistent(w):
        return False
    if rule.committees(w.election) != w.before:
        return False
    if rule.committees(w.mutated) != w.after:
        return False
    if w.axiom == "committee-monotonicity":
        if w.clause == "1":
            return w.offender in w.before and not any(
                set(w.offender) <= set(w2) for w2 in w.after
            )
        if w.clause == "2":
            return w.offender in w.after and not any(
                set(prev) <= set(w.offender) for prev in w.before
            )
        return False
    hit = _clause_violation(w.strength, w.group, w.before, w.after)
    if hit is None:
        return False
    # The recorded clause must itself fail, not just some clause.
    g = set(w.group)
    if w.clause == "i":
        return any(g <= set(x) for x in w.before) and not any(
            _keeps(w.strength, w.group, x) for x in w.after
        )
    if w.clause == "ii":
        return all(g <= set(x) for x in w.before) and not all(
            _keeps(w.strength, w.group, x) for x in w.after
        )
    return False


def _mutation_consistent(w: MonotonicityWitness) -> bool:
    e, mut = w.election, w.mutated
    if e.names != mut.names:
        return False
    if w.axiom == "committee-monotonicity":
        return mut.ballots == e.ballots and mut.k == e.k + 1
    if mut.k != e.k:
        return False
    gset = set(w.group or ())
    if not gset:
        return False
    if w.axiom == "smwpi":
        return (
            w.voter is None
            and mut.n == e.n + 1
            and mut.ballots[: e.n] == e.ballots
            and set(mut.ballots[e.n]) == gset
        )
    # extension mutations: smwopi and candidate-monotonicity
    if w.voter is None or not 0 <= w.voter < e.n or mut.n != e.n:
        return False
    for v in range(e.n):
        if v == w.voter:
            if e.ballots[v] & gset or mut.ballots[v] != e.ballots[v] | gset:
                return False
        elif mut.ballots[v] != e.ballots[v]:
            return False
    if w.axiom == "candidate-monotonicity" and len(gset) != 1:
        return False
    return True
