"""Multiwinner voting rules over approval ballots.

Every rule maps an election to the set of ALL tied winning committees,
canonically ordered, because the axiom checkers reason about complete tie
sets, not about one arbitrary resolution. Optimisation rules also report
their exact objective value.

The four classic scoring rules (av, sav, cc, pav) are implemented directly,
each with its own combinatorics; a generic counting-function engine computes
the same family from an (x, y) table and is kept as an independent route so
the two can be cross-checked against each other, never merged.

Sequential rules (seqpav, seqphragmen) support two tie policies:
"put" explores every way of breaking every intermediate tie and returns all
reachable final committees; "lex" always takes the lowest candidate index.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Iterable

from .core import (
    Committee,
    Election,
    ballot_masks,
    canonical_committees,
    enumerate_committees,
    mask_counts,
)
from .solvers import (
    InfeasibleCommittee,
    evenness_profile,
    min_max_value,
    monroe_min_misrep,
    monroe_misrep_lower_bound,
    pr_assignment,
)


@dataclass(frozen=True)
class RuleOutcome:
    """All tied winning committees, deduplicated and canonically ordered."""

    committees: tuple[Committee, ...]

    def __post_init__(self):
        if not self.committees:
            raise ValueError("a rule outcome cannot be empty")
        if self.committees != canonical_committees(self.committees):
            raise ValueError("committees must be canonically ordered and unique")
        sizes = {len(w) for w in self.committees}
        if len(sizes) != 1:
            raise ValueError("tied committees must share one size")


@dataclass(frozen=True)
class ScoredOutcome:
    outcome: RuleOutcome
    objective: Fraction


RuleResult = RuleOutcome | ScoredOutcome


def winning_committees(result: RuleResult) -> tuple[Committee, ...]:
    if isinstance(result, ScoredOutcome):
        return result.outcome.committees
    return result.committees


def _outcome(committees: Iterable[Iterable[int]]) -> RuleOutcome:
    return RuleOutcome(canonical_committees(committees))


def _scored(committees: Iterable[Iterable[int]], objective) -> ScoredOutcome:
    return ScoredOutcome(_outcome(committees), Fraction(objective))


# ---------------------------------------------------------------------------
# Separable scores: top-k with every boundary-tie resolution
# ---------------------------------------------------------------------------


def _wmask(w: Committee) -> int:
    mask = 0
    for c in w:
        mask |= 1 << c
    return mask


def _top_k_committees(scores: list, k: int) -> tuple[list[Committee], Fraction]:
    order = sorted(range(len(scores)), key=lambda c: (-scores[c], c))
    threshold = scores[order[k - 1]]
    mandatory = [c for c in range(len(scores)) if scores[c] > threshold]
    boundary = [c for c in range(len(scores)) if scores[c] == threshold]
    need = k - len(mandatory)
    committees = [tuple(sorted(mandatory + list(extra))) for extra in combinations(boundary, need)]
    objective = Fraction(sum(scores[c] for c in mandatory) + need * threshold)
    return committees, objective


def av(e: Election) -> ScoredOutcome:
    """Approval voting: maximise the summed approval scores of the members."""
    scores = [0] * e.m
    for ballot in e.ballots:
        for c in ballot:
            scores[c] += 1
    committees, objective = _top_k_committees(scores, e.k)
    return ScoredOutcome(_outcome(committees), objective)


def sav(e: Election) -> ScoredOutcome:
    """Satisfaction approval voting: each ballot contributes |A ∩ W| / |A|."""
    scale = math.lcm(*range(1, e.m + 1))
    classes = [(bm, count * (scale // bm.bit_count())) for bm, count in mask_counts(e)]
    best: int | None = None
    winners: list[Committee] = []
    for w in enumerate_committees(e.m, e.k):
        wmask = _wmask(w)
        score = sum(unit * (bm & wmask).bit_count() for bm, unit in classes)
        if best is None or score > best:
            best, winners = score, [w]
        elif score == best:
            winners.append(w)
    assert best is not None
    return _scored(winners, Fraction(best, scale))


def mav(e: Election) -> ScoredOutcome:
    """Minimax approval voting: minimise the largest ballot-committee
    Hamming distance |A \\ W| + |W \\ A|. Multiplicities do not matter for
    a maximum, so only distinct ballots are scanned."""
    distinct = [bm for bm, _ in mask_counts(e)]
    best = None
    winners: list[Committee] = []
    for w in enumerate_committees(e.m, e.k):
        wmask = _wmask(w)
        worst = max(
            e.k + bm.bit_count() - 2 * (bm & wmask).bit_count() for bm in distinct
        )
        if best is None or worst < best:
            best, winners = worst, [w]
        elif worst == best:
            winners.append(w)
    assert best is not None
    return _scored(winners, best)


def cc(e: Election) -> ScoredOutcome:
    """Approval Chamberlin-Courant: minimise the number of voters approving
    no committee member (their misrepresentation is 1, everyone else's 0)."""
    classes = mask_counts(e)
    best = None
    winners: list[Committee] = []
    for w in enumerate_committees(e.m, e.k):
        wmask = _wmask(w)
        uncovered = sum(count for bm, count in classes if bm & wmask == 0)
        if best is None or uncovered < best:
            best, winners = uncovered, [w]
        elif uncovered == best:
            winners.append(w)
    assert best is not None
    return _scored(winners, best)


def cc_prties(e: Election) -> ScoredOutcome:
    """cc with ties broken toward committees admitting a perfect-representation
    partition (k groups of n/k voters, each unanimously approving its member).
    Only filters when k divides n and some tied winner qualifies."""
    base = cc(e)
    if e.n % e.k:
        return base
    keep = [w for w in base.outcome.committees if pr_assignment(e, w) is not None]
    if not keep:
        return base
    return ScoredOutcome(_outcome(keep), base.objective)


def pav(e: Election) -> ScoredOutcome:
    """Proportional approval voting: each ballot contributes the harmonic
    number H(|A ∩ W|) = 1 + 1/2 + ... + 1/|A ∩ W|. Scores are compared as
    integers scaled by lcm(1..k)."""
    scale = math.lcm(*range(1, e.k + 1))
    harmonic = [0]
    for j in range(1, e.k + 1):
        harmonic.append(harmonic[-1] + scale // j)
    classes = mask_counts(e)
    best: int | None = None
    winners: list[Committee] = []
    for w in enumerate_committees(e.m, e.k):
        wmask = _wmask(w)
        score = sum(count * harmonic[(bm & wmask).bit_count()] for bm, count in classes)
        if best is None or score > best:
            best, winners = score, [w]
        elif score == best:
            winners.append(w)
    assert best is not None
    return _scored(winners, Fraction(best, scale))


def monroe(e: Election) -> ScoredOutcome:
    """Monroe: minimise balanced-assignment misrepresentation (see solvers)."""
    best: int | None = None
    evaluated: list[tuple[int, Committee]] = []
    for w in enumerate_committees(e.m, e.k):
        lb = monroe_misrep_lower_bound(e, w)
        if best is not None and lb > best:
            continue
        value, _ = monroe_min_misrep(e, w)
        evaluated.append((value, w))
        if best is None or value < best:
            best = value
    winners = [w for value, w in evaluated if value == best]
    assert best is not None
    return _scored(winners, best)


def max_phragmen(e: Election) -> ScoredOutcome:
    """Leximax-Phragmén: spread one unit of load per member over its
    approvers; prefer the committee whose most-even optimal distribution has
    the lexicographically smallest sorted load vector. The objective reported
    is that vector's head, the minimum achievable maximum voter load.

    Committees containing a zero-approval candidate carry no distribution at
    all and are excluded; if fewer than k candidates are approved anywhere,
    the rule is undefined for the election.
    """
    approved = [c for c in range(e.m) if any(c in b for b in e.ballots)]
    if len(approved) < e.k:
        raise InfeasibleCommittee(
            f"only {len(approved)} candidates are approved at all, committee needs {e.k}"
        )
    # committees with a larger minimum maximum load can never win the
    # lexicographic comparison, so the full profile is only computed for
    # those tied on that head value
    best_head = None
    shortlist: list[Committee] = []
    for w in combinations(approved, e.k):
        head = min_max_value(e, w)
        if best_head is None or head < best_head:
            best_head, shortlist = head, [w]
        elif head == best_head:
            shortlist.append(w)
    best_profile = None
    winners: list[Committee] = []
    for w in shortlist:
        profile = evenness_profile(e, w)
        if best_profile is None or profile < best_profile:
            best_profile, winners = profile, [w]
        elif profile == best_profile:
            winners.append(w)
    assert best_profile is not None
    return _scored(winners, best_profile[0])


# ---------------------------------------------------------------------------
# Sequential rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SequentialStep:
    chosen: int
    value: Fraction  # marginal score (seqpav) or the new approver load (seqphragmen)
    tied: tuple[int, ...]  # every candidate that could have been chosen here


@dataclass(frozen=True)
class SequentialTrace:
    steps: tuple[SequentialStep, ...]
    final_loads: tuple[Fraction, ...] | None = None

    @property
    def committee(self) -> Committee:
        return tuple(sorted(step.chosen for step in self.steps))

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(step.chosen for step in self.steps)

    @property
    def tie_free(self) -> bool:
        return all(len(step.tied) == 1 for step in self.steps)


_TRACE_CAP = 20_000


def _seqpav_tied(
    e: Election, classes, scale: int, wmask: int
) -> tuple[list[int], int]:
    best = -1
    tied: list[int] = []
    for c in range(e.m):
        if wmask >> c & 1:
            continue
        bit = 1 << c
        score = sum(
            count * (scale // (1 + (bm & wmask).bit_count()))
            for bm, count in classes
            if bm & bit
        )
        if score > best:
            best, tied = score, [c]
        elif score == best:
            tied.append(c)
    return tied, best


def seq_pav_traces(e: Election, ties: str = "put") -> tuple[SequentialTrace, ...]:
    """Every selection path (or the lowest-index one under ties="lex")."""
    classes = mask_counts(e)
    scale = math.lcm(*range(1, e.k + 1))
    traces: list[SequentialTrace] = []

    def rec(wmask: int, steps: tuple[SequentialStep, ...]) -> None:
        if len(steps) == e.k:
            traces.append(SequentialTrace(steps))
            return
        tied, best = _seqpav_tied(e, classes, scale, wmask)
        value = Fraction(best, scale)
        branch = tied[:1] if ties == "lex" else tied
        for c in branch:
            if len(traces) >= _TRACE_CAP:
                raise RuntimeError(f"more than {_TRACE_CAP} selection paths")
            rec(wmask | 1 << c, steps + (SequentialStep(c, value, tuple(tied)),))

    rec(0, ())
    return tuple(traces)


def seq_pav(e: Election, ties: str = "put") -> RuleOutcome:
    """Sequential proportional approval voting: k greedy additions, each
    maximising the summed marginal scores 1 / (1 + |A ∩ W|) over approvers."""
    _check_ties(ties)
    classes = mask_counts(e)
    scale = math.lcm(*range(1, e.k + 1))
    finals: set[Committee] = set()
    seen: set[int] = set()

    def rec(wmask: int, size: int) -> None:
        if size == e.k:
            finals.add(tuple(c for c in range(e.m) if wmask >> c & 1))
            return
        tied, _ = _seqpav_tied(e, classes, scale, wmask)
        for c in tied[:1] if ties == "lex" else tied:
            nxt = wmask | 1 << c
            if nxt not in seen:
                seen.add(nxt)
                rec(nxt, size + 1)

    rec(0, 0)
    return _outcome(finals)


class _PhragmenState:
    """Ballot-class view of an election for the sequential Phragmén scan.

    Voters with identical ballots always carry identical loads (they gain
    load exactly when their common ballot contains the chosen candidate),
    so loads are tracked per distinct ballot."""

    def __init__(self, e: Election) -> None:
        self.e = e
        self.classes = mask_counts(e)
        self.weights = [
            sum(count for bm, count in self.classes if bm >> c & 1) for c in range(e.m)
        ]
        if sum(1 for wgt in self.weights if wgt) < e.k:
            raise InfeasibleCommittee(
                f"only {sum(1 for wgt in self.weights if wgt)} candidates are"
                f" approved at all, committee needs {e.k}"
            )
        self.zero = tuple(Fraction(0) for _ in self.classes)

    def tied(self, loads, wmask: int) -> tuple[list[int], Fraction | None]:
        best: Fraction | None = None
        tied: list[int] = []
        for c in range(self.e.m):
            if wmask >> c & 1 or not self.weights[c]:
                continue
            bit = 1 << c
            carried = sum(
                count * loads[i]
                for i, (bm, count) in enumerate(self.classes)
                if bm & bit
            )
            s = (1 + carried) / self.weights[c]
            if best is None or s < best:
                best, tied = s, [c]
            elif s == best:
                tied.append(c)
        return tied, best

    def absorb(self, loads, c: int, s: Fraction) -> tuple[Fraction, ...]:
        bit = 1 << c
        return tuple(
            s if bm & bit else load
            for (bm, _), load in zip(self.classes, loads)
        )

    def voter_loads(self, loads) -> tuple[Fraction, ...]:
        by_mask = {bm: loads[i] for i, (bm, _) in enumerate(self.classes)}
        return tuple(by_mask[bm] for bm in ballot_masks(self.e))


def seq_phragmen_traces(e: Election, ties: str = "put") -> tuple[SequentialTrace, ...]:
    st = _PhragmenState(e)
    traces: list[SequentialTrace] = []

    def rec(wmask: int, loads, steps: tuple[SequentialStep, ...]) -> None:
        if len(steps) == e.k:
            traces.append(SequentialTrace(steps, final_loads=st.voter_loads(loads)))
            return
        tied, s = st.tied(loads, wmask)
        assert s is not None
        # selection loads never decrease along a branch
        if steps and s < steps[-1].value:
            raise RuntimeError("internal: selection load decreased")
        for c in tied[:1] if ties == "lex" else tied:
            if len(traces) >= _TRACE_CAP:
                raise RuntimeError(f"more than {_TRACE_CAP} selection paths")
            rec(wmask | 1 << c, st.absorb(loads, c, s),
                steps + (SequentialStep(c, s, tuple(tied)),))

    rec(0, st.zero, ())
    return tuple(traces)


def seq_phragmen(e: Election, ties: str = "put") -> RuleOutcome:
    """Sequential Phragmén: maintain per-voter loads, repeatedly elect the
    candidate whose approvers can absorb its unit of load with the smallest
    resulting common load s = (1 + current loads) / #approvers, resetting
    every approver's load to s."""
    _check_ties(ties)
    st = _PhragmenState(e)
    finals: set[Committee] = set()
    seen: set[tuple[int, tuple[Fraction, ...]]] = set()

    def rec(wmask: int, loads, size: int, last: Fraction | None) -> None:
        if size == e.k:
            finals.add(tuple(c for c in range(e.m) if wmask >> c & 1))
            return
        tied, s = st.tied(loads, wmask)
        assert s is not None
        if last is not None and s < last:
            raise RuntimeError("internal: selection load decreased")
        for c in tied[:1] if ties == "lex" else tied:
            state = (wmask | 1 << c, st.absorb(loads, c, s))
            if state not in seen:
                seen.add(state)
                rec(state[0], state[1], size + 1, s)

    rec(0, st.zero, 0, None)
    return _outcome(finals)


def _check_ties(ties: str) -> None:
    if ties not in ("put", "lex"):
        raise ValueError(f"ties must be 'put' or 'lex', got {ties!r}")


# ---------------------------------------------------------------------------
# Counting-function engine
# ---------------------------------------------------------------------------


class CountingFunction:
    """An exact score table f(x, y): x approved members on a ballot of size y.

    f must return int or Fraction (floats are rejected to keep everything
    exact) and must be monotone non-decreasing in x on the used grid; that
    contract is validated lazily up to the largest (k, |C|) seen.
    """

    def __init__(self, name: str, fn: Callable[[int, int], Fraction | int]):
        self.name = name
        self._fn = fn
        self._cache: dict[tuple[int, int], Fraction] = {}
        self._checked: tuple[int, int] = (0, 0)

    def value(self, x: int, y: int) -> Fraction:
        key = (x, y)
        got = self._cache.get(key)
        if got is None:
            raw = self._fn(x, y)
            if not isinstance(raw, (int, Fraction)):
                raise TypeError(f"counting function {self.name} returned {type(raw).__name__}, need int or Fraction")
            got = Fraction(raw)
            self._cache[key] = got
        return got

    def ensure_monotone(self, x_max: int, y_max: int) -> None:
        cx, cy = self._checked
        if x_max <= cx and y_max <= cy:
            return
        for y in range(1, y_max + 1):
            for x in range(1, min(x_max, y) + 1):
                if self.value(x, y) < self.value(x - 1, y):
                    raise ValueError(
                        f"counting function {self.name} decreases from x={x - 1} to x={x} at y={y}"
                    )
        self._checked = (max(cx, x_max), max(cy, y_max))


counting_av = CountingFunction("av", lambda x, y: x)
counting_sav = CountingFunction("sav", lambda x, y: Fraction(x, y))
counting_cc = CountingFunction("cc", lambda x, y: 1 if x else 0)
counting_pav = CountingFunction("pav", lambda x, y: sum((Fraction(1, j) for j in range(1, x + 1)), Fraction(0)))

COUNTING_FUNCTIONS: dict[str, CountingFunction] = {
    f.name: f for f in (counting_av, counting_sav, counting_cc, counting_pav)
}


def counting_rule(e: Election, f: CountingFunction) -> ScoredOutcome:
    """Generic engine: maximise sum of f(|A_i ∩ W|, |A_i|) over all voters.

    Scores are folded onto one integer scale (the lcm of every used cell's
    denominator), so the committee scan is pure integer arithmetic.
    """
    f.ensure_monotone(e.k, e.m)
    classes = Counter((bm, len(b)) for bm, b in zip(ballot_masks(e), e.ballots))
    sizes = {size for _, size in classes}
    cells = {(x, y): f.value(x, y) for y in sizes for x in range(0, min(e.k, y) + 1)}
    scale = math.lcm(*(v.denominator for v in cells.values())) if cells else 1
    weight = {cell: int(v * scale) for cell, v in cells.items()}
    best = None
    winners: list[Committee] = []
    for w in enumerate_committees(e.m, e.k):
        wmask = 0
        for c in w:
            wmask |= 1 << c
        score = sum(
            count * weight[(bm & wmask).bit_count(), size] for (bm, size), count in classes.items()
        )
        if best is None or score > best:
            best, winners = score, [w]
        elif score == best:
            winners.append(w)
    assert best is not None
    return _scored(winners, Fraction(best, scale))


@dataclass(frozen=True)
class CountingPropertyReport:
    """Grid report for the two hypotheses under which counting rules keep
    at least one supported group member after a ballot extension:
    (a) a ballot never scores more after growing by unapproved-by-W padding,
        f(x, y) >= f(x, y') for y <= y';
    (b) scores survive joint growth, f(x+z, y+z) >= f(x, y)."""

    smaller_ballots_never_worse: bool
    joint_growth_never_worse: bool
    counterexample_a: tuple[tuple[int, int], tuple[int, int]] | None
    counterexample_b: tuple[tuple[int, int], tuple[int, int]] | None

    @property
    def both(self) -> bool:
        return self.smaller_ballots_never_worse and self.joint_growth_never_worse


def counting_function_properties(f: CountingFunction, x_max: int, y_max: int) -> CountingPropertyReport:
    """Check both hypotheses on the grid 0 <= x <= y <= y_max, x <= x_max.

    Adjacent steps imply the general statements by chaining, so only
    (x, y) vs (x, y+1) and (x, y) vs (x+1, y+1) are examined."""
    bad_a = bad_b = None
    for y in range(1, y_max):
        for x in range(0, min(x_max, y) + 1):
            if bad_a is None and f.value(x, y) < f.value(x, y + 1):
                bad_a = ((x, y), (x, y + 1))
            if bad_b is None and x + 1 <= x_max and f.value(x + 1, y + 1) < f.value(x, y):
                bad_b = ((x, y), (x + 1, y + 1))
    return CountingPropertyReport(bad_a is None, bad_b is None, bad_a, bad_b)


# ---------------------------------------------------------------------------
# Deliberately non-monotone demonstration rules
# ---------------------------------------------------------------------------


def lone_supporter_rule(e: Election) -> ScoredOutcome:
    """Candidates score (#ballots approving exactly them) minus (#ballots
    approving them among others); committees maximise the summed score.
    Joining a multi-candidate ballot therefore HURTS every member of it,
    which breaks support monotonicity for added voters in the weakest sense.
    """
    scores = [0] * e.m
    for ballot in e.ballots:
        if len(ballot) == 1:
            (c,) = ballot
            scores[c] += 1
        else:
            for c in ballot:
                scores[c] -= 1
    committees, objective = _top_k_committees(scores, e.k)
    return ScoredOutcome(_outcome(committees), objective)


# The two 4-voter, 4-candidate, k=2 profiles (up to relabelling) on which
# av_with_trap deviates from av, and what it returns there. The deviation is
# rigged so that one specific ballot extension moves the outcome away from
# the extended group, breaking support monotonicity for extensions in the
# weakest sense while agreeing with av everywhere else.
_TRAP_CASES: tuple[tuple[tuple[frozenset[int], ...], tuple[frozenset[int], ...]], ...] = (
    (
        (frozenset({0, 1}), frozenset({2, 3}), frozenset({0, 2, 3}), frozenset({1, 2, 3})),
        (frozenset({0, 1}), frozenset({2, 3})),
    ),
    (
        (frozenset({0, 1}), frozenset({0, 1, 2, 3}), frozenset({0, 2, 3}), frozenset({1, 2, 3})),
        (frozenset({2, 3}),),
    ),
)


def av_with_trap(e: Election) -> RuleOutcome:
    """av everywhere, except on relabellings of the two trap profiles above."""
    if e.n == 4 and e.m == 4 and e.k == 2:
        ballots = Counter(e.ballots)
        for pattern, result in _TRAP_CASES:
            for perm in permutations(range(4)):
                mapped = Counter(frozenset(perm[c] for c in b) for b in pattern)
                if mapped == ballots:
                    return _outcome(tuple(perm[c] for c in w) for w in result)
    return av(e).outcome


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rule:
    """A named rule bound to its evaluation function and tie policy."""

    id: str
    objective_label: str | None
    ties: str | None = None
    _fn: Callable[[Election], RuleResult] = field(repr=False, default=None)  # type: ignore[assignment]

    def evaluate(self, e: Election) -> RuleResult:
        return self._fn(e)

    def committees(self, e: Election) -> tuple[Committee, ...]:
        return winning_committees(self._fn(e))


_SIMPLE_RULES: dict[str, tuple[Callable[[Election], RuleResult], str | None]] = {
    "av": (av, "score"),
    "sav": (sav, "score"),
    "mav": (mav, "maxdist"),
    "cc": (cc, "misrep"),
    "cc-prties": (cc_prties, "misrep"),
    "monroe": (monroe, "misrep"),
    "pav": (pav, "score"),
    "maxphragmen": (max_phragmen, "maxload"),
    "not-weak-smwpi": (lone_supporter_rule, "score"),
    "av-not-weak-smwopi": (av_with_trap, None),
}

RULE_IDS: tuple[str, ...] = (
    "av",
    "sav",
    "mav",
    "cc",
    "cc-prties",
    "monroe",
    "pav",
    "seqpav",
    "maxphragmen",
    "seqphragmen",
    "not-weak-smwpi",
    "av-not-weak-smwopi",
)


def get_rule(rule_id: str, ties: str = "put") -> Rule:
    """Look up a rule by its registry id. Ids are those in RULE_IDS plus
    "counting:<name>" for any registered counting function, e.g.
    "counting:pav". `ties` only affects the sequential rules."""
    _check_ties(ties)
    if rule_id in _SIMPLE_RULES:
        fn, label = _SIMPLE_RULES[rule_id]
        return Rule(rule_id, label, None, fn)
    if rule_id == "seqpav":
        return Rule(rule_id, None, ties, lambda e, t=ties: seq_pav(e, t))
    if rule_id == "seqphragmen":
        return Rule(rule_id, None, ties, lambda e, t=ties: seq_phragmen(e, t))
    if rule_id.startswith("counting:"):
        name = rule_id.split(":", 1)[1]
        if name not in COUNTING_FUNCTIONS:
            raise KeyError(
                f"unknown counting function {name!r}, have {sorted(COUNTING_FUNCTIONS)}"
            )
        f = COUNTING_FUNCTIONS[name]
        return Rule(rule_id, "score", None, lambda e, f=f: counting_rule(e, f))
    raise KeyError(f"unknown rule {rule_id!r}, have {', '.join(RULE_IDS)}")
