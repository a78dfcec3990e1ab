"""Election generation, axiom-violation hunting, and witness shrinking.

Exhaustive generation walks, for exact voter and candidate counts, one
representative per isomorphism class under candidate relabeling and voter
reordering. The canonical form of a profile is its ballot multiset, each
ballot encoded as a bitmask, sorted, minimized over all candidate
relabelings; a profile is emitted iff it already is its own canonical form.

Randomized generation is a pure function of (seed, index) built on a
splitmix-style stream so that draws reproduce across implementations:

    M     = 2**64                      (all arithmetic modulo M)
    GAMMA = 0x9E3779B97F4A7C15
    state(seed, index) = seed + (index + 1) * GAMMA
    each draw: state += GAMMA; z = state
               z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
               z = (z ^ (z >> 27)) * 0x94D049BB133111EB
               value = z ^ (z >> 31)
    draw below b: (value * b) >> 64
    approval draw: value < floor(p * 2**64)

Draw order: voter count (1 + below(n_max)), candidate count (uniform over
min(k_range)..m_max), k (uniform over the k_range entries <= m), then each
voter's ballot candidate by candidate, resampling empty ballots whole.

Hunting budgets count rule evaluations on mutated elections, the true cost
driver; every reported violation is re-validated through the public checker
entry points before it is returned.
"""

from __future__ import annotations

import math
import time
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, permutations

from .core import Election, election_from_names
from .monotonicity import (
    MonotonicityWitness,
    check_candidate_monotonicity,
    check_committee_monotonicity,
    check_smwopi,
    check_smwpi,
    smwopi_case,
    smwpi_case,
    validate_witness,
)
from .representation import RuleRepresentationVerdict, rule_satisfies_on
from .rules import Rule
from .solvers import InfeasibleCommittee

M64 = 1 << 64
_MASK64 = M64 - 1
_GAMMA = 0x9E3779B97F4A7C15

MONOTONICITY_AXIOMS = (
    "candidate-monotonicity",
    "smwpi",
    "smwopi",
    "committee-monotonicity",
)
REPRESENTATION_AXIOMS = ("jr", "pjr", "ejr", "pr")


@dataclass(frozen=True)
class GenerationBounds:
    """Instance-space bounds shared by the exhaustive and random generators.

    Ballots are drawn by approving each candidate independently with
    probability p; empty ballots are resampled. k_range lists the target
    committee sizes to emit (those exceeding a drawn m are skipped)."""

    n_max: int
    m_max: int
    k_range: tuple[int, ...] = (1,)
    p: Fraction = Fraction(1, 2)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_max < 1 or self.m_max < 1:
            raise ValueError("n_max and m_max must be at least 1")
        ks = tuple(sorted(set(self.k_range)))
        object.__setattr__(self, "k_range", ks)
        if not ks or ks[0] < 1 or ks[-1] > self.m_max:
            raise ValueError(f"k_range must be within [1, m_max], got {self.k_range}")
        p = Fraction(self.p)
        object.__setattr__(self, "p", p)
        if not 0 < p < 1:
            raise ValueError(f"p must be in (0,1), got {p}")
        if not 0 <= self.seed < M64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def _names(m: int) -> tuple[str, ...]:
    return tuple(f"c{j}" for j in range(1, m + 1))


def _from_masks(m: int, masks, k: int) -> Election:
    names = _names(m)
    ballots = [{names[c] for c in range(m) if mask >> c & 1} for mask in masks]
    return election_from_names(names, ballots, k)


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------

_PERM_TABLES: dict[int, list[list[int]]] = {}


def _perm_tables(m: int) -> list[list[int]]:
    """For each candidate permutation, the induced map on ballot bitmasks.
    The identity permutation is excluded: it never rejects a candidate."""
    if m not in _PERM_TABLES:
        tables = []
        for perm in permutations(range(m)):
            if perm == tuple(range(m)):
                continue
            table = [0] * (1 << m)
            for mask in range(1 << m):
                out = 0
                for c in range(m):
                    if mask >> c & 1:
                        out |= 1 << perm[c]
                table[mask] = out
            tables.append(table)
        _PERM_TABLES[m] = tables
    return _PERM_TABLES[m]


def _is_canonical(masks: tuple[int, ...], m: int) -> bool:
    for table in _perm_tables(m):
        if sorted(table[mask] for mask in masks) < list(masks):
            return False
    return True


def enumerate_elections(bounds: GenerationBounds):
    """Yield one Election per isomorphism class with exactly n_max voters
    and exactly m_max candidates (unapproved candidates allowed), repeated
    for each k in k_range that fits. Ballot multisets are nondecreasing
    bitmask tuples; only canonical ones (lex-min over relabelings) pass."""
    n, m = bounds.n_max, bounds.m_max
    ks = [k for k in bounds.k_range if k <= m]
    if not ks:
        return
    for masks in combinations_with_replacement(range(1, 1 << m), n):
        if not _is_canonical(masks, m):
            continue
        for k in ks:
            yield _from_masks(m, masks, k)


def count_isomorphism_classes(n: int, m: int) -> int:
    """Number of voter-candidate isomorphism classes at exactly (n, m)."""
    return sum(
        1
        for masks in combinations_with_replacement(range(1, 1 << m), n)
        if _is_canonical(masks, m)
    )


# ---------------------------------------------------------------------------
# Random generation
# ---------------------------------------------------------------------------


class _Stream:
    """The documented splitmix-style value stream for (seed, index)."""

    __slots__ = ("state",)

    def __init__(self, seed: int, index: int) -> None:
        self.state = (seed + (index + 1) * _GAMMA) & _MASK64

    def next64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return (self.next64() * bound) >> 64


_RESAMPLE_CAP = 10_000


def random_election(bounds: GenerationBounds, index: int) -> Election:
    """Deterministic draw `index` from the stream seeded by bounds.seed."""
    if index < 0:
        raise ValueError("index must be non-negative")
    stream = _Stream(bounds.seed, index)
    n = 1 + stream.below(bounds.n_max)
    m_lo = bounds.k_range[0]
    m = m_lo + stream.below(bounds.m_max - m_lo + 1)
    ks = [k for k in bounds.k_range if k <= m]
    k = ks[stream.below(len(ks))]
    threshold = (bounds.p.numerator << 64) // bounds.p.denominator
    masks = []
    for _ in range(n):
        for _attempt in range(_RESAMPLE_CAP):
            mask = 0
            for c in range(m):
                if stream.next64() < threshold:
                    mask |= 1 << c
            if mask:
                break
        else:
            raise RuntimeError("ballot resampling cap exceeded")
        masks.append(mask)
    return _from_masks(m, masks, k)


# ---------------------------------------------------------------------------
# Hunting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HuntResult:
    """Outcome of a hunt: the first validated violation, if any, plus the
    work accounting. `evaluations` counts rule evaluations on mutated
    elections (for representation axioms: one per election examined)."""

    found: tuple[Election, MonotonicityWitness | RuleRepresentationVerdict] | None
    instances_checked: int
    evaluations: int
    elapsed: float


def parse_axiom(token: str) -> tuple[str, str | None]:
    """Normalize an axiom token: "strong-smwpi" -> ("smwpi", "strong")."""
    for strength in ("strong", "weak"):
        prefix = strength + "-"
        if token.startswith(prefix):
            return token[len(prefix):], strength
    return token, None


def _check_instance(rule, axiom, strength, e, k_span):
    """Run one election through the checker for `axiom`. Returns
    (witness_or_none, evaluations). Elections on which the rule is
    undefined (infeasible at some probed committee size) cannot witness
    a violation and count as zero evaluations."""
    try:
        return _check_instance_inner(rule, axiom, strength, e, k_span)
    except InfeasibleCommittee:
        return None, 0


def _check_instance_inner(rule, axiom, strength, e, k_span):
    if axiom == "smwpi":
        v = check_smwpi(rule, e, strength)
        return v.witness, v.checked
    if axiom == "smwopi":
        v = check_smwopi(rule, e, strength)
        return v.witness, v.checked
    if axiom == "candidate-monotonicity":
        v = check_candidate_monotonicity(rule, e)
        return v.witness, v.checked
    if axiom == "committee-monotonicity":
        k_from, k_to = k_span
        k_hi = min(k_to, e.m)
        if k_from >= k_hi:
            return None, 0
        v = check_committee_monotonicity(rule, e, k_from, k_hi)
        return v.witness, v.checked
    # representation axioms ride on the rule's own outcome
    if axiom == "pr" and e.n % e.k:
        return None, 0
    verdict = rule_satisfies_on(e, rule, axiom)
    return (None if verdict.holds else verdict), 1


def _validate_found(rule, axiom, strength, e, witness, k_span) -> bool:
    if isinstance(witness, MonotonicityWitness):
        return validate_witness(rule, witness)
    redo, _ = _check_instance(rule, axiom, strength, e, k_span)
    return redo is not None and not redo.holds


def hunt(
    rule: Rule,
    axiom: str,
    bounds: GenerationBounds,
    *,
    strength: str | None = None,
    budget: int = 100_000,
    exhaustive: bool = False,
    max_instances: int | None = None,
) -> HuntResult:
    """Search the bounded instance space for a violation of `axiom` by
    `rule`. Exhaustive mode sweeps isomorphism classes for every (n, m)
    up to the bounds; random mode follows the seeded stream. Stops at the
    first validated violation, at `budget` mutated-election evaluations,
    or when the stream ends."""
    axiom, tok_strength = parse_axiom(axiom)
    strength = strength or tok_strength
    if axiom in ("smwpi", "smwopi"):
        if strength not in ("strong", "weak"):
            raise ValueError(f"axiom {axiom} needs strength 'strong' or 'weak'")
    elif axiom in MONOTONICITY_AXIOMS + REPRESENTATION_AXIOMS:
        strength = None
    else:
        raise ValueError(f"unknown axiom {axiom!r}")
    k_span = (min(bounds.k_range), max(bounds.k_range))

    start = time.monotonic()
    instances = 0
    evaluations = 0

    def finish(found):
        return HuntResult(found, instances, evaluations, time.monotonic() - start)

    for e in _instances(bounds, axiom, exhaustive, max_instances):
        if evaluations >= budget:
            break
        instances += 1
        witness, used = _check_instance(rule, axiom, strength, e, k_span)
        evaluations += used
        if witness is not None:
            if not _validate_found(rule, axiom, strength, e, witness, k_span):
                raise RuntimeError(f"found witness failed re-validation on {e}")
            return finish((e, witness))
    return finish(None)


def _instances(bounds, axiom, exhaustive, max_instances):
    if exhaustive:
        # Visit (n, m) cells smallest instance space first (ties: n, then m),
        # so minimal violations surface before any large cell is entered; the
        # first-found witness is therefore deterministic for fixed bounds.
        cells = sorted(
            (
                (n, m)
                for n in range(1, bounds.n_max + 1)
                for m in range(1, bounds.m_max + 1)
            ),
            key=lambda nm: (math.comb((1 << nm[1]) - 1 + nm[0] - 1, nm[0]), nm),
        )
        for n, m in cells:
            ks = tuple(k for k in bounds.k_range if k <= m)
            if not ks:
                continue
            if axiom == "committee-monotonicity":
                ks = ks[:1]  # one probe per profile; the checker spans k
            sub = GenerationBounds(n, m, ks, bounds.p, bounds.seed)
            yield from enumerate_elections(sub)
    else:
        limit = max_instances if max_instances is not None else 1 << 62
        for index in range(limit):
            yield random_election(bounds, index)


# ---------------------------------------------------------------------------
# Shrinking
# ---------------------------------------------------------------------------


def _drop_voters(e: Election, drop: frozenset[int]) -> Election | None:
    ballots = tuple(b for i, b in enumerate(e.ballots) if i not in drop)
    if not ballots:
        return None
    return Election(e.names, ballots, e.k)


def _voter_drop_plan(e: Election) -> Iterator[frozenset[int]]:
    """Voter-index sets worth trying to remove, biggest first.

    Voters with identical ballots are interchangeable, so bulk attempts
    keep one copy of each duplicated ballot (then half the copies), and
    the single-removal pass tries one representative per distinct ballot.
    Dropping any other member of a class yields the same ballot multiset,
    hence the same verdicts, so the plan still certifies a local minimum."""
    classes: dict[frozenset[int], list[int]] = {}
    for i, b in enumerate(e.ballots):
        classes.setdefault(b, []).append(i)
    for members in classes.values():
        q = len(members)
        if q > 1:
            yield frozenset(members[1:])
            if q > 2:
                yield frozenset(members[1 : 1 + q // 2])
    for members in classes.values():
        yield frozenset(members[:1])


def _drop_candidate(e: Election, cand: int) -> Election | None:
    if e.m - 1 < e.k:
        return None
    names = tuple(nm for j, nm in enumerate(e.names) if j != cand)
    ballots = []
    for b in e.ballots:
        nb = frozenset(c if c < cand else c - 1 for c in b if c != cand)
        if nb:
            ballots.append(nb)
    if not ballots:
        return None
    return Election(names, tuple(ballots), e.k)


def shrink(rule: Rule, election: Election, witness):
    """Greedy minimization: drop voters (duplicate-ballot blocks before
    single representatives), then candidates, then shrink G, re-validating
    after each step; repeats to a fixpoint where no single removal preserves
    the violation. Returns (election, witness) with the witness re-derived
    on the final election."""
    axiom, strength = _witness_axiom(witness)
    k_span = None
    if axiom == "committee-monotonicity":
        k_span = (witness.election.k, witness.mutated.k)

    def violation(e):
        span = k_span
        if span is not None:
            span = (span[0], min(span[1], e.m))
        w, _ = _check_instance(rule, axiom, strength, e, span)
        return w

    current, current_w = election, witness
    changed = True
    while changed:
        changed = False
        for drop in _voter_drop_plan(current):
            smaller = _drop_voters(current, drop)
            if smaller is None:
                continue
            w = violation(smaller)
            if w is not None:
                current, current_w, changed = smaller, w, True
                break
        if changed:
            continue
        for cand in range(current.m):
            smaller = _drop_candidate(current, cand)
            if smaller is None:
                continue
            w = violation(smaller)
            if w is not None:
                current, current_w, changed = smaller, w, True
                break
        if changed:
            continue
        current_w, shrunk = _shrink_group(rule, current, current_w, strength)
        changed = shrunk
    if not _validate_found(rule, axiom, strength, current, current_w,
                           k_span and (k_span[0], min(k_span[1], current.m))):
        raise RuntimeError("shrunk witness failed re-validation")
    return current, current_w


def _witness_axiom(witness):
    if isinstance(witness, MonotonicityWitness):
        return witness.axiom, witness.strength
    if isinstance(witness, RuleRepresentationVerdict):
        return witness.axiom, None
    raise TypeError(f"cannot shrink witness of type {type(witness).__name__}")


def _shrink_group(rule, e, witness, strength):
    """Try single-element removals of G on a monotonicity witness."""
    if not isinstance(witness, MonotonicityWitness):
        return witness, False
    if witness.axiom not in ("smwpi", "smwopi") or len(witness.group) <= 1:
        return witness, False
    for drop in witness.group:
        group = tuple(c for c in witness.group if c != drop)
        if witness.axiom == "smwpi":
            w, _ = smwpi_case(rule, e, group, strength)
            if w is not None:
                return w, True
        else:
            gset = set(group)
            for voter in range(e.n):
                if e.ballots[voter] & gset:
                    continue
                w, _ = smwopi_case(rule, e, group, voter, strength)
                if w is not None:
                    return w, True
    return witness, False
