"""Generators, the violation hunter, and the witness shrinker."""

from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest

from amw.core import Election, add_new_voter, election_from_names
from amw.monotonicity import MonotonicityWitness, check_committee_monotonicity
from amw.monotonicity import validate_witness
from amw.rules import get_rule
from amw.search import (
    GenerationBounds,
    count_isomorphism_classes,
    enumerate_elections,
    hunt,
    parse_axiom,
    random_election,
    shrink,
)

E = election_from_names
F = Fraction


# ---------------------------------------------------------------------------
# Exhaustive enumeration vs a Burnside-lemma oracle
# ---------------------------------------------------------------------------


def burnside_classes(n: int, m: int) -> int:
    """Count profiles of n nonempty ballots over m candidates up to candidate
    relabeling, by averaging fixed multisets over all permutations. A multiset
    fixed by a permutation uses whole mask-cycles, so the fixed count is the
    x^n coefficient of prod over cycles of 1/(1 - x^len)."""
    total = 0
    for perm in permutations(range(m)):
        image = {}
        for mask in range(1, 1 << m):
            out = 0
            for c in range(m):
                if mask >> c & 1:
                    out |= 1 << perm[c]
            image[mask] = out
        seen: set[int] = set()
        lengths = []
        for mask in image:
            if mask in seen:
                continue
            length, cur = 0, mask
            while cur not in seen:
                seen.add(cur)
                cur = image[cur]
                length += 1
            lengths.append(length)
        dp = [1] + [0] * n
        for length in lengths:
            for j in range(length, n + 1):
                dp[j] += dp[j - length]
        total += dp[n]
    return total // factorial(m)


@pytest.mark.parametrize(
    "n,m", [(1, 1), (1, 2), (1, 3), (2, 2), (3, 2), (2, 3), (3, 3), (4, 3), (2, 4)]
)
def test_class_counts_match_burnside(n, m):
    assert count_isomorphism_classes(n, m) == burnside_classes(n, m)


def test_known_class_counts():
    assert count_isomorphism_classes(1, 2) == 2
    assert count_isomorphism_classes(2, 2) == 4
    assert count_isomorphism_classes(1, 3) == 3


def test_enumeration_yields_exact_sizes_and_canonical_forms():
    bounds = GenerationBounds(2, 3, (1, 2))
    seen = []
    for e in enumerate_elections(bounds):
        assert e.n == 2 and e.m == 3
        assert e.k in (1, 2)
        masks = tuple(sorted(sum(1 << c for c in b) for b in e.ballots))
        assert tuple(sum(1 << c for c in b) for b in e.ballots) == masks
        for perm in permutations(range(3)):
            relabeled = sorted(
                sum(1 << perm[c] for c in b) for b in e.ballots
            )
            assert tuple(relabeled) >= masks
        seen.append((masks, e.k))
    assert len(seen) == len(set(seen))
    assert len(seen) == 2 * burnside_classes(2, 3)


# ---------------------------------------------------------------------------
# Random generation vs the documented stream
# ---------------------------------------------------------------------------


def _splitmix_values(seed: int, index: int):
    mask = (1 << 64) - 1
    gamma = 0x9E3779B97F4A7C15
    state = (seed + (index + 1) * gamma) & mask
    while True:
        state = (state + gamma) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        yield z ^ (z >> 31)


def reference_random_election(bounds: GenerationBounds, index: int) -> Election:
    """Re-derives the draw from the documented algorithm, independently of
    the implementation's stream object."""
    values = _splitmix_values(bounds.seed, index)

    def below(b: int) -> int:
        return (next(values) * b) >> 64

    n = 1 + below(bounds.n_max)
    m_lo = min(bounds.k_range)
    m = m_lo + below(bounds.m_max - m_lo + 1)
    ks = [k for k in bounds.k_range if k <= m]
    k = ks[below(len(ks))]
    threshold = (bounds.p.numerator << 64) // bounds.p.denominator
    ballots = []
    for _ in range(n):
        while True:
            ballot = frozenset(c for c in range(m) if next(values) < threshold)
            if ballot:
                break
        ballots.append(ballot)
    names = tuple(f"c{j}" for j in range(1, m + 1))
    return Election(names, tuple(ballots), k)


def test_random_election_matches_documented_stream():
    bounds = GenerationBounds(5, 4, (1, 2, 3), p=F(1, 3), seed=42)
    for index in range(30):
        assert random_election(bounds, index) == reference_random_election(
            bounds, index
        )
    sparse = GenerationBounds(8, 6, (2,), p=F(1, 5), seed=2**63 + 11)
    for index in range(30):
        assert random_election(sparse, index) == reference_random_election(
            sparse, index
        )


def test_random_election_respects_bounds():
    bounds = GenerationBounds(6, 5, (2, 4), p=F(1, 2), seed=7)
    for index in range(200):
        e = random_election(bounds, index)
        assert 1 <= e.n <= 6
        assert 2 <= e.m <= 5
        assert e.k in (2, 4) and e.k <= e.m
        assert all(b for b in e.ballots)
    assert random_election(bounds, 3) == random_election(bounds, 3)
    with pytest.raises(ValueError, match="non-negative"):
        random_election(bounds, -1)


def test_generation_bounds_validation():
    with pytest.raises(ValueError, match="at least 1"):
        GenerationBounds(0, 3)
    with pytest.raises(ValueError, match="k_range"):
        GenerationBounds(3, 3, (0, 1))
    with pytest.raises(ValueError, match="k_range"):
        GenerationBounds(3, 2, (3,))
    with pytest.raises(ValueError, match="p must be"):
        GenerationBounds(3, 3, (1,), p=F(0))
    with pytest.raises(ValueError, match="p must be"):
        GenerationBounds(3, 3, (1,), p=F(1))
    with pytest.raises(ValueError, match="seed"):
        GenerationBounds(3, 3, (1,), seed=-1)
    with pytest.raises(ValueError, match="seed"):
        GenerationBounds(3, 3, (1,), seed=1 << 64)
    assert GenerationBounds(3, 3, (3, 1, 3)).k_range == (1, 3)


def test_parse_axiom():
    assert parse_axiom("strong-smwpi") == ("smwpi", "strong")
    assert parse_axiom("weak-smwopi") == ("smwopi", "weak")
    assert parse_axiom("jr") == ("jr", None)
    assert parse_axiom("committee-monotonicity") == ("committee-monotonicity", None)


# ---------------------------------------------------------------------------
# Hunting
# ---------------------------------------------------------------------------


def test_hunt_rejects_bad_axioms():
    av = get_rule("av")
    bounds = GenerationBounds(2, 2, (1,))
    with pytest.raises(ValueError, match="unknown axiom"):
        hunt(av, "flavor", bounds)
    with pytest.raises(ValueError, match="strength"):
        hunt(av, "smwpi", bounds)


def test_exhaustive_hunt_finds_the_first_jr_failure():
    # the first approval-voting jr failure in stream order is the fourth
    # two-voter three-candidate class {c1} / {c2 c3} at k=2: all committees
    # tie on score and {c2,c3} abandons the first voter. The cells visited
    # first (smallest spaces first) are (1,2):2, (2,2):4, (1,3):3, (3,2):6
    # classes, all jr-clean, then 4 classes into (2,3) -> 19 instances
    res = hunt(get_rule("av"), "jr", GenerationBounds(3, 3, (2,)), exhaustive=True)
    assert res.found is not None
    e, verdict = res.found
    assert res.instances_checked == 19
    assert res.evaluations == 19
    assert (e.n, e.m, e.k) == (2, 3, 2)
    assert sorted(e.ballots) in ([frozenset({0}), frozenset({1, 2})],)
    assert not verdict.holds
    assert verdict.offender == (1, 2)


def test_exhaustive_hunt_is_deterministic():
    runs = [
        hunt(get_rule("av"), "jr", GenerationBounds(3, 3, (2,)), exhaustive=True)
        for _ in range(2)
    ]
    assert runs[0].found == runs[1].found
    assert runs[0].instances_checked == runs[1].instances_checked
    assert runs[0].evaluations == runs[1].evaluations


def test_hunt_skips_pr_checks_when_k_does_not_divide_n():
    res = hunt(get_rule("av"), "pr", GenerationBounds(3, 3, (2,)), exhaustive=True)
    assert res.found is not None
    e, verdict = res.found
    assert verdict.axiom == "pr"
    assert (e.n, e.m) == (2, 3)
    # single-voter and three-voter instances are generated but never
    # evaluated (k=2 divides neither): only (2,2) and 4 classes of (2,3)
    assert res.instances_checked == 19
    assert res.evaluations == 8


def test_hunt_budget_stops_the_sweep():
    res = hunt(
        get_rule("av"),
        "jr",
        GenerationBounds(3, 3, (2,)),
        exhaustive=True,
        budget=5,
    )
    assert res.found is None
    assert res.instances_checked == 5
    assert res.evaluations == 5
    assert hunt(
        get_rule("av"), "jr", GenerationBounds(3, 3, (2,)), exhaustive=True, budget=0
    ).instances_checked == 0


def test_hunt_finds_committee_monotonicity_failure_with_one_probe_per_class():
    res = hunt(
        get_rule("mav"),
        "committee-monotonicity",
        GenerationBounds(5, 3, (1, 2)),
        exhaustive=True,
    )
    assert res.found is not None
    e, w = res.found
    assert res.instances_checked == 43
    assert (e.n, e.m, e.k) == (2, 3, 1)
    assert sorted(e.ballots) == [frozenset({0}), frozenset({1})]
    assert w.clause == "1"
    assert w.offender == (2,)
    assert w.election.k == 1 and w.mutated.k == 2
    assert validate_witness(get_rule("mav"), w)


def test_hunt_skips_elections_where_load_rules_are_undefined():
    # single-approved-candidate profiles make a size-2 committee impossible;
    # the hunter records them as zero-evaluation instances instead of dying
    res = hunt(
        get_rule("seqphragmen"),
        "strong-smwpi",
        GenerationBounds(2, 2, (2,)),
        exhaustive=True,
    )
    assert res.found is None
    assert res.instances_checked == 6
    assert 0 < res.evaluations < 6 * 4


def test_random_hunt_is_deterministic_and_bounded():
    bounds = GenerationBounds(4, 4, (2,), p=F(1, 2), seed=0)
    runs = [
        hunt(get_rule("av"), "jr", bounds, max_instances=300, budget=10_000)
        for _ in range(2)
    ]
    assert runs[0].found == runs[1].found
    assert runs[0].instances_checked == runs[1].instances_checked
    assert runs[0].found is not None
    e, verdict = runs[0].found
    assert not verdict.holds
    miss = hunt(get_rule("av"), "jr", bounds, max_instances=3, budget=10_000)
    assert miss.found is None
    assert miss.instances_checked == 3


def test_exhaustive_hunt_confirms_av_keeps_strong_smwopi_on_small_spaces():
    res = hunt(
        get_rule("av"),
        "strong-smwopi",
        GenerationBounds(4, 4, (1, 2, 3, 4)),
        exhaustive=True,
        budget=100_000,
    )
    assert res.found is None
    expected = sum(
        burnside_classes(n, m) * min(m, 4)
        for n in range(1, 5)
        for m in range(1, 5)
    )
    assert res.instances_checked == expected
    assert res.evaluations < 100_000  # completed, not cut off


def test_hunt_rediscovers_the_planted_weak_smwopi_failure():
    rule = get_rule("av-not-weak-smwopi")
    res = hunt(
        rule,
        "weak-smwopi",
        GenerationBounds(4, 4, (2,)),
        exhaustive=True,
        budget=200_000,
    )
    assert res.found is not None
    e, w = res.found
    assert w.axiom == "smwopi" and w.strength == "weak"
    assert validate_witness(rule, w)


# ---------------------------------------------------------------------------
# Shrinking
# ---------------------------------------------------------------------------


def test_shrink_removes_duplicate_voters_and_idle_candidates():
    rule = get_rule("mav")
    core = [["b"], ["c"], ["a", "b"], ["a", "c"]]
    padded = E("abcd", core + core, 1)
    verdict = check_committee_monotonicity(rule, padded, 1, 2)
    assert not verdict.holds
    small_e, small_w = shrink(rule, padded, verdict.witness)
    assert small_e == E(["b", "c", "d"], [["b"], ["c"]], 1)
    assert validate_witness(rule, small_w)
    assert small_w.offender == (2,)


def test_shrink_is_a_fixpoint_for_an_already_minimal_witness():
    rule = get_rule("mav")
    e = E("abc", [["a"], ["b"]], 1)
    verdict = check_committee_monotonicity(rule, e, 1, 2)
    assert not verdict.holds
    small_e, small_w = shrink(rule, e, verdict.witness)
    assert small_e == e
    assert validate_witness(rule, small_w)


def test_shrink_rejects_a_witness_that_never_validated():
    rule = get_rule("av")
    e = E("ab", [["a"], ["b"]], 1)
    mutated = add_new_voter(e, (0,))
    fake = MonotonicityWitness(
        axiom="smwpi",
        strength="weak",
        clause="i",
        group=(0,),
        voter=None,
        before=rule.committees(e),
        after=rule.committees(mutated),
        election=e,
        mutated=mutated,
    )
    with pytest.raises(RuntimeError, match="re-validation"):
        shrink(rule, e, fake)
