"""Representation axioms: optimized candidate-set scans vs subset sweeps."""

import pytest
from hypothesis import given, settings

from amw.core import Election, election_from_names, enumerate_committees
from amw.representation import (
    BRUTE_CHECKS,
    CHECKS,
    check_ejr,
    check_jr,
    check_jr_bruteforce,
    check_pjr,
    check_pr,
    is_cohesive,
    pr_committees,
    provides_pr,
    rule_respects_pr_on,
    rule_satisfies_on,
)
from amw.rules import get_rule
from strategies import elections

E = election_from_names


def violates(e, w, axiom, voters, level):
    """Independent re-statement of what a violating group means."""
    wset = set(w)
    if axiom == "jr":
        return all(not e.ballots[v] & wset for v in voters)
    if axiom == "pjr":
        union = set()
        for v in voters:
            union |= e.ballots[v] & wset
        return len(union) < level
    return all(len(e.ballots[v] & wset) < level for v in voters)


@settings(max_examples=200, deadline=None)
@given(elections(max_n=7, max_m=5))
def test_optimized_checks_agree_with_subset_sweeps(e):
    for w in enumerate_committees(e.m, e.k):
        for axiom in ("jr", "pjr", "ejr"):
            fast = CHECKS[axiom](e, w)
            brute = BRUTE_CHECKS[axiom](e, w)
            assert fast.holds == brute.holds, (axiom, w)
            for verdict in (fast, brute):
                if verdict.holds:
                    continue
                g = verdict.witness
                assert is_cohesive(e, g.voters, g.level)
                assert len(g.common) >= (1 if axiom == "jr" else g.level)
                assert all(set(g.common) <= e.ballots[v] for v in g.voters)
                assert violates(e, w, axiom, g.voters, g.level)


@settings(max_examples=200, deadline=None)
@given(elections(max_n=8, max_m=5))
def test_ejr_implies_pjr_implies_jr(e):
    for w in enumerate_committees(e.m, e.k):
        if not check_jr(e, w).holds:
            assert not check_pjr(e, w).holds
        if not check_pjr(e, w).holds:
            assert not check_ejr(e, w).holds


def test_is_cohesive_uses_the_exact_rational_threshold():
    # n=5, k=2: a 1-cohesive group needs size >= 5/2, i.e. 3 voters
    e = E("ab", [["a"], ["a"], ["a"], ["b"], ["b"]], 2)
    assert not is_cohesive(e, (0, 1), 1)
    assert is_cohesive(e, (0, 1, 2), 1)
    assert not is_cohesive(e, (0, 1, 3), 1)  # no common candidate
    assert not is_cohesive(e, (), 1)
    assert not is_cohesive(e, (0, 1, 2), 0)
    assert not is_cohesive(e, (0, 1, 2), 3)  # level beyond k
    # duplicates collapse: {0,0,1} is the size-2 group
    assert not is_cohesive(e, (0, 0, 1), 1)


def test_jr_known_split():
    e = E("abc", [["a"], ["a"], ["b"], ["c"]], 2)
    assert check_jr(e, (0, 1)).holds
    assert check_jr(e, (0, 2)).holds
    bad = check_jr(e, (1, 2))  # the two a-voters are abandoned
    assert not bad.holds
    assert bad.witness.voters == (0, 1)
    assert bad.witness.common == (0,)
    assert bad.witness.level == 1


def test_pjr_and_ejr_counts_at_higher_levels():
    # four voters share {a,b}; k=2, so they are 2-cohesive and need both seats
    e = E("abcd", [["a", "b"], ["a", "b"], ["a", "b"], ["a", "b"]], 2)
    assert check_pjr(e, (0, 1)).holds
    assert check_ejr(e, (0, 1)).holds
    one_seat = check_pjr(e, (0, 2))
    assert not one_seat.holds
    assert one_seat.witness.level == 2
    assert not check_ejr(e, (0, 2)).holds
    # half the voters share {a,b}, the rest are on c: 1 seat is enough for pjr
    e2 = E("abc", [["a", "b"], ["a", "b"], ["c"], ["c"]], 2)
    assert check_pjr(e2, (0, 2)).holds
    assert check_ejr(e2, (0, 2)).holds
    # ejr separates from pjr: voters 0 and 1 are 2-cohesive (common {a,b})
    # and together touch two committee members, yet each alone touches one
    e3 = E(
        "abcdef",
        [["a", "b", "c"], ["a", "b", "d"], ["e"], ["f"]],
        4,
    )
    w3 = (2, 3, 4, 5)  # {c, d, e, f}
    assert check_pjr(e3, w3).holds
    got_ejr = check_ejr(e3, w3)
    assert not got_ejr.holds
    assert got_ejr.witness.level == 2
    assert got_ejr.witness.voters == (0, 1)


def test_committee_argument_validation():
    e = E("abc", [["a"]], 2)
    with pytest.raises(ValueError, match="size"):
        check_jr(e, (0,))
    with pytest.raises(ValueError, match="size"):
        check_ejr(e, (0, 0))
    with pytest.raises(ValueError, match="size"):
        check_pjr(e, (0, 9))


def test_bruteforce_guard():
    big = Election(("a", "b"), (frozenset({0}),) * 17, 1)
    with pytest.raises(ValueError, match="too large"):
        check_jr_bruteforce(big, (0,))


# ---------------------------------------------------------------------------
# Perfect representation
# ---------------------------------------------------------------------------


def test_pr_committees_known_election():
    e = E("abc", [["a", "b"], ["a", "b"], ["a", "c"], ["a", "c"], ["b"], ["c"]], 2)
    assert pr_committees(e) == ((1, 2),)
    assert provides_pr(e, (1, 2))
    assert not provides_pr(e, (0, 1))
    verdict = check_pr(e, (1, 2))
    assert verdict.holds
    assert verdict.assignment is not None
    assert check_pr(e, (0, 1)).assignment is None


def test_pr_entry_points_require_divisibility():
    e = E("ab", [["a"], ["a"], ["b"]], 2)
    with pytest.raises(ValueError, match="needs k"):
        pr_committees(e)
    with pytest.raises(ValueError, match="needs k"):
        check_pr(e, (0, 1))
    with pytest.raises(ValueError, match="needs k"):
        rule_respects_pr_on(e, get_rule("av"))


# ---------------------------------------------------------------------------
# Rule-level dispatch
# ---------------------------------------------------------------------------


def test_av_fails_jr_where_cc_passes():
    # the two c-voters form a cohesive group that av leaves unrepresented
    e = E(
        "abcd",
        [["a", "b", "d"], ["a", "b", "d"], ["a", "b", "d"], ["a", "b", "d"], ["c"], ["c"]],
        3,
    )
    got = rule_satisfies_on(e, get_rule("av"), "jr")
    assert not got.holds
    assert got.offender == (0, 1, 3)
    assert got.offender_verdict.witness.voters == (4, 5)
    assert rule_satisfies_on(e, get_rule("cc"), "jr").holds


def test_rule_satisfies_on_rejects_unknown_axioms():
    e = E("ab", [["a"]], 1)
    with pytest.raises(KeyError, match="unknown representation axiom"):
        rule_satisfies_on(e, get_rule("av"), "proportionality")


def test_rule_respects_pr_on_flags_av_and_exonerates_the_vacuous_case():
    # two a-blocs and one b-voter: av elects the a-trio, but nine committees
    # with two a's and one b provide pr
    e = E(
        ["a1", "a2", "a3", "b1", "b2", "b3"],
        [["a1", "a2", "a3"], ["a1", "a2", "a3"], ["b1", "b2", "b3"]],
        3,
    )
    got = rule_respects_pr_on(e, get_rule("av"))
    assert not got.holds
    assert got.offender == (0, 1, 2)
    assert rule_satisfies_on(e, get_rule("av"), "pr") == got
    # no committee at all provides pr: the axiom is vacuous, any rule passes
    vac = E("abc", [["a"], ["a"], ["b"]], 3)
    assert rule_respects_pr_on(vac, get_rule("av")).holds


def test_rule_respects_pr_on_accepts_a_pr_choosing_rule():
    e = E("abc", [["a", "b"], ["a", "b"], ["a", "c"], ["a", "c"], ["b"], ["c"]], 2)
    assert rule_respects_pr_on(e, get_rule("cc-prties")).holds
