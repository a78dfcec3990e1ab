"""Exact-arithmetic toolkit for approval-based committee elections."""

from .core import (
    Committee,
    Election,
    ParseError,
    add_new_voter,
    election_from_names,
    enumerate_committees,
    extend_ballot,
    hamming,
    parse_election,
    serialize_election,
)
from .fixtures import FIXTURE_IDS, get_fixture, list_fixtures, run_fixture
from .monotonicity import (
    MonotonicityVerdict,
    MonotonicityWitness,
    check_candidate_monotonicity,
    check_committee_monotonicity,
    check_smwopi,
    check_smwpi,
    validate_witness,
)
from .representation import (
    check_ejr,
    check_jr,
    check_pjr,
    check_pr,
    pr_committees,
    provides_pr,
    rule_satisfies_on,
)
from .rules import RULE_IDS, Rule, get_rule
from .search import GenerationBounds, HuntResult, hunt, random_election, shrink
from .solvers import (
    InfeasibleCommittee,
    min_max_load,
    monroe_min_misrep,
    pr_assignment,
)

__all__ = [
    "Committee",
    "Election",
    "FIXTURE_IDS",
    "GenerationBounds",
    "HuntResult",
    "InfeasibleCommittee",
    "MonotonicityVerdict",
    "MonotonicityWitness",
    "ParseError",
    "RULE_IDS",
    "Rule",
    "add_new_voter",
    "check_candidate_monotonicity",
    "check_committee_monotonicity",
    "check_ejr",
    "check_jr",
    "check_pjr",
    "check_pr",
    "check_smwopi",
    "check_smwpi",
    "election_from_names",
    "enumerate_committees",
    "extend_ballot",
    "get_fixture",
    "get_rule",
    "hamming",
    "hunt",
    "list_fixtures",
    "min_max_load",
    "monroe_min_misrep",
    "parse_election",
    "pr_assignment",
    "pr_committees",
    "provides_pr",
    "random_election",
    "rule_satisfies_on",
    "run_fixture",
    "serialize_election",
    "shrink",
    "validate_witness",
]
