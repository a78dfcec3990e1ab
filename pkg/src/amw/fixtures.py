"""Frozen regression scenarios: small elections with exact expected outcomes.

Each fixture bundles one or more elections — written in the same text
format the CLI reads, with mutation chains spelled out step by step — and
the exact values the library must reproduce on them: full tied-committee
sets, rational objectives, perfect-representation committee lists, greedy
selection orders, optimal load values. Expectations are exact matches
(committee sets and rationals, never tolerances), so any drift in the
rules or solvers fails loudly.

The catalog ids F1..F16 are stable across releases; tests and the CLI
`reproduce` subcommand address fixtures by these ids.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import Election, add_new_voter, extend_ballot, parse_election
from .representation import pr_committees, provides_pr
from .rules import get_rule, seq_pav_traces, seq_phragmen_traces
from .solvers import min_max_load

__all__ = [
    "Expectation",
    "Fixture",
    "FixtureCheck",
    "FixtureReport",
    "FIXTURE_IDS",
    "get_fixture",
    "list_fixtures",
    "run_fixture",
]


@dataclass(frozen=True)
class Expectation:
    """One exact assertion: run `operation` with `arguments` on the election
    labelled `election` and compare against `expected`."""

    election: str
    operation: str
    arguments: tuple
    expected: object


@dataclass(frozen=True)
class Fixture:
    """A scenario: labelled election texts plus the expectations on them."""

    id: str
    source: str
    elections: tuple[tuple[str, str], ...]
    expectations: tuple[Expectation, ...]

    def election(self, label: str) -> Election:
        for lbl, text in self.elections:
            if lbl == label:
                return parse_election(text)
        raise KeyError(f"fixture {self.id} has no election {label!r}")


@dataclass(frozen=True)
class FixtureCheck:
    """One evaluated expectation with the exact expected and actual values."""

    description: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class FixtureReport:
    fixture_id: str
    source: str
    checks: tuple[FixtureCheck, ...]

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)


# ---------------------------------------------------------------------------
# Expectation interpreter
# ---------------------------------------------------------------------------


def _committee_names(e: Election, committees) -> tuple[tuple[str, ...], ...]:
    return tuple(tuple(e.names[c] for c in w) for w in committees)


def _set(names) -> str:
    return "{" + ",".join(names) + "}"


_TRACES = {"seqpav": seq_pav_traces, "seqphragmen": seq_phragmen_traces}


def _evaluate(exp: Expectation, elections: dict[str, Election]) -> FixtureCheck:
    e = elections[exp.election]
    op, args = exp.operation, exp.arguments

    if op == "committees":
        (rule_id,) = args
        actual = _committee_names(e, get_rule(rule_id).committees(e))
        desc = f"{rule_id} winning committees on {exp.election}"
    elif op == "objective":
        (rule_id,) = args
        result = get_rule(rule_id).evaluate(e)
        actual = result.objective  # sequential rules define no objective
        desc = f"{rule_id} objective on {exp.election}"
    elif op == "contains-committee":
        rule_id, names = args
        committee = e.committee_of_names(names)
        actual = committee in get_rule(rule_id).committees(e)
        desc = f"{rule_id} outputs {_set(names)} on {exp.election}"
    elif op == "tie-free-order":
        (rule_id,) = args
        traces = _TRACES[rule_id](e)
        if len(traces) == 1 and traces[0].tie_free:
            actual = tuple(e.names[c] for c in traces[0].order)
        else:
            actual = None
        desc = f"{rule_id} tie-free selection order on {exp.election}"
    elif op == "pr-committees":
        actual = _committee_names(e, pr_committees(e))
        desc = f"perfectly representative committees of {exp.election}"
    elif op == "provides-pr":
        (names,) = args
        actual = provides_pr(e, e.committee_of_names(names))
        desc = f"{_set(names)} perfectly represents {exp.election}"
    elif op == "min-max-load":
        (names,) = args
        actual = min_max_load(e, e.committee_of_names(names)).value
        desc = f"optimal max voter load of {_set(names)} on {exp.election}"
    elif op == "mutation":
        actual = _check_mutation(exp, elections)
        desc = _mutation_description(exp)
    else:
        raise ValueError(f"unknown fixture operation {op!r}")
    return FixtureCheck(desc, exp.expected, actual)


def _check_mutation(exp: Expectation, elections: dict[str, Election]) -> bool:
    """Apply the declared mutation to the base election and compare against
    the target text, as ballot multisets (voter order is never significant)."""
    base = elections[exp.election]
    kind = exp.arguments[0]
    target = elections[exp.arguments[1]]
    if kind == "add-voters":
        _, _, names, count = exp.arguments
        mutated = base
        for _ in range(count):
            mutated = add_new_voter(mutated, base.committee_of_names(names))
    else:
        _, _, selector, added = exp.arguments
        ballot = frozenset(base.committee_of_names(selector))
        voter = next(v for v, b in enumerate(base.ballots) if b == ballot)
        mutated = extend_ballot(base, voter, base.committee_of_names(added))
    return (
        mutated.names == target.names
        and mutated.k == target.k
        and Counter(mutated.ballots) == Counter(target.ballots)
    )


def _mutation_description(exp: Expectation) -> str:
    kind = exp.arguments[0]
    target = exp.arguments[1]
    if kind == "add-voters":
        _, _, names, count = exp.arguments
        noun = "voter" if count == 1 else f"{count} voters"
        return f"{target} is {exp.election} plus {noun} approving {_set(names)}"
    _, _, selector, added = exp.arguments
    return (
        f"{target} is {exp.election} with a {_set(selector)} ballot"
        f" extended by {_set(added)}"
    )


def run_fixture(fixture_id: str) -> FixtureReport:
    """Evaluate every expectation of one fixture; exact pass/fail per check."""
    fixture = get_fixture(fixture_id)
    elections = {label: parse_election(text) for label, text in fixture.elections}
    checks = tuple(_evaluate(exp, elections) for exp in fixture.expectations)
    return FixtureReport(fixture.id, fixture.source, checks)


def list_fixtures() -> tuple[tuple[str, str], ...]:
    """(id, scenario description) for every fixture, in id order."""
    return tuple((f.id, f.source) for f in _FIXTURES)


def get_fixture(fixture_id: str) -> Fixture:
    for fixture in _FIXTURES:
        if fixture.id == fixture_id:
            return fixture
    raise KeyError(f"unknown fixture {fixture_id!r}, have F1..F{len(_FIXTURES)}")


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------


def _addvoter(base: str, target: str, names: tuple[str, ...], count: int = 1) -> Expectation:
    return Expectation(base, "mutation", ("add-voters", target, names, count), True)


def _extend(base: str, target: str, selector: tuple[str, ...], added: tuple[str, ...]) -> Expectation:
    return Expectation(base, "mutation", ("extend-ballot", target, selector, added), True)


_F1 = Fixture(
    "F1",
    "pav: a supporter of two sitting winners widens their ballot and both"
    " leave the committee",
    (
        (
            "base",
            """
candidates: c1 c2 c3 c4 c5 c6 c7
k: 4
3: c1 c5
3: c1 c6
3: c1 c7
3: c2 c5
3: c2 c6
3: c2 c7
3: c3 c5
3: c3 c6
3: c3 c7
100: c4
1: c1 c2
1: c1 c2 c3
2: c5 c6
""",
        ),
        (
            "after",
            """
candidates: c1 c2 c3 c4 c5 c6 c7
k: 4
3: c1 c5
3: c1 c6
3: c1 c7
3: c2 c5
3: c2 c6
3: c2 c7
3: c3 c5
3: c3 c6
3: c3 c7
100: c4
1: c1 c2 c3 c4
1: c1 c2 c3
2: c5 c6
""",
        ),
    ),
    (
        _extend("base", "after", ("c1", "c2"), ("c3", "c4")),
        Expectation("base", "committees", ("pav",), (("c1", "c2", "c3", "c4"),)),
        Expectation("base", "objective", ("pav",), Fraction(391, 3)),
        Expectation("after", "committees", ("pav",), (("c4", "c5", "c6", "c7"),)),
        Expectation("after", "objective", ("pav",), Fraction(131)),
    ),
)

_F2 = Fixture(
    "F2",
    "cc: two chained ballot extensions drag the committee away from the"
    " extended candidates",
    (
        (
            "base",
            """
candidates: a b c d e
k: 3
2: a d
2: a e
2: c d
2: c e
2: b
2: a
1: d
""",
        ),
        (
            "after-1",
            """
candidates: a b c d e
k: 3
2: a d
2: a e
2: c d
2: c e
2: b
1: a
1: a b c
1: d
""",
        ),
        (
            "after-2",
            """
candidates: a b c d e
k: 3
2: a d
2: a e
2: c d
2: c e
2: b
2: a b c
1: d
""",
        ),
    ),
    (
        _extend("base", "after-1", ("a",), ("b", "c")),
        _extend("after-1", "after-2", ("a",), ("b", "c")),
        Expectation("base", "committees", ("cc",), (("a", "b", "c"),)),
        Expectation("base", "objective", ("cc",), Fraction(1)),
        Expectation("after-1", "committees", ("cc",), (("a", "b", "c"), ("b", "d", "e"))),
        Expectation("after-1", "objective", ("cc",), Fraction(1)),
        Expectation("after-2", "committees", ("cc",), (("b", "d", "e"),)),
        Expectation("after-2", "objective", ("cc",), Fraction(0)),
    ),
)

_F3 = Fixture(
    "F3",
    "mav: one ballot extension flips the committee away from four of the"
    " five extended-or-sitting candidates",
    (
        (
            "base",
            """
candidates: c1 c2 c3 c4 c5 c6 c7
k: 5
1: c1
1: c2
1: c3
1: c5
1: c1 c4 c6
1: c1 c4 c7
1: c1 c5 c6
1: c1 c5 c7
1: c1 c6
""",
        ),
        (
            "after",
            """
candidates: c1 c2 c3 c4 c5 c6 c7
k: 5
1: c1
1: c2
1: c3
1: c1 c2 c3 c4 c5
1: c1 c4 c6
1: c1 c4 c7
1: c1 c5 c6
1: c1 c5 c7
1: c1 c6
""",
        ),
    ),
    (
        _extend("base", "after", ("c5",), ("c1", "c2", "c3", "c4")),
        Expectation("base", "committees", ("mav",), (("c1", "c2", "c3", "c4", "c5"),)),
        Expectation("base", "objective", ("mav",), Fraction(5)),
        Expectation("after", "committees", ("mav",), (("c1", "c2", "c3", "c6", "c7"),)),
        Expectation("after", "objective", ("mav",), Fraction(4)),
    ),
)

_F4 = Fixture(
    "F4",
    "monroe: two new voters for one member make the member's whole committee"
    " lose its seat set",
    (
        (
            "base",
            """
candidates: a b c d e f g h
k: 4
5: a e
4: a g
5: b e
4: b h
5: c f
4: c g
3: d f
3: d h
""",
        ),
        (
            "after-1",
            """
candidates: a b c d e f g h
k: 4
5: a e
4: a g
5: b e
4: b h
5: c f
4: c g
3: d f
3: d h
1: e
""",
        ),
        (
            "after-2",
            """
candidates: a b c d e f g h
k: 4
5: a e
4: a g
5: b e
4: b h
5: c f
4: c g
3: d f
3: d h
2: e
""",
        ),
    ),
    (
        _addvoter("base", "after-1", ("e",)),
        _addvoter("after-1", "after-2", ("e",)),
        Expectation("base", "committees", ("monroe",), (("e", "f", "g", "h"),)),
        Expectation("base", "objective", ("monroe",), Fraction(1)),
        Expectation(
            "after-1",
            "committees",
            ("monroe",),
            (("a", "b", "c", "d"), ("e", "f", "g", "h")),
        ),
        Expectation("after-1", "objective", ("monroe",), Fraction(2)),
        Expectation("after-2", "committees", ("monroe",), (("a", "b", "c", "d"),)),
        Expectation("after-2", "objective", ("monroe",), Fraction(2)),
    ),
)

_F5 = Fixture(
    "F5",
    "monroe: chained ballot extensions drive the misrepresentation to zero"
    " on a committee avoiding the extended pair",
    (
        (
            "base",
            """
candidates: a b c d e
k: 3
2: a
2: a d
2: a e
4: b
1: b e
4: c d
3: c e
""",
        ),
        (
            "after-1",
            """
candidates: a b c d e
k: 3
1: a
1: a b c
2: a d
2: a e
4: b
1: b e
4: c d
3: c e
""",
        ),
        (
            "after-2",
            """
candidates: a b c d e
k: 3
2: a b c
2: a d
2: a e
4: b
1: b e
4: c d
3: c e
""",
        ),
    ),
    (
        _extend("base", "after-1", ("a",), ("b", "c")),
        _extend("after-1", "after-2", ("a",), ("b", "c")),
        Expectation("base", "committees", ("monroe",), (("a", "b", "c"),)),
        Expectation("base", "objective", ("monroe",), Fraction(1)),
        Expectation("after-1", "committees", ("monroe",), (("a", "b", "c"), ("b", "d", "e"))),
        Expectation("after-1", "objective", ("monroe",), Fraction(1)),
        Expectation("after-2", "committees", ("monroe",), (("b", "d", "e"),)),
        Expectation("after-2", "objective", ("monroe",), Fraction(0)),
    ),
)

_F6 = Fixture(
    "F6",
    "seqpav and seqphragmen: one supportive voter (joining, or extending a"
    " previously irrelevant ballot) reverses the greedy selection",
    (
        (
            "base",
            """
candidates: a b c d e
k: 4
7: a b d
4: a b e
3: a c d
5: a c e
""",
        ),
        (
            "after",
            """
candidates: a b c d e
k: 4
7: a b d
4: a b e
3: a c d
5: a c e
1: c d
""",
        ),
        (
            "alt",
            """
candidates: a b c d e f
k: 4
7: a b d
4: a b e
3: a c d
5: a c e
1: f
""",
        ),
        (
            "alt-after",
            """
candidates: a b c d e f
k: 4
7: a b d
4: a b e
3: a c d
5: a c e
1: c d f
""",
        ),
    ),
    (
        _addvoter("base", "after", ("c", "d")),
        _extend("alt", "alt-after", ("f",), ("c", "d")),
        Expectation("base", "tie-free-order", ("seqpav",), ("a", "b", "c", "d")),
        Expectation("base", "tie-free-order", ("seqphragmen",), ("a", "b", "c", "d")),
        Expectation("after", "tie-free-order", ("seqpav",), ("a", "d", "e", "b")),
        Expectation("after", "tie-free-order", ("seqphragmen",), ("a", "d", "e", "b")),
        Expectation("alt", "committees", ("seqpav",), (("a", "b", "c", "d"),)),
        Expectation("alt", "committees", ("seqphragmen",), (("a", "b", "c", "d"),)),
        Expectation("alt-after", "committees", ("seqpav",), (("a", "b", "d", "e"),)),
        Expectation("alt-after", "committees", ("seqphragmen",), (("a", "b", "d", "e"),)),
    ),
)

_F7_AFTER_SET = (
    ("a", "b", "c1", "c2", "c3", "c4"),
    ("a", "b", "c1", "c2", "c3", "c5"),
    ("a", "b", "c1", "c2", "c4", "c5"),
    ("a", "b", "c1", "c3", "c4", "c5"),
    ("a", "b", "c2", "c3", "c4", "c5"),
)

_F7 = Fixture(
    "F7",
    "maxphragmen: the unique committee loses to five rivals once a supporter"
    " of all six members arrives (joining, or extending an irrelevant ballot)",
    (
        (
            "base",
            """
candidates: a b c1 c2 c3 c4 c5
k: 6
13: c1 c2 c3 c4 c5
2: a b
2: a
1: b
""",
        ),
        (
            "after",
            """
candidates: a b c1 c2 c3 c4 c5
k: 6
13: c1 c2 c3 c4 c5
2: a b
2: a
1: b
1: a c1 c2 c3 c4 c5
""",
        ),
        (
            "alt",
            """
candidates: a b c1 c2 c3 c4 c5 d
k: 6
13: c1 c2 c3 c4 c5
2: a b
2: a
1: b
1: d
""",
        ),
        (
            "alt-after",
            """
candidates: a b c1 c2 c3 c4 c5 d
k: 6
13: c1 c2 c3 c4 c5
2: a b
2: a
1: b
1: a c1 c2 c3 c4 c5 d
""",
        ),
    ),
    (
        _addvoter("base", "after", ("a", "c1", "c2", "c3", "c4", "c5")),
        _extend("alt", "alt-after", ("d",), ("a", "c1", "c2", "c3", "c4", "c5")),
        Expectation(
            "base", "committees", ("maxphragmen",), (("a", "c1", "c2", "c3", "c4", "c5"),)
        ),
        Expectation("base", "objective", ("maxphragmen",), Fraction(5, 13)),
        Expectation(
            "base", "min-max-load", (("a", "c1", "c2", "c3", "c4", "c5"),), Fraction(5, 13)
        ),
        Expectation("after", "committees", ("maxphragmen",), _F7_AFTER_SET),
        Expectation("after", "objective", ("maxphragmen",), Fraction(1, 3)),
        Expectation(
            "after", "min-max-load", (("a", "c1", "c2", "c3", "c4", "c5"),), Fraction(5, 14)
        ),
        Expectation(
            "alt", "committees", ("maxphragmen",), (("a", "c1", "c2", "c3", "c4", "c5"),)
        ),
        Expectation("alt-after", "committees", ("maxphragmen",), _F7_AFTER_SET),
    ),
)

_F8 = Fixture(
    "F8",
    "mav: elects {a} alone but {b,c} when the committee grows to two seats",
    (
        (
            "k1",
            """
candidates: a b c
k: 1
1: b
1: c
1: a b
1: a c
""",
        ),
        (
            "k2",
            """
candidates: a b c
k: 2
1: b
1: c
1: a b
1: a c
""",
        ),
    ),
    (
        Expectation("k1", "committees", ("mav",), (("a",),)),
        Expectation("k1", "objective", ("mav",), Fraction(2)),
        Expectation("k2", "committees", ("mav",), (("b", "c"),)),
        Expectation("k2", "objective", ("mav",), Fraction(2)),
    ),
)

_F9 = Fixture(
    "F9",
    "cc and monroe: both elect {a} alone but {b,c} when the committee grows"
    " to two seats",
    (
        (
            "k1",
            """
candidates: a b c
k: 1
3: a b
3: a c
2: b
2: c
""",
        ),
        (
            "k2",
            """
candidates: a b c
k: 2
3: a b
3: a c
2: b
2: c
""",
        ),
    ),
    (
        Expectation("k1", "committees", ("cc",), (("a",),)),
        Expectation("k1", "objective", ("cc",), Fraction(4)),
        Expectation("k1", "committees", ("monroe",), (("a",),)),
        Expectation("k1", "objective", ("monroe",), Fraction(4)),
        Expectation("k2", "committees", ("cc",), (("b", "c"),)),
        Expectation("k2", "objective", ("cc",), Fraction(0)),
        Expectation("k2", "committees", ("monroe",), (("b", "c"),)),
        Expectation("k2", "objective", ("monroe",), Fraction(0)),
    ),
)

_TWO_BLOC = """
candidates: a1 a2 a3 b1 b2 b3
k: 3
2: a1 a2 a3
1: b1 b2 b3
"""

_TWO_BLOC_PR = tuple(
    pair + (b,)
    for pair in combinations(("a1", "a2", "a3"), 2)
    for b in ("b1", "b2", "b3")
)

_F10 = Fixture(
    "F10",
    "av and sav: both seat the majority bloc although every perfectly"
    " representative committee needs a minority candidate",
    (("base", _TWO_BLOC),),
    (
        Expectation("base", "committees", ("av",), (("a1", "a2", "a3"),)),
        Expectation("base", "objective", ("av",), Fraction(6)),
        Expectation("base", "committees", ("sav",), (("a1", "a2", "a3"),)),
        Expectation("base", "objective", ("sav",), Fraction(2)),
        Expectation("base", "pr-committees", (), _TWO_BLOC_PR),
        Expectation("base", "provides-pr", (("a1", "a2", "a3"),), False),
    ),
)

_F11 = Fixture(
    "F11",
    "mav: splits seats one-and-two against the two-and-one split that"
    " perfect representation requires",
    (
        (
            "base",
            """
candidates: a1 a2 b1 b2 b3
k: 3
2: a1 a2
1: b1 b2 b3
""",
        ),
    ),
    (
        Expectation(
            "base",
            "committees",
            ("mav",),
            (
                ("a1", "b1", "b2"),
                ("a1", "b1", "b3"),
                ("a1", "b2", "b3"),
                ("a2", "b1", "b2"),
                ("a2", "b1", "b3"),
                ("a2", "b2", "b3"),
            ),
        ),
        Expectation("base", "objective", ("mav",), Fraction(3)),
        Expectation(
            "base",
            "pr-committees",
            (),
            (("a1", "a2", "b1"), ("a1", "a2", "b2"), ("a1", "a2", "b3")),
        ),
        Expectation("base", "provides-pr", (("a1", "b1", "b2"),), False),
    ),
)

_F12 = Fixture(
    "F12",
    "seqpav: the greedy first pick forecloses the only perfectly"
    " representative pair",
    (
        (
            "base",
            """
candidates: a b c
k: 2
2: a b
2: a c
1: b
1: c
""",
        ),
    ),
    (
        Expectation("base", "pr-committees", (), (("b", "c"),)),
        Expectation("base", "committees", ("seqpav",), (("a", "b"), ("a", "c"))),
        Expectation("base", "provides-pr", (("a", "b"),), False),
    ),
)

_F13 = Fixture(
    "F13",
    "perfect representation: three extra ballots swap the unique perfectly"
    " representative committee to one sharing a single member",
    (
        (
            "base",
            """
candidates: c1 c2 c3 c4 c5
k: 3
2: c1 c4
2: c1 c5
3: c2 c4
1: c2 c5
2: c3 c5
2: c3
""",
        ),
        (
            "after",
            """
candidates: c1 c2 c3 c4 c5
k: 3
2: c1 c4
2: c1 c5
3: c2 c4
1: c2 c5
2: c3 c5
2: c3
3: c1 c3
""",
        ),
    ),
    (
        _addvoter("base", "after", ("c1", "c3"), 3),
        Expectation("base", "pr-committees", (), (("c1", "c2", "c3"),)),
        Expectation("after", "pr-committees", (), (("c3", "c4", "c5"),)),
        Expectation(
            "base", "committees", ("cc",), (("c1", "c2", "c3"), ("c3", "c4", "c5"))
        ),
        Expectation("base", "objective", ("cc",), Fraction(0)),
        Expectation("base", "committees", ("cc-prties",), (("c1", "c2", "c3"),)),
    ),
)

_F14 = Fixture(
    "F14",
    "perfect representation: sizes two and three force committees that no"
    " committee-monotone rule can output together",
    (
        (
            "k2",
            """
candidates: c1 c2 c3 c4 c5
k: 2
1: c1 c4
1: c1 c5
1: c2 c4
1: c2 c5
1: c3 c4
1: c3 c5
""",
        ),
        (
            "k3",
            """
candidates: c1 c2 c3 c4 c5
k: 3
1: c1 c4
1: c1 c5
1: c2 c4
1: c2 c5
1: c3 c4
1: c3 c5
""",
        ),
    ),
    (
        Expectation("k2", "pr-committees", (), (("c4", "c5"),)),
        Expectation(
            "k3",
            "pr-committees",
            (),
            (
                ("c1", "c2", "c3"),
                ("c1", "c4", "c5"),
                ("c2", "c4", "c5"),
                ("c3", "c4", "c5"),
            ),
        ),
        Expectation("k3", "provides-pr", (("c1", "c2", "c3"),), True),
        Expectation("k3", "provides-pr", (("c3", "c4", "c5"),), True),
    ),
)

_F15 = Fixture(
    "F15",
    "a deliberately rigged av variant: on one four-voter profile a ballot"
    " extension expels both extended candidates",
    (
        (
            "base",
            """
candidates: c1 c2 c3 c4
k: 2
1: c1 c2
1: c3 c4
1: c1 c3 c4
1: c2 c3 c4
""",
        ),
        (
            "after",
            """
candidates: c1 c2 c3 c4
k: 2
1: c1 c2
1: c1 c2 c3 c4
1: c1 c3 c4
1: c2 c3 c4
""",
        ),
    ),
    (
        _extend("base", "after", ("c3", "c4"), ("c1", "c2")),
        Expectation(
            "base", "committees", ("av-not-weak-smwopi",), (("c1", "c2"), ("c3", "c4"))
        ),
        Expectation("after", "committees", ("av-not-weak-smwopi",), (("c3", "c4"),)),
    ),
)

_F16 = Fixture(
    "F16",
    "cc: ties include a committee without perfect representation; breaking"
    " ties toward perfect representation repairs that",
    (("base", _TWO_BLOC),),
    (
        Expectation(
            "base",
            "committees",
            ("cc",),
            tuple(
                w
                for w in combinations(("a1", "a2", "a3", "b1", "b2", "b3"), 3)
                if w != ("a1", "a2", "a3") and w != ("b1", "b2", "b3")
            ),
        ),
        Expectation("base", "objective", ("cc",), Fraction(0)),
        Expectation("base", "contains-committee", ("cc", ("a1", "b1", "b2")), True),
        Expectation("base", "provides-pr", (("a1", "b1", "b2"),), False),
        Expectation("base", "committees", ("cc-prties",), _TWO_BLOC_PR),
        Expectation("base", "pr-committees", (), _TWO_BLOC_PR),
    ),
)

_FIXTURES: tuple[Fixture, ...] = (
    _F1,
    _F2,
    _F3,
    _F4,
    _F5,
    _F6,
    _F7,
    _F8,
    _F9,
    _F10,
    _F11,
    _F12,
    _F13,
    _F14,
    _F15,
    _F16,
)

FIXTURE_IDS: tuple[str, ...] = tuple(f.id for f in _FIXTURES)
