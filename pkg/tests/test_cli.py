"""Command-line behaviour: exit codes, exact JSON, witness round-trips.

Exit-code contract: 0 = ran and everything checked holds, 1 = ran and
found a violation or failing expectation, 2 = usage error, 3 = input
error.  JSON output must be byte-identical across repeated runs and
across ``--jobs`` values, and election texts embedded in JSON witnesses
must re-parse and re-validate through the library, so a report can never
drift from what the library would actually conclude.
"""

from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from amw.cli import main
from amw.core import parse_election
from amw.monotonicity import MonotonicityWitness, validate_witness
from amw.representation import rule_satisfies_on
from amw.rules import get_rule

AV_SMALL = """\
candidates: a b c
k: 2
2: a b
1: c
"""

SAV_FRACTIONAL = """\
candidates: a b c
k: 1
1: a b c
1: a
"""

TWO_BLOC = """\
candidates: a1 a2 a3 b1 b2 b3
k: 3
2: a1 a2 a3
1: b1 b2 b3
"""

AV_FAILS_JR = """\
candidates: a b c d
k: 3
4: a b d
2: c
"""

SEQ_TIE = """\
candidates: a b
k: 1
1: a
1: b
"""

COMMITTEE_FLIP = """\
candidates: a b c d
k: 1
1: b
1: c
1: a b
1: a c
"""

TRAP_PROFILE = """\
candidates: c1 c2 c3 c4
k: 2
1: c1 c2
1: c3 c4
1: c1 c3 c4
1: c2 c3 c4
"""


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def election_file(tmp_path):
    def write(text: str, name: str = "e.abme") -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def rebuild_witness(payload: dict) -> MonotonicityWitness:
    """Reconstruct a monotonicity witness from its JSON image, mapping the
    candidate names back to indices and re-parsing both embedded elections."""
    election = parse_election(payload["election"])
    mutated = parse_election(payload["mutated"])
    index = {name: c for c, name in enumerate(election.names)}

    def committee(names):
        return tuple(sorted(index[name] for name in names))

    return MonotonicityWitness(
        axiom=payload["axiom"],
        strength=payload["strength"],
        clause=payload["clause"],
        group=None if payload["group"] is None else committee(payload["group"]),
        voter=payload["voter"],
        before=tuple(committee(w) for w in payload["before"]),
        after=tuple(committee(w) for w in payload["after"]),
        election=election,
        mutated=mutated,
        offender=None if payload["offender"] is None else committee(payload["offender"]),
    )


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------


def test_compute_text_prints_committees_with_objective(capsys, election_file) -> None:
    path = election_file(AV_SMALL)
    code, out, err = run(capsys, "compute", "--rule", "av", path)
    assert code == 0
    assert out == "{a,b}  score=4\n"
    assert err == ""

    code, out, _ = run(capsys, "compute", "--rule", "av", "--verbose", path)
    assert code == 0
    assert out.splitlines() == [
        "election: 3 voters, 3 candidates, committee size 2",
        "{a,b}  score=4",
    ]


def test_compute_json_is_exact_and_byte_deterministic(capsys, election_file) -> None:
    path = election_file(SAV_FRACTIONAL)
    code, first, _ = run(capsys, "compute", "--rule", "sav", "--format", "json", path)
    code2, second, _ = run(capsys, "compute", "--rule", "sav", "--format", "json", path)
    assert (code, code2) == (0, 0)
    assert first == second

    payload = json.loads(first)
    assert payload["command"] == "compute"
    assert payload["rule"] == "sav"
    assert payload["committees"] == [["a"]]
    assert payload["objective"] == "4/3"
    assert payload["objective_label"] == "score"
    assert parse_election(payload["election"]) == parse_election(SAV_FRACTIONAL)
    # keys are emitted sorted, so a re-dump reproduces the bytes
    assert json.dumps(payload, indent=2, sort_keys=True) + "\n" == first


def test_compute_reads_election_from_stdin(capsys, monkeypatch) -> None:
    monkeypatch.setattr(sys, "stdin", io.StringIO(AV_SMALL))
    code, out, _ = run(capsys, "compute", "--rule", "av", "-")
    assert code == 0
    assert out == "{a,b}  score=4\n"


def test_compute_tie_policy_put_lists_all_paths_lex_collapses(capsys, election_file) -> None:
    path = election_file(SEQ_TIE)
    code, out, _ = run(capsys, "compute", "--rule", "seqpav", path)
    assert code == 0
    assert out.splitlines() == ["{a}", "{b}"]

    code, out, _ = run(capsys, "compute", "--rule", "seqpav", "--ties", "lex", path)
    assert code == 0
    assert out.splitlines() == ["{a}"]


def test_compute_usage_and_input_errors(capsys, election_file, tmp_path) -> None:
    path = election_file(AV_SMALL)
    code, _, err = run(capsys, "compute", "--rule", "borda", path)
    assert code == 2
    assert err.startswith("usage error:")

    code, _, err = run(capsys, "compute", "--rule", "av", str(tmp_path / "missing.abme"))
    assert code == 3
    assert err.startswith("input error: cannot read")

    bad = election_file("candidates: a b\nk: 3\n1: a\n", "bad.abme")
    code, _, err = run(capsys, "compute", "--rule", "av", bad)
    assert code == 3
    assert "out of range" in err


def test_missing_subcommand_is_a_usage_error(capsys) -> None:
    code, _, _ = run(capsys)
    assert code == 2


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


def test_axioms_committee_mode_reports_failure_with_witness(capsys, election_file) -> None:
    path = election_file(AV_FAILS_JR)
    code, out, _ = run(
        capsys, "axioms", "--election", path, "--check", "jr",
        "--committee", "a,b,d", "--format", "json",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["mode"] == "committee"
    assert payload["holds"] is False
    assert payload["witness"] == {"level": 1, "voters": [4, 5], "common": ["c"]}
    assert payload["assignment"] is None

    code, out, _ = run(
        capsys, "axioms", "--election", path, "--check", "jr", "--committee", "a,b,c",
    )
    assert code == 0
    assert "jr holds for {a,b,c}" in out


def test_axioms_committee_mode_pr_assignment_partitions_voters(capsys, election_file) -> None:
    path = election_file(TWO_BLOC)
    code, out, _ = run(
        capsys, "axioms", "--election", path, "--check", "pr",
        "--committee", "a1,a2,b1", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["holds"] is True
    assert payload["witness"] is None
    members = [member for member, _ in payload["assignment"]]
    assert members == ["a1", "a2", "b1"]
    represented = sorted(v for _, voters in payload["assignment"] for v in voters)
    assert represented == [0, 1, 2]
    assert [v for m, v in payload["assignment"] if m == "b1"] == [[2]]

    code, out, _ = run(
        capsys, "axioms", "--election", path, "--check", "pr",
        "--committee", "a1,a2,a3",
    )
    assert code == 1
    assert "pr fails for {a1,a2,a3}" in out


def test_axioms_rule_mode_flags_av_and_clears_cc(capsys, election_file) -> None:
    path = election_file(AV_FAILS_JR)
    code, out, _ = run(
        capsys, "axioms", "--election", path, "--check", "jr",
        "--rule", "av", "--format", "json",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["mode"] == "rule"
    assert payload["offender"] == ["a", "b", "d"]
    assert payload["witness"]["voters"] == [4, 5]

    code, out, _ = run(
        capsys, "axioms", "--election", path, "--check", "jr", "--rule", "cc",
    )
    assert code == 0
    assert "cc satisfies jr on this election" in out


def test_axioms_errors(capsys, election_file) -> None:
    indivisible = election_file("candidates: a b c\nk: 2\n1: a\n1: b\n1: c\n")
    code, _, err = run(
        capsys, "axioms", "--election", indivisible, "--check", "pr",
        "--committee", "a,b",
    )
    assert code == 3
    assert "needs k | n" in err

    path = election_file(AV_SMALL)
    code, _, err = run(
        capsys, "axioms", "--election", path, "--check", "jr",
        "--committee", "a,z",
    )
    assert code == 3

    # --committee and --rule are mutually exclusive, and one is required
    code, _, _ = run(
        capsys, "axioms", "--election", path, "--check", "jr",
        "--committee", "a,b", "--rule", "av",
    )
    assert code == 2
    code, _, _ = run(capsys, "axioms", "--election", path, "--check", "jr")
    assert code == 2


# ---------------------------------------------------------------------------
# monotonic
# ---------------------------------------------------------------------------


def test_monotonic_reports_a_holding_axiom_with_evaluation_count(capsys, election_file) -> None:
    path = election_file(AV_SMALL)
    code, out, _ = run(
        capsys, "monotonic", "--rule", "av", "--axiom", "strong-smwpi",
        "--election", path,
    )
    assert code == 0
    assert "strong smwpi holds for av on this election" in out

    code, out, _ = run(
        capsys, "monotonic", "--rule", "av", "--axiom", "strong-smwpi",
        "--election", path, "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["holds"] is True
    assert payload["witness"] is None
    assert payload["checked"] > 0


def test_monotonic_extension_witness_round_trips_and_revalidates(capsys, election_file) -> None:
    path = election_file(TRAP_PROFILE)
    code, out, _ = run(
        capsys, "monotonic", "--rule", "av-not-weak-smwopi",
        "--axiom", "weak-smwopi", "--election", path, "--format", "json",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["holds"] is False
    witness = rebuild_witness(payload["witness"])
    assert witness.axiom == "smwopi"
    assert witness.strength == "weak"
    assert witness.voter is not None
    assert validate_witness(get_rule("av-not-weak-smwopi"), witness)

    code, out, _ = run(
        capsys, "monotonic", "--rule", "av-not-weak-smwopi",
        "--axiom", "weak-smwopi", "--election", path,
    )
    assert code == 1
    assert "violated by av-not-weak-smwopi" in out
    assert "extends" in out


def test_monotonic_committee_growth_witness_round_trips(capsys, election_file) -> None:
    path = election_file(COMMITTEE_FLIP)
    code, out, _ = run(
        capsys, "monotonic", "--rule", "mav", "--axiom", "committee-monotonicity",
        "--election", path, "--k-to", "2", "--format", "json",
    )
    assert code == 1
    payload = json.loads(out)
    witness = rebuild_witness(payload["witness"])
    assert witness.axiom == "committee-monotonicity"
    assert witness.mutated.k == 2
    assert validate_witness(get_rule("mav"), witness)

    code, out, _ = run(
        capsys, "monotonic", "--rule", "mav", "--axiom", "committee-monotonicity",
        "--election", path,
    )
    assert code == 1
    assert "committee sizes 1 -> 2" in out


def test_monotonic_axiom_spelling_errors(capsys, election_file) -> None:
    path = election_file(AV_SMALL)
    for axiom in ("smwpi", "strong-candidate-monotonicity", "bogus"):
        code, _, err = run(
            capsys, "monotonic", "--rule", "av", "--axiom", axiom,
            "--election", path,
        )
        assert code == 2, axiom
        assert err.startswith("usage error:")

    code, _, err = run(
        capsys, "monotonic", "--rule", "av", "--axiom", "committee-monotonicity",
        "--election", path, "--k-to", "9",
    )
    assert code == 3


# ---------------------------------------------------------------------------
# hunt
# ---------------------------------------------------------------------------


def test_hunt_finds_known_violation_with_exit_1_and_identical_bytes(
    capsys, monkeypatch
) -> None:
    monkeypatch.delenv("AMW_JOBS", raising=False)
    argv = (
        "hunt", "--rule", "av", "--axiom", "jr", "--max-voters", "3",
        "--max-candidates", "3", "--k", "2", "--exhaustive", "--format", "json",
    )
    code, first, _ = run(capsys, *argv)
    code2, second, _ = run(capsys, *argv)
    code3, third, _ = run(capsys, *argv, "--jobs", "4")
    assert (code, code2, code3) == (1, 1, 1)
    assert first == second == third

    payload = json.loads(first)
    assert payload["found"] is True
    assert payload["instances"] == 19
    assert payload["evaluations"] == 19
    assert payload["shrunk"] is False
    witness = payload["witness"]
    assert witness["axiom"] == "jr"
    election = parse_election(witness["election"])
    verdict = rule_satisfies_on(election, get_rule("av"), "jr")
    assert not verdict.holds
    assert [election.names[c] for c in verdict.offender] == witness["offender"]


def test_hunt_reports_no_violation_with_exit_0(capsys, monkeypatch) -> None:
    monkeypatch.delenv("AMW_JOBS", raising=False)
    code, out, _ = run(
        capsys, "hunt", "--rule", "av", "--axiom", "strong-smwpi",
        "--max-voters", "3", "--max-candidates", "3", "--k", "1..2",
        "--exhaustive",
    )
    assert code == 0
    assert out.startswith("no violation found:")


def test_hunt_shrink_flag_minimizes_before_reporting(capsys, monkeypatch) -> None:
    monkeypatch.delenv("AMW_JOBS", raising=False)
    code, out, _ = run(
        capsys, "hunt", "--rule", "mav", "--axiom", "committee-monotonicity",
        "--max-voters", "5", "--max-candidates", "3", "--k", "1..2",
        "--exhaustive", "--shrink", "--format", "json",
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["shrunk"] is True
    witness = rebuild_witness(payload["witness"])
    assert witness.election.n == 2
    assert witness.election.m == 3
    assert validate_witness(get_rule("mav"), witness)


def test_hunt_usage_errors(capsys, monkeypatch) -> None:
    monkeypatch.delenv("AMW_JOBS", raising=False)
    base = ("hunt", "--rule", "av", "--max-voters", "3", "--max-candidates", "3")
    cases = (
        base + ("--axiom", "smwpi"),                      # missing strength prefix
        base + ("--axiom", "strong-jr"),                  # prefix on representation
        base + ("--axiom", "bogus",),
        base + ("--axiom", "jr", "--k", "0"),             # k outside 1..m
        base + ("--axiom", "jr", "--k", "x"),
        base + ("--axiom", "jr", "--p", "7/3"),           # p outside (0, 1)
        base + ("--axiom", "jr", "--p", "zero"),
        base + ("--axiom", "jr", "--seed", "-1"),
        base + ("--axiom", "jr", "--jobs", "0"),
    )
    for argv in cases:
        code, _, err = run(capsys, *argv)
        assert code == 2, argv
        assert err.startswith("usage error:"), argv

    monkeypatch.setenv("AMW_JOBS", "many")
    code, _, err = run(capsys, *base, "--axiom", "jr")
    assert code == 2
    assert "AMW_JOBS" in err


# ---------------------------------------------------------------------------
# reproduce / list-fixtures
# ---------------------------------------------------------------------------


def test_reproduce_single_fixture_and_catalog(capsys, monkeypatch) -> None:
    monkeypatch.delenv("AMW_JOBS", raising=False)
    code, out, _ = run(capsys, "reproduce", "--fixture", "F1")
    assert code == 0
    assert out.splitlines()[-1] == "1/1 fixtures pass"

    code, out, _ = run(capsys, "reproduce", "--fixture", "all")
    assert code == 0
    assert out.splitlines()[-1] == "16/16 fixtures pass"

    code, _, err = run(capsys, "reproduce", "--fixture", "F99")
    assert code == 2
    assert "unknown fixture" in err


def test_reproduce_json_is_identical_across_jobs_values(capsys, monkeypatch) -> None:
    monkeypatch.delenv("AMW_JOBS", raising=False)
    argv = ("reproduce", "--fixture", "all", "--format", "json")
    code, first, _ = run(capsys, *argv, "--jobs", "1")
    code2, second, _ = run(capsys, *argv, "--jobs", "3")
    assert (code, code2) == (0, 0)
    assert first == second

    payload = json.loads(first)
    assert payload["ok"] is True
    assert [f["id"] for f in payload["fixtures"]] == [f"F{i}" for i in range(1, 17)]
    assert all(f["ok"] for f in payload["fixtures"])

    monkeypatch.setenv("AMW_JOBS", "2")
    code, third, _ = run(capsys, *argv)
    assert code == 0
    assert third == first


def test_list_fixtures_catalog(capsys) -> None:
    code, out, _ = run(capsys, "list-fixtures")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 16
    assert lines[0].startswith("F1 ")

    code, out, _ = run(capsys, "list-fixtures", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert [f["id"] for f in payload["fixtures"]] == [f"F{i}" for i in range(1, 17)]


def test_console_script_entry_point_runs() -> None:
    proc = subprocess.run(
        ["amw", "list-fixtures"], capture_output=True, text=True, timeout=60
    )
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 16
