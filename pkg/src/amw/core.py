"""Core data model for approval-based multiwinner elections.

An election couples a candidate roster, a sequence of non-empty approval
ballots (one per voter), and a committee size k. Everything downstream
(rules, axiom checkers, searchers) works on these values; all of them are
immutable and compare by value, so elections can be hashed, deduplicated
and replayed.

Exact arithmetic is `fractions.Fraction` throughout the package; nothing
here ever touches floats.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

Committee = tuple[int, ...]  # sorted candidate indices, len == k

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")


class ParseError(ValueError):
    """Raised for malformed election text; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Election:
    """An approval election (roster, ballots, committee size).

    names:   candidate tokens, unique, each matching [A-Za-z0-9_]+.
             Candidates are referred to by index into this tuple.
    ballots: one frozenset of candidate indices per voter, all non-empty.
             Voter order is significant only as an identifier; every
             computation in the package is invariant under reordering.
    k:       committee size, 1 <= k <= len(names).
    """

    names: tuple[str, ...]
    ballots: tuple[frozenset[int], ...]
    k: int

    def __post_init__(self):
        if not self.names:
            raise ValueError("election needs at least one candidate")
        seen = set()
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad candidate name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate candidate name {name!r}")
            seen.add(name)
        if not self.ballots:
            raise ValueError("election needs at least one voter")
        m = len(self.names)
        for i, ballot in enumerate(self.ballots):
            if not ballot:
                raise ValueError(f"voter {i} has an empty ballot")
            for c in ballot:
                if not 0 <= c < m:
                    raise ValueError(f"voter {i} approves unknown candidate index {c}")
        if not 1 <= self.k <= m:
            raise ValueError(f"k={self.k} out of range 1..{m}")

    @property
    def n(self) -> int:
        return len(self.ballots)

    @property
    def m(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no candidate named {name!r}") from None

    def committee_of_names(self, names: Iterable[str]) -> Committee:
        return tuple(sorted(self.index_of(s) for s in names))

    def ballot_names(self, voter: int) -> frozenset[str]:
        return frozenset(self.names[c] for c in self.ballots[voter])


def election_from_names(
    names: Iterable[str], ballots: Iterable[Iterable[str]], k: int
) -> Election:
    """Convenience constructor taking candidate names instead of indices."""
    names = tuple(names)
    index = {s: i for i, s in enumerate(names)}
    try:
        ballot_sets = tuple(frozenset(index[s] for s in b) for b in ballots)
    except KeyError as exc:
        raise ValueError(f"ballot approves unknown candidate {exc.args[0]!r}") from None
    return Election(names, ballot_sets, k)


# ---------------------------------------------------------------------------
# Text format
#
#   # comment lines and blank lines are ignored
#   candidates: a b c d        (exactly once)
#   k: 2                       (exactly once)
#   3: a b                     (ballot line: multiplicity, then the approved
#   1: c d                      candidates; voters expand in file order)
# ---------------------------------------------------------------------------


def parse_election(text: str) -> Election:
    """Parse the election text format above. Raises ParseError with position."""
    names: tuple[str, ...] | None = None
    k: int | None = None
    k_line = 0
    index: dict[str, int] = {}
    ballots: list[frozenset[int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected 'candidates:', 'k:' or '<count>: <names>'", lineno)
        head = head.strip()
        col = raw.index(":") + 2  # first position after the separator

        if head == "candidates":
            if names is not None:
                raise ParseError("duplicate candidates line", lineno)
            tokens = rest.split()
            if not tokens:
                raise ParseError("candidates line lists no names", lineno, col)
            for tok in tokens:
                if not _NAME_RE.match(tok):
                    raise ParseError(f"bad candidate name {tok!r}", lineno, raw.index(tok) + 1)
                if tok in index:
                    raise ParseError(f"duplicate candidate name {tok!r}", lineno, raw.index(tok) + 1)
                index[tok] = len(index)
            names = tuple(tokens)
            continue

        if head == "k":
            if k is not None:
                raise ParseError("duplicate k line", lineno)
            try:
                k = int(rest.strip())
            except ValueError:
                raise ParseError(f"k must be an integer, got {rest.strip()!r}", lineno, col) from None
            k_line = lineno
            continue

        # ballot line
        try:
            mult = int(head)
        except ValueError:
            raise ParseError(f"unrecognised line head {head!r}", lineno) from None
        if mult <= 0:
            raise ParseError(f"ballot multiplicity must be positive, got {mult}", lineno)
        if names is None:
            raise ParseError("ballot line before candidates line", lineno)
        tokens = rest.split()
        if not tokens:
            raise ParseError("empty ballot", lineno, col)
        ballot: set[int] = set()
        for tok in tokens:
            if tok not in index:
                raise ParseError(f"unknown candidate {tok!r}", lineno, raw.index(tok) + 1)
            c = index[tok]
            if c in ballot:
                raise ParseError(f"candidate {tok!r} repeated within ballot", lineno, raw.index(tok) + 1)
            ballot.add(c)
        ballots.extend([frozenset(ballot)] * mult)

    if names is None:
        raise ParseError("missing candidates line", max(1, text.count("\n") + 1))
    if k is None:
        raise ParseError("missing k line", max(1, text.count("\n") + 1))
    if not ballots:
        raise ParseError("no ballot lines", max(1, text.count("\n") + 1))
    m = len(names)
    if not 1 <= k <= m:
        raise ParseError(f"k={k} out of range 1..{m}", k_line)
    return Election(names, tuple(ballots), k)


def serialize_election(e: Election) -> str:
    """Serialize to the text format; parse(serialize(e)) == e.

    Consecutive identical ballots are folded into one multiplicity line, so
    voter order round-trips exactly.
    """
    lines = [f"candidates: {' '.join(e.names)}", f"k: {e.k}"]
    i = 0
    while i < e.n:
        j = i
        while j < e.n and e.ballots[j] == e.ballots[i]:
            j += 1
        members = " ".join(e.names[c] for c in sorted(e.ballots[i]))
        lines.append(f"{j - i}: {members}")
        i = j
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Mutations: the two election changes the axiom checkers reason about.
# ---------------------------------------------------------------------------


def add_new_voter(e: Election, group: Iterable[int]) -> Election:
    """A new voter joins approving exactly `group` (non-empty, known indices)."""
    g = frozenset(group)
    if not g:
        raise ValueError("new voter's ballot must be non-empty")
    for c in g:
        if not 0 <= c < e.m:
            raise ValueError(f"unknown candidate index {c}")
    return Election(e.names, e.ballots + (g,), e.k)


def extend_ballot(e: Election, voter: int, group: Iterable[int]) -> Election:
    """Voter `voter` additionally approves `group`, disjoint from their ballot."""
    if not 0 <= voter < e.n:
        raise ValueError(f"no voter {voter}")
    g = frozenset(group)
    if not g:
        raise ValueError("extension must be non-empty")
    for c in g:
        if not 0 <= c < e.m:
            raise ValueError(f"unknown candidate index {c}")
    if g & e.ballots[voter]:
        overlap = sorted(g & e.ballots[voter])
        raise ValueError(f"extension overlaps the existing ballot: {overlap}")
    ballots = list(e.ballots)
    ballots[voter] = e.ballots[voter] | g
    return Election(e.names, tuple(ballots), e.k)


# ---------------------------------------------------------------------------
# Small shared helpers
# ---------------------------------------------------------------------------


def enumerate_committees(m: int, k: int) -> Iterator[Committee]:
    """All k-subsets of range(m) in lexicographic order."""
    if not 1 <= k <= m:
        raise ValueError(f"k={k} out of range 1..{m}")
    return combinations(range(m), k)


def hamming(a: frozenset[int] | set[int], b: frozenset[int] | set[int]) -> int:
    """Symmetric-difference distance between two candidate sets."""
    return len(set(a) ^ set(b))


def canonical_committees(committees: Iterable[Iterable[int]]) -> tuple[Committee, ...]:
    """Deduplicate and order committees canonically (sorted tuples, sorted)."""
    return tuple(sorted({tuple(sorted(w)) for w in committees}))


def ballot_masks(e: Election) -> list[int]:
    """Ballots as candidate bitmasks; the workhorse encoding for scoring."""
    return [_mask(b) for b in e.ballots]


def mask_counts(e: Election) -> tuple[tuple[int, int], ...]:
    """Distinct ballot bitmasks with multiplicities, in first-appearance
    order. Scans over ballot classes instead of voters cut the work on
    profiles dominated by repeated ballots."""
    counts = Counter(ballot_masks(e))
    return tuple(counts.items())


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for c in indices:
        m |= 1 << c
    return m


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    c = 0
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return tuple(out)
