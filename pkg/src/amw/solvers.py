"""Exact combinatorial solvers shared by the voting rules and axiom checkers.

Three optimisation problems live here, each with a fast exact path and a
brute-force oracle used to cross-check it in the tests:

* balanced-assignment misrepresentation (voters assigned to committee
  members, per-member quota between floor(n/k) and ceil(n/k), minimising
  the number of voters assigned to a candidate they do not approve);
* min-max voter load (one unit of load per committee member spread over
  its approvers, minimising the heaviest voter's total), with a matching
  combinatorial certificate proving optimality on every call;
* perfect-representation assignment (k groups of exactly n/k voters, each
  group unanimously approving its assigned member).

All flows are integer-valued on scaled networks, so every reported value
is an exact rational. Setting the environment variable AMW_ORACLE_MODE=1
(or toggling `oracle_mode`) reroutes the fast paths through the
brute-force oracles, which only work on small instances.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .core import Committee, Election, _bits

oracle_mode = os.environ.get("AMW_ORACLE_MODE", "") not in ("", "0")


class InfeasibleCommittee(ValueError):
    """Raised when a committee member has no approver, so no load exists."""


def _check_committee(e: Election, committee: Iterable[int]) -> Committee:
    w = tuple(sorted(committee))
    if len(set(w)) != len(w):
        raise ValueError("committee has repeated members")
    if len(w) != e.k:
        raise ValueError(f"committee size {len(w)} != k={e.k}")
    for c in w:
        if not 0 <= c < e.m:
            raise ValueError(f"unknown candidate index {c}")
    return w


def _approver_masks(e: Election, w: Committee) -> list[int]:
    masks = [0] * len(w)
    pos = {c: i for i, c in enumerate(w)}
    for v, ballot in enumerate(e.ballots):
        bit = 1 << v
        for c in ballot:
            i = pos.get(c)
            if i is not None:
                masks[i] |= bit
    return masks


# ---------------------------------------------------------------------------
# Flow primitives (integer capacities, tiny graphs)
# ---------------------------------------------------------------------------


class _MaxFlow:
    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[list[int]]] = [[] for _ in range(n)]

    def add(self, u: int, v: int, cap: int) -> tuple[int, int]:
        self.adj[u].append([v, cap, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])
        return (u, len(self.adj[u]) - 1)

    def flow_on(self, ref: tuple[int, int]) -> int:
        u, i = ref
        v, _, rev = self.adj[u][i]
        return self.adj[v][rev][1]

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v, cap, _ in self.adj[u]:
                    if cap > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return total
            it = [0] * self.n

            def dfs(u: int, pushed: int) -> int:
                if u == t:
                    return pushed
                while it[u] < len(self.adj[u]):
                    edge = self.adj[u][it[u]]
                    v, cap, rev = edge
                    if cap > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, cap))
                        if got:
                            edge[1] -= got
                            self.adj[v][rev][1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 62)
                if not pushed:
                    break
                total += pushed


class _MinCostFlow:
    """Successive shortest paths (SPFA). Costs are small non-negative ints."""

    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[list[int]]] = [[] for _ in range(n)]

    def add(self, u: int, v: int, cap: int, cost: int) -> tuple[int, int]:
        self.adj[u].append([v, cap, cost, len(self.adj[v])])
        self.adj[v].append([u, 0, -cost, len(self.adj[u]) - 1])
        return (u, len(self.adj[u]) - 1)

    def flow_on(self, ref: tuple[int, int]) -> int:
        u, i = ref
        v, _, _, rev = self.adj[u][i]
        return self.adj[v][rev][1]

    def min_cost_max_flow(self, s: int, t: int) -> tuple[int, int]:
        flow = cost = 0
        big = 1 << 62
        while True:
            dist = [big] * self.n
            in_queue = [False] * self.n
            prev: list[tuple[int, int] | None] = [None] * self.n
            dist[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                in_queue[u] = False
                du = dist[u]
                for i, (v, cap, c, _) in enumerate(self.adj[u]):
                    if cap > 0 and du + c < dist[v]:
                        dist[v] = du + c
                        prev[v] = (u, i)
                        if not in_queue[v]:
                            in_queue[v] = True
                            queue.append(v)
            if prev[t] is None:
                return flow, cost
            bottleneck = big
            v = t
            while v != s:
                u, i = prev[v]
                bottleneck = min(bottleneck, self.adj[u][i][1])
                v = u
            v = t
            while v != s:
                u, i = prev[v]
                edge = self.adj[u][i]
                edge[1] -= bottleneck
                self.adj[edge[0]][edge[3]][1] += bottleneck
                v = u
            flow += bottleneck
            cost += bottleneck * dist[t]


# ---------------------------------------------------------------------------
# Balanced-assignment misrepresentation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BalancedAssignment:
    """assignment[v] is the committee member voter v is assigned to."""

    assignment: tuple[int, ...]

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.assignment:
            out[c] = out.get(c, 0) + 1
        return out


def monroe_min_misrep(e: Election, committee: Iterable[int]) -> tuple[int, BalancedAssignment]:
    """Minimum misrepresentation over balanced assignments, with a witness.

    Every voter is assigned to exactly one committee member; each member
    represents between floor(n/k) and ceil(n/k) voters; the value counts
    voters assigned to a member they do not approve. The witness is
    re-validated against both constraints before returning.
    """
    w = _check_committee(e, committee)
    if oracle_mode:
        return _monroe_bruteforce(e, w)
    n, k = e.n, e.k
    lo, hi = n // k, -(-n // k)
    # nodes: source, voters, dummy, members, sink
    src = 0
    dummy = n + 1
    member0 = n + 2
    sink = member0 + k
    net = _MinCostFlow(sink + 1)
    refs = []
    for v in range(n):
        net.add(src, v + 1, 1, 0)
        row = []
        for i, c in enumerate(w):
            row.append(net.add(v + 1, member0 + i, 1, 0 if c in e.ballots[v] else 1))
        refs.append(row)
    # the dummy absorbs each member's optional slack above the lower quota,
    # so saturating every sink edge forces lo <= real assignees <= hi
    net.add(src, dummy, k * hi - n, 0)
    for i in range(k):
        net.add(dummy, member0 + i, hi - lo, 0)
        net.add(member0 + i, sink, hi, 0)
    flow, cost = net.min_cost_max_flow(src, sink)
    if flow != k * hi:
        raise RuntimeError("internal: balanced assignment network did not saturate")
    assignment = [-1] * n
    for v in range(n):
        for i, ref in enumerate(refs[v]):
            if net.flow_on(ref):
                assignment[v] = w[i]
                break
    witness = BalancedAssignment(tuple(assignment))
    _validate_assignment(e, w, witness, cost)
    return cost, witness


def _validate_assignment(e: Election, w: Committee, witness: BalancedAssignment, misrep: int) -> None:
    lo, hi = e.n // e.k, -(-e.n // e.k)
    counts = witness.counts()
    for c in w:
        if not lo <= counts.get(c, 0) <= hi:
            raise RuntimeError(f"internal: member {c} represents {counts.get(c, 0)} voters, outside {lo}..{hi}")
    if sum(counts.values()) != e.n or set(counts) - set(w):
        raise RuntimeError("internal: assignment is not onto the committee")
    actual = sum(1 for v, c in enumerate(witness.assignment) if c not in e.ballots[v])
    if actual != misrep:
        raise RuntimeError(f"internal: assignment cost {actual} != reported {misrep}")


def _monroe_bruteforce(e: Election, w: Committee) -> tuple[int, BalancedAssignment]:
    n, k = e.n, e.k
    if k**n > 4_000_000:
        raise ValueError(f"brute-force assignment sweep too large (k^n = {k}^{n})")
    lo, hi = n // k, -(-n // k)
    best = n + 1
    best_assignment: tuple[int, ...] | None = None
    counts = [0] * k
    assignment = [-1] * n

    def rec(v: int, cost: int) -> None:
        nonlocal best, best_assignment
        if cost >= best:
            return
        if v == n:
            if all(lo <= c <= hi for c in counts):
                best = cost
                best_assignment = tuple(assignment)
            return
        # member quotas can still be met only if enough voters remain
        deficit = sum(max(lo - c, 0) for c in counts)
        if deficit > n - v:
            return
        for i, c in enumerate(w):
            if counts[i] == hi:
                continue
            counts[i] += 1
            assignment[v] = c
            rec(v + 1, cost + (0 if c in e.ballots[v] else 1))
            counts[i] -= 1
        assignment[v] = -1

    rec(0, 0)
    if best_assignment is None:
        raise RuntimeError("internal: no balanced assignment found")
    return best, BalancedAssignment(best_assignment)


def monroe_min_misrep_bruteforce(e: Election, committee: Iterable[int]) -> int:
    """Oracle: exhaustive balanced-assignment sweep (small instances only)."""
    return _monroe_bruteforce(e, _check_committee(e, committee))[0]


def monroe_misrep_lower_bound(e: Election, committee: Iterable[int]) -> int:
    """Cheap valid lower bound used to prune committee scans.

    max of (a) voters approving no member, every one misrepresented wherever
    assigned, and (b) the summed per-member shortfall of approvers below the
    lower quota, which must be filled by non-approving voters.
    """
    w = tuple(committee)
    lo = e.n // e.k
    uncovered = 0
    approver_count = {c: 0 for c in w}
    wset = set(w)
    for ballot in e.ballots:
        hit = ballot & wset
        if not hit:
            uncovered += 1
        for c in hit:
            approver_count[c] += 1
    deficit = sum(max(lo - approver_count[c], 0) for c in w)
    return max(uncovered, deficit)


# ---------------------------------------------------------------------------
# Min-max voter load
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LoadDistribution:
    """Sparse exact load matrix: (voter, member, load) with load > 0."""

    entries: tuple[tuple[int, int, Fraction], ...]

    def voter_loads(self, n: int) -> list[Fraction]:
        loads = [Fraction(0)] * n
        for v, _, x in self.entries:
            loads[v] += x
        return loads

    def max_voter_load(self, n: int) -> Fraction:
        loads = self.voter_loads(n)
        return max(loads) if loads else Fraction(0)


@dataclass(frozen=True)
class DualCertificate:
    """A voter set S whose wholly-contained members force the optimum.

    Each member in `tight_members` has all approvers inside `voters`, so any
    feasible distribution pushes len(tight_members) units of load into
    `voters`, giving max load >= value = len(tight_members) / len(voters).
    """

    voters: tuple[int, ...]
    tight_members: tuple[int, ...]

    @property
    def value(self) -> Fraction:
        return Fraction(len(self.tight_members), len(self.voters))


@dataclass(frozen=True)
class MinMaxLoadResult:
    value: Fraction
    distribution: LoadDistribution
    certificate: DualCertificate


def validate_load_distribution(e: Election, committee: Iterable[int], dist: LoadDistribution) -> None:
    """Exact feasibility check: loads in [0,1], only on approvers, unit sums."""
    w = set(_check_committee(e, committee))
    totals = {c: Fraction(0) for c in w}
    seen = set()
    for v, c, x in dist.entries:
        if not 0 <= v < e.n:
            raise ValueError(f"load entry names unknown voter {v}")
        if c not in w:
            raise ValueError(f"load entry names non-member {c}")
        if (v, c) in seen:
            raise ValueError(f"duplicate load entry for voter {v}, member {c}")
        seen.add((v, c))
        if not isinstance(x, Fraction) or not 0 <= x <= 1:
            raise ValueError(f"load {x} for voter {v}, member {c} outside [0, 1]")
        if c not in e.ballots[v]:
            raise ValueError(f"voter {v} carries load for unapproved member {c}")
        totals[c] += x
    for c, total in totals.items():
        if total != 1:
            raise ValueError(f"member {c} carries total load {total} != 1")


def _best_ratio_over_unions(member_masks: Sequence[int]) -> tuple[int, int, int]:
    """Max of |tight(S)| / |S| over unions S of member approver sets.

    Returns (count, size, voter_mask) for the best S: largest ratio, then
    largest S, then smallest mask, so the certificate is deterministic.
    Only unions need checking: any voter set S can be shrunk to the union
    of the approver sets of its tight members without changing them.
    """
    best = None
    r = len(member_masks)
    for mask_bits in range(1, 1 << r):
        s = 0
        bits = mask_bits
        i = 0
        while bits:
            if bits & 1:
                s |= member_masks[i]
            bits >>= 1
            i += 1
        count = sum(1 for am in member_masks if am & ~s == 0)
        size = s.bit_count()
        if (
            best is None
            or count * best[1] > best[0] * size
            or (count * best[1] == best[0] * size and (size, -s) > (best[1], -best[2]))
        ):
            best = (count, size, s)
    assert best is not None
    return best


def min_max_load_bruteforce_value(e: Election, committee: Iterable[int]) -> Fraction:
    """Oracle: sweep every non-empty voter subset, not just approver unions."""
    w = _check_committee(e, committee)
    if e.n > 18:
        raise ValueError(f"unrestricted subset sweep too large (n = {e.n})")
    masks = _approver_masks(e, w)
    if any(mask == 0 for mask in masks):
        raise InfeasibleCommittee(f"members without approvers: {_unapproved(e, w)}")
    best = Fraction(0)
    for s in range(1, 1 << e.n):
        count = sum(1 for am in masks if am & ~s == 0)
        if count:
            best = max(best, Fraction(count, s.bit_count()))
    return best


def _unapproved(e: Election, w: Committee) -> list[int]:
    masks = _approver_masks(e, w)
    return [c for c, mask in zip(w, masks) if mask == 0]


def min_max_value(e: Election, committee: Iterable[int]) -> Fraction:
    """The minimised heaviest voter load for `committee`, value only.

    Same optimum as `min_max_load(...).value` without building the witness
    distribution, for callers that compare many committees by this head."""
    w = _check_committee(e, committee)
    masks = _approver_masks(e, w)
    if any(mask == 0 for mask in masks):
        raise InfeasibleCommittee(f"members without approvers: {_unapproved(e, w)}")
    if oracle_mode:
        return min_max_load_bruteforce_value(e, w)
    count, size, _ = _best_ratio_over_unions(masks)
    return Fraction(count, size)


def min_max_load(e: Election, committee: Iterable[int]) -> MinMaxLoadResult:
    """Minimise the heaviest voter load for `committee`.

    Each member spreads exactly one unit of load over its approvers. The
    optimum is found through the certificate bound (it is tight, which the
    primal construction proves on every call); the returned distribution
    attains it, and the pair (distribution, certificate) is an exact
    optimality proof checked before returning.
    """
    w = _check_committee(e, committee)
    masks = _approver_masks(e, w)
    if any(mask == 0 for mask in masks):
        raise InfeasibleCommittee(f"members without approvers: {_unapproved(e, w)}")

    if oracle_mode:
        value = min_max_load_bruteforce_value(e, w)
        best = None
        for s in range(1, 1 << e.n):
            count = sum(1 for am in masks if am & ~s == 0)
            if count and Fraction(count, s.bit_count()) == value:
                cand = (count, s.bit_count(), s)
                if best is None or (cand[1], -cand[2]) > (best[1], -best[2]):
                    best = cand
        count, size, s = best  # type: ignore[misc]
    else:
        count, size, s = _best_ratio_over_unions(masks)

    value = Fraction(count, size)
    dist = _distribution_at(e, w, masks, value)
    if dist is None:
        raise RuntimeError("internal: certificate bound not attained by any distribution")
    validate_load_distribution(e, w, dist)
    if dist.max_voter_load(e.n) != value:
        raise RuntimeError("internal: distribution does not attain the certificate value")
    cert = DualCertificate(_bits(s), tuple(c for c, am in zip(w, masks) if am & ~s == 0))
    if cert.value != value:
        raise RuntimeError("internal: certificate value mismatch")
    return MinMaxLoadResult(value, dist, cert)


def _distribution_at(
    e: Election, w: Committee, masks: Sequence[int], cap: Fraction
) -> LoadDistribution | None:
    """Feasibility flow at per-voter cap; loads scaled by cap.denominator."""
    p, q = cap.numerator, cap.denominator
    k = len(w)
    src = 0
    member0 = 1
    voter0 = member0 + k
    sink = voter0 + e.n
    net = _MaxFlow(sink + 1)
    refs: list[tuple[int, int, tuple[int, int]]] = []
    for i in range(k):
        net.add(src, member0 + i, q)
        am = masks[i]
        v = 0
        while am:
            if am & 1:
                refs.append((v, w[i], net.add(member0 + i, voter0 + v, q)))
            am >>= 1
            v += 1
    for v in range(e.n):
        net.add(voter0 + v, sink, p)
    if net.max_flow(src, sink) != k * q:
        return None
    entries = []
    for v, c, ref in refs:
        f = net.flow_on(ref)
        if f:
            entries.append((v, c, Fraction(f, q)))
    return LoadDistribution(tuple(sorted(entries)))


# ---------------------------------------------------------------------------
# Most-even optimal load profile
# ---------------------------------------------------------------------------


def evenness_profile(e: Election, committee: Iterable[int]) -> tuple[Fraction, ...]:
    """Sorted (descending) voter loads of the most-even optimal distribution.

    Computed by peeling: the heaviest level is the best certificate ratio;
    its voters and the members contained in them leave the instance, and the
    rest recurses. Any feasible distribution's sorted load vector is
    lexicographically >= this profile, and `evenness_distribution` realises
    it exactly, so comparing profiles compares committees by "min max load,
    then evenness" with no approximation.
    """
    w = _check_committee(e, committee)
    levels, leftover = _peel_levels(e, w)
    profile: list[Fraction] = []
    for count, size, _, _ in levels:
        profile.extend([Fraction(count, size)] * size)
    profile.extend([Fraction(0)] * leftover)
    return tuple(profile)


def _peel_levels(
    e: Election, w: Committee
) -> tuple[list[tuple[int, int, int, tuple[int, ...]]], int]:
    masks = _approver_masks(e, w)
    if any(mask == 0 for mask in masks):
        raise InfeasibleCommittee(f"members without approvers: {_unapproved(e, w)}")
    remaining = list(zip(w, masks))
    levels = []
    voters_left = e.n
    while remaining:
        count, size, s = _best_ratio_over_unions([mask for _, mask in remaining])
        tight = tuple(c for c, mask in remaining if mask & ~s == 0)
        levels.append((count, size, s, tight))
        voters_left -= size
        nxt = []
        for c, mask in remaining:
            if mask & ~s != 0:
                rest = mask & ~s
                assert rest != 0
                nxt.append((c, rest))
        remaining = nxt
    return levels, voters_left


def evenness_distribution(e: Election, committee: Iterable[int]) -> LoadDistribution:
    """An explicit distribution whose sorted loads equal evenness_profile."""
    w = _check_committee(e, committee)
    levels, _ = _peel_levels(e, w)
    entries: list[tuple[int, int, Fraction]] = []
    for count, size, s, tight in levels:
        voters = _bits(s)
        vpos = {v: j for j, v in enumerate(voters)}
        src = 0
        member0 = 1
        voter0 = member0 + len(tight)
        sink = voter0 + len(voters)
        net = _MaxFlow(sink + 1)
        refs = []
        for i, c in enumerate(tight):
            net.add(src, member0 + i, size)
            for v in voters:
                if c in e.ballots[v]:
                    refs.append((v, c, net.add(member0 + i, voter0 + vpos[v], size)))
        for j in range(len(voters)):
            net.add(voter0 + j, sink, count)
        if net.max_flow(src, sink) != count * size:
            raise RuntimeError("internal: peel level is not realisable")
        for v, c, ref in refs:
            f = net.flow_on(ref)
            if f:
                entries.append((v, c, Fraction(f, size)))
    dist = LoadDistribution(tuple(sorted(entries)))
    validate_load_distribution(e, w, dist)
    return dist


# ---------------------------------------------------------------------------
# Perfect-representation assignment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrAssignment:
    """parts[i] = (member, voters): equal-size groups, unanimous approval."""

    parts: tuple[tuple[int, tuple[int, ...]], ...]


def pr_assignment(e: Election, committee: Iterable[int]) -> PrAssignment | None:
    """A perfect-representation witness for `committee`, or None.

    Partitions the voters into k groups of exactly n/k, one per member, with
    every group member approving its assigned candidate. Defined only when
    k divides n; raises ValueError otherwise.
    """
    w = _check_committee(e, committee)
    if e.n % e.k:
        raise ValueError(f"perfect representation needs k | n, got n={e.n}, k={e.k}")
    if oracle_mode:
        return pr_assignment_bruteforce(e, w)
    quota = e.n // e.k
    src = 0
    member0 = 1
    voter0 = member0 + e.k
    sink = voter0 + e.n
    net = _MaxFlow(sink + 1)
    refs = []
    for i, c in enumerate(w):
        net.add(src, member0 + i, quota)
        for v in range(e.n):
            if c in e.ballots[v]:
                refs.append((c, v, net.add(member0 + i, voter0 + v, 1)))
    for v in range(e.n):
        net.add(voter0 + v, sink, 1)
    if net.max_flow(src, sink) != e.n:
        return None
    groups: dict[int, list[int]] = {c: [] for c in w}
    for c, v, ref in refs:
        if net.flow_on(ref):
            groups[c].append(v)
    parts = tuple((c, tuple(sorted(groups[c]))) for c in w)
    _validate_pr(e, w, parts)
    return PrAssignment(parts)


def _validate_pr(e: Election, w: Committee, parts: tuple[tuple[int, tuple[int, ...]], ...]) -> None:
    quota = e.n // e.k
    seen: set[int] = set()
    for c, voters in parts:
        if len(voters) != quota:
            raise RuntimeError(f"internal: group for member {c} has size {len(voters)} != {quota}")
        for v in voters:
            if v in seen:
                raise RuntimeError(f"internal: voter {v} appears in two groups")
            seen.add(v)
            if c not in e.ballots[v]:
                raise RuntimeError(f"internal: voter {v} grouped under unapproved member {c}")
    if len(seen) != e.n:
        raise RuntimeError("internal: groups do not cover all voters")


def pr_assignment_bruteforce(e: Election, committee: Iterable[int]) -> PrAssignment | None:
    """Oracle: recursive partition search (small instances only)."""
    w = _check_committee(e, committee)
    if e.n % e.k:
        raise ValueError(f"perfect representation needs k | n, got n={e.n}, k={e.k}")
    if e.k**e.n > 4_000_000:
        raise ValueError(f"brute-force partition sweep too large (k^n = {e.k}^{e.n})")
    quota = e.n // e.k
    counts = [0] * e.k
    chosen = [-1] * e.n

    def rec(v: int) -> bool:
        if v == e.n:
            return True
        for i, c in enumerate(w):
            if counts[i] < quota and c in e.ballots[v]:
                counts[i] += 1
                chosen[v] = i
                if rec(v + 1):
                    return True
                counts[i] -= 1
        chosen[v] = -1
        return False

    if not rec(0):
        return None
    groups: dict[int, list[int]] = {c: [] for c in w}
    for v, i in enumerate(chosen):
        groups[w[i]].append(v)
    parts = tuple((c, tuple(sorted(groups[c]))) for c in w)
    _validate_pr(e, w, parts)
    return PrAssignment(parts)
