"""Brute-force and pruned search: longest chains in a class, tight-chain
existence, inversion-monotonicity sweeps, and the spectrum of maximal
chain lengths."""

from __future__ import annotations

from dataclasses import dataclass
from graphlib import TopologicalSorter

import numpy as np

from .chains import BruhatStep, Chain
from .enumeration import ClassPoset, sigma_array
from .errors import MarginMismatch
from .matrices import (
    BinaryMatrix,
    Direction,
    Interchange,
    apply_interchange,
    canonical_key,
    cumulative_sums,
    find_interchanges,
    interchange_increment,
    inversion_count,
)


@dataclass
class SearchOutcome:
    """Result of a witness search."""

    found: bool
    witness: Chain | None
    explored: int
    budget_hit: bool


@dataclass
class MonotonicityReport:
    """Sweep over all strict comparability arcs of a class, flagging any
    arc whose inversion count fails to increase."""

    pairs_checked: int
    violations: list[tuple[BinaryMatrix, BinaryMatrix]]


def _topological_order(succ: list[list[int]]) -> list[int]:
    ts = TopologicalSorter({i: [] for i in range(len(succ))})
    for a, targets in enumerate(succ):
        for c in targets:
            ts.add(c, a)
    return list(ts.static_order())


def _longest_path(succ: list[list[int]], allowed: np.ndarray | None,
                  sources: list[int] | None = None) -> tuple[int, list[int]]:
    """Longest path (edge count) in the DAG, optionally restricted to the
    allowed node set and to paths starting at the given sources."""
    size = len(succ)
    neg = -(10**9)
    dist = [neg] * size
    pred = [-1] * size
    order = _topological_order(succ)
    if sources is None:
        for v in range(size):
            if allowed is None or allowed[v]:
                dist[v] = 0
    else:
        for v in sources:
            if allowed is None or allowed[v]:
                dist[v] = 0
    for v in order:
        if dist[v] < 0:
            continue
        for w in succ[v]:
            if allowed is not None and not allowed[w]:
                continue
            if dist[v] + 1 > dist[w]:
                dist[w] = dist[v] + 1
                pred[w] = v
    best = max(range(size), key=lambda v: dist[v])
    if dist[best] < 0:
        return 0, []
    path = []
    v = best
    while v != -1:
        path.append(v)
        v = pred[v]
    path.reverse()
    return dist[best], path


def longest_chain(poset: ClassPoset) -> tuple[int, Chain]:
    """Longest path over the poset's arc DAG, with the witness returned as
    a jump-step chain."""
    length, path = _longest_path(poset.succ, None)
    mats = [poset.members[v] for v in path]
    chain = Chain(mats[0], tuple(BruhatStep(a) for a in mats[1:]))
    return length, chain


def longest_chain_between(poset: ClassPoset, start_idx: int,
                          end_idx: int) -> int | None:
    """Maximum chain length from one member to another, or None when no
    path exists."""
    allowed = _interval_mask(poset, start_idx, end_idx)
    if not allowed[end_idx]:
        return None
    size = len(poset.succ)
    neg = -(10**9)
    dist = [neg] * size
    dist[start_idx] = 0
    for v in _topological_order(poset.succ):
        if dist[v] < 0:
            continue
        for w in poset.succ[v]:
            if allowed[w] and dist[v] + 1 > dist[w]:
                dist[w] = max(dist[w], dist[v] + 1)
    return dist[end_idx] if dist[end_idx] >= 0 else None


def _interval_mask(poset: ClassPoset, lo: int, hi: int) -> np.ndarray:
    """Members lying between two members in the Bruhat order."""
    if poset.mode == "full":
        return poset.leq[lo, :] & poset.leq[:, hi]
    sig = sigma_array(poset.members)
    return ((sig <= sig[lo]).all(axis=1)) & ((sig >= sig[hi]).all(axis=1))


def tight_chain_search(a: BinaryMatrix, c: BinaryMatrix,
                       budget: int = 10**6) -> SearchOutcome:
    """Depth-first search for an interchange chain from a to c whose
    inversion count rises by exactly one per step.

    Restricting moves to increment-one interchanges loses no witnesses:
    every step of a tight chain has increment exactly one.  States that
    stop dominating the target's partial-sum table are dead.  Dead states
    are memoized by canonical key."""
    if a.m != c.m or a.n != c.n or a.margins() != c.margins():
        raise MarginMismatch("endpoints are not in the same class")
    if inversion_count(a) > inversion_count(c):
        raise ValueError("start has more inversions than the target")
    sc = cumulative_sums(c).flat()

    def dominates(x: BinaryMatrix) -> bool:
        return all(u >= v for u, v in zip(cumulative_sums(x).flat(), sc))

    if not dominates(a):
        return SearchOutcome(False, None, 0, False)

    dead: set[bytes] = set()
    explored = 0
    budget_hit = False
    path: list[Interchange] = []

    def dfs(x: BinaryMatrix) -> bool:
        nonlocal explored, budget_hit
        if x == c:
            return True
        explored += 1
        if explored > budget:
            budget_hit = True
            return False
        for move in find_interchanges(x, Direction.ItoL):
            if interchange_increment(x, move) != 1:
                continue
            y = apply_interchange(x, move)
            key = canonical_key(y)
            if key in dead or not dominates(y):
                continue
            path.append(move)
            if dfs(y):
                return True
            path.pop()
            if budget_hit:
                return False
            dead.add(key)
        return False

    found = dfs(a)
    witness = Chain(a, tuple(path)) if found else None
    return SearchOutcome(found, witness, explored, budget_hit)


def monotonicity_check(poset: ClassPoset) -> MonotonicityReport:
    """Scan every strict comparability arc for an inversion-count
    non-increase.  A non-empty violation list is a re-verifiable
    counterexample certificate, not a failure."""
    checked = 0
    violations = []
    for a, c in poset.strict_pairs():
        checked += 1
        if poset.nu[a] >= poset.nu[c]:
            violations.append((poset.members[a], poset.members[c]))
    return MonotonicityReport(checked, violations)


def certificate(a: BinaryMatrix, c: BinaryMatrix) -> dict:
    """Self-contained JSON-ready certificate for a monotonicity violation."""
    return {
        "first": a.to_json_dict(),
        "second": c.to_json_dict(),
        "sigma_first": [list(r) for r in cumulative_sums(a).values],
        "sigma_second": [list(r) for r in cumulative_sums(c).values],
        "nu_first": inversion_count(a),
        "nu_second": inversion_count(c),
        "violated": "first strictly precedes second in the Bruhat order "
                    "but nu(first) >= nu(second)",
    }


def maximal_chain_spectrum(poset: ClassPoset) -> set[int]:
    """For every comparable (minimal, maximal) pair, the maximum chain
    length between them."""
    spectrum = set()
    for p in poset.minimal_indices():
        for q in poset.maximal_indices():
            length = longest_chain_between(poset, p, q)
            if length is not None:
                spectrum.add(length)
    return spectrum
