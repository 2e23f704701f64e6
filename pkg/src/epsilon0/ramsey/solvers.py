"""Greedy desk-scale solvers: cohesive sets, transitive subtournaments,
monotone subsequences, and the composed pair-coloring pipeline.

The pipeline mirrors the classical decomposition: build the family
R_x = {y : f(x,y) = 1} and extract a cohesive-style set G0; view the
induced coloring on G0 as a tournament and extract a transitive G1;
read the induced transitive coloring on G1 as a linear order and take a
monotone subsequence H; map back.  Monotone sequences of a transitive
coloring are one-colored, so the final set is homogeneous by
construction, and `verify_trace` re-derives every stage property from the
original coloring alone.

"Infinite" notions are finitized deterministically:

* limit classification replaces "for almost all y" by "for all y in the
  top-w window"; vertices agreeing with neither side are undecided;
* the cohesive solver walks the family once, keeping the larger side of
  each split (ties to side 1); when a split would leave fewer secured
  elements than the target, the reservoir's minimum is committed to the
  output first and the side re-chosen on the remainder; per-set
  thresholds record from which element on the containment promise holds;
* the ascending/descending solver classifies by the median predecessor
  count, runs the classification-directed split-pair greedy for the
  record, and returns the longest monotone subsequence in either
  direction (patience piles), whose length is at least ceil(sqrt(k)) on
  k decided elements.

Everything breaks ties the same way: smallest vertex, side 1 first,
ascending before descending.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass
from math import ceil
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .checkers import (
    coloring_is_transitive,
    is_homogeneous,
    order_from_transitive_coloring,
    tournament_from_coloring,
)
from .instances import LinearOrderInstance, PairColoring, SetFamily, Tournament
from .oracles import is_transitive_mask

__all__ = [
    "Classification", "limit_classification",
    "CohResult", "EmptyCellError", "coh_solve",
    "EmResult", "em_solve", "em_solve_masks",
    "AdsResult", "ads_solve",
    "SolverTrace", "TraceCheck", "rt22_solve", "verify_trace",
    "default_window",
]

UNDECIDED = -1


def default_window(n: int) -> int:
    return max(1, ceil(n / 3)) if n else 0


@dataclass(frozen=True)
class Classification:
    """Window-limit partition of the vertices of a tournament."""

    window: int
    a0: FrozenSet[int]
    a1: FrozenSet[int]
    undecided: FrozenSet[int]

    def side(self, x: int) -> int:
        if x in self.a0:
            return 0
        if x in self.a1:
            return 1
        return UNDECIDED


def _classify_masks(n: int, out: Sequence[int], w: int) -> List[int]:
    full = (1 << n) - 1
    wmask = full & ~((1 << max(n - w, 0)) - 1)
    sides = []
    for x in range(n):
        rest = wmask & ~(1 << x)
        beaten_by_all = rest & out[x] == 0          # every window vertex beats x
        beats_all = rest & ~out[x] & full == 0      # x beats every window vertex
        if beaten_by_all:
            sides.append(1)
        elif beats_all:
            sides.append(0)
        else:
            sides.append(UNDECIDED)
    return sides


def limit_classification(r: Tournament, w: int) -> Classification:
    """x is in A0 when it beats everything in the window [n-w, n) other
    than itself, in A1 when everything there beats it, else undecided.
    A vacuously empty window assigns side 1."""
    if w > r.n or w < 0:
        raise ValueError(f"window must lie in [0, {r.n}]")
    sides = _classify_masks(r.n, r.out, w)
    return Classification(
        window=w,
        a0=frozenset(x for x in range(r.n) if sides[x] == 0),
        a1=frozenset(x for x in range(r.n) if sides[x] == 1),
        undecided=frozenset(x for x in range(r.n) if sides[x] == UNDECIDED),
    )


# ---------------------------------------------------------------------------
# Cohesive stage
# ---------------------------------------------------------------------------

class EmptyCellError(ValueError):
    """The family ran out of elements before any cell was secured."""

    def __init__(self, prefix: Tuple[int, ...]):
        super().__init__(f"empty cell at side prefix {''.join(map(str, prefix))!r}")
        self.prefix = prefix


@dataclass(frozen=True)
class CohResult:
    chosen: Tuple[int, ...]       # the set C, ascending
    sides: Tuple[int, ...]        # 0 = complement, 1 = the set itself
    thresholds: Tuple[int, ...]   # C above thresholds[i] honors sides[i]


def coh_solve(family: SetFamily, target: int) -> CohResult:
    """Greedy one-pass refinement through the family.

    For each set the side retaining more of the current reservoir wins
    (ties to side 1).  When the winning side would leave fewer than
    `target` elements secured (committed plus surviving), the reservoir's
    minimum is committed to the output first and the side is re-chosen on
    the remainder; committed elements are excused from the current and all
    later sets, which the recorded thresholds express (threshold n means
    the set constrains nothing).  The output is the committed prefix plus
    the smallest surviving reservoir elements, up to `target` in total;
    for a universe of at least two elements and target >= 2 it always has
    at least two elements.
    """
    n = family.n
    if not 0 <= target <= n:
        raise ValueError("target must lie in [0, n]")
    masks = family.masks()
    full = (1 << n) - 1 if n else 0
    reservoir = full
    committed: List[int] = []
    sides: List[int] = []
    thresholds: List[int] = []

    def split(pool: int, mask: int) -> Tuple[int, int]:
        inside = pool & mask
        outside = pool & ~mask
        side = 1 if inside.bit_count() >= outside.bit_count() else 0
        return side, (inside if side else outside)

    for mask in masks:
        if not reservoir and not committed:
            raise EmptyCellError(tuple(sides))
        side, cell = split(reservoir, mask)
        if reservoir and len(committed) + cell.bit_count() < target:
            committed.append((reservoir & -reservoir).bit_length() - 1)
            reservoir &= reservoir - 1
            side, cell = split(reservoir, mask)
        reservoir = cell
        sides.append(side)
        thresholds.append((reservoir & -reservoir).bit_length() - 1 if reservoir else n)
    while len(committed) < target and reservoir:
        committed.append((reservoir & -reservoir).bit_length() - 1)
        reservoir &= reservoir - 1
    return CohResult(tuple(committed), tuple(sides), tuple(thresholds))


# ---------------------------------------------------------------------------
# Transitive stage
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmResult:
    subset: Tuple[int, ...]
    classification: Classification
    # one record per vertex added by the main pass:
    # (vertex, side, reservoir mask before the addition)
    steps: Tuple[Tuple[int, int, int], ...]
    completed: Tuple[int, ...]  # vertices added by the closure pass


def em_solve_masks(n: int, out: Sequence[int], w: int) -> Tuple[int, List[Tuple[int, int, int]], List[int]]:
    """Core of em_solve on raw out-masks; returns (subset mask, steps,
    completions).  Kept allocation-light for exhaustive sweeps."""
    sides = _classify_masks(n, out, w)
    full = (1 << n) - 1
    reservoir = full
    chosen = 0
    steps: List[Tuple[int, int, int]] = []
    for x in range(n):
        if not (reservoir >> x) & 1:
            continue
        side = sides[x]
        if side == UNDECIDED:
            continue
        steps.append((x, side, reservoir))
        chosen |= 1 << x
        above = full & ~((1 << (x + 1)) - 1)
        keep = out[x] if side == 0 else ~out[x]
        reservoir &= above & keep
    completed: List[int] = []
    for x in range(n):
        if (chosen >> x) & 1:
            continue
        candidate = chosen | (1 << x)
        if is_transitive_mask(out, candidate):
            chosen = candidate
            completed.append(x)
    return chosen, steps, completed


def em_solve(r: Tournament, w: Optional[int] = None) -> EmResult:
    """Grow a transitive subtournament.

    The main pass takes the least unused vertex whose window class is
    decided and inserts it into the minimal interval the reservoir
    occupies; the reservoir then shrinks to the side of the new vertex
    matching its class (class 0 keeps its out-neighbors, class 1 its
    in-neighbors), so the set stays transitive by construction.  A closure
    pass then inserts every remaining vertex that still fits some minimal
    interval.  The result is transitive for every tournament and window.
    """
    if w is None:
        w = default_window(r.n)
    if w > r.n or w < 0:
        raise ValueError(f"window must lie in [0, {r.n}]")
    chosen, steps, completed = em_solve_masks(r.n, r.out, w)
    subset = tuple(x for x in range(r.n) if (chosen >> x) & 1)
    return EmResult(
        subset=subset,
        classification=limit_classification(r, w),
        steps=tuple(steps),
        completed=tuple(completed),
    )


# ---------------------------------------------------------------------------
# Monotone stage
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdsResult:
    direction: str                      # "ascending" or "descending"
    sequence: Tuple[int, ...]           # vertices, increasing; monotone in L
    ascending: Tuple[int, ...]          # best ascending candidate
    descending: Tuple[int, ...]         # best descending candidate
    u_set: FrozenSet[int]               # median classification: few predecessors
    v_set: FrozenSet[int]
    greedy_ascending: Tuple[int, ...]   # classification-directed greedy pair
    greedy_descending: Tuple[int, ...]


def _patience_lis(keys: Sequence[int]) -> List[int]:
    """Indices of one longest strictly increasing subsequence of distinct
    keys, via patience piles with backpointers."""
    tops: List[int] = []
    top_idx: List[int] = []
    back: List[Optional[int]] = [None] * len(keys)
    for i, key in enumerate(keys):
        pos = bisect_left(tops, key)
        if pos == len(tops):
            tops.append(key)
            top_idx.append(i)
        else:
            tops[pos] = key
            top_idx[pos] = i
        back[i] = top_idx[pos - 1] if pos > 0 else None
    if not top_idx:
        return []
    chain = []
    j: Optional[int] = top_idx[-1]
    while j is not None:
        chain.append(j)
        j = back[j]
    chain.reverse()
    return chain


def _split_pair_greedy(order: LinearOrderInstance,
                       in_u: Sequence[bool]) -> Tuple[List[int], List[int]]:
    """First-fit split-pair greedy: U-vertices may extend the ascending
    run, V-vertices the descending run, subject to the pair invariant
    max_L(ascending) <_L min_L(descending)."""
    rank = order.ranking
    asc: List[int] = []
    desc: List[int] = []
    for x in range(order.n):
        if in_u[x]:
            if (not asc or rank[x] > rank[asc[-1]]) and (not desc or rank[x] < rank[desc[-1]]):
                asc.append(x)
        else:
            if (not desc or rank[x] < rank[desc[-1]]) and (not asc or rank[asc[-1]] < rank[x]):
                desc.append(x)
    return asc, desc


def ads_solve(order: LinearOrderInstance) -> AdsResult:
    """Longest ascending-or-descending subsequence, with the split-pair
    greedy recorded alongside.

    Vertices with fewer than n/2 predecessors form U, the rest V; the
    class-directed greedy documents the split-pair construction, while the
    returned sequence is the better of the longest ascending and longest
    descending subsequences (ties to ascending), which guarantees length
    at least ceil(sqrt(k)) for k decided vertices.
    """
    n = order.n
    rank = order.ranking
    in_u = [rank[x] * 2 < n for x in range(n)]
    greedy_asc, greedy_desc = _split_pair_greedy(order, in_u)
    ascending = _patience_lis(rank)
    descending = _patience_lis([-r for r in rank])
    if len(ascending) >= len(descending):
        direction, sequence = "ascending", ascending
    else:
        direction, sequence = "descending", descending
    return AdsResult(
        direction=direction,
        sequence=tuple(sequence),
        ascending=tuple(ascending),
        descending=tuple(descending),
        u_set=frozenset(x for x in range(n) if in_u[x]),
        v_set=frozenset(x for x in range(n) if not in_u[x]),
        greedy_ascending=tuple(greedy_asc),
        greedy_descending=tuple(greedy_desc),
    )


# ---------------------------------------------------------------------------
# Composed pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SolverTrace:
    """Record of one pipeline run; all vertex sets use original ids."""

    n: int
    window: int
    cohesive_set: Tuple[int, ...]
    cohesive_sides: Tuple[int, ...]
    cohesive_thresholds: Tuple[int, ...]
    transitive_set: Tuple[int, ...]
    transitive_steps: Tuple[Tuple[int, int], ...]  # (vertex, class side)
    monotone_direction: str
    monotone_set: Tuple[int, ...]
    final_set: Tuple[int, ...]
    final_color: int

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "window": self.window,
            "cohesive_set": list(self.cohesive_set),
            "cohesive_sides": list(self.cohesive_sides),
            "cohesive_thresholds": list(self.cohesive_thresholds),
            "transitive_set": list(self.transitive_set),
            "transitive_steps": [list(s) for s in self.transitive_steps],
            "monotone_direction": self.monotone_direction,
            "monotone_set": list(self.monotone_set),
            "final_set": list(self.final_set),
            "final_color": self.final_color,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "SolverTrace":
        data = json.loads(text)
        return cls(
            n=data["n"],
            window=data["window"],
            cohesive_set=tuple(data["cohesive_set"]),
            cohesive_sides=tuple(data["cohesive_sides"]),
            cohesive_thresholds=tuple(data["cohesive_thresholds"]),
            transitive_set=tuple(data["transitive_set"]),
            transitive_steps=tuple(tuple(s) for s in data["transitive_steps"]),
            monotone_direction=data["monotone_direction"],
            monotone_set=tuple(data["monotone_set"]),
            final_set=tuple(data["final_set"]),
            final_color=data["final_color"],
        )


def family_from_coloring(f: PairColoring) -> SetFamily:
    """R_x = {y : f(x, y) = 1}, one set per vertex."""
    sets = []
    for x in range(f.n):
        sets.append(frozenset(y for y in range(f.n) if y != x and f.color(x, y)))
    return SetFamily(f.n, tuple(sets))


def rt22_solve(f: PairColoring, window: Optional[int] = None) -> SolverTrace:
    """Full pipeline on a pair coloring; the result is always homogeneous.

    Each stage re-indexes its input set to 0..k-1, solves, and maps back.
    The per-stage window defaults to ceil(size/3), or the given window
    clipped to the stage size.
    """
    if f.n < 1:
        raise ValueError("the coloring needs at least one vertex")

    coh = coh_solve(family_from_coloring(f), target=f.n)
    g0 = list(coh.chosen)

    g_on_g0 = f.restrict(g0)
    w0 = min(window, len(g0)) if window is not None else default_window(len(g0))
    em = em_solve(tournament_from_coloring(g_on_g0), w0)
    g1 = [g0[a] for a in em.subset]

    g_on_g1 = f.restrict(g1)
    order = order_from_transitive_coloring(g_on_g1)
    ads = ads_solve(order)
    h = [g1[a] for a in ads.sequence]

    final_check = is_homogeneous(f, h)
    return SolverTrace(
        n=f.n,
        window=w0,
        cohesive_set=tuple(g0),
        cohesive_sides=coh.sides,
        cohesive_thresholds=coh.thresholds,
        transitive_set=tuple(g1),
        transitive_steps=tuple((g0[x], side) for x, side, _ in em.steps),
        monotone_direction=ads.direction,
        monotone_set=tuple(h),
        final_set=tuple(h),
        final_color=final_check.color if final_check.ok else -1,
    )


@dataclass(frozen=True)
class TraceCheck:
    ok: bool
    stage: Optional[str] = None  # first failing stage
    detail: str = ""


def verify_trace(trace: SolverTrace, f: PairColoring) -> TraceCheck:
    """Re-check every stage inclusion and defining property from scratch.

    Stages are checked in pipeline order — cohesive, transitive, monotone,
    final — and the first failure is reported.
    """
    n = f.n
    if trace.n != n:
        return TraceCheck(False, "cohesive", "vertex count mismatch")
    c = list(trace.cohesive_set)
    if c != sorted(set(c)) or any(x < 0 or x >= n for x in c):
        return TraceCheck(False, "cohesive", "not an ascending subset of the universe")
    if len(trace.cohesive_sides) != n or len(trace.cohesive_thresholds) != n:
        return TraceCheck(False, "cohesive", "one side and threshold per vertex set required")
    for i in range(n):
        side, thr = trace.cohesive_sides[i], trace.cohesive_thresholds[i]
        for x in c:
            if x < thr:
                continue
            member = x != i and f.color(i, x) == 1
            if member != bool(side):
                return TraceCheck(
                    False, "cohesive",
                    f"element {x} above threshold {thr} breaks side {side} of set {i}")

    g1 = list(trace.transitive_set)
    if not set(g1) <= set(c) or g1 != sorted(set(g1)):
        return TraceCheck(False, "transitive", "not a subset of the cohesive stage")
    check = coloring_is_transitive(f, g1)
    if not check.ok:
        return TraceCheck(False, "transitive", f"not transitive, witness {check.witness}")

    h = list(trace.monotone_set)
    if not set(h) <= set(g1) or h != sorted(set(h)):
        return TraceCheck(False, "monotone", "not a subset of the transitive stage")
    if trace.monotone_direction not in ("ascending", "descending"):
        return TraceCheck(False, "monotone", "unknown direction")
    want = 1 if trace.monotone_direction == "ascending" else 0
    for i in range(len(h)):
        for j in range(i + 1, len(h)):
            if f.color(h[i], h[j]) != want:
                return TraceCheck(
                    False, "monotone",
                    f"pair ({h[i]},{h[j]}) breaks {trace.monotone_direction} monotonicity")

    if list(trace.final_set) != h:
        return TraceCheck(False, "final", "final set differs from the monotone stage")
    final = is_homogeneous(f, trace.final_set)
    if not final.ok:
        return TraceCheck(False, "final", f"not homogeneous, witness {final.witness}")
    if final.color != trace.final_color:
        return TraceCheck(False, "final", "recorded color disagrees with the checker")
    return TraceCheck(True)
