"""Greedy solvers and the composed pipeline."""

import itertools

import pytest

from epsilon0.generate import make_coloring, make_order, make_tournament
from epsilon0.ramsey import (
    EmptyCellError, LinearOrderInstance, PairColoring, SetFamily, Tournament,
    SolverTrace, ads_solve, brute_max_homogeneous, brute_max_transitive,
    coh_solve, em_solve, is_homogeneous, is_transitive, limit_classification,
    rt22_solve, verify_trace,
)
from epsilon0.ramsey.instances import pair_count
from epsilon0.ramsey.solvers import family_from_coloring
from epsilon0.sweep import ascdesc_bound, verify_cohesive


def pentagon():
    return PairColoring.from_function(5, lambda x, y: abs(x - y) in (1, 4))


def three_cycle():
    return Tournament(3, (0b010, 0b100, 0b001))


# ---------------------------------------------------------------------------
# limit classification
# ---------------------------------------------------------------------------

def test_classification_natural_orientation():
    natural = Tournament.from_order(range(6))
    cls = limit_classification(natural, 1)
    # every vertex beats the window above it; the last is vacuously side 1
    assert sorted(cls.a0) == [0, 1, 2, 3, 4]
    assert sorted(cls.a1) == [5]
    assert not cls.undecided
    for w in range(1, 7):
        cls = limit_classification(natural, w)
        assert set(range(6 - w)) <= cls.a0


def test_classification_reversed_orientation():
    reverse = Tournament.from_order(range(5, -1, -1))
    cls = limit_classification(reverse, 1)
    assert sorted(cls.a1) == [0, 1, 2, 3, 4, 5]
    for w in range(1, 7):
        cls = limit_classification(reverse, w)
        assert set(range(6 - w)) <= cls.a1


def test_classification_mixed_is_undecided():
    # vertex 0 beats 3 but loses to 2, so with window {2,3} it is undecided
    r = Tournament.from_order([1, 3, 0, 2])
    assert r.beats(0, 3) and r.beats(2, 0)
    cls = limit_classification(r, 2)
    assert 0 in cls.undecided
    total = cls.a0 | cls.a1 | cls.undecided
    assert total == frozenset(range(4))
    assert not (cls.a0 & cls.a1) and not (cls.a0 & cls.undecided)


def test_classification_window_bounds():
    with pytest.raises(ValueError):
        limit_classification(three_cycle(), 4)
    with pytest.raises(ValueError):
        limit_classification(three_cycle(), -1)


# ---------------------------------------------------------------------------
# cohesive solver
# ---------------------------------------------------------------------------

def test_coh_single_split():
    family = SetFamily(8, (frozenset({0, 2, 4, 6}),))
    result = coh_solve(family, 3)
    assert result.sides == (1,)  # evens tie odds 4 >= 4, side 1 wins
    assert set(result.chosen) <= {0, 2, 4, 6}
    assert len(result.chosen) == 3
    assert verify_cohesive(family, result)


def test_coh_two_splits_lands_in_largest_cell():
    evens = frozenset(range(0, 12, 2))
    m3 = frozenset(range(0, 12, 3))
    family = SetFamily(12, (evens, m3))
    result = coh_solve(family, 4)
    cells = [evens & m3, evens - m3,
             (frozenset(range(12)) - evens) & m3,
             (frozenset(range(12)) - evens) - m3]
    largest = max(len(c) for c in cells)
    landed = [c for c in cells if set(result.chosen) <= c]
    assert landed and len(landed[0]) == largest
    assert verify_cohesive(family, result)


def test_coh_empty_family():
    result = coh_solve(SetFamily(7, ()), 5)
    assert result.chosen == (0, 1, 2, 3, 4)
    assert result.sides == () and result.thresholds == ()


def test_coh_empty_universe_reports_failing_prefix():
    with pytest.raises(EmptyCellError) as err:
        coh_solve(SetFamily(0, (frozenset(),)), 0)
    assert err.value.prefix == ()


def test_coh_secures_two_for_small_universes():
    for n in (2, 3, 4, 5, 6):
        for code in range(1 << pair_count(n)):
            family = family_from_coloring(PairColoring(n, code))
            result = coh_solve(family, n)
            assert len(result.chosen) >= 2
            assert verify_cohesive(family, result)


def test_coh_random_families():
    from epsilon0.generate import make_family

    for i in range(300):
        family = make_family(10, seed=i)
        result = coh_solve(family, 10)
        assert verify_cohesive(family, result)
        assert list(result.chosen) == sorted(set(result.chosen))


# ---------------------------------------------------------------------------
# transitive solver
# ---------------------------------------------------------------------------

def test_em_transitive_tournament_full_for_every_window():
    for n in (1, 2, 3, 5, 8):
        natural = Tournament.from_order(range(n))
        for w in range(n + 1):
            assert em_solve(natural, w).subset == tuple(range(n))


def test_em_three_cycle():
    result = em_solve(three_cycle())
    assert len(result.subset) == 2
    assert is_transitive(three_cycle(), result.subset).ok
    assert brute_max_transitive(three_cycle())[0] == 2


def test_em_singleton():
    assert em_solve(Tournament(1, (0,))).subset == (0,)


def test_em_exhaustive_small():
    for n in range(1, 7):
        for code in range(1 << pair_count(n)):
            r = Tournament.from_bits(n, code)
            result = em_solve(r)
            assert is_transitive(r, result.subset).ok
            assert brute_max_transitive(r)[0] >= len(result.subset)


def test_em_random_windows():
    for i in range(300):
        n = 4 + i % 9
        r = make_tournament(n, seed=i)
        for w in (1, 2, n // 2, n):
            result = em_solve(r, w)
            assert is_transitive(r, result.subset).ok
            assert len(result.subset) >= 1
            # main-pass steps plus completions account for the whole set
            built = sorted([s[0] for s in result.steps] + list(result.completed))
            assert built == sorted(result.subset)


# ---------------------------------------------------------------------------
# monotone solver
# ---------------------------------------------------------------------------

def test_ads_identity_and_reversed():
    identity = ads_solve(LinearOrderInstance(5, (0, 1, 2, 3, 4)))
    assert identity.direction == "ascending"
    assert identity.sequence == (0, 1, 2, 3, 4)

    reverse = ads_solve(LinearOrderInstance(5, (4, 3, 2, 1, 0)))
    assert reverse.direction == "descending"
    assert reverse.sequence == (0, 1, 2, 3, 4)


def test_ads_mixed_shape_candidates():
    """On the half-ascending, half-descending order the descending
    candidate is the tail block; the ascending candidate is longer and
    wins."""
    result = ads_solve(LinearOrderInstance(6, (0, 2, 4, 5, 3, 1)))
    assert result.descending == (3, 4, 5)  # L-values 5, 3, 1
    assert result.ascending == (0, 1, 2, 3)  # L-values 0, 2, 4, 5
    assert result.direction == "ascending" and len(result.sequence) == 4
    assert result.u_set == frozenset({0, 1, 5})
    assert result.greedy_ascending == (0, 1)
    assert result.greedy_descending == (2, 4)


def test_ads_output_monotone_both_orders():
    for i in range(500):
        n = 2 + i % 15
        order = make_order(n, seed=i)
        result = ads_solve(order)
        seq = result.sequence
        assert list(seq) == sorted(seq)
        ranks = [order.ranking[x] for x in seq]
        if result.direction == "ascending":
            assert ranks == sorted(ranks)
        else:
            assert ranks == sorted(ranks, reverse=True)


def test_ads_sqrt_bound_exhaustive():
    for n in range(1, 9):
        bound = ascdesc_bound(n)
        for perm in itertools.permutations(range(n)):
            result = ads_solve(LinearOrderInstance(n, perm))
            assert len(result.sequence) >= bound, (perm, result)


def _longest_monotone_dp(order, ascending):
    """Quadratic DP oracle for the longest monotone subsequence length."""
    n = order.n
    best = [1] * n
    for j in range(n):
        for i in range(j):
            if order.less(i, j) == ascending and best[i] + 1 > best[j]:
                best[j] = best[i] + 1
    return max(best, default=0)


def test_ads_candidates_are_maximum_length():
    for n in range(1, 8):
        for perm in itertools.permutations(range(n)):
            order = LinearOrderInstance(n, perm)
            result = ads_solve(order)
            assert len(result.ascending) == _longest_monotone_dp(order, True)
            assert len(result.descending) == _longest_monotone_dp(order, False)


def test_ads_greedy_pair_is_a_split_pair():
    for i in range(300):
        order = make_order(9, seed=i)
        result = ads_solve(order)
        asc, desc = result.greedy_ascending, result.greedy_descending
        assert set(asc) <= result.u_set and set(desc) <= result.v_set
        if asc and desc:
            assert max(order.ranking[x] for x in asc) < min(order.ranking[x] for x in desc)


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------

def test_rt22_all_zero():
    f = PairColoring(6, 0)
    trace = rt22_solve(f)
    assert len(trace.final_set) >= 3
    assert trace.final_color == 0
    assert verify_trace(trace, f).ok


def test_rt22_pentagon():
    f = pentagon()
    trace = rt22_solve(f)
    assert len(trace.final_set) == 2
    assert is_homogeneous(f, trace.final_set).ok
    assert brute_max_homogeneous(f)[0] == 2
    assert verify_trace(trace, f).ok


def test_rt22_exhaustive_small():
    for n in (1, 2, 3, 4, 5):
        for code in range(1 << pair_count(n)):
            f = PairColoring(n, code)
            trace = rt22_solve(f)
            assert is_homogeneous(f, trace.final_set).ok
            assert verify_trace(trace, f).ok
            if n >= 2:
                assert len(trace.final_set) >= 2


def test_rt22_stage_inclusions():
    import os

    count = 2000 if os.environ.get("EPS0_FULL") else 600
    for i in range(count):
        n = 5 + i % 20
        f = make_coloring(n, seed=i)
        t = rt22_solve(f)
        assert set(t.final_set) == set(t.monotone_set)
        assert set(t.monotone_set) <= set(t.transitive_set) <= set(t.cohesive_set)
        assert set(t.cohesive_set) <= set(range(n))
        assert is_homogeneous(f, t.final_set).ok
        assert verify_trace(t, f).ok
        assert len(t.final_set) >= 2


def test_rt22_respects_window_argument():
    f = make_coloring(12, seed=5)
    for w in (1, 2, 3, 6):
        trace = rt22_solve(f, window=w)
        assert verify_trace(trace, f).ok


def test_rt22_rejects_empty():
    with pytest.raises(ValueError):
        rt22_solve(PairColoring(0, 0))


def test_trace_json_roundtrip():
    trace = rt22_solve(pentagon())
    again = SolverTrace.from_json(trace.to_json())
    assert again == trace


# ---------------------------------------------------------------------------
# trace verification catches corruption
# ---------------------------------------------------------------------------

def _mutate(trace, **kwargs):
    from dataclasses import replace
    return replace(trace, **kwargs)


def test_verify_trace_stage_detection():
    f = make_coloring(8, seed=11)
    trace = rt22_solve(f)
    assert verify_trace(trace, f).ok

    broken = _mutate(trace, cohesive_set=trace.cohesive_set + (7,)
                     if 7 not in trace.cohesive_set else trace.cohesive_set[:-1])
    outcome = verify_trace(broken, f)
    assert not outcome.ok

    outside = [x for x in range(8) if x not in trace.cohesive_set]
    assert outside, "seed 11 must leave a vertex outside the cohesive stage"
    not_subset = _mutate(trace, transitive_set=tuple(sorted(set(trace.transitive_set) | {outside[0]})))
    outcome = verify_trace(not_subset, f)
    assert not outcome.ok and outcome.stage == "transitive"

    flipped = _mutate(trace, monotone_direction=(
        "descending" if trace.monotone_direction == "ascending" else "ascending"))
    if len(trace.monotone_set) >= 2:
        outcome = verify_trace(flipped, f)
        assert not outcome.ok and outcome.stage == "monotone"

    bad_final = _mutate(trace, final_set=trace.final_set[:-1])
    outcome = verify_trace(bad_final, f)
    assert not outcome.ok and outcome.stage == "final"

    bad_color = _mutate(trace, final_color=1 - trace.final_color)
    outcome = verify_trace(bad_color, f)
    assert not outcome.ok and outcome.stage == "final"
