"""Exact solver for occurrence-at-most-2 systems, both routes."""

from __future__ import annotations

import random

import pytest

from maxlin2 import (
    Equation,
    F2Matrix,
    InstanceClassError,
    LinSystem,
    brute_force_min_falsified,
    evaluate,
    extend_assignment,
    f2_rank,
    f2_solve,
    normalize,
    prune_singletons,
    solve_occ2,
    solve_occ2_merge,
    split_components,
)
from helpers import random_system


def test_prune_cascade():
    system = LinSystem.build(3, [((0, 1), 1, 1), ((1, 2), 0, 1), ((2,), 1, 1)])
    pruned, log = prune_singletons(system)
    assert pruned.equations == ()
    assert len(log.steps) == 3
    extended = extend_assignment(log, (0, 0, 0))
    assert evaluate(system, extended)[1] == 0


def test_prune_no_singleton():
    system = LinSystem.build(2, [((0, 1), 0, 1), ((0, 1), 1, 1)])
    pruned, log = prune_singletons(system)
    assert pruned == system
    assert log.steps == ()


def test_prune_single_equation():
    system = LinSystem.build(1, [((0,), 1, 5)])
    pruned, log = prune_singletons(system)
    assert pruned.equations == ()
    assert len(log.steps) == 1
    assert log.steps[0].witness == 0
    assert log.steps[0].equation == Equation((0,), 1, 5)


def test_split_disjoint():
    system = LinSystem.build(4, [((0, 1), 0, 1), ((2, 3), 1, 1)])
    parts = split_components(system)
    assert len(parts.components) == 2
    assert parts.component_of == (0, 1)


def test_split_triangle():
    system = LinSystem.build(
        3, [((0, 1), 0, 1), ((1, 2), 0, 1), ((0, 2), 0, 1)]
    )
    parts = split_components(system)
    assert len(parts.components) == 1
    assert parts.equation_ids == ((0, 1, 2),)


def test_split_empty():
    assert split_components(LinSystem(0)).components == ()


def test_solve_occ2_inconsistent_triangle():
    system = LinSystem.build(
        3, [((0, 1), 1, 2), ((1, 2), 0, 3), ((0, 2), 0, 1)]
    )
    result = solve_occ2(system)
    assert result.falsified_weight == 1
    assert result.certificate == (2,)  # the weight-1 equation is dropped
    assert brute_force_min_falsified(system).falsified_weight == 1


def test_solve_occ2_consistent_triangle():
    system = LinSystem.build(
        3, [((0, 1), 0, 5), ((1, 2), 0, 5), ((0, 2), 0, 5)]
    )
    result = solve_occ2(system)
    assert result.falsified_weight == 0
    assert result.assignment == (0, 0, 0)


def test_solve_occ2_weighted_pair():
    system = LinSystem.build(1, [((0,), 0, 1), ((0,), 1, 2)])
    result = solve_occ2(system)
    assert result.falsified_weight == 1
    assert brute_force_min_falsified(system).falsified_weight == 1


def test_solve_occ2_rejects_occurrence_violation():
    system = LinSystem.build(2, [((0,), 0, 1), ((0,), 1, 1), ((0, 1), 0, 1)])
    with pytest.raises(InstanceClassError):
        solve_occ2(system)
    with pytest.raises(InstanceClassError):
        solve_occ2_merge(system)


def test_merge_contradictory_pair():
    assert solve_occ2_merge(LinSystem.build(1, [((0,), 0, 1), ((0,), 1, 2)])) == 1


def test_merge_consistent_chain():
    system = LinSystem.build(3, [((0, 1), 1, 2), ((1, 2), 0, 3)])
    assert solve_occ2_merge(system) == 0


def test_rank_structure_of_pruned_components():
    rng = random.Random(5150)
    checked = 0
    for _ in range(200):
        system = random_system(
            rng, max_vars=9, max_eqs=12, max_weight=4, max_occurrence=2
        )
        pruned, _ = prune_singletons(normalize(system))
        parts = split_components(pruned)
        for component in parts.components:
            if not component.equations:
                continue
            mat = F2Matrix.from_system(component)
            rows_sum = 0
            for row in mat.rows:
                rows_sum ^= row
            assert rows_sum == 0  # every variable occurs exactly twice
            assert f2_rank(mat) == len(mat.rows) - 1
            for drop in range(len(mat.rows)):
                kept_rows = tuple(r for i, r in enumerate(mat.rows) if i != drop)
                kept_rhs = tuple(b for i, b in enumerate(mat.rhs) if i != drop)
                sub = F2Matrix(mat.width, kept_rows, kept_rhs)
                assert f2_solve(sub) is not None
            checked += 1
    assert checked >= 50


def test_both_solvers_match_oracle():
    rng = random.Random(777)
    for _ in range(250):
        system = random_system(
            rng, max_vars=9, max_eqs=12, max_weight=5, max_occurrence=2
        )
        expected = brute_force_min_falsified(system).falsified_weight
        result = solve_occ2(system)
        assert result.falsified_weight == expected
        assert evaluate(system, result.assignment)[1] == expected
        assert solve_occ2_merge(system) == expected


def test_prune_preserves_optimum():
    rng = random.Random(4242)
    for _ in range(120):
        system = random_system(
            rng, max_vars=8, max_eqs=10, max_weight=4, max_occurrence=2
        )
        pruned, _ = prune_singletons(system)
        assert (
            brute_force_min_falsified(pruned).falsified_weight
            == brute_force_min_falsified(system).falsified_weight
        )
