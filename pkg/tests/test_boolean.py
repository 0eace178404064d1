import numpy as np
import pytest
from hypothesis import given, settings

from core.boolean import (
    BoolMatrix,
    BoolSet,
    backward_image,
    bool_negation,
    bool_product,
    bool_product_sgn,
    characteristic,
    characteristic_arithmetic,
    find_stable_by_operator,
    forward_image,
    grounded_fixpoint,
    grounded_fixpoint_arithmetic,
    grounded_trajectory,
    sgn,
    stable_operator,
)
from core.errors import SizeCapError
from core.extensions import enumerate_extensions
from core.framework import ArgSet, attacked_by, attackers, defends, is_conflict_free
from core.generator import generate_random
from strategies import frameworks


def _bs(af, names):
    return BoolSet.from_arg_set(af.argset(names), af.n)


def _names(af, g):
    return set(af.names(g.to_arg_set()))


def test_images_sample(sample):
    m = sample.matrix
    g = _bs(sample, ["x4"])
    assert _names(sample, forward_image(m, g)) == {"x2"}
    assert _names(sample, backward_image(m, _bs(sample, ["x2"]))) == {"x3", "x4"}
    assert forward_image(m, BoolSet.zeros(4)) == BoolSet.zeros(4)


def test_characteristic_sample(sample):
    m = sample.matrix
    assert _names(sample, characteristic(m, BoolSet.zeros(4))) == {"x4"}
    assert _names(sample, characteristic(m, _bs(sample, ["x4"]))) == {"x1", "x4"}


def test_grounded_trajectory_sample(sample):
    path = grounded_trajectory(sample.matrix)
    assert [_names(sample, g) for g in path] == [set(), {"x4"}, {"x1", "x4"}]
    assert _names(sample, grounded_fixpoint(sample.matrix)) == {"x1", "x4"}


def test_grounded_twin_trees(twin_trees):
    assert _names(twin_trees, grounded_fixpoint(twin_trees.matrix)) == {"x1", "x4", "x5", "y3", "y4", "y5"}


def test_grounded_edge_cases(two_cycle, attack_free):
    assert grounded_fixpoint(two_cycle.matrix) == BoolSet.zeros(2)
    assert grounded_fixpoint(attack_free.matrix) == BoolSet.ones(3)
    assert len(grounded_trajectory(attack_free.matrix)) == 2


def test_stable_operator_and_scan(two_cycle, sample):
    m = two_cycle.matrix
    assert stable_operator(m, BoolSet.of([0], 2)) == BoolSet.of([0], 2)
    found = find_stable_by_operator(m)
    assert [g.indices() for g in found] == [(0,), (1,)]
    assert find_stable_by_operator(sample.matrix) == []


def test_stable_scan_respects_cap():
    af = generate_random(6, 0.2, seed=1)
    with pytest.raises(SizeCapError) as info:
        find_stable_by_operator(af.matrix, cap=5)
    assert info.value.n == 6


def test_sgn():
    assert sgn(np.array([0.0, 0.3, 2.0])).tolist() == [0, 1, 1]
    with pytest.raises(ValueError):
        sgn(np.array([-0.1]))


def test_sgn_product_matches_boolean(sample):
    m = sample.matrix
    for bits in range(16):
        g = BoolSet(bits, 4)
        assert bool_product_sgn(m, g) == bool_product(m, g)
        assert bool_product_sgn(m, g, scale=0.5) == bool_product(m, g)
    with pytest.raises(ValueError):
        bool_product_sgn(m, BoolSet.zeros(4), scale=0.0)


def test_arithmetic_grounded(sample, twin_trees):
    for af in (sample, twin_trees):
        assert grounded_fixpoint_arithmetic(af.matrix, 0.98) == grounded_fixpoint(af.matrix)


def test_bool_set_helpers():
    g = BoolSet.of([0, 2], 4)
    assert g.as_array().tolist() == [1, 0, 1, 0]
    assert BoolSet.from_array(np.array([1, 0, 1, 0])) == g
    assert (~g).indices() == (1, 3)
    assert bool_negation(BoolSet.ones(3)) == BoolSet.zeros(3)
    assert g.issubset(BoolSet.ones(4))
    with pytest.raises(IndexError):
        BoolSet.of([4], 4)
    with pytest.raises(IndexError):
        BoolSet.from_arg_set(ArgSet.of([5]), 3)


def test_bool_matrix_round_trip(sample):
    bm = BoolMatrix.from_attack_matrix(sample.matrix)
    assert bm.as_array().tolist() == sample.matrix.entries.tolist()
    assert BoolMatrix.from_array(bm.as_array()) == bm
    assert bm.transpose().transpose() == bm
    assert bm.transpose().as_array().tolist() == sample.matrix.entries.T.tolist()


def test_product_rejects_length_mismatch(sample):
    with pytest.raises(ValueError):
        bool_product(sample.matrix, BoolSet.zeros(3))


@settings(max_examples=200, deadline=None)
@given(frameworks(max_n=6))
def test_matrix_forms_match_set_definitions(af):
    m = af.matrix
    for bits in range(1 << af.n):
        s = ArgSet(bits)
        g = BoolSet(bits, af.n)
        hit = forward_image(m, g)
        assert hit.to_arg_set() == attacked_by(af, s)
        assert backward_image(m, g).to_arg_set() == attackers(af, s)

        expected = 0
        for x in range(af.n):
            if defends(af, s, x):
                expected |= 1 << x
        assert characteristic(m, g).bits == expected
        assert characteristic_arithmetic(m, g, 0.9).bits == expected
        assert bool_product_sgn(m, g) == hit

        assert is_conflict_free(af, s) == (hit.bits & bits == 0)
        assert (stable_operator(m, g) == g) == (
            is_conflict_free(af, s) and (bits | hit.bits) == af.full.bits
        )


@settings(max_examples=500, deadline=None)
@given(frameworks(max_n=7))
def test_grounded_matches_brute_force(af):
    grounded = grounded_fixpoint(af.matrix).to_arg_set()
    assert enumerate_extensions(af, "grounded") == [grounded]
    path = grounded_trajectory(af.matrix)
    for prev, cur in zip(path, path[1:]):
        assert prev.issubset(cur) and prev != cur
    assert len(path) <= af.n + 1
    assert grounded_fixpoint_arithmetic(af.matrix, 0.5) == path[-1]


@settings(max_examples=500, deadline=None)
@given(frameworks(max_n=7))
def test_stable_matches_brute_force(af):
    by_operator = [g.to_arg_set() for g in find_stable_by_operator(af.matrix)]
    assert by_operator == enumerate_extensions(af, "stable")
    complete = set(enumerate_extensions(af, "complete"))
    assert all(s in complete for s in by_operator)
