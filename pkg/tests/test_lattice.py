import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from removal_bounds.errors import BudgetExceededError, DimensionMismatchError
from removal_bounds.lattice import counting
from removal_bounds.lattice.counting import (
    ShiftDirection,
    ShiftResult,
    count_additive_triples,
    find_good_shift,
    find_good_single_shift,
    iter_additive_pairs,
    lattice_count,
    recount_shift,
    shifted_sets,
)
from removal_bounds.lattice.geometry import (
    BallSpec,
    PointSet,
    ball_volume,
    enumerate_ball,
    enumerate_box,
    radius_for_volume,
    translate_to_orthant,
)


def brute_ball(spec: BallSpec, reach: int):
    return {p for p in itertools.product(range(-reach, reach + 1), repeat=spec.dim) if spec.contains(p)}


def test_enumerate_box_is_lexicographic():
    box = enumerate_box((0, 0), (1, 2))
    assert len(box) == 6
    assert box.to_list() == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]


def test_enumerate_box_empty_when_inverted():
    assert len(enumerate_box((3,), (1,))) == 0


def test_enumerate_box_budget():
    with pytest.raises(BudgetExceededError) as info:
        enumerate_box((0, 0, 0), (9, 9, 9), budget=100)
    assert info.value.requested == 1000
    assert info.value.limit == 100


@pytest.mark.parametrize("radius_sq, expected", [(0, 1), (1, 5), (2, 9), (4, 13), (5, 21)])
def test_enumerate_ball_counts_in_the_plane(radius_sq, expected):
    spec = BallSpec(dim=2, radius_sq=radius_sq, center=(0, 0))
    assert len(enumerate_ball(spec)) == expected


def test_enumerate_ball_with_rational_center():
    spec = BallSpec(dim=1, radius_sq=Fraction(1, 4), center=(Fraction(1, 2),))
    assert enumerate_ball(spec).to_list() == [(0,), (1,)]


@pytest.mark.parametrize("dim", [1, 2, 3, 4])
@pytest.mark.parametrize("radius", [1.0, 2.3, 4.0, 6.0])
def test_enumerate_ball_matches_membership(dim, radius):
    spec = BallSpec.from_radius(dim, radius).shifted([Fraction(k + 1, 7) for k in range(dim)])
    assert set(enumerate_ball(spec)) == brute_ball(spec, math.ceil(radius) + 1)


@pytest.mark.parametrize("dim", [1, 2, 3, 4])
def test_enumerate_ball_grows_with_radius(dim):
    center = [Fraction(1, 3)] * dim
    previous = set()
    for radius_sq in range(0, 26):
        current = set(enumerate_ball(BallSpec(dim=dim, radius_sq=radius_sq, center=center)))
        assert previous <= current
        previous = current


@pytest.mark.parametrize("dim", [1, 2, 3, 4])
def test_centered_ball_is_symmetric(dim):
    points = enumerate_ball(BallSpec.from_radius(dim, 3.7))
    assert set(points) == {tuple(-v for v in p) for p in points}


def test_ball_spec_rejects_bad_center():
    with pytest.raises(ValueError):
        BallSpec(dim=2, radius_sq=1, center=(0,))


def test_ball_spec_rejects_negative_radius():
    with pytest.raises(ValueError):
        BallSpec(dim=1, radius_sq=-1, center=(0,))


def test_from_radius_rounds_down():
    spec = BallSpec.from_radius(3, math.sqrt(2))
    assert spec.radius_sq <= 2
    assert spec.radius_sq.denominator <= 2 ** 40


def test_contains_dimension_mismatch():
    spec = BallSpec(dim=2, radius_sq=1, center=(0, 0))
    with pytest.raises(DimensionMismatchError):
        spec.contains((0,))


def test_ball_volume_and_inverse():
    assert ball_volume(2, 1.0) == pytest.approx(math.pi)
    assert ball_volume(3, 2.0) == pytest.approx(4 / 3 * math.pi * 8)
    assert radius_for_volume(4, 1e4) == pytest.approx(6.7094, abs=1e-4)
    for dim in (1, 5, 12):
        assert ball_volume(dim, radius_for_volume(dim, 250.0)) == pytest.approx(250.0)


def test_point_set_deduplicates_and_sorts():
    points = PointSet(2, [(2, 1), (0, 5), (2, 1)])
    assert len(points) == 2
    assert points.to_list() == [(0, 5), (2, 1)]
    assert (2, 1) in points
    assert (1, 1) not in points


def test_point_set_contains_many():
    points = PointSet(2, [(0, 0), (1, 3), (4, -2)])
    queries = np.array([[1, 3], [1, 2], [9, 9], [4, -2], [-5, 0]])
    assert points.contains_many(queries).tolist() == [True, False, False, True, False]
    assert PointSet(2).contains_many(queries).tolist() == [False] * 5


def test_point_set_rejects_wrong_shape():
    with pytest.raises(DimensionMismatchError):
        PointSet(3, np.zeros((2, 2)))


def test_split_halves_and_translate():
    points = PointSet(1, [[v] for v in range(5)])
    first, second = points.split_halves()
    assert first.to_list() == [(0,), (1,), (2,)]
    assert second.to_list() == [(3,), (4,)]
    assert points.translate((10,)).to_list()[0] == (10,)


def test_translate_to_orthant():
    X = PointSet(2, [(-2, 0), (1, 3)])
    Y = PointSet(2, [(0, -4), (2, 2)])
    (tx, ty), (ox, oy), M = translate_to_orthant(X, Y)
    assert tuple(tx.bounds[0]) == (1, 1)
    assert tuple(ty.bounds[0]) == (1, 1)
    assert ox.tolist() == [3, 1]
    assert oy.tolist() == [1, 5]
    assert M == 6


def test_count_additive_triples_interval():
    interval = PointSet(1, [[v] for v in range(4)])
    # x + y <= 3 over {0..3}^2
    assert count_additive_triples(interval, interval, interval) == 10
    count, pairs = count_additive_triples(interval, interval, interval, collect=True)
    assert count == 10
    assert pairs.shape == (10, 2)
    assert np.all(pairs.sum(axis=1) <= 3)


def test_count_additive_triples_predicate():
    interval = PointSet(1, [[v] for v in range(4)])
    assert count_additive_triples(interval, interval, lambda s: s[:, 0] % 2 == 0, collect=True)[0] == 8


def test_convolution_and_direct_counts_agree():
    rng = np.random.default_rng(7)
    X = PointSet(2, rng.integers(-5, 6, size=(30, 2)))
    Y = PointSet(2, rng.integers(-3, 9, size=(25, 2)))
    Z = PointSet(2, rng.integers(-8, 14, size=(60, 2)))
    direct, _ = count_additive_triples(X, Y, Z, collect=True)
    assert count_additive_triples(X, Y, Z) == direct


def test_direct_scan_matches_convolution():
    rng = np.random.default_rng(8)
    X = PointSet(3, rng.integers(-4, 5, size=(40, 3)))
    Y = PointSet(3, rng.integers(-4, 5, size=(40, 3)))
    Z = PointSet(3, rng.integers(-6, 7, size=(200, 3)))
    assert count_additive_triples(X, Y, Z, direct=True) == count_additive_triples(X, Y, Z)


@pytest.mark.parametrize("seed", range(5))
def test_count_is_symmetric_in_x_and_y(seed):
    rng = np.random.default_rng(seed)
    X = PointSet(2, rng.integers(-5, 6, size=(20, 2)))
    Y = PointSet(2, rng.integers(-2, 9, size=(35, 2)))
    Z = PointSet(2, rng.integers(-7, 15, size=(80, 2)))
    assert count_additive_triples(X, Y, Z) == count_additive_triples(Y, X, Z)
    assert count_additive_triples(X, Y, Z, direct=True) == count_additive_triples(Y, X, Z, direct=True)

    def even(sums):
        return sums.sum(axis=1) % 2 == 0

    assert count_additive_triples(X, Y, even) == count_additive_triples(Y, X, even)


def test_count_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        count_additive_triples(PointSet(1, [[0]]), PointSet(2, [[0, 0]]), PointSet(1, [[0]]))


def test_iter_additive_pairs_budget():
    interval = PointSet(1, [[0], [1]])
    with pytest.raises(BudgetExceededError):
        list(iter_additive_pairs(interval, interval, interval, budget=3))


def test_shift_result_rejects_shift_outside_unit_cube():
    with pytest.raises(ValueError):
        ShiftResult(shift=(Fraction(1),), count=0, target=0.0, achieved=True)


def test_find_good_shift_is_seeded():
    ball = BallSpec.from_radius(2, 2.5)
    specs = (ball, ball, ball)
    first = find_good_shift(specs, 10.0, trials=6, seed=3)
    second = find_good_shift(specs, 10.0, trials=6, seed=3)
    assert first == second
    assert len(first.trial_counts) == 6
    assert first.count == max(first.trial_counts)
    assert first.achieved == (first.count >= 10.0)
    assert all(t.denominator <= 2 ** 20 for t in first.shift)


def test_recount_matches_search_count():
    ball = BallSpec.from_radius(2, 2.5)
    specs = (ball, ball, ball)
    result = find_good_shift(specs, 0.0, trials=3, seed=11)
    assert recount_shift(specs, result.shift) == result.count
    X, Y, Z = shifted_sets(specs, result.shift)
    assert count_additive_triples(X, Y, Z) == result.count


def test_recount_streams_without_collecting(monkeypatch):
    calls = []
    original = counting.count_additive_triples

    def spy(*args, **kwargs):
        calls.append(kwargs)
        return original(*args, **kwargs)

    monkeypatch.setattr(counting, "count_additive_triples", spy)
    ball = BallSpec.from_radius(3, 2.5)
    shift = (Fraction(1, 4), Fraction(1, 8), Fraction(1, 2), Fraction(3, 4), Fraction(0), Fraction(5, 8))
    recount = recount_shift((ball, ball, ball), shift)
    assert calls
    assert not any(call.get("collect") for call in calls)
    assert all(call.get("direct") for call in calls)
    X, Y, Z = shifted_sets((ball, ball, ball), shift)
    assert recount == original(X, Y, Z)


def test_mean_pair_count_over_shifts_is_the_volume():
    # S = {(x, y) : |x|, |y|, |x + y| <= r} in the plane has area 3 r^2
    ball = BallSpec.from_radius(1, 2.5)
    mu = 3 * float(ball.radius_sq)
    result = find_good_shift((ball, ball, ball), mu, trials=10_000, seed=4)
    counts = np.asarray(result.trial_counts, dtype=float)
    stderr = counts.std(ddof=1) / math.sqrt(len(counts))
    assert abs(counts.mean() - mu) <= 4 * stderr
    assert result.achieved


def test_mean_ball_count_over_shifts_is_the_volume():
    spec = BallSpec.from_radius(3, 2.2)
    volume = ball_volume(3, math.sqrt(float(spec.radius_sq)))
    result = find_good_single_shift(spec, volume, trials=10_000, seed=9)
    counts = np.asarray(result.trial_counts, dtype=float)
    stderr = counts.std(ddof=1) / math.sqrt(len(counts))
    assert abs(counts.mean() - volume) <= 4 * stderr
    assert result.count >= volume


def test_find_good_shift_validates_arguments():
    ball = BallSpec.from_radius(1, 2.0)
    with pytest.raises(ValueError):
        find_good_shift((ball, ball, ball), 1.0, trials=0, seed=0)
    with pytest.raises(DimensionMismatchError):
        find_good_shift((ball, BallSpec.from_radius(2, 2.0), ball), 1.0, trials=1, seed=0)


def test_single_shift_directions():
    spec = BallSpec.from_radius(3, 2.2)
    volume = ball_volume(3, 2.2)
    lower = find_good_single_shift(spec, volume, trials=16, seed=5, direction=ShiftDirection.LOWER)
    upper = find_good_single_shift(spec, volume, trials=16, seed=5, direction=ShiftDirection.UPPER)
    assert lower.trial_counts == upper.trial_counts
    assert lower.count == max(lower.trial_counts)
    assert upper.count == min(upper.trial_counts)
    assert lower.count >= upper.count
    assert lattice_count(spec) == len(enumerate_ball(spec))


@pytest.mark.slow
def test_find_good_shift_ignores_worker_count():
    ball = BallSpec.from_radius(3, 2.5)
    specs = (ball, ball, ball)
    assert find_good_shift(specs, 0.0, 8, seed=2, threads=1) == find_good_shift(specs, 0.0, 8, seed=2, threads=2)
