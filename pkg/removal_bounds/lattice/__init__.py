from removal_bounds.lattice.geometry import (
    SHIFT_DENOMINATOR,
    BallSpec,
    LatticePoint,
    PointSet,
    ball_volume,
    enumerate_ball,
    enumerate_box,
    radius_for_volume,
    translate_to_orthant,
)
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

__all__ = ['SHIFT_DENOMINATOR', 'BallSpec', 'LatticePoint', 'PointSet',
           'ball_volume', 'enumerate_ball', 'enumerate_box', 'radius_for_volume',
           'translate_to_orthant', 'ShiftDirection', 'ShiftResult', 'count_additive_triples',
           'find_good_shift', 'find_good_single_shift', 'iter_additive_pairs', 'lattice_count',
           'recount_shift', 'shifted_sets']
