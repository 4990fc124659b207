from removal_bounds.additive.witness import Witness, WitnessKind
from removal_bounds.additive.corners import (
    ColorClass,
    CornerSet,
    check_triple_condition,
    color_classes,
    flatten_corner_set,
    is_corner_free,
    largest_cornerfree_class,
    norm_color,
    norm_colors,
)
from removal_bounds.additive.progressions import (
    R3_EXHAUSTIVE_LIMIT,
    R3Result,
    behrend_set,
    is_3ap_free,
    r3_exhaustive,
)

__all__ = ['Witness', 'WitnessKind', 'ColorClass', 'CornerSet', 'check_triple_condition', 'color_classes',
           'flatten_corner_set', 'is_corner_free', 'largest_cornerfree_class', 'norm_color', 'norm_colors',
           'R3_EXHAUSTIVE_LIMIT', 'R3Result', 'behrend_set', 'is_3ap_free', 'r3_exhaustive']
