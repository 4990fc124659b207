from removal_bounds.probability.curves import (
    C_NEW,
    C_NEW_PRINTED,
    C_OLD,
    C_OLD_PRINTED,
    CURVE_BASES,
    AsymptoticRates,
    Curve,
    OptimizeResult,
    TheoryCurves,
    asymptotic_rates,
    curve_value,
    eta_to_delta,
    optimize_D,
    optimized_curve,
    theory_curves,
)
from removal_bounds.probability.estimates import (
    BOUNDARY_BAND,
    CHUNK_SAMPLES,
    EstimateMethod,
    ProbabilityEstimate,
    box_sum_probability,
    mc_ball_closure,
    mc_sphere_closure,
    sample_unit_ball,
    sample_unit_sphere,
)
from removal_bounds.probability.quadrature import (
    LemmaChain,
    LowerBoundIntegral,
    dot_pdf,
    exact_sphere_closure,
    lemma_chain,
    lower_bound_integral,
    pdf_normalization,
)

__all__ = ['C_NEW', 'C_NEW_PRINTED', 'C_OLD', 'C_OLD_PRINTED', 'CURVE_BASES', 'AsymptoticRates', 'Curve',
           'OptimizeResult', 'TheoryCurves', 'asymptotic_rates', 'curve_value', 'eta_to_delta', 'optimize_D',
           'optimized_curve', 'theory_curves', 'BOUNDARY_BAND', 'CHUNK_SAMPLES', 'EstimateMethod',
           'ProbabilityEstimate', 'box_sum_probability', 'mc_ball_closure', 'mc_sphere_closure',
           'sample_unit_ball', 'sample_unit_sphere', 'LemmaChain', 'LowerBoundIntegral', 'dot_pdf',
           'exact_sphere_closure', 'lemma_chain', 'lower_bound_integral', 'pdf_normalization']
