"""Average and maximum modulus of random real polynomials on the unit circle
and the unit disc: exact quadrature, closed-form ensemble targets, Markov tail
bounds, and reproducible Monte Carlo verification of all of them.
"""

from .ensemble import (
    BoundKind,
    BoundReport,
    EnsembleSpec,
    Estimate,
    ExperimentParams,
    ExperimentRecord,
    circle_sq_target,
    disc_sq_target,
    expected_circle_abs,
    expected_circle_sq,
    expected_disc_abs,
    expected_disc_sq,
    markov_tail_circle,
    max_tail_gaussian,
    max_tail_uniform,
    run_experiment,
)
from .norms import (
    DiscMeasure,
    MaxModulusEstimate,
    QuadratureGrid,
    bernstein_ratio,
    circle_mean_abs,
    circle_mean_sq,
    disc_mean_abs,
    disc_mean_sq,
    disc_mean_sq_closed,
    max_modulus,
    roots_of_unity_average,
)
from .polynomial import (
    RealPolynomial,
    coeff_norm_sq,
    derivative,
    eval_at,
    modulus_sq_circle,
    modulus_sq_radius,
)
from .sampling import (
    CoefficientDistribution,
    SampleStream,
    coefficient_matrix,
    sample_polynomial,
    standard_normal,
    uniform_symmetric,
)
from .special import (
    EULER_GAMMA,
    disc_asymptotic,
    erf,
    folded_normal_mean,
    folded_sum_pdf,
    folded_sum_tail,
    gaussian_moment,
    harmonic,
    odd_harmonic_sum,
)

__version__ = "0.1.0"

__all__ = [
    "BoundKind",
    "BoundReport",
    "CoefficientDistribution",
    "DiscMeasure",
    "EULER_GAMMA",
    "EnsembleSpec",
    "Estimate",
    "ExperimentParams",
    "ExperimentRecord",
    "MaxModulusEstimate",
    "QuadratureGrid",
    "RealPolynomial",
    "SampleStream",
    "bernstein_ratio",
    "circle_mean_abs",
    "circle_mean_sq",
    "circle_sq_target",
    "coeff_norm_sq",
    "coefficient_matrix",
    "derivative",
    "disc_asymptotic",
    "disc_mean_abs",
    "disc_mean_sq",
    "disc_mean_sq_closed",
    "disc_sq_target",
    "erf",
    "eval_at",
    "expected_circle_abs",
    "expected_circle_sq",
    "expected_disc_abs",
    "expected_disc_sq",
    "folded_normal_mean",
    "folded_sum_pdf",
    "folded_sum_tail",
    "gaussian_moment",
    "harmonic",
    "markov_tail_circle",
    "max_modulus",
    "max_tail_gaussian",
    "max_tail_uniform",
    "modulus_sq_circle",
    "modulus_sq_radius",
    "odd_harmonic_sum",
    "roots_of_unity_average",
    "run_experiment",
    "sample_polynomial",
    "standard_normal",
    "uniform_symmetric",
]
