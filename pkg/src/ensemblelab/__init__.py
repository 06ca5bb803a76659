"""Numerical study of expected-loss curves of averaged ensembles.

The package computes, predicts, and verifies how E[L(mean of K predictions)]
moves as K grows: exactly monotone improvement for convex losses under
exchangeability, and direction-by-local-geometry (Hessian sign, margin sign,
tail-probability asymptotics) for nonconvex losses and the 0/1 error.
"""

from .classification import (
    AssumptionReport,
    MarginModel,
    assumption_classify,
    bivariate_normal_cdf,
    error_curve,
    margin_transform,
)
from .curves import (
    LossCurve,
    MonotonicityReport,
    NoExactRegimeError,
    classify_sequence,
    estimate_curve_mc,
    exact_curve,
    exchangeable_squared_curve,
    gauss_hermite_expectation,
    leave_one_out_bound,
    monotonicity_report,
    strong_bound_check,
    warmup_chain,
)
from .delta import DeltaExpansion, delta_expansion, delta_predict, hessian_direction
from .distributions import (
    AffineTransform,
    Bernoulli,
    Cauchy,
    CgfPoint,
    Distribution,
    FiniteLattice,
    Gaussian,
    Levy,
    MultivariateGaussian,
    NoMgfError,
    ProductDistribution,
    cgf_point,
    distribution_from_descriptor,
    exact_sum_distribution,
    point_mass,
    stream_rng,
    tail_probability,
    two_class_simplex,
)
from .ensembles import (
    EnsembleSpec,
    build_ensemble,
    duplicate_third,
    iid,
    majority_vote,
    prefix_means,
    randomly_reordered,
    sample_ensembles,
)
from .ldp import (
    ConeCheck,
    DecreaseVerdict,
    MultivariateLd,
    PetrovSolution,
    TailSequence,
    TauSignError,
    TiltError,
    bernoulli_sequence,
    cone_condition,
    eventual_decrease_verdict,
    gaussian_multivariate_ld,
    lattice_tail_sequence,
    mass_restoration_summary,
    mass_restored_lattice,
    petrov_asymptote,
    solve_tilt,
    stable_counterexample,
)
from .losses import (
    CONVEX_CATALOG,
    NONCONVEX_CATALOG,
    DomainError,
    Loss,
    NonSmoothLossError,
    convexity_at,
    eval_loss,
    loss_derivatives,
    loss_from_descriptor,
    make_loss,
    zero_one_error,
)

__version__ = "0.1.0"
