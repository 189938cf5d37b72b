"""Spectrally-truncated kernel ridge regression (ST-KRR).

Fits KRR with the kernel matrix replaced by its best rank-r approximation,
evaluates the exact worst-case MSE over the RKHS unit ball from the
eigenvalues alone, and picks the regularization and truncation level that
minimize it.
"""

from .errors import DegenerateSpectrumError, DomainError, NumericError, PreconditionError, RankError
from .estimator import (
    TargetFunction,
    TruncatedEstimate,
    approximant,
    fit,
    fit_path,
    hilbert_norm_sq,
    predict_at,
    sample_ball_target,
)
from .kernels import DesignPoints, KernelSpec, Scheme, eval_kernel, kernel_matrix, make_design
from .rates import RateFit, fit_spectrum_rate, rate_fit
from .risk import (
    NoiseModel,
    RiskPoint,
    critical_radius,
    estimation_error,
    h,
    kernel_complexity,
    max_mse,
    regularized_risk_sup,
    statistical_dimension,
    wae,
    wae_upper,
    weak_bound,
)
from .selection import (
    DominationReport,
    LambdaOptimum,
    RiskCurve,
    SearchConfig,
    TruncationReport,
    domination_check,
    minimize_lambda,
    optimal_truncation,
    r_of_lambda,
    risk_curve,
)
from .simulate import (
    NoiseDist,
    SimulationConfig,
    SimulationReport,
    TargetMode,
    empirical_mse,
    max_over_ball_probe,
    run_replications,
)
from .spectral import Decay, EigenSystem, eigendecompose, synthetic_spectrum, truncate_rank

__version__ = "0.1.0"
