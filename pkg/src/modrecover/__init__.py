"""Recovery of smooth functions from noisy modulo-1 samples on a uniform grid.

Pipeline: lift samples to the unit circle, denoise them with local
polynomial (or kNN) estimators, unwrap sequentially, and quasi-interpolate.
"""

__version__ = "0.1.0"

from .circle import lift, phase, project, wrap_distance
from .errors import IllConditioned, InsufficientSamples
from .estimators import KNNDenoiser, LocalPolynomialDenoiser, ModuloRecovery
from .kernels import BOX, EPANECHNIKOV, TRIANGULAR, KernelSpec, get_kernel
from .knn_denoiser import KnnConfig, auto_k, knn_denoise
from .lp_denoiser import (DenoisedModulo, LpConfig, LpWeights, build_bnx, denoise, design_vector,
                          lp_weights, practical_bandwidth, weighted_ls_solve)
from .metrics import (ErrorReport, TheoryConstants, a_sigma, aligned_error, theoretical_bandwidth,
                      theoretical_delta, wrap_max, wrap_rmse)
from .quasi_interpolant import QiOperator, RecoveredFunction, build_qi, eval_recovered
from .signal_model import (ModuloSamples, NoiseModel, SmoothnessParams, TestFunction, UniformGrid,
                           holder_seminorm_estimate, parse_function, sample_modulo)
from .unwrap import UnwrappedSamples, check_unwrap_feasibility, unwrap

__all__ = [
    "lift", "phase", "project", "wrap_distance",
    "IllConditioned", "InsufficientSamples",
    "KNNDenoiser", "LocalPolynomialDenoiser", "ModuloRecovery",
    "BOX", "EPANECHNIKOV", "TRIANGULAR", "KernelSpec", "get_kernel",
    "KnnConfig", "auto_k", "knn_denoise",
    "DenoisedModulo", "LpConfig", "LpWeights", "build_bnx", "denoise", "design_vector",
    "lp_weights", "practical_bandwidth", "weighted_ls_solve",
    "ErrorReport", "TheoryConstants", "a_sigma", "aligned_error", "theoretical_bandwidth",
    "theoretical_delta", "wrap_max", "wrap_rmse",
    "QiOperator", "RecoveredFunction", "build_qi", "eval_recovered",
    "ModuloSamples", "NoiseModel", "SmoothnessParams", "TestFunction", "UniformGrid",
    "holder_seminorm_estimate", "parse_function", "sample_modulo",
    "UnwrappedSamples", "check_unwrap_feasibility", "unwrap",
]
