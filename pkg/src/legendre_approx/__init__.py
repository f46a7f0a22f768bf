"""Shifted-Legendre least-squares approximation with a Taylor comparator."""

from .basis import Interval, SignConvention, evaluate, evaluate_all, max_abs, norm_squared
from .quadrature import QuadratureRule, composite_rule, gauss_rule, inner_product, integrate
from .functions import FunctionSpec, Parity, builtin, polynomial
from .approx import (
    BetaWeight,
    LegendreSeries,
    TaylorPoly,
    coefficient_via_beta,
    evaluate_series,
    evaluate_taylor,
    partial_projection,
    project,
    residual_energy,
    slope_kernel_estimate,
    slope_regression_oracle,
    taylor_expand,
    term_contribution,
)
from .analysis import BoundParams, SnrReport, beta_moments, snr, snr_table

__version__ = "0.1.0"
