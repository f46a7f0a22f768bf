"""SNR comparison, convergence bounds and beta-distribution moments."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from . import approx, basis
from .basis import DEFAULT_CONVENTION, Interval, SignConvention
from .errors import CapabilityError, ParameterError, UndefinedSNRError
from .functions import FunctionSpec
from .quadrature import QuadratureRule, integrate

INFINITE_SNR = math.inf
_ERROR_FLOOR = 1e-300

TAYLOR = "taylor"
LEGENDRE = "legendre"


@dataclass(frozen=True)
class SnrReport:
    function: str
    method: str
    rows: tuple[tuple[int, float], ...]

    @property
    def values(self) -> list[float]:
        return [v for _, v in self.rows]


@dataclass(frozen=True)
class BoundParams:
    """Constants with ``|d^n y / dx^n| <= K * alpha**n`` on ``iv``."""

    K: float
    alpha: float
    iv: Interval = basis.UNIT_INTERVAL

    def __post_init__(self):
        for name in ("K", "alpha"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ParameterError(f"{name} must be finite and positive, got {v!r}")

    @classmethod
    def for_function(cls, f: FunctionSpec, iv: Interval = basis.UNIT_INTERVAL) -> "BoundParams":
        if f.derivative_bound is None:
            raise CapabilityError(f"no certified derivative bound for {f.name!r}")
        K, alpha = f.derivative_bound
        return cls(K, alpha, iv)


def snr(f: Callable, approximant: Callable, iv: Interval = basis.UNIT_INTERVAL,
        rule: Optional[QuadratureRule] = None) -> float:
    """Signal-to-noise ratio in decibels, ``10 log10(int f^2 / int (f - g)^2)``.

    Returns ``INFINITE_SNR`` when the error energy is below 1e-300.
    """
    rule = approx._resolve_rule(iv, rule)
    signal = integrate(lambda x: np.asarray(f(x), dtype=float) ** 2, rule)
    if signal == 0.0:
        raise UndefinedSNRError("signal energy is zero")
    error = integrate(
        lambda x: (np.asarray(f(x), dtype=float) - np.asarray(approximant(x), dtype=float)) ** 2,
        rule,
    )
    if error < _ERROR_FLOOR:
        return INFINITE_SNR
    return 10.0 * math.log10(signal / error)


def snr_table(
    functions: Iterable[FunctionSpec],
    max_order: int = 6,
    iv: Interval = basis.UNIT_INTERVAL,
    rule: Optional[QuadratureRule] = None,
    taylor_point: Optional[float] = None,
    conv: SignConvention = DEFAULT_CONVENTION,
) -> list[SnrReport]:
    """Taylor and Legendre SNR for 1..max_order nonzero coefficients.

    Returns two reports per function, Taylor first, in input order.
    """
    rule = approx._resolve_rule(iv, rule)
    x0 = iv.midpoint if taylor_point is None else float(taylor_point)
    reports = []
    for f in functions:
        taylor_rows, legendre_rows = [], []
        for k in range(1, max_order + 1):
            tp = approx.taylor_expand(f, x0, k)
            taylor_rows.append((k, snr(f, tp, iv, rule)))
            series = approx.partial_projection(f, k, iv, rule, conv)
            legendre_rows.append((k, snr(f, series, iv, rule)))
        reports.append(SnrReport(f.name, TAYLOR, tuple(taylor_rows)))
        reports.append(SnrReport(f.name, LEGENDRE, tuple(legendre_rows)))
    return reports


def beta_moments(n: int, iv: Interval = basis.UNIT_INTERVAL) -> tuple[float, float]:
    """Mean and variance of beta(n+1, n+1) rescaled onto ``iv``."""
    if int(n) != n or n < 0:
        raise ParameterError(f"order must be a non-negative integer, got {n!r}")
    return iv.midpoint, iv.width**2 / (4.0 * (2 * n + 3))


def term_bound_sq(n: int, p: BoundParams) -> float:
    """Upper bound on ``<y, P_n>^2 / ||P_n||^2`` given the derivative bound."""
    w = p.iv.width
    return (p.K * p.alpha**n) ** 2 * w ** (2 * n + 1) / (
        math.factorial(2 * n + 1) * math.comb(2 * n, n)
    )


def term_bound_max(n: int, p: BoundParams) -> float:
    """Upper bound on ``|c_n|``, hence on the sup norm of the n-th term."""
    return p.K * p.alpha**n * p.iv.width**n * math.factorial(n) / math.factorial(2 * n)


def n0_rule(p: BoundParams) -> int:
    """Smallest ``n0 >= 1`` with ``n0**4 >= alpha^2 e^2 (b-a)^2 / 8``."""
    target = (p.alpha * math.e * p.iv.width) ** 2 / 8.0
    n0 = max(1, math.ceil(target**0.25))
    while n0 > 1 and (n0 - 1) ** 4 >= target:
        n0 -= 1
    while n0**4 < target:
        n0 += 1
    return n0


@dataclass(frozen=True)
class DominationReport:
    n0: int
    rows: tuple[tuple[int, float, float], ...]
    passed: bool


def geometric_domination_check(p: BoundParams, n_max: int) -> DominationReport:
    """Check ``term_bound_max(n+1) / term_bound_max(n) <= 1/2`` for ``n0 <= n <= n_max``.

    Rows are ``(n, bound, ratio)`` for every ``n`` in ``0..n_max``.
    """
    n0 = n0_rule(p)
    if n_max < n0:
        raise ParameterError(f"n_max={n_max} is below n0={n0}")
    rows = []
    for n in range(n_max + 1):
        bound = term_bound_max(n, p)
        rows.append((n, bound, term_bound_max(n + 1, p) / bound))
    passed = all(ratio <= 0.5 for n, _, ratio in rows if n >= n0)
    return DominationReport(n0, tuple(rows), passed)


@dataclass(frozen=True)
class BoundRow:
    n: int
    coeff_abs: float
    bound_max: float
    contribution: float
    bound_sq: float
    ratio: float
    dominated: bool


def bound_table(
    f: FunctionSpec,
    n_max: int = 12,
    iv: Interval = basis.UNIT_INTERVAL,
    rule: Optional[QuadratureRule] = None,
) -> tuple[int, list[BoundRow]]:
    """Actual coefficient sizes next to their bounds, for n = 0..n_max."""
    p = BoundParams.for_function(f, iv)
    rule = approx._resolve_rule(iv, rule)
    report = geometric_domination_check(p, n_max)
    coeffs = approx.project(f, n_max, iv, rule).coeffs
    rows = []
    for (n, bound, ratio), c in zip(report.rows, coeffs):
        rows.append(BoundRow(
            n=n,
            coeff_abs=abs(float(c)),
            bound_max=bound,
            contribution=approx.term_contribution(f, n, iv, rule),
            bound_sq=term_bound_sq(n, p),
            ratio=ratio,
            dominated=ratio <= 0.5,
        ))
    return report.n0, rows
