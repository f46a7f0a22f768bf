"""Legendre least-squares series, Taylor comparators and slope estimators.

Projection coefficients are computed in two independent ways:

* directly, ``c_n = <f, P_n> / ||P_n||^2`` by quadrature (:func:`project`);
* from the n-th derivative, ``c_n = (-1)^n (b-a)^n E_beta[f^(n)] / (n! C(2n, n))``
  where the expectation is under the symmetric beta(n+1, n+1) density
  rescaled to ``[a, b]`` (:func:`coefficient_via_beta`).

The second form is stated for the Rodrigues sign convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import basis
from .basis import DEFAULT_CONVENTION, Interval, SignConvention
from .errors import (
    CapabilityError,
    DegenerateFunctionError,
    EvaluationError,
    ParameterError,
)
from .functions import FunctionSpec, Parity
from .quadrature import DEFAULT_POINTS, QuadratureRule, covers, gauss_rule, integrate

QUAD_MARGIN = 40
NONZERO_RTOL = 1e-9
RESIDUAL_CLAMP = 1e-12


@dataclass(frozen=True, eq=False)
class LegendreSeries:
    """``sum(coeffs[n] * P_n)`` on ``iv`` under sign convention ``conv``."""

    iv: Interval
    conv: SignConvention
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).reshape(-1)
        if c.size == 0:
            raise ParameterError("a series needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def with_convention(self, conv: SignConvention) -> "LegendreSeries":
        if conv is self.conv:
            return self
        flipped = self.coeffs.copy()
        flipped[1::2] *= -1.0
        return LegendreSeries(self.iv, conv, flipped)

    def __call__(self, x):
        return evaluate_series(self, x)


@dataclass(frozen=True)
class TaylorPoly:
    """Sparse Taylor polynomial about ``x0``: ``sum(c * (x - x0)**k for k, c in terms)``."""

    x0: float
    terms: tuple[tuple[int, float], ...]

    @property
    def degrees(self) -> list[int]:
        return [k for k, _ in self.terms]

    def __call__(self, x):
        return evaluate_taylor(self, x)


@dataclass(frozen=True)
class BetaWeight:
    """Density of beta(n+1, n+1) shifted and scaled onto ``iv``."""

    n: int
    iv: Interval

    @property
    def normalizer(self) -> float:
        # (2n+1)! / (n!)^2
        return (2 * self.n + 1) * math.comb(2 * self.n, self.n)

    def density(self, x):
        u = (np.asarray(x, dtype=float) - self.iv.a) / self.iv.width
        return self.normalizer * (u * (1.0 - u)) ** self.n / self.iv.width

    def expectation(self, g: Callable, rule: QuadratureRule) -> float:
        return integrate(lambda x: self.density(x) * g(x), rule)


def _resolve_rule(iv: Interval, rule: Optional[QuadratureRule]) -> QuadratureRule:
    if rule is None:
        return gauss_rule(DEFAULT_POINTS, iv)
    if not covers(rule, iv):
        raise ParameterError(
            f"quadrature rule on [{rule.iv.a}, {rule.iv.b}] does not cover [{iv.a}, {iv.b}]"
        )
    return rule


def _derivative(f, n: int, x):
    if n == 0:
        return f(x)
    if not isinstance(f, FunctionSpec) or not f.has_derivatives:
        name = getattr(f, "name", repr(f))
        raise CapabilityError(f"{name} does not supply analytic derivatives")
    return f.nth_derivative(n, x)


def _projections(f: Callable, N: int, rule: QuadratureRule) -> np.ndarray:
    """Inner products <f, P_n> (standard convention) for n = 0..N."""
    values = np.asarray(f(rule.nodes), dtype=float)
    values = np.broadcast_to(values, rule.nodes.shape)
    if not np.all(np.isfinite(values)):
        i = int(np.argmax(~np.isfinite(values)))
        raise EvaluationError(f"function is not finite at node {i} (x = {rule.nodes[i]!r})")
    P = basis.evaluate_all(N, rule.iv, rule.nodes, SignConvention.STANDARD)
    return P @ (rule.weights * values)


def project(
    f: Callable,
    max_degree: int,
    iv: Interval = basis.UNIT_INTERVAL,
    rule: Optional[QuadratureRule] = None,
    conv: SignConvention = DEFAULT_CONVENTION,
) -> LegendreSeries:
    """Least-squares Legendre series of degree ``max_degree`` for ``f`` on ``iv``."""
    rule = _resolve_rule(iv, rule)
    if rule.panel_points < max_degree + QUAD_MARGIN:
        raise ParameterError(
            f"{rule.panel_points}-point rule is too coarse for degree {max_degree}; "
            f"need at least {max_degree + QUAD_MARGIN}"
        )
    ip = _projections(f, max_degree, rule)
    n = np.arange(max_degree + 1)
    coeffs = ip * (2 * n + 1) / iv.width
    return LegendreSeries(iv, SignConvention.STANDARD, coeffs).with_convention(conv)


def legendre_degrees(f: Callable, n_nonzero: int, iv: Interval) -> list[int]:
    """Degrees carrying the first ``n_nonzero`` non-vanishing Legendre terms.

    Functions odd (even) about the interval midpoint only have odd (even)
    degree terms; everything else uses degrees ``0..n_nonzero-1``.
    """
    if n_nonzero < 1:
        raise ParameterError("n_nonzero must be at least 1")
    parity = f.parity_about(iv.midpoint) if isinstance(f, FunctionSpec) else Parity.NONE
    if parity is Parity.ODD_ABOUT_MIDPOINT:
        return list(range(1, 2 * n_nonzero, 2))
    if parity is Parity.EVEN_ABOUT_MIDPOINT:
        return list(range(0, 2 * n_nonzero - 1, 2))
    return list(range(n_nonzero))


def partial_projection(
    f: Callable,
    n_nonzero: int,
    iv: Interval = basis.UNIT_INTERVAL,
    rule: Optional[QuadratureRule] = None,
    conv: SignConvention = DEFAULT_CONVENTION,
) -> LegendreSeries:
    """Projection keeping only the ``n_nonzero`` terms from :func:`legendre_degrees`."""
    degrees = legendre_degrees(f, n_nonzero, iv)
    full = project(f, degrees[-1], iv, rule, conv)
    coeffs = np.zeros(degrees[-1] + 1)
    coeffs[degrees] = full.coeffs[degrees]
    return LegendreSeries(iv, conv, coeffs)


def coefficient_via_beta(
    f: FunctionSpec,
    n: int,
    iv: Interval = basis.UNIT_INTERVAL,
    rule: Optional[QuadratureRule] = None,
    paper_literal: bool = False,
) -> float:
    """Rodrigues-convention coefficient of ``P_n`` from the n-th derivative of ``f``.

    Parameters
    ----------
    paper_literal : bool
        Use ``(b - a)**(n - 1)`` instead of ``(b - a)**n``. The literal
        exponent agrees with the projection only on unit-width intervals;
        it is kept so tests can show it fails elsewhere.
    """
    rule = _resolve_rule(iv, rule)
    expectation = BetaWeight(n, iv).expectation(lambda x: _derivative(f, n, x), rule)
    power = n - 1 if paper_literal else n
    scale = iv.width**power / (math.factorial(n) * math.comb(2 * n, n))
    return (-1.0) ** n * scale * expectation


def term_contribution(
    f: Callable,
    n: int,
    iv: Interval = basis.UNIT_INTERVAL,
    rule: Optional[QuadratureRule] = None,
) -> float:
    """``<f, P_n>^2 / ||P_n||^2``, the share of ``||f||^2`` captured by degree ``n``."""
    rule = _resolve_rule(iv, rule)
    ip = _projections(f, n, rule)[n]
    return float(ip * ip / basis.norm_squared(n, iv))


def term_contribution_via_beta(
    f: FunctionSpec,
    n: int,
    iv: Interval = basis.UNIT_INTERVAL,
    rule: Optional[QuadratureRule] = None,
    paper_literal: bool = False,
) -> float:
    """Same quantity as :func:`term_contribution`, from the beta-weighted derivative.

    ``(b-a)^(2n+1) / ((2n+1)! C(2n, n)) * E_beta[f^(n)]^2``; ``paper_literal``
    swaps in the exponent ``2n - 1``.
    """
    rule = _resolve_rule(iv, rule)
    expectation = BetaWeight(n, iv).expectation(lambda x: _derivative(f, n, x), rule)
    power = 2 * n - 1 if paper_literal else 2 * n + 1
    return iv.width**power / (math.factorial(2 * n + 1) * math.comb(2 * n, n)) * expectation**2


def residual_energy(f: Callable, s: LegendreSeries, rule: Optional[QuadratureRule] = None) -> float:
    """Mean squared residual of the degree-``s.degree`` projection, Parseval form.

    Computes ``(||f||^2 - sum_n <f, P_n>^2 / ||P_n||^2) / (b - a)`` over
    ``n = 0..s.degree``. Round-off can push the difference slightly below
    zero; values within ``1e-12`` (relative to the mean signal energy) are
    clamped to 0.
    """
    iv = s.iv
    rule = _resolve_rule(iv, rule)
    energy = integrate(lambda x: np.asarray(f(x), dtype=float) ** 2, rule)
    ip = _projections(f, s.degree, rule)
    n = np.arange(s.degree + 1)
    captured = math.fsum(ip * ip * (2 * n + 1) / iv.width)
    r = (energy - captured) / iv.width
    if r < 0.0:
        if r < -RESIDUAL_CLAMP * max(1.0, energy / iv.width):
            raise EvaluationError(f"residual energy {r!r} is negative beyond round-off")
        r = 0.0
    return r


def evaluate_series(s: LegendreSeries, x):
    """Clenshaw summation of ``s`` at ``x``."""
    t = s.iv.to_unit(x)
    c = s.with_convention(SignConvention.STANDARD).coeffs
    b1 = np.zeros_like(t)
    b2 = np.zeros_like(t)
    for k in range(c.size - 1, 0, -1):
        # P_{k+1} = ((2k+1)/(k+1)) t P_k - (k/(k+1)) P_{k-1}
        alpha = (2 * k + 1) / (k + 1) * t
        beta = (k + 1) / (k + 2)
        b1, b2 = c[k] + alpha * b1 - beta * b2, b1
    out = c[0] + t * b1 - 0.5 * b2
    return float(out) if out.ndim == 0 else out


def taylor_expand(
    f: FunctionSpec,
    x0: float,
    n_nonzero: int,
    max_scan_degree: int = 64,
) -> TaylorPoly:
    """Taylor polynomial about ``x0`` with ``n_nonzero`` nonzero terms.

    Degrees are scanned upward. If ``f`` is odd or even about ``x0`` the
    vanishing parity class is skipped outright; otherwise a term counts as
    nonzero when ``|f^(k)(x0)| > 1e-9 * max(1, |f(x0)|) * k!``.
    """
    if n_nonzero < 1:
        raise ParameterError("n_nonzero must be at least 1")
    parity = f.parity_about(x0) if isinstance(f, FunctionSpec) else Parity.NONE
    f0 = float(f(x0))
    threshold = NONZERO_RTOL * max(1.0, abs(f0))
    terms = []
    for k in range(max_scan_degree + 1):
        if parity is Parity.ODD_ABOUT_MIDPOINT and k % 2 == 0:
            continue
        if parity is Parity.EVEN_ABOUT_MIDPOINT and k % 2 == 1:
            continue
        coeff = float(_derivative(f, k, x0)) / math.factorial(k)
        if coeff == 0.0 or (parity is Parity.NONE and abs(coeff) <= threshold):
            continue
        terms.append((k, coeff))
        if len(terms) == n_nonzero:
            return TaylorPoly(float(x0), tuple(terms))
    raise DegenerateFunctionError(
        f"found {len(terms)} of {n_nonzero} nonzero Taylor terms up to degree {max_scan_degree}"
    )


def evaluate_taylor(p: TaylorPoly, x):
    """Horner evaluation of ``p`` on the dense degree range."""
    u = np.asarray(x, dtype=float) - p.x0
    dense = np.zeros(p.terms[-1][0] + 1 if p.terms else 1)
    for k, c in p.terms:
        dense[k] = c
    out = np.full_like(u, dense[-1])
    for c in dense[-2::-1]:
        out = out * u + c
    return float(out) if out.ndim == 0 else out


def _kernel(iv: Interval, x):
    return -0.5 * (x - iv.midpoint) ** 2 + iv.width**2 / 8.0


def slope_kernel_estimate(
    f: FunctionSpec,
    iv: Interval = basis.UNIT_INTERVAL,
    rule: Optional[QuadratureRule] = None,
    paper_literal: bool = False,
) -> float:
    """Regression slope written as an average of ``f'`` against a parabola.

    ``12 / (b-a)^3 * integral f'(x) * (-(x - m)^2 / 2 + (b-a)^2 / 8) dx``;
    the kernel vanishes at both endpoints.

    Parameters
    ----------
    paper_literal : bool
        Use the prefactor ``12 / (b-a)^2`` instead. That form drops the
        ``1 / (b-a)`` of the covariance and is only right on unit-width
        intervals; kept for comparison.
    """
    rule = _resolve_rule(iv, rule)
    total = integrate(lambda x: _derivative(f, 1, x) * _kernel(iv, x), rule)
    power = 2 if paper_literal else 3
    return 12.0 / iv.width**power * total


def slope_regression_oracle(
    f: Callable, iv: Interval = basis.UNIT_INTERVAL, rule: Optional[QuadratureRule] = None
) -> float:
    """Least-squares slope of ``f`` against uniformly distributed ``x`` on ``iv``."""
    rule = _resolve_rule(iv, rule)
    mean_f = integrate(f, rule) / iv.width
    mean_x = iv.midpoint
    cov = integrate(lambda x: (np.asarray(f(x), dtype=float) - mean_f) * (x - mean_x), rule) / iv.width
    return cov / (iv.width**2 / 12.0)


def slope_from_series(s: LegendreSeries) -> float:
    """Slope implied by the degree-1 coefficient: ``2 c_1 / (b - a)`` (standard sign)."""
    if s.degree < 1:
        return 0.0
    return 2.0 * s.with_convention(SignConvention.STANDARD).coeffs[1] / s.iv.width
