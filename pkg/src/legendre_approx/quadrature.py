"""Gauss-Legendre quadrature on an interval."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .basis import Interval
from .errors import ConvergenceError, EvaluationError, ParameterError

DEFAULT_POINTS = 200
MAX_POINTS = 1024
NEWTON_TOL = 1e-15
NEWTON_MAX_ITER = 100


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights for integrating over ``iv``.

    ``panel_points`` is the Gauss order of each panel; a single-panel rule
    integrates polynomials of degree ``2 * panel_points - 1`` exactly.
    """

    iv: Interval
    nodes: np.ndarray
    weights: np.ndarray
    panel_points: int

    def __post_init__(self):
        for name in ("nodes", "weights"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self):
        return self.nodes.size


def _value_and_slope(m: int, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p_prev = np.ones_like(t)
    p = t.copy()
    for j in range(1, m):
        p_prev, p = p, ((2 * j + 1) * t * p - j * p_prev) / (j + 1)
    return p, m * (t * p - p_prev) / (t * t - 1.0)


def _newton_roots(m: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(1, m + 1)
    t = np.cos(np.pi * (k - 0.25) / (m + 0.5))
    for _ in range(NEWTON_MAX_ITER):
        p, dp = _value_and_slope(m, t)
        step = p / dp
        t = t - step
        if np.max(np.abs(step)) <= NEWTON_TOL:
            break
    else:
        raise ConvergenceError(f"Newton iteration for {m}-point rule did not converge")
    _, dp = _value_and_slope(m, t)
    return t, 2.0 / ((1.0 - t * t) * dp * dp)


@functools.lru_cache(maxsize=64)
def _reference_rule(m: int) -> tuple[np.ndarray, np.ndarray]:
    t, w = _newton_roots(m)
    order = np.argsort(t)
    t, w = t[order], w[order]
    # enforce exact mirror symmetry about 0
    t = 0.5 * (t - t[::-1])
    w = 0.5 * (w + w[::-1])
    return t, w


def gauss_rule(m: int = DEFAULT_POINTS, iv: Interval | None = None) -> QuadratureRule:
    """``m``-point Gauss-Legendre rule on ``iv`` (default [0, 1]).

    Nodes are the roots of the degree-``m`` Legendre polynomial, found by
    Newton iteration from Chebyshev-angle initial guesses and mapped
    affinely onto ``iv``.
    """
    if int(m) != m or not 1 <= m <= MAX_POINTS:
        raise ParameterError(f"point count must be an integer in [1, {MAX_POINTS}], got {m!r}")
    m = int(m)
    iv = iv if iv is not None else Interval(0.0, 1.0)
    t, w = _reference_rule(m)
    half = 0.5 * iv.width
    return QuadratureRule(iv, iv.midpoint + half * t, half * w, m)


def composite_rule(m: int, iv: Interval, panels: int) -> QuadratureRule:
    """Concatenate ``m``-point rules over ``panels`` equal sub-intervals."""
    if int(panels) != panels or panels < 1:
        raise ParameterError(f"panels must be a positive integer, got {panels!r}")
    edges = np.linspace(iv.a, iv.b, int(panels) + 1)
    pieces = [gauss_rule(m, Interval(lo, hi)) for lo, hi in zip(edges[:-1], edges[1:])]
    return QuadratureRule(
        iv,
        np.concatenate([p.nodes for p in pieces]),
        np.concatenate([p.weights for p in pieces]),
        int(m),
    )


def _values_at_nodes(f: Callable, rule: QuadratureRule) -> np.ndarray:
    with np.errstate(all="ignore"):
        values = np.broadcast_to(np.asarray(f(rule.nodes), dtype=float), rule.nodes.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.argmax(bad))
        raise EvaluationError(f"integrand is not finite at node {i} (x = {rule.nodes[i]!r})")
    return values


def integrate(f: Callable, rule: QuadratureRule) -> float:
    """``sum(w_i * f(x_i))``; ``f`` must accept an array of nodes."""
    return float(np.dot(rule.weights, _values_at_nodes(f, rule)))


def inner_product(f: Callable, g: Callable, rule: QuadratureRule) -> float:
    """L2 inner product of ``f`` and ``g`` over the rule's interval."""
    fv = _values_at_nodes(f, rule)
    gv = _values_at_nodes(g, rule)
    return float(np.dot(rule.weights, fv * gv))


def covers(rule: QuadratureRule, iv: Interval) -> bool:
    tol = 1e-12 * iv.width
    return math.isclose(rule.iv.a, iv.a, abs_tol=tol) and math.isclose(rule.iv.b, iv.b, abs_tol=tol)
