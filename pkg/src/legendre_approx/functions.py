"""Test functions with analytic derivatives and symmetry metadata."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .errors import CapabilityError, DomainError, UnknownFunctionError


class Parity(enum.Enum):
    ODD_ABOUT_MIDPOINT = "odd"
    EVEN_ABOUT_MIDPOINT = "even"
    NONE = "none"


@dataclass(frozen=True)
class FunctionSpec:
    """A named real function with optional analytic derivatives.

    Attributes
    ----------
    name : str
    func : callable
        Vectorised evaluator ``x -> y``.
    derivative : callable or None
        ``(n, x) -> d^n y / dx^n``; ``None`` when derivatives are unavailable.
    parity : Parity
        Symmetry about ``center``.
    center : float
        Point the parity refers to.
    derivative_bound : (K, alpha) or None
        Constants with ``|y^(n)| <= K * alpha**n`` on the home interval.
    """

    name: str
    func: Callable
    derivative: Optional[Callable] = None
    parity: Parity = Parity.NONE
    center: float = 0.5
    derivative_bound: Optional[tuple[float, float]] = None

    def __call__(self, x):
        return self.func(x)

    def eval(self, x):
        return self.func(x)

    def nth_derivative(self, n: int, x):
        if n == 0:
            return self.func(x)
        if self.derivative is None:
            raise CapabilityError(f"function {self.name!r} has no analytic derivatives")
        return self.derivative(n, x)

    @property
    def has_derivatives(self) -> bool:
        return self.derivative is not None

    def parity_about(self, point: float) -> Parity:
        """Parity relative to ``point``; NONE unless ``point`` is the symmetry center."""
        if math.isclose(point, self.center, rel_tol=0.0, abs_tol=1e-12):
            return self.parity
        return Parity.NONE


def _sine(x):
    return np.sin(2.0 * np.pi * np.asarray(x, dtype=float))


def _sine_derivative(n, x):
    theta = 2.0 * np.pi * np.asarray(x, dtype=float)
    scale = (2.0 * np.pi) ** n
    r = n % 4
    if r == 0:
        return scale * np.sin(theta)
    if r == 1:
        return scale * np.cos(theta)
    if r == 2:
        return -scale * np.sin(theta)
    return -scale * np.cos(theta)


def _exp(x):
    return np.exp(np.asarray(x, dtype=float))


def _exp_derivative(n, x):
    return np.exp(np.asarray(x, dtype=float))


def _entropy(p):
    p = np.asarray(p, dtype=float)
    if np.any(p < 0.0) or np.any(p > 1.0) or np.any(np.isnan(p)):
        raise DomainError("entropy is defined on [0, 1] only")
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        # 0 * log 0 := 0
        h = -np.where(p > 0.0, p * np.log(p), 0.0) - np.where(q > 0.0, q * np.log(q), 0.0)
    return h


def _entropy_derivative(n, p):
    p = np.asarray(p, dtype=float)
    if np.any(p <= 0.0) or np.any(p >= 1.0) or np.any(np.isnan(p)):
        raise DomainError("entropy derivatives are unbounded at p = 0 and p = 1")
    q = 1.0 - p
    if n == 1:
        return np.log(q / p)
    sign = -1.0 if n % 2 else 1.0
    return -math.factorial(n - 2) * (sign / p ** (n - 1) + 1.0 / q ** (n - 1))


SINE = FunctionSpec(
    "sine", _sine, _sine_derivative, Parity.ODD_ABOUT_MIDPOINT, 0.5, (1.0, 2.0 * math.pi)
)
EXP = FunctionSpec("exp", _exp, _exp_derivative, Parity.NONE, 0.5, (math.e, 1.0))
ENTROPY = FunctionSpec("entropy", _entropy, _entropy_derivative, Parity.EVEN_ABOUT_MIDPOINT, 0.5, None)

BUILTINS = {spec.name: spec for spec in (SINE, EXP, ENTROPY)}


def builtin(name: str) -> FunctionSpec:
    """Look up one of ``sine``, ``exp``, ``entropy``."""
    try:
        return BUILTINS[name]
    except KeyError:
        raise UnknownFunctionError(
            f"unknown function {name!r}; expected one of {sorted(BUILTINS)}"
        ) from None


def polynomial(coeffs: Sequence[float], name: str = "poly") -> FunctionSpec:
    """Polynomial ``sum(coeffs[k] * x**k)`` with exact derivatives."""
    p = Polynomial(np.asarray(coeffs, dtype=float))

    def derivative(n, x):
        return p.deriv(n)(np.asarray(x, dtype=float))

    return FunctionSpec(name, lambda x: p(np.asarray(x, dtype=float)), derivative)
