"""Shifted Legendre polynomials on an arbitrary closed interval.

Two sign conventions are supported. ``STANDARD`` is the usual shifted
Legendre polynomial, equal to +1 at the right endpoint. ``PAPER_RODRIGUES``
is the polynomial produced by the Rodrigues form

    P_n(x) = 1 / (n! (b - a)^n) * d^n/dx^n [(b - x)(x - a)]^n

which equals (-1)^n times the standard one. The derivative-based
coefficient formulas in :mod:`legendre_approx.approx` hold with their
natural signs under this convention, so it is the default.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidIntervalError, ParameterError

MAX_DEGREE = 60
_DOMAIN_RTOL = 1e-12


class SignConvention(enum.Enum):
    PAPER_RODRIGUES = "paper"
    STANDARD = "standard"


DEFAULT_CONVENTION = SignConvention.PAPER_RODRIGUES


@dataclass(frozen=True)
class Interval:
    """Closed real interval ``[a, b]`` with ``a < b``."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
            raise InvalidIntervalError(f"invalid interval [{self.a}, {self.b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def to_unit(self, x):
        """Map ``x`` in [a, b] to ``t`` in [-1, 1], rejecting points outside.

        Points within ``1e-12 * width`` of the interval are accepted and
        clipped onto it.
        """
        x = np.asarray(x, dtype=float)
        tol = _DOMAIN_RTOL * self.width
        if np.any(x < self.a - tol) or np.any(x > self.b + tol) or np.any(np.isnan(x)):
            raise DomainError(f"point(s) outside [{self.a}, {self.b}]")
        t = (2.0 * x - self.a - self.b) / self.width
        return np.clip(t, -1.0, 1.0)

    def from_unit(self, t):
        t = np.asarray(t, dtype=float)
        return self.midpoint + 0.5 * self.width * t


UNIT_INTERVAL = Interval(0.0, 1.0)


def _check_degree(n: int) -> int:
    if int(n) != n or n < 0:
        raise ParameterError(f"degree must be a non-negative integer, got {n!r}")
    if n > MAX_DEGREE:
        raise ParameterError(f"degree {n} exceeds the supported ceiling {MAX_DEGREE}")
    return int(n)


def sign_factor(n: int, conv: SignConvention) -> float:
    """Multiplier taking a standard-convention value to ``conv``."""
    if conv is SignConvention.PAPER_RODRIGUES and n % 2:
        return -1.0
    return 1.0


def evaluate_all(N: int, iv: Interval, x, conv: SignConvention = DEFAULT_CONVENTION) -> np.ndarray:
    """Values of P_0..P_N at ``x``.

    Returns
    -------
    ndarray
        Shape ``(N + 1,) + np.shape(x)``.
    """
    N = _check_degree(N)
    t = iv.to_unit(x)
    out = np.empty((N + 1,) + t.shape)
    out[0] = 1.0
    if N >= 1:
        out[1] = t
    for k in range(1, N):
        out[k + 1] = ((2 * k + 1) * t * out[k] - k * out[k - 1]) / (k + 1)
    if conv is SignConvention.PAPER_RODRIGUES:
        out[1::2] *= -1.0
    return out


def evaluate(n: int, iv: Interval, x, conv: SignConvention = DEFAULT_CONVENTION):
    """Shifted Legendre polynomial of degree ``n`` on ``iv`` at ``x``.

    Parameters
    ----------
    n : int
        Degree, ``0 <= n <= MAX_DEGREE``.
    iv : Interval
        Interval the polynomial is shifted onto.
    x : float or ndarray
        Evaluation point(s) in ``iv``.
    conv : SignConvention
        Sign convention of the returned values.

    Returns
    -------
    float or ndarray
        Same shape as ``x``.
    """
    values = evaluate_all(n, iv, x, conv)[n]
    return float(values) if values.ndim == 0 else values


def norm_squared(n: int, iv: Interval) -> float:
    """L2 norm squared on ``iv``: ``(b - a) / (2n + 1)`` under either convention."""
    if int(n) != n or n < 0:
        raise ParameterError(f"degree must be a non-negative integer, got {n!r}")
    return iv.width / (2 * n + 1)


def max_abs(n: int, iv: Interval) -> float:
    """Supremum of ``|P_n|`` over ``iv``, which is always 1."""
    return 1.0
