"""Caputo derivative of order ``0 < alpha < 1``.

Two independent routes: the exact power rule, and the L1 quadrature of the
defining integral

.. math::

    D^\\alpha f(t) = \\frac{1}{\\Gamma(1-\\alpha)} \\int_0^t (t-\\tau)^{-\\alpha} f'(\\tau)\\, d\\tau .

The power rule is applied in the Caputo sense: ``D^alpha 1 = 0`` and the rule
``Gamma(beta+1)/Gamma(1+beta-alpha) t^(beta-alpha)`` is used for ``beta > 0``
only. (It holds for ``-1 < beta`` in the Riemann-Liouville sense, which
disagrees with Caputo on constants and is undefined for ``f'`` non-integrable.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special_fn import FractionalOrder, as_order


@dataclass(frozen=True)
class PowerFunction:
    """``coeff * t**exponent`` with ``exponent >= 0``."""

    coeff: float
    exponent: float

    def __post_init__(self) -> None:
        if self.exponent < 0.0:
            raise DomainError(f"exponent >= 0 required, got {self.exponent}")

    def __call__(self, t):
        return self.coeff * np.asarray(t, dtype=float) ** self.exponent

    def caputo(self, order: FractionalOrder | float, t: float) -> float:
        return self.coeff * caputo_power(self.exponent, order, t)


@dataclass(frozen=True)
class TimeSamples:
    """Values ``f(t_j)`` on a strictly increasing grid with ``t_0 = 0``."""

    t_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.t_grid, dtype=float)
        f = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.size < 2:
            raise DomainError("t_grid must be a 1-d array with at least two nodes")
        if t[0] != 0.0:
            raise DomainError(f"t_grid must start at 0, starts at {t[0]}")
        if np.any(np.diff(t) <= 0.0):
            raise DomainError("t_grid must be strictly increasing")
        if f.shape != t.shape:
            raise DomainError(f"values shape {f.shape} does not match t_grid shape {t.shape}")
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "values", f)

    @classmethod
    def from_function(cls, f, t_grid) -> "TimeSamples":
        t = np.asarray(t_grid, dtype=float)
        return cls(t, np.asarray(f(t), dtype=float))


def uniform_grid(t_final: float, n: int) -> np.ndarray:
    return np.linspace(0.0, t_final, int(n) + 1)


def graded_grid(t_final: float, n: int, grading: float = 1.0) -> np.ndarray:
    """``t_j = t_final * (j/n)**grading``; ``grading = 1`` is the uniform grid.

    For ``f ~ t**beta`` with ``beta < 1`` the L1 error at ``t_final`` on a
    uniform grid is only ``O(dt**min(1 + beta, 2 - alpha))``; grading
    ``r >= (2 - alpha)/(1 + beta)`` restores ``O(n**-(2 - alpha))``.
    """
    if grading < 1.0:
        raise DomainError(f"grading >= 1 required, got {grading}")
    s = np.linspace(0.0, 1.0, int(n) + 1)
    return t_final * s**grading


def caputo_power(beta: float, order: FractionalOrder | float, t: float) -> float:
    """Caputo derivative of ``t**beta`` at ``t > 0``."""
    alpha = as_order(order).alpha
    if beta < 0.0:
        raise DomainError(f"Caputo power rule needs beta >= 0, got beta={beta}")
    if t <= 0.0:
        raise DomainError(f"t > 0 required, got t={t}")
    if beta == 0.0:
        return 0.0
    return math.gamma(beta + 1.0) / math.gamma(1.0 + beta - alpha) * t ** (beta - alpha)


def l1_weights(t_grid: np.ndarray, order: FractionalOrder | float, t_index: int) -> np.ndarray:
    """Weights ``w_j`` with ``D^alpha f(t_n) ~ sum_j w_j (f_j - f_{j-1})``, ``j = 1..n``.

    Each weight integrates the kernel exactly over its cell, so the singular
    cell next to ``t_n`` needs no special treatment.
    """
    alpha = as_order(order).alpha
    t = np.asarray(t_grid, dtype=float)[: t_index + 1]
    tn = t[-1]
    one_minus = 1.0 - alpha
    upper = (tn - t[:-1]) ** one_minus
    lower = (tn - t[1:]) ** one_minus
    return (upper - lower) / (np.diff(t) * math.gamma(2.0 - alpha))


def caputo_l1(f: TimeSamples, order: FractionalOrder | float, t_index: int | None = None) -> float:
    """L1 approximation of ``D^alpha f`` at node ``t_index`` (default: last node).

    Parameters
    ----------
    f
        Samples of ``f`` on a grid starting at 0.
    order
        Order ``alpha`` in ``(0, 1)``.
    t_index
        Node at which the derivative is wanted, ``1 <= t_index < len(grid)``.

    Returns
    -------
    float
        Exact for piecewise-linear ``f``; ``O(dt**(2 - alpha))`` for smooth ``f``.
    """
    n = f.t_grid.size - 1 if t_index is None else int(t_index)
    if not (1 <= n < f.t_grid.size):
        raise DomainError(f"t_index must be in [1, {f.t_grid.size - 1}], got {t_index}")
    w = l1_weights(f.t_grid, order, n)
    df = np.diff(f.values[: n + 1])
    return float(np.dot(w, df))
