"""Wright and Mainardi functions on the real line.

The Wright function

.. math::

    W(z; a, b) = \\sum_{n \\ge 0} \\frac{z^n}{n!\\, \\Gamma(a n + b)}, \\qquad a > -1,

is evaluated by direct summation with a pole-safe reciprocal gamma. For
``a = -nu`` with ``0 < nu < 1`` and ``z <= -2`` the series is alternating with
heavy cancellation (at ``z = -6, nu = 0.45`` the largest term is ~5e5 times
the sum), so the three members of the family that the Stefan solutions need,

* ``W(-x; -nu, 1)``        (complementary fractional erf),
* ``W(-x; -nu, 1 - nu)``   (Mainardi function ``M_nu``),
* ``W(-x; -nu, 1 - 2 nu)`` (``-M_nu'``),

are instead computed from a Kanter-type integral with a positive integrand:

.. math::

    W(-x; -\\nu, 1) = \\frac{1}{\\pi} \\int_0^\\pi e^{-A(\\varphi) x^p}\\, d\\varphi,
    \\qquad p = \\frac{1}{1-\\nu},\\quad
    A(\\varphi) = \\left(\\frac{\\sin \\nu\\varphi}{\\sin\\varphi}\\right)^{p}
        \\frac{\\sin (1-\\nu)\\varphi}{\\sin \\nu\\varphi},

and its first two ``x``-derivatives. This keeps full relative accuracy for the
tiny tails that the root finders and the residual checks probe.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.integrate import quad

from .errors import InvalidParameter, NonConvergence, PrecisionLoss, RangeWarning

ArrayLike = Union[float, np.ndarray]

# |x - round(x)| below this counts as an integer when hunting gamma poles
POLE_TOL = 1e-12
# series -> integral switch for the three represented (a, b) pairs
INTEGRAL_SWITCH = 2.0
# stopping rule: this many consecutive terms below tolerance
QUIET_TERMS = 3
# warn when max |term| exceeds this multiple of |sum|
CANCELLATION_LIMIT = 1e12
# exp(-760) underflows, so the integrals are exactly 0.0 in double beyond this
_UNDERFLOW_EXPONENT = 760.0

SERIES_TOL_ENV = "FRAC_STEFAN_SERIES_TOL"


@dataclass(frozen=True)
class FractionalOrder:
    """Order ``alpha`` of the Caputo derivative, strictly inside ``(0, 1)``."""

    alpha: float

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        if not (0.0 < alpha < 1.0) or not math.isfinite(alpha):
            raise InvalidParameter(f"alpha in (0,1) required, got alpha={self.alpha!r}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def nu(self) -> float:
        """Half order ``alpha/2``, the Mainardi index of the similarity profile."""
        return 0.5 * self.alpha


def as_order(order: FractionalOrder | float) -> FractionalOrder:
    if isinstance(order, FractionalOrder):
        return order
    return FractionalOrder(order)


@dataclass(frozen=True)
class SeriesControl:
    """Truncation controls for the Wright series.

    Parameters
    ----------
    abs_tol
        A term is negligible when ``|term| < abs_tol * max(1, |partial sum|)``.
    max_terms
        Hard cap on the number of terms; hitting it raises
        :class:`~fracstefan.errors.NonConvergence`.
    """

    abs_tol: float = 1e-14
    max_terms: int = 500

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0.0):
            raise InvalidParameter(f"abs_tol > 0 required, got {self.abs_tol!r}")
        if int(self.max_terms) < 1:
            raise InvalidParameter(f"max_terms >= 1 required, got {self.max_terms!r}")

    @classmethod
    def from_env(cls, **overrides) -> "SeriesControl":
        """Defaults, with ``abs_tol`` taken from ``$FRAC_STEFAN_SERIES_TOL`` if set."""
        raw = os.environ.get(SERIES_TOL_ENV)
        if raw is not None and "abs_tol" not in overrides:
            try:
                overrides["abs_tol"] = float(raw)
            except ValueError as exc:
                raise InvalidParameter(f"{SERIES_TOL_ENV}={raw!r} is not a number") from exc
        return cls(**overrides)


DEFAULT_CONTROL = SeriesControl()


def _elementwise(scalar_fn, z, *args, **kwargs):
    if np.ndim(z) == 0:
        return scalar_fn(float(z), *args, **kwargs)
    z = np.asarray(z, dtype=float)
    out = np.empty(z.shape)
    for idx, zi in np.ndenumerate(z):
        out[idx] = scalar_fn(float(zi), *args, **kwargs)
    return out


# {{{ reciprocal gamma

def _sinpi(x: float) -> float:
    # sin(pi x) with the argument reduced first; sin(pi * 1e6) in double is garbage
    n = round(x)
    r = x - n
    s = math.sin(math.pi * r)
    return -s if n % 2 else s


def reciprocal_gamma(x: float) -> float:
    """``1/Gamma(x)``, an entire function: exactly ``0.0`` at the poles ``0, -1, -2, ...``.

    Negative non-integers go through the reflection formula
    ``1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi``, switching to log-gamma when
    ``Gamma(1 - x)`` would overflow.
    """
    x = float(x)
    if x <= 0.0 and abs(x - round(x)) < POLE_TOL:
        return 0.0
    if x > 0.0:
        if x < 171.0:
            return 1.0 / math.gamma(x)
        return math.exp(-math.lgamma(x))
    s = _sinpi(x) / math.pi
    y = 1.0 - x
    if y < 171.0:
        return s * math.gamma(y)
    if s == 0.0:
        return 0.0
    log_mag = math.lgamma(y) + math.log(abs(s))
    if log_mag > 709.0:
        # beyond double range; the caller multiplies it by a vanishing power anyway
        return math.copysign(math.inf, s)
    return math.copysign(math.exp(log_mag), s)

# }}}


# {{{ series

def _series(z: float, a: float, b: float, ctl: SeriesControl, *, derivative: bool) -> float:
    # derivative=True sums d/dz W = sum_{n>=1} z^{n-1} / ((n-1)! Gamma(a n + b))
    terms = []
    power = 1.0  # z^k / k!
    quiet = 0
    acc = 0.0
    start = 1 if derivative else 0
    for n in range(start, start + ctl.max_terms):
        k = n - start
        if k > 0:
            power *= z / k
        term = power * reciprocal_gamma(a * n + b)
        terms.append(term)
        acc += term
        if abs(term) < ctl.abs_tol * max(1.0, abs(acc)):
            quiet += 1
            if quiet >= QUIET_TERMS:
                break
        else:
            quiet = 0
    else:
        raise NonConvergence(
            f"Wright series W(z={z}, a={a}, b={b}) did not settle within {ctl.max_terms} terms"
        )

    total = math.fsum(terms)
    biggest = max(abs(t) for t in terms)
    if biggest > CANCELLATION_LIMIT * abs(total):
        warnings.warn(
            f"Wright series at z={z}, a={a}, b={b}: largest term {biggest:.3e} vs "
            f"sum {total:.3e}; most significant digits lost",
            PrecisionLoss,
            stacklevel=3,
        )
    return total

# }}}


# {{{ integral representation

def _kanter_a(phi: float, nu: float, p: float) -> float:
    if phi <= 0.0:
        return nu ** (nu * p) * (1.0 - nu)
    snu = math.sin(nu * phi)
    return (snu / math.sin(phi)) ** p * math.sin((1.0 - nu) * phi) / snu


def _moment(k: int, xp: float, nu: float, p: float) -> float:
    """``int_0^pi A^k exp(-A x^p) dphi``."""

    def integrand(phi: float) -> float:
        a = _kanter_a(phi, nu, p)
        if k == 0:
            return math.exp(-a * xp)
        return math.exp(k * math.log(a) - a * xp)

    with warnings.catch_warnings():
        # quadpack flags roundoff once it is at the double-precision floor
        warnings.simplefilter("ignore")
        value, _ = quad(integrand, 0.0, math.pi, epsabs=0.0, epsrel=1e-13, limit=200)
    return value


def _represented(a: float, b: float) -> int | None:
    """Which derivative of ``W(-x; -nu, 1)`` the pair ``(a, b)`` is, if any."""
    if not (-1.0 < a < 0.0):
        return None
    nu = -a
    for order, target in enumerate((1.0, 1.0 - nu, 1.0 - 2.0 * nu)):
        if abs(b - target) <= 1e-14:
            return order
    return None


def _integral(x: float, nu: float, which: int) -> float:
    # which = 0: W(-x; -nu, 1); 1: M_nu(x); 2: -M_nu'(x)
    p = 1.0 / (1.0 - nu)
    xp = x**p
    if _kanter_a(0.0, nu, p) * xp > _UNDERFLOW_EXPONENT:
        return 0.0
    if which == 0:
        return _moment(0, xp, nu, p) / math.pi
    i1 = _moment(1, xp, nu, p)
    if which == 1:
        return p / math.pi * x ** (p - 1.0) * i1
    i2 = _moment(2, xp, nu, p)
    return p / math.pi * (p * x ** (2.0 * p - 2.0) * i2 - (p - 1.0) * x ** (p - 2.0) * i1)

# }}}


# {{{ public functions

def _wright_scalar(z: float, a: float, b: float, ctl: SeriesControl, method: str) -> float:
    which = _represented(a, b)
    if method == "integral":
        if which is None or z > 0.0:
            raise InvalidParameter(
                f"no integral representation for W(z={z}; a={a}, b={b}); "
                "needs z <= 0, -1 < a < 0 and b in {1, 1+a, 1+2a}"
            )
        return _integral(-z, -a, which)
    if method == "auto" and which is not None and z <= -INTEGRAL_SWITCH:
        return _integral(-z, -a, which)
    return _series(z, a, b, ctl, derivative=False)


def wright_w(
    z: ArrayLike,
    a: float,
    b: float,
    ctl: SeriesControl = DEFAULT_CONTROL,
    method: str = "auto",
) -> ArrayLike:
    """Wright function ``W(z; a, b)`` for real ``z`` and ``a > -1``.

    Parameters
    ----------
    z
        Argument; scalar or array.
    a, b
        Wright parameters. The library exercises ``a in (-1, 0]``, ``z <= 0``.
    ctl
        Series truncation controls.
    method
        ``"series"`` forces direct summation, ``"integral"`` forces the
        positive-integrand representation (only for ``b in {1, 1+a, 1+2a}``
        and ``z <= 0``), ``"auto"`` uses the integral for ``z <= -2`` when it
        exists and the series otherwise.

    Raises
    ------
    NonConvergence
        If the series needs more than ``ctl.max_terms`` terms.
    """
    a = float(a)
    b = float(b)
    if not a > -1.0:
        raise InvalidParameter(f"Wright function needs a > -1, got a={a}")
    if method not in ("auto", "series", "integral"):
        raise InvalidParameter(f"unknown method {method!r}")
    return _elementwise(_wright_scalar, z, a, b, ctl, method)


def wright_w_dz(
    z: ArrayLike, a: float, b: float, ctl: SeriesControl = DEFAULT_CONTROL
) -> ArrayLike:
    """Term-by-term ``z``-derivative of the Wright series.

    Always summed directly; ``W(z; a, a + b)`` is the same quantity and is the
    natural cross-check.
    """
    a = float(a)
    b = float(b)
    if not a > -1.0:
        raise InvalidParameter(f"Wright function needs a > -1, got a={a}")
    return _elementwise(lambda zi: _series(zi, a, b, ctl, derivative=True), z)


def mainardi(nu: float, z: ArrayLike, ctl: SeriesControl = DEFAULT_CONTROL) -> ArrayLike:
    """Mainardi function ``M_nu(z) = W(-z; -nu, 1 - nu)``."""
    nu = float(nu)
    if not (0.0 < nu < 1.0):
        raise InvalidParameter(f"Mainardi index nu in (0,1) required, got nu={nu}")
    if nu > 0.5 or np.any(np.asarray(z) < 0.0):
        warnings.warn(
            f"mainardi(nu={nu}) outside the validated box 0 < nu <= 1/2, z >= 0",
            RangeWarning,
            stacklevel=2,
        )
    return wright_w(-np.asarray(z, dtype=float) if np.ndim(z) else -float(z), -nu, 1.0 - nu, ctl)


def fractional_erf(
    x: ArrayLike, order: FractionalOrder | float, ctl: SeriesControl = DEFAULT_CONTROL
) -> ArrayLike:
    """``1 - W(-x; -alpha/2, 1)``: increasing from 0 at ``x = 0`` towards 1.

    Tends to ``erf(x/2)`` as ``alpha -> 1``.
    """
    nu = as_order(order).nu
    if np.any(np.asarray(x) < 0.0):
        warnings.warn("fractional_erf is validated for x >= 0 only", RangeWarning, stacklevel=2)
    minus_x = -np.asarray(x, dtype=float) if np.ndim(x) else -float(x)
    return 1.0 - wright_w(minus_x, -nu, 1.0, ctl)


def mainardi_dx(nu: float, z: ArrayLike, ctl: SeriesControl = DEFAULT_CONTROL) -> ArrayLike:
    """``d/dz M_nu(z) = -W(-z; -nu, 1 - 2 nu)``."""
    nu = float(nu)
    minus_z = -np.asarray(z, dtype=float) if np.ndim(z) else -float(z)
    return -wright_w(minus_z, -nu, 1.0 - 2.0 * nu, ctl)

# }}}
