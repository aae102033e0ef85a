"""Closed-form solutions of the one-phase fractional Stefan problems.

All three problems share

    D^alpha u = lam^2 u_xx           on 0 < x < s(t),
    u(s(t), t) = C,
    D^alpha s(t) = -k u_x(s(t), t),  s(0) = 0,

and differ in the condition at ``x = 0``:

* :class:`Dirichlet` -- ``u(0, t) = B`` with ``B > C``;
* :class:`Flux`      -- ``u_x(0, t) = -q / t**(alpha/2)`` with ``q > 0``;
* :class:`Convective` -- ``m u_x(0, t) = h / t**(alpha/2) * (u(0, t) - D)`` with ``D > C``.

Every solution has the similarity form ``u = a + b W(-x/(lam t^(alpha/2)); -alpha/2, 1)``
and ``s(t) = lam * root * t^(alpha/2)``; only ``(a, b)`` and the root differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import (
    BracketFailure,
    ConsistencyFailure,
    DegenerateProblem,
    DomainError,
    InvalidParameter,
)
from .special_fn import (
    DEFAULT_CONTROL,
    FractionalOrder,
    SeriesControl,
    as_order,
    fractional_erf,
    mainardi,
    wright_w,
)

DEFAULT_TOL = 1e-12
MAX_ROOT = 50.0
BISECTION_WIDTH = 1e-13
CHECK_TOL = 1e-9


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0.0 and math.isfinite(value)):
        raise InvalidParameter(f"{name}>0 required, got {name}={value!r}")
    return value


@dataclass(frozen=True)
class Dirichlet:
    B: float
    kind = "dirichlet"


@dataclass(frozen=True)
class Flux:
    q: float
    kind = "flux"


@dataclass(frozen=True)
class Convective:
    m: float
    h: float
    D: float
    kind = "convective"


BoundaryCondition = Union[Dirichlet, Flux, Convective]


@dataclass(frozen=True)
class ProblemSpec:
    """One fractional Stefan problem: order, physical constants and the condition at ``x = 0``.

    Raises :class:`~fracstefan.errors.InvalidParameter` (or its subclass
    :class:`~fracstefan.errors.DegenerateProblem` for ``B == C``/``D == C``)
    when an invariant fails.
    """

    order: FractionalOrder
    lam: float
    k: float
    C: float
    bc: BoundaryCondition

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", as_order(self.order))
        object.__setattr__(self, "lam", _positive("lambda", self.lam))
        object.__setattr__(self, "k", _positive("k", self.k))
        C = float(self.C)
        if not math.isfinite(C):
            raise InvalidParameter(f"C must be finite, got {self.C!r}")
        object.__setattr__(self, "C", C)
        bc = self.bc
        if isinstance(bc, Dirichlet):
            if bc.B == C:
                raise DegenerateProblem("B>C required (B == C gives no moving front)")
            if not bc.B > C:
                raise InvalidParameter(f"B>C required, got B={bc.B}, C={C}")
        elif isinstance(bc, Flux):
            _positive("q", bc.q)
        elif isinstance(bc, Convective):
            _positive("m", bc.m)
            _positive("h", bc.h)
            if bc.D == C:
                raise DegenerateProblem("D>C required (D == C gives no moving front)")
            if not bc.D > C:
                raise InvalidParameter(f"D>C required, got D={bc.D}, C={C}")
        else:
            raise InvalidParameter(f"unknown boundary condition {bc!r}")

    @property
    def kind(self) -> str:
        return self.bc.kind

    @property
    def alpha(self) -> float:
        return self.order.alpha

    def replace_bc(self, bc: BoundaryCondition) -> "ProblemSpec":
        return ProblemSpec(self.order, self.lam, self.k, self.C, bc)


@dataclass(frozen=True)
class TranscendentalTarget:
    """Right-hand side that ``H``, ``J`` or ``K`` must reach at the similarity root."""

    value: float
    which: str

    def __post_init__(self) -> None:
        if self.which not in ("H", "J", "K"):
            raise InvalidParameter(f"which must be H, J or K, got {self.which!r}")
        if not (self.value > 0.0 and math.isfinite(self.value)):
            raise DegenerateProblem(f"target must be positive and finite, got {self.value}")


@dataclass(frozen=True)
class ClosedFormSolution:
    """``u(x, t) = a + b W(-x/(lam t^(alpha/2)); -alpha/2, 1)``, ``s(t) = lam root t^(alpha/2)``."""

    a: float
    b: float
    root: float
    order: FractionalOrder
    lam: float
    ctl: SeriesControl = field(default=DEFAULT_CONTROL, compare=False)


_WHICH = {"dirichlet": "H", "flux": "J", "convective": "K"}


def robin_ratio(spec: ProblemSpec) -> float:
    """``m / (h lam Gamma(1 - alpha/2))``, the Biot-like offset in ``K``."""
    bc = spec.bc
    if not isinstance(bc, Convective):
        raise InvalidParameter(f"convective problem required, got {spec.kind}")
    return bc.m / (bc.h * spec.lam * math.gamma(1.0 - spec.order.nu))


def _safe_ratio(num: float, den: float) -> float:
    return math.inf if den <= 0.0 else num / den


def trans_H(xi: float, order: FractionalOrder | float, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``H(xi) = xi * ferf(xi) / M_{alpha/2}(xi)`` (Dirichlet root function)."""
    order = as_order(order)
    return _safe_ratio(xi * fractional_erf(xi, order, ctl), mainardi(order.nu, xi, ctl))


def trans_J(mu: float, order: FractionalOrder | float, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``J(mu) = mu / M_{alpha/2}(mu)`` (flux root function)."""
    order = as_order(order)
    return _safe_ratio(mu, mainardi(order.nu, mu, ctl))


def trans_K(eta: float, spec: ProblemSpec, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """``K(eta) = eta (ferf(eta) + r) / M_{alpha/2}(eta)`` with ``r = robin_ratio(spec)``.

    Strictly increasing from ``K(0+) = 0`` to ``+inf``.
    """
    r = robin_ratio(spec)
    return _safe_ratio(
        eta * (fractional_erf(eta, spec.order, ctl) + r), mainardi(spec.order.nu, eta, ctl)
    )


def trans_function(spec: ProblemSpec, ctl: SeriesControl = DEFAULT_CONTROL):
    """The root function of ``spec`` as a callable of one variable."""
    if spec.kind == "dirichlet":
        return lambda x: trans_H(x, spec.order, ctl)
    if spec.kind == "flux":
        return lambda x: trans_J(x, spec.order, ctl)
    return lambda x: trans_K(x, spec, ctl)


def target_for(spec: ProblemSpec) -> TranscendentalTarget:
    nu = spec.order.nu
    g_minus = math.gamma(1.0 - nu)
    g_plus = math.gamma(1.0 + nu)
    bc = spec.bc
    if isinstance(bc, Dirichlet):
        value = spec.k / spec.lam**2 * g_minus / g_plus * (bc.B - spec.C)
    elif isinstance(bc, Flux):
        value = spec.k * bc.q / spec.lam * g_minus**2 / g_plus
    else:
        value = spec.k / spec.lam**2 * g_minus / g_plus * (bc.D - spec.C)
    return TranscendentalTarget(value, _WHICH[spec.kind])


def bisect_increasing(f, target: float, *, max_root: float = MAX_ROOT, width: float = BISECTION_WIDTH) -> float:
    """Root of ``f(x) = target`` for ``f`` increasing on ``(0, inf)`` with ``f(0+) = 0``.

    The bracket grows by doubling from ``[0, 1]`` and is capped at ``max_root``.
    """
    lo, hi = 0.0, 1.0
    while f(hi) < target:
        if hi >= max_root:
            raise BracketFailure(
                f"root exceeds {max_root}: f({hi}) = {f(hi)} < target {target}; "
                "series precision is the likely limit, not existence"
            )
        lo, hi = hi, min(2.0 * hi, max_root)
    f_lo, f_hi = (f(lo) if lo > 0.0 else 0.0), f(hi)
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid < target:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    if lo > 0.0 and abs(f_lo - target) < abs(f_hi - target):
        return lo
    return hi


def solve_root(
    spec: ProblemSpec,
    tol: float = DEFAULT_TOL,
    ctl: SeriesControl = DEFAULT_CONTROL,
    which: str | None = None,
) -> float:
    """Similarity root (``xi~``, ``mu~`` or ``eta~``) of ``spec``.

    The residual ``|trans(root) - target|`` is checked against
    ``tol * max(1, target)``.
    """
    target = target_for(spec)
    if which is not None and which != target.which:
        raise InvalidParameter(f"{spec.kind} problem uses {target.which}, not {which}")
    f = trans_function(spec, ctl)
    root = bisect_increasing(f, target.value)
    residual = abs(f(root) - target.value)
    if residual > tol * max(1.0, target.value):
        raise ConsistencyFailure(
            f"{target.which}({root}) misses target {target.value} by {residual:.3e}"
        )
    return root


def coefficients(spec: ProblemSpec, root: float, ctl: SeriesControl = DEFAULT_CONTROL) -> tuple[float, float]:
    """``(a, b)`` of the similarity form for ``spec`` at ``root``."""
    nu = spec.order.nu
    bc = spec.bc
    C = spec.C
    if isinstance(bc, Dirichlet):
        b = (bc.B - C) / fractional_erf(root, spec.order, ctl)
        return bc.B - b, b
    if isinstance(bc, Flux):
        b = bc.q * spec.lam * math.gamma(1.0 - nu)
        return C - b * wright_w(-root, -nu, 1.0, ctl), b
    r = robin_ratio(spec)
    b = (bc.D - C) / (fractional_erf(root, spec.order, ctl) + r)
    return bc.D - (1.0 + r) * b, b


def evaluate_u(sol: ClosedFormSolution, x, t):
    """Temperature ``u(x, t)``; ``x`` may be an array. Valid past the front too."""
    if t <= 0.0:
        raise DomainError(f"t > 0 required, got t={t}")
    z = np.asarray(x, dtype=float) / (sol.lam * t**sol.order.nu) if np.ndim(x) else x / (sol.lam * t**sol.order.nu)
    return sol.a + sol.b * wright_w(-z, -sol.order.nu, 1.0, sol.ctl)


def evaluate_ux(sol: ClosedFormSolution, x, t):
    """``u_x = -b M_{alpha/2}(z) / (lam t^(alpha/2))`` with ``z = x/(lam t^(alpha/2))``."""
    if t <= 0.0:
        raise DomainError(f"t > 0 required, got t={t}")
    scale = sol.lam * t**sol.order.nu
    z = np.asarray(x, dtype=float) / scale if np.ndim(x) else x / scale
    return -sol.b / scale * mainardi(sol.order.nu, z, sol.ctl)


def evaluate_s(sol: ClosedFormSolution, t):
    """Front position ``lam * root * t^(alpha/2)``."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0):
        raise DomainError("t >= 0 required for the front")
    s = sol.lam * sol.root * t_arr**sol.order.nu
    return float(s) if np.ndim(t) == 0 else s


def in_domain(sol: ClosedFormSolution, x, t):
    """``0 <= x <= s(t)``: whether a query point lies in the liquid region."""
    x_arr = np.asarray(x, dtype=float)
    flag = (x_arr >= 0.0) & (x_arr <= evaluate_s(sol, t) * (1.0 + 1e-14))
    return bool(flag) if np.ndim(x) == 0 else flag


def sample_profile(sol: ClosedFormSolution, x, t) -> tuple[np.ndarray, np.ndarray]:
    """``(u, in_domain)`` arrays over ``x`` at time ``t``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return np.asarray(evaluate_u(sol, x, t)), np.asarray(in_domain(sol, x, t))


def boundary_defect(spec: ProblemSpec, sol: ClosedFormSolution, t: float) -> float:
    """Defect of the ``x = 0`` condition, multiplied by ``t^(alpha/2)`` for flux/convective."""
    bc = spec.bc
    u0 = evaluate_u(sol, 0.0, t)
    if isinstance(bc, Dirichlet):
        return abs(u0 - bc.B)
    tn = t**spec.order.nu
    ux0 = evaluate_ux(sol, 0.0, t)
    if isinstance(bc, Flux):
        return abs(ux0 * tn + bc.q)
    return abs(bc.m * ux0 * tn - bc.h * (u0 - bc.D))


def assemble(spec: ProblemSpec, root: float, ctl: SeriesControl = DEFAULT_CONTROL) -> ClosedFormSolution:
    """Closed-form ``{u, s}`` for ``spec`` given its similarity root.

    Checks ``u(s(1), 1) = C`` and the boundary condition at ``t = 1``
    (to ``1e-9``, scaled by the temperature spread).
    """
    if not root > 0.0:
        raise DomainError(f"root > 0 required, got {root}")
    a, b = coefficients(spec, root, ctl)
    sol = ClosedFormSolution(a, b, float(root), spec.order, spec.lam, ctl)
    scale = max(1.0, abs(b))
    front = abs(evaluate_u(sol, evaluate_s(sol, 1.0), 1.0) - spec.C)
    if front > CHECK_TOL * scale:
        raise ConsistencyFailure(f"u(s(1),1) - C = {front:.3e}")
    bdef = boundary_defect(spec, sol, 1.0)
    if bdef > CHECK_TOL * scale:
        raise ConsistencyFailure(f"{spec.kind} boundary condition violated by {bdef:.3e} at t=1")
    return sol


def solve(spec: ProblemSpec, tol: float = DEFAULT_TOL, ctl: SeriesControl = DEFAULT_CONTROL) -> ClosedFormSolution:
    """Root search followed by :func:`assemble`."""
    return assemble(spec, solve_root(spec, tol, ctl), ctl)
