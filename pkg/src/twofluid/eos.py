"""Algebraic closure of the isothermal equal-pressure two-fluid model.

Both fluids obey affine pressure laws p_k = K_k*rho_k - b_k and share one
pressure.  Given the conserved partial densities r1 = rho1*alpha and
r2 = rho2*(1-alpha), the volume fraction alpha of fluid 1 is the unique
root in [0, 1] of the quadratic

    F(X) = X^2*(b1-b2) + X*(-K1*r1 - b1 - K2*r2 + b2) + K1*r1,

from which the true densities and the common pressure follow.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FluidParams",
    "ConservedCell",
    "ClosureFields",
    "RiemannData",
    "ClosureDomainError",
    "InvalidStateError",
    "quadratic_value",
    "alpha_lower_bound",
    "solve_alpha",
    "closure",
    "closure_scheme",
    "riemann_to_conserved",
]


class ClosureDomainError(ValueError):
    """Raised when closure inputs are outside the admissible domain."""


class InvalidStateError(ValueError):
    """Raised when primitive data maps to a non-physical conserved state."""


@dataclass(frozen=True)
class FluidParams:
    """Pressure-law constants p_k = K_k*rho_k - b_k and axial gravity."""

    K1: float
    K2: float
    b1: float
    b2: float
    g: float = 0.0

    def __post_init__(self):
        vals = (self.K1, self.K2, self.b1, self.b2, self.g)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError("fluid parameters must be finite")
        if self.K1 <= 0.0 or self.K2 <= 0.0:
            raise ValueError("pressure-law slopes K1, K2 must be positive")
        if self.b1 - self.b2 <= 0.0:
            raise ValueError("offset difference b1 - b2 must be positive")


@dataclass(frozen=True)
class ConservedCell:
    """Conserved variables of one cell: partial densities and momenta."""

    r1: float
    r2: float
    m1: float
    m2: float


@dataclass(frozen=True)
class ClosureFields:
    """Derived fields: volume fraction, common pressure, true densities.

    `discriminant` is the discriminant of the closure quadratic;
    `degenerate` marks double-vacuum cells (r1 = r2 = 0) where no
    pressure is defined and all outputs are zeroed.
    """

    alpha: np.ndarray
    p: np.ndarray
    rho1: np.ndarray
    rho2: np.ndarray
    discriminant: np.ndarray
    degenerate: np.ndarray


@dataclass(frozen=True)
class RiemannData:
    """Two-sided primitive data (alpha, p, u1, u2) of a shock-tube problem."""

    alpha_l: float
    alpha_r: float
    p_l: float
    p_r: float
    u1_l: float
    u1_r: float
    u2_l: float
    u2_r: float
    x_jump: float = 0.5

    def __post_init__(self):
        for a in (self.alpha_l, self.alpha_r):
            if not 0.0 < a < 1.0:
                raise ValueError("volume fractions must lie strictly in (0, 1)")
        vals = (self.p_l, self.p_r, self.u1_l, self.u1_r,
                self.u2_l, self.u2_r, self.x_jump)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError("Riemann data must be finite")


def quadratic_value(x, r1, r2, params):
    """Evaluate the closure quadratic F at x."""
    a = params.b1 - params.b2
    return (x * x * a
            + x * (-params.K1 * r1 - params.b1 - params.K2 * r2 + params.b2)
            + params.K1 * r1)


def alpha_lower_bound(r1, r2, params):
    """Lower bound K1*r1 / (b1 - b2 + K1*r1 + K2*r2) on the volume fraction."""
    return params.K1 * r1 / (params.b1 - params.b2
                             + params.K1 * r1 + params.K2 * r2)


def _check_nonneg(r1, r2):
    if not (np.all(np.isfinite(r1)) and np.all(np.isfinite(r2))):
        raise ClosureDomainError("partial densities must be finite")
    if np.any(r1 < 0.0) or np.any(r2 < 0.0):
        raise ClosureDomainError("partial densities must be non-negative")


def _alpha_and_disc(r1, r2, params):
    a = params.b1 - params.b2
    s = params.K1 * r1 + params.K2 * r2 + a
    disc = s * s - 4.0 * a * params.K1 * r1
    # roundoff can push the discriminant slightly negative near vacuum
    disc = np.maximum(disc, 0.0)
    # conjugate form of the smaller quadratic root: avoids cancellation in
    # (s - sqrt(disc)) when K1*r1 is small
    alpha = 2.0 * params.K1 * r1 / (s + np.sqrt(disc))
    alpha = np.clip(alpha, alpha_lower_bound(r1, r2, params), 1.0)
    # the root is 1 exactly in absence of fluid 2 (F(1) = -K2*r2 = 0)
    alpha = np.where((r2 == 0.0) & (r1 > 0.0), 1.0, alpha)
    return alpha, disc


def solve_alpha(r1, r2, params):
    """Volume fraction of fluid 1 from the partial densities.

    Returns the unique root of F in [0, 1], strictly interior when both
    partial densities are positive.  Accepts scalars or arrays.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    _check_nonneg(r1, r2)
    alpha, _ = _alpha_and_disc(r1, r2, params)
    if alpha.ndim == 0:
        return float(alpha)
    return alpha


def closure(r1, r2, params):
    """Full closure on strictly positive partial densities.

    rho2 is recovered from the linear equal-pressure relation
    rho2 = (-b1 + b2 + K1*rho1)/K2 rather than r2/(1-alpha), which
    cancels badly as alpha -> 1.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    _check_nonneg(r1, r2)
    if np.any(r1 <= 0.0) or np.any(r2 <= 0.0):
        raise ClosureDomainError("closure requires r1 > 0 and r2 > 0; "
                                 "use closure_scheme for vacuum states")
    alpha, disc = _alpha_and_disc(r1, r2, params)
    rho1 = r1 / alpha
    rho2 = (-params.b1 + params.b2 + params.K1 * rho1) / params.K2
    p = params.K1 * rho1 - params.b1
    return ClosureFields(alpha=alpha, p=p, rho1=rho1, rho2=rho2,
                         discriminant=disc,
                         degenerate=np.zeros_like(alpha, dtype=bool))


def closure_scheme(r1, r2, params):
    """Total closure for the transport-correction scheme (vacuum allowed).

    On positive inputs this agrees with `closure`.  When r1 = 0 the
    pressure is continued as p = -b1 (the limit of K1*r1/alpha - b1
    along r1 -> 0); double-vacuum cells are flagged degenerate with all
    fields zeroed.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    _check_nonneg(r1, r2)
    alpha, disc = _alpha_and_disc(r1, r2, params)
    degenerate = (r1 == 0.0) & (r2 == 0.0)

    vac1 = (r1 == 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        rho1 = np.where(vac1, 0.0, r1 / np.where(alpha > 0.0, alpha, 1.0))
    p = np.where(vac1, -params.b1, params.K1 * rho1 - params.b1)
    # with alpha = 0 fluid 2 fills the cell, so its true density is r2
    rho2 = np.where(vac1, r2,
                    (-params.b1 + params.b2 + params.K1 * rho1) / params.K2)

    alpha = np.where(degenerate, 0.0, alpha)
    p = np.where(degenerate, 0.0, p)
    rho1 = np.where(degenerate, 0.0, rho1)
    rho2 = np.where(degenerate, 0.0, rho2)
    return ClosureFields(alpha=alpha, p=p, rho1=rho1, rho2=rho2,
                         discriminant=disc, degenerate=degenerate)


def primitive_to_conserved(alpha, p, u1, u2, params):
    """Invert the state laws: one (alpha, p, u1, u2) state to a cell."""
    rho1 = (p + params.b1) / params.K1
    rho2 = (p + params.b2) / params.K2
    if rho1 <= 0.0 or rho2 <= 0.0:
        raise InvalidStateError("pressure implies non-positive true density")
    r1 = alpha * rho1
    r2 = (1.0 - alpha) * rho2
    return ConservedCell(r1=r1, r2=r2, m1=r1 * u1, m2=r2 * u2)


def riemann_to_conserved(data, params):
    """Left and right conserved cells of a shock-tube problem."""
    left = primitive_to_conserved(data.alpha_l, data.p_l,
                                  data.u1_l, data.u2_l, params)
    right = primitive_to_conserved(data.alpha_r, data.p_r,
                                   data.u1_r, data.u2_r, params)
    return left, right
