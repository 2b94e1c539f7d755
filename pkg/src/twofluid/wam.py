"""Weak-asymptotic method for the equal-pressure two-fluid system.

The four PDEs are replaced by a semi-discrete ODE system on the grid:
shifted upwind transport of the conserved fields plus a momentum force
-r_k * d/dx Phi_k built from the smoothed log-density potentials

    Phi_k = K_k * Avg5(log(rho_k + eps^N)),

integrated by explicit first-order Euler.  Initial data and each step
are lightly smoothed by a 3-point average.
"""

from dataclasses import dataclass

import numpy as np

from .eos import closure, ClosureDomainError
from .grid import GridState, neighbor, three_point_average

__all__ = [
    "WamParams",
    "StabilityError",
    "default_nu_step",
    "split_velocity",
    "potential",
    "rhs",
    "regularize_ic",
    "step_euler",
    "run_wam",
]


class StabilityError(RuntimeError):
    """Raised when the explicit step would violate the stability bound."""


def default_nu_step(cfl):
    """Per-step averaging weight, scaling linearly with r = dt/dx.

    The minimal workable weights are 1e-2, 1e-3, 1e-4 at r = 1e-4,
    1e-5, 1e-6, i.e. nu_step = 100*r.
    """
    return min(100.0 * cfl, 0.25)


@dataclass(frozen=True)
class WamParams:
    """Parameters of the weak-asymptotic integration.

    cfl is the ratio r = dt/dx.  beta and N_exp are the density-floor
    exponents (eps^beta, eps^N); at the default 100 they are numerically
    negligible and only matter near vacuum, which this method excludes.
    The theoretical mollifier is replaced by a symmetric averaging of
    the potentials over 2*phi_stencil + 1 cells with neighbor weight
    nu_phi.
    """

    cfl: float
    t_final: float
    beta: float = 100.0
    N_exp: float = 100.0
    nu_ic: float = 0.1
    nu_phi: float = 0.15
    phi_stencil: int = 2
    nu_step: float = None

    def __post_init__(self):
        if self.cfl <= 0.0:
            raise ValueError("cfl must be positive")
        if self.t_final < 0.0:
            raise ValueError("t_final must be non-negative")
        if self.beta <= 0.0:
            raise ValueError("beta must be positive")
        if self.nu_step is None:
            object.__setattr__(self, "nu_step", default_nu_step(self.cfl))
        for name in ("nu_ic", "nu_step"):
            v = getattr(self, name)
            if not 0.0 <= v < 0.5:
                raise ValueError(f"{name} must lie in [0, 0.5)")
        if self.phi_stencil < 1:
            raise ValueError("phi_stencil must be at least 1")
        if not 0.0 <= self.nu_phi * 2 * self.phi_stencil <= 1.0:
            raise ValueError("potential-averaging weights must be non-negative")


def split_velocity(u):
    """Split u into non-negative parts with u+ - u- = u, u+ + u- = |u|."""
    au = np.abs(u)
    return 0.5 * (au + u), 0.5 * (au - u)


def _smooth_potential(logrho, nu, half_width, boundary):
    out = (1.0 - 2.0 * half_width * nu) * logrho
    for k in range(1, half_width + 1):
        out += nu * (neighbor(logrho, -k, boundary) + neighbor(logrho, k, boundary))
    return out


def potential(state, params, wp, k):
    """Smoothed potential Phi_k = K_k * Avg(log(rho_k + eps^N)) per cell."""
    if np.any(state.r1 <= 0.0) or np.any(state.r2 <= 0.0):
        raise ClosureDomainError("weak-asymptotic method requires positive densities")
    fields = closure(state.r1, state.r2, params)
    rho = fields.rho1 if k == 1 else fields.rho2
    K = params.K1 if k == 1 else params.K2
    floor = state.spec.eps ** wp.N_exp
    logrho = np.log(rho + floor)
    return K * _smooth_potential(logrho, wp.nu_phi, wp.phi_stencil,
                                 state.spec.boundary)


def rhs(state, params, wp):
    """Time derivatives (dr1, dr2, dm1, dm2) of the semi-discrete system.

    Continuity: shifted upwind flux differences over one cell (the shift
    parameter eps equals h) plus the eps^beta floor.  Momentum: the same
    transport applied to r_k*u_k, the potential force with a central
    difference of Phi_k, and gravity.
    """
    spec = state.spec
    bnd = spec.boundary
    eps = spec.eps
    floor = eps ** wp.beta
    u1, u2 = state.velocities()

    phi1 = potential(state, params, wp, 1)
    phi2 = potential(state, params, wp, 2)
    two_h = 2.0 * spec.h
    dphi1 = (neighbor(phi1, 1, bnd) - neighbor(phi1, -1, bnd)) / two_h
    dphi2 = (neighbor(phi2, 1, bnd) - neighbor(phi2, -1, bnd)) / two_h

    out = []
    for r, m, u, dphi in ((state.r1, state.m1, u1, dphi1),
                          (state.r2, state.m2, u2, dphi2)):
        up, um = split_velocity(u)
        au = up + um
        dr = (neighbor(r * up, -1, bnd) - r * au + neighbor(r * um, 1, bnd)) / eps
        dr += floor
        dm = (neighbor(m * up, -1, bnd) - m * au + neighbor(m * um, 1, bnd)) / eps
        dm += -r * dphi + params.g * r
        out.append((dr, dm))
    (dr1, dm1), (dr2, dm2) = out
    return dr1, dr2, dm1, dm2


def regularize_ic(state, nu):
    """3-point averaging of all conserved fields (initial regularization)."""
    if not 0.0 <= nu < 0.5:
        raise ValueError("nu must lie in [0, 0.5)")
    bnd = state.spec.boundary
    return GridState(spec=state.spec,
                     r1=three_point_average(state.r1, nu, bnd),
                     r2=three_point_average(state.r2, nu, bnd),
                     m1=three_point_average(state.m1, nu, bnd),
                     m2=three_point_average(state.m2, nu, bnd),
                     t=state.t)


def step_euler(state, params, wp):
    """One explicit Euler step of size dt = cfl*h plus per-step averaging."""
    u1, u2 = state.velocities()
    umax = max(np.max(np.abs(u1)), np.max(np.abs(u2)))
    if wp.cfl * umax >= 1.0:
        raise StabilityError(f"cfl * max|u| = {wp.cfl * umax:g} >= 1 "
                             f"(max|u| = {umax:g})")
    dt = wp.cfl * state.spec.h
    dr1, dr2, dm1, dm2 = rhs(state, params, wp)
    bnd = state.spec.boundary
    nu = wp.nu_step
    return GridState(
        spec=state.spec,
        r1=three_point_average(state.r1 + dt * dr1, nu, bnd),
        r2=three_point_average(state.r2 + dt * dr2, nu, bnd),
        m1=three_point_average(state.m1 + dt * dm1, nu, bnd),
        m2=three_point_average(state.m2 + dt * dm2, nu, bnd),
        t=state.t + dt,
    )


def run_wam(ic, params, wp, snapshot_times=()):
    """Advance the state to t_final; returns snapshots plus the final state.

    Snapshot times are matched to the first step reaching them; the
    returned list ends with the final state.
    """
    state = ic
    dt = wp.cfl * ic.spec.h
    pending = sorted(t for t in snapshot_times if t < wp.t_final)
    snaps = []
    while state.t < wp.t_final - 0.5 * dt:
        state = step_euler(state, params, wp)
        while pending and state.t >= pending[0] - 0.5 * dt:
            snaps.append(state.copy())
            pending.pop(0)
    snaps.append(state)
    return snaps
