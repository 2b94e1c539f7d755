"""Shock-tube presets: pressure-law constants and Riemann data.

The constants are K1 = 1e6, K2 = 1e5 and b_k = K_k*rho0_k - p0_k with
rho0 = (1000, 0) and p0 = (1e5, 0), giving b1 = 9.999e8 and b2 = 0.
"""

from .eos import FluidParams, RiemannData

__all__ = ["PRESET_NAMES", "default_fluid_params", "preset_riemann", "preset"]

PRESET_NAMES = ("shock-tube-1", "shock-tube-2", "shock-tube-3")

_RIEMANN = {
    # (alpha_l, alpha_r, p_l, p_r, u1_l, u1_r, u2_l, u2_r)
    "shock-tube-1": (0.71, 0.70, 265000.0, 265000.0, 1.0, 1.0, 65.0, 50.0),
    "shock-tube-2": (0.70, 0.10, 265000.0, 265000.0, 10.0, 15.0, 65.0, 50.0),
    # pressures and velocities of problem 2 with equal volume fractions;
    # the equal level 0.60 makes the singular middle wave clearly visible
    "shock-tube-3": (0.60, 0.60, 265000.0, 265000.0, 10.0, 15.0, 65.0, 50.0),
}


def default_fluid_params(gravity=0.0):
    return FluidParams(K1=1.0e6, K2=1.0e5,
                       b1=1.0e6 * 1000.0 - 1.0e5, b2=0.0, g=gravity)


def preset_riemann(name, x_jump=0.5):
    if name not in _RIEMANN:
        raise KeyError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    a_l, a_r, p_l, p_r, u1_l, u1_r, u2_l, u2_r = _RIEMANN[name]
    return RiemannData(alpha_l=a_l, alpha_r=a_r, p_l=p_l, p_r=p_r,
                       u1_l=u1_l, u1_r=u1_r, u2_l=u2_l, u2_r=u2_r,
                       x_jump=x_jump)


def preset(name, gravity=0.0, x_jump=0.5):
    """(FluidParams, RiemannData) of a named shock-tube problem."""
    return default_fluid_params(gravity), preset_riemann(name, x_jump)
