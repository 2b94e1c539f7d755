"""1-D isothermal equal-pressure two-fluid flow solver.

Two solution procedures for the same system: a weak-asymptotic ODE
method (`wam`) and a transport-correction scheme (`tcs`), sharing the
algebraic closure in `eos`, with shock-tube presets, jump-condition
diagnostics, and a CLI harness.
"""

from .eos import (ClosureDomainError, ClosureFields, ConservedCell,
                  FluidParams, InvalidStateError, RiemannData, closure,
                  closure_scheme, riemann_to_conserved, solve_alpha)
from .grid import GridSpec, GridState
from .presets import PRESET_NAMES, preset
from .tcs import SchemeParams, run_scheme, step_scheme
from .wam import StabilityError, WamParams, regularize_ic, run_wam, step_euler

__version__ = "0.1.0"

__all__ = [
    "ClosureDomainError", "ClosureFields", "ConservedCell", "FluidParams",
    "InvalidStateError", "RiemannData", "closure", "closure_scheme",
    "riemann_to_conserved", "solve_alpha", "GridSpec", "GridState",
    "PRESET_NAMES", "preset", "SchemeParams", "run_scheme", "step_scheme",
    "StabilityError", "WamParams", "regularize_ic", "run_wam", "step_euler",
    "__version__",
]
