import numpy as np
import pytest

from twofluid.eos import FluidParams
from twofluid.grid import GridSpec, GridState


@pytest.fixture(scope="session")
def params():
    """The standard pressure-law constants of the shock-tube problems."""
    return FluidParams(K1=1e6, K2=1e5, b1=9.999e8, b2=0.0, g=0.0)


def bisect_alpha(r1, r2, params, tol=1e-13):
    """Independent root-finder for the closure quadratic on [0, 1].

    Vectorized bisection on F, bracketing with F(0) = K1*r1 >= 0 and
    F(1) = -K2*r2 <= 0.  Test-only oracle.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)

    def F(x):
        return (x * x * (params.b1 - params.b2)
                + x * (-params.K1 * r1 - params.b1 - params.K2 * r2 + params.b2)
                + params.K1 * r1)

    lo = np.zeros_like(r1, dtype=float)
    hi = np.ones_like(r1, dtype=float)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        pos = F(mid) > 0.0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
        if np.max(hi - lo) < tol:
            break
    return 0.5 * (lo + hi)


def uniform_state(n=64, r1=700.0, r2=0.8, u1=1.0, u2=50.0,
                  boundary="periodic"):
    spec = GridSpec(0.0, 1.0, n, boundary=boundary)
    ones = np.ones(n)
    return GridState(spec=spec, r1=r1 * ones, r2=r2 * ones,
                     m1=r1 * u1 * ones, m2=r2 * u2 * ones)
