"""Uniform 1-D grid, cell-centered conserved state, and stencil shifts."""

from dataclasses import dataclass

import numpy as np

__all__ = ["GridSpec", "GridState", "neighbor", "three_point_average"]

BOUNDARIES = ("outflow", "periodic")


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [x_min, x_max] with n_cells cells.

    The shift parameter of the weak-asymptotic method is identified with
    the cell width (eps = h).
    """

    x_min: float
    x_max: float
    n_cells: int
    boundary: str = "outflow"

    def __post_init__(self):
        if self.n_cells < 8:
            raise ValueError("need at least 8 cells")
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}")

    @property
    def h(self):
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def eps(self):
        return self.h

    def centers(self):
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.h


@dataclass
class GridState:
    """Cell-centered conserved fields at one instant."""

    spec: GridSpec
    r1: np.ndarray
    r2: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        n = self.spec.n_cells
        for name in ("r1", "r2", "m1", "m2"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (n,):
                raise ValueError(f"{name} must have shape ({n},)")
            setattr(self, name, arr)

    def copy(self):
        return GridState(spec=self.spec, r1=self.r1.copy(), r2=self.r2.copy(),
                         m1=self.m1.copy(), m2=self.m2.copy(), t=self.t)

    def velocities(self):
        """(u1, u2) with the vacuum convention u = 0 where r = 0."""
        with np.errstate(divide="ignore", invalid="ignore"):
            u1 = np.where(self.r1 > 0.0, self.m1 / np.where(self.r1 > 0.0, self.r1, 1.0), 0.0)
            u2 = np.where(self.r2 > 0.0, self.m2 / np.where(self.r2 > 0.0, self.r2, 1.0), 0.0)
        return u1, u2

    def totals(self):
        """(sum r1*h, sum r2*h): total mass of each fluid."""
        h = self.spec.h
        return float(np.sum(self.r1) * h), float(np.sum(self.r2) * h)


def neighbor(a, offset, boundary):
    """Array b with b[i] = a[i + offset].

    Periodic boundaries wrap; outflow boundaries repeat the edge value
    (ghost-cell copy).
    """
    if offset == 0:
        return a
    if boundary == "periodic":
        return np.roll(a, -offset)
    if boundary == "outflow":
        b = np.empty_like(a)
        if offset > 0:
            b[:-offset] = a[offset:]
            b[-offset:] = a[-1]
        else:
            b[-offset:] = a[:offset]
            b[:-offset] = a[0]
        return b
    raise ValueError(f"unknown boundary {boundary!r}")


def three_point_average(a, nu, boundary):
    """nu*a[i-1] + (1 - 2*nu)*a[i] + nu*a[i+1]."""
    if nu == 0.0:
        return a.copy()
    return (nu * neighbor(a, -1, boundary)
            + (1.0 - 2.0 * nu) * a
            + nu * neighbor(a, 1, boundary))
