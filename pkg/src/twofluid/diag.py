"""Post-processing of computed profiles.

Plateau detection on piecewise-constant shock-tube profiles, the five
jump-condition speed estimates per discontinuity, mass-conservation
audits, weak-formulation residuals against smooth bump test functions,
and area/width measurements of the singular middle wave.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .eos import closure

__all__ = [
    "Plateau",
    "WaveSpeeds",
    "WaveEntry",
    "MassAudit",
    "BumpSpec",
    "SingularWaveMetrics",
    "primitive_profile",
    "detect_plateaus",
    "wave_speeds",
    "wave_report",
    "mass_audit",
    "weak_residual",
    "singular_wave_metrics",
]

PROFILE_FIELDS = ("x", "r1", "r2", "m1", "m2", "alpha", "p", "u1", "u2")
_PLATEAU_FIELDS = ("alpha", "p", "u1", "u2")


def primitive_profile(state, params):
    """Profile dict (x, conserved and primitive fields) from a state."""
    from .eos import closure_scheme

    fields = closure_scheme(state.r1, state.r2, params)
    u1, u2 = state.velocities()
    return {
        "x": state.spec.centers(),
        "r1": state.r1.copy(), "r2": state.r2.copy(),
        "m1": state.m1.copy(), "m2": state.m2.copy(),
        "alpha": np.asarray(fields.alpha), "p": np.asarray(fields.p),
        "u1": u1, "u2": u2,
    }


@dataclass(frozen=True)
class Plateau:
    """A maximal run of cells where every primitive field is flat.

    Carries the mean of each field over the run.
    """

    x_start: float
    x_end: float
    n_samples: int
    r1: float
    r2: float
    m1: float
    m2: float
    alpha: float
    p: float
    u1: float
    u2: float


def detect_plateaus(profile, tol=0.002, min_cells=None, trim_frac=0.25):
    """Maximal runs where alpha, p, u1, u2 stay within tol of the run mean.

    Runs shorter than min_cells (default 1% of the cell count, at least
    4) are discarded.  Plateau means are taken over the central part of
    each run (trim_frac of the length cut from each side), so the decayed
    tails of the smeared jumps do not bias them.  Returns plateaus
    ordered left to right.
    """
    x = np.asarray(profile["x"])
    n = x.size
    if n == 0:
        raise ValueError("profile is empty")
    if min_cells is None:
        min_cells = max(4, int(round(0.01 * n)))

    data = np.column_stack([np.asarray(profile[f]) for f in _PLATEAU_FIELDS])
    spans = data.max(axis=0) - data.min(axis=0)

    runs = []
    start = 0
    sums = data[0].copy()
    for i in range(1, n):
        mean = sums / (i - start)
        scale = np.maximum(np.abs(mean), 0.05 * spans)
        if np.all(np.abs(data[i] - mean) <= tol * scale):
            sums += data[i]
        else:
            runs.append((start, i))
            start = i
            sums = data[i].copy()
    runs.append((start, n))

    plateaus = []
    for a, b in runs:
        if b - a < min_cells:
            continue
        t = int(trim_frac * (b - a))
        sl = slice(a + t, b - t)
        means = {f: float(np.mean(np.asarray(profile[f])[sl]))
                 for f in PROFILE_FIELDS if f != "x"}
        plateaus.append(Plateau(x_start=float(x[a]), x_end=float(x[b - 1]),
                                n_samples=b - a, **means))
    return plateaus


@dataclass(frozen=True)
class WaveSpeeds:
    """The five algebraic speed estimates of one discontinuity.

    NaN marks a formula whose jump denominator is too small to apply.
    c1, c2 come from the two continuity equations, c3 from the summed
    momentum equations, c4 and c5 from the formal log-density relations.
    """

    c1: float
    c2: float
    c3: float
    c4: float
    c5: float

    def as_tuple(self):
        return (self.c1, self.c2, self.c3, self.c4, self.c5)


def _ratio(num, left, right, denom_tol):
    scale = max(abs(left), abs(right))
    d = right - left
    if scale == 0.0 or abs(d) <= denom_tol * scale:
        return float("nan")
    return num / d


def wave_speeds(left, right, params, denom_tol=1e-6):
    """Five speed estimates from the plateau means on both sides.

    Formulas with a jump denominator below denom_tol of the field scale
    are marked not-applicable (NaN).
    """
    c1 = _ratio(right.m1 - left.m1, left.r1, right.r1, denom_tol)
    c2 = _ratio(right.m2 - left.m2, left.r2, right.r2, denom_tol)

    def momentum_flux(s):
        return s.r1 * s.u1 ** 2 + s.r2 * s.u2 ** 2 + s.p

    c3 = _ratio(momentum_flux(right) - momentum_flux(left),
                left.m1 + left.m2, right.m1 + right.m2, denom_tol)

    rho_l = closure(left.r1, left.r2, params)
    rho_r = closure(right.r1, right.r2, params)
    log_jump_1 = float(np.log(rho_r.rho1) - np.log(rho_l.rho1))
    log_jump_2 = float(np.log(rho_r.rho2) - np.log(rho_l.rho2))
    c4 = _ratio(params.K1 * log_jump_1, left.u1, right.u1, denom_tol)
    if np.isfinite(c4):
        c4 += 0.5 * (left.u1 + right.u1)
    c5 = _ratio(params.K2 * log_jump_2, left.u2, right.u2, denom_tol)
    if np.isfinite(c5):
        c5 += 0.5 * (left.u2 + right.u2)
    return WaveSpeeds(c1=c1, c2=c2, c3=c3, c4=c4, c5=c5)


def _jump_positions(profile, plateaus):
    """Mid-level crossing position of each inter-plateau discontinuity."""
    x = np.asarray(profile["x"])
    positions = []
    for left, right in zip(plateaus, plateaus[1:]):
        best, best_size = None, -1.0
        for f in _PLATEAU_FIELDS:
            arr = np.asarray(profile[f])
            span = arr.max() - arr.min()
            if span == 0.0:
                continue
            size = abs(getattr(right, f) - getattr(left, f)) / span
            if size > best_size:
                best, best_size = f, size
        if best is None:
            positions.append(0.5 * (left.x_end + right.x_start))
            continue
        arr = np.asarray(profile[best])
        lo = int(np.searchsorted(x, left.x_end))
        hi = int(np.searchsorted(x, right.x_start)) + 1
        level = 0.5 * (getattr(left, best) + getattr(right, best))
        seg = arr[lo:hi] - level
        pos = 0.5 * (left.x_end + right.x_start)
        for i in range(len(seg) - 1):
            if seg[i] == 0.0:
                pos = float(x[lo + i])
                break
            if seg[i] * seg[i + 1] < 0.0:
                frac = seg[i] / (seg[i] - seg[i + 1])
                pos = float(x[lo + i] + frac * (x[lo + i + 1] - x[lo + i]))
                break
        positions.append(pos)
    return positions


@dataclass(frozen=True)
class WaveEntry:
    """One detected discontinuity: tracked position and speed estimates."""

    wave_id: int
    x_t1: float
    x_t2: float
    c_measured: float
    speeds: WaveSpeeds


def wave_report(profile_t1, profile_t2, t1, t2, params, tol=0.002,
                min_cells=None, denom_tol=1e-6):
    """Per-discontinuity wave report from two snapshots.

    Speeds c1..c5 come from the plateau pairs of the later snapshot; the
    measured speed tracks each jump's mid-level crossing between the two
    snapshot times.
    """
    if t2 <= t1:
        raise ValueError("snapshots must be in increasing time order")
    p2 = detect_plateaus(profile_t2, tol=tol, min_cells=min_cells)
    p1 = detect_plateaus(profile_t1, tol=tol, min_cells=min_cells)
    pos2 = _jump_positions(profile_t2, p2)
    pos1 = _jump_positions(profile_t1, p1)
    if len(pos1) != len(pos2):
        warnings.warn(f"plateau structure differs between snapshots "
                      f"({len(pos1)} vs {len(pos2)} jumps); matching by "
                      f"nearest position")
    entries = []
    for k, (left, right) in enumerate(zip(p2, p2[1:])):
        x2 = pos2[k]
        if len(pos1) == len(pos2):
            x1 = pos1[k]
        elif pos1:
            x1 = min(pos1, key=lambda v: abs(v - x2))
        else:
            x1 = float("nan")
        c_meas = (x2 - x1) / (t2 - t1) if np.isfinite(x1) else float("nan")
        entries.append(WaveEntry(wave_id=k, x_t1=x1, x_t2=x2,
                                 c_measured=c_meas,
                                 speeds=wave_speeds(left, right, params,
                                                    denom_tol=denom_tol)))
    return entries


@dataclass(frozen=True)
class MassAudit:
    """Total mass of each fluid per snapshot and the maximal drift."""

    times: np.ndarray
    total1: np.ndarray
    total2: np.ndarray
    max_drift1: float
    max_drift2: float


def mass_audit(history):
    """Sum r_k*h per snapshot and maximal relative drift from the start."""
    times = np.array([s.t for s in history])
    totals = np.array([s.totals() for s in history])
    t1, t2 = totals[:, 0], totals[:, 1]

    def drift(tot):
        ref = abs(tot[0]) if tot[0] != 0.0 else 1.0
        return float(np.max(np.abs(tot - tot[0])) / ref)

    return MassAudit(times=times, total1=t1, total2=t2,
                     max_drift1=drift(t1), max_drift2=drift(t2))


@dataclass(frozen=True)
class BumpSpec:
    """Raised-cosine test function supported on (center-radius, center+radius)."""

    center: float
    radius: float

    def values(self, x):
        s = (x - self.center) / self.radius
        return np.where(np.abs(s) < 1.0, 0.5 * (1.0 + np.cos(np.pi * s)), 0.0)

    def derivative(self, x):
        s = (x - self.center) / self.radius
        return np.where(np.abs(s) < 1.0,
                        -0.5 * np.pi / self.radius * np.sin(np.pi * s), 0.0)


def weak_residual(state_a, state_b, bump, params):
    """Weak-formulation residuals of the four equations between two snapshots.

    Time derivatives by forward difference across the snapshots, fields
    at the earlier one, midpoint quadrature on the cells.  Returns the
    residual magnitude of each equation.
    """
    spec = state_a.spec
    if (bump.center - bump.radius <= spec.x_min
            or bump.center + bump.radius >= spec.x_max):
        raise ValueError("test-function support must lie strictly inside the domain")
    if state_b.t <= state_a.t:
        raise ValueError("snapshots must be in increasing time order")

    from .grid import neighbor

    x = spec.centers()
    h = spec.h
    psi = bump.values(x)
    dpsi = bump.derivative(x)
    dt = state_b.t - state_a.t
    u1, u2 = state_a.velocities()
    fields = closure(state_a.r1, state_a.r2, params)
    out = {}
    for k, (r_a, r_b, m_a, m_b, u, K, rho) in enumerate(
            ((state_a.r1, state_b.r1, state_a.m1, state_b.m1, u1,
              params.K1, fields.rho1),
             (state_a.r2, state_b.r2, state_a.m2, state_b.m2, u2,
              params.K2, fields.rho2)), start=1):
        rdot = (r_b - r_a) / dt
        mdot = (m_b - m_a) / dt
        phi = K * np.log(rho)
        dphi = (neighbor(phi, 1, spec.boundary)
                - neighbor(phi, -1, spec.boundary)) / (2.0 * h)
        out[f"mass{k}"] = abs(h * np.sum(rdot * psi) - h * np.sum(m_a * dpsi))
        out[f"momentum{k}"] = abs(h * np.sum(mdot * psi)
                                  - h * np.sum(r_a * u * u * dpsi)
                                  + h * np.sum(r_a * dphi * psi)
                                  - params.g * h * np.sum(r_a * psi))
    return out


@dataclass(frozen=True)
class SingularWaveMetrics:
    """Area/width/minimum measurements of the singular middle wave."""

    area: float
    width: float
    min_alpha: float


def singular_wave_metrics(profile, alpha0, window_frac=0.05, width_frac=0.1):
    """Measure the dip of alpha below the reference level alpha0.

    The middle-wave window is the contiguous region around the deepest
    point where the deficit alpha0 - alpha exceeds window_frac of its
    maximum; the width is the extent where it exceeds width_frac.
    """
    alpha = np.asarray(profile["alpha"])
    x = np.asarray(profile["x"])
    h = float(x[1] - x[0])
    min_alpha = float(alpha.min())
    deficit = alpha0 - alpha
    max_def = float(deficit.max())
    if max_def <= 0.0:
        return SingularWaveMetrics(area=0.0, width=0.0, min_alpha=min_alpha)

    i0 = int(np.argmax(deficit))
    cut = window_frac * max_def
    lo = i0
    while lo > 0 and deficit[lo - 1] > cut:
        lo -= 1
    hi = i0
    while hi < deficit.size - 1 and deficit[hi + 1] > cut:
        hi += 1
    window = deficit[lo:hi + 1]
    area = float(np.sum(np.maximum(window, 0.0)) * h)
    width = float(np.count_nonzero(window > width_frac * max_def) * h)
    return SingularWaveMetrics(area=area, width=width, min_alpha=min_alpha)
