"""Command-line harness: shock-tube runs, wave-speed tables, scaling studies.

Subcommands:
  run      simulate a preset with one or both schemes, write snapshot CSVs,
           a run manifest, and (for scheme=both) a cross-scheme report
  arrays   run and emit the per-wave speed table (CSV + aligned text)
  scaling  measure the singular-wave area/width over resolutions and times

Exit codes: 0 success, 2 usage error, 3 solver failure, 4 I/O error.
"""

import argparse
import sys
from dataclasses import dataclass, replace, fields as dc_fields
from pathlib import Path

import numpy as np

from . import diag, io, tcs, wam
from .eos import ClosureDomainError, InvalidStateError, riemann_to_conserved
from .grid import GridSpec, GridState
from .presets import PRESET_NAMES, preset
from .wam import StabilityError

__all__ = ["RunConfig", "initial_state", "run", "reproduce_arrays",
           "scaling_study", "main"]

DEFAULT_CFL = {"wam": 1e-6, "tcs": 0.002}


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce a run."""

    preset: str = "shock-tube-1"
    scheme: str = "tcs"
    n_cells: int = 1000
    x_min: float = 0.0
    x_max: float = 1.0
    boundary: str = "outflow"
    t_final: float = 0.001
    cfl_wam: float = DEFAULT_CFL["wam"]
    cfl_tcs: float = DEFAULT_CFL["tcs"]
    mu: float = 0.1
    nu_ic: float = 0.1
    nu_step: float = None
    gravity: float = 0.0
    snapshots: tuple = ()

    def __post_init__(self):
        if self.preset not in PRESET_NAMES:
            raise ValueError(f"unknown preset {self.preset!r}")
        if self.scheme not in ("wam", "tcs", "both"):
            raise ValueError("scheme must be wam, tcs or both")
        if any(t > self.t_final for t in self.snapshots):
            raise ValueError("snapshot times must not exceed t_final")
        if self.nu_step is None:
            object.__setattr__(self, "nu_step",
                               wam.default_nu_step(self.cfl_wam))

    def schemes(self):
        return ("wam", "tcs") if self.scheme == "both" else (self.scheme,)

    def wam_params(self):
        return wam.WamParams(cfl=self.cfl_wam, t_final=self.t_final,
                             nu_ic=self.nu_ic, nu_step=self.nu_step)

    def tcs_params(self):
        return tcs.SchemeParams(cfl=self.cfl_tcs, t_final=self.t_final,
                                mu=self.mu)

    def to_manifest(self):
        items = {}
        for f in dc_fields(self):
            v = getattr(self, f.name)
            if f.name == "snapshots":
                v = ",".join(repr(float(t)) for t in v)
            items[f.name] = v
        return items

    @classmethod
    def from_manifest(cls, items):
        kwargs = {}
        for f in dc_fields(cls):
            if f.name not in items:
                continue
            raw = items[f.name]
            if f.name == "snapshots":
                kwargs[f.name] = tuple(float(t) for t in raw.split(",") if t)
            elif f.name in ("preset", "scheme", "boundary"):
                kwargs[f.name] = raw
            elif f.name == "n_cells":
                kwargs[f.name] = int(raw)
            else:
                kwargs[f.name] = float(raw)
        return cls(**kwargs)


def initial_state(config):
    """(FluidParams, regularized initial GridState) of a configured run."""
    params, riemann = preset(config.preset, gravity=config.gravity)
    spec = GridSpec(x_min=config.x_min, x_max=config.x_max,
                    n_cells=config.n_cells, boundary=config.boundary)
    left, right = riemann_to_conserved(riemann, params)
    x = spec.centers()
    is_left = x < riemann.x_jump
    state = GridState(
        spec=spec,
        r1=np.where(is_left, left.r1, right.r1),
        r2=np.where(is_left, left.r2, right.r2),
        m1=np.where(is_left, left.m1, right.m1),
        m2=np.where(is_left, left.m2, right.m2),
    )
    return params, wam.regularize_ic(state, config.nu_ic)


def _simulate(config, scheme, params, ic):
    if scheme == "wam":
        return wam.run_wam(ic, params, config.wam_params(),
                           snapshot_times=config.snapshots)
    return tcs.run_scheme(ic, params, config.tcs_params(),
                          snapshot_times=config.snapshots)


def comparison_report(profile_a, profile_b, h):
    """Per-field L1 distance between two profiles, relative to the TV."""
    rows = []
    for f in ("alpha", "p", "u1", "u2"):
        a, b = np.asarray(profile_a[f]), np.asarray(profile_b[f])
        l1 = float(np.sum(np.abs(a - b)) * h)
        tv = max(float(np.sum(np.abs(np.diff(a)))),
                 float(np.sum(np.abs(np.diff(b)))))
        ratio = l1 / tv if tv > 0.0 else 0.0
        rows.append((f, l1, tv, ratio))
    return rows


def run(config, out_dir):
    """Run the configured simulation(s) and write all output files.

    Returns {scheme: list of snapshot GridStates}; the last snapshot of
    each list is the final state.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    params, ic = initial_state(config)
    results = {}
    for scheme in config.schemes():
        snaps = _simulate(config, scheme, params, ic)
        results[scheme] = snaps
        for k, state in enumerate(snaps):
            profile = diag.primitive_profile(state, params)
            io.write_snapshot_csv(out / f"{scheme}_snapshot_{k:03d}.csv",
                                  profile)
    io.write_manifest(out / "manifest.txt", config.to_manifest())
    if config.scheme == "both":
        pa = diag.primitive_profile(results["wam"][-1], params)
        pb = diag.primitive_profile(results["tcs"][-1], params)
        rows = comparison_report(pa, pb, ic.spec.h)
        with open(out / "comparison.csv", "w") as fh:
            fh.write("field,l1_distance,total_variation,ratio\n")
            for f, l1, tv, ratio in rows:
                fh.write(f"{f},{l1!r},{tv!r},{ratio!r}\n")
    return results


def reproduce_arrays(config, out_dir):
    """Wave-speed table per scheme, from snapshots at t_final/2 and t_final.

    Returns {scheme: list of WaveEntry}; also writes one wave-report CSV
    per scheme and prints an aligned table.
    """
    config = replace(config, snapshots=(0.5 * config.t_final,))
    out = Path(out_dir)
    results = run(config, out)
    params, ic = initial_state(config)
    tables = {}
    for scheme, snaps in results.items():
        if len(snaps) < 2:
            raise ValueError("need at least two snapshots for wave tracking")
        mid, final = snaps[0], snaps[-1]
        entries = diag.wave_report(diag.primitive_profile(mid, params),
                                   diag.primitive_profile(final, params),
                                   mid.t, final.t, params)
        if len(entries) != 3:
            print(f"warning: expected 3 waves, found {len(entries)} "
                  f"({scheme}, {config.preset})", file=sys.stderr)
        tables[scheme] = entries
        io.write_wave_report_csv(out / f"waves_{scheme}.csv", entries)
        labels = (["left", "middle", "right"] if len(entries) == 3
                  else [str(e.wave_id) for e in entries])
        print(f"{config.preset} [{scheme}]")
        print(io.format_wave_table(entries, labels))
    return tables


def scaling_study(config, resolutions, times, out_dir):
    """Singular-wave metrics over a grid of resolutions and final times.

    Returns rows (eps, t, area, width, min_alpha); eps is the cell width.
    The reference level is the preset's left volume fraction.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    scheme = "tcs" if config.scheme == "both" else config.scheme
    _, riemann = preset(config.preset)
    alpha0 = riemann.alpha_l
    rows = []
    for n in resolutions:
        cfg = replace(config, scheme=scheme, n_cells=n,
                      t_final=max(times), snapshots=tuple(sorted(times)))
        params, ic = initial_state(cfg)
        snaps = _simulate(cfg, scheme, params, ic)
        for t in sorted(times):
            state = min(snaps, key=lambda s: abs(s.t - t))
            metrics = diag.singular_wave_metrics(
                diag.primitive_profile(state, params), alpha0)
            rows.append((ic.spec.h, state.t, metrics.area, metrics.width,
                         metrics.min_alpha))
    io.write_metrics_csv(out / "metrics.csv", rows)
    print(f"{'eps':>12} {'t':>12} {'area':>14} {'width':>12} {'min_alpha':>12}")
    for eps, t, area, width, min_alpha in rows:
        print(f"{eps:>12.6g} {t:>12.6g} {area:>14.6g} {width:>12.6g} "
              f"{min_alpha:>12.6g}")
    return rows


def _float_list(text):
    return tuple(float(v) for v in text.split(",") if v)


def _int_list(text):
    return tuple(int(v) for v in text.split(",") if v)


def _add_common_flags(p):
    p.add_argument("--preset", default="shock-tube-1", help="shock-tube preset")
    p.add_argument("--scheme", default="tcs", choices=("wam", "tcs", "both"))
    p.add_argument("--cells", type=int, default=1000)
    p.add_argument("--cfl", type=float, default=None,
                   help="ratio dt/dx for the selected scheme(s)")
    p.add_argument("--mu", type=float, default=0.1,
                   help="averaging weight of the transport-correction scheme")
    p.add_argument("--nu-ic", type=float, default=0.1,
                   help="initial-condition regularization weight")
    p.add_argument("--nu-step", type=float, default=None,
                   help="per-step averaging weight of the ODE method")
    p.add_argument("--t-final", type=float, default=0.001)
    p.add_argument("--snapshots", type=_float_list, default=(),
                   help="comma-separated snapshot times")
    p.add_argument("--boundary", default="outflow",
                   choices=("outflow", "periodic"))
    p.add_argument("--gravity", type=float, default=0.0)
    p.add_argument("--x-min", type=float, default=0.0)
    p.add_argument("--x-max", type=float, default=1.0)
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--seed-manifest", default=None,
                   help="read configuration from a manifest file")


def _config_from_args(args):
    if args.seed_manifest:
        config = RunConfig.from_manifest(io.read_manifest(args.seed_manifest))
        return config
    kwargs = dict(preset=args.preset, scheme=args.scheme, n_cells=args.cells,
                  x_min=args.x_min, x_max=args.x_max, boundary=args.boundary,
                  t_final=args.t_final, mu=args.mu, nu_ic=args.nu_ic,
                  nu_step=args.nu_step, gravity=args.gravity,
                  snapshots=args.snapshots)
    if args.cfl is not None:
        if args.scheme in ("wam", "both"):
            kwargs["cfl_wam"] = args.cfl
        if args.scheme in ("tcs", "both"):
            kwargs["cfl_tcs"] = args.cfl
    return RunConfig(**kwargs)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twofluid",
        description="1-D isothermal equal-pressure two-fluid shock-tube solver")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate and write snapshot CSVs")
    _add_common_flags(p_run)

    p_arr = sub.add_parser("arrays", help="emit per-wave speed tables")
    _add_common_flags(p_arr)

    p_sc = sub.add_parser("scaling", help="singular-wave scaling study")
    _add_common_flags(p_sc)
    p_sc.add_argument("--resolutions", type=_int_list, default=(1000,),
                      help="comma-separated cell counts")
    p_sc.add_argument("--times", type=_float_list, default=(0.001,),
                      help="comma-separated measurement times")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "run":
            run(config, args.out)
        elif args.command == "arrays":
            reproduce_arrays(config, args.out)
        else:
            scaling_study(config, args.resolutions, args.times, args.out)
    except (StabilityError, ClosureDomainError, InvalidStateError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
