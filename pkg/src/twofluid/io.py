"""Text file formats: snapshot CSV, wave-report CSV, metrics CSV, manifest.

All numbers are written as shortest round-trip decimal text (full double
precision), so identical runs produce bitwise-identical files.
"""

import csv

import numpy as np

from .diag import PROFILE_FIELDS

__all__ = [
    "write_snapshot_csv",
    "read_snapshot_csv",
    "write_wave_report_csv",
    "write_metrics_csv",
    "write_manifest",
    "read_manifest",
    "format_wave_table",
]

WAVE_REPORT_COLUMNS = ("wave_id", "x_t1", "x_t2", "c_measured",
                       "c1", "c2", "c3", "c4", "c5")
METRICS_COLUMNS = ("eps", "t", "area", "width", "min_alpha")


def _fmt(v):
    return repr(float(v))


def write_snapshot_csv(path, profile):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(PROFILE_FIELDS)
        columns = [np.asarray(profile[f]) for f in PROFILE_FIELDS]
        for row in zip(*columns):
            writer.writerow([_fmt(v) for v in row])


def read_snapshot_csv(path):
    """Read a snapshot CSV, rejecting any schema drift."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != PROFILE_FIELDS:
            raise ValueError(f"unexpected snapshot schema {header!r}; "
                             f"expected {PROFILE_FIELDS!r}")
        rows = [[float(v) for v in row] for row in reader if row]
    data = np.array(rows)
    return {f: data[:, i] for i, f in enumerate(PROFILE_FIELDS)}


def write_wave_report_csv(path, entries):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(WAVE_REPORT_COLUMNS)
        for e in entries:
            writer.writerow([e.wave_id]
                            + [_fmt(v) for v in (e.x_t1, e.x_t2, e.c_measured)]
                            + [_fmt(c) for c in e.speeds.as_tuple()])


def write_metrics_csv(path, rows):
    """Rows of (eps, t, area, width, min_alpha)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(METRICS_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def write_manifest(path, items):
    with open(path, "w") as fh:
        for key, value in items.items():
            fh.write(f"{key}={value}\n")


def read_manifest(path):
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            out[key] = value
    return out


def format_wave_table(entries, labels=None):
    """Aligned-text table of the five speed estimates per wave."""
    lines = [f"{'wave':>8} {'c1':>12} {'c2':>12} {'c3':>12} {'c4':>12} {'c5':>12}"]
    for i, e in enumerate(entries):
        name = labels[i] if labels else str(e.wave_id)
        cells = " ".join(f"{c:>12.2f}" if np.isfinite(c) else f"{'n/a':>12}"
                         for c in e.speeds.as_tuple())
        lines.append(f"{name:>8} {cells}")
    return "\n".join(lines)
