"""CSV ingestion of measured signals and deterministic CSV output."""
from __future__ import annotations

import csv
import logging
from pathlib import Path

import numpy as np

from .errors import DataError
from .grid import Signal, make_grid

log = logging.getLogger(__name__)

SPACING_RTOL = 1e-6


def _parse_float(cell, line, col):
    try:
        v = float(cell)
    except ValueError:
        raise DataError(f"line {line}, column {col}: not a number: {cell!r}") from None
    if not np.isfinite(v):
        raise DataError(f"line {line}, column {col}: non-finite value {cell!r}")
    return v


def load_signal_csv(path, M_override: int | None = None,
                    spacing: float | None = None) -> Signal:
    """Read a uniformly sampled signal.

    Accepts two columns ``x,y`` or a single column ``y`` (then ``spacing`` is
    required and ``x`` starts at 0).  A header row is optional.  An odd sample
    count loses its last sample, since the grid needs an even ``M``.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from None
    rows = [(i, r) for i, r in enumerate(csv.reader(text.splitlines()), start=1)
            if r and any(c.strip() for c in r)]
    if rows:
        first = rows[0][1]
        try:
            [float(c) for c in first]
        except ValueError:
            names = [c.strip().lower() for c in first]
            if names not in (["x", "y"], ["y"]):
                raise DataError(f"{path}: header must be 'x,y' or 'y', got {first}")
            rows = rows[1:]
    if not rows:
        raise DataError(f"{path}: no data rows")
    ncol = len(rows[0][1])
    if ncol not in (1, 2):
        raise DataError(f"{path}: expected 1 or 2 columns, got {ncol}")
    data = np.empty((len(rows), ncol))
    for k, (line, r) in enumerate(rows):
        if len(r) != ncol:
            raise DataError(f"{path}, line {line}: expected {ncol} columns, got {len(r)}")
        data[k] = [_parse_float(c.strip(), line, j + 1) for j, c in enumerate(r)]

    if ncol == 2:
        x, y = data[:, 0], data[:, 1]
        if x.size < 2:
            raise DataError(f"{path}: need at least two samples")
        dx = np.diff(x)
        step = (x[-1] - x[0]) / (x.size - 1)
        if step <= 0:
            raise DataError(f"{path}: x column must be increasing")
        dev = np.abs(dx - step) / step
        worst = int(np.argmax(dev))
        if dev[worst] > SPACING_RTOL:
            line = rows[worst][0]
            raise DataError(
                f"{path}: non-uniform spacing between lines {line} and {rows[worst + 1][0]} "
                f"(step {dx[worst]:.6g} vs mean {step:.6g})")
        a = x[0]
    else:
        if spacing is None or spacing <= 0:
            raise DataError(f"{path}: single-column input needs a positive --spacing")
        y, step, a = data[:, 0], float(spacing), 0.0

    n = y.size
    if M_override is not None:
        if M_override > n:
            raise DataError(f"{path}: M={M_override} exceeds the {n} samples available")
        n = M_override
    if n % 2:
        log.warning("%s: odd sample count %d, dropping the last sample", path, n)
        n -= 1
    try:
        grid = make_grid(a, a + n * step, n)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None
    return Signal(grid, y[:n])


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def write_signal_csv(path, signal: Signal) -> Path:
    return write_csv(path, ["x", "y"], zip(signal.x, signal.values))
