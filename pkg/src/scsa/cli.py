"""Command-line front end: ``scsa {spectrum,reconstruct,sweep,validate,demo}``.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 invariant failure.
"""
from __future__ import annotations

import argparse
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
import json
import logging
from pathlib import Path
import sys

import numpy as np

from .eigensolver import METHODS, count_below, decompose
from .errors import ConfigError, DataError, InvariantError
from .grid import WindowK, make_grid, sech2_signal, synthetic_beat, window_from_lambda
from .io import load_signal_csv, write_csv
from .reconstruction import ReconstructionParams, reconstruct
from .validation import check_admissible, convergence_order, hard_invariants, relative_error

log = logging.getLogger("scsa")

BUILTINS = {
    "sech2": lambda M: sech2_signal(make_grid(0.0, 10.0, M), 5.0),
    "beat": lambda M: synthetic_beat(make_grid(0.0, 1.0, M), 120.0, 80.0, 0.4),
}
DEFAULT_M = 1024

PRESETS = {
    "sech2": dict(input="sech2", h_list=[0.1, 0.05, 0.025], lambda_list=[0.0, -0.5],
                  gamma_list=[0.5, 1.0, 2.0], margin=0.1),
    "beat": dict(input="beat", h_list=[0.1, 0.05, 0.025], lambda_list=[0.0, -65.0, -70.0, -100.0],
                 gamma_list=[0.5, 1.0, 2.0]),
}


@dataclass
class RunConfig:
    input: str = "sech2"
    h_list: list = field(default_factory=lambda: [0.1])
    lambda_list: list = field(default_factory=lambda: [0.0])
    gamma_list: list = field(default_factory=lambda: [0.5])
    M: int | None = None
    window: str = "auto"
    output_dir: str = "out"
    emit_svg: bool = False
    margin: float | None = None
    spacing: float | None = None
    workers: int = 1
    method: str = "lapack"

    def validate(self):
        for name in ("h_list", "lambda_list", "gamma_list"):
            vals = getattr(self, name)
            if not isinstance(vals, list) or not vals:
                raise ConfigError(f"{name} must be a non-empty list")
            try:
                setattr(self, name, [float(v) for v in vals])
            except (TypeError, ValueError):
                raise ConfigError(f"{name} must contain numbers") from None
        if any(h <= 0 for h in self.h_list):
            raise ConfigError("h values must be positive")
        if any(g < 0 for g in self.gamma_list):
            raise ConfigError("gamma values must be >= 0")
        if self.M is not None and (int(self.M) != self.M or self.M < 8 or self.M % 2):
            raise ConfigError(f"M must be an even integer >= 8, got {self.M}")
        if self.margin is not None and self.margin <= 0:
            raise ConfigError("margin must be positive")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}")
        if self.window != "auto":
            parse_window(self.window)
        return self

    @property
    def is_builtin(self):
        return self.input in BUILTINS


def parse_window(spec: str, M: int | None = None) -> WindowK | None:
    """``"auto"`` gives None; ``"lo:hi"`` a WindowK (format check only if M is None)."""
    if spec == "auto":
        return None
    try:
        lo, hi = (int(p) for p in spec.split(":"))
    except ValueError:
        raise ConfigError(f"window must be 'auto' or 'lo:hi', got {spec!r}") from None
    if M is None:
        return None
    try:
        return WindowK.from_range(lo, hi, M)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path) -> RunConfig:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return RunConfig(**raw)


def load_input(cfg: RunConfig):
    """Return ``(signal, has_truth)``."""
    if cfg.is_builtin:
        return BUILTINS[cfg.input](cfg.M or DEFAULT_M), True
    return load_signal_csv(cfg.input, cfg.M, cfg.spacing), False


def _tag(h, lam, gamma):
    return f"h{h:g}_lam{lam:g}_g{gamma:g}"


def _decompositions(signal, cfg):
    def job(h):
        return decompose(signal, h, method=cfg.method)

    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return dict(zip(cfg.h_list, pool.map(job, cfg.h_list)))


def _window_for(signal, lam, cfg):
    explicit = parse_window(cfg.window, signal.grid.M)
    if explicit is not None:
        return explicit
    try:
        return window_from_lambda(signal, lam, cfg.margin)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _diagnose(signal, lam, window):
    rep = check_admissible(signal, lam, window)
    for msg in rep.failures():
        if msg.startswith("y <="):
            log.warning("lambda=%g: %s", lam, msg)
        else:
            log.info("lambda=%g: %s", lam, msg)
    return rep


def cmd_spectrum(cfg: RunConfig) -> int:
    signal, _ = load_input(cfg)
    out = Path(cfg.output_dir)
    decomps = _decompositions(signal, cfg)
    spec_rows, count_rows = [], []
    for h, dec in decomps.items():
        neg = dec.eigenvalues[: dec.N_h]
        spec_rows += [(h, n, ev) for n, ev in enumerate(neg, start=1)]
        count_rows += [(h, lam, dec.N_h, count_below(dec, lam)) for lam in cfg.lambda_list]
    write_csv(out / "spectrum.csv", ["h", "n", "lambda_hn"], spec_rows)
    write_csv(out / "counts.csv", ["h", "lambda", "N_h", "N_h_lambda"], count_rows)
    if cfg.emit_svg:
        from . import plotting
        fig = plotting.spectrum_plot({h: d.eigenvalues[: d.N_h] for h, d in decomps.items()})
        plotting.save(fig, out / "spectrum.svg")
    return 0


def _reconstruct_all(signal, has_truth, cfg, decomps):
    """Write per-triple CSVs; return summary rows and sup errors keyed by triple."""
    out = Path(cfg.output_dir)
    x = signal.x
    summary, sup = [], {}
    windows = {lam: _window_for(signal, lam, cfg) for lam in cfg.lambda_list}
    for lam, win in windows.items():
        _diagnose(signal, lam, win)
    for h, dec in decomps.items():
        for lam in cfg.lambda_list:
            win = windows[lam]
            mask = win.mask()
            recons, errs = {}, {}
            for g in cfg.gamma_list:
                rec = reconstruct(dec, ReconstructionParams(h, g, lam, win))
                if has_truth:
                    y = signal.values
                    floor = 1e-12 * float(np.abs(y).max())
                    rel_all = np.abs(rec.values - y) / np.maximum(np.abs(y), floor)
                    rep = relative_error(rec, signal, win)
                    rows = zip(x, y, rec.values, mask, rel_all)
                    header = ["x", "y_true", "y_rec", "in_window", "pointwise_rel_err"]
                    summary.append((h, lam, g, rec.terms_used, rep.sup_rel, rep.rms_rel))
                    sup[(h, lam, g)] = rep.sup_rel
                    errs[f"gamma={g:g}"] = rep.pointwise_rel
                else:
                    rows = zip(x, rec.values, mask)
                    header = ["x", "y_rec", "in_window"]
                    summary.append((h, lam, g, rec.terms_used, None, None))
                recons[f"gamma={g:g}"] = rec.values
                write_csv(out / f"recon_{_tag(h, lam, g)}.csv", header, rows)
            if cfg.emit_svg:
                from . import plotting
                fig = plotting.reconstruction_pair(
                    x, signal.values if has_truth else None, recons, errs or None, win,
                    title=f"h={h:g}, lambda={lam:g}")
                plotting.save(fig, out / f"recon_h{h:g}_lam{lam:g}.svg")
    write_csv(out / "summary.csv",
              ["h", "lambda", "gamma", "N_h_lambda", "sup_rel", "rms_rel"], summary)
    return summary, sup


def cmd_reconstruct(cfg: RunConfig) -> int:
    signal, has_truth = load_input(cfg)
    _reconstruct_all(signal, has_truth, cfg, _decompositions(signal, cfg))
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    if len(set(cfg.h_list)) < 2:
        raise ConfigError("need ≥2 h values for order fit")
    signal, has_truth = load_input(cfg)
    out = Path(cfg.output_dir)
    decomps = _decompositions(signal, cfg)

    inv_rows, failed = [], []
    for h, dec in decomps.items():
        checks = hard_invariants(dec)
        ok = all(c[2] for c in checks.values())
        inv_rows.append((h, checks["gram_deviation"][0], checks["relative_residual"][0], ok))
        if not ok:
            failed.append(h)
    write_csv(out / "invariants.csv", ["h", "gram_deviation", "relative_residual", "ok"],
              inv_rows)

    _, sup = _reconstruct_all(signal, has_truth, cfg, decomps)
    hs = sorted(set(cfg.h_list), reverse=True)
    fit_rows, fits = [], {}
    if has_truth and len(hs) >= 3:
        for lam in cfg.lambda_list:
            for g in cfg.gamma_list:
                errs = [sup[(h, lam, g)] for h in hs]
                if min(errs) <= 0:
                    continue
                fit = convergence_order(hs, errs)
                fits[f"lambda={lam:g}, gamma={g:g}"] = fit
                fit_rows.append((lam, g, len(hs), fit.order, fit.r_squared))
    elif has_truth:
        log.info("order fit needs at least 3 h values; convergence.csv left empty")
    write_csv(out / "convergence.csv", ["lambda", "gamma", "n_h", "order", "r_squared"],
              fit_rows)
    if cfg.emit_svg and fits:
        from . import plotting
        plotting.save(plotting.convergence_plot(fits), out / "convergence.svg")
    if failed:
        raise InvariantError(f"hard invariants failed for h in {failed}")
    return 0


def cmd_validate(cfg: RunConfig) -> int:
    from .suite import invariant_suite

    results = invariant_suite(cfg.M or DEFAULT_M, method=cfg.method)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    if not all(ok for _, ok, _ in results):
        raise InvariantError("invariant suite failed")
    return 0


def cmd_demo(cfg: RunConfig) -> int:
    cmd_spectrum(cfg)
    return cmd_sweep(cfg)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "reconstruct": cmd_reconstruct,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
    "demo": cmd_demo,
}


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--input", help="CSV file with columns x,y (or y with --spacing)")
    src.add_argument("--signal", choices=sorted(BUILTINS), help="built-in signal")
    common.add_argument("--h", type=_float_list, dest="h_list", metavar="LIST",
                        help="comma-separated semi-classical parameters")
    common.add_argument("--lambda", type=_float_list, dest="lambda_list", metavar="LIST",
                        help="comma-separated spectral cut-offs")
    common.add_argument("--gamma", type=_float_list, dest="gamma_list", metavar="LIST",
                        help="comma-separated Riesz exponents")
    common.add_argument("--M", type=int, help="grid size (even); resamples built-ins")
    common.add_argument("--window", help="'auto' or half-open 0-based index range lo:hi")
    common.add_argument("--margin", type=float, help="absolute margin for the auto window")
    common.add_argument("--spacing", type=float, help="sample spacing for 1-column CSV")
    common.add_argument("--out", dest="output_dir", help="output directory")
    common.add_argument("--svg", dest="emit_svg", action="store_true", default=None,
                        help="also write SVG figures")
    common.add_argument("--workers", type=int, help="threads for the per-h eigensolves")
    common.add_argument("--method", choices=METHODS, help="eigensolver backend")
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="scsa", description="Semi-classical spectral analysis of 1-D signals.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="negative eigenvalues and counts")
    sub.add_parser("reconstruct", parents=[common], help="reconstruct per (h, lambda, gamma)")
    sub.add_parser("sweep", parents=[common], help="sweep with convergence-order fits")
    sub.add_parser("validate", parents=[common], help="run the numerical invariant suite")
    sub.add_parser("demo", parents=[common], help="sech2 / beat presets with figures")
    return parser


def config_from_args(args) -> RunConfig:
    if args.config:
        cfg = load_config(args.config)
    elif args.command == "demo":
        preset = PRESETS[args.signal or "sech2"]
        cfg = RunConfig(**preset, output_dir=f"demo_{preset['input']}", emit_svg=True)
    else:
        cfg = RunConfig()
    overrides = {k: getattr(args, k) for k in
                 ("h_list", "lambda_list", "gamma_list", "M", "window", "margin",
                  "spacing", "output_dir", "emit_svg", "workers", "method")}
    for k, v in overrides.items():
        if v is not None:
            setattr(cfg, k, v)
    if args.input:
        cfg.input = args.input
    elif args.signal:
        cfg.input = args.signal
    try:
        return cfg.validate()
    except TypeError as exc:
        raise ConfigError(f"bad config value: {exc}") from None


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    logging.captureWarnings(True)
    try:
        cfg = config_from_args(args)
        log.info("config: %s", json.dumps(asdict(cfg)))
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except InvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
