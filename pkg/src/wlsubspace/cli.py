"""Command-line front end.

Subcommands:

* ``theory``     -- evaluate the closed-form MSE columns for a config grid.
* ``simulate``   -- run a paired Monte Carlo MSE sweep (mse_vs_snr / mse_vs_n).
* ``prob``       -- run a which-estimator-wins probability sweep.
* ``adjudicate`` -- run the printed-formula adjudication experiments.

Exit codes: 0 on success, 2 for configuration errors, 3 for numerical
failure (eigensolver non-convergence above the tolerated rate).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .harness import (
    ConfigError,
    NumericalFailureError,
    adjudicate_lmag_case1,
    adjudicate_sign_error_formula,
    emit_csv,
    format_adjudication_report,
    load_config,
    load_preset,
    preset_names,
    render_csv,
    run_mse_sweep,
    run_prob_sweep,
    run_theory_table,
)

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wlsubspace",
        description=(
            "Subspace channel estimation experiments: conventional vs widely "
            "linear, closed forms vs seeded Monte Carlo."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("theory", "evaluate closed-form MSE values over a config grid"),
        ("simulate", "run a Monte Carlo MSE sweep and emit CSV"),
        ("prob", "run a which-estimator-wins probability sweep and emit CSV"),
        ("adjudicate", "run the printed-formula adjudication experiments"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", metavar="PATH", help="experiment config file")
        cmd.add_argument(
            "--preset",
            metavar="NAME",
            help=f"bundled config; one of: {', '.join(preset_names())}",
        )
        cmd.add_argument(
            "--seed", type=int, metavar="U64", help="override the config master_seed"
        )
        cmd.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
        cmd.add_argument(
            "--threads",
            type=int,
            default=1,
            metavar="N",
            help="worker threads; affects speed only, never results",
        )
        if name == "adjudicate":
            cmd.add_argument(
                "--draws",
                type=int,
                default=10**6,
                metavar="M",
                help="channel draws per adjudicated configuration",
            )
    return parser


def _resolve_config(args):
    if args.config and args.preset:
        raise ConfigError("give either --config or --preset, not both")
    if args.config:
        cfg = load_config(args.config)
    elif args.preset:
        cfg = load_preset(args.preset)
    else:
        raise ConfigError("a config is required: pass --config PATH or --preset NAME")
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("--seed must be nonnegative")
        cfg = replace(cfg, master_seed=args.seed)
    if args.out is not None:
        cfg = replace(cfg, output_path=args.out)
    return cfg


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "adjudicate":
            if args.config or args.preset:
                raise ConfigError("adjudicate runs fixed experiments and takes no config")
            seed = args.seed if args.seed is not None else 20260810
            sign = adjudicate_sign_error_formula(draws=args.draws, master_seed=seed)
            bounds = adjudicate_lmag_case1(draws=args.draws, master_seed=seed)
            _write_output(format_adjudication_report(sign, bounds), args.out)
            return 0

        cfg = _resolve_config(args)
        if args.command == "theory":
            rows = run_theory_table(cfg)
        elif args.command == "simulate":
            rows = run_mse_sweep(cfg, threads=args.threads)
        else:
            rows = run_prob_sweep(cfg, threads=args.threads)
        _write_output(render_csv(rows), cfg.output_path)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
