"""Command line interface: ``superradiance {run,verify,two-spin}``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure
(including failed verification), 4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .config import RunConfig, load_config
from .errors import ConfigError, NumericalError, SuperradianceError
from .output import fmt

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

_OVERRIDES = (
    ("--gamma-min", float),
    ("--gamma-max", float),
    ("--gamma-points", int),
    ("--seed", int),
    ("--delta-eps", float),
    ("--n-particles", int),
    ("--n-orbitals", int),
    ("--out", str),
    ("--emit", str),
)


def _add_config_args(p):
    p.add_argument("config", nargs="?", help="key = value configuration file")
    for flag, typ in _OVERRIDES:
        p.add_argument(flag, type=typ, default=None)


def _load(args) -> RunConfig:
    config = load_config(args.config) if args.config else RunConfig()
    overrides = {flag[2:]: getattr(args, flag[2:].replace("-", "_")) for flag, _ in _OVERRIDES}
    return config.with_overrides(**overrides)


def _cmd_run(args) -> int:
    from .pipeline import run

    config = _load(args)
    result = run(config)
    for f in result.files:
        print(f)
    if result.trajectories.ambiguous:
        print(f"note: {len(result.trajectories.ambiguous)} ambiguous tracking interval(s)",
              file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .pipeline import verify

    config = _load(args)
    checks = verify(config, inject_fault=args.inject_fault)
    for c in checks:
        print(c.line())
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return EXIT_NUMERIC if failed else EXIT_OK


def _cmd_two_spin(args) -> int:
    from .pipeline import two_spin_table

    gammas = np.linspace(args.gamma_min, args.gamma_max, args.gamma_points)
    table = two_spin_table(args.alpha, args.epsilon, gammas)
    lines = ["gamma,E_plus,Gamma_plus,E_minus,Gamma_minus,numeric_deviation"]
    for r in table["rows"]:
        ep, em = r["E_plus"], r["E_minus"]
        lines.append(",".join([
            fmt(r["gamma"]), fmt(ep.real), fmt(-2 * ep.imag), fmt(em.real), fmt(-2 * em.imag),
            fmt(r["deviation"]),
        ]))
    text = "\n".join(lines) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "two_spin.csv").write_text(text)
        if args.figure:
            from .plotting import plot_two_spin

            plot_two_spin(gammas, [r["E_plus"] for r in table["rows"]],
                          [r["E_minus"] for r in table["rows"]], out / "two_spin.svg")
    else:
        sys.stdout.write(text)
    worst = max(r["deviation"] for r in table["rows"])
    print(f"gamma_c = {table['gamma_c']:g}; max |closed form - numeric| = {worst:.3e}",
          file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superradiance", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="sweep gamma and write CSV/JSON/SVG results")
    _add_config_args(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("verify", help="run the invariant suite and report residuals")
    _add_config_args(p)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("two-spin", help="closed-form two-spin energies vs numerics")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--gamma-min", type=float, default=0.0)
    p.add_argument("--gamma-max", type=float, default=6.0)
    p.add_argument("--gamma-points", type=int, default=61)
    p.add_argument("--out", default=None)
    p.add_argument("--figure", action="store_true")
    p.set_defaults(func=_cmd_two_spin)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except SuperradianceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
