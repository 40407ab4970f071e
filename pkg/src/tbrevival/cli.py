"""Command-line front end.

Subcommands: evolve, trace, predict, sweep, budget, reproduce.  Config
files use the grammar documented in :mod:`tbrevival.harness`.  ``--threads``
and ``--seed`` are accepted for interface stability: evaluation is
vectorised in-process and nothing is randomised, so both are no-ops and
outputs are deterministic regardless.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .chain import inner_product, reflect
from .harness import (
    ConfigError,
    estimate_budget,
    parse_config,
    parse_sweep,
    reproduce,
    run_scenario,
    run_sweep,
    write_profile_csv,
)
from .propagator import evolve_exact, revival_clock
from .revival import RevivalFraction, predict_state


def _add_common(parser: argparse.ArgumentParser, config_required: bool = True) -> None:
    parser.add_argument("--config", required=config_required, help="scenario config file")
    parser.add_argument("--out", default=".", help="output directory (default: cwd)")
    parser.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; evaluation is vectorised")
    parser.add_argument("--seed", type=int, default=None,
                        help="accepted for compatibility; nothing is randomised")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tbrevival", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="evolve the initial state to one instant, emit profile")
    _add_common(p)
    p.add_argument("--time", type=float, required=True, help="instant in units of t_rev")

    p = sub.add_parser("trace", help="fidelity trace over the configured time grid")
    _add_common(p)

    p = sub.add_parser("predict", help="analytic sub-packet prediction at p/q of t_rev")
    _add_common(p)
    p.add_argument("--fraction", required=True, help="revival fraction, e.g. 1/3")

    p = sub.add_parser("sweep", help="run the [sweep] section of the config")
    _add_common(p)

    p = sub.add_parser("budget", help="revival-period vs decoherence budget arithmetic")
    p.add_argument("--sites", type=int, required=True)
    p.add_argument("--hopping-mev", type=float, required=True)
    p.add_argument("--decoherence-ms", type=float, default=None)
    p.add_argument("--revivals", type=float, default=None)

    p = sub.add_parser("reproduce", help="run a stored figure preset end to end")
    p.add_argument("figure", help="figure id, e.g. fig2a ... fig7")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)

    return parser


def _load_scenario(path: str):
    return parse_config(Path(path).read_text())


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "evolve":
            scenario = _load_scenario(args.config)
            chain = scenario.chain()
            state = scenario.initial_state()
            t = args.time * revival_clock(chain).revival_time
            evolved = evolve_exact(chain, state, t)
            path = write_profile_csv(
                Path(args.out) / f"{scenario.prefix}_evolved_t{args.time:g}.csv", evolved
            )
            f = inner_product(reflect(chain, state), evolved)
            a = inner_product(state, evolved)
            print(f"wrote {path}")
            print(f"t/t_rev = {args.time:g}  |F|^2 = {abs(f)**2:.6f}  |A|^2 = {abs(a)**2:.6f}  "
                  f"norm = {np.linalg.norm(evolved):.12f}")

        elif args.command == "trace":
            scenario = _load_scenario(args.config)
            for path in run_scenario(scenario, args.out):
                print(f"wrote {path}")

        elif args.command == "predict":
            scenario = _load_scenario(args.config)
            frac = Fraction(args.fraction)
            fraction = RevivalFraction(frac.numerator, frac.denominator)
            prediction = predict_state(scenario.chain(), scenario.gaussian_spec(), fraction)
            print(f"sub-packets at t = {fraction} of t_rev "
                  f"(center {scenario.gaussian_spec().center:g}):")
            print("  center      weight_re      weight_im      probability")
            for center, weight in prediction.merged():
                print(f"  {center:9.3f}  {weight.real:+.10f}  {weight.imag:+.10f}  "
                      f"{abs(weight)**2:.10f}")
            path = write_profile_csv(
                Path(args.out)
                / f"{scenario.prefix}_predicted_p{fraction.numerator}q{fraction.denominator}.csv",
                prediction.state,
            )
            print(f"wrote {path}")

        elif args.command == "sweep":
            spec = parse_sweep(Path(args.config).read_text())
            result = run_sweep(spec, args.out)
            for value, metric in result.rows:
                print(f"{result.variable} = {value:g}  {result.metric} = {metric:.6f}")
            print(f"non-decreasing: {result.non_decreasing}")
            print(f"wrote {result.path}")

        elif args.command == "budget":
            report = estimate_budget(
                args.sites, args.hopping_mev, args.decoherence_ms, args.revivals
            )
            for line in report.lines():
                print(line)

        elif args.command == "reproduce":
            for path in reproduce(args.figure, args.out):
                print(f"wrote {path}")

    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
