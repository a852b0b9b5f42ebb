"""Command-line front end: bound reports, figure data, certification, oracle.

Exit codes: 0 on success, 1 when a verification check fails, 2 on usage or
parameter-domain errors.
"""

import argparse
import json
import os
import sys

from . import __version__
from .bounds import (
    OracleDivergedError,
    bounds_additive,
    bounds_amplifier,
    bounds_attenuator,
    coherent_info_thermal,
)
from .channels import (
    CPViolationError,
    ParamDomainError,
    complementary,
    extended_attenuator,
    flagged_additive_noise,
    identity_channel,
)
from .figures import FIGURE_IDS, build_figure, write_csv
from .verify import DEFAULT_SEED, run_all_checks, suite_entries

_PLOT_SCRIPT = """\
#!/usr/bin/env python3
# Generic plotter for a gausscap figure CSV (first column is the x axis).
import sys
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else {csv_name!r}
rows = [line.strip() for line in open(path) if not line.startswith("#")]
header = rows[0].split(",")
data = {{name: [] for name in header}}
xs = []
for line in rows[1:]:
    cells = line.split(",")
    xs.append(float(cells[0]))
    for name, cell in zip(header[1:], cells[1:]):
        data[name].append(float(cell) if cell else None)
for name in header[1:]:
    pairs = [(x, v) for x, v in zip(xs, data[name]) if v is not None]
    if pairs:
        plt.plot(*zip(*pairs), label=name)
plt.xlabel(header[0])
plt.legend()
plt.tight_layout()
plt.show()
"""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gausscap",
        description="Capacity bounds for phase-insensitive bosonic Gaussian channels",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", help="bound report for one channel")
    fam = bound.add_mutually_exclusive_group(required=True)
    fam.add_argument("--additive", action="store_true")
    fam.add_argument("--attenuator", action="store_true")
    fam.add_argument("--amplifier", action="store_true")
    bound.add_argument("--beta", type=float, help="additive inverse temperature")
    bound.add_argument("--eta", type=float, help="attenuator transmissivity")
    bound.add_argument("--g", type=float, help="amplifier gain")
    bound.add_argument("--n", type=float, help="environment photon number")
    bound.add_argument("--format", choices=("json", "csv"), default="json")

    figure = sub.add_parser("figure", help="write one figure's data series as CSV")
    figure.add_argument("id", choices=FIGURE_IDS)
    figure.add_argument("--out", help="output path (default <id>.csv in the output dir)")
    figure.add_argument("--plot-script", action="store_true",
                        help="also write a generic matplotlib script next to the CSV")
    figure.add_argument("--n", type=float, help="environment photon number (fig2/fig3)")
    figure.add_argument("--x-min", type=float, help="fig1 inverse-beta minimum")
    figure.add_argument("--x-max", type=float, help="fig1 inverse-beta maximum")
    figure.add_argument("--x-step", type=float, help="fig1 inverse-beta step")
    figure.add_argument("--g-offset-min", type=float, help="fig2 minimum gain - 1")
    figure.add_argument("--g-max", type=float, help="fig2 maximum gain")
    figure.add_argument("--points", type=int, help="fig2 number of grid points")
    figure.add_argument("--eta-min", type=float, help="fig3 transmissivity minimum")
    figure.add_argument("--eta-max", type=float, help="fig3 transmissivity maximum")
    figure.add_argument("--eta-step", type=float, help="fig3 transmissivity step")
    figure.add_argument("--grid", type=int,
                        help="fig3-inset decomposition search resolution")

    verify = sub.add_parser("verify", help="run the structural certification suite")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--gamma", type=float, default=1.0,
                        help="rescaling factor for the flag condition (1 passes)")
    verify.add_argument("--json", action="store_true", help="emit JSON after the table")
    verify.add_argument("--list", action="store_true", help="list checks and exit")

    oracle = sub.add_parser(
        "oracle", help="numerical coherent information on a thermal probe"
    )
    ofam = oracle.add_mutually_exclusive_group(required=True)
    ofam.add_argument("--flagged", action="store_true")
    ofam.add_argument("--extended-attenuator", action="store_true")
    ofam.add_argument("--identity", action="store_true")
    oracle.add_argument("--beta", type=float, help="flagged inverse temperature")
    oracle.add_argument("--eta", type=float, help="extended-attenuator transmissivity")
    oracle.add_argument("--n", type=float, help="environment photon number")
    oracle.add_argument("--m", type=float, default=1e6, help="probe photon number")
    oracle.add_argument("--strategy", choices=("purified", "complement"),
                        help="default: complement where available, else purified")
    return parser


def _require(args, names):
    for name in names:
        if getattr(args, name) is None:
            raise ParamDomainError(f"missing --{name} for this channel family")


def _cmd_bound(args) -> int:
    if args.additive:
        _require(args, ["beta"])
        report = bounds_additive(args.beta)
    elif args.attenuator:
        _require(args, ["eta", "n"])
        report = bounds_attenuator(args.eta, args.n)
    else:
        _require(args, ["g", "n"])
        report = bounds_amplifier(args.g, args.n)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        for key, value in report.params.items():
            print(f"# {key}: {value:.12g}")
        print("bound,raw,clamped,applicable,note")
        for name, entry in report.entries.items():
            print(
                f"{name},{entry.raw:.12g},{entry.clamped:.12g},"
                f'{int(entry.applicable)},"{entry.note}"'
            )
    return 0


def _figure_overrides(args) -> dict:
    if args.id == "fig1":
        return {"x_min": args.x_min, "x_max": args.x_max, "step": args.x_step}
    if args.id == "fig2":
        return {
            "N": args.n,
            "g_offset_min": args.g_offset_min,
            "g_max": args.g_max,
            "points": args.points,
        }
    overrides = {
        "N": args.n,
        "eta_min": args.eta_min,
        "eta_max": args.eta_max,
        "step": args.eta_step,
    }
    if args.id == "fig3-inset":
        overrides["grid"] = args.grid
    return overrides


def _cmd_figure(args) -> int:
    series = build_figure(args.id, **_figure_overrides(args))
    out_dir = os.environ.get("GAUSSCAP_OUTPUT_DIR", ".")
    path = args.out or os.path.join(out_dir, f"{args.id}.csv")
    write_csv(series, path)
    print(path)
    if args.plot_script:
        script = os.path.splitext(path)[0] + "_plot.py"
        with open(script, "w", encoding="utf-8") as fh:
            fh.write(_PLOT_SCRIPT.format(csv_name=os.path.basename(path)))
        print(script)
    return 0


def _cmd_verify(args) -> int:
    if args.list:
        for name, _ in suite_entries(args.seed, args.gamma):
            print(name)
        return 0
    outcomes = run_all_checks(args.seed, args.gamma)
    print(f"# seed: {args.seed}")
    for outcome in outcomes:
        print(outcome.summary_line())
    failed = [o for o in outcomes if o.applicable and not o.passed]
    print(f"# {len(outcomes) - len(failed)}/{len(outcomes)} checks passed")
    if args.json:
        print(
            json.dumps(
                [
                    {
                        "name": o.name,
                        "passed": o.passed,
                        "applicable": o.applicable,
                        "max_residual": o.max_residual,
                        "tolerance": o.tolerance,
                        "samples": o.samples,
                        "details": o.details,
                    }
                    for o in outcomes
                ],
                indent=2,
            )
        )
    return 1 if failed else 0


def _cmd_oracle(args) -> int:
    if args.flagged:
        _require(args, ["beta"])
        channel = flagged_additive_noise(args.beta)
        label = f"flagged additive noise (beta={args.beta:g})"
    elif args.extended_attenuator:
        _require(args, ["eta", "n"])
        channel = extended_attenuator(args.eta, args.n)
        label = f"extended attenuator (eta={args.eta:g}, N={args.n:g})"
    else:
        channel = identity_channel(1)
        label = "identity"
    strategy = args.strategy
    if strategy is None:
        strategy = "complement" if channel.family == "extended_attenuator" else "purified"
    comp = complementary(channel) if strategy == "complement" else None
    estimate = coherent_info_thermal(channel, M=args.m, complement=comp)
    print(f"channel: {label}")
    print(f"strategy: {strategy}")
    print(f"value_bits: {estimate.value:.12g}")
    print(f"probe_photons: {estimate.m_used:.12g}")
    print(f"convergence_gap: {estimate.convergence_gap:.3e}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "bound": _cmd_bound,
        "figure": _cmd_figure,
        "verify": _cmd_verify,
        "oracle": _cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except (ParamDomainError, CPViolationError, OracleDivergedError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
