"""Command-line surface: entanglement-retention sweeps and single-point
drill-downs, with deterministic CSV output and an optional SVG chart."""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .encoding import encode_pair, pair_outcome_distribution
from .entanglement import average_entanglement, entanglement_sweep, entropy_of_entanglement, tmss_entanglement
from .oracle import (
    PAIR_GROUP_K,
    PAIR_GROUP_L,
    build_joint_pair,
    pair_schmidt_amplitudes,
    project_total_number,
    schmidt_entropy_dense,
)
from .svgplot import render_line_chart

CSV_HEADER = "eta,beta,E_exact,E_avg,fraction_lost,residual,window_K,window_L"

_DEFAULT_ETAS = "0.1:0.5:0.1"
_DEFAULT_BETAS = "1:12:1"


@dataclass(frozen=True)
class SweepConfig:
    """Validated inputs for one sweep run."""

    etas: list[float]
    betas: list[float]
    output_csv_path: str
    output_svg_path: str | None = None
    epsilon_tail: float = 1e-10
    epsilon_trunc: float = 1e-12
    threads: int = 1

    def __post_init__(self):
        if not self.etas or not self.betas:
            raise ValueError("eta and beta grids must be non-empty")
        for name in ("epsilon_tail", "epsilon_trunc"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {value!r}")
        if self.threads < 1:
            raise ValueError(f"threads must be a positive integer, got {self.threads!r}")


def parse_grid(text: str) -> list[float]:
    """Parse a comma list ("0.1,0.2") or an inclusive range ("1:12:1")."""
    text = text.strip()
    if not text:
        raise ValueError("empty grid argument")
    if ":" in text:
        fields = text.split(":")
        if len(fields) != 3:
            raise ValueError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(f) for f in fields)
        if step <= 0:
            raise ValueError(f"range step must be positive, got {step}")
        if stop < start:
            raise ValueError(f"range stop must be >= start, got {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]
    return [float(f) for f in text.split(",")]


def _format(value: float) -> str:
    return f"{value:.12g}"


def _sweep_csv(reports) -> str:
    lines = [CSV_HEADER]
    for r in reports:
        lines.append(
            ",".join(
                [
                    _format(r.eta),
                    _format(r.beta_abs),
                    _format(r.E_exact),
                    _format(r.E_avg),
                    _format(r.fraction_lost),
                    _format(r.residual),
                    str(r.window_K),
                    str(r.window_L),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def run_sweep(config: SweepConfig) -> int:
    try:
        reports = entanglement_sweep(
            config.etas, config.betas, config.epsilon_tail, max_workers=config.threads
        )
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    csv_text = _sweep_csv(reports)
    try:
        with open(config.output_csv_path, "w", encoding="ascii") as fh:
            fh.write(csv_text)
    except OSError as exc:
        print(f"error: cannot write CSV to {config.output_csv_path}: {exc}", file=sys.stderr)
        return 1

    if config.output_svg_path is not None:
        series = []
        for i, eta in enumerate(config.etas):
            chunk = reports[i * len(config.betas) : (i + 1) * len(config.betas)]
            series.append((f"eta={eta:g}", [r.beta_abs for r in chunk], [r.fraction_lost for r in chunk]))
        svg_text = render_line_chart(
            series,
            title="Entanglement lost by phase-reference-free encoding",
            x_label="beta",
            y_label="fraction of entanglement lost",
        )
        try:
            with open(config.output_svg_path, "w", encoding="ascii") as fh:
                fh.write(svg_text)
        except OSError as exc:
            print(f"error: cannot write SVG to {config.output_svg_path}: {exc}", file=sys.stderr)
            return 1

    print(f"wrote {len(reports)} rows to {config.output_csv_path}")
    return 0


def _cmd_sweep(args) -> int:
    try:
        config = SweepConfig(
            etas=parse_grid(args.etas),
            betas=parse_grid(args.betas),
            output_csv_path=args.csv,
            output_svg_path=args.svg,
            epsilon_tail=args.epsilon_tail,
            epsilon_trunc=args.epsilon_trunc,
            threads=args.threads,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run_sweep(config)


def _oracle_comparison(eta: float, beta: float, cutoff: int) -> tuple[int, float, float, float]:
    """Max deviation between the dense projection path and the closed-form
    path over small outcomes: (count, probability, Schmidt weight, ebits)."""
    max_outcome = min(6, cutoff - 2)
    dist = pair_outcome_distribution(eta, beta)
    joint = build_joint_pair(eta, beta, 0.0, cutoff)
    compared = 0
    dev_p = dev_q = dev_e = 0.0
    for k in range(max_outcome + 1):
        p_k, after_k = project_total_number(joint, PAIR_GROUP_K, k)
        if after_k is None:
            continue
        for l in range(max_outcome + 1):
            p_l, after_l = project_total_number(after_k, PAIR_GROUP_L, l)
            if after_l is None:
                continue
            dense_p = p_k * p_l
            if dense_p < 1e-12:
                continue
            compared += 1
            dev_p = max(dev_p, abs(dense_p - dist.support[(k, l)]))
            dense_q = np.abs(pair_schmidt_amplitudes(after_l, k, l)) ** 2
            state = encode_pair(eta, beta, k, l)
            main_q = np.abs(state.schmidt_coeffs) ** 2
            dev_q = max(dev_q, float(np.max(np.abs(dense_q - main_q))))
            dense_e = schmidt_entropy_dense(after_l, (0, 2))
            dev_e = max(dev_e, abs(dense_e - entropy_of_entanglement(state)))
    return compared, dev_p, dev_q, dev_e


def run_point(args) -> int:
    try:
        report = average_entanglement(args.eta, args.beta, args.epsilon_tail)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    print(f"eta            {_format(report.eta)}")
    print(f"beta           {_format(report.beta_abs)}")
    print(f"E_exact        {_format(report.E_exact)}")
    print(f"E_avg          {_format(report.E_avg)}")
    print(f"fraction_lost  {_format(report.fraction_lost)}")
    print(f"residual       {_format(report.residual)}")
    print(f"residual_bound {_format(report.residual_bound)}")
    print(f"window         {report.window_K} x {report.window_L}")
    print(f"tmss_entanglement(eta) = {_format(tmss_entanglement(args.eta))}")
    print("top contributions (K, L) -> probability, ebits:")
    for (k, l), prob, ebits in report.contributions.top(10):
        print(f"  ({k:4d},{l:4d})  {prob:.12g}  {ebits:.12g}")

    if args.oracle:
        try:
            compared, dev_p, dev_q, dev_e = _oracle_comparison(args.eta, args.beta, args.cutoff)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        if compared == 0:
            print("oracle-vs-main: no outcome below the cutoff has probability above 1e-12; raise --cutoff")
        else:
            print(
                f"oracle-vs-main max deviation over {compared} outcomes: "
                f"probability {dev_p:.3e}, schmidt weight {dev_q:.3e}, ebits {dev_e:.3e}"
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasefree",
        description=(
            "Phase-reference-free encoding of coherent and two-mode squeezed "
            "light: entanglement-retention sweeps and point analyses."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="grid sweep over (eta, beta); writes CSV and optional SVG")
    sweep.add_argument("--etas", default=_DEFAULT_ETAS, help="comma list or start:stop:step (default %(default)s)")
    sweep.add_argument("--betas", default=_DEFAULT_BETAS, help="comma list or start:stop:step (default %(default)s)")
    sweep.add_argument("--csv", required=True, help="output CSV path")
    sweep.add_argument("--svg", default=None, help="optional output SVG path")
    sweep.add_argument("--epsilon-tail", type=float, default=1e-10, help="outcome-window tail budget (default %(default)s)")
    sweep.add_argument(
        "--epsilon-trunc",
        type=float,
        default=1e-12,
        help="Fock truncation budget for auxiliary state construction (default %(default)s)",
    )
    sweep.add_argument("--threads", type=int, default=1, help="worker threads; output is identical for any value")
    sweep.set_defaults(func=_cmd_sweep)

    point = sub.add_parser("point", help="single (eta, beta) report with top outcome contributions")
    point.add_argument("--eta", type=float, required=True)
    point.add_argument("--beta", type=float, required=True)
    point.add_argument("--epsilon-tail", type=float, default=1e-10)
    point.add_argument("--oracle", action="store_true", help="append dense-projection cross-check deviations")
    point.add_argument("--cutoff", type=int, default=10, help="per-mode photon cutoff for --oracle (default %(default)s)")
    point.set_defaults(func=run_point)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("epsilon_tail", "epsilon_trunc"):
        value = getattr(args, name, None)
        if value is not None and not 0.0 < value < 1.0:
            parser.error(f"--{name.replace('_', '-')} must lie in (0, 1), got {value}")
    if getattr(args, "threads", 1) is not None and getattr(args, "threads", 1) < 1:
        parser.error("--threads must be a positive integer")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
