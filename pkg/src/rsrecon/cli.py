"""Command line front end.

Subcommands: capacity, pmf, threshold (closed forms as JSON), simulate
(seeded campaign, summary CSV), sweep (threshold grid CSV plus an optional
rendered rate-region figure).  Exit code 0 on success, 2 on configuration
errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from . import __version__
from .harness import (
    RunConfig,
    run_campaign,
    sweep,
    write_campaign_csv,
    write_sweep_csv,
)
from .plots import plot_rate_region
from .theory import (
    capacity,
    capacity_bits,
    capacity_limit,
    kv_validity_bound,
    outcome_pmf,
    pmf_bounds,
    rate_threshold_kv,
    rate_threshold_majority,
    theory_report,
)


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _parse_float_grid(text: str) -> list[float]:
    """Grid syntax: either "0.05,0.1,0.2" or "start:stop:step" (inclusive)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("range grid must be start:stop:step")
        start, stop, step = (float(x) for x in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        values = []
        v = start
        while v <= stop + step * 1e-9:
            values.append(round(v, 12))
            v += step
        return values
    return [float(x) for x in text.split(",") if x.strip()]


def _parse_int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _cmd_capacity(args) -> int:
    _print_json(
        {
            "q": args.q,
            "K": args.K,
            "p": args.p,
            "capacity": capacity(args.q, args.K, args.p),
            "capacity_bits": capacity_bits(args.q, args.K, args.p),
            "capacity_limit": capacity_limit(args.K, args.p),
        }
    )
    return 0


def _cmd_pmf(args) -> int:
    pmf = outcome_pmf(args.q, args.K, args.p)
    payload = {"q": args.q, "K": args.K, "p": args.p, "pmf": asdict(pmf)}
    if args.q > args.K and 0.0 < args.p < 1.0:
        payload["bounds"] = pmf_bounds(args.q, args.K, args.p).as_dict()
    _print_json(payload)
    return 0


def _cmd_threshold(args) -> int:
    if args.q is not None:
        report = theory_report(
            args.q, args.K, args.p, n=args.n, k=args.k, mu=args.mu, eta=args.eta
        )
        _print_json(report.as_dict())
        return 0
    _print_json(
        {
            "K": args.K,
            "p": args.p,
            "capacity_limit": capacity_limit(args.K, args.p),
            "threshold_kv": rate_threshold_kv(args.K, args.p),
            "threshold_majority": rate_threshold_majority(args.K, args.p),
            "kv_validity_p": kv_validity_bound(args.K),
            "kv_in_validity": args.p <= kv_validity_bound(args.K),
        }
    )
    return 0


def _merge_config(args) -> RunConfig:
    data = {}
    if args.config is not None:
        with open(args.config) as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValueError("config JSON must be an object")
        data.update(raw)
    overrides = {
        "q": args.q,
        "n": args.n,
        "k": args.k,
        "K": args.K,
        "p": args.p,
        "mu": args.mu,
        "trials": args.trials,
        "master_seed": args.seed,
        "decoder": args.decoder,
        "eta": args.eta,
    }
    data.update({key: val for key, val in overrides.items() if val is not None})
    return RunConfig.from_dict(data)


def _cmd_simulate(args) -> int:
    cfg = _merge_config(args)
    result = run_campaign(cfg, jobs=args.jobs)
    to_stdout = args.out is None or args.out == "-"
    write_campaign_csv(
        result, sys.stdout if to_stdout else args.out, include_timing=not args.no_timing
    )
    info = sys.stderr if to_stdout else sys.stdout
    for s in result.summaries:
        print(
            f"{s.decoder}: {s.successes}/{s.trials} success, "
            f"{s.failures} failures, {s.miscorrections} miscorrections, "
            f"avg list {s.avg_list_size:.3f}, psi rate {s.psi_rate:.3f}, "
            f"failure rate {s.failure_rate:.4f} "
            f"(95% CI {s.ci_low:.4f}..{s.ci_high:.4f})",
            file=info,
        )
    cert = result.certificate
    if cert is not None:
        print(
            f"certificate: satisfied={cert.satisfied} "
            f"s_star={cert.s_star:.2f} o_star={cert.o_star:.2f} "
            f"c_star={cert.c_star:.2f} (adjusted cap {cert.c_star_adjusted:.2f}, "
            f"exceeded by {result.c_star_exceedances} trials)",
            file=info,
        )
    return 0


def _cmd_sweep(args) -> int:
    k_reads_values = _parse_int_list(args.K)
    p_values = _parse_float_grid(args.p)
    rows = sweep(
        k_reads_values,
        p_values,
        q=args.q,
        n=args.n,
        k=args.k,
        mu=args.mu,
        eta=args.eta,
        trials=args.trials,
        master_seed=args.seed,
        decoder=args.decoder,
        jobs=args.jobs,
    )
    to_stdout = args.out is None or args.out == "-"
    write_sweep_csv(rows, sys.stdout if to_stdout else args.out)

    plot_path = None
    if not args.no_plot:
        if args.plot is not None:
            plot_path = args.plot
        elif not to_stdout:
            plot_path = os.path.splitext(args.out)[0] + ".svg"
    if plot_path is not None:
        points = None
        if args.trials > 0:
            rate = args.k / args.n
            rate_col = "kv_success_rate"
            if rate_col not in rows[0]:
                rate_col = f"{args.decoder}_success_rate"
            points = [(row["K"], row["p"], rate, row[rate_col]) for row in rows]
        plot_rate_region(
            plot_path, k_reads_values=k_reads_values, operating_points=points
        )
        print(f"figure written to {plot_path}", file=sys.stderr)
    return 0


def _add_point_args(sub, with_q: bool = True, q_required: bool = True) -> None:
    if with_q:
        sub.add_argument("--q", type=int, required=q_required, help="alphabet size")
    sub.add_argument("--K", type=int, required=True, help="reads per position")
    sub.add_argument("--p", type=float, required=True, help="substitution probability")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsrecon",
        description="Reed-Solomon reconstruction from multiple noisy reads: "
        "closed-form reports, seeded simulation campaigns, threshold sweeps.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cap = sub.add_parser("capacity", help="channel capacity at (q, K, p)")
    _add_point_args(cap)
    cap.set_defaults(func=_cmd_capacity)

    pmf = sub.add_parser("pmf", help="exact outcome pmf and bounds at (q, K, p)")
    _add_point_args(pmf)
    pmf.set_defaults(func=_cmd_pmf)

    thr = sub.add_parser(
        "threshold", help="rate thresholds; add --q (and --n/--k) for a full report"
    )
    _add_point_args(thr, q_required=False)
    thr.add_argument("--n", type=int, help="code length (certificate)")
    thr.add_argument("--k", type=int, help="code dimension (certificate)")
    thr.add_argument("--mu", type=int, default=2, help="multiplicity budget")
    thr.add_argument("--eta", type=float, default=0.1, help="certificate target")
    thr.set_defaults(func=_cmd_threshold)

    sim = sub.add_parser("simulate", help="run a seeded Monte-Carlo campaign")
    sim.add_argument("--config", help="JSON run configuration")
    sim.add_argument("--q", type=int)
    sim.add_argument("--n", type=int)
    sim.add_argument("--k", type=int)
    sim.add_argument("--K", type=int)
    sim.add_argument("--p", type=float)
    sim.add_argument("--mu", type=int)
    sim.add_argument("--trials", type=int)
    sim.add_argument("--seed", type=int, help="master seed (mandatory)")
    sim.add_argument("--decoder", choices=("kv", "majority", "both"))
    sim.add_argument("--eta", type=float)
    sim.add_argument("--out", help="summary CSV path ('-' for stdout)")
    sim.add_argument("--jobs", type=int, default=1, help="worker threads")
    sim.add_argument(
        "--no-timing",
        action="store_true",
        help="write wall_ms as 0 for byte-deterministic output",
    )
    sim.set_defaults(func=_cmd_simulate)

    swp = sub.add_parser("sweep", help="threshold grid over K and p")
    swp.add_argument("--K", required=True, help="comma list, e.g. 2,3,4")
    swp.add_argument(
        "--p", required=True, help="comma list or start:stop:step, e.g. 0.05:0.5:0.05"
    )
    swp.add_argument("--q", type=int, help="enables the certificate column")
    swp.add_argument("--n", type=int)
    swp.add_argument("--k", type=int)
    swp.add_argument("--mu", type=int, default=2)
    swp.add_argument("--eta", type=float, default=0.1)
    swp.add_argument(
        "--trials", type=int, default=0, help="per-point campaign trials (0 = none)"
    )
    swp.add_argument("--seed", type=int, help="master seed for empirical columns")
    swp.add_argument("--decoder", choices=("kv", "majority", "both"), default="both")
    swp.add_argument("--out", help="sweep CSV path ('-' for stdout)")
    swp.add_argument("--jobs", type=int, default=1)
    swp.add_argument("--plot", help="rate-region figure path (extension = format)")
    swp.add_argument("--no-plot", action="store_true", help="skip the figure")
    swp.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
