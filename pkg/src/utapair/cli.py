"""Command-line front end.

Subcommands:
  gen    sample a scenario file
  run    elicit against a scenario (or replay a transcript), emit report
  plot   emit indifference-curve data for one criteria plane
  serve  start the HTTP session service

`run` exits 0 only when recovery matched the ground truth exactly.
Reports and transcripts are byte-deterministic for a given scenario.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .model import models_equivalent
from .oracle import Transcript
from .plotdata import curve_payload, marginal_payload, render_curves, render_marginals
from .scenario import RunReport, Scenario, execute, generate_scenario


def _parse_segments(text: str) -> list[int]:
    counts = [int(part) for part in text.split(",") if part.strip()]
    if not counts or any(c < 1 for c in counts):
        raise argparse.ArgumentTypeError("segment counts must be positive integers")
    return counts


def _add_gen_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--criteria", type=int, default=2, help="number of criteria")
    parser.add_argument(
        "--breakpoints",
        type=_parse_segments,
        default=None,
        help="comma-separated interval counts per criterion (default: 2 each)",
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--slope-den", type=int, default=4)
    parser.add_argument("--slope-max-num", type=int, default=12)
    parser.add_argument(
        "--allow-identical",
        action="store_true",
        help="do not resample when the two sampled models coincide",
    )
    parser.add_argument(
        "--identical",
        action="store_true",
        help="duplicate one sampled model into both slots",
    )


def _gen_scenario(args: argparse.Namespace, seed: int) -> Scenario:
    segments = args.breakpoints if args.breakpoints else [2] * args.criteria
    return generate_scenario(
        criteria=args.criteria,
        segments=segments,
        seed=seed,
        slope_den=args.slope_den,
        slope_max_num=args.slope_max_num,
        allow_identical=args.allow_identical,
        identical=args.identical,
    )


def cmd_gen(args: argparse.Namespace) -> int:
    scenario = _gen_scenario(args, args.seed)
    text = json.dumps(scenario.to_payload(), sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _emit_report(report: RunReport, out) -> None:
    # terse delimited summary; the JSON report file is the full contract
    for table in report.payload["tables"]:
        for name, slopes in sorted(table["slopes"].items()):
            for l, value in enumerate(slopes, start=1):
                out.write(f"slope\t{table['label']}\t{name}\t{l}\t{value}\n")
    out.write(f"queries\t{report.payload['query_count']}\n")
    out.write(f"outcome\t{report.payload['outcome']}\n")
    out.write(f"verdict\t{report.payload['verdict']}\n")


def _write_figures(report: RunReport, scenario: Scenario, directory: str) -> None:
    grid = scenario.grid
    from .scenario import model_from_payload

    labeled = [
        (table["label"], model_from_payload(grid, table))
        for table in report.payload["tables"]
    ]
    if not labeled:
        return
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    render_marginals(marginal_payload(labeled), target / "marginals.png")
    n = grid.criteria_count
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            render_curves(curve_payload(labeled, i, j), target / f"plane-{i}-{j}.png")


def _run_one(args: argparse.Namespace, scenario: Scenario) -> int:
    replay = None
    if args.replay:
        replay = Transcript.from_jsonl(Path(args.replay).read_text())
    report, transcript = execute(scenario, replay=replay)
    if args.report:
        Path(args.report).write_text(report.to_json())
    if args.transcript:
        Path(args.transcript).write_text(transcript.to_jsonl())
    if args.figures:
        _write_figures(report, scenario, args.figures)
    _emit_report(report, sys.stdout)
    return 0 if report.verdict == "exact" else 1


def cmd_run(args: argparse.Namespace) -> int:
    if args.scenario:
        if args.sweep:
            raise SystemExit("--sweep requires generated scenarios, not --scenario")
        return _run_one(args, Scenario.load(args.scenario))
    if not args.sweep:
        return _run_one(args, _gen_scenario(args, args.seed))
    # sweep: consecutive seeds, one line each, exit 0 only if all exact
    failures = 0
    for offset in range(args.sweep):
        seed = args.seed + offset
        scenario = _gen_scenario(args, seed)
        report, _ = execute(scenario)
        verdict = report.verdict
        sys.stdout.write(
            f"sweep\t{seed}\t{report.payload['outcome']}\t"
            f"{report.payload['query_count']}\t{verdict}\n"
        )
        if verdict != "exact":
            failures += 1
    sys.stdout.write(f"sweep-failures\t{failures}\n")
    return 0 if failures == 0 else 1


def cmd_plot(args: argparse.Namespace) -> int:
    scenario = Scenario.load(args.scenario)
    try:
        i, j = (int(p) for p in args.plane.split(","))
    except ValueError:
        raise SystemExit("--plane expects two comma-separated criterion indices")
    if models_equivalent(*scenario.models):
        labeled = [("shared", scenario.models[0])]
    else:
        labeled = [("dm-a", scenario.models[0]), ("dm-b", scenario.models[1])]
    payload = curve_payload(labeled, i, j, levels=args.levels)
    lines = []
    for curve in payload["curves"]:
        for x, y in curve["points"]:
            lines.append(f"curve\t{curve['model']}\t{curve['level']}\t{x}\t{y}\n")
    text = "".join(lines)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.render:
        base = Path(args.out) if args.out else Path(f"plane-{i}-{j}.tsv")
        render_curves(payload, base.with_suffix(".png"))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="utapair")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="sample a scenario file")
    _add_gen_params(gen)
    gen.add_argument("--out", help="scenario path (default: stdout)")
    gen.set_defaults(func=cmd_gen)

    runp = sub.add_parser("run", help="run elicitation against a scenario")
    runp.add_argument("--scenario", help="scenario file to load")
    _add_gen_params(runp)
    runp.add_argument("--sweep", type=int, default=0, help="run N generated scenarios")
    runp.add_argument("--replay", help="answer from a transcript instead of the models")
    runp.add_argument("--report", help="write the JSON report here")
    runp.add_argument("--transcript", help="write the query/answer transcript here")
    runp.add_argument("--figures", help="render marginal and curve figures into DIR")
    runp.set_defaults(func=cmd_run)

    plot = sub.add_parser("plot", help="emit indifference-curve data for one plane")
    plot.add_argument("--scenario", required=True)
    plot.add_argument("--plane", default="1,2", help="criteria pair, e.g. 1,2")
    plot.add_argument("--levels", type=int, default=5)
    plot.add_argument("--out", help="output path (default: stdout)")
    plot.add_argument("--render", action="store_true", help="also write a PNG")
    plot.set_defaults(func=cmd_plot)

    serve = sub.add_parser("serve", help="start the HTTP session service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8210)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
