"""Command-line front end.

Subcommands: validate, study, stance, coverage, pareto, eval. Exit codes:
0 success, 1 config/usage error, 2 ran correctly but no feasible design.
All outputs are JSON or CSV files written under --out-dir.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, load_config
from .interference import coverage_csv_rows, coverage_curve
from .mechanics import (Stance, effective_stability, grasp_map, manipulability,
                        stiffness, wrench_capability)
from .rng import substream
from .stance import BodyPose, build_stance
from .study import (pareto_csv_rows, pareto_front, run_study, stability_csv_rows,
                    summary_csv_rows)
from .terrain import anchors_to_csv_rows, sample_anchors

log = logging.getLogger("reachbot")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_DESIGN = 2


def _setup_logging():
    level = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        os.environ.get("REACHBOT_LOG", "error").lower(), logging.ERROR)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _write_lines(path: Path, lines: list[str]):
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, obj):
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _load(args) -> tuple:
    try:
        sc, echo = load_config(args.config)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {args.config}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    overrides = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "trials", None) is not None:
        overrides["trials"] = args.trials
    if getattr(args, "n_range", None) is not None:
        overrides["n_range"] = tuple(args.n_range)
    if overrides:
        import dataclasses
        sc = dataclasses.replace(sc, **overrides)
    return sc, echo


def cmd_validate(args) -> int:
    _load(args)
    print("config ok")
    return EXIT_OK


def cmd_study(args) -> int:
    sc, echo = _load(args)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report = run_study(sc, config_echo=echo)
    write_json = args.json or not args.csv
    write_csv = args.csv or not args.json
    if write_json:
        _write_json(out / "report.json", report.to_dict())
    if write_csv:
        _write_lines(out / "stability.csv", stability_csv_rows(report.table))
        _write_lines(out / "summary.csv", summary_csv_rows(report.summary))
        _write_lines(out / "coverage.csv", coverage_csv_rows(report.coverage))
        _write_lines(out / "pareto.csv", pareto_csv_rows(report.pareto))
    if report.selected_n is None:
        print("no feasible design")
        for v in report.pareto.verdicts:
            print(f"  N = {v.n}: fails {', '.join(v.binding)}")
        return EXIT_NO_DESIGN
    print(f"selected N = {report.selected_n}")
    binding = {v.n: v.binding for v in report.pareto.verdicts}
    infeasible = [v.n for v in report.pareto.verdicts if not v.feasible]
    if infeasible:
        print("rejected: " + "; ".join(
            f"N = {n} fails {', '.join(binding[n])}" for n in infeasible))
    return EXIT_OK


def cmd_stance(args) -> int:
    sc, _ = _load(args)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    n = args.n or sc.n_range[1]
    cfg = sc.robot_template.with_boom_count(n, sc.layout)
    pool = sample_anchors(sc.terrain, sc.pool_multiplier * n,
                          min(2 * cfg.L_max, sc.terrain.longitudinal_extent),
                          substream(sc.seed, args.trial, "anchors"), seed=sc.seed)
    _write_lines(out / "anchors.csv", anchors_to_csv_rows([pool]))
    st = build_stance(cfg, pool, BodyPose())
    if st is None:
        print("infeasible: no complete boom-to-anchor assignment")
        return EXIT_NO_DESIGN
    _write_json(out / "stance.json", st.to_dict())
    rows = ["boom_index,anchor_index,length_m"]
    from .stance import FeasibilityPredicate, assign
    assignment = assign(list(cfg.mounts), BodyPose(), pool, FeasibilityPredicate.from_robot(cfg))
    for b, a in assignment.pairs:
        rows.append(f"{b},{a},{st.lengths[b]:.9g}")
    _write_lines(out / "assignment.csv", rows)
    print(f"stance with {n} booms, total length {assignment.total_length:.6g} m")
    return EXIT_OK


def cmd_coverage(args) -> int:
    sc, _ = _load(args)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    samples = args.samples or sc.surface_samples
    reports = coverage_curve(sc.robot_template, sc.terrain, sc.n_range, samples,
                             substream(sc.seed, 0, "surface"),
                             layout_policy=sc.coverage_layout)
    _write_lines(out / "coverage.csv", coverage_csv_rows(reports))
    print(f"coverage curve for N = {sc.n_range[0]}..{sc.n_range[1]} written")
    return EXIT_OK


def cmd_pareto(args) -> int:
    path = Path(args.points)
    if not path.exists():
        raise ConfigError(f"points file not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ConfigError("points CSV has no header")
        rows = list(reader)
    if not rows:
        raise ConfigError("points CSV has no data rows")
    objectives = [(c, "min") for c in args.minimize] + [(c, "max") for c in args.maximize]
    if not objectives:
        raise ConfigError("at least one --minimize or --maximize column required")
    for col, _ in objectives:
        if col not in reader.fieldnames:
            raise ConfigError(f"column {col!r} not in points CSV")
    try:
        values = np.array([[float(r[c]) for c, _ in objectives] for r in rows])
    except ValueError as exc:
        raise ConfigError(f"non-numeric objective value: {exc}")
    keep = pareto_front(values, [s for _, s in objectives])
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = [",".join(reader.fieldnames)]
    for i in keep:
        lines.append(",".join(rows[i][c] for c in reader.fieldnames))
    _write_lines(out / "nondominated.csv", lines)
    print(f"{len(keep)} of {len(rows)} points nondominated")
    return EXIT_OK


def cmd_eval(args) -> int:
    path = Path(args.stance)
    if not path.exists():
        raise ConfigError(f"stance file not found: {path}")
    try:
        st = Stance.from_dict(json.loads(path.read_text()))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"invalid stance file: {exc}")
    k, delta_ref = 100.0, 0.1
    if args.config:
        sc, _ = _load(args)
        k = sc.robot_template.boom_stiffness
        delta_ref = sc.calibration.delta_ref
    G = grasp_map(st)
    res = stiffness(G, k)
    wc = wrench_capability(res, delta_ref)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = ["n_booms,stability,wrench_full,wrench_torque,manipulability",
            f"{st.boom_count},{effective_stability(res):.12g},{wc.full:.12g},"
            f"{wc.torque:.12g},{manipulability(G):.12g}"]
    _write_lines(out / "eval.csv", rows)
    _write_json(out / "eval.json", {
        "n_booms": st.boom_count,
        "K": res.K.tolist(),
        "eigenvalues": res.eigenvalues.tolist(),
        "stability": effective_stability(res),
        "wrench_full": wc.full,
        "wrench_torque": wc.torque,
        "manipulability": manipulability(G),
    })
    print("\n".join(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reachbot",
                                description="Boom-limbed climbing robot design trade studies")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, config=True):
        if config:
            sp.add_argument("config", help="study config JSON file")
            sp.add_argument("--seed", type=int, help="override config seed")
            sp.add_argument("--trials", type=int, help="override trial count")
            sp.add_argument("--n-range", type=int, nargs=2, metavar=("LO", "HI"),
                            help="override boom count range")
        sp.add_argument("--out-dir", default=".", help="output directory")

    sp = sub.add_parser("validate", help="check a config file")
    sp.add_argument("config")
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("study", help="run the full trade study")
    add_common(sp)
    sp.add_argument("--json", action="store_true", help="write only report.json")
    sp.add_argument("--csv", action="store_true", help="write only CSV tables")
    sp.add_argument("--threads", type=int, default=1,
                    help="reserved; trials run sequentially either way")
    sp.set_defaults(fn=cmd_study)

    sp = sub.add_parser("stance", help="build one stance and export it")
    add_common(sp)
    sp.add_argument("--n", type=int, help="boom count (default: top of n_range)")
    sp.add_argument("--trial", type=int, default=0, help="trial index for the anchor draw")
    sp.set_defaults(fn=cmd_stance)

    sp = sub.add_parser("coverage", help="coverage curve over boom counts")
    add_common(sp)
    sp.add_argument("--samples", type=int, help="surface sample count override")
    sp.set_defaults(fn=cmd_coverage)

    sp = sub.add_parser("pareto", help="nondominated filter over a CSV of points")
    sp.add_argument("points", help="CSV file with a header row")
    sp.add_argument("--minimize", action="append", default=[], metavar="COL")
    sp.add_argument("--maximize", action="append", default=[], metavar="COL")
    sp.add_argument("--out-dir", default=".")
    sp.set_defaults(fn=cmd_pareto)

    sp = sub.add_parser("eval", help="evaluate all metrics for one stance file")
    sp.add_argument("stance", help="stance JSON file")
    sp.add_argument("--config", help="study config for stiffness calibration")
    sp.add_argument("--out-dir", default=".")
    sp.set_defaults(fn=cmd_eval)
    return p


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
