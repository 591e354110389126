"""Command-line entry point: ``goodwin-cycles {run,simulate,selftest,make-fixture}``."""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

from goodwin_cycles.config import PipelineConfig, apply_env, load_config
from goodwin_cycles.errors import GoodwinError
from goodwin_cycles.ingest import write_country_csv
from goodwin_cycles.model import GoodwinParams, PhasePoint, equilibrium, period, simulate
from goodwin_cycles.pipeline import PARAM_NAMES, run_study
from goodwin_cycles.reporting import emit_reports, fmt
from goodwin_cycles.selftest import run_selftest
from goodwin_cycles.synthetic import make_country


def read_params(path: str | Path) -> GoodwinParams:
    """Parameters from a JSON object or an INI file with a ``[params]`` section."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        values = json.loads(text)
    else:
        parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
        parser.read_string(text)
        if not parser.has_section("params"):
            raise ValueError(f"{path}: no [params] section")
        values = dict(parser["params"])
    missing = [n for n in PARAM_NAMES if n not in values]
    if missing:
        raise ValueError(f"{path}: missing parameters {', '.join(missing)}")
    return GoodwinParams(**{n: float(values[n]) for n in PARAM_NAMES})


def _parse_init(text: str) -> PhasePoint:
    try:
        w, l = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("--init must be 'omega,lambda'") from None
    return PhasePoint(w, l)


def cmd_run(args) -> int:
    if args.config:
        cfg = load_config(args.config)
    else:
        cfg = apply_env(PipelineConfig())
    if args.output_dir:
        cfg = replace(cfg, output_dir=Path(args.output_dir))
    countries = [c.strip().lower() for c in args.country] if args.country else None
    if not countries and not cfg.countries:
        print("error: no countries configured; pass --config or --country", file=sys.stderr)
        return 2
    reports = run_study(cfg, countries)
    written = emit_reports(reports, cfg)
    failed = 0
    for r in reports:
        if r.error:
            failed += 1
            print(f"{r.country}: FAILED {r.error}")
            continue
        bad = [s for s, ok in r.stages.items() if not ok]
        status = "all stages passed" if not bad else "flags: " + ", ".join(bad)
        print(f"{r.country}: {r.window[0]}-{r.window[1]}, {status}")
        for w in r.warnings:
            print(f"  warning: {w}")
    print(f"wrote {len(written)} files to {cfg.output_dir} (config_hash {cfg.fingerprint()})")
    return 1 if failed else 0


def cmd_simulate(args) -> int:
    p = read_params(args.params)
    tr = simulate(p, args.init, args.start_year, args.years)
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        eq = equilibrium(p)
        out.write(f"# omega_G={fmt(eq.omega)} lambda_G={fmt(eq.lam)} T_G={fmt(period(p))}\n")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(("year", "omega", "lambda"))
        for year, om, la in tr.to_csv_rows():
            w.writerow((year, fmt(om), fmt(la)))
    finally:
        if args.output:
            out.close()
    return 0


def cmd_selftest(args) -> int:
    return 0 if run_selftest() else 1


def cmd_make_fixture(args) -> int:
    out = Path(args.output_dir)
    sc = make_country(args.country, seed=args.seed, break_year=args.break_year,
                      break_shift=args.break_shift)
    path = write_country_csv(sc.raw, out / f"{args.country}.csv")
    ini = out / "study.ini"
    if not ini.exists():
        ini.write_text(
            "[pipeline]\ndata_dir = .\noutput_dir = out\n\n[countries]\n"
            f"{args.country} =\n",
            encoding="utf-8",
        )
    print(f"wrote {path}")
    print("true parameters: " + ", ".join(f"{n}={getattr(sc.truth, n):g}" for n in PARAM_NAMES))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="goodwin-cycles", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the study and write CSV tables")
    run.add_argument("--config", help="INI config file")
    run.add_argument("--country", action="append",
                     help="restrict to this country (repeatable); reads <data_dir>/<country>.csv")
    run.add_argument("--output-dir", help="override the configured output directory")
    run.set_defaults(func=cmd_run)

    sim = sub.add_parser("simulate", help="integrate one orbit and print it as CSV")
    sim.add_argument("--params", required=True, help="JSON or INI ([params]) parameter file")
    sim.add_argument("--init", required=True, type=_parse_init, help="omega,lambda")
    sim.add_argument("--years", required=True, type=int, help="years to integrate (negative: backwards)")
    sim.add_argument("--start-year", type=int, default=0)
    sim.add_argument("--output", help="write here instead of stdout")
    sim.set_defaults(func=cmd_simulate)

    st = sub.add_parser("selftest", help="run the built-in synthetic acceptance checks")
    st.set_defaults(func=cmd_selftest)

    fx = sub.add_parser("make-fixture", help="write a synthetic country CSV with known parameters")
    fx.add_argument("--output-dir", required=True)
    fx.add_argument("--country", default="synthetica")
    fx.add_argument("--seed", type=int, default=0)
    fx.add_argument("--break-year", type=int)
    fx.add_argument("--break-shift", type=float, default=0.0)
    fx.set_defaults(func=cmd_make_fixture)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GoodwinError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
