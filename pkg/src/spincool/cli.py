"""Command-line front end.

Subcommands:

    simulate    run the cooling dynamics, write trajectory CSV + summary JSON
    balance     find the dressing Rabi frequency that balances the dressed pair
    dressed     print the dressed-pair overlaps and energies
    reproduce   regenerate a reference artifact (fig3, table1, sensitivity,
                impurity, appendixA, levels, isotopes)
    lasercalc   print the laser-budget conversion table
    levels      print the 5s15d 1D2 F-level energies

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import analysis, lasercalc
from .angmom import HalfInt
from .config import (ConfigError, RunConfig, SummaryRecord, atomic_write_text,
                     config_hash, load_run_config)
from .hyperfine import HyperfineConstants, f_level_energy
from .lindblad import DensityMatrixError, IntegrationError
from .svgplot import line_plot

CSV_SCHEMA = "# spincool trajectory csv v1"

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _fmt(x: float) -> str:
    return repr(float(x))


def _trajectory_csv(traj) -> str:
    cols = ["t_us", "pop_psi0", "pop_psif", "pop_perp", "pop_reservoir",
            "pop_1P1_total", "pop_1D2_total", "pop_6s"]
    lines = [CSV_SCHEMA, ",".join(cols)]
    for k, t in enumerate(traj.times):
        row = [t] + [traj.observables[c][k] for c in cols[1:]]
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _rows_csv(rows, extra_note_keys=()) -> str:
    cols = ["name", "t_us", "fidelity", "pop_perp", *extra_note_keys]
    lines = [CSV_SCHEMA.replace("trajectory", "sweep"), ",".join(cols)]
    for r in rows:
        vals = [r.name, _fmt(r.t_us), _fmt(r.fidelity), _fmt(r.pop_perp)]
        for key in extra_note_keys:
            vals.append(_fmt(r.notes[key]) if key in r.notes else "")
        lines.append(",".join(vals))
    return "\n".join(lines) + "\n"


def _dressed_summary(cfg: RunConfig) -> tuple[tuple[float, float] | None,
                                              float | None, float | None]:
    try:
        pair = analysis.dressed_pair(cfg.params)
        overlaps = (pair.overlap_up, pair.overlap_down)
    except analysis.AmbiguousOverlapError:
        return None, None, None
    try:
        nu = analysis.compute_nu(cfg.params)
        return overlaps, nu, None
    except analysis.UnbalancedError as exc:
        return overlaps, None, abs(exc.imbalance_mhz)


def cmd_simulate(cfg: RunConfig, out_dir: str, svg: bool) -> int:
    start = time.perf_counter()
    result = analysis.cool(cfg.alpha, cfg.beta, cfg.params,
                           t_final=cfg.t_final, samples=cfg.samples,
                           cfg=cfg.integrator())
    overlaps, nu, imbalance = _dressed_summary(cfg)
    record = SummaryRecord(
        config=cfg.to_flat_dict(),
        config_sha=config_hash(cfg),
        fidelity=result.fidelity,
        final_populations={
            "perp": result.pop_perp,
            "reservoir": result.pop_reservoir,
            "residual_clock": result.pop_residual_clock,
        },
        dressed_overlaps=overlaps,
        nu_mhz=nu,
        imbalance_mhz=imbalance,
        wall_clock_s=time.perf_counter() - start,
    )
    atomic_write_text(f"{out_dir}/trajectory.csv", _trajectory_csv(result.trajectory))
    atomic_write_text(f"{out_dir}/summary.json", record.to_json())
    if svg:
        t = list(result.trajectory.times)
        obs = result.trajectory.observables
        leak = [("perp", t, list(obs["pop_perp"])),
                ("reservoir", t, list(obs["pop_reservoir"])),
                ("1P1", t, list(obs["pop_1P1_total"])),
                ("1D2", t, list(obs["pop_1D2_total"])),
                ("6s", t, list(obs["pop_6s"]))]
        main = [("initial", t, list(obs["pop_psi0"])),
                ("target", t, list(obs["pop_psif"]))]
        svg_doc = line_plot(leak, xlabel="t (us)", ylabel="log10 population",
                            title="leakage populations", log_y=True)
        atomic_write_text(f"{out_dir}/populations_log.svg", svg_doc)
        svg_doc = line_plot(main, xlabel="t (us)", ylabel="population",
                            title="qubit transfer")
        atomic_write_text(f"{out_dir}/transfer.svg", svg_doc)
    print(f"fidelity at {cfg.t_final:g} us: {result.fidelity:.6f}  "
          f"(outputs in {out_dir})")
    return 0


def cmd_balance(cfg: RunConfig, out_dir: str, bracket: tuple[float, float]) -> int:
    p = cfg.params
    try:
        nu_input = None
        imbalance_input = None
        try:
            nu_input = analysis.compute_nu(p)
        except analysis.UnbalancedError as exc:
            imbalance_input = abs(exc.imbalance_mhz)
        balanced = analysis.balance_omega_pd(p, bracket=bracket)
        nu = analysis.compute_nu(p.replace(omega_pd=balanced))
    except analysis.BracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    payload = {
        "omega_pd_input_mhz": p.omega_pd,
        "imbalance_at_input_mhz": imbalance_input,
        "nu_at_input_mhz": nu_input,
        "omega_pd_balanced_mhz": balanced,
        "nu_mhz": nu,
        "delta_recommendation_mhz": -nu,
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    atomic_write_text(f"{out_dir}/balance.json", text)
    print(text, end="")
    return 0


def cmd_dressed(cfg: RunConfig) -> int:
    pair = analysis.dressed_pair(cfg.params)
    payload = {
        "overlap_up": pair.overlap_up,
        "overlap_down": pair.overlap_down,
        "energy_up_mhz": pair.energy_up,
        "energy_down_mhz": pair.energy_down,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _levels_rows() -> list[dict]:
    c = HyperfineConstants(-194.0, -75.0)
    I, J = HalfInt(9), HalfInt(4)
    rows = []
    for twice_f in (13, 11, 9, 7, 5):
        rows.append({"twice_F": twice_f,
                     "energy_mhz": f_level_energy(c, I, J, HalfInt(twice_f))})
    return rows


def cmd_levels(out_dir: str | None) -> int:
    rows = _levels_rows()
    lines = [CSV_SCHEMA.replace("trajectory", "levels"), "twice_F,energy_mhz"]
    lines += [f"{r['twice_F']},{_fmt(r['energy_mhz'])}" for r in rows]
    text = "\n".join(lines) + "\n"
    if out_dir:
        atomic_write_text(f"{out_dir}/levels.csv", text)
    print(text, end="")
    return 0


def cmd_lasercalc(out_dir: str | None) -> int:
    records = lasercalc.sr_laser_budget()
    text = json.dumps(records, indent=2, sort_keys=True) + "\n"
    if out_dir:
        atomic_write_text(f"{out_dir}/laser_budget.json", text)
    print(text, end="")
    return 0


def _table1_point(args):
    ratio, params_dict, t_final = args
    from .srmodel import ModelParams
    res = analysis.cool(ratio, 1.0, ModelParams(**params_dict), t_final=t_final)
    return ratio, res.fidelity, res.pop_perp


def _impurity_point(args):
    chi, params_dict, t_final = args
    from .srmodel import ModelParams, with_polarization_impurity
    p = with_polarization_impurity(ModelParams(**params_dict), chi, "dressing")
    res = analysis.cool(1.0, 1.0, p, t_final=t_final)
    return chi, res.fidelity, res.pop_perp


def _pooled(worker, tasks, jobs: int) -> list:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, tasks))
    return [worker(t) for t in tasks]


def _write_rows(out_dir: str, stem: str, rows, extra_note_keys=()) -> None:
    atomic_write_text(f"{out_dir}/{stem}.csv", _rows_csv(rows, extra_note_keys))
    payload = [r.to_dict() for r in rows]
    atomic_write_text(f"{out_dir}/{stem}.json",
                      json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_reproduce(which: str, cfg: RunConfig, out_dir: str, jobs: int) -> int:
    p = cfg.params
    if which == "fig3":
        result = analysis.cool(1.0, 1.0, p, t_final=cfg.t_final, samples=cfg.samples)
        atomic_write_text(f"{out_dir}/fig3.csv", _trajectory_csv(result.trajectory))
        print(f"fig3: fidelity {result.fidelity:.5f}, perp {result.pop_perp:.2e}, "
              f"reservoir {result.pop_reservoir:.2e}")
    elif which == "table1":
        ratios = (0.1, 1 / 3, 0.5, 2.0, 3.0, 10.0, 100.0)
        tasks = [(r, p.to_dict(), cfg.t_final) for r in ratios]
        points = sorted(_pooled(_table1_point, tasks, jobs))
        lines = [CSV_SCHEMA.replace("trajectory", "table1"),
                 "alpha_over_beta,fidelity,pop_perp"]
        lines += [f"{_fmt(r)},{_fmt(f)},{_fmt(pp)}" for r, f, pp in points]
        atomic_write_text(f"{out_dir}/table1.csv", "\n".join(lines) + "\n")
        records = [{"alpha_over_beta": r, "fidelity": f, "pop_perp": pp}
                   for r, f, pp in points]
        atomic_write_text(f"{out_dir}/table1.json",
                          json.dumps(records, indent=2, sort_keys=True) + "\n")
        print("\n".join(lines[1:]))
    elif which == "sensitivity":
        rows = analysis.sensitivity_suite(p)
        _write_rows(out_dir, "sensitivity", rows,
                    extra_note_keys=("fidelity_30us", "pop_perp_30us",
                                     "imbalance_mhz"))
        print(_rows_csv(rows, ("fidelity_30us", "pop_perp_30us", "imbalance_mhz")),
              end="")
    elif which == "impurity":
        chis = (0.0, 0.01, 0.1)
        tasks = [(chi, p.to_dict(), cfg.t_final) for chi in chis]
        points = sorted(_pooled(_impurity_point, tasks, jobs))
        lines = [CSV_SCHEMA.replace("trajectory", "impurity"),
                 "chi,fidelity,pop_perp"]
        lines += [f"{_fmt(c)},{_fmt(f)},{_fmt(pp)}" for c, f, pp in points]
        atomic_write_text(f"{out_dir}/impurity.csv", "\n".join(lines) + "\n")
        records = [{"chi": c, "fidelity": f, "pop_perp": pp} for c, f, pp in points]
        atomic_write_text(f"{out_dir}/impurity.json",
                          json.dumps(records, indent=2, sort_keys=True) + "\n")
        print("\n".join(lines[1:]))
    elif which == "appendixA":
        return cmd_lasercalc(out_dir)
    elif which == "levels":
        return cmd_levels(out_dir)
    elif which == "isotopes":
        table = analysis.isotope_table()
        text = json.dumps(table, indent=2, sort_keys=True) + "\n"
        atomic_write_text(f"{out_dir}/isotopes.json", text)
        print(text, end="")
    else:
        print(f"error: unknown reproduce target {which!r}", file=sys.stderr)
        return EXIT_CONFIG
    return 0


def _common_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # the shared flags are accepted both before and after the subcommand;
    # the after-subcommand copies only override when given explicitly
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", default=d if suppress else None,
                        help="flat key=value config file")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                        default=d if suppress else [],
                        help="override one config key (repeatable)")
    parser.add_argument("--out", default=d if suppress else "out",
                        help="output directory")
    parser.add_argument("--jobs", type=int, default=d if suppress else None,
                        help="worker processes for sweep commands")
    parser.add_argument("--svg", action="store_true",
                        default=d if suppress else False,
                        help="also emit SVG plots")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spincool",
                                     description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    _common_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_command(name: str) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name)
        _common_flags(cmd, suppress=True)
        return cmd

    add_command("simulate")
    balance = add_command("balance")
    balance.add_argument("--bracket", nargs=2, type=float, default=(50.0, 300.0),
                         metavar=("LO", "HI"))
    add_command("dressed")
    repro = add_command("reproduce")
    repro.add_argument("target", choices=("fig3", "table1", "sensitivity",
                                          "impurity", "appendixA", "levels",
                                          "isotopes"))
    add_command("lasercalc")
    add_command("levels")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_run_config(args.config, args.set)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "simulate":
            return cmd_simulate(cfg, args.out, args.svg)
        if args.command == "balance":
            return cmd_balance(cfg, args.out, tuple(args.bracket))
        if args.command == "dressed":
            return cmd_dressed(cfg)
        if args.command == "reproduce":
            jobs = args.jobs if args.jobs is not None else cfg.jobs
            return cmd_reproduce(args.target, cfg, args.out, jobs)
        if args.command == "lasercalc":
            return cmd_lasercalc(args.out)
        if args.command == "levels":
            return cmd_levels(args.out)
    except (IntegrationError, DensityMatrixError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except analysis.SaturationError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
