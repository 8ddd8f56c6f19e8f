"""Command line entry point: ``hvisolve sweep|solve|mesh``."""

import argparse
import dataclasses
import logging
import os
import sys

from ..contact.export import write_elements_csv, write_nodes_csv
from ..contact.law import no_contact_law
from .config import SOLVERS, BenchConfig, law_by_name, load_config
from .runner import CaseSetup, best_counts, categorize, generate_starts, run_case, run_sweep


def _config(args):
    cfg = load_config(args.config) if args.config else BenchConfig()
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.output is not None:
        changes["output_path"] = args.output
    if args.solvers:
        changes["solvers"] = args.solvers
    return dataclasses.replace(cfg, **changes) if changes else cfg


def _law(cfg, name):
    if name in (None, "none"):
        return no_contact_law()
    law = law_by_name(cfg, name)
    if law is None:
        known = ", ".join(l.name for l in cfg.laws)
        raise SystemExit(f"unknown law {name!r}; configured laws: {known}, none")
    return law


def cmd_sweep(args):
    cfg = _config(args)
    if args.workers:
        cfg = dataclasses.replace(cfg, workers=args.workers)
    results, path = run_sweep(cfg)
    failed = sum(1 for r in results if r.error)
    print(f"wrote {len(results)} rows to {path}" + (f" ({failed} failed)" if failed else ""))
    for solver, n in sorted(best_counts(results).items()):
        print(f"{solver}: best in {n} cases")
    return 0


def cmd_solve(args):
    cfg = _config(args)
    law = _law(cfg, args.law)
    setup = CaseSetup.build(cfg, law, args.load)
    starts = generate_starts(setup.energy, cfg.n_starts, cfg.seed)
    rows = []
    for solver in cfg.solvers:
        rows += run_case(setup, law.name, solver, starts, cfg.seed, cfg)
    categorize(rows)
    print(f"{'solver':<18} {'start':>5} {'energy':>22} {'time_s':>9} {'fevals':>8}  category")
    for r in rows:
        print(f"{r.solver_name:<18} {r.start_index:>5} {r.L_final:>22.12g} "
              f"{r.wall_time_s:>9.3f} {r.function_evals:>8}  {r.category.value}")
    if args.export:
        best = min((r for r in rows if r.u_final is not None), key=lambda r: r.L_final)
        _export(setup.energy.problem, best.u_final, args.export)
    return 0


def _export(problem, u, prefix):
    os.makedirs(os.path.dirname(os.path.abspath(prefix)), exist_ok=True)
    disp = None if u is None else problem.full_displacement(u)
    write_nodes_csv(prefix + "_nodes.csv", problem.mesh, disp)
    write_elements_csv(prefix + "_elements.csv", problem.mesh)
    print(f"wrote {prefix}_nodes.csv and {prefix}_elements.csv")


def cmd_mesh(args):
    cfg = _config(args)
    law = _law(cfg, args.law)
    setup = CaseSetup.build(cfg, law, args.load)
    u = None
    if args.solver:
        rows = run_case(setup, law.name, args.solver, [setup.u_linear], cfg.seed, cfg)
        u = rows[0].u_final
        print(f"{args.solver}: energy {rows[0].L_final:.12g}")
    out = cfg.output_path if args.output is None else args.output
    _export(setup.energy.problem, u, os.path.join(out, args.prefix))
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON benchmark configuration (defaults if omitted)")
    common.add_argument("--seed", type=int, help="override the configured seed")
    common.add_argument("--output", help="output directory")
    common.add_argument("--solvers", nargs="+", choices=SOLVERS, help="solvers to run")
    common.add_argument("-v", "--verbose", action="store_true", help="progress logging")

    p = argparse.ArgumentParser(prog="hvisolve", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", parents=[common], help="run the full load sweep, write CSV")
    s.add_argument("--workers", type=int, help="worker processes")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("solve", parents=[common], help="solve one (law, load) case")
    s.add_argument("--law", default="j7", help="law name from the config, or 'none'")
    s.add_argument("--load", type=float, default=10.0, help="load level L")
    s.add_argument("--export", metavar="PREFIX", help="write node/element CSV of the best run")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("mesh", parents=[common], help="export mesh and displacement CSV")
    s.add_argument("--law", default="none", help="law name from the config, or 'none'")
    s.add_argument("--load", type=float, default=0.0, help="load level L")
    s.add_argument("--solver", choices=SOLVERS, help="solve first and export the displacement")
    s.add_argument("--prefix", default="mesh", help="file name prefix")
    s.set_defaults(func=cmd_mesh)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
