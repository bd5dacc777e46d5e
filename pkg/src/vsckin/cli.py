"""Command-line interface: ``vsckin run`` and ``vsckin validate``.

Progress and diagnostics go to standard error; results go to files in
the output directory (CSV tables plus a JSON manifest that fully
reconstructs the run).  Flags override the corresponding config values.
"""

import argparse
import dataclasses
import sys

from .config import RunPlan, load_config
from .errors import ConfigError, ParameterError
from .runner import execute_plan, write_outputs


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vsckin",
        description=("Ensemble kinetics of a disordered molecular ensemble "
                     "collectively coupled to a cavity mode"))
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a configured sweep")
    run_p.add_argument("--config", required=True, help="TOML run file")
    run_p.add_argument("--out-dir", default=None,
                       help="output directory (overrides run.out_dir)")
    run_p.add_argument("--realizations", type=int, default=None,
                       help="disorder realizations per sweep point")
    run_p.add_argument("--seed", type=int, default=None, help="master seed")
    run_p.add_argument("--threads", type=int, default=None,
                       help="worker threads (output is thread-count invariant)")
    run_p.add_argument("--dump-states", action="store_true", default=None,
                       help="write per-state trajectory CSVs (realization 0)")
    run_p.add_argument("--no-bare-reference", action="store_true", default=None,
                       help="skip the uncoupled reference simulations")

    val_p = sub.add_parser("validate",
                           help="check a config and report the resolved plan")
    val_p.add_argument("--config", required=True, help="TOML run file")
    return parser


def apply_overrides(plan: RunPlan, args: argparse.Namespace) -> RunPlan:
    updates = {}
    if args.out_dir is not None:
        updates["out_dir"] = args.out_dir
    if args.realizations is not None:
        updates["realizations"] = args.realizations
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.threads is not None:
        updates["threads"] = args.threads
    if args.dump_states:
        updates["dump_states"] = True
    if args.no_bare_reference:
        updates["bare_reference"] = False
    return dataclasses.replace(plan, **updates) if updates else plan


def _plan_report(plan: RunPlan) -> str:
    e, r = plan.ensemble, plan.reaction
    lines = [
        "[ensemble]",
        f"  n_molecules         = {list(plan.n_list)}",
        f"  mean_vib_freq       = {e.mean_vib_freq:g} cm^-1",
        f"  disorder_sigma      = {e.disorder_sigma:g} cm^-1",
        f"  detuning            = {list(plan.detuning_list)} cm^-1",
        f"  collective_coupling = {list(plan.coupling_list)} cm^-1",
        "[reaction]",
        f"  e_reactant = {r.e_reactant:g} cm^-1, e_product = {r.e_product:g} cm^-1",
        f"  lambda_r = {r.lambda_r:g}, lambda_p = {r.lambda_p:g}",
        f"  j_rp = {r.j_rp:g} cm^-1, lambda_s = {r.lambda_s:g} cm^-1",
        f"  temperature = {list(plan.temperature_list)} K",
        f"  kappa = {list(plan.kappa_list)} ps^-1, gamma = {r.gamma:g} ps^-1",
        f"  eta = {r.eta:g}, omega_cut = {r.omega_cut:g} cm^-1",
        "[run]",
        f"  realizations = {plan.realizations}, seed = {plan.seed}, "
        f"threads = {plan.threads}",
        f"  out_dir = {plan.out_dir}",
        f"  bare_reference = {plan.bare_reference}, dump_states = "
        f"{plan.dump_states}, dump_rate_tables = {plan.dump_rate_tables}",
        f"  activation fits enabled = {plan.eyring_enabled}",
        f"sweep points: {plan.n_points}; estimated work units: "
        f"{plan.work_units}",
    ]
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        plan = load_config(args.config)
        if args.command == "run":
            plan = apply_overrides(plan, args)
    except (ConfigError, ParameterError) as exc:
        print(f"vsckin: config error: {exc}", file=sys.stderr)
        return 2

    if args.command == "validate":
        print(_plan_report(plan))
        return 0

    def progress(msg: str):
        print(f"vsckin: {msg}", file=sys.stderr, flush=True)

    outputs = execute_plan(plan, progress=progress)
    paths = write_outputs(outputs, plan.out_dir)
    progress(f"wrote {paths['rates']} ({len(outputs.point_data)} points, "
             f"{outputs.elapsed_s:.1f} s)")
    if outputs.failures:
        progress(f"{len(outputs.failures)} realization(s) failed; "
                 "see run_manifest.json")
        return 1
    return 0
