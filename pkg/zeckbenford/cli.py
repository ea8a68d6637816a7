"""Command-line interface for zeckbenford."""

import argparse
import csv
import io
import json
import logging
import os
import sys
from os import path

from .benford import SetPredicate, density_qsn, sequence_benford_report
from .command_types import COMMAND_TYPES
from .const import (
    BUILTIN_SPECS,
    DEFAULT_CHI_SQUARE_BUCKETS,
    DEFAULT_ROOT_TOLERANCE,
    ENV_BUDGET,
    METHOD_AUTOMATON,
    METHOD_ENUMERATION,
    METHOD_FORMULA,
    METHOD_RECURRENCE,
    OUTPUT_FORMATS,
)
from .controller import ZeckController
from .counting import (
    bijection_oracle,
    block_position_census,
    block_position_count,
    coefficient_distribution,
    conditional_distribution,
    ensure_h_values,
    hn_gn_ratio,
    is_interior,
)
from .decomposition import decompose, is_legal, is_super_legal, leading_zeros, segment_blocks
from .errors import InvalidConfig, ZeckError
from .helper import format_attribute, format_value
from .jsonparser import CONFIG_VALS, fill_defaults, load_config
from .recurrence import validate_spec
from .stochastic import (
    PLAN_EXACT,
    PLAN_SAMPLED,
    chi_square_self_test,
    concentration,
    estimate_summand_constant,
    summand_digit_report,
    xy_stats,
)

_LOGGER = logging.getLogger(__name__)

MANIFEST_FILE = path.join(path.dirname(__file__), "manifest.json")
DEFAULT_ROOT_TABLE = 60


class UsageError(Exception):
    """Invalid combination of flags."""


def _version() -> str:
    with open(MANIFEST_FILE, "r", encoding="utf-8") as f:
        return json.load(f)["version"]


def _int_list(text: str) -> list:
    try:
        return [int(item) for item in text.replace(" ", "").split(",") if item]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from err


def _positive_int_list(text: str) -> list:
    ret = _int_list(text)
    if not ret or min(ret) < 1:
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")

    return ret


# ---------------------------
#   build_parser
# ---------------------------
def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with one subcommand per command type."""
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("spec")
    group.add_argument("--coeffs", type=_int_list, help="coefficients c_1..c_L")
    group.add_argument("--initial", type=_int_list, help="initial terms G_1..G_L")
    group.add_argument("--canonical", action="store_true", default=None, help="use canonical initial terms")
    group.add_argument("--builtin", choices=sorted(BUILTIN_SPECS), help="use a built-in spec")
    group.add_argument("--config", help="JSON run configuration")

    group = common.add_argument_group("run")
    group.add_argument("--n", type=_positive_int_list, help="n, or a comma-separated ladder")
    group.add_argument("--samples", type=int, help="number of samples")
    group.add_argument("--seed", type=int, help="sampling seed")
    group.add_argument("--base", type=int, help="digit base")
    group.add_argument("--digit", type=int, help="leading digit")
    group.add_argument("--significand", type=float, help="significand bound s")
    group.add_argument("--epsilon", type=float, help="concentration band")
    group.add_argument("--set", choices=["even", "leading-digit", "significand", "residue", "file", "all"])
    group.add_argument("--modulus", type=int, help="modulus for --set residue")
    group.add_argument("--classes", type=_int_list, help="residue classes for --set residue")
    group.add_argument("--set-file", dest="set_file", help="file of indices for --set file")
    group.add_argument("--method", choices=[METHOD_RECURRENCE, METHOD_ENUMERATION, METHOD_FORMULA, METHOD_AUTOMATON])
    group.add_argument("--format", choices=OUTPUT_FORMATS)
    group.add_argument("--workers", type=int, help="worker processes")
    group.add_argument("--budget", type=int, help="enumeration budget")
    group.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="zeckbenford", description="Generalized Zeckendorf decompositions and Benford statistics.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for key, description in COMMAND_TYPES.items():
        sub = subparsers.add_parser(key, parents=[common], help=description.name)
        if key == "decompose":
            sub.add_argument("value", help="non-negative integer")
            sub.add_argument("--width", type=int, help="fixed number of digits")
        elif key in ("check", "blocks"):
            sub.add_argument("string", type=_int_list, help="comma-separated digits a_1..a_n")
            if key == "check":
                sub.add_argument("--mode", choices=["legal", "super-legal"], default="legal")
            else:
                sub.add_argument("--zero-blocks", action="store_true", help="padding zeros as length-1 blocks")
        elif key == "root":
            sub.add_argument("--tolerance", type=float, default=DEFAULT_ROOT_TOLERANCE)
        elif key == "ratio":
            sub.add_argument("--start", type=int, default=1)
        elif key == "block-counts":
            for name in ("j", "k", "ell", "r"):
                sub.add_argument(f"--{name}", type=int)
        elif key == "conditional":
            for name in ("i", "k", "j", "ell"):
                sub.add_argument(f"--{name}", type=int, required=True)
        elif key == "benford":
            sub.add_argument("--mode", choices=["sequence", "summand"], default="sequence")
        elif key == "selftest":
            sub.add_argument("--buckets", type=int, default=DEFAULT_CHI_SQUARE_BUCKETS)

    return parser


# ---------------------------
#   resolve_config
# ---------------------------
def resolve_config(args) -> dict:
    """Merge defaults, config file, environment and flags, in that order."""
    config = fill_defaults({}, CONFIG_VALS)
    if args.config:
        config = load_config(args.config, config)

    if env := os.environ.get(ENV_BUDGET):
        try:
            config["budget"] = int(env)
        except ValueError:
            _LOGGER.warning("Ignoring non-integer %s=%s", ENV_BUDGET, env)

    for val in CONFIG_VALS:
        flag = getattr(args, val["name"], None)
        if flag is not None:
            config[val["name"]] = flag

    if args.builtin:
        coeffs, initial = BUILTIN_SPECS[args.builtin]
        config["coeffs"] = list(coeffs)
        config["initial"] = None if initial is None else list(initial)

    return config


def _spec(config):
    if not config["coeffs"]:
        raise UsageError("--coeffs is required")

    if config["canonical"] and config["initial"]:
        raise UsageError("--initial and --canonical are exclusive")

    return validate_spec(config["coeffs"], config["initial"])


def _single_n(config, command, default=None):
    ns = config["n"] or ([default] if default is not None else None)
    if not ns:
        raise UsageError(f"--n is required for {command}")
    if len(ns) > 1:
        raise UsageError(f"--n takes one value for {command}")

    return ns[0]


def _predicate(config) -> SetPredicate:
    kind = config["set"]
    if kind in (None, "all"):
        return SetPredicate.universal()

    if kind == "even":
        return SetPredicate.even()

    if kind == "leading-digit":
        return SetPredicate.leading_digit(config["base"], config["digit"])

    if kind == "significand":
        if config["significand"] is None:
            raise UsageError("--significand is required for --set significand")
        return SetPredicate.significand_at_most(config["base"], config["significand"])

    if kind == "residue":
        if config["modulus"] is None or not config["classes"]:
            raise UsageError("--modulus and --classes are required for --set residue")
        return SetPredicate.residue(config["modulus"], config["classes"])

    if not config["set_file"]:
        raise UsageError("--set-file is required for --set file")
    try:
        with open(config["set_file"], "r", encoding="utf-8") as f:
            indices = [int(item) for item in f.read().replace(",", " ").split()]
    except (OSError, ValueError) as err:
        raise InvalidConfig(f"{config['set_file']}: {err}") from err

    return SetPredicate.explicit_index_set(indices)


def _require_seed(config, command):
    if config["seed"] is None:
        raise UsageError(f"--seed is required for sampled command {command}")
    if not config["samples"]:
        raise UsageError(f"--samples is required for sampled command {command}")


# ---------------------------
#   commands
# ---------------------------
def cmd_sequence(controller, config, args):
    n = _single_n(config, args.command)
    table = controller.get_sequence(n)
    payload = {"spec": controller.spec.as_dict(), "n": n, "terms": [str(g) for g in table.g_values]}
    rows = [("index", "value")] + [(i, str(g)) for i, g in enumerate(table.g_values, start=1)]
    return payload, rows


def cmd_decompose(controller, config, args):
    try:
        value = int(args.value)
    except ValueError as err:
        raise UsageError(f"value: expected an integer, got {args.value!r}") from err

    width = args.width
    size = max(width or 0, controller.spec.order, 2)
    table = controller.get_sequence(size)
    while table.g(len(table) + 1) <= value and width is None:
        size *= 2
        table = controller.get_sequence(size)

    if width is None:
        width = len(table)
    payload = decompose(value, table, width=width).as_dict()
    payload["spec"] = controller.spec.as_dict()
    return payload, None


def cmd_check(controller, config, args):
    legal = is_legal(args.string, controller.spec)
    super_legal = is_super_legal(args.string, controller.spec)
    payload = {
        "coeffs": args.string,
        "mode": args.mode,
        "legal": legal,
        "super_legal": super_legal,
        "result": super_legal if args.mode == "super-legal" else legal,
    }
    return payload, None


def cmd_blocks(controller, config, args):
    blocks = segment_blocks(args.string, controller.spec, zero_blocks=args.zero_blocks)
    payload = {
        "coeffs": args.string,
        "blocks": [list(block.digits) for block in blocks],
        "block_details": [block.as_dict() for block in blocks],
        "leading_zeros": leading_zeros(blocks, len(args.string)),
    }
    return payload, None


def cmd_count_superlegal(controller, config, args):
    n = _single_n(config, args.command)
    table = controller.get_superlegal(n, config["method"] or METHOD_RECURRENCE)
    payload = table.as_dict()
    payload["h_values"] = payload["h_values"][:n]
    rows = [("n", "h")] + [(i, str(h)) for i, h in enumerate(table.h_values[:n], start=1)]
    return payload, rows


def cmd_root(controller, config, args):
    n = _single_n(config, args.command, DEFAULT_ROOT_TABLE)
    fit, profile, burn_in = controller.get_binet(n, args.tolerance)
    payload = fit.as_dict()
    payload.update({"n": n, "ratio_profile": list(profile), "ratio_burn_in": burn_in})
    return payload, None


def cmd_ratio(controller, config, args):
    n = _single_n(config, args.command)
    table = controller.get_table_with_h(n, config["method"] or METHOD_RECURRENCE)
    report = hn_gn_ratio(table, (args.start, n))
    rows = [("n", "ratio", "delta")]
    for pos, (index, value) in enumerate(zip(report.ns, report.floats)):
        rows.append((index, value, report.deltas[pos - 1] if pos else ""))

    return report.as_dict(), rows


def cmd_distribution(controller, config, args):
    n = _single_n(config, args.command)
    method = config["method"] or METHOD_FORMULA
    dist = coefficient_distribution(
        controller.get_sequence(n), n, method, budget=config["budget"], workers=controller.workers
    )
    rows = [("n", "j", "k", "numerator", "denominator", "float_value")]
    rows += [(n_, j, k, str(num), str(den), fl) for n_, j, k, num, den, fl in dist.rows()]
    return dist.as_dict(), rows


def cmd_block_counts(controller, config, args):
    n = _single_n(config, args.command)
    spec = controller.spec
    table = controller.get_sequence(n)
    if None not in (args.j, args.k, args.ell, args.r):
        payload = {
            method: block_position_count(
                table, n, args.j, args.k, args.ell, args.r, method,
                budget=config["budget"], workers=controller.workers,
            ).as_dict()
            for method in (config["method"] or METHOD_FORMULA, METHOD_ENUMERATION)
        }
        return payload, None

    table = ensure_h_values(table, n)
    census = block_position_census(spec, n, budget=config["budget"], workers=controller.workers)
    rows = [("n", "j", "k", "ell", "r", "formula", "enumeration")]
    mismatches = 0
    for j in range(1, n + 1):
        for ell in range(1, spec.order + 1):
            for r in range(1, ell + 1):
                if not is_interior(spec, n, j, ell, r):
                    continue
                for k in range(spec.max_coeff + 1):
                    formula = block_position_count(table, n, j, k, ell, r, METHOD_FORMULA).count
                    oracle = census[(j, k, ell, r)]
                    mismatches += formula != oracle
                    rows.append((n, j, k, ell, r, str(formula), str(oracle)))

    payload = {"n": n, "spec": spec.as_dict(), "compared": len(rows) - 1, "mismatches": mismatches}
    return payload, rows


def cmd_conditional(controller, config, args):
    n = _single_n(config, args.command)
    result = conditional_distribution(
        controller.get_sequence(n), n, args.i, args.k, args.j, args.ell,
        config["method"] or METHOD_AUTOMATON, budget=config["budget"], workers=controller.workers,
    )
    return result.as_dict(), None


def cmd_density(controller, config, args):
    n = _single_n(config, args.command)
    pred = _predicate(config)
    payload = density_qsn(pred, controller.get_sequence(n), n).as_dict()
    payload["predicate"] = pred.as_dict()
    return payload, None


def cmd_benford(controller, config, args):
    n = _single_n(config, args.command)
    table = controller.get_sequence(n)
    if args.mode == "summand":
        _require_seed(config, args.command)
        histogram = summand_digit_report(
            table, n, config["base"], config["seed"], config["samples"], controller.workers
        )
        payload = {"n": n, "seed": config["seed"], "count": config["samples"], "histogram": histogram.as_dict()}
    else:
        report = sequence_benford_report(table, n, config["base"])
        histogram = report.histogram
        payload = report.as_dict()

    rows = [("digit", "frequency", "target")] + histogram.rows()
    return payload, rows


def cmd_stats(controller, config, args):
    ladder = config["n"]
    if not ladder:
        raise UsageError("--n is required for stats")

    plan = PLAN_EXACT
    if config["samples"] is not None:
        _require_seed(config, args.command)
        plan = PLAN_SAMPLED

    table = controller.get_sequence(max(ladder))
    pred = _predicate(config)
    plan_args = (plan, config["seed"], config["samples"], config["budget"], controller.workers)
    if len(ladder) > 1:
        slope, reports = estimate_summand_constant(table, ladder, *plan_args, pred=pred)
    else:
        slope, reports = None, [xy_stats(table, ladder[0], pred, *plan_args)]

    payload = {"predicate": pred.as_dict(), "reports": [report.as_dict() for report in reports]}
    if slope is not None:
        payload["c_estimate"] = slope

    return payload, None


def cmd_concentration(controller, config, args):
    _require_seed(config, args.command)
    if config["epsilon"] is None:
        raise UsageError("--epsilon is required for concentration")
    if not config["n"]:
        raise UsageError("--n is required for concentration")

    report = concentration(
        controller.get_sequence(max(config["n"])), config["n"], _predicate(config), config["epsilon"],
        config["seed"], config["samples"], workers=controller.workers,
    )
    rows = [("n", "fraction", "valid", "excluded_zero")]
    rows += [(row["n"], row["fraction"], row["valid"], row["excluded_zero"]) for row in report.rows]
    return report.as_dict(), rows


def cmd_oracle(controller, config, args):
    n = _single_n(config, args.command)
    report = bijection_oracle(controller.spec, n, budget=config["budget"], workers=controller.workers)
    return report.as_dict(), None


def cmd_selftest(controller, config, args):
    _require_seed(config, args.command)
    n = _single_n(config, args.command)
    report = chi_square_self_test(
        controller.get_sequence(n), n, config["seed"], config["samples"], args.buckets, controller.workers
    )
    return report.as_dict(), None


COMMANDS = {
    "sequence": cmd_sequence,
    "decompose": cmd_decompose,
    "check": cmd_check,
    "blocks": cmd_blocks,
    "count-superlegal": cmd_count_superlegal,
    "root": cmd_root,
    "ratio": cmd_ratio,
    "distribution": cmd_distribution,
    "block-counts": cmd_block_counts,
    "conditional": cmd_conditional,
    "density": cmd_density,
    "benford": cmd_benford,
    "stats": cmd_stats,
    "concentration": cmd_concentration,
    "oracle": cmd_oracle,
    "selftest": cmd_selftest,
}


# ---------------------------
#   render
# ---------------------------
def render(payload, rows=None, output_format="json") -> str:
    """Serialize a command result; identical input gives identical bytes."""
    if output_format == "csv" and rows is not None:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        for row in rows:
            writer.writerow(format_value(list(row)))
        return buffer.getvalue()

    payload = format_value(payload)
    if output_format == "pretty" and isinstance(payload, dict):
        return "".join(f"{format_attribute(key)}: {json.dumps(val, sort_keys=True)}\n" for key, val in sorted(payload.items()))

    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _setup_logging(verbose: int):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG

    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


# ---------------------------
#   run
# ---------------------------
def run(argv=None, stdout=None) -> int:
    """Run one command; return the exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)

    _setup_logging(args.verbose)
    description = COMMAND_TYPES[args.command]

    try:
        config = resolve_config(args)
        if config["format"] == "csv" and "csv" not in description.formats:
            raise UsageError(f"--format csv is not available for {args.command}")
        if description.needs_seed:
            _require_seed(config, args.command)
        controller = ZeckController(_spec(config), max(config["workers"] or 1, 1), config["budget"])
        payload, rows = COMMANDS[args.command](controller, config, args)
    except (UsageError, InvalidConfig) as err:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {err}", file=sys.stderr)
        return 2
    except ZeckError as err:
        _LOGGER.error("%s failed: %s", args.command, err)
        stdout.write(json.dumps(err.as_dict(), sort_keys=True) + "\n")
        return 1

    stdout.write(render(payload, rows, config["format"]))
    return 0


def main():
    """Console entry point."""
    sys.exit(run())
