import sys
import argparse
import logging
logging.basicConfig(
    level=logging.INFO, # --verbose switches to DEBUG
    format="%(asctime)s - %(levelname)s - %(message)s",
    datefmt="%H:%M:%S"
)

from utils.finite_field import FieldError
from utils.codebook import CodebookError
from utils.run_config import (
    ConfigError,
    RunConfig,
    init_settings_from_config,
    load_config_module,
    parse_modulus,
    parse_q_list,
    resolve_field_params,
)
from phases.generate import run_generate
from phases.evaluation import run_evaluation
from phases.gauss_table import run_gauss
from phases.ratio_table import run_table
from phases.selftest import run_selftest

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

PHASES = {
    "gen": run_generate,
    "eval": run_evaluation,
    "gauss": run_gauss,
    "table": run_table,
    "selftest": run_selftest,
}


def _add_field_args(parser):
    parser.add_argument("--q", type=int, help="field size, must be a prime power")
    parser.add_argument("--p", type=int, help="characteristic")
    parser.add_argument("--m", type=int, help="extension degree")
    parser.add_argument("--modulus", help="comma-separated modulus coefficients, ascending degree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Codebooks from characters of F_q + uF_q and their Welch-bound evaluation")
    parser.add_argument(
        "-c", "--config", default="default_config",
        help="name of the config module under config/")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="build a codebook and write it as JSON")
    _add_field_args(gen)
    gen.add_argument("--construction", choices=["c1", "c2", "c0"], default="c1")
    gen.add_argument("--fixed-j", type=int, help="fixed multiplicative character of C1")
    gen.add_argument("--fixed-b", type=int, help="encoding of the fixed additive character of C2")
    gen.add_argument("--out", help="output path")
    gen.add_argument("--force", action="store_true", help="override the size guards")

    ev = sub.add_parser("eval", help="evaluate a codebook file against the Welch bound")
    ev.add_argument("codebook", help="codebook JSON file")
    ev.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    ev.add_argument("--samples", type=int, help="pair count in sampled mode")
    ev.add_argument("--seed", type=int)
    ev.add_argument("--workers", type=int)
    ev.add_argument("--out", help="write the report here")
    ev.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
    ev.add_argument("--force", action="store_true", help="allow exhaustive evaluation of large codebooks")

    gauss = sub.add_parser("gauss", help="tabulate G_R closed form against direct summation")
    _add_field_args(gauss)
    gauss.add_argument("--out", help="CSV output path (stdout if omitted)")
    gauss.add_argument("--force", action="store_true", help="override the size guard")

    table = sub.add_parser("table", help="Welch-ratio table over a list of q")
    table.add_argument("--q-list", help="comma-separated prime powers")
    table.add_argument("--q-max", type=int, help="brute-force rows up to this q, formula-only above")
    table.add_argument("--format", dest="fmt", choices=["csv", "markdown"], default="csv")
    table.add_argument("--out", help="output path (stdout if omitted)")

    selftest = sub.add_parser("selftest", help="run the verification suites")
    _add_field_args(selftest)
    selftest.add_argument("--q-max", type=int, help="largest q to test")
    selftest.add_argument("--force", action="store_true", help="override the size guard")
    return parser


def make_run_config(args, settings) -> RunConfig:
    p, m = resolve_field_params(getattr(args, "q", None), getattr(args, "p", None), getattr(args, "m", None))
    modulus = parse_modulus(getattr(args, "modulus", None))
    if modulus is not None and p is None:
        raise ConfigError("--modulus needs --q or --p/--m")
    construction = getattr(args, "construction", "c1").upper()
    return RunConfig(
        command=args.command,
        settings=settings,
        p=p,
        m=m,
        modulus=modulus,
        construction=construction,
        fixed_j=getattr(args, "fixed_j", None),
        fixed_b=getattr(args, "fixed_b", None),
        mode=getattr(args, "mode", "exhaustive"),
        samples=getattr(args, "samples", None),
        seed=getattr(args, "seed", None),
        workers=getattr(args, "workers", None),
        out=getattr(args, "out", None),
        fmt=getattr(args, "fmt", "json"),
        force=getattr(args, "force", False),
        q_max=getattr(args, "q_max", None),
        q_list=parse_q_list(getattr(args, "q_list", None)),
        codebook_path=getattr(args, "codebook", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        config_module = load_config_module(args.config)
        settings = init_settings_from_config(config_module)
        run = make_run_config(args, settings)
        logging.debug(f"Running '{run.command}' with q={run.q}")
        return PHASES[run.command](run)
    except ConfigError as e:
        logging.critical(f"{e}")
        return EXIT_USAGE
    except (FieldError, CodebookError) as e:
        logging.error(f"{e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
