import os
import logging

from utils.finite_field import FieldError, build_field
from utils.codebook import CodebookError, build_codebook
from utils.codebook_io import write_codebook
from utils.run_config import ConfigError, RunConfig


def default_codebook_path(run: RunConfig) -> str:
    return os.path.join(run.settings.output_dir, f"{run.construction.lower()}_q{run.q}.json")


def run_generate(run: RunConfig) -> int:
    if run.p is None:
        raise ConfigError("gen needs --q or --p/--m")

    fixed_j = run.settings.default_fixed_j if run.fixed_j is None else run.fixed_j
    fixed_b = run.settings.default_fixed_b if run.fixed_b is None else run.fixed_b

    try:
        spec = build_field(run.p, run.m, modulus=run.modulus, guard=run.guard)
        cb = build_codebook(
            spec, run.construction, fixed_j=fixed_j, fixed_b=fixed_b,
            force=run.force, max_entries=run.max_entries,
        )
    except (FieldError, CodebookError) as e:
        logging.error(f"Could not build {run.construction} for q={run.q}: {e}")
        return 2

    path = write_codebook(cb, run.out or default_codebook_path(run))
    if cb.degenerate:
        logging.warning("q=2 codebooks are degenerate (I_max = 1)")
    print(f"{cb.construction} q={cb.q}: N={cb.N} K={cb.K} -> {path}")
    return 0
