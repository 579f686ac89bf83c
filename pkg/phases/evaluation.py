import logging

from utils.finite_field import FieldError
from utils.codebook import CodebookError
from utils.codebook_io import read_codebook, write_report_csv, write_report_json
from utils.run_config import ConfigError, RunConfig
from utils.welch import EvalReport, evaluate, ratio_error


def format_report(report: EvalReport) -> str:
    lines = [
        f"{report.construction} q={report.q}: N={report.N} K={report.K} ({report.mode}, {report.pairs} pairs)",
        f"  I_max = {report.i_max:.12f}",
        f"  I_w   = {report.i_w:.12f}",
        f"  ratio = {report.ratio:.12f}",
        "  spectrum: " + ", ".join(f"{a:.9f} x{c}" for a, c in report.spectrum),
    ]
    if report.degenerate:
        lines.append("  degenerate: q=2")
    if report.violations:
        lines.append(f"  SPECTRUM VIOLATION: {report.violations} amplitude(s) outside "
                     + ", ".join(f"{a:.9f}" for a in report.allowed))
    return "\n".join(lines)


def run_evaluation(run: RunConfig) -> int:
    if not run.codebook_path:
        raise ConfigError("eval needs a codebook file")

    settings = run.settings
    try:
        cb = read_codebook(run.codebook_path, guard=run.guard)
        report = evaluate(
            cb,
            mode=run.mode,
            samples=settings.default_samples if run.samples is None else run.samples,
            seed=settings.default_seed if run.seed is None else run.seed,
            workers=settings.eval_workers if run.workers is None else run.workers,
            block_rows=settings.eval_block_rows,
            exhaustive_max_n=settings.exhaustive_max_n,
            allow_large=run.force,
            tolerance=settings.tolerance,
            progress=settings.show_progress,
        )
    except OSError as e:
        logging.error(f"Could not read {run.codebook_path}: {e}")
        return 2
    except (FieldError, CodebookError) as e:
        logging.error(f"Could not evaluate {run.codebook_path}: {e}")
        return 2

    print(format_report(report))
    err = ratio_error(report)
    if err is not None:
        logging.info(f"|ratio - closed form| = {err:.3e}")

    if run.out:
        if run.fmt == "csv":
            write_report_csv([report], run.out)
        else:
            write_report_json(report, run.out)
        print(f"report -> {run.out}")

    if not report.passed:
        logging.error(f"{report.violations} amplitude(s) outside the predicted spectrum")
        return 1
    return 0
