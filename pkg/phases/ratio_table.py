import sys
import logging
from typing import Dict, List

import pandas as pd
import tqdm

from utils.finite_field import FieldError, build_field, factor_prime_power, resolve_size_guard
from utils.codebook import CodebookError, build_codebook
from utils.run_config import ConfigError, RunConfig
from utils.welch import RATIO_FORMULAS, codebook_size, evaluate, welch_bound

COLUMNS = ["construction", "q", "N", "K", "i_max", "i_w", "ratio", "ratio_formula", "status"]


def formula_row(construction: str, q: int) -> Dict:
    N, K = codebook_size(construction, q)
    i_w = welch_bound(N, K)
    i_max = 1.0 / (q - 1)
    ratio = RATIO_FORMULAS[construction](q)
    return {"construction": construction, "q": q, "N": N, "K": K, "i_max": i_max,
            "i_w": i_w, "ratio": i_max / i_w, "ratio_formula": ratio, "status": "formula-only"}


def ratio_table(run: RunConfig, q_list: List[int], q_max: int) -> pd.DataFrame:
    settings = run.settings
    rows = []
    for q in tqdm.tqdm(q_list, desc="table", unit="q", disable=not settings.show_progress):
        p, m = factor_prime_power(q)
        spec = None
        if q <= q_max and q <= resolve_size_guard(run.guard):
            spec = build_field(p, m, guard=run.guard)
        elif q <= q_max:
            logging.info(f"q={q} exceeds the size guard, row is formula-only")
        for construction in ("C1", "C2"):
            row = formula_row(construction, q)
            if spec is not None:
                cb = build_codebook(spec, construction, fixed_j=settings.default_fixed_j,
                                    fixed_b=settings.default_fixed_b, force=True)
                report = evaluate(cb, workers=settings.eval_workers,
                                  block_rows=settings.eval_block_rows, allow_large=True,
                                  tolerance=settings.tolerance)
                ok = (report.passed
                      and abs(report.ratio - row["ratio_formula"]) < settings.tolerance)
                row.update(i_max=report.i_max, i_w=report.i_w, ratio=report.ratio,
                           status="brute-force" if ok else "MISMATCH")
            rows.append(row)
    return pd.DataFrame(rows, columns=COLUMNS)


def to_markdown(table: pd.DataFrame) -> str:
    header = "| " + " | ".join(table.columns) + " |"
    rule = "|" + "|".join("---" for _ in table.columns) + "|"
    body = []
    for record in table.itertuples(index=False):
        cells = [f"{v:.9f}" if isinstance(v, float) else str(v) for v in record]
        body.append("| " + " | ".join(cells) + " |")
    return "\n".join([header, rule] + body) + "\n"


def run_table(run: RunConfig) -> int:
    q_list = run.q_list or run.settings.table_q_list
    q_max = run.settings.table_brute_force_q_max if run.q_max is None else run.q_max
    try:
        table = ratio_table(run, sorted(set(q_list)), q_max)
    except FieldError as e:
        raise ConfigError(str(e))
    except CodebookError as e:
        logging.error(f"Table construction failed: {e}")
        return 2

    text = to_markdown(table) if run.fmt == "markdown" else table.to_csv(index=False, float_format="%.12g")
    if run.out:
        with open(run.out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        print(f"{len(table)} rows -> {run.out}")
    else:
        sys.stdout.write(text)

    if (table["status"] == "MISMATCH").any():
        logging.error("Brute-forced ratio disagrees with the closed form")
        return 1
    return 0
