import sys
import logging

import pandas as pd
import tqdm

from utils.finite_field import FieldError, build_field
from utils.local_ring import gauss_sum_parameters, gauss_sum_ring_closed, gauss_sum_ring_oracle
from utils.run_config import ConfigError, RunConfig

COLUMNS = ["j", "a", "b", "c", "closed_re", "closed_im", "oracle_re", "oracle_im", "diff"]


def gauss_table(spec, progress: bool = False) -> pd.DataFrame:
    """Closed form and direct sum of G_R for every (j, a, b, c)."""
    total = (spec.q - 1) * spec.q ** 3
    rows = []
    for j, a, b, c in tqdm.tqdm(gauss_sum_parameters(spec), total=total,
                                desc=f"G_R q={spec.q}", unit="sum", disable=not progress):
        closed = gauss_sum_ring_closed(spec, j, a, b, c)
        oracle = gauss_sum_ring_oracle(spec, j, a, b, c)
        rows.append([j.j, a.encoding, b.encoding, c.encoding,
                     closed.real, closed.imag, oracle.real, oracle.imag, abs(closed - oracle)])
    return pd.DataFrame(rows, columns=COLUMNS)


def run_gauss(run: RunConfig) -> int:
    if run.p is None:
        raise ConfigError("gauss needs --q or --p/--m")
    try:
        spec = build_field(run.p, run.m, modulus=run.modulus, guard=run.guard)
    except FieldError as e:
        logging.error(f"Could not build GF({run.q}): {e}")
        return 2

    table = gauss_table(spec, progress=run.settings.show_progress)
    limit = run.settings.tolerance * spec.q * (spec.q - 1)
    worst = float(table["diff"].max())

    if run.out:
        table.to_csv(run.out, index=False, float_format="%.12g")
        print(f"{len(table)} rows -> {run.out}")
    else:
        table.to_csv(sys.stdout, index=False, float_format="%.12g")
    print(f"max |closed - oracle| = {worst:.3e} (limit {limit:.3e})")

    if worst >= limit:
        logging.error(f"G_R closed form disagrees with direct summation for q={spec.q}")
        return 1
    return 0
