#!/usr/bin/env python3
"""
Codebook and report files.

Codebook JSON: {construction, p, m, modulus, g, fixed_param, N, K, n_root, rows};
row entries are exponents e in [0, n_root), the complex entry being
exp(2 pi i e / n_root) / sqrt(K).
"""
import os
import csv
import json
import logging
from typing import Iterable, Optional

import numpy as np

from utils.finite_field import field_from_json
from utils.codebook import (
    CONSTRUCTIONS,
    Codebook,
    CodebookError,
    construction_params,
    coordinate_order,
)
from utils.welch import CSV_HEADER, EvalReport

REQUIRED_KEYS = ("construction", "p", "m", "modulus", "g", "fixed_param", "N", "K", "n_root", "rows")


def codebook_to_json(cb: Codebook) -> dict:
    spec = cb.spec.to_json()
    return {
        "construction": cb.construction,
        "p": spec["p"],
        "m": spec["m"],
        "modulus": spec["modulus"],
        "g": spec["g"],
        "fixed_param": cb.fixed_param,
        "N": cb.N,
        "K": cb.K,
        "n_root": cb.n_root,
        "rows": cb.entries.tolist(),
    }


def write_codebook(cb: Codebook, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(codebook_to_json(cb), f, separators=(",", ":"))
        f.write("\n")
    logging.debug(f"Codebook written to {path}")
    return path


def codebook_from_json(data: dict, guard: Optional[int] = None) -> Codebook:
    missing = [k for k in REQUIRED_KEYS if k not in data]
    if missing:
        raise CodebookError(f"codebook file is missing {', '.join(missing)}")
    construction = data["construction"]
    if construction not in CONSTRUCTIONS:
        raise CodebookError(f"unknown construction {construction!r}")
    spec = field_from_json(data, guard=guard)

    fixed = data["fixed_param"]
    if construction != "C0" and not isinstance(fixed, int):
        raise CodebookError(f"{construction} needs an integer fixed_param, got {fixed!r}")

    try:
        entries = np.array(data["rows"], dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise CodebookError(f"rows are not an integer matrix: {e}")

    q = spec.q
    n_root = spec.p * (q - 1)
    if int(data["n_root"]) != n_root:
        raise CodebookError(f"n_root={data['n_root']} does not match p(q-1)={n_root}")
    if entries.ndim != 2 or entries.shape != (int(data["N"]), int(data["K"])):
        raise CodebookError(f"rows have shape {entries.shape}, expected ({data['N']}, {data['K']})")
    if entries.shape[1] != q * (q - 1):
        raise CodebookError(f"K={entries.shape[1]} does not match q(q-1)={q * (q - 1)}")
    if entries.size and (entries.min() < 0 or entries.max() >= n_root):
        raise CodebookError(f"exponents must lie in [0, {n_root})")

    params = construction_params(spec, construction, fixed)
    if len(params) != entries.shape[0]:
        raise CodebookError(f"{construction} over GF({q}) has {len(params)} rows, file has {entries.shape[0]}")
    return Codebook(construction, spec, fixed, params, entries, coordinate_order(spec))


def read_codebook(path: str, guard: Optional[int] = None) -> Codebook:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise CodebookError(f"{path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise CodebookError(f"{path} does not hold a JSON object")
    return codebook_from_json(data, guard=guard)


def write_report_json(report: EvalReport, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(report.to_dict(), f, indent=2)
        f.write("\n")
    return path


def write_report_csv(reports: Iterable[EvalReport], path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for report in reports:
            writer.writerow(report.csv_row())
    return path
