#!/usr/bin/env python3
import os
import logging
import importlib
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from sympy import isprime

from utils.finite_field import FieldError, factor_prime_power


class ConfigError(ValueError):
    pass


@dataclass
class Settings:
    """Values read from a config module, every key optional."""
    output_dir: str
    size_guard: Optional[int]
    max_codebook_entries: int
    exhaustive_max_n: int
    tolerance: float
    default_fixed_j: int
    default_fixed_b: int
    default_samples: int
    default_seed: int
    eval_workers: int
    eval_block_rows: int
    table_q_list: List[int]
    table_brute_force_q_max: int
    selftest_q_max: int
    show_progress: bool


def load_config_module(name: str):
    try:
        module = importlib.import_module(f"config.{name}")
    except ImportError as e:
        raise ConfigError(f"config '{name}.py' not found: {e}")
    logging.debug(f"Configuration '{name}' loaded")
    return module


def init_settings_from_config(config) -> Settings:
    base_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    return Settings(
        output_dir=getattr(config, "OUTPUT_DIR", os.path.join(base_dir, "results")),
        # None defers to RING_CODEBOOK_GUARD / the built-in default
        size_guard=None if os.environ.get("RING_CODEBOOK_GUARD") else getattr(config, "SIZE_GUARD", None),
        max_codebook_entries=getattr(config, "MAX_CODEBOOK_ENTRIES", 20_000_000),
        exhaustive_max_n=getattr(config, "EXHAUSTIVE_MAX_N", 5000),
        tolerance=getattr(config, "TOLERANCE", 1e-9),
        default_fixed_j=getattr(config, "DEFAULT_FIXED_J", 1),
        default_fixed_b=getattr(config, "DEFAULT_FIXED_B", 0),
        default_samples=getattr(config, "DEFAULT_SAMPLES", 100_000),
        default_seed=getattr(config, "DEFAULT_SEED", 0),
        eval_workers=getattr(config, "EVAL_WORKERS", 1),
        eval_block_rows=getattr(config, "EVAL_BLOCK_ROWS", 256),
        table_q_list=list(getattr(config, "TABLE_Q_LIST", [3, 4, 5, 7, 8, 9])),
        table_brute_force_q_max=getattr(config, "TABLE_BRUTE_FORCE_Q_MAX", 9),
        selftest_q_max=getattr(config, "SELFTEST_Q_MAX", 9),
        show_progress=getattr(config, "SHOW_PROGRESS", True),
    )


@dataclass
class RunConfig:
    command: str
    settings: Settings
    p: Optional[int] = None
    m: Optional[int] = None
    modulus: Optional[List[int]] = None
    construction: str = "C1"
    fixed_j: Optional[int] = None
    fixed_b: Optional[int] = None
    mode: str = "exhaustive"
    samples: Optional[int] = None
    seed: Optional[int] = None
    workers: Optional[int] = None
    out: Optional[str] = None
    fmt: str = "json"
    force: bool = False
    q_max: Optional[int] = None
    q_list: List[int] = field(default_factory=list)
    codebook_path: Optional[str] = None

    @property
    def q(self) -> Optional[int]:
        return None if self.p is None else self.p ** self.m

    @property
    def guard(self) -> Optional[int]:
        if self.force:
            return 2 ** 62
        return self.settings.size_guard

    @property
    def max_entries(self) -> int:
        return self.settings.max_codebook_entries


def resolve_field_params(q: Optional[int], p: Optional[int], m: Optional[int]) -> Tuple[Optional[int], Optional[int]]:
    """Turn --q or --p/--m into (p, m); both unset gives (None, None)."""
    if q is not None:
        if p is not None or m is not None:
            raise ConfigError("--q cannot be combined with --p/--m")
        try:
            return factor_prime_power(q)
        except FieldError as e:
            raise ConfigError(str(e))
    if p is None and m is None:
        return None, None
    if p is None:
        raise ConfigError("--m needs --p")
    if not isprime(p):
        raise ConfigError(f"p={p} is not prime")
    m = 1 if m is None else m
    if m < 1:
        raise ConfigError(f"m={m} must be >= 1")
    return p, m


def parse_modulus(text: Optional[str]) -> Optional[List[int]]:
    if not text:
        return None
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise ConfigError(f"--modulus expects comma-separated integers, got {text!r}")


def parse_q_list(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ConfigError(f"--q-list expects comma-separated integers, got {text!r}")
