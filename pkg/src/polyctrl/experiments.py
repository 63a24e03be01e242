"""Monte Carlo experiments over spaces of bounded-degree presentation matrices.

An l x k matrix with entries of total degree at most d has l*k*C(n+d, n)
coefficient slots.  Each slot is independently zero with probability
1 - density and otherwise a uniform nonzero integer in [-c, c].  Every
trial draws its randomness from a generator seeded by (seed, trial_index),
so trials are reproducible in isolation and order-independent, and whole
runs serialize to byte-identical CSV rows (wall time aside).
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ._version import ARTIFACT_VERSION
from .decide import Status, decide
from .groebner import Ideal, buchberger, ideal_dimension
from .matrix import PolyMatrix
from .poly import Polynomial, Ring

# desk-scale guard rails for experiment parameters
MAX_N = 4
MAX_D = 3
MAX_TRIALS = 10000


@dataclass(frozen=True)
class SampleConfig:
    """Parameters of one controllability sampling experiment."""

    l: int
    k: int
    n: int
    d: int
    coeff_bound: int
    density: Fraction
    trials: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "density", Fraction(self.density))
        for name in ("l", "k", "n", "d", "coeff_bound", "trials"):
            value = getattr(self, name)
            if not isinstance(value, int) or (value < 0 if name == "d" else value < 1):
                raise ValueError(f"{name} must be a positive integer (d may be 0)")
        if not 0 < self.density <= 1:
            raise ValueError("density must lie in (0, 1]")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def ring(self) -> Ring:
        return Ring(tuple(f"x{i + 1}" for i in range(self.n)))

    def slot_count(self) -> int:
        return self.l * self.k * len(monomials_up_to(self.n, self.d))


def monomials_up_to(n: int, d: int) -> List[Tuple[int, ...]]:
    """All exponent tuples of total degree <= d, in sorted order."""
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)

    rec([], d)
    out.sort()
    return out


def trial_rng(seed: int, trial_index: int) -> random.Random:
    """Deterministic per-trial generator; stable across platforms."""
    digest = hashlib.blake2b(
        f"{seed}:{trial_index}".encode(), digest_size=16
    ).digest()
    return random.Random(int.from_bytes(digest, "big"))


def sample_polynomial(
    ring: Ring, d: int, coeff_bound: int, density: Fraction, rng: random.Random
) -> Polynomial:
    density_f = float(density)
    choices = [c for c in range(-coeff_bound, coeff_bound + 1) if c != 0]
    terms = {}
    for mono in monomials_up_to(ring.nvars, d):
        if rng.random() < density_f:
            terms[mono] = rng.choice(choices)
    return Polynomial(ring, terms)


def sample_matrix(cfg: SampleConfig, trial_index: int) -> PolyMatrix:
    """The trial's l x k matrix; a pure function of (seed, trial_index)."""
    if trial_index >= cfg.trials:
        raise ValueError("trial_index out of range")
    rng = trial_rng(cfg.seed, trial_index)
    ring = cfg.ring()
    entries = [
        [sample_polynomial(ring, cfg.d, cfg.coeff_bound, cfg.density, rng) for _ in range(cfg.k)]
        for _ in range(cfg.l)
    ]
    return PolyMatrix(ring, entries)


def _codim_key(codim) -> str:
    return "inf" if codim == math.inf else str(int(codim))


def _hist_json(hist: Dict) -> str:
    ordered = sorted(hist.items(), key=lambda kv: (kv[0] == math.inf, kv[0]))
    return json.dumps({_codim_key(c): v for c, v in ordered})


@dataclass
class ExperimentRecord:
    """Aggregated result of one experiment run."""

    config: SampleConfig
    counts: Dict[str, int]
    codim_histogram: Dict
    wall_time_ms: int
    artifact_version: str = ARTIFACT_VERSION

    CSV_HEADER = (
        "seed,l,k,n,d,coeff_bound,density,trials,"
        "controllable,uncontrollable,indeterminate,codim_hist,wall_ms,version"
    )

    def fraction(self, status: str) -> float:
        return self.counts[status] / self.config.trials

    def to_csv_row(self) -> List[str]:
        cfg = self.config
        return [
            str(cfg.seed),
            str(cfg.l),
            str(cfg.k),
            str(cfg.n),
            str(cfg.d),
            str(cfg.coeff_bound),
            str(cfg.density),
            str(cfg.trials),
            str(self.counts["controllable"]),
            str(self.counts["uncontrollable"]),
            str(self.counts["indeterminate"]),
            _hist_json(self.codim_histogram),
            str(self.wall_time_ms),
            self.artifact_version,
        ]

    def to_json_dict(self) -> dict:
        cfg = self.config
        return {
            "seed": cfg.seed,
            "l": cfg.l,
            "k": cfg.k,
            "n": cfg.n,
            "d": cfg.d,
            "coeff_bound": cfg.coeff_bound,
            "density": str(cfg.density),
            "trials": cfg.trials,
            "counts": dict(self.counts),
            "codim_hist": json.loads(_hist_json(self.codim_histogram)),
            "wall_ms": self.wall_time_ms,
            "version": self.artifact_version,
        }


def _experiment_trial(args) -> Tuple[str, Optional[float]]:
    cfg, index = args
    verdict = decide(sample_matrix(cfg, index))
    return verdict.status.value, verdict.codim


def _resolve_workers(explicit: Optional[int] = None) -> int:
    """Worker count from CTRL_THREADS (absent/1 = serial, 0 = all cores)."""
    if explicit is None:
        raw = os.environ.get("CTRL_THREADS", "1")
        try:
            explicit = int(raw)
        except ValueError:
            raise ValueError(f"CTRL_THREADS must be an integer, got {raw!r}")
    if explicit < 0:
        raise ValueError("worker count must be >= 0")
    return explicit if explicit else (os.cpu_count() or 1)


def _map_trials(worker, args_list, workers: int):
    if workers <= 1 or len(args_list) < 2:
        return [worker(a) for a in args_list]
    from concurrent.futures import ProcessPoolExecutor

    chunk = max(1, len(args_list) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, args_list, chunksize=chunk))


def run_experiment(cfg: SampleConfig, workers: Optional[int] = None) -> ExperimentRecord:
    """Decide every sampled matrix and aggregate counts and codimensions."""
    if cfg.l > cfg.k:
        raise ValueError("experiments require l <= k (strictly underdetermined or square)")
    if cfg.n > MAX_N or cfg.d > MAX_D or cfg.trials > MAX_TRIALS:
        raise ValueError(
            f"parameter guard: n <= {MAX_N}, d <= {MAX_D}, trials <= {MAX_TRIALS}"
        )
    start = time.monotonic()
    outcomes = _map_trials(
        _experiment_trial,
        [(cfg, i) for i in range(cfg.trials)],
        _resolve_workers(workers),
    )
    counts = {"controllable": 0, "uncontrollable": 0, "indeterminate": 0}
    hist: Dict = {}
    for status, codim in outcomes:
        counts[status.lower()] += 1
        if codim is not None:
            hist[codim] = hist.get(codim, 0) + 1
    wall_ms = int((time.monotonic() - start) * 1000)
    return ExperimentRecord(
        config=cfg, counts=counts, codim_histogram=hist, wall_time_ms=wall_ms
    )


@dataclass(frozen=True)
class CompleteIntersectionConfig:
    """Parameters for sampling ideals generated by m random polynomials."""

    m: int
    n: int
    d: int
    coeff_bound: int
    density: Fraction
    trials: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "density", Fraction(self.density))
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")
        if self.m > self.n:
            raise ValueError("m <= n required: a proper nonempty variety has codim <= n")
        if not 0 < self.density <= 1:
            raise ValueError("density must lie in (0, 1]")

    def ring(self) -> Ring:
        return Ring(tuple(f"x{i + 1}" for i in range(self.n)))


@dataclass
class CompleteIntersectionRecord:
    """Codimension statistics of randomly generated ideals."""

    config: CompleteIntersectionConfig
    codim_eq_m: int
    codim_histogram: Dict
    wall_time_ms: int
    artifact_version: str = ARTIFACT_VERSION

    CSV_HEADER = "seed,m,n,d,coeff_bound,density,trials,codim_eq_m,codim_hist,wall_ms,version"

    def fraction(self) -> float:
        return self.codim_eq_m / self.config.trials

    def to_csv_row(self) -> List[str]:
        cfg = self.config
        return [
            str(cfg.seed),
            str(cfg.m),
            str(cfg.n),
            str(cfg.d),
            str(cfg.coeff_bound),
            str(cfg.density),
            str(cfg.trials),
            str(self.codim_eq_m),
            _hist_json(self.codim_histogram),
            str(self.wall_time_ms),
            self.artifact_version,
        ]

    def to_json_dict(self) -> dict:
        cfg = self.config
        return {
            "seed": cfg.seed,
            "m": cfg.m,
            "n": cfg.n,
            "d": cfg.d,
            "coeff_bound": cfg.coeff_bound,
            "density": str(cfg.density),
            "trials": cfg.trials,
            "codim_eq_m": self.codim_eq_m,
            "codim_hist": json.loads(_hist_json(self.codim_histogram)),
            "wall_ms": self.wall_time_ms,
            "version": self.artifact_version,
        }


def _ci_trial(args) -> float:
    cfg, index = args
    rng = trial_rng(cfg.seed, index)
    ring = cfg.ring()
    gens = [
        sample_polynomial(ring, cfg.d, cfg.coeff_bound, cfg.density, rng)
        for _ in range(cfg.m)
    ]
    basis = buchberger(Ideal(ring, gens))
    return ideal_dimension(basis).codim


def complete_intersection_experiment(
    cfg: CompleteIntersectionConfig, workers: Optional[int] = None
) -> CompleteIntersectionRecord:
    """Count how often m random polynomials cut out a codimension-m variety."""
    if cfg.n > MAX_N or cfg.d > MAX_D or cfg.trials > MAX_TRIALS:
        raise ValueError(
            f"parameter guard: n <= {MAX_N}, d <= {MAX_D}, trials <= {MAX_TRIALS}"
        )
    if cfg.trials < 1:
        raise ValueError("trials must be positive")
    start = time.monotonic()
    codims = _map_trials(
        _ci_trial, [(cfg, i) for i in range(cfg.trials)], _resolve_workers(workers)
    )
    hist: Dict = {}
    for c in codims:
        hist[c] = hist.get(c, 0) + 1
    wall_ms = int((time.monotonic() - start) * 1000)
    return CompleteIntersectionRecord(
        config=cfg,
        codim_eq_m=sum(1 for c in codims if c == cfg.m),
        codim_histogram=hist,
        wall_time_ms=wall_ms,
    )


def append_csv(path: str, record) -> None:
    """Append one record row, writing the header first on a fresh file."""
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if fresh:
            writer.writerow(record.CSV_HEADER.split(","))
        writer.writerow(record.to_csv_row())
