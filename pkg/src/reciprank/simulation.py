"""Monte Carlo efficiency frequencies of the Perron, singular and random vectors.

Each trial draws ``C`` with i.i.d. uniform entries, forms the reciprocal
matrix ``A = C o C^(-T)`` (``a_ij = c_ij / c_ji``), and tests three vectors
for efficiency: the Perron vector of ``A``, the Perron vector of ``A A^T``
and a uniformly random positive vector. Every trial has its own Philox
stream keyed by ``(seed, n, trial)``, so results do not depend on how trials
are split across worker processes.
"""

from __future__ import annotations

import csv
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import ReciprocalMatrix
from .efficiency import is_efficient
from .spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, NoConvergence, perron_vector, singular_vector

log = logging.getLogger(__name__)

SERIES = ("perron", "singular", "random")
CELLS = ("perron_only", "singular_only", "both", "neither")
CELL_LABELS = {
    "perron_only": "v_P efficient, v_S inefficient",
    "singular_only": "v_P inefficient, v_S efficient",
    "both": "v_P and v_S efficient",
    "neither": "v_P and v_S inefficient",
}
FIGURE1_DIMS = tuple(range(3, 26))
TABLE1_DIMS = (4, 5, 7, 9, 12, 15, 20)

_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class SimulationConfig:
    dims: tuple[int, ...] = FIGURE1_DIMS
    trials: int = 10_000
    entry_low: float = 0.1
    entry_high: float = 15.0
    randvec_low: float = 0.0
    randvec_high: float = 5.0
    seed: int = 0
    workers: int = 1
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        if not self.dims or min(self.dims) < 2:
            raise ValueError("dims must be a nonempty list of integers >= 2")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 < self.entry_low < self.entry_high:
            raise ValueError("need 0 < entry_low < entry_high")
        if not 0 <= self.randvec_low < self.randvec_high:
            raise ValueError("need 0 <= randvec_low < randvec_high")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class DimensionCounts:
    n: int
    trials: int = 0
    perron: int = 0
    singular: int = 0
    random: int = 0
    perron_only: int = 0
    singular_only: int = 0
    both: int = 0
    neither: int = 0
    no_convergence: int = 0

    def add(self, other: DimensionCounts) -> None:
        for k, v in asdict(other).items():
            if k != "n":
                setattr(self, k, getattr(self, k) + v)

    def record(self, p: bool, s: bool, r: bool) -> None:
        self.trials += 1
        self.perron += p
        self.singular += s
        self.random += r
        if p and s:
            self.both += 1
        elif p:
            self.perron_only += 1
        elif s:
            self.singular_only += 1
        else:
            self.neither += 1


@dataclass
class SimulationReport:
    config: SimulationConfig
    counts: dict[int, DimensionCounts] = field(default_factory=dict)

    def figure1_rows(self):
        for n in sorted(self.counts):
            c = self.counts[n]
            for name in SERIES:
                yield n, name, getattr(c, name), c.trials

    def table1_rows(self):
        for n in sorted(self.counts):
            c = self.counts[n]
            for name in CELLS:
                yield n, name, getattr(c, name), c.trials

    def to_dict(self) -> dict:
        cfg = asdict(self.config)
        cfg.pop("workers")
        cfg["dims"] = list(cfg["dims"])
        return {
            "seed": self.config.seed,
            "config": cfg,
            "dimensions": [asdict(self.counts[n]) for n in sorted(self.counts)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> SimulationReport:
        cfg = SimulationConfig(**data["config"])
        counts = {d["n"]: DimensionCounts(**d) for d in data["dimensions"]}
        return cls(cfg, counts)


def _uniform_open(rng: np.random.Generator, low: float, high: float, size) -> np.ndarray:
    # Uniform on the open interval: resample endpoint hits and subnormals.
    x = rng.uniform(low, high, size)
    bad = (x <= low) | (x >= high) | (x < _TINY)
    while bad.any():
        x[bad] = rng.uniform(low, high, int(bad.sum()))
        bad = (x <= low) | (x >= high) | (x < _TINY)
    return x


def random_reciprocal(n: int, low: float, high: float, rng: np.random.Generator) -> ReciprocalMatrix:
    """``C o C^(-T)`` for ``C`` with i.i.d. entries uniform on ``(low, high)``."""
    if not 0 < low < high:
        raise ValueError("need 0 < low < high")
    c = _uniform_open(rng, low, high, (n, n))
    return ReciprocalMatrix(c / c.T)


def random_weight_vector(n: int, low: float, high: float, rng: np.random.Generator) -> np.ndarray:
    """``n`` i.i.d. draws uniform on ``(low, high)``; zero is never returned."""
    if not 0 <= low < high:
        raise ValueError("need 0 <= low < high")
    return _uniform_open(rng, low, high, n)


def trial_rng(seed: int, n: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(n, trial))))


def run_trial(cfg: SimulationConfig, n: int, trial: int) -> tuple[bool, bool, bool]:
    """Efficiency of the Perron, singular and random vector for one draw.

    Raises ``NoConvergence`` if either power iteration fails.
    """
    rng = trial_rng(cfg.seed, n, trial)
    A = random_reciprocal(n, cfg.entry_low, cfg.entry_high, rng)
    r = random_weight_vector(n, cfg.randvec_low, cfg.randvec_high, rng)
    vp = perron_vector(A, cfg.tol, cfg.max_iter).vector
    vs = singular_vector(A, cfg.tol, cfg.max_iter).vector
    return (
        is_efficient(A, vp).efficient,
        is_efficient(A, vs).efficient,
        is_efficient(A, r).efficient,
    )


def _run_chunk(cfg: SimulationConfig, n: int, start: int, stop: int) -> DimensionCounts:
    counts = DimensionCounts(n)
    for t in range(start, stop):
        try:
            counts.record(*run_trial(cfg, n, t))
        except NoConvergence as exc:
            log.warning("n=%d trial=%d: %s", n, t, exc)
            counts.no_convergence += 1
    return counts


def _chunks(cfg: SimulationConfig, size: int):
    for n in cfg.dims:
        for start in range(0, cfg.trials, size):
            yield n, start, min(start + size, cfg.trials)


def run_trials(cfg: SimulationConfig, chunk_size: int = 500) -> SimulationReport:
    """Run ``cfg.trials`` trials for every dimension in ``cfg.dims``.

    With ``cfg.workers > 1`` chunks of trials run in a process pool. The
    report is identical for any worker count.
    """
    report = SimulationReport(cfg, {n: DimensionCounts(n) for n in cfg.dims})
    jobs = list(_chunks(cfg, chunk_size))
    if cfg.workers == 1:
        results = (_run_chunk(cfg, *job) for job in jobs)
        for part in results:
            report.counts[part.n].add(part)
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_run_chunk, cfg, *job) for job in jobs]
            for fut in futures:
                part = fut.result()
                report.counts[part.n].add(part)
    for n, c in report.counts.items():
        log.info("n=%d perron=%d singular=%d random=%d", n, c.perron, c.singular, c.random)
    return report


def emit_report(report: SimulationReport, prefix: str | os.PathLike, formats=("csv", "json")) -> list[str]:
    """Write ``{prefix}_fig1.csv``, ``{prefix}_tab1.csv`` and ``{prefix}_report.json``.

    Both CSV files have the header ``n,series,count,trials``; in the ``_tab1``
    file ``series`` names the cross-tabulation cell. Returns the paths written.
    """
    prefix = os.fspath(prefix)
    written = []
    if "csv" in formats:
        for suffix, rows in (("fig1", report.figure1_rows()), ("tab1", report.table1_rows())):
            path = f"{prefix}_{suffix}.csv"
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["n", "series", "count", "trials"])
                w.writerows(rows)
            written.append(path)
    if "json" in formats:
        path = f"{prefix}_report.json"
        with open(path, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)
            fh.write("\n")
        written.append(path)
    return written


def read_table_csv(path: str | os.PathLike) -> dict[tuple[int, str], tuple[int, int]]:
    with open(path, newline="") as fh:
        return {
            (int(row["n"]), row["series"]): (int(row["count"]), int(row["trials"]))
            for row in csv.DictReader(fh)
        }
