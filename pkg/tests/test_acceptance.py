"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import os
import time

import numpy as np
import pytest

from reciprank import (
    build_column_perturbed,
    build_digraph,
    build_simple_perturbed,
    cone_membership,
    fixtures,
    is_efficient,
    perron_vector,
    simple_perturbed_efficiency,
    singular_vector,
)
from reciprank.cli import main
from reciprank.efficiency import strongly_connected_components
from reciprank.simulation import (
    FIGURE1_DIMS,
    TABLE1_DIMS,
    SimulationConfig,
    random_reciprocal,
    run_trials,
)

from conftest import PRINTED, PRINTED_VERDICTS
from oracles import strongly_connected_bruteforce

SEED = 1
TRIALS = 10_000
WORKERS = int(os.environ.get("RECIPRANK_TEST_WORKERS", "1"))

# Published cross-tabulation per n: (P eff & S ineff, P ineff & S eff, both eff, both ineff)
REFERENCE_CROSSTAB = {
    4: (123, 908, 8880, 89),
    5: (137, 901, 8863, 99),
    7: (106, 592, 9251, 51),
    9: (80, 341, 9548, 31),
    12: (42, 115, 9841, 2),
    15: (22, 41, 9935, 2),
    20: (6, 10, 9983, 1),
}
CELL_ORDER = ("perron_only", "singular_only", "both", "neither")


def binomial_band(count, trials=TRIALS, k=4.0):
    """Integers within ``k`` binomial standard deviations of ``count``."""
    p = count / trials
    sd = np.sqrt(trials * p * (1 - p))
    return max(0, int(np.ceil(count - k * sd))), min(trials, int(np.floor(count + k * sd)))


def test_band_examples():
    assert binomial_band(8880) == (8754, 9006)
    # 9983 +- 16.48; the endpoints 9966 and 10000 sit just outside
    assert binomial_band(9983) == (9967, 9999)


# 1 ---------------------------------------------------------------------------


def test_c01_example_verdicts(acceptance):
    t0 = time.perf_counter()
    got = {}
    for name in PRINTED_VERDICTS:
        A = fixtures.load(name)
        vp = perron_vector(A).vector
        vs = singular_vector(A).vector
        got[name] = (is_efficient(A, vp).efficient, is_efficient(A, vs).efficient)
    A = fixtures.load("ex04")
    sum_eff = is_efficient(A, perron_vector(A).vector + singular_vector(A).vector).efficient
    elapsed = time.perf_counter() - t0
    ok = got == PRINTED_VERDICTS and sum_eff is False and elapsed < 1.0
    acceptance(1, "example efficiency verdicts", ok, f"{got}, ex04 P+S efficient={sum_eff}, {elapsed:.3f}s")
    assert got == PRINTED_VERDICTS
    assert sum_eff is False
    assert elapsed < 1.0


# 2 ---------------------------------------------------------------------------


def test_c02_printed_vectors(acceptance):
    t0 = time.perf_counter()
    worst = 0.0
    for name, (wp, vp) in PRINTED.items():
        A = fixtures.load(name)
        worst = max(
            worst,
            np.abs(perron_vector(A).vector - wp).max(),
            np.abs(singular_vector(A).vector - vp).max(),
        )
    elapsed = time.perf_counter() - t0
    ok = worst <= 5e-4 and elapsed < 1.0
    acceptance(2, "printed Perron/singular vectors within 5e-4", ok,
               f"max abs error {worst:.2e}, {elapsed:.3f}s")
    assert worst <= 5e-4
    assert elapsed < 1.0


# 3 ---------------------------------------------------------------------------


def test_c03_column_cone_is_efficient(acceptance):
    rng = np.random.default_rng(303)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(10_000):
        n = int(rng.integers(4, 11))
        x = np.sort(np.exp(rng.uniform(-3, 3, n - 1)))[::-1]
        if rng.random() < 0.25:
            k = int(rng.integers(0, n - 2))
            x[k + 1] = x[k]
        s = rng.exponential(1.0, n)
        s[rng.random(n) < 0.3] = 0.0
        if not s.any():
            s[int(rng.integers(n))] = 1.0
        A = build_column_perturbed(x)
        failures += not is_efficient(A, A.entries @ s).efficient
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 30
    acceptance(3, "every A s efficient for column-perturbed A", ok,
               f"{failures} failures / 10000, {elapsed:.1f}s")
    assert failures == 0
    assert elapsed < 30


# 4 ---------------------------------------------------------------------------


def test_c04_simple_perturbed_closed_form(acceptance):
    rng = np.random.default_rng(404)
    t0 = time.perf_counter()
    disagreements = n_eff = 0
    for k in range(10_000):
        n = int(rng.integers(3, 11))
        if k % 2:
            x = float(rng.integers(1, 6))
            w = rng.integers(1, 7, n).astype(float)
        else:
            x = float(np.exp(rng.uniform(0, 2.5)))
            w = np.exp(rng.uniform(-0.3, 1.2, n))
        closed = simple_perturbed_efficiency(n, x, w)
        graph = is_efficient(build_simple_perturbed(n, x), w).efficient
        disagreements += closed != graph
        n_eff += closed
    elapsed = time.perf_counter() - t0
    ok = disagreements == 0 and elapsed < 30
    acceptance(4, "closed form for S_n(x) matches digraph test", ok,
               f"{disagreements} disagreements, {n_eff} efficient / 10000, {elapsed:.1f}s")
    assert 0 < n_eff < 10_000
    assert disagreements == 0
    assert elapsed < 30


# 5 ---------------------------------------------------------------------------


def test_c05_nonconvexity(acceptance):
    t0 = time.perf_counter()
    A = build_column_perturbed([4, 3, 2, 1, 1])
    p = np.array([3, 4, 4, 2, 2, 2.0])
    q = np.array([4, 3, 4, 2, 2, 1.0])
    got = (is_efficient(A, p).efficient, is_efficient(A, q).efficient,
           is_efficient(A, p + q).efficient)
    elapsed = time.perf_counter() - t0
    ok = got == (True, True, False) and elapsed < 1.0
    acceptance(5, "p, q efficient and p+q inefficient", ok, f"{got}, {elapsed:.3f}s")
    assert got == (True, True, False)
    assert elapsed < 1.0


# 6 ---------------------------------------------------------------------------


def test_c06_extracted_vectors_in_cone(acceptance):
    rng = np.random.default_rng(606)
    t0 = time.perf_counter()
    worst = 0.0
    rejected = 0
    for _ in range(1000):
        n = int(rng.integers(2, 11))
        A = random_reciprocal(n, 0.1, 15.0, rng)
        for v in (perron_vector(A).vector, singular_vector(A).vector):
            c = cone_membership(A, v)
            worst = max(worst, c.residual)
            rejected += not c.member
    elapsed = time.perf_counter() - t0
    ok = rejected == 0 and worst <= 1e-8 and elapsed < 30
    acceptance(6, "Perron and singular vectors lie in the column cone", ok,
               f"{rejected} rejected, max residual {worst:.1e}, {elapsed:.1f}s")
    assert rejected == 0
    assert worst <= 1e-8
    assert elapsed < 30


# 7, 8 ------------------------------------------------------------------------


@pytest.fixture(scope="module")
def table1_run():
    cfg = SimulationConfig(dims=TABLE1_DIMS, trials=TRIALS, seed=SEED, workers=WORKERS)
    t0 = time.perf_counter()
    report = run_trials(cfg)
    return report, time.perf_counter() - t0


@pytest.fixture(scope="module")
def figure1_counts(table1_run):
    rest = tuple(n for n in FIGURE1_DIMS if n not in TABLE1_DIMS)
    cfg = SimulationConfig(dims=rest, trials=TRIALS, seed=SEED, workers=WORKERS)
    counts = dict(table1_run[0].counts)
    counts.update(run_trials(cfg).counts)
    return counts


def test_c07_table1_bands(acceptance, table1_run):
    report, elapsed = table1_run
    misses = []
    lines = []
    for n, reference in REFERENCE_CROSSTAB.items():
        c = report.counts[n]
        ours = tuple(getattr(c, cell) for cell in CELL_ORDER)
        lines.append(f"n={n}: {ours}")
        assert c.no_convergence == 0
        for cell, mine, theirs in zip(CELL_ORDER, ours, reference):
            lo, hi = binomial_band(theirs)
            if not lo <= mine <= hi:
                misses.append(f"n={n} {cell}: {mine} not in [{lo}, {hi}]")
    limit = 600 if WORKERS == 1 else 120
    ok = not misses and elapsed < limit
    acceptance(7, "cross-tab cells within 4 binomial sd of reference", ok,
               "; ".join(misses or lines) + f"; {elapsed:.0f}s with {WORKERS} worker(s)")
    assert not misses, misses
    assert elapsed < limit


def test_c08_figure1_shape(acceptance, figure1_counts):
    exceptions = [n for n, c in figure1_counts.items() if n >= 5 and c.singular < c.perron]
    low = [n for n, c in figure1_counts.items()
           if n >= 15 and min(c.perron, c.singular) < 0.99 * c.trials]
    baseline = [n for n, c in figure1_counts.items()
                if n >= 5 and not c.random < min(c.perron, c.singular)]
    ok = len(exceptions) <= 2 and not low and not baseline
    acceptance(8, "singular >= Perron, both >= 99% for n >= 15, random below both", ok,
               f"singular<Perron at {exceptions}, <99% at {low}, baseline violations {baseline}")
    assert len(exceptions) <= 2
    assert not low
    assert not baseline


# 9 ---------------------------------------------------------------------------


def test_c09_scc_against_bruteforce(acceptance):
    rng = np.random.default_rng(909)
    t0 = time.perf_counter()
    disagreements = connected = 0
    for k in range(10_000):
        n = int(rng.integers(1, 9))
        if k % 2:
            adj = rng.random((n, n)) < rng.uniform(0.05, 0.7)
        elif n == 1:
            adj = np.zeros((1, 1), dtype=bool)
        else:
            # comparison digraphs of random matrices and vectors
            A = random_reciprocal(n, 0.1, 15.0, rng)
            adj = build_digraph(A, rng.uniform(0.1, 5, n)).adjacency.copy()
        np.fill_diagonal(adj, False)
        fast = len(strongly_connected_components(adj)) == 1
        slow = strongly_connected_bruteforce(adj)
        disagreements += fast != slow
        connected += slow
    elapsed = time.perf_counter() - t0
    ok = disagreements == 0 and elapsed < 10
    acceptance(9, "SCC strong connectivity matches brute-force reachability", ok,
               f"{disagreements} disagreements, {connected} connected / 10000, {elapsed:.1f}s")
    assert 0 < connected < 10_000
    assert disagreements == 0
    assert elapsed < 10


# 10 --------------------------------------------------------------------------


def test_c10_worker_count_determinism(acceptance, tmp_path, capsys):
    outputs = []
    for workers in ("1", "3"):
        prefix = tmp_path / f"w{workers}"
        code = main(["simulate", "--dims", "4,7,12", "--trials", "1500", "--seed", "42",
                     "--workers", workers, "--out-prefix", str(prefix)])
        assert code == 0
        outputs.append(
            (prefix.with_name(prefix.name + "_fig1.csv").read_bytes(),
             prefix.with_name(prefix.name + "_tab1.csv").read_bytes())
        )
    capsys.readouterr()
    ok = outputs[0] == outputs[1]
    acceptance(10, "simulate CSVs byte-identical across --workers", ok,
               f"{len(outputs[0][0])}+{len(outputs[0][1])} bytes compared")
    assert ok
