"""Timing harness: CSV records per (problem, q, n, rep) and a log-log slope fit."""
from __future__ import annotations

import csv
import statistics
import time
from collections import defaultdict
from dataclasses import astuple, dataclass

import numpy as np

from .carlitz import carlitz_charpoly
from .errors import FqReduceError, InsufficientData
from .factor import ddf, factor, factor_degree_ref
from .field import PrimeField, Rng
from .frobenius import frob_minpoly
from .poly import ModCtx, random_monic_squarefree
from .reductions import OracleSet, reduce_factor_via_factordegree, reduce_factor_via_frobminpoly

WARMUP_REP = 1 << 20  # seeds a throwaway cell outside the measured reps
HEADER = ("problem", "q", "n", "seed", "rep", "nanos", "oracle_calls", "success")


@dataclass(frozen=True)
class BenchRecord:
    problem: str
    q: int
    n: int
    seed: int
    rep: int
    nanos: int
    oracle_calls: int
    success: bool

    def row(self):
        vals = list(astuple(self))
        vals[-1] = int(self.success)
        return vals


def cell_seed(seed: int, q: int, n: int, rep: int) -> int:
    words = [seed & 0xFFFFFFFF, seed >> 32 & 0xFFFFFFFF, q & 0xFFFFFFFF, q >> 32 & 0xFFFFFFFF, n, rep]
    state = np.random.SeedSequence(words).generate_state(2, np.uint32)
    return int(state[0]) << 32 | int(state[1])


def _run_factor(f, rng):
    return factor(f, rng), 0


def _run_frobminpoly(f, rng):
    oracles = OracleSet.independent(rng.child())
    reduce_factor_via_frobminpoly(f, oracles.frob_minpoly, rng)
    return None, oracles.frob_minpoly.calls


def _run_factordegree(f, rng):
    calls = [0]

    def oracle(g):
        calls[0] += 1
        return factor_degree_ref(g)

    reduce_factor_via_factordegree(f, oracle, rng=rng)
    return None, calls[0]


PROBLEMS = {
    "factor": _run_factor,
    "factor-frobminpoly": _run_frobminpoly,
    "factor-factordegree": _run_factordegree,
    "frob-minpoly": lambda f, rng: (frob_minpoly(ModCtx(f), rng), 0),
    "carlitz-charpoly": lambda f, rng: (carlitz_charpoly(f, "direct"), 0),
    "ddf": lambda f, rng: (ddf(f, strategy="bsgs"), 0),
}


def run_cell(problem: str, q: int, n: int, seed: int, rep: int) -> BenchRecord:
    runner = PROBLEMS[problem]
    s = cell_seed(seed, q, n, rep)
    rng = Rng(s)
    f = random_monic_squarefree(n, PrimeField(q), rng)
    t0 = time.perf_counter_ns()
    try:
        _, calls = runner(f, rng)
        ok = True
    except FqReduceError:
        calls, ok = 0, False
    return BenchRecord(problem, q, n, seed, rep, time.perf_counter_ns() - t0, calls, ok)


def run_bench(problem: str, q_list, n_list, reps: int, seed: int, warmup: bool = True) -> list:
    if problem not in PROBLEMS:
        raise KeyError(f"unknown problem {problem!r}; choose from {sorted(PROBLEMS)}")
    if warmup:
        # first call pays for jit compilation
        run_cell(problem, q_list[0], min(n_list), seed, WARMUP_REP)
    return [run_cell(problem, q, n, seed, rep)
            for q in q_list for n in n_list for rep in range(reps)]


def write_csv(records, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(HEADER)
    for r in records:
        w.writerow(r.row())


def read_csv(fh) -> list:
    rows = csv.DictReader(fh)
    return [BenchRecord(r["problem"], int(r["q"]), int(r["n"]), int(r["seed"]), int(r["rep"]),
                        int(r["nanos"]), int(r["oracle_calls"]), bool(int(r["success"])))
            for r in rows]


@dataclass(frozen=True)
class Fit:
    q: int
    slope: float
    intercept: float
    r2: float
    points: int


def bench_fit(records) -> dict:
    """OLS of log(median time) on log n, per q."""
    cells = defaultdict(list)
    for r in records:
        cells[(r.q, r.n)].append(r.nanos)
    by_q = defaultdict(list)
    for (q, n), times in cells.items():
        by_q[q].append((n, times))
    out = {}
    for q, pts in sorted(by_q.items()):
        if len(pts) < 4:
            raise InsufficientData(f"q={q}: need >= 4 distinct n, got {len(pts)}")
        if min(len(t) for _, t in pts) < 3:
            raise InsufficientData(f"q={q}: need >= 3 reps per n")
        x = np.log([n for n, _ in pts])
        y = np.log([statistics.median(t) for _, t in pts])
        slope, intercept = np.polyfit(x, y, 1)
        resid = y - (slope * x + intercept)
        ss_tot = float(((y - y.mean()) ** 2).sum())
        r2 = 1.0 - float((resid**2).sum()) / ss_tot if ss_tot > 0 else 1.0
        out[q] = Fit(q, float(slope), float(intercept), r2, len(pts))
    return out
