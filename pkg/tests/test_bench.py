import io

import pytest

from fqreduce.bench import HEADER, BenchRecord, bench_fit, cell_seed, read_csv, run_bench, write_csv
from fqreduce.errors import InsufficientData


def synthetic(exponent, ns=(64, 128, 256, 512, 1024), reps=3, q=7):
    return [BenchRecord("synthetic", q, n, 0, r, int(n**exponent * (1 + 0.001 * r)), 0, True)
            for n in ns for r in range(reps)]


def test_csv_header_fixed():
    buf = io.StringIO()
    write_csv([], buf)
    assert buf.getvalue() == "problem,q,n,seed,rep,nanos,oracle_calls,success\n"
    assert HEADER == ("problem", "q", "n", "seed", "rep", "nanos", "oracle_calls", "success")


def test_csv_roundtrip():
    recs = synthetic(2.0)
    buf = io.StringIO()
    write_csv(recs, buf)
    buf.seek(0)
    assert read_csv(buf) == recs


@pytest.mark.parametrize("exponent", [2.0, 1.5])
def test_fit_recovers_exponent(exponent):
    fit = bench_fit(synthetic(exponent))[7]
    assert abs(fit.slope - exponent) < 0.01 and fit.r2 > 0.999 and fit.points == 5


def test_fit_needs_data():
    with pytest.raises(InsufficientData):
        bench_fit(synthetic(2.0, ns=(1, 2, 3)))
    with pytest.raises(InsufficientData):
        bench_fit(synthetic(2.0, reps=2))


def test_cell_seed_deterministic_and_distinct():
    assert cell_seed(1, 3, 10, 0) == cell_seed(1, 3, 10, 0)
    seeds = {cell_seed(1, q, n, r) for q in (2, 3) for n in (8, 16) for r in range(3)}
    assert len(seeds) == 12


def test_run_bench_records():
    recs = run_bench("factor-factordegree", [5], [6, 10], 2, seed=4)
    assert [(r.n, r.rep) for r in recs] == [(6, 0), (6, 1), (10, 0), (10, 1)]
    assert all(r.success and r.nanos > 0 for r in recs)
    with pytest.raises(KeyError):
        run_bench("nope", [5], [6], 1, 0)
