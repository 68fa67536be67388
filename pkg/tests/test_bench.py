import pytest

from molpreduce.bench import (
    CSV_HEADER,
    BenchConfig,
    BenchRecord,
    base_simplex,
    family_polytope,
    generate_family,
    mixing_matrix,
    records_csv,
    run_bench,
)
from molpreduce.errors import MolpReduceError
from molpreduce.linalg import Q, RationalMatrix, rank
from molpreduce.polyhedra import double_description
from molpreduce.problems import is_ok, validate

TINY = BenchConfig(ell=1, q_max=4, trials=3, warmup=1)


def test_base_simplex_is_centered():
    V = base_simplex(3)
    assert len(V.vertices) == 4
    assert all(sum(v[i] for v in V.vertices) == 0 for i in range(3))
    W = base_simplex(4)
    assert len(W.vertices) == 5
    assert all(sum(v[i] for v in W.vertices) == 0 for i in range(4))


def test_level_zero_is_the_simplex():
    S, M, P = family_polytope(3, 0)
    assert M == RationalMatrix.identity(3)
    assert set(double_description(S).vertices) == set(P.vertices) == set(base_simplex(3).vertices)


def test_level_one_projection():
    S, M, P = family_polytope(3, 1)
    assert S.dim == 6 and M.shape == (3, 6)
    # the projection of the product is the Minkowski sum
    images = {M @ v for v in double_description(S).vertices}
    assert set(P.vertices) <= images


def test_mixing_matrix_pattern():
    T = mixing_matrix(6, 3)
    third = Q("-1/3")
    assert T.col(0) == (third, third, 0, third, third, 0)
    assert T.col(1) == (0, third, third, 0, third, third)
    assert T.col(2) == tuple(-5 * a - 4 * b for a, b in zip(T.col(0), T.col(1)))
    assert rank(T) == 2


def test_family_has_rank_two():
    for p in generate_family(BenchConfig()):
        assert rank(p.P) == 2
        assert is_ok(validate(p))
    assert [p.q for p in generate_family(BenchConfig())] == [3, 4, 5, 6, 7, 8]


@pytest.mark.parametrize(
    "kwargs",
    [dict(trials=0), dict(warmup=7), dict(k=3), dict(q_min=1), dict(d=9), dict(ell=4)],
)
def test_config_validation(kwargs):
    with pytest.raises((ValueError, MolpReduceError)):
        BenchConfig(**kwargs)


def test_config_from_mapping():
    assert BenchConfig.from_mapping({"trials": "3", "warmup": 1}) == BenchConfig(trials=3, warmup=1)
    with pytest.raises(ValueError):
        BenchConfig.from_mapping({"trails": 3})


def test_tiny_run():
    records = run_bench(TINY)
    assert [r.q for r in records] == [3, 4]
    for r in records:
        assert len(r.samples["molp_ms"]) == TINY.trials - TINY.warmup
        assert r.molp_vertex_count == r.vlp_vertex_count > 0
        assert r.molp_time > 0 and r.vlp_time > 0


def test_parallel_verify_same_counts():
    a = run_bench(TINY)
    b = run_bench(TINY, parallel_verify=True)
    assert [(r.molp_vertex_count, r.vlp_vertex_count) for r in a] == [(r.molp_vertex_count, r.vlp_vertex_count) for r in b]


def test_csv_layout():
    text = records_csv([BenchRecord(3, 1.5, 0.25, 4, 4)])
    assert text == "q,molp_ms,vlp_ms,molp_minpts,vlp_minpts\n3,1.500,0.250,4,4\n"
    assert text.splitlines()[0] == ",".join(CSV_HEADER)


def test_default_protocol_keeps_five_runs():
    (rec,) = run_bench(BenchConfig(ell=1, q_max=3))
    assert len(rec.samples["molp_ms"]) == len(rec.samples["vlp_ms"]) == 5
