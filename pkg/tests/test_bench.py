import pytest

from constants import BENCH_PLANTED
from sections import naive_sections
from services.bench import BENCH_HEADER, BenchService, generate_family


def test_family_shape():
    rep = generate_family(10, dim=3, seed=1)
    q = rep.quiver
    assert q.n_vertices == 10
    # 9 chain edges, skips from 0, 3 and 6, back edges into 0 and 5.
    assert q.n_edges == 9 + 3 + 2
    assert rep.dims == (3,) * 10
    assert generate_family(10, dim=3, seed=1).maps[0].tolist() == rep.maps[0].tolist()


def test_family_plants_sections():
    for planted in (0, 3):
        rep = generate_family(12, dim=4, seed=2, planted=planted)
        assert naive_sections(rep.quiver, rep).dim == planted


def test_family_rejects_oversized_plant():
    with pytest.raises(ValueError):
        generate_family(5, dim=2, planted=3)


def test_small_run_agrees_with_naive_kernel():
    rows = BenchService(sizes=(6, 4), dim=2, repeats=1, seed=3).run()
    assert [r.n_vertices for r in rows] == [4, 6]
    for row in rows:
        assert row.section_dim == row.naive_dim == BENCH_PLANTED
        assert row.distance <= 1e-8
        assert len(row.as_row()) == len(BENCH_HEADER)


@pytest.mark.bench
def test_pipeline_outpaces_naive_kernel():
    rows = BenchService(repeats=3).run()
    for row in rows:
        assert row.section_dim == row.naive_dim == BENCH_PLANTED
        assert row.distance <= 1e-8
    assert rows[-1].n_vertices == 80
    assert rows[-1].speedup >= 1.0
    first, last = rows[0], rows[-1]
    growth = last.n_vertices / first.n_vertices
    assert last.pipeline / first.pipeline <= growth**3
    assert last.naive / first.naive > last.pipeline / first.pipeline


@pytest.mark.bench
def test_process_pool_gives_the_same_table():
    serial = BenchService(sizes=(10, 20), repeats=1).run()
    pooled = BenchService(sizes=(10, 20), repeats=1).run(workers=2)
    assert [(r.n_edges, r.section_dim) for r in serial] == [(r.n_edges, r.section_dim) for r in pooled]
