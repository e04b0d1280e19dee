import csv
import io
import json
from fractions import Fraction

import pytest

from tf2m.exceptions import InputError
from tf2m.exceptions import InternalError
from tf2m.graph import enumerate_triangles
from tf2m.solver import solve_ptas
from tf2m.oracle import Verdict
from tf2m.bench import BENCH_COLUMNS
from tf2m.bench import GeneratorSpec
from tf2m.bench import bench_specs
from tf2m.bench import format_reports
from tf2m.bench import generate
from tf2m.bench import run_bench
from tf2m.bench import write_reports


def test_gnp_extremes():
    full = generate(GeneratorSpec(model='gnp', n=6, p=1, lo=1, hi=1))
    assert full.edge_count == 15
    assert set(full.weights().values()) == {1}
    assert generate(GeneratorSpec(model='gnp', n=5, p=0)).edge_count == 0


def test_generation_is_deterministic():
    for model in ('gnp', 'geometric', 'triangle-dense', 'planted-cycle'):
        spec = GeneratorSpec(model=model, n=7, seed=11, weights='uniform-rational', loop_probability=0.2)
        one = generate(spec)
        two = generate(spec)
        assert one.edges() == two.edges()
        assert one == two


def test_seed_changes_graph():
    graphs = {generate(GeneratorSpec(n=8, seed=seed)).edges() for seed in range(5)}
    assert len(graphs) > 1


def test_triangle_dense_overlays_triangles():
    graph = generate(GeneratorSpec(model='triangle-dense', n=6, p=0, cliques=2, seed=3))
    assert 1 <= len(enumerate_triangles(graph)) <= 2
    assert graph.edge_count <= 6


def test_planted_cycle():
    graph = generate(GeneratorSpec(model='planted-cycle', n=5, p=0, lo=1, hi=7, seed=4))
    assert graph.edge_count == 5
    assert set(graph.weights().values()) == {7}
    assert graph.is_two_matching(graph.edges())
    assert all(graph.degree(graph.edges(), v) == 2 for v in range(5))


def test_geometric_radius_extremes():
    assert generate(GeneratorSpec(model='geometric', n=6, radius=0)).edge_count == 0
    assert generate(GeneratorSpec(model='geometric', n=6, radius=2)).edge_count == 15


def test_loops_only_when_requested():
    graph = generate(GeneratorSpec(n=4, p=0, loop_probability=1))
    assert graph.edges() == ((0, 0), (1, 1), (2, 2), (3, 3))
    graph = generate(GeneratorSpec(n=6, p=1))
    assert all(u != v for u, v in graph.edges())


def test_rational_weights_in_range():
    graph = generate(GeneratorSpec(n=7, p=1, weights='uniform-rational', lo=2, hi=5, seed=9))
    for weight in graph.weights().values():
        assert 2 <= weight <= 5
        assert weight.denominator <= 12


@pytest.mark.parametrize('kwargs', [
    {'model': 'tree'},
    {'weights': 'normal'},
    {'model': 'triangle-dense', 'n': 2},
    {'p': Fraction(3, 2)},
    {'lo': 5, 'hi': 1},
    {'n': -1},
])
def test_invalid_specs(kwargs):
    with pytest.raises(InputError):
        generate(GeneratorSpec(**kwargs))


def test_bench_specs():
    specs = bench_specs('gnp', 5, 4, 5, seed=10, p=0.5)
    assert [s.n for s in specs] == [4, 5, 4, 5, 4]
    assert [s.seed for s in specs] == [10, 11, 12, 13, 14]
    with pytest.raises(InputError):
        bench_specs('gnp', 1, 6, 5)


def test_run_bench_with_oracle():
    specs = bench_specs('triangle-dense', 4, 4, 7, seed=1, p=0.4, cliques=2)
    eps_list = [Fraction(1, 2), 1]
    records = run_bench(specs, eps_list, with_oracle=True)
    assert len(records) == 8
    assert records == sorted(records, key=lambda r: (r.instance_id, r.eps))
    for record in records:
        assert record.oracle_weight is not None
        assert record.bounds_ok
        assert record.ptas_ratio >= 1 - record.eps
        assert record.baseline_ratio >= Fraction(2, 3) * (1 - record.eps)


def test_records_are_reproducible():
    specs = bench_specs('gnp', 3, 5, 6, seed=20, p=0.5, weights='uniform-rational')
    by_id = {s.instance_id: s for s in specs}
    for record in run_bench(specs, [Fraction(1, 2)], with_oracle=False):
        assert record.oracle_weight is None
        assert record.bounds_ok is None
        graph = generate(by_id[record.instance_id])
        assert solve_ptas(graph, enumerate_triangles(graph), record.eps).weight == record.ptas_weight


def test_parallel_bench_matches_sequential():
    specs = bench_specs('gnp', 4, 4, 6, seed=5, p=0.5)
    one = run_bench(specs, [Fraction(1, 2)], jobs=1)
    two = run_bench(specs, [Fraction(1, 2)], jobs=2)
    assert [r.row(6) for r in one] == [r.row(6) for r in two]


def test_oracle_skipped_above_limit():
    specs = [GeneratorSpec(n=6, p=1)]
    record = run_bench(specs, [1], oracle_limit=10)[0]
    assert record.oracle_weight is None


def test_empty_reports_have_headers(tmp_path):
    csv_path = str(tmp_path / 'bench.csv')
    json_path = str(tmp_path / 'bench.json')
    write_reports([], csv_path, json_path)
    with open(csv_path, encoding='utf-8') as file_:
        lines = file_.read().splitlines()
    assert lines == ['# tf2m-bench schema 1', ','.join(BENCH_COLUMNS)]
    with open(json_path, encoding='utf-8') as file_:
        doc = json.load(file_)
    assert doc['schema'] == 'tf2m-bench'
    assert doc['version'] == 1
    assert doc['records'] == []
    assert doc['summary']['oracle_rows'] == 0


def test_reports_render_rows():
    specs = bench_specs('gnp', 2, 4, 5, seed=2, p=0.7)
    records = run_bench(specs, [Fraction(1, 4)])
    csv_text, json_text = format_reports(records, decimals=4, timings=False)
    lines = csv_text.splitlines()
    assert lines[0] == '# tf2m-bench schema 1'
    rows = list(csv.DictReader(io.StringIO('\n'.join(lines[1:]))))
    assert [r['instance_id'] for r in rows] == ['gnp-n004-s2', 'gnp-n005-s3', 'summary-min', 'summary-mean']
    assert rows[0]['eps'] == '1/4'
    assert len(rows[0]['ptas_ratio'].split('.')[1]) == 4
    assert rows[2]['bounds_ok'] == 'true'
    doc = json.loads(json_text)
    assert [r['instance_id'] for r in doc['records']] == ['gnp-n004-s2', 'gnp-n005-s3']
    assert doc['records'][0]['ptas_weight'] == rows[0]['ptas_weight']


def test_timings_add_columns():
    records = run_bench([GeneratorSpec(n=4, p=1)], [1])
    csv_text, _ = format_reports(records, timings=True)
    header = csv_text.splitlines()[1].split(',')
    assert header[-1] == 'rss_bytes'
    assert records[0].rss_bytes > 0


def test_write_failure_names_path(tmp_path):
    path = str(tmp_path / 'missing' / 'bench.csv')
    with pytest.raises(OSError) as info:
        write_reports([], path, None)
    assert path in str(info.value)


def test_infeasible_solver_output_is_an_internal_error(monkeypatch):
    monkeypatch.setattr('tf2m.bench.verify_solution',
                        lambda graph, triangles, edges: Verdict(False, violation='degree'))
    with pytest.raises(InternalError):
        run_bench([GeneratorSpec(n=4, p=1)], [1], with_oracle=False)
