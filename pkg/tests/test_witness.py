import math
from fractions import Fraction

import pytest

from tf2m.exceptions import ContractError
from tf2m.graph import TriangleSet
from tf2m.graph import WeightedGraph
from tf2m.graph import enumerate_triangles
from tf2m.trail import Budget
from tf2m.trail import Trail
from tf2m.trail import gain
from tf2m.trail import is_alternating
from tf2m.trail import symmetric_difference
from tf2m.oracle import verify_solution
from tf2m.witness import ReductionStep
from tf2m.witness import WitnessInput
from tf2m.witness import apply_reduction
from tf2m.witness import base_case_trail
from tf2m.witness import classify_case
from tf2m.witness import decompose_alternating_trails
from tf2m.witness import exhaustive_witness
from tf2m.witness import find_witness
from tf2m.witness import lift_trail

from conftest import random_graph
from conftest import random_two_matching


def assert_witness(inp, trail):
    """
    Independent check: alternating, feasible, improving and within budget
    """
    assert is_alternating(trail, inp.a1, inp.a2)
    result = symmetric_difference(inp.a2, trail)
    assert verify_solution(inp.graph, inp.triangles, result).feasible
    assert gain(inp.graph, inp.a2, trail) > 0
    assert Budget(inp.epsilon).allows(trail)


def test_decompose_examples():
    assert decompose_alternating_trails({(0, 1)}, {(0, 1)}) == []
    parts = decompose_alternating_trails({(0, 1)}, {(1, 2)})
    assert [p.nodes for p in parts] == [(0, 1, 2)]
    cycle = {(0, 1), (1, 2), (2, 3), (0, 3)}
    matching = {(0, 1), (2, 3)}
    parts = decompose_alternating_trails(cycle, matching)
    covered = set()
    for part in parts:
        assert is_alternating(part, cycle, matching)
        covered |= part.edge_set
    assert covered == {(1, 2), (0, 3)}


def test_decompose_closed_cycle():
    a1 = {(0, 1), (2, 3)}
    a2 = {(1, 2), (0, 3)}
    parts = decompose_alternating_trails(a1, a2)
    assert len(parts) == 1
    assert parts[0].closed
    assert parts[0].edge_set == a1 | a2


def test_base_case_single_edge():
    graph = WeightedGraph(2, {(0, 1): 1})
    for eps in (1, Fraction(1, 3)):
        assert base_case_trail(graph, {(0, 1)}, set(), eps).nodes == (0, 1)


def test_base_case_window_on_long_path():
    # Alternating path 0..12, A1 edges weigh 1, A2 edges weigh 0
    weights = {(i, i + 1): (1 if i % 2 == 0 else 0) for i in range(12)}
    graph = WeightedGraph(13, weights)
    a1 = {(i, i + 1) for i in range(0, 12, 2)}
    a2 = {(i, i + 1) for i in range(1, 12, 2)}
    eps = Fraction(1, 2)
    trail = base_case_trail(graph, a1, a2, eps)
    assert len(trail) <= 2 * math.ceil(1 / eps) - 1
    assert is_alternating(trail, a1, a2)
    assert gain(graph, a2, trail) > 0
    assert graph.is_two_matching(symmetric_difference(a2, trail))


def test_base_case_precondition():
    graph = WeightedGraph(2, {(0, 1): 1})
    with pytest.raises(ContractError):
        base_case_trail(graph, {(0, 1)}, {(0, 1)}, Fraction(1, 2))


def test_contract_errors():
    graph = WeightedGraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1})
    triangles = enumerate_triangles(graph)
    with pytest.raises(ContractError) as info:
        WitnessInput(graph, triangles, {(0, 1)}, {(0, 1)}, Fraction(1, 2)).check()
    assert 'w(A1)' in str(info.value)
    with pytest.raises(ContractError) as info:
        WitnessInput(graph, triangles, {(0, 1), (0, 2), (1, 2)}, set(), Fraction(1, 2)).check()
    assert 'T-free' in str(info.value)
    with pytest.raises(ContractError):
        WitnessInput(graph, triangles, {(0, 1)}, set(), 0).check()


def test_case_1_triangle_outside_union(k3):
    graph, triangles = k3
    inp = WitnessInput(graph, triangles, frozenset({(0, 1), (0, 2)}), frozenset(), Fraction(1, 2))
    assert classify_case(graph, triangles, inp.a1, inp.a2).tag == '1'
    trace = []
    trail = find_witness(inp, trace)
    assert trace == ['1']
    assert trail.nodes == (0, 1)
    assert_witness(inp, trail)


def test_case_2_splits_apex(k3):
    graph, triangles = k3
    a1 = frozenset({(0, 1), (0, 2)})
    a2 = frozenset({(0, 2), (1, 2)})
    selection = classify_case(graph, triangles, a1, a2)
    assert selection.tag == '2'
    assert (selection.u1, selection.u2, selection.u3) == (1, 0, 2)
    step = apply_reduction(selection, graph, triangles, a1, a2)
    assert step.graph.weight_of((1, 3)) == 0
    assert step.contraction_map() == {3: 1}
    assert len(step.triangles) == 0

    # (4/5) * 5 = 4 is not > 4, (9/10) * 5 is
    with pytest.raises(ContractError):
        WitnessInput(graph, triangles, a1, a2, Fraction(1, 5)).check()
    inp = WitnessInput(graph, triangles, a1, a2, Fraction(1, 10))
    trace = []
    trail = find_witness(inp, trace)
    assert trace == ['2']
    assert trail.nodes == (0, 1, 2)
    assert gain(graph, a2, trail) == 1
    assert_witness(inp, trail)


def test_case_3_2_inserts_loop():
    graph = WeightedGraph(3, {(0, 1): 5, (0, 2): 4, (1, 2): 3})
    triangles = enumerate_triangles(graph)
    a1 = frozenset({(0, 1), (0, 2)})
    a2 = frozenset({(1, 2)})
    selection = classify_case(graph, triangles, a1, a2)
    assert selection.tag == '3.2'
    step = apply_reduction(selection, graph, triangles, a1, a2)
    assert step.graph.weight_of((0, 0)) == 6
    assert step.a1 == {(1, 2), (0, 0)}
    assert step.loop_expansion == (0, 1, 2)

    inp = WitnessInput(graph, triangles, a1, a2, Fraction(1, 2))
    trace = []
    trail = find_witness(inp, trace)
    assert trace == ['3.2']
    assert trail.nodes == (0, 1, 2, 0)
    assert_witness(inp, trail)


def test_case_4_2_shortcut():
    graph = WeightedGraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 10})
    triangles = enumerate_triangles(graph)
    inp = WitnessInput(graph, triangles, frozenset({(1, 2)}), frozenset({(0, 1), (0, 2)}), Fraction(1, 2))
    trace = []
    trail = find_witness(inp, trace)
    assert trace == ['4.2']
    assert trail.nodes == (0, 1, 2, 0)
    assert_witness(inp, trail)


def test_case_4_1_weights():
    graph = WeightedGraph(3, {(0, 0): 1, (0, 1): 2, (0, 2): 3, (1, 2): 1})
    triangles = enumerate_triangles(graph)
    a1 = frozenset({(0, 0), (1, 2)})
    a2 = frozenset({(0, 1), (0, 2)})
    selection = classify_case(graph, triangles, a1, a2)
    assert selection.tag == '4.1'
    step = apply_reduction(selection, graph, triangles, a1, a2)
    assert step.shortcut is None
    assert step.graph.weight_of((0, 0)) == 5
    assert step.graph.weight_of((1, 2)) == 0


def test_case_3_1_shortcut():
    graph = WeightedGraph(3, {(0, 0): 1, (0, 1): 5, (0, 2): 5, (1, 2): 1})
    triangles = enumerate_triangles(graph)
    inp = WitnessInput(graph, triangles, frozenset({(0, 1), (0, 2)}), frozenset({(0, 0), (1, 2)}),
                       Fraction(1, 2))
    assert classify_case(graph, triangles, inp.a1, inp.a2).tag == '3.1'
    trace = []
    trail = find_witness(inp, trace)
    assert trace == ['3.1']
    assert trail.nodes == (0, 1, 2, 0, 0)
    assert trail.cost == 6
    assert_witness(inp, trail)


def k4_with(weights, extra_vertices=0):
    base = {(u, v): 1 for u in range(4) for v in range(u + 1, 4)}
    base.update(weights)
    graph = WeightedGraph(4 + extra_vertices, base)
    return graph, enumerate_triangles(graph)


SQUARE = frozenset({(0, 1), (0, 2), (1, 3), (2, 3)})
CROSS = frozenset({(1, 2), (0, 3)})


def test_case_5_1_reduces_to_base_case():
    graph, triangles = k4_with({})
    selection = classify_case(graph, triangles, SQUARE, CROSS)
    assert selection.tag == '5.1'
    assert (selection.u1, selection.u2, selection.u3, selection.u4) == (0, 1, 2, 3)
    step = apply_reduction(selection, graph, triangles, SQUARE, CROSS)
    assert step.shortcut is None
    assert step.a1 == {(0, 2), (1, 3), (0, 3), (1, 2)}
    assert len(step.triangles) == 0

    inp = WitnessInput(graph, triangles, SQUARE, CROSS, Fraction(1, 4))
    trace = []
    trail = find_witness(inp, trace)
    assert trace == ['5.1']
    assert trail.nodes == (0, 2)
    assert_witness(inp, trail)


def test_case_5_1_shortcut():
    graph, triangles = k4_with({(0, 1): 5, (2, 3): 5})
    inp = WitnessInput(graph, triangles, SQUARE, CROSS, Fraction(1, 4))
    trace = []
    trail = find_witness(inp, trace)
    assert trace == ['5.1']
    assert trail.nodes == (0, 1, 2, 3, 0)
    assert gain(graph, CROSS, trail) == 8
    assert_witness(inp, trail)


def test_case_6_1_shortcut():
    graph, triangles = k4_with({(0, 3): 10, (1, 2): 10})
    inp = WitnessInput(graph, triangles, CROSS, SQUARE, Fraction(1, 4))
    assert classify_case(graph, triangles, CROSS, SQUARE).tag == '6.1'
    trace = []
    trail = find_witness(inp, trace)
    assert trace == ['6.1']
    assert trail.nodes == (0, 1, 2, 3, 0)
    assert_witness(inp, trail)


def test_case_6_1_reduces_to_base_case():
    graph, triangles = k4_with({(4, 5): 100}, extra_vertices=2)
    a1 = CROSS | {(4, 5)}
    step = apply_reduction(classify_case(graph, triangles, a1, SQUARE), graph, triangles, a1, SQUARE)
    assert step.tag == '6.1'
    assert step.shortcut is None
    assert step.graph.weight(step.a2) == graph.weight(SQUARE)

    inp = WitnessInput(graph, triangles, a1, SQUARE, Fraction(1, 4))
    trace = []
    trail = find_witness(inp, trace)
    assert trace == ['6.1']
    assert trail.nodes == (4, 5)
    assert_witness(inp, trail)


def test_case_5_2_splits_two_vertices():
    graph, triangles = k4_with({})
    a2 = frozenset({(1, 2)})
    inp = WitnessInput(graph, triangles, SQUARE, a2, Fraction(1, 4))
    trace = []
    trail = find_witness(inp, trace)
    assert trace == ['1', '1', '5.2']
    assert trail.nodes == (0, 2)
    assert_witness(inp, trail)


def test_case_6_2_splits_two_vertices():
    graph, triangles = k4_with({(0, 3): 10, (1, 2): 10})
    a1 = frozenset({(1, 2)})
    inp = WitnessInput(graph, triangles, a1, SQUARE, Fraction(1, 4))
    trace = []
    trail = find_witness(inp, trace)
    assert trace == ['1', '1', '6.2']
    assert trail.nodes == (0, 1, 2, 3)
    assert gain(graph, SQUARE, trail) == 8
    assert_witness(inp, trail)


def test_lift_identity_and_contraction():
    graph = WeightedGraph(4, {(0, 1): 1, (0, 3): 1, (2, 3): 1, (1, 3): 0})
    step = ReductionStep(tag='2', graph=graph, triangles=TriangleSet(), a1=frozenset(), a2=frozenset(),
                         contractions=((3, 1),))
    assert lift_trail(step, Trail((0, 1))).nodes == (0, 1)
    assert lift_trail(step, Trail((0, 3, 2))).nodes == (0, 1, 2)


def test_lift_loop_keeps_cost():
    graph = WeightedGraph(4, {(0, 0): 1, (0, 3): 1})
    step = ReductionStep(tag='3.2', graph=graph, triangles=TriangleSet(), a1=frozenset(), a2=frozenset(),
                         loop_expansion=(0, 1, 2))
    reduced = Trail((3, 0, 0))
    lifted = lift_trail(step, reduced)
    assert lifted.nodes == (3, 0, 1, 2, 0)
    assert lifted.cost == reduced.cost


def test_exhaustive_agrees_on_examples(k3):
    graph, triangles = k3
    inp = WitnessInput(graph, triangles, frozenset({(0, 1), (0, 2)}), frozenset({(0, 2), (1, 2)}),
                       Fraction(1, 10))
    other = exhaustive_witness(inp)
    assert other is not None
    assert_witness(inp, other)


def _random_inputs(rng, count, max_n):
    found = 0
    while found < count:
        graph = random_graph(rng, rng.randint(3, max_n), 0.7, lo=1, hi=9, loops=0.15)
        triangles = enumerate_triangles(graph)
        if rng.random() < 0.3:
            triangles = TriangleSet(t for t in triangles if rng.random() < 0.5)
        a1 = random_two_matching(rng, graph, triangles)
        a2 = random_two_matching(rng, graph, triangles)
        eps = Fraction(1, rng.randint(1, 4))
        if not (1 - eps) * graph.weight(a1) > graph.weight(a2):
            continue
        found += 1
        yield WitnessInput(graph, triangles, a1, a2, eps)


def test_witness_on_random_pairs(rng):
    for inp in _random_inputs(rng, 60, 6):
        trail = find_witness(inp)
        assert_witness(inp, trail)


@pytest.mark.slow
def test_witness_on_random_pairs_at_scale(rng):
    for inp in _random_inputs(rng, 500, 8):
        trail = find_witness(inp)
        assert_witness(inp, trail)
        if inp.graph.n <= 7:
            assert exhaustive_witness(inp) is not None
