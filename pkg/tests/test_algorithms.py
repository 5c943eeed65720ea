import pytest

from mwisim.algorithms import ALGORITHMS, UsageError, run_algorithm
from mwisim.graphs import WeightedGraph, generate

PARAMS = {
    "heavy": {},
    "sparse": {},
    "boost-heavy": {"eps": 0.5},
    "boost-sparse": {"eps": 0.5},
    "arb": {"eps": 0.5},
    "boppana": {},
    "fastld": {"eps": 0.5},
    "luby": {},
}

TINY = [
    WeightedGraph([0], [], {0: 7}),
    WeightedGraph([0, 1], [(0, 1)], {0: 1, 1: 1}),
    generate("cycle", {"n": 5}, "unit", 0),
    generate("gnp", {"n": 12, "p": 0.4}, "uniform_range", 3),
    WeightedGraph([], [], {}),
    WeightedGraph([0, 1], [(0, 1)], {0: 0, 1: 0}),  # all-zero weights
]


@pytest.mark.parametrize("alg", ALGORITHMS)
@pytest.mark.parametrize("gi", range(len(TINY)))
def test_every_algorithm_handles_degenerate_graphs(alg, gi):
    g = TINY[gi]
    out = run_algorithm(g, alg, PARAMS[alg], seed=5)
    assert g.is_independent(out.iset.members)
    assert out.iset.weight == g.total_weight(out.iset.members)
    again = run_algorithm(g, alg, PARAMS[alg], seed=5)
    assert out.iset == again.iset
    assert out.stats.per_round_messages == again.stats.per_round_messages


def test_unknown_algorithm_and_missing_params():
    g = TINY[2]
    with pytest.raises(UsageError, match="unknown algorithm"):
        run_algorithm(g, "simulated-annealing", {}, seed=0)
    with pytest.raises(UsageError, match="requires parameter 'eps'"):
        run_algorithm(g, "boost-heavy", {}, seed=0)


def test_single_node_outcomes():
    g = TINY[0]
    for alg in ALGORITHMS:
        out = run_algorithm(g, alg, PARAMS[alg], seed=1)
        assert out.iset.members == frozenset({0}), alg
        assert out.iset.weight == 7


def test_local_mode_supported_everywhere():
    g = TINY[3]
    for alg in ALGORITHMS:
        out = run_algorithm(g, alg, PARAMS[alg], seed=2, mode="local")
        assert g.is_independent(out.iset.members)
        assert out.stats.budget_bits is None
