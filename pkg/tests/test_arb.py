import random
from fractions import Fraction

import pytest

from mwisim.arb import (arb_approx, arb_phase_count, arb_reduce,
                        boosted_heavy_inner, low_degree_subgraph)
from mwisim.boost import BoostPhaseError, InnerResult, check_stack_property
from mwisim.engine import RoundStats
from mwisim.graphs import (GraphError, ResidualWeights, WeightedGraph,
                           brute_force_max_is, degeneracy, generate,
                           random_tree)
from mwisim.rng import derive_seed


def test_low_degree_examples():
    tree = random_tree(30, 3)
    low = low_degree_subgraph(tree, 1)
    assert low == frozenset(v for v in tree.nodes if len(tree.adj[v]) <= 4)

    k10 = generate("clique", {"n": 10}, "unit", 0)
    assert low_degree_subgraph(k10, 2) == frozenset()  # degrees 9 > 8

    edgeless = WeightedGraph(range(5), [], {v: 1 for v in range(5)})
    assert low_degree_subgraph(edgeless, 7) == frozenset(range(5))

    with pytest.raises(GraphError, match="alpha"):
        low_degree_subgraph(k10, 0)


def test_arb_reduce_star():
    # center weight 100 with 5 leaves of weight 1, alpha = 1
    g = WeightedGraph(range(6), [(0, i) for i in range(1, 6)],
                      {0: 100, 1: 1, 2: 1, 3: 1, 4: 1, 5: 1})
    low = low_degree_subgraph(g, 1)
    assert low == frozenset(range(1, 6))  # center has degree 5 > 4
    selected = {1, 3}
    w2, g2 = arb_reduce(ResidualWeights.initial(g), selected, low, g)
    assert w2.values[0] == 100 - 2     # center loses selected leaf weights
    assert all(w2.values[v] == 0 for v in range(1, 6))
    assert g2.nodes == (0,)            # only the center survives


def test_arb_reduce_identity_when_nothing_low():
    g = generate("clique", {"n": 10}, "unit", 0)
    w = ResidualWeights.initial(g)
    w2, g2 = arb_reduce(w, set(), frozenset(), g)
    assert w2.values == w.values
    assert g2 == g


def test_arb_reduce_single_node():
    g = WeightedGraph([0], [], {0: 7})
    w2, g2 = arb_reduce(ResidualWeights.initial(g), {0},
                        low_degree_subgraph(g, 1), g)
    assert w2.values == {0: 0} and g2.n == 0


def test_arb_reduce_preconditions():
    g = generate("path", {"n": 4}, "unit", 0)
    w = ResidualWeights.initial(g)
    with pytest.raises(GraphError, match="inside the low-degree set"):
        arb_reduce(w, {0}, frozenset({1}), g)
    with pytest.raises(GraphError, match="not independent"):
        arb_reduce(w, {0, 1}, frozenset(g.nodes), g)


def test_phase_count():
    assert arb_phase_count(1) == 1
    assert arb_phase_count(2) == 2
    assert arb_phase_count(24) == 6   # ceil(log2 24) = 5
    assert arb_phase_count(1024) == 11


def test_arb_edgeless_one_phase():
    g = WeightedGraph(range(4), [], {v: v + 1 for v in range(4)})
    r = arb_approx(g, alpha=1, eps=0.5, seed=0)
    assert r.iset.members == frozenset(range(4))
    assert r.sizes[1] == 0


def test_arb_path_example():
    g = WeightedGraph(range(3), [(0, 1), (1, 2)], {0: 3, 1: 5, 2: 3})
    opt = brute_force_max_is(g).weight  # 6
    r = arb_approx(g, alpha=1, eps=0.25, seed=2)
    assert 8 * Fraction(5, 4) * 1 * r.iset.weight >= opt
    assert r.sizes[-1] == 0
    assert check_stack_property(g, r.iset, r.stack)


@pytest.mark.parametrize("seed", range(25))
def test_arb_trees_vs_oracle(seed):
    n = random.Random(seed).randint(4, 20)
    g = random_tree(n, seed, weight_model=("uniform_range", "heavy_tail")[seed % 2])
    opt = brute_force_max_is(g).weight
    eps = Fraction(1, 2)
    r = arb_approx(g, alpha=1, eps=float(eps), seed=derive_seed(0xA4, seed))
    assert 8 * (1 + eps) * 1 * r.iset.weight >= opt
    assert r.sizes[-1] == 0
    assert r.phases == arb_phase_count(n)
    for a, b in zip(r.sizes, r.sizes[1:]):
        assert 2 * b <= a


def test_arb_halving_with_degeneracy_alpha():
    for seed in range(10):
        g = generate("gnp", {"n": 22, "p": 0.18}, "uniform_range", seed)
        alpha = max(1, degeneracy(g))
        r = arb_approx(g, alpha=alpha, eps=0.5, seed=seed)
        for a, b in zip(r.sizes, r.sizes[1:]):
            assert 2 * b <= a
        assert r.sizes[-1] == 0
        assert check_stack_property(g, r.iset, r.stack)


def test_arb_inner_failure_reports_phase():
    class Bad:
        def __call__(self, g_sub, seed, mode, n_upper):
            return InnerResult(members=frozenset(g_sub.nodes), stats=RoundStats())

    g = generate("cycle", {"n": 8}, "unit", 0)
    with pytest.raises(BoostPhaseError, match="phase 1"):
        arb_approx(g, alpha=2, eps=0.5, inner=Bad(), seed=0)


def test_arb_rejects_bad_parameters():
    g = generate("path", {"n": 3}, "unit", 0)
    with pytest.raises(GraphError, match="alpha"):
        arb_approx(g, alpha=0, eps=0.5)
    with pytest.raises(GraphError, match="eps"):
        arb_approx(g, alpha=1, eps=-1.0)


def test_boosted_inner_respects_subgraph_guarantee():
    # inner returns a (1+eps)Delta-approximation on the low-degree subgraph
    g = generate("gnp", {"n": 14, "p": 0.3}, "uniform_range", 6)
    inner = boosted_heavy_inner(eps=0.5)
    res = inner(g, 4, "congest", g.n)
    assert g.is_independent(res.members)
    opt = brute_force_max_is(g).weight
    assert Fraction(3, 2) * g.max_degree * g.total_weight(res.members) >= opt
