from itertools import product

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from strategies import random_thresholds
from timed_targets.errors import NotATree
from timed_targets.exact import min_tts_exact
from timed_targets.generators import gen_cycle, gen_path, gen_random_tree
from timed_targets.graph import Graph, build_graph, simple_majority, strict_majority, thresholds
from timed_targets.schedule import verify_tts
from timed_targets.tree import (NodeClass, choose_root, classify_nodes, construct_tts_tree, min_tts_tree_size,
                                tree_lower_bound_2A)


def check_tree(g, tau):
    size = min_tts_tree_size(g, tau)
    sched = construct_tts_tree(g, tau)
    assert verify_tts(g, tau, sched)
    assert sched.size == size
    assert tree_lower_bound_2A(g, tau) <= size
    return size


def test_star_classification(star10):
    cls = classify_nodes(*star10)
    assert cls.root == 0
    assert cls.classes[0] is NodeClass.A_PRIME
    assert cls.members(NodeClass.LEAF) == frozenset(range(1, 10))
    assert cls.a == frozenset({0})
    assert cls.leaf_count[0] == 9


def test_root_prefers_a_double_prime_and_c(path4):
    assert choose_root(*path4) == 1
    assert classify_nodes(*path4).classes[1] is NodeClass.A_DOUBLE_PRIME

    g = gen_path(5)
    assert choose_root(g, thresholds([1] * 5)) == 1
    assert classify_nodes(g, thresholds([1] * 5)).classes[2] is NodeClass.B


@pytest.mark.parametrize('g, tau, size, bound', [
    (gen_path(2), thresholds([1, 1]), 2, 2),
    (build_graph(2, [(0, 1)]), thresholds([1, 0]), 0, 0),
    (gen_path(3), strict_majority(gen_path(3)), 2, 2),
    (gen_path(4), strict_majority(gen_path(4)), 4, 4),
    (gen_path(5), thresholds([1] * 5), 2, 0),
])
def test_small_trees(g, tau, size, bound):
    assert check_tree(g, tau) == size
    assert tree_lower_bound_2A(g, tau) == bound


def test_star(star10):
    assert check_tree(*star10) == 2
    assert tree_lower_bound_2A(*star10) == 2


@pytest.mark.parametrize('g', [gen_cycle(4), build_graph(4, [(0, 1), (2, 3)])])
def test_not_a_tree(g):
    tau = thresholds([0] * g.n)
    with pytest.raises(NotATree):
        min_tts_tree_size(g, tau)
    with pytest.raises(NotATree):
        construct_tts_tree(g, tau)


@pytest.mark.parametrize('order', range(2, 10))
@pytest.mark.parametrize('rule', [strict_majority, simple_majority])
def test_every_small_tree_against_search(order, rule):
    for tree in nx.nonisomorphic_trees(order):
        g = Graph.from_networkx(tree)
        tau = rule(g)
        assert check_tree(g, tau) == min_tts_exact(g, tau).size


@pytest.mark.slow
@settings(max_examples=400, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2 ** 16), st.data())
def test_random_trees_against_search(n, seed, data):
    g = gen_random_tree(n, seed)
    tau = data.draw(random_thresholds(g, minimum=1))
    assert check_tree(g, tau) == min_tts_exact(g, tau).size


def every_threshold(g):
    return (thresholds(values) for values in product(*(range(1, d + 1) for d in g.degrees)))


@pytest.mark.parametrize('order', [
    *range(2, 8),
    pytest.param(8, marks=pytest.mark.slow),
    pytest.param(9, marks=pytest.mark.slow),
])
def test_every_small_tree_and_threshold_against_search(order):
    for tree in nx.nonisomorphic_trees(order):
        g = Graph.from_networkx(tree)
        for tau in every_threshold(g):
            assert check_tree(g, tau) == min_tts_exact(g, tau).size
