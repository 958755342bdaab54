import pytest

from timed_targets.errors import InvalidParameter
from timed_targets.generators import (ba_attachment, er_probability, gen_ba, gen_complete_bipartite, gen_cycle,
                                      gen_er, gen_path, gen_random_tree, gen_star, gen_tower, rng_for,
                                      tower_layers, tower_reference_dtts)
from timed_targets.graph import is_tree, strict_majority
from timed_targets.schedule import is_disjoint_schedule, verify_tts


def test_fixture_sizes():
    assert (gen_star(10).n, gen_star(10).m) == (10, 9)
    assert gen_star(10).degrees[0] == 9
    assert (gen_complete_bipartite(2, 4).n, gen_complete_bipartite(2, 4).m) == (6, 8)
    assert gen_cycle(7).degrees == (2,) * 7
    assert gen_path(1).m == 0
    assert gen_path(5).m == 4


def test_tower_layout():
    layers, leaves = tower_layers(3)
    assert layers == ((0,), (1, 2), (3, 4, 5))
    assert leaves == (6, 7)
    g = gen_tower(3)
    assert (g.n, g.m) == (8, 10)
    assert g.neighbors(0) == (1, 2, 6, 7)


@pytest.mark.parametrize('kappa, size', [(3, 7), (4, 8), (5, 10), (8, 14)])
def test_tower_reference_schedule(kappa, size):
    g = gen_tower(kappa)
    sched = tower_reference_dtts(kappa)
    assert sched.size == size
    assert is_disjoint_schedule(sched)
    assert verify_tts(g, strict_majority(g), sched)


@pytest.mark.parametrize('build', [
    lambda: gen_star(1),
    lambda: gen_complete_bipartite(0, 3),
    lambda: gen_cycle(2),
    lambda: gen_path(0),
    lambda: tower_layers(1),
    lambda: tower_reference_dtts(2),
    lambda: gen_ba(0, 2, seed=0),
    lambda: gen_ba(10, 0, seed=0),
    lambda: gen_er(0, 0.5, seed=0),
    lambda: gen_er(5, 1.5, seed=0),
    lambda: gen_random_tree(0, seed=0),
])
def test_invalid_parameters(build):
    with pytest.raises(InvalidParameter):
        build()


def test_ba_edge_count_and_determinism():
    g = gen_ba(20, 4, seed=7, instance=3)
    assert g.m == 10 + 15 * 4
    assert min(g.degrees) >= 4
    assert gen_ba(20, 4, seed=7, instance=3) == g


def test_ba_smaller_than_core():
    g = gen_ba(3, 4, seed=0)
    assert (g.n, g.m) == (3, 3)


def test_er_extremes_and_determinism():
    assert gen_er(10, 0.0, seed=1).m == 0
    assert gen_er(10, 1.0, seed=1).m == 45
    assert gen_er(15, 0.3, seed=5, instance=2) == gen_er(15, 0.3, seed=5, instance=2)


def test_instance_streams_are_independent():
    first = rng_for(0, 0).random(4).tolist()
    assert rng_for(0, 0).random(4).tolist() == first
    assert rng_for(0, 1).random(4).tolist() != first


@pytest.mark.parametrize('n', [1, 2, 3, 9, 30])
def test_random_tree(n):
    g = gen_random_tree(n, seed=11)
    assert g.n == n
    assert is_tree(g)


def test_density_helpers():
    assert ba_attachment(8.0) == 4
    assert ba_attachment(1.0) == 1
    assert er_probability(9, 8.0) == 1.0
    assert er_probability(17, 8.0) == 0.5
    assert er_probability(1, 8.0) == 0.0
