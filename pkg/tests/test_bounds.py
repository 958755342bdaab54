import pytest
from hypothesis import given, settings

from strategies import instances
from timed_targets.bounds import applicable_bounds, best_lower_bound, lb_even, lb_strict_majority
from timed_targets.errors import BoundInapplicable
from timed_targets.exact import min_tts_exact
from timed_targets.generators import gen_complete_bipartite, gen_cycle, gen_star
from timed_targets.graph import build_graph, simple_majority, strict_majority, thresholds


def test_star(star10):
    assert lb_strict_majority(*star10) == 2
    assert applicable_bounds(*star10) == {'strict': 2, 'even': None, 'tree-2A': 2}
    assert best_lower_bound(*star10) == (2, 'strict')


def test_even_cycles():
    g = gen_cycle(12)
    assert applicable_bounds(g, strict_majority(g)) == {'strict': 8, 'even': 12, 'tree-2A': None}
    g = gen_cycle(8)
    assert best_lower_bound(g, strict_majority(g)) == (8, 'even')


def test_complete_bipartite(k24):
    assert lb_strict_majority(*k24) == 3
    assert lb_even(*k24) == 4


def test_inapplicable():
    g = gen_cycle(5)
    with pytest.raises(BoundInapplicable):
        lb_strict_majority(g, simple_majority(g))
    with pytest.raises(BoundInapplicable):
        lb_even(g, thresholds([1] * 5))
    assert best_lower_bound(g, thresholds([1] * 5)) == (0, 'none')

    star_and_pair = build_graph(5, [(0, 1), (0, 2), (3, 4)])
    with pytest.raises(BoundInapplicable):
        lb_even(star_and_pair, strict_majority(star_and_pair))

    with_isolated = build_graph(3, [(0, 1)])
    with pytest.raises(BoundInapplicable):
        lb_strict_majority(with_isolated, strict_majority(with_isolated))


@pytest.mark.parametrize('g', [
    *(gen_star(n) for n in (4, 6, 10)),
    *(gen_cycle(n) for n in range(3, 13)),
    *(gen_complete_bipartite(2, 2 * half) for half in (1, 2, 3)),
])
def test_tight_instances(g):
    tau = strict_majority(g)
    assert best_lower_bound(g, tau).value == min_tts_exact(g, tau).size


@settings(max_examples=200, deadline=None)
@given(instances(max_n=8))
def test_bounds_are_sound(instance):
    g, tau = instance
    assert best_lower_bound(g, tau).value <= min_tts_exact(g, tau).size


@pytest.mark.slow
@settings(max_examples=40, deadline=None)
@given(instances(min_n=10, max_n=14, strict=True))
def test_strict_majority_bounds_are_sound_up_to_14_nodes(instance):
    g, tau = instance
    optimum = min_tts_exact(g, tau).size
    for name, value in applicable_bounds(g, tau).items():
        assert value is None or value <= optimum, name
