import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from strategies import configurations, instances
from timed_targets.dynamics import (Model, batch_reaches_all_positive, bit_string, configuration, positive_nodes,
                                    reaches_all_positive, run_to_limit, step)
from timed_targets.errors import OrbitTooLong
from timed_targets.generators import gen_star
from timed_targets.graph import strict_majority


def test_configuration_helpers():
    conf = configuration([0, 3, 4])
    assert conf == 0b11001
    assert positive_nodes(conf) == [0, 3, 4]
    assert bit_string(conf, 6) == '100110'


def test_star_center_turns_leaves_positive(star10):
    g, tau = star10
    assert step(g, tau, configuration([0])) == configuration(range(1, 10))
    assert step(g, tau, configuration(range(1, 10))) == configuration([0])
    assert step(g, tau, configuration([0]), Model.PROGRESSIVE) == g.full_mask


def test_star_center_alone_oscillates(star10):
    g, tau = star10
    orbit = run_to_limit(g, tau, configuration([0]), keep_trace=True)
    assert orbit.transient_length == 0
    assert orbit.cycle_length == 2
    assert not orbit.saw_all_positive
    assert orbit.trace == (configuration([0]), configuration(range(1, 10)))


def test_example_target_sets(star10):
    g, tau = star10
    assert reaches_all_positive(g, tau, configuration([0]), Model.PROGRESSIVE)
    assert not reaches_all_positive(g, tau, configuration([0]))
    assert reaches_all_positive(g, tau, configuration([0, 1, 2, 3, 4, 5]))
    assert not reaches_all_positive(g, tau, configuration([0, 1, 2, 3, 4]))


def test_step_cap():
    g = gen_star(4)
    with pytest.raises(OrbitTooLong):
        run_to_limit(g, strict_majority(g), configuration([0]), max_steps=1)


@settings(max_examples=500, deadline=None)
@given(data=st.data())
def test_orbits_end_in_short_cycles(data):
    g, tau = data.draw(instances(max_n=9))
    conf = data.draw(configurations(g.n))
    orbit = run_to_limit(g, tau, conf)
    assert orbit.cycle_length in (1, 2)
    assert orbit.transient_length <= 10 * g.m + g.n


@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_progressive_orbits_reach_a_fixed_point(data):
    g, tau = data.draw(instances(max_n=9))
    conf = data.draw(configurations(g.n))
    assert run_to_limit(g, tau, conf, model=Model.PROGRESSIVE).cycle_length == 1


@settings(max_examples=100, deadline=None)
@given(data=st.data(), model=st.sampled_from(Model))
def test_batch_agrees_with_single_runs(data, model):
    g, tau = data.draw(instances(max_n=7))
    confs = data.draw(st.lists(configurations(g.n), min_size=1, max_size=12))
    matrix = np.array([[conf >> v & 1 for v in range(g.n)] for conf in confs], dtype=bool).reshape(len(confs), g.n)
    expected = [reaches_all_positive(g, tau, conf, model) for conf in confs]
    assert batch_reaches_all_positive(g, tau, matrix, model).tolist() == expected
