import pytest

from timed_targets.generators import gen_complete_bipartite, gen_cycle, gen_path, gen_star, gen_tower
from timed_targets.graph import Graph, ThresholdAssignment, strict_majority
from timed_targets.schedule import Schedule


Instance = tuple[Graph, ThresholdAssignment]


def with_strict(g: Graph) -> Instance:
    return g, strict_majority(g)


@pytest.fixture
def star10() -> Instance:
    """K_{1,9}, center 0."""
    return with_strict(gen_star(10))


@pytest.fixture
def star10_schedule() -> Schedule:
    """Target the center twice in a row."""
    return Schedule.of({0}, {0}, ())


@pytest.fixture
def k24() -> Instance:
    return with_strict(gen_complete_bipartite(2, 4))


@pytest.fixture
def path4() -> Instance:
    return with_strict(gen_path(4))


@pytest.fixture
def cycle8() -> Instance:
    return with_strict(gen_cycle(8))


@pytest.fixture
def tower3() -> Instance:
    return with_strict(gen_tower(3))


@pytest.fixture
def star10_file(tmp_path):
    path = tmp_path / 'star.txt'
    path.write_text(''.join(f"0 {leaf}\n" for leaf in range(1, 10)))
    return path
