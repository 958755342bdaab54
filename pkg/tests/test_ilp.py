import pytest

from timed_targets.errors import DecodeError, InfeasibleModel, InputError, InvalidParameter, SolverNotFound
from timed_targets.exact import min_ts_exact, min_tts_exact
from timed_targets.generators import gen_path
from timed_targets.graph import strict_majority, thresholds
from timed_targets.ilp import (DEFAULT_SOLVER_COMMAND, Family, SolveStatus, emit_ilp, min_ts_via_ilp, min_tts_via_ilp,
                               read_solution, schedule_from_assignment, solve_ilp_external, solver_available,
                               solver_name)
from timed_targets.schedule import Schedule

K2 = gen_path(2)
K2_TAU = thresholds([1, 1])

K2_LP = """\
Minimize
 obj: x_0_0 + x_1_0 + x_0_1 + x_1_1
Subject To
 c0: y_0_1 - x_1_0 - y_1_0 >= 0
 c1: x_1_0 + y_1_0 - y_0_1 >= 0
 c2: y_1_1 - x_0_0 - y_0_0 >= 0
 c3: x_0_0 + y_0_0 - y_1_1 >= 0
 c4: x_0_1 + y_0_1 = 1
 c5: x_1_1 + y_1_1 = 1
 c6: x_0_0 + y_0_0 <= 1
 c7: x_1_0 + y_1_0 <= 1
 c8: x_0_1 + y_0_1 <= 1
 c9: x_1_1 + y_1_1 <= 1
Bounds
 y_0_0 = 0
 y_1_0 = 0
Binary
 x_0_0
 y_0_0
 x_1_0
 y_1_0
 x_0_1
 y_0_1
 x_1_1
 y_1_1
End
"""

# Feasible from horizon 1 on, with both nodes targeted at step 0.
FEASIBLE_FROM_ONE = """\
#!/bin/sh
if grep -q x_0_1 "$1"; then
  printf 'Optimal - objective value 2\\n0 x_0_0 1 1\\n1 x_1_0 1 1\\n2 y_0_1 1 0\\n3 y_1_1 1 0\\n' > "$2"
else
  echo 'Infeasible - objective value 0' > "$2"
fi
"""


def fake_solver(tmp_path, script: str) -> str:
    path = tmp_path / 'fake-solver'
    path.write_text(script)
    path.chmod(0o755)
    return f'{path} {{lp}} {{sol}}'


def test_k2_program():
    model = emit_ilp(K2, K2_TAU, 1)
    assert model.to_lp() == K2_LP
    assert model.variable_count == len(model.variables) == 8
    assert model.family_counts() == {Family.INACTIVE: 2, Family.ACTIVE: 2, Family.FINAL: 2, Family.OVERLAP: 4}


def test_star_program(star10):
    model = emit_ilp(*star10, 3)
    assert model.variable_count == 80
    assert model.family_counts() == {Family.INACTIVE: 30, Family.ACTIVE: 30, Family.FINAL: 10, Family.OVERLAP: 40}
    lp = model.to_lp()
    assert sum(1 for line in lp.splitlines() if line.startswith(' + ')) == 3
    assert ' c0: 5 y_0_1 - x_1_0 - y_1_0' in lp


def test_target_set_program_fixes_later_targets():
    model = emit_ilp(K2, K2_TAU, 2, target_set_only=True)
    assert model.fixings == ('y_0_0', 'y_1_0', 'x_0_1', 'x_1_1', 'x_0_2', 'x_1_2')


def test_negative_horizon():
    with pytest.raises(InvalidParameter):
        emit_ilp(K2, K2_TAU, -1)


def test_read_plain_solution():
    solution = read_solution("# written by hand\nx_0_0 1\nx_1_0 0.9999\ny_0_1 0.2\n", emit_ilp(K2, K2_TAU, 1).variables)
    assert solution.status is SolveStatus.OPTIMAL
    assert solution.objective == 2
    assert solution.assignment['x_1_0'] == 1
    assert solution.assignment['y_0_1'] == 0
    assert solution.assignment['y_1_1'] == 0


def test_read_cbc_solution():
    text = "Optimal - objective value 1.00000000\n      0 x_0_0      1       1\n"
    solution = read_solution(text, ['x_0_0', 'y_0_0'])
    assert solution == (SolveStatus.OPTIMAL, {'x_0_0': 1, 'y_0_0': 0}, 1)


def test_read_infeasible_solution():
    assert read_solution("Infeasible - objective value 0\n", ['x_0_0']).status is SolveStatus.INFEASIBLE


def test_read_malformed_solution():
    with pytest.raises(InputError):
        read_solution("x_0_0 1\nthis is not a row\n", ['x_0_0'])


def test_decode():
    assert schedule_from_assignment(K2, {'x_0_0': 1, 'x_1_0': 1, 'y_0_1': 1, 'y_1_1': 1}, 1) == Schedule.of({0, 1}, ())
    assert schedule_from_assignment(K2, {'x_0_0': 1}, 0) == Schedule.of({0}, ())
    with pytest.raises(DecodeError):
        schedule_from_assignment(K2, {'x_0_1': 1, 'y_0_1': 1}, 1)


def test_solver_lookup():
    assert solver_name(DEFAULT_SOLVER_COMMAND) == 'cbc'
    assert not solver_available('no-such-solver-on-path {lp} {sol}')
    assert solve_ilp_external(emit_ilp(K2, K2_TAU, 0), 'no-such-solver-on-path {lp} {sol}').status \
        is SolveStatus.UNAVAILABLE


def test_missing_solver():
    with pytest.raises(SolverNotFound) as info:
        min_tts_via_ilp(K2, K2_TAU, 1, 'no-such-solver-on-path {lp} {sol}')
    assert info.value.exit_code == 2


def test_sweep_with_fake_solver(tmp_path):
    command = fake_solver(tmp_path, FEASIBLE_FROM_ONE)
    assert min_tts_via_ilp(K2, K2_TAU, 1, command) == (2, Schedule.of({0, 1}, ()))
    assert min_ts_via_ilp(K2, K2_TAU, 1, command) == (2, frozenset({0, 1}))


def test_sweep_all_infeasible(tmp_path):
    command = fake_solver(tmp_path, "#!/bin/sh\necho 'Infeasible' > \"$2\"\n")
    with pytest.raises(InfeasibleModel):
        min_tts_via_ilp(K2, K2_TAU, 2, command)


def test_sweep_rejects_bad_assignments(tmp_path):
    command = fake_solver(tmp_path, "#!/bin/sh\necho 'x_0_0 1' > \"$2\"\n")
    with pytest.raises(DecodeError):
        min_tts_via_ilp(K2, K2_TAU, 0, command)


@pytest.mark.parametrize('script', ["#!/bin/sh\nexit 3\n", "#!/bin/sh\ntrue\n"])
def test_solver_failures(tmp_path, script):
    with pytest.raises(InputError):
        solve_ilp_external(emit_ilp(K2, K2_TAU, 0), fake_solver(tmp_path, script))


@pytest.mark.skipif(not solver_available(DEFAULT_SOLVER_COMMAND), reason="cbc is not installed")
@pytest.mark.parametrize('n', [2, 3, 4, 5])
def test_cbc_agrees_with_search(n):
    g = gen_path(n)
    tau = strict_majority(g)
    assert min_tts_via_ilp(g, tau, 4, DEFAULT_SOLVER_COMMAND).size == min_tts_exact(g, tau).size
    assert min_ts_via_ilp(g, tau, 4, DEFAULT_SOLVER_COMMAND).size == min_ts_exact(g, tau).size
