# Copyright 2023 Olivia Kinnear
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Integer linear programs for minimum timed target sets: emit, solve with an external solver, decode.

For a horizon k the program has binaries x_<v>_<i> (v is targeted at step i) and y_<v>_<i>
(v is positive at step i by the threshold rule). The constraint rows force y_<v>_<i> to equal
[at least τ(v) neighbors of v were positive or targeted at step i-1], so every feasible
assignment is a schedule and the objective counts the targeted nodes.
"""

import re
import shlex
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from os import getenv
from pathlib import Path
from shutil import which
from subprocess import run, PIPE
from typing import NamedTuple, Optional

from timed_targets.color import style_command, style_url
from timed_targets.errors import DecodeError, InfeasibleModel, InputError, InvalidParameter, SolverNotFound
from timed_targets.exact import ExactSchedule, ExactTargetSet
from timed_targets.graph import Graph, ThresholdAssignment, require_valid_thresholds
from timed_targets.schedule import Schedule, verify_tts
from timed_targets.scratch import scratch_dir

DEFAULT_SOLVER_COMMAND = 'cbc {lp} solve solu {sol}'
SOLVER_COMMAND = getenv('TIMED_TARGETS_SOLVER_CMD') or DEFAULT_SOLVER_COMMAND

SOLVER_MISSING_MESSAGE = f"""
Install an LP-format MILP solver, or point {style_command('--solver-cmd')} at one.
  The command template must contain {style_command('{lp}')} and {style_command('{sol}')}.
  CBC: {style_url('https://github.com/coin-or/Cbc')}
"""[1:-1]

# Objective terms per line of LP text.
OBJECTIVE_WRAP = 10


class SolveStatus(str, Enum):
    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNAVAILABLE = 'unavailable'


class Family(str, Enum):
    """Constraint row families of the program."""
    INACTIVE = 'C'
    ACTIVE = "C'"
    FINAL = 'final'
    OVERLAP = 'overlap'


def x_var(v: int, i: int) -> str:
    return f'x_{v}_{i}'


def y_var(v: int, i: int) -> str:
    return f'y_{v}_{i}'


@dataclass(frozen=True)
class Row:
    family: Family
    terms: tuple[tuple[int, str], ...]
    sense: str
    rhs: int

    def render(self, name: str) -> str:
        return f'{name}: {_expression(self.terms)} {self.sense} {self.rhs}'


def _expression(terms: Iterable[tuple[int, str]]) -> str:
    parts: list[str] = []
    for coefficient, var in terms:
        sign = '-' if coefficient < 0 else '+'
        magnitude = abs(coefficient)
        term = var if magnitude == 1 else f'{magnitude} {var}'
        if parts:
            parts.append(f'{sign} {term}')
        else:
            parts.append(term if sign == '+' else f'- {term}')
    return ' '.join(parts)


@dataclass(frozen=True)
class IlpModel:
    """A program over a fixed horizon, ready to be written as LP text."""
    n: int
    horizon: int
    rows: tuple[Row, ...]
    fixings: tuple[str, ...]
    target_set_only: bool = False

    @property
    def objective(self) -> tuple[str, ...]:
        return tuple(x_var(v, i) for i in range(self.horizon + 1) for v in range(self.n))

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(name
                     for i in range(self.horizon + 1)
                     for v in range(self.n)
                     for name in (x_var(v, i), y_var(v, i)))

    @property
    def variable_count(self) -> int:
        return 2 * self.n * (self.horizon + 1)

    def family_counts(self) -> Counter[Family]:
        return Counter(row.family for row in self.rows)

    def to_lp(self) -> str:
        objective = self.objective
        lines = ['Minimize']
        if objective:
            chunks = [objective[i:i + OBJECTIVE_WRAP] for i in range(0, len(objective), OBJECTIVE_WRAP)]
            lines.append(' obj: ' + ' + '.join(chunks[0]))
            lines.extend(' + ' + ' + '.join(chunk) for chunk in chunks[1:])
        else:
            lines.append(' obj: 0')
        lines.append('Subject To')
        lines.extend(' ' + row.render(f'c{index}') for index, row in enumerate(self.rows))
        lines.append('Bounds')
        lines.extend(f' {var} = 0' for var in self.fixings)
        lines.append('Binary')
        lines.extend(f' {var}' for var in self.variables)
        lines.append('End')
        return '\n'.join(lines) + '\n'


def emit_ilp(g: Graph, tau: ThresholdAssignment, k: int, *, target_set_only: bool = False) -> IlpModel:
    """
    Build the program for horizon `k`.

    With `target_set_only`, targeting is only allowed at step 0, so the optimum over all
    horizons is the minimum target set of the non-progressive model.
    """
    if k < 0:
        raise InvalidParameter(f"Horizon must be non-negative, got {k}")
    require_valid_thresholds(g, tau)

    rows: list[Row] = []
    for i in range(1, k + 1):
        for v in range(g.n):
            incoming = tuple(term for u in g.neighbors(v) for term in ((-1, x_var(u, i - 1)), (-1, y_var(u, i - 1))))
            rows.append(Row(Family.INACTIVE, ((g.degree(v) + 1 - tau[v], y_var(v, i)), *incoming), '>=', 1 - tau[v]))
            outgoing = tuple((1, var) for _, var in incoming)
            rows.append(Row(Family.ACTIVE, (*outgoing, (-tau[v], y_var(v, i))), '>=', 0))
    for v in range(g.n):
        rows.append(Row(Family.FINAL, ((1, x_var(v, k)), (1, y_var(v, k))), '=', 1))
    for i in range(k + 1):
        for v in range(g.n):
            rows.append(Row(Family.OVERLAP, ((1, x_var(v, i)), (1, y_var(v, i))), '<=', 1))

    fixings = [y_var(v, 0) for v in range(g.n)]
    if target_set_only:
        fixings.extend(x_var(v, i) for i in range(1, k + 1) for v in range(g.n))

    return IlpModel(g.n, k, tuple(rows), tuple(fixings), target_set_only)


class IlpSolution(NamedTuple):
    status: SolveStatus
    assignment: dict[str, int]
    objective: Optional[int] = None


UNAVAILABLE = IlpSolution(SolveStatus.UNAVAILABLE, {})

_CBC_ROW = re.compile(r'^\d+$')


def read_solution(text: str, variables: Iterable[str]) -> IlpSolution:
    """
    Parse a solution file of `name value` lines, or CBC `index name value [cost]` lines.

    The first line may be a status header instead; a header mentioning `infeasible` marks
    the model infeasible. Variables the file leaves out are 0, and values ≥ 0.5 read as 1.
    """
    values: dict[str, float] = {}
    seen_content = False
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        parsed = _solution_row(fields)
        if parsed is None:
            if seen_content:
                raise InputError(f"Malformed solution line {number}: {raw.strip()!r}")
            if 'infeasible' in line.lower():
                return IlpSolution(SolveStatus.INFEASIBLE, {})
        else:
            name, value = parsed
            values[name] = value
        seen_content = True

    assignment = {name: int(values.get(name, 0.0) >= 0.5) for name in variables}
    objective = sum(value for name, value in assignment.items() if name.startswith('x_'))
    return IlpSolution(SolveStatus.OPTIMAL, assignment, objective)


def _solution_row(fields: list[str]) -> Optional[tuple[str, float]]:
    if len(fields) >= 3 and _CBC_ROW.match(fields[0]):
        fields = fields[1:3]
    if len(fields) != 2:
        return None
    try:
        return fields[0], float(fields[1])
    except ValueError:
        return None


def _solver_argv(solver_command: Optional[str]) -> list[str]:
    return shlex.split(solver_command or SOLVER_COMMAND)


def solver_name(solver_command: Optional[str] = None) -> str:
    argv = _solver_argv(solver_command)
    return argv[0] if argv else ''


def solver_available(solver_command: Optional[str] = None) -> bool:
    return bool(name := solver_name(solver_command)) and which(name) is not None


def solve_ilp_external(model: IlpModel, solver_command: Optional[str] = None) -> IlpSolution:
    """
    Write `model` as LP text, run the solver command on it and read back the solution.

    `{lp}` and `{sol}` in the command template are replaced with the two scratch file paths.
    Returns an `UNAVAILABLE` solution when the solver executable is not on PATH.
    """
    argv = _solver_argv(solver_command)
    executable = which(argv[0]) if argv else None
    if executable is None:
        return UNAVAILABLE

    with scratch_dir('timed-targets-ilp-') as work:
        lp_file, sol_file = work / 'model.lp', work / 'model.sol'
        lp_file.write_text(model.to_lp())
        command = [executable, *(_substitute(arg, lp_file, sol_file) for arg in argv[1:])]
        result = run(command, stdout=PIPE, stderr=PIPE, encoding='utf-8')
        if result.returncode:
            raise InputError(f"Command '{style_command(argv[0])}' returned non-zero exit status {result.returncode}"
                             + (f"\n{result.stderr.strip()}" if result.stderr.strip() else ''))
        if not sol_file.exists():
            raise InputError(f"Command '{style_command(argv[0])}' did not write a solution file")
        return read_solution(sol_file.read_text(), model.variables)


def _substitute(arg: str, lp_file: Path, sol_file: Path) -> str:
    return arg.replace('{lp}', str(lp_file)).replace('{sol}', str(sol_file))


def schedule_from_assignment(g: Graph, assignment: Mapping[str, float], k: int) -> Schedule:
    """S_i = {v : x_<v>_<i> = 1}, with a trailing empty set when S_k is not empty."""
    sets: list[frozenset[int]] = []
    for i in range(k + 1):
        targeted = set()
        for v in range(g.n):
            x = assignment.get(x_var(v, i), 0) >= 0.5
            y = assignment.get(y_var(v, i), 0) >= 0.5
            if x and y:
                raise DecodeError(f"Node {v} is both targeted and positive at step {i}")
            if x:
                targeted.add(v)
        sets.append(frozenset(targeted))
    if sets[-1]:
        sets.append(frozenset())
    return Schedule(tuple(sets))


def _sweep(g: Graph, tau: ThresholdAssignment, k_max: int, solver_command: Optional[str],
           target_set_only: bool) -> Optional[Schedule]:
    if k_max < 0:
        raise InvalidParameter(f"Maximum horizon must be non-negative, got {k_max}")
    require_valid_thresholds(g, tau)

    best: Optional[Schedule] = None
    for k in range(k_max + 1):
        solution = solve_ilp_external(emit_ilp(g, tau, k, target_set_only=target_set_only), solver_command)
        if solution.status is SolveStatus.UNAVAILABLE:
            raise SolverNotFound(solver_name(solver_command), SOLVER_MISSING_MESSAGE)
        if solution.status is SolveStatus.INFEASIBLE:
            continue
        sched = schedule_from_assignment(g, solution.assignment, k)
        verdict = verify_tts(g, tau, sched)
        if not verdict:
            assert verdict.reason is not None
            raise DecodeError(f"Solver assignment at horizon {k} decodes to a rejected schedule "
                              f"({verdict.reason.value} at step {verdict.index})")
        if best is None or sched.size < best.size:
            best = sched
    return best


def min_tts_via_ilp(g: Graph, tau: ThresholdAssignment, k_max: int,
                    solver_command: Optional[str] = None) -> ExactSchedule:
    """The best schedule over the horizons 0..k_max."""
    best = _sweep(g, tau, k_max, solver_command, target_set_only=False)
    if best is None:
        raise InfeasibleModel(f"Every horizon up to {k_max} is infeasible")
    return ExactSchedule(best.size, best)


def min_ts_via_ilp(g: Graph, tau: ThresholdAssignment, k_max: int,
                   solver_command: Optional[str] = None) -> ExactTargetSet:
    """The smallest non-progressive target set found over the horizons 0..k_max."""
    best = _sweep(g, tau, k_max, solver_command, target_set_only=True)
    if best is None:
        raise InfeasibleModel(f"Every horizon up to {k_max} is infeasible")
    return ExactTargetSet(best.size, best[0])
