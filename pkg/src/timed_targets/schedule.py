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

"""Timed target set schedules: verification, normalization, and the schedule text format."""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, TextIO
from collections.abc import Iterable, Iterator, Sequence

from timed_targets.dynamics import Configuration, Model, configuration, reaches_all_positive, run_to_limit, stepper
from timed_targets.errors import InputError, NotATargetSet, ScheduleRejected
from timed_targets.graph import Graph, ThresholdAssignment, default_labels


@dataclass(frozen=True)
class Schedule:
    """The targeted sets S_0, ..., S_k."""
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if not self.sets:
            raise ValueError("A schedule has at least one step")

    @classmethod
    def of(cls, *sets: Iterable[int]) -> 'Schedule':
        return cls(tuple(frozenset(s) for s in sets))

    @property
    def k(self) -> int:
        return len(self.sets) - 1

    @property
    def size(self) -> int:
        return sum(len(s) for s in self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.sets)

    def __getitem__(self, i: int) -> frozenset[int]:
        return self.sets[i]

    def extended(self, empty_steps: int = 1) -> 'Schedule':
        return Schedule(self.sets + (frozenset(),) * empty_steps)


class RejectReason(str, Enum):
    NONEMPTY_FINAL_S = 'nonempty-final-S'
    Q_FINAL_NOT_V = 'Q-final-not-V'
    ID_RANGE = 'id-range'


@dataclass(frozen=True)
class Verdict:
    """
    The outcome of `verify_tts()`.

    `q_trace` holds Q_0..Q_k whenever the ids were in range, accepted or not.
    """
    accepted: bool
    q_trace: tuple[Configuration, ...] = ()
    reason: Optional[RejectReason] = None
    index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.accepted


def q_trace(g: Graph, tau: ThresholdAssignment, sched: Schedule) -> tuple[Configuration, ...]:
    """Q_0 = ∅ and Q_i = {v : |N(v) ∩ (S_{i-1} ∪ Q_{i-1})| ≥ τ(v)}."""
    advance = stepper(g, tau)
    trace = [0]
    for targeted in sched.sets[:-1]:
        trace.append(advance(configuration(targeted) | trace[-1]))
    return tuple(trace)


def verify_tts(g: Graph, tau: ThresholdAssignment, sched: Schedule) -> Verdict:
    for i, targeted in enumerate(sched):
        if any(not 0 <= v < g.n for v in targeted):
            return Verdict(False, reason=RejectReason.ID_RANGE, index=i)

    trace = q_trace(g, tau, sched)
    if sched[sched.k]:
        return Verdict(False, trace, RejectReason.NONEMPTY_FINAL_S, sched.k)
    if trace[-1] != g.full_mask:
        return Verdict(False, trace, RejectReason.Q_FINAL_NOT_V, sched.k)
    return Verdict(True, trace)


def require_tts(g: Graph, tau: ThresholdAssignment, sched: Schedule) -> tuple[Configuration, ...]:
    """Like `verify_tts()`, but raise `ScheduleRejected` instead of returning a rejection."""
    verdict = verify_tts(g, tau, sched)
    if not verdict:
        assert verdict.reason is not None and verdict.index is not None
        raise ScheduleRejected(verdict.reason.value, verdict.index)
    return verdict.q_trace


def verify_ts(g: Graph, tau: ThresholdAssignment, targets: Iterable[int],
              model: Model = Model.NON_PROGRESSIVE) -> bool:
    return reaches_all_positive(g, tau, configuration(targets), model)


def is_disjoint_schedule(sched: Schedule) -> bool:
    seen: set[int] = set()
    for targeted in sched:
        if not seen.isdisjoint(targeted):
            return False
        seen |= targeted
    return True


def ts_as_schedule(g: Graph, tau: ThresholdAssignment, targets: Iterable[int]) -> Schedule:
    """Embed a non-progressive target set S as the schedule (S, ∅, ..., ∅)."""
    targets = frozenset(targets)
    orbit = run_to_limit(g, tau, configuration(targets), keep_trace=True)
    if not orbit.saw_all_positive:
        raise NotATargetSet(f"The {len(targets)} given node(s) do not make every node positive")

    assert orbit.trace is not None
    horizon = max(orbit.trace.index(g.full_mask), 1)
    return Schedule((targets,) + (frozenset(),) * horizon)


def normalize_schedule(g: Graph, tau: ThresholdAssignment, sched: Schedule) -> Schedule:
    """
    Drop targeted nodes that the rule already makes positive, and cut the schedule
    at the first step where Q_i = V.
    """
    trace = require_tts(g, tau, sched)
    end = trace.index(g.full_mask)
    sets = [frozenset(v for v in targeted if not trace[i] >> v & 1) for i, targeted in enumerate(sched.sets[:end])]
    return Schedule(tuple(sets) + (frozenset(),))


def format_schedule(sched: Schedule, labels: Sequence[str] | None = None) -> str:
    if labels is None:
        labels = default_labels(1 + max((v for s in sched for v in s), default=-1))
    return ''.join(
        f"{i}:" + ''.join(' ' + labels[v] for v in sorted(targeted)) + '\n'
        for i, targeted in enumerate(sched)
    )


def read_schedule(source: Path | TextIO, labels: Sequence[str]) -> Schedule:
    """Read `i: label label ...` lines, with i running 0, 1, ..., k in order."""
    if isinstance(source, Path):
        try:
            text = source.read_text()
        except OSError as err:
            raise InputError(f"Could not read '{source}': {err.strerror or err}")
    else:
        text = source.read()

    index = {label: v for v, label in enumerate(labels)}
    sets: list[frozenset[int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        head, sep, rest = line.partition(':')
        if not sep or head.strip() != str(len(sets)):
            raise InputError(f"Line {lineno}: expected a line starting with `{len(sets)}:`, got {line!r}")
        try:
            sets.append(frozenset(index[label] for label in rest.split()))
        except KeyError as err:
            raise InputError(f"Line {lineno}: unknown node {err.args[0]!r}")

    if not sets:
        raise InputError("Schedule is empty")
    return Schedule(tuple(sets))
