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

"""Exceptions raised by the library and the command-line interface."""

from typing import Optional, IO, Any

from click import echo, get_current_context
from click.exceptions import ClickException

from timed_targets.color import style_command, style_error, style_input, style_value


class ColoredClickException(ClickException):
    def __init__(self, message: str):
        super().__init__(message)
        self.ctx = get_current_context(silent=True)

    def show(self, file: Optional[IO[Any]] = None) -> None:
        if file is None:
            # noinspection PyProtectedMember
            from click._compat import get_text_stderr
            file = get_text_stderr()

        color = False if self.ctx is None else self.ctx.color
        echo(style_error("Error: ") + self.format_message(), file=file, color=color)


class TimedTargetsError(ColoredClickException):
    """A domain error: the input is well-formed but the operation cannot be carried out on it."""
    exit_code = 1


class GraphError(TimedTargetsError):
    """An edge list that does not describe a simple undirected graph."""


class ThresholdError(TimedTargetsError):
    def __init__(self, message: str, violations: tuple[int, ...] = ()):
        super().__init__(message)
        self.violations = violations


class InvalidParameter(TimedTargetsError):
    """A generator or solver parameter outside of its documented range."""


class NotATree(TimedTargetsError):
    pass


class NodeCapExceeded(TimedTargetsError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"Graph has {n} nodes, more than the node cap of {cap}")
        self.n = n
        self.cap = cap

    def format_message(self) -> str:
        return (f"Graph has {style_value(str(self.n))} nodes, "
                f"more than the node cap of {style_value(str(self.cap))}.\n"
                f"  Raise it with {style_command('--node-cap')} if you can wait for the search.")


class NotATargetSet(TimedTargetsError):
    pass


class ScheduleRejected(TimedTargetsError):
    def __init__(self, reason: str, index: int):
        super().__init__(f"Schedule rejected at step {index}: {reason}")
        self.reason = reason
        self.index = index


class BoundInapplicable(TimedTargetsError):
    pass


class OrbitTooLong(TimedTargetsError):
    """The step cap ran out before the orbit repeated a configuration."""


class InfeasibleModel(TimedTargetsError):
    pass


class DecodeError(TimedTargetsError):
    """A solver assignment that does not decode to a valid schedule."""


class InputError(ColoredClickException):
    """Unreadable or malformed input files, and failed downloads."""
    exit_code = 2


class DatasetNotCached(ColoredClickException):
    exit_code = 2

    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def format_message(self) -> str:
        return '\n'.join([
            f"Dataset {style_input(self.name)} is not in the cache.",
            f"  Run the command again without {style_command('--no-download')} to fetch it.",
        ])


class SolverNotFound(ColoredClickException):
    exit_code = 2

    def __init__(self, command_name: str, message: str):
        super().__init__(message)
        self.command_name = command_name

    def format_message(self) -> str:
        return f"Couldn't find the {style_command(self.command_name)} command.\n" + self.message
