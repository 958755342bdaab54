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
"""Terminal styling for solver results, bounds and errors."""

from functools import partial
from typing import Optional

from click import style


HELP_COLORS = dict(help_headers_color='yellow', help_options_color='green')


_style: partial[partial[str]] = partial(partial, style)

style_command = _style(fg='cyan', bold=True)
style_error = _style(fg='red', bold=True)
style_input = _style(fg='yellow')
style_path = _style(fg='blue')
style_task = _style(fg='cyan')
style_url = _style(underline=True)

style_value = _style(bold=True)
style_ok = _style(fg='green', bold=True)
style_fail = _style(fg='red')


def yes_no(flag: Optional[bool]) -> str:
    return 'yes' if flag else 'no'


def style_bound(value: Optional[int]) -> str:
    """A lower bound, or `inapplicable` when it does not hold for the instance."""
    return style_value(str(value)) if value is not None else style_fail('inapplicable')


def style_size(kind: str, size: int, **details: object) -> str:
    """`TTS size=2 k=2 disjoint=no`, with the size in bold."""
    fields = ''.join(f" {name}={value}" for name, value in details.items())
    return f"{kind} size={style_value(str(size))}{fields}"
