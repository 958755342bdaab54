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

"""Scratch files and directories, as `pathlib.Path` objects that are removed on exit."""

from collections.abc import Iterator
from contextlib import contextmanager, suppress
from os import close, remove
from pathlib import Path
from shutil import rmtree
from tempfile import mkdtemp, mkstemp
from typing import Optional


@contextmanager
def scratch_file(suffix: str = '', directory: Optional[Path] = None) -> Iterator[Path]:
    """Yields an empty file that is deleted afterwards unless it has been moved away."""
    handle, name = mkstemp(suffix=suffix, prefix='timed-targets-', dir=directory)
    close(handle)
    try:
        yield Path(name)
    finally:
        with suppress(FileNotFoundError):
            remove(name)


@contextmanager
def scratch_dir(prefix: str = 'timed-targets-') -> Iterator[Path]:
    directory = mkdtemp(prefix=prefix)
    try:
        yield Path(directory)
    finally:
        with suppress(FileNotFoundError):
            rmtree(directory)
