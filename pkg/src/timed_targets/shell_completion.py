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

"""Rich shell completions for the command-line interface."""

from click import Context, Parameter
from click.shell_completion import CompletionItem

from timed_targets.datasets import CACHE_DIR, DATASETS, cached_path
from timed_targets.graph import THRESHOLD_RULES


def rule_shell_complete(_ctx: Context, _param: Parameter, incomplete: str) -> list[CompletionItem]:
    if incomplete.startswith('file:'):
        return [CompletionItem(incomplete, type='file')]
    return [CompletionItem(rule) for rule in [*THRESHOLD_RULES, 'file:'] if rule.startswith(incomplete)]


def dataset_shell_complete(_ctx: Context, _param: Parameter, incomplete: str) -> list[CompletionItem]:
    """Dataset names, marking the ones already in the cache, and then ordinary file paths."""
    items = [
        CompletionItem(name, help='cached' if CACHE_DIR.exists() and cached_path(dataset).exists() else None)
        for name, dataset in DATASETS.items()
        if name.startswith(incomplete)
    ]
    items.append(CompletionItem(incomplete, type='file'))
    return items
