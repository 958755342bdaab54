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

"""The public social networks used for the large-graph comparison, and their download cache."""

import zipfile
from dataclasses import dataclass
from math import ceil
from os import getenv, makedirs
from pathlib import Path
from shutil import move
from typing import Optional, overload

import requests
from click import echo, format_filename, get_text_stream, progressbar
from filelock import FileLock
from requests.exceptions import ConnectionError, HTTPError, InvalidSchema, InvalidURL, MissingSchema, Timeout

from timed_targets.color import style_input, style_path, style_task, style_url
from timed_targets.errors import DatasetNotCached, InputError
from timed_targets.scratch import scratch_file

CACHE_DIR_NAME = 'timed-targets'

DOWNLOAD_CHUNK_SIZE = 8192


@dataclass(frozen=True)
class Dataset:
    name: str
    url: str
    filename: str
    nodes: int
    tts_greedy: int
    ts_greedy: int
    member: Optional[str] = None
    """Archive member holding the edge list, for datasets distributed as ZIP files."""

    @property
    def improvement(self) -> float:
        return 100 * (self.ts_greedy - self.tts_greedy) / self.ts_greedy


DATASETS: dict[str, Dataset] = {ds.name: ds for ds in [
    Dataset(
        name='facebook',
        url=getenv('TIMED_TARGETS_FACEBOOK_URL', 'https://snap.stanford.edu/data/facebook_combined.txt.gz'),
        filename='facebook_combined.txt.gz',
        nodes=4039, tts_greedy=1727, ts_greedy=1985,
    ),
    Dataset(
        name='twitter',
        url=getenv('TIMED_TARGETS_TWITTER_URL', 'https://snap.stanford.edu/data/twitter_combined.txt.gz'),
        filename='twitter_combined.txt.gz',
        nodes=81306, tts_greedy=25022, ts_greedy=28991,
    ),
    Dataset(
        name='twitch',
        url=getenv('TIMED_TARGETS_TWITCH_URL', 'https://snap.stanford.edu/data/twitch_gamers.zip'),
        filename='large_twitch_edges.csv',
        nodes=168114, tts_greedy=44795, ts_greedy=53726,
        member='large_twitch_edges.csv',
    ),
]}


@overload
def getenv_dir(key: str, default: None = None) -> Optional[Path]: ...

@overload
def getenv_dir(key: str, default: Path) -> Path: ...

def getenv_dir(key: str, default: Optional[Path] = None) -> Optional[Path]:
    """An absolute directory from the environment; relative values are ignored."""
    if value := getenv(key):
        path = Path(value)
        if path.is_absolute():
            return path.resolve()
    return default


def get_cache_dir() -> Path:
    return (getenv_dir('TIMED_TARGETS_CACHE_DIR')
            or getenv_dir('XDG_CACHE_HOME', Path.home() / '.cache') / CACHE_DIR_NAME)


CACHE_DIR: Path = get_cache_dir()
cache_dir_lock = FileLock(CACHE_DIR.parent / f'.{CACHE_DIR.name}.lock', timeout=10)


def get_dataset(name: str) -> Dataset:
    try:
        return DATASETS[name]
    except KeyError:
        raise InputError(f"Unknown dataset {style_input(name)}. Known datasets: {', '.join(DATASETS)}")


def cached_path(dataset: Dataset) -> Path:
    return CACHE_DIR / dataset.filename


def download(url: str, destination: Path, label: str) -> None:
    """Stream `url` into `destination`, showing a progress bar on stderr."""
    try:
        with requests.get(url, stream=True, timeout=10) as r:
            r.raise_for_status()
            try:
                length = ceil(int(r.headers['Content-Length']) / DOWNLOAD_CHUNK_SIZE)
            except (KeyError, ValueError):
                length = None
            with (open(destination, 'wb') as file,
                  progressbar(r.iter_content(chunk_size=DOWNLOAD_CHUNK_SIZE),
                              label=style_task(label), length=length,
                              file=get_text_stream('stderr')) as chunks):
                for chunk in chunks:
                    file.write(chunk)
    except (InvalidURL, InvalidSchema):
        raise InputError(f"Invalid URL '{style_url(url)}'")
    except MissingSchema:
        raise InputError(f"Invalid URL '{style_url(url)}'. Perhaps you meant {style_url('https://' + url)}?")
    except ConnectionError:
        raise InputError(f"Could not connect to {style_url(url)}")
    except Timeout:
        raise InputError(f"Request to {style_url(url)} timed out")
    except HTTPError:
        raise InputError(f"Request to {style_url(url)}: {r.status_code} {r.reason}")


def fetch_dataset(name: str, *, allow_download: bool = True) -> Path:
    """
    The cached edge list of a dataset, downloading it first if needed.

    ZIP archives are unpacked down to the one member that holds the edge list.
    """
    dataset = get_dataset(name)
    path = cached_path(dataset)

    with cache_dir_lock:
        if path.exists():
            return path
    if not allow_download:
        raise DatasetNotCached(name)

    makedirs(CACHE_DIR, exist_ok=True)
    echo(f"Fetching {style_input(name)} into {style_path(format_filename(CACHE_DIR))}", err=True)

    with scratch_file(suffix='.download', directory=CACHE_DIR) as partial:
        download(dataset.url, partial, f"Downloading {name}")
        if dataset.member is not None:
            with scratch_file(suffix='.member', directory=CACHE_DIR) as unpacked:
                _unpack_member(partial, dataset.member, unpacked, dataset.url)
                with cache_dir_lock:
                    move(unpacked, path)
        else:
            with cache_dir_lock:
                move(partial, path)
    return path


def _unpack_member(archive: Path, member: str, destination: Path, url: str) -> None:
    try:
        with zipfile.ZipFile(archive) as zf:
            candidates = [info for info in zf.infolist() if Path(info.filename).name == member]
            if not candidates:
                raise InputError(f"Archive from {style_url(url)} has no member named {style_input(member)}")
            with zf.open(candidates[0]) as src, open(destination, 'wb') as dst:
                while chunk := src.read(DOWNLOAD_CHUNK_SIZE):
                    dst.write(chunk)
    except zipfile.BadZipFile:
        raise InputError(f"Got a bad ZIP file from {style_url(url)}")
