"""On-disk caching of root tables and enumeration words.

Cache files are JSON lines keyed by the hash of the canonical matrix
bytes plus the cap, with the format version in the file name, so stale
versions are simply never found rather than migrated.  All writes are
atomic (temp file then rename).
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from kmlab.gcm import GeneralizedCartanMatrix
from kmlab.roots import RealRoot, RootTable

CACHE_VERSION = 1
ENV_VAR = "KMLAB_CACHE"


def resolve_cache_dir(explicit=None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "kmlab"


def atomic_write_bytes(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path: Path, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


def _roots_path(cache_dir: Path, A: GeneralizedCartanMatrix, H: int) -> Path:
    return cache_dir / f"roots-v{CACHE_VERSION}-{A.hash()}-H{H}.jsonl"


def store_root_table(table: RootTable, cache_dir) -> Path:
    path = _roots_path(Path(cache_dir), table.gcm, table.height_cap)
    lines = [
        json.dumps(
            {
                "coords": list(r.root),
                "coroot": list(r.coroot),
                "height": r.height,
            },
            separators=(",", ":"),
        )
        for r in table.positive
    ]
    atomic_write_text(path, "\n".join(lines) + "\n")
    return path


def load_root_table(A: GeneralizedCartanMatrix, H: int, cache_dir) -> RootTable | None:
    path = _roots_path(Path(cache_dir), A, H)
    if not path.is_file():
        return None
    positive = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            positive.append(
                RealRoot(tuple(rec["coords"]), tuple(rec["coroot"]))
            )
    return RootTable(gcm=A, height_cap=H, positive=tuple(positive))


def _words_path(cache_dir: Path, A: GeneralizedCartanMatrix, L: int) -> Path:
    return cache_dir / f"words-v{CACHE_VERSION}-{A.hash()}-L{L}.jsonl"


def store_words(A: GeneralizedCartanMatrix, L: int, words, cache_dir) -> Path:
    path = _words_path(Path(cache_dir), A, L)
    lines = [json.dumps(list(w), separators=(",", ":")) for w in words]
    atomic_write_text(path, "\n".join(lines) + "\n")
    return path


def load_words(A: GeneralizedCartanMatrix, L: int, cache_dir):
    path = _words_path(Path(cache_dir), A, L)
    if not path.is_file():
        return None
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(tuple(json.loads(line)))
    return out
