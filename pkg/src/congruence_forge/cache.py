"""Persistent text cache of exact C(n, A, B) values.

Format: a version header line, then one ``A B n value`` record per line in
decimal, sorted by (A, B, n).  A file with any other header, or with a line
that does not parse, is ignored as a whole and rewritten on the next save.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Optional

HEADER = "# congruence-forge sequence cache v1"
ENV_VAR = "CONGRUENCE_FORGE_CACHE"


def default_cache_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "congruence-forge" / "sequences.txt"


class SequenceCache:
    def __init__(self, path):
        self.path = Path(path)
        self.status = "unread"

    def load(self) -> dict[tuple[int, int, int], int]:
        try:
            text = self.path.read_text()
        except FileNotFoundError:
            self.status = "missing"
            return {}
        lines = text.splitlines()
        if not lines or lines[0] != HEADER:
            self.status = "version-mismatch"
            return {}
        records = {}
        for line in lines[1:]:
            if not line.strip():
                continue
            parts = line.split()
            try:
                A, B, n, value = (int(x) for x in parts)
            except ValueError:
                self.status = "corrupt"
                return {}
            records[(A, B, n)] = value
        self.status = "ok"
        return records

    def save(self, records: dict[tuple[int, int, int], int]) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        body = [HEADER] + [f"{A} {B} {n} {v}" for (A, B, n), v in sorted(records.items())]
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".cache-")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write("\n".join(body) + "\n")
            os.replace(tmp, self.path)
        except BaseException:
            os.unlink(tmp)
            raise


def store_values(records: dict) -> dict:
    """Cache records keyed for a :class:`~congruence_forge.congruences.TermStore`."""
    return {("C", A, B, n): v for (A, B, n), v in records.items()}


def cache_records(store_values: dict) -> dict:
    return {key[1:]: v for key, v in store_values.items() if key[0] == "C" and len(key) == 4}


def open_cache(path: Optional[str], disabled: bool = False) -> Optional[SequenceCache]:
    if disabled:
        return None
    return SequenceCache(path if path else default_cache_path())
