"""On-disk cache of certified traces, keyed by discriminant.

One JSON file per cache directory, rewritten through a temporary file and
an atomic rename. Only one process writes.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import tempfile
from pathlib import Path

from .traces import TraceResult, trace

CACHE_ENV = "ONAN_MOONSHINE_CACHE"
CACHE_FILE = "traces-v1.json"
CACHE_VERSION = 1


class CacheError(RuntimeError):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "onan_moonshine"


def _checksum(records: list[dict]) -> str:
    blob = json.dumps(records, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class TraceCache:
    def __init__(self, directory: Path | str | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.path = self.directory / CACHE_FILE
        self._records: dict[int, dict] = {}

    def __contains__(self, D: int) -> bool:
        return D in self._records

    def __len__(self):
        return len(self._records)

    def get(self, D: int) -> int | None:
        rec = self._records.get(D)
        return None if rec is None else rec["a"]

    def add(self, result: TraceResult):
        self._records[result.D.value] = {
            "D": result.D.value,
            "a": result.a,
            "precision": result.precision,
            "residual": result.residual,
        }

    def records(self) -> list[dict]:
        return [self._records[D] for D in sorted(self._records)]

    def load(self, spot_checks: int = 2, rng: random.Random | None = None) -> "TraceCache":
        """Read the cache file (if any), verify its checksum and recompute a
        few random entries."""
        if not self.path.exists():
            return self
        try:
            data = json.loads(self.path.read_text())
        except json.JSONDecodeError as exc:
            raise CacheError(f"{self.path} is not valid JSON: {exc}") from exc
        if data.get("format_version") != CACHE_VERSION:
            raise CacheError(f"{self.path} has unsupported format version {data.get('format_version')}")
        records = data["records"]
        if _checksum(records) != data.get("checksum"):
            raise CacheError(f"{self.path} failed its checksum")
        self._records = {rec["D"]: rec for rec in records}
        rng = rng or random.Random()
        for rec in rng.sample(records, min(spot_checks, len(records))):
            if trace(rec["D"]).a != rec["a"]:
                raise CacheError(f"cached a({rec['D']}) = {rec['a']} does not match recomputation")
        return self

    def save(self):
        self.directory.mkdir(parents=True, exist_ok=True)
        records = self.records()
        payload = {"format_version": CACHE_VERSION, "records": records, "checksum": _checksum(records)}
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".traces-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh, indent=1)
                fh.write("\n")
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
