"""Content-addressed cache of detector runs.

Each entry is one JSON file named by its key, published with an atomic
rename so that an interrupted sweep never leaves a partial entry behind.
"""

import hashlib
import json
import os
import tempfile
import threading
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Set, Union

import numpy as np

from asn_maker.algorithms.registry import RunRecord
from asn_maker.core.logging import get_logger
from asn_maker.graph.model import Cover

logger = get_logger("pipeline.cache")


def cache_key(algorithm: str, params: Mapping[str, Any], digest: str, seed: int) -> str:
    """Stable SHA-256 key of a run's inputs; parameter order is irrelevant."""
    payload = json.dumps(
        {"algorithm": algorithm, "params": params, "network": digest, "seed": int(seed)},
        sort_keys=True,
        separators=(",", ":"),
        default=str,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def record_to_json(record: RunRecord) -> Dict[str, Any]:
    return {
        "algorithm": record.algorithm,
        "network": record.network,
        "params": record.params,
        "status": record.status,
        "score": record.score,
        "message": record.message,
        "seconds": record.seconds,
        "n": record.cover.n if record.cover is not None else None,
        "cover": [sorted(c) for c in record.cover.canonical()] if record.cover else None,
    }


def record_from_json(data: Mapping[str, Any]) -> RunRecord:
    cover = None
    if data.get("cover") is not None:
        cover = Cover.from_communities(data["cover"], int(data["n"]), complete=False)
    return RunRecord(
        algorithm=data["algorithm"],
        network=data["network"],
        params=dict(data["params"]),
        cover=cover,
        seconds=float(data["seconds"]),
        status=data["status"],
        score=data.get("score"),
        message=data.get("message", ""),
        cached=True,
    )


class RunCache:
    """Manages cached run records in a directory."""

    def __init__(self, cache_dir: Union[str, Path]) -> None:
        self._cache_dir = Path(cache_dir) / "runs"
        self._cache_lock = threading.Lock()
        self._cache_dir.mkdir(parents=True, exist_ok=True)
        self._keys: Set[str] = {p.stem for p in self._cache_dir.glob("*.json")}

    def _path(self, key: str) -> Path:
        return self._cache_dir / f"{key}.json"

    def __contains__(self, key: object) -> bool:
        return key in self._keys

    def keys(self) -> List[str]:
        with self._cache_lock:
            return sorted(self._keys)

    def get(self, key: str) -> Optional[RunRecord]:
        """The cached record, or None when absent or unreadable."""
        if key not in self._keys:
            return None
        try:
            data = json.loads(self._path(key).read_text(encoding="utf-8"))
            return record_from_json(data)
        except (OSError, ValueError, KeyError) as e:
            logger.warning("Ignoring unreadable cache entry %s: %s", key, e)
            return None

    def put(self, key: str, record: RunRecord) -> None:
        """Publish a record atomically: write a temp file, then rename."""
        text = json.dumps(record_to_json(record), sort_keys=True)
        fd, temp = tempfile.mkstemp(dir=self._cache_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
            os.replace(temp, self._path(key))
        except OSError:
            Path(temp).unlink(missing_ok=True)
            raise
        with self._cache_lock:
            self._keys.add(key)

    def audit(
        self,
        keys: List[str],
        recompute: Callable[[str], Optional[Cover]],
        sample: int = 20,
        seed: int = 0,
    ) -> List[str]:
        """Recompute a random sample of entries and return mismatching keys.

        Args:
            keys: Candidate keys, typically those used by the current run
            recompute: Produces the cover for a key (None for a failed run)
            sample: Number of keys to check
            seed: Sampling seed
        """
        candidates = sorted(k for k in keys if k in self._keys)
        if not candidates or sample <= 0:
            return []
        rng = np.random.default_rng(seed)
        chosen = rng.choice(len(candidates), size=min(sample, len(candidates)), replace=False)
        mismatches = []
        for i in sorted(chosen):
            key = candidates[i]
            cached = self.get(key)
            fresh = recompute(key)
            cached_cover = cached.cover.canonical() if cached and cached.cover else None
            fresh_cover = fresh.canonical() if fresh is not None else None
            if cached_cover != fresh_cover:
                logger.warning("Cache audit mismatch for %s", key)
                mismatches.append(key)
        return mismatches

    def clear(self) -> None:
        """Remove every cached entry."""
        with self._cache_lock:
            for key in self._keys:
                self._path(key).unlink(missing_ok=True)
            self._keys.clear()
        logger.info("Cache cleared")
