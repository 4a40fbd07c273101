"""Stable seed derivation.

Seeds are derived from a master seed and string parts through SHA-256, so
adding algorithms or networks never changes the seeds of existing ones.
"""

import hashlib
from typing import Union

SeedPart = Union[str, int, float]


def derive_seed(master: int, *parts: SeedPart) -> int:
    """A 63-bit seed determined only by the master seed and the parts."""
    text = "\x1f".join([str(int(master))] + [str(p) for p in parts])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1
