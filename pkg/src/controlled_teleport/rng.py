"""Counter-based, splittable random streams.

Every consumer gets its own Philox stream keyed by ``(seed, *labels)``.
Streams for different labels are independent, and adding new labels
never changes the draws of existing ones, so trials can run in any
order or in parallel and still produce the same numbers.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _label_key(label) -> int:
    if isinstance(label, (bool, np.bool_)):
        raise TypeError("boolean stream labels are ambiguous")
    if isinstance(label, (int, np.integer)):
        if label < 0:
            raise ValueError(f"integer stream labels must be >= 0, got {label}")
        return int(label)
    if isinstance(label, str):
        digest = hashlib.blake2b(label.encode("utf-8"), digest_size=8).digest()
        # offset keeps string keys apart from small integer labels
        return (1 << 64) + int.from_bytes(digest, "big")
    raise TypeError(f"unsupported stream label {label!r}")


def substream(seed: int, *labels) -> np.random.Generator:
    """Independent generator for ``(seed, *labels)``."""
    seed = int(seed)
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    ss = np.random.SeedSequence(entropy=seed & _MASK64, spawn_key=tuple(_label_key(x) for x in labels))
    return np.random.Generator(np.random.Philox(ss))
