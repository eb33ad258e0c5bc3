"""Deterministic seed fan-out.

Every command takes one base seed; components derive their own streams from it
through stable labels so that adding a component never shifts the randomness
consumed by another. The derivation is a SHA-256 digest, so it is identical
across platforms and numpy versions.
"""

import hashlib

import numpy as np


def derive_seed(base: int, *labels: str) -> int:
    """Fold `labels` into `base` and return a 32-bit seed."""
    text = str(int(base)) + "".join("/" + label for label in labels)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big")


def rng_for(base: int, *labels: str) -> np.random.Generator:
    """A PCG64 generator seeded from `derive_seed(base, *labels)`."""
    return np.random.Generator(np.random.PCG64(derive_seed(base, *labels)))
