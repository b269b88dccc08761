"""Deterministic per-trial RNG derivation.

Every randomized routine in the package derives one ``random.Random`` per
trial from ``(base seed, labels..., trial index)``.  String seeding in
CPython hashes the text with SHA-512, so streams are reproducible across
processes and platforms and trials are independent of each other's
consumption order.
"""

from __future__ import annotations

import random


def rng_for(seed: int, *path: object) -> random.Random:
    token = "|".join([str(seed), *map(str, path)])
    return random.Random(token)
