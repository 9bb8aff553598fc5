"""Deterministic per-sample seed derivation.

Every (global seed, sample id, transform name) triple maps to one 64-bit
seed via FNV-1a over the UTF-8 bytes of ``"global|id|name"``, so sample
order and parallelism cannot change which random stream a transform sees.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & _MASK
    return h


@dataclass(frozen=True)
class RandomPlan:
    global_seed: int = 42

    def __post_init__(self) -> None:
        if not 0 <= self.global_seed <= _MASK:
            raise ValueError("global seed must fit in 64 unsigned bits")

    def seed_for(self, sample_id: str, transform_name: str) -> int:
        key = f"{self.global_seed}|{sample_id}|{transform_name}"
        return fnv1a_64(key.encode("utf-8"))

    def rng_for(self, sample_id: str, transform_name: str) -> random.Random:
        return random.Random(self.seed_for(sample_id, transform_name))
