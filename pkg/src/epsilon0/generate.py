"""Deterministic seeded instance generation.

All randomness flows through a splitmix64 stream, specified bit-exactly so
identical (kind, n, seed) triples give identical instances on every
platform:

    state := (state + 0x9E3779B97F4A7C15) mod 2^64
    z := state
    z := ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z := ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output := z XOR (z >> 31)

Colorings and tournaments draw one low bit per pair in pair order;
orders use a Fisher-Yates shuffle with j = output mod (i + 1) for
i = n-1 .. 1; families draw one membership bit per (set, element) in
row-major order, with n sets by default.
"""

from __future__ import annotations

from typing import Union

from .ramsey.instances import (
    LinearOrderInstance,
    PairColoring,
    SetFamily,
    Tournament,
    pair_count,
)

__all__ = ["SplitMix64", "make_coloring", "make_tournament", "make_order",
           "make_family", "generate", "Instance", "KINDS"]

_MASK64 = (1 << 64) - 1

KINDS = ("coloring", "tournament", "order", "family")

Instance = Union[PairColoring, Tournament, LinearOrderInstance, SetFamily]


class SplitMix64:
    """The splitmix64 generator; 64-bit outputs, documented above."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def bit(self) -> int:
        return self.next64() & 1

    def below(self, bound: int) -> int:
        return self.next64() % bound


def _pair_bits(n: int, rng: SplitMix64) -> int:
    bits = 0
    for i in range(pair_count(n)):
        if rng.bit():
            bits |= 1 << i
    return bits


def make_coloring(n: int, seed: int) -> PairColoring:
    return PairColoring(n, _pair_bits(n, SplitMix64(seed)))


def make_tournament(n: int, seed: int) -> Tournament:
    return Tournament.from_bits(n, _pair_bits(n, SplitMix64(seed)))


def make_order(n: int, seed: int) -> LinearOrderInstance:
    rng = SplitMix64(seed)
    ranking = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        ranking[i], ranking[j] = ranking[j], ranking[i]
    return LinearOrderInstance(n, tuple(ranking))


def make_family(n: int, seed: int, m: int | None = None) -> SetFamily:
    rng = SplitMix64(seed)
    m = n if m is None else m
    sets = []
    for _ in range(m):
        sets.append(frozenset(x for x in range(n) if rng.bit()))
    return SetFamily(n, tuple(sets))


def generate(kind: str, n: int, seed: int) -> Instance:
    """Deterministic instance of the given kind; identical arguments give
    byte-identical instances."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if kind == "coloring":
        return make_coloring(n, seed)
    if kind == "tournament":
        return make_tournament(n, seed)
    if kind == "order":
        return make_order(n, seed)
    if kind == "family":
        return make_family(n, seed)
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
