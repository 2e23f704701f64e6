"""Finite problem instances: pair colorings, tournaments, orders, families.

Pairs {x, y} with x < y over [0, n) are indexed in the order
(0,1), (0,2), ..., (0,n-1), (1,2), ..., (n-2,n-1); colorings and
tournaments pack one bit per pair in that order.  For a tournament,
bit 1 at pair (x, y) with x < y means the edge points x -> y.

File formats (one instance per file):

* coloring / tournament: line 1 `n=<int>`, line 2 the C(n,2) bits as a
  string of '0'/'1' characters in pair order
* order: line 1 `n=<int>`, line 2 the ranking as a space-separated
  permutation of [0, n), i.e. the L-position of each vertex
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterator, Sequence, Tuple

__all__ = [
    "pair_index", "pair_count", "all_pairs",
    "PairColoring", "Tournament", "LinearOrderInstance", "SetFamily",
    "parse_coloring", "format_coloring",
    "parse_tournament", "format_tournament",
    "parse_order", "format_order",
]


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(x: int, y: int, n: int) -> int:
    """Index of the unordered pair {x, y} (x < y) in pair order."""
    if x > y:
        x, y = y, x
    if x == y or x < 0 or y >= n:
        raise ValueError(f"bad pair ({x},{y}) for n={n}")
    return x * (2 * n - x - 1) // 2 + (y - x - 1)


def all_pairs(n: int) -> Iterator[Tuple[int, int]]:
    for x in range(n):
        for y in range(x + 1, n):
            yield x, y


@dataclass(frozen=True)
class PairColoring:
    """A total 2-coloring of the pairs over [0, n), packed as a bit field."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not 0 <= self.bits < (1 << pair_count(self.n)):
            raise ValueError("bits outside the C(n,2)-bit range")

    def color(self, x: int, y: int) -> int:
        return (self.bits >> pair_index(x, y, self.n)) & 1

    @classmethod
    def from_function(cls, n: int, fn) -> "PairColoring":
        bits = 0
        for x, y in all_pairs(n):
            if fn(x, y):
                bits |= 1 << pair_index(x, y, n)
        return cls(n, bits)

    def restrict(self, vertices: Sequence[int]) -> "PairColoring":
        """Induced coloring on the given vertices after re-indexing them
        to 0..k-1 in the listed (ascending) order."""
        verts = list(vertices)
        k = len(verts)
        bits = 0
        for a in range(k):
            for b in range(a + 1, k):
                if self.color(verts[a], verts[b]):
                    bits |= 1 << pair_index(a, b, k)
        return PairColoring(k, bits)


@dataclass(frozen=True)
class Tournament:
    """An orientation of every pair over [0, n): out[a] is the bit mask of
    vertices that a beats.  Irreflexive and antisymmetric by construction."""

    n: int
    out: Tuple[int, ...]

    def __post_init__(self):
        if len(self.out) != self.n:
            raise ValueError("out must have one mask per vertex")
        for a in range(self.n):
            if self.out[a] >> self.n:
                raise ValueError("out mask wider than n")
            if (self.out[a] >> a) & 1:
                raise ValueError(f"vertex {a} beats itself")
        for a in range(self.n):
            for b in range(a + 1, self.n):
                ab = (self.out[a] >> b) & 1
                ba = (self.out[b] >> a) & 1
                if ab == ba:
                    raise ValueError(f"pair ({a},{b}) must be oriented exactly one way")

    def beats(self, a: int, b: int) -> bool:
        return bool((self.out[a] >> b) & 1)

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "Tournament":
        """bit 1 at pair (x, y), x < y, means the edge x -> y."""
        out = [0] * n
        for x in range(n):
            for y in range(x + 1, n):
                if (bits >> pair_index(x, y, n)) & 1:
                    out[x] |= 1 << y
                else:
                    out[y] |= 1 << x
        return cls(n, tuple(out))

    def to_bits(self) -> int:
        bits = 0
        for x, y in all_pairs(self.n):
            if self.beats(x, y):
                bits |= 1 << pair_index(x, y, self.n)
        return bits

    @classmethod
    def from_order(cls, ranking: Sequence[int]) -> "Tournament":
        """Orientation where a beats b iff a comes earlier in the ranking."""
        n = len(ranking)
        out = [0] * n
        for a in range(n):
            for b in range(n):
                if a != b and ranking[a] < ranking[b]:
                    out[a] |= 1 << b
        return cls(n, tuple(out))


@dataclass(frozen=True)
class LinearOrderInstance:
    """A finite linear order given by the L-position of each vertex."""

    n: int
    ranking: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.ranking) != list(range(self.n)):
            raise ValueError("ranking must be a permutation of [0, n)")

    def less(self, x: int, y: int) -> bool:
        return self.ranking[x] < self.ranking[y]


@dataclass(frozen=True)
class SetFamily:
    """A finite list of subsets of [0, n)."""

    n: int
    sets: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        for i, s in enumerate(self.sets):
            if any(x < 0 or x >= self.n for x in s):
                raise ValueError(f"set {i} leaves the universe [0,{self.n})")

    def masks(self) -> Tuple[int, ...]:
        out = []
        for s in self.sets:
            m = 0
            for x in s:
                m |= 1 << x
            out.append(m)
        return tuple(out)


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def _parse_header(line: str) -> int:
    key, _, value = line.strip().partition("=")
    if key != "n":
        raise ValueError(f"expected 'n=<int>' header, got {line!r}")
    return int(value)


def _parse_bits(line: str, n: int) -> int:
    line = line.strip()
    if len(line) != pair_count(n) or set(line) - {"0", "1"}:
        raise ValueError(f"expected {pair_count(n)} bits of 0/1")
    bits = 0
    for i, ch in enumerate(line):
        if ch == "1":
            bits |= 1 << i
    return bits


def _format_bits(bits: int, n: int) -> str:
    return "".join("1" if (bits >> i) & 1 else "0" for i in range(pair_count(n)))


def parse_coloring(text: str) -> PairColoring:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n = _parse_header(lines[0])
    return PairColoring(n, _parse_bits(lines[1] if n > 1 else "", n))


def format_coloring(f: PairColoring) -> str:
    return f"n={f.n}\n{_format_bits(f.bits, f.n)}\n"


def parse_tournament(text: str) -> Tournament:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n = _parse_header(lines[0])
    return Tournament.from_bits(n, _parse_bits(lines[1] if n > 1 else "", n))


def format_tournament(r: Tournament) -> str:
    return f"n={r.n}\n{_format_bits(r.to_bits(), r.n)}\n"


def parse_order(text: str) -> LinearOrderInstance:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n = _parse_header(lines[0])
    ranking = tuple(int(tok) for tok in lines[1].split()) if n else ()
    return LinearOrderInstance(n, ranking)


def format_order(order: LinearOrderInstance) -> str:
    return f"n={order.n}\n{' '.join(str(r) for r in order.ranking)}\n"
