"""Partitions of {0..n-1} in canonical block form."""

from __future__ import annotations

import re
from typing import Iterable, Sequence

__all__ = ["Partition"]


class Partition:
    """An equivalence relation on ``range(size)``.

    Blocks are kept sorted by least element with ascending members, so equal
    relations compare and hash equal. Serialized as ``{0,2|1|3}``.
    """

    __slots__ = ("size", "blocks", "_label")

    def __init__(self, size: int, blocks: Iterable[Iterable[int]]):
        blocks = [tuple(sorted(b)) for b in blocks]
        blocks = [b for b in blocks if b]
        blocks.sort()
        label = [-1] * size
        for i, b in enumerate(blocks):
            for x in b:
                if not 0 <= x < size:
                    raise ValueError(f"element {x} out of range for size {size}")
                if label[x] != -1:
                    raise ValueError(f"element {x} occurs in two blocks")
                label[x] = i
        if -1 in label:
            raise ValueError(f"element {label.index(-1)} is in no block")
        self.size = size
        self.blocks = tuple(blocks)
        self._label = tuple(label)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        groups: dict[int, list[int]] = {}
        for x, k in enumerate(labels):
            groups.setdefault(k, []).append(x)
        return cls(len(labels), groups.values())

    @classmethod
    def identity(cls, size: int) -> "Partition":
        return cls(size, ([x] for x in range(size)))

    @classmethod
    def total(cls, size: int) -> "Partition":
        return cls(size, [range(size)])

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]]) -> "Partition":
        """Least equivalence relation containing ``pairs``."""
        parent = list(range(size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return cls.from_labels([find(x) for x in range(size)])

    @classmethod
    def parse(cls, text: str) -> "Partition":
        m = re.fullmatch(r"\s*\{(.*)\}\s*", text)
        if m is None:
            raise ValueError(f"not a partition literal: {text!r}")
        blocks = [[int(x) for x in part.split(",")] for part in m.group(1).split("|")]
        size = sum(len(b) for b in blocks)
        return cls(size, blocks)

    def block_of(self, x: int) -> int:
        return self._label[x]

    @property
    def labels(self) -> tuple[int, ...]:
        return self._label

    def related(self, a: int, b: int) -> bool:
        return self._label[a] == self._label[b]

    def __len__(self) -> int:
        return len(self.blocks)

    def is_identity(self) -> bool:
        return len(self.blocks) == self.size

    def is_total(self) -> bool:
        return len(self.blocks) == 1

    def refines(self, other: "Partition") -> bool:
        """True iff every block of self lies inside a block of ``other``."""
        return all(len({other._label[x] for x in b}) == 1 for b in self.blocks)

    def meet(self, other: "Partition") -> "Partition":
        return Partition.from_labels(list(zip(self._label, other._label)))

    def join(self, other: "Partition") -> "Partition":
        pairs = [(b[0], x) for b in self.blocks + other.blocks for x in b[1:]]
        return Partition.from_pairs(self.size, pairs)

    def is_union_of_blocks(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return all(len({x in s for x in b}) == 1 for b in self.blocks)

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((a, b) for blk in self.blocks for a in blk for b in blk)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.blocks == other.blocks and self.size == other.size

    def __hash__(self) -> int:
        return hash((self.size, self.blocks))

    def __lt__(self, other: "Partition") -> bool:
        return (self.size, self.blocks) < (other.size, other.blocks)

    def __str__(self) -> str:
        return "{" + "|".join(",".join(map(str, b)) for b in self.blocks) + "}"

    def __repr__(self) -> str:
        return f"Partition({self})"
