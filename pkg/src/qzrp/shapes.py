"""Partitions, cells and diagram geometry.

Cells are ``(row, col)`` pairs, both 1-based; rows are counted from the
bottom and column ``i`` has height ``parts[i-1]``.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterator, NamedTuple, Sequence


class Cell(NamedTuple):
    row: int
    col: int

    @property
    def south(self) -> "Cell":
        return Cell(self.row - 1, self.col)

    @property
    def north(self) -> "Cell":
        return Cell(self.row + 1, self.col)


class Partition:
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ("parts", "__dict__")

    def __init__(self, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        self.parts = parts

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(int(p) for p in text.split(","))
        except ValueError as exc:
            raise ValueError(f"bad partition {text!r}: {exc}") from None

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))

    def __repr__(self) -> str:
        return f"Partition({self.parts})"

    def __eq__(self, other) -> bool:
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def height(self) -> int:
        """Tallest column, i.e. number of rows."""
        return self.parts[0] if self.parts else 0

    def is_strict(self) -> bool:
        return len(set(self.parts)) == len(self.parts)

    def multiplicities(self) -> dict:
        out: dict = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def col_height(self, col: int) -> int:
        return self.parts[col - 1] if 1 <= col <= len(self.parts) else 0

    def row_length(self, row: int) -> int:
        return sum(1 for p in self.parts if p >= row)

    def contains(self, cell: Cell) -> bool:
        r, c = cell
        return 1 <= c <= len(self.parts) and 1 <= r <= self.parts[c - 1]

    __contains__ = contains

    @cached_property
    def cells(self) -> tuple:
        """All cells in reading order."""
        return reading_order(self)

    def is_column_top(self, cell: Cell) -> bool:
        return self.contains(cell) and cell.row == self.parts[cell.col - 1]


def conjugate(lam: Partition | Sequence[int]) -> Partition:
    parts = tuple(lam)
    if not parts:
        return Partition(())
    return Partition(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


def compress(lam: Partition | Sequence[int]) -> Partition:
    """Relabel the distinct part values to 1..j, keeping multiplicities."""
    parts = tuple(lam)
    rank = {v: i + 1 for i, v in enumerate(sorted(set(parts)))}
    return Partition(rank[p] for p in parts)


def is_compressed(lam: Partition | Sequence[int]) -> bool:
    return compress(lam) == Partition(tuple(lam))


def _check_cell(lam: Partition, u: Cell) -> None:
    if not lam.contains(u):
        raise ValueError(f"cell {tuple(u)} is not in the diagram of {lam}")


def lower_arm(lam: Partition, u: Cell) -> list:
    _check_cell(lam, u)
    r, c = u
    left = [Cell(r, j) for j in range(1, c) if lam.parts[j - 1] >= r]
    below = [Cell(r - 1, j) for j in range(c + 1, len(lam) + 1)
             if r > 1 and lam.parts[j - 1] >= r - 1]
    return left + below


def upper_arm(lam: Partition, u: Cell) -> list:
    _check_cell(lam, u)
    r, c = u
    above = [Cell(r + 1, j) for j in range(1, c) if lam.parts[j - 1] >= r + 1]
    right = [Cell(r, j) for j in range(c + 1, len(lam) + 1) if lam.parts[j - 1] >= r]
    return above + right


def arms(lam: Partition, u: Cell) -> tuple:
    """(lower arm, upper arm) of ``u`` as sets."""
    return set(lower_arm(lam, u)), set(upper_arm(lam, u))


def degenerate_segment(lam: Partition, u: Cell) -> tuple:
    """First and last column of the maximal run of equal-height columns whose
    tops share the row of the column top ``u``."""
    if not lam.is_column_top(u):
        raise ValueError(f"{tuple(u)} is not a column top of {lam}")
    h = lam.parts[u.col - 1]
    s = u.col
    while s > 1 and lam.parts[s - 2] == h:
        s -= 1
    e = u.col
    while e < len(lam) and lam.parts[e] == h:
        e += 1
    return s, e


@lru_cache(maxsize=None)
def _reading_order(parts: tuple) -> tuple:
    out = []
    for r in range(parts[0] if parts else 0, 0, -1):
        for c in range(len(parts), 0, -1):
            if parts[c - 1] >= r:
                out.append(Cell(r, c))
    return tuple(out)


def reading_order(lam: Partition | Sequence[int]) -> tuple:
    return _reading_order(tuple(lam))


def partitions_of(m: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of m in reverse lexicographic order."""
    if max_part is None:
        max_part = m

    def rec(rem: int, cap: int):
        if rem == 0:
            yield ()
            return
        for p in range(min(rem, cap), 0, -1):
            for rest in rec(rem - p, p):
                yield (p,) + rest

    for parts in rec(m, max_part):
        yield Partition(parts)


def partitions_up_to(m: int) -> Iterator[Partition]:
    for k in range(1, m + 1):
        yield from partitions_of(k)
