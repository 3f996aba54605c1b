"""Multiline diagrams: stacked ZRP rows, one per row of a filling."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .exactalg import LaurentPoly
from .shapes import Partition
from .tableaux import Filling, weight, weight_sum
from .zrp import ZrpConfig


class _Forbidden:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "FORBIDDEN"


FORBIDDEN = _Forbidden()


def cyc_between(a: int, b: int, c: int, n: int) -> bool:
    """b lies strictly between a and c going forward round the ring 1..n.

    When a == c every b != a counts as between.
    """
    if a == c:
        return b != a
    return 0 < (b - a) % n < (c - a) % n


@dataclass(frozen=True)
class MultilineDiagram:
    """Rows indexed 1..L from the bottom; ``rows[k-1]`` is M^(k)."""

    rows: tuple
    n: int

    def __post_init__(self):
        if any(r.n != self.n for r in self.rows):
            raise ValueError("every row needs n sites")
        for k in range(2, len(self.rows) + 1):
            upper = sorted(s for site in self.rows[k - 1].sites for s in site)
            lower = sorted(s for site in self.rows[k - 2].sites for s in site if s >= k)
            if upper != lower or any(s < k for s in upper):
                raise ValueError(f"row {k} is not the restriction of row {k - 1} to species >= {k}")

    @property
    def height(self) -> int:
        return len(self.rows)

    def row(self, k: int) -> ZrpConfig:
        return self.rows[k - 1]

    def shape(self) -> Partition:
        return self.rows[0].species() if self.rows else Partition(())

    def is_strict(self) -> bool:
        return all(len(set(s for site in r.sites for s in site)) == sum(map(len, r.sites))
                   for r in self.rows)

    def position(self, k: int, species: int) -> int:
        for j, site in enumerate(self.rows[k - 1].sites, start=1):
            if species in site:
                return j
        raise KeyError(f"species {species} absent from row {k}")

    def to_text(self) -> str:
        return "\n".join(str(r) for r in reversed(self.rows))

    @classmethod
    def from_text(cls, text: str) -> "MultilineDiagram":
        rows = [ZrpConfig.parse(line) for line in text.strip().splitlines() if line.strip()]
        return cls(tuple(reversed(rows)), rows[0].n if rows else 0)

    @classmethod
    def from_top_rows(cls, rows: Sequence[ZrpConfig]) -> "MultilineDiagram":
        rows = tuple(reversed(list(rows)))
        return cls(rows, rows[0].n if rows else 0)

    def x_monomial(self) -> LaurentPoly:
        exps = [0] * self.n
        for r in self.rows:
            for j, site in enumerate(r.sites):
                exps[j] += len(site)
        return LaurentPoly.monomial(self.n, 0, exps)


def to_multiline(sigma: Filling) -> MultilineDiagram:
    lam = sigma.shape
    rows = []
    for k in range(1, lam.height + 1):
        sites: list = [[] for _ in range(sigma.n)]
        for h, col in zip(lam.parts, sigma.cols):
            if h >= k:
                sites[col[k - 1] - 1].append(h)
        rows.append(ZrpConfig(sites))
    return MultilineDiagram(tuple(rows), sigma.n)


def _require_strict(m: MultilineDiagram) -> None:
    if not m.is_strict():
        raise ValueError("diagram has repeated species; the map is not a bijection")


def from_multiline(m: MultilineDiagram) -> Filling:
    _require_strict(m)
    lam = m.shape()
    cols = [tuple(m.position(k, h) for k in range(1, h + 1)) for h in lam.parts]
    return Filling(lam, m.n, cols)


def refusals_by_row(m: MultilineDiagram) -> list:
    """Refusal counts for the row pairs (L, L-1), ..., (2, 1), top first."""
    _require_strict(m)
    out = []
    for k in range(m.height, 1, -1):
        upper, lower = m.row(k), m.row(k - 1)
        species_up = sorted(s for site in upper.sites for s in site)
        species_low = sorted(s for site in lower.sites for s in site)
        count = 0
        for r in species_up:
            pr_up = m.position(k, r)
            pr_low = m.position(k - 1, r)
            for s in species_low:
                if s < r and cyc_between(pr_low, m.position(k - 1, s), pr_up, m.n):
                    count += 1
        out.append(count)
    return out


def refusals(m: MultilineDiagram) -> int:
    return sum(refusals_by_row(m))


def multiline_weight(m: MultilineDiagram) -> LaurentPoly:
    return m.x_monomial() * LaurentPoly.t(m.n, refusals(m))


def fiber_weight(m: MultilineDiagram) -> LaurentPoly:
    """Sum of tableau weights over every filling whose diagram is ``m``.

    This is the only weight offered when species repeat.
    """
    lam = m.shape()
    per_row = []
    for k in range(1, m.height + 1):
        groups: dict = {}
        for i, h in enumerate(lam.parts):
            if h >= k:
                groups.setdefault(h, []).append(i)
        choices = []
        for h, cols in groups.items():
            sites = [j + 1 for j, site in enumerate(m.row(k).sites) for s in site if s == h]
            choices.append([(cols, p) for p in sorted(set(itertools.permutations(sites)))])
        per_row.append([dict((c, s) for cols, p in combo for c, s in zip(cols, p))
                        for combo in itertools.product(*choices)])

    def fillings():
        for assignment in itertools.product(*per_row):
            cols = tuple(tuple(assignment[k][i] for k in range(h))
                         for i, h in enumerate(lam.parts))
            yield Filling._raw(lam, m.n, cols)

    return weight_sum(fillings(), m.n)


def multiline_jump(m: MultilineDiagram, k: int, j: int, r: int):
    """Particle r on row k at site j tries to jump; returns (diagram, rate) or FORBIDDEN."""
    _require_strict(m)
    if r not in m.row(k).sites[j - 1]:
        raise ValueError(f"species {r} is not at site {j} on row {k}")
    if k > 1 and r in m.row(k - 1).sites[j - 1]:
        return FORBIDDEN
    n = m.n
    stronger = sum(1 for s in m.row(k).sites[j - 1] if s > r)
    weaker_below = sum(1 for s in m.row(k - 1).sites[j - 1] if s < r) if k > 1 else 0
    rows = [list(list(site) for site in row.sites) for row in m.rows]
    level, site = k, j
    while True:
        dest = site % n + 1
        rows[level - 1][site - 1].remove(r)
        rows[level - 1][dest - 1].append(r)
        if level < len(rows) and r in rows[level][dest - 1]:
            level, site = level + 1, dest
            continue
        break
    new = MultilineDiagram(tuple(ZrpConfig(row) for row in rows), n)
    x = [0] * n
    x[j - 1] = -1
    return new, LaurentPoly.monomial(n, stronger + weaker_below, x)


def check_conjugation(sigma: Filling) -> bool:
    """Every multiline jump equals the image of the matching ringing move."""
    from .tabchain import rate, ring

    m = to_multiline(sigma)
    lam = sigma.shape
    for (row, col) in lam.cells:
        res = multiline_jump(m, row, sigma[(row, col)], lam[col - 1])
        if sigma.south_value((row, col)) == sigma[(row, col)]:
            if res is not FORBIDDEN:
                return False
            continue
        if res is FORBIDDEN:
            return False
        new, r = res
        if new != to_multiline(ring(sigma, (row, col))) or r != rate(sigma, (row, col)):
            return False
    return True


def check_weight_equality(sigma: Filling) -> bool:
    return multiline_weight(to_multiline(sigma)) == weight(sigma)
