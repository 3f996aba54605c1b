"""Fillings of diagrams and the statistics defined on them."""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Mapping, Sequence

from .exactalg import LaurentPoly, poly_sum
from .shapes import Cell, Partition, conjugate, lower_arm, reading_order, upper_arm

INF = math.inf  # content below the bottom row


class _Blocked:
    """Value of down/up when the vertical neighbour has the same content."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Blocked"

    def __reduce__(self):
        return (_Blocked, ())


BLOCKED = _Blocked()


def in_Q(a: int, b: int, c: int) -> bool:
    """Membership of the content triple (a, b, c) in the quinv set; a=0 encodes
    a degenerate triple.

    The three strict cases are the cyclic rotations of a<b<c (a counterclockwise
    reading of top, bottom-left, bottom-right).  The variant with c<b<a in place
    of c<a<b breaks the symmetry of the weight sum, e.g. for shape (2,2), n=3.
    """
    return (a < b < c) or (b < c < a) or (c < a < b) or (a == b != c)


class Filling:
    """An assignment of labels in 1..n to the cells of dg(shape).

    Stored column-wise: ``cols[i][r]`` is the content of cell ``(r+1, i+1)``.
    """

    __slots__ = ("shape", "n", "cols", "_hash")

    def __init__(self, shape: Partition | Sequence[int], n: int, cols: Sequence[Sequence[int]]):
        shape = shape if isinstance(shape, Partition) else Partition(shape)
        cols = tuple(tuple(int(v) for v in c) for c in cols)
        if tuple(len(c) for c in cols) != shape.parts:
            raise ValueError(f"column lengths {[len(c) for c in cols]} do not match {shape}")
        for c in cols:
            for v in c:
                if not 1 <= v <= n:
                    raise ValueError(f"entry {v} outside [1, {n}]")
        self.shape = shape
        self.n = n
        self.cols = cols
        self._hash = None

    @classmethod
    def _raw(cls, shape: Partition, n: int, cols: tuple) -> "Filling":
        f = cls.__new__(cls)
        f.shape, f.n, f.cols, f._hash = shape, n, cols, None
        return f

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n: int) -> "Filling":
        """Build from rows listed top to bottom, each left to right."""
        rows = [list(r) for r in rows]
        lengths = [len(r) for r in reversed(rows)]
        if any(a < b for a, b in zip(lengths, lengths[1:])):
            raise ValueError("row lengths must weakly decrease upwards")
        shape = conjugate(lengths)
        cols = [[] for _ in shape.parts]
        for row in reversed(rows):
            for i, v in enumerate(row):
                cols[i].append(v)
        return cls(shape, n, cols)

    @classmethod
    def from_text(cls, text: str, n: int) -> "Filling":
        rows = [line.split() for line in text.strip().splitlines() if line.strip()]
        return cls.from_rows([[int(v) for v in r] for r in rows], n)

    @classmethod
    def constant(cls, shape: Partition | Sequence[int], n: int, value: int = 1) -> "Filling":
        shape = shape if isinstance(shape, Partition) else Partition(shape)
        return cls(shape, n, [[value] * h for h in shape.parts])

    @classmethod
    def from_reading_word(cls, shape: Partition, n: int, word: Sequence[int]) -> "Filling":
        cols = [[0] * h for h in shape.parts]
        for (r, c), v in zip(reading_order(shape), word):
            cols[c - 1][r - 1] = v
        return cls._raw(shape, n, tuple(tuple(c) for c in cols))

    # -- access -----------------------------------------------------------
    def __getitem__(self, cell) -> int:
        r, c = cell
        return self.cols[c - 1][r - 1]

    def south_value(self, cell) -> float | int:
        r, c = cell
        return INF if r == 1 else self.cols[c - 1][r - 2]

    def north_value(self, cell) -> int:
        r, c = cell
        col = self.cols[c - 1]
        return 0 if r == len(col) else col[r]

    def rows(self) -> list:
        """Rows from top to bottom, each left to right."""
        return [[col[r - 1] for col in self.cols if len(col) >= r]
                for r in range(self.shape.height, 0, -1)]

    def row(self, r: int) -> list:
        return [col[r - 1] for col in self.cols if len(col) >= r]

    def bottom_row(self) -> list:
        return [col[0] for col in self.cols]

    def reading_word(self) -> tuple:
        return tuple(self[c] for c in reading_order(self.shape))

    def content(self) -> tuple:
        """Number of cells with each label 1..n."""
        cnt = [0] * self.n
        for col in self.cols:
            for v in col:
                cnt[v - 1] += 1
        return tuple(cnt)

    def replace(self, changes: Mapping) -> "Filling":
        cols = [list(c) for c in self.cols]
        for (r, c), v in changes.items():
            cols[c - 1][r - 1] = v
        return Filling(self.shape, self.n, cols)

    def with_n(self, n: int) -> "Filling":
        return Filling(self.shape, n, self.cols)

    # -- identity ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Filling):
            return NotImplemented
        return self.n == other.n and self.cols == other.cols

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.cols))
        return self._hash

    def __lt__(self, other: "Filling") -> bool:
        return self.reading_word() < other.reading_word()

    def to_text(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in self.rows())

    def __repr__(self) -> str:
        return f"Filling({self.shape.parts}, n={self.n}, rows={self.rows()})"


# -- enumeration ---------------------------------------------------------------

def enumerate_fillings(lam: Partition | Sequence[int], n: int) -> Iterator[Filling]:
    """All n^|lam| fillings, lexicographic in the reading word."""
    if n < 1:
        raise ValueError("n must be at least 1")
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    order = reading_order(lam)
    for word in itertools.product(range(1, n + 1), repeat=len(order)):
        cols = [[0] * h for h in lam.parts]
        for (r, c), v in zip(order, word):
            cols[c - 1][r - 1] = v
        yield Filling._raw(lam, n, tuple(tuple(c) for c in cols))


def count_fillings(lam: Partition | Sequence[int], n: int) -> int:
    return n ** sum(lam)


# -- quinv and weight ------------------------------------------------------------

def quinv(sigma: Filling) -> int:
    cols = sigma.cols
    total = 0
    ncols = len(cols)
    for i, ci in enumerate(cols):
        hi = len(ci)
        for r in range(hi):
            a = ci[r + 1] if r + 1 < hi else 0
            b = ci[r]
            for j in range(i + 1, ncols):
                cj = cols[j]
                if len(cj) > r and in_Q(a, b, cj[r]):
                    total += 1
    return total


def quinv_triples(sigma: Filling) -> list:
    """The quinv triples as ((r+1,i) or None, (r,i), (r,j))."""
    out = []
    lam = sigma.shape
    for i in range(1, len(lam) + 1):
        for r in range(1, lam[i - 1] + 1):
            top = Cell(r + 1, i) if r < lam[i - 1] else None
            a = sigma[top] if top else 0
            for j in range(i + 1, len(lam) + 1):
                if lam[j - 1] >= r and in_Q(a, sigma[(r, i)], sigma[(r, j)]):
                    out.append((top, Cell(r, i), Cell(r, j)))
    return out


def x_monomial(sigma: Filling, n: int | None = None) -> LaurentPoly:
    n = sigma.n if n is None else n
    return LaurentPoly.monomial(n, 0, sigma.content() + (0,) * (n - sigma.n))


def weight(sigma: Filling, n: int | None = None) -> LaurentPoly:
    """x^sigma t^quinv(sigma), optionally in a larger variable set."""
    n = sigma.n if n is None else n
    return LaurentPoly.monomial(n, quinv(sigma), sigma.content() + (0,) * (n - sigma.n))


def weight_sum(fillings: Iterable[Filling], n: int) -> LaurentPoly:
    acc: dict = {}
    for s in fillings:
        e = (quinv(s),) + s.content() + (0,) * (n - s.n)
        acc[e] = acc.get(e, 0) + 1
    return LaurentPoly(n, acc)


# -- down / up -------------------------------------------------------------------

def down(sigma: Filling, u) -> int | _Blocked:
    u = Cell(*u)
    k = sigma[u]
    if sigma.south_value(u) == k:
        return BLOCKED
    return sum(1 for v in lower_arm(sigma.shape, u) if sigma[v] == k)


def up(sigma: Filling, u) -> int | _Blocked:
    u = Cell(*u)
    k = sigma[u]
    if sigma.north_value(u) == k:
        return BLOCKED
    return sum(1 for v in upper_arm(sigma.shape, u) if sigma[v] == k)


def down_up(sigma: Filling, u) -> tuple:
    return down(sigma, u), up(sigma, u)


def arm_count_lower(sigma: Filling, u) -> int:
    """Lower-arm count ignoring the blocking rule."""
    u = Cell(*u)
    return sum(1 for v in lower_arm(sigma.shape, u) if sigma[v] == sigma[u])


def arm_count_upper(sigma: Filling, u) -> int:
    u = Cell(*u)
    return sum(1 for v in upper_arm(sigma.shape, u) if sigma[v] == sigma[u])


def _tpoly(exps: Iterable[int]) -> LaurentPoly:
    acc: dict = {}
    for e in exps:
        acc[(e,)] = acc.get((e,), 0) + 1
    return LaurentPoly(0, acc)


def dsum_usum(sigma: Filling, k: int) -> tuple:
    """(D(sigma,k), U(sigma,k)) as polynomials in t; blocked cells are skipped."""
    if not 1 <= k <= sigma.n:
        raise ValueError(f"label {k} outside [1, {sigma.n}]")
    cells = [c for c in sigma.shape.cells if sigma[c] == k]
    ds = (down(sigma, c) for c in cells)
    us = (up(sigma, c) for c in cells)
    return (_tpoly(d for d in ds if d is not BLOCKED),
            _tpoly(v for v in us if v is not BLOCKED))


def row_arm_polys(sigma: Filling, k: int) -> tuple:
    """Per-row generating functions (d_j, u_j, ell_j) for content k, j = 1..height.

    Here the arm counts are taken for every cell of content k, with no
    blocking; summing over rows gives the unblocked totals D-bar, U-bar.
    """
    ds, us, ells = [], [], []
    for r in range(1, sigma.shape.height + 1):
        cells = [Cell(r, c) for c in range(1, len(sigma.shape) + 1)
                 if sigma.shape[c - 1] >= r and sigma[(r, c)] == k]
        ds.append(_tpoly(arm_count_lower(sigma, c) for c in cells))
        us.append(_tpoly(arm_count_upper(sigma, c) for c in cells))
        ells.append(len(cells))
    return ds, us, ells


def dbar_ubar(sigma: Filling, k: int) -> tuple:
    ds, us, _ = row_arm_polys(sigma, k)
    return poly_sum(ds, 0), poly_sum(us, 0)


def telescoping_holds(sigma: Filling, k: int) -> bool:
    """(t-1)(d_{j+1} - u_j) == t^{l_{j+1}} - t^{l_j} for every row j >= 0."""
    ds, us, ells = row_arm_polys(sigma, k)
    h = sigma.shape.height
    zero = LaurentPoly.zero(0)
    t = LaurentPoly.t(0)
    for j in range(0, h + 1):
        d_next = ds[j] if j < h else zero
        u_j = us[j - 1] if j >= 1 else zero
        l_next = ells[j] if j < h else 0
        l_j = ells[j - 1] if j >= 1 else 0
        if (t - 1) * (d_next - u_j) != t ** l_next - t ** l_j:
            return False
    return True


# -- attacking-inversion statistics ------------------------------------------------

def descents(sigma: Filling) -> set:
    return {Cell(r, c) for (r, c) in sigma.shape.cells
            if r > 1 and sigma[(r, c)] > sigma[(r - 1, c)]}


def llt_stats(sigma: Filling) -> tuple:
    """(inv_hat, arm_hat, descent set)."""
    lam = sigma.shape
    ncols = len(lam)
    inv_hat = 0
    for (r, i) in lam.cells:
        a = sigma[(r, i)]
        for j in range(i + 1, ncols + 1):
            if lam[j - 1] >= r and sigma[(r, j)] > a:
                inv_hat += 1  # same row, right entry larger
            if r > 1 and lam[j - 1] >= r - 1 and a > sigma[(r - 1, j)]:
                inv_hat += 1  # row below, to the right
    desc = descents(sigma)
    arm_hat = sum(sum(1 for j in range(c + 1, ncols + 1) if lam[j - 1] >= r - 1)
                  for (r, c) in desc)
    return inv_hat, arm_hat, desc


# -- projection and restriction ------------------------------------------------------

def proj(sigma: Filling):
    from .zrp import ZrpConfig

    sites: list = [[] for _ in range(sigma.n)]
    for h, col in zip(sigma.shape.parts, sigma.cols):
        sites[col[0] - 1].append(h)
    return ZrpConfig(sites)


def restrict_top(xi: Filling, k: int) -> Filling:
    """Drop the bottom k rows."""
    if not 0 <= k <= xi.shape.height:
        raise ValueError(f"k={k} outside [0, {xi.shape.height}]")
    cols = [c[k:] for c in xi.cols if len(c) > k]
    return Filling(Partition(len(c) for c in cols), xi.n, cols)


def stack_bottom_row(top: Filling, shape: Partition, bottom: Sequence[int]) -> Filling:
    """Fill ``shape`` with ``bottom`` as row 1 and ``top`` above it."""
    cols = []
    for i, h in enumerate(shape.parts):
        above = top.cols[i] if i < len(top.cols) else ()
        if len(above) != h - 1:
            raise ValueError("top filling does not match shape minus its bottom row")
        cols.append((bottom[i],) + tuple(above))
    return Filling(shape, top.n, cols)
