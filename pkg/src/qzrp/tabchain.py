"""The tableau Markov chain: ringing paths, swap operators, corrected
transitions and exact balance checks."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .budget import check_budget
from .exactalg import LaurentPoly, poly_sum
from .shapes import Cell, Partition, degenerate_segment
from .tableaux import (BLOCKED, Filling, down, enumerate_fillings, in_Q, quinv,
                       weight)


def _inc(v: int, n: int) -> int:
    return v % n + 1


def _dec(v: int, n: int) -> int:
    return (v - 2) % n + 1


def _succ(lo: int, hi: int, n: int) -> bool:
    """hi - lo == 1 mod n."""
    return (hi - lo - 1) % n == 0


def chain_top(sigma: Filling, u) -> int:
    """Row of the top of the +1 (mod n) chain starting at u."""
    r, c = u
    col = sigma.cols[c - 1]
    while r < len(col) and _succ(col[r - 1], col[r], sigma.n):
        r += 1
    return r


def chain_bottom(sigma: Filling, y) -> int:
    """Row of the bottom of the -1 (mod n) chain descending from y."""
    r, c = y
    col = sigma.cols[c - 1]
    while r > 1 and _succ(col[r - 2], col[r - 1], sigma.n):
        r -= 1
    return r


def _set_rows(sigma: Filling, c: int, lo: int, hi: int, f) -> Filling:
    cols = list(sigma.cols)
    col = list(cols[c - 1])
    for r in range(lo, hi + 1):
        col[r - 1] = f(col[r - 1], sigma.n)
    cols[c - 1] = tuple(col)
    return Filling._raw(sigma.shape, sigma.n, tuple(cols))


def ring(sigma: Filling, u) -> Filling:
    """R_u."""
    u = Cell(*u)
    if sigma.south_value(u) == sigma[u]:
        return sigma
    return _set_rows(sigma, u.col, u.row, chain_top(sigma, u), _inc)


def ring_inverse(sigma: Filling, y) -> Filling:
    """R_y^{-1}."""
    y = Cell(*y)
    if sigma.north_value(y) == sigma[y]:
        return sigma
    return _set_rows(sigma, y.col, chain_bottom(sigma, y), y.row, _dec)


def tau_rmax(sigma: Filling, j: int) -> int:
    lam = sigma.shape
    if j < 1 or j >= len(lam) or lam[j - 1] != lam[j]:
        raise ValueError(f"columns {j} and {j + 1} of {lam} do not have equal height")
    a, b = sigma.cols[j - 1], sigma.cols[j]
    for r in range(len(a), 1, -1):
        if in_Q(a[r - 1], a[r - 2], b[r - 2]) == in_Q(b[r - 1], a[r - 2], b[r - 2]):
            return r
    return 1


def tau(sigma: Filling, j: int) -> Filling:
    """tau_j: swap columns j, j+1 in rows r_max..k."""
    rm = tau_rmax(sigma, j)
    a, b = sigma.cols[j - 1], sigma.cols[j]
    cols = list(sigma.cols)
    cols[j - 1] = a[:rm - 1] + b[rm - 1:]
    cols[j] = b[:rm - 1] + a[rm - 1:]
    return Filling._raw(sigma.shape, sigma.n, tuple(cols))


def tau_sequence(lam: Partition, y: Cell) -> list:
    """Indices j of the tau_j applied (in order) to carry the content of the
    column top y across its degenerate segment."""
    s, e = degenerate_segment(lam, y)
    v = y.col
    v2 = s + e - v
    if v < v2:
        return list(range(v, v2))
    return list(range(v - 1, v2 - 1, -1))


def reflected_column(lam: Partition, y: Cell) -> int:
    s, e = degenerate_segment(lam, y)
    return s + e - y.col


def ring_prime(xi: Filling, u) -> tuple:
    """R'_u: returns (sigma', y') where y' is the landing cell of the chain top."""
    u = Cell(*u)
    if xi.south_value(u) == xi[u]:
        raise ValueError(f"cell {tuple(u)} has the same content as the cell below it")
    h = chain_top(xi, u)
    y = Cell(h, u.col)
    sigma = _set_rows(xi, u.col, u.row, h, _inc)
    if xi[y] != xi.n or not xi.shape.is_column_top(y):
        return sigma, y
    for j in tau_sequence(xi.shape, y):
        sigma = tau(sigma, j)
    return sigma, Cell(y.row, reflected_column(xi.shape, y))


def quinv_diff_correction(xi: Filling, u) -> int:
    """The degenerate-segment term of the general quinv difference formula."""
    u = Cell(*u)
    lam = xi.shape
    h = chain_top(xi, u)
    y = Cell(h, u.col)
    if lam[u.col - 1] != h or xi[y] != xi.n:
        return 0
    same = lam[u.col - 1]
    left = sum(1 for j in range(1, u.col) if lam[j - 1] == same)
    right = sum(1 for j in range(u.col + 1, len(lam) + 1) if lam[j - 1] == same)
    return left - right


def rate(sigma: Filling, u, n: int | None = None) -> LaurentPoly:
    """x_{sigma(u)}^{-1} t^{down(sigma,u)}."""
    d = down(sigma, u)
    if d is BLOCKED:
        raise ValueError(f"cell {tuple(u)} is blocked and carries no clock")
    n = sigma.n if n is None else n
    x = [0] * n
    x[sigma[u] - 1] = -1
    return LaurentPoly.monomial(n, d, x)


@dataclass(frozen=True)
class Transition:
    source: Filling
    trigger: Cell
    target: Filling
    rate: LaurentPoly
    landing: Cell

    def to_json(self) -> str:
        return json.dumps({
            "from": self.source.to_text(),
            "trigger": list(self.trigger),
            "to": self.target.to_text(),
            "landing": list(self.landing),
            "rate": self.rate.to_json_obj(),
        }, separators=(",", ":"))


def triggers(sigma: Filling) -> list:
    return [c for c in sigma.shape.cells if sigma.south_value(c) != sigma[c]]


def out_transitions(sigma: Filling) -> list:
    out = []
    for u in triggers(sigma):
        target, landing = ring_prime(sigma, u)
        out.append(Transition(sigma, u, target, rate(sigma, u), landing))
    return out


def build_generator(lam: Partition | Sequence[int], n: int,
                    budget: int | None = None) -> list:
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    check_budget(n ** lam.size, budget, f"Tab({lam},{n})")
    out = []
    for sigma in enumerate_fillings(lam, n):
        out.extend(out_transitions(sigma))
    return out


def in_transitions(sigma: Filling) -> list:
    """All transitions (xi, u) with R'_u(xi) = sigma, found by inversion.

    Plain preimages come from R_y^{-1} at every unblocked-from-above cell.
    Corrected preimages come from column tops y' holding 1 in a segment of
    length > 1: undo the tau chain (tried in reverse order), then R_y^{-1}.
    Every candidate is confirmed by applying R' forwards.
    """
    lam = sigma.shape
    found: dict = {}

    def confirm(xi: Filling):
        for u in triggers(xi):
            if u.col != col_hint:
                continue
            tgt, landing = ring_prime(xi, u)
            if tgt == sigma:
                found[(xi, u)] = Transition(xi, u, sigma, rate(xi, u), landing)

    for y in lam.cells:
        if sigma.north_value(y) == sigma[y]:
            continue
        col_hint = y.col
        confirm(ring_inverse(sigma, y))
    for y2 in lam.cells:
        if not lam.is_column_top(y2) or sigma[y2] != 1:
            continue
        s, e = degenerate_segment(lam, y2)
        if s == e:
            continue
        y = Cell(y2.row, s + e - y2.col)
        seq = tau_sequence(lam, y)
        pre = sigma
        for j in reversed(seq):
            pre = tau(pre, j)
        if pre[y] != 1 or pre.north_value(y) == pre[y]:
            continue
        col_hint = y.col
        confirm(ring_inverse(pre, y))
    return list(found.values())


def balance_sides(sigma: Filling, n: int | None = None) -> tuple:
    """(outflow, inflow) of stationary weight at sigma, as Laurent polynomials."""
    n = sigma.n if n is None else n
    w = weight(sigma, n)
    lhs = w * poly_sum((rate(sigma, u, n) for u in triggers(sigma)), n)
    rhs = poly_sum((weight(tr.source, n) * tr.rate for tr in in_transitions(sigma)), n)
    return lhs, rhs


def verify_balance(sigma: Filling) -> bool:
    lhs, rhs = balance_sides(sigma)
    return lhs == rhs


def in_transitions_by_scan(lam: Partition, n: int) -> dict:
    """Reference In-sets from a full forward scan (for cross-checking)."""
    table: dict = {}
    for tr in build_generator(lam, n):
        table.setdefault(tr.target, set()).add((tr.source, tr.trigger))
    return table


def _strongly_connected(nodes: list, edges: dict) -> bool:
    if not nodes:
        return True
    rev: dict = {v: [] for v in nodes}
    for v, ws in edges.items():
        for w in ws:
            rev[w].append(v)

    def reach(start, adj) -> int:
        seen = {start}
        q = deque([start])
        while q:
            v = q.popleft()
            for w in adj.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    q.append(w)
        return len(seen)

    return reach(nodes[0], edges) == len(nodes) and reach(nodes[0], rev) == len(nodes)


def verify_irreducibility(lam: Partition | Sequence[int], n: int, t_zero: bool = False,
                          budget: int | None = None) -> bool:
    """Strong connectivity of the transition digraph.

    With ``t_zero`` the states are the quinv-free fillings and only triggers
    with down = 0 are used; a transition leaving that set makes the check fail.
    """
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    check_budget(n ** lam.size, budget, f"Tab({lam},{n})")
    nodes = []
    edges: dict = {}
    for sigma in enumerate_fillings(lam, n):
        if t_zero and quinv(sigma):
            continue
        nodes.append(sigma)
        outs = []
        for u in triggers(sigma):
            if t_zero and down(sigma, u) != 0:
                continue
            tgt, _ = ring_prime(sigma, u)
            if t_zero and quinv(tgt):
                return False
            outs.append(tgt)
        edges[sigma] = outs
    return _strongly_connected(nodes, edges)


def is_path(states: Sequence[Filling]) -> bool:
    """True if each consecutive pair is a single transition of the chain."""
    for a, b in zip(states, states[1:]):
        if not any(ring_prime(a, u)[0] == b for u in triggers(a)):
            return False
    return True


def iter_states(lam: Partition, n: int) -> Iterator[Filling]:
    return enumerate_fillings(lam, n)
