"""Stationary densities and currents, restricted-configuration symmetry,
top-row consistency, translation covariance and a Monte Carlo probe of
pathwise symmetry at t = 0."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import stats

from .budget import check_budget
from .exactalg import LaurentPoly, is_symmetric_under, log_derivative, poly_sum, t_integer
from .macdonald import htilde_column
from .shapes import Partition, compress
from .tableaux import Filling, enumerate_fillings, weight, weight_sum
from .zrp import (ZrpConfig, ZrpParams, species_rate, species_rate_value,
                  stationary_exact, tazrp_weights)


@dataclass(frozen=True)
class RationalFunction:
    """num/den, never reduced; equality is cross-multiplication."""

    num: LaurentPoly
    den: LaurentPoly

    def __post_init__(self):
        if not self.den:
            raise ZeroDivisionError("zero denominator")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        return RationalFunction(self.num * other, self.den)

    def rotate_x(self, k: int) -> "RationalFunction":
        return RationalFunction(self.num.rotate_x(k), self.den.rotate_x(k))

    def evaluate(self, t, xs: Sequence) -> Fraction:
        return self.num.evaluate(t, xs) / self.den.evaluate(t, xs)

    def to_json_obj(self) -> dict:
        return {"num": self.num.to_json_obj(), "den": self.den.to_json_obj()}


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def _require_compressed(lam: Partition) -> None:
    if compress(lam) != lam:
        raise ValueError(f"{lam} is not compressed")


def _tail_count(lam: Partition, j: int) -> int:
    """Number of particles of species >= j."""
    return sum(1 for p in lam if p >= j)


# -- densities ---------------------------------------------------------------------

def density_exact(lam, n: int, species: int, site: int, weights: dict | None = None,
                  budget: int | None = None) -> RationalFunction:
    lam = _as_partition(lam)
    weights = tazrp_weights(lam, n, budget) if weights is None else weights
    num = poly_sum((w.count(site, species) * p for w, p in weights.items()), n)
    return RationalFunction(num, poly_sum(weights.values(), n))


def density_formula(lam, n: int, species: int, site: int = 1) -> RationalFunction:
    """Density from the ratio of two column polynomials, rotated to ``site``."""
    lam = _as_partition(lam)
    _require_compressed(lam)
    a = htilde_column(_tail_count(lam, species), n)
    b = htilde_column(_tail_count(lam, species + 1), n)
    da, _ = log_derivative(a, 1)
    db = b.x_derivative_scaled(1)
    r = RationalFunction(da * b - a * db, a * b)
    return r.rotate_x(site - 1) if site != 1 else r


# -- currents ------------------------------------------------------------------------

def _column_ratio(m: int, n: int) -> RationalFunction:
    if m == 0:
        return RationalFunction(LaurentPoly.zero(n), LaurentPoly.one(n))
    return RationalFunction(t_integer(m, n) * htilde_column(m - 1, n), htilde_column(m, n))


def current_formula(lam, n: int, species: int) -> RationalFunction:
    lam = _as_partition(lam)
    _require_compressed(lam)
    return (_column_ratio(_tail_count(lam, species), n)
            - _column_ratio(_tail_count(lam, species + 1), n))


def current_symbolic(lam, n: int, species: int, site: int = 1,
                     weights: dict | None = None) -> RationalFunction:
    """Stationary rate of species jumps out of ``site`` as a rational function."""
    lam = _as_partition(lam)
    weights = tazrp_weights(lam, n) if weights is None else weights
    num = poly_sum((p * species_rate(w, site, species) for w, p in weights.items()), n)
    return RationalFunction(num, poly_sum(weights.values(), n))


def current_exact(lam, n: int, species: int, params: ZrpParams, site: int = 1) -> Fraction:
    """Same quantity at a numeric point, from the linear solve."""
    pi = stationary_exact(lam, n, params)
    return sum((p * species_rate_value(w, site, species, params)
                for w, p in pi.items() if w.count(site, species)), Fraction(0))


# -- restricted configurations -----------------------------------------------------------

def restricted_weights(lam, n: int, ell: int, weights: dict | None = None) -> dict:
    """Map each configuration of sites 1..ell to its summed weight."""
    lam = _as_partition(lam)
    if not 0 <= ell <= n:
        raise ValueError(f"ell={ell} outside [0, {n}]")
    weights = tazrp_weights(lam, n) if weights is None else weights
    out: dict = {}
    for w, p in weights.items():
        key = w.restrict(ell)
        out[key] = out.get(key, LaurentPoly.zero(n)) + p
    return out


def restricted_weight(lam, n: int, ell: int, w: ZrpConfig) -> LaurentPoly:
    if w.n != ell:
        raise ValueError(f"configuration has {w.n} sites, expected {ell}")
    return restricted_weights(lam, n, ell).get(w, LaurentPoly.zero(n))


def check_restricted_symmetry(lam, n: int, ell: int, weights: dict | None = None) -> bool:
    free = range(ell + 1, n + 1)
    return all(is_symmetric_under(p, free)
               for p in restricted_weights(lam, n, ell, weights).values())


# -- top-of-diagram consistency ------------------------------------------------------------

def _strip_bottom(lam: Partition) -> Partition:
    return Partition(p - 1 for p in lam if p > 1)


def check_top_row_step(lam, n: int, budget: int | None = None) -> bool:
    """Summing over all bottom rows multiplies each filling above by H~_{1^ell}."""
    lam = _as_partition(lam)
    if not lam.size:
        return True
    check_budget(n ** lam.size, budget, f"Tab({lam},{n})")
    ell = len(lam)
    mu = _strip_bottom(lam)
    factor = htilde_column(ell, n)
    bottoms = list(itertools.product(range(1, n + 1), repeat=ell))
    for sigma in enumerate_fillings(mu, n):
        # columns of mu are the leading columns of lam with height > 1
        padded = Filling._raw(lam, n, tuple(sigma.cols) + ((),) * (ell - len(mu)))
        total = weight_sum((_stack(padded, lam, b) for b in bottoms), n)
        if total != factor * weight(sigma, n):
            return False
    return True


def _stack(top: Filling, lam: Partition, bottom: Sequence[int]) -> Filling:
    cols = tuple((b,) + tuple(c) for b, c in zip(bottom, top.cols))
    return Filling._raw(lam, top.n, cols)


def check_top_consistency(lam, n: int, k: int = 1, budget: int | None = None) -> bool:
    """Iterate the one-row step over the k lowest rows."""
    lam = _as_partition(lam)
    if not 0 <= k <= lam.height:
        raise ValueError(f"k={k} outside [0, {lam.height}]")
    shape = lam
    for _ in range(k):
        if not check_top_row_step(shape, n, budget):
            return False
        shape = _strip_bottom(shape)
    return True


# -- translation covariance ------------------------------------------------------------

def check_translation_covariance(lam, n: int, weights: dict | None = None) -> bool:
    weights = tazrp_weights(_as_partition(lam), n) if weights is None else weights
    return all(weights[w.rotate(1)] == p.rotate_x(1) for w, p in weights.items())


# -- pathwise symmetry at t = 0 -------------------------------------------------------------

@dataclass
class McReport:
    shape: tuple
    n: int
    ell: int
    permutation: tuple
    t: float
    paths: int
    horizon: float
    statistic: str
    ks_statistic: float
    p_value: float
    alpha: float
    rejected: bool
    exploratory: bool

    def to_json_obj(self) -> dict:
        return dict(self.__dict__, shape=list(self.shape), permutation=list(self.permutation))


def _empty_time(state: list, xs: list, t: float, horizon: float, rng) -> float:
    """Time on [0, horizon] during which site 1 holds no particle."""
    n = len(state)
    now = 0.0
    empty = 0.0
    while True:
        moves = []
        for j in range(n):
            stronger = 0
            for s in sorted(set(state[j]), reverse=True):
                c = state[j].count(s)
                geom = c if t == 1.0 else (1 - t ** c) / (1 - t)
                r = (t ** stronger) * geom / xs[j]
                if r > 0:
                    moves.append((j, s, r))
                stronger += c
        total = sum(r for _, _, r in moves)
        dt = rng.exponential(1.0 / total)
        step = min(dt, horizon - now)
        if not state[0]:
            empty += step
        now += dt
        if now >= horizon:
            return empty
        pick = rng.random() * total
        for j, s, r in moves:
            pick -= r
            if pick < 0:
                break
        state[j].remove(s)
        state[(j + 1) % n].append(s)


def pathwise_symmetry_mc(lam, n: int, ell: int, permutation: Sequence[int], x: Sequence[float],
                         seed: int, horizon: float = 2.0, paths: int = 10_000, t: float = 0.0,
                         alpha: float = 1e-3, initial: ZrpConfig | None = None,
                         exploratory: bool = False) -> McReport:
    """Two-sample KS test on the time site 1 spends empty.

    ``permutation`` is a 1-based permutation of 1..n applied to the site
    parameters; symmetry is only known for permutations fixing 1..ell at t = 0.
    Runs with t > 0 need ``exploratory=True`` and are evidence only.
    """
    lam = _as_partition(lam)
    if t != 0 and not exploratory:
        raise ValueError("pathwise symmetry is only claimed at t = 0")
    if t < 0:
        raise ValueError("t must be nonnegative")
    perm = tuple(permutation)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{n}")
    start = initial or ZrpConfig([lam.parts] + [()] * (n - 1))
    if any(start.sites[ell:]):
        raise ValueError(f"sites {ell + 1}..{n} must be empty initially")
    xs_a = [float(v) for v in x]
    xs_b = [xs_a[p - 1] for p in perm]
    ss = np.random.SeedSequence(seed)
    gen_a, gen_b = (np.random.default_rng(s) for s in ss.spawn(2))
    sample_a = np.array([_empty_time([list(s) for s in start.sites], xs_a, t, horizon, gen_a)
                         for _ in range(paths)])
    sample_b = np.array([_empty_time([list(s) for s in start.sites], xs_b, t, horizon, gen_b)
                         for _ in range(paths)])
    res = stats.ks_2samp(sample_a, sample_b)
    return McReport(lam.parts, n, ell, perm, t, paths, horizon, "time site 1 is empty on [0,T]",
                    float(res.statistic), float(res.pvalue), alpha, bool(res.pvalue < alpha),
                    exploratory or t != 0)
