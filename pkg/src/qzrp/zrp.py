"""The multispecies totally asymmetric zero-range process on a ring."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .budget import check_budget
from .exactalg import LaurentPoly, t_integer
from .shapes import Partition, compress


class ZrpConfig:
    """Sites 1..n, each a multiset of species stored in descending order."""

    __slots__ = ("sites", "_hash")

    def __init__(self, sites: Iterable[Iterable[int]]):
        self.sites = tuple(tuple(sorted(s, reverse=True)) for s in sites)
        self._hash = hash(self.sites)

    @property
    def n(self) -> int:
        return len(self.sites)

    @classmethod
    def parse(cls, text: str) -> "ZrpConfig":
        sites = []
        for part in text.strip().strip("()").split("|"):
            part = part.strip()
            if part in ("", ".", "·"):
                sites.append(())
            elif "," in part:
                sites.append(tuple(int(p) for p in part.split(",")))
            else:
                sites.append(tuple(int(ch) for ch in part))
        return cls(sites)

    def __str__(self) -> str:
        wide = any(s > 9 for site in self.sites for s in site)
        sep = "," if wide else ""
        return "|".join(sep.join(map(str, s)) if s else "." for s in self.sites)

    def __repr__(self) -> str:
        return f"ZrpConfig({str(self)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ZrpConfig) and self.sites == other.sites

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "ZrpConfig") -> bool:
        return self.sites < other.sites

    def species(self) -> Partition:
        return Partition(sorted((s for site in self.sites for s in site), reverse=True))

    def count(self, site: int, species: int) -> int:
        return self.sites[site - 1].count(species)

    def move(self, site: int, species: int) -> "ZrpConfig":
        """Move one particle of ``species`` from ``site`` to the next site."""
        sites = [list(s) for s in self.sites]
        sites[site - 1].remove(species)
        sites[site % self.n].append(species)
        return ZrpConfig(sites)

    def rotate(self, k: int = 1) -> "ZrpConfig":
        """Translate every particle k sites forward."""
        n = self.n
        return ZrpConfig(self.sites[(i - k) % n] for i in range(n))

    def restrict(self, ell: int) -> "ZrpConfig":
        return ZrpConfig(self.sites[:ell])

    def relabel(self, mapping: Mapping[int, int]) -> "ZrpConfig":
        return ZrpConfig([mapping[s] for s in site] for site in self.sites)

    def x_exponents(self) -> tuple:
        return tuple(len(s) for s in self.sites)


@dataclass(frozen=True)
class ZrpParams:
    x: tuple
    t: Fraction | float

    def __post_init__(self):
        if any(v <= 0 for v in self.x):
            raise ValueError("site parameters must be positive")
        if self.t < 0:
            raise ValueError("t must be nonnegative")

    @classmethod
    def exact(cls, x: Sequence, t) -> "ZrpParams":
        return cls(tuple(Fraction(v) for v in x), Fraction(t))

    @property
    def n(self) -> int:
        return len(self.x)


# -- configurations ------------------------------------------------------------

def _compositions(m: int, n: int):
    if n == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in _compositions(m - first, n - 1):
            yield (first,) + rest


def enumerate_configs(lam: Partition | Sequence[int], n: int) -> list:
    """All placements of the particles of lam on n sites, canonically sorted."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    mult = sorted(lam.multiplicities().items(), reverse=True)
    configs = []
    for combo in itertools.product(*(list(_compositions(m, n)) for _, m in mult)):
        sites = [[] for _ in range(n)]
        for (sp, _), comp in zip(mult, combo):
            for i, c in enumerate(comp):
                sites[i].extend([sp] * c)
        configs.append(ZrpConfig(sites))
    return sorted(configs)


def count_configs(lam: Partition | Sequence[int], n: int) -> int:
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    return math.prod(math.comb(m + n - 1, n - 1) for m in lam.multiplicities().values())


# -- rates -------------------------------------------------------------------------

def species_rate(w: ZrpConfig, site: int, species: int, n_vars: int | None = None) -> LaurentPoly:
    """Total rate at which one particle of ``species`` leaves ``site``."""
    nv = w.n if n_vars is None else n_vars
    here = w.sites[site - 1]
    c = here.count(species)
    if c == 0:
        return LaurentPoly.zero(nv)
    d = sum(1 for s in here if s > species)
    x = [0] * nv
    x[site - 1] = -1
    return LaurentPoly.monomial(nv, d, x) * t_integer(c, nv)


def zrp_rates(w: ZrpConfig) -> list:
    """(site, species, target, rate) for every possible jump."""
    out = []
    for j, here in enumerate(w.sites, start=1):
        for r in sorted(set(here), reverse=True):
            out.append((j, r, w.move(j, r), species_rate(w, j, r)))
    return out


def species_rate_value(w: ZrpConfig, site: int, species: int, params: ZrpParams):
    here = w.sites[site - 1]
    c = here.count(species)
    d = sum(1 for s in here if s > species)
    t = params.t
    geom = sum(t ** i for i in range(c))
    return (t ** d) * geom / params.x[site - 1]


# -- stationary weights ---------------------------------------------------------------

def _fiber_bottom_rows(lam: Partition, w: ZrpConfig):
    """Bottom rows b (site per column) with proj(b) = w."""
    ncols = len(lam)
    groups: dict = {}
    for i, h in enumerate(lam.parts):
        groups.setdefault(h, []).append(i)
    per_height = []
    for h, cols in groups.items():
        sites = [j + 1 for j, site in enumerate(w.sites) for s in site if s == h]
        if len(sites) != len(cols):
            raise ValueError(f"{w} is not a configuration of type {lam}")
        per_height.append((cols, sorted(set(itertools.permutations(sites)))))
    for choice in itertools.product(*(perms for _, perms in per_height)):
        row = [0] * ncols
        for (cols, _), perm in zip(per_height, choice):
            for c, s in zip(cols, perm):
                row[c] = s
        yield tuple(row)


def fiber(lam: Partition | Sequence[int], n: int, w: ZrpConfig):
    """All fillings projecting to w."""
    from .tableaux import Filling

    lam = lam if isinstance(lam, Partition) else Partition(lam)
    upper = [h - 1 for h in lam.parts]
    m = sum(upper)
    for bottom in _fiber_bottom_rows(lam, w):
        for rest in itertools.product(range(1, n + 1), repeat=m):
            cols, k = [], 0
            for b, u in zip(bottom, upper):
                cols.append((b,) + rest[k:k + u])
                k += u
            yield Filling._raw(lam, n, tuple(cols))


def tazrp_weight(lam: Partition | Sequence[int], n: int, w: ZrpConfig,
                 budget: int | None = None) -> LaurentPoly:
    from .tableaux import weight_sum

    lam = lam if isinstance(lam, Partition) else Partition(lam)
    check_budget(n ** lam.size, budget, f"Tab({lam},{n})")
    return weight_sum(fiber(lam, n, w), n)


def tazrp_weights(lam: Partition | Sequence[int], n: int,
                  budget: int | None = None) -> dict:
    """Fiber sums for every configuration, from one pass over Tab(lam, n)."""
    from .tableaux import enumerate_fillings, proj, quinv

    lam = lam if isinstance(lam, Partition) else Partition(lam)
    check_budget(n ** lam.size, budget, f"Tab({lam},{n})")
    acc: dict = {w: {} for w in enumerate_configs(lam, n)}
    for sigma in enumerate_fillings(lam, n):
        e = (quinv(sigma),) + sigma.content()
        d = acc[proj(sigma)]
        d[e] = d.get(e, 0) + 1
    return {w: LaurentPoly(n, d) for w, d in acc.items()}


# -- exact stationary solve ---------------------------------------------------------------

def bareiss_solve(a: list, b: list) -> list:
    """Solve a x = b exactly; ``a`` and ``b`` hold Fractions or ints.

    Rows are scaled to integers, then fraction-free elimination with the
    first nonzero pivot in each column; back substitution in Fractions.
    """
    size = len(a)
    rows = []
    for row, rhs in zip(a, b):
        vals = [Fraction(v) for v in row] + [Fraction(rhs)]
        den = math.lcm(*(v.denominator for v in vals))
        rows.append([int(v * den) for v in vals])
    prev = 1
    for k in range(size):
        piv = next((i for i in range(k, size) if rows[i][k] != 0), None)
        if piv is None:
            raise ArithmeticError("singular system: generator is not irreducible")
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
        pk = rows[k]
        for i in range(k + 1, size):
            ri = rows[i]
            f = ri[k]
            for j in range(k + 1, size + 1):
                ri[j] = (pk[k] * ri[j] - f * pk[j]) // prev
            ri[k] = 0
        prev = pk[k]
    x = [Fraction(0)] * size
    for i in range(size - 1, -1, -1):
        s = Fraction(rows[i][size]) - sum(rows[i][j] * x[j] for j in range(i + 1, size))
        x[i] = s / rows[i][i]
    return x


def generator_matrix(configs: list, params: ZrpParams) -> list:
    index = {w: i for i, w in enumerate(configs)}
    size = len(configs)
    q = [[Fraction(0)] * size for _ in range(size)]
    for i, w in enumerate(configs):
        for j, r, tgt, _ in zrp_rates(w):
            v = species_rate_value(w, j, r, params)
            k = index[tgt]
            if k != i:
                q[i][k] += v
                q[i][i] -= v
    return q


def stationary_exact(lam: Partition | Sequence[int], n: int, params: ZrpParams,
                     budget: int | None = None) -> dict:
    """Exact stationary law of the ZRP by solving pi Q = 0, sum pi = 1."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    configs = enumerate_configs(lam, n)
    check_budget(len(configs), budget, f"TAZRP({lam},{n})")
    q = generator_matrix(configs, params)
    size = len(configs)
    a = [[q[j][i] for j in range(size)] for i in range(size)]  # Q^T
    a[-1] = [Fraction(1)] * size
    b = [Fraction(0)] * (size - 1) + [Fraction(1)]
    pi = bareiss_solve(a, b)
    if any(p <= 0 for p in pi):
        raise ArithmeticError("non-positive stationary probability")
    return dict(zip(configs, pi))


def stationary_from_weights(lam: Partition | Sequence[int], n: int, params: ZrpParams,
                            weights: dict | None = None) -> dict:
    weights = tazrp_weights(lam, n) if weights is None else weights
    vals = {w: p.evaluate(params.t, params.x) for w, p in weights.items()}
    z = sum(vals.values())
    return {w: v / z for w, v in vals.items()}


# -- lumping -------------------------------------------------------------------------------

def lump_map(lam: Partition, j: int):
    """Config -> occupation vector of the j strongest particles."""
    threshold = lam[j - 1]

    def f(w: ZrpConfig) -> tuple:
        return tuple(sum(1 for s in site if s >= threshold) for site in w.sites)

    return f


def verify_lumping(lam: Partition | Sequence[int], n: int, j: int) -> bool:
    """Dynkin criterion for merging the j strongest particles into one species
    and forgetting the rest, compared with the single-species rates."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if not 1 <= j < len(lam) and j != len(lam):
        raise ValueError("threshold out of range")
    if j < len(lam) and lam[j - 1] == lam[j]:
        raise ValueError(f"parts {j} and {j + 1} of {lam} are equal")
    f = lump_map(lam, j)
    for w in enumerate_configs(lam, n):
        eta = f(w)
        flows: dict = {}
        for _, _, tgt, r in zrp_rates(w):
            e2 = f(tgt)
            if e2 != eta:
                flows[e2] = flows.get(e2, LaurentPoly.zero(n)) + r
        single = ZrpConfig([[1] * c for c in eta])
        expected = {}
        for _, _, tgt, r in zrp_rates(single):
            if tgt != single:
                expected[tgt.x_exponents()] = r
        if flows != expected:
            return False
    return True


def verify_tableau_lumping(lam: Partition | Sequence[int], n: int,
                           budget: int | None = None) -> bool:
    """For every filling, summed tableau rates into each projected target equal
    the ZRP rate from proj(sigma)."""
    from .tabchain import out_transitions
    from .tableaux import enumerate_fillings, proj

    lam = lam if isinstance(lam, Partition) else Partition(lam)
    check_budget(n ** lam.size, budget, f"Tab({lam},{n})")
    for sigma in enumerate_fillings(lam, n):
        w = proj(sigma)
        flows: dict = {}
        for tr in out_transitions(sigma):
            w2 = proj(tr.target)
            if w2 != w:
                flows[w2] = flows.get(w2, LaurentPoly.zero(n)) + tr.rate
        expected = {tgt: r for _, _, tgt, r in zrp_rates(w) if tgt != w}
        if flows != expected:
            return False
    return True


# -- simulation -------------------------------------------------------------------------------

@dataclass
class Trajectory:
    seed: int
    initial: ZrpConfig
    final: ZrpConfig
    horizon: float
    n_events: int
    species: tuple
    occupation: np.ndarray          # [site, species index] time-integrated counts
    jumps: np.ndarray               # [site, species index] jumps out of the site
    batch_occupation: np.ndarray    # [batch, site, species index]
    batch_jumps: np.ndarray
    events: list = field(default_factory=list)  # (time, site, species)

    def density(self) -> np.ndarray:
        return self.occupation / self.horizon

    def current(self) -> np.ndarray:
        """Jumps per unit time out of each site, by species."""
        return self.jumps / self.horizon

    def _batch_se(self, arr: np.ndarray) -> np.ndarray:
        nb = arr.shape[0]
        width = self.horizon / nb
        per = arr / width
        return per.std(axis=0, ddof=1) / math.sqrt(nb)

    def density_se(self) -> np.ndarray:
        return self._batch_se(self.batch_occupation)

    def current_se(self) -> np.ndarray:
        return self._batch_se(self.batch_jumps)

    def to_csv(self) -> str:
        lines = ["time,site,species"]
        lines += [f"{tm!r},{s},{sp}" for tm, s, sp in self.events]
        return "\n".join(lines) + "\n"


def simulate(lam: Partition | Sequence[int], n: int, params: ZrpParams, seed: int,
             horizon: float, initial: ZrpConfig | None = None, batches: int = 50,
             record_events: bool = False) -> Trajectory:
    """Gillespie direct method; batch-means accumulators for standard errors."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    if params.n != n:
        raise ValueError("parameter vector length differs from n")
    rng = np.random.default_rng(seed)
    species = tuple(sorted(set(lam.parts), reverse=True))
    sidx = {s: i for i, s in enumerate(species)}
    xs = [float(v) for v in params.x]
    t = float(params.t)
    state = [list(s) for s in (initial.sites if initial else [lam.parts] + [()] * (n - 1))]
    init_cfg = ZrpConfig(state)
    counts = np.zeros((n, len(species)))
    for j, site in enumerate(state):
        for s in site:
            counts[j, sidx[s]] += 1
    occ = np.zeros((n, len(species)))
    jumps = np.zeros((n, len(species)), dtype=np.int64)
    b_occ = np.zeros((batches, n, len(species)))
    b_jmp = np.zeros((batches, n, len(species)))
    width = horizon / batches
    events = []
    now = 0.0
    n_events = 0

    def site_rates(j: int) -> list:
        out = []
        stronger = 0
        for s in species:
            c = int(counts[j, sidx[s]])
            if c:
                geom = c if t == 1.0 else (1 - t ** c) / (1 - t)
                out.append((s, (t ** stronger) * geom / xs[j]))
            stronger += c
        return out

    rates = [site_rates(j) for j in range(n)]

    def add_occupation(t0: float, t1: float):
        if t1 <= t0:
            return
        occ[:] += counts * (t1 - t0)
        b0 = int(t0 // width)
        while t0 < t1:
            b = min(b0, batches - 1)
            end = min(t1, (b + 1) * width) if b < batches - 1 else t1
            b_occ[b] += counts * (end - t0)
            t0 = end
            b0 += 1

    while True:
        flat = [(j, s, r) for j in range(n) for s, r in rates[j] if r > 0]
        total = sum(r for _, _, r in flat)
        if total <= 0:
            raise RuntimeError("all rates vanish; the process is frozen")
        dt = -math.log(1.0 - rng.random()) / total
        if now + dt >= horizon:
            add_occupation(now, horizon)
            now = horizon
            break
        add_occupation(now, now + dt)
        now += dt
        pick = rng.random() * total
        acc = 0.0
        for j, s, r in flat:
            acc += r
            if pick < acc:
                break
        state[j].remove(s)
        dest = (j + 1) % n
        state[dest].append(s)
        counts[j, sidx[s]] -= 1
        counts[dest, sidx[s]] += 1
        jumps[j, sidx[s]] += 1
        b_jmp[min(int(now // width), batches - 1), j, sidx[s]] += 1
        rates[j] = site_rates(j)
        rates[dest] = site_rates(dest)
        n_events += 1
        if record_events:
            events.append((now, j + 1, s))
    return Trajectory(seed, init_cfg, ZrpConfig(state), horizon, n_events, species,
                      occ, jumps, b_occ, b_jmp, events)


def expected_event_rate(lam: Partition | Sequence[int], n: int, params: ZrpParams) -> Fraction:
    pi = stationary_exact(lam, n, params)
    total = Fraction(0)
    for w, p in pi.items():
        total += p * sum(species_rate_value(w, j, r, params) for j, r, _, _ in zrp_rates(w))
    return total


def compress_config(w: ZrpConfig) -> ZrpConfig:
    lam = w.species()
    lc = compress(lam)
    mapping = dict(zip(lam.parts, lc.parts))
    return w.relabel(mapping)
