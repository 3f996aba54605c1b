"""Modified Macdonald polynomials at q = 1, partition functions of the
mTAZRP, the t = 0 identity and evidence gathering for the two conjectures."""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .budget import check_budget
from .exactalg import (GcdReport, GcdVerdict, LaurentPoly, NotDivisible, complete_homogeneous,
                       divides, exact_divide, gcd_is_unit, monomial_symmetric,
                       t_multinomial)
from .shapes import Partition, compress, conjugate, partitions_of
from .tableaux import Filling, enumerate_fillings, in_Q, quinv, weight, weight_sum


class Provenance(enum.Enum):
    TABLEAU_SUM = "TableauSum"
    FACTORIZED = "Factorized"
    MONOMIAL_EXPANSION = "MonomialExpansion"


@dataclass(frozen=True)
class MacdonaldQ1:
    shape: Partition
    n: int
    poly: LaurentPoly
    provenance: Provenance

    def to_json_obj(self) -> dict:
        return {"shape": list(self.shape.parts), "n": self.n,
                "form": self.provenance.value, "poly": self.poly.to_json_obj()}


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def htilde_q1_tableaux(lam, n: int, budget: int | None = None) -> MacdonaldQ1:
    lam = _as_partition(lam)
    check_budget(n ** lam.size, budget, f"Tab({lam},{n})")
    return MacdonaldQ1(lam, n, weight_sum(enumerate_fillings(lam, n), n), Provenance.TABLEAU_SUM)


@lru_cache(maxsize=None)
def htilde_column(r: int, n: int) -> LaurentPoly:
    """H~ of a single column of height r: sum over mu |- r of [r; mu]_t m_mu."""
    acc = LaurentPoly.zero(n)
    for mu in partitions_of(r):
        if len(mu) > n:
            continue
        acc = acc + t_multinomial(r, mu.parts, n) * monomial_symmetric(mu.parts, n)
    return acc if r else LaurentPoly.one(n)


def htilde_q1_factorized(lam, n: int) -> MacdonaldQ1:
    lam = _as_partition(lam)
    poly = LaurentPoly.one(n)
    for r in conjugate(lam):
        poly = poly * htilde_column(r, n)
    return MacdonaldQ1(lam, n, poly, Provenance.FACTORIZED)


def _compositions_bounded(r: int, n: int):
    if n == 0:
        if r == 0:
            yield ()
        return
    for first in range(r, -1, -1):
        for rest in _compositions_bounded(r - first, n - 1):
            yield (first,) + rest


def htilde_q1_monomial(lam, n: int) -> MacdonaldQ1:
    """Coefficient of each m_mu computed directly.

    The coefficient of x^mu is a sum over n-column nonnegative integer
    matrices whose row j sums to the j-th column height of lam and whose
    column sums are mu, of the product of row t-multinomials.
    """
    lam = _as_partition(lam)
    heights = tuple(conjugate(lam).parts)
    acc = LaurentPoly.zero(n)
    for mu in partitions_of(lam.size):
        if len(mu) > n:
            continue
        target = tuple(mu.parts) + (0,) * (n - len(mu))
        coeff = _matrix_sum(heights, target, n)
        if coeff:
            acc = acc + coeff * monomial_symmetric(mu.parts, n)
    if lam.size == 0:
        acc = LaurentPoly.one(n)
    return MacdonaldQ1(lam, n, acc, Provenance.MONOMIAL_EXPANSION)


def _matrix_sum(rows: tuple, remaining: tuple, n: int) -> LaurentPoly:
    if not rows:
        return LaurentPoly.one(n) if not any(remaining) else LaurentPoly.zero(n)
    r, rest = rows[0], rows[1:]
    total = LaurentPoly.zero(n)
    for comp in _compositions_bounded(r, n):
        if any(c > m for c, m in zip(comp, remaining)):
            continue
        sub = _matrix_sum(rest, tuple(m - c for m, c in zip(remaining, comp)), n)
        if sub:
            total = total + t_multinomial(r, comp, n) * sub
    return total


def htilde(lam, n: int) -> LaurentPoly:
    return htilde_q1_factorized(lam, n).poly


def x1_expansion_check(r: int, n: int) -> bool:
    """H~_{1^r}(x_1..x_n) == sum_i [r, i]_t x_1^i H~_{1^{r-i}}(x_2..x_n)."""
    lhs = htilde_column(r, n)
    if n == 1:
        return lhs == LaurentPoly.x(1, 1, r)
    rhs = LaurentPoly.zero(n)
    for i in range(r + 1):
        rest = htilde_column(r - i, n - 1).embed(n, offset=1)
        rhs = rhs + t_multinomial(r, (i, r - i), n) * LaurentPoly.x(n, 1, i) * rest
    return lhs == rhs


def zrp_partition_function(lam, n: int) -> LaurentPoly:
    return htilde(compress(_as_partition(lam)), n)


def h_conjugate(lam, n: int) -> LaurentPoly:
    out = LaurentPoly.one(n)
    for r in conjugate(_as_partition(lam)):
        out = out * complete_homogeneous(r, n)
    return out


# -- t = 0 -------------------------------------------------------------------------

def sort_row_below(above: Sequence[int], row: Sequence[int]) -> list:
    """Order ``row`` so that it forms no quinv triple with the row ``above``.

    Left to right, each position takes the unique remaining value b with no
    remaining c such that (a, b, c) is in Q, where a is the entry above
    (0 past the end of ``above``).
    """
    remaining = list(row)
    out = []
    for i in range(len(row)):
        a = above[i] if i < len(above) else 0
        choice = None
        for b in sorted(set(remaining)):
            rest = list(remaining)
            rest.remove(b)
            if not any(in_Q(a, b, c) for c in rest):
                choice = b
                break
        if choice is None:  # cannot happen: a quinv-free order always exists
            raise ArithmeticError(f"no quinv-free order of {row} under {above}")
        out.append(choice)
        remaining.remove(choice)
    return out


def quinv_free_sort(rows: Sequence[Sequence[int]], n: int | None = None,
                    keep_top: bool = False) -> Filling:
    """The quinv-free filling with prescribed row contents (rows top to bottom).

    Rows are sorted from the top down. With ``keep_top`` the first row is
    kept in the given order and only the triples below it are cleared.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return Filling((), n or 1, [])
    lengths = [len(r) for r in rows]
    if any(a > b for a, b in zip(lengths, lengths[1:])) or lengths[0] == 0:
        raise ValueError(f"row lengths {lengths} must weakly increase downwards")
    n = max(max(r) for r in rows) if n is None else n
    out = [list(rows[0]) if keep_top else sort_row_below([], rows[0])]
    for row in rows[1:]:
        out.append(sort_row_below(out[-1], row))
    sigma = Filling.from_rows(out, n)
    if not keep_top and quinv(sigma):
        raise ArithmeticError("sorted filling still has a quinv triple")
    return sigma


def check_t0_identity(lam, n: int, budget: int | None = None) -> bool:
    lam = _as_partition(lam)
    check_budget(n ** lam.size, budget, f"Tab({lam},{n})")
    acc: dict = {}
    for s in enumerate_fillings(lam, n):
        if quinv(s) == 0:
            e = (0,) + s.content()
            acc[e] = acc.get(e, 0) + 1
    return LaurentPoly(n, acc) == h_conjugate(lam, n)


# -- conjectures ---------------------------------------------------------------------

@dataclass
class Evidence:
    """One machine-readable record of a conjecture check."""

    conjecture: str
    shape: tuple
    n: int
    verdict: str
    holds: bool
    witness: object = None
    details: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        w = self.witness
        if isinstance(w, LaurentPoly):
            w = w.to_json_obj()
        return {"conjecture": self.conjecture, "shape": list(self.shape), "n": self.n,
                "verdict": self.verdict, "holds": self.holds, "witness": w,
                "details": self.details}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))


class Counterexample(RuntimeError):
    def __init__(self, evidence: Evidence):
        super().__init__(f"counterexample: {evidence.to_json()}")
        self.evidence = evidence


def check_conjecture_compressed(lam, n: int, trials: int = 8, seed: int = 0,
                                budget: int | None = None) -> Evidence:
    """gcd of all stationary weights of a compressed shape is 1."""
    from .zrp import tazrp_weights

    lam = _as_partition(lam)
    if compress(lam) != lam:
        raise ValueError(f"{lam} is not compressed")
    weights = tazrp_weights(lam, n, budget)
    cands = [htilde_column(r, n) for r in range(1, lam.size + 1)]
    report: GcdReport = gcd_is_unit(list(weights.values()), trials=trials, seed=seed,
                                    candidates=cands)
    holds = report.verdict is not GcdVerdict.NON_UNIT_WITNESS
    return Evidence("compressed-reduced", lam.parts, n, report.verdict.value, holds,
                    report.witness, {"configs": len(weights), "single_state": len(weights) == 1,
                                     "reason": report.reason,
                                     "trials": report.trials, **report.details})


def ext_fillings(lam, sigma: Filling, placement: str = "bottom"):
    """Fillings of lam that contain sigma (a filling of compress(lam)).

    With ``placement='bottom'`` column i of sigma occupies the lowest cells
    of column i of lam and the cells above are free; with ``'top'`` sigma
    sits in the highest cells and the free cells are below it.
    """
    lam = _as_partition(lam)
    small = sigma.shape
    if len(small) != len(lam) or any(a < b for a, b in zip(lam, small)):
        raise ValueError(f"{small} does not fit column-wise inside {lam}")
    extra = [a - b for a, b in zip(lam, small)]
    for free in itertools.product(range(1, sigma.n + 1), repeat=sum(extra)):
        cols, k = [], 0
        for col, e in zip(sigma.cols, extra):
            add = free[k:k + e]
            k += e
            cols.append(col + add if placement == "bottom" else add + col)
        yield Filling._raw(lam, sigma.n, tuple(cols))


def check_conjecture_refined(lam, n: int, sigma: Filling) -> Evidence:
    """Sum of wt over Ext(sigma) equals wt(sigma) * H~_lam / H~_{lam^c}."""
    lam = _as_partition(lam)
    if not lam.is_strict():
        raise ValueError(f"{lam} is not strict")
    lc = compress(lam)
    if sigma.shape != lc or sigma.n != n:
        raise ValueError(f"sigma must be a filling of {lc} with n={n}")
    ratio = exact_divide(htilde(lam, n), htilde(lc, n))
    expected = weight(sigma) * ratio
    got = weight_sum(ext_fillings(lam, sigma, "bottom"), n)
    top = weight_sum(ext_fillings(lam, sigma, "top"), n)
    holds = got == expected
    return Evidence("refined-extension", lam.parts, n, "holds" if holds else "fails", holds,
                    None if holds else got - expected,
                    {"sigma": sigma.to_text(), "extensions": n ** (lam.size - lc.size),
                     "top_placement_agrees": top == expected})


def refined_all(lam, n: int, stop_on_failure: bool = True) -> list:
    lam = _as_partition(lam)
    out = []
    for sigma in enumerate_fillings(compress(lam), n):
        ev = check_conjecture_refined(lam, n, sigma)
        out.append(ev)
        if not ev.holds and stop_on_failure:
            raise Counterexample(ev)
    return out


def check_divisibility(lam, n: int) -> bool:
    lam = _as_partition(lam)
    try:
        exact_divide(htilde(lam, n), htilde(compress(lam), n))
    except NotDivisible:
        return False
    return True


def fiber_divisibility(lam, n: int, weights: dict | None = None) -> bool:
    """Every stationary weight is divisible by H~_lam / H~_{lam^c}."""
    from .zrp import tazrp_weights

    lam = _as_partition(lam)
    ratio = exact_divide(htilde(lam, n), htilde(compress(lam), n))
    weights = tazrp_weights(lam, n) if weights is None else weights
    return all(divides(ratio, w) for w in weights.values())


def three_way_equal(lam, n: int) -> bool:
    a = htilde_q1_tableaux(lam, n).poly
    return a == htilde_q1_factorized(lam, n).poly == htilde_q1_monomial(lam, n).poly
