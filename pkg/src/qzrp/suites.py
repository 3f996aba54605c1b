"""Named verification suites shared by the command line and the test-suite.

Each suite runs a family of exact identities over one (shape, n) instance
and returns a list of :class:`Check` records.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import macdonald as mac
from . import multiline as ml
from . import observables as obs
from . import tabchain as tc
from . import tableaux as tb
from . import zrp
from .budget import check_budget
from .exactalg import LaurentPoly, is_symmetric_under
from .shapes import Cell, Partition, compress


@dataclass
class Check:
    name: str
    passed: bool
    count: int = 0
    failures: list = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {"name": self.name, "passed": self.passed, "count": self.count,
                "failures": self.failures[:5]}


class _Tally:
    def __init__(self, name: str):
        self.check = Check(name, True)

    def __call__(self, ok: bool, witness=None) -> None:
        self.check.count += 1
        if not ok:
            self.check.passed = False
            if len(self.check.failures) < 5:
                self.check.failures.append(str(witness))


def default_point(n: int) -> zrp.ZrpParams:
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    return zrp.ZrpParams.exact(primes[:n], Fraction(1, 3))



def _fillings(lam: Partition, n: int, budget):
    check_budget(n ** lam.size, budget, f"Tab({lam},{n})")
    return tb.enumerate_fillings(lam, n)


# -- suites ----------------------------------------------------------------------

def suite_balance(lam: Partition, n: int, budget=None, **_) -> list:
    bal, ins, irr = _Tally("global balance"), _Tally("In-set by inversion = In-set by scan"), _Tally("irreducible")
    scan = tc.in_transitions_by_scan(lam, n)
    for sigma in _fillings(lam, n, budget):
        bal(tc.verify_balance(sigma), sigma.to_text())
        got = {(tr.source, tr.trigger) for tr in tc.in_transitions(sigma)}
        ins(got == scan.get(sigma, set()), sigma.to_text())
    irr(tc.verify_irreducibility(lam, n, budget=budget), lam)
    return [bal.check, ins.check, irr.check]


def suite_updown(lam: Partition, n: int, budget=None, **_) -> list:
    du, tel, llt = _Tally("D = U"), _Tally("row telescoping"), _Tally("quinv = inv_hat - arm_hat")
    for sigma in _fillings(lam, n, budget):
        for k in range(1, n + 1):
            d, u = tb.dsum_usum(sigma, k)
            du(d == u, (sigma.to_text(), k))
            tel(tb.telescoping_holds(sigma, k), (sigma.to_text(), k))
        inv_hat, arm_hat, _ = tb.llt_stats(sigma)
        llt(tb.quinv(sigma) == inv_hat - arm_hat, sigma.to_text())
    return [du.check, tel.check, llt.check]


def suite_quinvdiff(lam: Partition, n: int, budget=None, **_) -> list:
    xmon = _Tally("x^xi = x^sigma x_xi(u) / x_sigma(y)")
    full = _Tally("quinv difference with segment correction")
    prime = _Tally("quinv difference after R'")
    swap = _Tally("tau changes quinv by the sign of the top comparison")
    for xi in _fillings(lam, n, budget):
        q_xi = tb.quinv(xi)
        for u in tc.triggers(xi):
            sigma = tc.ring(xi, u)
            y = Cell(tc.chain_top(xi, u), u[1])
            lhs = tb.x_monomial(xi)
            rhs = tb.x_monomial(sigma) * LaurentPoly.x(n, xi[u]) * LaurentPoly.x(n, sigma[y], -1)
            xmon(lhs == rhs, (xi.to_text(), u))
            dn = tb.down(xi, u)
            up_y = tb.up(sigma, y)
            ok = up_y is not tb.BLOCKED and (
                q_xi - tb.quinv(sigma) == up_y - dn + tc.quinv_diff_correction(xi, u))
            full(ok, (xi.to_text(), u))
            sp, yp = tc.ring_prime(xi, u)
            up_p = tb.up(sp, yp)
            prime(up_p is not tb.BLOCKED and q_xi - tb.quinv(sp) == up_p - dn, (xi.to_text(), u))
        for j in range(1, len(lam)):
            if lam[j - 1] != lam[j]:
                continue
            top = lam[j - 1]
            a, b = xi[(top, j)], xi[(top, j + 1)]
            expected = (a > b) - (a < b)
            swap(tb.quinv(tc.tau(xi, j)) - q_xi == expected, (xi.to_text(), j))
    return [xmon.check, full.check, prime.check, swap.check]


def suite_lumping(lam: Partition, n: int, budget=None, **_) -> list:
    dyn, tab = _Tally("species lumping (Dynkin)"), _Tally("tableau chain projects to the ZRP")
    for j in range(1, len(lam) + 1):
        if j < len(lam) and lam[j - 1] == lam[j]:
            continue
        dyn(zrp.verify_lumping(lam, n, j), j)
    tab(zrp.verify_tableau_lumping(lam, n, budget), lam)
    return [dyn.check, tab.check]


def suite_stationary(lam: Partition, n: int, budget=None, at=None, **_) -> list:
    params = at or default_point(n)
    st, div, ht = _Tally("linear solve = weights / Z"), _Tally("weights divisible by H~/H~c"), \
        _Tally("sum of weights = H~ of the compressed shape times the ratio")
    weights = zrp.tazrp_weights(lam, n, budget)
    pi = zrp.stationary_exact(lam, n, params, budget)
    z = sum(p.evaluate(params.t, params.x) for p in weights.values())
    for w, p in weights.items():
        st(pi[w] == p.evaluate(params.t, params.x) / z, w)
    div(mac.fiber_divisibility(lam, n, weights), lam)
    total = sum(weights.values(), LaurentPoly.zero(n))
    ht(total == mac.htilde(lam, n), lam)
    return [st.check, div.check, ht.check]


def suite_symmetry(lam: Partition, n: int, budget=None, **_) -> list:
    rs, tr, sym = _Tally("restricted weights symmetric"), _Tally("translation covariance"), \
        _Tally("H~ symmetric")
    weights = zrp.tazrp_weights(lam, n, budget)
    for ell in range(n + 1):
        rs(obs.check_restricted_symmetry(lam, n, ell, weights), ell)
    tr(obs.check_translation_covariance(lam, n, weights), lam)
    sym(is_symmetric_under(mac.htilde_q1_tableaux(lam, n, budget).poly, range(1, n + 1)), lam)
    return [rs.check, tr.check, sym.check]


def _compressed_species(lam: Partition) -> dict:
    return dict(zip(lam.parts, compress(lam).parts))


def suite_density(lam: Partition, n: int, budget=None, **_) -> list:
    dens, cons = _Tally("density formula = exact"), _Tally("species conservation")
    weights = zrp.tazrp_weights(lam, n, budget)
    lc = compress(lam)
    relabel = _compressed_species(lam)
    for sp, m in lam.multiplicities().items():
        nums = []
        for i in range(1, n + 1):
            exact = obs.density_exact(lam, n, sp, i, weights)
            dens(exact == obs.density_formula(lc, n, relabel[sp], i), (sp, i))
            nums.append(exact.num)
        # all exact densities share the denominator Z
        cons(sum(nums, LaurentPoly.zero(n)) == exact.den * m, sp)
    return [dens.check, cons.check]


def suite_current(lam: Partition, n: int, budget=None, at=None, **_) -> list:
    sym, num = _Tally("current formula = exact (symbolic)"), _Tally("current formula = linear solve")
    weights = zrp.tazrp_weights(lam, n, budget)
    lc = compress(lam)
    relabel = _compressed_species(lam)
    params = at or default_point(n)
    for sp in lam.multiplicities():
        formula = obs.current_formula(lc, n, relabel[sp])
        for site in range(1, n + 1):
            sym(obs.current_symbolic(lam, n, sp, site, weights) == formula, (sp, site))
        num(obs.current_exact(lam, n, sp, params) == formula.evaluate(params.t, params.x), sp)
    return [sym.check, num.check]


def suite_top(lam: Partition, n: int, budget=None, **_) -> list:
    top = _Tally("bottom-row sum multiplies by H~ of a column")
    for k in range(lam.height + 1):
        top(obs.check_top_consistency(lam, n, k, budget), k)
    return [top.check]


def suite_macdonald(lam: Partition, n: int, budget=None, **_) -> list:
    three, t0, div = _Tally("tableau sum = factorized = monomial"), _Tally("H~(X;1,0) = h_lam'"), \
        _Tally("H~c divides H~")
    check_budget(n ** lam.size, budget, f"Tab({lam},{n})")
    three(mac.three_way_equal(lam, n), lam)
    t0(mac.htilde(lam, n).at_t_zero() == mac.h_conjugate(lam, n), lam)
    div(mac.check_divisibility(lam, n), lam)
    return [three.check, t0.check, div.check]


def suite_multiline(lam: Partition, n: int, budget=None, **_) -> list:
    if not lam.is_strict():
        fib = _Tally("fiber weight = grouped tableau weights")
        groups: dict = {}
        for sigma in _fillings(lam, n, budget):
            groups.setdefault(ml.to_multiline(sigma), []).append(sigma)
        for m, sigmas in groups.items():
            fib(ml.fiber_weight(m) == tb.weight_sum(sigmas, n), m.to_text())
        return [fib.check]
    bij, wt, conj = _Tally("bijection"), _Tally("weight equality"), _Tally("jump conjugation")
    for sigma in _fillings(lam, n, budget):
        m = ml.to_multiline(sigma)
        bij(ml.from_multiline(m) == sigma, sigma.to_text())
        wt(ml.check_weight_equality(sigma), sigma.to_text())
        conj(ml.check_conjugation(sigma), sigma.to_text())
    return [bij.check, wt.check, conj.check]


def suite_t0(lam: Partition, n: int, budget=None, **_) -> list:
    ident, uniq, irr = _Tally("quinv-free sum = h_lam'"), _Tally("unique quinv-free filling per row content"), \
        _Tally("t = 0 chain irreducible")
    ident(mac.check_t0_identity(lam, n, budget), lam)
    by_rows: dict = {}
    for sigma in _fillings(lam, n, budget):
        if tb.quinv(sigma) == 0:
            key = tuple(tuple(sorted(r)) for r in sigma.rows())
            by_rows.setdefault(key, []).append(sigma)
    for key, sigmas in by_rows.items():
        uniq(len(sigmas) == 1 and mac.quinv_free_sort(key, n) == sigmas[0], key)
    irr(tc.verify_irreducibility(lam, n, t_zero=True, budget=budget), lam)
    return [ident.check, uniq.check, irr.check]


SUITES: dict = {
    "balance": suite_balance,
    "updown": suite_updown,
    "quinvdiff": suite_quinvdiff,
    "lumping": suite_lumping,
    "stationary": suite_stationary,
    "symmetry": suite_symmetry,
    "density": suite_density,
    "current": suite_current,
    "top": suite_top,
    "macdonald": suite_macdonald,
    "multiline": suite_multiline,
    "t0": suite_t0,
}


def run_suite(name: str, lam: Partition, n: int, budget=None, at=None) -> list:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, lam, n, budget, at))
        return out
    fn: Callable = SUITES[name]
    return [dict(c.to_json_obj(), suite=name) for c in fn(lam, n, budget=budget, at=at)]
