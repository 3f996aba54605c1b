"""Exact arithmetic: sparse Laurent polynomials in t, x_1..x_n with integer
coefficients, q-analogs and a few symmetric-polynomial constructors.

Exponents are stored as tuples ``(t_exp, x_1_exp, ..., x_n_exp)``; negative
entries are allowed everywhere.  Exact rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Mapping, Sequence

Exponent = tuple  # (t_exp, x_1, ..., x_n)


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_divide` when the quotient is not a Laurent polynomial."""


class LaurentPoly:
    """Immutable sparse Laurent polynomial in t, x_1..x_n over the integers."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, int] | Iterable = ()):
        self.n = n
        clean: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(e)
            if len(e) != n + 1:
                raise ValueError(f"exponent {e} does not match n={n}")
            if c:
                s = clean.get(e, 0) + c
                if s:
                    clean[e] = s
                else:
                    del clean[e]
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls(n)

    @classmethod
    def const(cls, n: int, c: int) -> "LaurentPoly":
        return cls(n, {(0,) * (n + 1): c})

    @classmethod
    def one(cls, n: int) -> "LaurentPoly":
        return cls.const(n, 1)

    @classmethod
    def monomial(cls, n: int, t_exp: int = 0, x_exps: Sequence[int] | None = None,
                 coeff: int = 1) -> "LaurentPoly":
        x_exps = tuple(x_exps) if x_exps is not None else (0,) * n
        return cls(n, {(t_exp,) + x_exps: coeff})

    @classmethod
    def x(cls, n: int, i: int, power: int = 1) -> "LaurentPoly":
        """The variable x_i (1-based) raised to ``power``."""
        e = [0] * (n + 1)
        e[i] = power
        return cls(n, {tuple(e): 1})

    @classmethod
    def t(cls, n: int, power: int = 1) -> "LaurentPoly":
        return cls.monomial(n, t_exp=power)

    @classmethod
    def _from_clean(cls, n: int, terms: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    # -- container protocol ----------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, exp: Exponent) -> int:
        return self._terms.get(tuple(exp), 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def sorted_terms(self) -> list:
        """Terms in canonical (lexicographic on (t_exp, x_exps)) order."""
        return sorted(self._terms.items())

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.n != self.n:
                raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._from_clean(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._from_clean(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly._from_clean(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only for monomials")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("negative power of a non-unit coefficient")
            return LaurentPoly(self.n, {tuple(-k * a for a in e): c ** (-k)})
        result = LaurentPoly.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # -- structure ---------------------------------------------------------
    def min_exponents(self) -> tuple:
        return tuple(min(col) for col in zip(*self._terms)) if self._terms else (0,) * (self.n + 1)

    def max_exponents(self) -> tuple:
        return tuple(max(col) for col in zip(*self._terms)) if self._terms else (0,) * (self.n + 1)

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the Laurent monomial with exponent ``exp``."""
        return LaurentPoly._from_clean(
            self.n, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()})

    def x_degree(self) -> set:
        return {sum(e[1:]) for e in self._terms}

    def permute_x(self, perm: Sequence[int]) -> "LaurentPoly":
        """Substitute x_i -> x_{perm[i-1]} (``perm`` is a 1-based permutation of 1..n)."""
        out = {}
        for e, c in self._terms.items():
            ne = [e[0]] + [0] * self.n
            for i, a in enumerate(e[1:]):
                ne[perm[i]] = a
            out[tuple(ne)] = c
        return LaurentPoly._from_clean(self.n, out)

    def swap_x(self, i: int, j: int) -> "LaurentPoly":
        perm = list(range(1, self.n + 1))
        perm[i - 1], perm[j - 1] = j, i
        return self.permute_x(perm)

    def rotate_x(self, k: int = 1) -> "LaurentPoly":
        """Relabel x_i -> x_{i+k} cyclically."""
        return self.permute_x([(i + k - 1) % self.n + 1 for i in range(1, self.n + 1)])

    def embed(self, n: int, offset: int = 0) -> "LaurentPoly":
        """Re-home into ``n`` variables, sending x_i to x_{i+offset}."""
        out = {}
        for e, c in self._terms.items():
            ne = [e[0]] + [0] * n
            for i, a in enumerate(e[1:], start=1):
                if a:
                    ne[i + offset] = a
            out[tuple(ne)] = c
        return LaurentPoly._from_clean(n, out)

    def at_t_zero(self) -> "LaurentPoly":
        """Set t = 0 (terms with negative t-exponent are not allowed)."""
        if any(e[0] < 0 for e in self._terms):
            raise ValueError("negative power of t")
        return LaurentPoly._from_clean(self.n, {e: c for e, c in self._terms.items() if e[0] == 0})

    def x_derivative_scaled(self, i: int) -> "LaurentPoly":
        """x_i * d/dx_i, which only rescales coefficients."""
        return LaurentPoly._from_clean(
            self.n, {e: c * e[i] for e, c in self._terms.items() if e[i]})

    def evaluate(self, t, xs: Sequence) -> Fraction:
        t = Fraction(t)
        xs = [Fraction(v) for v in xs]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = Fraction(c) * t ** e[0]
            for v, a in zip(xs, e[1:]):
                if a:
                    term *= v ** a
            total += term
        return total

    def coefficient_content(self) -> int:
        return reduce(math.gcd, self._terms.values(), 0)

    def t_coefficients(self) -> list:
        """For a polynomial in t only: coefficient list from t^0 upward."""
        if any(any(e[1:]) for e in self._terms):
            raise ValueError("not a polynomial in t alone")
        if not self._terms:
            return []
        lo = min(e[0] for e in self._terms)
        if lo < 0:
            raise ValueError("negative t power")
        hi = max(e[0] for e in self._terms)
        return [self._terms.get((k,) + (0,) * self.n, 0) for k in range(hi + 1)]

    # -- printing / serialisation -----------------------------------------
    def __repr__(self):
        return f"LaurentPoly(n={self.n}, {self.pretty()})"

    def pretty(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = []
            if e[0]:
                mono.append("t" if e[0] == 1 else f"t^{e[0]}")
            for i, a in enumerate(e[1:], start=1):
                if a:
                    mono.append(f"x{i}" if a == 1 else f"x{i}^{a}")
            body = "*".join(mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = pretty

    def to_json_obj(self) -> list:
        return [{"t": e[0], "x": list(e[1:]), "c": str(c)} for e, c in self.sorted_terms()]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: list, n: int | None = None) -> "LaurentPoly":
        if n is None:
            if not obj:
                raise ValueError("cannot infer n from an empty term list")
            n = len(obj[0]["x"])
        return cls(n, {(d["t"],) + tuple(d["x"]): int(d["c"]) for d in obj})

    @classmethod
    def from_json(cls, s: str, n: int | None = None) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(s), n)


def poly_sum(polys: Iterable[LaurentPoly], n: int) -> LaurentPoly:
    """Sum accumulated in a single dict; order-independent."""
    out: dict = {}
    for p in polys:
        for e, c in p.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return LaurentPoly._from_clean(n, out)


def chunked_sum(polys: Sequence[LaurentPoly], n: int, chunk: int = 64) -> LaurentPoly:
    """Tree reduction over fixed chunks; gives the same result as :func:`poly_sum`."""
    parts = [poly_sum(polys[i:i + chunk], n) for i in range(0, len(polys), chunk)]
    return poly_sum(parts, n)


# -- q-analogs --------------------------------------------------------------

def t_integer(m: int, n: int = 0) -> LaurentPoly:
    """[m]_t = 1 + t + ... + t^(m-1)."""
    return LaurentPoly(n, {(k,) + (0,) * n: 1 for k in range(m)})


@lru_cache(maxsize=None)
def _t_multinomial_coeffs(parts: tuple) -> tuple:
    # [m; parts]_t = sum_k t^(parts[k+1]+...) [m-1; parts - e_k]_t
    m = sum(parts)
    if m == 0:
        return (1,)
    acc: list = []
    tail = 0
    for k in range(len(parts) - 1, -1, -1):
        if parts[k]:
            sub = list(parts)
            sub[k] -= 1
            for d, c in enumerate(_t_multinomial_coeffs(tuple(sub))):
                while len(acc) <= d + tail:
                    acc.append(0)
                acc[d + tail] += c
        tail += parts[k]
    return tuple(acc)


def t_multinomial(m: int, parts: Sequence[int], n: int = 0) -> LaurentPoly:
    """Gaussian multinomial coefficient [m; parts]_t as a polynomial in t."""
    parts = tuple(parts)
    if any(p < 0 for p in parts) or sum(parts) != m:
        raise ValueError(f"parts {parts} do not form a composition of {m}")
    coeffs = _t_multinomial_coeffs(tuple(p for p in parts if p))
    return LaurentPoly(n, {(k,) + (0,) * n: c for k, c in enumerate(coeffs)})


def t_binomial(m: int, k: int, n: int = 0) -> LaurentPoly:
    if k < 0 or k > m:
        return LaurentPoly.zero(n)
    return t_multinomial(m, (k, m - k), n)


# -- symmetric polynomials -------------------------------------------------

def monomial_symmetric(mu: Sequence[int], n: int) -> LaurentPoly:
    """m_mu(x_1..x_n); zero when mu has more than n parts."""
    mu = [p for p in mu if p]
    if len(mu) > n:
        return LaurentPoly.zero(n)
    padded = tuple(mu) + (0,) * (n - len(mu))
    exps = set(itertools.permutations(padded))
    return LaurentPoly(n, {(0,) + e: 1 for e in exps})


def complete_homogeneous(r: int, n: int) -> LaurentPoly:
    """h_r(x_1..x_n)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    terms = {}
    for combo in itertools.combinations_with_replacement(range(n), r):
        e = [0] * (n + 1)
        for i in combo:
            e[i + 1] += 1
        terms[tuple(e)] = 1
    if r == 0:
        return LaurentPoly.one(n)
    return LaurentPoly(n, terms)


def is_symmetric_under(p: LaurentPoly, variables: Iterable[int]) -> bool:
    """True iff ``p`` is invariant under every permutation of ``variables``."""
    vs = sorted(set(variables))
    return all(p.swap_x(a, b) == p for a, b in zip(vs, vs[1:]))


# -- division ----------------------------------------------------------------

def exact_divide(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Quotient q with q*d == p, or raise :class:`NotDivisible`."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.n != d.n:
        raise ValueError("variable count mismatch")
    if not p:
        return LaurentPoly.zero(p.n)
    # per-variable degree window the quotient must live in
    lo = [a - b for a, b in zip(p.min_exponents(), d.min_exponents())]
    hi = [a - b for a, b in zip(p.max_exponents(), d.max_exponents())]
    if any(a > b for a, b in zip(lo, hi)):
        raise NotDivisible
    lead_e, lead_c = max(d.items())
    rem = dict(p.items())
    quot: dict = {}
    while rem:
        e, c = max(rem.items())
        qe = tuple(a - b for a, b in zip(e, lead_e))
        if c % lead_c or any(a < l or a > h for a, l, h in zip(qe, lo, hi)):
            raise NotDivisible
        qc = c // lead_c
        quot[qe] = qc
        for de, dc in d.items():
            te = tuple(a + b for a, b in zip(qe, de))
            s = rem.get(te, 0) - qc * dc
            if s:
                rem[te] = s
            else:
                rem.pop(te, None)
    return LaurentPoly._from_clean(p.n, quot)


def divides(d: LaurentPoly, p: LaurentPoly) -> bool:
    try:
        exact_divide(p, d)
    except NotDivisible:
        return False
    return True


def log_derivative(p: LaurentPoly, i: int) -> tuple:
    """(x_i dp/dx_i, p): the fraction x_i d/dx_i log p, unreduced."""
    if not p:
        raise ValueError("log derivative of the zero polynomial")
    return p.x_derivative_scaled(i), p


# -- univariate helpers for the gcd test ------------------------------------

def _specialize(p: LaurentPoly, keep: int, point: Sequence[Fraction]) -> list:
    """Substitute every variable except index ``keep`` (0 = t); return the
    univariate coefficient list in the kept variable, lowest degree first."""
    coeffs: dict = {}
    for e, c in p.items():
        val = Fraction(c)
        for idx, a in enumerate(e):
            if idx != keep and a:
                val *= point[idx] ** a
        coeffs[e[keep]] = coeffs.get(e[keep], 0) + val
    if not coeffs:
        return []
    lo, hi = min(coeffs), max(coeffs)
    out = [coeffs.get(k, Fraction(0)) for k in range(lo, hi + 1)]
    while out and out[-1] == 0:
        out.pop()
    while out and out[0] == 0:
        out.pop(0)
    return out


def _upoly_rem(a: list, b: list) -> list:
    a = list(a)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for k, bc in enumerate(b):
            a[k + shift] -= f * bc
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _upoly_gcd(a: list, b: list) -> list:
    while b:
        a, b = b, _upoly_rem(a, b)
    return a


def _lead_coeff_poly(p: LaurentPoly, var: int) -> LaurentPoly:
    top = max(e[var] for e in p._terms)
    return LaurentPoly(p.n, {e: c for e, c in p.items() if e[var] == top})


class GcdVerdict(enum.Enum):
    UNIT_WITH_CERTAINTY = "UnitWithCertainty"
    UNIT_PROBABLY = "UnitProbably"
    NON_UNIT_WITNESS = "NonUnitWitness"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class GcdReport:
    verdict: GcdVerdict
    witness: LaurentPoly | None = None
    reason: str = ""
    trials: int = 0
    details: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": self.witness.to_json_obj() if self.witness is not None else None,
            "reason": self.reason,
            "trials": self.trials,
            "details": self.details,
        }


def gcd_is_unit(ps: Sequence[LaurentPoly], trials: int = 8, seed: int = 0,
                candidates: Sequence[LaurentPoly] = ()) -> GcdReport:
    """Decide whether the polynomials ``ps`` share a non-unit common factor.

    Checks in order: integer content, common monomial factor, trial division
    by ``candidates``, then a per-variable specialisation certificate.  For
    each variable v the other variables are set to random integers; if the
    univariate gcd over Q is constant while the leading coefficient in v of
    some input does not vanish at that point, no common factor involves v.
    Covering every variable that way is a proof, hence UnitWithCertainty.
    """
    ps = list(ps)
    if not ps:
        raise ValueError("gcd of an empty list")
    if any(not p for p in ps):
        raise ValueError("gcd inputs must be nonzero")
    n = ps[0].n
    content = reduce(math.gcd, (p.coefficient_content() for p in ps))
    if content != 1:
        return GcdReport(GcdVerdict.NON_UNIT_WITNESS, LaurentPoly.const(n, content),
                         "common integer content")
    mins = [p.min_exponents() for p in ps]
    common = tuple(min(col) for col in zip(*mins))
    if any(common):
        return GcdReport(GcdVerdict.NON_UNIT_WITNESS, LaurentPoly.monomial(n, common[0], common[1:]),
                         "common monomial factor")
    if all(p.is_monomial() for p in ps):
        return GcdReport(GcdVerdict.UNIT_WITH_CERTAINTY, reason="coprime monomials")
    for cand in candidates:
        if cand.is_constant() or cand.is_monomial():
            continue
        if all(divides(cand, p) for p in ps):
            return GcdReport(GcdVerdict.NON_UNIT_WITNESS, cand, "trial division by candidate")

    rng = random.Random(seed)
    used = {v for p in ps for e in p._terms for v, a in enumerate(e) if a}
    certified: dict = {}
    suspicious: dict = {}
    runs = 0
    for var in sorted(used):
        lcs = [_lead_coeff_poly(p, var) for p in ps]
        for _ in range(trials):
            runs += 1
            point = [Fraction(rng.randint(2, 10 ** 6)) for _ in range(n + 1)]
            specs = [_specialize(p, var, point) for p in ps]
            g = reduce(_upoly_gcd, specs)
            if len(g) <= 1:
                lc_ok = any(_specialize_value(lc, point) != 0 for lc in lcs)
                if lc_ok:
                    certified[var] = True
                    break
            else:
                suspicious[var] = len(g) - 1
        if var not in certified and var not in suspicious:
            suspicious[var] = 0
    details = {"certified_vars": sorted(certified), "suspicious_vars": suspicious}
    if len(certified) == len(used):
        return GcdReport(GcdVerdict.UNIT_WITH_CERTAINTY, reason="specialisation certificate in every variable",
                         trials=runs, details=details)
    if any(deg > 0 for deg in suspicious.values()):
        return GcdReport(GcdVerdict.INCONCLUSIVE,
                         reason="specialised gcd non-constant and no candidate divides all inputs",
                         trials=runs, details=details)
    return GcdReport(GcdVerdict.UNIT_PROBABLY, reason="constant specialised gcds, leading coefficients vanished",
                     trials=runs, details=details)


def _specialize_value(p: LaurentPoly, point: Sequence[Fraction]) -> Fraction:
    return p.evaluate(point[0], point[1:])
