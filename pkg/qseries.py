"""
qseries.py
Exact truncated q-series with Laurent-polynomial colour coefficients, q-products and dilations.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import ceil, comb, floor, isqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from colour import Colour, PartitionsError

logger = logging.getLogger(__name__)

Exps = Tuple[int, ...]


class SeriesError(PartitionsError):
    """Raised for invalid series arguments, such as inverting a non-unit."""


class PrecisionError(SeriesError):
    """Raised when a coefficient beyond the known order is requested."""


# ===== LAURENT POLYNOMIALS =====

class LaurentPoly:
    """
    Exact integer Laurent polynomial in nvars variables.

    Colour coefficients use one variable per index a_0..a_{n-1}. Polynomials in q alone
    (q-binomials, g) are LaurentPoly with nvars=1. Values are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, terms: Optional[Dict[Exps, int]] = None, nvars: int = 0):
        self.nvars = nvars
        self.terms: Dict[Exps, int] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != nvars:
                raise SeriesError(f"exponent vector {exps} does not have {nvars} entries")
            if coeff:
                self.terms[tuple(exps)] = coeff

    @classmethod
    def zero(cls, nvars: int = 0) -> "LaurentPoly":
        return cls({}, nvars)

    @classmethod
    def constant(cls, value: int, nvars: int = 0) -> "LaurentPoly":
        return cls({(0,) * nvars: value}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls({tuple(exps): coeff}, len(exps))

    @classmethod
    def variable(cls, index: int, nvars: int, power: int = 1) -> "LaurentPoly":
        exps = [0] * nvars
        exps[index] = power
        return cls.monomial(exps)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def is_unit(self) -> bool:
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def total_degrees(self) -> List[int]:
        return sorted({sum(exps) for exps in self.terms})

    def _coerce(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise SeriesError(f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            terms[exps] = terms.get(exps, 0) + coeff
        return LaurentPoly(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.nvars)

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
        terms: Dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                terms[exps] = terms.get(exps, 0) + c1 * c2
        return LaurentPoly(terms, self.nvars)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit monomial +-x^e."""
        if not self.is_unit():
            raise SeriesError(f"{self} is not a unit")
        (exps, coeff), = self.terms.items()
        return LaurentPoly({tuple(-e for e in exps): coeff}, self.nvars)

    def __pow__(self, power: int) -> "LaurentPoly":
        if power < 0:
            return self.inverse() ** (-power)
        result = LaurentPoly.constant(1, self.nvars)
        for _ in range(power):
            result = result * self
        return result

    def invert_variables(self) -> "LaurentPoly":
        """Substitute every variable by its reciprocal (q -> 1/q for q-polynomials)."""
        return LaurentPoly({tuple(-e for e in exps): c for exps, c in self.terms.items()}, self.nvars)

    def shifted(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x^exps."""
        return LaurentPoly({tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
                           self.nvars)

    def evaluate(self, values: Sequence[Union[int, Fraction]]) -> Fraction:
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = Fraction(coeff)
            for v, e in zip(values, exps):
                term *= Fraction(v) ** e
            total += term
        return total

    def specialise(self, weights: Sequence[int]) -> Dict[int, int]:
        """Collapse to one variable: x_i -> t^weights[i]; returns exponent -> coefficient."""
        out: Dict[int, int] = {}
        for exps, coeff in self.terms.items():
            key = sum(w * e for w, e in zip(weights, exps))
            out[key] = out.get(key, 0) + coeff
        return {k: v for k, v in out.items() if v}

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"a{i}" for i in range(self.nvars)]
        pieces = []
        for exps in sorted(self.terms, reverse=True):
            coeff = self.terms[exps]
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                pieces.append(str(coeff))
            elif coeff == 1:
                pieces.append(body)
            elif coeff == -1:
                pieces.append(f"-{body}")
            else:
                pieces.append(f"{coeff}*{body}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.format(["q"] if self.nvars == 1 else None)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_list(self) -> List[Dict]:
        return [{"exps": list(exps), "coeff": c} for exps, c in sorted(self.terms.items())]

    @classmethod
    def from_list(cls, items: List[Dict], nvars: int) -> "LaurentPoly":
        return cls({tuple(item["exps"]): int(item["coeff"]) for item in items}, nvars)


def q_power(k: int, coeff: int = 1) -> LaurentPoly:
    """The q-polynomial coeff*q^k."""
    return LaurentPoly({(k,): coeff}, 1)


def qpoly_coefficients(poly: LaurentPoly) -> Dict[int, int]:
    return {exps[0]: c for exps, c in poly.terms.items()}


# ===== TRUNCATED SERIES =====

class QSeries:
    """
    Power series in q, known exactly through q^order.

    Coefficients are LaurentPoly in nvars colour variables (nvars=0 for plain series).
    Negative q-exponents are allowed for intermediate values.
    """

    __slots__ = ("coeffs", "order", "nvars")

    def __init__(self, coeffs: Optional[Dict[int, Union[LaurentPoly, int]]] = None,
                 order: int = 0, nvars: int = 0):
        self.order = order
        self.nvars = nvars
        self.coeffs: Dict[int, LaurentPoly] = {}
        for e, c in (coeffs or {}).items():
            if e > order:
                continue
            if isinstance(c, int):
                c = LaurentPoly.constant(c, nvars)
            elif c.nvars != nvars:
                raise SeriesError(f"coefficient in {c.nvars} variables inside a series in {nvars}")
            if not c.is_zero():
                self.coeffs[e] = c

    @classmethod
    def zero(cls, order: int, nvars: int = 0) -> "QSeries":
        return cls({}, order, nvars)

    @classmethod
    def one(cls, order: int, nvars: int = 0) -> "QSeries":
        return cls({0: 1}, order, nvars)

    @classmethod
    def from_counts(cls, counts: Sequence[int], order: Optional[int] = None) -> "QSeries":
        order = len(counts) - 1 if order is None else order
        return cls({e: c for e, c in enumerate(counts)}, order, 0)

    @classmethod
    def from_qpoly(cls, poly: LaurentPoly, order: int, nvars: int = 0,
                   coeff: Optional[LaurentPoly] = None) -> "QSeries":
        """Exact series of a q-polynomial, optionally scaled by a colour coefficient."""
        coeff = coeff if coeff is not None else LaurentPoly.constant(1, nvars)
        return cls({e: coeff * c for e, c in qpoly_coefficients(poly).items()}, order, nvars)

    @property
    def valuation(self) -> int:
        return min(self.coeffs) if self.coeffs else self.order + 1

    def coefficient(self, e: int) -> LaurentPoly:
        if e > self.order:
            raise PrecisionError(f"q^{e} is beyond the known order {self.order}")
        return self.coeffs.get(e, LaurentPoly.zero(self.nvars))

    def counts(self, through: Optional[int] = None) -> List[int]:
        """Integer coefficients of q^0..q^through for a colour-free series."""
        through = self.order if through is None else through
        return [self.coefficient(e).constant_value() if self.nvars == 0 else
                sum(self.coefficient(e).terms.values()) for e in range(through + 1)]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise PrecisionError(f"series known through q^{self.order}, not q^{order}")
        return QSeries(self.coeffs, order, self.nvars)

    def _check(self, other: "QSeries") -> None:
        if self.nvars != other.nvars:
            raise SeriesError(f"cannot combine series in {self.nvars} and {other.nvars} variables")

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        order = min(self.order, other.order)
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs[e] + c if e in coeffs else c
        return QSeries(coeffs, order, self.nvars)

    def __neg__(self) -> "QSeries":
        return QSeries({e: -c for e, c in self.coeffs.items()}, self.order, self.nvars)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def __mul__(self, other: Union["QSeries", LaurentPoly, int]) -> "QSeries":
        if isinstance(other, (int, LaurentPoly)):
            return self.scaled(other)
        self._check(other)
        order = min(self.order + other.valuation, other.order + self.valuation)
        coeffs: Dict[int, LaurentPoly] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e > order:
                    continue
                term = c1 * c2
                coeffs[e] = coeffs[e] + term if e in coeffs else term
        return QSeries(coeffs, order, self.nvars)

    __rmul__ = __mul__

    def scaled(self, coeff: Union[LaurentPoly, int], shift: int = 0) -> "QSeries":
        """Multiply by the exact term coeff * q^shift."""
        if isinstance(coeff, int):
            coeff = LaurentPoly.constant(coeff, self.nvars)
        order = self.order + shift
        return QSeries({e + shift: c * coeff for e, c in self.coeffs.items()}, order, self.nvars)

    def shift(self, k: int) -> "QSeries":
        return QSeries({e + k: c for e, c in self.coeffs.items()}, self.order + k, self.nvars)

    def times_binomial(self, coeff: LaurentPoly, e: int, cap: Optional[int] = None) -> "QSeries":
        """
        Multiply by the exact binomial (1 + coeff*q^e).

        The result is known through order + min(0, e); cap bounds the stored exponents.
        """
        order = self.order + min(0, e)
        if cap is not None:
            order = min(order, cap)
        coeffs = dict(self.coeffs)
        for k, c in self.coeffs.items():
            target = k + e
            if target > order:
                continue
            term = c * coeff
            coeffs[target] = coeffs[target] + term if target in coeffs else term
        return QSeries(coeffs, order, self.nvars)

    def reciprocal(self) -> "QSeries":
        """1/f for a series whose lowest coefficient is a unit monomial."""
        if not self.coeffs:
            raise SeriesError("cannot invert the zero series")
        v = self.valuation
        lead = self.coeffs[v]
        if not lead.is_unit():
            raise SeriesError(f"leading coefficient {lead} is not invertible")
        inv_lead = lead.inverse()
        known = self.order - v
        g = {e - v: c for e, c in self.coeffs.items()}
        inv: Dict[int, LaurentPoly] = {0: inv_lead}
        for k in range(1, known + 1):
            acc = LaurentPoly.zero(self.nvars)
            for j in range(1, k + 1):
                if j in g and (k - j) in inv:
                    acc = acc + g[j] * inv[k - j]
            if not acc.is_zero():
                inv[k] = -(inv_lead * acc)
        return QSeries({e - v: c for e, c in inv.items()}, known - v, self.nvars)

    def map_coefficients(self, fn, nvars: int) -> "QSeries":
        return QSeries({e: fn(c) for e, c in self.coeffs.items()}, self.order, nvars)

    def specialise_colours(self, values: Optional[Sequence[int]] = None) -> "QSeries":
        """Set every colour variable to an integer (default 1); returns a colour-free series."""
        values = values if values is not None else [1] * self.nvars
        coeffs = {}
        for e, c in self.coeffs.items():
            value = c.evaluate(values)
            if value.denominator != 1:
                raise SeriesError("specialisation produced a non-integer coefficient")
            coeffs[e] = int(value)
        return QSeries(coeffs, self.order, 0)

    def first_mismatch(self, other: "QSeries", through: Optional[int] = None) -> Optional[Dict]:
        """
        First coefficient where two series differ.

        Returns:
            Dict: {q, monomial, expected, actual} or None when they agree through the bound
        """
        self._check(other)
        through = min(self.order, other.order) if through is None else through
        for e in range(min(self.valuation, other.valuation, 0), through + 1):
            mine, theirs = self.coefficient(e), other.coefficient(e)
            if mine == theirs:
                continue
            for exps in sorted(set(mine.terms) | set(theirs.terms)):
                if mine.terms.get(exps, 0) != theirs.terms.get(exps, 0):
                    return {"q": e, "monomial": list(exps),
                            "expected": mine.terms.get(exps, 0), "actual": theirs.terms.get(exps, 0)}
        return None

    def agrees_with(self, other: "QSeries", through: Optional[int] = None) -> bool:
        return self.first_mismatch(other, through) is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.order == other.order and self.nvars == other.nvars
                and self.coeffs == other.coeffs)

    __hash__ = None

    def __repr__(self) -> str:
        shown = ", ".join(f"q^{e}: {self.coeffs[e]}" for e in sorted(self.coeffs)[:6])
        return f"QSeries(order={self.order}, nvars={self.nvars}, {{{shown}}})"

    def to_dict(self) -> Dict:
        return {
            "order": self.order,
            "nvars": self.nvars,
            "terms": [{"q": e, "monomials": self.coeffs[e].to_list()} for e in sorted(self.coeffs)],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "QSeries":
        nvars = int(data.get("nvars", 0))
        coeffs = {int(t["q"]): LaurentPoly.from_list(t["monomials"], nvars) for t in data["terms"]}
        return cls(coeffs, int(data["order"]), nvars)


def series_sum(items: Sequence[QSeries], order: int, nvars: int = 0) -> QSeries:
    total = QSeries.zero(order, nvars)
    for item in items:
        total = total + item
    return total


# ===== q-PRODUCTS =====

def negative_depth(shift: int, step: int, count: Optional[int]) -> int:
    """Sum of the negative exponents among shift, shift+step, ... (count factors or all)."""
    depth, k = 0, 0
    while count is None or k < count:
        e = shift + k * step
        if e >= 0:
            break
        depth -= e
        k += 1
    return depth


def pochhammer(coeff: LaurentPoly, shift: int, order: int, step: int = 1,
               count: Optional[int] = None) -> QSeries:
    """
    The product of (1 - coeff*q^(shift + k*step)) for k = 0..count-1 (infinite when count is None).

    Args:
        coeff: Colour monomial (use a negated monomial for (-a q^j; q^step))
        shift: Exponent of the first factor, may be negative
        order: Truncation order of the result
        step: Base exponent of the product, at least 1
        count: Number of factors, None for the infinite product

    Returns:
        QSeries: the product through q^order
    """
    if step < 1:
        raise SeriesError("pochhammer step must be positive")
    depth = negative_depth(shift, step, count)
    work = order + depth
    result = QSeries.one(work, coeff.nvars)
    neg = -coeff
    k = 0
    while count is None or k < count:
        e = shift + k * step
        if e > work:
            break
        result = result.times_binomial(neg, e, cap=work)
        k += 1
    return result.truncate(order)


def inv_pochhammer(coeff: LaurentPoly, shift: int, order: int, step: int = 1,
                   count: Optional[int] = None) -> QSeries:
    """Reciprocal of pochhammer(...); the constant term must be a unit."""
    return pochhammer(coeff, shift, order, step, count).reciprocal().truncate(order)


@lru_cache(maxsize=None)
def euler(order: int, count: Optional[int] = None) -> QSeries:
    """(q;q)_count, or (q;q)_inf, colour-free."""
    return pochhammer(LaurentPoly.constant(1), 1, order, 1, count)


@lru_cache(maxsize=None)
def inv_euler(order: int, count: Optional[int] = None) -> QSeries:
    """1/(q;q)_count, or 1/(q;q)_inf, colour-free."""
    return euler(order, count).reciprocal()


def with_nvars(series: QSeries, nvars: int) -> QSeries:
    """Lift a colour-free series to constant coefficients in nvars variables."""
    if series.nvars == nvars:
        return series
    if series.nvars != 0:
        raise SeriesError("only colour-free series can be lifted")
    return series.map_coefficients(lambda c: LaurentPoly.constant(c.constant_value(), nvars), nvars)


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> LaurentPoly:
    """Gaussian binomial [n, k] as a q-polynomial; zero when k < 0 or k > n."""
    if k < 0 or k > n or n < 0:
        return LaurentPoly.zero(1)
    if k == 0 or k == n:
        return LaurentPoly.constant(1, 1)
    return qbinom(n - 1, k - 1) + q_power(k) * qbinom(n - 1, k)


def g(u: int, v: int, xs: Sequence[int]) -> LaurentPoly:
    """
    g_{u,v}(q; x_1..x_v): sum over 0/1 vectors eps with u ones of
    q^(uv + C(u,2)) * prod_k q^((x_k - 1) * sum_{i<k} eps_i).
    """
    if u < 0 or u > v:
        raise SeriesError(f"g needs 0 <= u <= v, got u={u}, v={v}")
    if len(xs) != v:
        raise SeriesError(f"g_{{{u},{v}}} needs {v} arguments, got {len(xs)}")
    base = u * v + comb(u, 2)
    total = LaurentPoly.zero(1)
    for chosen in combinations(range(v), u):
        exponent = base
        for k in range(v):
            before = sum(1 for i in chosen if i < k)
            exponent += (xs[k] - 1) * before
        total = total + q_power(exponent)
    return total


# ===== SERIES IN AN AUXILIARY VARIABLE x =====

class XSeries:
    """Laurent series in x with QSeries coefficients, kept on the window |x-exponent| <= window."""

    def __init__(self, coeffs: Dict[int, QSeries], window: int, order: int, nvars: int):
        self.window = window
        self.order = order
        self.nvars = nvars
        self.coeffs = {x: s for x, s in coeffs.items() if abs(x) <= window and s.coeffs}

    @classmethod
    def one(cls, window: int, order: int, nvars: int) -> "XSeries":
        return cls({0: QSeries.one(order, nvars)}, window, order, nvars)

    def times_binomial(self, x_power: int, coeff: LaurentPoly, q_exp: int) -> "XSeries":
        """Multiply by (1 + x^x_power * coeff * q^q_exp) with q_exp >= 0."""
        out = dict(self.coeffs)
        for x, series in self.coeffs.items():
            target = x + x_power
            if abs(target) > self.window:
                continue
            term = series.scaled(coeff, q_exp).truncate(self.order)
            out[target] = out[target] + term if target in out else term
        return XSeries(out, self.window, self.order, self.nvars)

    def times_series(self, other: QSeries) -> "XSeries":
        return XSeries({x: (s * other).truncate(self.order) for x, s in self.coeffs.items()},
                       self.window, self.order, self.nvars)

    def coefficient(self, x: int) -> QSeries:
        return self.coeffs.get(x, QSeries.zero(self.order, self.nvars))

    def constant_term(self) -> QSeries:
        return self.coefficient(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, XSeries):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(x).agrees_with(other.coefficient(x), min(self.order, other.order))
                   for x in keys)

    __hash__ = None


def jacobi_triple_product_sides(coeff: Optional[LaurentPoly], order: int) -> Tuple[XSeries, XSeries]:
    """
    Both sides of the triple product identity with x scaled by coeff.

    Left: (-x c q; q)_inf (-1/(x c); q)_inf (q; q)_inf. Right: sum_k x^k c^k q^(k(k+1)/2).
    """
    coeff = coeff if coeff is not None else LaurentPoly.constant(1, 0)
    nvars = coeff.nvars
    window = order + 1
    left = XSeries.one(window, order, nvars)
    for k in range(1, order + 1):
        left = left.times_binomial(1, coeff, k)
    inverse = coeff.inverse()
    for k in range(0, order + 1):
        left = left.times_binomial(-1, inverse, k)
    left = left.times_series(with_nvars(euler(order), nvars))

    right_terms = {}
    for k in range(-window, window + 1):
        e = k * (k + 1) // 2
        if e <= order:
            right_terms[k] = QSeries({e: coeff ** k}, order, nvars)
    right = XSeries(right_terms, window, order, nvars)
    return left, right


def jacobi_triple_product_check(coeff: Optional[LaurentPoly], order: int) -> bool:
    left, right = jacobi_triple_product_sides(coeff, order)
    return left == right


def constant_term_product(n: int, order: int) -> QSeries:
    """
    [x^0] of prod_i (-x a_i q; q)_inf (-1/(x a_i); q)_inf through q^order.

    Args:
        n: Number of colour variables a_0..a_{n-1}
        order: Truncation order

    Returns:
        QSeries: series with LaurentPoly coefficients in n variables
    """
    if n < 1:
        raise SeriesError("n must be positive")
    window = order + n + 1
    xs = XSeries.one(window, order, n)
    for i in range(n):
        a_i = LaurentPoly.variable(i, n)
        a_inv = LaurentPoly.variable(i, n, -1)
        for k in range(1, order + 1):
            xs = xs.times_binomial(1, a_i, k)
        for k in range(0, order + 1):
            xs = xs.times_binomial(-1, a_inv, k)
    logger.debug("constant term product n=%d order=%d: %d x-coefficients", n, order, len(xs.coeffs))
    return xs.constant_term()


def quadratic_form_terms(s: Sequence[int]) -> List[Fraction]:
    """((i+1)s_i - i s_{i+1})^2 / (2i(i+1)) for i = 1..n-1 with s_n = 0."""
    values = list(s) + [0]
    return [Fraction(((i + 1) * values[i - 1] - i * values[i]) ** 2, 2 * i * (i + 1))
            for i in range(1, len(values))]


def quadratic_form(s: Sequence[int]) -> int:
    """sum_i s_i (s_i - s_{i+1}) with s_n = 0."""
    values = list(s) + [0]
    return sum(values[i] * (values[i] - values[i + 1]) for i in range(len(s)))


def _jacobi_vectors(n: int, order: int) -> Iterator[Tuple[int, ...]]:
    """Integer vectors (s_1..s_{n-1}) whose quadratic form is at most order."""
    def walk(i: int, nxt: int, remaining: Fraction, tail: Tuple[int, ...]):
        if i == 0:
            yield tail
            return
        bound = isqrt(floor(2 * i * (i + 1) * remaining))
        low = ceil(Fraction(i * nxt - bound, i + 1))
        high = floor(Fraction(i * nxt + bound, i + 1))
        for value in range(low, high + 1):
            cost = Fraction(((i + 1) * value - i * nxt) ** 2, 2 * i * (i + 1))
            if cost <= remaining:
                yield from walk(i - 1, value, remaining - cost, (value,) + tail)

    yield from walk(n - 1, 0, Fraction(order), ())


def main2_jacobi_form(n: int, order: int) -> QSeries:
    """(1/(q;q)^n) * sum over s of a_0^(-s_1) prod a_i^(s_i - s_{i+1}) q^(s_i (s_i - s_{i+1}))."""
    if n < 1:
        raise SeriesError("n must be positive")
    coeffs: Dict[int, LaurentPoly] = {}
    for s in _jacobi_vectors(n, order):
        e = quadratic_form(s)
        values = list(s) + [0]
        exps = [0] * n
        if n > 1:
            exps[0] = -values[0]
        for i in range(1, n):
            exps[i] = values[i - 1] - values[i]
        mono = LaurentPoly.monomial(exps)
        coeffs[e] = coeffs[e] + mono if e in coeffs else mono
    theta = QSeries(coeffs, order, n)
    factor = with_nvars(inv_euler(order), n)
    for _ in range(n):
        theta = theta * factor
    return theta


def _colour_product(n: int, i: int) -> LaurentPoly:
    """prod_{l<i} a_i / a_l."""
    exps = [0] * n
    exps[i] = i
    for l in range(i):
        exps[l] -= 1
    return LaurentPoly.monomial(exps)


def main2_product_form(n: int, order: int) -> QSeries:
    """Sum over r (r_1 = 0, 0 <= r_j <= j-1) of products of two q^(i(i+1))-Pochhammer symbols."""
    if n < 1:
        raise SeriesError("n must be positive")
    ranges = [range(0, 1)] + [range(0, j) for j in range(2, n)]
    plans = []
    max_depth = 0
    for r in product(*ranges) if n > 1 else [()]:
        values = list(r) + [0]
        prefactor = sum(values[i - 1] * (values[i - 1] - values[i]) for i in range(1, n))
        depth = max(0, -prefactor)
        factors = []
        for i in range(1, n):
            step = i * (i + 1)
            plus = i * (i + 1) // 2 + (i + 1) * values[i - 1] - i * values[i]
            minus = i * (i + 1) // 2 - (i + 1) * values[i - 1] + i * values[i]
            depth += negative_depth(plus, step, None) + negative_depth(minus, step, None)
            factors.append((i, step, plus, minus))
        plans.append((values, prefactor, factors, depth))
        max_depth = max(max_depth, depth)

    wide = order + max_depth
    common = with_nvars(inv_euler(wide), n)
    for i in range(1, n):
        common = common * with_nvars(pochhammer(LaurentPoly.constant(1), i * (i + 1), wide, i * (i + 1)), n)
        common = common * with_nvars(inv_euler(wide), n)

    total = QSeries.zero(order, n)
    for values, prefactor, factors, depth in plans:
        work = order + depth
        exps = [0] * n
        for i in range(1, n):
            exps[i] = values[i - 1] - values[i]
        term = QSeries.one(work, n)
        for i, step, plus, minus in factors:
            a_big = _colour_product(n, i)
            term = term * pochhammer(-a_big, plus, work, step)
            term = term * pochhammer(-a_big.inverse(), minus, work, step)
        term = term.scaled(LaurentPoly.monomial(exps), prefactor).truncate(order)
        total = total + (term * common).truncate(order)
    logger.debug("main2 product form n=%d: %d r-vectors, max depth %d", n, len(plans), max_depth)
    return total


# ===== DILATIONS =====

@dataclass(frozen=True)
class Dilation:
    """
    Affine part map: a part m coloured a_i b_k becomes scale*m + shifts[i] - shifts[k].

    On series this is q -> q^scale, a_i -> q^shifts[i].
    """
    scale: int
    shifts: Tuple[int, ...]

    def __post_init__(self):
        if self.min_growth < 1:
            raise SeriesError(f"dilation {self} can produce non-positive parts")

    @classmethod
    def identity(cls, n: int) -> "Dilation":
        return cls(1, (0,) * n)

    @classmethod
    def principal(cls, n: int) -> "Dilation":
        return cls(n, tuple(-i for i in range(n)))

    @classmethod
    def capparelli(cls) -> "Dilation":
        return cls(3, (0, -1))

    @classmethod
    def primc(cls) -> "Dilation":
        """n=2 map a1b0 -> 2k-1, a1b1 and a0b0 -> 2k, a0b1 -> 2k+1 (principal(2) under its usual name)."""
        return cls(2, (0, -1))

    @property
    def n(self) -> int:
        return len(self.shifts)

    @property
    def min_growth(self) -> int:
        return self.scale + min(0, min(self.shifts) - max(self.shifts))

    def offset(self, c: Colour) -> int:
        return self.shifts[c.i] - self.shifts[c.k]

    def part_weight(self, size: int, c: Colour) -> int:
        return self.scale * size + self.offset(c)

    def dilated_order(self, order: int) -> int:
        return self.min_growth * (order + 1) - 1


def dilate(series: QSeries, dilation: Dilation) -> QSeries:
    """
    Apply q -> q^scale, a_i -> q^shifts[i] to a colour series.

    Args:
        series: Series in dilation.n colour variables
        dilation: The part map

    Returns:
        QSeries: colour-free series, exact through dilation.dilated_order(series.order)
    """
    if series.nvars != dilation.n:
        raise SeriesError(f"dilation over {dilation.n} colours applied to a series in {series.nvars}")
    order = dilation.dilated_order(series.order)
    coeffs: Dict[int, int] = {}
    for e, poly in series.coeffs.items():
        for shift, c in poly.specialise(dilation.shifts).items():
            target = dilation.scale * e + shift
            if target <= order:
                coeffs[target] = coeffs.get(target, 0) + c
    return QSeries(coeffs, order, 0)
