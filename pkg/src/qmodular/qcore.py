"""Truncated formal power series in q with exact rational coefficients.

A :class:`QSeries` stores a dense block of coefficients for the exponents
``offset..order`` together with the largest exponent ``order`` through which
those coefficients are known exactly.  Everything below ``offset`` is exactly
zero; nothing is known above ``order``.

Arithmetic propagates exactness conservatively: a product of a series exact
through ``N_a`` with valuation ``o_a`` and one exact through ``N_b`` with
valuation ``o_b`` is exact through ``min(N_a + o_b, N_b + o_a)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]

INF = math.inf


class NonUnit(ArithmeticError):
    """Raised when inverting a series whose constant term vanishes."""


class InsufficientOrder(ValueError):
    """Raised when a result is requested beyond the exactness bound."""


def _frac(x: Scalar) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QSeries:
    """A truncated q-series ``sum_{n=offset}^{order} c_n q^n + O(q^{order+1})``.

    ``coeffs`` may be given with leading zeros; they are stripped so that
    ``offset`` is always the true valuation (or ``order + 1`` for a series that
    vanishes through its order).
    """

    __slots__ = ("offset", "coeffs", "order")

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None, offset: int = 0):
        cs = [_frac(c) for c in coeffs]
        if offset < 0:
            raise ValueError("negative offsets are not supported")
        if order is None:
            order = offset + len(cs) - 1
        width = order - offset + 1
        if width < 0:
            # all retained exponents lie above the order
            cs, offset = [], order + 1
        elif len(cs) < width:
            cs.extend([Fraction(0)] * (width - len(cs)))
        else:
            del cs[width:]
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        self.offset: int = offset + lead
        self.coeffs: tuple[Fraction, ...] = tuple(cs[lead:])
        self.order: int = order

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls([], order=order, offset=order + 1)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coefficient: Scalar = 1) -> "QSeries":
        if exponent > order:
            return cls.zero(order)
        return cls([coefficient], order=order, offset=exponent)

    @classmethod
    def from_dict(cls, terms: dict[int, Scalar], order: int) -> "QSeries":
        cs = [Fraction(0)] * (order + 1)
        for e, c in terms.items():
            if e < 0:
                raise ValueError("negative exponents are not supported")
            if e <= order:
                cs[e] += _frac(c)
        return cls(cs, order=order)

    @classmethod
    def from_polynomial(cls, coeffs: Sequence[Scalar], order: int | None = None) -> "QSeries":
        """A polynomial given by its coefficient list, exact to any requested order."""
        if order is None:
            order = len(coeffs) - 1
        return cls(list(coeffs)[: order + 1], order=order)

    # access ---------------------------------------------------------------

    def __getitem__(self, n: int) -> Fraction:
        if n > self.order:
            raise InsufficientOrder(f"coefficient of q^{n} requested, series exact through q^{self.order}")
        if n < self.offset:
            return Fraction(0)
        return self.coeffs[n - self.offset]

    def dense(self, upto: int | None = None) -> list[Fraction]:
        """Coefficients for exponents ``0..upto`` (default: the order)."""
        if upto is None:
            upto = self.order
        if upto > self.order:
            raise InsufficientOrder(f"dense view through q^{upto} of a series exact through q^{self.order}")
        out = [Fraction(0)] * (upto + 1)
        for idx, c in enumerate(self.coeffs):
            e = self.offset + idx
            if e > upto:
                break
            out[e] = c
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return self.offset == 0 and bool(self.coeffs)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise InsufficientOrder(f"cannot extend a series exact through q^{self.order} to q^{order}")
        return QSeries(self.coeffs, order=order, offset=self.offset)

    def items(self):
        """Yield ``(exponent, coefficient)`` for the nonzero coefficients."""
        for idx, c in enumerate(self.coeffs):
            if c:
                yield self.offset + idx, c

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.monomial(0, self.order, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries([-c for c in self.coeffs], order=self.order, offset=self.offset)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.monomial(0, self.order, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return series_add(self, -other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.order, self.offset, self.coeffs) == (other.order, other.offset, other.coeffs)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = str(self)
        return f"QSeries({body} + O(q^{self.order + 1}))"

    def __str__(self) -> str:
        return format_series(self)


def format_series(a: QSeries) -> str:
    """Render as ``1 + q - 2q^3 + (1/2)q^4``; the zero series renders as ``0``."""
    parts: list[str] = []
    for e, c in a.items():
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if e == 0:
            mono = str(mag)
        else:
            power = "q" if e == 1 else f"q^{e}"
            if mag == 1:
                mono = power
            elif mag.denominator == 1:
                mono = f"{mag}{power}"
            else:
                mono = f"({mag}){power}"
        parts.append((sign, mono))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, mono in parts[1:]:
        out += f" {sign} {mono}"
    return out


# ---------------------------------------------------------------------------
# integer kernels
#
# Coefficient arithmetic is done on Python ints after clearing denominators;
# Fractions are rebuilt once per result.


def _to_ints(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        d = c.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    if den == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _from_ints(nums: Sequence[int], den: int) -> list[Fraction]:
    if den == 1:
        return [Fraction(n) for n in nums]
    return [Fraction(n, den) for n in nums]


def _convolve(a: Sequence[int], b: Sequence[int], length: int) -> list[int]:
    """First ``length`` coefficients of the product of two int sequences."""
    out = [0] * length
    if len(a) > len(b):
        a, b = b, a
    for i, ai in enumerate(a):
        if i >= length or not ai:
            continue
        lim = min(len(b), length - i)
        for j in range(lim):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def mul_binomial_inplace(c: list, s: int) -> None:
    """``c <- c * (1 - q^s)`` on a dense list starting at exponent 0."""
    for idx in range(len(c) - 1, s - 1, -1):
        c[idx] -= c[idx - s]


def div_binomial_inplace(c: list, s: int) -> None:
    """``c <- c / (1 - q^s)`` on a dense list starting at exponent 0."""
    for idx in range(s, len(c)):
        c[idx] += c[idx - s]


# ---------------------------------------------------------------------------
# ring operations


def series_add(a: QSeries, b: QSeries) -> QSeries:
    order = min(a.order, b.order)
    lo = min(a.offset, b.offset)
    if lo > order:
        return QSeries.zero(order)
    out = [Fraction(0)] * (order - lo + 1)
    for src in (a, b):
        for idx, c in enumerate(src.coeffs):
            e = src.offset + idx
            if e > order:
                break
            out[e - lo] += c
    return QSeries(out, order=order, offset=lo)


def scale(a: QSeries, c: Scalar) -> QSeries:
    c = _frac(c)
    return QSeries([c * x for x in a.coeffs], order=a.order, offset=a.offset)


def shift(a: QSeries, m: int) -> QSeries:
    """Multiply by ``q^m`` (``m >= 0``); exactness moves up by ``m``."""
    if m < 0:
        raise ValueError("shift exponent must be nonnegative")
    return QSeries(a.coeffs, order=a.order + m, offset=a.offset + m)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    order = min(a.order + b.offset, b.order + a.offset)
    offset = a.offset + b.offset
    if offset > order or a.is_zero() or b.is_zero():
        return QSeries.zero(order)
    length = order - offset + 1
    an, ad = _to_ints(a.coeffs)
    bn, bd = _to_ints(b.coeffs)
    prod = _convolve(an, bn, length)
    return QSeries(_from_ints(prod, ad * bd), order=order, offset=offset)


def series_invert(a: QSeries, order: int) -> QSeries:
    """The reciprocal of a unit, exact through ``order``."""
    if not a.is_unit():
        raise NonUnit("series with vanishing constant term is not invertible")
    if order > a.order:
        raise InsufficientOrder(f"inverse through q^{order} needs the input exact that far (have q^{a.order})")
    an, ad = _to_ints(a.dense(order))
    a0 = an[0]
    # b = ad * (1/an); integer recurrence when a0 = +-1
    if a0 in (1, -1):
        b = [0] * (order + 1)
        b[0] = a0
        for n in range(1, order + 1):
            s = 0
            for j in range(1, n + 1):
                aj = an[j]
                if aj:
                    s += aj * b[n - j]
            b[n] = -a0 * s
        return QSeries([Fraction(x * ad) for x in b], order=order)
    inv0 = Fraction(1, a0)
    bf = [Fraction(0)] * (order + 1)
    bf[0] = inv0
    for n in range(1, order + 1):
        s = Fraction(0)
        for j in range(1, n + 1):
            aj = an[j]
            if aj:
                s += aj * bf[n - j]
        bf[n] = -inv0 * s
    return QSeries([x * ad for x in bf], order=order)


def series_theta(a: QSeries) -> QSeries:
    """Apply ``theta = q d/dq``: the coefficient of ``q^n`` is multiplied by ``n``."""
    return QSeries([(a.offset + i) * c for i, c in enumerate(a.coeffs)], order=a.order, offset=a.offset)


def log_theta_derivative(a: QSeries, order: int) -> QSeries:
    """``theta(a) / a`` through ``order`` for a unit ``a``."""
    inv = series_invert(a, order)
    return series_mul(series_theta(a), inv).truncate(order)


def dissect(a: QSeries, M: int, r: int) -> QSeries:
    """Keep only the exponents congruent to ``r`` modulo ``M``."""
    if M < 1 or not 0 <= r < M:
        raise ValueError("need M >= 1 and 0 <= r < M")
    cs = [c if (a.offset + i) % M == r else Fraction(0) for i, c in enumerate(a.coeffs)]
    return QSeries(cs, order=a.order, offset=a.offset)


def substitute_power(a: QSeries, m: int) -> QSeries:
    """Substitute ``q -> q^m``."""
    if m < 1:
        raise ValueError("substitution power must be positive")
    if m == 1:
        return a
    out = [Fraction(0)] * (m * a.order + 1)
    for e, c in a.items():
        out[m * e] = c
    return QSeries(out, order=m * a.order)


# ---------------------------------------------------------------------------
# q-Pochhammer symbols and Gaussian binomials


def pochhammer(s: int, t: int, n: int | float, order: int) -> QSeries:
    """Expansion of ``prod_{j=0}^{n-1} (1 - q^{s + t j})`` through ``order``.

    ``n`` may be :data:`INF`; factors whose lowest exponent exceeds the order
    are dropped since they equal ``1 + O(q^{order+1})``.
    """
    if s < 1 or t < 1:
        raise ValueError("pochhammer needs s >= 1 and t >= 1")
    if order < 0:
        raise ValueError("order must be nonnegative")
    c = [0] * (order + 1)
    c[0] = 1
    j = 0
    while j < n:
        e = s + t * j
        if e > order:
            break
        mul_binomial_inplace(c, e)
        j += 1
    return QSeries(c, order=order)


def inverse_pochhammer(s: int, t: int, n: int | float, order: int) -> QSeries:
    """``1 / prod_{j=0}^{n-1} (1 - q^{s + t j})`` by repeated geometric division."""
    c = [0] * (order + 1)
    c[0] = 1
    j = 0
    while j < n:
        e = s + t * j
        if e > order:
            break
        div_binomial_inplace(c, e)
        j += 1
    return QSeries(c, order=order)


def q_binomial(r: int, n: int, order: int | None = None) -> QSeries:
    """Gaussian binomial ``[r choose n]_q``; zero unless ``0 <= n <= r``."""
    deg = n * (r - n) if 0 <= n <= r else 0
    if order is None:
        order = deg
    if not 0 <= n <= r:
        return QSeries.zero(order)
    c = [0] * (order + 1)
    c[0] = 1
    # prod_{j=1}^{n} (1 - q^{r-n+j}) / (1 - q^j); every partial quotient is a polynomial
    for j in range(1, n + 1):
        mul_binomial_inplace(c, r - n + j)
        div_binomial_inplace(c, j)
    return QSeries(c, order=order)


# ---------------------------------------------------------------------------
# normalized series and serialization


class NormalizedSeries:
    """``q^alpha * body`` with ``body`` a unit whose constant term is 1."""

    __slots__ = ("alpha", "body", "_floats")

    def __init__(self, alpha: Scalar, body: QSeries):
        if body.offset != 0 or not body.coeffs or body.coeffs[0] != 1:
            raise ValueError("normalized body must have constant term 1")
        self.alpha: Fraction = _frac(alpha)
        self.body = body
        self._floats = None

    def float_coeffs(self):
        """Body coefficients as a cached float64 array."""
        if self._floats is None:
            import numpy as np

            self._floats = np.array([float(c) for c in self.body.dense()], dtype=float)
        return self._floats

    def __repr__(self) -> str:
        return f"NormalizedSeries(alpha={self.alpha}, body={self.body!r})"


def series_to_json(a: QSeries) -> dict:
    return {
        "order": a.order,
        "coefficients": [
            {"exponent": e, "numerator": c.numerator, "denominator": c.denominator} for e, c in a.items()
        ],
    }


def series_from_json(data: dict) -> QSeries:
    terms = {t["exponent"]: Fraction(int(t["numerator"]), int(t["denominator"])) for t in data["coefficients"]}
    return QSeries.from_dict(terms, int(data["order"]))
