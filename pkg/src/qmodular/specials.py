"""Constructors for the named q-series: Rogers-Ramanujan, Schur, Lambert,
Eisenstein and Andrews-Gordon families, plus the normalized modular vectors."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .qcore import (
    INF,
    NormalizedSeries,
    QSeries,
    div_binomial_inplace,
    inverse_pochhammer,
    pochhammer,
    q_binomial,
    series_invert,
    series_mul,
    shift,
    substitute_power,
)


class Family(enum.Enum):
    SCHUR_A = "A"
    SCHUR_B = "B"
    RR_G = "G"
    RR_H = "H"
    COMPANION_P = "P"
    COMPANION_Q = "Q"
    LAMBERT_W = "SW"
    LAMBERT_U = "SU"
    E2 = "E2"
    E_PLUS = "E+"
    E_CHI = "Echi"
    AG_SUM = "AG"
    AG_PRODUCT = "AGprod"


_ARITY = {
    Family.SCHUR_A: 1,
    Family.SCHUR_B: 1,
    Family.RR_G: 0,
    Family.RR_H: 0,
    Family.COMPANION_P: 1,
    Family.COMPANION_Q: 1,
    Family.LAMBERT_W: 2,
    Family.LAMBERT_U: 2,
    Family.E2: 0,
    Family.E_PLUS: 0,
    Family.E_CHI: 0,
    Family.AG_SUM: 2,
    Family.AG_PRODUCT: 2,
}


@dataclass(frozen=True)
class SeriesId:
    family: Family
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.params) != _ARITY[self.family]:
            raise ValueError(f"{self.family.value} takes {_ARITY[self.family]} parameter(s), got {self.params}")
        p = self.params
        if self.family in (Family.SCHUR_A, Family.SCHUR_B, Family.COMPANION_P, Family.COMPANION_Q) and p[0] < 0:
            raise ValueError("index must be nonnegative")
        if self.family in (Family.LAMBERT_W, Family.LAMBERT_U) and not (p[1] >= 1 and 0 <= p[0] < p[1]):
            raise ValueError("Lambert series need M >= 1 and 0 <= r < M")
        if self.family in (Family.AG_SUM, Family.AG_PRODUCT) and not (p[0] >= 2 and 1 <= p[1] <= p[0]):
            raise ValueError("Andrews-Gordon series need k >= 2 and 1 <= i <= k")

    @classmethod
    def parse(cls, text: str) -> "SeriesId":
        """Parse CLI names: ``G``, ``A_5``, ``SW:1,5``, ``AG:3,2``, ``E+`` ..."""
        text = text.strip()
        for fam in (Family.RR_G, Family.RR_H, Family.E2, Family.E_PLUS, Family.E_CHI):
            if text == fam.value:
                return cls(fam)
        m = re.fullmatch(r"([ABPQ])_(\d+)", text)
        if m:
            fam = {"A": Family.SCHUR_A, "B": Family.SCHUR_B, "P": Family.COMPANION_P, "Q": Family.COMPANION_Q}
            return cls(fam[m.group(1)], (int(m.group(2)),))
        m = re.fullmatch(r"(SW|SU|AG|AGprod):(\d+),(\d+)", text)
        if m:
            fam = {"SW": Family.LAMBERT_W, "SU": Family.LAMBERT_U, "AG": Family.AG_SUM, "AGprod": Family.AG_PRODUCT}
            return cls(fam[m.group(1)], (int(m.group(2)), int(m.group(3))))
        raise ValueError(f"unknown series id {text!r}")

    def __str__(self) -> str:
        f, p = self.family, self.params
        if not p:
            return f.value
        if len(p) == 1:
            return f"{f.value}_{p[0]}"
        return f"{f.value}:{p[0]},{p[1]}"


@dataclass
class NormalizedVector:
    components: list[NormalizedSeries]
    level: int
    labels: list[str] = field(default_factory=list)
    strict: bool = True

    def __post_init__(self):
        if len(self.components) < 2:
            raise ValueError("a modular vector needs at least two components")
        if not self.strict:
            return
        alphas = [c.alpha for c in self.components]
        if len(set(alphas)) != len(alphas):
            raise ValueError("component exponents must be pairwise distinct")

    @property
    def alphas(self) -> tuple[Fraction, ...]:
        return tuple(c.alpha for c in self.components)

    @property
    def bodies(self) -> tuple[QSeries, ...]:
        return tuple(c.body for c in self.components)

    def __len__(self) -> int:
        return len(self.components)


# ---------------------------------------------------------------------------
# Schur polynomials and the Rogers-Ramanujan pair


def schur_polynomial(kind: str, m: int, order: int) -> QSeries:
    """``A_m`` or ``B_m`` from the second-order recurrence.

    ``A_m = A_{m-1} + q^{m-1} A_{m-2}`` and ``B_m = B_{m-1} + q^m B_{m-2}``,
    starting from ``A_0 = A_1 = 1`` and ``B_0 = B_1 = 1``.  (``B_1 = 1`` is what the
    defining q-binomial sum gives; ``1 + q`` would break ``B_m = H + O(q^m)``.)
    """
    if kind not in ("A", "B"):
        raise ValueError("kind must be 'A' or 'B'")
    if m < 0:
        raise ValueError("m must be nonnegative")
    prev = QSeries.one(order)
    cur = QSeries.one(order)
    if m == 0:
        return prev
    for j in range(2, m + 1):
        lift = j - 1 if kind == "A" else j
        nxt = cur + shift(prev, lift).truncate(order) if lift <= order else cur
        prev, cur = cur, nxt
    return cur


def schur_polynomial_direct(kind: str, m: int, order: int) -> QSeries:
    """The defining sum ``sum_n q^{n^2} [m-n choose n]`` (``q^{n(n+1)}`` for ``B``)."""
    if kind not in ("A", "B"):
        raise ValueError("kind must be 'A' or 'B'")
    total = QSeries.zero(order)
    n = 0
    while 2 * n <= m:
        e = n * n + (n if kind == "B" else 0)
        if e > order:
            break
        total = total + shift(q_binomial(m - n, n, order - e), e)
        n += 1
    return total


def rr_series(kind: str, order: int) -> QSeries:
    """``G = sum q^{n^2}/(q;q)_n`` or ``H = sum q^{n(n+1)}/(q;q)_n`` by direct summation."""
    if kind not in ("G", "H"):
        raise ValueError("kind must be 'G' or 'H'")
    total = [0] * (order + 1)
    inv = [0] * (order + 1)  # 1/(q;q)_n
    inv[0] = 1
    n = 0
    while True:
        e = n * n + (n if kind == "H" else 0)
        if e > order:
            break
        if n:
            div_binomial_inplace(inv, n)
        for idx in range(order - e + 1):
            total[e + idx] += inv[idx]
        n += 1
    return QSeries(total, order=order)


def companion_product(kind: str, m: int, order: int) -> QSeries:
    """``P_m = prod_{j<=m} 1/((1-q^{5j-4})(1-q^{5j-1}))``; ``Q_m`` uses ``5j-3, 5j-2``."""
    if kind not in ("P", "Q"):
        raise ValueError("kind must be 'P' or 'Q'")
    lo, hi = (4, 1) if kind == "P" else (3, 2)
    c = [0] * (order + 1)
    c[0] = 1
    for j in range(1, m + 1):
        for e in (5 * j - lo, 5 * j - hi):
            if e <= order:
                div_binomial_inplace(c, e)
    return QSeries(c, order=order)


# ---------------------------------------------------------------------------
# Lambert and Eisenstein series


def _class_divisor_sieve(r: int, M: int, order: int, weighted: bool) -> list[int]:
    c = [0] * (order + 1)
    d = r if r > 0 else M
    while d <= order:
        w = d if weighted else 1
        for n in range(d, order + 1, d):
            c[n] += w
        d += M
    return c


def lambert_weighted(r: int, M: int, order: int) -> QSeries:
    """``sum_{n >= 1, n = r mod M} n q^n / (1 - q^n)``."""
    if M < 1 or not 0 <= r < M:
        raise ValueError("need M >= 1 and 0 <= r < M")
    return QSeries(_class_divisor_sieve(r, M, order, True), order=order)


def lambert_unweighted(r: int, M: int, order: int) -> QSeries:
    """``sum_{n >= 1, n = r mod M} q^n / (1 - q^n)``."""
    if M < 1 or not 0 <= r < M:
        raise ValueError("need M >= 1 and 0 <= r < M")
    return QSeries(_class_divisor_sieve(r, M, order, False), order=order)


def chi5(d: int) -> int:
    """The quadratic character modulo 5."""
    return (0, 1, -1, -1, 1)[d % 5]


def eisenstein(kind: str, order: int) -> QSeries:
    """``E2``, ``E+ = E2(tau) - 5 E2(5 tau)`` or ``Echi = sum (sum_{d|m} chi(d) d) q^m``."""
    if kind == "E2":
        sigma = _class_divisor_sieve(0, 1, order, True)
        return QSeries([1] + [-24 * s for s in sigma[1:]], order=order)
    if kind == "E+":
        e2 = eisenstein("E2", order)
        e2_5 = substitute_power(eisenstein("E2", -(-order // 5)), 5).truncate(order)
        return e2 - e2_5 * 5
    if kind == "Echi":
        c = [0] * (order + 1)
        for d in range(1, order + 1):
            w = chi5(d) * d
            if w:
                for n in range(d, order + 1, d):
                    c[n] += w
        return QSeries(c, order=order)
    raise ValueError(f"unknown Eisenstein series {kind!r}")


# ---------------------------------------------------------------------------
# Andrews-Gordon series


def _nonincreasing_tuples(length: int, bound, budget: int):
    """Nonincreasing ``(N_1, ..., N_length)`` with ``N_1 <= bound`` and ``sum N_j^2 <= budget``."""
    if length == 0:
        yield ()
        return

    def rec(prefix, cap, remaining, left):
        if left == 0:
            yield tuple(prefix)
            return
        v = 0
        while v <= cap and v * v <= remaining:
            prefix.append(v)
            yield from rec(prefix, v, remaining - v * v, left - 1)
            prefix.pop()
            v += 1

    cap = int(bound) if bound != INF else budget
    yield from rec([], cap, budget, length)


def ag_sum(k: int, i: int, order: int, L=INF) -> QSeries:
    """The Andrews-Gordon sum ``F_{k,i}`` with ``k - 1`` summation variables.

    Terms are indexed by ``N_1 >= ... >= N_{k-1} >= 0`` (``N_j = n_j + ... + n_{k-1}``);
    a finite ``L`` keeps only ``N_1 <= L``.
    """
    if k < 2 or not 1 <= i <= k:
        raise ValueError("need k >= 2 and 1 <= i <= k")
    total = [0] * (order + 1)
    for Ns in _nonincreasing_tuples(k - 1, L, order):
        e = sum(N * N for N in Ns) + sum(Ns[i - 1 :])
        if e > order:
            continue
        term = [0] * (order - e + 1)
        term[0] = 1
        for j, N in enumerate(Ns):
            n_j = N - (Ns[j + 1] if j + 1 < len(Ns) else 0)
            for s in range(1, n_j + 1):
                if s < len(term):
                    div_binomial_inplace(term, s)
        for idx, c in enumerate(term):
            total[e + idx] += c
    return QSeries(total, order=order)


def ag_product(k: int, i: int, order: int) -> QSeries:
    """``(q^M;q^M)_inf (q^i;q^M)_inf (q^{M-i};q^M)_inf / (q;q)_inf`` with ``M = 2k + 1``."""
    if k < 2 or not 1 <= i <= k:
        raise ValueError("need k >= 2 and 1 <= i <= k")
    M = 2 * k + 1
    num = series_mul(pochhammer(M, M, INF, order), pochhammer(i, M, INF, order))
    num = series_mul(num, pochhammer(M - i, M, INF, order))
    return series_mul(num, series_invert(pochhammer(1, 1, INF, order), order))


def ag_exponent(k: int, i: int) -> Fraction:
    """``alpha_{k,i} = h_{1,i} - c/24`` for the level ``2k+1`` normalization."""
    if k < 2 or not 1 <= i <= k:
        raise ValueError("need k >= 2 and 1 <= i <= k")
    M = 2 * k + 1
    c = 1 - Fraction(6 * (2 * k - 1) ** 2, 2 * M)
    h = Fraction((M - 2 * i) ** 2 - (2 * k - 1) ** 2, 8 * M)
    return h - c / 24


RR_EXPONENTS = (Fraction(-1, 60), Fraction(11, 60))


@lru_cache(maxsize=32)
def normalized_vector(family: str, k: int = 2, order: int = 200) -> NormalizedVector:
    """The RR pair ``(q^{-1/60} G, q^{11/60} H)`` or the AG vector ``(q^{alpha_{k,i}} F_{k,i})_{i=1..k}``."""
    family = family.upper()
    if family == "RR":
        if k != 2:
            raise ValueError("the Rogers-Ramanujan vector has k = 2")
        comps = [NormalizedSeries(RR_EXPONENTS[0], rr_series("G", order)),
                 NormalizedSeries(RR_EXPONENTS[1], rr_series("H", order))]
        return NormalizedVector(comps, level=5, labels=["G", "H"])
    if family == "AG":
        comps = [NormalizedSeries(ag_exponent(k, i), ag_sum(k, i, order)) for i in range(1, k + 1)]
        return NormalizedVector(comps, level=2 * k + 1, labels=[f"F_{k},{i}" for i in range(1, k + 1)])
    raise ValueError(f"unknown family {family!r}")


def build_series(sid: SeriesId | str, order: int) -> QSeries:
    """Construct any named series through ``order``."""
    if isinstance(sid, str):
        sid = SeriesId.parse(sid)
    f, p = sid.family, sid.params
    if f is Family.RR_G:
        return rr_series("G", order)
    if f is Family.RR_H:
        return rr_series("H", order)
    if f in (Family.SCHUR_A, Family.SCHUR_B):
        return schur_polynomial(f.value, p[0], order)
    if f in (Family.COMPANION_P, Family.COMPANION_Q):
        return companion_product(f.value, p[0], order)
    if f is Family.LAMBERT_W:
        return lambert_weighted(p[0], p[1], order)
    if f is Family.LAMBERT_U:
        return lambert_unweighted(p[0], p[1], order)
    if f in (Family.E2, Family.E_PLUS, Family.E_CHI):
        return eisenstein(f.value, order)
    if f is Family.AG_SUM:
        return ag_sum(p[0], p[1], order)
    if f is Family.AG_PRODUCT:
        return ag_product(p[0], p[1], order)
    raise AssertionError(f)  # pragma: no cover


__all__ = [
    "Family",
    "SeriesId",
    "NormalizedVector",
    "schur_polynomial",
    "schur_polynomial_direct",
    "rr_series",
    "companion_product",
    "lambert_weighted",
    "lambert_unweighted",
    "chi5",
    "eisenstein",
    "ag_sum",
    "ag_product",
    "ag_exponent",
    "normalized_vector",
    "build_series",
    "inverse_pochhammer",
    "RR_EXPONENTS",
]
