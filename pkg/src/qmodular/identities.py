"""Exact coefficientwise verification of q-series identities.

Each built-in suite compares two independently constructed sides through a
fixed order and reports the first exponent at which they disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .qcore import (
    INF,
    InsufficientOrder,
    QSeries,
    log_theta_derivative,
    pochhammer,
    q_binomial,
    series_invert,
    series_mul,
    series_theta,
    shift,
    substitute_power,
)
from .specials import (
    RR_EXPONENTS,
    ag_product,
    ag_sum,
    companion_product,
    eisenstein,
    lambert_weighted,
    rr_series,
    schur_polynomial,
)


class UnknownSuite(KeyError):
    pass


@dataclass(frozen=True)
class Mismatch:
    exponent: int
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    order_checked: int
    first_mismatch: Mismatch | None = None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None

    def to_json(self) -> dict:
        out = {"id": self.identity_id, "order": self.order_checked, "passed": self.passed}
        if self.first_mismatch is not None:
            m = self.first_mismatch
            out["mismatch"] = {
                "exponent": m.exponent,
                "lhs": [str(m.lhs.numerator), str(m.lhs.denominator)],
                "rhs": [str(m.rhs.numerator), str(m.rhs.denominator)],
            }
        return out


@dataclass(frozen=True)
class SuiteReport:
    suite_id: str
    order: int
    reports: tuple[IdentityReport, ...] = field(default_factory=tuple)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_json(self) -> dict:
        return {
            "suite_id": self.suite_id,
            "order": self.order,
            "reports": [r.to_json() for r in self.reports],
            "all_passed": self.all_passed,
        }

    def failures(self) -> list[IdentityReport]:
        return [r for r in self.reports if not r.passed]


def compare_series(lhs: QSeries, rhs: QSeries, order: int, identity_id: str = "") -> IdentityReport:
    """Exact comparison of the coefficients of ``q^0 .. q^order``."""
    for name, s in (("lhs", lhs), ("rhs", rhs)):
        if s.order < order:
            raise InsufficientOrder(f"{name} is exact through q^{s.order}, comparison needs q^{order}")
    lo = min(lhs.offset, rhs.offset)
    for n in range(lo, order + 1):
        a, b = lhs[n], rhs[n]
        if a != b:
            return IdentityReport(identity_id, order, Mismatch(n, a, b))
    return IdentityReport(identity_id, order)


# ---------------------------------------------------------------------------
# suites


def _lambert_sum(residues, M: int, order: int) -> QSeries:
    total = QSeries.zero(order)
    for r in residues:
        total = total + lambert_weighted(r, M, order)
    return total


def _rr_sum_product(params, order):
    G = rr_series("G", order)
    H = rr_series("H", order)
    Gp = series_invert(series_mul(pochhammer(1, 5, INF, order), pochhammer(4, 5, INF, order)), order)
    Hp = series_invert(series_mul(pochhammer(2, 5, INF, order), pochhammer(3, 5, INF, order)), order)
    return [
        compare_series(G, Gp, order, "G = 1/((q;q^5)(q^4;q^5))"),
        compare_series(H, Hp, order, "H = 1/((q^2;q^5)(q^3;q^5))"),
    ]


def _rr_log_deriv(params, order):
    G = rr_series("G", order)
    H = rr_series("H", order)
    return [
        compare_series(log_theta_derivative(G, order), _lambert_sum((1, 4), 5, order), order, "thetaG/G = S1+S4"),
        compare_series(log_theta_derivative(H, order), _lambert_sum((2, 3), 5, order), order, "thetaH/H = S2+S3"),
    ]


def _schur_approx(params, order):
    m_max = params.get("m_max", 40)
    if m_max - 1 > order:
        raise InsufficientOrder(f"m_max={m_max} needs order >= {m_max - 1}")
    G = rr_series("G", order)
    H = rr_series("H", order)
    out = []
    for m in range(1, m_max + 1):
        out.append(compare_series(schur_polynomial("A", m, order), G, m - 1, f"A_{m} = G + O(q^{m})"))
        out.append(compare_series(schur_polynomial("B", m, order), H, m - 1, f"B_{m} = H + O(q^{m})"))
    return out


def _schur_companion(params, order):
    m_max = params.get("m_max", 40)
    if m_max - 1 > order:
        raise InsufficientOrder(f"m_max={m_max} needs order >= {m_max - 1}")
    out = []
    for m in range(1, m_max + 1):
        out.append(compare_series(schur_polynomial("A", m, order), companion_product("P", m, order), m - 1,
                                  f"A_{m} = P_{m} + O(q^{m})"))
        out.append(compare_series(schur_polynomial("B", m, order), companion_product("Q", m, order), m - 1,
                                  f"B_{m} = Q_{m} + O(q^{m})"))
    return out


def _q_pascal(params, order):
    r_max = params.get("r_max", 12)
    out = []
    for r in range(1, r_max + 1):
        for n in range(1, r + 1):
            lhs = q_binomial(r, n, order)
            tail = q_binomial(r - 1, n - 1, order)
            rhs = q_binomial(r - 1, n, order) + shift(tail, r - n).truncate(order)
            out.append(compare_series(lhs, rhs, order, f"[{r},{n}] = [{r - 1},{n}] + q^{r - n}[{r - 1},{n - 1}]"))
    return out


EISENSTEIN_C = ((Fraction(-1, 48), Fraction(1, 2)), (Fraction(-1, 48), Fraction(-1, 2)))


def _eisenstein_decomp(params, order):
    shift_ = Fraction(1, 10)
    a1 = _lambert_sum((1, 4), 5, order) + (RR_EXPONENTS[0] + shift_)
    a2 = _lambert_sum((2, 3), 5, order) + (RR_EXPONENTS[1] - shift_)
    Ep = eisenstein("E+", order)
    Ec = eisenstein("Echi", order)
    (c11, c12), (c21, c22) = EISENSTEIN_C
    return [
        compare_series(a1, Ep * c11 + Ec * c12, order, "a1 + 1/10 = -E+/48 + Echi/2"),
        compare_series(a2, Ep * c21 + Ec * c22, order, "a2 - 1/10 = -E+/48 - Echi/2"),
    ]


def _sigma_dissection(params, order):
    sigma = lambert_weighted(0, 1, order)
    sigma5 = substitute_power(lambert_weighted(0, 1, -(-order // 5)), 5).truncate(order)
    lhs = sigma - sigma5 * 5
    rhs = (eisenstein("E+", order) * -1 - 4) * Fraction(1, 24)
    return [compare_series(lhs, rhs, order, "sum sigma(m)q^m - 5 sum sigma(m)q^{5m} = (-4 - E+)/24")]


def _k_range(params):
    k_max = params.get("k_max", 5)
    k_min = params.get("k_min", 2)
    return range(k_min, k_max + 1)


def _ag_sum_product(params, order):
    out = []
    for k in _k_range(params):
        for i in range(1, k + 1):
            out.append(compare_series(ag_sum(k, i, order), ag_product(k, i, order), order, f"F_{k},{i} sum = product"))
    return out


def _ag_log_deriv(params, order):
    out = []
    for k in _k_range(params):
        M = 2 * k + 1
        for i in range(1, k + 1):
            F = ag_sum(k, i, order)
            residues = [r for r in range(1, M) if r not in (i, M - i)]
            out.append(compare_series(log_theta_derivative(F, order), _lambert_sum(residues, M, order), order,
                                      f"thetaF_{k},{i}/F_{k},{i} = Lambert sum over n != 0,+-{i} mod {M}"))
    return out


def _rr_theta_system(params, order):
    G = rr_series("G", order)
    H = rr_series("H", order)
    return [
        compare_series(series_theta(G), series_mul(_lambert_sum((1, 4), 5, order), G), order,
                       "theta(G) = (S1+S4) G"),
        compare_series(series_theta(H), series_mul(_lambert_sum((2, 3), 5, order), H), order,
                       "theta(H) = (S2+S3) H"),
    ]


SUITES: dict[str, Callable] = {
    "rr-sum-product": _rr_sum_product,
    "rr-log-deriv": _rr_log_deriv,
    "schur-approx": _schur_approx,
    "schur-companion": _schur_companion,
    "q-pascal": _q_pascal,
    "eisenstein-decomp": _eisenstein_decomp,
    "sigma-dissection": _sigma_dissection,
    "ag-sum-product": _ag_sum_product,
    "ag-log-deriv": _ag_log_deriv,
    "rr-theta-system": _rr_theta_system,
}

DEFAULT_ORDERS = {
    "rr-sum-product": 500,
    "rr-log-deriv": 500,
    "schur-approx": 60,
    "schur-companion": 60,
    "q-pascal": 60,
    "eisenstein-decomp": 500,
    "sigma-dissection": 500,
    "ag-sum-product": 200,
    "ag-log-deriv": 200,
    "rr-theta-system": 500,
}


def run_suite(suite_id: str, params: dict | None = None, order: int | None = None) -> SuiteReport:
    try:
        fn = SUITES[suite_id]
    except KeyError:
        raise UnknownSuite(suite_id) from None
    if order is None:
        order = DEFAULT_ORDERS[suite_id]
    reports = fn(dict(params or {}), order)
    return SuiteReport(suite_id, order, tuple(reports))
