"""Floating-point evaluation of normalized q-series on the upper half-plane,
and the linear algebra that extracts constant multiplier matrices from samples.

Points of the upper half-plane are plain Python complex numbers.  Matrices
are ``numpy`` complex arrays.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .qcore import NormalizedSeries, QSeries
from .specials import NormalizedVector, eisenstein

TWO_PI_I = 2j * math.pi

IDENTITY = ((1, 0), (0, 1))
T = ((1, 1), (0, 1))
S = ((0, -1), (1, 0))

Q_MAX = 0.2
Y_MIN = 0.5
COND_MAX = 1e8
EVAL_TOL = 1e-15

DEFAULT_GRID = tuple(complex(x, y) for y in (0.7, 0.9, 1.2, 1.5) for x in (-0.35, -0.15, 0.1, 0.3))


class DomainError(ValueError):
    pass


class ToleranceNotMet(ArithmeticError):
    pass


class SingularSamples(np.linalg.LinAlgError):
    pass


class NoSolution(ValueError):
    pass


# ---------------------------------------------------------------------------
# SL2(Z) action


def matmul2(g, h):
    (a, b), (c, d) = g
    (e, f), (x, y) = h
    return ((a * e + b * x, a * f + b * y), (c * e + d * x, c * f + d * y))


def inverse2(g):
    (a, b), (c, d) = g
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    return ((d, -b), (-c, a))


def power2(g, n: int):
    out = IDENTITY
    base = g if n >= 0 else inverse2(g)
    for _ in range(abs(n)):
        out = matmul2(out, base)
    return out


def mobius(g, tau: complex) -> complex:
    (a, b), (c, d) = g
    return (a * tau + b) / (c * tau + d)


def default_samples(gamma=None, y_min: float = Y_MIN, grid: Sequence[complex] = DEFAULT_GRID) -> list[complex]:
    """The default grid, keeping points whose image under ``gamma`` also has ``Im >= y_min``."""
    out = []
    for tau in grid:
        if tau.imag < y_min:
            continue
        if gamma is not None and mobius(gamma, tau).imag < y_min:
            continue
        out.append(tau)
    return out


# ---------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class EvalResult:
    value: complex
    tail_bound: float
    terms_used: int


def _sum_with_tail(coeffs: np.ndarray, q: complex, tol: float) -> tuple[complex, float, int]:
    n = len(coeffs)
    powers = q ** np.arange(n)
    terms = coeffs * powers
    mags = np.abs(terms)
    small = mags < tol / 100
    window = 10
    if n >= window:
        run = np.convolve(small.astype(int), np.ones(window, dtype=int), mode="valid")
        hits = np.nonzero(run == window)[0]
    else:
        hits = np.array([], dtype=int)
    if hits.size == 0:
        raise ToleranceNotMet(f"no run of {window} terms below {tol / 100:.1e} within {n} coefficients at |q|={abs(q):.3g}")
    stop = int(hits[0]) + window  # number of terms retained
    lo = stop - window
    tail_mag = float(mags[lo:stop].max())
    c = np.abs(coeffs[lo - 1 : stop]) if lo > 0 else np.abs(coeffs[:stop])
    ratios = [c[j] / c[j - 1] for j in range(1, len(c)) if c[j - 1] and c[j]]
    g = max([1.0] + ratios)
    rho = g * abs(q)
    if rho >= 1:
        raise ToleranceNotMet(f"coefficient growth {g:.3g} defeats |q|={abs(q):.3g}")
    tail = tail_mag * rho / (1 - rho)
    return complex(terms[:stop].sum()), tail, stop


def eval_qseries(a: QSeries, tau: complex, tol: float = EVAL_TOL, q_max: float = Q_MAX) -> EvalResult:
    """Evaluate a plain q-series at ``q = exp(2 pi i tau)``."""
    q = _nome(tau, q_max)
    coeffs = np.array([float(c) for c in a.dense()], dtype=float)
    value, tail, n = _sum_with_tail(coeffs, q, tol)
    if tail > tol:
        raise ToleranceNotMet(f"tail bound {tail:.2e} exceeds {tol:.1e}")
    return EvalResult(value, tail, n)


def _nome(tau: complex, q_max: float) -> complex:
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError(f"tau={tau} is not in the upper half-plane")
    aq = math.exp(-2 * math.pi * tau.imag)
    if aq > q_max:
        raise DomainError(f"|q|={aq:.4g} exceeds q_max={q_max}")
    return cmath.exp(TWO_PI_I * tau)


def eval_series(s: NormalizedSeries, tau: complex, tol: float = EVAL_TOL, q_max: float = Q_MAX) -> EvalResult:
    """``q^alpha * body`` with ``q^alpha := exp(2 pi i alpha tau)``."""
    q = _nome(tau, q_max)
    body, tail, n = _sum_with_tail(s.float_coeffs(), q, tol)
    pref = cmath.exp(TWO_PI_I * float(s.alpha) * complex(tau))
    tail *= abs(pref)
    if tail > tol * max(1.0, abs(pref)):
        raise ToleranceNotMet(f"tail bound {tail:.2e} exceeds tolerance {tol:.1e}")
    return EvalResult(pref * body, tail, n)


def eval_vector(v: NormalizedVector, tau: complex, tol: float = EVAL_TOL, q_max: float = Q_MAX) -> np.ndarray:
    return np.array([eval_series(c, tau, tol, q_max).value for c in v.components])


def richardson_theta(fn: Callable[[complex], np.ndarray], tau: complex, h: float = 1e-4) -> np.ndarray:
    """``(1/2 pi i) d/dtau`` of ``fn`` by central differences with one Richardson step."""

    def central(step):
        return (fn(tau + step) - fn(tau - step)) / (2 * step * TWO_PI_I)

    coarse = central(h)
    fine = central(h / 2)
    return (4 * fine - coarse) / 3


def numeric_theta(v: NormalizedVector, tau: complex, h: float = 1e-4, tol: float = EVAL_TOL,
                  q_max: float = Q_MAX) -> np.ndarray:
    return richardson_theta(lambda t: eval_vector(v, t, tol, q_max), tau, h)


# ---------------------------------------------------------------------------
# multipliers


def equilibrated_cond(F: np.ndarray) -> float:
    """Condition number after scaling each row to unit norm.

    Rows of a sample matrix carry the factors ``|q^alpha_j|``, which differ by
    orders of magnitude without affecting invertibility.
    """
    norms = np.linalg.norm(F, axis=1)
    if np.any(norms == 0):
        return math.inf
    return float(np.linalg.cond(F / norms[:, None]))


@dataclass
class MultiplierSolve:
    M: np.ndarray
    residual_max: float
    constancy_dev: float
    cond: float
    samples: tuple[complex, ...]


def solve_multiplier(v: NormalizedVector, gamma, samples: Sequence[complex] | None = None,
                     tol: float = EVAL_TOL, cond_max: float = COND_MAX, q_max: float = Q_MAX) -> MultiplierSolve:
    """Constant ``M`` with ``f(gamma tau) = M f(tau)``.

    ``M`` comes from the first ``r`` samples; the rest are held out for the
    residual, and ``r``-windows sliding along the sample list give the
    constancy deviation.
    """
    r = len(v)
    if samples is None:
        samples = default_samples(gamma)
    samples = tuple(complex(t) for t in samples)
    if len(samples) < r + 1:
        raise ValueError(f"need at least {r + 1} samples, got {len(samples)}")
    F = np.column_stack([eval_vector(v, t, tol, q_max) for t in samples])
    Gm = np.column_stack([eval_vector(v, mobius(gamma, t), tol, q_max) for t in samples])

    def solve(idx):
        base = F[:, idx]
        c = equilibrated_cond(base)
        return np.linalg.solve(base.T, Gm[:, idx].T).T, c

    head = list(range(r))
    cond = equilibrated_cond(F[:, head])
    if cond > cond_max:
        raise SingularSamples(f"sample matrix condition number {cond:.3g} exceeds {cond_max:.1e}")
    M, _ = solve(head)
    resid = 0.0
    for n in range(r, len(samples)):
        err = np.linalg.norm(Gm[:, n] - M @ F[:, n]) / np.linalg.norm(F[:, n])
        resid = max(resid, float(err))
    dev = 0.0
    for start in range(1, len(samples) - r + 1):
        idx = list(range(start, start + r))
        if equilibrated_cond(F[:, idx]) > cond_max:
            continue
        Mj, _ = solve(idx)
        dev = max(dev, float(np.abs(Mj - M).max()))
    return MultiplierSolve(M, resid, dev, cond, samples)


@dataclass(frozen=True)
class RelationReport:
    dev_S2: float
    dev_ST3: float
    passed: bool


def check_group_relations(M_S: np.ndarray, M_T: np.ndarray, tol: float = 1e-9) -> RelationReport:
    """Deviations of ``M_S^2`` and ``(M_S M_T)^3`` from the identity (max norm)."""
    M_S = np.asarray(M_S, dtype=complex)
    M_T = np.asarray(M_T, dtype=complex)
    if M_S.shape != M_T.shape or M_S.shape[0] != M_S.shape[1]:
        raise ValueError("need square matrices of equal size")
    eye = np.eye(M_S.shape[0])
    d2 = float(np.abs(M_S @ M_S - eye).max())
    ST = M_S @ M_T
    d3 = float(np.abs(ST @ ST @ ST - eye).max())
    return RelationReport(d2, d3, d2 <= tol and d3 <= tol)


def t_matrix(alphas) -> np.ndarray:
    """``diag(exp(2 pi i alpha_j))`` built from exact exponents."""
    return np.diag([cmath.exp(TWO_PI_I * float(a)) for a in alphas])


def solve_symmetric_involution(rho_T: np.ndarray, atol: float = 1e-9) -> np.ndarray:
    """The real symmetric ``[[a, b], [b, -a]]`` with ``a^2 + b^2 = 1`` and ``(. rho_T)^3 = I``.

    With ``t = diag(rho_T)`` the product ``M = [[a t1, b t2], [b t1, -a t2]]``
    has determinant ``-t1 t2`` and trace ``a (t1 - t2)``, so ``M^3 = I`` pins
    ``a`` once the pair of cube-root eigenvalues is chosen.  The sign of ``b``
    is taken positive so that the ``+1`` eigenvector of the result has
    components of equal sign (both components are positive at ``tau = i``).
    """
    rho_T = np.asarray(rho_T, dtype=complex)
    if rho_T.shape != (2, 2) or abs(rho_T[0, 1]) > atol or abs(rho_T[1, 0]) > atol:
        raise ValueError("rho_T must be a 2x2 diagonal matrix")
    t1, t2 = rho_T[0, 0], rho_T[1, 1]
    if abs(abs(t1) - 1) > atol or abs(abs(t2) - 1) > atol:
        raise ValueError("rho_T entries must have unit modulus")
    if abs(t1 - t2) < atol:
        raise ValueError("rho_T entries must be distinct")
    det = -t1 * t2
    roots = [cmath.exp(TWO_PI_I * j / 3) for j in range(3)]
    for lam1 in roots:
        lam2 = det / lam1
        if abs(lam2 ** 3 - 1) > atol or abs(lam1 - lam2) < atol:
            continue
        a = (lam1 + lam2) / (t1 - t2)
        if abs(a.imag) > atol or abs(a.real) > 1 + atol:
            continue
        a = min(1.0, max(-1.0, a.real))
        b = math.sqrt(max(0.0, 1 - a * a))
        R = np.array([[a, b], [b, -a]], dtype=complex)
        P = R @ rho_T
        if np.abs(P @ P @ P - np.eye(2)).max() < atol:
            return R
    raise NoSolution("no real symmetric involution satisfies the braid relation with these phases")


# ---------------------------------------------------------------------------
# Eisenstein inversion


R_S_REFERENCE = np.array([[1, 2], [2, -1]], dtype=complex) / math.sqrt(5)


@dataclass
class EisensteinInversion:
    R: np.ndarray
    residual_max: float
    training_residual: float
    deviation_from_reference: float
    discrepancy: bool


def eisenstein_inversion(samples: Sequence[complex] | None = None, tol: float = 1e-8,
                         order: int = 200) -> EisensteinInversion:
    """Fit ``(E+, Echi)(-1/tau) = tau^2 R (E+, Echi)(tau)`` and compare ``R`` with ``R_S_REFERENCE``.

    Nothing forces such a constant ``R`` to exist; the held-out residual says
    whether it does.
    """
    if samples is None:
        samples = default_samples(S)
    samples = [complex(t) for t in samples]
    if len(samples) < 3:
        raise ValueError("need at least three samples")
    series = (eisenstein("E+", order), eisenstein("Echi", order))

    def ev(t):
        return np.array([eval_qseries(s, t, EVAL_TOL).value for s in series])

    X = np.column_stack([ev(t) for t in samples])
    Y = np.column_stack([ev(-1 / t) / t ** 2 for t in samples])
    if equilibrated_cond(X[:, :2]) > COND_MAX:
        raise SingularSamples("Eisenstein sample matrix is ill-conditioned")
    R = np.linalg.solve(X[:, :2].T, Y[:, :2].T).T

    def rel(n):
        return float(np.linalg.norm(Y[:, n] - R @ X[:, n]) / np.linalg.norm(Y[:, n]))

    train = max(rel(n) for n in range(2))
    held = max(rel(n) for n in range(2, len(samples)))
    dev = float(np.abs(R - R_S_REFERENCE).max())
    return EisensteinInversion(R, held, train, dev, held > tol or dev > tol)
