"""Sobolev inner products, norms, kernels and the Gram-sum bound.

For integer ``s >= 1`` the inner product of ``H^s`` is

    <f, g>_s = sum_{l<s} int f^(l) * conj(int g^(l)) + <f^(s), g^(s)>_{L2}

and the "star" inner product is ``<f, g>_{s,*} = sum_{l<=s} <f^(l), g^(l)>_{L2}``.
For ``s = inf`` the plain inner product keeps only the mean terms and the
star version sums all derivative pairings.

Both norms are equivalent with constants independent of ``s``:
``(12/13) ||f||_{s,*} <= ||f||_s <= ||f||_{s,*}``.  :func:`gram_summary`
reproduces the row-sum computation behind the lower constant.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bernoulli import TWO_PI, bernoulli_eval, bernoulli_number, zeta
from .exceptions import (DivergentNormError, NonFiniteIntegrandError,
                         PreconditionError)
from .functions import adaptive_integrate, default_tol

__all__ = [
    "INFINITY",
    "SobolevSpec",
    "GramSummary",
    "fourier_weight",
    "inner_product_hs",
    "inner_product_hs_star",
    "norm_hs",
    "norm_hs_star",
    "periodic_norm_from_coeffs",
    "kernel_periodic",
    "kernel_hinfty",
    "embedding_norm_bound",
    "gram_summary",
    "equivalence_ratio",
    "EQUIVALENCE_CONSTANT",
]

INFINITY = math.inf
EQUIVALENCE_CONSTANT = 12.0 / 13.0

_INF_REL_CUTOFF = 1e-14
_INF_MAX_TERMS = 200
_RTOL = 1e-13


def _is_infinite(s):
    return s == math.inf


@dataclass(frozen=True)
class SobolevSpec:
    """Smoothness ``s`` (positive integer or ``inf``) and periodicity."""

    s: float
    periodic: bool = False

    def __post_init__(self):
        if not _is_infinite(self.s) and (self.s < 1 or self.s != int(self.s)):
            raise PreconditionError(f"smoothness must be an integer >= 1 or inf, got {self.s}")

    @property
    def only_constants(self):
        """Periodic functions of infinite smoothness in this scale are constants."""
        return self.periodic and _is_infinite(self.s)


def fourier_weight(h, s):
    """``a_h = max(1, (2 pi h)^(2 s))``."""
    return max(1.0, (TWO_PI * abs(h)) ** (2 * s))


def _mean(f, ell, tol):
    return adaptive_integrate(lambda x: f.eval(ell, x), 0.0, 1.0, tol=tol,
                              rtol=_RTOL, max_width=0.25,
                              breakpoints=f.breakpoints).value


def _pairing(f, g, ell, tol):
    bps = sorted(set(f.breakpoints) | set(g.breakpoints))
    if f is g:
        integrand = lambda x: np.abs(f.eval(ell, x)) ** 2
    else:
        integrand = lambda x: f.eval(ell, x) * np.conj(g.eval(ell, x))
    return adaptive_integrate(integrand, 0.0, 1.0, tol=tol, rtol=_RTOL,
                              max_width=0.25, breakpoints=bps).value


def _check_finite_s(s):
    if _is_infinite(s) or s < 1 or s != int(s):
        raise PreconditionError(f"finite integer smoothness required, got {s}")
    return int(s)


def inner_product_hs(f, g, s, tol=None):
    """``<f, g>_s`` with every pairing evaluated by quadrature."""
    s = _check_finite_s(s)
    tol = default_tol() if tol is None else tol
    total = 0j
    for ell in range(s):
        mf = _mean(f, ell, tol)
        mg = mf if f is g else _mean(g, ell, tol)
        total += mf * np.conj(mg)
    return complex(total + _pairing(f, g, s, tol))


def inner_product_hs_star(f, g, s, tol=None):
    """``<f, g>_{s,*} = sum_{l<=s} <f^(l), g^(l)>_{L2}``."""
    s = _check_finite_s(s)
    tol = default_tol() if tol is None else tol
    return complex(sum(_pairing(f, g, ell, tol) for ell in range(s + 1)))


def _infinite_series(term):
    total = 0.0
    quiet = 0
    for ell in range(_INF_MAX_TERMS):
        t = term(ell)
        if not math.isfinite(t):
            raise DivergentNormError(f"derivative order {ell} gives a non-finite term")
        total += t
        if t <= _INF_REL_CUTOFF * max(total, 1e-300):
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
    raise DivergentNormError(
        f"series did not decay within {_INF_MAX_TERMS} derivative orders")


def _safe(fn):
    # turn overflow inside the quadrature into a divergence signal
    def wrapped(ell):
        try:
            return fn(ell)
        except NonFiniteIntegrandError:
            return math.inf
    return wrapped


def norm_hs(f, s, tol=None):
    """``||f||_s``; ``s`` may be ``inf``."""
    tol = default_tol() if tol is None else tol
    if _is_infinite(s):
        return math.sqrt(_infinite_series(_safe(lambda ell: abs(_mean(f, ell, tol)) ** 2)))
    return math.sqrt(max(inner_product_hs(f, f, s, tol).real, 0.0))


def norm_hs_star(f, s, tol=None):
    """``||f||_{s,*}``; ``s`` may be ``inf``."""
    tol = default_tol() if tol is None else tol
    if _is_infinite(s):
        return math.sqrt(_infinite_series(_safe(lambda ell: _pairing(f, f, ell, tol).real)))
    return math.sqrt(max(inner_product_hs_star(f, f, s, tol).real, 0.0))


def equivalence_ratio(f, s, tol=None):
    """``||f||_s / ||f||_{s,*}``, which lies in ``[12/13, 1]``."""
    num = norm_hs(f, s, tol)
    den = norm_hs_star(f, s, tol)
    if den == 0:
        return 1.0
    return num / den


def periodic_norm_from_coeffs(c, s):
    """``sqrt(sum_h |c_h|^2 a_h)`` for a trigonometric polynomial ``c``."""
    coeffs = c.coeffs if hasattr(c, "coeffs") else dict(c)
    s = _check_finite_s(s)
    total = sum(abs(v) ** 2 * fourier_weight(h, s) for h, v in coeffs.items())
    return math.sqrt(total)


def kernel_periodic(s, x, t):
    """Reproducing kernel of the periodic space: ``1 + (-1)^(s-1) B*_{2s}({x - t})``."""
    s = _check_finite_s(s)
    frac = np.mod(np.asarray(x, dtype=float) - np.asarray(t, dtype=float), 1.0)
    sign = 1.0 if s % 2 else -1.0
    out = 1.0 + sign * bernoulli_eval(2 * s, frac)
    return out


def kernel_hinfty(x, t, J):
    """Truncated kernel ``sum_{j<=J} B*_j(x) B*_j(t)``.

    The terms decay roughly like ``(2 pi)^(-2j)``, so ``J = 20`` already
    reaches machine precision.
    """
    if J < 0:
        raise PreconditionError("truncation must be >= 0")
    out = 0.0
    for j in range(int(J) + 1):
        out = out + bernoulli_eval(j, x) * bernoulli_eval(j, t)
    return out


def embedding_norm_bound(s):
    """Bound on the point-evaluation norm in the periodic space: ``sqrt(1 + 2 zeta(2s)/(2 pi)^(2s))``."""
    s = _check_finite_s(s)
    return math.sqrt(1.0 + 2.0 * zeta(2.0 * s) / TWO_PI ** (2 * s))


# ---------------------------------------------------------------------------
# Gram matrix of the H^s-orthonormal basis {B*_0..B*_s} u {e_h/(2 pi |h|)^s}
# taken in the star inner product.


def _gram_bb(m, j):
    # <B*_m, B*_j>_{s,*} for m, j <= s, using
    # <B*_a, B*_b>_{L2} = (-1)^(b+1) B*_{a+b}(0) for a, b >= 1
    if m == j == 0:
        return 1.0
    total = 1.0 if m == j else 0.0
    for ell in range(min(m, j)):
        a, b = m - ell, j - ell
        total += (-1.0) ** (b + 1) * bernoulli_number(a + b)
    return total


def _gram_be_abs(j, h, s):
    # |<B*_j, e_h/(2 pi |h|)^s>_{s,*}| = sum_{l<j} (2 pi |h|)^(2l - j - s)
    x = TWO_PI * np.abs(np.asarray(h, dtype=float))
    return sum(x ** (2 * ell - j - s) for ell in range(j))


def _gram_ee(h, s):
    x = TWO_PI * np.abs(np.asarray(h, dtype=float))
    return sum(x ** (2 * ell - 2 * s) for ell in range(s + 1))


@dataclass
class GramSummary:
    """Row-sum maxima of the star-inner-product Gram matrix."""

    M_s1: float
    M_s2: float
    M_s: float
    truncation_H: int
    tail_bound: float
    s: int = 0
    bernoulli_rows: np.ndarray = field(default=None, repr=False)
    exponential_sums: np.ndarray = field(default=None, repr=False)

    @property
    def equivalence_constant(self):
        """``1/sqrt(M_s)``: lower constant in the norm equivalence."""
        return 1.0 / math.sqrt(self.M_s)


def gram_summary(s, H=10 ** 4):
    """Bound the largest Gram eigenvalue by its maximal absolute row sum.

    Rows belonging to ``e_h`` are maximised over ``1 <= |h| <= H``.  Rows for
    ``B*_j`` need a sum over all ``h``; terms with ``|h| > H`` are bounded by
    ``(4 pi^2 / (4 pi^2 - 1)) * 2 (2 pi)^(-p) H^(1-p) / (p - 1)`` with
    ``p = s - j + 2`` and that bound is added to the row.
    """
    s = _check_finite_s(s)
    if H < 1:
        raise PreconditionError("truncation H must be >= 1")
    H = int(H)
    hs = np.arange(1, H + 1, dtype=float)

    row_e = _gram_ee(hs, s) + sum(_gram_be_abs(j, hs, s) for j in range(1, s + 1))
    M_s1 = float(np.max(row_e))

    geo = 4 * math.pi ** 2 / (4 * math.pi ** 2 - 1)
    rows = np.zeros(s + 1)
    e_sums = np.zeros(s + 1)
    worst_tail = 0.0
    for j in range(s + 1):
        bb = sum(abs(_gram_bb(m, j)) for m in range(s + 1))
        if j == 0:
            rows[j] = bb
            continue
        p = s - j + 2
        tail = geo * 2.0 * TWO_PI ** (-p) * H ** (1.0 - p) / (p - 1)
        worst_tail = max(worst_tail, tail)
        e_sums[j] = 2.0 * float(np.sum(_gram_be_abs(j, hs, s))) + tail
        rows[j] = bb + e_sums[j]
    M_s2 = float(rows.max())
    return GramSummary(M_s1=M_s1, M_s2=M_s2, M_s=max(M_s1, M_s2),
                       truncation_H=H, tail_bound=worst_tail, s=s,
                       bernoulli_rows=rows, exponential_sums=e_sums)
