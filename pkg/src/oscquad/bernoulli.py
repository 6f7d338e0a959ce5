"""Normalized Bernoulli polynomials and closed-form oscillatory integrals.

The normalized Bernoulli polynomials are ``B*_m = B_m / m!``.  They satisfy
``[B*_m]' = B*_{m-1}`` and ``int_0^1 B*_m = 0`` for ``m >= 1``; these two
facts generate the whole coefficient table below.

Throughout, ``I_k(f) = int_0^1 f(x) exp(-2 pi i k x) dx`` and
``e_h(x) = exp(2 pi i h x)``.
"""

import math
from fractions import Fraction

import numpy as np

from .exceptions import DegreeOverflowError, PreconditionError

__all__ = [
    "MAX_DEGREE",
    "bernoulli_number",
    "bernoulli_coefficients",
    "bernoulli_eval",
    "bernoulli_fourier_partial",
    "osc_integral_exponential",
    "osc_integral_bernoulli",
    "osc_integral_centered_monomial",
    "i_power",
    "two_pi_ik_power",
    "zeta",
    "zeta_even",
    "hurwitz_zeta",
]

MAX_DEGREE = 60
TWO_PI = 2.0 * math.pi

_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


def _build_tables(size):
    # b*_m = -sum_{p=1}^{m} b*_{m-p} / (p+1)!  from  int_0^1 B*_m = 0.
    numbers = [Fraction(1)]
    for m in range(1, size + 1):
        acc = Fraction(0)
        for p in range(1, m + 1):
            acc += numbers[m - p] / math.factorial(p + 1)
        numbers.append(-acc)
    coeffs = np.zeros((size + 1, size + 1))
    for m in range(size + 1):
        for p in range(m + 1):
            coeffs[m, p] = float(numbers[m - p] / math.factorial(p))
    return tuple(float(b) for b in numbers), coeffs


_NUMBERS, _COEFFS = _build_tables(MAX_DEGREE)
_COEFFS.setflags(write=False)


def _check_degree(m):
    if m < 0:
        raise PreconditionError(f"Bernoulli degree must be >= 0, got {m}")
    if m > MAX_DEGREE:
        raise DegreeOverflowError(
            f"Bernoulli degree {m} exceeds table size {MAX_DEGREE}")


def bernoulli_number(m):
    """Return ``B*_m(0) = B_m / m!`` (with ``B_1 = -1/2``)."""
    _check_degree(m)
    return _NUMBERS[m]


def bernoulli_coefficients(m):
    """Monomial coefficients of ``B*_m`` in ascending powers of ``x``."""
    _check_degree(m)
    return _COEFFS[m, : m + 1].copy()


def bernoulli_eval(m, x):
    """Evaluate ``B*_m(x)`` by Horner's rule.

    Works for scalars and arrays; ``x`` is not reduced modulo 1.
    """
    _check_degree(m)
    c = _COEFFS[m]
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, c[m])
    for p in range(m - 1, -1, -1):
        out = out * x + c[p]
    if out.ndim == 0:
        return float(out)
    return out


def bernoulli_fourier_partial(m, x, H):
    """Truncated Fourier series ``-(2 pi i)^(-m) sum_{0<|l|<=H} e_l(x) / l^m``."""
    if m < 1 or H < 1:
        raise PreconditionError("need m >= 1 and H >= 1")
    ell = np.arange(1, int(H) + 1, dtype=float)
    x = np.asarray(x, dtype=float)
    phase = TWO_PI * np.multiply.outer(x, ell)
    # pair l with -l: e^{i t}/l^m + e^{-i t}/(-l)^m
    inv = ell ** (-float(m))
    if m % 2 == 0:
        total = (2.0 * np.cos(phase) * inv).sum(axis=-1).astype(complex)
    else:
        total = (2j * np.sin(phase) * inv).sum(axis=-1)
    value = -total / two_pi_ik_power(1, m)
    if np.ndim(value) == 0:
        return complex(value)
    return value


def i_power(m):
    """Exact ``i**m`` for integer ``m`` (negative allowed)."""
    return _I_POWERS[m % 4]


def two_pi_ik_power(k, m):
    """``(2 pi i k)**m`` for integer ``m >= 0`` without complex logarithms."""
    if m < 0:
        raise PreconditionError("exponent must be nonnegative")
    return i_power(m) * (TWO_PI * k) ** m


def _inv_two_pi_ik_power(k, m):
    # (2 pi i k)^{-m}, computed as a small real magnitude times a rotation
    return i_power(-m) * (1.0 / (TWO_PI * k)) ** m


def osc_integral_exponential(k, h):
    """``I_k(e_h)``: 1 if ``h == k`` else 0."""
    return 1.0 + 0j if h == k else 0j


def osc_integral_bernoulli(k, m):
    """``I_k(B*_m) = -(2 pi i k)^(-m)`` for ``k != 0``; zero for ``k == 0``."""
    if m < 1:
        raise PreconditionError("closed form requires m >= 1")
    if k == 0:
        return 0j
    return -_inv_two_pi_ik_power(k, m)


def osc_integral_centered_monomial(k, ell):
    """``(1/ell!) int_0^1 e^{-2 pi i k x} (x - 1/2)^ell dx`` in closed form."""
    if ell < 0:
        raise PreconditionError("ell must be >= 0")
    if k == 0:
        if ell % 2:
            return 0j
        return complex(2.0 / (2.0 ** (ell + 1) * math.factorial(ell + 1)))
    # For k != 0 the inner sum equals e^{-i pi k} - e^{i pi k} truncated at
    # order ell, i.e. -2i sign(k) P with P a truncated sine series at pi|k|.
    # sin(pi k) = 0, so past the turning point the negated tail is used.
    x = math.pi * abs(k)
    log_x = math.log(x)
    log_scale = (ell + 1) * math.log(TWO_PI * abs(k))

    def term(m):
        sign = -1.0 if (m // 2) % 2 else 1.0
        return sign * math.exp(m * log_x - math.lgamma(m + 1) - log_scale)

    if ell + 1 <= x:
        p_scaled = sum(term(m) for m in range(1, ell + 1, 2))
    else:
        p_scaled = 0.0
        m = ell + 1 if (ell + 1) % 2 else ell + 2
        while True:
            t = term(m)
            p_scaled -= t
            if m > x and abs(t) <= 1e-18 * abs(p_scaled):
                break
            m += 2
    sgn = 1.0 if k > 0 else -1.0
    s_scaled = -2j * sgn * p_scaled
    # (2 pi i k)^{-ell-1} = i^{-ell-1} sign(k)^{ell+1} (2 pi |k|)^{-ell-1}
    return i_power(-(ell + 1)) * sgn ** (ell + 1) * s_scaled


_EM_TERMS = 10


def hurwitz_zeta(x, q, return_error=False):
    """Hurwitz zeta ``sum_{m>=0} (q + m)^(-x)`` by Euler-Maclaurin.

    With ``return_error=True`` the magnitude of the first omitted correction
    is returned as a second value.
    """
    if x <= 1:
        raise PreconditionError(f"zeta requires x > 1, got {x}")
    if q <= 0:
        raise PreconditionError(f"Hurwitz shift must be positive, got {q}")
    shift = max(16.0, 2.0 * x + 8.0)
    n_direct = max(0, math.ceil(shift - q))
    direct = 0.0
    if n_direct:
        direct = float(np.sum((q + np.arange(n_direct, dtype=float)) ** (-x)))
    Q = q + n_direct
    tail = Q ** (1.0 - x) / (x - 1.0) + 0.5 * Q ** (-x)
    rising = x
    power = Q ** (-x - 1.0)
    err = 0.0
    for j in range(1, _EM_TERMS + 2):
        t = _NUMBERS[2 * j] * rising * power
        if j <= _EM_TERMS:
            tail += t
        else:
            err = abs(t)
        rising *= (x + 2 * j - 1) * (x + 2 * j)
        power /= Q * Q
    value = direct + tail
    if return_error:
        return value, err
    return value


def zeta(x):
    """Riemann zeta function for real ``x > 1``."""
    return hurwitz_zeta(x, 1.0)


def zeta_even(two_m):
    """``zeta(2m)`` from the identity ``B*_{2m}(0) = 2(-1)^{m+1} zeta(2m)/(2 pi)^{2m}``."""
    if two_m < 2 or two_m % 2:
        raise PreconditionError("argument must be an even integer >= 2")
    if two_m > MAX_DEGREE:
        return zeta(float(two_m))
    m = two_m // 2
    sign = 1.0 if m % 2 else -1.0
    return sign * _NUMBERS[two_m] * TWO_PI ** two_m / 2.0
