"""Worst-case errors, error bounds and information complexity.

Conventions: ``e0`` is the initial error (the norm of ``I_k``), ``n`` is the
number of function or derivative values an algorithm may use.  Values of kind
``exact`` are closed forms or convergent series with a recorded, rigorous
truncation bound; everything else is an upper or lower bound.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bernoulli import TWO_PI, hurwitz_zeta, two_pi_ik_power, zeta, zeta_even
from .exceptions import InvalidBudgetError, PreconditionError
from .functions import make_bernoulli, make_constant, make_exponential, SumOracle

__all__ = [
    "ErrorReport",
    "InitialError",
    "ComplexityBounds",
    "initial_error",
    "qmc_worst_case_error",
    "optimal_damping",
    "damped_error",
    "modified_qmc_error",
    "modified_qmc_bound",
    "per_error_bound",
    "taylor_error_bound",
    "tay_per_error_bound",
    "minimal_error_bounds",
    "asymptotic_qmc_constant",
    "complexity",
    "complexity_infty",
    "qmc_uniform_bound",
    "zeta",
    "zeta_even",
]

EXACT, UPPER, LOWER = "exact", "upper_bound", "lower_bound"
E_TO_MINUS_E = math.exp(-math.e)

# number of leading QMC series blocks summed directly before the zeta tail
_QMC_DIRECT_BLOCKS = 16


@dataclass
class ErrorReport:
    value: float
    kind: str
    truncation_terms: int = 0
    tail_bound: float = 0.0
    provenance: str = ""

    def __float__(self):
        return float(self.value)


@dataclass
class InitialError:
    """Norm of ``I_k``; ``beta`` is the factor over ``1/(2 pi |k|)`` when defined."""

    value: float
    beta: float = None
    k: int = 0
    s: float = 1
    periodic: bool = True

    def representer(self, terms=60):
        """Oracle for the Riesz representer of ``I_k``.

        For ``s = inf`` the Bernoulli series is cut after ``terms`` terms.
        """
        return _representer(self.k, self.s, self.periodic, terms)


@dataclass
class ComplexityBounds:
    lower: int
    upper: int
    achieved: int
    zero_case: bool = False
    target: float = 0.0
    details: dict = field(default_factory=dict)


def _check_s(s, allow_inf=False):
    if s == math.inf:
        if not allow_inf:
            raise PreconditionError("finite smoothness required")
        return s
    if s < 1 or s != int(s):
        raise PreconditionError(f"smoothness must be an integer >= 1, got {s}")
    return int(s)


def _beta(k, s):
    x = TWO_PI * abs(k)
    if s == math.inf:
        return math.sqrt(x * x / (x * x - 1.0))
    if s == 1:
        return math.sqrt(2.0)
    # beta^2 = 2 x^(2-2s) + sum_{l=0}^{s-2} x^(-2l)
    return math.sqrt(2.0 * x ** (2 - 2 * s) + sum(x ** (-2 * ell) for ell in range(s - 1)))


def initial_error(k, s, periodic):
    """Initial error ``e(0, k, s)`` for the periodic or non-periodic space."""
    k = int(k)
    s = _check_s(s, allow_inf=True)
    if k == 0:
        return InitialError(1.0, None, k, s, periodic)
    if periodic:
        value = 0.0 if s == math.inf else (TWO_PI * abs(k)) ** (-s)
        return InitialError(value, None, k, s, periodic)
    beta = _beta(k, s)
    return InitialError(beta / (TWO_PI * abs(k)), beta, k, s, periodic)


def _representer(k, s, periodic, terms):
    if k == 0:
        return make_constant(1.0)
    if periodic:
        if s == math.inf:
            return make_constant(0.0)
        return SumOracle([make_exponential(k)], [(TWO_PI * k) ** (-2 * s)])
    parts, weights = [], []
    if s != math.inf:
        parts.append(make_exponential(k))
        weights.append((TWO_PI * k) ** (-2 * s))
        top = s
    else:
        top = terms
    for ell in range(1, top + 1):
        parts.append(make_bernoulli(ell))
        weights.append(-((-1) ** ell) / two_pi_ik_power(k, ell))
    return SumOracle(parts, weights)


# ---------------------------------------------------------------------------
# QMC worst-case error

def _qmc_weight(m, s):
    m = np.abs(np.asarray(m, dtype=float))
    out = np.ones_like(m)
    nz = m > 0
    out[nz] = 1.0 / np.maximum(1.0, (TWO_PI * m[nz]) ** (2 * s))
    return out


def qmc_worst_case_error(n, k, s, method="zeta", terms=10 ** 6):
    """Worst-case error of the equal-weight rule on ``n`` equispaced nodes.

    The squared error is ``sum_{j>=1} [1/a_{jn+k} + 1/a_{jn-k}]``.  The default
    method sums the first blocks directly and the remainder as two Hurwitz
    zeta values; the reported tail bound is the first omitted Euler-Maclaurin
    correction.  ``method="direct"`` sums ``terms`` blocks and bounds the rest
    by an integral; it exists as an independent cross-check.
    """
    n, k, s = int(n), int(k), _check_s(s)
    if n < 1:
        raise InvalidBudgetError("QMC needs n >= 1")
    if method == "direct":
        j = np.arange(1, terms + 1, dtype=float)
        sq = float(np.sum(_qmc_weight(j * n + k, s)) + np.sum(_qmc_weight(j * n - k, s)))
        # sum_{j>J} (jn +- k)^(-2s) lies between the integrals from J+1 and J
        lo_tail = hi_tail = 0.0
        for sign in (1, -1):
            base = terms * n + sign * k
            hi_tail += (TWO_PI) ** (-2 * s) * base ** (1 - 2 * s) / (n * (2 * s - 1))
            lo_tail += (TWO_PI) ** (-2 * s) * (base + n) ** (1 - 2 * s) / (n * (2 * s - 1))
        sq += 0.5 * (lo_tail + hi_tail)
        value = math.sqrt(sq)
        return ErrorReport(value, EXACT, terms, 0.5 * (hi_tail - lo_tail) / (2 * value),
                           "qmc series, direct summation")
    if method != "zeta":
        raise PreconditionError(f"unknown method {method!r}")
    J0 = _QMC_DIRECT_BLOCKS + math.ceil(abs(k) / n)
    j = np.arange(1, J0 + 1, dtype=float)
    sq = float(np.sum(_qmc_weight(j * n + k, s)) + np.sum(_qmc_weight(j * n - k, s)))
    scale = (TWO_PI * n) ** (-2 * s)
    tail_err = 0.0
    for q in (J0 + 1 + k / n, J0 + 1 - k / n):
        val, err = hurwitz_zeta(2.0 * s, q, return_error=True)
        sq += scale * val
        tail_err += scale * err
    value = math.sqrt(sq)
    return ErrorReport(value, EXACT, J0, tail_err / (2 * value),
                       "qmc series, zeta tail")


def qmc_uniform_bound(n, k, s):
    """``(2/(2 pi)^s) (n - |k|)^(-s)`` for ``n > |k|``."""
    if n <= abs(k):
        raise InvalidBudgetError("bound needs n > |k|")
    return 2.0 / TWO_PI ** s * (n - abs(k)) ** (-float(s))


def asymptotic_qmc_constant(s):
    """``lim n^s e(QMC_n) = sqrt(2 zeta(2s)) / (2 pi)^s``."""
    s = _check_s(s)
    return math.sqrt(2.0 * zeta_even(2 * s)) / TWO_PI ** s


# ---------------------------------------------------------------------------
# damping and the modified rule

def damped_error(n, k, s, a):
    """Worst-case error of ``a * QMC_n``: ``sqrt((1-a)^2 e0^2 + a^2 eQ^2)``."""
    e0 = initial_error(k, s, True).value
    eq = qmc_worst_case_error(n, k, s).value
    return math.sqrt((1.0 - a) ** 2 * e0 ** 2 + a ** 2 * eq ** 2)


def optimal_damping(n, k, s):
    """Minimizer ``a* = e0^2/(e0^2 + eQ^2)`` and the resulting error."""
    e0 = initial_error(k, s, True).value
    rep = qmc_worst_case_error(n, k, s)
    eq = rep.value
    denom = e0 * e0 + eq * eq
    a_star = e0 * e0 / denom
    err = e0 * eq / math.sqrt(denom)
    return a_star, ErrorReport(err, EXACT, rep.truncation_terms, rep.tail_bound,
                               "optimally damped qmc")


def modified_qmc_error(n, k, s):
    """Exact worst-case error of the rule that is zero for ``n < max(1, 2|k|)``."""
    n, k, s = int(n), int(k), _check_s(s)
    if n == 0 or n < 2 * abs(k):
        return ErrorReport(initial_error(k, s, True).value, EXACT, 0, 0.0,
                           "zero algorithm")
    rep = qmc_worst_case_error(n, k, s)
    rep.provenance = "modified qmc"
    return rep


def modified_qmc_bound(n, k, s):
    """Uniform bound ``(3/(2 pi))^s * 2/(n + |k|)^s``."""
    s = _check_s(s)
    m = n + abs(k)
    value = math.inf if m == 0 else (3.0 / TWO_PI) ** s * 2.0 / m ** s
    return ErrorReport(value, UPPER, provenance="modified qmc uniform bound")


# ---------------------------------------------------------------------------
# non-periodic algorithm bounds

def taylor_error_bound(n):
    """``1/(2^(n-1) n!)``."""
    return 1.0 / (2.0 ** (n - 1) * math.factorial(n))


def _tail_bound(n, k, s):
    return (3.0 / TWO_PI) ** s * 2.0 / (n - 2 * s + 1 + abs(k)) ** s


def per_error_bound(n, k, s):
    """Certified bound for the periodizing algorithm with budget ``n``."""
    n, k, s = int(n), int(k), _check_s(s)
    candidates = []
    if k != 0 and n % 2 == 0 and 2 <= n <= 2 * s:
        candidates.append((TWO_PI * abs(k)) ** (-n / 2))
    if n >= 2 * s:
        candidates.append(_remainder_bound(n, k, s))
    if not candidates:
        raise InvalidBudgetError(f"no periodizing bound for n={n}, k={k}, s={s}")
    return min(candidates)


def _remainder_bound(n, k, s):
    # the periodic remainder f - p has H^s norm at most ||f||, and A*_{n-2s+1}
    # is applied to it, so its exact error also bounds the rule
    return min(_tail_bound(n, k, s), modified_qmc_error(n - 2 * s + 1, k, s).value)


def tay_per_error_bound(n, k, s, branch="auto"):
    """Certified bound for the Taylor/periodization algorithm.

    For ``s = inf`` the Taylor bound holds for every ``n``; the periodizer
    bound ``(2 pi |k|)^(-n/2)`` is available for even ``n`` and ``k != 0``.
    """
    n, k = int(n), int(k)
    if n < 1:
        raise InvalidBudgetError("budget must be >= 1")
    if s == math.inf:
        opts = []
        if branch in ("auto", "taylor"):
            opts.append(taylor_error_bound(n))
        if branch in ("auto", "per") and k != 0 and n % 2 == 0:
            opts.append((TWO_PI * abs(k)) ** (-n / 2))
        if not opts:
            raise InvalidBudgetError(f"branch {branch!r} undefined for n={n}, k={k}")
        return min(opts)
    s = _check_s(s)
    if n <= s:
        return taylor_error_bound(n)
    if n < 2 * s:
        raise InvalidBudgetError(f"undefined for n in ({s}, {2 * s})")
    return per_error_bound(n, k, s) if k != 0 else _remainder_bound(n, k, s)


def _nonperiodic_best_bound(n, k, s):
    # smallest certified bound of any implemented algorithm using at most n values
    options = [initial_error(k, s, False).value]
    if 1 <= n <= s:
        options.append(taylor_error_bound(n))
    elif n > s:
        options.append(taylor_error_bound(s))
    if k != 0 and n >= 2:
        even = min(n - n % 2, 2 * s)
        options.append((TWO_PI * abs(k)) ** (-even / 2))
    if n >= 2 * s:
        options.append(_tail_bound(n, k, s))
    return min(options)


def _nonperiodic_branch_bound(n, k, s):
    # n < 2s: Taylor with min(n, s) values or the periodizer with the even part of n
    options = [taylor_error_bound(min(n, s))]
    if k != 0 and n >= 2:
        options.append((TWO_PI * abs(k)) ** (-(n // 2)))
    return min(options)


def minimal_error_bounds(n, k, s, periodic):
    """Lower and upper bounds on the ``n``-th minimal error.

    For ``n = 0`` the minimal error is the initial error, which is returned
    as the upper bound.
    """
    from .adversary import lower_bound_constant

    n, k, s = int(n), int(k), _check_s(s)
    if n < 0:
        raise InvalidBudgetError("budget must be >= 0")
    _, c_s = lower_bound_constant(s)
    lower = ErrorReport(c_s / (max(n, 1) + abs(k)) ** s, LOWER,
                        provenance="fooling-function lower bound")
    if n == 0:
        upper = ErrorReport(initial_error(k, s, periodic).value, UPPER,
                            provenance="initial error")
    elif periodic:
        upper = ErrorReport(modified_qmc_bound(n, k, s).value, UPPER,
                            provenance="modified qmc bound")
    elif n >= 2 * s:
        upper = ErrorReport(_tail_bound(n, k, s), UPPER, provenance="periodizer plus qmc bound")
    else:
        upper = ErrorReport(_nonperiodic_branch_bound(n, k, s), UPPER,
                            provenance="taylor / periodizer branch bound")
    return lower, upper


# ---------------------------------------------------------------------------
# information complexity

def _ceil(x):
    return math.ceil(x - 1e-12)


def _check_eps(eps):
    if not 0 < eps < 1:
        raise PreconditionError(f"epsilon must lie in (0, 1), got {eps}")


def _smallest(pred, start=0):
    """Smallest ``n >= start`` with ``pred(n)``, assuming monotonicity."""
    hi = max(start, 1)
    while not pred(hi):
        hi *= 2
        if hi > 2 ** 48:
            raise PreconditionError("target unreachable")
    lo = start
    if pred(lo):
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def complexity(eps, k, s, criterion="abs", periodic=True):
    """Lower/upper complexity formulas and the achieved budget.

    ``achieved`` is the smallest ``n`` for which the certified error of the
    best implemented algorithm is at most the target (``eps`` or
    ``eps * e0``).
    """
    from .adversary import lower_bound_constant

    _check_eps(eps)
    if criterion not in ("abs", "nor"):
        raise PreconditionError(f"criterion must be 'abs' or 'nor', got {criterion!r}")
    k, s = int(k), _check_s(s)
    kk = abs(k)
    e0 = initial_error(k, s, periodic).value
    target = eps if criterion == "abs" else eps * e0
    if criterion == "abs" and eps >= e0:
        return ComplexityBounds(0, 0, 0, True, target)
    _, c_s = lower_bound_constant(s)
    root = 1.0 / s
    floor_one = 1 if criterion == "nor" else 0

    if periodic:
        if criterion == "abs" or k == 0:
            lo = (c_s / eps) ** root - kk
            up = _ceil(3.0 / TWO_PI * (math.sqrt(2.0) / eps) ** root) - kk
        else:
            lo = kk * (TWO_PI * (c_s / eps) ** root - 1.0)
            up = kk * _ceil(3.0 * (math.sqrt(2.0) / eps) ** root - 1.0)

        def ok(n):
            return modified_qmc_error(n, k, s).value <= target

        achieved = _smallest(ok, start=max(1, 2 * kk))
    else:
        if k == 0:
            lo = (c_s / eps) ** root
            up = _ceil(3.0 / TWO_PI * (2.0 / eps) ** root) + 2 * s - 1
        elif criterion == "abs":
            lo = (c_s / eps) ** root - kk
            up = 2 * s + max(0, _ceil(3.0 / TWO_PI * (2.0 / eps) ** root) - 1 - kk)
        else:
            lo = (c_s * math.sqrt(2.0) * math.pi * kk / eps) ** root - kk
            up = 2 * s + max(0, _ceil(3.0 / TWO_PI * (4 * math.pi * kk / eps) ** root) - 1 - kk)
        achieved = None
        for n in range(1, 2 * s + 1):
            if _nonperiodic_best_bound(n, k, s) <= target:
                achieved = n
                break
        if achieved is None:
            # (3/2pi)^s 2/(n-2s+1+|k|)^s <= target
            guess = max(2 * s, _ceil(2 * s - 1 - kk + 3.0 / TWO_PI * (2.0 / target) ** root))
            while guess > 2 * s and _tail_bound(guess - 1, k, s) <= target:
                guess -= 1
            while _tail_bound(guess, k, s) > target:
                guess += 1
            achieved = guess
    lower = max(floor_one, _ceil(lo))
    return ComplexityBounds(lower, max(floor_one, up), achieved, False, target)


def infty_bound(n, k):
    """``min(1/(2^(n-1) n!), (2 pi |k|)^(-n/2))``; the second term only for ``k != 0``."""
    b = taylor_error_bound(n)
    if k != 0:
        b = min(b, (TWO_PI * abs(k)) ** (-n / 2))
    return b


def complexity_infty(eps, k, criterion="abs"):
    """Upper complexity formula and achieved budget for ``s = inf``.

    No lower bound is known in this setting, so ``lower`` is ``None``.
    """
    if not 0 < eps < E_TO_MINUS_E:
        raise PreconditionError(f"epsilon must lie in (0, e^-e), got {eps}")
    if criterion not in ("abs", "nor"):
        raise PreconditionError(f"criterion must be 'abs' or 'nor', got {criterion!r}")
    k = int(k)
    e0 = initial_error(k, math.inf, False).value
    target = eps if criterion == "abs" else eps * e0
    if criterion == "abs" and eps >= e0:
        return ComplexityBounds(None, 0, 0, True, target)
    L = math.log(1.0 / eps)
    if k == 0:
        up = _ceil(2 * L / math.log(L))
    else:
        lk = math.log(TWO_PI * abs(k))
        if criterion == "abs":
            up = _ceil(2 * min(L / math.log(L), L / lk))
        else:
            up = _ceil(2 * min((L + lk) / math.log(L + lk), L / lk + 1))
    n = 1
    while infty_bound(n, k) > target:
        n += 1
    return ComplexityBounds(None, up, n, False, target)
