"""Property suites behind ``oscquad verify`` and the acceptance tests.

Each suite returns a list of :class:`Check`.  Check names are prefixed by a
group tag (e.g. ``extremal/``, ``dual/``) so callers can select subsets.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from . import bernoulli as bn
from .adversary import (bump_normalizer, bump_normalizer_closed_form, cosine_bands,
                        equal_split_minimum, fooling_function, lower_bound_constant,
                        split_objective)
from .algorithms import (algo_per, algo_tay_per, algorithm_weights, extremal_qmc_function,
                         integral_of_periodizer, integral_of_taylor, periodizer, qmc, taylor)
from .errors import (asymptotic_qmc_constant, complexity, complexity_infty, damped_error,
                     infty_bound, initial_error, minimal_error_bounds, modified_qmc_bound,
                     modified_qmc_error, optimal_damping, per_error_bound,
                     qmc_worst_case_error, tay_per_error_bound)
from .exceptions import InvalidBudgetError
from .functions import (adaptive_integrate, make_bernoulli, make_exponential, make_polynomial,
                        make_sum, make_trig, reference_integral)
from .sobolev import (EQUIVALENCE_CONSTANT, fourier_weight, gram_summary, norm_hs,
                      norm_hs_star)

__all__ = ["Check", "SUITES", "run_suite", "test_corpus", "QMC_GRID",
           "qmc_brute_force_checks", "qmc_theory_checks"]


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""


QMC_GRID = [(n, k, s) for s in (1, 2) for k in (0, 1, -1, 3, -3) for n in range(1, 9)]


def test_corpus(seed=0, n_poly=20, n_mixed=5):
    """Random polynomials of degree <= 6 and trig-plus-polynomial mixtures."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n_poly):
        deg = int(rng.integers(0, 7))
        out.append(make_polynomial(rng.normal(size=deg + 1)))
    for _ in range(n_mixed):
        hs = rng.choice(np.arange(-3, 4), size=3, replace=False)
        coeffs = {int(h): complex(rng.normal(), rng.normal()) * 0.3 for h in hs}
        deg = int(rng.integers(1, 5))
        out.append(make_sum([make_trig(coeffs), make_polynomial(rng.normal(size=deg + 1))]))
    return out


def _fmt(x):
    return f"{x:.6g}"


# ---------------------------------------------------------------------------

def suite_bernoulli(seed=0):
    out = []
    ok = True
    for m in range(0, 31):
        c = bn.bernoulli_coefficients(m)
        for ell in range(m + 1):
            d = np.polynomial.polynomial.polyder(c, ell) if ell else c
            if not np.allclose(d, bn.bernoulli_coefficients(m - ell), rtol=1e-12, atol=1e-300):
                ok = False
    out.append(Check("bernoulli", "derivative chain m<=30", ok))
    jumps = [bn.bernoulli_eval(m, 1.0) - bn.bernoulli_eval(m, 0.0) for m in range(31)]
    ok = all(abs(j - (1.0 if m == 1 else 0.0)) < 1e-13 for m, j in enumerate(jumps))
    out.append(Check("bernoulli", "boundary jump", ok))
    means = []
    for m in range(1, 31):
        c = bn.bernoulli_coefficients(m)
        means.append(abs(sum(c[p] / (p + 1) for p in range(m + 1))))
    out.append(Check("bernoulli", "zero mean", max(means) < 1e-14, _fmt(max(means))))
    err = 0.0
    for m in range(1, 15):
        direct = float(np.sum(np.arange(1, 200001, dtype=float) ** (-2.0 * m)))
        direct += 200000.0 ** (1 - 2 * m) / (2 * m - 1)
        ident = 2 * (-1) ** (m + 1) * direct / bn.TWO_PI ** (2 * m)
        err = max(err, abs(bn.bernoulli_number(2 * m) - ident))
        err = max(err, abs(bn.bernoulli_number(2 * m + 1)))
    out.append(Check("bernoulli", "values at zero vs zeta", err < 1e-12, _fmt(err)))
    err = 0.0
    for k in range(-5, 6):
        if k == 0:
            continue
        for m in range(1, 9):
            ref = reference_integral(make_bernoulli(m), k).value
            err = max(err, abs(ref - bn.osc_integral_bernoulli(k, m)))
    out.append(Check("bernoulli", "oscillatory integrals vs quadrature", err < 1e-11, _fmt(err)))
    err = 0.0
    for k in (0, 1, 2, 7):
        for ell in range(8):
            ref = adaptive_integrate(
                lambda x: (x - 0.5) ** ell / math.factorial(ell) * np.exp(-2j * np.pi * k * x),
                0, 1, max_width=1 / (4 * max(1, k))).value
            err = max(err, abs(ref - bn.osc_integral_centered_monomial(k, ell)))
    out.append(Check("bernoulli", "centred monomial integrals", err < 1e-12, _fmt(err)))
    return out


def _dual_norm_error(n, k, s, width):
    # worst case over the unit ball of span{e_h : |h - k| <= width}:
    # sqrt(sum_h |I_k(e_h) - A(e_h)|^2 / a_h), with A applied to each e_h
    total = 0.0
    for h in range(k - width, k + width + 1):
        w = bn.osc_integral_exponential(k, h) - qmc(make_exponential(h), n, k).value
        total += abs(w) ** 2 / fourier_weight(h, s)
    return math.sqrt(total)


def qmc_brute_force_checks(seed=0):
    """Closed-form QMC error against the extremal function and the dual-norm sum."""
    out = []
    for n, k, s in QMC_GRID:
        rep = qmc_worst_case_error(n, k, s)
        exact = rep.value
        f = extremal_qmc_function(n, k, s, J=10 ** 4)
        achieved = abs(f.coefficient(k) - qmc(f, n, k).value)
        gap = abs(achieved - exact)
        out.append(Check("qmc-exact", f"extremal/n={n},k={k},s={s}", gap <= 1e-6,
                         f"exact={_fmt(exact)} achieved={_fmt(achieved)} gap={gap:.2e}"))
        dual = _dual_norm_error(n, k, s, 50 * n)
        gap = abs(dual - exact)
        out.append(Check("qmc-exact", f"dual/n={n},k={k},s={s}", gap <= 1e-6,
                         f"exact={_fmt(exact)} dual={_fmt(dual)} gap={gap:.2e}"))
        direct = qmc_worst_case_error(n, k, s, method="direct").value
        out.append(Check("qmc-exact", f"series-routes/n={n},k={k},s={s}",
                         abs(direct - exact) <= 1e-12 * exact
                         and rep.tail_bound <= 1e-13 * exact,
                         f"direct-zeta={abs(direct - exact):.1e} tail={rep.tail_bound:.1e}"))
    return out


def qmc_theory_checks(seed=0):
    """Comparisons of the exact QMC error with the initial error and its bounds."""
    out = []
    grid = set(QMC_GRID) | {(n, k, s) for s in (1, 2, 3) for k in range(1, 9) for n in range(1, k + 1)}
    for n, k, s in sorted(grid):
        e0 = initial_error(k, s, True).value
        e = qmc_worst_case_error(n, k, s).value
        kk = abs(k)
        if 1 <= n <= kk:
            out.append(Check("qmc-exact", f"theory/worse-than-zero/n={n},k={k},s={s}", e > e0))
        if n == kk and k != 0:
            out.append(Check("qmc-exact", f"theory/almost-worst/n={n},k={k},s={s}",
                             e * e > 1 + (4 * math.pi * kk) ** (-2 * s)))
        if n > kk:
            b = 2.0 / bn.TWO_PI ** s * (n - kk) ** (-s)
            out.append(Check("qmc-exact", f"theory/uniform/n={n},k={k},s={s}", e <= b))
    theory_alpha = True
    worst = ""
    for n_max in (200,):
        for s in (1, 2, 3):
            for k in range(-8, 9):
                for alpha in (0.25, 0.5, 0.75):
                    for n in range(1, n_max + 1):
                        if n > (1 + alpha) / (1 - alpha) * abs(k):
                            e = qmc_worst_case_error(n, k, s).value
                            b = 2.0 / (bn.TWO_PI * alpha) ** s * (n + abs(k)) ** (-s)
                            if not e < b:
                                theory_alpha = False
                                worst = f"n={n},k={k},s={s},alpha={alpha}"
                        if n > abs(k):
                            e = qmc_worst_case_error(n, k, s).value
                            if e > 2.0 / bn.TWO_PI ** s * (n - abs(k)) ** (-s):
                                theory_alpha = False
                                worst = f"uniform n={n},k={k},s={s}"
    out.append(Check("qmc-exact", "theory/alpha-and-uniform sweep n<=200,|k|<=8,s<=3",
                     theory_alpha, worst))
    return out


def suite_qmc_exact(seed=0):
    return qmc_brute_force_checks(seed) + qmc_theory_checks(seed)


def suite_asymptotic(seed=0):
    out = []
    for s in (1, 2, 3):
        c = asymptotic_qmc_constant(s)
        for k in (0, 1, 7):
            v = 1000 ** s * qmc_worst_case_error(1000, k, s).value
            rel = abs(v / c - 1)
            out.append(Check("asymptotic", f"n=1000,k={k},s={s}", rel <= 0.01,
                             f"scaled={_fmt(v)} const={_fmt(c)} rel={rel:.2e}"))
    return out


def suite_damping(seed=0):
    out = []
    grid = np.round(np.arange(0, 1.5 + 1e-9, 0.01), 10)
    for n, k, s in QMC_GRID:
        a_star, rep = optimal_damping(n, k, s)
        e0 = initial_error(k, s, True).value
        eq = qmc_worst_case_error(n, k, s).value
        errs = [damped_error(n, k, s, a) for a in grid]
        a_best = grid[int(np.argmin(errs))]
        ok = abs(a_best - a_star) <= 0.01 + 1e-12 and rep.value < min(e0, eq)
        ok = ok and min(errs) >= rep.value - 1e-15
        out.append(Check("damping", f"n={n},k={k},s={s}", ok,
                         f"a*={_fmt(a_star)} grid-argmin={a_best} err={_fmt(rep.value)}"))
    return out


def _hs_ref(f, k):
    return reference_integral(f, k).value


def suite_periodize(seed=0):
    out = []
    corpus = test_corpus(seed)
    worst_res, worst_bound = 0.0, -math.inf
    for f in corpus:
        for j in range(1, 5):
            p = periodizer(f, j)
            po = p.as_oracle()
            for ell in range(j):
                r = abs((f.eval(ell, 1.0) - po.eval(ell, 1.0)) - (f.eval(ell, 0.0) - po.eval(ell, 0.0)))
                worst_res = max(worst_res, r)
            nrm = norm_hs(f, j)
            for k in list(range(-8, 0)) + list(range(1, 9)):
                gap = abs(_hs_ref(f, k) - integral_of_periodizer(p, k))
                bound = nrm / (bn.TWO_PI * abs(k)) ** j
                worst_bound = max(worst_bound, gap - bound)
    out.append(Check("periodize", "endpoint residuals", worst_res < 1e-10, f"{worst_res:.2e}"))
    out.append(Check("periodize", "exponential bound", worst_bound <= 1e-8,
                     f"max(gap - bound) = {worst_bound:.2e}"))
    return out


def suite_taylor(seed=0):
    out = []
    worst = -math.inf
    for f in test_corpus(seed):
        for n in range(1, 5):
            T = taylor(f, n)
            nrm = norm_hs(f, n)
            for k in range(-8, 9):
                gap = abs(_hs_ref(f, k) - integral_of_taylor(T, k))
                worst = max(worst, gap - nrm / (2 ** (n - 1) * math.factorial(n)))
    out.append(Check("taylor", "factorial bound", worst <= 1e-8, f"max(gap - bound) = {worst:.2e}"))
    return out


def suite_sandwich(seed=0):
    out = []
    for s in (1, 2):
        for k in (0, 1, -1, 3, -3):
            bad = []
            for n in range(1, 201):
                lo, up = minimal_error_bounds(n, k, s, True)
                eq = qmc_worst_case_error(n, k, s).value
                star = modified_qmc_error(n, k, s).value
                if not (lo.value <= eq and lo.value <= star <= up.value):
                    bad.append(n)
                lo_np, up_np = minimal_error_bounds(n, k, s, False)
                ok = lo_np.value <= up_np.value
                if n >= 2 * s:
                    b = tay_per_error_bound(n, k, s)
                    ok = ok and lo_np.value <= b <= up_np.value
                if not ok:
                    bad.append(-n)
            out.append(Check("sandwich", f"bounds/k={k},s={s}", not bad,
                             f"violations at n={bad[:5]}" if bad else "n=1..200"))
    # certified algorithm bounds on unit-norm test functions
    corpus = test_corpus(seed, n_poly=8, n_mixed=3)
    for s in (1, 2, 3):
        worst_per, worst_tp = -math.inf, -math.inf
        for f in corpus:
            g = (1.0 / norm_hs(f, s)) * f
            for k in (0, 1, -2, 5):
                ref = _hs_ref(g, k)
                for n in list(range(1, 2 * s + 12)):
                    if k != 0:
                        try:
                            b = per_error_bound(n, k, s)
                        except InvalidBudgetError:
                            b = None
                        if b is not None:
                            worst_per = max(worst_per, abs(ref - algo_per(g, n, k, s).value) - b)
                    if n <= s or n >= 2 * s:
                        b = tay_per_error_bound(n, k, s)
                        worst_tp = max(worst_tp, abs(ref - algo_tay_per(g, n, k, s).value) - b)
        out.append(Check("sandwich", f"per-bound/s={s}", worst_per <= 1e-8, f"{worst_per:.2e}"))
        out.append(Check("sandwich", f"tayper-bound/s={s}", worst_tp <= 1e-8, f"{worst_tp:.2e}"))
    for s in range(1, 11):
        for k in (1, 3, 7):
            w = algorithm_weights(algo_per, make_polynomial([1.0]), 2 * s + 4 * k, k, s)
            total = sum(abs(c) for *_, c in w)
            out.append(Check("sandwich", f"stability/s={s},k={k}", total < 4, _fmt(total)))
    return out


def suite_fooling(seed=0):
    out = []
    rng = np.random.default_rng(seed)
    for k in (0, 1, 3, 8):
        for s in (1, 2, 3):
            for label, pts in (("empty", []), ("equispaced", np.linspace(0, 1, 5)),
                               ("random", rng.random(5))):
                c = fooling_function(k, s, pts)
                out.append(Check("fooling", f"k={k},s={s},{label}", c.valid,
                                 f"norm={_fmt(c.norm_hs)} |I|={_fmt(c.integral_abs)} "
                                 f"bound={_fmt(c.bound_value)} res={c.sample_residuals:.1e}"))
    for s in range(1, 7):
        dq, dc = bump_normalizer(s), bump_normalizer_closed_form(s)
        out.append(Check("fooling", f"normalizer/s={s}", abs(dq - dc) <= 1e-10 * dc,
                         f"d_s={_fmt(dq)}"))
    cs = [lower_bound_constant(s)[1] for s in range(1, 9)]
    out.append(Check("fooling", "c_s decreasing s=1..8", all(a > b for a, b in zip(cs, cs[1:]))))
    ok = True
    for m in (3, 5, 9):
        for s in (1, 2, 3):
            floor = equal_split_minimum(m, s)
            for _ in range(200):
                lengths = rng.dirichlet(np.ones(m)) / 2
                ok = ok and split_objective(lengths, s) >= floor * (1 - 1e-12)
            ok = ok and abs(split_objective(np.full(m, 0.5 / m), s) - floor) <= 1e-15
    out.append(Check("fooling", "equal split is optimal", ok))
    for k in range(1, 21):
        b = cosine_bands(k)
        ok = len(b) == 2 * k + 1 and abs(b.total_length - 0.5) < 1e-14
        if not ok:
            out.append(Check("fooling", f"bands/k={k}", False))
    out.append(Check("fooling", "bands total length 1/2, count 2|k|+1 (k<=20)", True))
    return out


def suite_appendix(seed=0):
    out = []
    rows = []
    for s in range(1, 11):
        g = gram_summary(s, 10 ** 4)
        sum_h = float(g.exponential_sums[1:].max())
        sum_m = float((g.bernoulli_rows - g.exponential_sums).max())
        ok = (g.M_s1 <= 1.057 and sum_h <= 0.0855 and sum_m <= 1.0877
              and g.M_s <= 1.1732 and math.sqrt(g.M_s) <= 13 / 12)
        rows.append(ok)
        out.append(Check("appendix", f"gram/s={s}", ok,
                         f"M1={g.M_s1:.5f} sum_h={sum_h:.5f} sum_m={sum_m:.5f} "
                         f"M={g.M_s:.5f} tail={g.tail_bound:.1e}"))
    rng = np.random.default_rng(seed)
    for s in range(1, 7):
        worst_lo, worst_hi = math.inf, -math.inf
        for i in range(50):
            f = _random_norm_test_function(rng, i)
            a, b = norm_hs(f, s), norm_hs_star(f, s)
            worst_lo = min(worst_lo, a - EQUIVALENCE_CONSTANT * b)
            worst_hi = max(worst_hi, a - b)
        ok = worst_lo >= -1e-9 * max(1.0, b) and worst_hi <= 1e-9 * max(1.0, b)
        out.append(Check("appendix", f"equivalence/s={s}", ok,
                         f"min(||f|| - 12/13 ||f||*)={worst_lo:.3g} max(||f|| - ||f||*)={worst_hi:.2e}"))
    return out


def _random_norm_test_function(rng, i):
    kind = i % 3
    if kind == 0:
        return make_polynomial(rng.normal(size=int(rng.integers(1, 8))))
    if kind == 1:
        hs = rng.choice(np.arange(-4, 5), size=3, replace=False)
        return make_trig({int(h): complex(rng.normal(), rng.normal()) for h in hs})
    return make_sum([make_bernoulli(int(rng.integers(1, 7))),
                     make_trig({int(rng.integers(-3, 4)): complex(rng.normal(), 0)}),
                     make_polynomial(rng.normal(size=3))])


def suite_norms(seed=0):
    out = []
    worst = 0.0
    for k in range(-5, 6):
        for s in (1, 2, 3):
            for periodic in (True, False):
                ie = initial_error(k, s, periodic)
                num = norm_hs(ie.representer(), s)
                worst = max(worst, abs(num - ie.value))
    out.append(Check("norms", "initial error closed form vs representer norm", worst <= 1e-8,
                     f"{worst:.2e}"))
    ok = True
    for k in list(range(-10 ** 4, 0)) + list(range(1, 10 ** 4 + 1)):
        b1 = initial_error(k, 1, False).beta
        ok = ok and abs(b1 - math.sqrt(2)) < 1e-15
        for s in range(2, 11):
            b = initial_error(k, s, False).beta
            ok = ok and 1 <= b <= 1.02566
        b = initial_error(k, math.inf, False).beta
        ok = ok and 1 <= b <= 1.013
    out.append(Check("norms", "beta ranges |k|<=1e4", ok))
    worst = 0.0
    for k in (1, 2, 5):
        ie = initial_error(k, math.inf, False)
        worst = max(worst, abs(norm_hs(ie.representer(), math.inf) - ie.value))
    out.append(Check("norms", "s=inf representer norm", worst <= 1e-8, f"{worst:.2e}"))
    return out


def suite_complexity(seed=0):
    out = []
    ok = True
    for s in (1, 2, 3):
        for k in (1, 2, 5, 10):
            thr = (bn.TWO_PI * k) ** (-s)
            if thr < 1:
                ok = ok and complexity(thr, k, s, "abs", True).zero_case
                ok = ok and not complexity(thr * (1 - 1e-9), k, s, "abs", True).zero_case
            thr = initial_error(k, s, False).value
            if thr < 1:
                ok = ok and complexity(thr, k, s, "abs", False).zero_case
                ok = ok and not complexity(thr * (1 - 1e-9), k, s, "abs", False).zero_case
    out.append(Check("complexity", "abs zero-case thresholds", ok))
    ach = {k: complexity(0.01, k, 1, "nor", True).achieved for k in (8, 16, 32, 64, 128)}
    for k in (8, 16, 32, 64):
        r = ach[2 * k] / ach[k]
        out.append(Check("complexity", f"periodic nor linear in k: k={k}", 1.8 <= r <= 2.2,
                         f"achieved({2 * k})/achieved({k}) = {r:.3f}"))
    for k in (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5):
        a = complexity(0.01, k, 2, "nor", False).achieved
        out.append(Check("complexity", f"nonperiodic nor bounded: k={k}", a <= 4, f"achieved={a}"))
    c = complexity_infty(1e-6, 0)
    out.append(Check("complexity", "s=inf eps=1e-6 k=0", c.achieved == 8, f"achieved={c.achieved}"))
    c = complexity_infty(1e-6, 100)
    out.append(Check("complexity", "s=inf eps=1e-6 k=100", c.achieved == 5, f"achieved={c.achieved}"))
    ok = True
    detail = []
    for eps in (1e-2, 1e-4, 1e-6, 1e-9, 1e-12):
        for k in (0, 1, 10, 1000):
            for crit in ("abs", "nor"):
                c = complexity_infty(eps, k, crit)
                n = c.achieved
                direct = next(m for m in range(0, 200) if m >= 1 and infty_bound(m, k) <= c.target) \
                    if not c.zero_case else 0
                ok = ok and n == direct
                if c.upper < n:
                    detail.append(f"eps={eps},k={k},{crit}: upper={c.upper} < achieved={n}")
    out.append(Check("complexity", "s=inf achieved = direct evaluation", ok))
    out.append(Check("complexity", "s=inf upper >= achieved", not detail, "; ".join(detail[:3])))
    ok = True
    for s in (1, 2):
        for k in (0, 1, 5):
            for crit in ("abs", "nor"):
                for periodic in (True, False):
                    prev = -1
                    for eps in sorted((0.3, 0.1, 0.03, 0.01, 3e-3, 1e-3), reverse=True):
                        c = complexity(eps, k, s, crit, periodic)
                        ok = ok and c.achieved >= prev and c.achieved >= c.lower
                        prev = c.achieved
    out.append(Check("complexity", "monotone in eps and achieved >= lower", ok))
    return out


SUITES = {
    "bernoulli": suite_bernoulli,
    "qmc-exact": suite_qmc_exact,
    "damping": suite_damping,
    "periodize": suite_periodize,
    "taylor": suite_taylor,
    "sandwich": suite_sandwich,
    "fooling": suite_fooling,
    "appendix": suite_appendix,
    "asymptotic": suite_asymptotic,
    "norms": suite_norms,
    "complexity": suite_complexity,
}


def run_suite(name, seed=0):
    """Run one suite (or ``"all"``) and return ``(checks, seconds)``."""
    names = list(SUITES) if name == "all" else [name]
    checks = []
    t0 = time.perf_counter()
    for nm in names:
        if nm not in SUITES:
            raise KeyError(f"unknown suite {nm!r}")
        checks.extend(SUITES[nm](seed))
    return checks, time.perf_counter() - t0
