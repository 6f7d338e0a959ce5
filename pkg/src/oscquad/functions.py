"""Integrand oracles, built-in test families and the reference integrator.

A :class:`FunctionOracle` answers ``f^(l)(x)`` for derivative orders up to
``max_order``.  All built-in families are differentiated analytically.

The reference integrator is panel-adaptive Gauss-Legendre (order 15) with
panel widths capped at ``1/(4 max(1, |k|))``.  It shares no code with the
algorithms it is used to check.
"""

import math
import os
import re
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .bernoulli import bernoulli_eval, i_power, TWO_PI
from .exceptions import (DerivativeOrderError, NonFiniteIntegrandError,
                         QuadratureError, SpecParseError, SupportError)

__all__ = [
    "FunctionOracle",
    "TrigPolynomial",
    "QuadratureResult",
    "make_exponential",
    "make_bernoulli",
    "make_centered_monomial",
    "make_trig",
    "make_polynomial",
    "make_smooth_bump",
    "make_sum",
    "make_constant",
    "parse_function_spec",
    "adaptive_integrate",
    "reference_integral",
    "numeric_l2_norm",
    "integral_of_derivative",
    "default_tol",
]

DEFAULT_TOL = 1e-12
GL_ORDER = 15
MAX_PANELS = 2 ** 20

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)


def default_tol():
    """Oracle tolerance, overridable through ``OSCQUAD_TOL``."""
    raw = os.environ.get("OSCQUAD_TOL")
    if raw:
        return float(raw)
    return DEFAULT_TOL


def _fmt(x):
    x = float(x)
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _fmt_complex(z):
    z = complex(z)
    sign = "-" if z.imag < 0 or (z.imag == 0 and math.copysign(1, z.imag) < 0) else "+"
    return f"{_fmt(z.real)}{sign}{_fmt(abs(z.imag))}i"


class FunctionOracle:
    """Value-and-derivative oracle on ``[0, 1]``.

    ``func(order, x)`` must accept a float array ``x``.  Subclasses override
    :meth:`_eval` instead.
    """

    def __init__(self, func=None, max_order=math.inf, label="f",
                 periodic=False, breakpoints=()):
        self._func = func
        self.max_order = max_order
        self.label = label
        self.periodic = periodic
        self.breakpoints = tuple(breakpoints)

    def _eval(self, order, x):
        return self._func(order, x)

    def eval(self, order, x):
        order = int(order)
        if order < 0 or order > self.max_order:
            raise DerivativeOrderError(
                f"{self.label}: derivative order {order} not supported "
                f"(max {self.max_order})")
        xa = np.asarray(x, dtype=float)
        out = np.asarray(self._eval(order, xa), dtype=complex)
        if out.shape != xa.shape:
            out = np.broadcast_to(out, xa.shape).copy()
        if out.ndim == 0:
            return complex(out)
        return out

    def __call__(self, x):
        return self.eval(0, x)

    def __add__(self, other):
        return make_sum([self, other])

    def __sub__(self, other):
        return SumOracle([self, other], [1.0, -1.0])

    def __neg__(self):
        return SumOracle([self], [-1.0])

    def __mul__(self, scalar):
        if isinstance(scalar, FunctionOracle):
            return NotImplemented
        return SumOracle([self], [complex(scalar)])

    __rmul__ = __mul__

    def __repr__(self):
        return f"<{type(self).__name__} {self.label}>"


class _Exponential(FunctionOracle):
    def __init__(self, h):
        super().__init__(label=f"exp:h={int(h)}", periodic=True)
        self.h = int(h)

    def _eval(self, order, x):
        factor = i_power(order) * (TWO_PI * self.h) ** order
        return factor * np.exp(2j * np.pi * np.mod(self.h * x, 1.0))


class _Bernoulli(FunctionOracle):
    def __init__(self, m):
        super().__init__(label=f"bernoulli:m={int(m)}", periodic=(m == 0))
        self.m = int(m)
        bernoulli_eval(self.m, 0.0)   # degree check

    def _eval(self, order, x):
        if order > self.m:
            return np.zeros_like(x)
        return bernoulli_eval(self.m - order, x)


class _CenteredMonomial(FunctionOracle):
    """``(x - 1/2)^l / l!``, the basis behind the Taylor integrals."""

    def __init__(self, ell):
        super().__init__(label=f"mono:l={int(ell)}", periodic=(ell == 0))
        self.ell = int(ell)

    def _eval(self, order, x):
        if order > self.ell:
            return np.zeros_like(x)
        p = self.ell - order
        return (x - 0.5) ** p / math.factorial(p)


class _Polynomial(FunctionOracle):
    def __init__(self, coeffs):
        c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        self.coeffs = c
        if np.all(c.imag == 0):
            body = ",".join(_fmt(v.real) for v in c)
        else:
            body = ",".join(_fmt_complex(v) for v in c)
        super().__init__(label=f"poly:{body}", periodic=(c.size == 1))

    def _eval(self, order, x):
        c = self.coeffs
        if order:
            if order >= c.size:
                return np.zeros_like(x)
            c = npoly.polyder(c, order)
        return npoly.polyval(x, c)


class TrigPolynomial(FunctionOracle):
    """Finite Fourier series ``sum_h c_h e_h(x)``."""

    _CHUNK = 2 ** 21

    def __init__(self, coeffs):
        items = sorted((int(h), complex(c)) for h, c in dict(coeffs).items())
        self.coeffs = dict(items)
        self._h = np.array([h for h, _ in items], dtype=float)
        self._c = np.array([c for _, c in items], dtype=complex)
        body = ";".join(f"{h}={_fmt_complex(c)}" for h, c in items)
        super().__init__(label=f"trig:{body}", periodic=True)

    def coefficient(self, h):
        return self.coeffs.get(int(h), 0j)

    def _eval(self, order, x):
        weights = self._c * i_power(order) * (TWO_PI * self._h) ** order
        flat = x.reshape(-1)
        out = np.empty(flat.shape, dtype=complex)
        step = max(1, self._CHUNK // max(1, self._h.size))
        for start in range(0, flat.size, step):
            xs = flat[start:start + step]
            phase = np.mod(np.multiply.outer(xs, self._h), 1.0)
            out[start:start + step] = np.exp(2j * np.pi * phase) @ weights
        return out.reshape(x.shape)


class _Bump(FunctionOracle):
    """``sign * scale * cos(pi (x - y) / (2 w))^(2 s)`` on ``[y - w, y + w]``."""

    def __init__(self, y, w, s, sign=1.0, scale=1.0):
        self.y, self.w, self.s = float(y), float(w), int(s)
        self.sign, self.scale = float(sign), float(scale)
        label = (f"bump:{_fmt(self.y)},{_fmt(self.w)},{self.s},"
                 f"{_fmt(self.sign)},{_fmt(self.scale)}")
        super().__init__(label=label, max_order=2 * self.s - 1,
                         periodic=True, breakpoints=(self.y - self.w, self.y + self.w))
        # cos^{2s} t = 4^{-s} [C(2s,s) + 2 sum_r C(2s,s-r) cos(2 r t)]
        r = np.arange(1, self.s + 1)
        self._freq = r * np.pi / self.w
        self._amp = 2.0 * np.array([math.comb(2 * self.s, self.s - int(j)) for j in r]) / 4.0 ** self.s

    def _eval(self, order, x):
        u = x - self.y
        inside = np.abs(u) < self.w
        amp = self.sign * self.scale
        if order == 0:
            vals = np.cos(np.pi * u / (2 * self.w)) ** (2 * self.s)
        else:
            vals = (self._amp * self._freq ** order
                    * np.cos(np.multiply.outer(u, self._freq) + order * np.pi / 2)).sum(axis=-1)
        return np.where(inside, amp * vals, 0.0)


class SumOracle(FunctionOracle):
    """Linear combination ``sum_i w_i f_i`` of oracles."""

    def __init__(self, parts, weights=None):
        parts = list(parts)
        if weights is None:
            weights = [1.0] * len(parts)
        self.parts = parts
        self.weights = [complex(w) for w in weights]
        if all(w == 1 for w in self.weights):
            label = "sum:(" + "|".join(p.label for p in parts) + ")"
        else:
            label = " + ".join(f"({_fmt_complex(w)})*({p.label})"
                               for w, p in zip(self.weights, parts))
        bps = sorted({b for p in parts for b in p.breakpoints})
        super().__init__(label=label,
                         max_order=min((p.max_order for p in parts), default=math.inf),
                         periodic=all(p.periodic for p in parts),
                         breakpoints=bps)

    def _eval(self, order, x):
        out = np.zeros(x.shape, dtype=complex)
        for w, p in zip(self.weights, self.parts):
            out = out + w * p.eval(order, x)
        return out


def make_exponential(h):
    """``e_h(x) = exp(2 pi i h x)``."""
    return _Exponential(h)


def make_bernoulli(m):
    """Normalized Bernoulli polynomial ``B*_m``."""
    return _Bernoulli(m)


def make_centered_monomial(ell):
    """``(x - 1/2)^ell / ell!``."""
    return _CenteredMonomial(ell)


def make_trig(coeffs):
    return TrigPolynomial(coeffs)


def make_polynomial(coeffs):
    """Polynomial with monomial coefficients ``coeffs[0] + coeffs[1] x + ...``."""
    return _Polynomial(coeffs)


def make_constant(c=1.0):
    return _Polynomial([c])


def make_smooth_bump(y, w, s, sign=1.0, scale=1.0):
    """Compactly supported ``C^(2s-1)`` bump used by the fooling functions."""
    if w <= 0 or s < 1:
        raise SupportError("bump needs w > 0 and s >= 1")
    if y - w < -1e-15 or y + w > 1 + 1e-15:
        raise SupportError(f"support [{y - w}, {y + w}] leaves [0, 1]")
    return _Bump(y, w, s, sign, scale)


def make_sum(parts):
    return SumOracle(parts)


# ---------------------------------------------------------------------------
# mini-language

def _split_top(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_complex(text):
    t = text.strip().replace(" ", "")
    if t.endswith("i"):
        t = t[:-1] + "j"
    return complex(t)


_KV = re.compile(r"^\s*(\w+)\s*=\s*(-?\d+)\s*$")


def _int_param(body, name):
    m = _KV.match(body)
    if not m or m.group(1) != name:
        raise SpecParseError(f"expected '{name}=<int>', got {body!r}")
    return int(m.group(2))


def parse_function_spec(text):
    """Parse the CLI function mini-language into an oracle.

    Forms: ``exp:h=3``, ``bernoulli:m=4``, ``mono:l=2``, ``poly:c0,c1,...``,
    ``trig:h1=re+imi;h2=...``, ``bump:y,w,s,sign,scale`` and
    ``sum:(spec|spec|...)``.  ``parse_function_spec(f.label).label == f.label``
    for any parsed ``f``.
    """
    text = text.strip()
    kind, sep, body = text.partition(":")
    if not sep:
        raise SpecParseError(f"missing ':' in function spec {text!r}")
    try:
        if kind == "exp":
            return make_exponential(_int_param(body, "h"))
        if kind == "bernoulli":
            return make_bernoulli(_int_param(body, "m"))
        if kind == "mono":
            return make_centered_monomial(_int_param(body, "l"))
        if kind == "poly":
            coeffs = [_parse_complex(c) for c in body.split(",")]
            if all(c.imag == 0 for c in coeffs):
                coeffs = [c.real for c in coeffs]
            return make_polynomial(coeffs)
        if kind == "trig":
            coeffs = {}
            for item in body.split(";"):
                h, eq, val = item.partition("=")
                if not eq:
                    raise SpecParseError(f"bad trig term {item!r}")
                coeffs[int(h)] = coeffs.get(int(h), 0) + _parse_complex(val)
            return make_trig(coeffs)
        if kind == "bump":
            vals = [float(v) for v in body.split(",")]
            if len(vals) != 5:
                raise SpecParseError("bump needs y,w,s,sign,scale")
            y, w, s, sign, scale = vals
            if s != int(s):
                raise SpecParseError("bump exponent must be an integer")
            return make_smooth_bump(y, w, int(s), sign, scale)
        if kind == "sum":
            body = body.strip()
            if not (body.startswith("(") and body.endswith(")")):
                raise SpecParseError("sum needs parenthesised parts")
            return make_sum([parse_function_spec(p) for p in _split_top(body[1:-1], "|")])
    except SpecParseError:
        raise
    except (ValueError, TypeError) as exc:
        if isinstance(exc, SupportError):
            raise
        raise SpecParseError(f"cannot parse {text!r}: {exc}") from exc
    raise SpecParseError(f"unknown function kind {kind!r}")


# ---------------------------------------------------------------------------
# reference quadrature

@dataclass
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    subdivisions: int


def _gl(func, a, b):
    # a, b: arrays of panel endpoints; returns (estimate, sum |w f|)
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    with np.errstate(over="ignore", invalid="ignore"):
        fx = np.asarray(func(x), dtype=complex).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        raise NonFiniteIntegrandError("integrand is not finite")
    wf = fx * (_GL_WEIGHTS * half[:, None])
    return wf.sum(axis=1), np.abs(wf).sum(axis=1)


def adaptive_integrate(func, a, b, tol=None, rtol=0.0, max_width=None,
                       breakpoints=(), max_panels=MAX_PANELS):
    """Integrate ``func`` over ``[a, b]`` by adaptive panel bisection.

    Each panel is accepted when the order-15 Gauss-Legendre estimate and the
    sum over its two halves agree to within the panel's share of
    ``max(tol, rtol * scale)``, or when the gap is at roundoff level.  The
    scale is the first-pass estimate of ``int |func|``.
    ``func`` receives a 2-d float array and must return values of equal shape.
    """
    if tol is None:
        tol = default_tol()
    a, b = float(a), float(b)
    if b <= a:
        return QuadratureResult(0j, 0.0, 0)
    length = b - a
    cuts = {a, b}
    cuts.update(float(p) for p in breakpoints if a < p < b)
    edges = np.array(sorted(cuts))
    if max_width is not None:
        refined = [edges[:1]]
        for lo, hi in zip(edges[:-1], edges[1:]):
            pieces = max(1, math.ceil((hi - lo) / max_width - 1e-12))
            refined.append(np.linspace(lo, hi, pieces + 1)[1:])
        edges = np.concatenate(refined)
    lo, hi = edges[:-1], edges[1:]

    whole, absum = _gl(func, lo, hi)
    scale = float(absum.sum())
    budget = max(tol, rtol * scale)
    total = 0j
    err_total = 0.0
    accepted = 0
    while lo.size:
        if accepted + 2 * lo.size > max_panels:
            raise QuadratureError(
                f"tolerance {tol:g} not met within {max_panels} panels")
        mid = 0.5 * (lo + hi)
        left, labs = _gl(func, lo, mid)
        right, rabs = _gl(func, mid, hi)
        halves = left + right
        err = np.abs(halves - whole)
        share = budget * (hi - lo) / length
        noise = 64 * np.finfo(float).eps * (labs + rabs)
        ok = (err <= share) | (err <= noise) | ((hi - lo) <= 1e-13 * length)
        total += halves[ok].sum()
        err_total += float(np.maximum(err[ok], 0.0).sum())
        accepted += int(ok.sum())
        bad = ~ok
        lo_b, mid_b, hi_b = lo[bad], mid[bad], hi[bad]
        lo = np.concatenate([lo_b, mid_b])
        hi = np.concatenate([mid_b, hi_b])
        whole = np.concatenate([left[bad], right[bad]])
    if err_total > budget * 1.0000001:
        raise QuadratureError(
            f"error estimate {err_total:.3g} exceeds tolerance {tol:g}")
    return QuadratureResult(complex(total), err_total, accepted)


def reference_integral(f, k, tol=None):
    """Truth value of ``I_k(f) = int_0^1 f(x) exp(-2 pi i k x) dx``."""
    if tol is None:
        tol = default_tol()
    k = int(k)

    def integrand(x):
        return f.eval(0, x) * np.exp(-2j * np.pi * np.mod(k * x, 1.0))

    return adaptive_integrate(integrand, 0.0, 1.0, tol=tol,
                              max_width=1.0 / (4 * max(1, abs(k))),
                              breakpoints=f.breakpoints)


def integral_of_derivative(f, ell, tol=None):
    """``int_0^1 f^(ell)(x) dx`` by quadrature."""
    res = adaptive_integrate(lambda x: f.eval(ell, x), 0.0, 1.0,
                             tol=default_tol() if tol is None else tol,
                             rtol=1e-13, max_width=0.25,
                             breakpoints=f.breakpoints)
    return res.value


def numeric_l2_norm(f, ell, tol=None):
    """``||f^(ell)||_{L2[0,1]}`` by quadrature of ``|f^(ell)|^2``."""
    res = adaptive_integrate(lambda x: np.abs(f.eval(ell, x)) ** 2, 0.0, 1.0,
                             tol=default_tol() if tol is None else tol,
                             rtol=1e-13, max_width=0.25,
                             breakpoints=f.breakpoints)
    return math.sqrt(max(res.value.real, 0.0))
