"""Constructive lower bounds: fooling functions built from smooth bumps.

Given sample points ``x_1..x_n`` we place one bump on every piece of the set
where ``|cos(2 pi k x)| >= 1/sqrt(2)`` after that set is cut at the sample
points.  The resulting function vanishes, with its first ``s-1`` derivatives,
at every sample point, so no algorithm using those points can tell it apart
from zero, yet its integral against ``exp(-2 pi i k x)`` is large.

The bump profile is ``Phi(x) = d_s cos(pi x / 2)^(2s)`` on ``[-1, 1]``.  The
constant ``d_s`` normalises ``Phi`` in the ``[-1, 1]`` analogue of the
``H^s`` norm: squared means of ``Phi^(l)`` for ``l < s`` plus the squared
``L2`` norm of ``Phi^(s)``.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import PreconditionError
from .functions import _Bump, adaptive_integrate, make_smooth_bump, make_sum, reference_integral
from .sobolev import norm_hs

__all__ = [
    "BandPartition",
    "LowerBoundCertificate",
    "cosine_bands",
    "refine_with_samples",
    "bump_normalizer",
    "bump_normalizer_closed_form",
    "lower_bound_constant",
    "fooling_function",
    "split_objective",
    "equal_split_minimum",
]


@dataclass(frozen=True)
class BandPartition:
    """Ordered disjoint subintervals of ``[0, 1]``."""

    intervals: tuple
    origin: str = "cosine_band"
    k: int = 0

    @property
    def lengths(self):
        return np.array([b - a for a, b in self.intervals])

    @property
    def total_length(self):
        return float(self.lengths.sum())

    @property
    def midpoints(self):
        return np.array([0.5 * (a + b) for a, b in self.intervals])

    @property
    def reciprocal_lengths(self):
        return 1.0 / self.lengths

    def __len__(self):
        return len(self.intervals)


def cosine_bands(k):
    """Maximal intervals on which ``|cos(2 pi k x)| >= 1/sqrt(2)``."""
    k = abs(int(k))
    if k == 0:
        return BandPartition(((0.0, 1.0),), "cosine_band", 0)
    half = 1.0 / (8 * k)
    out = [(0.0, half)]
    for m in range(1, 2 * k):
        c = m / (2 * k)
        out.append((c - half, c + half))
    out.append((1.0 - half, 1.0))
    return BandPartition(tuple(out), "cosine_band", k)


def refine_with_samples(bands, points):
    """Split every band at the sample points lying strictly inside it."""
    pts = sorted({float(p) for p in np.atleast_1d(np.asarray(points, dtype=float))})
    if any(p < 0 or p > 1 for p in pts):
        raise PreconditionError("sample points must lie in [0, 1]")
    out = []
    for a, b in bands.intervals:
        cuts = [a] + [p for p in pts if a < p < b] + [b]
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            if hi > lo:
                out.append((lo, hi))
    return BandPartition(tuple(out), "sample_split", bands.k)


def _profile(s):
    # cos(pi x / 2)^(2s) on [-1, 1]
    return _Bump(0.0, 1.0, s)


def _profile_norm_sq(s):
    g = _profile(s)
    total = 0.0
    for ell in range(s):
        mean = adaptive_integrate(lambda x: g.eval(ell, x), -1.0, 1.0, tol=1e-15,
                                  rtol=1e-14, max_width=0.125).value.real
        total += mean * mean
    sq = adaptive_integrate(lambda x: np.abs(g.eval(s, x)) ** 2, -1.0, 1.0,
                            tol=1e-15, rtol=1e-14, max_width=0.125).value.real
    return total + sq


@lru_cache(maxsize=None)
def bump_normalizer(s):
    """``d_s`` making ``d_s cos(pi x/2)^(2s)`` a unit vector on ``[-1, 1]``."""
    s = int(s)
    if s < 1:
        raise PreconditionError("s must be >= 1")
    return 1.0 / math.sqrt(_profile_norm_sq(s))


def bump_normalizer_closed_form(s):
    """``d_s`` from the cosine expansion of ``cos^(2s)``; used as a cross-check.

    With ``cos^(2s) t = 4^(-s) [C(2s,s) + 2 sum_r C(2s,s-r) cos(2rt)]`` the
    mean over ``[-1, 1]`` is ``2 C(2s,s)/4^s``, higher means vanish and the
    ``s``-th derivative has squared norm ``4^(1-2s) sum_r C(2s,s-r)^2 (r pi)^(2s)``.
    """
    mean = 2.0 * math.comb(2 * s, s) / 4.0 ** s
    deriv = 4.0 ** (1 - 2 * s) * sum(math.comb(2 * s, s - r) ** 2 * (r * math.pi) ** (2 * s)
                                     for r in range(1, s + 1))
    return 1.0 / math.sqrt(mean * mean + deriv)


@lru_cache(maxsize=None)
def lower_bound_constant(s):
    """Return ``(c_tilde_s, c_s)`` with ``c_s = c_tilde_s / (2 * 4^s)``."""
    s = int(s)
    d = bump_normalizer(s)
    g = _profile(s)
    mass = adaptive_integrate(lambda x: g.eval(0, x), -1.0, 1.0, tol=1e-15,
                              rtol=1e-14, max_width=0.125).value.real
    c_tilde = d / 2.0 ** (s + 1.5) * mass
    return c_tilde, c_tilde / (2.0 * 4.0 ** s)


def split_objective(lengths, s):
    """``sum_i n_i^(-s-1)`` with ``n_i = 1/length_i``."""
    return float(np.sum(np.asarray(lengths, dtype=float) ** (s + 1)))


def equal_split_minimum(m, s):
    """Minimum of :func:`split_objective` over ``m`` lengths summing to ``1/2``."""
    return 1.0 / (2.0 ** (s + 1) * m ** s)


@dataclass
class LowerBoundCertificate:
    f: object
    norm_hs: float
    integral_abs: float
    sample_residuals: float
    bound_value: float
    bands: BandPartition = None
    rescaled: bool = False
    k: int = 0
    s: int = 1
    n: int = 0
    raw_norm: float = None

    @property
    def valid(self):
        return (self.sample_residuals < 1e-12 and self.norm_hs <= 1 + 1e-9
                and self.integral_abs >= self.bound_value - 1e-9)

    def to_dict(self):
        return {
            "k": self.k, "s": self.s, "n": self.n,
            "function": self.f.label,
            "norm_hs": self.norm_hs,
            "integral_abs": self.integral_abs,
            "sample_residuals": self.sample_residuals,
            "bound_value": self.bound_value,
            "bands": len(self.bands) if self.bands is not None else 0,
            "rescaled": self.rescaled,
            "raw_norm": self.raw_norm,
            "valid": self.valid,
        }


def fooling_function(k, s, sample_points=()):
    """Build the fooling function for the given nodes and check it numerically."""
    k, s = int(k), int(s)
    if s < 1:
        raise PreconditionError("s must be >= 1")
    pts = np.asarray(list(sample_points), dtype=float)
    bands = refine_with_samples(cosine_bands(k), pts)
    d = bump_normalizer(s)
    bumps = []
    for (a, b), y in zip(bands.intervals, bands.midpoints):
        w = 0.5 * (b - a)
        sign = 1.0 if math.cos(2.0 * math.pi * k * y) >= 0 else -1.0
        bumps.append(make_smooth_bump(y, w, s, sign, d * w ** s))
    f = make_sum(bumps)

    norm = raw_norm = norm_hs(f, s)
    value = reference_integral(f, k).value
    integral = abs(value.real)
    # scale onto the unit sphere: sample values stay zero and |I_k(f)| can only grow
    rescaled = False
    if norm > 0 and norm != 1.0:
        f = (1.0 / norm) * f
        integral /= norm
        norm = norm_hs(f, s)
        rescaled = True

    residual = 0.0
    if pts.size:
        for ell in range(s):
            residual = max(residual, float(np.max(np.abs(f.eval(ell, pts)))))

    _, c_s = lower_bound_constant(s)
    n = int(pts.size)
    # the bound is stated for n >= 1; fewer nodes can only do worse
    bound = c_s / (max(n, 1) + abs(k)) ** s
    return LowerBoundCertificate(f, norm, integral, residual, bound, bands,
                                 rescaled, k, s, n, raw_norm)
