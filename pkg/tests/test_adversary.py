import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oscquad.adversary import (bump_normalizer, bump_normalizer_closed_form, cosine_bands,
                               equal_split_minimum, fooling_function, lower_bound_constant,
                               refine_with_samples, split_objective)
from oscquad.functions import adaptive_integrate
from oscquad.exceptions import PreconditionError


def test_cosine_band_examples():
    assert cosine_bands(0).intervals == ((0.0, 1.0),)
    b = cosine_bands(1)
    np.testing.assert_allclose(b.intervals, [(0, 1 / 8), (3 / 8, 5 / 8), (7 / 8, 1)])


@given(st.integers(-40, 40))
def test_band_geometry(k):
    b = cosine_bands(k)
    if k:
        assert len(b) == 2 * abs(k) + 1
        assert b.total_length == pytest.approx(0.5, abs=1e-13)
        x = np.concatenate([np.linspace(a, c, 7) for a, c in b.intervals])
        assert np.all(np.abs(np.cos(2 * math.pi * k * x)) >= 1 / math.sqrt(2) - 1e-12)


def test_refine_examples():
    r = refine_with_samples(cosine_bands(1), [0.5])
    np.testing.assert_allclose(r.intervals, [(0, 1 / 8), (3 / 8, 1 / 2), (1 / 2, 5 / 8), (7 / 8, 1)])
    assert refine_with_samples(cosine_bands(1), [0.2, 0.8]).intervals == cosine_bands(1).intervals
    r = refine_with_samples(cosine_bands(0), [1 / 3, 2 / 3])
    np.testing.assert_allclose(r.lengths, [1 / 3] * 3)
    with pytest.raises(PreconditionError):
        refine_with_samples(cosine_bands(0), [1.5])


@given(st.integers(0, 6), st.lists(st.floats(0, 1), max_size=8))
def test_refine_counts(k, pts):
    b = cosine_bands(k)
    r = refine_with_samples(b, pts)
    assert len(b) <= len(r) <= len(b) + len(pts)
    assert r.total_length == pytest.approx(b.total_length, abs=1e-12)


def test_normalizer_examples():
    assert bump_normalizer(1) == pytest.approx(1 / math.sqrt(1 + math.pi ** 2 / 4), rel=1e-12)
    for s in range(1, 7):
        assert bump_normalizer(s) == pytest.approx(bump_normalizer_closed_form(s), rel=1e-10)


def test_lower_bound_constant_examples():
    ct, c = lower_bound_constant(1)
    assert ct == pytest.approx(bump_normalizer(1) / 2 ** 2.5, rel=1e-12)
    assert ct == pytest.approx(0.0949, abs=1e-4)
    assert c == pytest.approx(0.01187, abs=1e-5)
    ct2, c2 = lower_bound_constant(2)
    assert ct2 == pytest.approx(bump_normalizer(2) / 2 ** 3.5 * 0.75, rel=1e-12)
    assert c2 == pytest.approx(ct2 / 32)
    cs = [lower_bound_constant(s)[1] for s in range(1, 9)]
    assert all(a > b for a, b in zip(cs, cs[1:]))


def test_fooling_examples():
    c = fooling_function(0, 1)
    # the certificate is scaled to unit norm; undo that to see the raw bump sum
    v = adaptive_integrate(c.f, 0, 1).value.real * c.raw_norm
    assert v == pytest.approx(bump_normalizer(1) / 4, rel=1e-10)
    assert c.valid and c.norm_hs == pytest.approx(1.0, abs=1e-12)
    c = fooling_function(1, 1)
    assert split_objective(c.bands.lengths, 1) == pytest.approx(3 / 32)
    assert c.integral_abs * c.raw_norm >= lower_bound_constant(1)[0] * 3 / 32
    edges = [a for a, _ in cosine_bands(2).intervals[1:]]
    c = fooling_function(2, 3, edges)
    assert c.sample_residuals < 1e-12


@pytest.mark.parametrize("k", [0, 1, 3, 8])
@pytest.mark.parametrize("s", [1, 2, 3])
def test_certificate_grid(k, s, rng):
    for pts in ([], np.linspace(0, 1, 5), rng.random(5)):
        c = fooling_function(k, s, pts)
        assert c.valid, c.to_dict()


@given(st.integers(2, 10), st.integers(1, 4), st.integers(0, 2 ** 32 - 1))
def test_equal_split_is_optimal(m, s, seed):
    lengths = np.random.default_rng(seed).dirichlet(np.ones(m)) / 2
    assert split_objective(lengths, s) >= equal_split_minimum(m, s) * (1 - 1e-12)


def test_fooling_derivatives_finite():
    c = fooling_function(3, 2, [0.1, 0.45])
    x = np.linspace(0, 1, 4001)
    assert np.all(np.isfinite(c.f.eval(2, x)))
