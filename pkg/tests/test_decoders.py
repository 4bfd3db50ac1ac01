"""ZF, SIC, MMSE-augmented, and reduction-aided decoding chains."""

import numpy as np
import pytest

from latprox.basis import Basis, augment_mmse
from latprox.decoders import (
    DecodeInstance,
    DecoderChain,
    lr_aided_decode,
    ml_decode_finite,
    mmse_wrap,
    sic_coefs_batch,
    sic_decode,
    zf_coefs_batch,
    zf_decode,
)
from latprox.errors import ConfigInvalid, NonPositiveSigma
from latprox.reduction import ReductionParams

from conftest import random_basis


def _noisy_instance(rng, n, scale, **kw):
    b = random_basis(rng, n)
    x = rng.integers(-3, 4, size=n)
    smallest_col = np.min(np.linalg.norm(b.entries, axis=0))
    y = b.entries @ x + scale * smallest_col * rng.standard_normal(n)
    return DecodeInstance(basis=b, y=y, **kw), x


class TestInstanceValidation:
    def test_length_mismatch(self, rng):
        b = random_basis(rng, 3)
        with pytest.raises(ConfigInvalid):
            DecodeInstance(basis=b, y=np.zeros(4))

    def test_alphabet_order(self, rng):
        b = random_basis(rng, 2)
        with pytest.raises(ConfigInvalid):
            DecodeInstance(basis=b, y=np.zeros(2), alphabet=(3, 0))

    def test_sigma_positive(self, rng):
        b = random_basis(rng, 2)
        with pytest.raises(NonPositiveSigma):
            DecodeInstance(basis=b, y=np.zeros(2), sigma=-0.1)


def test_chain_validation_and_labels():
    c = DecoderChain(detector="zf", criterion="plain", reduction=None)
    assert "zf" in c.label
    d = DecoderChain(detector="sic", criterion="mmse",
                     reduction=ReductionParams(method="lll", delta=0.75, side="dual"))
    assert "dual" in d.label and "sic" in d.label
    with pytest.raises(ConfigInvalid):
        DecoderChain(detector="mle")
    with pytest.raises(ConfigInvalid):
        DecoderChain(criterion="map")
    with pytest.raises(ConfigInvalid):
        DecoderChain(boundary="wrap")


def test_zf_exact_on_clean_points(rng):
    for _ in range(20):
        inst, x = _noisy_instance(rng, 4, 0.0)
        assert np.array_equal(zf_decode(inst), x)


def test_sic_exact_on_clean_points(rng):
    for _ in range(20):
        inst, x = _noisy_instance(rng, 4, 0.0)
        assert np.array_equal(sic_decode(inst), x)


def test_detectors_tolerate_small_noise(rng):
    hits = 0
    for _ in range(40):
        inst, x = _noisy_instance(rng, 3, 0.01)
        hits += np.array_equal(zf_decode(inst), x)
        hits += np.array_equal(sic_decode(inst), x)
    assert hits >= 76  # a couple of ill-conditioned misses are acceptable


def test_boundary_clamp(rng):
    b = Basis(np.eye(2))
    inst = DecodeInstance(basis=b, y=np.array([5.2, -1.4]), alphabet=(0, 3))
    assert np.array_equal(zf_decode(inst, boundary="clamp"), [3, 0])
    assert np.array_equal(sic_decode(inst, boundary="clamp"), [3, 0])
    # ignore keeps the unconstrained estimate
    assert np.array_equal(zf_decode(inst, boundary="ignore"), [5, -1])


def test_mmse_wrap_augments(rng):
    b = random_basis(rng, 3)
    inst = DecodeInstance(basis=b, y=rng.standard_normal(3), sigma=0.4)
    wrapped = mmse_wrap(inst)
    assert wrapped.basis.entries.shape == (6, 3)
    assert np.allclose(wrapped.basis.entries[:3], b.entries)
    assert np.allclose(wrapped.basis.entries[3:], 0.4 * np.eye(3))
    assert np.allclose(wrapped.y, np.concatenate([inst.y, np.zeros(3)]))
    with pytest.raises(NonPositiveSigma):
        mmse_wrap(DecodeInstance(basis=b, y=np.zeros(3)))  # sigma missing


def test_mmse_approaches_zf_at_vanishing_noise(rng):
    for _ in range(10):
        inst, x = _noisy_instance(rng, 3, 0.005, sigma=1e-8)
        plain = zf_decode(inst)
        wrapped = zf_decode(mmse_wrap(inst))
        assert np.array_equal(plain, wrapped)


def test_lr_aided_none_reduction_matches_plain(rng):
    chain = DecoderChain(detector="zf", criterion="plain", reduction=None)
    for _ in range(10):
        inst, _ = _noisy_instance(rng, 4, 0.05)
        assert np.array_equal(lr_aided_decode(inst, chain), zf_decode(inst))


def test_lr_aided_recovers_clean_and_respects_clamp(rng):
    chain = DecoderChain(detector="sic", criterion="plain",
                         reduction=ReductionParams(method="lll", delta=0.75),
                         boundary="clamp")
    for _ in range(15):
        b = random_basis(rng, 4)
        x = rng.integers(0, 4, size=4)
        inst = DecodeInstance(basis=b, y=b.entries @ x, alphabet=(0, 3))
        out = lr_aided_decode(inst, chain)
        assert np.array_equal(out, x)
        assert np.all((out >= 0) & (out <= 3))


def test_lr_aided_beats_plain_zf_on_skewed_basis():
    # nearly parallel columns: plain ZF is fragile, reduced ZF is not
    b = Basis(np.array([[1.0, 0.98], [0.0, 0.02]]))
    rng = np.random.default_rng(8)
    chain = DecoderChain(detector="zf", criterion="plain",
                         reduction=ReductionParams(method="lll", delta=0.75))
    plain_errs = aided_errs = 0
    for _ in range(300):
        x = rng.integers(-2, 3, size=2)
        y = b.entries @ x + 0.01 * rng.standard_normal(2)
        inst = DecodeInstance(basis=b, y=y)
        plain_errs += not np.array_equal(zf_decode(inst), x)
        aided_errs += not np.array_equal(lr_aided_decode(inst, chain), x)
    assert aided_errs < plain_errs


def test_lr_aided_mmse_runs_and_recovers(rng):
    chain = DecoderChain(detector="zf", criterion="mmse",
                         reduction=ReductionParams(method="lll", delta=0.75))
    for _ in range(10):
        b = random_basis(rng, 3)
        x = rng.integers(-2, 3, size=3)
        inst = DecodeInstance(basis=b, y=b.entries @ x, sigma=1e-6)
        assert np.array_equal(lr_aided_decode(inst, chain), x)


def test_ml_decode_finite_matches_exhaustive(rng):
    for _ in range(15):
        b = random_basis(rng, 3)
        x = rng.integers(0, 3, size=3)
        y = b.entries @ x + 0.05 * rng.standard_normal(3)
        inst = DecodeInstance(basis=b, y=y, alphabet=(0, 2))
        out = ml_decode_finite(inst)
        # reference: full scan of the 27 candidates
        best, best_d = None, np.inf
        for cand in np.ndindex(3, 3, 3):
            d = np.linalg.norm(b.entries @ np.array(cand) - y)
            if d < best_d - 1e-15:
                best, best_d = np.array(cand), d
        assert np.array_equal(out, best)


def test_ml_decode_requires_alphabet(rng):
    b = random_basis(rng, 2)
    with pytest.raises(ConfigInvalid):
        ml_decode_finite(DecodeInstance(basis=b, y=np.zeros(2)))


def test_batch_decoders_match_scalar_paths(rng):
    b = random_basis(rng, 4)
    ys = rng.standard_normal((4, 25)) * 3.0  # one target per column
    zf_batch = zf_coefs_batch(b.entries, ys)
    sic_batch = sic_coefs_batch(b.entries, ys)
    for k in range(25):
        inst = DecodeInstance(basis=b, y=ys[:, k])
        assert np.array_equal(zf_batch[:, k], zf_decode(inst))
        assert np.array_equal(sic_batch[:, k], sic_decode(inst))


def test_batch_decoders_tall_system(rng):
    b = random_basis(rng, 3, m=5)
    ys = rng.standard_normal((5, 10))
    zf_batch = zf_coefs_batch(b.entries, ys)
    sic_batch = sic_coefs_batch(b.entries, ys)
    for k in range(10):
        inst = DecodeInstance(basis=b, y=ys[:, k])
        assert np.array_equal(zf_batch[:, k], zf_decode(inst))
        assert np.array_equal(sic_batch[:, k], sic_decode(inst))
