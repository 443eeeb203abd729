import numpy as np
import pytest

from cannonball import _fallback, kernels
from cannonball.exact import a, frac_u64_values

native = kernels.native
needs_native = pytest.mark.skipif(native is None, reason="compiled extension not built")


def test_backend_name():
    assert kernels.BACKEND in ("cython", "numpy")
    assert (kernels.BACKEND == "cython") == (native is not None)


def test_fallback_sequence_block():
    P, root, av = _fallback.sequence_block(0, 2000)
    assert av.tolist() == [a(n) for n in range(2000)]


@needs_native
@pytest.mark.parametrize("lo, hi", [(0, 0), (0, 10), (12345, 70000), (2_999_000, 3_000_000)])
def test_sequence_block_agree(lo, hi):
    for x, y in zip(native.sequence_block(lo, hi), _fallback.sequence_block(lo, hi)):
        assert np.array_equal(x, y)


@needs_native
def test_divisor_sieve_agree():
    _, _, av = _fallback.sequence_block(0, 20000)
    assert np.array_equal(native.divisor_sieve(av), _fallback.divisor_sieve(av))


@needs_native
def test_exp_sums_agree():
    u = frac_u64_values(list(range(1, 5001)))
    ms = np.arange(1, 200, dtype=np.int64)
    assert np.allclose(native.exp_sums(u, ms), _fallback.exp_sums(u, ms), atol=1e-9)


@needs_native
def test_chi_and_power_sums_agree():
    _, _, av = _fallback.sequence_block(100, 50000)
    cre = np.array([0.0, 1.0, -0.5, -0.5, 1.0])
    cim = np.array([0.0, 0.0, 0.8660254037844386, -0.8660254037844386, 0.0])
    x = native.chi_weighted_sum(av, 100, cre, cim)
    y = _fallback.chi_weighted_sum(av, 100, cre, cim)
    assert abs(x - y) <= 1e-12 * abs(y)
    v = av.astype(np.float64)
    assert native.power_sum(v, 100, 2.7) == pytest.approx(_fallback.power_sum(v, 100, 2.7), rel=1e-13)
