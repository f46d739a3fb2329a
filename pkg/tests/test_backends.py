import numpy as np
import pytest

from wignerbin import _backend
from wignerbin import _core_py

compiled = pytest.importorskip("wignerbin._core") if _backend.HAVE_COMPILED else None
needs_compiled = pytest.mark.skipif(
    not _backend.HAVE_COMPILED, reason="compiled extension not built"
)


@needs_compiled
class TestBackendAgreement:
    def setup_method(self):
        rng = np.random.default_rng(17)
        self.xs = rng.uniform(0.0, 2000.0, 4000)
        self.ws = rng.standard_normal(4000)

    def test_laguerre_halfexp(self):
        for n in (0, 1, 7, 150, 900):
            a = compiled.laguerre_halfexp(n, self.xs)
            b = _core_py.laguerre_halfexp(n, self.xs)
            np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-300)

    def test_laguerre_dot(self):
        a = compiled.laguerre_dot(self.xs, self.ws, 300)
        b = _core_py.laguerre_dot(self.xs, self.ws, 300)
        np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-12)

    def test_laguerre_moments(self):
        sa, qa, ta = compiled.laguerre_moments(self.xs, 200)
        sb, qb, tb = _core_py.laguerre_moments(self.xs, 200)
        np.testing.assert_allclose(sa, sb, rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(qa, qb, rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(ta, tb, rtol=1e-10, atol=1e-12)

    def test_bh_rk4(self):
        rng = np.random.default_rng(3)
        a1 = rng.standard_normal(500) + 1j * rng.standard_normal(500) + 10.0
        a2 = 0.1 * (rng.standard_normal(500) + 1j * rng.standard_normal(500))
        r1, r2 = compiled.bh_rk4(a1, a2, 1.0, 0.25, 2e-4, 400)
        p1, p2 = _core_py.bh_rk4(a1, a2, 1.0, 0.25, 2e-4, 400)
        np.testing.assert_allclose(r1, p1, rtol=1e-10)
        np.testing.assert_allclose(r2, p2, rtol=1e-10)
        # inputs untouched by both
        assert a1[0] == pytest.approx(r1[0] - (r1[0] - a1[0]))


class TestChunkedReduction:
    def test_moments_chunked_matches_direct(self):
        rng = np.random.default_rng(9)
        xs = rng.uniform(0.0, 400.0, 150_001)
        s1, q1, t1 = _backend.moments_chunked(xs, 50, threads=1)
        s4, q4, t4 = _backend.moments_chunked(xs, 50, threads=4)
        assert np.array_equal(s1, s4)
        assert np.array_equal(q1, q4)
        assert np.array_equal(t1, t4)

    def test_map_ordered_preserves_order(self):
        items = list(range(23))
        assert _backend.map_ordered(lambda i: i * i, items, threads=5) == [
            i * i for i in items
        ]


class TestPurePythonParity:
    """The fallback stays importable and correct even with the extension built."""

    def test_scaled_value_range(self):
        out = _core_py.laguerre_halfexp(2000, np.array([8000.0]))
        assert abs(out[0]) <= 1.0
        assert out[0] == pytest.approx(2.339132916611584e-02, rel=1e-10)
