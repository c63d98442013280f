import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from pirings import sampling as sp
from pirings import zonoid as zn
from pirings.exterior import SimpleVector
from pirings.sphere_ring import ball_length


class TestSubstream:
    def test_deterministic(self):
        a = sp.substream(42, 3, 7).standard_normal(10)
        b = sp.substream(42, 3, 7).standard_normal(10)
        assert np.array_equal(a, b)

    def test_slots_independent(self):
        a = sp.substream(42, 0).standard_normal(10)
        b = sp.substream(42, 1).standard_normal(10)
        assert not np.array_equal(a, b)

    def test_blocks_independent(self):
        a = sp.substream(42, 0, 0).standard_normal(10)
        b = sp.substream(42, 0, 1).standard_normal(10)
        assert not np.array_equal(a, b)


class TestEstimate:
    def test_ci(self):
        est = sp.Estimate(1.0, 0.1, 100, 0)
        lo, hi = est.ci(2)
        assert lo == pytest.approx(0.8)
        assert hi == pytest.approx(1.2)

    def test_to_json(self):
        d = sp.Estimate(1.0, 0.1, 100, 7).to_json()
        assert d["seed"] == 7
        assert d["samples"] == 100
        assert d["ci"][0] < d["mean"] < d["ci"][1]


class TestHaarOrthogonal:
    def test_n1_signs(self):
        rng = sp.substream(0, 0)
        vals = sp.haar_orthogonal(1, rng, size=2000)[:, 0, 0]
        assert set(np.unique(vals)) == {-1.0, 1.0}
        assert abs(vals.mean()) < 0.1

    def test_orthogonality(self):
        rng = sp.substream(1, 0)
        q = sp.haar_orthogonal(5, rng, size=50)
        eye = np.einsum("sij,skj->sik", q, q)
        assert np.abs(eye - np.eye(5)).max() < 1e-12

    def test_first_column_projection_moment(self):
        # E <q e1, u>^2 = 1/n for any fixed unit u
        n = 4
        rng = sp.substream(2, 0)
        q = sp.haar_orthogonal(n, rng, size=200000)
        u = np.zeros(n)
        u[0] = 1.0
        vals = (q[:, :, 0] @ u) ** 2
        se = vals.std() / math.sqrt(len(vals))
        assert abs(vals.mean() - 1.0 / n) < 3 * se

    def test_invariance_two_sample(self):
        # the distribution of <q e1, u> does not depend on the unit u
        n = 3
        rng = sp.substream(3, 0)
        q = sp.haar_orthogonal(n, rng, size=100000)
        u = np.array([1.0, 0.0, 0.0])
        v = np.array([1.0, 2.0, -1.0])
        v /= np.linalg.norm(v)
        a = q[:50000, :, 0] @ u
        b = q[50000:, :, 0] @ v
        assert stats.ks_2samp(a, b).pvalue > 0.01


class TestHaarUnitary:
    def test_realified_orthogonal(self):
        rng = sp.substream(4, 0)
        m = sp.haar_unitary_realified(3, rng, size=20)
        eye = np.einsum("sij,skj->sik", m, m)
        assert np.abs(eye - np.eye(6)).max() < 1e-12

    def test_commutes_with_complex_structure(self):
        rng = sp.substream(5, 0)
        m = sp.haar_unitary_realified(3, rng, size=20)
        j = sp.complex_structure(3)
        assert np.abs(m @ j - j @ m).max() < 1e-12

    def test_u1_angles_uniform(self):
        rng = sp.substream(6, 0)
        g = rng.standard_normal((100000, 1, 1)) + 1j * rng.standard_normal(
            (100000, 1, 1))
        q, r = np.linalg.qr(g)
        d = np.einsum("...ii->...i", r)
        u = (q * np.conj(d / np.abs(d))[..., None, :])[:, 0, 0]
        angles = (np.angle(u) + np.pi) / (2 * np.pi)
        assert stats.kstest(angles, "uniform").pvalue > 0.01

    def test_complex_structure_squares_to_minus_identity(self):
        j = sp.complex_structure(4)
        assert np.array_equal(j @ j, -np.eye(8))


class TestComplexLine:
    def test_unit_norm_pair(self):
        rng = sp.substream(7, 0)
        arr = sp.ComplexLineSampler(3).draw(rng, 100)
        norms = np.linalg.norm(arr, axis=-1)
        assert np.abs(norms - 1.0).max() < 1e-12

    def test_columns_orthogonal(self):
        rng = sp.substream(8, 0)
        arr = sp.ComplexLineSampler(3).draw(rng, 100)
        dots = np.einsum("sk,sk->s", arr[:, 0], arr[:, 1])
        assert np.abs(dots).max() < 1e-12

    def test_simple_vector_shape(self):
        v = sp.sample_complex_line(2, sp.substream(9, 0))
        assert v.ambient_dim == 4
        assert v.degree == 2


class TestSchubertSampler:
    def test_unit_norm(self):
        rng = sp.substream(10, 0)
        from pirings.exterior import wedge_norm
        for _ in range(20):
            v = sp.sample_schubert((2, 1), 2, 3, rng)
            assert float(wedge_norm([v])) == pytest.approx(1.0, abs=1e-12)

    def test_diagram_must_fit(self):
        with pytest.raises(ValueError):
            sp.SchubertSampler((3,), 2, 2)


class TestMcWedgeLength:
    def test_ball_pair_in_r2(self):
        b = sp.gaussian_ball(2)
        est = sp.mc_wedge_length([b, b], 100000, seed=11)
        expect = 2 * math.pi
        assert abs(est.mean - expect) < 3 * est.std_error

    def test_single_ball(self):
        b = sp.gaussian_ball(3)
        est = sp.mc_wedge_length([b], 100000, seed=12)
        assert abs(est.mean - float(ball_length(3))) < 3 * est.std_error

    def test_zero_scale(self):
        z = sp.SamplerZonoid(0.0, sp.GaussianSampler(2))
        est = sp.mc_wedge_length([z, sp.gaussian_ball(2)], 1000, seed=13)
        assert est.mean == 0.0
        assert est.std_error == 0.0

    def test_worker_independence(self):
        b = sp.gaussian_ball(2)
        one = sp.mc_wedge_length([b, b], 30000, seed=14, workers=1)
        four = sp.mc_wedge_length([b, b], 30000, seed=14, workers=4)
        assert one == four

    def test_degree_overflow(self):
        b = sp.gaussian_ball(2)
        with pytest.raises(ValueError):
            sp.mc_wedge_length([b, b, b], 100, seed=0)

    def test_discrete_atoms_match_exact(self):
        square = zn.VirtualZonoid(
            2, 1, [(Fraction(1), SimpleVector(2, [(1, 0)])),
                   (Fraction(1), SimpleVector(2, [(0, 1)]))])
        z = sp.SamplerZonoid(1.0, sp.DiscreteAtomSampler(square))
        est = sp.mc_wedge_length([z, z], 100000, seed=15)
        exact = float(zn.length(zn.wedge([square, square])))
        assert abs(est.mean - exact) < 3 * est.std_error


class TestMcPairing:
    def test_sphere_pair(self):
        s = sp.SamplerZonoid(1.0, sp.SphereSampler(2))
        est = sp.mc_pairing(s, s, 100000, seed=16)
        assert abs(est.mean - 2 / math.pi) < 3 * est.std_error

    def test_orthogonal_atoms(self):
        e1 = zn.VirtualZonoid(2, 1, [(1, SimpleVector(2, [(1, 0)]))])
        e2 = zn.VirtualZonoid(2, 1, [(1, SimpleVector(2, [(0, 1)]))])
        a = sp.SamplerZonoid(1.0, sp.DiscreteAtomSampler(e1))
        b = sp.SamplerZonoid(1.0, sp.DiscreteAtomSampler(e2))
        est = sp.mc_pairing(a, b, 1000, seed=17)
        assert est.mean == 0.0

    def test_worker_independence(self):
        s = sp.SamplerZonoid(1.0, sp.SphereSampler(3))
        one = sp.mc_pairing(s, s, 30000, seed=18, workers=1)
        two = sp.mc_pairing(s, s, 30000, seed=18, workers=3)
        assert one == two
