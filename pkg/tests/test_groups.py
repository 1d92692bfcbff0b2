import numpy as np
import pytest

from coorbit2d import (
    ChartMismatchError,
    DiagonalChart,
    GroupSpec,
    NotInGroupError,
    ShearletChart,
    SimilitudeChart,
    SingularMatrixError,
    chart_from_element,
    contains,
    diagonal,
    dual_action,
    element_from_chart,
    g_weight,
    group_inverse,
    group_product,
    haar_weight,
    lie_algebra_basis,
    rotation,
    same_group,
    shearlet,
    similitude,
)
from conftest import random_invertible

B_UNIT_SHEAR = np.array([[1.0, 1.0], [0.0, 1.0]])


class TestDualAction:
    def test_diagonal_halves_first_component(self):
        assert np.allclose(dual_action(np.diag([2.0, 1.0]), (1.0, 1.0)), (0.5, 1.0))

    def test_identity_fixes_everything(self, rng):
        for _ in range(10):
            z = rng.normal(size=2)
            assert np.allclose(dual_action(np.eye(2), z), z)

    def test_shear_on_first_axis(self):
        # oracle: multiply back with h^T
        h = B_UNIT_SHEAR
        out = dual_action(h, (1.0, 0.0))
        assert np.allclose(out, (1.0, -1.0))
        assert np.allclose(h.T @ out, (1.0, 0.0))

    def test_cocycle_property(self, rng):
        for _ in range(50):
            h1, h2 = random_invertible(rng, 2)
            z = rng.normal(size=2)
            lhs = dual_action(h1 @ h2, z)
            rhs = dual_action(h1, dual_action(h2, z))
            assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-12)

    def test_singular_matrix_rejected(self):
        with pytest.raises(SingularMatrixError):
            dual_action([[1.0, 0.0], [0.0, 0.0]], (1.0, 1.0))


class TestElementFromChart:
    def test_diagonal_identity(self):
        spec = GroupSpec(diagonal())
        m = element_from_chart(spec, DiagonalChart(0.0, 0.0, 1, 1))
        assert np.allclose(m, np.eye(2))

    def test_shearlet_direct_substitution(self):
        spec = GroupSpec(shearlet(1.0))
        m = element_from_chart(spec, ShearletChart(1, np.log(2.0), 3.0))
        assert np.allclose(m, [[2.0, 3.0], [0.0, 2.0]])

    def test_similitude_conjugated(self):
        spec = GroupSpec(similitude(), B_UNIT_SHEAR)
        m = element_from_chart(spec, SimilitudeChart(0.0, np.pi / 2))
        expected = B_UNIT_SHEAR @ np.array([[0.0, 1.0], [-1.0, 0.0]]) @ np.linalg.inv(B_UNIT_SHEAR)
        assert np.allclose(m, expected, atol=1e-14)

    def test_chart_family_mismatch(self):
        with pytest.raises(ChartMismatchError):
            element_from_chart(GroupSpec(diagonal()), SimilitudeChart(0.0, 0.0))

    def test_chart_round_trip(self, rng):
        specs = [
            GroupSpec(similitude(), random_invertible(rng)),
            GroupSpec(diagonal(), random_invertible(rng)),
            GroupSpec(shearlet(-0.6), random_invertible(rng)),
        ]
        for spec in specs:
            for _ in range(20):
                p = _random_chart(spec, rng)
                m = element_from_chart(spec, p)
                q = chart_from_element(spec, m)
                m2 = element_from_chart(spec, q)
                assert np.allclose(m, m2, rtol=1e-10, atol=1e-12)

    def test_chart_from_element_off_group(self):
        with pytest.raises(NotInGroupError):
            chart_from_element(GroupSpec(diagonal()), [[1.0, 0.5], [0.0, 1.0]])


def _random_chart(spec, rng):
    kind = spec.family.kind
    if kind == "similitude":
        return SimilitudeChart(rng.uniform(-1.5, 1.5), rng.uniform(0, 2 * np.pi))
    if kind == "diagonal":
        return DiagonalChart(
            rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
            rng.choice([1, -1]), rng.choice([1, -1]),
        )
    return ShearletChart(rng.choice([1, -1]), rng.uniform(-1.5, 1.5),
                         rng.uniform(-3, 3))


class TestWeights:
    def test_similitude_haar_flat(self, rng):
        spec = GroupSpec(similitude())
        for _ in range(5):
            p = _random_chart(spec, rng)
            assert haar_weight(spec, p) == 1.0

    def test_diagonal_haar_flat(self, rng):
        spec = GroupSpec(diagonal())
        assert haar_weight(spec, _random_chart(spec, rng)) == 1.0

    def test_shearlet_haar_values(self):
        spec = GroupSpec(shearlet(0.5))
        assert haar_weight(spec, ShearletChart(1, 0.0, 0.3)) == pytest.approx(1.0)
        assert haar_weight(spec, ShearletChart(1, np.log(2.0), 0.0)) == pytest.approx(0.5)

    def test_g_weight_values(self):
        sim = GroupSpec(similitude())
        assert g_weight(sim, SimilitudeChart(0.0, 1.0)) == pytest.approx(1.0)
        assert g_weight(sim, SimilitudeChart(np.log(2.0), 1.0)) == pytest.approx(0.25)
        shr = GroupSpec(shearlet(1.0))
        assert g_weight(shr, ShearletChart(1, np.log(2.0), 0.0)) == pytest.approx(1.0 / 8.0)

    def test_conjugation_does_not_change_density(self, rng):
        b = random_invertible(rng)
        p = ShearletChart(1, 0.4, -0.2)
        assert haar_weight(GroupSpec(shearlet(2.0), b), p) == pytest.approx(
            haar_weight(GroupSpec(shearlet(2.0)), p)
        )


def _bump1d(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    m = np.abs(t) < 1
    out[m] = np.exp(1.0 - 1.0 / (1.0 - t[m] ** 2))
    return out


class TestLeftInvarianceOracle:
    """Quadrature oracle for the Haar densities.

    A left-invariant measure satisfies  sum w F(chart(g h_p)) = sum w F(chart(h_p))
    for smooth compactly supported F; midpoint quadrature of smooth compactly
    supported integrands converges superalgebraically, so the two sums agree
    to ~1e-10 iff the chart density is right.
    """

    def test_shearlet_haar_density(self):
        spec = GroupSpec(shearlet(0.7))
        n = 220
        lams, dl = np.linspace(-3, 3, n, endpoint=False, retstep=True)
        lams = lams + dl / 2
        bs, db = np.linspace(-6, 6, n, endpoint=False, retstep=True)
        bs = bs + db / 2
        lam, b = np.meshgrid(lams, bs, indexing="ij")
        a = np.exp(lam)

        def F(lam_, b_):
            return _bump1d(lam_ / 2.2) * _bump1d(b_ / 4.5)

        w = np.exp(-lam) * dl * db  # haar density in chart coordinates
        s_ref = np.sum(w * F(lam, b))

        a0, b0 = np.exp(0.4), 0.8  # left translation by g0 = (a0, b0)
        lam_t = lam + 0.4
        b_t = a0 * b + b0 * a ** 0.7
        s_tr = np.sum(w * F(lam_t, b_t))
        assert abs(s_tr - s_ref) / s_ref < 1e-9

        # spot check: the vectorized chart translation matches the matrix path
        g0 = element_from_chart(spec, ShearletChart(1, 0.4, b0))
        rng = np.random.default_rng(7)
        for _ in range(25):
            i, j = rng.integers(0, n, size=2)
            m = g0 @ element_from_chart(spec, ShearletChart(1, lam[i, j], b[i, j]))
            q = chart_from_element(spec, m)
            assert q.lam == pytest.approx(lam_t[i, j], rel=1e-12)
            assert q.shear == pytest.approx(b_t[i, j], rel=1e-10, abs=1e-12)

        # negative control: the flat density is not left invariant
        w_bad = np.ones_like(lam) * dl * db
        s_ref_bad = np.sum(w_bad * F(lam, b))
        s_tr_bad = np.sum(w_bad * F(lam_t, b_t))
        assert abs(s_tr_bad - s_ref_bad) / s_ref_bad > 0.05

    def test_group_measure_det_exponent(self):
        # The measure of R^2 x| H factors as dx dh/|det h|.  Under left
        # translation by (x0, h0) the x-integral picks up 1/|det h0| and the
        # h-marginal with weight haar/|det h| picks up |det h0|; the product
        # is invariant only for det-exponent one.
        spec = GroupSpec(shearlet(0.7))
        c = 0.7
        n = 200
        lams, dl = np.linspace(-3, 3, n, endpoint=False, retstep=True)
        lams = lams + dl / 2
        bs, db = np.linspace(-7, 7, n, endpoint=False, retstep=True)
        bs = bs + db / 2
        lam, b = np.meshgrid(lams, bs, indexing="ij")
        a = np.exp(lam)
        det = a ** (1.0 + c)

        def Fh(lam_, b_):
            return _bump1d(lam_ / 2.0) * _bump1d(b_ / 4.0)

        lam0, b0 = 0.5, -0.6
        a0 = np.exp(lam0)
        lam_t, b_t = lam + lam0, a0 * b + b0 * a ** c
        det0 = a0 ** (1.0 + c)

        xs, dx = np.linspace(-8, 8, 400, endpoint=False, retstep=True)
        xs = xs + dx / 2
        x1, x2 = np.meshgrid(xs, xs, indexing="ij")

        def Fx(u1, u2):
            return _bump1d(u1 / 3.0) * _bump1d(u2 / 3.0)

        h0 = element_from_chart(spec, ShearletChart(1, lam0, b0))
        x0 = np.array([0.7, -0.4])
        u1 = x0[0] + h0[0, 0] * x1 + h0[0, 1] * x2
        u2 = x0[1] + h0[1, 0] * x1 + h0[1, 1] * x2

        sx_ref = np.sum(Fx(x1, x2)) * dx * dx
        sx_tr = np.sum(Fx(u1, u2)) * dx * dx
        assert sx_tr * abs(np.linalg.det(h0)) == pytest.approx(sx_ref, rel=1e-9)

        for exponent, should_hold in ((1.0, True), (2.0, False)):
            w = np.exp(-lam) / det ** exponent * dl * db
            sh_ref = np.sum(w * Fh(lam, b))
            sh_tr = np.sum(w * Fh(lam_t, b_t))
            total_ref = sx_ref * sh_ref
            total_tr = sx_tr * sh_tr
            rel = abs(total_tr - total_ref) / total_ref
            if should_hold:
                assert rel < 1e-8
            else:
                assert rel > 0.5  # off by a factor |det h0|

    def test_g_weight_matches_invariant_exponent(self):
        spec = GroupSpec(shearlet(0.7))
        p = ShearletChart(1, 0.3, 1.2)
        h = element_from_chart(spec, p)
        assert g_weight(spec, p) == pytest.approx(
            haar_weight(spec, p) / abs(np.linalg.det(h)), rel=1e-12
        )


class TestGroupProduct:
    def test_identity(self, rng):
        y = rng.normal(size=2)
        h = random_invertible(rng)
        x, m = group_product((0.0, 0.0), np.eye(2), y, h)
        assert np.allclose(x, y) and np.allclose(m, h)

    def test_substitution(self):
        x, m = group_product((1.0, 0.0), np.diag([2.0, 2.0]), (1.0, 1.0), np.eye(2))
        assert np.allclose(x, (3.0, 2.0))
        assert np.allclose(m, np.diag([2.0, 2.0]))

    def test_inverse_law(self, rng):
        for _ in range(50):
            h = random_invertible(rng)
            x = rng.normal(size=2)
            ix, ih = group_inverse(x, h)
            zx, zh = group_product(x, h, ix, ih)
            assert np.allclose(zx, 0.0, atol=1e-12)
            assert np.allclose(zh, np.eye(2), atol=1e-12)

    def test_associativity(self, rng):
        for _ in range(50):
            g1, g2, g3 = random_invertible(rng, 3)
            x1, x2, x3 = rng.normal(size=(3, 2))
            left = group_product(*group_product(x1, g1, x2, g2), x3, g3)
            right = group_product(x1, g1, *group_product(x2, g2, x3, g3))
            assert np.allclose(left[0], right[0], rtol=1e-12, atol=1e-12)
            assert np.allclose(left[1], right[1], rtol=1e-12, atol=1e-12)


class TestContains:
    def test_diagonal_member(self):
        assert contains(GroupSpec(diagonal()), np.diag([3.0, -2.0]))

    def test_shearlet_power_law(self):
        spec = GroupSpec(shearlet(2.0))
        assert contains(spec, [[2.0, 5.0], [0.0, 4.0]])
        assert not contains(spec, [[2.0, 5.0], [0.0, 3.0]])

    def test_chart_points_are_members(self, rng):
        specs = [
            GroupSpec(similitude(), random_invertible(rng)),
            GroupSpec(diagonal(), random_invertible(rng)),
            GroupSpec(shearlet(1.3), random_invertible(rng)),
        ]
        for spec in specs:
            for _ in range(30):
                m = element_from_chart(spec, _random_chart(spec, rng))
                assert contains(spec, m)

    def test_non_members_rejected(self, rng):
        spec = GroupSpec(similitude())
        assert not contains(spec, B_UNIT_SHEAR)
        assert not contains(GroupSpec(diagonal()), rotation(0.3))


class TestLieAlgebra:
    def test_diagonal_basis(self):
        basis = lie_algebra_basis(GroupSpec(diagonal()))
        assert np.allclose(basis[0], np.diag([1.0, 0.0]))
        assert np.allclose(basis[1], np.diag([0.0, 1.0]))

    def test_shearlet_basis(self):
        basis = lie_algebra_basis(GroupSpec(shearlet(3.0)))
        assert np.allclose(basis[0], np.diag([1.0, 3.0]))
        assert np.allclose(basis[1], [[0.0, 1.0], [0.0, 0.0]])

    def test_conjugated_basis(self):
        basis = lie_algebra_basis(GroupSpec(diagonal(), B_UNIT_SHEAR))
        binv = np.linalg.inv(B_UNIT_SHEAR)
        assert np.allclose(basis[0], B_UNIT_SHEAR @ np.diag([1.0, 0.0]) @ binv)
        assert np.allclose(basis[1], B_UNIT_SHEAR @ np.diag([0.0, 1.0]) @ binv)

    def test_one_parameter_subgroups(self):
        # exp(t X) stays in the group for each basis element
        from scipy.linalg import expm

        for spec in (GroupSpec(similitude()), GroupSpec(diagonal()),
                     GroupSpec(shearlet(-0.8), B_UNIT_SHEAR)):
            for x in lie_algebra_basis(spec):
                for t in (-0.7, 0.3, 1.1):
                    assert contains(spec, expm(t * x), tol=1e-8)


class TestSameGroup:
    def test_normalizing_conjugator_gives_same_group(self):
        spec = GroupSpec(diagonal())
        swapped = GroupSpec(diagonal(), np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert same_group(spec, swapped)

    def test_rotated_diagonal_differs(self):
        assert not same_group(GroupSpec(diagonal()),
                              GroupSpec(diagonal(), rotation(0.3)))

    def test_families_differ(self):
        assert not same_group(GroupSpec(diagonal()), GroupSpec(similitude()))
