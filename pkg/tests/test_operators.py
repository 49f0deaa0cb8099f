import math

import numpy as np
import pytest

from nonlocalsolver import (
    DiagonalOperator,
    Laplacian1D,
    NumericalError,
    SineSpectralOperator,
    contour_point,
    make_laplacian1d,
    make_self_adjoint_contour,
    poly_x2_1mx_coefficients,
)


class TestDiagonalOperator:
    def test_scalar_resolvent(self):
        op = DiagonalOperator([1.0])
        assert op.resolvent_apply(2.0, [1.0]) == pytest.approx([1.0])

    def test_componentwise(self):
        op = DiagonalOperator([1.0, 4.0])
        assert op.resolvent_apply(2.0 + 0j, [1.0, 1.0]) == pytest.approx([1.0, -0.5])

    def test_modified_scalar(self):
        op = DiagonalOperator([1.0])
        assert op.modified_resolvent_apply(2.0, [1.0]) == pytest.approx([0.5])

    def test_modified_zero_vector(self):
        op = DiagonalOperator([3.0, 5.0])
        out = op.modified_resolvent_apply(1.0 + 1.0j, [0.0, 0.0])
        assert np.max(np.abs(out)) == 0.0

    def test_modified_closed_form(self):
        lam = math.pi**2
        op = DiagonalOperator([lam])
        a_I = make_self_adjoint_contour(lam).a_I
        out = op.modified_resolvent_apply(a_I, [1.0])
        assert out[0] == pytest.approx(lam / (a_I * (a_I - lam)), rel=1e-14)

    def test_validation(self):
        with pytest.raises(ValueError):
            DiagonalOperator([])
        with pytest.raises(ValueError):
            DiagonalOperator([2.0, 1.0])
        with pytest.raises(ValueError):
            DiagonalOperator([0.0, 1.0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            DiagonalOperator([1.0, 2.0]).resolvent_apply(3.0, [1.0])

    def test_modified_rejects_zero(self):
        with pytest.raises(ValueError):
            DiagonalOperator([1.0]).modified_resolvent_apply(0.0, [1.0])

    def test_near_singular_reported(self):
        op = DiagonalOperator([4.0])
        with pytest.raises(NumericalError):
            op.resolvent_apply(4.0 + 1e-16j, [1.0])

    def test_call_counter(self):
        op = DiagonalOperator([1.0, 2.0])
        assert op.resolvent_calls == 0
        op.resolvent_apply(5.0, [1.0, 1.0])
        op.modified_resolvent_apply(5.0, [1.0, 1.0])
        assert op.resolvent_calls == 2

    def test_spectral_bounds(self):
        op = DiagonalOperator([2.5, 9.0])
        assert op.spectral.rho0 == 2.5
        assert op.spectral.phi == 0.0


class TestLaplacian1D:
    def test_against_dense_inverse(self):
        op = make_laplacian1d(3)
        dx2 = op.dx**2
        A = (np.diag([2.0] * 3) + np.diag([-1.0] * 2, 1) + np.diag([-1.0] * 2, -1)) / dx2
        z = 0.5
        e2 = np.array([0.0, 1.0, 0.0])
        expect = np.linalg.solve(z * np.eye(3) - A, e2)
        got = op.resolvent_apply(z, e2)
        assert np.max(np.abs(got - expect)) <= 1e-13

    def test_against_dense_inverse_complex(self):
        op = make_laplacian1d(7)
        dx2 = op.dx**2
        A = (np.diag([2.0] * 7) + np.diag([-1.0] * 6, 1) + np.diag([-1.0] * 6, -1)) / dx2
        rng = np.random.default_rng(3)
        v = rng.normal(size=7) + 1j * rng.normal(size=7)
        z = 4.0 - 11.0j
        expect = np.linalg.solve(z * np.eye(7) - A, v)
        got = op.resolvent_apply(z, v)
        assert np.max(np.abs(got - expect)) <= 1e-13 * np.max(np.abs(expect))

    def test_smallest_eigenvalue(self):
        op = make_laplacian1d(3)
        assert op.spectral.rho0 == pytest.approx(64 * math.sin(math.pi / 8) ** 2, rel=1e-14)

    def test_eigenvalue_consistency_limit(self):
        op = make_laplacian1d(1000)
        assert op.spectral.rho0 < math.pi**2
        assert op.spectral.rho0 == pytest.approx(math.pi**2, rel=1e-5)

    def test_discrete_eigenvectors(self):
        op = make_laplacian1d(3)
        x = op.grid
        for k in (1, 2, 3):
            v = np.sin(k * math.pi * x)
            lam = op.eigenvalue(k)
            assert np.max(np.abs(op.apply(v) - lam * v)) <= 1e-12 * lam

    def test_rejects_small_m(self):
        with pytest.raises(ValueError):
            make_laplacian1d(1)

    def test_pivot_underflow_reported(self):
        op = make_laplacian1d(4)
        lam1 = op.eigenvalue(1)
        with pytest.raises(NumericalError):
            op.resolvent_apply(complex(lam1), np.ones(4))


class TestSineSpectralOperator:
    def test_eigenvalues(self):
        op = SineSpectralOperator(3)
        assert op.eigenvalues == pytest.approx(
            [math.pi**2, 4 * math.pi**2, 9 * math.pi**2], rel=1e-15)
        assert op.spectral.rho0 == math.pi**2

    def test_resolvent_componentwise(self):
        op = SineSpectralOperator(2)
        out = op.resolvent_apply(50.0, [1.0, 1.0])
        assert out == pytest.approx(
            [1 / (50 - math.pi**2), 1 / (50 - 4 * math.pi**2)], rel=1e-14)

    def test_evaluate_series(self):
        op = SineSpectralOperator(2)
        val = op.evaluate([1.0, 0.5], 0.25)
        expect = math.sin(math.pi * 0.25) + 0.5 * math.sin(2 * math.pi * 0.25)
        assert val == pytest.approx(expect, rel=1e-15)
        vals = op.evaluate([1.0, 0.5], np.array([0.25, 0.5]))
        assert vals[0] == pytest.approx(expect, rel=1e-15)

    def test_rejects_no_modes(self):
        with pytest.raises(ValueError):
            SineSpectralOperator(0)


def test_poly_profile_coefficients_against_quadrature():
    # c_k = 2 * int_0^1 (1-x)x^2 sin(k pi x) dx, by a dense independent rule
    x, wts = np.polynomial.legendre.leggauss(120)
    x = (x + 1) / 2
    wts = wts / 2
    f = (1 - x) * x * x
    coeffs = poly_x2_1mx_coefficients(10)
    for k in range(1, 11):
        ref = 2.0 * np.sum(wts * f * np.sin(k * math.pi * x))
        assert coeffs[k - 1] == pytest.approx(ref, abs=1e-14)


def _operators_for_residual_test():
    return [
        DiagonalOperator(np.sort(np.random.default_rng(0).uniform(1, 50, 12))),
        make_laplacian1d(40),
        SineSpectralOperator(15),
    ]


@pytest.mark.parametrize("op", _operators_for_residual_test(),
                         ids=["diagonal", "laplacian", "sine"])
def test_resolvent_residual_on_contour(op):
    c = make_self_adjoint_contour(op.spectral.rho0)
    rng = np.random.default_rng(11)
    for _ in range(100):
        p = contour_point(c, rng.uniform(-3.0, 3.0))
        v = rng.normal(size=op.dim) + 1j * rng.normal(size=op.dim)
        u = op.resolvent_apply(p.z, v)
        res = np.linalg.norm(p.z * u - op.apply(u) - v) / np.linalg.norm(v)
        assert res <= 1e-12


def test_laplacian_self_adjoint_resolvent_norm_bound():
    op = make_laplacian1d(30)
    c = make_self_adjoint_contour(op.spectral.rho0)
    lams = np.array([op.eigenvalue(k) for k in range(1, 31)])
    rng = np.random.default_rng(5)
    for zeta in np.linspace(-3, 3, 13):
        z = contour_point(c, zeta).z
        dist = np.min(np.abs(z - lams))
        v = rng.normal(size=30)
        u = op.resolvent_apply(z, v)
        assert np.linalg.norm(u) / np.linalg.norm(v) <= 2.0 / dist


def test_modified_resolvent_decay_along_contour():
    op = DiagonalOperator([2.0, 6.0])
    c = make_self_adjoint_contour(2.0)
    v = np.array([1.0, 1.0])
    norms = []
    for zeta in (2.0, 3.0, 4.0):
        z = contour_point(c, zeta).z
        norms.append(np.linalg.norm(op.modified_resolvent_apply(z, v)))
    assert norms[0] > norms[1] > norms[2]


def test_resolvent_conjugation():
    for op in (DiagonalOperator([1.0, 3.0]), make_laplacian1d(6)):
        rng = np.random.default_rng(9)
        v = rng.normal(size=op.dim) + 1j * rng.normal(size=op.dim)
        z = 2.0 + 5.0j
        a = op.resolvent_apply(np.conj(z), np.conj(v))
        b = np.conj(op.resolvent_apply(z, v))
        assert np.max(np.abs(a - b)) == 0.0
