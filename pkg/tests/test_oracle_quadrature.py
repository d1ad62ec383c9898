import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import gamma

from nopair_weyl.coulomb_matrix import v0_element, v0_matrix
from nopair_weyl.oracle_quadrature import (
    BasisFunction,
    eval_basis_radial,
    gauss_laguerre,
    oracle_coulomb_element,
    oracle_matrix,
    oracle_orthonormality,
    verify_oracle,
)

SQRT_PI = math.sqrt(math.pi)


def test_basis_radial_values():
    assert eval_basis_radial(0, 0, 0.0) == pytest.approx(1 / SQRT_PI, rel=1e-15)
    assert eval_basis_radial(1, 0, 1.0) == pytest.approx(math.exp(-0.5) / SQRT_PI, rel=1e-15)
    assert eval_basis_radial(0, 1, 0.0) == pytest.approx(1 / SQRT_PI, rel=1e-15)
    assert eval_basis_radial(-1, 0, 1.0) == eval_basis_radial(1, 0, 1.0)


def test_basis_radial_finite_everywhere():
    r = np.linspace(0, 40, 400)
    for m, n in [(0, 100), (7, 50), (-12, 3)]:
        assert np.isfinite(eval_basis_radial(m, n, r)).all()


def test_basis_normalization_by_radial_integral():
    # 2 pi int |f|^2 r dr by adaptive quadrature, independent of the Laguerre rules
    for m, n in [(0, 0), (2, 3), (-4, 1)]:
        val, _ = quad(lambda r: eval_basis_radial(m, n, r) ** 2 * r, 0, np.inf, epsabs=1e-13, limit=200)
        assert 2 * math.pi * val == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 0.5, 3.5, 4.0])
def test_quadrature_exactness(alpha):
    rule = gauss_laguerre(21, alpha)
    assert (rule.nodes > 0).all() and (rule.weights > 0).all()
    for j in range(2 * 21):
        assert rule.integrate(rule.nodes**j) == pytest.approx(gamma(j + 1 + alpha), rel=1e-12)


def test_quadrature_rejects_bad_parameters():
    with pytest.raises(ValueError):
        gauss_laguerre(0, 0.0)
    with pytest.raises(ValueError):
        gauss_laguerre(4, -1.0)


def test_oracle_coulomb_values():
    # 2 int_0^inf exp(-r^2) dr = sqrt(pi)
    assert oracle_coulomb_element(0, 0, 0) == pytest.approx(SQRT_PI, rel=1e-14)
    # Gamma(1/2) - 2 Gamma(3/2) + Gamma(5/2) = 3 sqrt(pi) / 4
    assert oracle_coulomb_element(0, 1, 1) == pytest.approx(0.75 * SQRT_PI, rel=1e-14)
    assert oracle_coulomb_element(1, 0, 0) == pytest.approx(0.5 * SQRT_PI, rel=1e-14)
    assert oracle_coulomb_element(3, 0, 0) == pytest.approx(v0_element(3, 0, 0), rel=1e-13)


def test_oracle_coulomb_by_direct_radial_quadrature():
    # (f, g / r) = 2 pi int f g dr
    for m, n, n2 in [(0, 2, 3), (2, 1, 4), (0, 5, 5)]:
        val, _ = quad(lambda r: eval_basis_radial(m, n, r) * eval_basis_radial(m, n2, r),
                      0, np.inf, epsabs=1e-13, limit=200)
        assert oracle_coulomb_element(m, n, n2) == pytest.approx(2 * math.pi * val, rel=1e-9)


@pytest.mark.parametrize("m,n,n2,expected", [(2, 3, 3, 1.0), (2, 3, 4, 0.0), (-5, 0, 1, 0.0)])
def test_orthonormality(m, n, n2, expected):
    assert oracle_orthonormality(m, n, n2) == pytest.approx(expected, abs=1e-11)


@pytest.mark.parametrize("m", range(6))
def test_gram_matrix_is_identity(m):
    np.testing.assert_allclose(oracle_matrix(m, 20, "overlap"), np.eye(21), atol=1e-11)


@pytest.mark.parametrize("m", range(-5, 6))
def test_oracle_matches_closed_form(m):
    o = np.array([[oracle_coulomb_element(m, i, j) for j in range(21)] for i in range(21)])
    np.testing.assert_allclose(o, v0_matrix(m, 20), rtol=1e-10)
    np.testing.assert_allclose(oracle_matrix(m, 20), o, rtol=1e-11)


def test_oracle_matches_block_at_larger_truncation():
    o = oracle_matrix(0, 20)
    np.testing.assert_allclose(v0_matrix(0, 50)[:21, :21], o, rtol=1e-10)


def test_oracle_v1_sector():
    # v^{0,1}_{00} is the Coulomb element of f_{1,0}
    assert oracle_coulomb_element(1, 0, 0) == pytest.approx(v0_element(1, 0, 0), rel=1e-13)
    assert BasisFunction(1, 0).normalization == pytest.approx(1 / SQRT_PI, rel=1e-15)


def test_oracle_scale_cap():
    with pytest.raises(ValueError):
        oracle_coulomb_element(0, 101, 0)
    with pytest.raises(ValueError):
        oracle_matrix(0, 20, "kinetic")


def test_verify_oracle_report():
    rep = verify_oracle([-2, 0, 3], 10)
    assert rep.passed
    assert rep.n_checks == 3 * 2 * 121
