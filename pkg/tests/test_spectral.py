import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nopair_weyl.bounds import compute_constants
from nopair_weyl.spectral import (
    HamiltonianBlock,
    NumericalError,
    assemble,
    ground_state_log_rate,
    lowest_eigenvalues,
    scan,
)

ZC = compute_constants().Zc
SQRT_PI = math.sqrt(math.pi)


def test_assemble_free_block_is_diagonal():
    h = assemble(0, 0.0, 3)
    np.testing.assert_array_equal(h.matrix, np.diag([2.0, 2 * math.sqrt(2), 2 * math.sqrt(3), 4.0]))


def test_assemble_one_by_one_at_zc():
    h = assemble(0, ZC, 0)
    # v0_00 = sqrt(pi), v1_00 = sqrt(pi)/2
    assert h.matrix.shape == (1, 1)
    assert h.matrix[0, 0] == pytest.approx(2 - 0.5 * ZC * 1.5 * SQRT_PI, rel=1e-14)


def test_assemble_structure():
    h = assemble(-2, 1.0, 10)
    assert np.array_equal(h.matrix, h.matrix.T)
    assert (np.diag(h.matrix) > 0).all()
    with pytest.raises(ValueError):
        h.matrix[0, 0] = 0.0
    with pytest.raises(ValueError):
        assemble(0, -0.1, 4)


def test_energy_is_quadratic_form():
    h = assemble(0, 0.2, 5)
    a = np.arange(6.0)
    assert h.energy(a) == pytest.approx(a @ h.matrix @ a)


def test_lowest_eigenvalues_trivial():
    d = np.diag([2.0, 2 * math.sqrt(2), 2 * math.sqrt(3)])
    assert lowest_eigenvalues(d, 1) == pytest.approx([2.0])
    assert lowest_eigenvalues(np.array([[0.0, 1.0], [1.0, 0.0]]), 2) == pytest.approx([-1.0, 1.0], abs=1e-15)


def test_lowest_eigenvalues_bad_k():
    with pytest.raises(ValueError):
        lowest_eigenvalues(np.eye(3), 4)
    with pytest.raises(ValueError):
        lowest_eigenvalues(np.eye(3), 0)


def test_lowest_eigenvalues_rejects_nonfinite():
    a = np.eye(3)
    a[0, 1] = a[1, 0] = np.nan
    with pytest.raises(NumericalError):
        lowest_eigenvalues(a, 1)


@pytest.mark.parametrize("seed", range(5))
def test_eigensolver_on_random_symmetric(seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(50, 50))
    a = x + x.T
    norm = np.linalg.norm(a, 2)
    vals, vecs = lowest_eigenvalues(a, 50, return_vectors=True)
    assert np.all(np.diff(vals) >= 0)
    assert vals.sum() == pytest.approx(np.trace(a), abs=1e-10 * norm)
    res = np.linalg.norm(a @ vecs - vecs * vals, axis=0)
    assert res.max() <= 1e-9 * norm
    # eigenvalues of the Gram form agree with the characteristic polynomial roots
    roots = np.sort(np.roots(np.poly(a[:8, :8])).real)
    np.testing.assert_allclose(lowest_eigenvalues(a[:8, :8], 8), roots, atol=1e-8)


def test_lowest_eigenvalues_of_hamiltonian_block_with_vectors():
    h = assemble(0, 0.3, 64)
    vals, vecs = lowest_eigenvalues(h, 3, return_vectors=True)
    assert vals.shape == (3,)
    # ground state has one sign (positive potential matrix, Perron-Frobenius)
    v = vecs[:, 0] * np.sign(vecs[0, 0])
    assert (v > -1e-12).all()


def test_variational_monotonicity_example():
    e64 = lowest_eigenvalues(assemble(0, 0.3, 64), 1)[0]
    e128 = lowest_eigenvalues(assemble(0, 0.3, 128), 1)[0]
    assert e64 >= 0
    assert e64 >= e128


@settings(max_examples=25, deadline=None)
@given(st.integers(-4, 4), st.floats(0.0, 0.8), st.integers(0, 40), st.integers(1, 40))
def test_variational_monotonicity_property(m, Z, n_small, extra):
    e_small = lowest_eigenvalues(assemble(m, Z, n_small), 1)[0]
    e_large = lowest_eigenvalues(assemble(m, Z, n_small + extra), 1)[0]
    assert e_large <= e_small + 1e-12 * max(1.0, abs(e_small))


def test_scan_free_case():
    recs = scan([0.0], range(-2, 3), [8], k=1)
    assert [r.m for r in recs] == [-2, -1, 0, 1, 2]
    for r in recs:
        assert r.ground == pytest.approx(2 * math.sqrt(max(r.m, 0) + 1), rel=1e-15)
        assert len(r.lowest_k_eigenvalues) == 1


def test_scan_empty():
    assert scan([], [0, 1], [8]) == []


def test_scan_ordering_and_k():
    recs = scan([0.1, 0.2], [0, 1], [6, 8], k=3)
    keys = [(r.n_max, r.m, r.Z) for r in recs]
    assert keys == sorted(keys)
    for r in recs:
        assert list(r.lowest_k_eigenvalues) == sorted(r.lowest_k_eigenvalues)
        assert len(r.lowest_k_eigenvalues) == 3


def test_scan_collects_errors_and_continues():
    errors = []
    recs = scan([0.1, -1.0], [0], [4], errors=errors)
    assert len(recs) == 1
    assert len(errors) == 1 and errors[0][0] == (0, -1.0, 4)


def test_sector_zero_is_lowest_at_moderate_truncation():
    recs = scan([0.3], range(-5, 6), [64])
    best = min(recs, key=lambda r: r.ground)
    assert best.m == 0


def test_supercritical_ground_state_drifts_down():
    rate = ground_state_log_rate(0, 2 * ZC, [32, 64, 128, 256])
    assert rate < 0
    assert ground_state_log_rate(0, 0.5 * ZC, [32, 64, 128, 256]) > rate


def test_hamiltonian_block_fields():
    h = assemble(1, 0.25, 4)
    assert isinstance(h, HamiltonianBlock)
    assert (h.m, h.Z, h.n_max) == (1, 0.25, 4)
