import numpy as np
import pytest

from oracles import expm_taylor
from tsymp.errors import DefinitenessError, NotHermitianError, NotRealError, NumericError, ShapeError
from tsymp.matkernels import (
    eig_general,
    eig_hermitian,
    expm,
    invsqrtm_spd,
    is_hpd,
    skew_canonical,
    sqrtm_spd,
    sympmat,
)
from tsymp.structured import greedy_reflection_match

SIZES = (2, 4, 6, 8)
M0 = np.array([[2, 1j], [-1j, 2]])
J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def sorted_c(z):
    z = np.asarray(z)
    return z[np.lexsort((z.imag, z.real))]


def rand_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def rand_spd(rng, d):
    g = rng.standard_normal((d, d))
    return g @ g.T + d * np.eye(d)


def rand_skew(rng, d):
    g = rng.standard_normal((d, d))
    return g - g.T


class TestEigGeneral:
    def test_rotation_generator(self):
        np.testing.assert_allclose(sorted_c(eig_general([[0, 1], [-4, 0]])), [-2j, 2j], atol=1e-14)

    def test_obstruction_example(self):
        ev = eig_general(np.linalg.solve(M0, J2))
        np.testing.assert_allclose(sorted_c(ev), sorted_c([1j, -1j / 3]), atol=1e-14)

    def test_identity(self):
        np.testing.assert_allclose(eig_general(np.eye(5)), np.ones(5))

    def test_non_square(self):
        with pytest.raises(ShapeError):
            eig_general(np.zeros((2, 3)))

    @pytest.mark.parametrize("d", SIZES)
    def test_hamiltonian_spectrum_reflection_closed(self, rng, d):
        n = d // 2
        for _ in range(50):
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            b, c = rand_hermitian(rng, n), rand_hermitian(rng, n)
            h = np.block([[a, b], [c, -a.conj().T]])
            assert np.max(greedy_reflection_match(eig_general(h))) <= 1e-8


class TestEigHermitian:
    def test_diag(self):
        d, _ = eig_hermitian(np.diag([3.0, 1.0]))
        np.testing.assert_allclose(d, [1, 3])

    def test_pauli(self):
        d, _ = eig_hermitian([[0, 1], [1, 0]])
        np.testing.assert_allclose(d, [-1, 1], atol=1e-15)

    @pytest.mark.parametrize("d", SIZES + (6,))
    def test_reconstruction(self, rng, d):
        for _ in range(50):
            a = rand_hermitian(rng, d)
            w, u = eig_hermitian(a)
            assert np.all(np.diff(w) >= 0)
            assert np.linalg.norm(u.conj().T @ u - np.eye(d)) <= 1e-12
            assert np.linalg.norm((u * w) @ u.conj().T - a) <= 1e-10 * np.linalg.norm(a)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            eig_hermitian([[1, 2], [0, 1]])


class TestSqrtm:
    def test_identity(self):
        np.testing.assert_allclose(sqrtm_spd(np.eye(3)), np.eye(3))

    def test_diag(self):
        np.testing.assert_allclose(sqrtm_spd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-15)
        np.testing.assert_allclose(invsqrtm_spd(np.diag([4.0, 9.0])), np.diag([0.5, 1 / 3]), atol=1e-15)

    @pytest.mark.parametrize("d", SIZES + (5,))
    def test_reconstruction(self, rng, d):
        for _ in range(50):
            a = rand_spd(rng, d)
            x, xi = sqrtm_spd(a), invsqrtm_spd(a)
            assert np.linalg.norm(x @ x - a) <= 1e-10 * np.linalg.norm(a)
            assert np.linalg.norm(x @ xi - np.eye(d)) <= 1e-10
            assert is_hpd(x)

    def test_complex_hpd(self):
        x = sqrtm_spd(M0)
        np.testing.assert_allclose(x @ x, M0, atol=1e-14)

    def test_not_pd(self):
        with pytest.raises(DefinitenessError) as info:
            sqrtm_spd(np.diag([1.0, -1.0]))
        assert info.value.smallest_eigenvalue == pytest.approx(-1.0)


class TestExpm:
    def test_zero(self):
        np.testing.assert_array_equal(expm(np.zeros((3, 3))), np.eye(3))

    def test_rotation(self):
        th = 0.7
        want = np.array([[np.cos(th), np.sin(th)], [-np.sin(th), np.cos(th)]])
        np.testing.assert_allclose(expm(th * J2), want, atol=1e-15)

    def test_taylor_oracle_4x4(self, rng):
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        a *= 2 / np.linalg.norm(a, 2)
        want = expm_taylor(a)
        assert np.linalg.norm(expm(a) - want) <= 1e-10 * np.linalg.norm(want)

    @pytest.mark.parametrize("d", SIZES)
    def test_taylor_oracle_envelope(self, rng, d):
        for _ in range(50):
            a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            a *= rng.uniform(0, 10) / np.linalg.norm(a)
            want = expm_taylor(a)
            assert np.linalg.norm(expm(a) - want) <= 1e-10 * np.linalg.norm(want)

    def test_non_square(self):
        with pytest.raises(ShapeError):
            expm(np.zeros((2, 3)))


def check_canonical(k, form):
    d = k.shape[0]
    assert np.linalg.norm(form.O.T @ form.O - np.eye(d)) <= 1e-10
    assert np.all(form.sigma > 0)
    assert np.all(np.diff(form.sigma) <= 0)
    rebuilt = form.O @ form.block_matrix() @ form.O.T
    return np.linalg.norm(rebuilt - k) / np.linalg.norm(k)


class TestSkewCanonical:
    def test_2x2(self):
        k = np.array([[0.0, 2.0], [-2.0, 0.0]])
        form = skew_canonical(k)
        np.testing.assert_allclose(form.sigma, [2.0])
        assert abs(abs(np.linalg.det(form.O)) - 1) <= 1e-14
        assert check_canonical(k, form) <= 1e-12

    def test_sorted_descending(self):
        k = np.zeros((4, 4))
        k[:2, :2] = J2
        k[2:, 2:] = 3 * J2
        form = skew_canonical(k)
        np.testing.assert_allclose(form.sigma, [3.0, 1.0])
        assert check_canonical(k, form) <= 1e-12

    def test_random_4x4_matches_eigenvalues(self, rng):
        k = rand_skew(rng, 4)
        form = skew_canonical(k)
        im = np.sort(np.abs(eig_general(k).imag))[::-1]
        np.testing.assert_allclose(form.sigma, im[::2], rtol=1e-10)
        np.testing.assert_allclose(form.sigma, im[1::2], rtol=1e-10)

    @pytest.mark.parametrize("d", SIZES)
    def test_random(self, rng, d):
        for _ in range(50):
            k = rand_skew(rng, d)
            form = skew_canonical(k)
            assert check_canonical(k, form) <= 1e-10
            im = np.sort(np.abs(eig_general(k).imag))[::-1][::2]
            assert np.max(np.abs(form.sigma - im)) <= 1e-10 * np.max(im)

    def test_errors(self):
        with pytest.raises(NotHermitianError):
            skew_canonical(np.eye(2))
        with pytest.raises(ShapeError):
            skew_canonical(np.zeros((3, 3)))
        with pytest.raises(NumericError):
            skew_canonical(np.zeros((2, 2)))
        with pytest.raises(NotRealError):
            skew_canonical(1j * J2)
        singular = np.zeros((4, 4))
        singular[:2, :2] = J2
        with pytest.raises(NumericError):
            skew_canonical(singular)


class TestIsHPD:
    def test_examples(self):
        assert is_hpd(np.eye(3))
        assert is_hpd(M0)
        rep = is_hpd(np.diag([1.0, -1.0]))
        assert not rep
        assert rep.smallest_eigenvalue == pytest.approx(-1.0)
        assert rep.reason

    def test_non_hermitian_reports(self):
        rep = is_hpd([[1.0, 1.0], [0.0, 1.0]])
        assert not rep and "Hermitian" in rep.reason

    def test_semidefinite_is_not_pd(self):
        assert not is_hpd(np.diag([1.0, 0.0]))

    @pytest.mark.parametrize("d", SIZES)
    def test_random_spd(self, rng, d):
        assert all(is_hpd(rand_spd(rng, d)) for _ in range(50))


def test_sympmat():
    j = sympmat(3)
    np.testing.assert_array_equal(j @ j, -np.eye(6))
    np.testing.assert_array_equal(j.T, -j)
    np.testing.assert_array_equal(sympmat(1), J2)
