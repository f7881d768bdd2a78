import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from tsymp.errors import PreconditionError, ShapeError
from tsymp.harness import random_spd_slices
from tsymp.matkernels import sympmat
from tsymp.structured import (
    HamiltonianBlocks,
    assemble_hamiltonian,
    greedy_reflection_match,
    hamiltonian_residual,
    make_t_J,
    random_hamiltonian_blocks,
    random_t_hamiltonian,
    spectral_symmetry_report,
    symplectic_residual,
    t_expm,
    t_pd_residual,
    t_spectrum,
    t_symplectic_inverse,
    t_unitary_residual,
)
from tsymp.tcore import FOURIER, SPATIAL, Tensor3, dft3, frobenius, idft3, t_identity, t_zero, tprod

J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def fourier(slices):
    return Tensor3(np.stack(slices), FOURIER)


def dist_to_identity(t):
    eye = t_identity(t.m, t.p, t.domain)
    return frobenius(idft3(t - eye) if t.domain == FOURIER else t - eye)


class TestJ:
    def test_n1_p1(self):
        j = make_t_J(1, 1)
        assert j.domain == SPATIAL
        np.testing.assert_array_equal(j.data[0], J2)

    def test_fourier_slices(self):
        f = dft3(make_t_J(2, 4))
        for k in range(4):
            np.testing.assert_allclose(f.data[k], sympmat(2), atol=1e-15)

    def test_square_is_minus_identity(self):
        j = make_t_J(3, 5)
        np.testing.assert_allclose(tprod(j, j).data, -t_identity(6, 5).data, atol=1e-14)

    def test_invalid(self):
        with pytest.raises(ShapeError):
            make_t_J(0, 2)


class TestAssemble:
    def test_simple(self):
        one = np.ones((1, 1, 1))
        h = assemble_hamiltonian(HamiltonianBlocks(0 * one, one, one))
        np.testing.assert_array_equal(h.data[0], [[0, 1], [1, 0]])
        assert hamiltonian_residual(h) == 0.0

    def test_zero(self):
        z = np.zeros((3, 2, 2))
        h = assemble_hamiltonian(HamiltonianBlocks(z, z, z))
        assert h.shape == (4, 4, 3) and frobenius(h) == 0

    def test_symmetrizes(self, rng):
        b = rng.standard_normal((2, 3, 3))
        blocks = HamiltonianBlocks(b, b, b)
        np.testing.assert_allclose(blocks.B, blocks.B.conj().transpose(0, 2, 1), atol=1e-15)
        assert blocks.n == 3 and blocks.p == 2

    def test_mismatch(self):
        with pytest.raises(ShapeError):
            HamiltonianBlocks(np.zeros((2, 2, 2)), np.zeros((2, 3, 3)), np.zeros((2, 2, 2)))

    @settings(max_examples=40, deadline=None)
    @given(n=st.integers(1, 6), p=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
    def test_residual_small(self, n, p, seed):
        assert hamiltonian_residual(random_t_hamiltonian(n, p, seed)) <= 1e-12


class TestRandom:
    def test_reproducible(self):
        a, b = random_t_hamiltonian(3, 4, 7), random_t_hamiltonian(3, 4, 7)
        np.testing.assert_array_equal(a.data, b.data)
        assert not np.array_equal(a.data, random_t_hamiltonian(3, 4, 8).data)

    def test_blocks_layout(self):
        blocks = random_hamiltonian_blocks(2, 3, 11)
        h = random_t_hamiltonian(2, 3, 11)
        np.testing.assert_array_equal(h.data[:, :2, :2], blocks.A)
        np.testing.assert_array_equal(h.data[:, 2:, 2:], -blocks.A.conj().transpose(0, 2, 1))

    def test_spectrum_symmetric(self):
        assert spectral_symmetry_report(random_t_hamiltonian(3, 5, 1)).symmetric


class TestHamiltonianResidual:
    def test_J_is_hamiltonian(self):
        assert hamiltonian_residual(make_t_J(2, 3)) == 0.0

    def test_identity_is_not(self):
        # (J I)^H - J I = -2J, Frobenius norm 2 sqrt(2), scaled by ||I||_F = sqrt(2)
        assert hamiltonian_residual(t_identity(2, 1)) == pytest.approx(2.0)

    def test_spatial_input(self):
        h = random_t_hamiltonian(2, 4, 3)
        assert hamiltonian_residual(idft3(h)) <= 1e-12

    def test_odd(self):
        with pytest.raises(ShapeError):
            hamiltonian_residual(t_identity(3, 2))


class TestSymplectic:
    def test_J_and_identity(self):
        assert symplectic_residual(make_t_J(2, 3)) == pytest.approx(0.0, abs=1e-15)
        assert symplectic_residual(t_identity(4, 3)) == pytest.approx(0.0, abs=1e-15)

    def test_exp_of_hamiltonian_4x8(self):
        assert symplectic_residual(t_expm(random_t_hamiltonian(4, 8, 0))) <= 1e-10

    def test_not_symplectic(self):
        assert symplectic_residual(2 * t_identity(2, 2)) == pytest.approx(3.0)

    def test_odd(self):
        with pytest.raises(ShapeError):
            symplectic_residual(t_identity(3, 1))


class TestInverse:
    def test_J(self):
        j = make_t_J(1, 3)
        inv = t_symplectic_inverse(j)
        np.testing.assert_allclose(inv.data, (-j).data, atol=1e-14)
        assert dist_to_identity(tprod(inv, j)) <= 1e-14

    def test_identity(self):
        eye = t_identity(2, 3)
        np.testing.assert_allclose(t_symplectic_inverse(eye).data, eye.data, atol=1e-14)

    def test_keeps_domain(self):
        s = t_expm(random_t_hamiltonian(2, 3, 5))
        assert t_symplectic_inverse(s).domain == FOURIER
        assert t_symplectic_inverse(idft3(s)).domain == SPATIAL

    def test_precondition(self):
        with pytest.raises(PreconditionError) as info:
            t_symplectic_inverse(2 * t_identity(2, 2))
        assert info.value.residual == pytest.approx(3.0)

    @pytest.mark.parametrize("seed", range(5))
    def test_inverse_law(self, seed):
        s = t_expm(0.3 * random_t_hamiltonian(3, 6, seed))
        inv = t_symplectic_inverse(s)
        assert dist_to_identity(tprod(inv, s)) <= 1e-9
        assert dist_to_identity(tprod(s, inv)) <= 1e-9


class TestExpm:
    def test_zero(self):
        out = t_expm(t_zero(4, 4, 3))
        np.testing.assert_allclose(out.data, t_identity(4, 3).data, atol=1e-15)
        assert out.domain == SPATIAL

    def test_rotation_p1(self):
        th = 0.7
        out = t_expm(Tensor3(th * J2[None]))
        want = [[np.cos(th), np.sin(th)], [-np.sin(th), np.cos(th)]]
        np.testing.assert_allclose(out.data[0], want, atol=1e-15)

    def test_slice_rule(self, rng):
        h = random_t_hamiltonian(2, 3, 9)
        out = t_expm(h)
        for k in range(3):
            np.testing.assert_allclose(out.data[k], scipy.linalg.expm(h.data[k]), rtol=1e-13)

    def test_symplectic_100_instances(self, rng):
        worst = 0.0
        for k in range(100):
            n, p = int(rng.integers(1, 9)), int(rng.integers(1, 17))
            worst = max(worst, symplectic_residual(t_expm(random_t_hamiltonian(n, p, [k, n, p]))))
        assert worst <= 1e-10

    def test_symplectic_largest(self):
        assert symplectic_residual(t_expm(random_t_hamiltonian(16, 32, 1))) <= 1e-10

    def test_non_square(self):
        with pytest.raises(ShapeError):
            t_expm(Tensor3(np.zeros((2, 2, 3))))


class TestSpectrum:
    def test_identity(self):
        rep = t_spectrum(t_identity(3, 4))
        np.testing.assert_allclose(rep.eigenvalues, np.ones(12), atol=1e-14)
        assert rep.match_distances is None and rep.symmetric is None

    def test_J(self):
        rep = t_spectrum(make_t_J(1, 2))
        assert rep.slices.tolist() == [0, 0, 1, 1]
        for k in (0, 1):
            ev = rep.eigenvalues[rep.slices == k]
            np.testing.assert_allclose(np.sort(ev.imag), [-1, 1], atol=1e-14)
            np.testing.assert_allclose(ev.real, 0, atol=1e-14)

    def test_diagonal_slices(self):
        rep = t_spectrum(fourier([np.diag([1.0, 2.0]), np.diag([3.0, 4.0])]))
        np.testing.assert_allclose(np.sort(rep.eigenvalues.real), [1, 2, 3, 4])
        assert rep.pairs()[2][0] == 1

    def test_reflection_real_pair(self):
        rep = spectral_symmetry_report(fourier([np.diag([1.0, -1.0])]))
        np.testing.assert_allclose(np.sort(rep.eigenvalues.real), [-1, 1])
        assert rep.reflection_match_distance == 0.0

    def test_imaginary_self_symmetric(self):
        rep = spectral_symmetry_report(fourier([2.5 * J2]))
        assert rep.reflection_match_distance <= 1e-14

    def test_16x16x16(self):
        rep = spectral_symmetry_report(random_t_hamiltonian(8, 16, 0))
        assert rep.reflection_match_distance <= 1e-8
        assert rep.symmetric
        assert len(rep.eigenvalues) == 16 * 16

    @pytest.mark.parametrize("seed", range(10))
    def test_random_symmetry(self, seed):
        assert spectral_symmetry_report(random_t_hamiltonian(4, 6, seed)).reflection_match_distance <= 1e-8

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            spectral_symmetry_report(t_identity(2, 2))

    def test_greedy_detects_asymmetry(self):
        d = greedy_reflection_match(np.array([1.0, 2.0]))
        np.testing.assert_allclose(np.sort(d), [2.0, 4.0])


class TestPD:
    def test_identity(self):
        rep = t_pd_residual(t_identity(3, 4))
        assert rep and rep.failing_slices == ()

    def test_negative_slice(self):
        rep = t_pd_residual(fourier([np.eye(2), np.diag([1.0, -1.0]), np.eye(2)]))
        assert not rep
        assert rep.failing_slices == (1,)
        assert rep.smallest_eigenvalues[1] == pytest.approx(-1.0)

    def test_random_spd(self):
        assert t_pd_residual(random_spd_slices(3, 5, 2))


class TestClosure:
    @pytest.mark.parametrize("seed", range(10))
    def test_product_well_conditioned(self, seed):
        a = t_expm(0.1 * random_t_hamiltonian(3, 4, [seed, 0]))
        b = t_expm(0.1 * random_t_hamiltonian(3, 4, [seed, 1]))
        assert symplectic_residual(tprod(a, b)) <= 10 * (symplectic_residual(a) + symplectic_residual(b))

    @pytest.mark.parametrize("seed", range(5))
    def test_product_general(self, seed):
        # rounding in the product grows with ||A|| ||B||, so the bound carries that factor
        a = t_expm(random_t_hamiltonian(3, 4, [seed, 0]))
        b = t_expm(random_t_hamiltonian(3, 4, [seed, 1]))
        growth = frobenius(idft3(a)) * frobenius(idft3(b))
        bound = 10 * (symplectic_residual(a) + symplectic_residual(b)) * growth
        assert symplectic_residual(tprod(a, b)) <= bound

    def test_unitary_residual(self):
        assert t_unitary_residual(make_t_J(2, 3)) <= 1e-15
        assert t_unitary_residual(2 * t_identity(2, 2)) == pytest.approx(3.0)
