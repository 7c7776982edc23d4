"""Core linear-algebra and quantum-primitive tests."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pnsqkd import qmath
from pnsqkd.qmath import (
    GeneralizedMeasurement,
    Operator,
    StateVector,
    apply_measurement,
    binary_information,
    eig_hermitian,
    helstrom_error,
    partial_trace,
    symmetric_basis,
    symmetric_coordinates,
    tensor,
    tensor_pow,
    two_mode_number_state,
    two_mode_overlap,
)
from conftest import random_density, random_qubit


class TestStateVector:
    def test_normalization_enforced(self):
        with pytest.raises(ValueError):
            StateVector([1.0, 1.0])
        StateVector([1.0, 1.0], normalized=False)  # flagged intermediate is fine

    def test_norm_tolerance(self):
        StateVector([1.0 + 4e-13, 0.0])  # within 1e-12 on the squared sum


class TestOperator:
    def test_hermitian_flag(self):
        assert qmath.SIGMA_Y.is_hermitian()
        assert not Operator([[0, 1], [0, 0]]).is_hermitian()

    def test_density_check(self, rng):
        rho = Operator(random_density(rng, 4))
        assert rho.is_density()
        assert not Operator(np.eye(4)).is_density()  # trace 4


class TestTensor:
    def test_basis_product(self):
        v = tensor(qmath.KET_0, qmath.KET_1)
        assert v.dim == 4
        assert v.a[1] == pytest.approx(1.0)
        assert np.sum(np.abs(v.a)) == pytest.approx(1.0)

    def test_uniform_amplitudes(self):
        v = tensor(qmath.PLUS_X, qmath.PLUS_X)
        assert np.allclose(v.a, 0.5)

    def test_operator_on_first_qubit(self):
        op = tensor(qmath.SIGMA_X, qmath.IDENTITY_2)
        out = op.m @ tensor(qmath.KET_0, qmath.KET_0).a
        assert np.allclose(out, tensor(qmath.KET_1, qmath.KET_0).a)


class TestSymmetricBasis:
    def test_single_qubit(self):
        basis = symmetric_basis(1)
        assert np.allclose(basis[0].a, [1, 0])
        assert np.allclose(basis[1].a, [0, 1])

    def test_two_qubits_dicke(self):
        basis = symmetric_basis(2)
        assert np.allclose(basis[1].a, [0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0])
        assert np.allclose(basis[2].a, [0, 0, 0, 1])

    def test_gram_identity(self):
        for n in range(1, 7):
            basis = symmetric_basis(n)
            g = np.array([[b1.overlap(b2) for b2 in basis] for b1 in basis])
            assert np.max(np.abs(g - np.eye(n + 1))) < 1e-12

    def test_product_states_inside_span(self, rng):
        basis = symmetric_basis(3)
        proj = sum(b.outer().m for b in basis)
        for _ in range(100):
            psi = StateVector(random_qubit(rng))
            prod = tensor_pow(psi, 3).a
            assert np.linalg.norm(prod - proj @ prod) < 1e-12

    def test_coordinates_match_projection(self, rng):
        basis = symmetric_basis(4)
        psi = StateVector(random_qubit(rng))
        prod = tensor_pow(psi, 4).a
        coords = symmetric_coordinates(psi, 4)
        direct = np.array([np.vdot(b.a, prod) for b in basis])
        assert np.max(np.abs(coords - direct)) < 1e-12

    def test_range_check(self):
        with pytest.raises(ValueError):
            symmetric_basis(0)
        with pytest.raises(ValueError):
            symmetric_basis(9)


class TestPartialTrace:
    def test_maximally_entangled(self):
        for keep in ([0], [1]):
            red = partial_trace(qmath.PHI_PLUS.outer(), keep, 2)
            assert np.allclose(red.m, np.eye(2) / 2)

    def test_product_state(self, rng):
        psi = StateVector(random_qubit(rng))
        rho = tensor(psi, qmath.KET_0).outer()
        red = partial_trace(rho, [0], 2)
        assert np.max(np.abs(red.m - psi.outer().m)) < 1e-12

    def test_trace_and_positivity_preserved(self, rng):
        for _ in range(50):
            rho = Operator(random_density(rng, 8))
            red = partial_trace(rho, [0, 2], 3)
            assert red.trace().real == pytest.approx(1.0, abs=1e-12)
            w, _ = eig_hermitian(red)
            assert w[0] >= -1e-10

    def test_invalid_index(self):
        with pytest.raises(ValueError):
            partial_trace(qmath.PHI_PLUS.outer(), [2], 2)


class TestEig:
    def test_sigma_z(self):
        w, _ = eig_hermitian(qmath.SIGMA_Z)
        assert np.allclose(w, [-1.0, 1.0])

    def test_identity(self):
        w, _ = eig_hermitian(qmath.identity(4))
        assert np.allclose(w, 1.0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            eig_hermitian(Operator([[0, 1], [0, 0]]))

    def test_residuals_random(self, rng):
        a = random_density(rng, 16)
        w, v = eig_hermitian(Operator(a))
        for k in range(16):
            assert np.linalg.norm(a @ v[:, k] - w[k] * v[:, k]) < 1e-10

    def test_four_state_multicopy_bound_operator(self):
        # reciprocal of the top eigenvalue of the dual-projector sum is 1/2
        from pnsqkd.discrimination import equatorial_phase_states, usd_conclusive_bound_operator

        op = usd_conclusive_bound_operator(equatorial_phase_states(2), 3)
        w, _ = eig_hermitian(op)
        assert w[-1] == pytest.approx(2.0, abs=1e-10)
        assert 1.0 / w[-1] == pytest.approx(0.5, abs=1e-10)


class TestMeasurement:
    def test_projective_x(self):
        meas = GeneralizedMeasurement([
            ("+x", qmath.PLUS_X.outer()),
            ("-x", qmath.MINUS_X.outer()),
        ])
        res = apply_measurement(meas, qmath.PLUS_X)
        assert res[0].probability == pytest.approx(1.0, abs=1e-12)
        assert res[1].post_state is None  # unreachable branch

    def test_completeness_enforced(self):
        with pytest.raises(ValueError):
            GeneralizedMeasurement([("a", qmath.PLUS_X.outer())])

    def test_probabilities_sum_to_one(self, rng):
        from pnsqkd.discrimination import b92_povm

        meas = b92_povm(0.9)
        for _ in range(1000):
            rho = Operator(random_density(rng, 2))
            res = apply_measurement(meas, rho)
            assert sum(r.probability for r in res) == pytest.approx(1.0, abs=1e-10)

    def test_filter_on_signal_states(self):
        from pnsqkd.discrimination import b92_filter, b92_pair

        eta = math.pi / 3
        res = apply_measurement(b92_filter(eta), b92_pair(eta).states[0])
        assert res[0].probability == pytest.approx(1.0 - math.cos(eta), abs=1e-12)
        # success branch lands exactly on |+x>
        assert res[0].post_state.expectation(qmath.PLUS_X).real == pytest.approx(1.0, abs=1e-12)

    def test_near_orthogonal_filter_passes_deterministically(self):
        from pnsqkd.discrimination import b92_filter, b92_pair

        eta = math.pi / 2 - 1e-9
        res = apply_measurement(b92_filter(eta), b92_pair(eta).states[0])
        assert res[0].probability == pytest.approx(1.0, abs=1e-8)


class TestHelstrom:
    def test_orthogonal(self):
        assert helstrom_error(qmath.KET_0, qmath.KET_1) == pytest.approx(0.0, abs=1e-14)

    def test_identical(self):
        assert helstrom_error(qmath.PLUS_X, qmath.PLUS_X) == pytest.approx(0.5, abs=1e-14)

    def test_x_vs_z(self):
        p = helstrom_error(qmath.PLUS_X, qmath.KET_0)
        assert p == pytest.approx(0.5 * (1 - math.sqrt(0.5)), abs=1e-12)
        assert p == pytest.approx(0.1464466, abs=1e-6)

    def test_closed_form_random_pairs(self, rng):
        for _ in range(1000):
            a = StateVector(random_qubit(rng))
            b = StateVector(random_qubit(rng))
            c = abs(a.overlap(b))
            expected = 0.5 * (1 - math.sqrt(1 - c * c))
            assert helstrom_error(a, b) == pytest.approx(expected, abs=1e-12)

    def test_prior_validation(self):
        with pytest.raises(ValueError):
            helstrom_error(qmath.KET_0, qmath.KET_1, 1.5)


class TestBinaryInformation:
    def test_extremes(self):
        assert binary_information(0.5) == pytest.approx(0.0, abs=1e-15)
        assert binary_information(0.0) == 1.0
        assert binary_information(1.0) == 1.0

    def test_storing_anchor(self):
        assert binary_information(0.1464466) == pytest.approx(0.399, abs=1e-3)

    def test_experiment_anchor(self):
        assert binary_information(0.05) == pytest.approx(0.7136, abs=1e-4)

    def test_range_check(self):
        with pytest.raises(ValueError):
            binary_information(-0.1)

    @given(st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=200, deadline=None)
    def test_bounds_and_symmetry(self, p):
        val = binary_information(p)
        assert -1e-12 <= val <= 1.0
        assert val == pytest.approx(binary_information(1.0 - p), abs=1e-12)


class TestTwoModeNumberState:
    def test_vacuum(self):
        v = two_mode_number_state(0, 0.3, 0.5)
        assert v.dim == 1
        assert abs(v.a[0]) == pytest.approx(1.0)

    def test_single_photon_balanced_orthogonal(self):
        a = two_mode_number_state(1, 0.0, 1.0)
        b = two_mode_number_state(1, math.pi, 1.0)
        assert abs(a.overlap(b)) < 1e-14

    def test_orthonormality(self):
        for n in (3, 7):
            v = two_mode_number_state(n, 1.234, 0.37)
            assert v.norm() == pytest.approx(1.0, abs=1e-13)

    def test_overlap_closed_form(self):
        for n in (1, 5, 50, 200):
            for t in (0.01, 0.3, 0.9):
                a = two_mode_number_state(n, 0.0, t)
                b = two_mode_number_state(n, math.pi, t)
                assert abs(a.overlap(b)) == pytest.approx(
                    abs(two_mode_overlap(n, t)), abs=1e-12)

    def test_weak_strong_limit(self):
        # t = 0.01, n = 100 approximates e^-2 for mean t*n = 1
        got = abs(two_mode_number_state(100, math.pi, 0.01).overlap(
            two_mode_number_state(100, 0.0, 0.01)))
        assert got == pytest.approx((0.99 / 1.01) ** 100, abs=1e-12)
        assert got == pytest.approx(math.exp(-2.0), rel=1e-3)
