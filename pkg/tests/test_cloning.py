"""Cloning machines: isometry checks, fidelities, sifted-attack behavior."""
import math

import numpy as np
import pytest

from pnsqkd import cloning, qmath
from pnsqkd.cloning import (
    ANNOUNCED_SETS,
    InfeasibleModelError,
    bb84_reference_information,
    cerf23_fidelities,
    clone_reduced_states,
    information_crossing,
    make_cerf12,
    make_cerf23,
    make_ng12,
    make_ng23,
    make_ngs23,
    ng12_fidelities,
    ng23_fidelities,
    pns_cloning_attack,
    sifted_cloning_attack,
    sifted_point,
)
from conftest import random_qubit

GAMMAS = np.linspace(0.0, math.pi / 2, 11)
EQUATOR = [qmath.equatorial(th) for th in np.linspace(0, 2 * math.pi, 32, endpoint=False)]


class TestIsometries:
    @pytest.mark.parametrize("factory,grid", [
        (make_ng12, GAMMAS),
        (make_cerf12, np.linspace(0.5, 1.0, 11)),
        (make_ng23, GAMMAS),
        (make_ngs23, GAMMAS),
        (make_cerf23, np.linspace(0.0, 1 / math.sqrt(8), 11)),
    ])
    def test_isometry_property(self, factory, grid):
        for p in grid:
            v = factory(p).isometry
            assert np.max(np.abs(v.conj().T @ v - np.eye(v.shape[1]))) < 1e-12

    def test_parameter_ranges(self):
        with pytest.raises(ValueError):
            make_ng12(-0.1)
        with pytest.raises(ValueError):
            make_cerf12(0.4)
        with pytest.raises(ValueError):
            make_cerf23(0.5)


class TestNg12:
    def test_identity_end(self):
        fids = [f for _, _, f in clone_reduced_states(make_ng12(0.0), qmath.PLUS_X)]
        assert fids[0] == pytest.approx(1.0, abs=1e-12)
        assert fids[1] == pytest.approx(0.5, abs=1e-12)

    def test_symmetric_point(self):
        fids = [f for _, _, f in clone_reduced_states(make_ng12(math.pi / 4), qmath.PLUS_X)]
        expected = (1 + 1 / math.sqrt(2)) / 2
        assert fids[0] == pytest.approx(expected, abs=1e-12)
        assert fids[1] == pytest.approx(expected, abs=1e-12)

    def test_swap_end(self):
        fids = [f for _, _, f in clone_reduced_states(make_ng12(math.pi / 2), qmath.PLUS_X)]
        assert fids[0] == pytest.approx(0.5, abs=1e-12)
        assert fids[1] == pytest.approx(1.0, abs=1e-12)

    def test_closed_forms_on_grid(self):
        for g in np.linspace(0.0, math.pi / 2, 50):
            f1, f2 = ng12_fidelities(g)
            got = [f for _, _, f in clone_reduced_states(make_ng12(g), qmath.PLUS_X)]
            assert got[0] == pytest.approx(f1, abs=1e-10)
            assert got[1] == pytest.approx(f2, abs=1e-10)

    def test_equatorial_part_of_reduced_state(self):
        # the first clone equals cos(g)|th><th| + (1 - cos g) 1/2 in its
        # equatorial Bloch components (the marginal also carries a fixed
        # z offset of sin^2(g), which does not affect equatorial fidelity)
        g = 0.7
        psi = qmath.equatorial(1.1)
        _, rho, fid = clone_reduced_states(make_ng12(g), psi)[0]
        rx = np.trace(rho.m @ qmath.SIGMA_X.m).real
        ry = np.trace(rho.m @ qmath.SIGMA_Y.m).real
        assert rx == pytest.approx(math.cos(g) * math.cos(1.1), abs=1e-12)
        assert ry == pytest.approx(math.cos(g) * math.sin(1.1), abs=1e-12)
        assert fid == pytest.approx((1 + math.cos(g)) / 2, abs=1e-12)

    def test_phase_covariance(self):
        fids = [clone_reduced_states(make_ng12(0.6), psi)[0][2] for psi in EQUATOR]
        assert np.var(fids) < 1e-20


class TestCerf12:
    def test_perfect_end(self):
        m = make_cerf12(1.0)
        out = m.apply_to_qubit(qmath.PLUS_X)
        # clone 1 perfect, ancilla pair in the maximally entangled state
        fids = [f for _, _, f in clone_reduced_states(m, qmath.PLUS_X)]
        assert fids[0] == pytest.approx(1.0, abs=1e-12)
        anc = qmath.partial_trace(out.outer(), [1, 2], 3)
        w, _ = qmath.eig_hermitian(anc)
        assert w[-1] == pytest.approx(1.0, abs=1e-10)  # pure ancilla state

    def test_matches_two_qubit_machine_marginals(self):
        # with F = (1 + cos g)/2 each single-qubit clone marginal matches
        # the two-qubit machine
        for g in (0.3, math.pi / 4, 1.2):
            F = (1 + math.cos(g)) / 2
            psi = qmath.equatorial(0.9)
            cerf = clone_reduced_states(make_cerf12(F), psi)
            ng = clone_reduced_states(make_ng12(g), psi)
            assert cerf[0][2] == pytest.approx(ng[0][2], abs=1e-10)
            assert cerf[1][2] == pytest.approx(ng[1][2], abs=1e-10)

    def test_symmetric_point(self):
        F = (1 + 1 / math.sqrt(2)) / 2
        fids = [f for _, _, f in clone_reduced_states(make_cerf12(F), qmath.PLUS_X)]
        assert fids[0] == pytest.approx(F, abs=1e-12)
        assert fids[1] == pytest.approx(F, abs=1e-12)

    def test_output_normalization(self):
        for F in np.linspace(0.5, 1.0, 20):
            out = make_cerf12(F).apply_to_qubit(qmath.PLUS_Y)
            assert out.norm() == pytest.approx(1.0, abs=1e-12)

    def test_phase_covariance(self):
        fids = [clone_reduced_states(make_cerf12(0.85), psi)[1][2] for psi in EQUATOR]
        assert np.var(fids) < 1e-20


class TestNg23:
    def test_symmetric_point(self):
        fids = [f for _, _, f in clone_reduced_states(make_ng23(math.pi / 4), qmath.PLUS_X)]
        expected = (6 + 2 * math.sqrt(2) + math.sqrt(6)) / 12
        for f in fids:
            assert f == pytest.approx(expected, abs=1e-10)

    def test_gamma_zero(self):
        f12, f3 = ng23_fidelities(0.0)
        assert f12 == pytest.approx(1.0, abs=1e-12)
        assert f3 == pytest.approx(0.5, abs=1e-12)

    def test_gamma_pi2(self):
        f12, f3 = ng23_fidelities(math.pi / 2)
        assert f12 == pytest.approx(0.75, abs=1e-12)

    def test_third_clone_never_perfect(self):
        assert max(ng23_fidelities(g)[1] for g in np.linspace(0, math.pi / 2, 200)) < 1.0

    def test_closed_forms_on_grid(self):
        for g in np.linspace(0.0, math.pi / 2, 50):
            f12, f3 = ng23_fidelities(g)
            got = [f for _, _, f in clone_reduced_states(make_ng23(g), qmath.PLUS_X)]
            assert got[0] == pytest.approx(f12, abs=1e-10)
            assert got[1] == pytest.approx(f12, abs=1e-10)
            assert got[2] == pytest.approx(f3, abs=1e-10)

    def test_phase_covariance_variance(self):
        fids = [clone_reduced_states(make_ng23(0.8), psi)[2][2]
                for psi in EQUATOR[:16]]
        assert np.var(fids) < 1e-20


class TestNgs23:
    def test_matches_unsymmetrized_fidelities(self):
        for g in np.linspace(0.0, math.pi / 2, 25):
            f12, f3 = ng23_fidelities(g)
            got = [f for _, _, f in clone_reduced_states(make_ngs23(g), qmath.PLUS_X)]
            assert got[0] == pytest.approx(f12, abs=1e-10)
            assert got[1] == pytest.approx(f12, abs=1e-10)
            assert got[2] == pytest.approx(f3, abs=1e-10)

    def test_symmetric_point(self):
        got = clone_reduced_states(make_ngs23(math.pi / 4), qmath.PLUS_X)[0][2]
        assert got == pytest.approx(0.9398, abs=1e-4)

    def test_branches_orthogonal(self):
        # the two bit-flip-mirror branches never interfere: flipping the
        # last ancilla qubit maps one onto the other
        m = make_ngs23(0.9)
        for col in m.isometry.T:
            t = col.reshape(8, 2)
            assert abs(np.vdot(t[:, 0], t[:, 1])) < 1e-12

    def test_phase_covariance(self):
        fids = [clone_reduced_states(make_ngs23(0.8), psi)[2][2]
                for psi in EQUATOR[:16]]
        assert np.var(fids) < 1e-20


class TestCerf23:
    def test_clone_pair_fidelity_universal(self, rng):
        x = 0.21
        m = make_cerf23(x)
        for _ in range(32):
            psi = qmath.StateVector(random_qubit(rng))
            fids = [f for _, _, f in clone_reduced_states(m, psi)]
            assert fids[0] == pytest.approx(1 - 2 * x * x, abs=1e-10)
            assert fids[1] == pytest.approx(1 - 2 * x * x, abs=1e-10)

    def test_third_clone_universal(self, rng):
        x = 0.21
        v = math.sqrt(1 - 8 * x * x)
        m = make_cerf23(x)
        for _ in range(32):
            psi = qmath.StateVector(random_qubit(rng))
            f3 = clone_reduced_states(m, psi)[2][2]
            assert f3 == pytest.approx(1 - 0.5 * (v - 2 * x) ** 2, abs=1e-10)

    def test_equal_fidelity_point_is_11_12(self):
        # all three fidelities coincide at v = 4x, i.e. x = 1/sqrt(24)
        x = 1 / math.sqrt(24)
        fids = [f for _, _, f in clone_reduced_states(make_cerf23(x), qmath.PLUS_X)]
        for f in fids:
            assert f == pytest.approx(11 / 12, abs=1e-10)

    def test_no_disturbance_end(self):
        fids = [f for _, _, f in clone_reduced_states(make_cerf23(0.0), qmath.PLUS_X)]
        assert fids[0] == pytest.approx(1.0, abs=1e-12)
        assert fids[1] == pytest.approx(1.0, abs=1e-12)
        assert fids[2] == pytest.approx(0.5, abs=1e-12)

    def test_third_clone_reaches_one(self):
        # the third-clone fidelity attains one at v = 2x (x = 1/sqrt(12));
        # the printed closed form with (v - 3x) is off by a coefficient and
        # disagrees with the machine itself
        x = 1 / math.sqrt(12)
        f3 = clone_reduced_states(make_cerf23(x), qmath.PLUS_X)[2][2]
        assert f3 == pytest.approx(1.0, abs=1e-10)
        grid_max = max(cerf23_fidelities(x)[1]
                       for x in np.linspace(0, 1 / math.sqrt(8), 400))
        assert grid_max == pytest.approx(1.0, abs=1e-5)

    def test_closed_form_helper(self):
        for x in np.linspace(0, 1 / math.sqrt(8), 25):
            f12, f3 = cerf23_fidelities(x)
            got = [f for _, _, f in clone_reduced_states(make_cerf23(x), qmath.PLUS_X)]
            assert got[0] == pytest.approx(f12, abs=1e-10)
            assert got[2] == pytest.approx(f3, abs=1e-10)

    def test_beats_phase_covariant_machine_on_the_frontier(self):
        # at equal clone-pair fidelity 0.85, the universal machine's third
        # clone is strictly better, so the phase-covariant construction is
        # not the optimal asymmetric 2 -> 3 cloner
        target_f12 = 0.85
        x = math.sqrt((1 - target_f12) / 2)
        f3_universal = cerf23_fidelities(x)[1]
        lo, hi = 0.0, math.pi / 2
        while hi - lo > 1e-12:
            mid = 0.5 * (lo + hi)
            if ng23_fidelities(mid)[0] > target_f12:
                lo = mid
            else:
                hi = mid
        f3_pc = ng23_fidelities(0.5 * (lo + hi))[1]
        assert f3_universal > f3_pc + 0.01


class TestCloneReducedStates:
    def test_identity_machine_degenerate_case(self):
        assert clone_reduced_states(make_ng12(0.0), qmath.PLUS_Y)[0][2] == pytest.approx(1.0, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(Exception):
            make_ng12(0.3).isometry @ np.ones(3)


class TestSiftedAttack:
    def test_announced_set_symmetry(self):
        # all four announced sets and both set members give the same numbers
        m = make_cerf12(0.9)
        rows = [sifted_point(m, announced=pair) for pair in ANNOUNCED_SETS]
        rows += [sifted_point(m, announced=(b, a)) for a, b in ANNOUNCED_SETS]
        for row in rows[1:]:
            assert row["qber_sifted"] == pytest.approx(rows[0]["qber_sifted"], abs=1e-10)
            assert row["i_eve"] == pytest.approx(rows[0]["i_eve"], abs=1e-10)

    def test_no_disturbance_endpoint(self):
        row = sifted_point(make_ng12(1e-8))
        assert row["disturbance"] == pytest.approx(0.0, abs=1e-12)
        assert row["i_ab"] == pytest.approx(1.0, abs=1e-6)
        assert row["i_eve"] == pytest.approx(0.0, abs=1e-6)

    def test_full_disturbance_endpoint(self):
        # at D = 1/2 the eavesdropper holds the signal state itself and her
        # information is the plain stored-pair value
        expected = qmath.binary_information(0.5 * (1 - math.sqrt(0.5)))
        for machine in (make_ng12(math.pi / 2), make_cerf12(0.5)):
            row = sifted_point(machine)
            assert row["disturbance"] == pytest.approx(0.5, abs=1e-12)
            assert row["i_eve"] == pytest.approx(expected, abs=1e-6)

    def test_qber_vs_disturbance_relation(self):
        # accepted-branch error rate is D / (D + 1/2)
        for g in (0.3, 0.7, 1.1):
            row = sifted_point(make_ng12(g))
            d = row["disturbance"]
            assert row["qber_sifted"] == pytest.approx(d / (d + 0.5), abs=1e-10)

    def test_interior_maximum(self):
        rows = sifted_cloning_attack(make_ng12, np.linspace(1e-4, math.pi / 2, 120))
        infos = [r["i_eve"] for r in rows]
        k = int(np.argmax(infos))
        assert 0 < k < len(infos) - 1
        assert infos[k] > infos[-1] + 0.05

    def test_crossing_near_15pct_qber(self):
        rows = sifted_cloning_attack(make_cerf12, 1 - np.linspace(1e-6, 0.5, 400))
        crossing = information_crossing(rows, axis="qber_sifted")
        assert crossing == pytest.approx(0.155, abs=0.002)

    def test_machines_equivalent_under_minimum_error_model(self):
        # with the acceptance-mixture + minimum-error model the two 1 -> 2
        # machines give the same post-sifting information at equal
        # disturbance (the Bell-ancilla machine is never below)
        for g in (0.3, 0.6, 0.9, 1.2):
            ng = sifted_point(make_ng12(g))
            cf = sifted_point(make_cerf12(1 - ng["disturbance"]))
            assert cf["i_eve"] >= ng["i_eve"] - 1e-9
            assert cf["i_eve"] == pytest.approx(ng["i_eve"], abs=1e-9)


class TestPnsCloning23:
    def test_feasibility_check(self):
        with pytest.raises(InfeasibleModelError):
            pns_cloning_attack(make_ngs23, 0.2, 5.0, [0.3])
        # boundary: just above the blocking attenuation is fine
        pns_cloning_attack(make_ngs23, 0.2, 10.3, [0.3])

    def test_crossing_near_8p5pct_qber(self):
        rows = pns_cloning_attack(make_ngs23, 0.2, 12.0,
                                  np.linspace(1e-4, math.pi / 2, 400))
        crossing = information_crossing(rows, axis="qber_sifted")
        assert crossing == pytest.approx(0.085, abs=0.005)

    def test_symmetrized_machine_dominates_at_small_disturbance(self):
        for d in (0.002, 0.005, 0.01, 0.02):
            g = cloning.ngs23_gamma_for_disturbance(d)
            ngs = sifted_point(make_ngs23(g))
            cf = sifted_point(make_cerf23(math.sqrt(d / 2)))
            assert ngs["disturbance"] == pytest.approx(cf["disturbance"], abs=1e-9)
            assert ngs["i_eve"] > cf["i_eve"]

    def test_zero_disturbance_limit_is_single_copy_storing(self):
        # with a perfect clone forwarded, the eavesdropper keeps exactly one
        # pristine copy, so the limit is the one-copy stored-pair value
        expected = qmath.binary_information(0.5 * (1 - math.sqrt(0.5)))
        for machine in (make_ngs23(1e-6), make_cerf23(1e-7)):
            row = sifted_point(machine)
            assert row["i_eve"] == pytest.approx(expected, abs=1e-4)


class TestReferenceCurve:
    def test_crossing_value(self):
        # reference individual-attack tolerance for basis-revealing sifting
        d = (1 - 1 / math.sqrt(2)) / 2
        assert bb84_reference_information(d) == pytest.approx(
            qmath.binary_information(d), abs=1e-12)

    def test_monotone_from_zero(self):
        assert bb84_reference_information(0.0) == pytest.approx(0.0, abs=1e-12)
        assert bb84_reference_information(0.5) == pytest.approx(1.0, abs=1e-12)
