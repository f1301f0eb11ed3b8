"""Truncated Fock-space oracle: internal consistency and closed-form agreement."""

import math

import numpy as np
import pytest

from gaussnorm import (
    char_function,
    power_char_function,
    standard_form,
    tr_rho_p,
    validate_state,
)
from gaussnorm.errors import (
    NotDensityOperatorError,
    TailTooLargeError,
    TruncationInsufficientError,
)
from gaussnorm.fock import (
    TruncatedOperator,
    apply_kraus,
    attenuator_kraus,
    char_function_fock,
    covariance_from_fock,
    default_n_max,
    doubling_check,
    ladder_operators,
    matrix_power_fock,
    quadratures,
    thermal_state_fock,
    tr_power_fock,
    weyl_operator,
)


def thermal_gaussian(N, s=1):
    space = standard_form(s)
    return validate_state(np.zeros(2 * s), (N + 0.5) * np.eye(2 * s), space)


class TestLadderOperators:
    def test_smallest_truncation(self):
        a, _ = ladder_operators(1)
        np.testing.assert_array_equal(a.matrix, np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_number_operator(self):
        a, a_dag = ladder_operators(2)
        np.testing.assert_allclose(a_dag.matrix @ a.matrix, np.diag([0.0, 1.0, 2.0]), atol=1e-15)

    def test_ccr_on_interior_block(self):
        n_max = 12
        q, p = quadratures(n_max)
        comm = q @ p - p @ q
        np.testing.assert_allclose(
            comm[:n_max, :n_max], 1j * np.eye(n_max + 1)[:n_max, :n_max], atol=1e-13
        )


class TestWeylOperator:
    def test_zero_displacement_is_identity(self):
        w = weyl_operator([0.0, 0.0], 20)
        np.testing.assert_allclose(w.matrix, np.eye(21), atol=1e-14)

    def test_vacuum_expectation_matches_char_function(self):
        vac = thermal_gaussian(0.0)
        for z in ([0.5, 0.0], [1.0, -1.0], [2.0, 2.0]):
            got = doubling_check(
                lambda n, z=z: weyl_operator(z, n).matrix[0, 0], 60, tail_bound=1e-10
            )
            assert got == pytest.approx(char_function(vac, z), abs=1e-8)

    def test_unitary_on_interior_block(self):
        n_max, keep = 60, 30
        w = weyl_operator([0.7, -0.3], n_max)
        prod = w.matrix @ weyl_operator([-0.7, 0.3], n_max).matrix
        np.testing.assert_allclose(prod[:keep, :keep], np.eye(n_max + 1)[:keep, :keep], atol=1e-10)


class TestThermalStateFock:
    def test_vacuum_projector(self):
        rho = thermal_state_fock(0.0, 10)
        expected = np.zeros((11, 11))
        expected[0, 0] = 1.0
        np.testing.assert_array_equal(rho.matrix.real, expected)

    def test_geometric_populations(self):
        rho = thermal_state_fock(1.0, 40)
        assert rho.matrix[0, 0].real == pytest.approx(0.5, rel=1e-14)
        assert rho.matrix[1, 1].real == pytest.approx(0.25, rel=1e-14)

    def test_tail_bound_documented_case(self):
        rho = thermal_state_fock(1.0, 80)
        tail = 1.0 - np.trace(rho.matrix).real
        assert tail == pytest.approx(2.0**-81, rel=1e-10)
        assert tail < 1e-12

    def test_tail_too_large_raises(self):
        with pytest.raises(TailTooLargeError):
            thermal_state_fock(3.0, 30)

    def test_default_n_max(self):
        assert default_n_max(0.5) == 80
        assert default_n_max(3.0) == 160


class TestTrPowerFock:
    def test_vacuum_any_p(self):
        rho = thermal_state_fock(0.0, 10)
        for p in (1.0, 1.5, 2.0, 7.0):
            assert tr_power_fock(rho, p) == pytest.approx(1.0, rel=1e-14)

    def test_thermal_geometric_series(self):
        rho = thermal_state_fock(1.0, 80)
        assert tr_power_fock(rho, 2.0) == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert tr_power_fock(rho, 3.0) == pytest.approx(1.0 / 7.0, abs=1e-12)

    def test_not_density_operator_rejected(self):
        bad = TruncatedOperator(n_max=2, matrix=np.diag([2.0, 0.0, 0.0]).astype(complex))
        with pytest.raises(NotDensityOperatorError):
            tr_power_fock(bad, 2.0)

    def test_agreement_with_closed_form(self):
        # module invariant: <= 1e-8 absolute over N and p grids
        for N in (0.5, 1.0, 2.0, 3.0):
            state = thermal_gaussian(N)
            for p in (1.5, 2.0, 3.0, 4.5):
                oracle = doubling_check(
                    lambda n, N=N, p=p: tr_power_fock(thermal_state_fock(N, n), p),
                    default_n_max(N),
                )
                assert tr_rho_p(state, p) == pytest.approx(oracle, abs=1e-8)


class TestCharFunctionFock:
    def test_trace_at_zero(self):
        rho = thermal_state_fock(1.0, 80)
        assert char_function_fock(rho, [0.0, 0.0], 80) == pytest.approx(1.0, abs=1e-12)

    def test_thermal_gaussian_value(self):
        # exp(-(1/2)(3/2)|z|^2) at z = (1, 0)
        oracle = doubling_check(
            lambda n: char_function_fock(thermal_state_fock(1.0, n), [1.0, 0.0], n), 80
        )
        assert oracle == pytest.approx(math.exp(-0.75), abs=1e-10)

    def test_grid_agreement_with_char_function(self):
        # module invariant: <= 1e-8 on the 5x5 grid z in [-2, 2]^2
        n_max = 80
        for N in (0.0, 1.0):
            state = thermal_gaussian(N)
            rho = thermal_state_fock(N, n_max)
            for x in np.linspace(-2.0, 2.0, 5):
                for y in np.linspace(-2.0, 2.0, 5):
                    got = char_function_fock(rho, [x, y], n_max)
                    assert abs(got - char_function(state, [x, y])) <= 1e-8

    def test_normalized_square_validates_g2(self):
        # rho^2 normalized is thermal with symplectic eigenvalue 5/6 at N = 1
        oracle = doubling_check(
            lambda n: char_function_fock(
                matrix_power_fock(thermal_state_fock(1.0, n), 2.0, normalize=True),
                [1.0, 0.0], n),
            80,
        )
        assert oracle == pytest.approx(math.exp(-0.5 * 5.0 / 6.0), abs=1e-10)


class TestAttenuatorKraus:
    def test_full_transmission_is_identity(self):
        ops = attenuator_kraus(1.0, 20)
        assert len(ops) == 1
        np.testing.assert_allclose(ops[0].matrix, np.eye(21), atol=1e-14)

    def test_completeness(self):
        n_max = 40
        ops = attenuator_kraus(0.5, n_max)
        total = sum(op.matrix.conj().T @ op.matrix for op in ops)
        np.testing.assert_allclose(total, np.eye(n_max + 1), atol=1e-10)

    def test_vacuum_fixed_point(self):
        for tau in (0.3, 0.7):
            ops = attenuator_kraus(tau, 20)
            vac = thermal_state_fock(0.0, 20)
            out = apply_kraus(ops, vac)
            np.testing.assert_allclose(out.matrix, vac.matrix, atol=1e-13)

    def test_identity_kraus_preserves_state(self):
        rho = thermal_state_fock(1.0, 60)
        out = apply_kraus(attenuator_kraus(1.0, 60), rho)
        np.testing.assert_allclose(out.matrix, rho.matrix, atol=1e-14)

    def test_thermal_to_thermal(self):
        # tau = 0.5 on N = 1 gives N = 0.5, i.e. d' = 1, and Tr out^2 = 1/2
        rho = thermal_state_fock(1.0, 80)
        out = apply_kraus(attenuator_kraus(0.5, 80), rho)
        expected = thermal_state_fock(0.5, 80)
        np.testing.assert_allclose(out.matrix, expected.matrix, atol=1e-13)
        assert tr_power_fock(out, 2.0) == pytest.approx(0.5, abs=1e-12)

    def test_trace_preserved(self):
        rho = thermal_state_fock(2.0, 160)
        out = apply_kraus(attenuator_kraus(0.3, 160), rho)
        assert np.trace(out.matrix).real == pytest.approx(np.trace(rho.matrix).real, abs=1e-12)


class TestCovarianceFromFock:
    def test_vacuum_moments(self):
        mean, cov = covariance_from_fock(thermal_state_fock(0.0, 20))
        np.testing.assert_allclose(mean, np.zeros(2), atol=1e-14)
        np.testing.assert_allclose(cov, 0.5 * np.eye(2), atol=1e-13)

    def test_thermal_moments(self):
        mean, cov = covariance_from_fock(thermal_state_fock(1.0, 80))
        np.testing.assert_allclose(mean, np.zeros(2), atol=1e-13)
        np.testing.assert_allclose(cov, 1.5 * np.eye(2), atol=1e-11)

    def test_kraus_output_matches_covariance_rule(self):
        # module invariant: oracle covariance matches K^T alpha K + mu to 1e-8
        space = standard_form(1)
        for tau in (0.3, 0.5, 0.9):
            for N in (0.5, 1.0, 2.0):
                def build(n, tau=tau, N=N):
                    out = apply_kraus(attenuator_kraus(tau, n), thermal_state_fock(N, n))
                    return covariance_from_fock(out)[1]
                cov = doubling_check(build, default_n_max(N))
                expected = (tau * (N + 0.5) + (1.0 - tau) / 2.0) * np.eye(2)
                assert np.max(np.abs(cov - expected)) <= 1e-8

    def test_displaced_vacuum_mean(self):
        # W(w) |0><0| W(w)^dag has mean -Delta w; attenuation scales it by sqrt(tau)
        space = standard_form(1)
        w_vec = np.array([1.0, 0.0])
        expected_mean = -space.delta @ w_vec

        def displaced(n):
            vac = thermal_state_fock(0.0, n)
            wop = weyl_operator(w_vec, n)
            return TruncatedOperator(n_max=n, matrix=wop.matrix @ vac.matrix @ wop.matrix.conj().T)

        mean = doubling_check(lambda n: covariance_from_fock(displaced(n))[0], 60)
        np.testing.assert_allclose(mean, expected_mean, atol=1e-8)

        tau = 0.5
        mean_out = doubling_check(
            lambda n: covariance_from_fock(apply_kraus(attenuator_kraus(tau, n), displaced(n)))[0],
            60,
        )
        np.testing.assert_allclose(mean_out, math.sqrt(tau) * expected_mean, atol=1e-8)


class TestDoublingCheck:
    def test_converged_quantity_passes(self):
        got = doubling_check(lambda n: tr_power_fock(thermal_state_fock(1.0, n), 2.0), 80)
        assert got == pytest.approx(1.0 / 3.0, abs=1e-10)

    def test_insufficient_truncation_detected(self):
        # force a visibly unconverged trace by disabling the tail guard
        def build(n):
            return char_function_fock(thermal_state_fock(1.0, n, tail_bound=1.0), [0.0, 0.0], n)

        with pytest.raises(TruncationInsufficientError) as err:
            doubling_check(build, 8)
        assert err.value.suggested_n_max == 16


class TestPowerCharFunctionAgainstOracle:
    def test_unnormalized_power_char_grid(self):
        # Tr rho^p W(z) closed form vs dense matrix power, p in {1.5, 2, 3}, N <= 3
        for N, p in [(0.5, 1.5), (1.0, 2.0), (1.0, 3.0), (3.0, 2.0)]:
            state = thermal_gaussian(N)
            n_max = default_n_max(N)
            rho_p = matrix_power_fock(thermal_state_fock(N, n_max), p)
            for z in ([0.0, 0.0], [1.0, 0.0], [0.5, -1.0]):
                got = char_function_fock(rho_p, z, n_max)
                assert abs(got - power_char_function(state, p, z)) <= 1e-8

    def test_mean_dependence_on_displaced_thermal(self):
        # the closed form keeps the original mean in the exponent; check it on
        # W(w) rho_th W(w)^dag, whose mean is -Delta w
        space = standard_form(1)
        w_vec = np.array([0.8, -0.6])
        N, n_max = 1.0, 120
        state = validate_state(-space.delta @ w_vec, (N + 0.5) * np.eye(2), space)
        wop = weyl_operator(w_vec, n_max)
        displaced = TruncatedOperator(
            n_max=n_max,
            matrix=wop.matrix @ thermal_state_fock(N, n_max).matrix @ wop.matrix.conj().T,
        )
        squared = matrix_power_fock(displaced, 2.0)
        for z in ([1.0, 0.0], [0.5, -1.0], [-1.5, 0.7]):
            got = char_function_fock(squared, z, n_max)
            assert abs(got - power_char_function(state, 2.0, z)) <= 1e-8
