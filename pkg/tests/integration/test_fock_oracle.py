"""Fock-space oracle against the covariance-matrix closed forms."""

import math

import numpy as np
import pytest
from scipy.special import comb, factorial

from src.models.fock import OracleChannelSpec
from src.models.onemode import OneModeParams
from src.services.fock_oracle import (
    annihilation,
    attenuate_fock,
    attenuation_kraus,
    classical_noise_fock,
    coherent_info_fock,
    creation,
    displacement,
    exchange_entropy_fock,
    gaussian_maximality_probe,
    joint_output_fock,
    number_operator,
    number_state,
    output_entropy_fock,
    partial_trace,
    perturbed_thermal,
    thermal_fock,
    trace_norm_fock,
    two_mode_squeezed,
    vn_entropy,
)
from src.services.gaussian_state import g_function
from src.services.onemode import report
from src.utils.exceptions import CutoffTooSmallError, InvalidArgumentError

pytestmark = [pytest.mark.integration, pytest.mark.slow]

ORACLE_GRID = [(k, nc, n) for k in (0.5, 0.8) for nc in (0.0, 0.5) for n in (0.2, 1.0)]


class TestOperators:
    """Tests for ladder operators and displacements."""

    def test_commutator_below_cutoff(self):
        a, a_dag = annihilation(10).matrix, creation(10).matrix
        commutator = a @ a_dag - a_dag @ a
        assert commutator[:-1, :-1] == pytest.approx(np.eye(9))

    def test_number_operator(self):
        a, a_dag = annihilation(8).matrix, creation(8).matrix
        assert (a_dag @ a) == pytest.approx(number_operator(8).matrix)

    def test_displaced_vacuum_is_coherent(self):
        alpha = 0.5 + 0.2j
        column = displacement(alpha, 40).matrix[:, 0]
        levels = np.arange(40)
        expected = np.exp(-abs(alpha) ** 2 / 2) * alpha**levels / np.sqrt(factorial(levels))
        assert column == pytest.approx(expected, abs=1e-12)

    def test_displacement_inverse(self):
        alpha = 0.7 - 0.4j
        product = displacement(alpha, 60).matrix @ displacement(-alpha, 60).matrix
        assert product[:10, :10] == pytest.approx(np.eye(10), abs=1e-10)

    def test_number_state_range(self):
        with pytest.raises(InvalidArgumentError, match="outside cutoff"):
            number_state(5, 5)


class TestThermalStates:
    """Tests for thermal densities and entropy."""

    def test_entropy_is_g(self, oracle_cutoff):
        assert vn_entropy(thermal_fock(1.0, oracle_cutoff)) == pytest.approx(2.0, abs=1e-6)

    def test_cutoff_too_small(self):
        with pytest.raises(CutoffTooSmallError) as excinfo:
            thermal_fock(1.0, 5)
        assert excinfo.value.required_cutoff == 27
        assert excinfo.value.leak == pytest.approx(0.5**5)

    def test_two_mode_squeezed_marginals(self, joint_cutoff):
        n = 0.8
        joint = two_mode_squeezed(n, joint_cutoff)
        assert vn_entropy(joint) == pytest.approx(0.0, abs=1e-9)
        for keep in (0, 1):
            marginal = partial_trace(joint, keep)
            assert vn_entropy(marginal) == pytest.approx(g_function(n), abs=1e-6)

    def test_partial_trace_needs_two_modes(self, oracle_cutoff):
        with pytest.raises(InvalidArgumentError, match="two-mode"):
            partial_trace(thermal_fock(0.5, oracle_cutoff), 0)


class TestAttenuation:
    """Tests for the pure-loss channel."""

    def test_kraus_completeness(self):
        ops = attenuation_kraus(0.7, 30)
        total = np.einsum("lij,lik->jk", ops, ops)
        assert total == pytest.approx(np.eye(30), abs=1e-12)

    def test_kraus_matches_unitary(self, oracle_cutoff):
        rho = thermal_fock(1.0, oracle_cutoff)
        kraus = attenuate_fock(rho, 0.8, method="kraus")
        unitary = attenuate_fock(rho, 0.8, method="unitary")
        assert np.max(np.abs(kraus.matrix - unitary.matrix)) < 1e-10

    def test_number_state_binomial(self):
        k = 0.6
        out = attenuate_fock(number_state(3, 10), k).matrix.diagonal().real
        j = np.arange(4)
        expected = comb(3, j) * k ** (2 * j) * (1 - k * k) ** (3 - j)
        assert out[:4] == pytest.approx(expected, abs=1e-12)

    def test_thermal_stays_thermal(self, oracle_cutoff):
        k, n = 0.8, 1.0
        out = attenuate_fock(thermal_fock(n, oracle_cutoff), k).matrix.diagonal().real
        n_out = k * k * n
        levels = np.arange(oracle_cutoff)
        expected = n_out**levels / (n_out + 1) ** (levels + 1)
        assert out == pytest.approx(expected, abs=1e-10)

    def test_unknown_method(self):
        with pytest.raises(InvalidArgumentError, match="unknown attenuation method"):
            attenuation_kraus(0.5, 10, method="mirror")


class TestClassicalNoise:
    """Tests for the quadrature-based random displacement."""

    def test_vacuum_becomes_thermal(self, oracle_cutoff):
        nc = 0.5
        out = classical_noise_fock(thermal_fock(0.0, oracle_cutoff), nc)
        assert vn_entropy(out) == pytest.approx(g_function(nc), abs=1e-6)
        mean = float(np.real(np.trace(number_operator(oracle_cutoff).matrix @ out.matrix)))
        assert mean == pytest.approx(nc, abs=1e-7)

    def test_zero_noise_is_identity(self, oracle_cutoff):
        rho = thermal_fock(0.4, oracle_cutoff)
        assert classical_noise_fock(rho, 0.0) is rho

    def test_leak_detected(self):
        with pytest.raises(CutoffTooSmallError, match="classical noise"):
            classical_noise_fock(thermal_fock(0.1, 12), 3.0)


class TestEntropyAgreement:
    """Oracle entropies against the closed forms."""

    @pytest.mark.parametrize(("k", "nc", "n"), ORACLE_GRID)
    def test_output_entropy(self, k, nc, n, oracle_cutoff):
        expected = report(OneModeParams(k=k, nc=nc), n).h_out
        achieved = output_entropy_fock(OracleChannelSpec(k=k, nc=nc), n, oracle_cutoff)
        assert abs(achieved - expected) < 1e-4

    @pytest.mark.parametrize(("k", "nc", "n"), ORACLE_GRID)
    def test_exchange_entropy(self, k, nc, n, joint_cutoff):
        expected = report(OneModeParams(k=k, nc=nc), n).h_exch
        achieved = exchange_entropy_fock(OracleChannelSpec(k=k, nc=nc), n, joint_cutoff)
        assert abs(achieved - expected) < 1e-3

    def test_exchange_entropy_worked_example(self, joint_cutoff):
        achieved = exchange_entropy_fock(OracleChannelSpec(k=0.8), 1.0, joint_cutoff)
        assert achieved == pytest.approx(g_function(0.36), abs=1e-3)

    def test_unit_gain_noise(self, joint_cutoff):
        expected = report(OneModeParams(k=1.0, nc=0.5), 1.0).h_exch
        achieved = exchange_entropy_fock(OracleChannelSpec(k=1.0, nc=0.5), 1.0, joint_cutoff)
        assert achieved == pytest.approx(expected, abs=1e-3)

    def test_identity_channel_keeps_joint_pure(self, joint_cutoff):
        joint = joint_output_fock(OracleChannelSpec(k=1.0), thermal_fock(1.0, joint_cutoff))
        assert vn_entropy(joint) == pytest.approx(0.0, abs=1e-6)

    def test_coherent_information(self, joint_cutoff):
        spec = OracleChannelSpec(k=0.8)
        achieved = coherent_info_fock(spec, thermal_fock(1.0, joint_cutoff))
        assert achieved == pytest.approx(report(OneModeParams(k=0.8, nc=0.0), 1.0).j, abs=1e-3)

    def test_nats(self, oracle_cutoff):
        spec = OracleChannelSpec(k=0.8, nc=0.0)
        bits = output_entropy_fock(spec, 1.0, oracle_cutoff)
        nats = output_entropy_fock(spec, 1.0, oracle_cutoff, base=math.e)
        assert nats == pytest.approx(bits * math.log(2))


class TestTraceNorm:
    """Trace norm of the Gaussian operator rho_gamma."""

    @pytest.mark.parametrize("gamma", [0.1, 0.25, 0.4, 0.5, 1.0, 3.0])
    def test_law(self, gamma):
        assert trace_norm_fock(gamma, 200) == pytest.approx(max(1.0, 1 / (2 * gamma)), abs=1e-5)

    def test_alternating_series_needs_cutoff(self):
        with pytest.raises(CutoffTooSmallError) as excinfo:
            trace_norm_fock(0.1, 10)
        assert excinfo.value.required_cutoff > 10


class TestGaussianMaximality:
    """Moment-matched non-Gaussian inputs never beat the thermal state."""

    def test_perturbation_matches_moments(self, joint_cutoff):
        n = 0.8
        rho = perturbed_thermal(n, seed=3, cutoff=joint_cutoff).matrix
        thermal = thermal_fock(n, joint_cutoff).matrix
        a = annihilation(joint_cutoff).matrix
        number = number_operator(joint_cutoff).matrix
        assert np.trace(rho).real == pytest.approx(np.trace(thermal).real, abs=1e-12)
        mean_number = np.trace(number @ thermal).real
        assert np.trace(number @ rho).real == pytest.approx(mean_number, abs=1e-12)
        assert abs(np.trace(a @ rho)) < 1e-12
        assert abs(np.trace(a @ a @ rho)) < 1e-12
        assert not np.allclose(rho, thermal)

    def test_zero_amplitude_gives_equality(self, joint_cutoff):
        probe = gaussian_maximality_probe(
            OracleChannelSpec(k=0.8), 0.8, seed=1, amplitude=0.0, cutoff=joint_cutoff
        )
        assert probe["i_perturbed"] == pytest.approx(probe["i_gaussian"], abs=1e-12)
        assert probe["holds"]

    @pytest.mark.parametrize(("k", "nc"), [(0.8, 0.0), (0.6, 0.3)])
    def test_holds_for_twenty_seeds(self, k, nc, joint_cutoff):
        spec = OracleChannelSpec(k=k, nc=nc)
        for seed in range(20):
            probe = gaussian_maximality_probe(spec, 0.8, seed, cutoff=joint_cutoff)
            assert probe["holds"], probe
            assert probe["seed"] == seed

    def test_mutual_information_matches_closed_form(self, joint_cutoff):
        probe = gaussian_maximality_probe(
            OracleChannelSpec(k=0.8), 0.8, seed=0, amplitude=0.0, cutoff=joint_cutoff
        )
        assert probe["i_gaussian"] == pytest.approx(
            report(OneModeParams(k=0.8, nc=0.0), 0.8).c_e, abs=1e-3
        )
