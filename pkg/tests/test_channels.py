"""Tests for Kraus channels, erasure models and coherent information."""
import numpy as np
import pytest

from src.channels import (
    ChannelError,
    ErasureParams,
    InputFamily,
    KrausChannel,
    carrier_erasure_channel,
    coherent_information,
    coherent_information_by_flag,
    coherent_information_max,
    complementary_channel,
    compose,
    erasure_capacity_formula,
    erasure_channel,
    erasure_degrading_map,
    identity_channel,
    independent_erasure_channel,
    maximally_entangled_input,
    product_channel,
    schmidt_family,
    stinespring_isometry,
)
from src.quantum_core import DimensionError, basis_state, generic


def _erasure(eps: float, dim: int = 2) -> KrausChannel:
    return erasure_channel(ErasureParams(eps, dim))


class TestKrausChannel:
    def test_rejects_incomplete_set(self):
        with pytest.raises(ChannelError):
            KrausChannel([0.5 * np.eye(2)])

    def test_rejects_mixed_shapes(self):
        with pytest.raises(ChannelError):
            KrausChannel([np.eye(2), np.eye(3)])

    def test_rejects_empty_set(self):
        with pytest.raises(ChannelError):
            KrausChannel([])

    def test_apply_checks_shape(self):
        with pytest.raises(ChannelError):
            identity_channel(2).apply(np.eye(3) / 3)

    def test_product_of_identities(self):
        channel = product_channel(identity_channel(2), identity_channel(3))
        assert (channel.d_in, channel.d_out) == (6, 6)
        rho = np.diag([0.5, 0.1, 0.1, 0.1, 0.1, 0.1])
        np.testing.assert_allclose(channel.apply(rho), rho)

    @pytest.mark.parametrize("eps", [0.0, 0.3, 1.0])
    def test_output_is_a_density_matrix(self, eps):
        rng = np.random.default_rng(41)
        channel = product_channel(identity_channel(2), _erasure(eps))
        for _ in range(5):
            psi = rng.normal(size=4) + 1j * rng.normal(size=4)
            psi /= np.linalg.norm(psi)
            out = channel.apply(np.outer(psi, psi.conj()))
            np.testing.assert_allclose(out, out.conj().T, atol=1e-12)
            assert np.trace(out).real == pytest.approx(1.0)
            assert np.linalg.eigvalsh(out).min() >= -1e-12

    def test_compose_dimension_mismatch(self):
        with pytest.raises(ChannelError):
            compose(_erasure(0.1), _erasure(0.1))

    def test_stinespring_is_an_isometry(self):
        v = stinespring_isometry(_erasure(0.3))
        np.testing.assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-12)

    def test_stinespring_reproduces_channel(self):
        channel = _erasure(0.3)
        v = stinespring_isometry(channel)
        rho = np.array([[0.7, 0.2], [0.2, 0.3]])
        big = (v @ rho @ v.conj().T).reshape(channel.d_out, len(channel), channel.d_out, len(channel))
        np.testing.assert_allclose(np.einsum("aibi->ab", big), channel.apply(rho), atol=1e-12)


class TestErasure:
    def test_params_validation(self):
        with pytest.raises(ValueError):
            ErasureParams(1.5)
        with pytest.raises(ValueError):
            ErasureParams(0.1, input_dim=1)
        assert (ErasureParams(0.1, 4).output_dim, ErasureParams(0.1, 4).flag) == (5, 4)

    def test_noiseless_embeds(self):
        rho = np.array([[0.6, 0.1j], [-0.1j, 0.4]])
        out = _erasure(0.0).apply(rho)
        np.testing.assert_allclose(out[:2, :2], rho, atol=1e-12)
        assert out[2, 2] == pytest.approx(0.0)

    def test_full_erasure_is_flag(self):
        out = _erasure(1.0).apply(np.array([[0.6, 0.3], [0.3, 0.4]]))
        np.testing.assert_allclose(out, np.diag([0, 0, 1]), atol=1e-12)

    @pytest.mark.parametrize("eps", [0.0, 0.2, 0.7, 1.0])
    def test_trace_preserving(self, eps):
        for channel in (_erasure(eps), carrier_erasure_channel(2, eps), independent_erasure_channel(2, eps)):
            total = sum(k.conj().T @ k for k in channel.kraus_ops)
            np.testing.assert_allclose(total, np.eye(channel.d_in), atol=1e-12)

    def test_joint_and_independent_loss_differ(self):
        eps = 0.3
        rho = np.diag([1.0, 0, 0, 0])
        joint = carrier_erasure_channel(2, eps).apply(rho)
        independent = independent_erasure_channel(2, eps).apply(rho)

        assert joint.shape == (5, 5)
        assert joint[4, 4].real == pytest.approx(eps)
        assert joint[0, 0].real == pytest.approx(1 - eps)

        assert independent.shape == (9, 9)
        assert independent[8, 8].real == pytest.approx(eps**2)
        assert independent[0, 0].real == pytest.approx((1 - eps) ** 2)

    def test_dof_count_validation(self):
        with pytest.raises(ValueError):
            carrier_erasure_channel(0, 0.1)
        with pytest.raises(ValueError):
            independent_erasure_channel(0, 0.1)


class TestCoherentInformation:
    def test_single_qubit_erasure(self):
        assert coherent_information(_erasure(0.25), maximally_entangled_input(2)) == pytest.approx(0.5, abs=1e-9)

    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("eps", [0.0, 0.1, 0.2, 0.4, 0.5, 0.8])
    def test_carrier_formula(self, n, eps):
        channel = carrier_erasure_channel(n, eps)
        value = coherent_information(channel, maximally_entangled_input(2**n))
        assert value == pytest.approx(n * (1 - 2 * eps), abs=1e-9)

    def test_two_dof_example(self):
        value = coherent_information(carrier_erasure_channel(2, 0.2), maximally_entangled_input(4))
        assert value == pytest.approx(1.2, abs=1e-9)

    def test_product_input_carries_nothing(self):
        a, a1 = generic("A"), generic("A1")
        state = basis_state([a, a1], [0, 1])
        assert coherent_information(_erasure(0.1), state) <= 1e-12

    def test_bounded_by_log_dimension(self):
        family = schmidt_family(4, n_random=6, seed=3)
        channel = carrier_erasure_channel(2, 0.05)
        for start in family.starts:
            assert coherent_information(channel, family.build(start)) <= 2.0 + 1e-9

    def test_input_dimension_checked(self):
        with pytest.raises(DimensionError):
            coherent_information(_erasure(0.1), maximally_entangled_input(4))

    def test_flag_decomposition_matches_direct(self):
        channel, state = _erasure(0.3), maximally_entangled_input(2)
        split = coherent_information_by_flag(channel, state)
        assert split.p_kept == pytest.approx(0.7)
        assert split.p_erased == pytest.approx(0.3)
        assert split.h_b_given_z == pytest.approx(0.7)
        assert split.h_ba_given_z == pytest.approx(0.3)
        assert split.coherent_information == pytest.approx(coherent_information(channel, state), abs=1e-9)

    def test_flag_decomposition_needs_one_flag(self):
        with pytest.raises(ChannelError):
            coherent_information_by_flag(independent_erasure_channel(2, 0.1), maximally_entangled_input(4))

    def test_complement_has_opposite_sign(self):
        state = maximally_entangled_input(2)
        channel = _erasure(0.2)
        assert coherent_information(complementary_channel(channel), state) == pytest.approx(-0.6, abs=1e-9)

    def test_complement_of_erasure_is_erasure(self):
        rho = np.array([[0.6, 0.2], [0.2, 0.4]])
        env = complementary_channel(_erasure(0.2)).apply(rho)
        assert np.trace(env).real == pytest.approx(1.0)
        assert env.shape == (3, 3)


class TestDegrading:
    @pytest.mark.parametrize("eps", [0.0, 0.1, 0.3, 0.5])
    def test_degrading_map_gives_complement(self, eps):
        degraded = compose(_erasure(eps), erasure_degrading_map(ErasureParams(eps)))
        rho = np.array([[0.55, 0.3 - 0.1j], [0.3 + 0.1j, 0.45]])
        np.testing.assert_allclose(degraded.apply(rho), _erasure(1 - eps).apply(rho), atol=1e-12)

    def test_not_degradable_above_half(self):
        with pytest.raises(ValueError):
            erasure_degrading_map(ErasureParams(0.6))

    @pytest.mark.parametrize("eps", [0.1, 0.25, 0.4])
    def test_data_processing(self, eps):
        channel = _erasure(eps)
        degraded = compose(channel, erasure_degrading_map(ErasureParams(eps)))
        family = schmidt_family(2, n_random=4, seed=1)
        for start in family.starts:
            state = family.build(start)
            assert coherent_information(degraded, state) <= coherent_information(channel, state) + 1e-9


class TestCapacity:
    @pytest.mark.parametrize(
        ("eps", "n", "expected"),
        [(0.0, 1, 1.0), (0.1, 2, 1.6), (0.25, 3, 1.5), (0.5, 2, 0.0), (0.9, 3, 0.0)],
    )
    def test_formula(self, eps, n, expected):
        assert erasure_capacity_formula(eps, n) == pytest.approx(expected)

    def test_formula_validation(self):
        with pytest.raises(ValueError):
            erasure_capacity_formula(-0.1, 1)
        with pytest.raises(ValueError):
            erasure_capacity_formula(0.1, 0)
        with pytest.raises(ValueError):
            erasure_capacity_formula(0.1, 1.5)

    def test_max_for_degradable_erasure(self):
        assert coherent_information_max(_erasure(0.1)) == pytest.approx(0.8, abs=1e-6)

    def test_max_for_anti_degradable_erasure(self):
        assert coherent_information_max(_erasure(0.6)) == pytest.approx(0.0, abs=1e-6)

    def test_max_for_identity(self):
        assert coherent_information_max(identity_channel(2)) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("n", [1, 2])
    def test_max_matches_formula(self, n):
        eps = 0.2
        numeric = coherent_information_max(carrier_erasure_channel(n, eps))
        assert numeric == pytest.approx(erasure_capacity_formula(eps, n), abs=1e-6)

    def test_empty_family(self):
        family = InputFamily("empty", 2, lambda params: maximally_entangled_input(2), ())
        with pytest.raises(ValueError):
            coherent_information_max(_erasure(0.1), family)

    def test_schmidt_family_starts(self):
        family = schmidt_family(2)
        assert len(family.starts) == 6
        np.testing.assert_allclose(family.build(family.starts[0]).amplitudes, maximally_entangled_input(2).amplitudes)
        with pytest.raises(DimensionError):
            schmidt_family(2, basis=np.eye(3))
