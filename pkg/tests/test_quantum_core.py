"""Tests for labeled states and the linear algebra on them."""
from types import SimpleNamespace

import numpy as np
import pytest

from src.quantum_core import (
    BasisError,
    DensityMatrix,
    DimensionError,
    Operator,
    QuantumStateError,
    StateVector,
    SubsystemError,
    apply_kraus,
    apply_operator,
    basis_state,
    condition_on,
    entanglement_entropy,
    fidelity,
    generic,
    haar_random_state,
    haar_random_unitary,
    maximally_mixed,
    measure_in_basis,
    oam,
    outcome_probabilities,
    partial_trace,
    relabel,
    sam,
    tensor_product,
    von_neumann_entropy,
)

PHI_PLUS = np.array([1, 0, 0, 1]) / np.sqrt(2)


def _bell(a, b):
    return StateVector(PHI_PLUS, [a, b])


def _random_mixed(label, rng):
    """Full-rank mixed state on ``label``, the marginal of a Haar state with a 3-level environment."""
    env = generic(f"env_{label.photon}", dimension=3)
    return partial_trace(haar_random_state([label, env], rng), [label])


class TestLabels:
    def test_str_and_key(self):
        assert str(sam("C")) == "C_SAM"
        assert str(generic("X", 1)) == "X_G1"
        assert oam("A").key == ("A", "OAM", 0)

    def test_dimension_must_be_at_least_two(self):
        with pytest.raises(ValueError):
            generic("X", dimension=1)

    def test_with_dimension_keeps_key(self):
        label = sam("B").with_dimension(3)
        assert label.dimension == 3
        assert label.key == sam("B").key


class TestStateVector:
    def test_canonical_order(self):
        """Built in (B_OAM, A_SAM) order, stored as (A_SAM, B_OAM)."""
        psi = StateVector([0, 0, 1, 0], [oam("B"), sam("A")])  # |B=1, A=0>
        assert psi.subsystems == (sam("A"), oam("B"))
        np.testing.assert_allclose(psi.amplitudes, [0, 1, 0, 0])

    def test_same_state_in_any_order_has_fidelity_one(self):
        a = basis_state([sam("A"), oam("A")], [0, 1])
        b = basis_state([oam("A"), sam("A")], [1, 0])
        assert fidelity(a, b) == pytest.approx(1.0)

    def test_rejects_unnormalized(self):
        with pytest.raises(QuantumStateError):
            StateVector([1, 1], [sam("A")])

    def test_normalize(self):
        psi = StateVector([1, 1], [sam("A")], normalize=True)
        assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0)

    def test_rejects_duplicates(self):
        with pytest.raises(SubsystemError):
            StateVector(PHI_PLUS, [sam("A"), sam("A")])

    def test_rejects_wrong_length(self):
        with pytest.raises(DimensionError):
            StateVector([1, 0, 0], [sam("A")])

    def test_amplitudes_are_read_only(self):
        psi = basis_state([sam("A")], [0])
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 0


class TestDensityMatrix:
    def test_rejects_non_hermitian(self):
        with pytest.raises(QuantumStateError):
            DensityMatrix([[0.5, 0.5], [0.0, 0.5]], [sam("A")])

    def test_rejects_bad_trace(self):
        with pytest.raises(QuantumStateError):
            DensityMatrix(np.eye(2), [sam("A")])

    def test_rejects_negative(self):
        with pytest.raises(QuantumStateError):
            DensityMatrix(np.diag([1.5, -0.5]), [sam("A")])

    def test_purity(self):
        assert maximally_mixed([sam("A"), oam("A")]).purity() == pytest.approx(0.25)


class TestOperations:
    def test_tensor_product_kinds_must_match(self):
        with pytest.raises(TypeError):
            tensor_product(basis_state([sam("A")], [0]), maximally_mixed([sam("B")]))

    def test_tensor_product_rejects_overlap(self):
        with pytest.raises(SubsystemError):
            tensor_product(basis_state([sam("A")], [0]), basis_state([sam("A")], [1]))

    def test_partial_trace_of_bell_pair(self):
        rho = partial_trace(_bell(sam("A"), sam("B")), [sam("B")])
        np.testing.assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-12)

    def test_partial_trace_of_density_matches_vector(self):
        rng = np.random.default_rng(3)
        psi = haar_random_state([sam("A"), oam("A"), sam("B")], rng)
        keep = [oam("A"), sam("B")]
        np.testing.assert_allclose(
            partial_trace(psi, keep).matrix,
            partial_trace(psi.to_density(), keep).matrix,
            atol=1e-12,
        )

    def test_partial_trace_of_mixed_product(self):
        rng = np.random.default_rng(21)
        for _ in range(5):
            rho_a = _random_mixed(sam("A"), rng)
            rho_b = _random_mixed(oam("B"), rng)
            reduced = partial_trace(tensor_product(rho_a, rho_b), [sam("A")])
            np.testing.assert_allclose(reduced.matrix, rho_a.matrix, atol=1e-12)

    def test_entropy_is_additive_on_products(self):
        rng = np.random.default_rng(22)
        for _ in range(5):
            rho_a = _random_mixed(sam("A"), rng)
            rho_b = _random_mixed(oam("B"), rng)
            joint = von_neumann_entropy(tensor_product(rho_a, rho_b))
            assert joint == pytest.approx(von_neumann_entropy(rho_a) + von_neumann_entropy(rho_b), abs=1e-9)

    def test_partial_trace_missing_label(self):
        with pytest.raises(SubsystemError):
            partial_trace(basis_state([sam("A")], [0]), [sam("Z")])

    def test_relabel(self):
        psi = relabel(basis_state([sam("A")], [1]), {sam("A"): sam("E")})
        assert psi.subsystems == (sam("E"),)
        np.testing.assert_allclose(psi.amplitudes, [0, 1])

    def test_relabel_missing_source(self):
        with pytest.raises(SubsystemError):
            relabel(basis_state([sam("A")], [1]), {sam("Q"): sam("E")})

    def test_entropies(self):
        assert entanglement_entropy(_bell(sam("A"), sam("B")), [sam("A")]) == pytest.approx(1.0, abs=1e-12)
        assert von_neumann_entropy(maximally_mixed([sam("A"), sam("B")])) == pytest.approx(2.0)
        assert von_neumann_entropy(basis_state([sam("A")], [0])) == 0.0

    def test_entropy_rejects_negative_spectrum(self):
        bad = DensityMatrix(np.diag([1.5, -0.5]), [sam("A")], check=False)
        with pytest.raises(QuantumStateError):
            von_neumann_entropy(bad)

    def test_fidelity_pure_vs_maximally_mixed(self):
        rng = np.random.default_rng(0)
        labels = [sam("A"), oam("A")]
        psi = haar_random_state(labels, rng)
        assert fidelity(psi, maximally_mixed(labels)) == pytest.approx(0.25)

    def test_fidelity_mixed_with_itself(self):
        rng = np.random.default_rng(1)
        psi = haar_random_state([sam("A"), sam("B")], rng)
        rho = partial_trace(psi, [sam("A")])
        assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-9)

    def test_fidelity_structure_mismatch(self):
        with pytest.raises(DimensionError):
            fidelity(basis_state([sam("A")], [0]), basis_state([sam("B")], [0]))

    def test_apply_operator(self):
        x = Operator([[0, 1], [1, 0]], (2,), unitary=True, name="X")
        psi = apply_operator(basis_state([sam("A"), sam("B")], [0, 0]), x, [sam("B")])
        assert fidelity(psi, basis_state([sam("A"), sam("B")], [0, 1])) == pytest.approx(1.0)

    def test_apply_operator_on_density(self):
        x = Operator([[0, 1], [1, 0]], (2,), unitary=True)
        rho = apply_operator(basis_state([sam("A")], [0]).to_density(), x, [sam("A")])
        np.testing.assert_allclose(rho.matrix, [[0, 0], [0, 1]])

    def test_apply_operator_needs_targets(self):
        x = Operator([[0, 1], [1, 0]], (2,), unitary=True)
        with pytest.raises(SubsystemError):
            apply_operator(basis_state([sam("A")], [0]), x, [])

    def test_operator_dims_must_match_targets(self):
        x = Operator(np.eye(4), (2, 2))
        with pytest.raises(DimensionError):
            apply_operator(basis_state([oam("A", 3)], [0]), x, [oam("A", 3)])

    def test_non_unitary_operator_rejected(self):
        with pytest.raises(QuantumStateError):
            Operator([[1, 1], [0, 1]], (2,), unitary=True)

    def test_apply_kraus_bit_flip(self):
        p = 0.3
        channel = SimpleNamespace(
            kraus_ops=(np.sqrt(1 - p) * np.eye(2), np.sqrt(p) * np.array([[0, 1], [1, 0]])),
            d_in=2,
            d_out=2,
        )
        rho = apply_kraus(basis_state([sam("A")], [0]), channel, [sam("A")])
        np.testing.assert_allclose(rho.matrix, np.diag([1 - p, p]), atol=1e-12)

    def test_apply_kraus_changes_dimension(self):
        embed = np.eye(3, 2)
        channel = SimpleNamespace(kraus_ops=(embed,), d_in=2, d_out=3)
        rho = apply_kraus(_bell(sam("A"), sam("B")), channel, [sam("A")])
        assert rho.subsystems == (sam("A").with_dimension(3), sam("B"))
        assert np.trace(rho.matrix).real == pytest.approx(1.0)

    def test_condition_on(self):
        projector = np.diag([1.0, 0.0])
        p, rho = condition_on(_bell(sam("A"), sam("B")), projector, [sam("A")])
        assert p == pytest.approx(0.5)
        assert fidelity(basis_state([sam("A"), sam("B")], [0, 0]), rho) == pytest.approx(1.0)

    def test_condition_on_empty_branch(self):
        p, rho = condition_on(basis_state([sam("A")], [0]), np.diag([0.0, 1.0]), [sam("A")])
        assert p == 0.0
        assert rho is None


class TestMeasurement:
    def test_computational_measurement_statistics(self):
        labels = [sam("A")]
        psi = StateVector([np.sqrt(0.3), np.sqrt(0.7)], labels)
        basis = [basis_state(labels, [0]), basis_state(labels, [1])]
        np.testing.assert_allclose(outcome_probabilities(psi, basis), [0.3, 0.7])

    def test_sampled_frequencies(self):
        labels = [sam("A")]
        psi = StateVector([np.sqrt(0.3), np.sqrt(0.7)], labels)
        basis = [basis_state(labels, [0]), basis_state(labels, [1])]
        rng = np.random.default_rng(31)
        shots = 10_000
        ones = sum(measure_in_basis(psi, basis, rng).index for _ in range(shots))
        sigma = np.sqrt(shots * 0.3 * 0.7)
        assert abs(ones - 0.7 * shots) < 3 * sigma

    def test_post_state_of_forced_outcome(self):
        psi = _bell(sam("A"), sam("B"))
        basis = [basis_state([sam("A")], [0]), basis_state([sam("A")], [1])]
        index, post, p = measure_in_basis(psi, basis, None, outcome=1)
        assert (index, p) == (1, pytest.approx(0.5))
        assert fidelity(post, basis_state([sam("B")], [1])) == pytest.approx(1.0)

    def test_forced_zero_probability_outcome(self):
        labels = [sam("A")]
        basis = [basis_state(labels, [0]), basis_state(labels, [1])]
        with pytest.raises(BasisError):
            measure_in_basis(basis_state(labels, [0]), basis, None, outcome=1)

    def test_sampling_needs_a_generator(self):
        labels = [sam("A")]
        basis = [basis_state(labels, [0]), basis_state(labels, [1])]
        with pytest.raises(ValueError):
            measure_in_basis(basis_state(labels, [0]), basis, None)

    def test_incomplete_basis(self):
        labels = [sam("A")]
        with pytest.raises(BasisError):
            measure_in_basis(basis_state(labels, [0]), [basis_state(labels, [0])], None, outcome=0)

    def test_non_orthogonal_basis(self):
        labels = [sam("A")]
        plus = StateVector([1, 1], labels, normalize=True)
        with pytest.raises(BasisError):
            outcome_probabilities(basis_state(labels, [0]), [basis_state(labels, [0]), plus])

    def test_density_matrix_measurement(self):
        rho = maximally_mixed([sam("A"), sam("B")])
        basis = [basis_state([sam("A")], [0]), basis_state([sam("A")], [1])]
        _, post, p = measure_in_basis(rho, basis, None, outcome=0)
        assert p == pytest.approx(0.5)
        np.testing.assert_allclose(post.matrix, np.eye(2) / 2, atol=1e-12)


class TestHaar:
    def test_random_state_is_normalized(self):
        psi = haar_random_state([sam("A"), oam("A")], np.random.default_rng(5))
        assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0)

    def test_random_unitary(self):
        u = haar_random_unitary(4, np.random.default_rng(5))
        np.testing.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)

    def test_random_unitary_preserves_norm(self):
        rng = np.random.default_rng(6)
        labels = [sam("A"), oam("A")]
        for _ in range(20):
            u = Operator(haar_random_unitary(4, rng), (2, 2))
            psi = apply_operator(haar_random_state(labels, rng), u, labels)
            assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0, abs=1e-12)

    def test_mean_reduced_purity(self):
        """Average marginal purity of a Haar two-qubit state is (2 + 2) / (4 + 1)."""
        rng = np.random.default_rng(8)
        purities = [
            partial_trace(haar_random_state([sam("A"), sam("B")], rng), [sam("A")]).purity()
            for _ in range(4000)
        ]
        assert np.mean(purities) == pytest.approx(0.8, abs=0.01)

    def test_seeded_draws_repeat(self):
        a = haar_random_state([sam("A")], np.random.default_rng(9))
        b = haar_random_state([sam("A")], np.random.default_rng(9))
        np.testing.assert_array_equal(a.amplitudes, b.amplitudes)
