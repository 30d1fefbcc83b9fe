"""Tests for the maximally-entangled operator algebra."""

import math

import numpy as np
import pytest

from nonlocality_lab.entangled_ops import (
    coords_from_observable,
    curve_partition,
    curve_point,
    decompose_observable,
    joint_expectation,
    kernel_split,
    make_schmidt_state,
    malus_law,
    observable_from_coords,
    operator_basis,
    single_expectation,
    square_expectation,
    theorem_bound,
    transpose_partner,
    verification_report,
)

OMEGA = (-1.0, 0.0, 1.0)


def random_hermitian(n, rng):
    raw = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (raw + raw.conj().T) / 2.0


def random_omega_observable(n, rng):
    raw = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, _ = np.linalg.qr(raw)
    diag = np.zeros(n)
    diag[0], diag[1] = 1.0, -1.0
    return (q * diag) @ q.conj().T


def partial_trace_right(rho, n):
    """Brute-force partial trace over the second factor."""
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[i, j] += rho[i * n + k, j * n + k]
    return out


class TestSchmidtState:
    def test_qubit_amplitudes(self):
        state = make_schmidt_state(2)
        np.testing.assert_allclose(
            state.amplitudes, np.array([1, 0, 0, 1]) / math.sqrt(2), atol=1e-15
        )

    @pytest.mark.parametrize("n", range(2, 7))
    def test_normalized(self, n):
        amp = make_schmidt_state(n).amplitudes
        assert np.linalg.norm(amp) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_maximally_mixed_reduction(self, n):
        amp = make_schmidt_state(n).amplitudes
        rho = np.outer(amp, amp.conj())
        reduced = partial_trace_right(rho, n)
        np.testing.assert_allclose(reduced, np.eye(n) / n, atol=1e-12)

    def test_dimension_validation(self):
        with pytest.raises(ValueError):
            make_schmidt_state(1)


class TestTransposePartner:
    def test_identity(self):
        np.testing.assert_array_equal(transpose_partner(np.eye(3)), np.eye(3))

    def test_matrix_unit_swaps_indices(self):
        unit = np.zeros((3, 3), dtype=complex)
        unit[0, 1] = 1.0
        swapped = transpose_partner(unit)
        assert swapped[1, 0] == 1.0
        assert swapped.sum() == 1.0

    @pytest.mark.parametrize("n", range(2, 7))
    def test_identity_on_state(self, n):
        rng = np.random.default_rng(n)
        psi = make_schmidt_state(n).amplitudes
        for _ in range(10):
            x = random_hermitian(n, rng)
            lhs = np.kron(x, np.eye(n)) @ psi
            rhs = np.kron(np.eye(n), transpose_partner(x)) @ psi
            assert np.max(np.abs(lhs - rhs)) < 1e-12


class TestOperatorBasis:
    def test_count_and_first_member(self):
        basis, partners = operator_basis(2)
        assert len(basis) == 4 and len(partners) == 4
        np.testing.assert_allclose(
            basis[0], math.sqrt(2) * np.diag([1.0, 0.0]), atol=1e-15
        )

    @pytest.mark.parametrize("n", range(2, 6))
    def test_all_hermitian(self, n):
        basis, partners = operator_basis(n)
        for op in basis + partners:
            assert np.max(np.abs(op - op.conj().T)) < 1e-15

    @pytest.mark.parametrize("n", range(2, 6))
    def test_orthonormal_on_state(self, n):
        basis, partners = operator_basis(n)
        psi = make_schmidt_state(n).amplitudes
        for r in range(n * n):
            for s in range(n * n):
                value = np.real(psi.conj() @ (np.kron(basis[r], partners[s]) @ psi))
                assert value == pytest.approx(1.0 if r == s else 0.0, abs=1e-12)

    def test_not_the_pauli_expansion(self):
        # in a Pauli-type basis the identity is itself a member; here its
        # coordinates spread over both diagonal projectors
        coords = coords_from_observable(np.eye(2))
        nonzero = np.abs(coords) > 1e-12
        assert nonzero.sum() == 2
        np.testing.assert_allclose(
            coords, [1 / math.sqrt(2), 1 / math.sqrt(2), 0.0, 0.0], atol=1e-12
        )

    def test_coords_roundtrip(self):
        rng = np.random.default_rng(17)
        for n in (2, 3, 5):
            h = random_hermitian(n, rng)
            coords = coords_from_observable(h)
            np.testing.assert_allclose(observable_from_coords(coords), h, atol=1e-12)


class TestExpectations:
    def test_basis_vector(self):
        e1 = np.zeros(4)
        e1[0] = 1.0
        assert joint_expectation(e1, e1) == pytest.approx(1.0, abs=1e-12)

    def test_matches_dot_product(self):
        rng = np.random.default_rng(18)
        for _ in range(10):
            a = rng.normal(size=16)
            b = rng.normal(size=16)
            assert joint_expectation(a, b) == pytest.approx(float(a @ b), abs=1e-12)

    def test_square_matches_norm(self):
        rng = np.random.default_rng(19)
        a = rng.normal(size=16)
        assert square_expectation(a) == pytest.approx(float(a @ a), abs=1e-11)

    def test_single_is_normalized_trace(self):
        rng = np.random.default_rng(20)
        h = random_hermitian(3, rng)
        coords = coords_from_observable(h)
        assert single_expectation(coords) == pytest.approx(
            float(np.trace(h).real) / 3.0, abs=1e-12
        )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            joint_expectation(np.zeros(4), np.zeros(9))

    def test_non_square_length(self):
        with pytest.raises(ValueError):
            observable_from_coords(np.zeros(5))


class TestDecomposition:
    def test_identity(self):
        decomp = decompose_observable(np.eye(3))
        assert decomp.alpha0 == pytest.approx(1.0)
        np.testing.assert_allclose(decomp.coefficients, 0.0, atol=1e-12)
        assert len(decomp.operators) == 2

    def test_already_in_form(self):
        decomp = decompose_observable(np.diag([1.0, -1.0]))
        assert decomp.alpha0 == pytest.approx(0.0, abs=1e-15)
        assert decomp.coefficients == pytest.approx([1.0])
        np.testing.assert_allclose(decomp.operators[0], np.diag([1.0, -1.0]), atol=1e-12)

    @pytest.mark.parametrize("n", (2, 4, 6))
    def test_random_hermitian(self, n):
        rng = np.random.default_rng(21 + n)
        for _ in range(5):
            h = random_hermitian(n, rng)
            decomp = decompose_observable(h)
            # reconstruction
            rebuilt = decomp.alpha0 * np.eye(n) + sum(
                c * op for c, op in zip(decomp.coefficients, decomp.operators)
            )
            assert np.max(np.abs(rebuilt - h)) < 1e-10
            # commuting family with spectrum in {-1, 0, 1}, traceless
            for i, op in enumerate(decomp.operators):
                assert abs(np.trace(op)) < 1e-12
                for ev in np.linalg.eigvalsh(op):
                    assert min(abs(ev - w) for w in OMEGA) < 1e-10
                for other in decomp.operators[i + 1 :]:
                    assert np.max(np.abs(op @ other - other @ op)) < 1e-12
            # alpha0 is the single-party expectation
            assert decomp.alpha0 == pytest.approx(
                single_expectation(coords_from_observable(h)), abs=1e-12
            )

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            decompose_observable(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestKernelSplit:
    def test_qubit_observable(self):
        split = kernel_split(np.diag([1.0, -1.0]))
        np.testing.assert_allclose(split.kernel_projector, 0.0, atol=1e-12)
        np.testing.assert_allclose(split.pauli_vector, [0.0, 0.0, 1.0], atol=1e-12)

    def test_kernel_location(self):
        split = kernel_split(np.diag([1.0, -1.0, 0.0]))
        np.testing.assert_allclose(split.kernel_projector, np.diag([0, 0, 1.0]), atol=1e-12)
        np.testing.assert_allclose(split.support_projector, np.diag([1.0, 1.0, 0]), atol=1e-12)

    @pytest.mark.parametrize("n", (2, 3, 4, 6))
    def test_unit_pauli_vector(self, n):
        rng = np.random.default_rng(30 + n)
        for _ in range(10):
            split = kernel_split(random_omega_observable(n, rng))
            assert np.linalg.norm(split.pauli_vector) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_wrong_spectrum(self):
        with pytest.raises(ValueError):
            kernel_split(np.diag([1.0, -1.0, 0.5]))

    def test_rejects_degenerate_extremes(self):
        with pytest.raises(ValueError):
            kernel_split(np.diag([1.0, 1.0, -1.0, 0.0]))


class TestCurve:
    def test_endpoints(self):
        rng = np.random.default_rng(40)
        coords = coords_from_observable(random_omega_observable(3, rng))
        np.testing.assert_allclose(curve_point(coords, 0.0), coords, atol=1e-12)
        np.testing.assert_allclose(curve_point(coords, math.pi), -coords, atol=1e-10)

    def test_preserves_norm_and_spectrum(self):
        rng = np.random.default_rng(41)
        coords = coords_from_observable(random_omega_observable(4, rng))
        norm = float(coords @ coords)
        for theta in np.linspace(0.0, math.pi, 7):
            point = curve_point(coords, theta)
            assert float(point @ point) == pytest.approx(norm, abs=1e-10)
            eigenvalues = np.linalg.eigvalsh(observable_from_coords(point))
            for ev in eigenvalues:
                assert min(abs(ev - w) for w in OMEGA) < 1e-10

    def test_planarity(self):
        rng = np.random.default_rng(42)
        coords = coords_from_observable(random_omega_observable(3, rng))
        nodes = np.stack(
            [curve_point(coords, theta) for theta in np.linspace(0.0, math.pi, 9)]
        )
        singular = np.linalg.svd(nodes, compute_uv=False)
        assert singular[2] < 1e-10

    def test_deterministic(self):
        rng = np.random.default_rng(43)
        coords = coords_from_observable(random_omega_observable(3, rng))
        np.testing.assert_array_equal(
            curve_point(coords, 0.7), curve_point(coords, 0.7)
        )

    def test_domain_validation(self):
        rng = np.random.default_rng(44)
        coords = coords_from_observable(random_omega_observable(3, rng))
        with pytest.raises(ValueError):
            curve_point(coords, -0.1)
        with pytest.raises(ValueError):
            curve_point(coords, 3.3)

    def test_rejects_generic_observable(self):
        rng = np.random.default_rng(45)
        coords = coords_from_observable(random_hermitian(3, rng))
        with pytest.raises(ValueError):
            curve_point(coords, 0.5)


class TestCurvePartition:
    def test_single_step(self):
        rng = np.random.default_rng(46)
        coords = coords_from_observable(random_omega_observable(2, rng))
        part = curve_partition(coords, 1)
        assert part.nodes.shape == (2, 4)
        np.testing.assert_allclose(part.nodes[0], coords, atol=1e-12)
        np.testing.assert_allclose(part.nodes[1], -coords, atol=1e-10)
        dot = float(part.nodes[0] @ part.nodes[1])
        assert dot == pytest.approx(-float(coords @ coords), abs=1e-10)

    def test_spacing_identity(self):
        rng = np.random.default_rng(47)
        coords = coords_from_observable(random_omega_observable(3, rng))
        part = curve_partition(coords, 8)
        norm = float(coords @ coords)
        assert norm == pytest.approx(2.0 / 3.0, abs=1e-12)  # = 2/N
        expected = norm * math.cos(math.pi / 8)
        for j in range(8):
            dot = float(part.nodes[j] @ part.nodes[j + 1])
            assert dot == pytest.approx(expected, abs=1e-10)

    def test_invalid_count(self):
        with pytest.raises(ValueError):
            curve_partition(np.zeros(4), 0)


class TestTheoremBound:
    def test_single_partition(self):
        assert theorem_bound(1, 1.0, 2) == pytest.approx(1.0, abs=1e-15)

    def test_large_n_small_angle(self):
        value = theorem_bound(1_000_000, 1.0, 2)
        assert value == pytest.approx(math.pi**2 / 4e6, rel=1e-9)
        assert value < 3e-6

    def test_strictly_decreasing(self):
        values = [theorem_bound(n) for n in range(2, 1025)]
        assert all(u > v for u, v in zip(values, values[1:]))

    def test_validation(self):
        with pytest.raises(ValueError):
            theorem_bound(0)


class TestMalusLaw:
    def test_aligned(self):
        assert malus_law([0, 0, 1], [0, 0, 1]) == pytest.approx(1.0)

    def test_orthogonal(self):
        assert malus_law([0, 0, 1], [1, 0, 0]) == pytest.approx(-1.0)

    def test_diagonal(self):
        u = [math.sqrt(0.5), 0.0, math.sqrt(0.5)]
        assert malus_law([0, 0, 1], u) == pytest.approx(0.0, abs=1e-12)

    def test_requires_unit_vectors(self):
        with pytest.raises(ValueError):
            malus_law([0, 0, 2], [0, 0, 1])


class TestVerificationReport:
    def test_small_report_passes(self):
        report = verification_report(2, 4, trials=5, seed=3)
        assert report["passed"]
        assert set(report["dimensions"]) == {2, 3, 4}
        for residuals in report["dimensions"].values():
            assert set(residuals) == set(report["tolerances"])

    def test_range_validation(self):
        with pytest.raises(ValueError):
            verification_report(3, 2)
        with pytest.raises(ValueError):
            verification_report(2, 40)
