# stdlib
import math
from typing import Callable

# 3rd party
import numpy
import pytest
from numpy.testing import assert_allclose

# this package
from nisq_noise.qmath import (
		DensityMatrix,
		PureState,
		apply_diagonal,
		apply_local,
		embed_gate,
		is_hermitian,
		is_unitary,
		partial_trace,
		tensor_product
		)

X = numpy.array([[0, 1], [1, 0]], dtype=complex)
H = numpy.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
CX = numpy.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


class TestDensityMatrix:

	def test_zero_state(self):
		rho = DensityMatrix.zero_state(2)
		assert rho.dimension == 4
		assert rho.matrix[0, 0] == 1
		assert rho.trace() == 1
		assert rho.purity() == pytest.approx(1)
		rho.check()

	def test_maximally_mixed(self):
		rho = DensityMatrix.maximally_mixed(3)
		assert rho.purity() == pytest.approx(1 / 8)
		assert_allclose(rho.eigenvalues(), [1 / 8] * 8)
		assert rho.is_valid()

	def test_from_pure(self):
		plus = PureState(1, numpy.array([1, 1]) / math.sqrt(2))
		rho = DensityMatrix.from_pure(plus)
		assert_allclose(rho.matrix, numpy.full((2, 2), 0.5))
		assert plus.to_density().allclose(rho)

	def test_from_matrix(self):
		rho = DensityMatrix.from_matrix(numpy.eye(8) / 8)
		assert rho.num_qubits == 3

		with pytest.raises(ValueError, match="Dimension 3 is not a power of two"):
			DensityMatrix.from_matrix(numpy.eye(3) / 3)

	@pytest.mark.parametrize(
			"matrix, match",
			[
					pytest.param(numpy.array([[1, 1], [0, 0]]), "not Hermitian", id="non_hermitian"),
					pytest.param(numpy.eye(2), "trace is 2.0, not 1", id="trace"),
					pytest.param(numpy.diag([1.5, -0.5]), "not positive semidefinite", id="negative"),
					]
			)
	def test_check(self, matrix: numpy.ndarray, match: str):
		rho = DensityMatrix(1, matrix)
		assert not rho.is_valid()

		with pytest.raises(ValueError, match=match):
			rho.check()

	def test_bad_shape(self):
		with pytest.raises(ValueError, match="Expected a 4x4 matrix for 2 qubits"):
			DensityMatrix(2, numpy.eye(2))

	def test_not_finite(self):
		with pytest.raises(ValueError, match="finite"):
			DensityMatrix(1, numpy.array([[numpy.nan, 0], [0, 1]]))

	def test_immutable(self):
		rho = DensityMatrix.zero_state(1)
		with pytest.raises(ValueError):
			rho.matrix[0, 0] = 0

	def test_random_states_are_valid(self, random_density: Callable[[int], DensityMatrix]):
		for n in range(1, 5):
			rho = random_density(n)
			rho.check()
			assert 1 / 2**n - 1e-12 <= rho.purity() <= 1 + 1e-12


def test_pure_state_validation():
	with pytest.raises(ValueError, match="unit norm"):
		PureState(1, numpy.array([1, 1]))

	with pytest.raises(ValueError, match="Expected 4 amplitudes"):
		PureState(2, numpy.array([1, 0]))

	assert PureState.basis(2, 3).amplitudes[3] == 1


def test_tensor_product_order():
	one = numpy.array([[0, 0], [0, 1]])
	zero = numpy.array([[1, 0], [0, 0]])
	product = tensor_product(one, zero)
	# |10><10| has index 2 with the first factor most significant
	assert product[2, 2] == 1
	assert numpy.count_nonzero(product) == 1


def test_is_unitary_and_hermitian():
	assert is_unitary(H)
	assert is_unitary(CX)
	assert not is_unitary(numpy.array([[1, 1], [0, 1]]))
	assert not is_unitary(numpy.ones((2, 3)))
	assert is_hermitian(X)
	assert not is_hermitian(numpy.array([[0, 1j], [1j, 0]]))


class TestPartialTrace:

	def test_product_state(self, random_density: Callable[[int], DensityMatrix]):
		a, b = random_density(1), random_density(2)
		rho = DensityMatrix(3, numpy.kron(a.matrix, b.matrix))

		assert partial_trace(rho, {0}).allclose(a)
		assert partial_trace(rho, {1, 2}).allclose(b)

	def test_bell_state(self):
		bell = PureState(2, numpy.array([1, 0, 0, 1]) / math.sqrt(2)).to_density()
		assert partial_trace(bell, {1}).allclose(DensityMatrix.maximally_mixed(1))

	def test_order(self, random_density: Callable[[int], DensityMatrix]):
		a, b = random_density(1), random_density(1)
		rho = DensityMatrix(2, numpy.kron(a.matrix, b.matrix))

		swapped = partial_trace(rho, [1, 0])
		assert_allclose(swapped.matrix, numpy.kron(b.matrix, a.matrix), atol=1e-12)

		# a set is always kept in ascending order
		assert partial_trace(rho, {1, 0}).allclose(rho)

	def test_preserves_trace(self, random_density: Callable[[int], DensityMatrix]):
		rho = random_density(4)
		for keep in ([0], [3, 1], [2, 0, 3]):
			assert partial_trace(rho, keep).trace() == pytest.approx(1)

	@pytest.mark.parametrize(
			"keep, match",
			[
					pytest.param([], "At least one qubit", id="empty"),
					pytest.param([0, 0], "Duplicate", id="duplicate"),
					pytest.param([2], "out of range", id="range"),
					]
			)
	def test_errors(self, keep, match: str):
		with pytest.raises(ValueError, match=match):
			partial_trace(DensityMatrix.zero_state(2), keep)


class TestEmbedGate:

	def test_cx_reversed(self):
		# control on qubit 1, target on qubit 0
		reversed_cx = embed_gate(CX, [1, 0], 2)
		expected = numpy.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])
		assert_allclose(reversed_cx, expected)

	def test_single_qubit(self):
		assert_allclose(embed_gate(X, [0], 2), numpy.kron(X, numpy.eye(2)))
		assert_allclose(embed_gate(X, [1], 2), numpy.kron(numpy.eye(2), X))

	def test_errors(self):
		with pytest.raises(ValueError, match="not unitary"):
			embed_gate(numpy.array([[1, 1], [0, 1]]), [0], 1)
		with pytest.raises(ValueError, match="cannot act on 2 qubit"):
			embed_gate(X, [0, 1], 2)
		with pytest.raises(ValueError, match="Duplicate targets"):
			embed_gate(CX, [1, 1], 2)
		with pytest.raises(ValueError, match="out of range"):
			embed_gate(X, [2], 2)


def test_apply_local_matches_embedding(
		random_density: Callable[[int], DensityMatrix],
		random_unitary: Callable[[int], numpy.ndarray],
		):
	n = 3
	rho = random_density(n)
	u = random_unitary(4)
	full = embed_gate(u, [2, 0], n)

	tensor = rho.matrix.reshape((2, ) * (2 * n))
	tensor = apply_local(tensor, u, [2, 0])
	tensor = apply_local(tensor, u.conj(), [n + 2, n])

	assert_allclose(tensor.reshape(8, 8), full @ rho.matrix @ full.conj().T, atol=1e-12)


def test_apply_diagonal_matches_dense(random_density: Callable[[int], DensityMatrix]):
	n = 3
	rho = random_density(n)
	diagonal = numpy.exp(1j * numpy.array([0.1, 0.2, 0.3, 0.4]))
	full = embed_gate(numpy.diag(diagonal), [1, 2], n)

	tensor = rho.matrix.reshape((2, ) * (2 * n))
	tensor = apply_diagonal(tensor, diagonal, [1, 2])
	tensor = apply_diagonal(tensor, diagonal.conj(), [n + 1, n + 2])

	assert_allclose(tensor.reshape(8, 8), full @ rho.matrix @ full.conj().T, atol=1e-12)
