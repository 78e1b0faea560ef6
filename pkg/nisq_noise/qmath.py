#!/usr/bin/env python3
#
#  qmath.py
r"""
Dense complex linear algebra for density matrices of up to twelve qubits.

Qubit 0 is the most significant bit of every basis-state index, so the basis state
:math:`|q_0 q_1 \ldots q_{n-1}\rangle` has index :math:`\sum_i q_i 2^{n-1-i}`.
Reshaping a :math:`2^n`-dimensional axis to ``(2,) * n`` therefore puts qubit ``i`` on axis ``i``.
"""
#
#  Copyright © 2024 The nisq-noise developers
#
#  Permission is hereby granted, free of charge, to any person obtaining a copy
#  of this software and associated documentation files (the "Software"), to deal
#  in the Software without restriction, including without limitation the rights
#  to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
#  copies of the Software, and to permit persons to whom the Software is
#  furnished to do so, subject to the following conditions:
#
#  The above copyright notice and this permission notice shall be included in all
#  copies or substantial portions of the Software.
#
#  THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
#  EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF
#  MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT.
#  IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM,
#  DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR
#  OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE
#  OR OTHER DEALINGS IN THE SOFTWARE.
#

# stdlib
from typing import AbstractSet, Iterable, List, Sequence, Type, TypeVar, Union

# 3rd party
import attr
import numpy

# this package
from nisq_noise.type_hints import ComplexMatrix

__all__ = [
		"HERMITIAN_ATOL",
		"TRACE_ATOL",
		"PSD_ATOL",
		"as_matrix",
		"tensor_product",
		"is_unitary",
		"is_hermitian",
		"DensityMatrix",
		"PureState",
		"partial_trace",
		"embed_gate",
		"apply_local",
		"apply_diagonal",
		]

HERMITIAN_ATOL = 1e-10
TRACE_ATOL = 1e-10
PSD_ATOL = 1e-9

_DM = TypeVar("_DM", bound="DensityMatrix")


def as_matrix(obj: object) -> ComplexMatrix:
	"""
	Convert ``obj`` to a two-dimensional ``complex128`` array with finite entries.

	:param obj:

	:raises ValueError: If the result is not two-dimensional or contains NaN / infinite entries.
	"""

	matrix = numpy.asarray(obj, dtype=numpy.complex128)

	if matrix.ndim != 2:
		raise ValueError(f"Expected a two-dimensional matrix, got shape {matrix.shape}")
	if not numpy.all(numpy.isfinite(matrix)):
		raise ValueError("Matrix entries must be finite")

	return matrix


def _readonly(array: numpy.ndarray) -> numpy.ndarray:
	array = numpy.array(array, dtype=numpy.complex128, copy=True)
	array.flags.writeable = False
	return array


def tensor_product(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
	"""
	Return the Kronecker product :math:`a \\otimes b`, with ``a`` as the most significant factor.

	:param a:
	:param b:
	"""

	return numpy.kron(as_matrix(a), as_matrix(b))


def is_unitary(u: ComplexMatrix, atol: float = 1e-10) -> bool:
	"""
	Returns whether ``u`` is a square unitary matrix within ``atol``.

	:param u:
	:param atol:
	"""

	u = as_matrix(u)

	if u.shape[0] != u.shape[1]:
		return False

	return bool(numpy.allclose(u @ u.conj().T, numpy.eye(u.shape[0]), rtol=0, atol=atol))


def is_hermitian(m: ComplexMatrix, atol: float = HERMITIAN_ATOL) -> bool:
	"""
	Returns whether ``m`` equals its conjugate transpose within ``atol``.

	:param m:
	:param atol:
	"""

	m = as_matrix(m)
	return m.shape[0] == m.shape[1] and bool(numpy.allclose(m, m.conj().T, rtol=0, atol=atol))


def _num_qubits_for(dimension: int) -> int:
	num_qubits = dimension.bit_length() - 1

	if dimension < 1 or 2**num_qubits != dimension:
		raise ValueError(f"Dimension {dimension} is not a power of two")

	return num_qubits


@attr.s(frozen=True, eq=False, repr=False)
class PureState:
	"""
	A normalised state vector on ``num_qubits`` qubits.

	:param num_qubits:
	:param amplitudes: The :math:`2^n` complex amplitudes.
	"""

	num_qubits: int = attr.ib(converter=int)
	amplitudes: numpy.ndarray = attr.ib(converter=_readonly)

	@amplitudes.validator
	def _check_amplitudes(self, attribute: attr.Attribute, value: numpy.ndarray) -> None:
		if value.shape != (2**self.num_qubits, ):
			raise ValueError(
					f"Expected {2**self.num_qubits} amplitudes for {self.num_qubits} qubits, got shape {value.shape}"
					)
		if abs(numpy.linalg.norm(value) - 1) > 1e-10:
			raise ValueError("State vector must have unit norm")

	@classmethod
	def basis(cls, num_qubits: int, index: int) -> "PureState":
		"""
		Construct the computational basis state with the given index.

		:param num_qubits:
		:param index:
		"""

		amplitudes = numpy.zeros(2**num_qubits, dtype=numpy.complex128)
		amplitudes[index] = 1
		return cls(num_qubits, amplitudes)

	def to_density(self) -> "DensityMatrix":
		"""
		Returns the projector :math:`|\\psi\\rangle\\langle\\psi|`.
		"""

		return DensityMatrix.from_pure(self)

	def __repr__(self) -> str:
		return f"PureState(num_qubits={self.num_qubits})"


@attr.s(frozen=True, eq=False, repr=False)
class DensityMatrix:
	"""
	A density matrix :math:`\\rho` on ``num_qubits`` qubits.

	Only the shape and finiteness of the matrix are validated on construction;
	call :meth:`~.DensityMatrix.check` to validate the physical invariants
	(Hermitian, unit trace, positive semidefinite).

	:param num_qubits:
	:param matrix: The :math:`2^n \\times 2^n` matrix.
	"""

	num_qubits: int = attr.ib(converter=int)
	matrix: numpy.ndarray = attr.ib(converter=_readonly)

	@matrix.validator
	def _check_matrix(self, attribute: attr.Attribute, value: numpy.ndarray) -> None:
		dim = 2**self.num_qubits

		if value.shape != (dim, dim):
			raise ValueError(f"Expected a {dim}x{dim} matrix for {self.num_qubits} qubits, got shape {value.shape}")
		if not numpy.all(numpy.isfinite(value)):
			raise ValueError("Matrix entries must be finite")

	@classmethod
	def zero_state(cls: Type[_DM], num_qubits: int) -> _DM:
		"""
		Returns :math:`|0\\ldots0\\rangle\\langle0\\ldots0|`.

		:param num_qubits:
		"""

		dim = 2**num_qubits
		matrix = numpy.zeros((dim, dim), dtype=numpy.complex128)
		matrix[0, 0] = 1
		return cls(num_qubits, matrix)

	@classmethod
	def maximally_mixed(cls: Type[_DM], num_qubits: int) -> _DM:
		"""
		Returns :math:`I / 2^n`.

		:param num_qubits:
		"""

		dim = 2**num_qubits
		return cls(num_qubits, numpy.eye(dim) / dim)

	@classmethod
	def from_pure(cls: Type[_DM], state: "PureState") -> _DM:
		"""
		Returns the projector onto a pure state.

		:param state:
		"""

		return cls(state.num_qubits, numpy.outer(state.amplitudes, state.amplitudes.conj()))

	@classmethod
	def from_matrix(cls: Type[_DM], matrix: ComplexMatrix) -> _DM:
		"""
		Construct a :class:`~.DensityMatrix` from a square matrix, inferring the qubit count.

		:param matrix:
		"""

		matrix = as_matrix(matrix)
		return cls(_num_qubits_for(matrix.shape[0]), matrix)

	@property
	def dimension(self) -> int:
		"""
		The Hilbert space dimension :math:`2^n`.
		"""

		return 2**self.num_qubits

	def trace(self) -> complex:  # noqa: D102
		return complex(numpy.trace(self.matrix))

	def eigenvalues(self) -> numpy.ndarray:
		"""
		Returns the (real) eigenvalues of the Hermitian part of the matrix in ascending order.
		"""

		hermitian_part = (self.matrix + self.matrix.conj().T) / 2
		return numpy.linalg.eigvalsh(hermitian_part)

	def purity(self) -> float:
		"""
		Returns :math:`\\mathrm{Tr}(\\rho^2)`.
		"""

		return float(numpy.real(numpy.vdot(self.matrix.conj().T, self.matrix)))

	def check(
			self,
			hermitian_atol: float = HERMITIAN_ATOL,
			trace_atol: float = TRACE_ATOL,
			psd_atol: float = PSD_ATOL,
			) -> None:
		"""
		Check that the matrix is a valid density matrix.

		:param hermitian_atol: Tolerance for :math:`\\rho = \\rho^\\dagger`.
		:param trace_atol: Tolerance for :math:`\\mathrm{Tr}(\\rho) = 1`.
		:param psd_atol: The most negative eigenvalue tolerated.

		:raises ValueError: If any invariant is violated.
		"""

		if not is_hermitian(self.matrix, atol=hermitian_atol):
			raise ValueError("Density matrix is not Hermitian")

		trace = self.trace()
		if abs(trace - 1) >= trace_atol:
			raise ValueError(f"Density matrix trace is {trace.real!r}, not 1")

		smallest = self.eigenvalues()[0]
		if smallest < -psd_atol:
			raise ValueError(f"Density matrix is not positive semidefinite (smallest eigenvalue {smallest!r})")

	def is_valid(self) -> bool:
		"""
		Returns whether :meth:`~.DensityMatrix.check` passes.
		"""

		try:
			self.check()
		except ValueError:
			return False
		else:
			return True

	def allclose(self, other: "DensityMatrix", atol: float = 1e-10) -> bool:
		"""
		Returns whether ``other`` has the same qubit count and matching entries within ``atol``.

		:param other:
		:param atol:
		"""

		return self.num_qubits == other.num_qubits and bool(
				numpy.allclose(self.matrix, other.matrix, rtol=0, atol=atol)
				)

	def __repr__(self) -> str:
		return f"DensityMatrix(num_qubits={self.num_qubits})"


def _check_qubits(qubits: Sequence[int], num_qubits: int, what: str = "qubits") -> None:
	if len(set(qubits)) != len(qubits):
		raise ValueError(f"Duplicate {what}: {list(qubits)}")

	for q in qubits:
		if not 0 <= q < num_qubits:
			raise ValueError(f"Qubit index {q} out of range for {num_qubits} qubits")


def partial_trace(rho: DensityMatrix, keep: Union[AbstractSet[int], Iterable[int]]) -> DensityMatrix:
	"""
	Trace out every qubit not in ``keep``.

	:param rho:
	:param keep: The qubits to keep. A set is kept in ascending order;
		any other iterable gives the order of the qubits in the result.

	:raises ValueError: If ``keep`` is empty, contains duplicates or is out of range.
	"""

	if isinstance(keep, AbstractSet):
		order: List[int] = sorted(keep)
	else:
		order = list(keep)

	if not order:
		raise ValueError("At least one qubit must be kept")

	n = rho.num_qubits
	_check_qubits(order, n)

	traced = [q for q in range(n) if q not in order]
	dim_keep = 2**len(order)
	dim_traced = 2**len(traced)

	permutation = order + traced + [n + q for q in order] + [n + q for q in traced]
	tensor = rho.matrix.reshape((2, ) * (2 * n)).transpose(permutation)
	tensor = tensor.reshape(dim_keep, dim_traced, dim_keep, dim_traced)

	return DensityMatrix(len(order), numpy.einsum("ajbj->ab", tensor))


def apply_local(tensor: numpy.ndarray, op: ComplexMatrix, axes: Sequence[int]) -> numpy.ndarray:
	"""
	Contract the square matrix ``op`` with the given axes of a ``(2, 2, ..., 2)`` tensor.

	``op`` acts on the :math:`2^k` dimensional space of the ``k`` axes, the first axis being
	the most significant. The result has the same shape as ``tensor``.

	:param tensor:
	:param op:
	:param axes:
	"""

	axes = list(axes)
	k = len(axes)
	op_tensor = numpy.asarray(op).reshape((2, ) * (2 * k))
	moved = numpy.tensordot(op_tensor, tensor, axes=(list(range(k, 2 * k)), axes))
	return numpy.moveaxis(moved, list(range(k)), axes)


def apply_diagonal(tensor: numpy.ndarray, diagonal: numpy.ndarray, axes: Sequence[int]) -> numpy.ndarray:
	"""
	Multiply a ``(2, 2, ..., 2)`` tensor by a diagonal operator acting on the given axes.

	:param tensor:
	:param diagonal: The :math:`2^k` diagonal entries.
	:param axes:
	"""

	axes = list(axes)
	k = len(axes)
	trailing = list(range(tensor.ndim - k, tensor.ndim))
	moved = numpy.moveaxis(tensor, axes, trailing) * numpy.asarray(diagonal).reshape((2, ) * k)
	return numpy.moveaxis(moved, trailing, axes)


def embed_gate(u: ComplexMatrix, targets: Sequence[int], n: int) -> ComplexMatrix:
	"""
	Lift a :math:`k`-qubit unitary to the full :math:`2^n` dimensional space.

	:param u: A :math:`2^k \\times 2^k` unitary.
	:param targets: The qubits ``u`` acts on, the first being the most significant.
	:param n: The total number of qubits.

	:raises ValueError: If ``u`` is not unitary, has the wrong dimension, or ``targets`` contains duplicates.
	"""

	u = as_matrix(u)
	targets = list(targets)

	if not is_unitary(u):
		raise ValueError("Gate matrix is not unitary")
	if u.shape[0] != 2**len(targets):
		raise ValueError(f"A {u.shape[0]}x{u.shape[0]} matrix cannot act on {len(targets)} qubit(s)")

	_check_qubits(targets, n, what="targets")

	dim = 2**n
	identity = numpy.eye(dim, dtype=numpy.complex128).reshape((2, ) * (2 * n))
	return apply_local(identity, u, targets).reshape(dim, dim)
