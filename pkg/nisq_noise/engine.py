#!/usr/bin/env python3
#
#  engine.py
"""
Dense density-matrix simulation of noisy circuits.

The state is held as a ``(2,) * 2n`` tensor whose first ``n`` axes index rows and last ``n`` axes
index columns of :math:`\\rho`. Gates and noise act on the axes of the qubits they touch,
so no operator on the full register is ever formed.
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
import logging
import math
from typing import Optional, Sequence

# 3rd party
import attr
import numpy

# this package
from nisq_noise.circuit import Circuit
from nisq_noise.gates import GateInstance, diagonal_of, is_virtual, unitary_of
from nisq_noise.noise import NoiseModel
from nisq_noise.qmath import DensityMatrix, PureState, apply_diagonal, apply_local, partial_trace
from nisq_noise.utils import MAX_SIMULATION_QUBITS, SimulationResourceError, bitstring_index

__all__ = [
		"SimulationResult",
		"simulate",
		"ideal_state",
		"success_probability",
		"state_fidelity",
		"expectation_z",
		"hoeffding_samples",
		]

logger = logging.getLogger(__name__)


def _probabilities(value: numpy.ndarray) -> numpy.ndarray:
	value = numpy.array(value, dtype=numpy.float64, copy=True)
	value.flags.writeable = False
	return value


@attr.s(frozen=True, eq=False)
class SimulationResult:
	"""
	The final state of a simulation.

	:param final_state:
	:param probabilities: The computational basis measurement probabilities (the diagonal of the final state).
	:param depth: The depth of the simulated circuit.
	"""

	final_state: DensityMatrix = attr.ib()
	probabilities: numpy.ndarray = attr.ib(converter=_probabilities, repr=False)
	depth: int = attr.ib(default=0)

	@classmethod
	def from_state(cls, state: DensityMatrix, depth: int = 0) -> "SimulationResult":
		"""
		Construct a :class:`~.SimulationResult`, reading the probabilities off the diagonal of ``state``.

		:param state:
		:param depth:
		"""

		return cls(state, numpy.clip(numpy.real(numpy.diag(state.matrix)), 0, None), depth)

	@property
	def num_qubits(self) -> int:  # noqa: D102
		return self.final_state.num_qubits

	def reduced(self, qubits: Sequence[int]) -> "SimulationResult":
		"""
		Returns the result restricted to ``qubits``, which become qubits ``0 .. k-1`` in the given order.

		:param qubits:
		"""

		return SimulationResult.from_state(partial_trace(self.final_state, list(qubits)), self.depth)


def _check_width(c: Circuit) -> None:
	if c.num_qubits > MAX_SIMULATION_QUBITS:
		raise SimulationResourceError(
				f"Cannot simulate {c.num_qubits} qubits; the limit is {MAX_SIMULATION_QUBITS}. "
				f"A {c.num_qubits}-qubit density matrix needs {16 * 4**c.num_qubits / 2**30:.1f} GiB."
				)


def _apply_unitary(tensor: numpy.ndarray, instruction: GateInstance, rows: Sequence[int]) -> numpy.ndarray:
	n = tensor.ndim // 2
	cols = [n + q for q in rows]
	diagonal = diagonal_of(instruction)

	if diagonal is not None:
		tensor = apply_diagonal(tensor, diagonal, rows)
		return apply_diagonal(tensor, diagonal.conj(), cols)

	u = unitary_of(instruction)
	tensor = apply_local(tensor, u, rows)
	return apply_local(tensor, u.conj(), cols)


def _apply_instruction(
		tensor: numpy.ndarray,
		instruction: GateInstance,
		noise_model: Optional[NoiseModel],
		) -> numpy.ndarray:
	n = tensor.ndim // 2
	rows = list(instruction.qubits)

	if noise_model is None or is_virtual(instruction.kind):
		return _apply_unitary(tensor, instruction, rows)

	arity = len(rows)

	if arity <= 2:
		transfer = noise_model.transfer_matrices[arity]
		if transfer is None:
			return _apply_unitary(tensor, instruction, rows)

		u = unitary_of(instruction)
		liouville = transfer @ numpy.kron(u, u.conj())
		return apply_local(tensor, liouville, rows + [n + q for q in rows])

	tensor = _apply_unitary(tensor, instruction, rows)

	one_qubit = noise_model.transfer_matrices[1]
	if one_qubit is not None:
		for q in rows:
			tensor = apply_local(tensor, one_qubit, [q, n + q])

	return tensor


def simulate(
		c: Circuit,
		nm: Optional[NoiseModel] = None,
		check_every_step: bool = False,
		) -> SimulationResult:
	"""
	Simulate ``c`` from :math:`|0\\ldots0\\rangle`, applying the noise model's channel after every non-virtual gate.

	:param c:
	:param nm: The noise model. :py:obj:`None` simulates without noise.
	:param check_every_step: Validate the density matrix after every instruction. Slow; for debugging.

	:raises SimulationResourceError: If the circuit is wider than :data:`~nisq_noise.utils.MAX_SIMULATION_QUBITS`.
	:raises ValueError: If the final state is not a valid density matrix.
	"""

	_check_width(c)

	n = c.num_qubits
	dim = 2**n
	logger.debug("Simulating %d instruction(s) on %d qubit(s)", len(c), n)

	tensor = DensityMatrix.zero_state(n).matrix.copy().reshape((2, ) * (2 * n))

	for step, instruction in enumerate(c):
		tensor = _apply_instruction(tensor, instruction, nm)

		if check_every_step:
			try:
				DensityMatrix(n, tensor.reshape(dim, dim)).check()
			except ValueError as e:
				raise ValueError(f"Invalid state after instruction {step} ({instruction}): {e}") from None

	state = DensityMatrix(n, numpy.ascontiguousarray(tensor).reshape(dim, dim))
	state.check()

	return SimulationResult.from_state(state, c.depth())


def ideal_state(c: Circuit) -> PureState:
	"""
	Returns the noiseless output state of ``c``, computed with a state vector.

	:param c:
	"""

	_check_width(c)

	n = c.num_qubits
	vector = numpy.zeros((2, ) * n, dtype=numpy.complex128)
	vector[(0, ) * n] = 1

	for instruction in c:
		rows = list(instruction.qubits)
		diagonal = diagonal_of(instruction)

		if diagonal is not None:
			vector = apply_diagonal(vector, diagonal, rows)
		else:
			vector = apply_local(vector, unitary_of(instruction), rows)

	amplitudes = vector.reshape(-1)
	return PureState(n, amplitudes / numpy.linalg.norm(amplitudes))


def success_probability(r: SimulationResult, target: str) -> float:
	"""
	Returns the probability of measuring the bitstring ``target`` (qubit 0 first).

	:param r:
	:param target:
	"""

	return float(r.probabilities[bitstring_index(target, r.num_qubits)])


def state_fidelity(r: SimulationResult, ideal: PureState) -> float:
	r"""
	Returns :math:`\langle\psi|\rho|\psi\rangle`.

	:param r:
	:param ideal:
	"""

	if ideal.num_qubits != r.num_qubits:
		raise ValueError(f"Cannot compare {r.num_qubits} qubit(s) with a {ideal.num_qubits}-qubit state")

	psi = ideal.amplitudes
	return float(numpy.real(numpy.vdot(psi, r.final_state.matrix @ psi)))


def expectation_z(r: SimulationResult, qubit: int) -> float:
	"""
	Returns the expectation value of Pauli Z on ``qubit``.

	:param r:
	:param qubit:
	"""

	n = r.num_qubits
	if not 0 <= qubit < n:
		raise ValueError(f"Qubit {qubit} out of range for {n} qubit(s)")

	marginal = numpy.moveaxis(r.probabilities.reshape((2, ) * n), qubit, 0).reshape(2, -1).sum(axis=1)
	return float(marginal[0] - marginal[1])


def hoeffding_samples(epsilon: float, delta: float) -> int:
	r"""
	The number of shots needed to estimate a probability within ``epsilon``
	with confidence ``1 - delta``, :math:`\lceil \ln(2/\delta) / (2\epsilon^2) \rceil`.

	:param epsilon:
	:param delta:
	"""  # noqa: D400

	if not 0 < epsilon < 1:
		raise ValueError(f"'epsilon' must be in the range (0, 1), got {epsilon!r}")
	if not 0 < delta < 1:
		raise ValueError(f"'delta' must be in the range (0, 1), got {delta!r}")

	return math.ceil(math.log(2 / delta) / (2 * epsilon**2))
