#!/usr/bin/env python3
#
#  circuit.py
"""
Circuit intermediate representation, the depth metric and the algorithm builders.

The textual form of a circuit has a ``qubits N`` header followed by one instruction per line:

.. code-block:: text

	# three-qubit GHZ state
	qubits 3
	H 0
	CX 0,1
	CX 1,2
	Rz 2 @ pi/4

Blank lines and ``#`` comments are ignored. Angles may be written as plain numbers or
as simple multiples of ``pi`` (``pi``, ``-pi/2``, ``0.5*pi``).
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
import math
import re
from collections import Counter
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Type, TypeVar

# 3rd party
import attr
import numpy
from domdf_python_tools.paths import PathPlus
from domdf_python_tools.typing import PathLike

# this package
from nisq_noise.gates import GateInstance, gate, is_virtual, lookup_gate
from nisq_noise.utils import MAX_SIMULATION_QUBITS, CircuitSyntaxError, bitstring_index

__all__ = [
		"Circuit",
		"VqcParameters",
		"VQC_PARAMETER_COUNT",
		"grover_iterations",
		"grover_success_probability",
		"build_grover",
		"build_qft",
		"build_qft_benchmark",
		"build_vqc",
		]

_C = TypeVar("_C", bound="Circuit")

_header_re = re.compile(r"^qubits\s+(\d+)$", re.IGNORECASE)
_pi_re = re.compile(r"^([+-]?)(?:(\d+(?:\.\d*)?|\.\d+)\s*\*\s*)?pi(?:\s*/\s*(\d+(?:\.\d*)?))?$")


def _instructions(value: Iterable[GateInstance]) -> Tuple[GateInstance, ...]:
	return tuple(value)


@attr.s(frozen=True)
class Circuit:
	"""
	An immutable sequence of gates on ``num_qubits`` qubits.

	:param num_qubits:
	:param instructions:
	"""

	num_qubits: int = attr.ib()
	instructions: Tuple[GateInstance, ...] = attr.ib(converter=_instructions, factory=tuple)

	@num_qubits.validator
	def _check_num_qubits(self, attribute: attr.Attribute, value: int) -> None:
		if value < 1:
			raise ValueError(f"A circuit needs at least one qubit, got {value}")

	@instructions.validator
	def _check_instructions(self, attribute: attr.Attribute, value: Tuple[GateInstance, ...]) -> None:
		for idx, instruction in enumerate(value):
			if not isinstance(instruction, GateInstance):
				raise TypeError(f"Instruction {idx} is not a GateInstance: {instruction!r}")
			for q in instruction.qubits:
				if q >= self.num_qubits:
					raise ValueError(
							f"Instruction {idx} ({instruction}) uses qubit {q}, "
							f"but the circuit only has {self.num_qubits} qubit(s)"
							)

	def __len__(self) -> int:
		return len(self.instructions)

	def __iter__(self) -> Iterator[GateInstance]:
		yield from self.instructions

	def then(self: _C, *instructions: GateInstance) -> _C:
		"""
		Returns a new circuit with ``instructions`` appended.

		:param instructions:
		"""

		return attr.evolve(self, instructions=self.instructions + instructions)

	def depth(self) -> int:
		"""
		The length of the longest chain of instructions that share qubits.

		Virtual gates (see :func:`~nisq_noise.gates.is_virtual`) do not count.
		"""

		levels = [0] * self.num_qubits
		depth = 0

		for instruction in self.instructions:
			if is_virtual(instruction.kind):
				continue

			level = max(levels[q] for q in instruction.qubits) + 1
			for q in instruction.qubits:
				levels[q] = level
			depth = max(depth, level)

		return depth

	def count_ops(self) -> Dict[str, int]:
		"""
		Returns the number of instructions of each gate kind.
		"""

		return dict(Counter(instruction.kind.name for instruction in self.instructions))

	def dumps(self) -> str:
		"""
		Serialise the circuit to its textual representation.
		"""

		lines = [f"qubits {self.num_qubits}"]
		lines.extend(map(str, self.instructions))
		return '\n'.join(lines) + '\n'

	def dump(self, filename: PathLike) -> str:
		"""
		Write the textual representation of the circuit to the given file.

		:param filename: The filename to write to.

		:returns: A string containing the textual representation.
		"""

		filename = PathPlus(filename)
		as_text = self.dumps()
		filename.write_clean(as_text)
		return as_text

	@classmethod
	def loads(cls: Type[_C], text: str) -> _C:
		"""
		Parse a circuit from its textual representation.

		:param text:

		:raises CircuitSyntaxError: If the text cannot be parsed.
		"""

		num_qubits: Optional[int] = None
		instructions: List[GateInstance] = []

		for lineno, raw_line in enumerate(text.splitlines(), start=1):
			line = raw_line.split('#', 1)[0].strip()
			if not line:
				continue

			if num_qubits is None:
				m = _header_re.match(line)
				if not m:
					raise CircuitSyntaxError(f"expected a 'qubits N' header, got {line!r}", lineno)
				num_qubits = int(m.group(1))
				if num_qubits < 1:
					raise CircuitSyntaxError("a circuit needs at least one qubit", lineno)
				continue

			instruction = _parse_instruction(line, lineno)
			for q in instruction.qubits:
				if q >= num_qubits:
					raise CircuitSyntaxError(f"qubit {q} out of range for {num_qubits} qubit(s)", lineno)
			instructions.append(instruction)

		if num_qubits is None:
			raise CircuitSyntaxError("missing 'qubits N' header", max(len(text.splitlines()), 1))

		return cls(num_qubits, instructions)

	@classmethod
	def load(cls: Type[_C], filename: PathLike) -> _C:
		"""
		Load a circuit from the given file.

		:param filename:
		"""

		return cls.loads(PathPlus(filename).read_text())


def _parse_angle(text: str, lineno: int) -> float:
	text = text.strip()
	m = _pi_re.match(text)

	if m:
		sign, coefficient, denominator = m.groups()
		value = math.pi * float(coefficient or 1) / float(denominator or 1)
		return -value if sign == '-' else value

	try:
		value = float(text)
	except ValueError:
		raise CircuitSyntaxError(f"invalid angle {text!r}", lineno) from None

	if not math.isfinite(value):
		raise CircuitSyntaxError(f"angle must be finite, got {text!r}", lineno)

	return value


def _parse_instruction(line: str, lineno: int) -> GateInstance:
	body, _, param_text = line.partition('@')
	parts = body.split(None, 1)

	if len(parts) != 2:
		raise CircuitSyntaxError(f"expected 'GATE q0[,q1..] [@ p0,p1..]', got {line!r}", lineno)

	name, qubit_text = parts

	try:
		kind = lookup_gate(name)
	except ValueError as e:
		raise CircuitSyntaxError(str(e), lineno) from None

	try:
		qubits = [int(q) for q in qubit_text.split(',')]
	except ValueError:
		raise CircuitSyntaxError(f"invalid qubit list {qubit_text.strip()!r}", lineno) from None

	params = [_parse_angle(p, lineno) for p in param_text.split(',')] if param_text.strip() else []

	try:
		return GateInstance(kind, qubits, params)
	except ValueError as e:
		raise CircuitSyntaxError(str(e), lineno) from None


def _check_width(n: int, minimum: int) -> None:
	if not minimum <= n <= MAX_SIMULATION_QUBITS:
		raise ValueError(f"The number of qubits must be between {minimum} and {MAX_SIMULATION_QUBITS}, got {n}")


def grover_iterations(n: int) -> int:
	"""
	The number of Grover iterations for an ``n`` qubit search space, :math:`\\lfloor \\frac{\\pi}{4}\\sqrt{2^n} \\rfloor`.

	:param n:
	"""

	return math.floor(math.pi / 4 * math.sqrt(2**n))


def grover_success_probability(n: int) -> float:
	"""
	The noiseless probability of measuring the marked string after :func:`~.grover_iterations` iterations.

	:param n:
	"""

	k = grover_iterations(n)
	return math.sin((2 * k + 1) * math.asin(2**(-n / 2)))**2


def _all_ones(n: int) -> str:
	return '1' * n


def build_grover(n: int, marked: Optional[str] = None) -> Circuit:
	"""
	Build Grover's search for a single marked bitstring.

	:param n: The number of qubits, between 2 and 12.
	:param marked: The marked bitstring, qubit 0 first. Defaults to all ones.
	"""

	_check_width(n, 2)

	if marked is None:
		marked = _all_ones(n)
	bitstring_index(marked, n)

	everything = tuple(range(n))
	zeros = [q for q, bit in enumerate(marked) if bit == '0']

	instructions = [gate('H', q) for q in everything]

	for _ in range(grover_iterations(n)):
		# oracle
		instructions.extend(gate('X', q) for q in zeros)
		instructions.append(gate("MCZ", everything))
		instructions.extend(gate('X', q) for q in zeros)

		# diffuser
		instructions.extend(gate('H', q) for q in everything)
		instructions.extend(gate('X', q) for q in everything)
		instructions.append(gate("MCZ", everything))
		instructions.extend(gate('X', q) for q in everything)
		instructions.extend(gate('H', q) for q in everything)

	return Circuit(n, instructions)


def _qft_instructions(n: int) -> List[GateInstance]:
	instructions = []

	for j in range(n):
		instructions.append(gate('H', j))
		for k in range(1, n - j):
			instructions.append(gate("CP", (j + k, j), math.pi / 2**k))

	for i in range(n // 2):
		instructions.append(gate("SWAP", (i, n - 1 - i)))

	return instructions


def build_qft(n: int) -> Circuit:
	"""
	Build the quantum Fourier transform, including the final qubit-reversal swaps.

	:param n: The number of qubits, between 1 and 12.
	"""

	_check_width(n, 1)
	return Circuit(n, _qft_instructions(n))


def build_qft_benchmark(n: int, target: Optional[str] = None) -> Circuit:
	"""
	Build a QFT circuit whose ideal output is the basis state ``target``.

	A layer of ``H`` and ``P`` gates first prepares the inverse Fourier transform of ``target``
	as a product state, so that a successful QFT returns exactly ``|target>``.

	:param n: The number of qubits, between 1 and 12.
	:param target: The expected output bitstring, qubit 0 first. Defaults to all ones.
	"""

	_check_width(n, 1)

	if target is None:
		target = _all_ones(n)
	t = bitstring_index(target, n)

	instructions = []
	for q in range(n):
		instructions.append(gate('H', q))
		instructions.append(gate('P', q, -2 * math.pi * t / 2**(q + 1)))

	return Circuit(n, instructions + _qft_instructions(n))


#: The number of trainable angles in the variational circuit.
VQC_PARAMETER_COUNT = 12


def _theta(value: Iterable[float]) -> Tuple[float, ...]:
	return tuple(float(v) for v in value)


@attr.s(frozen=True)
class VqcParameters:
	"""
	The twelve trainable angles of the variational circuit, in radians.

	:param theta:
	"""

	theta: Tuple[float, ...] = attr.ib(converter=_theta)

	@theta.validator
	def _check_theta(self, attribute: attr.Attribute, value: Tuple[float, ...]) -> None:
		if len(value) != VQC_PARAMETER_COUNT:
			raise ValueError(f"Expected {VQC_PARAMETER_COUNT} parameters, got {len(value)}")
		if not all(math.isfinite(v) for v in value):
			raise ValueError("Parameters must be finite")

	@classmethod
	def zeros(cls) -> "VqcParameters":
		"""
		Returns the all-zero parameter vector training starts from.
		"""

		return cls([0.0] * VQC_PARAMETER_COUNT)

	def shifted(self, index: int, delta: float) -> "VqcParameters":
		"""
		Returns a copy with ``delta`` added to parameter ``index``.

		:param index:
		:param delta:
		"""

		theta = list(self.theta)
		theta[index] += delta
		return VqcParameters(theta)

	def as_array(self) -> numpy.ndarray:
		"""
		Returns the angles as a :class:`numpy.ndarray`.
		"""

		return numpy.array(self.theta, dtype=numpy.float64)

	def __getitem__(self, item: int) -> float:
		return self.theta[item]

	def __len__(self) -> int:
		return len(self.theta)


def build_vqc(x: float, theta: VqcParameters) -> Circuit:
	"""
	Build the four-qubit variational circuit for input ``x``.

	Qubit 1 is measured. Its Z expectation value is the model's prediction.

	:param x: The input, in :math:`[-1, 1]`.
	:param theta:
	"""

	if not -1 <= x <= 1:
		raise ValueError(f"The input must be in the range [-1, 1], got {x!r}")

	if not isinstance(theta, VqcParameters):
		theta = VqcParameters(theta)

	encoding = math.asin(x)
	qubits: Sequence[int] = range(4)

	instructions = [gate("Ry", q, encoding) for q in qubits]
	instructions.extend(gate("Ry", q, theta[q]) for q in qubits)
	instructions.extend(gate("Rz", q, theta[4 + q]) for q in qubits)
	instructions.append(gate("CX", (1, 0)))
	instructions.append(gate("CX", (3, 2)))
	instructions.append(gate("Ry", 1, theta[8]))
	instructions.append(gate("Ry", 2, theta[9]))
	instructions.append(gate("Rz", 1, theta[10]))
	instructions.append(gate("Rz", 2, theta[11]))
	instructions.append(gate("CX", (2, 1)))

	return Circuit(4, instructions)
