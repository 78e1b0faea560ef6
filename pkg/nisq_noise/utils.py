#!/usr/bin/env python3
#
#  utils.py
"""
Utility functions, exceptions and warnings.
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
import re
from typing import List

__all__ = [
		"MAX_SIMULATION_QUBITS",
		"SimulationWarning",
		"CircuitSyntaxError",
		"InfeasibleCalibrationError",
		"SimulationResourceError",
		"check_probability",
		"bitstring_index",
		"parse_qubit_range",
		]

#: The widest register the dense density-matrix engine accepts.
MAX_SIMULATION_QUBITS = 12

_range_re = re.compile(r"^\s*(\d+)\s*(?:\.\.|-)\s*(\d+)\s*$")


class SimulationWarning(Warning):
	"""
	User-facing warning about how a circuit will be simulated,
	for example when routing needs physical qubits beyond the circuit width.

	This warning is shown by default.
	"""  # noqa: D400


class CircuitSyntaxError(ValueError):
	"""
	Raised when the textual circuit representation cannot be parsed.

	:param msg: The error message.
	:param lineno: The (1-based) line number the error was found on.
	"""

	def __init__(self, msg: str, lineno: int):
		super().__init__(f"line {lineno}: {msg}")
		self.lineno = lineno


class InfeasibleCalibrationError(ValueError):
	"""
	Raised when thermal relaxation alone already exceeds the error budget of a target fidelity.

	:param f_target: The requested average gate fidelity.
	:param f_thermal: The average gate fidelity of the thermal relaxation part.
	"""

	def __init__(self, f_target: float, f_thermal: float):
		super().__init__(
				f"Target fidelity {f_target!r} is above the thermal relaxation fidelity F_R = {f_thermal!r}; "
				"thermal noise alone already exceeds the target error."
				)
		self.f_target = f_target
		self.f_thermal = f_thermal


class SimulationResourceError(RuntimeError):
	"""
	Raised when a circuit is too wide for dense density-matrix simulation.
	"""


def check_probability(value: float, name: str = 'p') -> float:
	"""
	Check that ``value`` is a probability.

	:param value:
	:param name: The name of the argument, used in the error message.

	:raises ValueError: If the value is outside of :math:`[0, 1]`.
	"""

	value = float(value)

	if not 0.0 <= value <= 1.0:
		raise ValueError(f"{name!r} must be in the range [0, 1], got {value!r}")

	return value


def bitstring_index(bits: str, num_qubits: int) -> int:
	"""
	Return the basis-state index of ``bits``, with qubit 0 as the most significant (leftmost) bit.

	:param bits: A string of ``0`` and ``1`` characters.
	:param num_qubits: The expected length of ``bits``.
	"""

	if len(bits) != num_qubits:
		raise ValueError(f"Expected a bitstring of length {num_qubits}, got {bits!r}")
	if set(bits) - {'0', '1'}:
		raise ValueError(f"Invalid bitstring {bits!r}")

	return int(bits, 2)


def parse_qubit_range(value: str) -> List[int]:
	"""
	Parse a qubit-count range such as ``2..8``, ``5`` or ``2,4,6``.

	:param value:
	"""

	m = _range_re.match(value)
	if m:
		start, stop = int(m.group(1)), int(m.group(2))
		if start > stop:
			raise ValueError(f"Empty qubit range {value!r}")
		return list(range(start, stop + 1))

	try:
		counts = [int(part) for part in value.split(',') if part.strip()]
	except ValueError:
		raise ValueError(f"Invalid qubit range {value!r}") from None

	if not counts:
		raise ValueError(f"Invalid qubit range {value!r}")

	return counts

