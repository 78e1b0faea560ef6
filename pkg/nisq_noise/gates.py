#!/usr/bin/env python3
#
#  gates.py
"""
The gate catalog.

The matrices for ``GPi``, ``GPi2``, ``MS`` and ``XY`` follow the vendors' published conventions.
For every controlled gate the first listed qubit is the control.
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
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple, Union

# 3rd party
import attr
import numpy
from domdf_python_tools.words import word_join

# this package
from nisq_noise.type_hints import ComplexMatrix

__all__ = [
		"GateKind",
		"GateInstance",
		"CATALOG",
		"VIRTUAL_GATES",
		"lookup_gate",
		"gate",
		"unitary_of",
		"diagonal_of",
		"is_virtual",
		"is_universal",
		]


@attr.s(frozen=True, slots=True)
class GateKind:
	"""
	A named entry in the gate catalog.

	:param name: The canonical gate name, e.g. ``'CX'``.
	:param arity: The number of qubits. For variadic gates this is the minimum number of qubits.
	:param param_count: The number of real angle parameters.
	:param variadic: Whether the gate accepts any number of qubits from ``arity`` upwards.
	"""

	name: str = attr.ib()
	arity: int = attr.ib()
	param_count: int = attr.ib(default=0)
	variadic: bool = attr.ib(default=False)


CATALOG: Dict[str, GateKind] = {
		kind.name: kind
		for kind in [
				GateKind('X', 1),
				GateKind("SX", 1),
				GateKind('H', 1),
				GateKind('Y', 1),
				GateKind('Z', 1),
				GateKind("Rx", 1, 1),
				GateKind("Ry", 1, 1),
				GateKind("Rz", 1, 1),
				GateKind('P', 1, 1),
				GateKind("CX", 2),
				GateKind("CZ", 2),
				GateKind("CP", 2, 1),
				GateKind("XY", 2, 1),
				GateKind("SWAP", 2),
				GateKind("MS", 2),
				GateKind("GPi", 1, 1),
				GateKind("GPi2", 1, 1),
				GateKind("MCZ", 2, variadic=True),
				]
		}
"""
Every gate known to ``nisq-noise``, keyed by canonical name.
"""

#: Diagonal phase gates applied in software by every vendor; zero duration, zero error, zero depth.
VIRTUAL_GATES = frozenset({'Z', "Rz", 'P'})

_lower_names = {name.lower(): name for name in CATALOG}


def lookup_gate(name: str) -> GateKind:
	"""
	Returns the catalog entry with the given name (case-insensitive).

	:param name:

	:raises ValueError: If the gate is not in the catalog.
	"""

	try:
		return CATALOG[_lower_names[name.lower()]]
	except KeyError:
		raise ValueError(f"Unknown gate {name!r}. Known gates are {word_join(CATALOG, use_repr=True)}.") from None


def _angles(params: Iterable[float]) -> Tuple[float, ...]:
	return tuple(float(p) for p in params)


@attr.s(frozen=True, slots=True)
class GateInstance:
	"""
	A gate applied to specific qubits.

	:param kind:
	:param qubits: The qubits the gate acts on, in order.
	:param params: The angle parameters, in radians.
	"""

	kind: GateKind = attr.ib()
	qubits: Tuple[int, ...] = attr.ib(converter=tuple)
	params: Tuple[float, ...] = attr.ib(converter=_angles, default=())

	@qubits.validator
	def _check_qubits(self, attribute: attr.Attribute, value: Tuple[int, ...]) -> None:
		if self.kind.variadic:
			if len(value) < self.kind.arity:
				raise ValueError(f"{self.kind.name} needs at least {self.kind.arity} qubits, got {len(value)}")
		elif len(value) != self.kind.arity:
			raise ValueError(f"{self.kind.name} acts on {self.kind.arity} qubit(s), got {len(value)}")

		if len(set(value)) != len(value):
			raise ValueError(f"Duplicate qubits for {self.kind.name}: {list(value)}")

		for q in value:
			if not isinstance(q, (int, numpy.integer)) or q < 0:
				raise ValueError(f"Invalid qubit index {q!r} for {self.kind.name}")

	@params.validator
	def _check_params(self, attribute: attr.Attribute, value: Tuple[float, ...]) -> None:
		if len(value) != self.kind.param_count:
			raise ValueError(f"{self.kind.name} takes {self.kind.param_count} parameter(s), got {len(value)}")
		if not all(math.isfinite(p) for p in value):
			raise ValueError(f"Parameters of {self.kind.name} must be finite")

	@property
	def name(self) -> str:
		"""
		The name of the gate kind.
		"""

		return self.kind.name

	def on(self, *qubits: int) -> "GateInstance":
		"""
		Returns a copy of this gate acting on different qubits.

		:param qubits:
		"""

		return GateInstance(self.kind, qubits, self.params)

	def __str__(self) -> str:
		text = f"{self.kind.name} {','.join(map(str, self.qubits))}"
		if self.params:
			text += f" @ {','.join(map(repr, self.params))}"
		return text


def gate(name: str, qubits: Union[int, Sequence[int]], *params: float) -> GateInstance:
	"""
	Shortcut for constructing a :class:`~.GateInstance` from a gate name.

	.. code-block:: python

		gate("CP", (0, 1), math.pi / 2)

	:param name: The (case-insensitive) gate name.
	:param qubits: A single qubit or a sequence of qubits.
	:param params: The angle parameters.
	"""

	if isinstance(qubits, (int, numpy.integer)):
		qubits = (int(qubits), )

	return GateInstance(lookup_gate(name), qubits, params)


_SQRT1_2 = 1 / math.sqrt(2)


def _rx(theta: float) -> ComplexMatrix:
	c, s = math.cos(theta / 2), math.sin(theta / 2)
	return numpy.array([[c, -1j * s], [-1j * s, c]])


def _ry(theta: float) -> ComplexMatrix:
	c, s = math.cos(theta / 2), math.sin(theta / 2)
	return numpy.array([[c, -s], [s, c]], dtype=numpy.complex128)


def _gpi(phi: float) -> ComplexMatrix:
	return numpy.array([[0, numpy.exp(-1j * phi)], [numpy.exp(1j * phi), 0]])


def _gpi2(phi: float) -> ComplexMatrix:
	return _SQRT1_2 * numpy.array([[1, -1j * numpy.exp(-1j * phi)], [-1j * numpy.exp(1j * phi), 1]])


def _xy(theta: float) -> ComplexMatrix:
	c, s = math.cos(theta / 2), math.sin(theta / 2)
	return numpy.array([
			[1, 0, 0, 0],
			[0, c, 1j * s, 0],
			[0, 1j * s, c, 0],
			[0, 0, 0, 1],
			])


_FIXED: Dict[str, ComplexMatrix] = {
		'X': numpy.array([[0, 1], [1, 0]], dtype=numpy.complex128),
		'Y': numpy.array([[0, -1j], [1j, 0]]),
		'H': _SQRT1_2 * numpy.array([[1, 1], [1, -1]], dtype=numpy.complex128),
		"SX": 0.5 * numpy.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]),
		"CX": numpy.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=numpy.complex128),
		"SWAP": numpy.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=numpy.complex128),
		"MS": _SQRT1_2 * numpy.array([
				[1, 0, 0, -1j],
				[0, 1, -1j, 0],
				[0, -1j, 1, 0],
				[-1j, 0, 0, 1],
				]),
		}

_PARAMETRISED: Dict[str, Callable[[float], ComplexMatrix]] = {
		"Rx": _rx,
		"Ry": _ry,
		"GPi": _gpi,
		"GPi2": _gpi2,
		"XY": _xy,
		}


def diagonal_of(g: GateInstance) -> Optional[numpy.ndarray]:
	"""
	Returns the diagonal of the gate's unitary if the gate is diagonal in the computational basis,
	or :py:obj:`None` otherwise.

	:param g:
	"""  # noqa: D400

	name = g.kind.name

	if name == 'Z':
		return numpy.array([1, -1], dtype=numpy.complex128)
	elif name == "Rz":
		half = g.params[0] / 2
		return numpy.array([numpy.exp(-1j * half), numpy.exp(1j * half)])
	elif name == 'P':
		return numpy.array([1, numpy.exp(1j * g.params[0])])
	elif name == "CZ":
		return numpy.array([1, 1, 1, -1], dtype=numpy.complex128)
	elif name == "CP":
		return numpy.array([1, 1, 1, numpy.exp(1j * g.params[0])])
	elif name == "MCZ":
		diagonal = numpy.ones(2**len(g.qubits), dtype=numpy.complex128)
		diagonal[-1] = -1
		return diagonal

	return None


def unitary_of(g: GateInstance) -> ComplexMatrix:
	"""
	Returns the :math:`2^k \\times 2^k` unitary of the gate, with the first listed qubit most significant.

	:param g:

	:raises ValueError: If the gate kind is not in the catalog.
	"""

	name = g.kind.name

	if CATALOG.get(name) != g.kind:
		raise ValueError(f"Unknown gate kind {g.kind!r}")

	diagonal = diagonal_of(g)
	if diagonal is not None:
		return numpy.diag(diagonal)
	elif name in _PARAMETRISED:
		return _PARAMETRISED[name](g.params[0])
	else:
		return _FIXED[name].copy()


def is_virtual(kind: Union[GateKind, GateInstance]) -> bool:
	"""
	Returns whether the gate is implemented virtually (``Z``, ``Rz`` and ``P``).

	Virtual gates take no time, cause no error and do not count towards circuit depth.

	:param kind:
	"""

	if isinstance(kind, GateInstance):
		kind = kind.kind

	return kind.name in VIRTUAL_GATES


def is_universal(names: Iterable[str]) -> bool:
	"""
	Returns whether a native gate set can express every circuit the transpiler handles.

	The set needs ``Rz``, a half-turn pulse (``SX``, ``GPi2`` or ``Rx``)
	and an entangler (``CX``, ``CZ``, ``CP`` or ``MS``).

	:param names: Canonical gate names.
	"""

	names = set(names)
	return "Rz" in names and bool(names & {"SX", "GPi2", "Rx"}) and bool(names & {"CX", "CZ", "CP", "MS"})
