#!/usr/bin/env python3
#
#  transpiler.py
"""
Lower logical circuits to a device's native gates and route them onto its coupling graph.

Routing starts from the identity layout (logical qubit ``i`` on physical qubit ``i``) and is
confined to the smallest connected prefix of the physical register that can hold the circuit,
so the routed circuit stays small enough for dense simulation.
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
import cmath
import logging
import math
import warnings
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

# 3rd party
import attr
import numpy
from domdf_python_tools.words import Plural

# this package
from nisq_noise.circuit import Circuit
from nisq_noise.gates import GateInstance, gate, is_universal, is_virtual, lookup_gate, unitary_of
from nisq_noise.hardware import BackendSpec, CouplingGraph
from nisq_noise.type_hints import ComplexMatrix
from nisq_noise.utils import SimulationWarning

__all__ = [
		"Layout",
		"TranspileReport",
		"zyz_angles",
		"decompose",
		"route",
		"transpile",
		]

logger = logging.getLogger(__name__)

_ANGLE_ATOL = 1e-12
_PULSE_ATOL = 1e-10

# a routing SWAP lowers to three two-qubit gates
_SWAP_LAYERS = 3

_swaps = Plural("SWAP", "SWAPs")


def _mapping(value: Iterable[int]) -> Tuple[int, ...]:
	return tuple(int(v) for v in value)


@attr.s(frozen=True)
class Layout:
	"""
	Maps logical qubits to physical qubits; ``mapping[i]`` holds logical qubit ``i``.

	:param mapping:
	"""

	mapping: Tuple[int, ...] = attr.ib(converter=_mapping)

	@mapping.validator
	def _check_mapping(self, attribute: attr.Attribute, value: Tuple[int, ...]) -> None:
		if len(set(value)) != len(value):
			raise ValueError(f"Layout maps two logical qubits to the same physical qubit: {list(value)}")
		if any(p < 0 for p in value):
			raise ValueError(f"Negative physical qubit in layout: {list(value)}")

	@classmethod
	def identity(cls, num_qubits: int) -> "Layout":
		"""
		Returns the layout placing logical qubit ``i`` on physical qubit ``i``.

		:param num_qubits:
		"""

		return cls(range(num_qubits))

	def physical(self, logical: int) -> int:
		"""
		Returns the physical qubit holding ``logical``.

		:param logical:
		"""

		return self.mapping[logical]

	def inverse(self) -> Dict[int, int]:
		"""
		Returns the map from physical to logical qubits.
		"""

		return {p: logical for logical, p in enumerate(self.mapping)}

	def __len__(self) -> int:
		return len(self.mapping)


@attr.s(frozen=True)
class TranspileReport:
	"""
	The outcome of :func:`~.transpile` or :func:`~.route`.

	:param output: The routed circuit, acting on physical qubits ``0 .. width-1``.
	:param final_layout: Where each logical qubit ends up.
	:param swaps_inserted: The number of SWAP gates routing inserted.
	:param depth_before: The depth of the input circuit.
	:param depth_after: The depth of the output circuit.
	:param seed: The seed used to break ties between shortest paths.
	"""

	output: Circuit = attr.ib()
	final_layout: Layout = attr.ib()
	swaps_inserted: int = attr.ib()
	depth_before: int = attr.ib()
	depth_after: int = attr.ib()
	seed: int = attr.ib(default=0)

	@property
	def width(self) -> int:
		"""
		The number of physical qubits the output circuit uses.
		"""

		return self.output.num_qubits

	def logical_qubits(self) -> List[int]:
		"""
		Returns the physical qubits holding logical qubits ``0 .. n-1`` at the end of the circuit.
		"""

		return list(self.final_layout.mapping)


def _wrap(angle: float) -> float:
	# into (-pi, pi]
	wrapped = math.remainder(angle, 2 * math.pi)
	return math.pi if wrapped == -math.pi else wrapped


def zyz_angles(u: ComplexMatrix) -> Tuple[float, float, float]:
	r"""
	Factorise a one-qubit unitary as :math:`e^{i\alpha} R_z(\phi) R_y(\theta) R_z(\lambda)`.

	:param u:

	:returns: ``(theta, phi, lam)`` with :math:`\theta \in [0, \pi]`.
	"""

	u = numpy.asarray(u, dtype=numpy.complex128)
	v = u / numpy.sqrt(numpy.linalg.det(u))

	cos_half, sin_half = abs(v[0, 0]), abs(v[1, 0])
	theta = 2 * math.atan2(sin_half, cos_half)

	if sin_half < _ANGLE_ATOL:
		return theta, 2 * cmath.phase(v[1, 1]), 0.0
	elif cos_half < _ANGLE_ATOL:
		return theta, 2 * cmath.phase(v[1, 0]), 0.0

	arg_11, arg_10 = cmath.phase(v[1, 1]), cmath.phase(v[1, 0])
	return theta, arg_11 + arg_10, arg_11 - arg_10


@attr.s(frozen=True)
class _TargetBasis:
	names: FrozenSet[str] = attr.ib()

	@classmethod
	def from_names(cls, names: Iterable[str]) -> "_TargetBasis":
		canonical = frozenset(lookup_gate(name).name for name in names)

		if not is_universal(canonical):
			raise ValueError(
					f"The gate set {sorted(canonical)} is not universal: it needs 'Rz', "
					"one of 'SX', 'GPi2' or 'Rx', and one of 'CX', 'CZ', 'CP' or 'MS'."
					)

		return cls(canonical)

	def half_pulse(self, q: int) -> GateInstance:
		if "SX" in self.names:
			return gate("SX", q)
		return gate("GPi2", q, 0.0)

	def pi_pulse(self, q: int) -> List[GateInstance]:
		if 'X' in self.names:
			return [gate('X', q)]
		elif "GPi" in self.names:
			return [gate("GPi", q, 0.0)]
		return []

	def lower_one_qubit(self, u: ComplexMatrix, q: int) -> List[GateInstance]:
		theta, phi, lam = zyz_angles(u)
		ops: List[GateInstance] = []

		def rz(angle: float) -> None:
			angle = _wrap(angle)
			if abs(angle) > _ANGLE_ATOL:
				ops.append(gate("Rz", q, angle))

		if theta < _ANGLE_ATOL:
			rz(phi + lam)
		elif "Rx" in self.names:
			rz(lam - math.pi / 2)
			ops.append(gate("Rx", q, theta))
			rz(phi + math.pi / 2)
		elif abs(theta - math.pi) < _PULSE_ATOL and self.pi_pulse(q):
			rz(lam - math.pi / 2)
			ops.extend(self.pi_pulse(q))
			rz(phi + math.pi / 2)
		elif abs(theta - math.pi / 2) < _PULSE_ATOL:
			rz(lam - math.pi / 2)
			ops.append(self.half_pulse(q))
			rz(phi + math.pi / 2)
		else:
			rz(lam)
			ops.append(self.half_pulse(q))
			rz(theta + math.pi)
			ops.append(self.half_pulse(q))
			rz(phi + math.pi)

		return ops

	def _cx(self, control: int, target: int) -> List[GateInstance]:
		if "CZ" in self.names:
			return [gate('H', target), gate("CZ", (control, target)), gate('H', target)]
		elif "CP" in self.names:
			return [gate('H', target), gate("CP", (control, target), math.pi), gate('H', target)]

		# MS = exp(-i pi/4 XX)
		return [
				gate('H', control),
				gate('Z', control),
				gate("MS", (control, target)),
				gate('Z', control),
				gate('H', control),
				gate("Rz", control, math.pi / 2),
				gate("Rx", target, math.pi / 2),
				]

	def expand(self, instruction: GateInstance) -> List[GateInstance]:
		name = instruction.kind.name
		qubits = instruction.qubits

		if name == "MCZ":
			if len(qubits) == 2:
				return [gate("CZ", qubits)]
			return _parity_network(qubits, math.pi / 2**(len(qubits) - 1))

		a, b = qubits

		if name == "CX":
			return self._cx(a, b)
		elif name == "CZ":
			if "CX" not in self.names and "CP" in self.names:
				return [gate("CP", (a, b), math.pi)]
			return [gate('H', b), gate("CX", (a, b)), gate('H', b)]
		elif name == "CP":
			half = instruction.params[0] / 2
			return [
					gate('P', a, half),
					gate("CX", (a, b)),
					gate('P', b, -half),
					gate("CX", (a, b)),
					gate('P', b, half),
					]
		elif name == "SWAP":
			return [gate("CX", (a, b)), gate("CX", (b, a)), gate("CX", (a, b))]
		elif name == "MS":
			return _zz_conjugated(a, b, math.pi / 2, [gate('H', a), gate('H', b)], [gate('H', a), gate('H', b)])
		elif name == "XY":
			theta = instruction.params[0]
			hadamards = [gate('H', a), gate('H', b)]
			xx = _zz_conjugated(a, b, -theta / 2, hadamards, hadamards)
			yy = [gate('P', a, -math.pi / 2), gate('P', b, -math.pi / 2)]
			yy.extend(xx)
			yy.extend([gate('P', a, math.pi / 2), gate('P', b, math.pi / 2)])
			return xx + yy

		raise ValueError(f"Cannot decompose {name!r}")  # pragma: no cover


def _zz_conjugated(
		a: int,
		b: int,
		angle: float,
		before: Sequence[GateInstance],
		after: Sequence[GateInstance],
		) -> List[GateInstance]:
	# before, then exp(-i angle/2 ZZ), then after
	return [*before, gate("CX", (a, b)), gate("Rz", b, angle), gate("CX", (a, b)), *after]


def _parity_network(qubits: Sequence[int], scale: float) -> List[GateInstance]:
	"""
	Phase every computational basis state by ``scale`` times the signed parities of its qubit subsets.

	A subset ``S`` contributes ``scale * (-1)**(|S|-1)`` whenever the parity of ``S`` is odd.
	With ``scale = pi / 2**(k-1)`` the total phase is ``pi`` on ``|1...1>`` only.
	"""

	if not qubits:
		return []

	*lower, top = qubits
	ops = _parity_network(lower, scale)
	ops.append(gate('P', top, scale))

	previous = 0
	for i in range(1, 2**len(lower)):
		gray = i ^ (i >> 1)
		flipped = (gray ^ previous).bit_length() - 1
		ops.append(gate("CX", (lower[flipped], top)))

		size = bin(gray).count('1') + 1
		ops.append(gate('P', top, scale if size % 2 else -scale))
		previous = gray

	if lower:
		ops.append(gate("CX", (lower[-1], top)))

	return ops


class _Lowering:

	def __init__(self, basis: _TargetBasis):
		self.basis = basis
		self.output: List[GateInstance] = []
		self.pending: Dict[int, numpy.ndarray] = {}

	def add(self, instruction: GateInstance) -> None:
		kind = instruction.kind

		if kind.name in self.basis.names:
			self.flush(instruction.qubits)
			self.output.append(instruction)
		elif kind.arity == 1 and not kind.variadic:
			q = instruction.qubits[0]
			self.pending[q] = unitary_of(instruction) @ self.pending.get(q, numpy.eye(2))
		else:
			for sub in self.basis.expand(instruction):
				self.add(sub)

	def flush(self, qubits: Iterable[int]) -> None:
		for q in qubits:
			if q in self.pending:
				self.output.extend(self.basis.lower_one_qubit(self.pending.pop(q), q))

	def finish(self) -> List[GateInstance]:
		self.flush(sorted(self.pending))
		return self.output


def decompose(c: Circuit, target: Iterable[str]) -> Circuit:
	"""
	Rewrite ``c`` using only the gates in ``target``.

	Native gates are copied unchanged, so decomposing an already native circuit returns an equal circuit.
	Runs of non-native one-qubit gates on a wire are merged and re-expressed with ``Rz`` and
	the available pulse gates. The result equals ``c`` up to a global phase.

	:param c:
	:param target: The native gate names.

	:raises ValueError: If ``target`` is not universal.
	"""

	lowering = _Lowering(_TargetBasis.from_names(target))

	for instruction in c:
		lowering.add(instruction)

	return Circuit(c.num_qubits, lowering.finish())


def _moves(path: Sequence[int], meet: int) -> List[Tuple[int, int]]:
	# (from, to) steps bringing both ends of ``path`` onto the edge ``path[meet] - path[meet + 1]``
	head = [(path[i], path[i + 1]) for i in range(meet)]
	tail = [(path[i], path[i - 1]) for i in range(len(path) - 1, meet + 1, -1)]
	return head + tail


def _move_cost(levels: Sequence[int], path: Sequence[int], meet: int) -> Tuple[int, int]:
	"""
	Score a way of making the ends of ``path`` adjacent.

	:returns: The layer at which the routed gate can start, and the summed layers along the path afterwards.
	"""

	trial = list(levels)

	for p, q in _moves(path, meet):
		trial[p] = trial[q] = max(trial[p], trial[q]) + _SWAP_LAYERS

	return max(trial[path[meet]], trial[path[meet + 1]]), sum(trial[p] for p in path)


def route(c: Circuit, graph: CouplingGraph, seed: int = 0) -> TranspileReport:
	"""
	Insert SWAP gates so that every two-qubit gate acts on coupled qubits.

	When two qubits are not coupled they are moved towards each other along a shortest path.
	Of all shortest paths, and all points along them where the two qubits could meet,
	the one letting the gate start earliest is used, given the layers already scheduled on each qubit.
	Remaining ties go to the lower summed layer count along the path and then to a seeded random choice.
	Only the gates routed so far are considered.

	:param c: A circuit without gates on more than two qubits.
	:param graph:
	:param seed:

	:raises ValueError: If the circuit is wider than the device or contains a gate on more than two qubits.
	"""

	n = c.num_qubits

	if n > graph.num_qubits:
		raise ValueError(f"The circuit needs {n} qubits but the device only has {graph.num_qubits}")

	width = graph.routing_region(n)
	if width > n:
		warnings.warn(
				f"Routing {n} qubit(s) needs the {width} lowest-numbered physical qubits "
				"to form a connected region; the extra qubits are simulated as ancillas.",
				SimulationWarning,
				)

	region = graph.subgraph(width)
	rng = numpy.random.default_rng(seed)

	logical_to_physical = list(range(n))
	physical_to_logical: Dict[int, int] = {p: p for p in range(n)}
	levels = [0] * width
	output: List[GateInstance] = []
	swaps = 0

	def swap(p: int, q: int) -> None:
		nonlocal swaps
		# destination first: consecutive SWAPs along a path then share their outer one-qubit gates once lowered
		output.append(gate("SWAP", (q, p)))
		swaps += 1
		levels[p] = levels[q] = max(levels[p], levels[q]) + _SWAP_LAYERS

		lp, lq = physical_to_logical.pop(p, None), physical_to_logical.pop(q, None)
		if lp is not None:
			physical_to_logical[q] = lp
			logical_to_physical[lp] = q
		if lq is not None:
			physical_to_logical[p] = lq
			logical_to_physical[lq] = p

	for instruction in c:
		qubits = instruction.qubits

		if len(qubits) > 2:
			raise ValueError(f"Decompose {instruction.kind.name!r} before routing")

		if len(qubits) == 2:
			pa, pb = logical_to_physical[qubits[0]], logical_to_physical[qubits[1]]

			if not region.is_edge(pa, pb):
				candidates = [(path, meet) for path in region.shortest_paths(pa, pb) for meet in range(len(path) - 1)]
				costs = [_move_cost(levels, path, meet) for path, meet in candidates]
				best = min(costs)
				ties = [candidate for candidate, cost in zip(candidates, costs) if cost == best]

				path, meet = ties[int(rng.integers(len(ties)))]
				logger.debug(
						"Routing %s between %d and %d along %s, meeting at %d-%d",
						instruction.kind.name,
						pa,
						pb,
						path,
						path[meet],
						path[meet + 1],
						)

				for p, q in _moves(path, meet):
					swap(p, q)

		physical = instruction.on(*(logical_to_physical[q] for q in qubits))
		output.append(physical)

		if not is_virtual(physical):
			level = max(levels[q] for q in physical.qubits) + 1
			for q in physical.qubits:
				levels[q] = level

	routed = Circuit(width, output)

	return TranspileReport(
			output=routed,
			final_layout=Layout(logical_to_physical),
			swaps_inserted=swaps,
			depth_before=c.depth(),
			depth_after=routed.depth(),
			seed=seed,
			)


def transpile(c: Circuit, backend: BackendSpec, seed: int = 0) -> TranspileReport:
	"""
	Decompose ``c`` into the backend's native gates, route it onto the coupling graph
	and lower the inserted SWAP gates.

	:param c:
	:param backend:
	:param seed: Breaks ties between equally good routing choices.
	"""  # noqa: D400

	decomposed = decompose(c, backend.native_gates)
	routed = route(decomposed, backend.graph, seed)
	output = decompose(routed.output, backend.native_gates)

	report = attr.evolve(routed, output=output, depth_before=c.depth(), depth_after=output.depth())

	logger.info(
			"Transpiled %d-qubit circuit for %s: depth %d -> %d, %d %s",
			c.num_qubits,
			backend.name,
			report.depth_before,
			report.depth_after,
			report.swaps_inserted,
			_swaps(report.swaps_inserted),
			)

	return report
