#!/usr/bin/env python3
#
#  hardware.py
"""
Device descriptions: coupling graphs, native gate sets and published error metrics.

Three devices are built in: ``ibmq_kolkata``, ``ionq_aria`` and ``rigetti_aspen_m3``.
Further devices can be described in TOML files (see :mod:`nisq_noise.parsers`).
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
import functools
import itertools
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Tuple, Type, TypeVar, Union

# 3rd party
import attr
import dom_toml
import networkx
from dom_toml import TomlEncoder
from dom_toml.parser import BadConfigError
from domdf_python_tools.paths import PathPlus
from domdf_python_tools.typing import PathLike
from domdf_python_tools.words import word_join

# this package
from nisq_noise.gates import GateKind, is_universal, lookup_gate
from nisq_noise.parsers import EdgesParser, GatesParser, MetricsParser, expand_line_tables
from nisq_noise.type_hints import BackendDict, Edge

__all__ = [
		"BUILTIN_BACKENDS",
		"CouplingGraph",
		"BackendSpec",
		"BackendTomlEncoder",
		"coupling_density",
		"load_backend",
		"builtin",
		"full_mesh",
		"resolve_backends",
		]

#: The names of the devices shipped with ``nisq-noise``.
BUILTIN_BACKENDS = ("ibmq_kolkata", "ionq_aria", "rigetti_aspen_m3")

_DATA_DIR = PathPlus(__file__).parent / "data"

_BS = TypeVar("_BS", bound="BackendSpec")


def _edges(value: Iterable[Tuple[int, int]]) -> FrozenSet[Edge]:
	edges = set()

	for a, b in value:
		a, b = int(a), int(b)
		if a == b:
			raise ValueError(f"Self-loop on qubit {a}")
		edges.add((min(a, b), max(a, b)))

	return frozenset(edges)


@attr.s(frozen=True)
class CouplingGraph:
	"""
	The pairs of physical qubits that two-qubit gates can act on.

	:param num_qubits:
	:param edges: Unordered pairs of physical qubits.

	:raises ValueError: If an edge is a self-loop or out of range, or if the graph is not connected.
	"""

	num_qubits: int = attr.ib()
	edges: FrozenSet[Edge] = attr.ib(converter=_edges)
	_graph: networkx.Graph = attr.ib(init=False, eq=False, repr=False)

	@num_qubits.validator
	def _check_num_qubits(self, attribute: attr.Attribute, value: int) -> None:
		if value < 1:
			raise ValueError(f"A device needs at least one qubit, got {value}")

	@edges.validator
	def _check_edges(self, attribute: attr.Attribute, value: FrozenSet[Edge]) -> None:
		for a, b in value:
			if a < 0 or b >= self.num_qubits:
				raise ValueError(f"Edge {a}-{b} is out of range for {self.num_qubits} qubit(s)")

	def __attrs_post_init__(self) -> None:
		graph = networkx.Graph()
		graph.add_nodes_from(range(self.num_qubits))
		graph.add_edges_from(sorted(self.edges))

		if not networkx.is_connected(graph):
			raise ValueError("The coupling graph is not connected")

		object.__setattr__(self, "_graph", graph)

	@classmethod
	def complete(cls, num_qubits: int) -> "CouplingGraph":
		"""
		Returns the fully connected graph on ``num_qubits`` qubits.

		:param num_qubits:
		"""

		return cls(num_qubits, itertools.combinations(range(num_qubits), 2))

	def to_networkx(self) -> networkx.Graph:
		"""
		Returns a copy of the graph as a :class:`networkx.Graph`.
		"""

		return self._graph.copy()

	def is_edge(self, a: int, b: int) -> bool:
		"""
		Returns whether a two-qubit gate can act on ``a`` and ``b`` directly.

		:param a:
		:param b:
		"""

		return self._graph.has_edge(a, b)

	def neighbours(self, q: int) -> List[int]:
		"""
		Returns the qubits coupled to ``q``, in ascending order.

		:param q:
		"""

		return sorted(self._graph.neighbors(q))

	def distance(self, a: int, b: int) -> int:
		"""
		Returns the number of edges on a shortest path from ``a`` to ``b``.

		:param a:
		:param b:
		"""

		return networkx.shortest_path_length(self._graph, a, b)

	def shortest_paths(self, a: int, b: int) -> List[List[int]]:
		"""
		Returns every shortest path from ``a`` to ``b``, sorted lexicographically.

		:param a:
		:param b:
		"""

		return sorted(networkx.all_shortest_paths(self._graph, a, b))

	def routing_region(self, width: int) -> int:
		"""
		Returns the smallest ``m >= width`` such that the qubits ``0 .. m-1`` form a connected subgraph.

		:param width:
		"""

		if not 1 <= width <= self.num_qubits:
			raise ValueError(f"Cannot place {width} qubit(s) on a device with {self.num_qubits}")

		for m in range(width, self.num_qubits + 1):
			if networkx.is_connected(self._graph.subgraph(range(m))):
				return m

		return self.num_qubits  # pragma: no cover

	def subgraph(self, num_qubits: int) -> "CouplingGraph":
		"""
		Returns the graph induced on the qubits ``0 .. num_qubits-1``.

		:param num_qubits:
		"""

		return CouplingGraph(num_qubits, [(a, b) for a, b in self.edges if b < num_qubits])

	@property
	def density(self) -> float:
		"""
		The percentage of all possible qubit pairs that are coupled.
		"""

		return coupling_density(self)


def coupling_density(graph: CouplingGraph) -> float:
	"""
	Returns :math:`100 \\cdot |E| / \\binom{N}{2}`, the percentage of qubit pairs that are coupled.

	A single-qubit device has density 100.

	:param graph:
	"""

	possible = graph.num_qubits * (graph.num_qubits - 1) // 2
	if not possible:
		return 100.0
	return 100 * len(graph.edges) / possible


def _native_gates(value: Iterable[str]) -> FrozenSet[str]:
	return frozenset(lookup_gate(name).name for name in value)


class BackendTomlEncoder(TomlEncoder):
	"""
	TOML encoder for backend files, which writes one array item per line.
	"""

	def format_inline_array(self, obj: Union[Tuple, List], nest_level: int) -> str:
		"""
		Format an inline array.

		:param obj:
		:param nest_level:

		:rtype:
		"""

		if not len(obj):
			return "[]"

		item_indent = "    " * (1 + nest_level)
		closing_bracket_indent = "    " * nest_level
		body = ",\n".join(item_indent + self.format_literal(item, nest_level=nest_level + 1) for item in obj)
		return f"[\n{body},\n{closing_bracket_indent}]"


@attr.s(frozen=True)
class BackendSpec:
	"""
	A quantum computing device.

	Metrics are stored in the units used by backend files. The :attr:`~.BackendSpec.t1`,
	:attr:`~.BackendSpec.t2`, :attr:`~.BackendSpec.tg1` and :attr:`~.BackendSpec.tg2`
	properties give the durations in seconds.

	:param name:
	:param graph:
	:param native_gates: Names of the gates the device implements.
	:param t1_us: The relaxation time :math:`T_1`, in microseconds.
	:param t2_us: The dephasing time :math:`T_2`, in microseconds.
	:param f1: The average one-qubit gate fidelity.
	:param f2: The average two-qubit gate fidelity.
	:param tg1_ns: The one-qubit gate duration, in nanoseconds.
	:param tg2_ns: The two-qubit gate duration, in nanoseconds.
	"""

	name: str = attr.ib()
	graph: CouplingGraph = attr.ib()
	native_gates: FrozenSet[str] = attr.ib(converter=_native_gates)
	t1_us: float = attr.ib(converter=float)
	t2_us: float = attr.ib(converter=float)
	f1: float = attr.ib(converter=float)
	f2: float = attr.ib(converter=float)
	tg1_ns: float = attr.ib(converter=float)
	tg2_ns: float = attr.ib(converter=float)

	@native_gates.validator
	def _check_native_gates(self, attribute: attr.Attribute, value: FrozenSet[str]) -> None:
		if not is_universal(value):
			raise ValueError(f"The native gate set {sorted(value)} of {self.name!r} is not universal")

	def __attrs_post_init__(self) -> None:
		for what in ("t1_us", "t2_us"):
			if not getattr(self, what) > 0:
				raise ValueError(f"{what!r} must be positive")
		for what in ("tg1_ns", "tg2_ns"):
			if not getattr(self, what) >= 0:
				raise ValueError(f"{what!r} must not be negative")
		for what in ("f1", "f2"):
			if not 0 < getattr(self, what) <= 1:
				raise ValueError(f"{what!r} must be in the range (0, 1]")
		if self.t2_us > 2 * self.t1_us:
			raise ValueError("'t2_us' cannot exceed twice 't1_us'")

	@property
	def num_qubits(self) -> int:
		"""
		The number of physical qubits.
		"""

		return self.graph.num_qubits

	@property
	def coupling_density(self) -> float:
		"""
		The percentage of qubit pairs that are coupled.
		"""

		return coupling_density(self.graph)

	@property
	def t1(self) -> float:
		"""
		:math:`T_1` in seconds.
		"""

		return self.t1_us * 1e-6

	@property
	def t2(self) -> float:
		"""
		:math:`T_2` in seconds.
		"""

		return self.t2_us * 1e-6

	@property
	def tg1(self) -> float:
		"""
		The one-qubit gate duration in seconds.
		"""

		return self.tg1_ns * 1e-9

	@property
	def tg2(self) -> float:
		"""
		The two-qubit gate duration in seconds.
		"""

		return self.tg2_ns * 1e-9

	@property
	def gate_kinds(self) -> List[GateKind]:
		"""
		The catalog entries of the native gates, sorted by name.
		"""

		return [lookup_gate(name) for name in sorted(self.native_gates)]

	def to_dict(self) -> BackendDict:
		"""
		Returns a dictionary with the same layout as a backend file.
		"""

		return {
				"metrics": {
						"name": self.name,
						"t1_us": self.t1_us,
						"t2_us": self.t2_us,
						"f1": self.f1,
						"f2": self.f2,
						"tg1_ns": self.tg1_ns,
						"tg2_ns": self.tg2_ns,
						},
				"gates": {"native": sorted(self.native_gates)},
				"edges": {"pairs": [f"{a}-{b}" for a, b in sorted(self.graph.edges)]},  # type: ignore[misc]
				}

	@classmethod
	def from_dict(cls: Type[_BS], d: Mapping[str, Any]) -> _BS:
		"""
		Construct a :class:`~.BackendSpec` from parsed backend tables.

		:param d: A mapping with ``metrics``, ``gates`` and ``edges`` keys,
			as returned by the parsers in :mod:`nisq_noise.parsers`.
		"""

		metrics = d["metrics"]
		pairs = d["edges"]["pairs"]
		num_qubits = max(max(pair) for pair in pairs) + 1

		return cls(
				name=metrics["name"],
				graph=CouplingGraph(num_qubits, pairs),
				native_gates=d["gates"]["native"],
				t1_us=metrics["t1_us"],
				t2_us=metrics["t2_us"],
				f1=metrics["f1"],
				f2=metrics["f2"],
				tg1_ns=metrics["tg1_ns"],
				tg2_ns=metrics["tg2_ns"],
				)

	def dumps(self, encoder: Union[Type[TomlEncoder], TomlEncoder] = BackendTomlEncoder) -> str:
		"""
		Serialise to TOML.

		:param encoder: The :class:`~dom_toml.encoder.TomlEncoder` to use for constructing the output string.
		"""

		return dom_toml.dumps(self.to_dict(), encoder)

	def dump(self, filename: PathLike, encoder: Union[Type[TomlEncoder], TomlEncoder] = BackendTomlEncoder) -> str:
		"""
		Write as TOML to the given file.

		:param filename: The filename to write to.
		:param encoder: The :class:`~dom_toml.encoder.TomlEncoder` to use for constructing the output string.

		:returns: A string containing the TOML representation.
		"""

		filename = PathPlus(filename)
		as_toml = self.dumps(encoder=encoder)
		filename.write_clean(as_toml)
		return as_toml

	@classmethod
	def load(cls: Type[_BS], filename: PathLike) -> _BS:
		"""
		Load a backend from the given TOML file.

		The ``[gates]`` and ``[edges]`` tables may be written one item per line
		(see :func:`~.expand_line_tables`).

		:param filename:
		"""

		config = dom_toml.loads(expand_line_tables(PathPlus(filename).read_text()))
		tables: Dict[str, Any] = {}

		for table, parser in (("metrics", MetricsParser()), ("gates", GatesParser()), ("edges", EdgesParser())):
			if table not in config:
				raise BadConfigError(f"The {table!r} table must be provided.")

			subtable = config[table]
			if not isinstance(subtable, dict):
				raise BadConfigError(f"{table!r} must be a table.")

			tables[table] = parser.parse(subtable)

		for top_level_key in sorted(config):
			if top_level_key not in tables:
				raise BadConfigError(
						f"Unexpected top-level key {top_level_key!r}. "
						f"Only {word_join(tables, use_repr=True)} are allowed.",
						)

		try:
			return cls.from_dict(tables)
		except ValueError as e:
			raise BadConfigError(f"'edges.pairs': {e}") from None


def load_backend(path: PathLike) -> BackendSpec:
	"""
	Load a backend from the given TOML file.

	:param path:

	:raises dom_toml.parser.BadConfigError: If a value is invalid. The message names the offending field.
	"""

	return BackendSpec.load(path)


@functools.lru_cache()
def builtin(name: str) -> BackendSpec:
	"""
	Returns one of the builtin backends.

	:param name: One of :data:`~.BUILTIN_BACKENDS`.
	"""

	if name not in BUILTIN_BACKENDS:
		raise ValueError(f"Unknown backend {name!r}. Builtin backends are {word_join(BUILTIN_BACKENDS, use_repr=True)}.")

	return load_backend(_DATA_DIR / f"{name}.toml")


def full_mesh(backend: BackendSpec) -> BackendSpec:
	"""
	Returns a copy of ``backend`` with every pair of qubits coupled.

	:param backend:
	"""

	return attr.evolve(backend, graph=CouplingGraph.complete(backend.num_qubits))


def resolve_backends(value: str) -> List[BackendSpec]:
	"""
	Resolve a ``--backend`` value: a builtin name, ``all``, or the path to a backend file.

	:param value:
	"""

	if value == "all":
		return [builtin(name) for name in BUILTIN_BACKENDS]
	elif value in BUILTIN_BACKENDS:
		return [builtin(value)]

	path = PathPlus(value)
	if path.is_file():
		return [load_backend(path)]

	raise ValueError(
			f"Unknown backend {value!r}. "
			f"Use 'all', one of {word_join(BUILTIN_BACKENDS, use_repr=True)}, or the path to a backend file."
			)
