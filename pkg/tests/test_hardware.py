# stdlib
import re

# 3rd party
import dom_toml
import pytest
from dom_toml.parser import BadConfigError
from domdf_python_tools.paths import PathPlus

# this package
from nisq_noise.hardware import (
		BUILTIN_BACKENDS,
		BackendSpec,
		CouplingGraph,
		builtin,
		coupling_density,
		full_mesh,
		load_backend,
		resolve_backends
		)

MINIMAL_BACKEND = """\
[metrics]
name = "toy"
t1_us = 100.0
t2_us = 80.0
f1 = 0.999
f2 = 0.99
tg1_ns = 50.0
tg2_ns = 300.0

[gates]
native = [ "SX", "Rz", "CZ",]

[edges]
pairs = [ "0-1", "1-2",]
"""

LINE_ORIENTED_BACKEND = """\
[metrics]
name = "toy"
t1_us = 100.0
t2_us = 80.0
f1 = 0.999
f2 = 0.99
tg1_ns = 50.0
tg2_ns = 300.0

[gates]
SX
Rz
CZ

[edges]
0-1
1-2
"""


class TestCouplingGraph:

	def test_line(self):
		graph = CouplingGraph(4, [(0, 1), (2, 1), (3, 2)])
		assert graph.edges == {(0, 1), (1, 2), (2, 3)}
		assert graph.is_edge(1, 0)
		assert not graph.is_edge(0, 2)
		assert graph.neighbours(1) == [0, 2]
		assert graph.distance(0, 3) == 3
		assert graph.shortest_paths(0, 2) == [[0, 1, 2]]

	def test_shortest_paths_are_sorted(self):
		square = CouplingGraph(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
		assert square.shortest_paths(0, 3) == [[0, 1, 3], [0, 2, 3]]

	def test_complete(self):
		graph = CouplingGraph.complete(5)
		assert len(graph.edges) == 10
		assert graph.density == 100.0
		assert graph.distance(0, 4) == 1

	def test_routing_region(self):
		graph = CouplingGraph(4, [(0, 2), (1, 2), (2, 3)])
		assert graph.routing_region(1) == 1
		assert graph.routing_region(2) == 3
		assert graph.routing_region(3) == 3
		assert graph.routing_region(4) == 4

		with pytest.raises(ValueError, match="Cannot place 5 qubit"):
			graph.routing_region(5)

	def test_subgraph(self):
		graph = CouplingGraph(4, [(0, 1), (1, 2), (2, 3)])
		assert graph.subgraph(3) == CouplingGraph(3, [(0, 1), (1, 2)])

	def test_to_networkx_is_a_copy(self):
		graph = CouplingGraph(3, [(0, 1), (1, 2)])
		copy = graph.to_networkx()
		copy.add_edge(0, 2)
		assert not graph.is_edge(0, 2)

	@pytest.mark.parametrize(
			"num_qubits, edges, match",
			[
					pytest.param(0, [], "at least one qubit", id="empty"),
					pytest.param(3, [(0, 1)], "not connected", id="disconnected"),
					pytest.param(2, [(0, 2)], "Edge 0-2 is out of range for 2 qubit", id="range"),
					pytest.param(2, [(1, 1)], "Self-loop on qubit 1", id="self_loop"),
					]
			)
	def test_invalid(self, num_qubits: int, edges, match: str):
		with pytest.raises(ValueError, match=match):
			CouplingGraph(num_qubits, edges)


def test_coupling_density():
	assert coupling_density(CouplingGraph(1, [])) == 100.0
	assert coupling_density(CouplingGraph(3, [(0, 1), (1, 2)])) == pytest.approx(200 / 3)


def test_coupling_density_is_a_percentage():
	assert round(coupling_density(builtin("ibmq_kolkata").graph), 2) == 7.98
	assert round(coupling_density(builtin("rigetti_aspen_m3").graph), 2) == 3.35


@pytest.mark.parametrize(
		"name, num_qubits, density",
		[
				pytest.param("ibmq_kolkata", 27, 7.98, id="kolkata"),
				pytest.param("ionq_aria", 21, 100.0, id="aria"),
				pytest.param("rigetti_aspen_m3", 80, 3.35, id="aspen"),
				]
		)
def test_builtin_backends(name: str, num_qubits: int, density: float):
	backend = builtin(name)
	assert backend.name == name
	assert backend.num_qubits == num_qubits
	assert round(backend.coupling_density, 2) == density


def test_builtin_is_cached():
	assert builtin("ibmq_kolkata") is builtin("ibmq_kolkata")


def test_builtin_unknown():
	with pytest.raises(ValueError, match="Unknown backend 'ibmq_tokyo'. Builtin backends are"):
		builtin("ibmq_tokyo")


class TestBackendSpec:

	def test_units(self, kolkata: BackendSpec):
		assert kolkata.t1 == pytest.approx(109.9e-6)
		assert kolkata.t2 == pytest.approx(96.8e-6)
		assert kolkata.tg1 == pytest.approx(35.56e-9)
		assert kolkata.tg2 == pytest.approx(415.37e-9)

	def test_native_gates(self, kolkata: BackendSpec, aria: BackendSpec, aspen: BackendSpec):
		assert kolkata.native_gates == {'X', "SX", "Rz", "CX"}
		assert aria.native_gates == {"GPi", "GPi2", "Rz", "MS"}
		assert aspen.native_gates == {'X', "SX", "Rx", "Rz", "CZ", "CP", "XY"}
		assert [kind.name for kind in kolkata.gate_kinds] == ["CX", "Rz", "SX", 'X']

	def test_dump_and_load(self, tmp_pathplus: PathPlus, aspen: BackendSpec):
		text = aspen.dump(tmp_pathplus / "aspen.toml")
		assert (tmp_pathplus / "aspen.toml").read_text() == text
		assert '    "0-1",\n' in text
		assert load_backend(tmp_pathplus / "aspen.toml") == aspen

	def test_to_dict(self, kolkata: BackendSpec):
		as_dict = kolkata.to_dict()
		assert as_dict["metrics"]["t1_us"] == 109.9
		assert as_dict["gates"]["native"] == ["CX", "Rz", "SX", 'X']
		assert len(as_dict["edges"]["pairs"]) == 28
		assert BackendSpec.from_dict({
				"metrics": as_dict["metrics"],
				"gates": as_dict["gates"],
				"edges": {"pairs": sorted(kolkata.graph.edges)},
				}) == kolkata

	def test_load(self, tmp_pathplus: PathPlus):
		(tmp_pathplus / "toy.toml").write_clean(MINIMAL_BACKEND)
		backend = load_backend(tmp_pathplus / "toy.toml")
		assert backend.name == "toy"
		assert backend.num_qubits == 3
		assert backend.native_gates == {"SX", "Rz", "CZ"}
		assert backend.coupling_density == pytest.approx(200 / 3)

	def test_load_line_oriented(self, tmp_pathplus: PathPlus):
		(tmp_pathplus / "lines.toml").write_clean(LINE_ORIENTED_BACKEND)
		(tmp_pathplus / "toy.toml").write_clean(MINIMAL_BACKEND)
		backend = load_backend(tmp_pathplus / "lines.toml")
		assert backend.native_gates == {"SX", "Rz", "CZ"}
		assert backend.graph.edges == {(0, 1), (1, 2)}
		assert backend == load_backend(tmp_pathplus / "toy.toml")

	def test_builtin_as_lines(self, tmp_pathplus: PathPlus, aspen: BackendSpec):
		as_dict = aspen.to_dict()
		text = dom_toml.dumps({"metrics": as_dict["metrics"]})
		text += "\n[gates]\n" + "\n".join(as_dict["gates"]["native"])
		text += "\n\n[edges]\n" + "\n".join(as_dict["edges"]["pairs"]) + "\n"
		(tmp_pathplus / "aspen.toml").write_clean(text)
		assert load_backend(tmp_pathplus / "aspen.toml") == aspen

	def test_line_oriented_errors(self, tmp_pathplus: PathPlus):
		(tmp_pathplus / "bad.toml").write_clean(LINE_ORIENTED_BACKEND.replace("1-2", "1:2"))

		with pytest.raises(BadConfigError, match=re.escape("edges.pairs[1]: expected 'a-b', got '1:2'")):
			load_backend(tmp_pathplus / "bad.toml")

	@pytest.mark.parametrize(
			"text, match",
			[
					pytest.param(
							MINIMAL_BACKEND.split("[gates]")[0],
							"The 'gates' table must be provided.",
							id="missing_table",
							),
					pytest.param(
							MINIMAL_BACKEND + "\n[calibration]\ndate = 2023\n",
							"Unexpected top-level key 'calibration'.",
							id="unknown_table",
							),
					pytest.param(
							MINIMAL_BACKEND.replace('"1-2"', '"2-3"'),
							"'edges.pairs': The coupling graph is not connected",
							id="disconnected",
							),
					pytest.param(
							MINIMAL_BACKEND.replace("t2_us = 80.0", "t2_us = 250.0"),
							"'metrics.t2_us' cannot exceed twice 'metrics.t1_us'",
							id="t2",
							),
					pytest.param(
							"metrics = 1\n",
							"'metrics' must be a table.",
							id="not_a_table",
							),
					]
			)
	def test_load_errors(self, tmp_pathplus: PathPlus, text: str, match: str):
		(tmp_pathplus / "bad.toml").write_clean(text)

		with pytest.raises(BadConfigError, match=re.escape(match)):
			load_backend(tmp_pathplus / "bad.toml")

	def test_invalid(self, kolkata: BackendSpec):
		with pytest.raises(ValueError, match="is not universal"):
			BackendSpec(**{**kolkata.to_dict()["metrics"], "graph": kolkata.graph, "native_gates": ["Rz", "CX"]})

		with pytest.raises(ValueError, match="'f2' must be in the range"):
			BackendSpec(**{
					**kolkata.to_dict()["metrics"],
					"graph": kolkata.graph,
					"native_gates": kolkata.native_gates,
					"f2": 1.2,
					})


def test_full_mesh(kolkata: BackendSpec):
	mesh = full_mesh(kolkata)
	assert mesh.coupling_density == 100.0
	assert mesh.num_qubits == 27
	assert mesh.native_gates == kolkata.native_gates
	assert mesh.f2 == kolkata.f2
	assert kolkata.coupling_density < 10


class TestResolveBackends:

	def test_all(self):
		assert [b.name for b in resolve_backends("all")] == list(BUILTIN_BACKENDS)

	def test_name(self):
		assert resolve_backends("ionq_aria") == [builtin("ionq_aria")]

	def test_file(self, tmp_pathplus: PathPlus):
		(tmp_pathplus / "toy.toml").write_clean(MINIMAL_BACKEND)
		(backend, ) = resolve_backends((tmp_pathplus / "toy.toml").as_posix())
		assert backend.name == "toy"

	def test_unknown(self):
		with pytest.raises(ValueError, match="Unknown backend 'nowhere.toml'. Use 'all', one of"):
			resolve_backends("nowhere.toml")
