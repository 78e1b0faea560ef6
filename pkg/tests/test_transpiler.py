# stdlib
import logging
import math
from typing import Callable

# 3rd party
import numpy
import pytest

# this package
from nisq_noise.circuit import Circuit, build_grover, build_qft, build_qft_benchmark
from nisq_noise.engine import SimulationResult, ideal_state, state_fidelity
from nisq_noise.gates import gate, unitary_of
from nisq_noise.hardware import BUILTIN_BACKENDS, BackendSpec, CouplingGraph, builtin, full_mesh
from nisq_noise.qmath import partial_trace
from nisq_noise.transpiler import Layout, decompose, route, transpile, zyz_angles
from nisq_noise.utils import SimulationWarning

ONE_QUBIT = ['H', 'X', 'Y', 'Z', "SX", "Rx", "Ry", "Rz", 'P', "GPi", "GPi2"]
TWO_QUBIT = ["CX", "CZ", "CP", "SWAP", "MS", "XY"]
PARAMETRISED = {"Rx", "Ry", "Rz", 'P', "GPi", "GPi2", "CP", "XY"}

LINE = CouplingGraph(3, [(0, 1), (1, 2)])

# 200 random circuits per backend and connectivity
CIRCUIT_BATCHES = 4
CIRCUITS_PER_BATCH = 50


def random_circuit(rng: numpy.random.Generator, num_qubits: int, num_gates: int = 14) -> Circuit:
	instructions = [gate("Ry", q, rng.uniform(0, math.pi)) for q in range(num_qubits)]

	for _ in range(num_gates):
		roll = rng.random()
		if roll < 0.45:
			name, arity = ONE_QUBIT[rng.integers(len(ONE_QUBIT))], 1
		elif roll < 0.9:
			name, arity = TWO_QUBIT[rng.integers(len(TWO_QUBIT))], 2
		else:
			name, arity = "MCZ", 3

		qubits = tuple(int(q) for q in rng.choice(num_qubits, size=arity, replace=False))
		params = [rng.uniform(-math.pi, math.pi)] if name in PARAMETRISED else []
		instructions.append(gate(name, qubits, *params))

	return Circuit(num_qubits, instructions)


def routed_fidelity(c: Circuit, backend: BackendSpec, seed: int = 0) -> float:
	report = transpile(c, backend, seed)
	output = ideal_state(report.output).to_density()
	logical = SimulationResult.from_state(partial_trace(output, report.logical_qubits()))
	return state_fidelity(logical, ideal_state(c))


def _phase_equal(u: numpy.ndarray, v: numpy.ndarray) -> bool:
	return abs(abs(numpy.trace(u.conj().T @ v)) - len(u)) < 1e-9


def _zyz_matrix(theta: float, phi: float, lam: float) -> numpy.ndarray:
	return unitary_of(gate("Rz", 0, phi)) @ unitary_of(gate("Ry", 0, theta)) @ unitary_of(gate("Rz", 0, lam))


class TestZyzAngles:

	def test_random(self, random_unitary: Callable[[int], numpy.ndarray]):
		for _ in range(50):
			u = random_unitary(2)
			theta, phi, lam = zyz_angles(u)
			assert 0 <= theta <= math.pi
			assert _phase_equal(_zyz_matrix(theta, phi, lam), u)

	@pytest.mark.parametrize(
			"name, params",
			[
					pytest.param('X', (), id='X'),
					pytest.param('Y', (), id='Y'),
					pytest.param('H', (), id='H'),
					pytest.param("Rz", (0.3, ), id="Rz"),
					pytest.param('P', (-2.0, ), id='P'),
					pytest.param('Z', (), id='Z'),
					]
			)
	def test_special_cases(self, name: str, params):
		u = unitary_of(gate(name, 0, *params))
		assert _phase_equal(_zyz_matrix(*zyz_angles(u)), u)

	def test_diagonal_has_no_rotation(self):
		theta, _, lam = zyz_angles(numpy.diag([1, 1j]))
		assert theta == 0
		assert lam == 0


class TestDecompose:

	@pytest.mark.parametrize("name", BUILTIN_BACKENDS)
	def test_only_native_gates(self, name: str):
		natives = builtin(name).native_gates
		for c in (build_grover(3), build_qft(4), random_circuit(numpy.random.default_rng(7), 4, 30)):
			assert set(decompose(c, natives).count_ops()) <= natives

	@pytest.mark.parametrize("name", BUILTIN_BACKENDS)
	def test_idempotent(self, name: str):
		natives = builtin(name).native_gates
		once = decompose(build_qft_benchmark(3), natives)
		assert decompose(once, natives) == once

	@pytest.mark.parametrize("name", BUILTIN_BACKENDS)
	def test_preserves_unitary(self, name: str):
		natives = builtin(name).native_gates
		rng = numpy.random.default_rng(99)

		for _ in range(10):
			c = random_circuit(rng, 3)
			d = decompose(c, natives)
			assert d.num_qubits == c.num_qubits
			assert abs(numpy.vdot(ideal_state(c).amplitudes, ideal_state(d).amplitudes))**2 > 1 - 1e-9

	def test_cx_on_cz_device(self, aspen: BackendSpec):
		ops = decompose(Circuit(2, [gate("CX", (0, 1))]), aspen.native_gates).count_ops()
		assert ops["CZ"] == 1
		assert "CX" not in ops

	def test_cx_on_trapped_ions(self, aria: BackendSpec):
		ops = decompose(Circuit(2, [gate("CX", (0, 1))]), aria.native_gates).count_ops()
		assert ops["MS"] == 1

	def test_merges_one_qubit_runs(self, kolkata: BackendSpec):
		c = Circuit(1, [gate('H', 0), gate('H', 0), gate('Y', 0), gate('Y', 0)])
		assert len(decompose(c, kolkata.native_gates)) == 0

	def test_not_universal(self):
		with pytest.raises(ValueError, match="is not universal"):
			decompose(build_grover(2), {"Rz", "CX"})


class TestRoute:

	def test_adjacent_gates_need_no_swaps(self):
		c = Circuit(3, [gate('H', 0), gate("CX", (0, 1)), gate("CX", (2, 1))])
		report = route(c, LINE)
		assert report.swaps_inserted == 0
		assert report.output == c
		assert report.final_layout == Layout.identity(3)

	@pytest.mark.parametrize("seed", [0, 1, 2, 3])
	def test_distant_gate(self, seed: int):
		report = route(Circuit(3, [gate("CX", (0, 2))]), LINE, seed)
		assert report.swaps_inserted == 1
		assert report.width == 3

		# either end may move
		assert (list(report.output), report.logical_qubits()) in [
				([gate("SWAP", (1, 0)), gate("CX", (1, 2))], [1, 0, 2]),
				([gate("SWAP", (1, 2)), gate("CX", (0, 1))], [0, 2, 1]),
				]

	@pytest.mark.parametrize("seed", [0, 1, 2, 3])
	def test_busy_qubit_stays(self, seed: int):
		c = Circuit(3, [gate('H', 2), gate("CX", (0, 2))])
		report = route(c, LINE, seed)

		assert list(report.output) == [gate('H', 2), gate("SWAP", (1, 0)), gate("CX", (1, 2))]
		assert report.logical_qubits() == [1, 0, 2]

	def test_virtual_gates_do_not_delay(self):
		c = Circuit(3, [gate("Rz", 2, 0.5), gate("CX", (0, 2))])

		outputs = {tuple(route(c, LINE, seed).output) for seed in range(16)}
		assert len(outputs) == 2

	def test_every_two_qubit_gate_on_an_edge(self, kolkata: BackendSpec):
		report = route(decompose(build_qft(6), kolkata.native_gates), kolkata.graph, seed=3)
		for instruction in report.output:
			if len(instruction.qubits) == 2:
				assert kolkata.graph.is_edge(*instruction.qubits)

	def test_ancilla_warning(self):
		graph = CouplingGraph(3, [(0, 2), (1, 2)])

		with pytest.warns(SimulationWarning, match="needs the 3 lowest-numbered physical qubits"):
			report = route(Circuit(2, [gate("CX", (0, 1))]), graph)

		assert report.width == 3
		assert report.swaps_inserted == 1

	def test_errors(self):
		with pytest.raises(ValueError, match="needs 4 qubits but the device only has 3"):
			route(Circuit(4), LINE)
		with pytest.raises(ValueError, match="Decompose 'MCZ' before routing"):
			route(Circuit(3, [gate("MCZ", (0, 1, 2))]), LINE)


class TestLayout:

	def test_identity(self):
		layout = Layout.identity(3)
		assert layout.mapping == (0, 1, 2)
		assert layout.physical(2) == 2
		assert len(layout) == 3

	def test_inverse(self):
		assert Layout([2, 0, 5]).inverse() == {2: 0, 0: 1, 5: 2}

	def test_invalid(self):
		with pytest.raises(ValueError, match="same physical qubit"):
			Layout([0, 0])
		with pytest.raises(ValueError, match="Negative physical qubit"):
			Layout([0, -1])


class TestTranspile:

	@pytest.mark.parametrize("batch", range(CIRCUIT_BATCHES))
	@pytest.mark.parametrize("connectivity", ["native", "full"])
	@pytest.mark.parametrize("name", BUILTIN_BACKENDS)
	def test_semantics_preserved(self, name: str, connectivity: str, batch: int):
		backend = builtin(name)
		if connectivity == "full":
			backend = full_mesh(backend)

		rng = numpy.random.default_rng([sum(map(ord, name + connectivity)), batch])

		for i in range(CIRCUITS_PER_BATCH):
			c = random_circuit(rng, 3 + i % 2)
			assert routed_fidelity(c, backend, seed=batch * CIRCUITS_PER_BATCH + i) >= 1 - 1e-9

	def test_deterministic(self, kolkata: BackendSpec):
		c = build_qft(5)
		assert transpile(c, kolkata, seed=11) == transpile(c, kolkata, seed=11)

	def test_report(self, kolkata: BackendSpec):
		c = build_grover(3)
		report = transpile(c, kolkata, seed=2)

		assert report.seed == 2
		assert report.depth_before == c.depth()
		assert report.depth_after == report.output.depth()
		assert report.depth_after > report.depth_before
		assert set(report.output.count_ops()) <= kolkata.native_gates
		assert sorted(report.logical_qubits()) == [0, 1, 2]

	def test_full_mesh_needs_no_swaps(self, aria: BackendSpec, aspen: BackendSpec):
		assert transpile(build_qft(6), aria).swaps_inserted == 0
		assert transpile(build_qft(6), full_mesh(aspen)).swaps_inserted == 0

	def test_logging(self, kolkata: BackendSpec, caplog: pytest.LogCaptureFixture):
		with caplog.at_level(logging.INFO, logger="nisq_noise.transpiler"):
			transpile(Circuit(2, [gate("CX", (0, 1))]), kolkata)

		assert "Transpiled 2-qubit circuit for ibmq_kolkata" in caplog.text
		assert "0 SWAPs" in caplog.text

	@pytest.mark.filterwarnings("ignore::nisq_noise.utils.SimulationWarning")
	def test_native_depth_at_least_full_depth(self, kolkata: BackendSpec):
		mesh = full_mesh(kolkata)

		for n in range(2, 12):
			c = build_qft(n)
			assert transpile(c, kolkata).depth_after >= transpile(c, mesh).depth_after


@pytest.mark.slow
@pytest.mark.filterwarnings("ignore::nisq_noise.utils.SimulationWarning")
@pytest.mark.parametrize("name", ["ibmq_kolkata", "rigetti_aspen_m3"])
def test_grover_depth_blowup(name: str):
	report = transpile(build_grover(7), builtin(name))

	assert report.depth_after > 1000


@pytest.mark.slow
@pytest.mark.parametrize("name", BUILTIN_BACKENDS)
def test_qft_depth_is_linear_on_full_mesh(name: str):
	mesh = full_mesh(builtin(name))
	qubits = numpy.arange(2, 12)
	depths = numpy.array([transpile(build_qft_benchmark(int(n)), mesh).depth_after for n in qubits])

	slope, intercept = numpy.polyfit(qubits, depths, 1)
	residuals = depths - (slope * qubits + intercept)
	r_squared = 1 - residuals.dot(residuals) / ((depths - depths.mean())**2).sum()

	assert slope > 0
	assert r_squared > 0.98


@pytest.mark.slow
@pytest.mark.parametrize("name", ["ibmq_kolkata", "rigetti_aspen_m3"])
def test_qft_native_connectivity_overhead(name: str):
	backend = builtin(name)
	native = transpile(build_qft_benchmark(11), backend).depth_after
	full = transpile(build_qft_benchmark(11), full_mesh(backend)).depth_after

	assert native >= 1.25 * full



@pytest.mark.slow
@pytest.mark.parametrize("name", BUILTIN_BACKENDS)
def test_qft_depth_landmark(name: str):
	assert 75 <= transpile(build_qft(11), builtin(name)).depth_after <= 300
