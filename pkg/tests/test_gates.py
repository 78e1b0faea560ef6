# stdlib
import math

# 3rd party
import numpy
import pytest
from numpy.testing import assert_allclose

# this package
from nisq_noise.gates import (
		CATALOG,
		GateInstance,
		diagonal_of,
		gate,
		is_universal,
		is_virtual,
		lookup_gate,
		unitary_of
		)
from nisq_noise.qmath import is_unitary

PAULI_X = numpy.array([[0, 1], [1, 0]])
PAULI_Y = numpy.array([[0, -1j], [1j, 0]])
PAULI_Z = numpy.diag([1, -1])


def _expm_pauli(pauli: numpy.ndarray, angle: float) -> numpy.ndarray:
	# exp(-i angle/2 P) for a Pauli string P with P² = I
	return math.cos(angle / 2) * numpy.eye(len(pauli)) - 1j * math.sin(angle / 2) * pauli


@pytest.mark.parametrize("name", list(CATALOG))
def test_catalog_unitaries(name: str):
	kind = CATALOG[name]
	qubits = tuple(range(3 if kind.variadic else kind.arity))
	g = GateInstance(kind, qubits, [0.3] * kind.param_count)

	u = unitary_of(g)
	assert u.shape == (2**len(qubits), 2**len(qubits))
	assert is_unitary(u)


@pytest.mark.parametrize(
		"name, pauli",
		[
				pytest.param("Rx", PAULI_X, id="Rx"),
				pytest.param("Ry", PAULI_Y, id="Ry"),
				pytest.param("Rz", PAULI_Z, id="Rz"),
				]
		)
@pytest.mark.parametrize("angle", [0.0, 0.7, -2.1, math.pi])
def test_rotations(name: str, pauli: numpy.ndarray, angle: float):
	assert_allclose(unitary_of(gate(name, 0, angle)), _expm_pauli(pauli, angle), atol=1e-12)


def test_phase_and_controlled_phase():
	assert_allclose(unitary_of(gate('P', 0, 0.4)), numpy.diag([1, numpy.exp(0.4j)]))
	assert_allclose(unitary_of(gate("CP", (0, 1), 0.4)), numpy.diag([1, 1, 1, numpy.exp(0.4j)]))
	assert_allclose(unitary_of(gate("CZ", (0, 1))), numpy.diag([1, 1, 1, -1]))


def test_sx_squares_to_x():
	sx = unitary_of(gate("SX", 0))
	assert_allclose(sx @ sx, PAULI_X, atol=1e-12)


def test_ms_and_xy():
	xx = numpy.kron(PAULI_X, PAULI_X)
	yy = numpy.kron(PAULI_Y, PAULI_Y)

	assert_allclose(unitary_of(gate("MS", (0, 1))), _expm_pauli(xx, math.pi / 2), atol=1e-12)

	theta = 0.9
	# XY(θ) = exp(iθ(XX+YY)/4); XX and YY commute
	expected = _expm_pauli(xx, -theta / 2) @ _expm_pauli(yy, -theta / 2)
	assert_allclose(unitary_of(gate("XY", (0, 1), theta)), expected, atol=1e-12)


def test_gpi_gates():
	assert_allclose(unitary_of(gate("GPi", 0, 0)), PAULI_X, atol=1e-12)
	assert_allclose(unitary_of(gate("GPi2", 0, 0)), _expm_pauli(PAULI_X, math.pi / 2), atol=1e-12)


def test_mcz():
	u = unitary_of(gate("MCZ", (0, 1, 2)))
	assert_allclose(numpy.diag(u), [1, 1, 1, 1, 1, 1, 1, -1])
	assert numpy.count_nonzero(u) == 8


def test_diagonal_of():
	assert diagonal_of(gate('H', 0)) is None
	assert diagonal_of(gate("CX", (0, 1))) is None
	assert_allclose(diagonal_of(gate('Z', 0)), [1, -1])  # type: ignore[arg-type]


@pytest.mark.parametrize(
		"name, expected",
		[
				pytest.param('Z', True, id='Z'),
				pytest.param("Rz", True, id="Rz"),
				pytest.param('P', True, id='P'),
				pytest.param('X', False, id='X'),
				pytest.param("CP", False, id="CP"),
				pytest.param("SX", False, id="SX"),
				]
		)
def test_is_virtual(name: str, expected: bool):
	assert is_virtual(lookup_gate(name)) is expected


def test_lookup_gate():
	assert lookup_gate("cx") is CATALOG["CX"]
	assert lookup_gate("GPI2") is CATALOG["GPi2"]

	with pytest.raises(ValueError, match="Unknown gate 'CCX'. Known gates are"):
		lookup_gate("CCX")


class TestGateInstance:

	def test_str(self):
		assert str(gate("CP", (0, 2), 0.5)) == "CP 0,2 @ 0.5"
		assert str(gate('H', 3)) == "H 3"

	def test_on(self):
		assert gate("Rz", 0, 0.1).on(4) == gate("Rz", 4, 0.1)

	@pytest.mark.parametrize(
			"name, qubits, params, match",
			[
					pytest.param("CX", (0, ), (), "acts on 2 qubit", id="arity"),
					pytest.param("MCZ", (0, ), (), "needs at least 2 qubits", id="variadic"),
					pytest.param("CX", (1, 1), (), "Duplicate qubits", id="duplicate"),
					pytest.param('H', (-1, ), (), "Invalid qubit index", id="negative"),
					pytest.param("Rx", (0, ), (), "takes 1 parameter", id="params"),
					pytest.param("Rx", (0, ), (math.inf, ), "must be finite", id="finite"),
					]
			)
	def test_invalid(self, name: str, qubits, params, match: str):
		with pytest.raises(ValueError, match=match):
			gate(name, qubits, *params)


@pytest.mark.parametrize(
		"names, expected",
		[
				pytest.param({'X', "SX", "Rz", "CX"}, True, id="ibm"),
				pytest.param({"GPi", "GPi2", "Rz", "MS"}, True, id="ionq"),
				pytest.param({'X', "SX", "Rx", "Rz", "CZ", "CP", "XY"}, True, id="rigetti"),
				pytest.param({"SX", "CX"}, False, id="no_rz"),
				pytest.param({"Rz", "CX"}, False, id="no_pulse"),
				pytest.param({"Rz", "SX", "XY"}, False, id="xy_only"),
				]
		)
def test_is_universal(names, expected: bool):
	assert is_universal(names) is expected
