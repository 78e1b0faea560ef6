# stdlib
from typing import Callable

# 3rd party
import numpy
import pytest

# this package
from nisq_noise.hardware import BackendSpec, builtin
from nisq_noise.qmath import DensityMatrix

pytest_plugins = ("coincidence", "consolekit.testing")


@pytest.fixture()
def rng() -> numpy.random.Generator:
	return numpy.random.default_rng(1234)


def _random_density(rng: numpy.random.Generator, num_qubits: int) -> DensityMatrix:
	dim = 2**num_qubits
	a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
	rho = a @ a.conj().T
	return DensityMatrix(num_qubits, rho / numpy.trace(rho))


def _random_unitary(rng: numpy.random.Generator, dim: int) -> numpy.ndarray:
	a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
	q, r = numpy.linalg.qr(a)
	return q * (numpy.diag(r) / numpy.abs(numpy.diag(r)))


@pytest.fixture()
def random_density(rng: numpy.random.Generator) -> Callable[[int], DensityMatrix]:
	return lambda num_qubits: _random_density(rng, num_qubits)


@pytest.fixture()
def random_unitary(rng: numpy.random.Generator) -> Callable[[int], numpy.ndarray]:
	return lambda dim: _random_unitary(rng, dim)


@pytest.fixture()
def kolkata() -> BackendSpec:
	return builtin("ibmq_kolkata")


@pytest.fixture()
def aria() -> BackendSpec:
	return builtin("ionq_aria")


@pytest.fixture()
def aspen() -> BackendSpec:
	return builtin("rigetti_aspen_m3")
