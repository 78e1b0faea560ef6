#!/usr/bin/env python3
#
#  noise.py
"""
Quantum noise channels in the Kraus representation, gate fidelities
and the composite noise model calibrated to vendor fidelities.
"""  # noqa: D400
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
import logging
import math
from typing import TYPE_CHECKING, Callable, Dict, Iterable, Optional, Tuple

# 3rd party
import attr
import numpy
from domdf_python_tools.words import word_join

# this package
from nisq_noise.qmath import DensityMatrix, as_matrix
from nisq_noise.type_hints import ComplexMatrix, NoiseKind
from nisq_noise.utils import InfeasibleCalibrationError, check_probability

if TYPE_CHECKING:
	# this package
	from nisq_noise.hardware import BackendSpec

__all__ = [
		"KrausChannel",
		"kraus_from_choi",
		"identity_channel",
		"bit_flip",
		"phase_flip",
		"bit_phase_flip",
		"depolarizing",
		"thermal_relaxation",
		"depolarizing_fidelity",
		"average_gate_fidelity",
		"CompositeCalibration",
		"composite_calibration",
		"calibrate_composite",
		"NoiseSpec",
		"NoiseModel",
		"native_calibrations",
		"build_native_model",
		"noise_model_for",
		]

logger = logging.getLogger(__name__)

_I = numpy.eye(2, dtype=numpy.complex128)
_X = numpy.array([[0, 1], [1, 0]], dtype=numpy.complex128)
_Y = numpy.array([[0, -1j], [1j, 0]])
_Z = numpy.array([[1, 0], [0, -1]], dtype=numpy.complex128)
_PAULIS = (_I, _X, _Y, _Z)

COMPLETENESS_ATOL = 1e-9


def _operators(value: Iterable[ComplexMatrix]) -> Tuple[numpy.ndarray, ...]:
	operators = []
	for op in value:
		op = numpy.array(as_matrix(op), copy=True)
		op.flags.writeable = False
		operators.append(op)
	return tuple(operators)


@attr.s(frozen=True, eq=False, repr=False)
class KrausChannel:
	r"""
	A completely positive trace-preserving map :math:`\rho \mapsto \sum_k E_k \rho E_k^\dagger`.

	:param num_qubits:
	:param operators: The Kraus operators :math:`E_k`, each :math:`2^n \times 2^n`.

	:raises ValueError: If there are no operators, they have the wrong shape,
		or :math:`\sum_k E_k^\dagger E_k \neq I` within ``1e-9``.
	"""

	num_qubits: int = attr.ib(converter=int)
	operators: Tuple[numpy.ndarray, ...] = attr.ib(converter=_operators)

	@operators.validator
	def _check_operators(self, attribute: attr.Attribute, value: Tuple[numpy.ndarray, ...]) -> None:
		if not value:
			raise ValueError("A channel needs at least one Kraus operator")

		dim = 2**self.num_qubits
		total = numpy.zeros((dim, dim), dtype=numpy.complex128)

		for op in value:
			if op.shape != (dim, dim):
				raise ValueError(f"Kraus operators for {self.num_qubits} qubit(s) must be {dim}x{dim}, got {op.shape}")
			total += op.conj().T @ op

		if not numpy.allclose(total, numpy.eye(dim), rtol=0, atol=COMPLETENESS_ATOL):
			raise ValueError("Kraus operators do not satisfy the completeness relation")

	@property
	def dimension(self) -> int:  # noqa: D102
		return 2**self.num_qubits

	def apply(self, rho: DensityMatrix) -> DensityMatrix:
		"""
		Apply the channel to a density matrix of the same width.

		:param rho:
		"""

		if rho.num_qubits != self.num_qubits:
			raise ValueError(f"Cannot apply a {self.num_qubits}-qubit channel to {rho.num_qubits} qubit(s)")

		matrix = sum(op @ rho.matrix @ op.conj().T for op in self.operators)
		return DensityMatrix(self.num_qubits, matrix)

	def compose(self, other: "KrausChannel") -> "KrausChannel":
		"""
		Returns the channel that applies ``other`` first, then this channel.

		:param other:
		"""

		if other.num_qubits != self.num_qubits:
			raise ValueError("Cannot compose channels of different widths")

		return KrausChannel(self.num_qubits, [a @ b for a in self.operators for b in other.operators])

	def tensor(self, other: "KrausChannel") -> "KrausChannel":
		"""
		Returns the channel acting independently with ``self`` on the leading qubits and ``other`` on the rest.

		:param other:
		"""

		return KrausChannel(
				self.num_qubits + other.num_qubits,
				[numpy.kron(a, b) for a in self.operators for b in other.operators],
				)

	def transfer_matrix(self) -> numpy.ndarray:
		r"""
		Returns the Liouville matrix :math:`\sum_k E_k \otimes E_k^*`.

		It acts on the row-major vectorisation of :math:`\rho`.
		"""

		return sum(numpy.kron(op, op.conj()) for op in self.operators)

	def choi(self) -> numpy.ndarray:
		r"""
		Returns the Choi matrix :math:`\sum_{ij} |i\rangle\langle j| \otimes \mathcal{E}(|i\rangle\langle j|)`.
		"""

		vectors = [op.T.reshape(-1) for op in self.operators]
		return sum(numpy.outer(v, v.conj()) for v in vectors)

	def simplified(self) -> "KrausChannel":
		"""
		Returns an equivalent channel with the minimal number of Kraus operators.
		"""

		return kraus_from_choi(self.choi(), self.num_qubits)

	def is_identity(self, atol: float = 1e-12) -> bool:
		"""
		Returns whether the channel leaves every state unchanged.

		:param atol:
		"""

		return bool(numpy.allclose(self.transfer_matrix(), numpy.eye(self.dimension**2), rtol=0, atol=atol))

	def __repr__(self) -> str:
		return f"KrausChannel(num_qubits={self.num_qubits}, operators=<{len(self.operators)}>)"


def kraus_from_choi(choi: ComplexMatrix, num_qubits: int, atol: float = 1e-12) -> KrausChannel:
	"""
	Construct a channel from its Choi matrix, dropping eigenvalues at or below ``atol``.

	:param choi: The :math:`4^n \\times 4^n` Choi matrix.
	:param num_qubits:
	:param atol:
	"""

	choi = as_matrix(choi)
	dim = 2**num_qubits

	values, vectors = numpy.linalg.eigh((choi + choi.conj().T) / 2)
	operators = [
			math.sqrt(values[k]) * vectors[:, k].reshape(dim, dim).T
			for k in reversed(range(len(values)))
			if values[k] > atol
			]

	return KrausChannel(num_qubits, operators)


def identity_channel(num_qubits: int = 1) -> KrausChannel:
	"""
	Returns the channel that does nothing.

	:param num_qubits:
	"""

	return KrausChannel(num_qubits, [numpy.eye(2**num_qubits)])


def _pauli_flip(p: float, pauli: numpy.ndarray) -> KrausChannel:
	p = check_probability(p)
	operators = [c * op for c, op in ((math.sqrt(1 - p), _I), (math.sqrt(p), pauli)) if c]
	return KrausChannel(1, operators)


def bit_flip(p: float) -> KrausChannel:
	"""
	Apply ``X`` with probability ``p``.

	:param p:
	"""

	return _pauli_flip(p, _X)


def phase_flip(p: float) -> KrausChannel:
	"""
	Apply ``Z`` with probability ``p``.

	:param p:
	"""

	return _pauli_flip(p, _Z)


def bit_phase_flip(p: float) -> KrausChannel:
	"""
	Apply ``Y`` with probability ``p``.

	:param p:
	"""

	return _pauli_flip(p, _Y)


def depolarizing(p: float, n: int = 1) -> KrausChannel:
	r"""
	The depolarizing channel :math:`\rho \mapsto (1 - p)\rho + p \frac{I}{2^n}`.

	Realised with the uniform Kraus set over all :math:`4^n` Pauli strings.

	:param p:
	:param n: The number of qubits, 1 or 2.
	"""

	p = check_probability(p)

	if n not in {1, 2}:
		raise ValueError(f"The depolarizing channel is defined for 1 or 2 qubits, got {n}")

	d2 = 4**n
	identity_weight = math.sqrt(1 - p + p / d2)
	pauli_weight = math.sqrt(p / d2)

	operators = []
	for idx, factors in enumerate(itertools.product(_PAULIS, repeat=n)):
		weight = identity_weight if idx == 0 else pauli_weight
		if weight:
			operators.append(weight * functools.reduce(numpy.kron, factors))

	return KrausChannel(n, operators)


def thermal_relaxation(t1: float, t2: float, t_gate: float) -> KrausChannel:
	r"""
	Amplitude and phase damping towards :math:`|0\rangle` over a gate of duration ``t_gate``.

	The excited population decays as :math:`e^{-t/T_1}` and coherences as :math:`e^{-t/T_2}`.
	All durations share the same unit.

	:param t1: The relaxation time :math:`T_1`.
	:param t2: The dephasing time :math:`T_2`, at most :math:`2 T_1`.
	:param t_gate: The elapsed time. May be :py:obj:`math.inf`.
	"""

	if not t1 > 0:
		raise ValueError(f"'t1' must be positive, got {t1!r}")
	if not t2 > 0:
		raise ValueError(f"'t2' must be positive, got {t2!r}")
	if t2 > 2 * t1:
		raise ValueError(f"'t2' ({t2!r}) must not exceed 2 * 't1' ({2 * t1!r}); the channel would not be CPTP")
	if not t_gate >= 0:
		raise ValueError(f"'t_gate' must be non-negative, got {t_gate!r}")

	population = math.exp(-t_gate / t1)
	coherence = math.exp(-t_gate / t2)

	choi = numpy.zeros((4, 4), dtype=numpy.complex128)
	choi[0, 0] = 1
	choi[2, 2] = 1 - population
	choi[3, 3] = population
	choi[0, 3] = choi[3, 0] = coherence

	return kraus_from_choi(choi, 1)


def depolarizing_fidelity(p: float, n: int = 1) -> float:
	"""
	The average gate fidelity :math:`1 - p(1 - 2^{-n})` of the depolarizing channel.

	:param p:
	:param n:
	"""

	return 1 - p * (1 - 2**-n)


def average_gate_fidelity(ch: KrausChannel) -> float:
	r"""
	The average of :math:`\langle\psi|\mathcal{E}(|\psi\rangle\langle\psi|)|\psi\rangle` over all pure states.

	Computed from the process fidelity :math:`F_{pro} = \frac{1}{d^2}\sum_k |\mathrm{Tr}\,E_k|^2`
	as :math:`(d F_{pro} + 1) / (d + 1)`.

	:param ch:
	"""

	d = ch.dimension
	f_pro = sum(abs(numpy.trace(op))**2 for op in ch.operators) / d**2
	return float((d * f_pro + 1) / (d + 1))


@attr.s(frozen=True, repr=False)
class CompositeCalibration:
	"""
	The result of calibrating a thermal relaxation plus depolarizing channel to a target fidelity.

	:param num_qubits:
	:param f_target: The requested average gate fidelity.
	:param f_thermal: The average gate fidelity of the thermal part alone.
	:param p: The solved depolarizing strength.
	:param f_achieved: The average gate fidelity of :attr:`~.CompositeCalibration.channel`.
	:param channel: Thermal relaxation followed by depolarizing noise.
	"""

	num_qubits: int = attr.ib()
	f_target: float = attr.ib()
	f_thermal: float = attr.ib()
	p: float = attr.ib()
	f_achieved: float = attr.ib()
	channel: KrausChannel = attr.ib(eq=False)

	def to_dict(self) -> Dict[str, float]:
		"""
		Returns the numeric fields as a dictionary.
		"""

		return {
				"num_qubits": self.num_qubits,
				"f_target": self.f_target,
				"f_thermal": self.f_thermal,
				'p': self.p,
				"f_achieved": self.f_achieved,
				}

	def __repr__(self) -> str:
		return (
				f"CompositeCalibration(num_qubits={self.num_qubits}, f_target={self.f_target!r}, "
				f"f_thermal={self.f_thermal!r}, p={self.p!r}, f_achieved={self.f_achieved!r})"
				)


def _thermal_part(t1: float, t2: float, t_gate: float, n: int) -> KrausChannel:
	one = thermal_relaxation(t1, t2, t_gate)
	if n == 1:
		return one
	return one.tensor(one)


def composite_calibration(
		f_target: float,
		t1: float,
		t2: float,
		t_gate: float,
		n: int = 1,
		) -> CompositeCalibration:
	r"""
	Calibrate thermal relaxation followed by depolarizing noise to an average gate fidelity.

	The depolarizing strength is :math:`p = (F_R - F) / (F_R - 2^{-n})`,
	where :math:`F_R` is the fidelity of the thermal part. For two qubits the thermal part is
	independent relaxation of each qubit and the depolarizing part acts on both qubits jointly.

	:param f_target:
	:param t1:
	:param t2:
	:param t_gate:
	:param n: The number of qubits, 1 or 2.

	:raises ValueError: If ``f_target`` is not in :math:`(2^{-n}, 1]`.
	:raises InfeasibleCalibrationError: If ``f_target`` is above :math:`F_R`.
	"""

	if n not in {1, 2}:
		raise ValueError(f"Composite noise is defined for 1 or 2 qubits, got {n}")

	floor = 2**-n
	if not floor < f_target <= 1:
		raise ValueError(f"'f_target' must be in the range ({floor}, 1], got {f_target!r}")

	thermal = _thermal_part(t1, t2, t_gate, n)
	f_thermal = average_gate_fidelity(thermal)

	if f_target > f_thermal + 1e-12:
		raise InfeasibleCalibrationError(f_target, f_thermal)

	p = min(max((f_thermal - f_target) / (f_thermal - floor), 0.0), 1.0)
	channel = depolarizing(p, n).compose(thermal).simplified()
	f_achieved = average_gate_fidelity(channel)

	logger.debug(
			"Calibrated %d-qubit composite channel: F_target=%r F_R=%r p=%r F_avg=%r",
			n,
			f_target,
			f_thermal,
			p,
			f_achieved,
			)

	return CompositeCalibration(n, f_target, f_thermal, p, f_achieved, channel)


def calibrate_composite(
		f_target: float,
		t1: float,
		t2: float,
		t_gate: float,
		n: int = 1,
		) -> KrausChannel:
	"""
	Returns the channel of :func:`~.composite_calibration`.

	:param f_target:
	:param t1:
	:param t2:
	:param t_gate:
	:param n:
	"""

	return composite_calibration(f_target, t1, t2, t_gate, n).channel


_NOISE_KINDS = (
		"none",
		"bit_flip",
		"phase_flip",
		"bit_phase_flip",
		"depolarizing",
		"thermal",
		"native_composite",
		)

_CLI_SPELLINGS: Dict[str, NoiseKind] = {
		"none": "none",
		"bitflip": "bit_flip",
		"phaseflip": "phase_flip",
		"bitphaseflip": "bit_phase_flip",
		"depolarizing": "depolarizing",
		"thermal": "thermal",
		"native": "native_composite",
		}


def _check_kind(instance: "NoiseSpec", attribute: attr.Attribute, value: str) -> None:
	if value not in _NOISE_KINDS:
		raise ValueError(f"Unknown noise kind {value!r}. Expected one of {word_join(_NOISE_KINDS, use_repr=True)}.")


@attr.s(frozen=True)
class NoiseSpec:
	"""
	Describes which noise to attach to a simulation.

	:param kind:
	:param strength: The probability ``p`` of the elementary channels. Unused for ``thermal`` and ``native_composite``.
	"""

	#: One of ``none``, ``bit_flip``, ``phase_flip``, ``bit_phase_flip``, ``depolarizing``, ``thermal``, ``native_composite``.
	kind: NoiseKind = attr.ib(default="none", validator=_check_kind)
	strength: float = attr.ib(default=0.0, converter=float)

	@strength.validator
	def _check_strength(self, attribute: attr.Attribute, value: float) -> None:
		check_probability(value, "strength")

	#: The CLI spellings of each kind.
	CLI_SPELLINGS = _CLI_SPELLINGS

	@classmethod
	def from_cli(cls, kind: str, strength: float = 0.0) -> "NoiseSpec":
		"""
		Construct a :class:`~.NoiseSpec` from its command line spelling (``bitflip``, ``native`` etc.).

		:param kind:
		:param strength:
		"""

		try:
			return cls(_CLI_SPELLINGS[kind.lower()], strength)
		except KeyError:
			return cls(kind, strength)  # type: ignore[arg-type]

	@property
	def needs_backend(self) -> bool:
		"""
		Whether the noise depends on the device's metrics.
		"""

		return self.kind in {"thermal", "native_composite"}

	def __str__(self) -> str:
		if self.kind in {"none", "thermal", "native_composite"}:
			return self.kind
		return f"{self.kind}({self.strength!r})"


def _check_channel_width(width: int) -> Callable[["NoiseModel", attr.Attribute, KrausChannel], None]:

	def validator(instance: "NoiseModel", attribute: attr.Attribute, value: KrausChannel) -> None:
		if value.num_qubits != width:
			raise ValueError(f"{attribute.name!r} must act on {width} qubit(s), got {value.num_qubits}")

	return validator


@attr.s(frozen=True, eq=False)
class NoiseModel:
	"""
	The channels applied after every non-virtual gate on the qubits it touches.

	Gates on more than two qubits receive the one-qubit channel on each of their qubits.

	:param one_qubit_channel:
	:param two_qubit_channel:
	"""

	one_qubit_channel: KrausChannel = attr.ib(validator=_check_channel_width(1))
	two_qubit_channel: KrausChannel = attr.ib(validator=_check_channel_width(2))

	def channel_for(self, arity: int) -> KrausChannel:
		"""
		Returns the channel applied after a gate on ``arity`` qubits.

		:param arity:
		"""

		return self.two_qubit_channel if arity == 2 else self.one_qubit_channel

	@functools.cached_property
	def transfer_matrices(self) -> Dict[int, Optional[numpy.ndarray]]:
		"""
		The Liouville matrices of the one- and two-qubit channels, keyed by arity.

		Channels equal to the identity map to :py:obj:`None`.
		"""

		return {
				arity: None if channel.is_identity() else channel.transfer_matrix()
				for arity, channel in ((1, self.one_qubit_channel), (2, self.two_qubit_channel))
				}


def native_calibrations(backend: "BackendSpec") -> Tuple[CompositeCalibration, CompositeCalibration]:
	"""
	Calibrate the one- and two-qubit composite channels of a backend to its published fidelities.

	:param backend:
	"""

	one = composite_calibration(backend.f1, backend.t1, backend.t2, backend.tg1, 1)
	two = composite_calibration(backend.f2, backend.t1, backend.t2, backend.tg2, 2)
	return one, two


def build_native_model(backend: "BackendSpec") -> NoiseModel:
	"""
	Returns the composite noise model matching the backend's published gate fidelities.

	:param backend:
	"""

	one, two = native_calibrations(backend)
	return NoiseModel(one.channel, two.channel)


def noise_model_for(spec: NoiseSpec, backend: Optional["BackendSpec"] = None) -> Optional[NoiseModel]:
	"""
	Build the :class:`~.NoiseModel` described by ``spec``.

	:param spec:
	:param backend: Supplies the coherence times and gate durations for ``thermal`` and ``native_composite`` noise.

	:returns: :py:obj:`None` for ``none`` noise.
	"""

	if spec.kind == "none":
		return None

	if spec.needs_backend and backend is None:
		raise ValueError(f"{spec.kind!r} noise requires a backend")

	if spec.kind == "native_composite":
		return build_native_model(backend)  # type: ignore[arg-type]

	elif spec.kind == "thermal":
		assert backend is not None
		one = thermal_relaxation(backend.t1, backend.t2, backend.tg1)
		two = thermal_relaxation(backend.t1, backend.t2, backend.tg2)
		return NoiseModel(one, two.tensor(two))

	elif spec.kind == "depolarizing":
		return NoiseModel(depolarizing(spec.strength, 1), depolarizing(spec.strength, 2))

	else:
		flip = {"bit_flip": bit_flip, "phase_flip": phase_flip, "bit_phase_flip": bit_phase_flip}[spec.kind]
		one = flip(spec.strength)
		return NoiseModel(one, one.tensor(one))
