#!/usr/bin/env python3
#
#  experiments.py
"""
Sweeps over algorithms, backends, noise and circuit widths, as run by the ``nisq-noise`` commands.

Each configuration point is transpiled, simulated and reduced to one :class:`~.ExperimentRecord`.
Points are independent, so a sweep may be spread over a thread pool;
records are always returned in the order of their configuration.
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
import csv
import io
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar

# 3rd party
import attr
from domdf_python_tools.paths import PathPlus
from domdf_python_tools.typing import PathLike

# this package
from nisq_noise.circuit import Circuit, build_grover, build_qft_benchmark
from nisq_noise.engine import ideal_state, simulate, state_fidelity, success_probability
from nisq_noise.hardware import BackendSpec, full_mesh
from nisq_noise.noise import NoiseSpec, noise_model_for
from nisq_noise.transpiler import TranspileReport, transpile
from nisq_noise.type_hints import ConnectivityMode
from nisq_noise.vqc import TrainingConfig, TrainingTrace, prediction_grid, train

__all__ = [
		"ALGORITHMS",
		"ELEMENTARY_KINDS",
		"ExperimentPoint",
		"ExperimentRecord",
		"SweepResult",
		"TranspileRecord",
		"build_logical",
		"noise_specs",
		"sweep_points",
		"run_point",
		"run_sweep",
		"transpile_record",
		"to_csv",
		"vqc_configs",
		"run_vqc_sweep",
		"trace_filename",
		"predictions_csv",
		"write_text",
		]

logger = logging.getLogger(__name__)

# errors a valid point can raise, such as an oversized register
_EXPECTED_ERRORS = (ValueError, RuntimeError, MemoryError)

_T = TypeVar("_T")
_R = TypeVar("_R")

#: The algorithms the ``grover`` and ``qft`` commands run.
ALGORITHMS = ("grover", "qft")

#: Noise kinds whose channels are parameterised by a strength.
ELEMENTARY_KINDS = frozenset({"bit_flip", "phase_flip", "bit_phase_flip", "depolarizing"})


def noise_specs(kinds: Iterable[str], strengths: Iterable[float]) -> List[NoiseSpec]:
	"""
	Combine noise kinds (in their command line spelling) with strengths.

	Kinds without a strength (``none``, ``thermal`` and ``native``) appear once.

	:param kinds:
	:param strengths:

	:raises ValueError: For unknown kinds or strengths outside ``[0, 1]``.
	"""

	strengths = list(strengths)
	specs: List[NoiseSpec] = []

	for kind in kinds:
		spec = NoiseSpec.from_cli(kind.strip())

		if spec.kind in ELEMENTARY_KINDS:
			candidates = [NoiseSpec(spec.kind, strength) for strength in strengths]
		else:
			candidates = [spec]

		for candidate in candidates:
			if candidate not in specs:
				specs.append(candidate)

	return specs


@attr.s(frozen=True)
class ExperimentPoint:
	"""
	One configuration of a sweep.

	:param algorithm: ``grover`` or ``qft``.
	:param backend:
	:param connectivity: ``native`` uses the backend's coupling graph, ``full`` couples every pair of qubits.
	:param noise:
	:param qubits: The width of the logical circuit.
	:param seed: The routing seed.
	"""

	algorithm: str = attr.ib()
	backend: BackendSpec = attr.ib(eq=False)
	connectivity: ConnectivityMode = attr.ib()
	noise: NoiseSpec = attr.ib()
	qubits: int = attr.ib()
	seed: int = attr.ib()

	@algorithm.validator
	def _check_algorithm(self, attribute: attr.Attribute, value: str) -> None:
		if value not in ALGORITHMS:
			raise ValueError(f"Unknown algorithm {value!r}")

	@connectivity.validator
	def _check_connectivity(self, attribute: attr.Attribute, value: str) -> None:
		if value not in {"native", "full"}:
			raise ValueError(f"'connectivity' must be 'native' or 'full', got {value!r}")

	def __str__(self) -> str:
		return (
				f"{self.algorithm} n={self.qubits} on {self.backend.name} ({self.connectivity} connectivity), "
				f"noise={self.noise}, seed={self.seed}"
				)


@attr.s(frozen=True)
class ExperimentRecord:
	"""
	The measurements made at one :class:`~.ExperimentPoint`.

	:param algorithm:
	:param backend: The backend's name.
	:param connectivity:
	:param noise: The noise kind.
	:param noise_strength:
	:param qubits:
	:param seed:
	:param depth_logical: The depth of the circuit before transpilation.
	:param depth_transpiled: The depth of the transpiled circuit.
	:param swaps: The number of SWAP gates routing inserted.
	:param success_probability: The probability of measuring the expected bitstring.
	:param fidelity: The fidelity of the logical register with the ideal output state.
	:param wall_time: Seconds spent on this point.
	"""

	#: The columns of the CSV output, in order.
	CSV_COLUMNS = (
			"algorithm",
			"backend",
			"connectivity",
			"noise",
			"noise_strength",
			"qubits",
			"seed",
			"depth_logical",
			"depth_transpiled",
			"swaps",
			"success_probability",
			"fidelity",
			"wall_time",
			)

	algorithm: str = attr.ib()
	backend: str = attr.ib()
	connectivity: ConnectivityMode = attr.ib()
	noise: str = attr.ib()
	noise_strength: float = attr.ib()
	qubits: int = attr.ib()
	seed: int = attr.ib()
	depth_logical: int = attr.ib()
	depth_transpiled: int = attr.ib()
	swaps: int = attr.ib()
	success_probability: float = attr.ib()
	fidelity: float = attr.ib()
	wall_time: float = attr.ib(default=0.0, eq=False)

	def sort_key(self) -> Tuple[Any, ...]:
		"""
		The configuration of the record, which orders records in output.
		"""

		return (self.algorithm, self.backend, self.connectivity, self.noise, self.noise_strength, self.qubits, self.seed)

	def row(self) -> List[Any]:
		"""
		Returns the record's values in the order of :attr:`~.ExperimentRecord.CSV_COLUMNS`.
		"""

		return [getattr(self, column) for column in self.CSV_COLUMNS]

	def to_dict(self) -> Dict[str, Any]:  # noqa: D102
		return dict(zip(self.CSV_COLUMNS, self.row()))


def sweep_points(
		algorithm: str,
		backends: Sequence[BackendSpec],
		qubits: Sequence[int],
		noise: Sequence[NoiseSpec],
		seeds: Sequence[int] = (0, ),
		connectivity: ConnectivityMode = "native",
		) -> List[ExperimentPoint]:
	"""
	Returns the cartesian product of the given settings.

	:param algorithm:
	:param backends:
	:param qubits:
	:param noise:
	:param seeds:
	:param connectivity:
	"""

	return [
			ExperimentPoint(algorithm, backend, connectivity, spec, n, seed)
			for backend in backends
			for spec in noise
			for n in qubits
			for seed in seeds
			]


def build_logical(algorithm: str, qubits: int) -> Circuit:
	"""
	Returns the logical circuit simulated for ``algorithm``.

	For ``qft`` this is the benchmark circuit whose ideal output is the all-ones bitstring.

	:param algorithm:
	:param qubits:
	"""

	if algorithm == "grover":
		return build_grover(qubits)
	elif algorithm == "qft":
		return build_qft_benchmark(qubits)
	else:
		raise ValueError(f"Unknown algorithm {algorithm!r}")


def _device(backend: BackendSpec, connectivity: ConnectivityMode) -> BackendSpec:
	return full_mesh(backend) if connectivity == "full" else backend


def run_point(point: ExperimentPoint, timing: bool = True) -> ExperimentRecord:
	"""
	Build, transpile and simulate the circuit for ``point``.

	:param point:
	:param timing: Whether to measure the wall time. If :py:obj:`False` the record's ``wall_time`` is ``0.0``.
	"""

	start = time.perf_counter()

	logical = build_logical(point.algorithm, point.qubits)
	device = _device(point.backend, point.connectivity)
	report = transpile(logical, device, point.seed)

	result = simulate(report.output, noise_model_for(point.noise, device))
	result = result.reduced(report.logical_qubits())

	record = ExperimentRecord(
			algorithm=point.algorithm,
			backend=point.backend.name,
			connectivity=point.connectivity,
			noise=point.noise.kind,
			noise_strength=point.noise.strength,
			qubits=point.qubits,
			seed=point.seed,
			depth_logical=report.depth_before,
			depth_transpiled=report.depth_after,
			swaps=report.swaps_inserted,
			success_probability=success_probability(result, '1' * point.qubits),
			fidelity=state_fidelity(result, ideal_state(logical)),
			wall_time=time.perf_counter() - start if timing else 0.0,
			)

	logger.debug("%s: success probability %r", point, record.success_probability)
	return record


@attr.s(frozen=True)
class SweepResult:
	"""
	The outcome of :func:`~.run_sweep`.

	:param records: Records of the points that completed, sorted by configuration.
	:param failures: The points that raised an error, with the error message.
	"""

	records: List[ExperimentRecord] = attr.ib()
	failures: List[Tuple[ExperimentPoint, str]] = attr.ib(factory=list)

	@property
	def ok(self) -> bool:
		"""
		Whether every point completed.
		"""

		return not self.failures


def _map(function: Callable[[_T], _R], items: Sequence[_T], jobs: int) -> List[_R]:
	if jobs > 1 and len(items) > 1:
		with ThreadPoolExecutor(max_workers=jobs) as executor:
			return list(executor.map(function, items))

	return [function(item) for item in items]


def run_sweep(points: Sequence[ExperimentPoint], jobs: int = 1, timing: bool = True) -> SweepResult:
	"""
	Run every point, on ``jobs`` threads.

	A point that fails is reported in :attr:`.SweepResult.failures` and does not stop the others.
	Errors other than :exc:`ValueError`, :exc:`RuntimeError` and :exc:`MemoryError`
	are also logged at ``ERROR`` level.

	:param points:
	:param jobs:
	:param timing: Whether to measure wall times.
	"""

	def run(point: ExperimentPoint) -> Tuple[ExperimentPoint, Optional[ExperimentRecord], Optional[str]]:
		try:
			return point, run_point(point, timing), None
		except Exception as e:
			level = logging.DEBUG if isinstance(e, _EXPECTED_ERRORS) else logging.ERROR
			logger.log(level, "%s failed", point, exc_info=True)
			return point, None, f"{e.__class__.__name__}: {e}"

	records: List[ExperimentRecord] = []
	failures: List[Tuple[ExperimentPoint, str]] = []

	for point, record, error in _map(run, points, jobs):
		if record is not None:
			records.append(record)
		else:
			failures.append((point, error))  # type: ignore[arg-type]

	records.sort(key=ExperimentRecord.sort_key)
	return SweepResult(records, failures)


@attr.s(frozen=True)
class TranspileRecord:
	"""
	A summary of a :class:`~.TranspileReport`.

	:param circuit: The algorithm name or the circuit file.
	:param backend:
	:param connectivity:
	:param qubits: The width of the logical circuit.
	:param seed:
	:param width: The number of physical qubits the output uses.
	:param depth_before:
	:param depth_after:
	:param swaps:
	"""

	#: The columns of the CSV output, in order.
	CSV_COLUMNS = (
			"circuit",
			"backend",
			"connectivity",
			"qubits",
			"seed",
			"width",
			"depth_before",
			"depth_after",
			"swaps",
			)

	circuit: str = attr.ib()
	backend: str = attr.ib()
	connectivity: ConnectivityMode = attr.ib()
	qubits: int = attr.ib()
	seed: int = attr.ib()
	width: int = attr.ib()
	depth_before: int = attr.ib()
	depth_after: int = attr.ib()
	swaps: int = attr.ib()

	def row(self) -> List[Any]:  # noqa: D102
		return [getattr(self, column) for column in self.CSV_COLUMNS]

	def to_dict(self) -> Dict[str, Any]:  # noqa: D102
		return dict(zip(self.CSV_COLUMNS, self.row()))


def transpile_record(
		name: str,
		c: Circuit,
		backend: BackendSpec,
		connectivity: ConnectivityMode = "native",
		seed: int = 0,
		) -> Tuple[TranspileRecord, TranspileReport]:
	"""
	Transpile ``c`` for ``backend`` and summarise the outcome.

	:param name: Identifies the circuit in the output.
	:param c:
	:param backend:
	:param connectivity:
	:param seed:
	"""

	report = transpile(c, _device(backend, connectivity), seed)
	record = TranspileRecord(
			circuit=name,
			backend=backend.name,
			connectivity=connectivity,
			qubits=c.num_qubits,
			seed=seed,
			width=report.width,
			depth_before=report.depth_before,
			depth_after=report.depth_after,
			swaps=report.swaps_inserted,
			)
	return record, report


def to_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
	"""
	Format rows as CSV with a header line.

	:param columns:
	:param rows:
	"""

	buf = io.StringIO()
	writer = csv.writer(buf, lineterminator='\n')
	writer.writerow(columns)
	writer.writerows(rows)
	return buf.getvalue()


def vqc_configs(
		noise: Sequence[NoiseSpec],
		iterations: int = 100,
		learning_rate: float = 0.5,
		seed: int = 0,
		sample_count: int = 20,
		backend: Optional[BackendSpec] = None,
		) -> List[TrainingConfig]:
	"""
	Returns one training configuration per noise setting.

	:param noise:
	:param iterations:
	:param learning_rate:
	:param seed:
	:param sample_count:
	:param backend:
	"""

	return [
			TrainingConfig(
					iterations=iterations,
					learning_rate=learning_rate,
					seed=seed,
					noise=spec,
					backend=backend,
					sample_count=sample_count,
					) for spec in noise
			]


def run_vqc_sweep(configs: Sequence[TrainingConfig], jobs: int = 1) -> List[TrainingTrace]:
	"""
	Train once per configuration, running up to ``jobs`` trainings at a time.

	:param configs:
	:param jobs:
	"""

	return _map(train, configs, jobs)


def trace_filename(trace: TrainingTrace, extension: str = ".csv") -> str:
	"""
	Returns the file name a trace is written to, e.g. ``bit_flip_0.05.csv``.

	:param trace:
	:param extension:
	"""

	return f"{trace.noise.kind}_{trace.noise.strength!r}{extension}"


def predictions_csv(traces: Iterable[TrainingTrace], points: int = 21) -> str:
	"""
	Evaluate each trained model on a grid over ``[-1, 1]``.

	Columns are ``noise``, ``strength``, ``x``, ``target`` and ``prediction``.

	:param traces:
	:param points: The number of grid points.
	"""

	rows = []

	for trace in traces:
		for x, target, prediction in prediction_grid(trace.final_theta, trace.noise, trace.config.backend, points):
			rows.append([trace.noise.kind, trace.noise.strength, x, target, prediction])

	return to_csv(("noise", "strength", 'x', "target", "prediction"), rows)


def write_text(text: str, filename: PathLike) -> None:
	"""
	Write ``text`` to ``filename``, creating parent directories as needed.

	:param text:
	:param filename:
	"""

	path = PathPlus(filename)
	path.parent.maybe_make(parents=True)
	path.write_clean(text)
