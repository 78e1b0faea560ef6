#!/usr/bin/env python3
#
#  vqc.py
"""
Training the variational circuit to approximate :math:`f(x) = x^2` under noise.

The model's prediction is the Z expectation value of qubit 1. Training minimises the quadratic loss
:math:`\\frac{1}{2}(\\langle M \\rangle - x^2)^2` by gradient descent, with gradients from the parameter-shift rule.
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
import contextlib
import csv
import io
import logging
import math
from concurrent.futures import Executor, ThreadPoolExecutor
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple, Union

# 3rd party
import attr
import numpy
from domdf_python_tools.paths import PathPlus
from domdf_python_tools.typing import PathLike

# this package
from nisq_noise.circuit import VQC_PARAMETER_COUNT, VqcParameters, build_vqc
from nisq_noise.engine import expectation_z, simulate
from nisq_noise.hardware import BackendSpec
from nisq_noise.noise import NoiseModel, NoiseSpec, noise_model_for

__all__ = [
		"MEASURED_QUBIT",
		"TrainingConfig",
		"TrainingRecord",
		"TrainingTrace",
		"make_dataset",
		"expectation",
		"loss",
		"gradient",
		"predict",
		"prediction_grid",
		"train",
		]

logger = logging.getLogger(__name__)

#: The qubit whose Z expectation value is the model output.
MEASURED_QUBIT = 1

_SHIFT = math.pi / 2

Noise = Union[NoiseSpec, NoiseModel, None]


def _resolve(noise: Noise, backend: Optional[BackendSpec] = None) -> Optional[NoiseModel]:
	if isinstance(noise, NoiseSpec):
		return noise_model_for(noise, backend)
	return noise


def _target(x: float) -> float:
	return x**2


def make_dataset(count: int, seed: int) -> List[float]:
	"""
	Returns ``count`` uniformly spaced inputs on :math:`[-1, 1]`, shuffled by ``seed``.

	:param count: At least 2.
	:param seed:
	"""

	if count < 2:
		raise ValueError(f"The dataset needs at least 2 samples, got {count}")

	values = numpy.linspace(-1.0, 1.0, count)
	order = numpy.random.default_rng(seed).permutation(count)
	return [float(values[idx]) for idx in order]


def expectation(x: float, theta: VqcParameters, noise: Noise = None, backend: Optional[BackendSpec] = None) -> float:
	r"""
	Returns :math:`\langle M \rangle_\theta`, the Z expectation value of the measured qubit for input ``x``.

	:param x:
	:param theta:
	:param noise: A :class:`~.NoiseSpec`, a prebuilt :class:`~.NoiseModel`, or :py:obj:`None` for no noise.
	:param backend: Supplies the metrics for ``thermal`` and ``native_composite`` noise.
	"""

	result = simulate(build_vqc(x, theta), _resolve(noise, backend))
	return expectation_z(result, MEASURED_QUBIT)


def predict(x: float, theta: VqcParameters, noise: Noise = None, backend: Optional[BackendSpec] = None) -> float:
	"""
	Returns the model's prediction for ``x``.

	:param x:
	:param theta:
	:param noise:
	:param backend:
	"""

	return expectation(x, theta, noise, backend)


def loss(x: float, theta: VqcParameters, noise: Noise = None, backend: Optional[BackendSpec] = None) -> float:
	"""
	Returns the quadratic loss :math:`\\frac{1}{2}(\\langle M \\rangle - x^2)^2`.

	:param x:
	:param theta:
	:param noise:
	:param backend:
	"""

	return 0.5 * (expectation(x, theta, noise, backend) - _target(x))**2


def _shifted_expectations(
		x: float,
		theta: VqcParameters,
		noise_model: Optional[NoiseModel],
		mapper: Callable[..., Iterator[float]],
		) -> numpy.ndarray:
	shifted = [theta.shifted(i, sign * _SHIFT) for i in range(VQC_PARAMETER_COUNT) for sign in (1, -1)]
	values = list(mapper(lambda t: expectation(x, t, noise_model), shifted))
	return numpy.array(values).reshape(VQC_PARAMETER_COUNT, 2)


def _loss_and_gradient(
		x: float,
		theta: VqcParameters,
		noise_model: Optional[NoiseModel],
		executor: Optional[Executor] = None,
		) -> Tuple[float, numpy.ndarray]:
	mapper = executor.map if executor is not None else map
	residual = expectation(x, theta, noise_model) - _target(x)
	pairs = _shifted_expectations(x, theta, noise_model, mapper)
	return 0.5 * residual**2, 0.5 * residual * (pairs[:, 0] - pairs[:, 1])


def gradient(
		x: float,
		theta: VqcParameters,
		noise: Noise = None,
		backend: Optional[BackendSpec] = None,
		executor: Optional[Executor] = None,
		) -> numpy.ndarray:
	r"""
	Returns the gradient of the loss with respect to the twelve angles.

	Component ``i`` is :math:`\frac{1}{2}(\langle M\rangle_\theta - x^2)(\langle M\rangle_{\theta + \frac{\pi}{2} e_i} - \langle M\rangle_{\theta - \frac{\pi}{2} e_i})`.

	:param x:
	:param theta:
	:param noise:
	:param backend:
	:param executor: Evaluates the 24 shifted circuits concurrently if given.
	"""

	return _loss_and_gradient(x, theta, _resolve(noise, backend), executor)[1]


def prediction_grid(
		theta: VqcParameters,
		noise: Noise = None,
		backend: Optional[BackendSpec] = None,
		points: int = 21,
		) -> List[Tuple[float, float, float]]:
	"""
	Returns ``(x, target, prediction)`` on ``points`` uniformly spaced inputs over :math:`[-1, 1]`.

	:param theta:
	:param noise:
	:param backend:
	:param points:
	"""

	noise_model = _resolve(noise, backend)
	return [(float(x), _target(float(x)), expectation(float(x), theta, noise_model))
			for x in numpy.linspace(-1.0, 1.0, points)]


def _positive_int(instance: Any, attribute: attr.Attribute, value: int) -> None:
	if value < 1:
		raise ValueError(f"{attribute.name!r} must be at least 1, got {value!r}")


@attr.s(frozen=True)
class TrainingConfig:
	"""
	Settings for :func:`~.train`.

	:param iterations:
	:param learning_rate: The gradient descent step size. Zero keeps the parameters fixed.
	:param seed: Shuffles the training inputs.
	:param noise: Applied in both training and inference.
	:param backend: Supplies the metrics for ``thermal`` and ``native_composite`` noise.
		The circuit is simulated at the logical level, without transpilation.
	:param sample_count: The number of training inputs.
	:param jobs: The number of threads evaluating shifted circuits.
	"""

	iterations: int = attr.ib(default=100, validator=_positive_int)
	learning_rate: float = attr.ib(default=0.5, converter=float)
	seed: int = attr.ib(default=0)
	noise: NoiseSpec = attr.ib(factory=NoiseSpec)
	backend: Optional[BackendSpec] = attr.ib(default=None, eq=False)
	sample_count: int = attr.ib(default=20)
	jobs: int = attr.ib(default=1, validator=_positive_int)

	@learning_rate.validator
	def _check_learning_rate(self, attribute: attr.Attribute, value: float) -> None:
		if not value >= 0 or not math.isfinite(value):
			raise ValueError(f"'learning_rate' must be a non-negative number, got {value!r}")

	@sample_count.validator
	def _check_sample_count(self, attribute: attr.Attribute, value: int) -> None:
		if value < 2:
			raise ValueError(f"'sample_count' must be at least 2, got {value!r}")


@attr.s(frozen=True)
class TrainingRecord:
	"""
	One gradient descent step.

	:param iteration:
	:param x: The input used in this step.
	:param loss: The loss before the update.
	:param theta: The parameters the loss was computed with.
	"""

	iteration: int = attr.ib()
	x: float = attr.ib()
	loss: float = attr.ib()
	theta: VqcParameters = attr.ib()


@attr.s(frozen=True)
class TrainingTrace:
	"""
	The outcome of :func:`~.train`.

	:param config:
	:param records: One record per iteration.
	:param final_theta: The parameters after the last update.
	"""

	#: The columns of :meth:`~.TrainingTrace.to_csv`.
	CSV_COLUMNS = ("iteration", 'x', "loss", *(f"theta_{i}" for i in range(VQC_PARAMETER_COUNT)))

	config: TrainingConfig = attr.ib()
	records: Tuple[TrainingRecord, ...] = attr.ib(converter=tuple)
	final_theta: VqcParameters = attr.ib()

	@property
	def losses(self) -> List[float]:
		"""
		The loss of every iteration.
		"""

		return [record.loss for record in self.records]

	@property
	def learning_rate(self) -> float:  # noqa: D102
		return self.config.learning_rate

	@property
	def noise(self) -> NoiseSpec:  # noqa: D102
		return self.config.noise

	def final_mean_loss(self, window: int = 10) -> float:
		"""
		The mean loss over the last ``window`` iterations.

		:param window:
		"""

		return float(numpy.mean(self.losses[-window:]))

	def rows(self) -> Iterator[List[Any]]:
		"""
		Yields one row per iteration, in the order of :attr:`~.TrainingTrace.CSV_COLUMNS`.
		"""

		for record in self.records:
			yield [record.iteration, record.x, record.loss, *record.theta.theta]

	def to_csv(self) -> str:
		"""
		Returns the trace as CSV.
		"""

		buf = io.StringIO()
		writer = csv.writer(buf, lineterminator='\n')
		writer.writerow(self.CSV_COLUMNS)
		writer.writerows(self.rows())
		return buf.getvalue()

	def dump_csv(self, filename: PathLike) -> str:
		"""
		Write the trace as CSV to the given file.

		:param filename:

		:returns: A string containing the CSV.
		"""

		as_csv = self.to_csv()
		PathPlus(filename).write_clean(as_csv)
		return as_csv

	def to_dict(self) -> Dict[str, Any]:
		"""
		Returns the trace as a JSON-compatible dictionary.
		"""

		return {
				"noise": self.noise.kind,
				"strength": self.noise.strength,
				"learning_rate": self.learning_rate,
				"iterations": self.config.iterations,
				"seed": self.config.seed,
				"sample_count": self.config.sample_count,
				"final_theta": list(self.final_theta.theta),
				"records": [dict(zip(self.CSV_COLUMNS, row)) for row in self.rows()],
				}


def train(config: TrainingConfig) -> TrainingTrace:
	"""
	Train the variational circuit by gradient descent, starting from all-zero parameters.

	Iteration ``k`` uses input ``k`` of the shuffled dataset, cycling when the dataset is exhausted.

	:param config:
	"""

	noise_model = noise_model_for(config.noise, config.backend)
	dataset = make_dataset(config.sample_count, config.seed)
	theta = VqcParameters.zeros()
	records: List[TrainingRecord] = []

	logger.info(
			"Training with %s noise for %d iterations (learning rate %r)",
			config.noise,
			config.iterations,
			config.learning_rate,
			)

	pool: Union[ThreadPoolExecutor, contextlib.nullcontext]
	pool = ThreadPoolExecutor(max_workers=config.jobs) if config.jobs > 1 else contextlib.nullcontext()

	with pool as executor:
		for k in range(config.iterations):
			x = dataset[k % len(dataset)]
			value, grad = _loss_and_gradient(x, theta, noise_model, executor)
			records.append(TrainingRecord(k, x, value, theta))
			theta = VqcParameters(theta.as_array() - config.learning_rate * grad)

			logger.debug("Iteration %d: x=%r loss=%r", k, x, value)

	trace = TrainingTrace(config, records, theta)
	logger.info("Finished training; mean loss over the last 10 iterations %r", trace.final_mean_loss())
	return trace
