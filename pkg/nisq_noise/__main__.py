#!/usr/bin/env python3
#
#  __main__.py
"""
CLI entry point.
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
import sys
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple, TypeVar

# 3rd party
import click  # nodep
from consolekit import click_group  # nodep
from consolekit.commands import MarkdownHelpCommand  # nodep
from consolekit.options import (  # nodep
		DescribedArgument,
		auto_default_argument,
		auto_default_option,
		flag_option,
		verbose_option
		)
from consolekit.tracebacks import handle_tracebacks, traceback_option  # nodep

# this package
from nisq_noise.cli import backend_value, configure_logging, prettify_warnings

if TYPE_CHECKING:
	# 3rd party
	from domdf_python_tools.typing import PathLike

	# this package
	from nisq_noise.noise import NoiseSpec

__all__ = ["main", "grover", "qft", "vqc", "transpile", "calibrate", "backends"]


@click_group()
def main() -> None:  # pragma: no cover  # noqa: D103
	pass


_C = TypeVar("_C", bound=click.Command)


def _emit(text: str, output: Optional["PathLike"]) -> None:
	# this package
	from nisq_noise.cli.experiments import write_text

	if output is None:
		click.echo(text, nl=False)
	else:
		write_text(text, output)


def _parse_noise(noise: str, noise_strength: str) -> List["NoiseSpec"]:
	# this package
	from nisq_noise.cli import split_floats
	from nisq_noise.cli.experiments import noise_specs

	strengths = split_floats(noise_strength)

	try:
		return noise_specs(noise.split(','), strengths)
	except ValueError as e:
		raise click.BadParameter(str(e), param_hint="'--noise' / '--noise-strength'")


def common_options(c: _C) -> _C:
	auto_default_option(
			"-o",
			"--output",
			type=click.STRING,
			help="Write the results to this file instead of standard output.",
			)(c)
	auto_default_option(
			"-f",
			"--format",
			"output_format",
			type=click.Choice(["csv", "json"], case_sensitive=False),
			help="The output format.",
			show_default=True,
			)(c)
	verbose_option(help_text="Show progress messages. Give twice for debug output.")(c)
	traceback_option()(c)
	return c


def sweep_options(c: _C) -> _C:
	auto_default_option(
			"-b",
			"--backend",
			type=click.STRING,
			help="A builtin backend, 'all', or the path to a backend file.",
			show_default=True,
			)(c)
	auto_default_option(
			"-n",
			"--noise",
			type=click.STRING,
			help="none, native, bitflip, phaseflip, bitphaseflip, depolarizing or thermal. Comma separated.",
			show_default=True,
			)(c)
	auto_default_option(
			"-s",
			"--noise-strength",
			type=click.STRING,
			help="Comma separated probabilities for the elementary noise kinds.",
			show_default=True,
			)(c)
	auto_default_option(
			"-q",
			"--qubits",
			type=click.STRING,
			help="The circuit widths, e.g. '2..8' or '3,5'.",
			show_default=True,
			)(c)
	flag_option("--full-connectivity", help="Couple every pair of qubits instead of using the device topology.")(c)
	auto_default_option(
			"--seed",
			"seeds",
			type=click.INT,
			multiple=True,
			help="A routing seed. May be given several times. [default: 0]",
			)(c)
	auto_default_option(
			"-j",
			"--jobs",
			type=click.IntRange(min=1),
			help="The number of configurations to simulate at once.",
			show_default=True,
			)(c)
	flag_option("--no-timing", help="Write 0.0 to the wall_time column so reruns are byte-identical.")(c)
	common_options(c)
	return c


def _run_experiment(
		algorithm: str,
		backend: str,
		noise: str,
		noise_strength: str,
		qubits: str,
		full_connectivity: bool,
		seeds: Sequence[int],
		jobs: int,
		no_timing: bool,
		output: Optional[str],
		output_format: str,
		verbose: int,
		show_traceback: bool,
		) -> None:

	# 3rd party
	import sdjson  # nodep
	from domdf_python_tools.words import Plural

	# this package
	from nisq_noise.cli import _json_encoders  # noqa: F401
	from nisq_noise.cli import ExperimentTracebackHandler, qubit_range
	from nisq_noise.cli.experiments import ExperimentRecord, run_sweep, sweep_points, to_csv
	from nisq_noise.hardware import resolve_backends

	configure_logging(verbose)

	if not show_traceback:
		prettify_warnings()

	widths = qubit_range(qubits)
	specs = _parse_noise(noise, noise_strength)
	backend_value(backend)

	with handle_tracebacks(show_traceback, ExperimentTracebackHandler):
		points = sweep_points(
				algorithm,
				resolve_backends(backend),
				widths,
				specs,
				seeds or (0, ),
				connectivity="full" if full_connectivity else "native",
				)

		result = run_sweep(points, jobs=jobs, timing=not no_timing)

		if output_format.lower() == "json":
			_emit(sdjson.dumps(result.records, indent=2) + '\n', output)
		else:
			_emit(to_csv(ExperimentRecord.CSV_COLUMNS, (r.row() for r in result.records)), output)

		if result.failures:
			_points = Plural("configuration", "configurations")
			click.echo(
					f"{len(result.failures)} of {len(points)} {_points(len(points))} failed:",
					err=True,
					)
			for point, error in result.failures:
				click.echo(f"  {point}: {error}", err=True)

			sys.exit(1)


@sweep_options
@main.command(cls=MarkdownHelpCommand)
def grover(
		backend: str = "all",
		noise: str = "native",
		noise_strength: str = "0.01",
		qubits: str = "2..8",
		full_connectivity: bool = False,
		seeds: Sequence[int] = (),
		jobs: int = 1,
		no_timing: bool = False,
		output: Optional[str] = None,
		output_format: str = "csv",
		verbose: int = 0,
		show_traceback: bool = False,
		) -> None:
	"""
	Simulate Grover search for the all-ones bitstring.
	"""

	_run_experiment(
			"grover",
			backend,
			noise,
			noise_strength,
			qubits,
			full_connectivity,
			seeds,
			jobs,
			no_timing,
			output,
			output_format,
			verbose,
			show_traceback,
			)


@sweep_options
@main.command(cls=MarkdownHelpCommand)
def qft(
		backend: str = "all",
		noise: str = "native",
		noise_strength: str = "0.01",
		qubits: str = "2..11",
		full_connectivity: bool = False,
		seeds: Sequence[int] = (),
		jobs: int = 1,
		no_timing: bool = False,
		output: Optional[str] = None,
		output_format: str = "csv",
		verbose: int = 0,
		show_traceback: bool = False,
		) -> None:
	"""
	Simulate the quantum Fourier transform of a prepared basis state.
	"""

	_run_experiment(
			"qft",
			backend,
			noise,
			noise_strength,
			qubits,
			full_connectivity,
			seeds,
			jobs,
			no_timing,
			output,
			output_format,
			verbose,
			show_traceback,
			)


@traceback_option()
@verbose_option(help_text="Show progress messages. Give twice for debug output.")
@auto_default_option(
		"-f",
		"--format",
		"output_format",
		type=click.Choice(["csv", "json"], case_sensitive=False),
		help="The format of the training traces.",
		show_default=True,
		)
@auto_default_option(
		"-o",
		"--output",
		type=click.STRING,
		help="The directory to write the traces and predictions to.",
		show_default=True,
		)
@auto_default_option(
		"-j",
		"--jobs",
		type=click.IntRange(min=1),
		help="The number of trainings to run at once.",
		show_default=True,
		)
@auto_default_option("--seed", type=click.INT, help="Shuffles the training inputs.", show_default=True)
@auto_default_option(
		"--samples",
		type=click.IntRange(min=2),
		help="The number of training inputs.",
		show_default=True,
		)
@auto_default_option(
		"--learning-rate",
		type=click.FloatRange(min=0),
		help="The gradient descent step size.",
		show_default=True,
		)
@auto_default_option(
		"--iterations",
		type=click.IntRange(min=1),
		help="The number of gradient descent steps.",
		show_default=True,
		)
@auto_default_option(
		"-b",
		"--backend",
		type=click.STRING,
		help="A builtin backend or backend file, for the thermal and native noise kinds.",
		)
@auto_default_option(
		"-s",
		"--noise-strength",
		type=click.STRING,
		help="Comma separated probabilities for the elementary noise kinds.",
		show_default=True,
		)
@auto_default_option(
		"-n",
		"--noise",
		type=click.STRING,
		help="Comma separated noise kinds to train with.",
		show_default=True,
		)
@main.command(cls=MarkdownHelpCommand)
def vqc(
		noise: str = "bitflip,phaseflip,bitphaseflip,depolarizing",
		noise_strength: str = "0.005,0.05",
		backend: Optional[str] = None,
		iterations: int = 100,
		learning_rate: float = 0.5,
		samples: int = 20,
		seed: int = 0,
		jobs: int = 1,
		output: str = "vqc-results",
		output_format: str = "csv",
		verbose: int = 0,
		show_traceback: bool = False,
		) -> None:
	"""
	Train the variational circuit to approximate x² under each noise setting.

	Writes one training trace per setting and a ``predictions.csv`` file.
	"""

	# 3rd party
	import sdjson  # nodep
	from domdf_python_tools.paths import PathPlus

	# this package
	from nisq_noise.cli import _json_encoders  # noqa: F401
	from nisq_noise.cli import ExperimentTracebackHandler
	from nisq_noise.cli.experiments import predictions_csv, run_vqc_sweep, trace_filename, vqc_configs, write_text
	from nisq_noise.hardware import resolve_backends

	configure_logging(verbose)

	if not show_traceback:
		prettify_warnings()

	specs = _parse_noise(noise, noise_strength)

	if backend is not None:
		if backend == "all":
			raise click.BadParameter("Training uses a single backend", param_hint="'--backend'")
		backend_value(backend)
	elif any(spec.needs_backend for spec in specs):
		raise click.BadParameter("The thermal and native noise kinds need a backend", param_hint="'--backend'")

	with handle_tracebacks(show_traceback, ExperimentTracebackHandler):
		device = resolve_backends(backend)[0] if backend is not None else None
		configs = vqc_configs(specs, iterations, learning_rate, seed, samples, device)
		traces = run_vqc_sweep(configs, jobs)

		output_dir = PathPlus(output)
		json_output = output_format.lower() == "json"

		for trace in traces:
			if json_output:
				filename = output_dir / trace_filename(trace, ".json")
				write_text(sdjson.dumps(trace, indent=2), filename)
			else:
				filename = output_dir / trace_filename(trace)
				write_text(trace.to_csv(), filename)

			click.echo(f"{trace.noise}: final mean loss {trace.final_mean_loss():.6f} -> {filename.as_posix()}")

		write_text(predictions_csv(traces), output_dir / "predictions.csv")


@traceback_option()
@verbose_option(help_text="Show progress messages. Give twice for debug output.")
@auto_default_option(
		"-d",
		"--dump-circuit",
		type=click.STRING,
		help="Write the transpiled circuit to this file. Needs a single backend, width and seed.",
		)
@auto_default_option(
		"-f",
		"--format",
		"output_format",
		type=click.Choice(["csv", "json"], case_sensitive=False),
		help="The output format.",
		show_default=True,
		)
@auto_default_option(
		"-o",
		"--output",
		type=click.STRING,
		help="Write the report to this file instead of standard output.",
		)
@auto_default_option(
		"--seed",
		"seeds",
		type=click.INT,
		multiple=True,
		help="A routing seed. May be given several times. [default: 0]",
		)
@flag_option("--full-connectivity", help="Couple every pair of qubits instead of using the device topology.")
@auto_default_option(
		"-q",
		"--qubits",
		type=click.STRING,
		help="The widths of the named algorithm, e.g. '2..11'.",
		show_default=True,
		)
@auto_default_option(
		"-a",
		"--algorithm",
		type=click.Choice(["grover", "qft"], case_sensitive=False),
		help="The circuit to build when no file is given.",
		show_default=True,
		)
@auto_default_option(
		"-b",
		"--backend",
		type=click.STRING,
		help="A builtin backend, 'all', or the path to a backend file.",
		show_default=True,
		)
@auto_default_argument(
		"circuit_file",
		type=click.STRING,
		description="A circuit in the text format. If omitted the algorithm given by '--algorithm' is built.",
		cls=DescribedArgument,
		)
@main.command(cls=MarkdownHelpCommand)
def transpile(
		circuit_file: Optional[str] = None,
		backend: str = "ibmq_kolkata",
		algorithm: str = "qft",
		qubits: str = "2..11",
		full_connectivity: bool = False,
		seeds: Sequence[int] = (),
		output: Optional[str] = None,
		output_format: str = "csv",
		dump_circuit: Optional[str] = None,
		verbose: int = 0,
		show_traceback: bool = False,
		) -> None:
	"""
	Transpile a circuit for a backend and report the depth and number of SWAPs.
	"""

	# 3rd party
	import sdjson  # nodep
	from domdf_python_tools.paths import PathPlus

	# this package
	from nisq_noise.circuit import Circuit, build_grover, build_qft
	from nisq_noise.cli import _json_encoders  # noqa: F401
	from nisq_noise.cli import ExperimentTracebackHandler, qubit_range
	from nisq_noise.cli.experiments import TranspileRecord, to_csv, transpile_record
	from nisq_noise.hardware import resolve_backends

	configure_logging(verbose)

	if not show_traceback:
		prettify_warnings()

	backend_value(backend)
	widths = [] if circuit_file is not None else qubit_range(qubits)
	connectivity = "full" if full_connectivity else "native"

	with handle_tracebacks(show_traceback, ExperimentTracebackHandler):
		circuits: List[Tuple[str, Circuit]]

		if circuit_file is not None:
			circuits = [(PathPlus(circuit_file).name, Circuit.load(circuit_file))]
		else:
			build = build_grover if algorithm.lower() == "grover" else build_qft
			circuits = [(algorithm.lower(), build(n)) for n in widths]

		devices = resolve_backends(backend)
		records = []
		reports = []

		for device in devices:
			for name, c in circuits:
				for seed in (seeds or (0, )):
					record, report = transpile_record(name, c, device, connectivity, seed)  # type: ignore[arg-type]
					records.append(record)
					reports.append(report)

		if output_format.lower() == "json":
			_emit(sdjson.dumps(records, indent=2) + '\n', output)
		else:
			_emit(to_csv(TranspileRecord.CSV_COLUMNS, (r.row() for r in records)), output)

		if dump_circuit is not None:
			if len(reports) != 1:
				raise ValueError(
						f"'--dump-circuit' needs exactly one transpiled circuit, but {len(reports)} were produced"
						)
			reports[0].output.dump(dump_circuit)


@traceback_option()
@auto_default_option(
		"-f",
		"--format",
		"output_format",
		type=click.Choice(["text", "json"], case_sensitive=False),
		help="The output format.",
		show_default=True,
		)
@auto_default_option(
		"--delta",
		type=click.FloatRange(min=0, max=1, min_open=True, max_open=True),
		help="Also report the shots needed to estimate a probability with confidence 1 - delta.",
		)
@auto_default_option(
		"--epsilon",
		type=click.FloatRange(min=0, max=1, min_open=True, max_open=True),
		help="Also report the shots needed to estimate a probability within epsilon.",
		)
@auto_default_argument(
		"backend",
		type=click.STRING,
		description="A builtin backend, 'all', or the path to a backend file.",
		cls=DescribedArgument,
		)
@main.command(cls=MarkdownHelpCommand)
def calibrate(
		backend: str = "all",
		epsilon: Optional[float] = None,
		delta: Optional[float] = None,
		output_format: str = "text",
		show_traceback: bool = False,
		) -> None:
	"""
	Solve the depolarizing strengths that, combined with thermal relaxation, match each backend's gate fidelities.
	"""

	# 3rd party
	import sdjson  # nodep

	# this package
	from nisq_noise.cli import _json_encoders  # noqa: F401
	from nisq_noise.cli import ExperimentTracebackHandler
	from nisq_noise.engine import hoeffding_samples
	from nisq_noise.hardware import resolve_backends
	from nisq_noise.noise import native_calibrations
	from nisq_noise.utils import InfeasibleCalibrationError

	if not show_traceback:
		prettify_warnings()

	backend_value(backend)

	if (epsilon is None) != (delta is None):
		raise click.UsageError("'--epsilon' and '--delta' must be given together")

	with handle_tracebacks(show_traceback, ExperimentTracebackHandler):
		report = []
		failed = False

		for device in resolve_backends(backend):
			try:
				one, two = native_calibrations(device)
			except InfeasibleCalibrationError as e:
				click.echo(f"{device.name}: {e.__class__.__name__}: {e}", err=True)
				failed = True
				continue

			report.append((device.name, one, two))

		samples = hoeffding_samples(epsilon, delta) if epsilon is not None and delta is not None else None

		if output_format.lower() == "json":
			as_json = {"backends": [{"name": name, "calibrations": [one, two]} for name, one, two in report]}
			if samples is not None:
				as_json["samples"] = {"epsilon": epsilon, "delta": delta, "shots": samples}
			click.echo(sdjson.dumps(as_json, indent=2))

		else:
			for name, *calibrations in report:
				click.echo(name)
				for cal in calibrations:
					click.echo(
							f"    {cal.num_qubits}-qubit: F_target={cal.f_target!r} F_thermal={cal.f_thermal!r} "
							f"p={cal.p!r} F_achieved={cal.f_achieved!r}"
							)

			if samples is not None:
				click.echo(f"Shots for epsilon={epsilon!r}, delta={delta!r}: {samples}")

		if failed:
			sys.exit(1)


@traceback_option()
@click.option(
		"--export",
		type=click.STRING,
		nargs=2,
		default=None,
		metavar="NAME PATH",
		help="Write the backend NAME (builtin or file) to the file PATH.",
		)
@auto_default_argument(
		"backend",
		type=click.STRING,
		description="A builtin backend or backend file to show in full.",
		cls=DescribedArgument,
		)
@main.command(cls=MarkdownHelpCommand)
def backends(
		backend: Optional[str] = None,
		export: Optional[Tuple[str, str]] = None,
		show_traceback: bool = False,
		) -> None:
	"""
	List the builtin backends, show one backend, or export one to a file for editing.
	"""

	# 3rd party
	import sdjson  # nodep
	from domdf_python_tools.paths import PathPlus

	# this package
	from nisq_noise.cli import _json_encoders  # noqa: F401
	from nisq_noise.cli import ExperimentTracebackHandler
	from nisq_noise.hardware import BUILTIN_BACKENDS, builtin, resolve_backends

	if export is not None:
		name, path = export
		if name == "all":
			raise click.BadParameter("Export a single backend", param_hint="'--export'")
		backend_value(name)

		with handle_tracebacks(show_traceback, ExperimentTracebackHandler):
			resolve_backends(name)[0].dump(path)
			click.echo(f"Wrote {name!r} to {PathPlus(path).as_posix()!r}")
		return

	if backend is None:
		for name in BUILTIN_BACKENDS:
			spec = builtin(name)
			click.echo(
					f"{name:<18} {spec.num_qubits:>3} qubits  density {spec.coupling_density:5.2f}%  "
					f"gates {' '.join(sorted(spec.native_gates))}"
					)
		return

	backend_value(backend)

	with handle_tracebacks(show_traceback, ExperimentTracebackHandler):
		for spec in resolve_backends(backend):
			click.echo(sdjson.dumps(spec, indent=2))


if __name__ == "__main__":
	sys.exit(main())
