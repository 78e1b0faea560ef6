#!/usr/bin/env python3
#
#  __init__.py
"""
Command line helpers.
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
import logging
import sys
import warnings
from pathlib import Path
from typing import TYPE_CHECKING, List, Optional, TextIO, Type, Union

# 3rd party
import click  # nodep
from consolekit.tracebacks import TracebackHandler  # nodep
from dom_toml.parser import BadConfigError

# this package
from nisq_noise.utils import (
		CircuitSyntaxError,
		InfeasibleCalibrationError,
		SimulationResourceError,
		SimulationWarning,
		parse_qubit_range
		)

if sys.version_info >= (3, 7) or TYPE_CHECKING:
	# stdlib
	from typing import NoReturn

__all__ = [
		"ExperimentTracebackHandler",
		"backend_value",
		"configure_logging",
		"prettify_warnings",
		"qubit_range",
		"split_floats",
		]


class ExperimentTracebackHandler(TracebackHandler):
	"""
	:class:`consolekit.tracebacks.TracebackHandler` which reports the errors of this package
	as a single line.
	"""  # noqa: D400

	has_traceback_option: bool = True
	"""
	Whether to show the message ``Use '--traceback' to view the full traceback.`` on error.
	"""

	@property
	def _tb_option_msg(self) -> str:
		if self.has_traceback_option:
			return "\n    Use '--traceback' to view the full traceback."
		else:
			return ''

	def format_exception(self, e: Exception) -> "NoReturn":
		"""
		Format the exception as ``ExcName: message``.

		:param e:
		"""

		self.abort([f"{e.__class__.__name__}: {e}", self._tb_option_msg])

	def handle_BadConfigError(self, e: BadConfigError) -> "NoReturn":  # noqa: D102
		self.format_exception(e)

	def handle_CircuitSyntaxError(self, e: CircuitSyntaxError) -> "NoReturn":  # noqa: D102
		self.format_exception(e)

	def handle_InfeasibleCalibrationError(self, e: InfeasibleCalibrationError) -> "NoReturn":  # noqa: D102
		self.format_exception(e)

	def handle_SimulationResourceError(self, e: SimulationResourceError) -> "NoReturn":  # noqa: D102
		self.format_exception(e)

	def handle_ValueError(self, e: ValueError) -> "NoReturn":  # noqa: D102
		self.format_exception(e)

	def handle_KeyError(self, e: KeyError) -> "NoReturn":  # noqa: D102
		self.format_exception(e)

	def handle_TypeError(self, e: TypeError) -> "NoReturn":  # noqa: D102
		self.format_exception(e)

	def handle_FileNotFoundError(self, e: FileNotFoundError) -> "NoReturn":  # noqa: D102
		msg = e.strerror

		no_such_file = "No such file or directory"

		if msg == "The system cannot find the file specified":
			msg = no_such_file

		if msg == no_such_file:
			if e.filename is not None:
				msg += f": {Path(e.filename).as_posix()!r}"

			self.abort(msg)

		else:
			super().handle_FileNotFoundError(e)


def prettify_warnings() -> None:
	"""
	Catch :class:`SimulationWarnings <.SimulationWarning>` and format them prettily for the command line.
	"""

	orig_showwarning = warnings.showwarning

	if getattr(orig_showwarning, "_nisq_noise", False):
		return

	@functools.wraps(warnings.showwarning)
	def showwarning(
			message: Union[Warning, str],
			category: Type[Warning],
			filename: str,
			lineno: int,
			file: Optional[TextIO] = None,
			line: Optional[str] = None,
			) -> None:
		if isinstance(message, SimulationWarning):
			if file is None:
				file = sys.stderr

			file.write(f"WARNING: {message.args[0]}\n")

		else:
			orig_showwarning(message, category, filename, lineno, file, line)

	showwarning._nisq_noise = True  # type: ignore[attr-defined]
	warnings.showwarning = showwarning


def configure_logging(verbose: int = 0) -> None:
	"""
	Send this package's log messages to stderr.

	:param verbose: ``0`` shows warnings only, ``1`` adds progress messages and ``2`` or more shows everything.
	"""

	if verbose >= 2:
		level = logging.DEBUG
	elif verbose == 1:
		level = logging.INFO
	else:
		level = logging.WARNING

	logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s: %(name)s: %(message)s")
	logging.getLogger("nisq_noise").setLevel(level)


def qubit_range(value: str) -> List[int]:
	"""
	Parse a ``--qubits`` value, raising :exc:`click.BadParameter` on invalid input.

	:param value:
	"""

	try:
		return parse_qubit_range(value)
	except ValueError as e:
		raise click.BadParameter(str(e), param_hint="'--qubits'")


def split_floats(value: str, option: str = "--noise-strength") -> List[float]:
	"""
	Parse a comma-separated list of numbers, raising :exc:`click.BadParameter` on invalid input.

	:param value:
	:param option: The name of the option, for error messages.
	"""

	try:
		numbers = [float(part) for part in value.split(',') if part.strip()]
	except ValueError:
		raise click.BadParameter(f"Expected a comma-separated list of numbers, got {value!r}", param_hint=repr(option))

	if not numbers:
		raise click.BadParameter("Expected at least one number", param_hint=repr(option))

	return numbers


def backend_value(value: str) -> str:
	"""
	Check a ``--backend`` value names a builtin backend, ``all``, or an existing file.

	:param value:
	"""

	# 3rd party
	from domdf_python_tools.words import word_join

	# this package
	from nisq_noise.hardware import BUILTIN_BACKENDS

	if value == "all" or value in BUILTIN_BACKENDS or Path(value).is_file():
		return value

	raise click.BadParameter(
			f"{value!r} is not 'all', a builtin backend ({word_join(BUILTIN_BACKENDS, use_repr=True)}) or a backend file",
			param_hint="'--backend'",
			)
