#!/usr/bin/env python3
#
#  type_hints.py
"""
Type hints for ``nisq-noise``.
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
from typing import List, Tuple

# 3rd party
import numpy
from typing_extensions import Literal, TypedDict

__all__ = [
		"ComplexMatrix",
		"Edge",
		"NoiseKind",
		"ConnectivityMode",
		"OutputFormat",
		"MetricsDict",
		"GatesDict",
		"EdgesDict",
		"BackendDict",
		]

#: A dense complex matrix (two-dimensional :class:`numpy.ndarray` of ``complex128``).
ComplexMatrix = numpy.ndarray

#: An unordered pair of physical qubits, stored with the smaller index first.
Edge = Tuple[int, int]

#: The kinds of noise a :class:`~nisq_noise.noise.NoiseSpec` can describe.
NoiseKind = Literal[
		"none",
		"bit_flip",
		"phase_flip",
		"bit_phase_flip",
		"depolarizing",
		"thermal",
		"native_composite",
		]

#: Whether an experiment used the backend's own coupling graph or a complete graph.
ConnectivityMode = Literal["native", "full"]

#: Output formats supported by the command line interface.
OutputFormat = Literal["csv", "json"]

#: :class:`typing.TypedDict` representing the output from the :class:`~.MetricsParser` class.
MetricsDict = TypedDict(
		"MetricsDict",
		{
				"name": str,
				"t1_us": float,
				"t2_us": float,
				"f1": float,
				"f2": float,
				"tg1_ns": float,
				"tg2_ns": float,
				},
		)


class GatesDict(TypedDict):
	"""
	:class:`typing.TypedDict` representing the output from the :class:`~.GatesParser` class.
	"""

	native: List[str]


class EdgesDict(TypedDict):
	"""
	:class:`typing.TypedDict` representing the output from the :class:`~.EdgesParser` class.
	"""

	pairs: List[Edge]


#: :class:`typing.TypedDict` representing a whole backend file.
BackendDict = TypedDict("BackendDict", {"metrics": MetricsDict, "gates": GatesDict, "edges": EdgesDict})
