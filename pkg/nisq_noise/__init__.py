#!/usr/bin/env python3
#
#  __init__.py
"""
Noisy density-matrix simulation and transpilation of quantum circuits on modelled NISQ hardware.
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

# this package
from nisq_noise.circuit import Circuit, build_grover, build_qft, build_qft_benchmark, build_vqc
from nisq_noise.engine import SimulationResult, simulate
from nisq_noise.hardware import BackendSpec, CouplingGraph, builtin, load_backend
from nisq_noise.noise import KrausChannel, NoiseModel, NoiseSpec, noise_model_for
from nisq_noise.qmath import DensityMatrix, PureState
from nisq_noise.transpiler import TranspileReport, transpile

__author__: str = "The nisq-noise developers"
__copyright__: str = "2024 The nisq-noise developers"
__license__: str = "MIT License"
__version__: str = "0.1.0"
__email__: str = "nisq-noise@users.noreply.github.com"

__all__ = [
		"BackendSpec",
		"Circuit",
		"CouplingGraph",
		"DensityMatrix",
		"KrausChannel",
		"NoiseModel",
		"NoiseSpec",
		"PureState",
		"SimulationResult",
		"TranspileReport",
		"build_grover",
		"build_qft",
		"build_qft_benchmark",
		"build_vqc",
		"builtin",
		"load_backend",
		"noise_model_for",
		"simulate",
		"transpile",
		]
