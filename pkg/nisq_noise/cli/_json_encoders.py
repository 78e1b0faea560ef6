#!/usr/bin/env python3
#
#  _json_encoders.py
"""
JSON encoders for the command line output.
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
from pathlib import PurePath
from typing import Any, Dict, Union

# 3rd party
import numpy
import sdjson  # nodep

# this package
from nisq_noise.cli.experiments import ExperimentRecord, TranspileRecord
from nisq_noise.hardware import BackendSpec
from nisq_noise.noise import CompositeCalibration, NoiseSpec
from nisq_noise.vqc import TrainingTrace


@sdjson.register_encoder(PurePath)
def _encode_pathlib(obj: PurePath) -> str:
	return obj.as_posix()


@sdjson.register_encoder(numpy.floating)
def _encode_numpy_float(obj: numpy.floating) -> float:
	return float(obj)


@sdjson.register_encoder(numpy.integer)
def _encode_numpy_int(obj: numpy.integer) -> int:
	return int(obj)


@sdjson.register_encoder(NoiseSpec)
def _encode_noise_spec(obj: NoiseSpec) -> Dict[str, Any]:
	return {"kind": obj.kind, "strength": obj.strength}


@sdjson.register_encoder(BackendSpec)
@sdjson.register_encoder(CompositeCalibration)
@sdjson.register_encoder(ExperimentRecord)
@sdjson.register_encoder(TranspileRecord)
@sdjson.register_encoder(TrainingTrace)
def _encode_to_dict(
		obj: Union[BackendSpec, CompositeCalibration, ExperimentRecord, TranspileRecord, TrainingTrace],
		) -> Dict[str, Any]:
	return obj.to_dict()  # type: ignore[return-value]
