#!/usr/bin/env python3
#
#  parsers.py
"""
TOML parsers for backend description files.

A backend file has three tables:

.. code-block:: TOML

	[metrics]
	name = "ibmq_kolkata"
	t1_us = 109.9
	t2_us = 96.8
	f1 = 0.99968
	f2 = 0.98909
	tg1_ns = 35.56
	tg2_ns = 415.37

	[gates]
	native = [
	    "X",
	    "SX",
	    "Rz",
	    "CX",
	]

	[edges]
	pairs = [ "0-1", "1-2",]

The ``[gates]`` and ``[edges]`` tables may instead be written one item per line:

.. code-block:: text

	[gates]
	X
	SX
	Rz
	CX

	[edges]
	0-1
	1-2

:func:`~.expand_line_tables` rewrites that form as TOML arrays before parsing.
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
import collections.abc
import re
from abc import ABCMeta
from typing import Any, ClassVar, Dict, Iterable, List, Optional, Set, Tuple, cast

# 3rd party
import dom_toml
from dom_toml.parser import TOML_TYPES, AbstractConfigParser, BadConfigError, construct_path
from domdf_python_tools.words import word_join

# this package
from nisq_noise.gates import is_universal, lookup_gate
from nisq_noise.type_hints import Edge, EdgesDict, GatesDict, MetricsDict

__all__ = [
		"RequiredKeysConfigParser",
		"MetricsParser",
		"GatesParser",
		"EdgesParser",
		"LINE_TABLES",
		"expand_line_tables",
		]

_edge_re = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*$")
_section_re = re.compile(r"^\s*\[\s*(\w+)\s*\]\s*(?:#.*)?$")

#: The tables which may be written one item per line, and the key their items are stored under.
LINE_TABLES: Dict[str, str] = {"gates": "native", "edges": "pairs"}


class RequiredKeysConfigParser(AbstractConfigParser, metaclass=ABCMeta):
	"""
	Abstract base class for TOML configuration parsers which have required keys
	and reject keys they do not know.
	"""  # noqa: D400

	required_keys: ClassVar[List[str]]
	table_name: ClassVar[str]

	def parse(
			self,
			config: Dict[str, TOML_TYPES],
			set_defaults: bool = False,
			) -> Dict[str, TOML_TYPES]:
		"""
		Parse the TOML configuration.

		:param config:
		:param set_defaults: If :py:obj:`True`, the values in
			:attr:`self.defaults <dom_toml.parser.AbstractConfigParser.defaults>` and
			:attr:`self.factories <dom_toml.parser.AbstractConfigParser.factories>`
			will be set as defaults for the returned mapping.
		"""

		for key in self.required_keys:
			if key in config:
				continue
			elif set_defaults and (key in self.defaults or key in self.factories):
				continue  # pragma: no cover
			else:
				raise BadConfigError(f"The {construct_path([self.table_name, key])!r} field must be provided.")

		unknown = sorted(set(config) - set(self.keys))
		if unknown:
			raise BadConfigError(
					f"Unexpected key {construct_path([self.table_name, unknown[0]])!r}. "
					f"Only {word_join(self.keys, use_repr=True)} are allowed in the {self.table_name!r} table."
					)

		return super().parse(config, set_defaults)

	def assert_sequence_not_str(
			self,
			obj: Any,
			path: Iterable[str],
			what: str = "type",
			) -> None:
		"""
		Assert that ``obj`` is a :class:`~typing.Sequence` and not a :class:`str`,
		otherwise raise an error with a helpful message.

		:param obj: The object to check the type of.
		:param path: The elements of the path to ``obj`` in the TOML mapping.
		:param what: What ``obj`` is, e.g. ``'type'``, ``'value type'``.
		"""  # noqa: D400

		if isinstance(obj, str):
			name = construct_path(path)
			raise TypeError(
					f"Invalid {what} for {name!r}: "
					f"expected <class 'collections.abc.Sequence'>, got {type(obj)!r}",
					)

		self.assert_type(obj, collections.abc.Sequence, path, what=what)

	def assert_number(self, config: Dict[str, TOML_TYPES], key: str) -> float:
		"""
		Assert that ``config[key]`` is an integer or float (but not a boolean) and return it as a float.

		:param config:
		:param key:
		"""

		value = config[key]
		path = [self.table_name, key]

		if isinstance(value, bool):
			raise TypeError(f"Invalid type for {construct_path(path)!r}: expected a number, got {type(value)!r}")

		self.assert_type(value, (int, float), path)
		return float(value)


class MetricsParser(RequiredKeysConfigParser):
	"""
	Parser for the ``[metrics]`` table of a backend file.

	Durations are given in microseconds (``t1_us``, ``t2_us``) and nanoseconds (``tg1_ns``, ``tg2_ns``).
	"""

	table_name: ClassVar[str] = "metrics"
	keys: ClassVar[List[str]] = ["name", "t1_us", "t2_us", "f1", "f2", "tg1_ns", "tg2_ns"]
	required_keys: ClassVar[List[str]] = ["name", "t1_us", "t2_us", "f1", "f2", "tg1_ns", "tg2_ns"]

	def parse_name(self, config: Dict[str, TOML_TYPES]) -> str:
		"""
		Parse the ``name`` key, giving the name of the device.

		:param config: The unparsed TOML config for the ``[metrics]`` table.
		"""

		name = config["name"]
		self.assert_type(name, str, [self.table_name, "name"])

		if not name.strip():
			raise BadConfigError(f"{construct_path([self.table_name, 'name'])!r} cannot be empty.")

		return name

	def _coherence_time(self, config: Dict[str, TOML_TYPES], key: str) -> float:
		value = self.assert_number(config, key)

		if not value > 0:
			raise BadConfigError(f"{construct_path([self.table_name, key])!r} must be positive, got {value!r}")

		return value

	def _duration(self, config: Dict[str, TOML_TYPES], key: str) -> float:
		value = self.assert_number(config, key)

		if not value >= 0:
			raise BadConfigError(f"{construct_path([self.table_name, key])!r} must not be negative, got {value!r}")

		return value

	def _fidelity(self, config: Dict[str, TOML_TYPES], key: str) -> float:
		value = self.assert_number(config, key)

		if not 0 < value <= 1:
			raise BadConfigError(
					f"{construct_path([self.table_name, key])!r} must be in the range (0, 1], got {value!r}"
					)

		return value

	def parse_t1_us(self, config: Dict[str, TOML_TYPES]) -> float:
		"""
		Parse the ``t1_us`` key, the relaxation time :math:`T_1` in microseconds.

		:param config: The unparsed TOML config for the ``[metrics]`` table.
		"""

		return self._coherence_time(config, "t1_us")

	def parse_t2_us(self, config: Dict[str, TOML_TYPES]) -> float:
		"""
		Parse the ``t2_us`` key, the dephasing time :math:`T_2` in microseconds.

		:param config: The unparsed TOML config for the ``[metrics]`` table.
		"""

		return self._coherence_time(config, "t2_us")

	def parse_f1(self, config: Dict[str, TOML_TYPES]) -> float:
		"""
		Parse the ``f1`` key, the average one-qubit gate fidelity.

		:param config: The unparsed TOML config for the ``[metrics]`` table.
		"""

		return self._fidelity(config, "f1")

	def parse_f2(self, config: Dict[str, TOML_TYPES]) -> float:
		"""
		Parse the ``f2`` key, the average two-qubit gate fidelity.

		:param config: The unparsed TOML config for the ``[metrics]`` table.
		"""

		return self._fidelity(config, "f2")

	def parse_tg1_ns(self, config: Dict[str, TOML_TYPES]) -> float:
		"""
		Parse the ``tg1_ns`` key, the one-qubit gate duration in nanoseconds.

		:param config: The unparsed TOML config for the ``[metrics]`` table.
		"""

		return self._duration(config, "tg1_ns")

	def parse_tg2_ns(self, config: Dict[str, TOML_TYPES]) -> float:
		"""
		Parse the ``tg2_ns`` key, the two-qubit gate duration in nanoseconds.

		:param config: The unparsed TOML config for the ``[metrics]`` table.
		"""

		return self._duration(config, "tg2_ns")

	def parse(  # type: ignore[override]
		self,
		config: Dict[str, TOML_TYPES],
		set_defaults: bool = False,
		) -> MetricsDict:
		"""
		Parse the TOML configuration.

		:param config:
		:param set_defaults:

		:rtype:
		"""

		parsed_config = super().parse(config, set_defaults)

		if parsed_config["t2_us"] > 2 * parsed_config["t1_us"]:
			raise BadConfigError(
					f"{construct_path([self.table_name, 't2_us'])!r} cannot exceed twice "
					f"{construct_path([self.table_name, 't1_us'])!r}"
					)

		return cast(MetricsDict, parsed_config)


class GatesParser(RequiredKeysConfigParser):
	"""
	Parser for the ``[gates]`` table of a backend file.
	"""

	table_name: ClassVar[str] = "gates"
	keys: ClassVar[List[str]] = ["native"]
	required_keys: ClassVar[List[str]] = ["native"]

	def parse_native(self, config: Dict[str, TOML_TYPES]) -> List[str]:
		"""
		Parse the ``native`` key, the list of gate names the device implements.

		Names are matched case-insensitively and returned in their canonical spelling.

		:param config: The unparsed TOML config for the ``[gates]`` table.
		"""

		key_path = [self.table_name, "native"]
		self.assert_sequence_not_str(config["native"], key_path)

		parsed_gates: List[str] = []
		seen: Set[str] = set()

		for idx, name in enumerate(config["native"]):
			self.assert_indexed_type(name, str, key_path, idx=idx)

			try:
				canonical = lookup_gate(name).name
			except ValueError as e:
				raise BadConfigError(f"{construct_path(key_path)}[{idx}]: {e}") from None

			if canonical not in seen:
				seen.add(canonical)
				parsed_gates.append(canonical)

		if not is_universal(parsed_gates):
			raise BadConfigError(
					f"{construct_path(key_path)!r} is not universal: it needs 'Rz', "
					"one of 'SX', 'GPi2' or 'Rx', and one of 'CX', 'CZ', 'CP' or 'MS'."
					)

		return parsed_gates

	def parse(  # type: ignore[override]
		self,
		config: Dict[str, TOML_TYPES],
		set_defaults: bool = False,
		) -> GatesDict:
		"""
		Parse the TOML configuration.

		:param config:
		:param set_defaults:

		:rtype:
		"""

		return cast(GatesDict, super().parse(config, set_defaults))


class EdgesParser(RequiredKeysConfigParser):
	"""
	Parser for the ``[edges]`` table of a backend file.

	Each edge is written as ``"a-b"`` with physical qubit indices ``a`` and ``b``.
	"""

	table_name: ClassVar[str] = "edges"
	keys: ClassVar[List[str]] = ["pairs"]
	required_keys: ClassVar[List[str]] = ["pairs"]

	def parse_pairs(self, config: Dict[str, TOML_TYPES]) -> List[Edge]:
		"""
		Parse the ``pairs`` key.

		:param config: The unparsed TOML config for the ``[edges]`` table.
		"""

		key_path = [self.table_name, "pairs"]
		self.assert_sequence_not_str(config["pairs"], key_path)

		edges: List[Tuple[int, int]] = []

		for idx, pair in enumerate(config["pairs"]):
			self.assert_indexed_type(pair, str, key_path, idx=idx)

			m = _edge_re.match(pair)
			if not m:
				raise BadConfigError(f"{construct_path(key_path)}[{idx}]: expected 'a-b', got {pair!r}")

			a, b = int(m.group(1)), int(m.group(2))
			if a == b:
				raise BadConfigError(f"{construct_path(key_path)}[{idx}]: self-loop on qubit {a}")

			edges.append((min(a, b), max(a, b)))

		if not edges:
			raise BadConfigError(f"{construct_path(key_path)!r} cannot be empty.")

		return edges

	def parse(  # type: ignore[override]
		self,
		config: Dict[str, TOML_TYPES],
		set_defaults: bool = False,
		) -> EdgesDict:
		"""
		Parse the TOML configuration.

		:param config:
		:param set_defaults:

		:rtype:
		"""

		return cast(EdgesDict, super().parse(config, set_defaults))


def expand_line_tables(text: str) -> str:
	"""
	Rewrite line-oriented ``[gates]`` and ``[edges]`` sections of a backend file as TOML arrays.

	In that form each line of ``[gates]`` holds one gate name and each line of ``[edges]``
	holds one ``a-b`` pair. A section with a ``key = value`` line is already TOML
	and is passed through unchanged, as is every other section.

	:param text: The contents of a backend file.
	"""

	output: List[str] = []
	body: List[str] = []
	section: Optional[str] = None

	def flush() -> None:
		items = [line.split('#', 1)[0].strip() for line in body]
		items = [item for item in items if item]

		if section in LINE_TABLES and items and not any('=' in item for item in items):
			output.append(dom_toml.dumps({LINE_TABLES[section]: items}))
		else:
			output.extend(body)

		body.clear()

	for line in text.splitlines():
		m = _section_re.match(line)
		if m:
			flush()
			section = m.group(1)
			output.append(line)
		else:
			body.append(line)

	flush()
	return '\n'.join(output) + '\n'
