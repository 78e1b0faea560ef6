# stdlib
import re
from typing import Any, Dict

# 3rd party
import dom_toml
import pytest
from dom_toml.parser import BadConfigError

# this package
from nisq_noise.parsers import EdgesParser, GatesParser, MetricsParser, expand_line_tables

KOLKATA_METRICS = {
		"name": "ibmq_kolkata",
		"t1_us": 109.9,
		"t2_us": 96.8,
		"f1": 0.99968,
		"f2": 0.98909,
		"tg1_ns": 35.56,
		"tg2_ns": 415.37,
		}


def _with(**kwargs: Any) -> Dict[str, Any]:
	return {**KOLKATA_METRICS, **kwargs}


class TestMetricsParser:

	def test_parse(self):
		parsed = MetricsParser().parse(KOLKATA_METRICS)
		assert parsed == KOLKATA_METRICS
		assert isinstance(parsed["tg1_ns"], float)

	def test_integers_become_floats(self):
		parsed = MetricsParser().parse(_with(t1_us=100, tg1_ns=0, f1=1))
		assert parsed["t1_us"] == 100.0
		assert isinstance(parsed["t1_us"], float)
		assert parsed["tg1_ns"] == 0.0

	@pytest.mark.parametrize("key", list(KOLKATA_METRICS))
	def test_missing_key(self, key: str):
		config = dict(KOLKATA_METRICS)
		del config[key]

		with pytest.raises(BadConfigError, match=f"The 'metrics.{key}' field must be provided."):
			MetricsParser().parse(config)

	def test_unknown_key(self):
		with pytest.raises(BadConfigError, match="Unexpected key 'metrics.t3_us'"):
			MetricsParser().parse(_with(t3_us=1.0))

	@pytest.mark.parametrize(
			"config, match",
			[
					pytest.param(_with(name=''), "'metrics.name' cannot be empty.", id="empty_name"),
					pytest.param(_with(t1_us=0), "'metrics.t1_us' must be positive, got 0.0", id="zero_t1"),
					pytest.param(_with(t2_us=-5), "'metrics.t2_us' must be positive, got -5.0", id="negative_t2"),
					pytest.param(
							_with(tg2_ns=-1),
							"'metrics.tg2_ns' must not be negative, got -1.0",
							id="negative_duration",
							),
					pytest.param(
							_with(f1=1.5),
							"'metrics.f1' must be in the range (0, 1], got 1.5",
							id="fidelity_above_one",
							),
					pytest.param(_with(f2=0), "'metrics.f2' must be in the range (0, 1], got 0.0", id="zero_fidelity"),
					pytest.param(
							_with(t1_us=10, t2_us=30),
							"'metrics.t2_us' cannot exceed twice 'metrics.t1_us'",
							id="t2_above_twice_t1",
							),
					]
			)
	def test_bad_values(self, config: Dict[str, Any], match: str):
		with pytest.raises(BadConfigError, match=re.escape(match)):
			MetricsParser().parse(config)

	@pytest.mark.parametrize(
			"config, match",
			[
					pytest.param(
							_with(name=27),
							"Invalid type for 'metrics.name': expected <class 'str'>, got <class 'int'>",
							id="name",
							),
					pytest.param(
							_with(f1="high"),
							"Invalid type for 'metrics.f1'",
							id="string_fidelity",
							),
					pytest.param(
							_with(t1_us=True),
							"Invalid type for 'metrics.t1_us': expected a number, got <class 'bool'>",
							id="boolean",
							),
					]
			)
	def test_bad_types(self, config: Dict[str, Any], match: str):
		with pytest.raises(TypeError, match=re.escape(match)):
			MetricsParser().parse(config)

	def test_t2_may_exceed_t1(self):
		# dephasing-limited devices such as Aspen-M3
		parsed = MetricsParser().parse(_with(t1_us=24.98, t2_us=28.04))
		assert parsed["t2_us"] > parsed["t1_us"]


class TestGatesParser:

	def test_parse(self):
		assert GatesParser().parse({"native": ['X', "SX", "Rz", "CX"]}) == {"native": ['X', "SX", "Rz", "CX"]}

	def test_canonical_names(self):
		parsed = GatesParser().parse({"native": ["gpi", "GPI2", "rz", "ms", "MS"]})
		assert parsed["native"] == ["GPi", "GPi2", "Rz", "MS"]

	def test_unknown_gate(self):
		with pytest.raises(BadConfigError, match=re.escape("gates.native[1]: Unknown gate 'CCX'")):
			GatesParser().parse({"native": ["Rz", "CCX", "SX", "CX"]})

	def test_not_universal(self):
		with pytest.raises(BadConfigError, match="'gates.native' is not universal"):
			GatesParser().parse({"native": ["Rz", "SX"]})

	def test_bad_types(self):
		with pytest.raises(TypeError, match="Invalid type for 'gates.native'"):
			GatesParser().parse({"native": "Rz SX CX"})
		with pytest.raises(TypeError, match=re.escape("Invalid type for 'gates.native[0]'")):
			GatesParser().parse({"native": [1, "Rz"]})

	def test_missing(self):
		with pytest.raises(BadConfigError, match="The 'gates.native' field must be provided."):
			GatesParser().parse({})


class TestEdgesParser:

	def test_parse(self):
		parsed = EdgesParser().parse({"pairs": ["0-1", "2 - 1", " 3-0 "]})
		assert parsed == {"pairs": [(0, 1), (1, 2), (0, 3)]}

	@pytest.mark.parametrize(
			"pairs, match",
			[
					pytest.param(["0-1", "1:2"], "edges.pairs[1]: expected 'a-b', got '1:2'", id="syntax"),
					pytest.param(["0-1", "-1-2"], "edges.pairs[1]: expected 'a-b'", id="negative"),
					pytest.param(["3-3"], "edges.pairs[0]: self-loop on qubit 3", id="self_loop"),
					pytest.param([], "'edges.pairs' cannot be empty.", id="empty"),
					]
			)
	def test_bad_values(self, pairs, match: str):
		with pytest.raises(BadConfigError, match=re.escape(match)):
			EdgesParser().parse({"pairs": pairs})

	def test_bad_types(self):
		with pytest.raises(TypeError, match=re.escape("Invalid type for 'edges.pairs[0]'")):
			EdgesParser().parse({"pairs": [[0, 1]]})

	def test_unknown_key(self):
		with pytest.raises(BadConfigError, match="Unexpected key 'edges.weights'"):
			EdgesParser().parse({"pairs": ["0-1"], "weights": [1.0]})


class TestExpandLineTables:

	def test_line_sections(self):
		text = "[gates]\nX\nSX  # half turn\nRz\nCX\n\n[edges]\n0-1\n1 - 2\n"
		assert dom_toml.loads(expand_line_tables(text)) == {
				"gates": {"native": ['X', "SX", "Rz", "CX"]},
				"edges": {"pairs": ["0-1", "1 - 2"]},
				}

	def test_toml_sections_unchanged(self):
		text = '[metrics]\nname = "toy"\n\n[gates]\nnative = [\n    "SX",\n    "CZ",\n]\n\n[edges]\npairs = [ "0-1",]\n'
		assert expand_line_tables(text) == text

	def test_mixed(self):
		text = '[gates]\nnative = [ "Rz", "SX", "CZ",]\n\n[edges]\n0-1\n'
		assert dom_toml.loads(expand_line_tables(text)) == {
				"gates": {"native": ["Rz", "SX", "CZ"]},
				"edges": {"pairs": ["0-1"]},
				}

	def test_empty_section_is_left_for_the_parser(self):
		assert dom_toml.loads(expand_line_tables("[gates]\n\n[edges]\n0-1\n"))["gates"] == {}
