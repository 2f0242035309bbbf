#!/usr/bin/env python3

import doctest
import json
import os
import sys
import tempfile

from minact import cli
from minact import cover
from minact import reduction
from minact import utils as minact_utils


def write_system(tmp, name, doc):
	filename = os.path.join(tmp, name)
	with open(filename, "w") as f:
		if isinstance(doc, str):
			f.write(doc)
		else:
			json.dump(doc, f)
	return filename


def run(func, *args, **kwargs):
	return cli.run("test", func, *args, **kwargs)


def test_doctests():
	assert doctest.testmod(cli).failed == 0


def test_exit_codes():
	with tempfile.TemporaryDirectory() as tmp:
		out = os.path.join(tmp, "out.json")
		diag = write_system(tmp, "diag.json", {"n": 2, "m": 2, "A": [1, 0, 0, 2], "B": [1, 0, 0, 1]})
		single = write_system(tmp, "single.json", {"n": 1, "m": 1, "A": [1], "B": [1]})
		dead = write_system(tmp, "dead.json", {"n": 2, "m": 1, "A": [1, 0, 0, 2], "B": [1, 0]})
		twin = write_system(tmp, "twin.json", {"n": 2, "m": 3, "A": [1, 0, 0, 1], "B": [1, 1, 0, 0, 0, 1]})
		broken = write_system(tmp, "broken.json", '{"n": 2, "m": 2,\n "A": [1, 0, 0 2]}')
		short = write_system(tmp, "short.json", {"n": 2, "m": 2, "A": [1, 0, 0], "B": [1, 0, 0, 1]})

		assert run(cli.cmd_select, diag, output = out) == 0
		assert run(cli.cmd_select, single, faults = 1, output = out) == 2
		assert run(cli.cmd_select, dead, output = out) == 3
		assert run(cli.cmd_select, twin, strategy = "multicover", output = out) == 4
		assert run(cli.cmd_reduce, twin, output = out) == 4
		assert run(cli.cmd_verify, diag, "1,2", faults = 1, output = out) == 5
		assert run(cli.cmd_verify, diag, "1,3", output = out) == 64
		assert run(cli.cmd_verify, diag, "1;2", output = out) == 64
		assert run(cli.cmd_analyze, broken, output = out) == 65
		assert run(cli.cmd_analyze, short, output = out) == 65
		assert run(cli.cmd_analyze, os.path.join(tmp, "missing.json"), output = out) == 66
		assert run(cli.cmd_select, diag, strategy = "brute", output = out) == 0


def test_select_document():
	with tempfile.TemporaryDirectory() as tmp:
		out = os.path.join(tmp, "out.json")
		filename = write_system(tmp, "sys.json", {"n": 2, "m": 1, "A": [1, 0, 0, 2], "B": [1, 1]})
		assert cli.cmd_select(filename, output = out) == 0
		doc = minact_utils.load_filename(out)
		assert doc["chosen"] == [1] and doc["optimal"] is True and doc["cardinality"] == 1
		assert len(doc["certificate"]) == 2

		certified = write_system(tmp, "certified.json", {"n": 2, "m": 3, "A": [1, 0, 0, 2], "B": [1, 1, 0, 1, 0, 1]})
		assert cli.cmd_select(certified, strategy = "greedy", output = out) == 0
		doc = minact_utils.load_filename(out)
		assert doc["method"] == "multicover_greedy" and doc["optimal"] is False


def test_reduce_matches_select():
	with tempfile.TemporaryDirectory() as tmp:
		out = os.path.join(tmp, "cover.json")
		filename = write_system(tmp, "diag.json", {"n": 2, "m": 2, "A": [1, 0, 0, 2], "B": [1, 0, 0, 1]})
		assert cli.cmd_reduce(filename, output = out) == 0
		assert minact_utils.load_filename(out) == {"universe": 2, "coverage": [1, 1], "sets": [[1], [2]]}

		filename = write_system(tmp, "robust.json", {"n": 1, "m": 2, "A": [1], "B": [1, 2]})
		assert cli.cmd_reduce(filename, faults = 1, output = out) == 0
		inst = reduction.CoverInstance.from_json(minact_utils.load_filename(out))
		assert inst.coverage == (2,)
		selected = os.path.join(tmp, "select.json")
		assert cli.cmd_select(filename, faults = 1, strategy = "multicover", output = selected) == 0
		assert cover.exact_multicover_dp(inst).to_json()["chosen"] == minact_utils.load_filename(selected)["chosen"]


def test_analyze_report():
	with tempfile.TemporaryDirectory() as tmp:
		out = os.path.join(tmp, "report.json")
		filename = write_system(tmp, "jordan.json", {"n": 2, "m": 1, "A": [2, 1, 0, 2], "B": [0, 1]})
		assert cli.cmd_analyze(filename, output = out) == 0
		doc = minact_utils.load_filename(out)
		assert doc["p"] == 1 and doc["max_geo_mult"] == 1
		assert (doc["modes"][0]["alg_mult"], doc["modes"][0]["geo_mult"]) == (2, 1)
		assert doc["certified"] is True

		filename = write_system(tmp, "diag3.json", {"n": 3, "m": 3, "A": [1, 0, 0, 0, 2, 0, 0, 0, 3], "B": [1, 0, 0, 0, 1, 0, 0, 0, 1]})
		text = os.path.join(tmp, "report.txt")
		assert cli.cmd_analyze(filename, fmt = "text", output = text) == 0
		assert "full spark structure:  certified" in open(text).read()


def test_bench_csv():
	with tempfile.TemporaryDirectory() as tmp:
		spec = os.path.join(tmp, "spec.yaml")
		with open(spec, "w") as f:
			f.write("m: 4\nseed: 2\neigenvalues:\n  - {value: 1.0}\n  - {value: -1.0}\nactuators_per_mode: [2, 2]\n")
		outputs = []
		for run_number in range(2):
			out = os.path.join(tmp, "bench%d.csv" % run_number)
			assert cli.cmd_bench(spec, trials = 3, output = out) == 0
			outputs.append(open(out, "rb").read())
		assert outputs[0] == outputs[1]
		assert outputs[0].startswith(b"trial,algorithm,cardinality,optimal,gap,runtime_ms\n")
		with open(spec, "w") as f:
			f.write("m: 1\neigenvalues:\n  - {value: 1.0, alg: 2}\nactuators_per_mode: [1]\nn: 3\n")
		assert run(cli.cmd_bench, spec, trials = 1, output = out) == 65


if __name__ == '__main__':
	failures = doctest.testmod(cli)[0]
	for name, func in sorted(globals().items()):
		if name.startswith("test_") and name != "test_doctests":
			func()
	sys.exit(bool(failures))
