#!/usr/bin/env python3

import doctest
import os
import sys
import tempfile

from minact import utils as minact_utils


def test_doctests():
	assert doctest.testmod(minact_utils).failed == 0


def test_compressed_round_trip():
	doc = {"universe": 2, "coverage": [1, 2], "sets": [[1], [1, 2], [2]]}
	with tempfile.TemporaryDirectory() as tmp:
		for ext in ("", ".gz", ".bz2", ".xz"):
			filename = os.path.join(tmp, "instance.json" + ext)
			minact_utils.write_filename(doc, filename, trap_signals = None)
			assert minact_utils.load_filename(filename) == doc
			assert not os.path.exists(filename + "~")
		# fixed gzip header, identical bytes every time
		first = open(os.path.join(tmp, "instance.json.gz"), "rb").read()
		minact_utils.write_filename(doc, os.path.join(tmp, "instance.json.gz"), trap_signals = None)
		assert open(os.path.join(tmp, "instance.json.gz"), "rb").read() == first


def test_parse_error_location():
	with tempfile.TemporaryDirectory() as tmp:
		filename = os.path.join(tmp, "broken.json")
		with open(filename, "w") as f:
			f.write('{\n  "n": 1,\n  "m": 1\n  "A": [1]\n}\n')
		try:
			minact_utils.load_filename(filename)
		except minact_utils.ParseError as e:
			assert e.line == 4 and e.filename == filename
			assert "line 4" in str(e)
		else:
			raise AssertionError("ParseError not raised")


def test_tildefile_cleanup():
	with tempfile.TemporaryDirectory() as tmp:
		filename = os.path.join(tmp, "result.json")
		minact_utils.write_filename({"chosen": [1]}, filename, trap_signals = None)
		try:
			with minact_utils.tildefile(filename) as f:
				f.write(b"partial")
				raise RuntimeError
		except RuntimeError:
			pass
		assert not os.path.exists(filename + "~")
		assert minact_utils.load_filename(filename) == {"chosen": [1]}


def test_write_text():
	with tempfile.TemporaryDirectory() as tmp:
		filename = os.path.join(tmp, "table.txt")
		minact_utils.write_text("a,b\n1,2\n", filename, trap_signals = None)
		assert open(filename).read() == "a,b\n1,2\n"


if __name__ == '__main__':
	failures = doctest.testmod(minact_utils)[0]
	for name, func in sorted(globals().items()):
		if name.startswith("test_") and name != "test_doctests":
			func()
	sys.exit(bool(failures))
