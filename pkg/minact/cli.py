# Copyright (C) 2026  The minact developers
#
# This program is free software; you can redistribute it and/or modify it
# under the terms of the GNU General Public License as published by the
# Free Software Foundation; either version 3 of the License, or (at your
# option) any later version.
#
# This program is distributed in the hope that it will be useful, but
# WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU General
# Public License for more details.
#
# You should have received a copy of the GNU General Public License along
# with this program; if not, write to the Free Software Foundation, Inc.,
# 51 Franklin Street, Fifth Floor, Boston, MA  02110-1301, USA.


#
# =============================================================================
#
#                                   Preamble
#
# =============================================================================
#


"""
Library side of the minact_analyze, minact_select, minact_reduce,
minact_verify and minact_bench programs.

A system file is a JSON document

	{"n": 2, "m": 2, "A": [2, 1, 0, 2], "B": [0, 1, 1, 0]}

holding A (n x n) and B (n x m) in row-major order, optionally with
"name" and "description" strings.  Every index in the documents and in
the printed output is 1-based.

The cmd_*() functions return the process exit code.  Errors are reported
on stderr and mapped to exit codes by exit_code().

Example:

>>> system = system_from_json({"n": 2, "m": 1, "A": [1, 0, 0, 2], "B": [1, 1]})
>>> system_to_json(system)
{'n': 2, 'm': 1, 'A': [1.0, 0.0, 0.0, 2.0], 'B': [1.0, 1.0]}
>>> parse_index_set("3,1", 4)
(0, 2)
"""


import io
import math
import optparse
import sys


import numpy


from . import __author__, __date__, __version__
from . import MinactError
from . import cover
from . import reduction
from . import selector
from . import spectral
from . import utils
from .utils import bench
from .utils import generator


__all__ = [
	"UsageError",
	"NotCertified",
	"exit_code",
	"load_system",
	"system_from_json",
	"system_to_json",
	"cmd_analyze",
	"cmd_select",
	"cmd_reduce",
	"cmd_verify",
	"cmd_bench"
]


#
# =============================================================================
#
#                                  Exit Codes
#
# =============================================================================
#


class UsageError(MinactError, ValueError):
	pass


class NotCertified(MinactError):
	"""
	The full spark structure needed by the set multicover reduction
	could not be certified.
	"""
	pass


EX_OK = 0
EX_VERIFY_FAILED = 5
EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66
EX_SOFTWARE = 70


# checked in order, so subclasses come before their bases
EXIT_CODES = (
	(reduction.Infeasible, 2),
	(reduction.Uncontrollable, 3),
	(NotCertified, 4),
	(selector.StrategyUnavailable, 4),
	(spectral.DecompositionFailed, 6),
	(reduction.ModeTooLarge, 7),
	(cover.StateSpaceTooLarge, 7),
	(cover.InstanceTooLarge, 7),
	(cover.InfeasibleCover, 7),
	(selector.FaultEnumerationTooLarge, 7),
	(generator.ConditioningFailed, 8),
	(UsageError, EX_USAGE),
	(spectral.IndexOutOfRange, EX_USAGE),
	(utils.ParseError, EX_DATAERR),
	(spectral.InvalidInput, EX_DATAERR),
	(reduction.InvalidInstance, EX_DATAERR),
	(generator.SpecError, EX_DATAERR),
	(selector.VerificationFailed, EX_SOFTWARE)
)


def exit_code(exc):
	"""
	The process exit code for the exception exc.

	Example:

	>>> exit_code(reduction.Infeasible("mode 1"))
	2
	>>> exit_code(FileNotFoundError())
	66
	"""
	for cls, code in EXIT_CODES:
		if isinstance(exc, cls):
			return code
	if isinstance(exc, OSError):
		return EX_NOINPUT
	return EX_SOFTWARE


def run(prog, func, *args, **kwargs):
	"""
	Call func(*args, **kwargs) and return its exit code, reporting any
	package error or I/O error on stderr as "prog: message".
	"""
	try:
		return func(*args, **kwargs)
	except (MinactError, OSError) as e:
		sys.stderr.write("%s: %s\n" % (prog, e))
		return exit_code(e)


class OptionParser(optparse.OptionParser):
	"""
	optparse.OptionParser that exits with EX_USAGE on command-line
	errors (optparse's own code, 2, means Infeasible here).
	"""
	def error(self, msg):
		self.print_usage(sys.stderr)
		self.exit(EX_USAGE, "%s: error: %s\n" % (self.get_prog_name(), msg))


def add_tolerance_options(parser):
	defaults = spectral.DEFAULT_TOLERANCES
	parser.add_option("--tol-rank", metavar = "x", type = "float", default = defaults.rank_rel, help = "Relative singular value threshold for numerical rank (default = %default).")
	parser.add_option("--tol-cluster", metavar = "x", type = "float", default = defaults.eig_cluster, help = "Eigenvalue grouping radius relative to max(||A||, 1) (default = %default).")
	parser.add_option("--tol-residual", metavar = "x", type = "float", default = defaults.residual_max, help = "Largest accepted relative Jordan decomposition residual (default = %default).")


def tolerances_from_options(options):
	"""
	Build spectral.Tolerances from the options added by
	add_tolerance_options(), raising UsageError for bad values.
	"""
	try:
		return spectral.Tolerances(eig_cluster = options.tol_cluster, rank_rel = options.tol_rank, residual_max = options.tol_residual)
	except spectral.InvalidInput as e:
		raise UsageError(str(e))


#
# =============================================================================
#
#                                 System Files
#
# =============================================================================
#


def _entries(doc, key, count, filename):
	try:
		values = doc[key]
	except KeyError:
		raise utils.ParseError("missing", filename = filename, field = key)
	if not isinstance(values, list):
		raise utils.ParseError("expected a list of numbers", filename = filename, field = key)
	if len(values) != count:
		raise utils.ParseError("expected %d entries, got %d" % (count, len(values)), filename = filename, field = key)
	for i, x in enumerate(values, 1):
		if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
			raise utils.ParseError("entry %d is not a finite number" % i, filename = filename, field = key)
	return values


def _dimension(doc, key, filename):
	try:
		value = doc[key]
	except KeyError:
		raise utils.ParseError("missing", filename = filename, field = key)
	if isinstance(value, bool) or not isinstance(value, int) or value < 1:
		raise utils.ParseError("expected a positive integer, got %r" % (value,), filename = filename, field = key)
	return value


def system_from_json(doc, filename = None):
	"""
	Build a spectral.LinearSystem from a parsed system document.
	ParseError names the offending field.
	"""
	if not isinstance(doc, dict):
		raise utils.ParseError("expected a JSON object", filename = filename)
	n = _dimension(doc, "n", filename)
	m = _dimension(doc, "m", filename)
	a = numpy.array(_entries(doc, "A", n * n, filename), dtype = float).reshape(n, n)
	b = numpy.array(_entries(doc, "B", n * m, filename), dtype = float).reshape(n, m)
	return spectral.LinearSystem(a, b)


def system_to_json(system, name = None, description = None):
	"""
	The system document of a spectral.LinearSystem.
	"""
	doc = {
		"n": system.n,
		"m": system.m,
		"A": [float(x) for x in system.a.flat],
		"B": [float(x) for x in system.b.flat]
	}
	if name is not None:
		doc["name"] = name
	if description is not None:
		doc["description"] = description
	return doc


def load_system(filename, verbose = False):
	"""
	Read a system file (stdin if filename is None).  Compressed files
	are recognized automatically.
	"""
	return system_from_json(utils.load_filename(filename, verbose = verbose), filename = filename if filename is not None else "stdin")


def parse_index_set(text, m):
	"""
	Parse a comma-separated list of 1-based actuator indices such as
	"1,3,4" into a sorted tuple of 0-based indices.  UsageError is
	raised for malformed text, spectral.IndexOutOfRange for indices
	outside 1..m.
	"""
	try:
		indices = [int(word) - 1 for word in text.split(",") if word.strip()]
	except ValueError:
		raise UsageError("malformed actuator set \"%s\", expected e.g. \"1,3,4\"" % text)
	for j in indices:
		if not 0 <= j < m:
			raise spectral.IndexOutOfRange("actuator index %d out of range 1..%d" % (j + 1, m))
	return tuple(sorted(set(indices)))


#
# =============================================================================
#
#                                    Output
#
# =============================================================================
#


def format_eigenvalue(value):
	"""
	Example:

	>>> format_eigenvalue(complex(2., 0.)), format_eigenvalue(complex(0.5, -1.))
	('2', '0.5-1j')
	"""
	if value.imag == 0.:
		return "%.6g" % value.real
	return "%.6g%+.6gj" % (value.real, value.imag)


def _eigenvalue_json(value):
	return [value.real, value.imag]


def emit(doc, text, fmt, output, verbose = False):
	"""
	Write doc as JSON, or the string text, according to fmt.
	"""
	if fmt == "json":
		if output is None:
			utils.write_text(utils.dumps(doc), None)
		else:
			utils.write_filename(doc, output, verbose = verbose)
	else:
		utils.write_text(text, output, verbose = verbose)


#
# =============================================================================
#
#                                   Commands
#
# =============================================================================
#


def analyze(system, tol = None, verbose = False):
	"""
	The spectral report of system as a JSON-ready dictionary.
	"""
	dec = spectral.decompose(system, tol, verbose = verbose)
	t_sets = reduction.detect_spark_structure(dec, 0, tol)
	doc = {
		"n": dec.n,
		"m": dec.m,
		"p": dec.p,
		"max_geo_mult": dec.max_geo_mult,
		"residual": dec.residual,
		"modes": [{
			"eigenvalue": _eigenvalue_json(mode.eigenvalue),
			"conjugate_pair": mode.conjugate_of is not None,
			"alg_mult": mode.alg_mult,
			"geo_mult": mode.geo_mult,
			"zero_rows": [r + 1 for r in mode.zero_rows],
			"blocks": list(mode.blocks)
		} for mode in dec.modes],
		"certified": t_sets is not None
	}
	if t_sets is not None:
		doc["actuator_sets"] = [[j + 1 for j in t] for t in t_sets]
	return doc


def cmd_analyze(filename, tol = None, fmt = "json", output = None, verbose = False):
	"""
	Report the eigenvalues of A with their multiplicities, the zero row
	indices of J - lambda I, G(A) and whether the full spark structure
	holds for f = 0.
	"""
	doc = analyze(load_system(filename, verbose = verbose), tol, verbose = verbose)
	text = io.StringIO()
	text.write("n = %d, m = %d, p = %d, G(A) = %d, residual = %.3g\n" % (doc["n"], doc["m"], doc["p"], doc["max_geo_mult"], doc["residual"]))
	text.write("%4s  %-24s  %4s  %4s  %-12s  %s\n" % ("mode", "eigenvalue", "a_i", "g_i", "G_i", "blocks"))
	for i, mode in enumerate(doc["modes"], 1):
		value = format_eigenvalue(complex(*mode["eigenvalue"]))
		if mode["conjugate_pair"]:
			value += " (+conj)"
		text.write("%4d  %-24s  %4d  %4d  %-12s  %s\n" % (i, value, mode["alg_mult"], mode["geo_mult"], ",".join(map(str, mode["zero_rows"])), ",".join(map(str, mode["blocks"]))))
	text.write("full spark structure:  %s\n" % ("certified" if doc["certified"] else "not certified"))
	emit(doc, text.getvalue(), fmt, output, verbose = verbose)
	return EX_OK


def format_result(result):
	"""
	Fixed-width text rendering of a selector.SelectionResult.
	"""
	text = io.StringIO()
	text.write("%-14s %s\n" % ("actuators", " ".join(str(j + 1) for j in result.chosen)))
	text.write("%-14s %d\n" % ("cardinality", result.cardinality))
	text.write("%-14s %s\n" % ("method", result.method))
	text.write("%-14s %s\n" % ("optimal", "true" if result.optimal else "false"))
	text.write("%-14s %d\n" % ("fault budget", result.fault_budget))
	if result.certificate is not None:
		text.write("%-24s  %s\n" % ("eigenvalue", "PBH margin"))
		for row in result.certificate:
			text.write("%-24s  %.6g\n" % (format_eigenvalue(row.eigenvalue), row.margin))
	return text.getvalue()


def cmd_select(filename, faults = 0, strategy = "auto", tol = None, enum_cap = reduction.DEFAULT_ENUM_CAP, state_cap = cover.DEFAULT_STATE_CAP, fault_cap = selector.DEFAULT_FAULT_CAP, fmt = "json", output = None, verbose = False):
	"""
	Select a minimum set of actuators tolerating faults failures.
	"""
	system = load_system(filename, verbose = verbose)
	result = selector.select(system, faults, strategy, tol, enum_cap = enum_cap, state_cap = state_cap, fault_cap = fault_cap, verbose = verbose)
	emit(result.to_json(), format_result(result), fmt, output, verbose = verbose)
	return EX_OK


def cmd_reduce(filename, faults = 0, tol = None, enum_cap = reduction.DEFAULT_ENUM_CAP, output = None, verbose = False):
	"""
	Emit the set multicover instance of the system, or exit with
	NotCertified's code if the full spark structure does not hold.
	"""
	system = load_system(filename, verbose = verbose)
	dec = spectral.decompose(system, tol, verbose = verbose)
	reduction.check_fault_budget(dec, faults)
	t_sets = reduction.detect_spark_structure(dec, faults, tol, enum_cap)
	if t_sets is None:
		raise NotCertified("the full spark structure does not hold for f = %d, the multicover reduction does not apply" % faults)
	emit(reduction.to_cover_instance(dec, t_sets, faults).to_json(), None, "json", output, verbose = verbose)
	return EX_OK


def cmd_verify(filename, actuators, faults = 0, tol = None, fault_cap = selector.DEFAULT_FAULT_CAP, fmt = "json", output = None, verbose = False):
	"""
	Check that the actuator set actuators (text such as "1,3,4")
	keeps the system controllable under every faults-element failure.
	Returns 0 on success and 5 on failure.
	"""
	system = load_system(filename, verbose = verbose)
	s = parse_index_set(actuators, system.m)
	report = selector.verify(system, s, faults, tol, fault_cap, verbose = verbose)
	text = io.StringIO()
	text.write("%s\n" % ("pass" if report.passed else "fail"))
	if report.violation is not None:
		value, failed = report.violation
		text.write("eigenvalue %s uncontrollable with actuators %s removed\n" % (format_eigenvalue(value), ",".join(str(j + 1) for j in failed) or "(none)"))
	text.write("%-24s  %4s  %s\n" % ("eigenvalue", "rank", "PBH margin"))
	for row in report.margins:
		text.write("%-24s  %4d  %.6g\n" % (format_eigenvalue(row.eigenvalue), row.rank, row.margin))
	emit(report.to_json(), text.getvalue(), fmt, output, verbose = verbose)
	return EX_OK if report.passed else EX_VERIFY_FAILED


def cmd_bench(filename, trials = 10, algorithms = ("ilp", "dp", "greedy"), faults = None, seed = None, brute_cap = 10, timing = False, jobs = 1, tol = None, fmt = "csv", output = None, verbose = False):
	"""
	Run the benchmark harness on the generator specification in
	filename.  The summary goes to stderr for csv and text output and
	into the document for json output.
	"""
	if filename is None:
		spec = generator.GeneratorSpec.load(sys.stdin)
	else:
		spec = generator.GeneratorSpec.load_filename(filename)
	if seed is not None:
		spec.seed = seed
	rows = bench.run_bench(spec, trials, algorithms, faults = faults, brute_cap = brute_cap, timing = timing, jobs = jobs, tol = tol, verbose = verbose)
	summary = bench.summarize(rows)
	if fmt == "json":
		emit({"rows": [bench.row_to_json(row) for row in rows], "summary": summary}, None, fmt, output, verbose = verbose)
	else:
		text = io.StringIO()
		(bench.write_csv if fmt == "csv" else bench.write_text)(rows, text)
		utils.write_text(text.getvalue(), output, verbose = verbose)
		sys.stderr.write("%d trial(s), %d failed run(s)\n" % (summary["trials"], summary["errors"]))
		if summary["greedy_within_hp"] is not None:
			sys.stderr.write("greedy within H(p) of the optimum on %.1f%% of trials\n" % (100. * summary["greedy_within_hp"]))
	return EX_OK
