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
Benchmark harness:  generate systems from a GeneratorSpec, run the
selection algorithms on each, and compare them with the exhaustive
optimum.

Each trial t (numbered from 1) draws its system from the random stream
seeded with (spec.seed, t), so a trial is reproducible on its own and the
output does not depend on how trials are spread over worker processes.
Run times are only recorded on request, which keeps the default output
byte-identical between runs.
"""


import concurrent.futures
import csv
import sys
import time
from collections import namedtuple


from tqdm import tqdm


from .. import __author__, __date__, __version__
from .. import MinactError
from .. import cover
from .. import reduction
from .. import selector
from .. import spectral
from . import generator


__all__ = [
	"ALGORITHMS",
	"BenchRow",
	"run_bench",
	"summarize",
	"write_csv"
]


# algorithm name --> selector strategy
ALGORITHMS = {
	"ilp": "ilp",
	"dp": "multicover",
	"greedy": "greedy",
	"brute": "brute"
}

CSV_HEADER = ("trial", "algorithm", "cardinality", "optimal", "gap", "runtime_ms")


BenchRow = namedtuple("BenchRow", ("trial", "algorithm", "cardinality", "optimal", "gap", "runtime_ms", "p", "k", "coverage", "error"))
BenchRow.__doc__ = """
One (trial, algorithm) result.  cardinality, optimal, gap and runtime_ms
are None when not available;  gap is the cardinality divided by the
exhaustive optimum.  p is the number of modes, k the largest number of
modes one actuator covers in the reduced instance (None if the full spark
structure was not certified), coverage the multicover requirements, and
error the name of the exception that stopped the algorithm, if any.
"""


#
# =============================================================================
#
#                                    Trials
#
# =============================================================================
#


def run_trial(spec, trial, algorithms, faults, brute_cap = 10, timing = False, tol = None):
	"""
	Run every algorithm in algorithms on the system of trial number
	trial.  Returns a list of BenchRow, one per algorithm, in the order
	of algorithms.
	"""
	try:
		system = generator.generate(spec, seed = (spec.seed, trial))
	except generator.ConditioningFailed as e:
		return [BenchRow(trial, name, None, None, None, None, None, None, None, type(e).__name__) for name in algorithms]

	p = k = coverage = None
	try:
		dec = spectral.decompose(system, tol)
		p = dec.p
		t_sets = reduction.detect_spark_structure(dec, faults, tol)
		if t_sets is not None:
			inst = reduction.to_cover_instance(dec, t_sets, faults)
			k = inst.k
			coverage = list(inst.coverage)
	except MinactError:
		pass

	reference = None
	if system.m <= brute_cap:
		try:
			reference = selector.brute_force_select(system, faults, tol).cardinality
		except MinactError:
			pass

	rows = []
	for name in algorithms:
		start = time.perf_counter()
		try:
			result = selector.select(system, faults, ALGORITHMS[name], tol)
		except MinactError as e:
			rows.append(BenchRow(trial, name, None, None, None, None, p, k, coverage, type(e).__name__))
			continue
		elapsed = (time.perf_counter() - start) * 1e3 if timing else None
		gap = result.cardinality / reference if reference else None
		rows.append(BenchRow(trial, name, result.cardinality, result.optimal, gap, elapsed, p, k, coverage, None))
	return rows


def _run_trial_star(args):
	return run_trial(*args)


def run_bench(spec, trials, algorithms = ("ilp", "dp", "greedy"), faults = None, brute_cap = 10, timing = False, jobs = 1, tol = None, verbose = False):
	"""
	Run trials trials of spec.  faults defaults to spec.faults.  With
	jobs > 1 the trials are spread over a process pool;  the rows are
	returned in trial order either way.
	"""
	for name in algorithms:
		if name not in ALGORITHMS:
			raise ValueError("unrecognized algorithm '%s', expected one of %s" % (name, ", ".join(sorted(ALGORITHMS))))
	if faults is None:
		faults = spec.faults
	args = [(spec, trial, tuple(algorithms), faults, brute_cap, timing, tol) for trial in range(1, trials + 1)]
	if verbose:
		sys.stderr.write("running %d trial(s) of %s on %d worker(s)\n" % (trials, ", ".join(algorithms), jobs))
	if jobs > 1:
		with concurrent.futures.ProcessPoolExecutor(max_workers = jobs) as executor:
			results = list(tqdm(executor.map(_run_trial_star, args), total = trials, desc = "trials", disable = not verbose))
	else:
		results = [run_trial(*a) for a in tqdm(args, desc = "trials", disable = not verbose)]
	return [row for rows in results for row in rows]


#
# =============================================================================
#
#                                    Output
#
# =============================================================================
#


def summarize(rows):
	"""
	Summary statistics of a benchmark run:  the number of trials and of
	failed runs, the mean gap of each algorithm, and the fraction of
	greedy results within H(p) and within H(min(k, p)) of the
	exhaustive optimum.

	Example:

	>>> rows = [BenchRow(1, "greedy", 3, False, 1.5, None, 2, 2, [1, 1], None)]
	>>> summary = summarize(rows)
	>>> summary["greedy_within_hp"], summary["greedy_within_hk"]
	(1.0, 1.0)
	"""
	summary = {
		"trials": len(set(row.trial for row in rows)),
		"errors": sum(1 for row in rows if row.error is not None),
		"mean_gap": {}
	}
	for name in sorted(set(row.algorithm for row in rows)):
		gaps = [row.gap for row in rows if row.algorithm == name and row.gap is not None]
		summary["mean_gap"][name] = sum(gaps) / len(gaps) if gaps else None
	greedy = [row for row in rows if row.algorithm == "greedy" and row.gap is not None]
	if greedy:
		summary["greedy_within_hp"] = sum(1 for row in greedy if row.gap <= cover.harmonic(row.p) + 1e-12) / len(greedy)
		summary["greedy_within_hk"] = sum(1 for row in greedy if row.k is not None and row.gap <= cover.harmonic(min(row.k, row.p)) + 1e-12) / len(greedy)
	else:
		summary["greedy_within_hp"] = summary["greedy_within_hk"] = None
	return summary


def _format(value):
	if value is None:
		return ""
	if isinstance(value, bool):
		return "true" if value else "false"
	if isinstance(value, float):
		return repr(round(value, 6))
	return str(value)


def row_to_json(row):
	doc = dict((key, getattr(row, key)) for key in BenchRow._fields)
	for key in ("gap", "runtime_ms"):
		if doc[key] is not None:
			doc[key] = round(doc[key], 6)
	return doc


def write_csv(rows, fileobj):
	"""
	Write rows to the text stream fileobj as CSV with the header
	trial,algorithm,cardinality,optimal,gap,runtime_ms.

	Example:

	>>> import io
	>>> f = io.StringIO()
	>>> write_csv([BenchRow(1, "dp", 2, True, 1.0, None, 2, 1, [1, 1], None)], f)
	>>> print(f.getvalue(), end = "")
	trial,algorithm,cardinality,optimal,gap,runtime_ms
	1,dp,2,true,1.0,
	"""
	writer = csv.writer(fileobj, lineterminator = "\n")
	writer.writerow(CSV_HEADER)
	for row in rows:
		writer.writerow([_format(getattr(row, key)) for key in CSV_HEADER])


def write_text(rows, fileobj):
	"""
	Write rows as a fixed-width table.
	"""
	fmt = "%6s  %-7s  %11s  %7s  %9s  %10s  %s\n"
	fileobj.write(fmt % ("trial", "algo", "cardinality", "optimal", "gap", "runtime_ms", "note"))
	for row in rows:
		fileobj.write(fmt % (tuple(_format(getattr(row, key)) for key in CSV_HEADER) + (row.error or "",)))
