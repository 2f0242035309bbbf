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
End-to-end actuator selection.

select() takes a LinearSystem and a fault budget f and returns a smallest
set of actuators S such that (A, B_(S - F)) is controllable for every F
subset of S with |F| = f.  The system is decomposed, the necessary
condition g_i + f <= m is checked, and then either the set multicover path
(when the full spark structure is certified) or the binary program over the
admissible subsets of every mode is solved.  Every answer is
re-checked with verify() before it is returned.

Example:

>>> import numpy
>>> from minact.spectral import LinearSystem
>>> result = select(LinearSystem(numpy.diag([1., 2.]), [[1., 1., 0.], [1., 0., 1.]]))
>>> result.chosen, result.method, result.optimal
((0,), 'multicover_dp', True)
>>> verify(LinearSystem(numpy.diag([1., 2.]), numpy.eye(2)), [0, 1], 1).violation
((1+0j), (0,))
"""


import itertools
import math
import sys


from tqdm import tqdm


from . import __author__, __date__, __version__
from . import MinactError
from . import cover
from . import ilp
from . import reduction
from . import spectral
from .reduction import feasibility


__all__ = [
	"SelectionResult",
	"VerifyReport",
	"select",
	"verify",
	"feasibility",
	"brute_force_select"
]


DEFAULT_FAULT_CAP = 10**6

METHODS = ("ilp_exact", "multicover_dp", "multicover_greedy", "brute_force")
STRATEGIES = ("auto", "ilp", "multicover", "greedy", "brute")


#
# =============================================================================
#
#                                  Exceptions
#
# =============================================================================
#


class StrategyUnavailable(MinactError):
	"""
	The requested strategy needs the set multicover reduction but the
	full spark structure could not be certified.
	"""
	pass


class FaultEnumerationTooLarge(MinactError):
	pass


class VerificationFailed(MinactError):
	"""
	A selection produced by one of the solvers failed the independent
	PBH check.  This indicates numerical trouble, for example
	tolerances too loose for the system at hand.
	"""
	def __init__(self, msg, report = None):
		super(VerificationFailed, self).__init__(msg)
		self.report = report


#
# =============================================================================
#
#                                   Results
#
# =============================================================================
#


class SelectionResult(object):
	"""
	A selected set of actuators.

	chosen is the sorted tuple of 0-based actuator indices, method one
	of METHODS, optimal True if the method guarantees minimum
	cardinality, fault_budget the f the set was selected for, and
	certificate, once verified, the list of spectral.PBHRow tuples
	holding the smallest PBH margin of every mode over all tested fault
	sets.
	"""
	def __init__(self, chosen, method, optimal, fault_budget = 0, certificate = None):
		if method not in METHODS:
			raise ValueError("unrecognized selection method '%s'" % method)
		if optimal and method == "multicover_greedy":
			raise ValueError("greedy selections are not certified optimal")
		self.chosen = tuple(sorted(set(int(j) for j in chosen)))
		self.method = method
		self.optimal = bool(optimal)
		self.fault_budget = fault_budget
		self.certificate = certificate

	@property
	def cardinality(self):
		return len(self.chosen)

	def to_json(self):
		"""
		The result document, with 1-based actuator indices.
		"""
		doc = {
			"chosen": [j + 1 for j in self.chosen],
			"cardinality": self.cardinality,
			"method": self.method,
			"optimal": self.optimal,
			"fault_budget": self.fault_budget
		}
		if self.certificate is not None:
			doc["certificate"] = [{"eigenvalue": [row.eigenvalue.real, row.eigenvalue.imag], "margin": row.margin} for row in self.certificate]
		return doc

	def __repr__(self):
		return "SelectionResult(chosen=%s, method='%s', optimal=%s, fault_budget=%d)" % (self.chosen, self.method, self.optimal, self.fault_budget)


class VerifyReport(object):
	"""
	The outcome of verify().  passed is True if every tested fault set
	leaves the system controllable.  margins is the list of
	spectral.PBHRow tuples, one per mode, holding the lowest rank and
	the smallest PBH margin seen.  violation is None or the first
	(eigenvalue, fault set) pair that failed.  fault_sets is the number
	of fault sets examined.
	"""
	def __init__(self, passed, margins, violation, fault_sets):
		self.passed = passed
		self.margins = margins
		self.violation = violation
		self.fault_sets = fault_sets

	def to_json(self):
		doc = {
			"passed": self.passed,
			"fault_sets": self.fault_sets,
			"margins": [{"eigenvalue": [row.eigenvalue.real, row.eigenvalue.imag], "rank": row.rank, "margin": row.margin} for row in self.margins]
		}
		if self.violation is not None:
			value, faults = self.violation
			doc["violation"] = {"eigenvalue": [value.real, value.imag], "faults": [j + 1 for j in faults]}
		return doc


#
# =============================================================================
#
#                                 Verification
#
# =============================================================================
#


def verify(system, s, f = 0, tol = None, cap = DEFAULT_FAULT_CAP, verbose = False):
	"""
	Check that (A, B_(s - F)) passes the PBH test for every F subset of s
	with |F| = min(f, |s|).  Fault sets are tried in lexicographic order
	and the search stops at the first violation.  Only one eigenvalue of
	each conjugate pair is tested.  Returns a VerifyReport.
	FaultEnumerationTooLarge is raised if there are more than cap fault
	sets.

	Example:

	>>> import numpy
	>>> from minact.spectral import LinearSystem
	>>> system = LinearSystem(numpy.diag([1., 2.]), numpy.eye(2))
	>>> verify(system, [0, 1]).passed
	True
	>>> report = verify(LinearSystem([[1.]], [[1., 1.]]), [0, 1], 1)
	>>> report.passed, report.fault_sets
	(True, 2)
	"""
	if tol is None:
		tol = spectral.DEFAULT_TOLERANCES
	if f < 0:
		raise ValueError("fault budget must be non-negative, got %d" % f)
	s = spectral.check_index_set(s, system.m)
	size = min(f, len(s))
	count = math.comb(len(s), size)
	if count > cap:
		raise FaultEnumerationTooLarge("C(%d, %d) = %d fault sets exceed the cap of %d" % (len(s), size, count, cap))
	eigenvalues = [cluster.value for cluster in spectral.distinct_eigenvalues(system.a, tol) if cluster.partner is None]

	margins = None
	tested = 0
	for faults in tqdm(itertools.combinations(s, size), total = count, desc = "fault sets", disable = not verbose):
		tested += 1
		rows = spectral.pbh_margins(system, [j for j in s if j not in faults], tol, eigenvalues = eigenvalues)
		if margins is None:
			margins = rows
		else:
			margins = [spectral.PBHRow(old.eigenvalue, min(old.rank, new.rank), min(old.margin, new.margin)) for old, new in zip(margins, rows)]
		for row in rows:
			if row.rank < system.n:
				if verbose:
					sys.stderr.write("eigenvalue %s loses controllability when actuators %s fail\n" % (row.eigenvalue, [j + 1 for j in faults]))
				return VerifyReport(False, margins, (row.eigenvalue, faults), tested)
	return VerifyReport(True, margins, None, tested)


#
# =============================================================================
#
#                                  Selection
#
# =============================================================================
#


def _certify(system, result, tol, fault_cap, verbose):
	report = verify(system, result.chosen, result.fault_budget, tol, fault_cap, verbose = verbose)
	if not report.passed:
		value, faults = report.violation
		raise VerificationFailed("%s selection %s fails at eigenvalue %s with actuators %s removed" % (result.method, [j + 1 for j in result.chosen], value, [j + 1 for j in faults]), report = report)
	result.certificate = report.margins
	return result


def _require_tolerant(system, dec, f, tol, fault_cap):
	# raise Uncontrollable naming the mode if not even all m actuators
	# tolerate f faults
	report = verify(system, range(system.m), f, tol, fault_cap)
	if not report.passed:
		value, faults = report.violation
		i = min(range(dec.p), key = lambda i: abs(dec.modes[i].eigenvalue - value))
		raise reduction.Uncontrollable("mode %d (eigenvalue %s) is not controllable with actuators %s removed, even using all %d actuators" % (i + 1, dec.modes[i].eigenvalue, [j + 1 for j in faults], system.m), mode = i)


def brute_force_select(system, f = 0, tol = None, cap = cover.BRUTE_FORCE_CAP, fault_cap = DEFAULT_FAULT_CAP, verbose = False):
	"""
	Reference oracle:  the first actuator set, in order of increasing
	cardinality then lexicographically, that passes verify().  Raises
	Uncontrollable if not even the full set passes and
	cover.InstanceTooLarge if m exceeds cap.

	Example:

	>>> import numpy
	>>> from minact.spectral import LinearSystem
	>>> brute_force_select(LinearSystem(numpy.eye(2), [[1., 0., 1.], [0., 1., 1.]])).chosen
	(0, 1)
	"""
	if tol is None:
		tol = spectral.DEFAULT_TOLERANCES
	m = system.m
	if m > cap:
		raise cover.InstanceTooLarge("exhaustive search is limited to %d actuators, got %d" % (cap, m))
	# a superset of a passing set passes
	if not verify(system, range(m), f, tol, fault_cap).passed:
		raise reduction.Uncontrollable("no set of actuators tolerates %d fault(s)" % f)
	for size in tqdm(range(m + 1), desc = "cardinality", disable = not verbose):
		for s in itertools.combinations(range(m), size):
			if verify(system, s, f, tol, fault_cap).passed:
				return SelectionResult(s, "brute_force", True, f)
	raise AssertionError("the full actuator set stopped passing")


def select(system, f = 0, strategy = "auto", tol = None, enum_cap = reduction.DEFAULT_ENUM_CAP, state_cap = cover.DEFAULT_STATE_CAP, fault_cap = DEFAULT_FAULT_CAP, verbose = False):
	"""
	Select a minimum set of actuators for system tolerating f faults.

	strategy is one of

		auto		the multicover dynamic program if the full
				spark structure is certified (and its state
				space fits state_cap), otherwise the binary
				program
		ilp		the binary program
		multicover	the multicover dynamic program, or
				StrategyUnavailable
		greedy		the greedy multicover, or StrategyUnavailable
		brute		exhaustive search with the PBH test

	The admissible subsets W are only enumerated when the binary program
	is used.  With f > 0 a mode may have no full spark (g_i + f)-subset
	even though the full actuator set tolerates f faults (repeated
	columns of B-bar do this);  the answer then comes from
	brute_force_select() and has method "brute_force".

	Raises reduction.Infeasible if g_i + f > m for some mode,
	reduction.Uncontrollable if no actuator set works, not even all m, and
	VerificationFailed if the answer does not pass verify().  The
	returned SelectionResult carries the verification margins in
	.certificate.

	Example:

	>>> import numpy
	>>> from minact.spectral import LinearSystem
	>>> select(LinearSystem(numpy.diag([1., 2., 3.]), numpy.eye(3))).chosen
	(0, 1, 2)
	>>> select(LinearSystem([[1.]], [[1., 1.]]), 1).chosen
	(0, 1)
	>>> select(LinearSystem([[1.]], [[1.]]), 1)
	Traceback (most recent call last):
	    ...
	minact.reduction.Infeasible: mode 1 (eigenvalue (1+0j)) needs g_i + f = 2 actuators but only m = 1 exist
	"""
	if strategy not in STRATEGIES:
		raise ValueError("unrecognized strategy '%s', expected one of %s" % (strategy, ", ".join(STRATEGIES)))
	if f < 0:
		raise ValueError("fault budget must be non-negative, got %d" % f)
	if tol is None:
		tol = spectral.DEFAULT_TOLERANCES

	dec = spectral.decompose(system, tol, verbose = verbose)
	reduction.check_fault_budget(dec, f)
	if strategy == "brute":
		return _certify(system, brute_force_select(system, f, tol, fault_cap = fault_cap, verbose = verbose), tol, fault_cap, verbose)

	# the multicover path never needs W
	result = None
	if strategy != "ilp":
		t_sets = reduction.detect_spark_structure(dec, f, tol, enum_cap)
		if verbose:
			sys.stderr.write("full spark structure %s\n" % ("certified" if t_sets is not None else "not certified"))
		if t_sets is None:
			if strategy != "auto":
				_require_tolerant(system, dec, f, tol, fault_cap)
				raise StrategyUnavailable("strategy '%s' needs a certified full spark structure" % strategy)
		else:
			inst = reduction.to_cover_instance(dec, t_sets, f)
			if strategy == "greedy":
				result = SelectionResult(cover.greedy_multicover(inst, verbose = verbose).chosen, "multicover_greedy", False, f)
			else:
				try:
					result = SelectionResult(cover.exact_multicover_dp(inst, state_cap, verbose = verbose).chosen, "multicover_dp", True, f)
				except cover.StateSpaceTooLarge:
					if strategy != "auto":
						raise
					if verbose:
						sys.stderr.write("multicover state space too large, using the binary program\n")
	if result is None:
		if f:
			try:
				sel = reduction.build_robust(dec, f, tol, enum_cap, verbose = verbose)
			except reduction.Uncontrollable:
				# full spark subsets are sufficient, not necessary
				_require_tolerant(system, dec, f, tol, fault_cap)
				if verbose:
					sys.stderr.write("no full spark subsets but all actuators tolerate %d fault(s), using exhaustive search\n" % f)
				return _certify(system, brute_force_select(system, f, tol, fault_cap = fault_cap, verbose = verbose), tol, fault_cap, verbose)
		else:
			sel = reduction.build_nominal(dec, tol, enum_cap, verbose = verbose)
		result = ilp.solve_exact(ilp.build_model(sel), verbose = verbose)
	return _certify(system, result, tol, fault_cap, verbose)
