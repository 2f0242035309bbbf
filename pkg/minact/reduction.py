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
Construction of the per-mode selection matrices and of the set multicover
instance.

For mode i with geometric multiplicity g_i, the rows of B-bar = P^-1 B that
correspond to the zero rows of J - lambda_i I form a g_i x m block.  A set
of actuators S keeps mode i controllable exactly when the columns S of that
block have rank g_i.  build_nominal() lists every g_i-subset with that
property as a binary row of the matrix W^(i);  build_robust() lists every
(g_i + f)-subset whose columns form a full spark frame, which is the
condition for mode i to survive the loss of any f of them.

When every block is zero outside a column set T_i and full spark on T_i,
the selection problem is a set multicover problem over the modes:
actuator j covers mode i when j is in T_i, and mode i must be covered g_i
+ f times.  detect_spark_structure() certifies that structure and
to_cover_instance() emits the instance.

Example:

>>> from minact.spectral import LinearSystem, decompose
>>> import numpy
>>> dec = decompose(LinearSystem(numpy.diag([1., 2.]), numpy.eye(2)))
>>> sel = build_nominal(dec)
>>> [ms.subsets for ms in sel.per_mode]
[((0,),), ((1,),)]
>>> t_sets = detect_spark_structure(dec)
>>> t_sets
[(0,), (1,)]
>>> to_cover_instance(dec, t_sets).to_json()
{'universe': 2, 'coverage': [1, 1], 'sets': [[1], [2]]}
"""


import itertools
import math
import sys


import numpy
from tqdm import tqdm


from . import __author__, __date__, __version__
from . import MinactError
from . import spectral


__all__ = [
	"SelectionMatrices",
	"CoverInstance",
	"build_nominal",
	"build_robust",
	"feasibility",
	"check_fault_budget",
	"detect_spark_structure",
	"to_cover_instance",
	"compute_k"
]


DEFAULT_ENUM_CAP = 10**7


#
# =============================================================================
#
#                                  Exceptions
#
# =============================================================================
#


class Uncontrollable(MinactError):
	"""
	Some mode cannot be made controllable by any admissible actuator
	subset, so no selection exists even when every actuator is used.
	The .mode attribute is the index of the offending mode.
	"""
	def __init__(self, msg, mode = None):
		super(Uncontrollable, self).__init__(msg)
		self.mode = mode


class Infeasible(MinactError):
	"""
	The fault budget cannot be met:  g_i + f > m for some mode i.  The
	.mode attribute is the index of the first such mode.
	"""
	def __init__(self, msg, mode = None):
		super(Infeasible, self).__init__(msg)
		self.mode = mode


class ModeTooLarge(MinactError):
	"""
	Subset enumeration for a mode would exceed the configured cap.
	"""
	pass


class InvalidInstance(MinactError, ValueError):
	"""
	A cover instance is malformed.
	"""
	pass


#
# =============================================================================
#
#                              Selection Matrices
#
# =============================================================================
#


class ModeSelection(object):
	"""
	The admissible actuator subsets of one mode.  subsets is a
	lexicographically sorted tuple of index tuples, all of length
	required;  w is the corresponding read-only binary matrix W^(i), one
	row per subset, m columns.
	"""
	def __init__(self, mode, subsets, required, m):
		self.mode = mode
		self.subsets = tuple(sorted(set(tuple(sorted(s)) for s in subsets)))
		self.required = required
		if len(self.subsets) != len(subsets):
			raise ValueError("duplicate admissible subsets for mode %d" % (mode + 1))
		if any(len(s) != required for s in self.subsets):
			raise ValueError("admissible subsets of mode %d must have %d elements" % (mode + 1, required))
		w = numpy.zeros((len(self.subsets), m), dtype = numpy.uint8)
		for row, s in enumerate(self.subsets):
			w[row, list(s)] = 1
		w.flags.writeable = False
		self.w = w

	@property
	def rows(self):
		"""
		alpha_i (nominal) or beta_i (robust), the number of rows of
		W^(i).
		"""
		return len(self.subsets)

	def __repr__(self):
		return "ModeSelection(mode=%d, required=%d, rows=%d)" % (self.mode, self.required, self.rows)


class SelectionMatrices(object):
	"""
	The output of build_nominal() and build_robust():  one ModeSelection
	per mode in per_mode, the fault budget f (0 for the nominal
	problem), and the number of actuators m.
	"""
	def __init__(self, per_mode, fault_budget, m):
		self.per_mode = tuple(per_mode)
		self.fault_budget = fault_budget
		self.m = m
		for ms in self.per_mode:
			if ms.rows < 1:
				raise ValueError("mode %d has no admissible subsets" % (ms.mode + 1))

	@property
	def p(self):
		return len(self.per_mode)

	def __repr__(self):
		return "SelectionMatrices(p=%d, m=%d, f=%d, rows=%s)" % (self.p, self.m, self.fault_budget, [ms.rows for ms in self.per_mode])


def _check_enumeration(dec, i, size, cap):
	count = math.comb(dec.m, size)
	if count > cap:
		raise ModeTooLarge("mode %d needs C(%d, %d) = %d subset tests, more than the cap of %d" % (i + 1, dec.m, size, count, cap))
	return count


def _column_support(block, tol):
	# columns that are numerically zero relative to the block
	norms = numpy.linalg.norm(block, axis = 0)
	scale = norms.max() if norms.size else 0.
	return norms > tol.rank_rel * scale if scale > 0. else numpy.zeros(norms.shape, dtype = bool)


def _enumerate(dec, i, size, admissible, cap, tol, verbose):
	count = _check_enumeration(dec, i, size, cap)
	block = numpy.where(_column_support(dec.b_bar_rows(i), tol), dec.b_bar_rows(i), 0.)
	subsets = [s for s in tqdm(itertools.combinations(range(dec.m), size), total = count, desc = "mode %d" % (i + 1), disable = not verbose) if admissible(block[:, list(s)])]
	if verbose:
		sys.stderr.write("mode %d/%d:  %d admissible subset(s) of size %d\n" % (i + 1, dec.p, len(subsets), size))
	if not subsets:
		mode = dec.modes[i]
		raise Uncontrollable("no %d actuator(s) make mode %d (eigenvalue %s) controllable" % (size, i + 1, mode.eigenvalue), mode = i)
	return subsets


def build_nominal(dec, tol = None, cap = DEFAULT_ENUM_CAP, verbose = False):
	"""
	Build W^(i) for every mode of the decomposition dec:  the rows are
	all the g_i-subsets S of the actuators with rank(B-bar[G_i, S]) = g_i.
	Raises Uncontrollable if some mode has no such subset and
	ModeTooLarge if C(m, g_i) exceeds cap.

	Example:

	>>> from minact.spectral import LinearSystem, decompose
	>>> import numpy
	>>> dec = decompose(LinearSystem(numpy.eye(2), [[1., 0., 1.], [0., 1., 1.]]))
	>>> sel = build_nominal(dec)
	>>> sel.per_mode[0].w
	array([[1, 1, 0],
	       [1, 0, 1],
	       [0, 1, 1]], dtype=uint8)
	"""
	if tol is None:
		tol = spectral.DEFAULT_TOLERANCES
	per_mode = []
	for i, mode in enumerate(dec.modes):
		g = mode.geo_mult
		subsets = _enumerate(dec, i, g, lambda sub: spectral.rank_of(sub, tol) == g, cap, tol, verbose)
		per_mode.append(ModeSelection(i, subsets, g, dec.m))
	return SelectionMatrices(per_mode, 0, dec.m)


def feasibility(dec, f):
	"""
	Check the necessary condition g_i + f <= m for every mode.  Returns
	(True, None) or (False, i) with i the first violating mode.

	Example:

	>>> import numpy
	>>> from minact.spectral import LinearSystem, decompose
	>>> feasibility(decompose(LinearSystem(numpy.eye(2), numpy.eye(2))), 1)
	(False, 0)
	"""
	if f < 0:
		raise ValueError("fault budget must be non-negative, got %d" % f)
	for i, mode in enumerate(dec.modes):
		if mode.geo_mult + f > dec.m:
			return False, i
	return True, None


def check_fault_budget(dec, f):
	"""
	Raise Infeasible naming the first mode reported by feasibility().
	"""
	feasible, i = feasibility(dec, f)
	if not feasible:
		mode = dec.modes[i]
		raise Infeasible("mode %d (eigenvalue %s) needs g_i + f = %d actuators but only m = %d exist" % (i + 1, mode.eigenvalue, mode.geo_mult + f, dec.m), mode = i)


def build_robust(dec, f, tol = None, cap = DEFAULT_ENUM_CAP, verbose = False):
	"""
	Build W^(i) for every mode for fault budget f:  the rows are all the
	subsets S of size min(g_i + f, m) such that B-bar[G_i, S] is a full
	spark frame.  Raises Infeasible if g_i + f > m for some mode,
	Uncontrollable if some mode has no qualifying subset, and
	ModeTooLarge as build_nominal() does.

	Example:

	>>> from minact.spectral import LinearSystem, decompose
	>>> dec = decompose(LinearSystem([[1.]], [[1., 2.]]))
	>>> sel = build_robust(dec, 1)
	>>> sel.per_mode[0].required, sel.per_mode[0].subsets
	(2, ((0, 1),))
	>>> build_robust(decompose(LinearSystem([[1.]], [[1.]])), 1)
	Traceback (most recent call last):
	    ...
	minact.reduction.Infeasible: mode 1 (eigenvalue (1+0j)) needs g_i + f = 2 actuators but only m = 1 exist
	"""
	if tol is None:
		tol = spectral.DEFAULT_TOLERANCES
	check_fault_budget(dec, f)
	per_mode = []
	for i, mode in enumerate(dec.modes):
		size = min(mode.geo_mult + f, dec.m)
		subsets = _enumerate(dec, i, size, lambda sub: spectral.is_full_spark(sub, tol), cap, tol, verbose)
		per_mode.append(ModeSelection(i, subsets, size, dec.m))
	return SelectionMatrices(per_mode, f, dec.m)


def compute_k(sel):
	"""
	The k of k-set multicover:  the largest number of modes that a
	single actuator appears in (in some admissible subset).

	Example:

	>>> from minact.spectral import LinearSystem, decompose
	>>> import numpy
	>>> compute_k(build_nominal(decompose(LinearSystem(numpy.diag([1., 2.]), [[1.], [1.]]))))
	2
	"""
	counts = numpy.zeros(sel.m, dtype = int)
	for ms in sel.per_mode:
		counts += ms.w.any(axis = 0)
	return int(counts.max())


#
# =============================================================================
#
#                               Cover Instances
#
# =============================================================================
#


class CoverInstance(object):
	"""
	A set multicover instance with multiplicity constraints:  elements
	range(universe), one set per actuator (sets[j] is R_j, the elements
	covered by actuator j), and element i must be covered coverage[i]
	times by distinct sets.

	Example:

	>>> inst = CoverInstance(2, [[0, 1], [0], [1]], [1, 1])
	>>> inst.m, inst.k, inst.is_set_cover, inst.is_feasible()
	(3, 2, True, True)
	>>> inst.element_sets()
	[(0, 1), (0, 2)]
	>>> CoverInstance.from_json(inst.to_json()) == inst
	True
	"""
	multiplicity = 1

	def __init__(self, universe, sets, coverage):
		if int(universe) != universe or universe < 0:
			raise InvalidInstance("universe size must be a non-negative integer, got %s" % (universe,))
		self.universe = int(universe)
		self.sets = tuple(tuple(sorted(set(int(i) for i in r))) for r in sets)
		self.coverage = tuple(int(b) for b in coverage)
		if len(self.coverage) != self.universe:
			raise InvalidInstance("coverage has %d entries, expected %d" % (len(self.coverage), self.universe))
		for i, b in enumerate(self.coverage):
			if b < 1:
				raise InvalidInstance("coverage of element %d must be positive, got %d" % (i + 1, b))
		for j, r in enumerate(self.sets):
			if r and not (0 <= r[0] and r[-1] < self.universe):
				raise InvalidInstance("set %d refers to elements outside the universe" % (j + 1))

	@property
	def m(self):
		return len(self.sets)

	@property
	def k(self):
		"""
		The largest set size, max_j |R_j|.
		"""
		return max((len(r) for r in self.sets), default = 0)

	@property
	def is_set_cover(self):
		"""
		True if every element must be covered once (plain set cover).
		"""
		return all(b == 1 for b in self.coverage)

	def element_sets(self):
		"""
		Return T_i = {j : i in R_j} for every element i.
		"""
		result = [[] for i in range(self.universe)]
		for j, r in enumerate(self.sets):
			for i in r:
				result[i].append(j)
		return [tuple(t) for t in result]

	def availability(self):
		"""
		The number of sets containing each element.
		"""
		return [len(t) for t in self.element_sets()]

	def first_uncoverable(self):
		"""
		Return the first element i available in fewer than coverage[i]
		sets, or None if the instance is feasible.
		"""
		for i, (avail, b) in enumerate(zip(self.availability(), self.coverage)):
			if avail < b:
				return i
		return None

	def is_feasible(self):
		return self.first_uncoverable() is None

	def to_json(self):
		"""
		The interchange document, with 1-based element indices.
		"""
		return {
			"universe": self.universe,
			"coverage": list(self.coverage),
			"sets": [[i + 1 for i in r] for r in self.sets]
		}

	@classmethod
	def from_json(cls, doc):
		"""
		Inverse of .to_json().
		"""
		try:
			return cls(doc["universe"], [[i - 1 for i in r] for r in doc["sets"]], doc["coverage"])
		except (KeyError, TypeError) as e:
			raise InvalidInstance("malformed cover instance document: %s" % e)

	def __eq__(self, other):
		return isinstance(other, CoverInstance) and (self.universe, self.sets, self.coverage) == (other.universe, other.sets, other.coverage)

	def __ne__(self, other):
		return not self == other

	def __hash__(self):
		return hash((self.universe, self.sets, self.coverage))

	def __repr__(self):
		return "CoverInstance(universe=%d, sets=%s, coverage=%s)" % (self.universe, list(self.sets), list(self.coverage))


def detect_spark_structure(dec, f = 0, tol = None, cap = DEFAULT_ENUM_CAP):
	"""
	For every mode i, let T_i be the non-zero columns of B-bar[G_i, :]
	(a column counts as zero when its norm is at most tol.rank_rel times
	the largest column norm of the block).  Return the list of T_i if
	every B-bar[G_i, T_i] is a full spark frame with |T_i| >= g_i + f,
	otherwise return None.

	Example:

	>>> from minact.spectral import LinearSystem, decompose
	>>> import numpy
	>>> dec = decompose(LinearSystem(numpy.eye(2), [[1., 0., 1.], [0., 1., 1.]]))
	>>> detect_spark_structure(dec)
	[(0, 1, 2)]
	>>> dec = decompose(LinearSystem(numpy.eye(2), [[1., 2., 0.], [1., 2., 1.]]))
	>>> print(detect_spark_structure(dec))
	None
	"""
	if tol is None:
		tol = spectral.DEFAULT_TOLERANCES
	t_sets = []
	for i, mode in enumerate(dec.modes):
		block = dec.b_bar_rows(i)
		t = tuple(int(j) for j in numpy.flatnonzero(_column_support(block, tol)))
		if len(t) < mode.geo_mult + f:
			return None
		count = math.comb(len(t), mode.geo_mult)
		if count > cap:
			raise ModeTooLarge("full spark test of mode %d needs C(%d, %d) = %d rank tests, more than the cap of %d" % (i + 1, len(t), mode.geo_mult, count, cap))
		if not spectral.is_full_spark(block[:, list(t)], tol):
			return None
		t_sets.append(t)
	return t_sets


def to_cover_instance(dec, t_sets, f = 0):
	"""
	Transpose the certified sets T_i into the actuator sets R_j = {i : j
	in T_i} and attach the coverage requirements b_i = g_i + f.

	Example:

	>>> from minact.spectral import LinearSystem, decompose
	>>> dec = decompose(LinearSystem([[1.]], [[1., 2.]]))
	>>> to_cover_instance(dec, [(0, 1)], 1)
	CoverInstance(universe=1, sets=[(0,), (0,)], coverage=[2])
	"""
	if len(t_sets) != dec.p:
		raise ValueError("expected %d column sets, got %d" % (dec.p, len(t_sets)))
	sets = [[] for j in range(dec.m)]
	for i, t in enumerate(t_sets):
		for j in t:
			sets[j].append(i)
	return CoverInstance(dec.p, sets, [mode.geo_mult + f for mode in dec.modes])
