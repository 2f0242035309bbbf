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
Set multicover solvers.

The instances are reduction.CoverInstance objects:  element i must be
covered coverage[i] times by distinct sets, each set may be chosen at most
once.  Three solvers are provided:

	greedy_multicover()	repeatedly picks the set covering the most
				still-needed elements;  within H(p) of the
				optimum
	exact_multicover_dp()	dynamic programming over the vector of
				residual coverage requirements
	brute_force_cover()	exhaustive search in order of increasing
				cardinality, the reference oracle

Example:

>>> from minact.reduction import CoverInstance
>>> inst = CoverInstance(6, [[0, 1, 2], [3, 4, 5], [0, 1, 3, 4]], [1] * 6)
>>> greedy_multicover(inst).chosen
(0, 1, 2)
>>> exact_multicover_dp(inst).chosen
(0, 1)
>>> brute_force_cover(inst).to_json()
{'chosen': [1, 2], 'optimal': True}
"""


import itertools
import math
import sys


import numpy
from tqdm import tqdm


from . import __author__, __date__, __version__
from . import MinactError


__all__ = [
	"CoverSolution",
	"greedy_multicover",
	"exact_multicover_dp",
	"brute_force_cover",
	"harmonic",
	"greedy_bound"
]


DEFAULT_STATE_CAP = 10**7
BRUTE_FORCE_CAP = 25


#
# =============================================================================
#
#                                  Exceptions
#
# =============================================================================
#


class InfeasibleCover(MinactError):
	"""
	Some element is contained in fewer sets than its coverage
	requirement.  .element is the index of the first such element.
	"""
	def __init__(self, msg, element = None):
		super(InfeasibleCover, self).__init__(msg)
		self.element = element


class StateSpaceTooLarge(MinactError):
	pass


class InstanceTooLarge(MinactError):
	pass


def check_feasible(inst):
	"""
	Raise InfeasibleCover if inst has no solution.

	Example:

	>>> from minact.reduction import CoverInstance
	>>> check_feasible(CoverInstance(1, [[0], []], [2]))
	Traceback (most recent call last):
	    ...
	minact.cover.InfeasibleCover: element 1 needs coverage 2 but only 1 set(s) contain it
	"""
	i = inst.first_uncoverable()
	if i is not None:
		raise InfeasibleCover("element %d needs coverage %d but only %d set(s) contain it" % (i + 1, inst.coverage[i], inst.availability()[i]), element = i)


#
# =============================================================================
#
#                                  Solutions
#
# =============================================================================
#


class CoverSolution(object):
	"""
	A set of chosen set indices.  optimal is True when the solver that
	produced it guarantees minimum cardinality.
	"""
	def __init__(self, chosen, optimal):
		self.chosen = tuple(sorted(set(int(j) for j in chosen)))
		self.optimal = bool(optimal)

	@property
	def cardinality(self):
		return len(self.chosen)

	def covers(self, inst):
		"""
		True if the chosen sets cover every element of inst the
		required number of times.
		"""
		counts = [0] * inst.universe
		for j in self.chosen:
			for i in inst.sets[j]:
				counts[i] += 1
		return all(c >= b for c, b in zip(counts, inst.coverage))

	def to_json(self):
		return {"chosen": [j + 1 for j in self.chosen], "optimal": self.optimal}

	def __repr__(self):
		return "CoverSolution(chosen=%s, optimal=%s)" % (self.chosen, self.optimal)


def harmonic(p):
	"""
	The harmonic number H(p) = 1 + 1/2 + ... + 1/p.  H(0) = 0.

	Example:

	>>> harmonic(3)
	1.8333333333333333
	"""
	return math.fsum(1. / c for c in range(1, p + 1))


def greedy_bound(inst):
	"""
	The approximation ratio guaranteed for greedy_multicover() on inst,
	H(min(k, p)) where k is the largest set size and p the universe
	size.
	"""
	return harmonic(min(inst.k, inst.universe))


def _incidence(inst):
	inc = numpy.zeros((inst.m, inst.universe), dtype = numpy.int64)
	for j, r in enumerate(inst.sets):
		inc[j, list(r)] = 1
	return inc


#
# =============================================================================
#
#                                   Solvers
#
# =============================================================================
#


def greedy_multicover(inst, verbose = False):
	"""
	Greedy set multicover.  At every step the unchosen set covering the
	largest number of elements whose requirement is not yet met is
	added;  the smallest index wins ties.  The result has optimal =
	False even when it happens to be optimal.

	Example:

	>>> from minact.reduction import CoverInstance
	>>> greedy_multicover(CoverInstance(2, [[0, 1], [0], [1]], [1, 1]))
	CoverSolution(chosen=(0,), optimal=False)
	>>> greedy_multicover(CoverInstance(1, [[0], [0], [0]], [2]))
	CoverSolution(chosen=(0, 1), optimal=False)
	"""
	check_feasible(inst)
	inc = _incidence(inst)
	residual = numpy.array(inst.coverage, dtype = numpy.int64)
	unused = numpy.ones(inst.m, dtype = bool)
	chosen = []
	while residual.any():
		gains = numpy.where(unused, inc @ (residual > 0), -1)
		j = int(numpy.argmax(gains))
		# cannot happen after check_feasible()
		assert gains[j] > 0
		chosen.append(j)
		unused[j] = False
		residual = numpy.maximum(residual - inc[j], 0)
		if verbose:
			sys.stderr.write("greedy:  set %d covers %d element(s), %d still short\n" % (j + 1, gains[j], numpy.count_nonzero(residual)))
	return CoverSolution(chosen, False)


def exact_multicover_dp(inst, cap = DEFAULT_STATE_CAP, verbose = False):
	"""
	Minimum cardinality set multicover by dynamic programming.

	A state is the vector r of residual requirements, 0 <= r_i <=
	coverage[i], stored as a mixed-radix integer.  Sets are processed
	one after the other, each either skipped or taken once, and the
	table holds the fewest sets taken to reach every state from the
	initial requirement vector.  The states improved by each set are
	recorded so that an optimal family can be read back from the
	all-zero state.  StateSpaceTooLarge is raised if the number of
	states, the product of (coverage[i] + 1), exceeds cap.

	Example:

	>>> from minact.reduction import CoverInstance
	>>> exact_multicover_dp(CoverInstance(1, [[0], [0]], [2]))
	CoverSolution(chosen=(0, 1), optimal=True)
	>>> exact_multicover_dp(CoverInstance(0, [[], []], []))
	CoverSolution(chosen=(), optimal=True)
	"""
	check_feasible(inst)
	radix = numpy.array(inst.coverage, dtype = numpy.int64) + 1
	states = math.prod(int(r) for r in radix)
	if states > cap:
		raise StateSpaceTooLarge("%d residual states exceed the cap of %d" % (states, cap))
	weight = numpy.concatenate(([1], numpy.cumprod(radix)[:-1])).astype(numpy.int64)
	if verbose:
		sys.stderr.write("multicover DP over %d state(s), %d set(s)\n" % (states, inst.m))

	unreachable = inst.m + 1
	dist = numpy.full(states, unreachable, dtype = numpy.int64)
	dist[states - 1] = 0
	improved = []
	for j, r in enumerate(tqdm(inst.sets, desc = "sets", disable = not verbose)):
		source = numpy.flatnonzero(dist < unreachable)
		step = numpy.zeros(len(source), dtype = numpy.int64)
		for i in r:
			step += numpy.where((source // weight[i]) % radix[i] > 0, weight[i], 0)
		target = source - step
		candidate = dist[source] + 1
		new = dist.copy()
		numpy.minimum.at(new, target, candidate)
		# which (source, target) pairs achieved a strict improvement
		better = (candidate == new[target]) & (candidate < dist[target])
		targets, first = numpy.unique(target[better], return_index = True)
		improved.append((targets, source[better][first]))
		dist = new

	# read back from the fully covered state
	chosen = []
	state = 0
	for j in range(inst.m - 1, -1, -1):
		targets, sources = improved[j]
		k = numpy.searchsorted(targets, state)
		if k < len(targets) and targets[k] == state:
			chosen.append(j)
			state = int(sources[k])
	assert state == states - 1 and len(chosen) == dist[0]
	return CoverSolution(chosen, True)


def brute_force_cover(inst, cap = BRUTE_FORCE_CAP, verbose = False):
	"""
	Exhaustive search over the families of sets in order of increasing
	cardinality, then lexicographically.  The first family that covers
	inst is returned, so the result is the canonical optimum.
	InstanceTooLarge is raised if there are more than cap sets.

	Example:

	>>> from minact.reduction import CoverInstance
	>>> brute_force_cover(CoverInstance(2, [[0], [0, 1], [1]], [1, 2]))
	CoverSolution(chosen=(1, 2), optimal=True)
	"""
	if inst.m > cap:
		raise InstanceTooLarge("brute force search is limited to %d sets, got %d" % (cap, inst.m))
	check_feasible(inst)
	# bit j of masks[i] is set when element i is in set j
	masks = [sum(1 << j for j in t) for t in inst.element_sets()]
	requirements = list(zip(masks, inst.coverage))
	for size in tqdm(range(inst.m + 1), desc = "cardinality", disable = not verbose):
		for combo in itertools.combinations(range(inst.m), size):
			y = sum(1 << j for j in combo)
			if all(bin(y & mask).count("1") >= b for mask, b in requirements):
				return CoverSolution(combo, True)
	# unreachable after check_feasible()
	raise InfeasibleCover("no family of sets covers the instance")
