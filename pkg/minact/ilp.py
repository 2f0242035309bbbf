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
The binary integer program of the actuator selection problem and an exact
solver for it.

The program is

	minimize	1^T y
	subject to	W^(i) y >= (W^(i) 1) * d^(i),  1^T d^(i) >= 1
			y in {0,1}^m,  d^(i) in {0,1}^(rows of W^(i))

for every mode i, where * is the elementwise product.  Each row of W^(i) is
an admissible actuator subset, so the constraints say that for every mode
at least one admissible subset is entirely contained in the support of y.
The slack vectors d^(i) are not represented:  a block is satisfied by y
when some row r of W^(i) has (W^(i) y)_r equal to the row sum.

Example:

>>> model = IlpModel(3, [IlpBlock([(0, 1), (0, 2), (1, 2)], 2)])
>>> model.is_satisfied([0, 2]), model.is_satisfied([2])
(True, False)
>>> solve_exact(model).chosen
(0, 1)
>>> model.to_json()
{'m': 3, 'blocks': [{'required': 2, 'rows': [[1, 2], [1, 3], [2, 3]]}]}
"""


import itertools
import sys


import numpy
from tqdm import tqdm


from . import __author__, __date__, __version__
from . import cover
from . import reduction


__all__ = [
	"IlpBlock",
	"IlpModel",
	"build_model",
	"solve_exact",
	"solve_with_oracle"
]


#
# =============================================================================
#
#                                    Model
#
# =============================================================================
#


class IlpBlock(object):
	"""
	The constraints of one mode:  rows is the tuple of admissible
	actuator subsets (each a sorted tuple of column indices) and
	required is their common size.
	"""
	def __init__(self, rows, required):
		self.rows = tuple(tuple(sorted(set(int(j) for j in row))) for row in rows)
		self.required = int(required)
		for row in self.rows:
			if len(row) != self.required:
				raise ValueError("row %s does not have %d element(s)" % (row, self.required))

	@property
	def slack_dim(self):
		"""
		The dimension of the implicit slack vector d^(i).
		"""
		return len(self.rows)

	def w(self, m):
		"""
		The binary constraint matrix W^(i) with m columns.
		"""
		w = numpy.zeros((len(self.rows), m), dtype = numpy.uint8)
		for r, row in enumerate(self.rows):
			w[r, list(row)] = 1
		return w

	def masks(self):
		return [sum(1 << j for j in row) for row in self.rows]

	def __repr__(self):
		return "IlpBlock(rows=%s, required=%d)" % (list(self.rows), self.required)


class IlpModel(object):
	"""
	A binary program over m actuators made of one IlpBlock per mode.
	fault_budget records the f the blocks were built for.
	"""
	def __init__(self, m, blocks, fault_budget = 0):
		self.m = int(m)
		self.blocks = tuple(blocks)
		self.fault_budget = fault_budget
		for i, block in enumerate(self.blocks):
			for row in block.rows:
				if row and not (0 <= row[0] and row[-1] < self.m):
					raise ValueError("block %d refers to actuators outside range(%d)" % (i + 1, self.m))

	def is_satisfied(self, chosen):
		"""
		True if every block has a row contained in chosen.
		"""
		chosen = set(chosen)
		return all(any(chosen.issuperset(row) for row in block.rows) for block in self.blocks)

	def to_json(self):
		"""
		Export for external ILP solvers, 1-based actuator indices.
		"""
		return {
			"m": self.m,
			"blocks": [{"required": block.required, "rows": [[j + 1 for j in row] for row in block.rows]} for block in self.blocks]
		}

	@classmethod
	def from_json(cls, doc, fault_budget = 0):
		return cls(doc["m"], [IlpBlock([[j - 1 for j in row] for row in block["rows"]], block["required"]) for block in doc["blocks"]], fault_budget = fault_budget)

	def __repr__(self):
		return "IlpModel(m=%d, blocks=%d)" % (self.m, len(self.blocks))


def build_model(sel):
	"""
	Build the IlpModel of the reduction.SelectionMatrices sel, one block
	per mode.

	Example:

	>>> from minact.spectral import LinearSystem, decompose
	>>> from minact.reduction import build_nominal
	>>> import numpy
	>>> model = build_model(build_nominal(decompose(LinearSystem(numpy.diag([1., 2.]), numpy.eye(2)))))
	>>> model.blocks
	(IlpBlock(rows=[(0,)], required=1), IlpBlock(rows=[(1,)], required=1))
	"""
	return IlpModel(sel.m, [IlpBlock(ms.subsets, ms.required) for ms in sel.per_mode], sel.fault_budget)


#
# =============================================================================
#
#                              Branch and Bound
#
# =============================================================================
#


def _popcount(x):
	return bin(x).count("1")


def _members(x):
	j = 0
	while x:
		if x & 1:
			yield j
		x >>= 1
		j += 1


class _Search(object):
	"""
	Depth-first branch and bound over the 0/1 assignment of y.  A node
	is a pair of disjoint bit masks (include, exclude).
	"""
	def __init__(self, model):
		self.m = model.m
		self.blocks = [block.masks() for block in model.blocks]
		self.nodes = 0

	def _status(self, include, exclude):
		"""
		Return None if some block cannot be satisfied any more,
		otherwise the list of (deficit, pool, rows) of the blocks not
		yet satisfied, where rows are the missing parts of the viable
		rows and pool is their union.
		"""
		open_blocks = []
		for rows in self.blocks:
			missing = [row & ~include for row in rows if not row & exclude]
			if not missing:
				return None
			if 0 in missing:
				continue
			pool = 0
			for row in missing:
				pool |= row
			open_blocks.append((min(_popcount(row) for row in missing), pool, missing))
		return open_blocks

	@staticmethod
	def _bound(open_blocks):
		# deficits of blocks with pairwise disjoint pools add up
		total = 0
		used = 0
		for deficit, pool, missing in sorted(open_blocks, key = lambda b: -b[0]):
			if not pool & used:
				total += deficit
				used |= pool
		return total

	def run(self, include, exclude, limit, first = False):
		"""
		Return a smallest solution containing include and disjoint from
		exclude with fewer than limit actuators, or None.  If first is
		True the first such solution found is returned.
		"""
		self.best = None
		self.limit = limit
		self.first = first
		self._visit(include, exclude)
		return self.best

	def _visit(self, include, exclude):
		self.nodes += 1
		open_blocks = self._status(include, exclude)
		if open_blocks is None:
			return False
		size = _popcount(include)
		if not open_blocks:
			if size >= self.limit:
				return False
			self.best = include
			self.limit = size
			return self.first
		if size + self._bound(open_blocks) >= self.limit:
			return False
		counts = [0] * self.m
		for deficit, pool, missing in open_blocks:
			for row in missing:
				for j in _members(row):
					counts[j] += 1
		j = max(range(self.m), key = lambda j: (counts[j], -j))
		bit = 1 << j
		return self._visit(include | bit, exclude) or self._visit(include, exclude | bit)


def _check_blocks(model):
	for i, block in enumerate(model.blocks):
		if not block.rows:
			raise reduction.Infeasible("block %d has no admissible rows" % (i + 1), mode = i)


def solve_exact(model, verbose = False):
	"""
	Solve model exactly.  Returns a selector.SelectionResult with method
	"ilp_exact" whose support is the lexicographically smallest among
	the minimum cardinality solutions.

	The search branches on the free actuator that appears in the most
	viable rows of the unsatisfied blocks (including it first).  A node
	is pruned when the actuators already included plus a lower bound on
	those still needed reach the incumbent;  the bound adds the deficits
	of unsatisfied blocks whose candidate actuators are pairwise
	disjoint, which is never less than the largest single deficit.  Once
	the optimum cardinality is known the canonical support is fixed one
	position at a time with feasibility searches.

	Example:

	>>> solve_exact(IlpModel(2, [IlpBlock([(0,)], 1), IlpBlock([(1,)], 1)])).chosen
	(0, 1)
	>>> solve_exact(IlpModel(2, [IlpBlock([(0, 1)], 2)])).chosen
	(0, 1)
	"""
	from .selector import SelectionResult

	_check_blocks(model)
	search = _Search(model)
	best = search.run(0, 0, model.m + 1)
	# y = 1 satisfies every block that has a row
	assert best is not None
	optimum = _popcount(best)
	if verbose:
		sys.stderr.write("branch and bound:  optimum %d after %d node(s)\n" % (optimum, search.nodes))

	# lexicographically smallest support of that size
	prefix = []
	skipped = 0
	start = 0
	for position in range(optimum):
		for j in range(start, model.m):
			include = sum(1 << k for k in prefix) | (1 << j)
			if search.run(include, skipped, optimum + 1, first = True) is not None:
				prefix.append(j)
				start = j + 1
				break
			skipped |= 1 << j
		else:
			raise AssertionError("canonical support search lost the optimum")
	if verbose:
		sys.stderr.write("canonical support fixed after %d node(s)\n" % search.nodes)
	return SelectionResult(prefix, "ilp_exact", True, model.fault_budget)


def solve_with_oracle(model, cap = cover.BRUTE_FORCE_CAP, verbose = False):
	"""
	Exhaustive reference solver:  supports are tried in order of
	increasing cardinality, then lexicographically, and the first one
	satisfying every block is returned with method "brute_force".
	cover.InstanceTooLarge is raised if model.m exceeds cap.

	Example:

	>>> solve_with_oracle(IlpModel(1, [IlpBlock([(0,)], 1)])).chosen
	(0,)
	"""
	from .selector import SelectionResult

	if model.m > cap:
		raise cover.InstanceTooLarge("exhaustive search is limited to %d actuators, got %d" % (cap, model.m))
	_check_blocks(model)
	blocks = [block.masks() for block in model.blocks]
	for size in tqdm(range(model.m + 1), desc = "cardinality", disable = not verbose):
		for combo in itertools.combinations(range(model.m), size):
			y = sum(1 << j for j in combo)
			if all(any(row & y == row for row in rows) for rows in blocks):
				return SelectionResult(combo, "brute_force", True, model.fault_budget)
	raise AssertionError("y = 1 failed to satisfy the model")
