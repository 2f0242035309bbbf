#!/usr/bin/env python3

import doctest
import itertools
import sys

import numpy

from minact import cover
from minact import ilp
from minact import reduction
from minact.ilp import IlpBlock, IlpModel


def random_model(rng):
	"""
	Up to 4 blocks over at most 12 actuators.  Rows of a block share
	their size, as the admissible subsets of one mode do.
	"""
	m = int(rng.integers(1, 13))
	blocks = []
	for i in range(int(rng.integers(1, 5))):
		required = int(rng.integers(1, min(3, m) + 1))
		combos = list(itertools.combinations(range(m), required))
		picks = rng.choice(len(combos), size = int(rng.integers(1, min(6, len(combos)) + 1)), replace = False)
		blocks.append(IlpBlock([combos[c] for c in sorted(picks)], required))
	return IlpModel(m, blocks)


def test_doctests():
	assert doctest.testmod(ilp).failed == 0


def test_against_exhaustive_search():
	rng = numpy.random.default_rng(99)
	for trial in range(500):
		model = random_model(rng)
		exact = ilp.solve_exact(model)
		oracle = ilp.solve_with_oracle(model)
		assert exact.chosen == oracle.chosen, (model.to_json(), exact.chosen, oracle.chosen)
		assert exact.method == "ilp_exact" and exact.optimal
		assert model.is_satisfied(exact.chosen)
		for combo in itertools.combinations(range(model.m), exact.cardinality - 1):
			assert not model.is_satisfied(combo)


def test_constraint_matrices():
	block = IlpBlock([(0, 2), (1, 2)], 2)
	assert block.slack_dim == 2
	assert block.w(4).tolist() == [[1, 0, 1, 0], [0, 1, 1, 0]]
	# W y >= (W 1) * d holds with d = e_2 for y = (0, 1, 1, 0)
	y = numpy.array([0, 1, 1, 0])
	assert (block.w(4) @ y >= block.w(4).sum(axis = 1) * numpy.array([0, 1])).all()


def test_json_round_trip():
	model = IlpModel(4, [IlpBlock([(0, 2), (1, 3)], 2), IlpBlock([(3,)], 1)], fault_budget = 1)
	doc = model.to_json()
	assert doc == {"m": 4, "blocks": [{"required": 2, "rows": [[1, 3], [2, 4]]}, {"required": 1, "rows": [[4]]}]}
	again = IlpModel.from_json(doc, fault_budget = 1)
	assert ilp.solve_exact(again).chosen == ilp.solve_exact(model).chosen == (1, 3)


def test_empty_block_is_infeasible():
	model = IlpModel(2, [IlpBlock([(0,)], 1), IlpBlock([], 1)])
	for solver in (ilp.solve_exact, ilp.solve_with_oracle):
		try:
			solver(model)
		except reduction.Infeasible as e:
			assert e.mode == 1
		else:
			raise AssertionError("empty block accepted")


def test_bad_rows():
	for args in (([(0, 1)], 1), ([(0,), (0, 1)], 1)):
		try:
			IlpBlock(*args)
		except ValueError:
			pass
		else:
			raise AssertionError(args)
	try:
		IlpModel(2, [IlpBlock([(2,)], 1)])
	except ValueError:
		pass
	else:
		raise AssertionError("out of range row accepted")


def test_oracle_cap():
	try:
		ilp.solve_with_oracle(IlpModel(3, [IlpBlock([(0,)], 1)]), cap = 2)
	except cover.InstanceTooLarge:
		pass
	else:
		raise AssertionError("cap ignored")


if __name__ == '__main__':
	failures = doctest.testmod(ilp)[0]
	for name, func in sorted(globals().items()):
		if name.startswith("test_") and name != "test_doctests":
			func()
	sys.exit(bool(failures))
