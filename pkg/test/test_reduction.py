#!/usr/bin/env python3

import doctest
import itertools
import sys

import numpy

from minact import reduction
from minact import spectral
from minact.spectral import LinearSystem, decompose


def expect(exc, func, *args, **kwargs):
	try:
		func(*args, **kwargs)
	except exc as e:
		return e
	raise AssertionError("%s not raised" % exc.__name__)


def test_doctests():
	assert doctest.testmod(reduction).failed == 0


def test_nominal_rows_are_exactly_the_rank_g_subsets():
	rng = numpy.random.default_rng(3)
	for trial in range(30):
		# eigenvalue 1 with g = 2, eigenvalue 2 with g = 1
		a = numpy.diag([1., 1., 2.])
		b = rng.integers(-1, 2, size = (3, 4)).astype(float)
		dec = decompose(LinearSystem(a, b))
		try:
			sel = reduction.build_nominal(dec)
		except reduction.Uncontrollable:
			continue
		for i, ms in enumerate(sel.per_mode):
			g = dec.modes[i].geo_mult
			block = dec.b_bar_rows(i)
			expected = tuple(s for s in itertools.combinations(range(4), g) if spectral.rank_of(block[:, list(s)]) == g)
			assert ms.subsets == expected
			assert (ms.w.sum(axis = 1) == g).all()
			assert not ms.w.flags.writeable


def test_robust_rows_are_full_spark():
	dec = decompose(LinearSystem(numpy.eye(2), [[1., 0., 1., 1.], [0., 1., 1., 2.]]))
	sel = reduction.build_robust(dec, 1)
	ms = sel.per_mode[0]
	assert ms.required == 3
	# every 3 of the 4 columns form a full spark frame
	assert ms.subsets == tuple(itertools.combinations(range(4), 3))
	assert reduction.compute_k(sel) == 1

def test_adding_a_column_keeps_every_row():
	rng = numpy.random.default_rng(19)
	a = numpy.diag([1., 1., 2.])
	for trial in range(40):
		b = numpy.hstack((numpy.eye(3), rng.integers(-1, 2, size = (3, int(rng.integers(0, 3)))).astype(float)))
		extra = numpy.zeros((3, 1))
		while not extra.any():
			extra = rng.integers(-1, 2, size = (3, 1)).astype(float)
		before = reduction.build_nominal(decompose(LinearSystem(a, b)))
		after = reduction.build_nominal(decompose(LinearSystem(a, numpy.hstack((b, extra)))))
		for old, new in zip(before.per_mode, after.per_mode):
			assert new.rows >= old.rows
			assert set(old.subsets) <= set(new.subsets)


def test_robust_without_faults_is_nominal():
	rng = numpy.random.default_rng(37)
	for trial in range(40):
		a = numpy.diag([1., 1., 2., 3.])
		b = rng.integers(-1, 2, size = (4, int(rng.integers(2, 6)))).astype(float)
		dec = decompose(LinearSystem(a, b))
		try:
			nominal = reduction.build_nominal(dec)
		except reduction.Uncontrollable as e:
			assert expect(reduction.Uncontrollable, reduction.build_robust, dec, 0).mode == e.mode
			continue
		robust = reduction.build_robust(dec, 0)
		assert robust.fault_budget == 0
		assert [ms.subsets for ms in robust.per_mode] == [ms.subsets for ms in nominal.per_mode]



def test_robust_infeasible_names_mode():
	dec = decompose(LinearSystem(numpy.diag([1., 2., 2.]), numpy.eye(3)))
	e = expect(reduction.Infeasible, reduction.build_robust, dec, 2)
	assert e.mode == 1
	assert "mode 2" in str(e)

def test_fault_budget_follows_feasibility():
	dec = decompose(LinearSystem(numpy.diag([1., 2., 2.]), numpy.eye(3)))
	for f in range(3):
		feasible, i = reduction.feasibility(dec, f)
		assert feasible == (f <= 1)
		if feasible:
			reduction.check_fault_budget(dec, f)
		else:
			assert expect(reduction.Infeasible, reduction.check_fault_budget, dec, f).mode == i == 1
	expect(ValueError, reduction.feasibility, dec, -1)



def test_uncontrollable_mode():
	dec = decompose(LinearSystem(numpy.diag([1., 2.]), [[1.], [0.]]))
	e = expect(reduction.Uncontrollable, reduction.build_nominal, dec)
	assert e.mode == 1


def test_enumeration_cap():
	dec = decompose(LinearSystem(numpy.eye(2), numpy.ones((2, 5)) + numpy.eye(2, 5)))
	expect(reduction.ModeTooLarge, reduction.build_nominal, dec, cap = 5)
	expect(reduction.ModeTooLarge, reduction.build_robust, dec, 1, cap = 5)


def test_spark_detection_and_cover_instance():
	a = numpy.diag([1., 2., 3.])
	b = numpy.array([[1., 2., 0., 0.], [0., 1., 1., 0.], [0., 0., 0., 3.]])
	dec = decompose(LinearSystem(a, b))
	t_sets = reduction.detect_spark_structure(dec)
	assert t_sets == [(0, 1), (1, 2), (3,)]
	inst = reduction.to_cover_instance(dec, t_sets)
	assert inst.element_sets() == t_sets
	assert inst.is_set_cover and inst.is_feasible()
	assert inst.to_json() == {"universe": 3, "coverage": [1, 1, 1], "sets": [[1], [1, 2], [2], [3]]}
	# f = 1 needs two actuators on mode 3
	assert reduction.detect_spark_structure(dec, 1) is None


def test_cover_instance_validation():
	expect(reduction.InvalidInstance, reduction.CoverInstance, 2, [[0, 2]], [1, 1])
	expect(reduction.InvalidInstance, reduction.CoverInstance, 1, [[0]], [0])
	expect(reduction.InvalidInstance, reduction.CoverInstance, 2, [[0]], [1])
	expect(reduction.InvalidInstance, reduction.CoverInstance.from_json, {"universe": 1, "sets": [[1]]})
	inst = reduction.CoverInstance(1, [[0]], [2])
	assert not inst.is_feasible() and inst.first_uncoverable() == 0


if __name__ == '__main__':
	failures = doctest.testmod(reduction)[0]
	for name, func in sorted(globals().items()):
		if name.startswith("test_") and name != "test_doctests":
			func()
	sys.exit(bool(failures))
