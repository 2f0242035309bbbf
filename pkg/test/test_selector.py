#!/usr/bin/env python3

import doctest
import sys

import numpy

from minact import cover
from minact import reduction
from minact import selector
from minact import spectral
from minact.spectral import LinearSystem
from minact.utils import generator


VALUES = (-2., -1., .5, 1., 3., complex(.5, 1.5))


def random_spec(rng, max_m = 7):
	"""
	A generator specification with n <= 5 and m <= max_m.  Jordan
	blocks are kept to size 2 or less.
	"""
	eigenvalues = []
	n = 0
	for k in rng.permutation(len(VALUES)):
		value = VALUES[k]
		alg = int(rng.integers(1, 3))
		geo = alg if rng.random() < .7 else 1
		ev = generator.EigenvalueSpec(value, alg, geo)
		if n + ev.dimension > 5:
			continue
		eigenvalues.append(ev)
		n += ev.dimension
		if len(eigenvalues) == 3 or rng.random() < .3:
			break
	m = int(rng.integers(max(ev.geo for ev in eigenvalues), max_m + 1))
	actuators = [int(rng.integers(ev.geo, m + 1)) for ev in eigenvalues]
	return generator.GeneratorSpec(eigenvalues, actuators, m, overlap = rng.random(), seed = int(rng.integers(2**31)))


def generated_systems(seed, count, max_m = 7):
	rng = numpy.random.default_rng(seed)
	for trial in range(count):
		spec = random_spec(rng, max_m)
		yield spec, generator.generate(spec)


def test_doctests():
	assert doctest.testmod(selector).failed == 0


def test_select_examples():
	assert selector.select(LinearSystem(numpy.diag([1., 2., 3.]), numpy.eye(3))).chosen == (0, 1, 2)
	result = selector.select(LinearSystem(numpy.diag([1., 2.]), [[1., 1., 0.], [1., 0., 1.]]))
	assert result.cardinality == 1 and result.chosen == (0,) and result.optimal
	assert selector.select(LinearSystem([[1.]], [[1., 1.]]), 1).chosen == (0, 1)
	try:
		selector.select(LinearSystem([[1.]], [[1.]]), 1)
	except reduction.Infeasible as e:
		assert e.mode == 0
	else:
		raise AssertionError("Infeasible not raised")


def test_uncontrollable():
	try:
		selector.select(LinearSystem(numpy.diag([1., 2.]), [[1.], [0.]]))
	except reduction.Uncontrollable:
		pass
	else:
		raise AssertionError("Uncontrollable not raised")


def test_verify_examples():
	system = LinearSystem(numpy.diag([1., 2.]), numpy.eye(2))
	report = selector.verify(system, [0, 1])
	assert report.passed and report.violation is None
	assert all(row.margin > 0. for row in report.margins)
	report = selector.verify(system, [0, 1], 1)
	assert not report.passed
	value, faults = report.violation
	assert abs(value - 1.) < 1e-9 and faults == (0,)
	assert report.to_json()["violation"] == {"eigenvalue": [1., 0.], "faults": [1]}
	assert selector.verify(LinearSystem([[1.]], [[1., 1.]]), [0, 1], 1).passed
	try:
		selector.verify(system, [0, 1], 1, cap = 1)
	except selector.FaultEnumerationTooLarge:
		pass
	else:
		raise AssertionError("cap ignored")


def test_feasibility_examples():
	dec = spectral.decompose(LinearSystem(numpy.diag([1., 2.]), numpy.eye(2)))
	assert selector.feasibility(dec, 0) == (True, None)
	dec = spectral.decompose(LinearSystem(numpy.eye(2), numpy.eye(2)))
	assert selector.feasibility(dec, 1) == (False, 0)
	dec = spectral.decompose(LinearSystem([[1.]], [[1., 1.]]))
	assert selector.feasibility(dec, 1) == (True, None)


def test_strategy_unavailable():
	# columns 1 and 2 coincide, so the frame of the double eigenvalue is not full spark
	system = LinearSystem(numpy.eye(2), [[1., 1., 0.], [0., 0., 1.]])
	for strategy in ("multicover", "greedy"):
		try:
			selector.select(system, strategy = strategy)
		except selector.StrategyUnavailable:
			pass
		else:
			raise AssertionError("%s accepted an uncertified system" % strategy)
	result = selector.select(system)
	assert result.method == "ilp_exact" and result.chosen == (0, 2)


def test_repeated_columns_fall_back_to_exhaustive_search():
	# no 3 of the 4 columns form a full spark frame for the double
	# eigenvalue, yet all 4 actuators survive any single fault
	system = LinearSystem(numpy.eye(2), [[1., 1., 0., 0.], [0., 0., 1., 1.]])
	assert selector.verify(system, range(4), 1).passed
	for strategy in ("auto", "ilp"):
		result = selector.select(system, 1, strategy = strategy)
		assert result.chosen == (0, 1, 2, 3) and result.method == "brute_force" and result.optimal
	for strategy in ("multicover", "greedy"):
		try:
			selector.select(system, 1, strategy = strategy)
		except selector.StrategyUnavailable:
			pass
		else:
			raise AssertionError("%s accepted an uncertified system" % strategy)
	# actuator 3 alone serves the second direction
	system = LinearSystem(numpy.eye(2), [[1., 1., 0.], [0., 0., 1.]])
	for strategy in ("auto", "ilp", "multicover"):
		try:
			selector.select(system, 1, strategy = strategy)
		except reduction.Uncontrollable as e:
			assert e.mode == 0
		else:
			raise AssertionError("Uncontrollable not raised")


def test_certified_path_skips_enumeration():
	# ten actuators per mode, C(30, 1) subsets exceed the cap of 10
	b = numpy.zeros((3, 30))
	for i in range(3):
		b[i, 10 * i:10 * (i + 1)] = numpy.arange(1., 11.)
	system = LinearSystem(numpy.diag([1., 2., 3.]), b)
	result = selector.select(system, enum_cap = 10)
	assert result.method == "multicover_dp" and result.chosen == (0, 10, 20)
	try:
		selector.select(system, strategy = "ilp", enum_cap = 10)
	except reduction.ModeTooLarge:
		pass
	else:
		raise AssertionError("enumeration cap ignored")


def test_against_exhaustive_search():
	skipped = 0
	trials = 0
	for spec, system in generated_systems(7, 500, max_m = 10):
		for f in (0, 1):
			trials += 1
			try:
				result = selector.select(system, f)
			except reduction.Infeasible:
				assert max(ev.geo for ev in spec.eigenvalues) + f > spec.m
				continue
			except reduction.Uncontrollable:
				# some mode has fewer than g_i + f actuators
				assert any(t < ev.geo + f for ev, t in zip(spec.eigenvalues, spec.actuators_per_mode))
				continue
			except spectral.DecompositionFailed:
				skipped += 1
				continue
			oracle = selector.brute_force_select(system, f)
			assert result.cardinality == oracle.cardinality, (spec.to_dict(), f, result, oracle)
			assert result.certificate is not None and all(row.margin > 0. for row in result.certificate)
			assert selector.verify(system, result.chosen, f).passed
	assert skipped <= .05 * trials


def test_integer_systems():
	rng = numpy.random.default_rng(31)
	for trial in range(60):
		n = int(rng.integers(1, 5))
		m = int(rng.integers(1, 7))
		a = numpy.diag(rng.integers(1, 4, size = n).astype(float))
		b = rng.integers(-1, 2, size = (n, m)).astype(float)
		system = LinearSystem(a, b)
		try:
			oracle = selector.brute_force_select(system)
		except reduction.Uncontrollable:
			try:
				selector.select(system)
			except (reduction.Uncontrollable, reduction.Infeasible):
				continue
			raise AssertionError("uncontrollable system accepted")
		for strategy in ("auto", "ilp", "brute"):
			assert selector.select(system, strategy = strategy).cardinality == oracle.cardinality


def test_paths_agree():
	certified = 0
	for spec, system in generated_systems(11, 250, max_m = 10):
		f = 1 if min(spec.actuators_per_mode) > max(ev.geo for ev in spec.eigenvalues) else 0
		try:
			dec = spectral.decompose(system)
		except spectral.DecompositionFailed:
			continue
		t_sets = reduction.detect_spark_structure(dec, f)
		assert t_sets is not None, spec.to_dict()
		certified += 1
		inst = reduction.to_cover_instance(dec, t_sets, f)
		via_ilp = selector.select(system, f, strategy = "ilp")
		dp = selector.select(system, f, strategy = "multicover")
		greedy = selector.select(system, f, strategy = "greedy")
		assert via_ilp.method == "ilp_exact"
		assert dp.method == "multicover_dp" and greedy.method == "multicover_greedy" and not greedy.optimal
		assert dp.cardinality == via_ilp.cardinality
		assert greedy.cardinality <= cover.harmonic(spec.p) * dp.cardinality + 1e-12
		if f == 0 and all(ev.geo == 1 for ev in spec.eigenvalues):
			# plain set cover, one actuator per mode
			assert inst.is_set_cover
			assert dp.cardinality == cover.brute_force_cover(inst).cardinality
	assert certified >= 200


def test_robust_selection():
	for spec, system in generated_systems(23, 40):
		try:
			nominal = selector.select(system)
			robust = selector.select(system, 1)
		except (reduction.Infeasible, reduction.Uncontrollable, spectral.DecompositionFailed):
			continue
		assert robust.cardinality >= nominal.cardinality
		for j in robust.chosen:
			smaller = [k for k in robust.chosen if k != j]
			assert not selector.verify(system, smaller, 1).passed


def test_feasibility_grid():
	for g in (1, 2):
		for m in range(g, 5):
			for f in range(4):
				spec = generator.GeneratorSpec([generator.EigenvalueSpec(1., g, g), generator.EigenvalueSpec(-1.)], [m, m], m, seed = 10 * g + m)
				system = generator.generate(spec)
				try:
					result = selector.select(system, f)
				except reduction.Infeasible:
					assert g + f > m
				else:
					assert g + f <= m
					assert result.cardinality == g + f


def test_result_validation():
	try:
		selector.SelectionResult([0], "multicover_greedy", True)
	except ValueError:
		pass
	else:
		raise AssertionError("optimal greedy result accepted")
	doc = selector.SelectionResult([2, 0], "ilp_exact", True, 1).to_json()
	assert doc == {"chosen": [1, 3], "cardinality": 2, "method": "ilp_exact", "optimal": True, "fault_budget": 1}


if __name__ == '__main__':
	failures = doctest.testmod(selector)[0]
	for name, func in sorted(globals().items()):
		if name.startswith("test_") and name != "test_doctests":
			func()
	sys.exit(bool(failures))
