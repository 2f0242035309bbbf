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
Random linear systems with a prescribed Jordan structure and a prescribed
actuator pattern.

A generator specification is a YAML (or JSON) document such as

	m: 5
	seed: 7
	overlap: 0.3
	conditioning: 1000
	eigenvalues:
	  - {value: 1.0, alg: 2, geo: 2}
	  - {value: [0.5, 2.0], alg: 1, geo: 1}
	actuators_per_mode: [3, 2]

An eigenvalue given as [re, im] with im != 0 stands for the conjugate pair
re +/- i im and occupies 2 alg rows of A.  The system is built as A = P J
P^-1 and B = P B-bar with a random P whose condition number is at most
conditioning.  In B-bar the rows that are left eigenvector coordinates of
mode i are random on the actuator set T_i (|T_i| = actuators_per_mode[i])
and zero elsewhere, so the full spark structure holds with probability 1.
overlap is the probability that an actuator already used by an earlier
mode is drawn again for T_i.

Example:

>>> spec = GeneratorSpec.from_dict({"m": 3, "seed": 1, "eigenvalues": [{"value": 1., "alg": 1, "geo": 1}, {"value": -2., "alg": 1, "geo": 1}], "actuators_per_mode": [1, 2]})
>>> spec.n, spec.p
(2, 2)
>>> system = generate(spec)
>>> system.n, system.m
(2, 3)
"""


import numpy
import yaml


from .. import __author__, __date__, __version__
from .. import MinactError
from .. import spectral


__all__ = [
	"SpecError",
	"ConditioningFailed",
	"EigenvalueSpec",
	"GeneratorSpec",
	"generate",
	"generate_instance"
]


DEFAULT_CONDITIONING = 1e3
DEFAULT_RETRIES = 100


class SpecError(MinactError, ValueError):
	pass


class ConditioningFailed(MinactError):
	pass


#
# =============================================================================
#
#                                Specifications
#
# =============================================================================
#


class EigenvalueSpec(object):
	"""
	One distinct eigenvalue (or conjugate pair, if value has a non-zero
	imaginary part) with algebraic multiplicity alg and geometric
	multiplicity geo.  The Jordan blocks are as equal in size as
	possible.
	"""
	def __init__(self, value, alg = 1, geo = 1):
		self.value = complex(value)
		self.alg = int(alg)
		self.geo = int(geo)
		if self.value.imag < 0.:
			self.value = self.value.conjugate()
		if not (1 <= self.geo <= self.alg):
			raise SpecError("eigenvalue %s:  need 1 <= geo <= alg, got alg = %d, geo = %d" % (self.value, self.alg, self.geo))

	@property
	def is_pair(self):
		return self.value.imag != 0.

	@property
	def dimension(self):
		"""
		Number of rows of A taken by this eigenvalue (and its
		conjugate).
		"""
		return self.alg * (2 if self.is_pair else 1)

	def blocks(self):
		"""
		Jordan block sizes, largest first.

		Example:

		>>> EigenvalueSpec(1., alg = 5, geo = 2).blocks()
		[3, 2]
		"""
		q, r = divmod(self.alg, self.geo)
		return [q + 1] * r + [q] * (self.geo - r)

	@classmethod
	def from_dict(cls, doc):
		try:
			value = doc["value"]
		except (KeyError, TypeError):
			raise SpecError("eigenvalue entry %r has no value" % (doc,))
		if isinstance(value, (list, tuple)):
			if len(value) != 2:
				raise SpecError("eigenvalue %r must be a number or [re, im]" % (value,))
			value = complex(*value)
		try:
			return cls(value, doc.get("alg", 1), doc.get("geo", 1))
		except (TypeError, ValueError) as e:
			if isinstance(e, SpecError):
				raise
			raise SpecError("bad eigenvalue entry %r: %s" % (doc, e))

	def to_dict(self):
		return {"value": [self.value.real, self.value.imag] if self.is_pair else self.value.real, "alg": self.alg, "geo": self.geo}


class GeneratorSpec(object):
	"""
	The parameters of generate().  See the module documentation for the
	document format.
	"""
	def __init__(self, eigenvalues, actuators_per_mode, m, overlap = 0., seed = 0, conditioning = DEFAULT_CONDITIONING, faults = 0, n = None, name = None):
		self.eigenvalues = tuple(eigenvalues)
		self.actuators_per_mode = tuple(int(t) for t in actuators_per_mode)
		self.m = int(m)
		self.overlap = float(overlap)
		self.seed = int(seed)
		self.conditioning = float(conditioning)
		self.faults = int(faults)
		self.name = name

		if not self.eigenvalues:
			raise SpecError("at least one eigenvalue is required")
		if self.m < 1:
			raise SpecError("m must be positive, got %d" % self.m)
		if len(self.actuators_per_mode) != len(self.eigenvalues):
			raise SpecError("actuators_per_mode has %d entries for %d eigenvalues" % (len(self.actuators_per_mode), len(self.eigenvalues)))
		for i, (ev, t) in enumerate(zip(self.eigenvalues, self.actuators_per_mode), 1):
			if not ev.geo <= t <= self.m:
				raise SpecError("mode %d:  need geo = %d <= |T_i| <= m = %d, got |T_i| = %d" % (i, ev.geo, self.m, t))
		for i, j in [(i, j) for i in range(len(self.eigenvalues)) for j in range(i)]:
			if self.eigenvalues[i].value == self.eigenvalues[j].value:
				raise SpecError("eigenvalue %s listed twice" % self.eigenvalues[i].value)
		if n is not None and int(n) != self.n:
			raise SpecError("algebraic multiplicities add up to %d, not n = %d" % (self.n, n))
		if not 0. <= self.overlap <= 1.:
			raise SpecError("overlap must be in [0, 1], got %g" % self.overlap)
		if not self.conditioning >= 1.:
			raise SpecError("conditioning bound must be at least 1, got %g" % self.conditioning)
		if self.faults < 0:
			raise SpecError("faults must be non-negative, got %d" % self.faults)

	@property
	def n(self):
		return sum(ev.dimension for ev in self.eigenvalues)

	@property
	def p(self):
		return len(self.eigenvalues)

	@classmethod
	def from_dict(cls, doc):
		"""
		Build a GeneratorSpec from a parsed document.  SpecError is
		raised for missing or inconsistent fields.
		"""
		if not isinstance(doc, dict):
			raise SpecError("generator specification must be a mapping")
		unknown = set(doc) - {"eigenvalues", "actuators_per_mode", "m", "overlap", "seed", "conditioning", "faults", "n", "name"}
		if unknown:
			raise SpecError("unrecognized field(s) %s" % ", ".join(sorted(unknown)))
		try:
			eigenvalues = [EigenvalueSpec.from_dict(entry) for entry in doc["eigenvalues"]]
			actuators_per_mode = doc["actuators_per_mode"]
			m = doc["m"]
		except KeyError as e:
			raise SpecError("missing field %s" % e)
		except TypeError as e:
			raise SpecError("malformed eigenvalues: %s" % e)
		kwargs = dict((key, doc[key]) for key in ("overlap", "seed", "conditioning", "faults", "n", "name") if key in doc)
		try:
			return cls(eigenvalues, actuators_per_mode, m, **kwargs)
		except (TypeError, ValueError) as e:
			if isinstance(e, SpecError):
				raise
			raise SpecError(str(e))

	def to_dict(self):
		doc = {
			"m": self.m,
			"seed": self.seed,
			"overlap": self.overlap,
			"conditioning": self.conditioning,
			"faults": self.faults,
			"eigenvalues": [ev.to_dict() for ev in self.eigenvalues],
			"actuators_per_mode": list(self.actuators_per_mode)
		}
		if self.name is not None:
			doc["name"] = self.name
		return doc

	@classmethod
	def load(cls, fileobj):
		"""
		Read a specification from a YAML (or JSON) text stream.
		"""
		try:
			doc = yaml.safe_load(fileobj)
		except yaml.YAMLError as e:
			raise SpecError("cannot parse generator specification: %s" % e)
		return cls.from_dict(doc)

	@classmethod
	def load_filename(cls, filename):
		with open(filename) as fileobj:
			return cls.load(fileobj)


#
# =============================================================================
#
#                                  Generation
#
# =============================================================================
#


class GeneratedInstance(object):
	"""
	The output of generate_instance():  the LinearSystem, the actuator
	sets T_i used for each mode (sorted tuples, in the order of the
	specification's eigenvalues), and cond(P).
	"""
	def __init__(self, system, t_sets, condition):
		self.system = system
		self.t_sets = t_sets
		self.condition = condition


def _random_complex(rng, shape, is_pair):
	x = rng.standard_normal(shape)
	if is_pair:
		return x + 1j * rng.standard_normal(shape)
	return x.astype(complex)


def draw_actuator_sets(spec, rng):
	"""
	Draw T_i for every mode.  Each slot takes an actuator already used
	by an earlier mode with probability spec.overlap (or when no fresh
	one is left), otherwise a fresh one.
	"""
	used = []
	fresh = list(range(spec.m))
	t_sets = []
	for t in spec.actuators_per_mode:
		old = list(used)
		new = list(fresh)
		chosen = []
		for slot in range(t):
			if old and (not new or rng.random() < spec.overlap):
				j = old.pop(rng.integers(len(old)))
			else:
				j = new.pop(rng.integers(len(new)))
			chosen.append(j)
		for j in chosen:
			if j in fresh:
				fresh.remove(j)
				used.append(j)
		t_sets.append(tuple(sorted(chosen)))
	return t_sets


def generate_instance(spec, seed = None, retries = DEFAULT_RETRIES):
	"""
	Generate a system for spec.  The random stream is seeded with seed,
	or spec.seed if seed is None.  Returns a GeneratedInstance.
	ConditioningFailed is raised if no P with cond(P) <= spec.conditioning
	is found in retries draws.
	"""
	rng = numpy.random.default_rng(spec.seed if seed is None else seed)
	n, m = spec.n, spec.m
	t_sets = draw_actuator_sets(spec, rng)

	# Jordan matrix and the rows of B-bar, mode by mode
	jordan = numpy.zeros((n, n), dtype = complex)
	b_bar = numpy.zeros((n, m), dtype = complex)
	layout = []
	row = 0
	for ev, t in zip(spec.eigenvalues, t_sets):
		values = (ev.value, ev.value.conjugate()) if ev.is_pair else (ev.value,)
		start = row
		block_rows = numpy.zeros((ev.alg, m), dtype = complex)
		offset = 0
		for size in ev.blocks():
			block_rows[offset:offset + size - 1] = _random_complex(rng, (size - 1, m), ev.is_pair)
			block_rows[offset + size - 1, list(t)] = _random_complex(rng, (len(t),), ev.is_pair)
			offset += size
		for k, value in enumerate(values):
			for size in ev.blocks():
				jordan[row:row + size, row:row + size] = numpy.diag([value] * size) + numpy.diag([1.] * (size - 1), 1)
				row += size
			b_bar[start + k * ev.alg:start + (k + 1) * ev.alg] = block_rows if k == 0 else block_rows.conj()
		layout.append((start, ev))

	for attempt in range(retries):
		transform = numpy.zeros((n, n), dtype = complex)
		for start, ev in layout:
			cols = _random_complex(rng, (n, ev.alg), ev.is_pair)
			transform[:, start:start + ev.alg] = cols
			if ev.is_pair:
				transform[:, start + ev.alg:start + 2 * ev.alg] = cols.conj()
		condition = numpy.linalg.cond(transform)
		if condition <= spec.conditioning:
			break
	else:
		raise ConditioningFailed("no transform with condition number <= %g in %d attempt(s)" % (spec.conditioning, retries))

	a = (transform @ jordan @ numpy.linalg.inv(transform)).real
	b = (transform @ b_bar).real
	return GeneratedInstance(spectral.LinearSystem(a, b), t_sets, float(condition))


def generate(spec, seed = None, retries = DEFAULT_RETRIES):
	"""
	Generate a LinearSystem for spec.  See generate_instance().
	"""
	return generate_instance(spec, seed = seed, retries = retries).system
