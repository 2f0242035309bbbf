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
Spectral analysis of the state matrix of a linear time-invariant system.

This module computes the Jordan structure of A numerically, the
transformed input matrix B-bar = P^-1 B, and provides the rank primitives
used by everything else in the package:  the singular-value rank rule, the
full spark test, and the PBH controllability test.

The Jordan form is not a continuous function of the matrix entries, so the
computation is necessarily tolerance driven.  Eigenvalues are grouped into
clusters of radius eig_cluster * max(||A||_2, 1), generalized eigenvector
chains are built for each cluster from the nullspaces of powers of
(A - lambda I), and the result is rejected if the reconstruction A = P J
P^-1 does not hold to within residual_max.  All three tolerances are
carried by a Tolerances object.

Work is done over the complex field.  For a real A, complex eigenvalues
come in conjugate pairs;  both members of a pair are kept in the spectrum
(so that P and J are square) but only the member with positive imaginary
part is reported as a mode.

Example:

>>> system = LinearSystem([[2., 1.], [0., 2.]], [[0.], [1.]])
>>> dec = decompose(system)
>>> dec.p
1
>>> mode, = dec.modes
>>> mode.alg_mult, mode.geo_mult, mode.zero_rows
(2, 1, (1,))
>>> pbh_check(system, [0])
True
"""


import itertools
import math
import sys
from collections import namedtuple


import numpy
import scipy.linalg


from . import __author__, __date__, __version__
from . import MinactError


__all__ = [
	"Tolerances",
	"LinearSystem",
	"Mode",
	"SpectralDecomposition",
	"distinct_eigenvalues",
	"decompose",
	"jordan_matrix",
	"rank_of",
	"is_full_spark",
	"pbh_margins",
	"pbh_check",
	"kalman_rank"
]


#
# =============================================================================
#
#                                  Exceptions
#
# =============================================================================
#


class InvalidInput(MinactError, ValueError):
	"""
	A matrix is mis-shaped or contains non-finite entries.
	"""
	pass


class InvalidShape(InvalidInput):
	"""
	A matrix has dimensions that the requested operation cannot accept.
	"""
	pass


class IndexOutOfRange(MinactError, ValueError):
	"""
	An actuator index set refers to columns that do not exist.
	"""
	pass


class DecompositionFailed(MinactError):
	"""
	The Jordan structure of A could not be resolved within the requested
	tolerances.  The .residual attribute carries the relative
	reconstruction residual when one was computed, otherwise None.
	"""
	def __init__(self, msg, residual = None):
		super(DecompositionFailed, self).__init__(msg)
		self.residual = residual


#
# =============================================================================
#
#                                 Domain Types
#
# =============================================================================
#


class Tolerances(namedtuple("Tolerances", ("eig_cluster", "rank_rel", "residual_max"))):
	"""
	The numerical tolerances used by the spectral analysis.

	eig_cluster is the eigenvalue grouping radius relative to
	max(||A||_2, 1), rank_rel is the singular value threshold relative
	to the largest singular value, and residual_max is the largest
	relative reconstruction residual ||A - P J P^-1||_F / max(1,
	||A||_F) accepted from decompose().

	Example:

	>>> Tolerances()
	Tolerances(eig_cluster=1e-06, rank_rel=1e-09, residual_max=1e-08)
	>>> Tolerances(rank_rel = 1e-6).rank_rel
	1e-06
	>>> Tolerances(rank_rel = 0)
	Traceback (most recent call last):
	    ...
	minact.spectral.InvalidInput: tolerance rank_rel must be positive and finite, got 0
	"""
	__slots__ = ()

	def __new__(cls, eig_cluster = 1e-6, rank_rel = 1e-9, residual_max = 1e-8):
		for name, value in (("eig_cluster", eig_cluster), ("rank_rel", rank_rel), ("residual_max", residual_max)):
			if not (math.isfinite(value) and value > 0):
				raise InvalidInput("tolerance %s must be positive and finite, got %s" % (name, value))
		return super(Tolerances, cls).__new__(cls, float(eig_cluster), float(rank_rel), float(residual_max))


DEFAULT_TOLERANCES = Tolerances()


def _as_real_matrix(x, name):
	"""
	Convert x to a read-only 2-D float64 array, raising InvalidInput if
	that is not possible or if x has non-finite entries.
	"""
	x = numpy.array(x)
	if numpy.iscomplexobj(x):
		raise InvalidInput("%s must be real" % name)
	try:
		x = x.astype(numpy.float64)
	except (TypeError, ValueError):
		raise InvalidInput("%s is not numeric" % name)
	if x.ndim != 2:
		raise InvalidInput("%s must be a matrix, got %d dimension(s)" % (name, x.ndim))
	if not numpy.isfinite(x).all():
		raise InvalidInput("%s has non-finite entries" % name)
	x.flags.writeable = False
	return x


class LinearSystem(object):
	"""
	The pair (A, B) of the discrete-time system x(t+1) = A x(t) + B
	u(t).  A is n x n, B is n x m, both real and finite.  The columns of
	B are the actuators.  The dynamics are never simulated, only the
	matrices are used.  The arrays are stored read-only.

	Example:

	>>> system = LinearSystem([[1., 0.], [0., 2.]], [[1.], [1.]])
	>>> system.n, system.m
	(2, 1)
	>>> LinearSystem([[1., 0.]], [[1.]])
	Traceback (most recent call last):
	    ...
	minact.spectral.InvalidInput: A must be square, got shape (1, 2)
	"""
	def __init__(self, a, b):
		self.a = _as_real_matrix(a, "A")
		self.b = _as_real_matrix(b, "B")
		if self.a.shape[0] != self.a.shape[1]:
			raise InvalidInput("A must be square, got shape %s" % (self.a.shape,))
		if self.a.shape[0] < 1:
			raise InvalidInput("A must have at least one row")
		if self.b.shape[0] != self.a.shape[0]:
			raise InvalidInput("B must have %d rows, got %d" % (self.a.shape[0], self.b.shape[0]))
		if self.b.shape[1] < 1:
			raise InvalidInput("B must have at least one column")

	@property
	def n(self):
		return self.a.shape[0]

	@property
	def m(self):
		return self.b.shape[1]

	def __repr__(self):
		return "LinearSystem(n=%d, m=%d)" % (self.n, self.m)


class Mode(namedtuple("Mode", ("eigenvalue", "alg_mult", "geo_mult", "zero_rows", "blocks", "conjugate_of"))):
	"""
	One distinct eigenvalue of A.

	eigenvalue is the (complex) eigenvalue, alg_mult and geo_mult are
	its algebraic and geometric multiplicities, zero_rows is the tuple
	of row indices of J - eigenvalue * I that are zero (the bottom row
	of each Jordan block, one per block, so len(zero_rows) = geo_mult),
	and blocks is the tuple of the sizes of those Jordan blocks in the
	same order.  conjugate_of is None unless this mode is the retained
	member of a complex-conjugate pair, in which case it is the index in
	SpectralDecomposition.spectrum of the dropped partner.
	"""
	__slots__ = ()


class SpectralDecomposition(object):
	"""
	The result of decompose().

	Attributes:

	spectrum -- a tuple of Mode objects, one for every eigenvalue
	cluster including both members of conjugate pairs, in the order
	their Jordan chains appear as columns of transform.

	modes -- the tuple of modes that are processed by the selection
	machinery:  real eigenvalues and the positive-imaginary-part member
	of each conjugate pair.

	transform -- the complex n x n matrix P.

	jordan -- the complex n x n Jordan matrix J.

	b_bar -- the complex n x m matrix P^-1 B.

	residual -- ||A - P J P^-1||_F / max(1, ||A||_F).
	"""
	def __init__(self, spectrum, modes, transform, jordan, b_bar, residual):
		self.spectrum = tuple(spectrum)
		self.modes = tuple(modes)
		self.transform = transform
		self.jordan = jordan
		self.b_bar = b_bar
		self.residual = residual
		for arr in (self.transform, self.jordan, self.b_bar):
			arr.flags.writeable = False

	@property
	def p(self):
		return len(self.modes)

	@property
	def n(self):
		return self.b_bar.shape[0]

	@property
	def m(self):
		return self.b_bar.shape[1]

	@property
	def max_geo_mult(self):
		"""
		G(A), the largest geometric multiplicity over the modes.
		"""
		return max(mode.geo_mult for mode in self.modes)

	def b_bar_rows(self, i):
		"""
		Return the geo_mult x m block of B-bar made of the zero rows of
		mode i.
		"""
		return self.b_bar[list(self.modes[i].zero_rows), :]

	def __repr__(self):
		return "SpectralDecomposition(n=%d, m=%d, p=%d, residual=%.3g)" % (self.n, self.m, self.p, self.residual)


#
# =============================================================================
#
#                               Rank Primitives
#
# =============================================================================
#


def _as_finite(mat):
	mat = numpy.asarray(mat)
	if mat.ndim != 2:
		raise InvalidShape("expected a matrix, got %d dimension(s)" % mat.ndim)
	if not numpy.isfinite(mat).all():
		raise InvalidInput("matrix has non-finite entries")
	return mat


def _rank_from_singular_values(sv, tol):
	if not len(sv) or sv[0] == 0.:
		return 0
	return int((sv > tol.rank_rel * sv[0]).sum())


def rank_of(mat, tol = None):
	"""
	Numerical rank of a real or complex matrix:  the number of singular
	values exceeding tol.rank_rel times the largest one.  An all-zero
	(or empty) matrix has rank 0.

	Example:

	>>> rank_of(numpy.eye(3))
	3
	>>> rank_of(numpy.zeros((2, 3)))
	0
	>>> rank_of([[1., 2.], [2., 4.]])
	1
	"""
	if tol is None:
		tol = DEFAULT_TOLERANCES
	mat = _as_finite(mat)
	if not mat.size:
		return 0
	return _rank_from_singular_values(scipy.linalg.svdvals(mat), tol)


def is_full_spark(mat, tol = None):
	"""
	Return True if every set of g columns of the g x t matrix mat is
	linearly independent (a full spark frame).  This is checked by
	enumerating all C(t, g) column subsets.  InvalidShape is raised if
	t < g.

	Example:

	>>> is_full_spark([[1., 0., 1.], [0., 1., 1.]])
	True
	>>> is_full_spark([[1., 1., 0.], [2., 2., 1.]])
	False
	>>> is_full_spark([[1., 0.], [0., 1.], [1., 1.]])
	Traceback (most recent call last):
	    ...
	minact.spectral.InvalidShape: full spark test needs at least as many columns as rows, got 3 x 2
	"""
	if tol is None:
		tol = DEFAULT_TOLERANCES
	mat = _as_finite(mat)
	g, t = mat.shape
	if g < 1 or t < g:
		raise InvalidShape("full spark test needs at least as many columns as rows, got %d x %d" % (g, t))
	return all(rank_of(mat[:, list(cols)], tol) == g for cols in itertools.combinations(range(t), g))


#
# =============================================================================
#
#                             Eigenvalue Clusters
#
# =============================================================================
#


Eigenvalue = namedtuple("Eigenvalue", ("value", "multiplicity", "partner"))
Eigenvalue.__doc__ = """
A cluster of numerically coincident eigenvalues.  value is the cluster
mean, multiplicity the number of eigenvalues in the cluster, and partner
is None unless value has negative imaginary part and the conjugate
cluster was found, in which case it is that cluster's index.
"""


def cluster_radius(a, tol = None):
	"""
	The eigenvalue grouping radius for the matrix a.
	"""
	if tol is None:
		tol = DEFAULT_TOLERANCES
	return tol.eig_cluster * max(numpy.linalg.norm(a, 2), 1.)


def distinct_eigenvalues(a, tol = None):
	"""
	Compute the eigenvalues of the square matrix a and group those
	closer than cluster_radius() to each other (single linkage).  Returns
	a list of Eigenvalue tuples sorted by real part, then by the
	magnitude of the imaginary part, with the positive member of each
	conjugate pair immediately before its partner.  Cluster means whose
	imaginary part is within the radius of the real axis are made real,
	and conjugate cluster means are made exact conjugates of each other.

	Example:

	>>> [(ev.value, ev.multiplicity) for ev in distinct_eigenvalues(numpy.diag([3., 1., 1.]))]
	[((1+0j), 2), ((3+0j), 1)]
	>>> rot = [[0., -1.], [1., 0.]]
	>>> [(round(ev.value.imag, 6), ev.partner) for ev in distinct_eigenvalues(rot)]
	[(1.0, None), (-1.0, 0)]
	"""
	if tol is None:
		tol = DEFAULT_TOLERANCES
	a = _as_finite(a)
	values = scipy.linalg.eigvals(a)
	radius = cluster_radius(a, tol)

	# single-linkage clustering with a union-find forest
	parent = list(range(len(values)))
	def find(i):
		while parent[i] != i:
			parent[i] = parent[parent[i]]
			i = parent[i]
		return i
	for i, j in itertools.combinations(range(len(values)), 2):
		if abs(values[i] - values[j]) <= radius:
			parent[find(i)] = find(j)
	groups = {}
	for i, value in enumerate(values):
		groups.setdefault(find(i), []).append(value)

	centres = []
	for members in groups.values():
		centre = complex(numpy.mean(members))
		# no negative zeros
		centre = complex(centre.real + 0., centre.imag + 0.)
		if abs(centre.imag) <= radius:
			centre = complex(centre.real, 0.)
		centres.append([centre, len(members)])

	# pair conjugates exactly
	for entry in centres:
		if entry[0].imag < 0.:
			target = entry[0].conjugate()
			candidates = [other for other in centres if other[0].imag > 0. and other[1] == entry[1] and abs(other[0] - target) <= radius]
			if candidates:
				entry[0] = min(candidates, key = lambda other: abs(other[0] - target))[0].conjugate()

	centres.sort(key = lambda entry: (entry[0].real, abs(entry[0].imag), entry[0].imag < 0.))
	result = []
	for centre, multiplicity in centres:
		partner = None
		if centre.imag < 0.:
			for index, other in enumerate(result):
				if other.value == centre.conjugate() and other.multiplicity == multiplicity and other.partner is None:
					partner = index
					break
		result.append(Eigenvalue(centre, multiplicity, partner))
	return result


#
# =============================================================================
#
#                             Jordan Decomposition
#
# =============================================================================
#


def _kernel(mat, cutoff):
	# orthonormal basis of the right singular vectors with singular
	# value at most cutoff
	u, sv, vh = scipy.linalg.svd(mat)
	rank = int((sv > cutoff).sum())
	return vh[rank:].conj().T


def _jordan_chains(a, value, alg_mult, tol):
	"""
	Build the generalized eigenvector chains of a for the eigenvalue
	value of algebraic multiplicity alg_mult.  Returns a list of chains,
	longest first, each a list of vectors [v_1, ..., v_k] with (a -
	value I) v_1 = 0 and (a - value I) v_j = v_{j-1}.

	The kernel of (a - value I)^k is taken with the absolute cutoff
	tol.rank_rel * max(||a||_2, 1)^k, so a power that is zero up to
	rounding has the full space as its kernel.
	"""
	n = a.shape[0]
	shifted = a - value * numpy.eye(n)
	scale = max(numpy.linalg.norm(a, 2), 1.)

	# nested kernels of the powers of the shifted matrix
	kernels = [numpy.zeros((n, 0), dtype = complex)]
	power = numpy.eye(n, dtype = complex)
	while kernels[-1].shape[1] < alg_mult:
		power = shifted @ power
		kernel = _kernel(power, tol.rank_rel * scale**len(kernels))
		if kernel.shape[1] <= kernels[-1].shape[1] or kernel.shape[1] > alg_mult:
			raise DecompositionFailed("kernel dimensions of (A - %s I)^k do not reach the algebraic multiplicity %d (stalled at %d)" % (value, alg_mult, kernel.shape[1]))
		kernels.append(kernel)

	# number of blocks of size >= k, then of size exactly k
	at_least = [kernels[k].shape[1] - kernels[k - 1].shape[1] for k in range(1, len(kernels))] + [0]
	exactly = [at_least[k] - at_least[k + 1] for k in range(len(at_least) - 1)]

	chains = []
	for k in range(len(kernels) - 1, 0, -1):
		need = exactly[k - 1]
		if not need:
			continue
		# directions of ker(N^k) already accounted for:  ker(N^(k-1))
		# and the level-k vectors of the longer chains
		known = numpy.column_stack([kernels[k - 1]] + [chain[k - 1] for chain in chains])
		candidates = kernels[k]
		if known.shape[1]:
			basis = scipy.linalg.orth(known)
			candidates = candidates - basis @ (basis.conj().T @ candidates)
		u, sv, vh = scipy.linalg.svd(candidates, full_matrices = False)
		if len(sv) < need or not sv[0] or sv[need - 1] <= tol.rank_rel * sv[0]:
			raise DecompositionFailed("cannot find %d independent Jordan chain(s) of length %d for eigenvalue %s" % (need, k, value))
		for top in u[:, :need].T:
			chain = [top]
			for i in range(k - 1):
				chain.insert(0, shifted @ chain[0])
			chains.append(chain)
	return chains


def _assemble_jordan(spectrum, n):
	j = numpy.zeros((n, n), dtype = complex)
	for mode in spectrum:
		for size, bottom in zip(mode.blocks, mode.zero_rows):
			for row in range(bottom - size + 1, bottom + 1):
				j[row, row] = mode.eigenvalue
				if row < bottom:
					j[row, row + 1] = 1.
	return j


def jordan_matrix(dec):
	"""
	Reassemble the Jordan matrix J from the modes in dec.spectrum.

	Example:

	>>> dec = decompose(LinearSystem([[2., 1.], [0., 2.]], [[0.], [1.]]))
	>>> jordan_matrix(dec).real
	array([[2., 1.],
	       [0., 2.]])
	"""
	return _assemble_jordan(dec.spectrum, dec.n)


def decompose(system, tol = None, verbose = False):
	"""
	Compute the Jordan decomposition A = P J P^-1 of system.a and the
	transformed input matrix B-bar = P^-1 B.  Returns a
	SpectralDecomposition.

	Eigenvalues are clustered with distinct_eigenvalues(), the geometric
	multiplicity of each cluster is dim ker(A - lambda I) under the rank
	rule, and the bottom row of every Jordan block of lambda is recorded
	as a zero row of J - lambda I.  The chains of the negative member of
	a conjugate pair are the complex conjugates of its partner's chains.

	DecompositionFailed is raised if the chains cannot be built, if P is
	singular, or if the reconstruction residual exceeds tol.residual_max.

	Example:

	>>> dec = decompose(LinearSystem(numpy.diag([1., 2., 3.]), numpy.eye(3)))
	>>> dec.p, [(mode.alg_mult, mode.geo_mult) for mode in dec.modes]
	(3, [(1, 1), (1, 1), (1, 1)])
	>>> dec = decompose(LinearSystem(numpy.eye(2), numpy.eye(2)))
	>>> dec.p, dec.modes[0].geo_mult, dec.modes[0].zero_rows
	(1, 2, (0, 1))
	>>> dec = decompose(LinearSystem([[0., -1.], [1., 0.]], [[1.], [0.]]))
	>>> dec.p, len(dec.spectrum), dec.modes[0].conjugate_of
	(1, 2, 1)
	"""
	if tol is None:
		tol = DEFAULT_TOLERANCES
	a = system.a
	n = system.n

	clusters = distinct_eigenvalues(a, tol)
	if verbose:
		sys.stderr.write("%d eigenvalue cluster(s) for n = %d\n" % (len(clusters), n))

	columns = []
	chains_by_cluster = []
	spectrum = []
	for cluster in clusters:
		if cluster.partner is not None:
			chains = [[v.conj() for v in chain] for chain in chains_by_cluster[cluster.partner]]
		else:
			chains = _jordan_chains(a, cluster.value, cluster.multiplicity, tol)
		chains_by_cluster.append(chains)
		zero_rows = []
		for chain in chains:
			columns.extend(chain)
			zero_rows.append(len(columns) - 1)
		spectrum.append(Mode(cluster.value, cluster.multiplicity, len(chains), tuple(zero_rows), tuple(len(chain) for chain in chains), None))
		if verbose:
			sys.stderr.write("eigenvalue %s:  a = %d, g = %d, Jordan blocks %s\n" % (cluster.value, cluster.multiplicity, len(chains), spectrum[-1].blocks))

	if len(columns) != n:
		raise DecompositionFailed("Jordan chains span %d dimension(s), expected %d" % (len(columns), n))

	# mark retained members of conjugate pairs
	for index, cluster in enumerate(clusters):
		if cluster.partner is not None:
			spectrum[cluster.partner] = spectrum[cluster.partner]._replace(conjugate_of = index)
	modes = [mode for mode, cluster in zip(spectrum, clusters) if cluster.partner is None]

	transform = numpy.column_stack(columns)
	try:
		inverse = scipy.linalg.inv(transform)
	except (numpy.linalg.LinAlgError, ValueError):
		raise DecompositionFailed("generalized eigenvector matrix P is singular")

	jordan = _assemble_jordan(spectrum, n)
	residual = float(numpy.linalg.norm(a - transform @ jordan @ inverse, "fro") / max(1., numpy.linalg.norm(a, "fro")))
	if not residual <= tol.residual_max:
		raise DecompositionFailed("relative reconstruction residual %.3g exceeds %.3g" % (residual, tol.residual_max), residual = residual)
	if verbose:
		sys.stderr.write("Jordan decomposition residual %.3g\n" % residual)
	return SpectralDecomposition(spectrum, modes, transform, jordan, inverse @ system.b, residual)


#
# =============================================================================
#
#                                   PBH Test
#
# =============================================================================
#


def check_index_set(s, m):
	"""
	Return the actuator index set s as a sorted tuple of distinct ints,
	raising IndexOutOfRange if any index is not in range(m).

	Example:

	>>> check_index_set([2, 0, 2], 3)
	(0, 2)
	>>> check_index_set([3], 3)
	Traceback (most recent call last):
	    ...
	minact.spectral.IndexOutOfRange: actuator index 3 out of range for m = 3
	"""
	result = set()
	for j in s:
		if int(j) != j or not 0 <= j < m:
			raise IndexOutOfRange("actuator index %s out of range for m = %d" % (j, m))
		result.add(int(j))
	return tuple(sorted(result))


PBHRow = namedtuple("PBHRow", ("eigenvalue", "rank", "margin"))


def pbh_margins(system, s, tol = None, eigenvalues = None):
	"""
	Evaluate the PBH matrix [A - lambda I, B_s] at every distinct
	eigenvalue lambda of A.  Returns a list of PBHRow tuples (eigenvalue,
	rank, margin) in the order of distinct_eigenvalues(), where margin is
	the n-th largest singular value (0 if there are fewer than n
	columns).  eigenvalues, if given, is the list of distinct eigenvalues
	to test instead of those computed by distinct_eigenvalues().
	"""
	if tol is None:
		tol = DEFAULT_TOLERANCES
	cols = check_index_set(s, system.m)
	n = system.n
	bs = system.b[:, list(cols)]
	rows = []
	if eigenvalues is None:
		eigenvalues = [cluster.value for cluster in distinct_eigenvalues(system.a, tol)]
	for value in eigenvalues:
		sv = scipy.linalg.svdvals(numpy.hstack((system.a - value * numpy.eye(n), bs)))
		rows.append(PBHRow(value, _rank_from_singular_values(sv, tol), float(sv[n - 1]) if len(sv) >= n else 0.))
	return rows


def pbh_check(system, s, tol = None):
	"""
	Return True if (A, B_s) passes the PBH test, that is, rank [A -
	lambda I, B_s] = n at every distinct eigenvalue lambda of A.  An
	empty s is allowed and always fails.

	Example:

	>>> pbh_check(LinearSystem(numpy.diag([1., 2.]), [[1.], [1.]]), [0])
	True
	>>> pbh_check(LinearSystem(numpy.diag([1., 2.]), numpy.eye(2)), [0])
	False
	>>> pbh_check(LinearSystem(numpy.diag([1., 2.]), numpy.eye(2)), [])
	False
	"""
	return all(row.rank == system.n for row in pbh_margins(system, s, tol))


def kalman_rank(system, s, tol = None):
	"""
	Rank of the controllability matrix [B_s, A B_s, ..., A^(n-1) B_s].
	(A, B_s) is controllable if and only if this equals n.

	Example:

	>>> kalman_rank(LinearSystem([[2., 1.], [0., 2.]], [[0.], [1.]]), [0])
	2
	"""
	cols = check_index_set(s, system.m)
	if not cols:
		return 0
	block = system.b[:, list(cols)]
	blocks = [block]
	for i in range(system.n - 1):
		block = system.a @ block
		blocks.append(block)
	return rank_of(numpy.hstack(blocks), tol)
