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


"""
Minimal actuator selection for linear time-invariant systems.

Given a system x(t+1) = A x(t) + B u(t), the tools in this package find a
smallest set of columns of B (actuators) that renders (A, B_S)
controllable, optionally remaining controllable after any f of the chosen
actuators fail.  The problem is rewritten, through the Jordan structure of
A and the PBH rank test, as a binary integer linear program, and when the
input matrix has the right structure as a set multicover problem.

The modules are:

	spectral	eigenvalue clustering, Jordan chains, B-bar, rank and
			full spark tests, the PBH test
	reduction	per-mode admissible actuator subsets (the W matrices)
			and the set multicover reduction
	cover		greedy, dynamic programming and brute-force set
			multicover solvers
	ilp		the binary program and its exact branch-and-bound
			solver
	selector	end-to-end selection and certificate checking
	cli		library side of the minact_* command-line tools

All indices in the Python API are 0-based.  The JSON documents read and
written by the command-line tools use 1-based indices.
"""


__author__ = "The minact developers"
__version__ = "0.3.0"
__date__ = "2026-10-19"


class MinactError(Exception):
	"""
	Base class for exceptions raised by this package.
	"""
	pass
