from setuptools import setup


__version__ = "0.3.0"
__date__ = "2026-10-19"


setup(
	name = "python-minact",
	version = __version__,
	author = "The minact developers",
	description = "Minimal and fault tolerant actuator selection for linear systems",
	long_description = "Finds smallest sets of actuators that render a linear time-invariant system controllable, optionally after the failure of any f of them.  The problem is solved exactly as a binary program over the Jordan structure of the system, or as a set multicover problem when the input matrix has the required structure, with greedy, dynamic programming and exhaustive solvers, a PBH certificate checker, a random system generator and a benchmark harness.",
	license = "GPL",
	packages = [
		"minact",
		"minact.utils",
	],
	scripts = [
		"bin/minact_analyze",
		"bin/minact_bench",
		"bin/minact_reduce",
		"bin/minact_select",
		"bin/minact_verify",
	],
	classifiers = [
		"Development Status :: 4 - Beta",
		"Intended Audience :: Science/Research",
		"License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)",
		"Natural Language :: English",
		"Operating System :: POSIX",
		"Programming Language :: Python :: 3",
		"Topic :: Scientific/Engineering :: Mathematics",
	],
	python_requires = ">=3.8",
	install_requires = [
		"numpy",
		"pyyaml",
		"scipy",
		"tqdm"
	]
)
