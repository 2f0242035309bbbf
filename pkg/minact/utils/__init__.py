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
Reading and writing the JSON documents used by the minact tools.

Documents may be compressed with gzip, bzip2 or xz.  On input the format
is recognized from the first few bytes of the stream;  on output it is
selected from the filename extension.  A filename of None means stdin or
stdout.

Example:

>>> from io import BytesIO
>>> import gzip
>>> load_fileobj(BytesIO(gzip.compress(b'{"universe": 0, "coverage": [], "sets": []}')))
{'universe': 0, 'coverage': [], 'sets': []}
>>> f = BytesIO()
>>> write_fileobj({"chosen": [1, 3]}, f)
>>> f.getvalue()
b'{\\n  "chosen": [\\n    1,\\n    3\\n  ]\\n}\\n'
"""


import bz2
import gzip
import json
import lzma
import os
import signal
import sys


from .. import __author__, __date__, __version__
from .. import MinactError


__all__ = [
	"ParseError",
	"load_fileobj",
	"load_filename",
	"write_fileobj",
	"write_filename",
	"write_text"
]


class ParseError(MinactError, ValueError):
	"""
	A document could not be parsed.  filename, line and field, when
	known, locate the problem.
	"""
	def __init__(self, msg, filename = None, line = None, field = None):
		where = []
		if filename is not None:
			where.append("'%s'" % filename)
		if line is not None:
			where.append("line %d" % line)
		if field is not None:
			where.append("field '%s'" % field)
		if where:
			msg = "%s: %s" % (", ".join(where), msg)
		super(ParseError, self).__init__(msg)
		self.filename = filename
		self.line = line
		self.field = field


#
# =============================================================================
#
#                             Named File Utilities
#
# =============================================================================
#


class SignalsTrap(object):
	"""
	Context manager that defers signals (by default SIGTERM and
	SIGTSTP) for its lifetime.  The handlers of the requested signals
	are replaced by one that records them;  on exit the original
	handlers are restored and the recorded signals are re-sent to the
	current process in the order received.  Wrapping a file write in it
	means a batch scheduler's termination request arrives after the
	file is closed.

	trap_signals may be None or empty, in which case signal handling is
	not touched.  signal.signal() cannot be called from threads, so
	code that might run in a thread must pass None.
	"""
	default_signals = (signal.SIGTERM, signal.SIGTSTP)

	def __init__(self, trap_signals = default_signals):
		self.trap_signals = trap_signals

	def handler(self, signum, frame):
		self.deferred_signals.append(signum)

	def __enter__(self):
		self.oldhandlers = {}
		self.deferred_signals = []
		if self.trap_signals:
			for sig in set(self.trap_signals):
				self.oldhandlers[sig] = signal.getsignal(sig)
				signal.signal(sig, self.handler)
		return self

	def __exit__(self, *args):
		while self.oldhandlers:
			signal.signal(*self.oldhandlers.popitem())
		while self.deferred_signals:
			os.kill(os.getpid(), self.deferred_signals.pop(0))
		return False


class tildefile(object):
	"""
	Context manager for writing a named file safely.  Data go to the
	filename with "~" appended, and that file is renamed to filename
	only if the block exits without an exception, so an existing
	document is never left half-overwritten.  A file named filename +
	"~" is silently clobbered.
	"""
	def __init__(self, filename):
		if not filename:
			raise ValueError(filename)
		self.filename = filename
		self.tildefilename = filename + "~"

	def __enter__(self):
		self.fobj = open(self.tildefilename, "wb")
		return self.fobj

	def __exit__(self, exc_type, exc_val, exc_tb):
		self.fobj.close()
		del self.fobj
		if exc_type is None:
			os.rename(self.tildefilename, self.filename)
		else:
			try:
				os.remove(self.tildefilename)
			except OSError:
				pass
		return False


#
# =============================================================================
#
#                                 Input/Output
#
# =============================================================================
#


def sniff_compression(data):
	"""
	Identify the compression format of the bytes data from its magic
	number.  Returns "bz2", "gz", "xz", or False.
	"""
	if data[:3] == b"\x42\x5A\x68":
		return "bz2"
	if data[:2] == b"\x1F\x8B":
		return "gz"
	if data[:6] == b"\xFD\x37\x7A\x58\x5A\x00":
		return "xz"
	return False


_decompressors = {
	False: lambda data: data,
	"bz2": bz2.decompress,
	"gz": gzip.decompress,
	"xz": lzma.decompress
}


def load_fileobj(fileobj, compress = None, filename = None):
	"""
	Parse the JSON document read from the binary file object fileobj
	and return it.  compress is "auto" or None to recognize the
	compression format from the data, False to disable decompression,
	or one of "bz2", "gz", "xz".  filename is used only in error
	messages.  ParseError is raised if the data are not valid JSON.
	"""
	data = fileobj.read()
	if compress is None or compress == "auto":
		compress = sniff_compression(data)
	try:
		decompress = _decompressors[compress]
	except KeyError:
		raise ValueError("unrecognized compress \"%s\"" % compress)
	try:
		text = decompress(data).decode("utf-8")
	except (OSError, EOFError, lzma.LZMAError, UnicodeDecodeError) as e:
		raise ParseError("cannot decode input: %s" % e, filename = filename)
	try:
		return json.loads(text)
	except json.JSONDecodeError as e:
		raise ParseError("%s (column %d)" % (e.msg, e.colno), filename = filename, line = e.lineno)


def load_filename(filename, verbose = False, **kwargs):
	"""
	Parse the JSON document in the file named filename, or stdin if
	filename is None.  Keyword arguments are passed to load_fileobj().
	"""
	if verbose:
		sys.stderr.write("reading %s ...\n" % (("'%s'" % filename) if filename is not None else "stdin"))
	if filename is None:
		return load_fileobj(sys.stdin.buffer, filename = "stdin", **kwargs)
	with open(filename, "rb") as fileobj:
		return load_fileobj(fileobj, filename = filename, **kwargs)


_compressors = {
	False: lambda data, compresslevel: data,
	"bz2": lambda data, compresslevel: bz2.compress(data, compresslevel),
	# fixed mtime keeps the output byte-identical between runs
	"gz": lambda data, compresslevel: gzip.compress(data, compresslevel, mtime = 0),
	"xz": lambda data, compresslevel: lzma.compress(data, format = lzma.FORMAT_XZ)
}


def dumps(doc):
	"""
	The text form of a document as written by write_fileobj().
	"""
	return json.dumps(doc, indent = 2) + "\n"


def write_fileobj(doc, fileobj, compress = None, compresslevel = 3):
	"""
	Write the JSON-serializable object doc to the binary file object
	fileobj, indented, with a trailing newline.  compress is False or
	None for no compression, or one of "bz2", "gz", "xz".
	"""
	if compress is None:
		compress = False
	try:
		compressor = _compressors[compress]
	except KeyError:
		raise ValueError("unrecognized compress \"%s\"" % compress)
	fileobj.write(compressor(dumps(doc).encode("utf-8"), compresslevel))
	fileobj.flush()


def write_filename(doc, filename, verbose = False, compress = None, with_mv = True, trap_signals = SignalsTrap.default_signals, **kwargs):
	"""
	Write doc to the file named filename, or stdout if filename is None.
	With compress None or "auto" the format follows the extension
	(".bz2", ".gz", ".xz", otherwise uncompressed).  If with_mv is True
	the file is written through tildefile.  The signals in trap_signals
	are deferred while writing.  Remaining keyword arguments are passed
	to write_fileobj().

	Example:

	>>> write_filename({"chosen": [1]}, "result.json.gz")	# doctest: +SKIP
	"""
	if compress is None or compress == "auto":
		if filename is None:
			compress = False
		elif filename.endswith(".bz2"):
			compress = "bz2"
		elif filename.endswith(".gz"):
			compress = "gz"
		elif filename.endswith(".xz"):
			compress = "xz"
		else:
			compress = False

	if verbose:
		sys.stderr.write("writing %s ...\n" % (("'%s'" % filename) if filename is not None else "stdout"))
	with SignalsTrap(trap_signals):
		if filename is None:
			write_fileobj(doc, sys.stdout.buffer, compress = compress, **kwargs)
		else:
			binary_open = lambda filename: open(filename, "wb")
			with (binary_open if not with_mv else tildefile)(filename) as fileobj:
				write_fileobj(doc, fileobj, compress = compress, **kwargs)


def write_text(text, filename, verbose = False, trap_signals = SignalsTrap.default_signals):
	"""
	Write the string text, uncompressed, to the file named filename
	through tildefile, or to stdout if filename is None.
	"""
	if verbose:
		sys.stderr.write("writing %s ...\n" % (("'%s'" % filename) if filename is not None else "stdout"))
	if filename is None:
		sys.stdout.write(text)
		sys.stdout.flush()
		return
	with SignalsTrap(trap_signals):
		with tildefile(filename) as fileobj:
			fileobj.write(text.encode("utf-8"))
