# Copyright (c) 2006, Mathieu Fenniak
# All rights reserved.
#
# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are
# met:
#
# * Redistributions of source code must retain the above copyright notice,
# this list of conditions and the following disclaimer.
# * Redistributions in binary form must reproduce the above copyright notice,
# this list of conditions and the following disclaimer in the documentation
# and/or other materials provided with the distribution.
# * The name of the author may not be used to endorse or promote products
# derived from this software without specific prior written permission.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS"
# AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE
# IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE
# ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT OWNER OR CONTRIBUTORS BE
# LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR
# CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
# SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
# INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
# CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
# ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED OF THE
# POSSIBILITY OF SUCH DAMAGE.
"""
Utility functions, limits and exceptions shared by the reflex modules.
"""
import math
import sys
import warnings

# Default limits. The command line may override the first two through
# REFLEX_MAX_PARTITION_LEN and flags; the library only takes them as
# keyword arguments.
MAX_PARTITION_LENGTH = 7
MAX_CLASSIFY_DIMENSION = 4
OVERRIDE_CLASSIFY_DIMENSION = 5
MAX_BOX_CELLS = 10 ** 9
MAX_CANONICAL_DIMENSION = 6

# Vardi's constant, A076393. The last VARDI_GUARD_DIGITS digits are
# treated as uncertain when the floor formula is checked; expansions with
# fewer than VARDI_MIN_DIGITS significant digits draw a warning.
VARDI_DIGITS = "1.26408473530530111307959958416466949111456017920906553"
VARDI_GUARD_DIGITS = 1
VARDI_MIN_DIGITS = 40


def is_int(n__):
    """Test if arg is an integer (booleans excluded)."""
    return isinstance(n__, int) and not isinstance(n__, bool)


def gcd_all(values):
    """gcd of an iterable of integers; 0 for an empty one."""
    return math.gcd(*values)


def lcm_all(values):
    """lcm of an iterable of integers; 1 for an empty one."""
    return math.lcm(*values)


def product(values):
    """Exact product of integers or fractions."""
    return math.prod(values)


def parse_int(text, what="value"):
    """
    Decode a JSON integer field. Both decimal strings and plain JSON
    numbers are accepted, floats and booleans are not.
    """
    if is_int(text):
        return text
    if isinstance(text, str):
        stripped = text.strip()
        body = stripped[1:] if stripped[:1] in "+-" else stripped
        if body.isdigit():
            return int(stripped)
    raise ValueError("%s must be an integer or a decimal string, got %r" % (what, text))


def parse_int_list(text):
    """
    Parse "2,3,6", "(2, 3, 6)" or "[2,3,6]" into a list of ints.
    """
    body = text.strip().strip("()[]")
    if not body:
        return []
    return [parse_int(part, "entry") for part in body.replace(" ", "").split(",")]


def pairs(sequence):
    """
    :param sequence: an indexable sequence value with ``__len__()``.
    :return: an iterable of all index pairs ``(i, j)`` with ``i < j``.
    """
    for i in range(len(sequence)):
        for j in range(i + 1, len(sequence)):
            yield (i, j)


# custom implementation of warnings.formatwarning
def format_warning(message, category, filename, lineno, line=None):         #pylint: to match warnings API disable=unused-argument
    """ format warning message """
    file = filename.replace("/", "\\").rsplit("\\", 1)[-1]  # find the file name
    return "%s: %s [%s:%s]\n" % (category.__name__, message, file, lineno)


def install_warning_format(warndest=None):
    """
    Route ``warnings`` through :func:`format_warning` onto ``warndest``
    (defaults to ``sys.stderr`` at the time of the warning).
    """
    def _showwarning(message, category, filename, lineno, file=None, line=None):        #pylint: showwarning API disable=too-many-arguments
        file = file or warndest or sys.stderr
        try:
            file.write(format_warning(message, category, filename, lineno, line))
        except IOError:
            pass

    warnings.showwarning = _showwarning


class ReflexError(Exception):
    """ Base class of every error raised by the reflex package """


class PartitionError(ReflexError, ValueError):
    """ Malformed unit partition or refused enumeration """


class WeightSystemError(ReflexError, ValueError):
    """ Weight system not fit for the requested operation """


class SimplexError(ReflexError, ValueError):
    """ Degenerate or malformed lattice simplex """


class LimitError(ReflexError, ValueError):
    """ A configured size guard or range limit was exceeded """


class ClassificationError(ReflexError):
    """ Classification data is incomplete or inconsistent """


class RecordFormatError(ClassificationError):
    """ A persisted record failed parsing or its invariants """

    def __init__(self, message, path=None, lineno=None):
        self.path = path
        self.lineno = lineno
        where = ""
        if path is not None and lineno is not None:
            where = "%s:%d: " % (path, lineno)
        elif lineno is not None:
            where = "line %d: " % lineno
        super().__init__(where + message)


class ReflexWarning(UserWarning):
    """ Recoverable oddities: overrides in effect, inconclusive checks """
