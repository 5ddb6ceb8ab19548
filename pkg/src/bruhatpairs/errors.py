"""Exception types shared across the package.

Guard violations (``TooLarge``, ``BadK``, ``OddN``, ``BadM``,
``MethodMismatch``) signal that a requested computation exceeds a
documented size limit or uses an inapplicable method; bad user input
(``NotAPermutation``, ``LengthMismatch``) signals malformed arguments.
The CLI maps the two groups to different exit codes.
"""


class BruhatPairsError(Exception):
    """Base class for all package errors."""


class NotAPermutation(BruhatPairsError):
    """Input values are not a bijection on 1..n."""


class LengthMismatch(BruhatPairsError):
    """Two permutations of different lengths were compared."""


class TooLarge(BruhatPairsError):
    """A size guard was exceeded."""


class BadK(BruhatPairsError):
    """A level or deletion parameter k is out of range."""


class OddN(BruhatPairsError):
    """An operation defined only for even n was called with odd n."""


class BadM(BruhatPairsError):
    """A corner count m is out of range."""


class MethodMismatch(BruhatPairsError):
    """The requested counting method does not apply to the requested order."""
