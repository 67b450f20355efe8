"""Exception hierarchy shared by all realcipher modules."""


class CipherError(Exception):
    """Base class for every error raised by this package."""


class FormatOverflow(CipherError):
    """A value is non-finite or too large for the fixed-decimal form."""


class ParseError(CipherError):
    """Serialized ciphertext or a key file does not match its grammar."""


class RoundingDriftError(CipherError):
    """A decrypted real sits too far from the nearest integer code.

    Usually means the wrong key was used or the ciphertext is corrupt.
    """


class CodeRangeError(CipherError):
    """A decrypted value rounds to an integer outside the byte range."""


class SingularMatrixError(CipherError):
    """Matrix is singular or its determinant falls below the floor."""


class KeygenError(CipherError):
    """Random key generation could not satisfy the conditioning bounds."""


class NoRootError(CipherError):
    """No sign change of f(x) - c was found inside the search interval."""


class ConvergenceError(CipherError):
    """A root solver exhausted its iteration budget or diverged."""


class InsufficientDataError(CipherError):
    """Known-plaintext data is too small or rank deficient to solve."""


class InconsistentDataError(CipherError):
    """Attack data contradicts itself (same input, different outputs)."""
