"""Fixed-decimal scalar formatting, parsing, and code rounding.

Every serialized ciphertext value in this package is a binary64 real
rendered as a plain decimal token::

    token := ['-'] int_digits '.' frac_digits
    int_digits  := '0' | nonzero digit followed by digits
    frac_digits := exactly ``fractional_digits`` digits

No exponent notation, no superfluous leading zeros, rounding is
half-away-from-zero.  The same token grammar is shared by every module
that reads or writes ciphertext, so formatting must be deterministic:
the token is a pure function of the value's bit pattern and the spec.

The functions below operate on plain Python floats.  Nothing in the
interfaces assumes binary64 beyond the digit-count cap, so a
higher-precision scalar backend can replace the internals without
signature changes.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext

import numpy as np

from .errors import CodeRangeError, FormatOverflow, ParseError, RoundingDriftError

# A real value; binary64 in the required backend.
Scalar = float

# A plaintext character code (one byte, 0..255).
PlainByte = int

#: Largest magnitude accepted by format_scalar.
MAGNITUDE_LIMIT = 1e308

#: Default tolerance for rounding decrypted reals back to codes.  The
#: legitimate drift of a well-matched key is orders of magnitude below
#: this, while a wrong key almost surely exceeds it.
DEFAULT_TOL = 0.25

_TOKEN_RE = re.compile(rb"-?(?:0|[1-9][0-9]*)\.[0-9]+")


@dataclass(frozen=True)
class FormatSpec:
    """Fixed-decimal rendering parameters for ciphertext tokens."""

    fractional_digits: int = 6
    separator: bytes = b" "

    def __post_init__(self):
        if not 1 <= self.fractional_digits <= 17:
            raise ValueError(
                f"fractional_digits must be in 1..17, got {self.fractional_digits}"
            )
        if len(self.separator) != 1:
            raise ValueError("separator must be a single byte")
        if self.separator in b"0123456789.-%":
            raise ValueError(f"separator {self.separator!r} collides with token syntax")


def _is_half_tie(x: float, digits: int) -> bool:
    """True when x lies exactly halfway between two ``digits``-digit decimals.

    That happens iff x == odd / 2**(digits+1); only then do the printf
    rounding (half-even) and ours (half-away-from-zero) disagree.
    """
    try:
        scaled = x * (1 << (digits + 1))
    except OverflowError:
        return False
    if math.isinf(scaled) or scaled != math.floor(scaled):
        return False
    return int(scaled) & 1 == 1


def _format_half_tie(x: float, digits: int) -> bytes:
    with localcontext() as ctx:
        ctx.prec = 60
        quantum = Decimal(1).scaleb(-digits)
        q = Decimal(x).quantize(quantum, rounding=ROUND_HALF_UP)
    return format(q, "f").encode("ascii")


def format_scalar(x: Scalar, spec: FormatSpec = FormatSpec()) -> bytes:
    """Render ``x`` as a fixed-decimal token.

    Raises FormatOverflow for non-finite values or magnitudes beyond
    ``MAGNITUDE_LIMIT``.
    """
    if not math.isfinite(x):
        raise FormatOverflow(f"cannot format non-finite value {x!r}")
    if abs(x) > MAGNITUDE_LIMIT:
        raise FormatOverflow(f"magnitude {abs(x):e} exceeds {MAGNITUDE_LIMIT:e}")
    d = spec.fractional_digits
    if _is_half_tie(x, d):
        return _format_half_tie(x, d)
    # CPython's formatter is correctly rounded; it only differs from
    # half-away-from-zero at exact ties, handled above.
    return b"%.*f" % (d, x)


def parse_scalar(token: bytes | str) -> Scalar:
    """Parse one fixed-decimal token to the nearest representable float."""
    if isinstance(token, str):
        try:
            token = token.encode("ascii")
        except UnicodeEncodeError:
            raise ParseError(f"malformed token {token!r}") from None
    if not _TOKEN_RE.fullmatch(token):
        raise ParseError(f"malformed token {token!r}")
    value = float(token)
    if not math.isfinite(value):
        raise ParseError(f"token {token[:24]!r}... exceeds the representable range")
    return value


def round_to_code(x: Scalar, tol: Scalar = DEFAULT_TOL) -> PlainByte:
    """Round a decrypted real back to its character code.

    Accepts only values within ``tol`` of an integer in 0..255; anything
    else signals numeric corruption or a wrong key.
    """
    if not 0.0 < tol < 0.5:
        raise ValueError(f"tol must lie in (0, 0.5), got {tol}")
    if not math.isfinite(x):
        raise RoundingDriftError(f"non-finite decrypted value {x!r}")
    nearest = round(x)
    if abs(x - nearest) > tol:
        raise RoundingDriftError(
            f"value {x!r} is {abs(x - nearest):.3g} from the nearest integer "
            f"(tolerance {tol})"
        )
    if not 0 <= nearest <= 255:
        raise CodeRangeError(f"value {x!r} rounds to {nearest}, outside 0..255")
    return int(nearest)


def codes_from_reals(values, tol: Scalar = DEFAULT_TOL) -> bytes:
    """Vectorized round_to_code over a whole decrypted stream.

    Matches the scalar function exactly, including which error fires
    first; error messages carry the first offending index.
    """
    if not 0.0 < tol < 0.5:
        raise ValueError(f"tol must lie in (0, 0.5), got {tol}")
    vals = np.asarray(values, dtype=np.float64)
    if vals.size == 0:
        return b""
    with np.errstate(invalid="ignore"):
        finite = np.isfinite(vals)
        nearest = np.rint(vals)
        drift = np.abs(vals - nearest)
        bad = ~finite | (drift > tol) | (nearest < 0) | (nearest > 255)
    if bad.any():
        # report the first offending element, with the same error the
        # scalar function would raise for it
        i = int(np.argmax(bad))
        x = float(vals[i])
        try:
            round_to_code(x, tol)
        except (RoundingDriftError, CodeRangeError) as exc:
            raise type(exc)(f"index {i}: {exc}") from None
        raise RoundingDriftError(f"unroundable value {x!r} at index {i}")
    return nearest.astype(np.uint8).tobytes()
