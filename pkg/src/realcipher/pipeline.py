"""Product-cipher pipelines and the ciphertext serialization boundary.

A pipeline is an ordered stage list: exactly one substitution stage
first (linear block or nonlinear character cipher), then any number of
Vigenere stages operating on the real-valued stream, then serialization
to space-separated fixed-decimal tokens, then any number of byte-level
transpositions.  Decryption runs the stages in reverse.

Serialization is the only lossy boundary.  Each parsed token differs
from the original real by at most 0.5 * 10^-digits; for a linear
substitution that loss is amplified by ||A||_inf during decryption, so
pipeline construction refuses digit settings whose worst-case amplified
loss eats into the rounding tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .classical import (
    TranspositionSpec,
    VigenereKey,
    inverse_transpose,
    transpose,
    vigenere_decrypt,
    vigenere_encrypt,
)
from .errors import CipherError, FormatOverflow, ParseError
from .linear import LinearKey, decrypt_linear, encrypt_linear
from .nonlinear import NonlinearKey, decrypt_nonlinear, encrypt_nonlinear
from .scalar import (
    DEFAULT_TOL,
    FormatSpec,
    MAGNITUDE_LIMIT,
    Scalar,
    _TOKEN_RE,
    format_scalar,
)

#: Token digits used when the substitution stage is linear / nonlinear.
LINEAR_DIGITS = 6
NONLINEAR_DIGITS = 12


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def serialize_ciphertext(xs: Sequence[Scalar], fmt: FormatSpec) -> bytes:
    """Fixed-decimal tokens joined by the separator, no trailing separator."""
    vals = np.asarray(xs, dtype=np.float64)
    if vals.size == 0:
        return b""
    finite = np.isfinite(vals)
    if not finite.all():
        i = int(np.argmin(finite))
        raise FormatOverflow(f"non-finite value {vals[i]!r} at index {i}")
    if (np.abs(vals) > MAGNITUDE_LIMIT).any():
        i = int(np.argmax(np.abs(vals) > MAGNITUDE_LIMIT))
        raise FormatOverflow(f"value at index {i} exceeds {MAGNITUDE_LIMIT:e}")
    d = fmt.fractional_digits
    # printf formatting is half-even at exact decimal ties; fall back to
    # the per-token formatter (half-away-from-zero) when any tie exists.
    with np.errstate(over="ignore", invalid="ignore"):
        scaled = vals * float(1 << (d + 1))
        floors = np.floor(scaled)
        ties = np.isfinite(scaled) & (scaled == floors) & (np.mod(np.abs(floors), 2.0) == 1.0)
    if ties.any():
        return fmt.separator.join(format_scalar(float(v), fmt) for v in vals)
    lst = vals.tolist()
    pattern = fmt.separator.join([b"%%.%df" % d] * len(lst))
    return pattern % tuple(lst)


def parse_ciphertext(text: bytes, fmt: FormatSpec = FormatSpec()) -> list[Scalar]:
    """Parse a serialized stream back to reals.

    Trailing spaces are stripped first: the halving transposition pads
    odd input with one space, a keyed block transposition with up to
    block_size - 1.  Raises ParseError naming the first bad token.
    """
    text = text.rstrip(b" ")
    if not text:
        return []
    tokens = text.split(fmt.separator)
    fullmatch = _TOKEN_RE.fullmatch
    if not all(map(fullmatch, tokens)):
        i, token = next(
            (i, t) for i, t in enumerate(tokens) if not fullmatch(t)
        )
        raise ParseError(f"malformed token {token[:32]!r} at index {i}")
    values = list(map(float, tokens))
    finite = np.isfinite(values)
    if not finite.all():
        i = int(np.argmin(finite))
        raise ParseError(f"token at index {i} exceeds the representable range")
    return values


# ---------------------------------------------------------------------------
# Stages and pipelines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearStage:
    key: LinearKey


@dataclass(frozen=True)
class NonlinearStage:
    key: NonlinearKey


@dataclass(frozen=True)
class VigenereStage:
    key: VigenereKey


@dataclass(frozen=True)
class TranspositionStage:
    spec: TranspositionSpec


Stage = Union[LinearStage, NonlinearStage, VigenereStage, TranspositionStage]
_SUBSTITUTIONS = (LinearStage, NonlinearStage)


@dataclass(frozen=True)
class Pipeline:
    """Validated stage list plus the serialization format.

    Stage order is enforced at construction: one substitution first,
    Vigenere stages before the serialization boundary, transpositions
    after it.
    """

    stages: tuple
    fmt: FormatSpec | None = None

    def __post_init__(self):
        stages = tuple(self.stages)
        if not stages:
            raise ValueError("pipeline needs at least one stage")
        first = stages[0]
        if not isinstance(first, _SUBSTITUTIONS):
            raise ValueError("the first stage must be the substitution cipher")
        seen_transpose = False
        for st in stages[1:]:
            if isinstance(st, _SUBSTITUTIONS):
                raise ValueError("exactly one substitution stage is allowed")
            if isinstance(st, VigenereStage):
                if seen_transpose:
                    raise ValueError("Vigenere stages must precede transpositions")
            elif isinstance(st, TranspositionStage):
                seen_transpose = True
            else:
                raise TypeError(f"unknown stage type {type(st).__name__}")
        fmt = self.fmt
        if fmt is None:
            digits = LINEAR_DIGITS if isinstance(first, LinearStage) else NONLINEAR_DIGITS
            fmt = FormatSpec(fractional_digits=digits)
        if isinstance(first, LinearStage):
            # worst-case amplified serialization loss must stay clear of
            # the rounding tolerance
            loss = first.key.norm_inf * 0.5 * 10.0 ** -fmt.fractional_digits
            if loss > 0.5 * DEFAULT_TOL:
                raise ValueError(
                    f"{fmt.fractional_digits} fractional digits lose up to "
                    f"{loss:.2g} per code through this key (tolerance {DEFAULT_TOL}); "
                    f"increase the digit count"
                )
        object.__setattr__(self, "stages", stages)
        object.__setattr__(self, "fmt", fmt)

    @property
    def substitution(self) -> Stage:
        return self.stages[0]

    def encrypt(self, plaintext: bytes) -> bytes:
        return encrypt_pipeline(self, plaintext)

    def decrypt(self, text: bytes) -> bytes:
        return decrypt_pipeline(self, text)


def encrypt_pipeline(pipeline: Pipeline, plaintext: bytes) -> bytes:
    """Run substitution, Vigenere stages, serialization, transpositions."""
    first = pipeline.stages[0]
    try:
        if isinstance(first, LinearStage):
            xs = encrypt_linear(first.key, plaintext)
        else:
            xs = encrypt_nonlinear(first.key, plaintext)
    except CipherError as exc:
        raise type(exc)(f"stage 0 ({type(first).__name__}): {exc}") from None
    for st in pipeline.stages[1:]:
        if isinstance(st, VigenereStage):
            xs = vigenere_encrypt(xs, st.key)
    text = serialize_ciphertext(xs, pipeline.fmt)
    for st in pipeline.stages[1:]:
        if isinstance(st, TranspositionStage):
            text = transpose(text, st.spec)
    return text


def decrypt_pipeline(pipeline: Pipeline, text: bytes) -> bytes:
    """Invert every stage in reverse order; padding bytes are retained."""
    transposes = [st for st in pipeline.stages if isinstance(st, TranspositionStage)]
    vigeneres = [st for st in pipeline.stages if isinstance(st, VigenereStage)]
    for st in reversed(transposes):
        try:
            text = inverse_transpose(text, st.spec)
        except ParseError as exc:
            raise ParseError(f"transposition stage: {exc}") from None
    xs = parse_ciphertext(text, pipeline.fmt)
    for st in reversed(vigeneres):
        xs = vigenere_decrypt(xs, st.key)
    first = pipeline.stages[0]
    try:
        if isinstance(first, LinearStage):
            return decrypt_linear(first.key, xs)
        return decrypt_nonlinear(first.key, xs)
    except CipherError as exc:
        raise type(exc)(f"stage 0 ({type(first).__name__}): {exc}") from None
