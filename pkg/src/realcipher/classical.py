"""Diffusion stages: byte transpositions and the real-valued Vigenere.

The halving transposition riffles the two halves of the serialized
ciphertext (first byte of each half alternating); odd-length input is
padded with one space first.  It operates on raw bytes, separators
included, which is what actually spreads token digits around.

The keyed block permutation generalizes it: the byte stream is cut into
m-byte blocks and each block is permuted by a secret permutation, giving
an m!-sized keyspace instead of a fixed rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import ParseError
from .scalar import Scalar

PAD_BYTE = 0x20


@dataclass(frozen=True)
class HalvingInterleave:
    """Marker for the fixed riffle-of-halves transposition."""


@dataclass(frozen=True)
class KeyedBlockPermutation:
    """Permute each m-byte block: output position i takes block[perm[i]]."""

    perm: tuple

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"perm must be a permutation of 0..{len(perm) - 1}")
        if not perm:
            raise ValueError("perm must be nonempty")
        object.__setattr__(self, "perm", perm)

    @property
    def block_size(self) -> int:
        return len(self.perm)


TranspositionSpec = Union[HalvingInterleave, KeyedBlockPermutation]


def transpose_halving(text: bytes) -> bytes:
    """Riffle the two halves: H1[0] H2[0] H1[1] H2[1] ...

    Odd-length input gains one trailing space before splitting, so the
    output length is always even.
    """
    if len(text) % 2:
        text = text + bytes([PAD_BYTE])
    half = len(text) // 2
    out = bytearray(len(text))
    out[0::2] = text[:half]
    out[1::2] = text[half:]
    return bytes(out)


def inverse_transpose_halving(text: bytes) -> bytes:
    """Undo transpose_halving: even positions are the first half."""
    if len(text) % 2:
        raise ParseError(f"transposed text must have even length, got {len(text)}")
    return text[0::2] + text[1::2]


def keyed_block_transpose(text: bytes, spec: KeyedBlockPermutation) -> bytes:
    """Space-pad to a block multiple, then permute every block by perm."""
    m = spec.block_size
    text = bytes(text) + bytes([PAD_BYTE]) * (-len(text) % m)
    out = bytearray(len(text))
    perm = spec.perm
    for start in range(0, len(text), m):
        block = text[start : start + m]
        for i in range(m):
            out[start + i] = block[perm[i]]
    return bytes(out)


def inverse_keyed_block_transpose(text: bytes, spec: KeyedBlockPermutation) -> bytes:
    m = spec.block_size
    if len(text) % m:
        raise ParseError(f"length {len(text)} is not a multiple of block size {m}")
    out = bytearray(len(text))
    perm = spec.perm
    for start in range(0, len(text), m):
        block = text[start : start + m]
        for i in range(m):
            out[start + perm[i]] = block[i]
    return bytes(out)


def transpose(text: bytes, spec: TranspositionSpec) -> bytes:
    if isinstance(spec, HalvingInterleave):
        return transpose_halving(text)
    return keyed_block_transpose(text, spec)


def inverse_transpose(text: bytes, spec: TranspositionSpec) -> bytes:
    if isinstance(spec, HalvingInterleave):
        return inverse_transpose_halving(text)
    return inverse_keyed_block_transpose(text, spec)


@dataclass(frozen=True)
class VigenereKey:
    """Keyword of reals added cyclically to the ciphertext stream."""

    keyword: tuple

    def __post_init__(self):
        keyword = tuple(float(v) for v in self.keyword)
        if not keyword:
            raise ValueError("keyword must have at least one entry")
        if any(not math.isfinite(v) for v in keyword):
            raise ValueError("keyword entries must be finite")
        object.__setattr__(self, "keyword", keyword)


def vigenere_encrypt(xs: Sequence[Scalar], key: VigenereKey) -> list[Scalar]:
    """y_i = x_i + keyword[i mod k]; position-dependent, so equal inputs
    at non-congruent indices diverge."""
    kw = key.keyword
    k = len(kw)
    return [x + kw[i % k] for i, x in enumerate(xs)]


def vigenere_decrypt(ys: Sequence[Scalar], key: VigenereKey) -> list[Scalar]:
    """Inverse of vigenere_encrypt.

    Recovery is exact up to one rounding per direction (the add and the
    subtract each round once), far below any decryption tolerance.
    """
    kw = key.keyword
    k = len(kw)
    return [y - kw[i % k] for i, y in enumerate(ys)]
