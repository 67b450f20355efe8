"""Entropy, key equivocation, and keyspace-size calculators.

Keyspace counts are exact unbounded integers; bit measures are derived
from them by log2, never by floating-point factorials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .cryptanalysis import Distribution

#: Per-letter entropy of English text, in bits.
ENGLISH_LETTER_ENTROPY = 1.25


def entropy(d: Union[Distribution, Sequence[float]]) -> float:
    """Shannon entropy -sum p log2 p in bits, with 0 log 0 = 0."""
    probs = d.probs if isinstance(d, Distribution) else d
    return -sum(p * math.log2(p) for p in probs if p > 0.0)


@dataclass(frozen=True)
class EquivocationReport:
    """Key uncertainty left after observing an n-gram of ciphertext."""

    hk: float
    hpn: float
    hcn: float
    equivocation: float
    lower_bound: Optional[float] = None


def key_equivocation(hk: float, hpn: float, hcn: float,
                     lower_bound: Optional[float] = None) -> EquivocationReport:
    """H(K|C^n) = H(K) + H(P^n) - H(C^n).

    When the plaintext and ciphertext n-gram entropies coincide (no
    source redundancy) the expression collapses to H(K) exactly, so
    that case is special-cased to keep the identity exact in floats.
    """
    if min(hk, hpn, hcn) < 0:
        raise ValueError("entropies must be nonnegative")
    equivocation = hk if hpn == hcn else hk + hpn - hcn
    return EquivocationReport(hk, hpn, hcn, equivocation, lower_bound)


def equivocation_lower_bound(
    hk: float,
    n: int,
    h_l: float = ENGLISH_LETTER_ENTROPY,
    cipher_alphabet: int = 26,
) -> float:
    """H(K|C^n) >= H(K) + n H_L - n log2(|C|)."""
    if n < 0:
        raise ValueError("n-gram length must be nonnegative")
    if cipher_alphabet < 2:
        raise ValueError("cipher alphabet needs at least two symbols")
    return hk + n * h_l - n * math.log2(cipher_alphabet)


def _factorize(m: int) -> list[tuple[int, int]]:
    factors = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            factors.append((p, k))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return factors


def hill_keyspace(n: int, m: int) -> int:
    """Exact count of invertible n x n matrices over Z_m.

    For m = prod p_i^k_i the count is
    prod_i ( p_i^((k_i - 1) n^2) * prod_{j=0}^{n-1} (p_i^n - p_i^j) ).
    """
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    if m < 2:
        raise ValueError("modulus must be at least 2")
    total = 1
    for p, k in _factorize(m):
        block = p ** ((k - 1) * n * n)
        for j in range(n):
            block *= p**n - p**j
        total *= block
    return total


def format_hill_keyspace(n: int, m: int) -> str:
    """The keyspace count written as m^(n^2) times its unit-density factors."""
    parts = [f"{m}^{n * n}"]
    for p, _k in _factorize(m):
        factors = "".join(
            f"(1 - 1/{p})" if j == 1 else f"(1 - 1/{p}^{j})" for j in range(1, n + 1)
        )
        parts.append(factors)
    return " * ".join(parts) + f" = {hill_keyspace(n, m)}"


def transposition_uncertainty(n: int, exact: bool = True) -> float:
    """Bits of key uncertainty of the keyed transposition on an n-byte
    stream: log2((n/2)!), or its Stirling approximation."""
    if n < 2 or n % 2:
        raise ValueError(f"stream length must be even and >= 2, got {n}")
    half = n // 2
    if exact:
        return math.log2(math.factorial(half))
    return half * math.log2(half / math.e) + math.log2(math.sqrt(math.pi * n))


def vigenere_uncertainty(k: int) -> float:
    """Bits of key uncertainty of a length-k keyword: log2(10^k)."""
    if k < 1:
        raise ValueError(f"keyword length must be at least 1, got {k}")
    return k * math.log2(10.0)


def product_gained_uncertainty(n: int, k: int) -> float:
    """Extra key uncertainty gained by stacking transposition (stream
    length n) and Vigenere (keyword length k) stages."""
    return transposition_uncertainty(n, exact=True) + vigenere_uncertainty(k)
