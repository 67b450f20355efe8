"""Attacks on the bare substitution ciphers.

The linear cipher is, well, linear: with the block length known, n+1
plaintext/ciphertext block pairs give each key row an (n+1)-unknown
linear system (n matrix entries plus the offset), solved here by least
squares over the shared design matrix.

The nonlinear cipher is monoalphabetic, so observed (root, code) pairs
sample the key function directly.  Newton divided-difference
interpolation through distinct pairs rebuilds a polynomial that decrypts
every character whose code was observed, and frequency analysis of the
root stream exposes the plaintext's letter statistics unchanged.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    InconsistentDataError,
    InsufficientDataError,
    SingularMatrixError,
)
from .linear import LinearKey, invert_matrix
from .nonlinear import NewtonPolynomial
from .scalar import Scalar


@dataclass(frozen=True)
class KnownPairs:
    """Matched (plain block, cipher block) pairs with a common length."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(
            (tuple(int(c) for c in plain), tuple(float(x) for x in cipher))
            for plain, cipher in self.blocks
        )
        if not blocks:
            raise InsufficientDataError("no known blocks supplied")
        n = len(blocks[0][0])
        for plain, cipher in blocks:
            if len(plain) != n or len(cipher) != n:
                raise ValueError("inconsistent block lengths in known pairs")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return len(self.blocks[0][0])


def kpa_linear(pairs, n: int) -> LinearKey:
    """Recover the linear key from known blocks.

    Needs at least n+1 blocks in general position.  Row i of the key
    solves sum_j a_ij x_j - b_i = -c_i over the observed blocks.
    """
    if not isinstance(pairs, KnownPairs):
        pairs = KnownPairs(tuple(pairs))
    if pairs.n != n:
        raise ValueError(f"pairs carry blocks of length {pairs.n}, expected {n}")
    m = len(pairs.blocks)
    if m < n + 1:
        raise InsufficientDataError(
            f"need at least {n + 1} known blocks for block length {n}, got {m}"
        )
    X = np.array([cipher for _, cipher in pairs.blocks])  # m x n
    C = np.array([plain for plain, _ in pairs.blocks], dtype=np.float64)  # m x n
    design = np.hstack([X, -np.ones((m, 1))])  # rows (x_1..x_n, -1)
    rhs = -C  # column i: -c_i over blocks
    mtm = design.T @ design
    try:
        inv = np.array(invert_matrix(mtm.tolist(), det_min=1e-300))
    except SingularMatrixError:
        raise InsufficientDataError("known blocks are rank deficient") from None
    solution = inv @ design.T @ rhs  # (n+1) x n; column i = (a_i*, b_i)
    residual = np.abs(design @ solution - rhs).max()
    scale = max(1.0, np.abs(rhs).max())
    if residual > 1e-6 * scale:
        raise InsufficientDataError(
            f"known blocks are numerically rank deficient (residual {residual:.3g})"
        )
    a = tuple(tuple(solution[:n, i]) for i in range(n))
    b = tuple(float(solution[n, i]) for i in range(n))
    return LinearKey(n, a, b)


def interpolate_key(points: Sequence[tuple[Scalar, int]]) -> NewtonPolynomial:
    """Newton divided-difference interpolation through (root, code) pairs.

    Exactly repeated pairs are collapsed first (a monoalphabetic stream
    repeats them); the same root with two different codes is
    contradictory data.  The result stays in Newton form, which
    evaluates stably at any degree; use ``to_monomial()`` on it when a
    coefficient view of a low-degree key is wanted.
    """
    seen: dict[float, float] = {}
    order: list[float] = []
    for x, c in points:
        x = float(x)
        c = float(c)
        if x in seen:
            if seen[x] != c:
                raise InconsistentDataError(
                    f"root {x!r} maps to both {seen[x]} and {c}"
                )
        else:
            seen[x] = c
            order.append(x)
    if not order:
        raise InsufficientDataError("no interpolation points supplied")
    xs = order
    coef = [seen[x] for x in xs]
    npts = len(xs)
    for j in range(1, npts):
        for i in range(npts - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    return NewtonPolynomial(tuple(xs), tuple(coef))


@dataclass(frozen=True)
class Distribution:
    """Probability mass function over an explicit support."""

    support: tuple
    probs: tuple

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        if len(self.support) != len(probs):
            raise ValueError("support and probs must have equal lengths")
        if any(p < 0 for p in probs):
            raise ValueError("probabilities must be nonnegative")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {sum(probs)!r}, not 1")
        object.__setattr__(self, "support", tuple(self.support))
        object.__setattr__(self, "probs", probs)


def frequency_histogram(xs: Sequence) -> Distribution:
    """Empirical distribution over bit-identical stream values."""
    values = list(xs)
    if not values:
        raise ValueError("cannot build a histogram of an empty stream")
    counts = Counter(values)
    support = sorted(counts)
    total = len(values)
    return Distribution(tuple(support), tuple(counts[v] / total for v in support))
