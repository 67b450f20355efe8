"""Block substitution cipher built on solving linear systems.

Encryption of an n-byte block c solves A x = b - c, so the ciphertext
block is x = A^-1 (b - c); decryption substitutes back, c = b - A x.
The plaintext is space-padded to a whole number of blocks and blocked
column-wise: consecutive bytes form one column vector.

A small modular Hill cipher (mod 26) lives here too, purely as a
comparison oracle for tests: the real-field cipher and the classical
Hill construction share the key-matrix shape.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

import numpy as np

from .errors import KeygenError, SingularMatrixError
from .scalar import DEFAULT_TOL, Scalar, codes_from_reals

#: Determinant floor below which a key matrix is rejected as singular.
DET_MIN = 1e-6

#: Conditioning cap for generated keys; invertibility alone does not
#: guarantee that decryption survives serialization round-off.
COND_MAX = 1e8

PAD_BYTE = 0x20  # ASCII space

Matrix = Sequence[Sequence[Scalar]]


def _norm_inf(a: Matrix) -> float:
    return max(sum(abs(v) for v in row) for row in a)


def invert_matrix(a: Matrix, det_min: float = DET_MIN):
    """Invert a square matrix by Gauss-Jordan elimination with partial
    pivoting.  Returns the inverse as a list of row lists.

    Raises SingularMatrixError when a pivot vanishes or |det| < det_min.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    aug = [
        [float(v) for v in row] + [1.0 if j == i else 0.0 for j in range(n)]
        for i, row in enumerate(a)
    ]
    det = 1.0
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(aug[r][col]))
        pivot = aug[pivot_row][col]
        if pivot == 0.0:
            raise SingularMatrixError(f"zero pivot in column {col}")
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
            det = -det
        det *= pivot
        inv_pivot = 1.0 / pivot
        row = aug[col]
        for j in range(col, 2 * n):
            row[j] *= inv_pivot
        for r in range(n):
            if r == col:
                continue
            factor = aug[r][col]
            if factor == 0.0:
                continue
            other = aug[r]
            for j in range(col, 2 * n):
                other[j] -= factor * row[j]
    if abs(det) < det_min:
        raise SingularMatrixError(f"|det| = {abs(det):.3e} below floor {det_min:.0e}")
    return [row[n:] for row in aug]


def det_cofactor(a: Matrix) -> float:
    """Determinant by cofactor expansion along the first row.

    Exponential in n; intended for small matrices where it serves as an
    independent cross-check of the elimination path.
    """
    n = len(a)
    if n == 1:
        return float(a[0][0])
    total = 0.0
    sign = 1.0
    for j in range(n):
        if a[0][j] != 0:
            minor = [list(row[:j]) + list(row[j + 1 :]) for row in a[1:]]
            total += sign * a[0][j] * det_cofactor(minor)
        sign = -sign
    return total


def adjugate_inverse(a: Matrix, det_min: float = DET_MIN):
    """Inverse via A^-1 = adj(A) / det(A), the textbook adjugate route.

    Cross-check oracle for invert_matrix on small matrices (n <= 4 is
    the intended range; cost grows factorially).
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    det = det_cofactor(a)
    if abs(det) < det_min:
        raise SingularMatrixError(f"|det| = {abs(det):.3e} below floor {det_min:.0e}")
    inv = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # adj(A)[i][j] is the (j, i) cofactor
            minor = [
                [a[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = det_cofactor(minor) if n > 1 else 1.0
            inv[i][j] = (-1.0) ** (i + j) * cof / det
    return inv


@dataclass(frozen=True)
class LinearKey:
    """Invertible n x n matrix plus offset vector; the block-cipher key."""

    n: int
    a: tuple
    b: tuple
    det_min: float = DET_MIN
    # caches, filled at construction
    _inv: np.ndarray = field(init=False, repr=False, compare=False)
    _a_np: np.ndarray = field(init=False, repr=False, compare=False)
    _b_np: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"block length must be at least 2, got {self.n}")
        a = tuple(tuple(float(v) for v in row) for row in self.a)
        b = tuple(float(v) for v in self.b)
        if len(a) != self.n or any(len(row) != self.n for row in a):
            raise ValueError("matrix shape does not match block length")
        if len(b) != self.n:
            raise ValueError("offset vector length does not match block length")
        inv = invert_matrix(a, self.det_min)  # also enforces the det floor
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "_inv", np.array(inv))
        object.__setattr__(self, "_a_np", np.array(a))
        object.__setattr__(self, "_b_np", np.array(b))

    @property
    def norm_inf(self) -> float:
        return _norm_inf(self.a)


def keygen_linear(
    n: int,
    seed: int,
    magnitude: float = 10.0,
    det_min: float = DET_MIN,
    cond_max: float = COND_MAX,
    max_tries: int = 100,
) -> LinearKey:
    """Draw a random key with entries uniform in [-magnitude, magnitude],
    resampling until the matrix is comfortably invertible.

    Deterministic for a given seed.
    """
    if n < 2:
        raise ValueError(f"block length must be at least 2, got {n}")
    if magnitude <= 0:
        raise ValueError("magnitude must be positive")
    rng = random.Random(seed)
    for _ in range(max_tries):
        a = [[rng.uniform(-magnitude, magnitude) for _ in range(n)] for _ in range(n)]
        b = [rng.uniform(-magnitude, magnitude) for _ in range(n)]
        try:
            inv = invert_matrix(a, det_min)
        except SingularMatrixError:
            continue
        if _norm_inf(a) * _norm_inf(inv) <= cond_max:
            return LinearKey(n, tuple(map(tuple, a)), tuple(b), det_min)
    raise KeygenError(
        f"no matrix met |det| >= {det_min:g} and cond <= {cond_max:g} "
        f"after {max_tries} tries"
    )


def pad_plaintext(plaintext: bytes, n: int) -> bytes:
    data = bytes(plaintext)
    return data + bytes([PAD_BYTE]) * (-len(data) % n)


def encrypt_linear(key: LinearKey, plaintext) -> list[Scalar]:
    """Encrypt bytes to one real per character.

    The plaintext is space-padded to a block multiple; each block c maps
    to x = A^-1 (b - c).
    """
    data = pad_plaintext(bytes(plaintext), key.n)
    if not data:
        return []
    codes = np.frombuffer(data, dtype=np.uint8).astype(np.float64)
    blocks = codes.reshape(-1, key.n).T  # blocks as columns
    x = key._inv @ (key._b_np[:, None] - blocks)
    return x.T.ravel().tolist()


def decrypt_linear_values(key: LinearKey, ciphertext: Sequence[Scalar]) -> list[Scalar]:
    """The pre-rounding reals b - A x, one per ciphertext entry."""
    xs = np.asarray(ciphertext, dtype=np.float64)
    if xs.size % key.n:
        raise ValueError(
            f"ciphertext length {xs.size} is not a multiple of block length {key.n}"
        )
    blocks = xs.reshape(-1, key.n).T
    c = key._b_np[:, None] - key._a_np @ blocks
    return c.T.ravel().tolist()


def decrypt_linear(key: LinearKey, ciphertext: Sequence[Scalar], tol: float = DEFAULT_TOL) -> bytes:
    """Invert encrypt_linear; padding bytes are retained."""
    return codes_from_reals(decrypt_linear_values(key, ciphertext), tol)


# ---------------------------------------------------------------------------
# Hill cipher comparison oracle (mod 26)
# ---------------------------------------------------------------------------

def _int_matrix(a: Matrix) -> list[list[int]]:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    return [[int(v) for v in row] for row in a]


def hill_inverse_mod26(a: Matrix) -> list[list[int]]:
    """Matrix inverse over Z_26, via the adjugate and the inverse of det."""
    ai = _int_matrix(a)
    n = len(ai)
    det = round(det_cofactor(ai)) % 26
    if gcd(det, 26) != 1:
        raise SingularMatrixError(f"det = {det} (mod 26) is not invertible")
    det_inv = pow(det, -1, 26)
    inv = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [ai[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = round(det_cofactor(minor)) if n > 1 else 1
            inv[i][j] = (-1) ** (i + j) * cof * det_inv % 26
    return inv


def _hill_apply(a: list[list[int]], codes, n: int) -> list[int]:
    data = pad_plaintext(bytes(codes), n)
    out = []
    for start in range(0, len(data), n):
        block = [data[start + i] % 26 for i in range(n)]
        out.extend(sum(a[i][j] * block[j] for j in range(n)) % 26 for i in range(n))
    return out


def hill_encrypt_mod26(a: Matrix, plaintext) -> list[int]:
    """Classical Hill encryption y = A c (mod 26), blocks as columns."""
    ai = _int_matrix(a)
    if gcd(round(det_cofactor(ai)) % 26, 26) != 1:
        raise SingularMatrixError("matrix is not invertible mod 26")
    return _hill_apply(ai, plaintext, len(ai))


def hill_decrypt_mod26(a: Matrix, ciphertext: Sequence[int]) -> list[int]:
    """Inverse of hill_encrypt_mod26; returns codes reduced mod 26."""
    inv = hill_inverse_mod26(a)
    n = len(inv)
    if len(ciphertext) % n:
        raise ValueError("ciphertext length is not a multiple of the block length")
    return _hill_apply(inv, [c % 26 for c in ciphertext], n)
