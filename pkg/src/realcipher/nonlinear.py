"""One-character substitution cipher driven by numerical root finding.

Encrypting a character code c means solving f(x) - c = 0 for the key
function f; the root is the ciphertext symbol.  Decryption evaluates f
at the root and rounds back to a code.

Root selection is deterministic: a bracket scan walks the configured
interval left to right in equal steps and bisects the first subinterval
with a sign change, so equal plaintext bytes always map to bit-identical
roots (the cipher is monoalphabetic by construction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import ConvergenceError, FormatOverflow, NoRootError
from .scalar import Scalar, codes_from_reals

#: Character codes a key must cover by default: printable ASCII plus CR/LF.
DEFAULT_ALPHABET = tuple([10, 13] + list(range(32, 127)))


@dataclass(frozen=True)
class Polynomial:
    """Key function sum(coeffs[i] * x^(d-i)); coefficients highest degree first."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        if any(not math.isfinite(c) for c in coeffs):
            raise ValueError("polynomial coefficients must be finite")
        if len(coeffs) > 1 and coeffs[0] == 0.0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x):
        """Horner evaluation; works on scalars and numpy arrays alike."""
        acc = self.coeffs[0]
        for c in self.coeffs[1:]:
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class Exp2Quadratic:
    """Key function 2^(alpha x^2 + beta x + gamma)."""

    alpha: float
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.alpha == 0.0:
            raise ValueError("alpha must be nonzero")

    def evaluate(self, x):
        return 2.0 ** ((self.alpha * x + self.beta) * x + self.gamma)


@dataclass(frozen=True)
class NewtonPolynomial:
    """Polynomial in Newton form: sum_k coeffs[k] * prod_{i<k} (x - nodes[i]).

    This is the natural output of divided-difference interpolation.  It
    is kept in Newton form because the equivalent monomial coefficients
    are ill-conditioned for high degrees with clustered nodes; nested
    evaluation here stays accurate at any degree.
    """

    nodes: tuple
    coeffs: tuple

    def __post_init__(self):
        nodes = tuple(float(v) for v in self.nodes)
        coeffs = tuple(float(v) for v in self.coeffs)
        if not coeffs or len(nodes) != len(coeffs):
            raise ValueError("need one coefficient per node")
        if any(not math.isfinite(v) for v in nodes + coeffs):
            raise ValueError("nodes and coefficients must be finite")
        if len(set(nodes)) != len(nodes):
            raise ValueError("nodes must be pairwise distinct")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x):
        acc = self.coeffs[-1]
        for k in range(len(self.coeffs) - 2, -1, -1):
            acc = acc * (x - self.nodes[k]) + self.coeffs[k]
        return acc

    def to_monomial(self) -> Polynomial:
        """Expand to monomial coefficients.

        Only trustworthy for modest degrees; the expansion cancels
        catastrophically for large clustered node sets.
        """
        poly = [0.0] * len(self.coeffs)
        basis = [1.0]
        for k, a in enumerate(self.coeffs):
            for idx, bc in enumerate(basis):
                poly[idx] += a * bc
            nxt = [0.0] * (len(basis) + 1)
            for idx, bc in enumerate(basis):
                nxt[idx] -= self.nodes[k] * bc
                nxt[idx + 1] += bc
            basis = nxt
        desc = poly[::-1]
        while len(desc) > 1 and desc[0] == 0.0:
            desc.pop(0)
        return Polynomial(tuple(desc))


KeyFunction = Union[Polynomial, Exp2Quadratic, NewtonPolynomial]


def eval_key_function(f: KeyFunction, x: Scalar) -> Scalar:
    """Evaluate the key function at a point."""
    try:
        return f.evaluate(x)
    except OverflowError:
        raise FormatOverflow(f"key function overflowed at x = {x!r}") from None


@dataclass(frozen=True)
class SolverConfig:
    """How roots of f(x) - c = 0 are located.

    ``tol`` bounds both the accepted residual |f(x) - c| and the final
    bracket width (bisection) or step size (secant).
    """

    method: str = "bisection"
    lo: float = 0.0
    hi: float = 2.0
    tol: float = 1e-13
    max_iter: int = 200
    bracket_scan_steps: int = 4096
    x0: float | None = None  # secant seeds; default to (lo, hi)
    x1: float | None = None

    def __post_init__(self):
        if self.method not in ("bisection", "secant"):
            raise ValueError(f"unknown method {self.method!r}")
        if not self.lo < self.hi:
            raise ValueError("interval must satisfy lo < hi")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.bracket_scan_steps < 1:
            raise ValueError("bracket_scan_steps must be at least 1")
        if (self.x0 is None) != (self.x1 is None):
            raise ValueError("secant seeds must be given as a pair")
        if self.x0 is not None and self.x0 == self.x1:
            raise ValueError("secant seeds must differ")

    @property
    def seeds(self) -> tuple[float, float]:
        if self.x0 is None:
            return (self.lo, self.hi)
        return (self.x0, self.x1)


@dataclass(frozen=True)
class NonlinearKey:
    """Key function plus solver setup and decryption rounding tolerance."""

    f: KeyFunction
    solver: SolverConfig = SolverConfig()
    decrypt_tol: float = 0.25
    _roots: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 < self.decrypt_tol < 0.5:
            raise ValueError("decrypt_tol must lie in (0, 0.5)")


def _scan_first_bracket(f: KeyFunction, c: int, cfg: SolverConfig):
    """Walk lo..hi in equal steps; return the first sign-change bracket.

    Returns ("root", x) when a scan point hits the root exactly, else
    ("bracket", a, ga, b, gb).  Raises NoRootError when no sign change
    exists on the grid.
    """
    lo, hi, steps = cfg.lo, cfg.hi, cfg.bracket_scan_steps
    width = hi - lo
    x_prev = lo
    g_prev = eval_key_function(f, lo) - c
    if g_prev == 0.0:
        return ("root", lo)
    for i in range(1, steps + 1):
        x = hi if i == steps else lo + i * width / steps
        g = eval_key_function(f, x) - c
        if g == 0.0:
            return ("root", x)
        if (g_prev < 0.0) != (g < 0.0):
            return ("bracket", x_prev, g_prev, x, g)
        x_prev, g_prev = x, g
    raise NoRootError(
        f"no sign change of f(x) - {c} in [{lo}, {hi}] "
        f"({steps}-step scan)"
    )


def bisection_solve(f: KeyFunction, c: int, cfg: SolverConfig) -> Scalar:
    """Find the leftmost bracketed root of f(x) - c = 0 by bisection."""
    found = _scan_first_bracket(f, c, cfg)
    if found[0] == "root":
        return found[1]
    _, a, ga, b, _gb = found
    for _ in range(cfg.max_iter):
        mid = 0.5 * (a + b)
        gm = eval_key_function(f, mid) - c
        if abs(gm) <= cfg.tol or (b - a) <= cfg.tol:
            return mid
        if mid == a or mid == b:
            # bracket width is below one ulp; nothing left to refine
            return mid
        if (gm < 0.0) == (ga < 0.0):
            a, ga = mid, gm
        else:
            b = mid
    raise ConvergenceError(
        f"bisection did not converge for c = {c} within {cfg.max_iter} iterations"
    )


def secant_solve(f: KeyFunction, c: int, cfg: SolverConfig) -> Scalar:
    """Solve f(x) - c = 0 from two seeds by the secant iteration."""
    x0, x1 = cfg.seeds

    def g(x):
        try:
            return eval_key_function(f, x) - c
        except FormatOverflow:
            raise ConvergenceError(
                f"secant iterate diverged (overflow at x = {x!r}) for c = {c}"
            ) from None

    g0 = g(x0)
    if abs(g0) <= cfg.tol:
        return x0
    g1 = g(x1)
    for _ in range(cfg.max_iter):
        if abs(g1) <= cfg.tol:
            return x1
        if abs(x1 - x0) <= cfg.tol:
            # iterates have collapsed onto the root to within tol
            return x1
        denom = g1 - g0
        if abs(denom) < 1e-300:
            raise ConvergenceError(f"flat secant for c = {c} near x = {x1!r}")
        x2 = x1 - g1 * (x1 - x0) / denom
        if not math.isfinite(x2):
            raise ConvergenceError(f"secant diverged for c = {c}")
        x0, g0 = x1, g1
        x1, g1 = x2, g(x2)
    raise ConvergenceError(
        f"secant did not converge for c = {c} within {cfg.max_iter} iterations"
    )


def solve_root(f: KeyFunction, c: int, cfg: SolverConfig) -> Scalar:
    if cfg.method == "secant":
        return secant_solve(f, c, cfg)
    return bisection_solve(f, c, cfg)


def _root_for(key: NonlinearKey, code: int) -> Scalar:
    cache = key._roots
    root = cache.get(code)
    if root is None:
        root = solve_root(key.f, code, key.solver)
        cache[code] = root
    return root


def encrypt_nonlinear(key: NonlinearKey, plaintext) -> list[Scalar]:
    """One root per character; equal bytes yield bit-identical roots."""
    data = bytes(plaintext)
    if not data:
        return []
    for code in sorted(set(data)):
        try:
            _root_for(key, code)
        except (NoRootError, ConvergenceError) as exc:
            raise type(exc)(
                f"character {code} at index {data.index(code)}: {exc}"
            ) from None
    lut = np.zeros(256)
    for code, root in key._roots.items():
        lut[code] = root
    return lut[np.frombuffer(data, dtype=np.uint8)].tolist()


def decrypt_nonlinear(key: NonlinearKey, roots: Sequence[Scalar]) -> bytes:
    """Evaluate f at each root and round back to character codes."""
    arr = np.asarray(roots, dtype=np.float64)
    if arr.size == 0:
        return b""
    with np.errstate(over="ignore", invalid="ignore"):
        values = key.f.evaluate(arr)
    return codes_from_reals(values, key.decrypt_tol)


@dataclass(frozen=True)
class ValidationReport:
    """Which alphabet codes the key can and cannot encrypt."""

    alphabet: tuple
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_key(key: NonlinearKey, alphabet: Sequence[int] = DEFAULT_ALPHABET) -> ValidationReport:
    """Certify a sign change inside the search interval for every code."""
    failures = []
    for code in alphabet:
        try:
            _scan_first_bracket(key.f, code, key.solver)
        except (NoRootError, FormatOverflow):
            failures.append(code)
    return ValidationReport(tuple(alphabet), tuple(failures))
