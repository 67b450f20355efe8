"""Line-oriented key files describing a whole pipeline.

Grammar (UTF-8 text, one logical field per line)::

    realcipher-key v1
    format <fractional_digits>
    stage linear
    n <int>
    row <n floats>          # repeated n times, full-precision literals
    b <n floats>
    stage nonlinear
    kind polynomial | exp2 | newton
    coeffs <floats>         # polynomial: coefficients, highest degree first
    exponent <alpha> <beta> <gamma>   # exp2: 2^(alpha x^2 + beta x + gamma)
    nodes <floats>          # newton: interpolation nodes, then
    coeffs <floats>         #         divided-difference coefficients
    method bisection | secant
    interval <lo> <hi>
    tol <float>
    max_iter <int>
    scan_steps <int>
    seeds <x0> <x1>         # optional; secant seeds
    decrypt_tol <float>
    stage vigenere
    keyword <floats>
    stage transpose
    mode halving | keyed
    perm <ints>             # keyed mode only

Blank lines and lines starting with '#' are ignored.  Stage order in
the file is the pipeline stage order and is validated on load.
"""

from __future__ import annotations

import os
from typing import Union

from .classical import HalvingInterleave, KeyedBlockPermutation, VigenereKey
from .errors import ParseError
from .linear import LinearKey
from .nonlinear import (
    Exp2Quadratic,
    NewtonPolynomial,
    NonlinearKey,
    Polynomial,
    SolverConfig,
)
from .pipeline import (
    LinearStage,
    NonlinearStage,
    Pipeline,
    TranspositionStage,
    VigenereStage,
)
from .scalar import FormatSpec

MAGIC = "realcipher-key v1"


def _fmt_floats(values) -> str:
    return " ".join(repr(float(v)) for v in values)


def dump_key(pipeline: Pipeline) -> str:
    """Render a pipeline as key-file text."""
    lines = [MAGIC, f"format {pipeline.fmt.fractional_digits}"]
    for stage in pipeline.stages:
        if isinstance(stage, LinearStage):
            key = stage.key
            lines.append("stage linear")
            lines.append(f"n {key.n}")
            for row in key.a:
                lines.append(f"row {_fmt_floats(row)}")
            lines.append(f"b {_fmt_floats(key.b)}")
        elif isinstance(stage, NonlinearStage):
            key = stage.key
            lines.append("stage nonlinear")
            if isinstance(key.f, Polynomial):
                lines.append("kind polynomial")
                lines.append(f"coeffs {_fmt_floats(key.f.coeffs)}")
            elif isinstance(key.f, NewtonPolynomial):
                lines.append("kind newton")
                lines.append(f"nodes {_fmt_floats(key.f.nodes)}")
                lines.append(f"coeffs {_fmt_floats(key.f.coeffs)}")
            else:
                lines.append("kind exp2")
                lines.append(f"exponent {_fmt_floats((key.f.alpha, key.f.beta, key.f.gamma))}")
            cfg = key.solver
            lines.append(f"method {cfg.method}")
            lines.append(f"interval {_fmt_floats((cfg.lo, cfg.hi))}")
            lines.append(f"tol {cfg.tol!r}")
            lines.append(f"max_iter {cfg.max_iter}")
            lines.append(f"scan_steps {cfg.bracket_scan_steps}")
            if cfg.x0 is not None:
                lines.append(f"seeds {_fmt_floats((cfg.x0, cfg.x1))}")
            lines.append(f"decrypt_tol {key.decrypt_tol!r}")
        elif isinstance(stage, VigenereStage):
            lines.append("stage vigenere")
            lines.append(f"keyword {_fmt_floats(stage.key.keyword)}")
        elif isinstance(stage, TranspositionStage):
            lines.append("stage transpose")
            if isinstance(stage.spec, HalvingInterleave):
                lines.append("mode halving")
            else:
                lines.append("mode keyed")
                lines.append("perm " + " ".join(str(p) for p in stage.spec.perm))
        else:
            raise TypeError(f"unknown stage type {type(stage).__name__}")
    return "\n".join(lines) + "\n"


def save_key(pipeline: Pipeline, path: Union[str, os.PathLike]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_key(pipeline))


class _Reader:
    def __init__(self, text: str):
        self.fields = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            name, _, rest = line.partition(" ")
            self.fields.append((lineno, name, rest.strip()))
        self.pos = 0

    def peek(self):
        return self.fields[self.pos] if self.pos < len(self.fields) else None

    def take(self, expected: str) -> str:
        entry = self.peek()
        if entry is None:
            raise ParseError(f"key file ended while expecting '{expected}'")
        lineno, name, rest = entry
        if name != expected:
            raise ParseError(f"line {lineno}: expected '{expected}', found '{name}'")
        self.pos += 1
        return rest

    def take_optional(self, expected: str):
        entry = self.peek()
        if entry and entry[1] == expected:
            self.pos += 1
            return entry[2]
        return None


def _floats(text: str, lineno_hint: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split()]
    except ValueError:
        raise ParseError(f"bad numeric value in {lineno_hint}: {text!r}") from None


def _float1(text: str, lineno_hint: str) -> float:
    values = _floats(text, lineno_hint)
    if len(values) != 1:
        raise ParseError(f"{lineno_hint} needs exactly one value, got {text!r}")
    return values[0]


def _int(text: str, lineno_hint: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"bad integer in {lineno_hint}: {text!r}") from None


def _load_linear(reader: _Reader) -> LinearStage:
    n = _int(reader.take("n"), "n")
    rows = []
    for _ in range(n):
        row = _floats(reader.take("row"), "row")
        if len(row) != n:
            raise ParseError(f"matrix row has {len(row)} entries, expected {n}")
        rows.append(tuple(row))
    b = _floats(reader.take("b"), "b")
    if len(b) != n:
        raise ParseError(f"offset vector has {len(b)} entries, expected {n}")
    return LinearStage(LinearKey(n, tuple(rows), tuple(b)))


def _load_nonlinear(reader: _Reader) -> NonlinearStage:
    kind = reader.take("kind")
    if kind == "polynomial":
        f = Polynomial(tuple(_floats(reader.take("coeffs"), "coeffs")))
    elif kind == "newton":
        nodes = _floats(reader.take("nodes"), "nodes")
        coeffs = _floats(reader.take("coeffs"), "coeffs")
        f = NewtonPolynomial(tuple(nodes), tuple(coeffs))
    elif kind == "exp2":
        params = _floats(reader.take("exponent"), "exponent")
        if len(params) != 3:
            raise ParseError("exponent needs exactly three values")
        f = Exp2Quadratic(*params)
    else:
        raise ParseError(f"unknown key-function kind {kind!r}")
    method = reader.take("method")
    interval = _floats(reader.take("interval"), "interval")
    if len(interval) != 2:
        raise ParseError("interval needs exactly two values")
    tol = _float1(reader.take("tol"), "tol")
    max_iter = _int(reader.take("max_iter"), "max_iter")
    scan_steps = _int(reader.take("scan_steps"), "scan_steps")
    seeds_text = reader.take_optional("seeds")
    x0 = x1 = None
    if seeds_text is not None:
        seeds = _floats(seeds_text, "seeds")
        if len(seeds) != 2:
            raise ParseError("seeds needs exactly two values")
        x0, x1 = seeds
    decrypt_tol = _float1(reader.take("decrypt_tol"), "decrypt_tol")
    try:
        cfg = SolverConfig(
            method=method,
            lo=interval[0],
            hi=interval[1],
            tol=tol,
            max_iter=max_iter,
            bracket_scan_steps=scan_steps,
            x0=x0,
            x1=x1,
        )
        key = NonlinearKey(f, cfg, decrypt_tol)
    except ValueError as exc:
        raise ParseError(f"invalid nonlinear stage: {exc}") from None
    return NonlinearStage(key)


def loads_key(text: str) -> Pipeline:
    """Parse key-file text into a validated pipeline."""
    reader = _Reader(text)
    magic = reader.peek()
    if magic is None or f"{magic[1]} {magic[2]}".strip() != MAGIC:
        raise ParseError(f"missing or wrong magic line (expected {MAGIC!r})")
    reader.pos += 1
    fmt = None
    if (digits := reader.take_optional("format")) is not None:
        try:
            fmt = FormatSpec(fractional_digits=_int(digits, "format"))
        except ValueError as exc:
            raise ParseError(f"bad format line: {exc}") from None
    stages = []
    while (entry := reader.peek()) is not None:
        lineno, name, rest = entry
        if name != "stage":
            raise ParseError(f"line {lineno}: expected 'stage', found '{name}'")
        reader.pos += 1
        try:
            if rest == "linear":
                stages.append(_load_linear(reader))
            elif rest == "nonlinear":
                stages.append(_load_nonlinear(reader))
            elif rest == "vigenere":
                keyword = _floats(reader.take("keyword"), "keyword")
                stages.append(VigenereStage(VigenereKey(tuple(keyword))))
            elif rest == "transpose":
                mode = reader.take("mode")
                if mode == "halving":
                    stages.append(TranspositionStage(HalvingInterleave()))
                elif mode == "keyed":
                    perm = [_int(v, "perm") for v in reader.take("perm").split()]
                    stages.append(TranspositionStage(KeyedBlockPermutation(tuple(perm))))
                else:
                    raise ParseError(f"unknown transposition mode {mode!r}")
            else:
                raise ParseError(f"line {lineno}: unknown stage kind {rest!r}")
        except ValueError as exc:
            raise ParseError(f"invalid stage near line {lineno}: {exc}") from None
    try:
        return Pipeline(tuple(stages), fmt)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"invalid pipeline: {exc}") from None


def load_key(path: Union[str, os.PathLike]) -> Pipeline:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_key(fh.read())
