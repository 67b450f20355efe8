"""Command-line front end: keygen, encrypt/decrypt, attacks, measures, bench.

The REALCIPHER_SEED environment variable, when set, overrides any
--seed flag, so fixture runs stay reproducible across scripts.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from .bench import DEFAULT_SIZES, bench
from .classical import HalvingInterleave, KeyedBlockPermutation, VigenereKey
from .cryptanalysis import interpolate_key, kpa_linear
from .errors import CipherError
from .keyfile import load_key, save_key
from .linear import keygen_linear, pad_plaintext
from .nonlinear import (
    DEFAULT_ALPHABET,
    Exp2Quadratic,
    NonlinearKey,
    Polynomial,
    SolverConfig,
    validate_key,
)
from .pipeline import (
    LinearStage,
    NonlinearStage,
    Pipeline,
    TranspositionStage,
    VigenereStage,
    parse_ciphertext,
)
from .scalar import FormatSpec
from .security import (
    ENGLISH_LETTER_ENTROPY,
    equivocation_lower_bound,
    format_hill_keyspace,
    hill_keyspace,
    key_equivocation,
    product_gained_uncertainty,
    transposition_uncertainty,
    vigenere_uncertainty,
)

SEED_ENV = "REALCIPHER_SEED"


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None:
        return int(env)
    return args.seed


def _random_polynomial_key(rng: random.Random, degree: int, magnitude: float) -> Polynomial:
    # positive coefficients above the constant term keep the function
    # strictly increasing for x >= 0, so every code 0..255 is reachable
    coeffs = [rng.uniform(0.1, magnitude) for _ in range(degree)]
    coeffs.append(-rng.uniform(0.5, 2.0))
    return Polynomial(tuple(coeffs))


def _random_exp2_key(rng: random.Random) -> Exp2Quadratic:
    return Exp2Quadratic(
        alpha=rng.uniform(0.2, 1.5),
        beta=rng.uniform(0.0, 2.0),
        gamma=rng.uniform(-1.0, 1.0),
    )


def _grow_interval(f, lo: float) -> float:
    hi = max(1.0, lo + 1.0)
    for _ in range(60):
        if f.evaluate(hi) > 300.0:
            return hi
        hi *= 2.0
    raise CipherError("could not find an interval covering all byte codes")


def _extra_stages(args, rng: random.Random) -> list:
    stages = []
    if args.vigenere_len:
        keyword = tuple(rng.uniform(0.0, 10.0) for _ in range(args.vigenere_len))
        stages.append(VigenereStage(VigenereKey(keyword)))
    if args.transpose == "halving":
        stages.append(TranspositionStage(HalvingInterleave()))
    elif args.transpose:
        size = int(args.transpose)
        perm = list(range(size))
        rng.shuffle(perm)
        stages.append(TranspositionStage(KeyedBlockPermutation(tuple(perm))))
    return stages


def _cmd_keygen(args) -> int:
    seed = _seed(args)
    rng = random.Random(seed ^ 0x5EED)  # independent of the matrix draw
    if args.kind == "linear":
        key = keygen_linear(args.n, seed, magnitude=args.magnitude)
        first = LinearStage(key)
        digits = args.digits if args.digits else 6
    else:
        rng_f = random.Random(seed)
        if args.function == "polynomial":
            f = _random_polynomial_key(rng_f, args.degree, args.magnitude)
        else:
            f = _random_exp2_key(rng_f)
        hi = _grow_interval(f, 0.0)
        cfg = SolverConfig(method=args.method, lo=0.0, hi=hi)
        key = NonlinearKey(f, cfg)
        report = validate_key(key, DEFAULT_ALPHABET)
        if not report.ok:
            raise CipherError(
                f"generated key cannot encrypt codes {list(report.failures)[:8]}"
            )
        first = NonlinearStage(key)
        digits = args.digits if args.digits else 12
    stages = [first] + _extra_stages(args, rng)
    pipeline = Pipeline(tuple(stages), FormatSpec(fractional_digits=digits))
    save_key(pipeline, args.out)
    print(f"wrote {args.kind} key ({len(stages)} stage(s)) to {args.out}")
    return 0


def _cmd_encrypt(args) -> int:
    pipeline = load_key(args.key)
    with open(args.infile, "rb") as fh:
        plaintext = fh.read()
    ciphertext = pipeline.encrypt(plaintext)
    with open(args.out, "wb") as fh:
        fh.write(ciphertext)
    print(f"encrypted {len(plaintext)} bytes -> {len(ciphertext)} ciphertext bytes")
    return 0


def _cmd_decrypt(args) -> int:
    pipeline = load_key(args.key)
    with open(args.infile, "rb") as fh:
        ciphertext = fh.read()
    plaintext = pipeline.decrypt(ciphertext)
    with open(args.out, "wb") as fh:
        fh.write(plaintext)
    print(f"decrypted {len(ciphertext)} bytes -> {len(plaintext)} plaintext bytes")
    return 0


def _read_pairs(args):
    with open(args.plain, "rb") as fh:
        plain = fh.read()
    with open(args.cipher, "rb") as fh:
        tokens = fh.read()
    return plain, parse_ciphertext(tokens)


def _cmd_attack(args) -> int:
    plain, xs = _read_pairs(args)
    if args.mode == "kpa":
        n = args.n
        plain = pad_plaintext(plain, n)
        if len(xs) < len(plain):
            raise CipherError(
                f"ciphertext has {len(xs)} values but plaintext pads to {len(plain)}"
            )
        blocks = [
            (tuple(plain[i : i + n]), tuple(xs[i : i + n]))
            for i in range(0, len(plain), n)
        ]
        key = kpa_linear(blocks, n)
        pipeline = Pipeline((LinearStage(key),))
        save_key(pipeline, args.out)
        print(f"recovered {n}x{n} linear key from {len(blocks)} blocks -> {args.out}")
    else:
        count = min(len(plain), len(xs))
        points = [(xs[i], plain[i]) for i in range(count)]
        poly = interpolate_key(points)
        roots = [x for x, _ in points]
        margin = 0.5
        cfg = SolverConfig(lo=min(roots) - margin, hi=max(roots) + margin)
        key = NonlinearKey(poly, cfg)
        pipeline = Pipeline((NonlinearStage(key),), FormatSpec(fractional_digits=args.digits))
        save_key(pipeline, args.out)
        print(
            f"interpolated degree-{poly.degree} key from "
            f"{len(set(roots))} distinct pairs -> {args.out}"
        )
    return 0


def _cmd_measure(args) -> int:
    rows = []
    if args.hk is not None:
        report = key_equivocation(args.hk, args.hpn, args.hcn)
        rows += [
            ("H(K)", f"{report.hk:.4f} bits"),
            ("H(P^n)", f"{report.hpn:.4f} bits"),
            ("H(C^n)", f"{report.hcn:.4f} bits"),
            ("H(K|C^n)", f"{report.equivocation:.4f} bits"),
        ]
        if args.bound_n is not None:
            lb = equivocation_lower_bound(
                args.hk, args.bound_n, args.bound_hl, args.bound_alphabet
            )
            rows.append((f"H(K|C^n) lower bound (n={args.bound_n})", f"{lb:.4f} bits"))
    if args.hill_n is not None:
        count = hill_keyspace(args.hill_n, args.hill_m)
        rows.append(
            (f"invertible {args.hill_n}x{args.hill_n} matrices mod {args.hill_m}",
             str(count))
        )
        rows.append(("  expansion", format_hill_keyspace(args.hill_n, args.hill_m)))
        rows.append(("  key bits", f"{count.bit_length() - 1} (floor log2)"))
    if args.transposition_n is not None:
        bits = transposition_uncertainty(args.transposition_n)
        rows.append(
            (f"transposition uncertainty (length {args.transposition_n})",
             f"{bits:.4f} bits")
        )
    if args.vigenere_k is not None:
        bits = vigenere_uncertainty(args.vigenere_k)
        rows.append(
            (f"vigenere uncertainty (keyword {args.vigenere_k})", f"{bits:.4f} bits")
        )
    if args.transposition_n is not None and args.vigenere_k is not None:
        bits = product_gained_uncertainty(args.transposition_n, args.vigenere_k)
        rows.append(("combined gained uncertainty", f"{bits:.4f} bits"))
    if not rows:
        raise CipherError("nothing to measure; pass --hk, --hill-n, "
                          "--transposition-n or --vigenere-k")
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")
    return 0


def _cmd_bench(args) -> int:
    pipeline = load_key(args.key)
    sizes = DEFAULT_SIZES if args.sizes is None else tuple(
        int(s) for s in args.sizes.split(",")
    )
    result = bench(pipeline, sizes=sizes, reps=args.reps, seed=_seed(args))
    print(result.table())
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(result.csv())
        print(f"csv written to {args.csv}")
    else:
        print(result.csv(), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realcipher",
        description="Symmetric ciphers over real arithmetic",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key file")
    p.add_argument("kind", choices=["linear", "nonlinear"])
    p.add_argument("--n", type=int, default=3, help="block length (linear)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--magnitude", type=float, default=10.0)
    p.add_argument("--function", choices=["polynomial", "exp2"], default="polynomial")
    p.add_argument("--degree", type=int, default=5)
    p.add_argument("--method", choices=["bisection", "secant"], default="bisection")
    p.add_argument("--digits", type=int, default=0,
                   help="serialization digits (default 6 linear / 12 nonlinear)")
    p.add_argument("--vigenere-len", type=int, default=0,
                   help="append a Vigenere stage with this keyword length")
    p.add_argument("--transpose", default=None,
                   help="'halving' or a block size for a keyed permutation")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_keygen)

    for name, fn in (("encrypt", _cmd_encrypt), ("decrypt", _cmd_decrypt)):
        p = sub.add_parser(name, help=f"{name} a file through a key file")
        p.add_argument("--key", required=True)
        p.add_argument("--in", dest="infile", required=True)
        p.add_argument("--out", required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("attack", help="recover a key from known plaintext")
    p.add_argument("mode", choices=["kpa", "interp"])
    p.add_argument("--n", type=int, default=2, help="block length (kpa)")
    p.add_argument("--plain", required=True, help="known plaintext file")
    p.add_argument("--cipher", required=True,
                   help="matching substitution-stage ciphertext tokens")
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_attack)

    p = sub.add_parser("measure", help="entropy / keyspace calculations")
    p.add_argument("--hk", type=float, default=None, help="H(K) in bits")
    p.add_argument("--hpn", type=float, default=0.0)
    p.add_argument("--hcn", type=float, default=0.0)
    p.add_argument("--bound-n", type=int, default=None)
    p.add_argument("--bound-hl", type=float, default=ENGLISH_LETTER_ENTROPY)
    p.add_argument("--bound-alphabet", type=int, default=26)
    p.add_argument("--hill-n", type=int, default=None)
    p.add_argument("--hill-m", type=int, default=26)
    p.add_argument("--transposition-n", type=int, default=None)
    p.add_argument("--vigenere-k", type=int, default=None)
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("bench", help="time encryption across plaintext sizes")
    p.add_argument("--key", required=True)
    p.add_argument("--sizes", default=None, help="comma-separated byte sizes")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None, help="write the csv table to a file")
    p.set_defaults(func=_cmd_bench)

    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CipherError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
