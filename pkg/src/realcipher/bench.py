"""Timing harness: encryption/decryption time versus plaintext size.

Absolute timings are hardware-bound; the reproducible claim is the
linear growth, summarized by the Pearson correlation of median time
against size.
"""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass
from typing import Sequence

from .pipeline import Pipeline, decrypt_pipeline, encrypt_pipeline

#: Plaintext sizes (bytes) used by default.
DEFAULT_SIZES = (21, 1036, 2024, 4658, 6218, 9830, 18552, 31081, 39674, 60173)

_PRINTABLE = bytes(range(32, 127))


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson correlation coefficient of two equal-length samples."""
    n = len(xs)
    if n != len(ys):
        raise ValueError("samples must have equal lengths")
    if n < 2:
        raise ValueError("need at least two points")
    mx = sum(xs) / n
    my = sum(ys) / n
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    if vx == 0.0 or vy == 0.0:
        raise ValueError("correlation undefined for a constant sample")
    return cov / ((vx * vy) ** 0.5)


@dataclass(frozen=True)
class BenchResult:
    sizes: tuple
    enc_times: tuple
    dec_times: tuple
    r_enc: float
    r_dec: float

    def table(self) -> str:
        lines = [f"{'size_bytes':>12} {'encrypt_s':>12} {'decrypt_s':>12}"]
        for size, te, td in zip(self.sizes, self.enc_times, self.dec_times):
            lines.append(f"{size:>12} {te:>12.6f} {td:>12.6f}")
        lines.append(f"r_enc = {self.r_enc:.4f}")
        lines.append(f"r_dec = {self.r_dec:.4f}")
        return "\n".join(lines)

    def csv(self) -> str:
        lines = ["size_bytes,encrypt_seconds,decrypt_seconds"]
        for size, te, td in zip(self.sizes, self.enc_times, self.dec_times):
            lines.append(f"{size},{te:.9f},{td:.9f}")
        return "\n".join(lines) + "\n"


def bench(
    pipeline: Pipeline,
    sizes: Sequence[int] = DEFAULT_SIZES,
    reps: int = 5,
    seed: int | None = None,
) -> BenchResult:
    """Median-of-reps timings of random printable plaintexts per size.

    Sizes must be strictly increasing with at least three distinct
    values.  A warm-up round trip per size is run and discarded.
    """
    sizes = tuple(int(s) for s in sizes)
    if len(set(sizes)) < 3:
        raise ValueError("need at least three distinct sizes")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    if reps < 1:
        raise ValueError("reps must be at least 1")
    rng = random.Random(seed)
    enc_times = []
    dec_times = []
    clock = time.perf_counter
    for size in sizes:
        plaintext = bytes(rng.choices(_PRINTABLE, k=size))
        ciphertext = encrypt_pipeline(pipeline, plaintext)  # warm-up
        decrypt_pipeline(pipeline, ciphertext)
        samples_enc = []
        samples_dec = []
        for _ in range(reps):
            t0 = clock()
            ciphertext = encrypt_pipeline(pipeline, plaintext)
            samples_enc.append(clock() - t0)
            t0 = clock()
            decrypt_pipeline(pipeline, ciphertext)
            samples_dec.append(clock() - t0)
        enc_times.append(statistics.median(samples_enc))
        dec_times.append(statistics.median(samples_dec))
    return BenchResult(
        sizes=sizes,
        enc_times=tuple(enc_times),
        dec_times=tuple(dec_times),
        r_enc=pearson(sizes, enc_times),
        r_dec=pearson(sizes, dec_times),
    )
