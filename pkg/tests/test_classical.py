import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realcipher import (
    HalvingInterleave,
    KeyedBlockPermutation,
    ParseError,
    VigenereKey,
    inverse_keyed_block_transpose,
    inverse_transpose_halving,
    keyed_block_transpose,
    transpose_halving,
    vigenere_decrypt,
    vigenere_encrypt,
)
from realcipher.classical import inverse_transpose, transpose

from golden import KEYWORD_10, QUINTIC_ROOTS, VIGENERE_VALUES


class TestHalvingTransposition:
    def test_smallest_even_case(self):
        assert transpose_halving(b"ABCD") == b"ACBD"

    def test_odd_length_pads_with_space(self):
        assert transpose_halving(b"ABC") == b"ACB "

    def test_inverse(self):
        assert inverse_transpose_halving(b"ACBD") == b"ABCD"

    def test_inverse_rejects_odd_length(self):
        with pytest.raises(ParseError):
            inverse_transpose_halving(b"ABC")

    def test_empty(self):
        assert transpose_halving(b"") == b""
        assert inverse_transpose_halving(b"") == b""

    def test_round_trip_random(self):
        rng = random.Random(0)
        for _ in range(300):
            text = rng.randbytes(rng.randrange(0, 4096))
            padded = text if len(text) % 2 == 0 else text + b" "
            assert inverse_transpose_halving(transpose_halving(text)) == padded

    def test_forward_of_inverse_is_identity_on_even_lengths(self):
        rng = random.Random(1)
        for _ in range(100):
            text = rng.randbytes(2 * rng.randrange(0, 512))
            assert transpose_halving(inverse_transpose_halving(text)) == text

    @given(st.binary(max_size=2048))
    @settings(max_examples=200)
    def test_round_trip_property(self, text):
        padded = text if len(text) % 2 == 0 else text + b" "
        assert inverse_transpose_halving(transpose_halving(text)) == padded


class TestKeyedTransposition:
    def test_identity_permutation(self):
        spec = KeyedBlockPermutation((0, 1, 2))
        assert keyed_block_transpose(b"ABCDEF", spec) == b"ABCDEF"
        assert keyed_block_transpose(b"ABCD", spec) == b"ABCD  "  # padded

    def test_swap(self):
        spec = KeyedBlockPermutation((1, 0))
        assert keyed_block_transpose(b"ABCD", spec) == b"BADC"

    def test_round_trip_random_permutations(self):
        rng = random.Random(2)
        for _ in range(200):
            m = rng.randrange(2, 9)
            perm = list(range(m))
            rng.shuffle(perm)
            spec = KeyedBlockPermutation(tuple(perm))
            text = rng.randbytes(rng.randrange(0, 300))
            padded = text + b" " * (-len(text) % m)
            out = keyed_block_transpose(text, spec)
            assert inverse_keyed_block_transpose(out, spec) == padded

    def test_keyspace_is_m_factorial(self):
        text = b"abcdef"  # generic: all distinct
        outputs = {
            keyed_block_transpose(text, KeyedBlockPermutation(perm))
            for perm in itertools.permutations(range(3))
        }
        assert len(outputs) == math.factorial(3)

    def test_inverse_rejects_partial_blocks(self):
        with pytest.raises(ParseError):
            inverse_keyed_block_transpose(b"ABCDE", KeyedBlockPermutation((1, 0)))

    def test_bad_permutation(self):
        with pytest.raises(ValueError):
            KeyedBlockPermutation((0, 0, 1))
        with pytest.raises(ValueError):
            KeyedBlockPermutation(())

    def test_dispatch_helpers(self):
        assert transpose(b"ABCD", HalvingInterleave()) == b"ACBD"
        assert inverse_transpose(b"ACBD", HalvingInterleave()) == b"ABCD"
        spec = KeyedBlockPermutation((1, 0))
        assert inverse_transpose(transpose(b"xyzw", spec), spec) == b"xyzw"


class TestVigenere:
    KEY = VigenereKey(KEYWORD_10)

    def test_reference_stream(self):
        ys = vigenere_encrypt(QUINTIC_ROOTS, self.KEY)
        worst = max(abs(a - b) for a, b in zip(ys, VIGENERE_VALUES))
        assert worst <= 1e-5

    def test_decrypt_reference_stream(self):
        xs = vigenere_decrypt(VIGENERE_VALUES, self.KEY)
        worst = max(abs(a - b) for a, b in zip(xs, QUINTIC_ROOTS))
        assert worst <= 1e-5

    def test_zero_keyword_is_identity(self):
        key = VigenereKey((0.0, 0.0, 0.0))
        xs = [1.5, -2.25, 3.125, 7.0]
        assert vigenere_encrypt(xs, key) == xs
        assert vigenere_decrypt(xs, key) == xs

    def test_congruent_indices_match_non_congruent_differ(self):
        xs = [2.5] * 12
        ys = vigenere_encrypt(xs, self.KEY)
        assert ys[0] == ys[10]  # same keyword slot
        assert ys[0] != ys[1]  # distinct keyword entries

    def test_breaks_code_to_scalar_correspondence(self):
        ys = vigenere_encrypt(QUINTIC_ROOTS, self.KEY)
        assert QUINTIC_ROOTS[1] == QUINTIC_ROOTS[5]  # equal roots going in
        assert ys[1] != ys[5]  # unequal outputs coming out

    def test_round_trip_within_one_ulp(self):
        rng = random.Random(6)
        xs = [rng.uniform(0, 3) for _ in range(1000)]
        kw = VigenereKey(tuple(rng.uniform(0, 10) for _ in range(7)))
        back = vigenere_decrypt(vigenere_encrypt(xs, kw), kw)
        for x, b, y in zip(xs, back, vigenere_encrypt(xs, kw)):
            assert abs(b - x) <= math.ulp(y)

    def test_keyword_validation(self):
        with pytest.raises(ValueError):
            VigenereKey(())
        with pytest.raises(ValueError):
            VigenereKey((1.0, float("nan")))
