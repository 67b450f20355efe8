import random

import numpy as np
import pytest

from realcipher import (
    FormatOverflow,
    FormatSpec,
    HalvingInterleave,
    KeyedBlockPermutation,
    LinearKey,
    LinearStage,
    NonlinearStage,
    ParseError,
    Pipeline,
    TranspositionStage,
    VigenereKey,
    VigenereStage,
    decrypt_pipeline,
    encrypt_linear,
    encrypt_nonlinear,
    encrypt_pipeline,
    format_scalar,
    inverse_transpose_halving,
    keygen_linear,
    parse_ciphertext,
    serialize_ciphertext,
)
from realcipher.linear import pad_plaintext

from golden import (
    KEYWORD_10,
    QUINTIC_ROOT_TOKENS,
    QUINTIC_ROOTS,
    STAGE1_VALUES,
    STREAM_TEXT,
    VIGENERE_VALUES,
    DECRYPT_REALS,
    demo_linear_key,
    quintic_key,
)

FMT6 = FormatSpec(6)
FMT12 = FormatSpec(12)


def demo_pipeline() -> Pipeline:
    return Pipeline(
        (LinearStage(demo_linear_key()), TranspositionStage(HalvingInterleave()))
    )


def three_stage_pipeline() -> Pipeline:
    return Pipeline(
        (
            NonlinearStage(quintic_key()),
            VigenereStage(VigenereKey(KEYWORD_10)),
            TranspositionStage(HalvingInterleave()),
        )
    )


class TestSerialization:
    def test_basic(self):
        assert serialize_ciphertext((-17.2, -23.2), FMT6) == b"-17.200000 -23.200000"

    def test_empty(self):
        assert serialize_ciphertext((), FMT6) == b""
        assert parse_ciphertext(b"", FMT6) == []

    def test_root_tokens(self):
        expected = " ".join(QUINTIC_ROOT_TOKENS).encode()
        assert serialize_ciphertext(QUINTIC_ROOTS, FMT12) == expected

    def test_parse_basic(self):
        assert parse_ciphertext(b"-17.200000 -23.200000", FMT6) == [-17.2, -23.2]

    def test_parse_rejects_garbage(self):
        with pytest.raises(ParseError, match="index 0"):
            parse_ciphertext(b"abc", FMT6)
        with pytest.raises(ParseError, match="index 1"):
            parse_ciphertext(b"1.5 oops 2.5", FMT6)

    def test_parse_tolerates_trailing_pad_spaces(self):
        assert parse_ciphertext(b"1.500000 ", FMT6) == [1.5]
        assert parse_ciphertext(b"1.500000    ", FMT6) == [1.5]
        with pytest.raises(ParseError):  # interior empty token is still an error
            parse_ciphertext(b"1.500000  2.000000", FMT6)

    def test_round_trip_many_random(self):
        rng = random.Random(8)
        xs = np.array([rng.uniform(-1e5, 1e5) for _ in range(10_000)])
        parsed = parse_ciphertext(serialize_ciphertext(xs, FMT12), FMT12)
        # quantization plus at most one re-parse rounding per value
        assert (np.abs(parsed - xs) <= 0.5e-12 + np.spacing(np.abs(xs))).all()

    def test_bulk_matches_per_token_formatter(self):
        rng = random.Random(9)
        values = [rng.uniform(-100, 100) for _ in range(500)]
        # exact decimal ties: odd / 2^(digits+1)
        values += [(2 * k + 1) / 2.0**7 for k in range(40)]
        rng.shuffle(values)
        spec = FormatSpec(6)
        expected = b" ".join(format_scalar(v, spec) for v in values)
        assert serialize_ciphertext(values, spec) == expected

    def test_non_finite_rejected(self):
        with pytest.raises(FormatOverflow, match="index 1"):
            serialize_ciphertext([1.0, float("inf")], FMT6)

    def test_magnitude_guard(self):
        with pytest.raises(FormatOverflow):
            serialize_ciphertext([1.5e308], FMT6)


class TestPipelineValidation:
    def test_substitution_must_come_first(self):
        with pytest.raises(ValueError):
            Pipeline((TranspositionStage(HalvingInterleave()),))
        with pytest.raises(ValueError):
            Pipeline(
                (VigenereStage(VigenereKey((1.0,))), NonlinearStage(quintic_key()))
            )

    def test_single_substitution_only(self):
        key = keygen_linear(2, seed=0)
        with pytest.raises(ValueError):
            Pipeline((LinearStage(key), LinearStage(key)))

    def test_vigenere_after_transpose_rejected(self):
        with pytest.raises(ValueError):
            Pipeline(
                (
                    NonlinearStage(quintic_key()),
                    TranspositionStage(HalvingInterleave()),
                    VigenereStage(VigenereKey((1.0,))),
                )
            )

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Pipeline(())

    def test_unknown_stage_type(self):
        with pytest.raises(TypeError):
            Pipeline((NonlinearStage(quintic_key()), object()))

    def test_default_digits_by_substitution_kind(self):
        assert Pipeline((LinearStage(keygen_linear(2, seed=0)),)).fmt.fractional_digits == 6
        assert Pipeline((NonlinearStage(quintic_key()),)).fmt.fractional_digits == 12

    def test_serialization_loss_budget_enforced(self):
        # ||A||_inf ~ 4e5 amplifies the 6-digit loss beyond the tolerance
        big = LinearKey(2, ((2e5, 3e5), (1e5, 4e5)), (0.0, 0.0))
        with pytest.raises(ValueError, match="digits"):
            Pipeline((LinearStage(big),), FormatSpec(6))
        Pipeline((LinearStage(big),), FormatSpec(12))  # enough digits is fine


class TestTwoStagePipeline:
    def test_matches_reference_stage1_values(self):
        pipe = demo_pipeline()
        ciphertext = encrypt_pipeline(pipe, STREAM_TEXT)
        recovered = parse_ciphertext(inverse_transpose_halving(ciphertext), pipe.fmt)
        assert np.abs(np.array(recovered) - STAGE1_VALUES).max() <= 1e-2

    def test_round_trip(self):
        pipe = demo_pipeline()
        assert decrypt_pipeline(pipe, encrypt_pipeline(pipe, STREAM_TEXT)) == STREAM_TEXT

    def test_decrypt_intermediate_matches_reference_reals(self):
        from realcipher import decrypt_linear_values

        pipe = demo_pipeline()
        text = inverse_transpose_halving(encrypt_pipeline(pipe, STREAM_TEXT))
        xs = parse_ciphertext(text, pipe.fmt)
        reals = decrypt_linear_values(demo_linear_key(), xs)
        assert np.abs(np.array(reals) - DECRYPT_REALS).max() <= 1e-3


class TestThreeStagePipeline:
    def test_matches_reference_vigenere_values(self):
        pipe = three_stage_pipeline()
        ciphertext = encrypt_pipeline(pipe, STREAM_TEXT)
        recovered = parse_ciphertext(inverse_transpose_halving(ciphertext), pipe.fmt)
        assert np.abs(np.array(recovered) - VIGENERE_VALUES).max() <= 1e-5

    def test_round_trip(self):
        pipe = three_stage_pipeline()
        assert decrypt_pipeline(pipe, encrypt_pipeline(pipe, STREAM_TEXT)) == STREAM_TEXT


class TestSingleStage:
    def test_linear_pipeline_is_serialize_of_substitution(self):
        key = keygen_linear(3, seed=77)
        pipe = Pipeline((LinearStage(key),))
        plaintext = b"plain old data"
        assert encrypt_pipeline(pipe, plaintext) == serialize_ciphertext(
            encrypt_linear(key, plaintext), pipe.fmt
        )

    def test_nonlinear_pipeline_is_serialize_of_substitution(self):
        key = quintic_key()
        pipe = Pipeline((NonlinearStage(key),))
        plaintext = b"plain old data"
        assert encrypt_pipeline(pipe, plaintext) == serialize_ciphertext(
            encrypt_nonlinear(key, plaintext), pipe.fmt
        )


class TestRoundTripMatrix:
    @pytest.mark.parametrize("with_vig", [False, True])
    @pytest.mark.parametrize(
        "transpose",
        [None, HalvingInterleave(), KeyedBlockPermutation((2, 0, 1))],
    )
    def test_stage_combinations(self, with_vig, transpose):
        rng = random.Random(13)
        key = keygen_linear(4, seed=5)
        stages = [LinearStage(key)]
        if with_vig:
            stages.append(VigenereStage(VigenereKey((1.25, -0.5, 9.75))))
        if transpose is not None:
            stages.append(TranspositionStage(transpose))
        pipe = Pipeline(tuple(stages))
        for size in (0, 1, 3, 4, 5, 257, 1024):
            plaintext = rng.randbytes(size)
            padded = pad_plaintext(plaintext, key.n)
            assert decrypt_pipeline(pipe, encrypt_pipeline(pipe, plaintext)) == padded

    def test_nonlinear_sizes(self):
        rng = random.Random(14)
        pipe = three_stage_pipeline()
        for size in (0, 1, 9, 10, 11, 1024):
            plaintext = rng.randbytes(size)
            assert decrypt_pipeline(pipe, encrypt_pipeline(pipe, plaintext)) == plaintext

    def test_double_transposition(self):
        pipe = Pipeline(
            (
                NonlinearStage(quintic_key()),
                TranspositionStage(HalvingInterleave()),
                TranspositionStage(KeyedBlockPermutation((1, 2, 0))),
            )
        )
        plaintext = b"double diffusion"
        assert decrypt_pipeline(pipe, encrypt_pipeline(pipe, plaintext)) == plaintext


class TestErrorContext:
    def test_decrypt_garbage_names_stage(self):
        pipe = three_stage_pipeline()
        with pytest.raises(ParseError):
            decrypt_pipeline(pipe, b"complete nonsense!")

    def test_wrong_key_drift_mentions_stage(self):
        from realcipher import RoundingDriftError

        pipe = Pipeline((LinearStage(keygen_linear(2, seed=1)),))
        other = Pipeline((LinearStage(keygen_linear(2, seed=2)),))
        ct = encrypt_pipeline(pipe, b"some longer message body")
        with pytest.raises(RoundingDriftError, match="stage 0"):
            decrypt_pipeline(other, ct)
