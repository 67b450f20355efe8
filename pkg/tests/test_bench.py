import pytest

from realcipher import (
    LinearStage,
    Pipeline,
    bench,
    keygen_linear,
    pearson,
)


class TestPearson:
    def test_perfectly_linear_is_exactly_one(self):
        assert pearson((1, 2, 3), (2, 4, 6)) == 1.0

    def test_perfectly_anticorrelated(self):
        assert pearson((1, 2, 3), (6, 4, 2)) == -1.0

    def test_bounded(self):
        r = pearson((1, 2, 3, 4), (1.0, 3.5, 2.0, 4.5))
        assert -1.0 <= r <= 1.0

    def test_constant_sample_rejected(self):
        with pytest.raises(ValueError):
            pearson((1, 2, 3), (5, 5, 5))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            pearson((1, 2), (1, 2, 3))


class TestBench:
    def test_needs_three_distinct_sizes(self):
        pipe = Pipeline((LinearStage(keygen_linear(2, seed=1)),))
        with pytest.raises(ValueError):
            bench(pipe, sizes=(64, 64, 64), reps=1)
        with pytest.raises(ValueError):
            bench(pipe, sizes=(64, 128), reps=1)

    def test_sizes_must_increase(self):
        pipe = Pipeline((LinearStage(keygen_linear(2, seed=1)),))
        with pytest.raises(ValueError):
            bench(pipe, sizes=(128, 64, 256), reps=1)

    def test_small_run_shape(self):
        pipe = Pipeline((LinearStage(keygen_linear(2, seed=1)),))
        result = bench(pipe, sizes=(64, 256, 1024), reps=2, seed=0)
        assert result.sizes == (64, 256, 1024)
        assert len(result.enc_times) == len(result.dec_times) == 3
        assert all(t > 0 for t in result.enc_times + result.dec_times)
        assert abs(result.r_enc) <= 1.0 and abs(result.r_dec) <= 1.0

    def test_renderers(self):
        pipe = Pipeline((LinearStage(keygen_linear(2, seed=1)),))
        result = bench(pipe, sizes=(64, 256, 1024), reps=1, seed=0)
        table = result.table()
        assert "r_enc" in table and "1024" in table
        csv = result.csv()
        assert csv.startswith("size_bytes,encrypt_seconds,decrypt_seconds\n")
        assert len(csv.strip().splitlines()) == 4
