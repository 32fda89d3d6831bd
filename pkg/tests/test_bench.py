import random

import pytest

from moddiv.arith import ParamError
from moddiv.bench import bench_params, bench_run, modexp_baseline


def test_modexp_examples():
    assert modexp_baseline(2, 10, 1000) == 24
    assert modexp_baseline(12345, 0, 97) == 1
    with pytest.raises(ParamError):
        modexp_baseline(2, 3, 1)


def test_modexp_matches_repeated_multiplication():
    rng = random.Random(6)
    for _ in range(20):
        n = rng.randrange(2, 1 << 40)
        b = rng.randrange(n)
        e = rng.randrange(1 << 16)
        acc = 1
        for _ in range(e):
            acc = acc * b % n
        assert modexp_baseline(b, e, n) == acc


def test_modexp_operation_counts():
    counts = {}
    modexp_baseline(3, 0b101101, 1001, counts)
    assert counts == {"squarings": 6, "multiplications": 4}


def test_bench_params_valid_for_each_width(rng):
    for w in (256, 512, 4096):
        prm = bench_params(w, rng)
        assert prm.Z.bit_length() == w
        assert prm.secret_bits >= 64


def test_bench_run_small(rng):
    report = bench_run([256, 512], 5, rng)
    assert report.widths == [256, 512]
    for row in report.rows:
        assert row.share_ns > 0 and row.derive_ns > 0 and row.modexp_ns > 0
        assert row.modexp_squarings == row.width
    assert "ratio" in report.to_text()


def test_bench_run_argument_guards(rng):
    with pytest.raises(ParamError):
        bench_run([512], 4, rng)
    with pytest.raises(ParamError):
        bench_run([128], 5, rng)
