import random

import pytest
from hypothesis import given, strategies as st

from moddiv.arith import (
    KeyPair,
    ParamError,
    ParamSet,
    Variant,
    keygen,
    keypair_from_private,
    make_params,
    moddiv,
    random_nbit,
    validate_params,
)


def naive_moddiv(a, p, q):
    return (a % 2**p) // 2**q


@pytest.mark.parametrize("a,p,q,expected", [(120, 7, 3, 15), (300, 8, 3, 5), (0, 10, 2, 0)])
def test_moddiv_examples(a, p, q, expected):
    assert moddiv(a, p, q) == expected


@pytest.mark.parametrize("p,q", [(3, 3), (2, 5)])
def test_moddiv_rejects_empty_window(p, q):
    with pytest.raises(ParamError):
        moddiv(5, p, q)


def test_moddiv_matches_naive_oracle_on_random_inputs():
    rng = random.Random(99)
    for _ in range(100_000):
        a = rng.getrandbits(rng.randint(0, 300))
        q = rng.randint(0, 150)
        p = q + rng.randint(1, 200)
        assert moddiv(a, p, q) == naive_moddiv(a, p, q)


@given(st.integers(min_value=0), st.integers(0, 64), st.integers(1, 64))
def test_moddiv_window_identity(a, q, width):
    p = q + width
    out = moddiv(a, p, q)
    assert out == (a >> q) % 2 ** (p - q)
    assert 0 <= out < 2 ** (p - q)


def test_linear_shift_identity_small_widths():
    for p in range(1, 7):
        for q in range(0, 5):
            for a in range(1 << (p + q + 1)):
                assert moddiv(a << q, p + q, q) << q <= (a << q) % 2 ** (p + q)


def test_random_nbit_small_cases(rng):
    assert random_nbit(1, rng) == 1
    for _ in range(200):
        assert 128 <= random_nbit(8, rng) <= 255


def test_random_nbit_top_bit_always_set(rng):
    assert all(random_nbit(16, rng) >> 15 == 1 for _ in range(10_000))


@given(st.integers(1, 2000), st.integers(0, 2**32))
def test_random_nbit_exact_length(n, seed):
    assert random_nbit(n, random.Random(seed)).bit_length() == n


def test_random_nbit_zero_width(rng):
    with pytest.raises(ParamError):
        random_nbit(0, rng)


def test_validate_params_examples():
    assert validate_params(ParamSet(8, 5, 10, 3, 0, 201, Variant.KEXENC))
    with pytest.raises(ParamError, match=r"p > m\+q\+r violated"):
        validate_params(ParamSet(8, 6, 10, 4, 0, 201, Variant.KEXENC))
    assert validate_params(ParamSet(4, 8, 10, 2, 0, 13, Variant.SIG))


def test_validate_params_reports_each_violation():
    with pytest.raises(ParamError) as err:
        validate_params(ParamSet(8, 6, 10, 5, 0, 3, Variant.KEXENC))
    names = " ".join(err.value.violations)
    assert "q = l+m-p" in names
    assert "p > m+q+r" in names
    assert "bit_length(Z) = l" in names


def test_sig_variant_uses_its_own_condition():
    # Valid for kex (10 > 5+3+0) but not for signatures (10 > 8+3+0 fails).
    prm = ParamSet(8, 5, 10, 3, 0, 201, Variant.SIG)
    with pytest.raises(ParamError, match=r"p > l\+q\+r"):
        validate_params(prm)


@given(
    st.integers(1, 40), st.integers(1, 40), st.integers(1, 80), st.integers(0, 40)
)
def test_kexenc_acceptance_matches_appendix_guard(l, m, p, r):
    q = l + m - p
    prm = ParamSet(l, m, p, q, r, 1 << (l - 1), Variant.KEXENC)
    guard_ok = q >= 1 and not m + q + r >= p
    assert (not prm.violations()) == guard_ok


def test_make_params_samples_l_bit_z(rng):
    prm = make_params(64, 20, 70, 14, 8, rng)
    assert prm.Z.bit_length() == 64
    assert prm.secret_bits == 70 - 14 - 20 - 8


def test_keypair_invariants(rng):
    prm = make_params(64, 20, 70, 14, 8, rng)
    kp = keygen(prm, rng)
    assert kp.X.bit_length() == 20
    assert kp.U == moddiv(kp.X * prm.Z, prm.p, prm.q)
    with pytest.raises(ParamError):
        KeyPair(prm, kp.X, kp.U ^ 1).check()
    with pytest.raises(ParamError):
        keypair_from_private(prm, 3)
