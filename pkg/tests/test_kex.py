import math
import random

import pytest

from moddiv.arith import ParamError, ParamSet, Variant, make_params
from moddiv.kex import (
    KexShare,
    SharedSecret,
    agreement_experiment,
    carry_distance,
    kex_derive,
    kex_gen_private,
    kex_share,
)


def oracle(a, p, q):
    return (a % 2**p) // 2**q


def carry_constant(steps=400):
    """Mismatch rate at r=0 under the single-carry model.

    Each side's truncation error, in units of the kept window's lowest bit,
    is (own secret / 2^m) * (uniform fraction), with the secret's top bit set.
    With both errors below one unit the floors differ with probability
    |e_a - e_b|, so the rate is E|sU - tV| for s, t ~ U[1/2, 1), U, V ~ U[0, 1).
    For fixed s <= t, E|sU - tV| = (s^3 + t^3 - (t - s)^3) / (6 s t).
    Integrated over (s, t) by the midpoint rule.
    """
    h = 0.5 / steps
    total = 0.0
    for i in range(steps):
        s = 0.5 + (i + 0.5) * h
        for j in range(steps):
            t = 0.5 + (j + 0.5) * h
            lo, hi = min(s, t), max(s, t)
            total += (lo**3 + hi**3 - (hi - lo) ** 3) / (6 * s * t)
    return total / steps**2


CARRY_CONSTANT = 0.26558  # carry_constant() to 5 places


def test_carry_constant_oracle():
    assert carry_constant() == pytest.approx(CARRY_CONSTANT, abs=1e-5)


def test_gen_private_widths(toy_kex, rng):
    assert all(16 <= kex_gen_private(toy_kex, rng) <= 31 for _ in range(100))
    one_bit = ParamSet(8, 1, 7, 2, 0, 201)
    assert kex_gen_private(one_bit, rng) == 1


def test_gen_private_rejects_sig_variant(toy_sig_key, rng):
    with pytest.raises(ParamError):
        kex_gen_private(toy_sig_key.params, rng)


def test_worked_example(toy_kex):
    u = kex_share(toy_kex, 19)
    v = kex_share(toy_kex, 25)
    assert (u.value, v.value) == (oracle(19 * 201, 10, 3), oracle(25 * 201, 10, 3)) == (93, 116)
    wa = kex_derive(toy_kex, 19, v)
    wb = kex_derive(toy_kex, 25, u)
    assert wa.W == oracle(19 * 116, 7, 5) == 0
    assert wb.W == oracle(25 * 93, 7, 5) == 0
    assert wa.width == 2


def test_second_worked_example():
    prm = ParamSet(8, 5, 10, 3, 0, 233)
    assert kex_share(prm, 31).value == 6
    assert kex_share(prm, 30).value == 105
    assert kex_derive(prm, 31, kex_share(prm, 30)).W == oracle(31 * 105, 7, 5) == 1
    assert kex_derive(prm, 30, kex_share(prm, 31)).W == oracle(30 * 6, 7, 5) == 1


def test_single_bit_share():
    prm = ParamSet(8, 5, 10, 3, 0, 1 << 7)
    assert kex_share(prm, 1 << 4).value == oracle(1 << 11, 10, 3)


def test_share_checks(toy_kex):
    with pytest.raises(ParamError):
        kex_share(toy_kex, 7)
    with pytest.raises(ParamError):
        KexShare(1 << 7, toy_kex)
    other = ParamSet(8, 5, 10, 3, 0, 233)
    with pytest.raises(ParamError):
        kex_derive(toy_kex, 19, kex_share(other, 25))


def test_shared_secret_bytes():
    assert SharedSecret(5, 12).to_bytes() == b"\x00\x05"
    assert SharedSecret(0, 1).to_bytes() == b"\x00"
    with pytest.raises(ParamError):
        SharedSecret(8, 3)


def test_derive_is_deterministic(rng):
    prm = make_params(128, 40, 140, 28, 16, rng)
    x, y = kex_gen_private(prm, rng), kex_gen_private(prm, rng)
    v = kex_share(prm, y)
    assert kex_derive(prm, x, v) == kex_derive(prm, x, v)


def test_carry_distance_wraps():
    assert carry_distance(0, 3, 2) == 1
    assert carry_distance(5, 5, 4) == 0
    assert carry_distance(2, 0, 2) == 2


@pytest.mark.parametrize("widths", [(8, 5, 10, 3), (64, 24, 72, 16), (512, 300, 800, 12)])
def test_near_agreement_every_trial(widths):
    l, m, p, q = widths
    rng = random.Random(7)
    prm = make_params(l, m, p, q, 0, rng)
    res = agreement_experiment(prm, 3000, rng)
    assert res.max_abs_diff <= 1
    assert res.mismatches > 0


def test_roles_are_symmetric():
    # Swapping which party is "first" only swaps X and Y; the rate must not move.
    prm = make_params(256, 120, 300, 76, 0, random.Random(3))
    a = agreement_experiment(prm, 20_000, random.Random(11))
    b = agreement_experiment(prm, 20_000, random.Random(12))
    sigma = math.sqrt(CARRY_CONSTANT * (1 - CARRY_CONSTANT) / 20_000)
    assert abs(a.mismatch_rate - b.mismatch_rate) < 6 * sigma


@pytest.mark.parametrize("r", [0, 1, 2, 4])
def test_mismatch_rate_tracks_carry_model(r):
    trials = 40_000
    rng = random.Random(100 + r)
    prm = make_params(512, 300, 800, 12, r, rng)
    expected = CARRY_CONSTANT * 2.0**-r
    sigma = math.sqrt(expected * (1 - expected) / trials)
    assert abs(agreement_experiment(prm, trials, rng).mismatch_rate - expected) < 4 * sigma


def test_experiment_rejects_bad_input(toy_kex, toy_sig_key, rng):
    with pytest.raises(ParamError):
        agreement_experiment(toy_kex, 0, rng)
    with pytest.raises(ParamError):
        agreement_experiment(toy_sig_key.params, 10, rng)
