"""Key exchange over the ModDiv window.

Both parties hold ``m``-bit secrets and publish ``moddiv(secret*Z, p, q)``.
Each then keeps the window ``[m+r, p-q)`` of its own secret times the peer's
share. The two windows agree except for a single carry, which happens with
probability about ``0.27 * 2**-r``. Pick ``r >= 128`` for real use.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import EntropySource, ParamError, ParamSet, Variant, moddiv, random_nbit, share, validate_params


@dataclass(frozen=True)
class KexShare:
    value: int
    params: ParamSet

    def __post_init__(self):
        if not 0 <= self.value < 1 << self.params.share_bits:
            raise ParamError("0 <= share < 2^(p-q) violated")


@dataclass(frozen=True)
class SharedSecret:
    W: int
    width: int

    def __post_init__(self):
        if not 0 <= self.W < 1 << self.width:
            raise ParamError(f"0 <= W < 2^{self.width} violated")

    def to_bytes(self) -> bytes:
        """Big-endian, left-padded to ``ceil(width/8)`` bytes."""
        return self.W.to_bytes((self.width + 7) // 8, "big")


def _require_kex(params: ParamSet):
    validate_params(params)
    if params.variant is not Variant.KEXENC:
        raise ParamError("key exchange requires variant kexenc")


def _require_private(params: ParamSet, secret: int):
    if secret.bit_length() != params.m:
        raise ParamError(f"private value must be exactly m={params.m} bits (got {secret.bit_length()})")


def kex_gen_private(params: ParamSet, rng: EntropySource) -> int:
    _require_kex(params)
    return random_nbit(params.m, rng)


def kex_share(params: ParamSet, secret: int) -> KexShare:
    _require_private(params, secret)
    return KexShare(share(params, secret), params)


def derive_window(params: ParamSet, secret: int, other: int) -> int:
    """Raw secret window ``moddiv(secret*other, p-q, m+r)``; no checks."""
    return moddiv(secret * other, params.share_bits, params.m + params.r)


def kex_derive(params: ParamSet, secret: int, other: KexShare) -> SharedSecret:
    if other.params != params:
        raise ParamError("share was computed under different parameters")
    _require_private(params, secret)
    return SharedSecret(derive_window(params, secret, other.value), params.secret_bits)


def carry_distance(a: int, b: int, width: int) -> int:
    """Distance between two window values, taken modulo ``2**width``.

    A borrow that crosses the top of the window wraps ``0`` to
    ``2**width - 1``; that is still a single-carry event.
    """
    d = (a - b) % (1 << width)
    return min(d, (1 << width) - d)


@dataclass(frozen=True)
class AgreementResult:
    trials: int
    mismatches: int
    max_abs_diff: int

    @property
    def mismatch_rate(self) -> float:
        return self.mismatches / self.trials


def agreement_experiment(params: ParamSet, trials: int, rng: EntropySource) -> AgreementResult:
    """Run the full exchange ``trials`` times with fresh secrets under a fixed Z."""
    _require_kex(params)
    if trials < 1:
        raise ParamError("trials must be >= 1")
    m, width = params.m, params.secret_bits
    mismatches = worst = 0
    for _ in range(trials):
        x = random_nbit(m, rng)
        y = random_nbit(m, rng)
        u = share(params, x)
        v = share(params, y)
        wa = derive_window(params, x, v)
        wb = derive_window(params, y, u)
        if wa != wb:
            mismatches += 1
            worst = max(worst, carry_distance(wa, wb, width))
    return AgreementResult(trials, mismatches, worst)
