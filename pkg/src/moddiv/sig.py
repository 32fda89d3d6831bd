"""Signatures over the ModDiv window.

Signing masks the private ``X`` with a fresh ``Y``:

    S1 = moddiv(Y*Z, p, q)        S2 = moddiv(H*(X+Y), p, q)

and the verifier checks that ``H*(S1+U)`` and ``Z*S2`` agree on the window
``[l+r, p-q)``. Both sides carry truncation error, so genuine signatures
only verify reliably once ``r`` is large (128 or more).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .arith import EntropySource, FormatError, KeyPair, ParamError, ParamSet, PublicKey, Variant, moddiv, random_nbit
from .keyfile import hexnum, parse_fields, parse_hex
from .kex import carry_distance


@dataclass(frozen=True)
class Signature:
    S1: int
    S2: int


def hash_to_l_bits(message: bytes, l: int) -> int:
    """Top ``l`` bits of ``SHA-256(msg || be64(0)) || SHA-256(msg || be64(1)) || ...``
    with bit ``l-1`` forced on, so the digest is exactly ``l`` bits."""
    if l < 2:
        raise ParamError("digest length l must be >= 2")
    nblocks = (l + 255) // 256
    stream = b"".join(hashlib.sha256(message + i.to_bytes(8, "big")).digest() for i in range(nblocks))
    return (int.from_bytes(stream, "big") >> (256 * nblocks - l)) | (1 << (l - 1))


def _require_sig(params: ParamSet):
    if params.variant is not Variant.SIG:
        raise ParamError("signatures require variant sig")


def sign_digest(keypair: KeyPair, digest: int, ephemeral: int) -> Signature:
    """Deterministic core of :func:`sign`; the caller supplies ``H`` and ``Y``."""
    params = keypair.params
    _require_sig(params)
    if ephemeral.bit_length() != params.m:
        raise ParamError(f"ephemeral Y must be exactly m={params.m} bits")
    p, q = params.p, params.q
    # X+Y may carry into bit m; it is deliberately not reduced.
    return Signature(moddiv(ephemeral * params.Z, p, q), moddiv(digest * (keypair.X + ephemeral), p, q))


def sign(keypair: KeyPair, message: bytes, rng: EntropySource) -> Signature:
    keypair.check()
    _require_sig(keypair.params)
    params = keypair.params
    return sign_digest(keypair, hash_to_l_bits(message, params.l), random_nbit(params.m, rng))


def verification_windows(public: PublicKey, digest: int, sig: Signature) -> tuple[int, int]:
    """Return ``(Wa, Wb)``; raises :class:`ParamError` if S1 or S2 is out of range."""
    params = public.params
    bound = 1 << params.share_bits
    if not (0 <= sig.S1 < bound and 0 <= sig.S2 < bound):
        raise ParamError("signature component out of range: 0 <= S < 2^(p-q) violated")
    width, low = params.share_bits, params.l + params.r
    wa = moddiv(digest * (sig.S1 + public.U), width, low)
    wb = moddiv(params.Z * sig.S2, width, low)
    return wa, wb


def verify(public: PublicKey, message: bytes, sig: Signature, tolerance: int = 0) -> bool:
    """Accept iff the two windows agree.

    ``tolerance`` > 0 accepts windows that differ by that many units (mod the
    window width). It exists for experiments only; the scheme itself is strict.
    """
    _require_sig(public.params)
    try:
        wa, wb = verification_windows(public, hash_to_l_bits(message, public.params.l), sig)
    except ParamError:
        return False
    if tolerance == 0:
        return wa == wb
    return carry_distance(wa, wb, public.params.secret_bits) <= tolerance


def dumps_signature(sig: Signature) -> str:
    return f"S1={hexnum(sig.S1)}\nS2={hexnum(sig.S2)}\n"


def loads_signature(text: str) -> Signature:
    fields = parse_fields(text)
    if set(fields) != {"S1", "S2"}:
        raise FormatError(f"signature needs exactly S1 and S2 fields, got {sorted(fields)}")
    return Signature(parse_hex(fields["S1"], "S1"), parse_hex(fields["S2"], "S2"))
