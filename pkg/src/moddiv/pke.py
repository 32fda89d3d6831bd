"""Hybrid public-key encryption.

The sender runs its half of the key exchange against the recipient's public
``U`` and XORs the plaintext with a SHA-256 counter-mode stream keyed by the
derived secret. There is no integrity tag: a wrong key or a carry mismatch
decrypts to garbage, and ciphertext bits flip straight through to plaintext.
"""

from __future__ import annotations

import base64
import binascii
import hashlib
from dataclasses import dataclass

from .arith import EntropySource, FormatError, KeyPair, ParamError, PublicKey, Variant, random_nbit, share
from .keyfile import hexnum, parse_fields, parse_hex
from .kex import SharedSecret, derive_window

MIN_SECRET_BITS = 128


@dataclass(frozen=True)
class Ciphertext:
    V: int
    body: bytes


def keystream(secret: SharedSecret, length: int) -> bytes:
    """``SHA-256(W_bytes || be64(i))`` for ``i = 0, 1, ...``, truncated to ``length``."""
    key = secret.to_bytes()
    blocks = []
    for i in range((length + 31) // 32):
        blocks.append(hashlib.sha256(key + i.to_bytes(8, "big")).digest())
    return b"".join(blocks)[:length]


def _xor(data: bytes, stream: bytes) -> bytes:
    n = len(data)
    return (int.from_bytes(data, "big") ^ int.from_bytes(stream, "big")).to_bytes(n, "big")


def _check_encryption_params(params):
    if params.variant is not Variant.KEXENC:
        raise ParamError("encryption requires variant kexenc")
    if params.secret_bits < MIN_SECRET_BITS:
        raise ParamError(
            f"parameters too small for encryption: p-q-m-r = {params.secret_bits} < {MIN_SECRET_BITS}"
        )


def encrypt(recipient: PublicKey, plaintext: bytes, rng: EntropySource) -> Ciphertext:
    recipient.check()
    params = recipient.params
    _check_encryption_params(params)
    y = random_nbit(params.m, rng)
    w = SharedSecret(derive_window(params, y, recipient.U), params.secret_bits)
    return Ciphertext(share(params, y), _xor(plaintext, keystream(w, len(plaintext))))


def decrypt(keypair: KeyPair, ct: Ciphertext) -> bytes:
    params = keypair.params
    _check_encryption_params(params)
    if not 0 <= ct.V < 1 << params.share_bits:
        raise ParamError("ciphertext V out of range: 0 <= V < 2^(p-q) violated")
    w = SharedSecret(derive_window(params, keypair.X, ct.V), params.secret_bits)
    return _xor(ct.body, keystream(w, len(ct.body)))


def dumps_ciphertext(ct: Ciphertext) -> str:
    return f"V={hexnum(ct.V)}\nbody={base64.b64encode(ct.body).decode('ascii')}\n"


def loads_ciphertext(text: str) -> Ciphertext:
    fields = parse_fields(text)
    if set(fields) != {"V", "body"}:
        raise FormatError(f"ciphertext needs exactly V and body fields, got {sorted(fields)}")
    try:
        body = base64.b64decode(fields["body"], validate=True)
    except binascii.Error as exc:
        raise FormatError(f"field body: invalid base64 ({exc})") from None
    return Ciphertext(parse_hex(fields["V"], "V"), body)
