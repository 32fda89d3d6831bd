"""Big-integer primitives shared by every protocol.

All values are plain Python ints. Randomness is drawn from any object that
exposes ``getrandbits(k)``: ``secrets.SystemRandom`` in normal use, a seeded
``random.Random`` for reproducible demos and tests.
"""

from __future__ import annotations

import enum
import random
import secrets
from dataclasses import dataclass
from typing import Protocol


class ModDivError(ValueError):
    """Base class for all library errors."""


class ParamError(ModDivError):
    """A parameter set or argument violates one or more constraints.

    ``violations`` lists each broken condition by name.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class FormatError(ModDivError):
    """Malformed serialized text."""


class EntropySource(Protocol):
    def getrandbits(self, k: int) -> int: ...


def system_rng() -> EntropySource:
    return secrets.SystemRandom()


def insecure_seeded_rng(seed: int) -> EntropySource:
    """Deterministic generator for demos and tests. Never use for real keys."""
    return random.Random(seed)


def moddiv(a: int, p: int, q: int) -> int:
    """Return ``(a mod 2**p) div 2**q``: bits ``q..p-1`` of ``a``.

    Implemented as shift-and-mask, never through general division.
    """
    if p <= q:
        raise ParamError(f"moddiv requires p > q (got p={p}, q={q})")
    if q < 0:
        raise ParamError(f"moddiv requires q >= 0 (got q={q})")
    if a < 0:
        raise ParamError("moddiv operand must be non-negative")
    return (a >> q) & ((1 << (p - q)) - 1)


def random_nbit(n: int, rng: EntropySource) -> int:
    """Uniform integer in ``[2**(n-1), 2**n)``, i.e. exactly ``n`` bits."""
    if n < 1:
        raise ParamError(f"bit length must be >= 1 (got {n})")
    top = 1 << (n - 1)
    if n == 1:
        return top
    return top | rng.getrandbits(n - 1)


class Variant(enum.Enum):
    KEXENC = "kexenc"
    SIG = "sig"


@dataclass(frozen=True)
class ParamSet:
    """Public domain parameters ``(l, m, p, q, r, Z)``.

    ``Z`` is ``l`` bits; private values are ``m`` bits. The variant selects
    which window condition applies: ``p > m+q+r`` for key exchange and
    encryption, ``p > l+q+r`` for signatures.
    """

    l: int
    m: int
    p: int
    q: int
    r: int
    Z: int
    variant: Variant = Variant.KEXENC

    def violations(self) -> list[str]:
        l, m, p, q, r = self.l, self.m, self.p, self.q, self.r
        out = []
        for name in ("l", "m", "p", "q"):
            if getattr(self, name) < 1:
                out.append(f"{name} >= 1 violated")
        if r < 0:
            out.append("r >= 0 violated")
        if q != l + m - p:
            out.append(f"q = l+m-p violated (l+m-p = {l + m - p}, q = {q})")
        if self.variant is Variant.KEXENC and not p > m + q + r:
            out.append("p > m+q+r violated: Condition (p > m + q + r) is not fulfilled !")
        if self.variant is Variant.SIG and not p > l + q + r:
            out.append("p > l+q+r violated: Condition (p > l + q + r) is not fulfilled !")
        if self.Z < 0 or self.Z.bit_length() != l:
            out.append(f"bit_length(Z) = l violated (Z has {max(self.Z, 0).bit_length()} bits)")
        return out

    @property
    def share_bits(self) -> int:
        """Width of a transmitted share ``U``/``V``/``S1``/``S2``."""
        return self.p - self.q

    @property
    def secret_offset(self) -> int:
        """Low bits dropped when deriving the secret (``m+r`` or ``l+r``)."""
        return (self.m if self.variant is Variant.KEXENC else self.l) + self.r

    @property
    def secret_bits(self) -> int:
        return self.share_bits - self.secret_offset


def validate_params(candidate: ParamSet) -> ParamSet:
    problems = candidate.violations()
    if problems:
        raise ParamError(problems)
    return candidate


def make_params(l, m, p, q, r, rng: EntropySource, variant=Variant.KEXENC) -> ParamSet:
    """Sample ``Z`` for the given widths and return validated parameters."""
    # Check the widths before sampling so a bad l doesn't surface as a Z error.
    probe = ParamSet(l, m, p, q, r, 1 << (max(l, 1) - 1), variant)
    validate_params(probe)
    return validate_params(ParamSet(l, m, p, q, r, random_nbit(l, rng), variant))


@dataclass(frozen=True)
class PublicKey:
    params: ParamSet
    U: int

    def check(self) -> "PublicKey":
        validate_params(self.params)
        if not 0 <= self.U < 1 << self.params.share_bits:
            raise ParamError("0 <= U < 2^(p-q) violated")
        return self


@dataclass(frozen=True)
class KeyPair:
    params: ParamSet
    X: int
    U: int

    @property
    def public(self) -> PublicKey:
        return PublicKey(self.params, self.U)

    def check(self) -> "KeyPair":
        validate_params(self.params)
        if self.X.bit_length() != self.params.m:
            raise ParamError(f"bit_length(X) = m violated (X has {self.X.bit_length()} bits)")
        if self.U != share(self.params, self.X):
            raise ParamError("U = moddiv(X*Z, p, q) violated")
        return self


def share(params: ParamSet, secret: int) -> int:
    """The public value ``moddiv(secret * Z, p, q)``."""
    return moddiv(secret * params.Z, params.p, params.q)


def keypair_from_private(params: ParamSet, X: int) -> KeyPair:
    return KeyPair(params, X, share(params, X)).check()


def keygen(params: ParamSet, rng: EntropySource) -> KeyPair:
    validate_params(params)
    return keypair_from_private(params, random_nbit(params.m, rng))
