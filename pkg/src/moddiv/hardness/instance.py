from __future__ import annotations

from dataclasses import dataclass

from ..arith import ParamError, PublicKey, moddiv

MAX_BRUTE_FORCE_M = 28


@dataclass(frozen=True)
class InversionInstance:
    """Recover ``m``-bit ``x`` (top bit set) from ``u = moddiv(a*x, p, q)``.

    ``n`` is the declared width of ``a``; it may exceed ``a.bit_length()``
    (leading zeros), which lets tiny multipliers such as ``a=1`` sit in
    instances with larger ``m``.
    """

    a: int
    n: int
    m: int
    p: int
    q: int
    u: int

    def __post_init__(self):
        problems = []
        if self.a < 1:
            problems.append("a >= 1 violated")
        if self.n < self.a.bit_length():
            problems.append("bit_length(a) <= n violated")
        if not 1 <= self.m <= self.n:
            problems.append("1 <= m <= n violated")
        if not 0 <= self.q < self.p <= self.n + self.m:
            problems.append("0 <= q < p <= n+m violated")
        elif not 0 <= self.u < 1 << (self.p - self.q):
            problems.append("0 <= u < 2^(p-q) violated")
        if problems:
            raise ParamError(problems)

    @classmethod
    def create(cls, a, m, p, q, u, n=None):
        return cls(a, a.bit_length() if n is None else n, m, p, q, u)

    @classmethod
    def from_public_key(cls, pub: PublicKey) -> "InversionInstance":
        """The instance an attacker faces: recover ``X`` from ``U``."""
        prm = pub.params
        return cls(prm.Z, max(prm.l, prm.m), prm.m, prm.p, prm.q, pub.U)

    def observed_bits(self) -> dict[int, int]:
        """Known product bits ``{j: y_j}`` for ``j`` in ``[q, p)``."""
        return {j: (self.u >> (j - self.q)) & 1 for j in range(self.q, self.p)}

    def holds(self, x: int) -> bool:
        return moddiv(self.a * x, self.p, self.q) == self.u


def brute_force_invert(inst: InversionInstance, max_m: int = MAX_BRUTE_FORCE_M) -> list[int]:
    """Every ``m``-bit ``x`` (top bit set) mapping to ``u``, ascending."""
    if inst.m > max_m:
        raise ParamError(f"brute force limited to m <= {max_m} (got m={inst.m})")
    a, mask, q, u = inst.a, (1 << inst.p) - 1, inst.q, inst.u
    return [x for x in range(1 << (inst.m - 1), 1 << inst.m) if ((a * x) & mask) >> q == u]
