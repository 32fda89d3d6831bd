"""Line-oriented ``key=value`` text format for parameters and keys.

    l=<dec>  m=<dec>  p=<dec>  q=<dec>  r=<dec>
    variant=<kexenc|sig>
    Z=0x<hex>
    U=0x<hex>      (public and private keys)
    X=0x<hex>      (private keys only)
"""

from __future__ import annotations

import re

from .arith import (
    FormatError,
    KeyPair,
    ParamError,
    ParamSet,
    PublicKey,
    Variant,
    share,
    validate_params,
)

_DEC = re.compile(r"[0-9]+")
_HEX = re.compile(r"0x[0-9a-f]+")

_INT_FIELDS = ("l", "m", "p", "q", "r")
_KNOWN = set(_INT_FIELDS) | {"variant", "Z", "U", "X"}


def hexnum(value: int) -> str:
    return f"0x{value:x}"


def parse_hex(text: str, name: str) -> int:
    if not _HEX.fullmatch(text):
        raise FormatError(f"field {name}: expected lowercase 0x-prefixed hex, got {text!r}")
    return int(text, 16)


def parse_fields(text: str) -> dict[str, str]:
    """Split ``key=value`` lines into a dict; blank lines and ``#`` comments skipped."""
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = key.strip(), value.strip()
        if key in fields:
            raise FormatError(f"line {lineno}: duplicate field {key!r}")
        fields[key] = value
    return fields


def _params_lines(params: ParamSet) -> list[str]:
    return [
        f"l={params.l}",
        f"m={params.m}",
        f"p={params.p}",
        f"q={params.q}",
        f"r={params.r}",
        f"variant={params.variant.value}",
        f"Z={hexnum(params.Z)}",
    ]


def dumps(obj: ParamSet | PublicKey | KeyPair) -> str:
    if isinstance(obj, ParamSet):
        lines = _params_lines(obj)
    elif isinstance(obj, PublicKey):
        lines = _params_lines(obj.params) + [f"U={hexnum(obj.U)}"]
    elif isinstance(obj, KeyPair):
        lines = _params_lines(obj.params) + [f"U={hexnum(obj.U)}", f"X={hexnum(obj.X)}"]
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def dumps_public(obj: PublicKey | KeyPair) -> str:
    """Public export. Never contains ``X``."""
    if isinstance(obj, KeyPair):
        obj = obj.public
    return dumps(obj)


def loads(text: str) -> ParamSet | PublicKey | KeyPair:
    """Parse text written by :func:`dumps`, validating every invariant."""
    fields = parse_fields(text)
    unknown = set(fields) - _KNOWN
    if unknown:
        raise FormatError(f"unknown field(s): {', '.join(sorted(unknown))}")
    missing = [k for k in (*_INT_FIELDS, "variant", "Z") if k not in fields]
    if missing:
        raise FormatError(f"missing field(s): {', '.join(missing)}")

    ints = {}
    for k in _INT_FIELDS:
        if not _DEC.fullmatch(fields[k]):
            raise FormatError(f"field {k}: expected decimal integer, got {fields[k]!r}")
        ints[k] = int(fields[k])
    try:
        variant = Variant(fields["variant"])
    except ValueError:
        raise FormatError(f"field variant: expected kexenc or sig, got {fields['variant']!r}") from None

    params = validate_params(ParamSet(Z=parse_hex(fields["Z"], "Z"), variant=variant, **ints))

    U = parse_hex(fields["U"], "U") if "U" in fields else None
    if "X" in fields:
        X = parse_hex(fields["X"], "X")
        expected = share(params, X)
        if U is not None and U != expected:
            raise ParamError("U = moddiv(X*Z, p, q) violated")
        return KeyPair(params, X, expected).check()
    if U is not None:
        return PublicKey(params, U).check()
    return params


def load_params(text: str) -> ParamSet:
    obj = loads(text)
    return obj if isinstance(obj, ParamSet) else obj.params


def load_public(text: str) -> PublicKey:
    obj = loads(text)
    if isinstance(obj, KeyPair):
        return obj.public
    if isinstance(obj, PublicKey):
        return obj
    raise FormatError("expected a key file with a U field")


def load_keypair(text: str) -> KeyPair:
    obj = loads(text)
    if not isinstance(obj, KeyPair):
        raise FormatError("expected a private key file with an X field")
    return obj
