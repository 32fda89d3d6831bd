"""Public-key primitives built on the window function (a*x mod 2^p) div 2^q."""

from .arith import (
    FormatError,
    KeyPair,
    ModDivError,
    ParamError,
    ParamSet,
    PublicKey,
    Variant,
    insecure_seeded_rng,
    keygen,
    make_params,
    moddiv,
    random_nbit,
    system_rng,
    validate_params,
)

__version__ = "0.1.0"
