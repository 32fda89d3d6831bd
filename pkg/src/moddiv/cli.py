"""Command-line front end.

Exit codes: 0 success, 1 usage or file error, 2 validation error,
3 signature rejected.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import keyfile
from .arith import ModDivError, ParamSet, Variant, insecure_seeded_rng, keygen, make_params, system_rng
from .bench import bench_run
from .hardness import (
    InversionInstance,
    brute_force_invert,
    export_anf,
    export_cnf,
    instance_stats,
    parse_dimacs,
)
from .kex import agreement_experiment, derive_window, kex_gen_private, kex_share
from .pke import decrypt, dumps_ciphertext, encrypt, loads_ciphertext
from .sig import dumps_signature, loads_signature, sign, verify

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_REJECT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: usage error: {message}\n")


def _rng(args, secret_material: bool):
    if args.seed is None:
        return system_rng()
    if secret_material and not args.insecure_seed:
        raise UsageError("--seed on a key-generating command requires --insecure-seed")
    return insecure_seeded_rng(args.seed)


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_bytes(path) -> bytes:
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, data: str | bytes):
    if path is None or path == "-":
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            sys.stdout.write(data)
        return
    try:
        if isinstance(data, bytes):
            Path(path).write_bytes(data)
        else:
            Path(path).write_text(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing required flag(s): {' '.join(missing)}")


def _params_from_flags(args, rng) -> ParamSet:
    _need(args, "l", "m", "p", "q", "r")
    return make_params(args.l, args.m, args.p, args.q, args.r, rng, Variant(args.variant))


def _instance(args) -> InversionInstance:
    if args.pub is not None:
        return InversionInstance.from_public_key(keyfile.load_public(_read_text(args.pub)))
    _need(args, "a", "m", "p", "q", "u")
    return InversionInstance.create(args.a, args.m, args.p, args.q, args.u, n=args.n)


def cmd_params_gen(args):
    params = _params_from_flags(args, _rng(args, True))
    _write(args.out, keyfile.dumps(params))


def cmd_keygen(args):
    rng = _rng(args, True)
    params = keyfile.load_params(_read_text(args.inp)) if args.inp else _params_from_flags(args, rng)
    kp = keygen(params, rng)
    _write(args.out, keyfile.dumps(kp))
    if args.pub:
        _write(args.pub, keyfile.dumps_public(kp))


def cmd_kex_demo(args):
    rng = _rng(args, False)
    params = _params_from_flags(args, rng)
    x = kex_gen_private(params, rng)
    y = kex_gen_private(params, rng)
    u = kex_share(params, x).value
    v = kex_share(params, y).value
    wa = derive_window(params, x, v)
    wb = derive_window(params, y, u)
    out = [f"{k}={getattr(params, k)}" for k in ("l", "m", "p", "q", "r", "Z")]
    out += [f"X={x}", f"Y={y}", f"U={u}", f"V={v}", f"Wa={wa}", f"Wb={wb}"]
    out.append("agree" if wa == wb else "disagree (carry mismatch; raise r)")
    _write(args.out, "\n".join(out) + "\n")


def cmd_encrypt(args):
    _need(args, "pub")
    pub = keyfile.load_public(_read_text(args.pub))
    ct = encrypt(pub, _read_bytes(args.inp), _rng(args, True))
    _write(args.out, dumps_ciphertext(ct))


def cmd_decrypt(args):
    _need(args, "key")
    kp = keyfile.load_keypair(_read_text(args.key))
    ct = loads_ciphertext(_read_text(args.inp) if args.inp else sys.stdin.read())
    _write(args.out, decrypt(kp, ct))


def cmd_sign(args):
    _need(args, "key")
    kp = keyfile.load_keypair(_read_text(args.key))
    _write(args.out, dumps_signature(sign(kp, _read_bytes(args.inp), _rng(args, True))))


def cmd_verify(args):
    _need(args, "pub", "sig")
    pub = keyfile.load_public(_read_text(args.pub))
    signature = loads_signature(_read_text(args.sig))
    if verify(pub, _read_bytes(args.inp), signature, tolerance=args.tolerance):
        print("accept")
        return EXIT_OK
    print("reject")
    return EXIT_REJECT


def cmd_export_sat(args):
    _write(args.out, export_cnf(_instance(args)).to_dimacs())


def cmd_export_anf(args):
    _write(args.out, export_anf(_instance(args), max_m=args.max_m).to_text())


def cmd_bruteforce(args):
    sols = brute_force_invert(_instance(args))
    _write(args.out, "".join(f"{x}\n" for x in sols) or "no solution\n")


def cmd_stats(args):
    cnf = parse_dimacs(_read_text(args.inp)) if args.inp else export_cnf(_instance(args))
    st = instance_stats(cnf)
    _write(
        args.out,
        f"vars={st.vars}\nclauses={st.clauses}\nratio={st.ratio:.6f}\nxor_groups={st.xor_chain_count}\n",
    )


def cmd_prob_test(args):
    rng = _rng(args, False)
    params = _params_from_flags(args, rng)
    res = agreement_experiment(params, args.trials, rng)
    _write(
        args.out,
        f"trials={res.trials}\nmismatches={res.mismatches}\n"
        f"mismatch_rate={res.mismatch_rate:.6f}\nmax_abs_diff={res.max_abs_diff}\n"
        f"stated_rate={0.3 * 2.0 ** -params.r:.6g}\n",
    )


def cmd_bench(args):
    try:
        widths = [int(w) for w in args.widths.split(",") if w]
    except ValueError:
        raise UsageError(f"--widths expects comma-separated integers, got {args.widths!r}") from None
    report = bench_run(widths, args.repeats, _rng(args, False))
    _write(args.out, report.to_text())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="moddiv", description="ModDiv key exchange, encryption, signatures and hardness tools")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def seed_flags(sp):
        sp.add_argument("--seed", type=int, help="deterministic (insecure) randomness for tests and demos")
        sp.add_argument("--insecure-seed", action="store_true", help="allow --seed on key-generating commands")

    def param_flags(sp, variant=True):
        for name in ("l", "m", "p", "q", "r"):
            sp.add_argument(f"--{name}", type=int)
        if variant:
            sp.add_argument("--variant", choices=[v.value for v in Variant], default="kexenc")
        else:
            sp.set_defaults(variant="kexenc")

    def instance_flags(sp):
        for name in ("a", "n", "m", "p", "q", "u"):
            sp.add_argument(f"--{name}", type=int)
        sp.add_argument("--pub", help="take the instance (Z, U, widths) from a public key file")

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="output path (default stdout)")
        return sp

    sp = add("params-gen", cmd_params_gen, "sample Z and write a parameter file")
    param_flags(sp)
    seed_flags(sp)

    sp = add("keygen", cmd_keygen, "generate a key pair")
    param_flags(sp)
    sp.add_argument("--in", dest="inp", help="parameter file (instead of --l.. flags)")
    sp.add_argument("--pub", help="also write the public key here")
    seed_flags(sp)

    sp = add("kex-demo", cmd_kex_demo, "run one key exchange and print every value")
    param_flags(sp, variant=False)
    seed_flags(sp)

    sp = add("encrypt", cmd_encrypt, "encrypt a file to a public key")
    sp.add_argument("--pub")
    sp.add_argument("--in", dest="inp")
    seed_flags(sp)

    sp = add("decrypt", cmd_decrypt, "decrypt a ciphertext file")
    sp.add_argument("--key")
    sp.add_argument("--in", dest="inp")

    sp = add("sign", cmd_sign, "write a detached signature")
    sp.add_argument("--key")
    sp.add_argument("--in", dest="inp")
    seed_flags(sp)

    sp = add("verify", cmd_verify, "check a detached signature (exit 3 on reject)")
    sp.add_argument("--pub")
    sp.add_argument("--in", dest="inp")
    sp.add_argument("--sig")
    sp.add_argument("--tolerance", type=int, default=0, help="experimental: accept windows this far apart")

    for name, func, help_ in (
        ("export-sat", cmd_export_sat, "write a DIMACS CNF inversion instance"),
        ("export-anf", cmd_export_anf, "write a GF(2) polynomial system"),
        ("bruteforce", cmd_bruteforce, "enumerate all solutions of a toy instance"),
        ("stats", cmd_stats, "clause/variable statistics of a CNF instance"),
    ):
        sp = add(name, func, help_)
        instance_flags(sp)
        if name == "export-anf":
            sp.add_argument("--max-m", type=int, default=16)
        if name == "stats":
            sp.add_argument("--in", dest="inp", help="DIMACS file (instead of instance flags)")

    sp = add("prob-test", cmd_prob_test, "measure the key agreement mismatch rate")
    param_flags(sp, variant=False)
    sp.add_argument("--trials", type=int, default=10000)
    seed_flags(sp)

    sp = add("bench", cmd_bench, "time the exchange against modular exponentiation")
    sp.add_argument("--widths", default="512,1024,2048,4096")
    sp.add_argument("--repeats", type=int, default=5)
    seed_flags(sp)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"moddiv {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModDivError as exc:
        print(f"moddiv {args.command}: invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
