"""Command-line interface: ``skewlab <subcommand> ...``.

Subcommands
-----------
experiment   square-dimension experiment for one (q, m, n, k) row or all rows
distinguish  run the square-code distinguisher on a matrix file
reskew       keygen | encrypt | decrypt | sizes
estimate     log2 of the Prange trial count
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import reskew as rs
from .distinguish import (
    SQUARE_EXPERIMENT_ROWS,
    default_threads,
    experiment_row,
    naive_distinguish,
    shortened_distinguish,
)
from .fieldtower import DomainError
from .matcodes import matrix_from_text


class CliError(Exception):
    pass


def _config_line(args, keys) -> str:
    parts = [f"{k}={getattr(args, k)}" for k in keys]
    return f"# skewlab {args.command} " + " ".join(parts)


# ---------------------------------------------------------------------------
# experiment


def cmd_experiment(args, out):
    rows = SQUARE_EXPERIMENT_ROWS if args.all else [(args.q, args.m, args.n, args.k)]
    if not args.all and None in rows[0]:
        raise CliError("experiment needs --q --m --n --k (or --all)")
    if args.trials < 0:
        raise CliError("--trials must be nonnegative")
    threads = args.threads or default_threads()
    print(_config_line(args, ("q", "m", "n", "k", "trials", "seed", "all")), file=out)
    print("q m n k gsrs_dim random_dim", file=out)
    if args.trials == 0:
        return 0
    for q, m, n, k in rows:
        try:
            row = experiment_row(q, m, n, k, args.trials, seed=args.seed, threads=threads)
        except DomainError as exc:
            raise CliError(str(exc)) from exc
        print(row.line(), file=out, flush=True)
    return 0


# ---------------------------------------------------------------------------
# distinguish


def cmd_distinguish(args, out):
    try:
        F, _, G = matrix_from_text(Path(args.matrix).read_text())
    except (OSError, ValueError, IndexError) as exc:
        raise CliError(f"cannot read matrix file: {exc}") from exc
    try:
        if args.s is None and not args.shortened:
            v = naive_distinguish(F, G, args.m)
        else:
            v = shortened_distinguish(F, G, args.m, args.s)
    except DomainError as exc:
        raise CliError(str(exc)) from exc
    print(v.line(), file=out)
    if v.note:
        print(f"# {v.note}", file=out)
    return 0


# ---------------------------------------------------------------------------
# reskew


def _read_obj(path, kind):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    try:
        return rs.deserialize(data, kind)
    except rs.FormatError as exc:
        raise CliError(f"{path}: {type(exc).__name__}: {exc}") from exc


def _write_message(path, msg):
    Path(path).write_text(" ".join(str(int(x)) for x in msg) + "\n")


def _read_message(path):
    try:
        return np.array([int(x) for x in Path(path).read_text().split()], dtype=np.int64)
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read message file {path}: {exc}") from exc


def cmd_reskew(args, out):
    action = args.action
    if action == "sizes":
        names = rs.SECURITY_SETS if args.set == "all" else [args.set]
        for nm in names:
            p = _get_set(nm)
            pk, sk, ct = rs.sizes(p)
            print(f"{pk} {sk} {ct}" if len(names) == 1 else f"{nm} {pk} {sk} {ct}", file=out)
        return 0
    if action == "keygen":
        p = _get_set(args.set)
        pk, sk = rs.keygen(p, np.random.default_rng(args.seed))
        Path(args.pk).write_bytes(rs.serialize(pk))
        Path(args.sk).write_bytes(rs.serialize(sk))
        print(_config_line(args, ("set", "seed")) + f" attempts={sk.attempts}", file=out)
        return 0
    if action == "encrypt":
        pk = _read_obj(args.pk, rs.KIND_PK)
        if args.msg is not None:
            msg = _read_message(args.msg)
        elif args.msg_seed is not None:
            msg = rs.sample_message(pk.params, np.random.default_rng(args.msg_seed))
            if args.msg_out:
                _write_message(args.msg_out, msg)
        else:
            raise CliError("encrypt needs --msg or --msg-seed")
        try:
            ct = rs.encrypt(pk, msg)
        except DomainError as exc:
            raise CliError(str(exc)) from exc
        Path(args.ct).write_bytes(rs.serialize(ct))
        return 0
    if action == "decrypt":
        sk = _read_obj(args.sk, rs.KIND_SK)
        ct = _read_obj(args.ct, rs.KIND_CT)
        if sk.params.tuple() != ct.params.tuple():
            raise CliError("ParameterMismatch: secret key and ciphertext parameters differ")
        try:
            msg = rs.decrypt(sk, ct)
        except (rs.DecryptionError, rs.FormatError, DomainError) as exc:
            raise CliError(f"{type(exc).__name__}: {exc}") from exc
        if args.out:
            _write_message(args.out, msg)
        else:
            print(" ".join(str(int(x)) for x in msg), file=out)
        return 0
    raise CliError(f"unknown reskew action {action}")


def _get_set(name):
    try:
        return rs.get_params(name)
    except DomainError as exc:
        raise CliError(str(exc)) from exc


# ---------------------------------------------------------------------------
# estimate


def cmd_estimate(args, out):
    if args.t > args.n - args.k:
        raise CliError("t exceeds n - k: no information set can hold the error")
    try:
        val = rs.prange_log2(args.n, args.k, args.t)
    except DomainError as exc:
        raise CliError(str(exc)) from exc
    print(f"{val:.2f}", file=out)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skewlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("experiment", help="square-dimension experiment")
    ex.add_argument("--q", type=int)
    ex.add_argument("--m", type=int)
    ex.add_argument("--n", type=int)
    ex.add_argument("--k", type=int)
    ex.add_argument("--trials", type=int, default=10)
    ex.add_argument("--seed", type=int, default=0)
    ex.add_argument("--threads", type=int, default=None)
    ex.add_argument("--all", action="store_true", help="run every built-in row")

    di = sub.add_parser("distinguish", help="square-code distinguisher on a matrix file")
    di.add_argument("--matrix", required=True)
    di.add_argument("--m", type=int, required=True)
    di.add_argument("--s", type=int, default=None, help="shortening size")
    di.add_argument("--shortened", action="store_true", help="shorten with the default size")

    rk = sub.add_parser("reskew", help="ReSkew key lifecycle")
    rsub = rk.add_subparsers(dest="action", required=True)
    kg = rsub.add_parser("keygen")
    kg.add_argument("--set", required=True)
    kg.add_argument("--seed", type=int, default=0)
    kg.add_argument("--pk", required=True)
    kg.add_argument("--sk", required=True)
    en = rsub.add_parser("encrypt")
    en.add_argument("--pk", required=True)
    en.add_argument("--msg")
    en.add_argument("--msg-seed", type=int)
    en.add_argument("--msg-out")
    en.add_argument("--ct", required=True)
    de = rsub.add_parser("decrypt")
    de.add_argument("--sk", required=True)
    de.add_argument("--ct", required=True)
    de.add_argument("--out")
    sz = rsub.add_parser("sizes")
    sz.add_argument("--set", required=True, help="set name or 'all'")

    es = sub.add_parser("estimate", help="Prange log2 trial count")
    es.add_argument("--n", type=int, required=True)
    es.add_argument("--k", type=int, required=True)
    es.add_argument("--t", type=int, required=True)
    return ap


COMMANDS = {
    "experiment": cmd_experiment,
    "distinguish": cmd_distinguish,
    "reskew": cmd_reskew,
    "estimate": cmd_estimate,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except CliError as exc:
        print(f"skewlab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
