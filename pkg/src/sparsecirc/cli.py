"""Command-line entry point.

Exit codes: 0 answered (NONSINGULAR and REJECT are answers too), 2 usage,
3 parse/format, 4 capacity, 5 crosscheck disagreement.
"""

from __future__ import annotations

import argparse
import sys
from collections import defaultdict
from pathlib import Path

from .circulant import sc_decide, sc_verify_root
from .errors import CapacityExceeded, DigestMismatch, FormatError, SparseCircError, ZeroWitness
from .formats import dump_mq, dump_pq, dump_sc, load_instance, parse_mq, parse_pq, parse_sc
from .gf2n import default_modulus
from .mq import SQUARE_MODES, mq_random, mq_square
from .pq import pq_from_mq
from .reduction import CHAIN_MAX_SIZE, chain_check, sc_from_pq
from .solver import Certificate, make_certificate, make_oracle, root_certificate, solve_mq, verify_certificate

EXIT_OK, EXIT_USAGE, EXIT_FORMAT, EXIT_CAPACITY, EXIT_DISAGREE = 0, 2, 3, 4, 5


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_gen_mq(args) -> int:
    _write(dump_mq(mq_random(args.vars, args.eqs, args.seed)), args.output)
    return EXIT_OK


def cmd_mq_solve(args) -> int:
    S = parse_mq(_read(args.file))
    oracle = make_oracle(args.oracle, args.seed, args.square)
    res = solve_mq(S, oracle)
    if args.trace:
        for line in res.trace_lines():
            print(f"# trace {line}", file=sys.stderr)
    sols = sorted(res.solutions)
    for s in sols:
        print(s)
    print(f"# nodes={res.nodes} oracle_calls={res.oracle_calls}")
    if args.cert_out and sols:
        Path(args.cert_out).write_text(make_certificate(S, sols[0]).to_text())
    return EXIT_OK


def cmd_mq_to_pq(args) -> int:
    S = parse_mq(_read(args.file))
    sq, _ = mq_square(S, args.square)
    P = pq_from_mq(sq, default_modulus(sq.n_vars), args.seed)
    _write(dump_pq(P), args.output)
    return EXIT_OK


def cmd_pq_to_sc(args) -> int:
    out = sc_from_pq(parse_pq(_read(args.file)))
    if out.trivially_singular:
        print(f"TRIVIALLY_SINGULAR {out.trivial_reason}")
    else:
        _write(dump_sc(out.instance), args.output)
    return EXIT_OK


def cmd_sc_decide(args) -> int:
    M = parse_sc(_read(args.file))
    d = sc_decide(M, args.alg)
    print(str(d))
    if args.cert_out and d.singular and d.witness is not None:
        Path(args.cert_out).write_text(root_certificate(M, d.witness).to_text())
    return EXIT_OK


def cmd_sc_verify(args) -> int:
    M = parse_sc(_read(args.file))
    try:
        u = int(args.root, 16)
    except ValueError:
        raise FormatError(f"bad root {args.root!r}") from None
    try:
        ok = 0 < u < M.spec.size and sc_verify_root(M, u)
    except ZeroWitness:
        ok = False
    print("ACCEPT" if ok else "REJECT")
    return EXIT_OK


def cmd_cert_verify(args) -> int:
    cert = Certificate.from_text(_read(args.cert))
    instance = load_instance(_read(args.instance))
    try:
        ok = verify_certificate(cert, instance)
    except DigestMismatch as exc:
        print(f"digest mismatch: {exc}", file=sys.stderr)
        ok = False
    print("ACCEPT" if ok else "REJECT")
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    if args.max_n > CHAIN_MAX_SIZE:
        raise CapacityExceeded(f"--max-n limited to {CHAIN_MAX_SIZE}")
    if args.max_n < 2 or args.trials < 1:
        print("error: need --max-n >= 2 and --trials >= 1", file=sys.stderr)
        return EXIT_USAGE
    sizes = list(range(2, args.max_n + 1))
    per_n = defaultdict(lambda: [0, 0, 0])  # trials, agreements, solvable
    bad = []
    for t in range(args.trials):
        n = sizes[t % len(sizes)]
        seed = args.seed * 1_000_003 + t
        S = mq_random(n, n, seed)
        rep = chain_check(S, seed)
        row = per_n[n]
        row[0] += 1
        row[1] += rep.agree
        row[2] += rep.mq_solvable
        if not rep.agree:
            bad.append((n, seed, rep))
    print(f"{'n':>3} {'trials':>7} {'agree':>7} {'solvable':>9}")
    for n in sizes:
        tr, ag, so = per_n[n]
        print(f"{n:>3} {tr:>7} {ag:>7} {so:>9}")
    total_agree = sum(r[1] for r in per_n.values())
    print(f"agreement: {total_agree}/{args.trials}")
    for n, seed, rep in bad:
        print(f"# disagreement n={n} seed={seed}: {rep.dump()}")
    return EXIT_DISAGREE if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sparsecirc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-mq", help="random quadratic system")
    g.add_argument("--vars", type=int, required=True)
    g.add_argument("--eqs", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen_mq)

    g = sub.add_parser("mq-solve", help="enumerate solutions through a solvability oracle")
    g.add_argument("--oracle", choices=["brute", "sc-eig", "sc-gauss", "sc-gcd"], default="brute")
    g.add_argument("--trace", action="store_true", help="print the search tree to stderr")
    g.add_argument("--seed", type=int, default=0, help="interpolation seed for sc-* oracles")
    g.add_argument("--square", choices=SQUARE_MODES, default="repeat-last")
    g.add_argument("--cert-out", help="write an assignment certificate for the first solution")
    g.add_argument("file")
    g.set_defaults(func=cmd_mq_solve)

    g = sub.add_parser("mq-to-pq", help="square the system and interpolate its pseudoquadratic")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--square", choices=SQUARE_MODES, default="repeat-last")
    g.add_argument("-o", "--output")
    g.add_argument("file")
    g.set_defaults(func=cmd_mq_to_pq)

    g = sub.add_parser("pq-to-sc", help="sparse circulant instance of a pseudoquadratic")
    g.add_argument("-o", "--output")
    g.add_argument("file")
    g.set_defaults(func=cmd_pq_to_sc)

    g = sub.add_parser("sc-decide", help="decide singularity of a sparse circulant")
    g.add_argument("--alg", choices=["eig", "gauss", "gcd", "two-term", "auto"], default="auto")
    g.add_argument("--cert-out", help="write a root certificate when a witness is found")
    g.add_argument("file")
    g.set_defaults(func=cmd_sc_decide)

    g = sub.add_parser("sc-verify", help="check a claimed eigenvalue root")
    g.add_argument("--root", required=True)
    g.add_argument("file")
    g.set_defaults(func=cmd_sc_verify)

    g = sub.add_parser("cert-verify", help="check a certificate against an instance")
    g.add_argument("--cert", required=True)
    g.add_argument("--instance", required=True)
    g.set_defaults(func=cmd_cert_verify)

    g = sub.add_parser("crosscheck", help="MQ / PQ / SC agreement on random systems")
    g.add_argument("--max-n", type=int, default=6)
    g.add_argument("--trials", type=int, default=100)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_crosscheck)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except CapacityExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (SparseCircError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
