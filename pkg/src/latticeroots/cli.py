"""Command-line interface: ``latticeroots <subcommand> [flags]``.

Exit codes: 0 success, 1 usage error, 2 internal invariant violation,
3 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

from . import __version__
from .enumeration import (DEFAULT_CEILING, candidate_bound, normal_form_tuples, partition_outer,
                          randomized_search, representation_numbers)
from .errors import InvariantViolation, UsageError, VerificationFailure
from .inequality import check_implication, inequality_table
from .lattice import build_preset, format_machine, format_text
from .orthocount import (NotFoundBelowCeiling, answer_qpq, format_decomposition, root_type,
                         scan_range, smallest_d_for)
from .weights import verify_appendix
from .weyl import build_transversal, count_orbits

THREADS_ENV = "LATTICEROOTS_THREADS"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _add_common(p: argparse.ArgumentParser, lattice=True, d=True, m=False):
    if lattice:
        p.add_argument("--lattice", default="E8", help="E8, E7, E6, D6, A1 or A2")
    if d:
        p.add_argument("--d", type=int, help="single value of d (norm 2d)")
        p.add_argument("--d-min", type=int)
        p.add_argument("--d-max", type=int)
    if m:
        p.add_argument("--m", type=int, help="single number of orthogonal roots")
        p.add_argument("--m-min", type=int)
        p.add_argument("--m-max", type=int)


def _add_global(p: argparse.ArgumentParser, suppress: bool):
    def dflt(v):
        return argparse.SUPPRESS if suppress else v

    p.add_argument("--format", choices=("tsv", "lines"), default=dflt("tsv"))
    p.add_argument("--threads", type=int, default=dflt(None),
                   help=f"worker processes (default: ${THREADS_ENV} or 1)")
    p.add_argument("--ceiling", type=int, default=dflt(DEFAULT_CEILING),
                   help="brute-force box ceiling")
    p.add_argument("--out", default=dflt(None), help="write output to FILE instead of stdout")
    p.add_argument("--no-header", action="store_true", default=dflt(False),
                   help="omit '#' provenance lines")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latticeroots", description="Exact root-lattice computations.")
    parser.add_argument("--version", action="version", version=f"latticeroots {__version__}")
    _add_global(parser, suppress=False)
    # global flags are accepted after the subcommand as well
    common = _Parser(add_help=False)
    _add_global(common, suppress=True)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    _add_common(add("roots", help="list the roots of a preset"), d=False)
    p = add("enumerate", help="normal-form vectors of norm 2d in E8")
    _add_common(p)
    p.add_argument("--branch", choices=("integer", "half-integer", "both"), default="both")
    _add_common(add("root-type", help="root types P(L, d)"))
    _add_common(add("minima", help="m0(d) and m1(d)"))
    _add_common(add("scan", help="witnesses for m in a range"), m=True)
    p = add("qpq", help="d where >= 2q orthogonal roots forces >= 2p")
    _add_common(p, d=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p = add("smallest-d", help="least d with m1(d) <= m")
    _add_common(p, d=False)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d-ceiling", type=int, default=1000)
    p = add("orbits", help="number of W(E8)-orbits with exactly m orthogonal roots")
    _add_common(p, m=True)
    add("verify-appendix", help="check the explicit weight vectors")
    p = add("inequality", help="28 N_E6 + 63 N_D6 >= 4 N_E7 table")
    _add_common(p, lattice=False)
    p.add_argument("--check", action="store_true", help="also test the implication")
    p = add("random-search", help="randomised search for (d, m) pairs")
    p.add_argument("--d-min", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--m-min", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--trials", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    _add_common(add("repcount", help="representation numbers N_L(2d)"))
    p = add("bound", help="candidate-box bound for brute force")
    p.add_argument("--d", type=int, required=True)
    return parser


def _d_range(args) -> range:
    if args.d is not None:
        if args.d_min is not None or args.d_max is not None:
            raise UsageError("--d conflicts with --d-min/--d-max")
        return range(args.d, args.d + 1)
    if args.d_min is None and args.d_max is None:
        raise UsageError("give --d or --d-min/--d-max")
    lo = 1 if args.d_min is None else args.d_min
    hi = lo if args.d_max is None else args.d_max
    if lo < 0 or lo > hi:
        raise UsageError(f"bad d range {lo}..{hi}")
    return range(lo, hi + 1)


def _m_range(args) -> tuple[int, int]:
    if args.m is not None:
        if args.m_min is not None or args.m_max is not None:
            raise UsageError("--m conflicts with --m-min/--m-max")
        return args.m, args.m
    if args.m_min is None or args.m_max is None:
        raise UsageError("give --m or both --m-min and --m-max")
    if args.m_min > args.m_max:
        raise UsageError("empty m range")
    return args.m_min, args.m_max


def _pmap(fn: Callable, items: Sequence, threads: int) -> list:
    """Ordered map, in worker processes when ``threads > 1``."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# -- per-item tasks (module level so worker processes can import them) ------

def _root_type_task(item):
    name, d, ceiling = item
    return d, root_type(name, d, ceiling).members


def _scan_task(item):
    name, d, m_lo, m_hi, ceiling = item
    return [(w.d, w.m, w.weight, format_decomposition(w.decomposition), format_machine(w.l))
            for w in scan_range(name, d, d, m_lo, m_hi, ceiling)]


def _orbits_task(item):
    d, m = item
    rep = count_orbits(d, m)
    return d, m, rep.nu, [format_machine(v) for v in rep.representatives]


def _enumerate_task(item):
    d, branch, outer = item
    return list(normal_form_tuples(d, branch, outer))


# -- subcommands --------------------------------------------------------------

def _vec(fmt: str, v) -> str:
    return format_machine(v) if fmt == "tsv" else format_text(v)


def _cmd_roots(args, out, threads):
    p = build_preset(args.lattice)
    out.header(lattice=p.name, roots=len(p.roots), positive=len(p.positive_roots))
    for r in p.roots:
        out.line(_vec(args.format, r))


def _cmd_enumerate(args, out, threads):
    if build_preset(args.lattice).name != "E8":
        raise UsageError("enumerate supports --lattice E8 only")
    out.header(lattice="E8", d=_span(args), branch=args.branch)
    for d in _d_range(args):
        # chunks in descending order reproduce the serial emission order
        chunks = sorted(partition_outer(d, max(threads, 1)), reverse=True)
        branches = ("integer", "half-integer") if args.branch == "both" else (args.branch,)
        items = [(d, b, c) for b in branches for c in chunks]
        for vecs in _pmap(_enumerate_task, items, threads):
            for v in vecs:
                out.line(_vec(args.format, v))


def _warn_zero(ds):
    if 0 in ds:
        print("warning: d=0 only admits the zero vector, which is orthogonal to every root",
              file=sys.stderr)


def _cmd_root_type(args, out, threads):
    p = build_preset(args.lattice)
    ds = _d_range(args)
    _warn_zero(ds)
    out.header(lattice=p.name, d=_span(args))
    for d, members in _pmap(_root_type_task, [(p.name, d, args.ceiling) for d in ds], threads):
        out.row(d, ",".join(map(str, members)))


def _cmd_minima(args, out, threads):
    p = build_preset(args.lattice)
    ds = _d_range(args)
    _warn_zero(ds)
    out.header(lattice=p.name, d=_span(args), columns="d m0 m1")
    for d, members in _pmap(_root_type_task, [(p.name, d, args.ceiling) for d in ds], threads):
        m1 = next((m for m in members if m > 0), None)
        out.row(d, members[0] if members else "-", "-" if m1 is None else m1)


def _cmd_scan(args, out, threads):
    p = build_preset(args.lattice)
    lo, hi = _m_range(args)
    out.header(lattice=p.name, d=_span(args), m=f"{lo}..{hi}",
               columns="d m weight decomposition witness")
    items = [(p.name, d, lo, hi, args.ceiling) for d in _d_range(args)]
    for rows in _pmap(_scan_task, items, threads):
        for row in rows:
            out.row(*row)


def _cmd_qpq(args, out, threads):
    p = build_preset(args.lattice)
    out.header(lattice=p.name, p=args.p, q=args.q, d_max=args.d_max)
    for d in answer_qpq(p, args.p, args.q, args.d_max):
        out.row(d)


def _cmd_smallest_d(args, out, threads):
    p = build_preset(args.lattice)
    out.header(lattice=p.name, m=args.m, d_ceiling=args.d_ceiling)
    res = smallest_d_for(p, args.m, args.d_ceiling)
    if isinstance(res, NotFoundBelowCeiling):
        out.row(args.m, f"none<={res.ceiling}")
    else:
        out.row(args.m, res)


def _cmd_orbits(args, out, threads):
    if build_preset(args.lattice).name != "E8":
        raise UsageError("orbits supports --lattice E8 only")
    lo, hi = _m_range(args)
    ms = [m for m in range(lo, hi + 1) if m % 2 == 0]
    t = build_transversal()
    out.header(lattice="E8", d=_span(args), m=f"{lo}..{hi}",
               v0=format_machine(t.base_vector), transversal=f"{len(t)} sha256:{t.checksum}",
               columns="d m nu representatives")
    items = [(d, m) for d in _d_range(args) for m in ms]
    for d, m, nu, reps in _pmap(_orbits_task, items, threads):
        out.row(d, m, nu, ";".join(reps))


def _cmd_verify_appendix(args, out, threads):
    results = verify_appendix()
    out.header()
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        detail = "" if r.passed else " " + "; ".join(r.failures)
        out.line(f"{status} {r.name} norm={r.norm} m={r.m} {r.decomposition}{detail}")
    out.line("# name\tnorm\tm\tdecomposition")
    for r in results:
        out.row(r.name, r.norm, r.m, r.decomposition)
    if not all(r.passed for r in results):
        raise VerificationFailure("appendix verification failed")


def _cmd_inequality(args, out, threads):
    ds = _d_range(args)
    out.header(d=_span(args), columns="d N_E6 N_D6 N_E7 lhs rhs holds")
    for r in inequality_table(ds.start, ds.stop - 1):
        out.row(r.d, r.n_e6, r.n_d6, r.n_e7, r.lhs, r.rhs, "yes" if r.holds else "no")
    if args.check:
        rep = check_implication(ds.start, ds.stop - 1)
        for d in rep.failing:
            w = rep.witnesses.get(d)
            if w is None:
                out.line(f"# VIOLATION d={d}: no witness with 2 <= m <= 12")
            else:
                out.line(f"# implication d={d}: m={w.m} {format_decomposition(w.decomposition)} "
                         f"{format_machine(w.l)}")
        if not rep.ok:
            raise VerificationFailure(f"implication violated for d in {rep.violations}")


def _cmd_random_search(args, out, threads):
    out.header(d=f"{args.d_min}..{args.d_max}", m=f"{args.m_min}..{args.m_max}",
               trials=args.trials, seed=args.seed, prng="numpy PCG64")
    for hit in randomized_search(args.d_min, args.d_max, args.m_min, args.m_max,
                                 args.trials, args.seed):
        out.row(hit.d, hit.m, _vec(args.format, hit.witness))


def _cmd_repcount(args, out, threads):
    p = build_preset(args.lattice)
    ds = _d_range(args)
    counts = representation_numbers(p, ds.stop - 1)
    out.header(lattice=p.name, d=_span(args))
    for d in ds:
        out.row(d, counts[d])


def _cmd_bound(args, out, threads):
    bound, refined = candidate_bound(args.d)
    out.header(columns="d bound parity_refined")
    out.row(args.d, bound, refined)


COMMANDS = {
    "roots": _cmd_roots,
    "enumerate": _cmd_enumerate,
    "root-type": _cmd_root_type,
    "minima": _cmd_minima,
    "scan": _cmd_scan,
    "qpq": _cmd_qpq,
    "smallest-d": _cmd_smallest_d,
    "orbits": _cmd_orbits,
    "verify-appendix": _cmd_verify_appendix,
    "inequality": _cmd_inequality,
    "random-search": _cmd_random_search,
    "repcount": _cmd_repcount,
    "bound": _cmd_bound,
}


def _span(args) -> str:
    ds = _d_range(args)
    return str(ds.start) if len(ds) == 1 else f"{ds.start}..{ds.stop - 1}"


class _Writer:
    def __init__(self, command: str, fmt: str, header: bool):
        self.command = command
        self.fmt = fmt
        self.show_header = header
        self.lines: list[str] = []

    def header(self, **params):
        if not self.show_header:
            return
        self.lines.append(f"# latticeroots {__version__}")
        self.lines.append(f"# command: {self.command}")
        for k, v in params.items():
            self.lines.append(f"# {k}: {v}")

    def line(self, text: str):
        self.lines.append(text)

    def row(self, *fields):
        sep = "\t" if self.fmt == "tsv" else " "
        self.lines.append(sep.join(str(f) for f in fields))

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


def _threads(args) -> int:
    if args.threads is not None:
        n = args.threads
    else:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            n = int(raw)
        except ValueError:
            raise UsageError(f"${THREADS_ENV} must be an integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("thread count must be >= 1")
    return n


def main(argv: Iterable[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError(build_parser().format_help())
        threads = _threads(args)
        out = _Writer(args.command, args.format, not args.no_header)
        status = 0
        try:
            COMMANDS[args.command](args, out, threads)
        except VerificationFailure as exc:
            print(f"verification failed: {exc}", file=sys.stderr)
            status = 3
        text = out.text()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return status
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
