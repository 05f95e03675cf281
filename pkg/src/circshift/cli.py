"""Command line: analyze, build, verify, simulate.

Reports are key=value lines.  Exit codes: 0 ok, 2 bad input, 3 construction
failed, 4 verification or simulation failed.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from .builder import PoolTooLarge, SelectionExhausted, construct, enumerate_pool, feasibility, pool_size
from .circcode import (build_solution, is_doubling_closed, rank_relation_check, source_matrix,
                       solution_rank_check)
from .formats import FormatError, dump_code, load_code, load_network
from .gfpoly import build_field, poly_str
from .linalg import BinMatrix
from .netmodel import NetworkError
from .scalarcode import global_kernels, receiver_matrix, solution_set
from .simulate import decode, encode_source, propagate, shift_op_count

EXIT_OK, EXIT_INPUT, EXIT_BUILD, EXIT_FAIL = 0, 2, 3, 4


class InputError(Exception):
    pass


def _out(**kv) -> None:
    print(" ".join(f"{k}={v}" for k, v in kv.items()))


def _fmt_set(xs) -> str:
    return "{" + ",".join(map(str, xs)) + "}"


def _field(L: int):
    try:
        return build_field(L)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def cmd_analyze(args) -> int:
    ctx = _field(args.L)
    _out(L=ctx.L, m_L=ctx.m, phi=ctx.phi, rate=Fraction(ctx.phi, ctx.L))
    _out(modulus=poly_str(ctx.modulus))
    _out(cosets=" ".join(_fmt_set(c) for c in ctx.cosets))
    _out(R_cosets=" ".join(_fmt_set(c) for c in ctx.R_cosets))
    if args.delta is not None:
        try:
            pool = enumerate_pool(ctx, args.delta)
        except (ValueError, PoolTooLarge) as exc:
            raise InputError(str(exc)) from exc
        _out(delta=args.delta, pool_size=pool_size(ctx.L, args.delta), K_delta=pool.K_delta)
        if args.receivers is not None:
            f = feasibility(ctx, args.delta, args.receivers, pool.K_delta)
            _out(receivers=args.receivers, bound=f.bound, feasibility=f.verdict)
    elif args.receivers is not None:
        raise InputError("--receivers needs --delta")
    return EXIT_OK


def cmd_build(args) -> int:
    net = load_network(args.net)
    ctx = _field(args.L)
    try:
        pool = enumerate_pool(ctx, args.delta)
    except (ValueError, PoolTooLarge) as exc:
        raise InputError(str(exc)) from exc
    f = feasibility(ctx, args.delta, len(net.receivers), pool.K_delta)
    _out(L=ctx.L, delta=args.delta, receivers=len(net.receivers), bound=f.bound, feasibility=f.verdict)
    try:
        code = construct(net, ctx, args.delta, pool=pool)
    except SelectionExhausted as exc:
        _out(status="FAIL", edge=net.edge[exc.edge].name, pair=f"({net.edge[exc.d].name},{net.edge[exc.edge].name})")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUILD
    # the construction guarantees a solution on the union of the coprime cosets
    ccode = build_solution(code, net, ctx.R)
    dump_code(ccode, args.out)
    _out(status="OK", J=ccode.J, rate=ccode.rate, J_set=_fmt_set(ccode.J_set), out=args.out)
    return EXIT_OK


def _verify(net, ccode) -> list[tuple[str, bool, dict]]:
    ctx = ccode.ctx
    w = net.omega
    rows: list[tuple[str, bool, dict]] = []
    derived = solution_set(ccode.scalar, net)
    ok = is_doubling_closed(ccode.J_set, ctx.L) and set(ccode.J_set) <= set(derived)
    rows.append(("J_set", ok, {"stored": _fmt_set(ccode.J_set), "derived": _fmt_set(derived)}))
    try:
        source_matrix(ccode.J_set, ctx, w)
        rows.append(("G_binary", True, {}))
    except (ValueError, ArithmeticError) as exc:
        rows.append(("G_binary", False, {"reason": str(exc).replace(" ", "_")}))
    tables = {j: global_kernels(ccode.scalar, net, j) for j in ccode.J_set}
    for t in net.receivers:
        for j in ccode.J_set:
            r = receiver_matrix(ctx, tables[j], net, t).rank()
            if r != w:
                rows.append(("scalar", False, {"receiver": t, "j": j, "rank": r, "expected": w}))
        lhs, rhs = rank_relation_check(ccode, ccode.scalar, net, t)
        rows.append(("rank_sum", lhs == rhs, {"receiver": t, "lhs": lhs, "rhs": rhs}))
        if ccode.Gs is None:
            rows.append(("decodable", False, {"receiver": t, "reason": "no_G"}))
            continue
        got, want = solution_rank_check(ccode, net, t)
        rows.append(("decodable", got == want, {"receiver": t, "rank": got, "expected": want}))
        D = ccode.decoders.get(t)
        if D is None:
            rows.append(("decoder", False, {"receiver": t, "reason": "missing"}))
            continue
        M = ccode.Gs @ ccode.receiver_kernel(net, t)
        good = M.ncols == D.nrows and M @ D == BinMatrix.identity(M.nrows)
        rows.append(("decoder", good, {"receiver": t}))
    return rows


def cmd_verify(args) -> int:
    net = load_network(args.net)
    ccode = load_code(args.code, net)
    rows = _verify(net, ccode)
    for name, ok, info in rows:
        _out(check=name, status="PASS" if ok else "FAIL", **info)
    passed = all(ok for _, ok, _ in rows)
    _out(result="PASS" if passed else "FAIL")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_simulate(args) -> int:
    net = load_network(args.net)
    ccode = load_code(args.code, net)
    if ccode.Gs is None or set(ccode.decoders) != set(net.receivers):
        raise InputError("code file lacks G or a decoder per receiver")
    if args.trials < 0:
        raise InputError("--trials must be non-negative")
    rng = random.Random(args.seed)
    J = ccode.J
    good = 0
    for _ in range(args.trials):
        msg = [rng.getrandbits(J) for _ in range(net.omega)]
        units = propagate(net, ccode, encode_source(msg, ccode.Gs, net))
        if all(decode(t, units, ccode.decoders[t], net) == msg for t in net.receivers):
            good += 1
    stats = shift_op_count(ccode, net)
    _out(trials=args.trials, success=good, seed=args.seed,
         shifts_per_message=stats.total_shifts, xors_per_message=stats.total_xors)
    passed = good == args.trials
    _out(result="PASS" if passed else "FAIL")
    return EXIT_OK if passed else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="circshift", description="Circular-shift linear network codes.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="field and rate parameters for a block length")
    a.add_argument("--L", type=int, required=True)
    a.add_argument("--delta", type=int)
    a.add_argument("--receivers", type=int)
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("build", help="construct a code for a network")
    b.add_argument("--net", required=True, help="network file or bundled name")
    b.add_argument("--L", type=int, required=True)
    b.add_argument("--delta", type=int, required=True)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="re-check a stored code")
    v.add_argument("--net", required=True)
    v.add_argument("--code", required=True)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="round-trip random messages")
    s.add_argument("--net", required=True)
    s.add_argument("--code", required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FormatError, NetworkError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
