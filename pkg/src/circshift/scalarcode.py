"""Scalar linear codes whose local kernels are GF(2) polynomials evaluated at alpha^j.

Kernels are kept symbolically.  The code at exponent j is obtained by first
evaluating every local kernel at alpha^j and only then propagating; substituting
alpha^j into kernels already propagated at alpha gives wrong answers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .gfpoly import FieldContext, cyclic_mul, degree, poly_str
from .linalg import FieldMatrix
from .netmodel import MulticastNetwork


@dataclass
class ScalarCode:
    """Map (d, e) -> k_{d,e}(x); pairs not listed carry the zero kernel."""

    ctx: FieldContext
    kernels: dict[tuple[int, int], int] = field(default_factory=dict)
    delta: int | None = None

    def __post_init__(self):
        self.kernels = {(int(d), int(e)): int(k) for (d, e), k in self.kernels.items() if k}
        for pair, k in self.kernels.items():
            if k < 0 or degree(k) >= self.ctx.L:
                raise ValueError(f"kernel {pair} has degree >= L={self.ctx.L}")
            if self.delta is not None and k.bit_count() > self.delta:
                raise ValueError(
                    f"kernel {pair} = {poly_str(k)} has weight {k.bit_count()} > delta={self.delta}")

    def kernel(self, d: int, e: int) -> int:
        return self.kernels.get((d, e), 0)

    def check_against(self, net: MulticastNetwork) -> None:
        adjacent = set(net.adjacent_pairs())
        for pair in self.kernels:
            if pair not in adjacent:
                raise ValueError(f"kernel on non-adjacent pair {pair}")

    @classmethod
    def from_names(cls, ctx: FieldContext, net: MulticastNetwork,
                   kernels: Mapping[tuple[str, str], int], delta: int | None = None
                   ) -> "ScalarCode":
        """Kernels keyed by edge names, e.g. ``{("e2", "e4"): 0b1001}``."""
        ids = {(net.edge_by_name(d), net.edge_by_name(e)): k for (d, e), k in kernels.items()}
        code = cls(ctx, ids, delta)
        code.check_against(net)
        return code


def global_kernels(code: ScalarCode, net: MulticastNetwork, j: int) -> dict[int, list[int]]:
    """f_e(alpha^j) for every edge: omega-dimensional column vectors as lists."""
    ctx = code.ctx
    w = net.omega
    table: dict[int, list[int]] = {}
    for i, eid in enumerate(net.out_edges(net.source)):
        table[eid] = [int(i == r) for r in range(w)]
    for eid in net.edge_order:
        if eid in table:
            continue
        vec = [0] * w
        for d in net.in_edges(net.edge[eid].tail):
            k = code.kernel(d, eid)
            if not k:
                continue
            c = ctx.eval_at_alpha_power(k, j)
            if c:
                vec = [a ^ ctx.mul(c, b) for a, b in zip(vec, table[d])]
        table[eid] = vec
    return table


def symbolic_global_kernels(code: ScalarCode, net: MulticastNetwork) -> dict[int, list[int]]:
    """f_e(x) with entries in GF(2)[x]/(x^L + 1)."""
    L = code.ctx.L
    w = net.omega
    table: dict[int, list[int]] = {}
    for i, eid in enumerate(net.out_edges(net.source)):
        table[eid] = [int(i == r) for r in range(w)]
    for eid in net.edge_order:
        if eid in table:
            continue
        vec = [0] * w
        for d in net.in_edges(net.edge[eid].tail):
            k = code.kernel(d, eid)
            if k:
                vec = [a ^ cyclic_mul(k, b, L) for a, b in zip(vec, table[d])]
        table[eid] = vec
    return table


def receiver_matrix(ctx: FieldContext, table: Mapping[int, list[int]],
                    net: MulticastNetwork, t: str) -> FieldMatrix:
    """[f_e]_{e in In(t)}: one column per incoming edge, in id order."""
    cols = [table[e] for e in net.in_edges(t)]
    return FieldMatrix(ctx, [list(r) for r in zip(*cols)])


def receiver_ranks(code: ScalarCode, net: MulticastNetwork, j: int) -> dict[str, int]:
    table = global_kernels(code, net, j)
    return {t: receiver_matrix(code.ctx, table, net, t).rank() for t in net.receivers}


def is_solution_at(code: ScalarCode, net: MulticastNetwork, j: int) -> bool:
    w = net.omega
    return all(r == w for r in receiver_ranks(code, net, j).values())


def solution_set(code: ScalarCode, net: MulticastNetwork) -> tuple[int, ...]:
    """Exponents j where the code is a solution, testing one representative per coset."""
    J: list[int] = []
    for coset in code.ctx.cosets:
        if is_solution_at(code, net, coset[0]):
            J.extend(coset)
    return tuple(sorted(J))


def frobenius_shift(code: ScalarCode, net: MulticastNetwork, r: int, l: int) -> bool:
    """det[f_e(alpha^(r 2^l))] == det[f_e(alpha^r)]^(2^l) at every receiver."""
    ctx = code.ctx
    base = global_kernels(code, net, r % ctx.L)
    shifted = global_kernels(code, net, (r << l) % ctx.L)
    for t in net.receivers:
        d0 = receiver_matrix(ctx, base, net, t).det()
        d1 = receiver_matrix(ctx, shifted, net, t).det()
        if d1 != ctx.frobenius(d0, l):
            return False
    return True
