"""Circular-shift codes induced from polynomial scalar codes, with source and decoding matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .gfpoly import FieldContext
from .linalg import BinMatrix, FieldMatrix, circulant_of_poly, hstack, kron, vstack
from .netmodel import MulticastNetwork
from .scalarcode import (ScalarCode, global_kernels, receiver_matrix, solution_set,
                         symbolic_global_kernels)


class SourceMatrixError(ValueError):
    pass


@dataclass
class CircularShiftCode:
    scalar: ScalarCode
    kernels: dict[tuple[int, int], BinMatrix]
    global_kernels: dict[int, BinMatrix]
    J_set: tuple[int, ...]
    omega: int
    G: BinMatrix | None = None
    Gs: BinMatrix | None = None
    decoders: dict[str, BinMatrix] = field(default_factory=dict)

    @property
    def ctx(self) -> FieldContext:
        return self.scalar.ctx

    @property
    def L(self) -> int:
        return self.ctx.L

    @property
    def J(self) -> int:
        return len(self.J_set)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.J, self.L)

    def receiver_kernel(self, net: MulticastNetwork, t: str) -> BinMatrix:
        """[F_e]_{e in In(t)}, omega*L square."""
        return hstack([self.global_kernels[e] for e in net.in_edges(t)])


def _stack_circulants(polys: list[int], L: int) -> BinMatrix:
    return vstack([circulant_of_poly(p, L) for p in polys])


def induce(code: ScalarCode, net: MulticastNetwork, J_set=None) -> CircularShiftCode:
    """K_{d,e} = k_{d,e}(C_L); F_e from the symbolic global kernels.

    ``J_set`` defaults to the full solution set of ``code``; any doubling-closed
    subset of it is also admissible.
    """
    L = code.ctx.L
    kernels = {pair: circulant_of_poly(k, L) for pair, k in code.kernels.items()}
    sym = symbolic_global_kernels(code, net)
    F = {e: _stack_circulants(v, L) for e, v in sym.items()}
    if J_set is None:
        J_set = solution_set(code, net)
    return CircularShiftCode(code, kernels, F, tuple(sorted(J_set)), net.omega)


def propagated_global_kernels(ccode: CircularShiftCode, net: MulticastNetwork) -> dict[int, BinMatrix]:
    """F_e = sum over d of F_d K_{d,e}, computed with binary matrix products."""
    L, w = ccode.L, ccode.omega
    F: dict[int, BinMatrix] = {}
    ident = BinMatrix.identity(L)
    zero = BinMatrix.zeros(L, L)
    for i, e in enumerate(net.out_edges(net.source)):
        F[e] = vstack([ident if r == i else zero for r in range(w)])
    for e in net.edge_order:
        if e in F:
            continue
        acc = BinMatrix.zeros(w * L, L)
        for d in net.in_edges(net.edge[e].tail):
            K = ccode.kernels.get((d, e))
            if K is not None:
                acc = acc + F[d] @ K
        F[e] = acc
    return F


def rank_relation_check(ccode: CircularShiftCode, code: ScalarCode,
                        net: MulticastNetwork, t: str) -> tuple[int, int]:
    """(rank over GF(2) of [F_e], sum over all j of rank of [f_e(alpha^j)])."""
    lhs = ccode.receiver_kernel(net, t).rank()
    rhs = sum(receiver_matrix(code.ctx, global_kernels(code, net, j), net, t).rank()
              for j in range(code.ctx.L))
    return lhs, rhs


def is_doubling_closed(J_set, L: int) -> bool:
    s = set(J_set)
    return all((2 * j) % L in s for j in s)


def source_matrix(J_set, ctx: FieldContext, omega: int) -> tuple[BinMatrix, BinMatrix]:
    """G = Vt^-1 I_J V_L^-1 and G_s = I_omega (x) G.

    Vt holds rows alpha^(j*c), j in J ascending, c < J.  G is computed in the
    extension field and must come out binary.
    """
    L = ctx.L
    J_list = sorted(set(J_set))
    if not J_list:
        raise SourceMatrixError("solution index set is empty")
    if any(not 0 <= j < L for j in J_list):
        raise SourceMatrixError(f"indices must lie in [0, {L - 1}]")
    if not is_doubling_closed(J_list, L):
        raise SourceMatrixError(f"{J_list} is not closed under doubling mod {L}")
    n = len(J_list)
    Vt = FieldMatrix(ctx, [[ctx.alpha_pow(j * c) for c in range(n)] for j in J_list])
    rows_of_vinv = FieldMatrix(ctx, [[ctx.alpha_pow(-j * c) for c in range(L)] for j in J_list])
    Gf = Vt.inverse() @ rows_of_vinv
    if not Gf.is_binary():
        raise ArithmeticError("source matrix has entries outside GF(2)")
    G = Gf.to_binary()
    return G, kron(BinMatrix.identity(omega), G)


def solution_rank_check(ccode: CircularShiftCode, net: MulticastNetwork, t: str) -> tuple[int, int]:
    if ccode.Gs is None:
        raise ValueError("source matrix not built")
    return (ccode.Gs @ ccode.receiver_kernel(net, t)).rank(), ccode.omega * ccode.J


def decoding_matrices(ccode: CircularShiftCode, net: MulticastNetwork) -> dict[str, BinMatrix]:
    """D_t = a right inverse of G_s [F_e]_{e in In(t)}."""
    if ccode.Gs is None:
        raise ValueError("source matrix not built")
    return {t: (ccode.Gs @ ccode.receiver_kernel(net, t)).right_inverse() for t in net.receivers}


def build_solution(code: ScalarCode, net: MulticastNetwork, J_set=None) -> CircularShiftCode:
    """induce + source matrix + decoders in one step."""
    ccode = induce(code, net, J_set)
    ccode.G, ccode.Gs = source_matrix(ccode.J_set, code.ctx, net.omega)
    ccode.decoders = decoding_matrices(ccode, net)
    return ccode
