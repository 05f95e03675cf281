"""Bit-level data plane: encode with G_s, forward with shifts and XORs, decode with D_t.

Data units are L-bit ints (bit i = symbol i).  A source message is a list of
omega ints of J bits each.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .circcode import CircularShiftCode
from .linalg import BinMatrix, rotl
from .netmodel import MulticastNetwork


def _check_width(v: int, width: int, what: str) -> None:
    if v < 0 or v >> width:
        raise ValueError(f"{what} does not fit in {width} bits")


def _join(units: Sequence[int], width: int) -> int:
    out = 0
    for i, u in enumerate(units):
        out |= u << (i * width)
    return out


def _split(v: int, width: int, count: int) -> list[int]:
    mask = (1 << width) - 1
    return [(v >> (i * width)) & mask for i in range(count)]


def encode_source(msg: Sequence[int], Gs: BinMatrix, net: MulticastNetwork) -> dict[int, int]:
    """[m_e]_{e in Out(s)} = [m'_1 ... m'_omega] G_s."""
    w = net.omega
    if len(msg) != w or Gs.nrows % w or Gs.ncols % w:
        raise ValueError(f"message has {len(msg)} rows, G_s is {Gs.shape}, omega={w}")
    J, L = Gs.nrows // w, Gs.ncols // w
    for i, m in enumerate(msg):
        _check_width(m, J, f"message row {i}")
    out = Gs.vecmul(_join(msg, J))
    return dict(zip(net.out_edges(net.source), _split(out, L, w)))


def propagate(net: MulticastNetwork, ccode: CircularShiftCode, units: Mapping[int, int]) -> dict[int, int]:
    """Forward every edge in topological order; m_d K_{d,e} is a XOR of rotations of m_d."""
    L = ccode.L
    src = net.out_edges(net.source)
    missing = [e for e in src if e not in units]
    if missing:
        raise ValueError(f"no data for source edges {missing}")
    out = {e: units[e] for e in src}
    kernels = ccode.scalar.kernels
    for e in net.edge_order:
        if e in out:
            continue
        acc = 0
        for d in net.in_edges(net.edge[e].tail):
            k = kernels.get((d, e), 0)
            m = out[d]
            j = 0
            while k:
                if k & 1:
                    acc ^= rotl(m, j, L)
                k >>= 1
                j += 1
        out[e] = acc
    return out


def propagate_dense(net: MulticastNetwork, ccode: CircularShiftCode, units: Mapping[int, int]) -> dict[int, int]:
    """Reference: m_e = [m_d]_{Out(s)} F_e with the binary global kernels."""
    L = ccode.L
    src = _join([units[e] for e in net.out_edges(net.source)], L)
    return {e: F.vecmul(src) for e, F in ccode.global_kernels.items()}


def decode(t: str, units: Mapping[int, int], D_t: BinMatrix, net: MulticastNetwork) -> list[int]:
    """[m_e]_{e in In(t)} D_t, split back into omega rows."""
    ins = net.in_edges(t)
    w = net.omega
    if D_t.nrows % len(ins) or D_t.ncols % w:
        raise ValueError(f"decoder of shape {D_t.shape} does not fit {len(ins)} inputs / omega={w}")
    L, J = D_t.nrows // len(ins), D_t.ncols // w
    for e in ins:
        _check_width(units[e], L, f"unit on edge {e}")
    return _split(D_t.vecmul(_join([units[e] for e in ins], L)), J, w)


def transmit(net: MulticastNetwork, ccode: CircularShiftCode, msg: Sequence[int]) -> dict[str, list[int]]:
    """Decoded message at every receiver."""
    units = propagate(net, ccode, encode_source(msg, ccode.Gs, net))
    return {t: decode(t, units, ccode.decoders[t], net) for t in net.receivers}


@dataclass
class ShiftStats:
    shifts: dict[int, int] = field(default_factory=dict)
    xors: dict[int, int] = field(default_factory=dict)

    @property
    def total_shifts(self) -> int:
        return sum(self.shifts.values())

    @property
    def total_xors(self) -> int:
        return sum(self.xors.values())


def shift_op_count(ccode: CircularShiftCode, net: MulticastNetwork) -> ShiftStats:
    """Per-edge rotations and L-bit XORs spent by ``propagate`` on one message.

    A zero-exponent term is a copy, not a shift; combining c terms costs c - 1 XORs.
    """
    stats = ShiftStats()
    src = set(net.out_edges(net.source))
    for e in net.edge_order:
        if e in src:
            continue
        terms = shifts = 0
        for d in net.in_edges(net.edge[e].tail):
            k = ccode.scalar.kernel(d, e)
            terms += k.bit_count()
            shifts += k.bit_count() - (k & 1)
        stats.shifts[e] = shifts
        stats.xors[e] = max(terms - 1, 0)
    return stats
