"""Worked configurations shared by several test modules."""

from circshift.gfpoly import build_field, poly_from_bits
from circshift.netmodel import MulticastNetwork, combination_network, four_node_network
from circshift.scalarcode import ScalarCode

# rows written column 0 first
G7_PRINTED = ["1110100", "0011101", "0111010"]
G15_PRINTED = [
    "111101011001000",
    "000111101011001",
    "001111010110010",
    "011110101100100",
]

COMBINATION_PATHS = {
    "t1": [("e1", "e3", "e11"), ("e2", "e4", "e21")],
    "t2": [("e1", "e3", "e12"), ("e2", "e5", "e32")],
    "t3": [("e1", "e3", "e13"), ("e2", "e6", "e43")],
    "t4": [("e1", "e4", "e24"), ("e2", "e5", "e34")],
    "t5": [("e1", "e4", "e25"), ("e2", "e6", "e45")],
    "t6": [("e1", "e5", "e36"), ("e2", "e6", "e46")],
}


def four_node_code(reexpressed: bool = False):
    """L = 9 code on the four-node network; the second form rewrites 1+x^3, 1+x^6 as x^6, x^3."""
    ctx = build_field(9)
    net = four_node_network()
    k24, k46 = (1 << 6, 1 << 3) if reexpressed else (0b1001, 0b1000001)
    code = ScalarCode.from_names(ctx, net, {
        ("e1", "e3"): 1, ("e1", "e4"): 1, ("e3", "e5"): 1,
        ("e2", "e4"): k24, ("e4", "e6"): k46,
    })
    return ctx, net, code


def two_hop_network() -> MulticastNetwork:
    """s => u => t with two parallel edges per hop."""
    return MulticastNetwork.from_edges(
        "s", ["t"], [("s", "u"), ("s", "u"), ("u", "t"), ("u", "t")], nodes=["s", "u", "t"])


def receiver_1_k_code():
    """Receiver sees [[1, 1], [0, 1+x+x^2+x^4]] at L = 7."""
    ctx = build_field(7)
    net = two_hop_network()
    code = ScalarCode(ctx, {(1, 3): 1, (1, 4): 1, (2, 4): poly_from_bits("1110100")})
    return ctx, net, code


def combination_paths(net):
    return {t: [tuple(net.edge_by_name(n) for n in p) for p in ps] for t, ps in COMBINATION_PATHS.items()}


def combination_setup():
    ctx = build_field(7)
    net = combination_network(4).validate()
    return ctx, net
