"""Circular-shift linear network codes over odd block lengths."""

from .builder import (CandidatePool, FlowPathBuilder, SelectionExhausted, construct,
                      enumerate_pool, feasibility)
from .circcode import CircularShiftCode, build_solution, induce, source_matrix
from .gfpoly import FieldContext, build_field
from .linalg import BinMatrix, FieldMatrix
from .netmodel import (MulticastNetwork, NetworkError, butterfly_network, combination_network,
                       four_node_network)
from .scalarcode import ScalarCode, solution_set
from .simulate import decode, encode_source, propagate, transmit

__all__ = [
    "BinMatrix", "CandidatePool", "CircularShiftCode", "FieldContext", "FieldMatrix",
    "FlowPathBuilder", "MulticastNetwork", "NetworkError", "ScalarCode", "SelectionExhausted",
    "build_field", "build_solution", "butterfly_network", "combination_network", "construct",
    "decode", "encode_source", "enumerate_pool", "feasibility", "four_node_network", "induce",
    "propagate", "solution_set", "source_matrix", "transmit",
]
