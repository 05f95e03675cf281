"""JSON network and code files.  Bit-strings are written lowest degree (or column) first."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .circcode import CircularShiftCode, induce
from .gfpoly import build_field, poly_from_bits, poly_to_bits
from .linalg import BinMatrix, kron
from .netmodel import Edge, MulticastNetwork, NetworkError
from .scalarcode import ScalarCode

BUNDLED = ("fig1", "combination-4-2", "butterfly")


class FormatError(ValueError):
    pass


def network_from_dict(obj: dict[str, Any]) -> MulticastNetwork:
    try:
        edges = tuple(Edge(int(e["id"]), str(e["tail"]), str(e["head"]), e.get("label"))
                      for e in obj["edges"])
        net = MulticastNetwork(tuple(obj["nodes"]), tuple(sorted(edges, key=lambda e: e.id)),
                               obj["source"], tuple(obj["receivers"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed network file: {exc!r}") from exc
    return net.validate()


def network_to_dict(net: MulticastNetwork) -> dict[str, Any]:
    edges = []
    for e in net.edges:
        item = {"id": e.id, "tail": e.tail, "head": e.head}
        if e.label:
            item["label"] = e.label
        edges.append(item)
    return {"nodes": list(net.nodes), "source": net.source,
            "receivers": list(net.receivers), "edges": edges}


def bundled_network(name: str) -> MulticastNetwork:
    if name not in BUNDLED:
        raise KeyError(f"no bundled network {name!r}; choose from {', '.join(BUNDLED)}")
    text = resources.files("circshift.data").joinpath(f"{name}.json").read_text()
    return network_from_dict(json.loads(text))


def load_network(path: str | Path) -> MulticastNetwork:
    """Read a network file; a bare bundled name such as ``butterfly`` also works."""
    p = Path(path)
    if not p.exists():
        stem = p.name[:-5] if p.name.endswith(".json") else p.name
        if stem in BUNDLED and p.parent == Path("."):
            return bundled_network(stem)
        raise FileNotFoundError(str(path))
    try:
        obj = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    return network_from_dict(obj)


def code_to_dict(ccode: CircularShiftCode) -> dict[str, Any]:
    ctx = ccode.ctx
    L = ctx.L
    return {
        "L": L,
        "delta": ccode.scalar.delta,
        "modulus": poly_to_bits(ctx.modulus, ctx.m + 1),
        "kernels": [{"d": d, "e": e, "poly": poly_to_bits(k, L)}
                    for (d, e), k in sorted(ccode.scalar.kernels.items(), key=lambda kv: (kv[0][1], kv[0][0]))],
        "J_set": list(ccode.J_set),
        "G": ccode.G.to_bitstrings() if ccode.G is not None else [],
        "decoders": {t: D.to_bitstrings() for t, D in ccode.decoders.items()},
    }


def code_from_dict(obj: dict[str, Any], net: MulticastNetwork) -> CircularShiftCode:
    """Rebuild a code exactly as stored; nothing is re-derived or checked beyond shapes."""
    try:
        L = int(obj["L"])
        delta = obj.get("delta")
        ctx = build_field(L)
        modulus = poly_from_bits(obj["modulus"])
        if modulus != ctx.modulus:
            raise FormatError(f"modulus {obj['modulus']} differs from the one used for L={L}")
        kernels = {(int(k["d"]), int(k["e"])): poly_from_bits(k["poly"]) for k in obj["kernels"]}
        scalar = ScalarCode(ctx, kernels, None if delta is None else int(delta))
        scalar.check_against(net)
        ccode = induce(scalar, net, [int(j) for j in obj["J_set"]])
        if obj.get("G"):
            G = BinMatrix.from_bitstrings(obj["G"])
            if G.shape != (ccode.J, L):
                raise FormatError(f"G is {G.shape}, expected {(ccode.J, L)}")
            ccode.G, ccode.Gs = G, kron(BinMatrix.identity(net.omega), G)
        ccode.decoders = {t: BinMatrix.from_bitstrings(rows) for t, rows in obj.get("decoders", {}).items()}
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed code file: {exc!r}") from exc
    except NetworkError:
        raise
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc
    return ccode


def dump_code(ccode: CircularShiftCode, path: str | Path) -> None:
    Path(path).write_text(json.dumps(code_to_dict(ccode), indent=1) + "\n")


def load_code(path: str | Path, net: MulticastNetwork) -> CircularShiftCode:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    return code_from_dict(obj, net)
