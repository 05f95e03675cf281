import random

import numpy as np
import pytest

from circshift.gfpoly import build_field
from circshift.netmodel import MulticastNetwork, NetworkError
from circshift.scalarcode import ScalarCode


def np_rank_gf2(a) -> int:
    """Plain Gaussian elimination on a uint8 array; independent of the package's bit tricks."""
    a = (np.array(a, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = np.nonzero(a[r:, c])[0]
        if piv.size == 0:
            continue
        p = r + piv[0]
        a[[r, p]] = a[[p, r]]
        hit = np.nonzero(a[:, c])[0]
        for i in hit:
            if i != r:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def np_circulant(k: int, L: int) -> np.ndarray:
    """k(C_L) built from the definition: C_L[i, (i+1) % L] = 1, powers summed."""
    C = np.zeros((L, L), dtype=np.int64)
    for i in range(L):
        C[i, (i + 1) % L] = 1
    out = np.zeros((L, L), dtype=np.int64)
    P = np.eye(L, dtype=np.int64)
    for j in range(L):
        if (k >> j) & 1:
            out = (out + P) % 2
        P = (P @ C) % 2
    return out


def np_global_kernels(code: ScalarCode, net: MulticastNetwork) -> dict[int, np.ndarray]:
    """F_e as numpy arrays, propagated hop by hop with dense products."""
    L, w = code.ctx.L, net.omega
    F = {}
    for i, e in enumerate(net.out_edges(net.source)):
        blk = np.zeros((w * L, L), dtype=np.int64)
        blk[i * L:(i + 1) * L] = np.eye(L, dtype=np.int64)
        F[e] = blk
    for e in net.edge_order:
        if e in F:
            continue
        acc = np.zeros((w * L, L), dtype=np.int64)
        for d in net.in_edges(net.edge[e].tail):
            k = code.kernel(d, e)
            if k:
                acc = (acc + F[d] @ np_circulant(k, L)) % 2
        F[e] = acc
    return F


def random_network(rng: random.Random, omega: int, n_inner: int | None = None,
                   n_receivers: int | None = None, tries: int = 200) -> MulticastNetwork:
    """Random layered DAG satisfying the multicast assumptions (retry until valid)."""
    for _ in range(tries):
        n = n_inner or rng.randint(2, 5)
        nr = n_receivers or rng.randint(1, 3)
        inner = [f"v{i}" for i in range(n)]
        recv = [f"t{i}" for i in range(nr)]
        edges = [("s", rng.choice(inner[: max(1, n // 2)])) for _ in range(omega)]
        for i in range(n):
            for _ in range(rng.randint(omega, omega + 2)):
                if i + 1 < n and rng.random() < 0.7:
                    edges.append((inner[i], inner[rng.randint(i + 1, n - 1)]))
        for t in recv:
            for _ in range(omega):
                edges.append((rng.choice(inner), t))
        net = MulticastNetwork.from_edges("s", recv, edges, nodes=["s", *inner, *recv])
        try:
            return net.validate()
        except NetworkError:
            continue
    raise RuntimeError("could not draw a valid network")


def random_code(rng: random.Random, ctx, net: MulticastNetwork, density: float = 0.8) -> ScalarCode:
    L = ctx.L
    kernels = {}
    for pair in net.adjacent_pairs():
        if rng.random() < density:
            kernels[pair] = rng.getrandbits(L)
    return ScalarCode(ctx, kernels)


@pytest.fixture(scope="session")
def fields():
    cache = {}

    def get(L):
        if L not in cache:
            cache[L] = build_field(L)
        return cache[L]
    return get
