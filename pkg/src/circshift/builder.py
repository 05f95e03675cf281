"""Flow-path construction of polynomial kernels solving the network at every alpha^r, r coprime to L.

The construction walks the edges in topological order and, per receiver,
keeps a frontier of omega edges (one per path) together with dual vectors
for every coset representative r_j of R.  Each local kernel is picked once
and never revised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Callable, Mapping, Sequence

from .gfpoly import FieldContext, cyclic_mul, poly_str
from .linalg import FieldMatrix
from .netmodel import MulticastNetwork, NetworkError, PathSet
from .scalarcode import ScalarCode

DEFAULT_POOL_CAP = 1 << 20


class PoolTooLarge(ValueError):
    pass


class SelectionExhausted(RuntimeError):
    """No candidate kernel avoids every forbidden value."""

    def __init__(self, edge: int, d: int, forbidden: list[frozenset[int]], ctx: FieldContext):
        self.edge = edge
        self.d = d
        self.forbidden = forbidden
        sets = "; ".join(
            f"r={r}: {{{', '.join(sorted(ctx.element_str(a) for a in A))}}}"
            for r, A in zip(ctx.R_reps, forbidden))
        super().__init__(f"no kernel for pair ({d}, {edge}) avoids the forbidden sets [{sets}]")


class InvariantViolation(AssertionError):
    pass


def scan_order(L: int, delta: int):
    """Polynomials of weight <= delta: by weight, then support in the exponent order x, x^2, ..., x^(L-1), 1."""
    exps = list(range(1, L)) + [0]
    for w in range(delta + 1):
        for support in combinations(exps, w):
            yield sum(1 << e for e in support)


@dataclass(frozen=True)
class CandidatePool:
    ctx: FieldContext
    delta: int
    polys: tuple[int, ...]

    @cached_property
    def K_delta(self) -> int:
        """Number of distinct values k(alpha)."""
        return len(self.classes)

    @cached_property
    def classes(self) -> dict[int, int]:
        """Evaluation at alpha -> first polynomial in scan order with that value."""
        out: dict[int, int] = {}
        for p in self.polys:
            out.setdefault(self.ctx.eval_at_alpha_power(p, 1), p)
        return out

    @cached_property
    def rep_values(self) -> list[tuple[int, ...]]:
        """k(alpha^r_j) for every pool member, one entry per coset representative of R."""
        ev = self.ctx.eval_at_alpha_power
        reps = self.ctx.R_reps
        return [tuple(ev(p, r) for r in reps) for p in self.polys]


def pool_size(L: int, delta: int) -> int:
    return sum(comb(L, i) for i in range(delta + 1))


def enumerate_pool(ctx: FieldContext, delta: int, cap: int = DEFAULT_POOL_CAP) -> CandidatePool:
    if not 1 <= delta <= ctx.L - 1:
        raise ValueError(f"delta must lie in [1, {ctx.L - 1}], got {delta}")
    size = pool_size(ctx.L, delta)
    if size > cap:
        raise PoolTooLarge(f"pool of {size} polynomials exceeds the cap of {cap}")
    return CandidatePool(ctx, delta, tuple(scan_order(ctx.L, delta)))


@dataclass(frozen=True)
class Feasibility:
    bound: int  # floor(m_L * K_delta / phi(L))
    receivers: int

    @property
    def guaranteed(self) -> bool:
        return self.bound > self.receivers

    @property
    def verdict(self) -> str:
        return "guaranteed" if self.guaranteed else "unguaranteed"


def feasibility(ctx: FieldContext, delta: int, receivers: int, K_delta: int | None = None) -> Feasibility:
    """Sufficient condition only; construction is attempted either way."""
    if K_delta is None:
        K_delta = enumerate_pool(ctx, delta).K_delta
    return Feasibility((ctx.m * K_delta) // ctx.phi, receivers)


@dataclass
class SelectionRecord:
    edge: int
    d: int
    forbidden: list[frozenset[int]]
    poly: int


@dataclass
class BuilderState:
    paths: dict[str, PathSet]
    frontier: dict[str, list[int]]
    # (t, e') -> one omega-vector per coset representative
    duals: dict[tuple[str, int], list[list[int]]]
    f_sym: dict[int, list[int]]
    f_val: dict[int, list[list[int]]]
    kernels: dict[tuple[int, int], int] = field(default_factory=dict)
    selections: list[SelectionRecord] = field(default_factory=list)
    done: list[int] = field(default_factory=list)


def _dot(ctx: FieldContext, u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc ^= ctx.mul(a, b)
    return acc


def _axpy(ctx: FieldContext, c: int, x: Sequence[int], y: Sequence[int]) -> list[int]:
    """y + c*x."""
    if not c:
        return list(y)
    return [b ^ ctx.mul(c, a) for a, b in zip(x, y)]


def check_invariants(state: BuilderState, net: MulticastNetwork, ctx: FieldContext) -> list[str]:
    """Re-derive the rank and duality invariants from the symbolic kernels; return violations."""
    problems = []
    w = net.omega
    for t, front in state.frontier.items():
        for j, r in enumerate(ctx.R_reps):
            vals = {e: [ctx.eval_at_alpha_power(p, r) for p in state.f_sym[e]] for e in front}
            M = FieldMatrix(ctx, [list(row) for row in zip(*(vals[e] for e in front))])
            if M.rank() != w:
                problems.append(f"rank of frontier of {t} at r={r} is {M.rank()} < {w}")
            for e1 in front:
                for e2 in front:
                    got = _dot(ctx, vals[e1], state.duals[(t, e2)][j])
                    if got != int(e1 == e2):
                        problems.append(
                            f"f_{e1}(a^{r}).w[{t},{e2}] = {ctx.element_str(got)}, expected {int(e1 == e2)}")
    return problems


class FlowPathBuilder:
    """Deterministic flow-path kernel assignment.

    ``paths`` overrides the per-receiver edge-disjoint paths (edge ids);
    ``check`` re-verifies the invariants after every edge; ``on_edge`` is
    called with ``(state, edge_id)`` after each edge iteration.
    """

    def __init__(self, net: MulticastNetwork, ctx: FieldContext, delta: int,
                 paths: Mapping[str, Sequence[Sequence[int]]] | None = None,
                 pool: CandidatePool | None = None, check: bool = False,
                 on_edge: Callable[[BuilderState, int], None] | None = None):
        self.net = net
        self.ctx = ctx
        self.delta = delta
        self.pool = pool if pool is not None else enumerate_pool(ctx, delta)
        if self.pool.delta != delta or self.pool.ctx.L != ctx.L:
            raise ValueError("pool was built for different parameters")
        self.check = check
        self.on_edge = on_edge
        self.paths = self._path_sets(paths)
        self.state: BuilderState | None = None

    def _path_sets(self, paths) -> dict[str, PathSet]:
        net = self.net
        if paths is None:
            return {t: net.edge_disjoint_paths(t) for t in net.receivers}
        out = {}
        src = set(net.out_edges(net.source))
        for t in net.receivers:
            ps = tuple(tuple(p) for p in paths[t])
            if len(ps) != net.omega:
                raise NetworkError(f"{t!r} needs {net.omega} paths, got {len(ps)}")
            flat = [e for p in ps for e in p]
            if len(flat) != len(set(flat)):
                raise NetworkError(f"paths for {t!r} are not edge-disjoint")
            for p in ps:
                if p[0] not in src or net.edge[p[-1]].head != t:
                    raise NetworkError(f"path {p} does not run from Out(s) to {t!r}")
                for a, b in zip(p, p[1:]):
                    if net.edge[a].head != net.edge[b].tail:
                        raise NetworkError(f"path {p} is broken between {a} and {b}")
            out[t] = PathSet(t, ps)
        return out

    def run(self) -> ScalarCode:
        net, ctx = self.net, self.ctx
        w = net.omega
        nreps = len(ctx.R_reps)
        src = net.out_edges(net.source)
        unit = [[int(i == r) for r in range(w)] for i in range(w)]
        state = BuilderState(
            paths=self.paths,
            frontier={t: list(src) for t in net.receivers},
            duals={(t, e): [list(unit[i]) for _ in range(nreps)]
                   for t in net.receivers for i, e in enumerate(src)},
            f_sym={e: list(unit[i]) for i, e in enumerate(src)},
            f_val={e: [list(unit[i]) for _ in range(nreps)] for i, e in enumerate(src)},
        )
        self.state = state
        if self.check:
            self._assert_invariants()
        pairs = {t: ps.pairs() for t, ps in self.paths.items()}
        for v in net.node_order:
            if v == net.source:
                continue
            for e in net.out_edges(v):
                ins = net.in_edges(v)
                T_d = {d: [t for t in net.receivers if (d, e) in pairs[t]] for d in ins}
                self._process_edge(e, [d for d in ins if T_d[d]], T_d)
                state.done.append(e)
                if self.check:
                    self._assert_invariants()
                if self.on_edge is not None:
                    self.on_edge(state, e)
        return ScalarCode(ctx, dict(state.kernels), self.delta)

    def _assert_invariants(self) -> None:
        problems = check_invariants(self.state, self.net, self.ctx)
        if problems:
            raise InvariantViolation("; ".join(problems))

    def _process_edge(self, e: int, active: list[int], T_d: dict[str, list]) -> None:
        ctx, state = self.ctx, self.state
        w = self.net.omega
        nreps = len(ctx.R_reps)
        L = ctx.L
        if not active:
            state.f_sym[e] = [0] * w
            state.f_val[e] = [[0] * w for _ in range(nreps)]
            return

        d1 = active[0]
        state.kernels[(d1, e)] = 1
        f_sym = list(state.f_sym[d1])
        f_val = [list(v) for v in state.f_val[d1]]

        for i in range(1, len(active)):
            d = active[i]
            if all(_dot(ctx, f_val[j], state.duals[(t, d)][j])
                   for t in T_d[d] for j in range(nreps)):
                continue
            forbidden = []
            for j in range(nreps):
                A = set()
                for dp in active[:i]:
                    for t in T_d[dp]:
                        den = _dot(ctx, f_val[j], state.duals[(t, dp)][j])
                        if not den:
                            raise InvariantViolation(f"f.w vanished for {t} on pair ({dp}, {e})")
                        A.add(ctx.div(_dot(ctx, state.f_val[d][j], state.duals[(t, dp)][j]), den))
                for t in T_d[d]:
                    den = _dot(ctx, f_val[j], state.duals[(t, d)][j])
                    if den:
                        A.add(ctx.div(_dot(ctx, state.f_val[d][j], state.duals[(t, d)][j]), den))
                forbidden.append(frozenset(A))
            pick = self._select(forbidden)
            if pick is None:
                raise SelectionExhausted(e, d, forbidden, ctx)
            k, kvals = pick
            state.kernels[(d, e)] = k
            state.selections.append(SelectionRecord(e, d, forbidden, k))
            f_sym = [a ^ cyclic_mul(k, b, L) for a, b in zip(f_sym, state.f_sym[d])]
            f_val = [_axpy(ctx, kvals[j], state.f_val[d][j], f_val[j]) for j in range(nreps)]

        state.f_sym[e] = f_sym
        state.f_val[e] = f_val
        for d in active:
            for t in T_d[d]:
                front = state.frontier[t]
                front[front.index(d)] = e
                old = state.duals.pop((t, d))
                new = []
                for j in range(nreps):
                    c = _dot(ctx, f_val[j], old[j])
                    if not c:
                        raise InvariantViolation(f"f_{e}.w vanished for {t} at r={ctx.R_reps[j]}")
                    cinv = ctx.inv(c)
                    new.append([ctx.mul(cinv, a) for a in old[j]])
                state.duals[(t, e)] = new
                for dp in front:
                    if dp == e:
                        continue
                    wd = state.duals[(t, dp)]
                    for j in range(nreps):
                        c = _dot(ctx, f_val[j], wd[j])
                        wd[j] = _axpy(ctx, c, new[j], wd[j])

    def _select(self, forbidden: list[frozenset[int]]):
        inv = self.ctx.inv
        for p, vals in zip(self.pool.polys, self.pool.rep_values):
            if all(v and inv(v) not in A for v, A in zip(vals, forbidden)):
                return p, vals
        return None


def construct(net: MulticastNetwork, ctx: FieldContext, delta: int, **kwargs) -> ScalarCode:
    """Kernels of weight <= delta solving the network at alpha^r for every r in R."""
    return FlowPathBuilder(net, ctx, delta, **kwargs).run()


def describe_kernels(code: ScalarCode, net: MulticastNetwork) -> list[str]:
    return [f"k[{net.edge[d].name},{net.edge[e].name}] = {poly_str(k)}"
            for (d, e), k in sorted(code.kernels.items(), key=lambda kv: (kv[0][1], kv[0][0]))]
