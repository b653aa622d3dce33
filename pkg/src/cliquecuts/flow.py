"""Exact max-flow machinery for multigraphs.

Parallel edges between the same endpoints are handled as one arc with
integer capacity and decomposed back to distinct edge ids afterwards.
Undirected edges become two opposite arcs sharing residual bookkeeping.
Loops never reach the solver.  All scans run in ascending edge-id order, so
every returned value, cut side and trail is deterministic.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graphs import GraphError, MultiGraph


@dataclass(frozen=True)
class CutResult:
    value: int
    side: frozenset


@dataclass(frozen=True)
class Trail:
    start: int
    end: int
    edges: tuple[int, ...]


@dataclass(frozen=True)
class PathSystem:
    trails: tuple[Trail, ...]

    def __len__(self) -> int:
        return len(self.trails)

    def all_edges(self) -> list[int]:
        out: list[int] = []
        for t in self.trails:
            out.extend(t.edges)
        return out


class FanInfeasible(GraphError):
    def __init__(self, cut: CutResult, required: int):
        super().__init__(
            f"fan infeasible: the cut at {sorted(cut.side)} "
            f"(size {cut.value}) blocks {required} required trails"
        )
        self.cut = cut
        self.required = required


class _Net:
    """Dinic solver.  Arcs are stored in pairs; arc a's reverse is a ^ 1."""

    def __init__(self):
        self._index: dict[int, int] = {}
        self._verts: list[int] = []
        self._adj: list[list[int]] = []
        self._to: list[int] = []
        self._res: list[int] = []
        self._init: list[int] = []
        self._ids: list[tuple[int, ...]] = []

    def vertex(self, v: int) -> int:
        idx = self._index.get(v)
        if idx is None:
            idx = len(self._verts)
            self._index[v] = idx
            self._verts.append(v)
            self._adj.append([])
        return idx

    def add_group(self, u: int, v: int, cap_uv: int, cap_vu: int,
                  ids: tuple[int, ...]) -> None:
        ui, vi = self.vertex(u), self.vertex(v)
        a = len(self._to)
        self._to.append(vi)
        self._res.append(cap_uv)
        self._init.append(cap_uv)
        self._ids.append(ids)
        self._to.append(ui)
        self._res.append(cap_vu)
        self._init.append(cap_vu)
        self._ids.append(ids)
        self._adj[ui].append(a)
        self._adj[vi].append(a + 1)

    def _levels(self, s: int) -> list[int]:
        level = [-1] * len(self._verts)
        level[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for a in self._adj[x]:
                if self._res[a] > 0 and level[self._to[a]] < 0:
                    level[self._to[a]] = level[x] + 1
                    queue.append(self._to[a])
        return level

    def _push(self, x: int, t: int, limit: int, level: list[int],
              it: list[int]) -> int:
        if x == t:
            return limit
        while it[x] < len(self._adj[x]):
            a = self._adj[x][it[x]]
            y = self._to[a]
            if self._res[a] > 0 and level[y] == level[x] + 1:
                got = self._push(y, t, min(limit, self._res[a]), level, it)
                if got > 0:
                    self._res[a] -= got
                    self._res[a ^ 1] += got
                    return got
            it[x] += 1
        return 0

    def max_flow(self, s_id: int, t_id: int) -> int:
        s, t = self.vertex(s_id), self.vertex(t_id)
        total = 0
        big = sum(self._init) + 1
        while True:
            level = self._levels(s)
            if level[t] < 0:
                return total
            it = [0] * len(self._verts)
            while True:
                got = self._push(s, t, big, level, it)
                if got == 0:
                    break
                total += got

    def cut_side(self, s_id: int) -> frozenset:
        s = self.vertex(s_id)
        seen = [False] * len(self._verts)
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for a in self._adj[x]:
                y = self._to[a]
                if self._res[a] > 0 and not seen[y]:
                    seen[y] = True
                    queue.append(y)
        return frozenset(self._verts[i] for i, ok in enumerate(seen) if ok)

    def _flow_units(self):
        """Yield one (edge id or None, tail vertex, head vertex) per unit of
        net flow; ids within a bundle are consumed in ascending order."""
        for a in range(0, len(self._to), 2):
            for arc in (a, a + 1):
                pushed = self._init[arc] - self._res[arc]
                if pushed <= 0:
                    continue
                head = self._verts[self._to[arc]]
                tail = self._verts[self._to[arc ^ 1]]
                ids = self._ids[arc]
                for k in range(pushed):
                    yield (ids[k] if ids else None, tail, head)

    def extract_trails(self, s_id: int, t_id: int, count: int) -> list[Trail]:
        """Walk `count` edge-disjoint trails out of the flow, smallest edge id
        first at every step.  Leftover flow (cycles) is discarded.  A final
        hop on an id-less auxiliary arc is stripped from the trail."""
        outgoing: dict[int, list[tuple[int | None, int]]] = {}
        for eid, tail, head in self._flow_units():
            outgoing.setdefault(tail, []).append((eid, head))
        for units in outgoing.values():
            units.sort(key=lambda u: (u[0] is None, u[0] if u[0] is not None else 0))
        cursor: dict[int, int] = {v: 0 for v in outgoing}
        trails = []
        for _ in range(count):
            here = s_id
            prev = here
            last_eid: int | None = None
            edges: list[int] = []
            while here != t_id:
                eid, nxt = outgoing[here][cursor[here]]
                cursor[here] += 1
                prev = here
                last_eid = eid
                here = nxt
                if eid is not None:
                    edges.append(eid)
            end = prev if last_eid is None else t_id
            trails.append(Trail(s_id, end, tuple(edges)))
        return trails


def _grouped(g: MultiGraph):
    """Non-loop edges bundled by endpoint pair, in ascending smallest-id
    order; undirected pairs are unordered."""
    groups: dict[tuple[int, int], list[int]] = {}
    for e in g.edges:
        if e.is_loop():
            continue
        key = (e.tail, e.head)
        groups.setdefault(key, []).append(e.id)
    return groups


def _net_for(g: MultiGraph) -> _Net:
    net = _Net()
    for (u, v), ids in _grouped(g).items():
        bundle = tuple(sorted(ids))
        if g.directed:
            net.add_group(u, v, len(bundle), 0, bundle)
        else:
            net.add_group(u, v, len(bundle), len(bundle), bundle)
    return net


def _check_pair(g: MultiGraph, u: int, v: int) -> None:
    if u not in g.vertex_set or v not in g.vertex_set:
        raise GraphError(f"unknown vertex in pair ({u}, {v})")
    if u == v:
        raise GraphError("connectivity queries need two distinct vertices")


def edge_connectivity(g: MultiGraph, u: int, v: int) -> int:
    """Maximum number of pairwise edge-disjoint u-v trails (= minimum u-v
    cut).  Undirected graphs; 0 when u and v are in different components."""
    if g.directed:
        raise GraphError("edge_connectivity applies to undirected graphs")
    _check_pair(g, u, v)
    net = _net_for(g)
    net.vertex(u), net.vertex(v)
    return net.max_flow(u, v)


def directed_edge_connectivity(d: MultiGraph, u: int, v: int) -> int:
    """Maximum number of edge-disjoint directed u->v trails."""
    if not d.directed:
        raise GraphError("directed_edge_connectivity applies to digraphs")
    _check_pair(d, u, v)
    net = _net_for(d)
    net.vertex(u), net.vertex(v)
    return net.max_flow(u, v)


def min_cut(g: MultiGraph, u: int, v: int) -> CutResult:
    """A minimum u-v edge cut; the side is the residual-reachable set around
    u, so the result is deterministic."""
    if g.directed:
        raise GraphError("min_cut applies to undirected graphs; "
                         "use directed_min_cut")
    _check_pair(g, u, v)
    net = _net_for(g)
    net.vertex(u), net.vertex(v)
    value = net.max_flow(u, v)
    return CutResult(value, net.cut_side(u))


def directed_min_cut(d: MultiGraph, u: int, v: int) -> CutResult:
    if not d.directed:
        raise GraphError("directed_min_cut applies to digraphs")
    _check_pair(d, u, v)
    net = _net_for(d)
    net.vertex(u), net.vertex(v)
    value = net.max_flow(u, v)
    return CutResult(value, net.cut_side(u))


def menger_fan(g: MultiGraph, source: int, demands: dict[int, int]) -> PathSystem:
    """Edge-disjoint trails from `source`, exactly demands[v] of them ending
    at each demanded vertex.

    Solved as one flow to an auxiliary vertex joined to each demanded vertex
    by demands[v] parallel edges; the auxiliary vertex never appears in the
    output.  Raises FanInfeasible with the blocking cut when the demands
    cannot be met.
    """
    if g.directed:
        raise GraphError("menger_fan applies to undirected graphs")
    if source not in g.vertex_set:
        raise GraphError(f"unknown vertex {source}")
    total = 0
    for v, dem in demands.items():
        if v not in g.vertex_set:
            raise GraphError(f"unknown vertex {v}")
        if v == source:
            raise GraphError("source cannot carry a demand")
        if dem < 0:
            raise GraphError("demands must be non-negative")
        total += dem
    if total == 0:
        return PathSystem(())
    aux = max(g.vertices) + 1
    net = _net_for(g)
    net.vertex(source)
    for v in sorted(demands):
        if demands[v] > 0:
            net.add_group(v, aux, demands[v], 0, ())
    value = net.max_flow(source, aux)
    if value < total:
        side = net.cut_side(source)
        crossing = sum(
            1 for e in g.edges
            if not e.is_loop() and (e.tail in side) != (e.head in side)
        )
        raise FanInfeasible(CutResult(crossing, side), total)
    return PathSystem(tuple(net.extract_trails(source, aux, total)))
