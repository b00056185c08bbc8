"""Planar multigraphs with rotation systems, cycles, spanning trees and P_{2n+1}.

Vertex and edge ids are dense integers.  An *edge-end* is a pair
``(edge_id, end)`` where ``end == 0`` is the tail (first endpoint) and
``end == 1`` the head.  The rotation at a vertex lists its edge-ends in
counter-clockwise order.
"""
from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

End = Tuple[int, int]


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def endpoint(self, end: int) -> int:
        return self.head if end else self.tail


def trace_faces(rotation: Dict, ends_of: Dict) -> List[List[Tuple[int, int]]]:
    """Face traversal of a rotation system.

    ``rotation`` maps node -> CCW tuple of (link, end); ``ends_of`` maps
    link -> (tail node, head node).  Returns faces as lists of darts
    ``(link, direction)`` where direction +1 runs tail->head.  A face is
    walked with the face on the right of every dart.
    """
    succ = {}
    for node, ends in rotation.items():
        k = len(ends)
        for i, h in enumerate(ends):
            succ[h] = ends[(i + 1) % k]
    seen = set()
    faces = []
    for link in sorted(ends_of):
        for d in (1, -1):
            if (link, d) in seen:
                continue
            face = []
            dart = (link, d)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                lk, dd = dart
                arrival = (lk, 1 if dd == 1 else 0)
                nxt = succ[arrival]
                dart = (nxt[0], 1 if nxt[1] == 0 else -1)
            faces.append(face)
    return faces


def _components(nodes: Iterable, ends_of: Dict) -> int:
    parent = {v: v for v in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in ends_of.values():
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(v) for v in parent})


@dataclass(frozen=True)
class PlanarGraph:
    """Abstract multigraph together with a rotation system.

    ``sphere`` records that the rotation system is claimed to be a sphere
    embedding (checked with Euler's formula by :meth:`violations`).
    """
    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]
    rotation: Dict[int, Tuple[End, ...]] = field(default_factory=dict)
    sphere: bool = True

    @classmethod
    def from_edges(cls, pairs: Sequence[Tuple[int, int]], vertices=None,
                   rotation=None, sphere=None) -> "PlanarGraph":
        edges = tuple(Edge(i, a, b) for i, (a, b) in enumerate(pairs))
        if vertices is None:
            vertices = sorted({v for e in edges for v in (e.tail, e.head)})
        if rotation is None:
            # edge-ends in id order; only a genuine embedding for simple cases
            rot = defaultdict(list)
            for e in edges:
                rot[e.tail].append((e.id, 0))
                rot[e.head].append((e.id, 1))
            rotation = {v: tuple(rot[v]) for v in vertices}
            sphere = False if sphere is None else sphere
        return cls(tuple(vertices), edges, dict(rotation),
                   True if sphere is None else sphere)

    @cached_property
    def edge_map(self) -> Dict[int, Edge]:
        return {e.id: e for e in self.edges}

    def edge(self, eid: int) -> Edge:
        return self.edge_map[eid]

    @cached_property
    def incidence(self) -> Dict[int, List[End]]:
        inc = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.tail].append((e.id, 0))
            inc[e.head].append((e.id, 1))
        return inc

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def neighbors(self, v: int) -> List[Tuple[int, int]]:
        """(edge id, other endpoint) for every edge-end at ``v``."""
        out = []
        for eid, end in self.incidence[v]:
            e = self.edge_map[eid]
            out.append((eid, e.endpoint(1 - end)))
        return out

    def faces(self) -> List[List[Tuple[int, int]]]:
        return trace_faces(self.rotation,
                           {e.id: (e.tail, e.head) for e in self.edges})

    def component_count(self) -> int:
        return _components(self.vertices, {e.id: (e.tail, e.head) for e in self.edges})

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and self.component_count() == 1

    def violations(self) -> List[str]:
        out = []
        vs = set(self.vertices)
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                out.append(f"edge {e.id} has an unknown endpoint")
        if set(self.rotation) != vs:
            out.append("rotation keys differ from the vertex set")
            return out
        seen = {}
        for v, ends in self.rotation.items():
            if sorted(ends) != sorted(self.incidence.get(v, [])):
                out.append(f"rotation at {v} does not list exactly its edge-ends")
            for h in ends:
                if h in seen:
                    out.append(f"edge-end {h} appears twice")
                seen[h] = v
        if out:
            return out
        if self.sphere:
            # an isolated vertex bounds one face of its own
            f = len(self.faces()) + sum(1 for v in self.vertices if not self.rotation[v])
            c = self.component_count()
            if len(self.vertices) - len(self.edges) + f != 2 * c:
                out.append(
                    f"Euler check failed: V-E+F = "
                    f"{len(self.vertices) - len(self.edges) + f}, expected {2 * c}")
        return out

    # ---- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[e.id, e.tail, e.head] for e in self.edges],
            "rotation": {str(v): [list(h) for h in self.rotation[v]]
                         for v in self.vertices if v in self.rotation},
            "sphere": self.sphere,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PlanarGraph":
        try:
            edges = tuple(Edge(int(i), int(a), int(b)) for i, a, b in data["edges"])
            rotation = {int(v): tuple((int(e), int(s)) for e, s in ends)
                        for v, ends in data.get("rotation", {}).items()}
            return cls(tuple(int(v) for v in data["vertices"]), edges, rotation,
                       bool(data.get("sphere", True)))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed graph document: {exc}") from exc

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "PlanarGraph":
        return cls.from_dict(json.loads(text))


def dumps(doc) -> str:
    """Canonical JSON text used for every file format of the package."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# cycles

@dataclass(frozen=True)
class Cycle:
    """Closed walk given as ``(edge id, direction)`` steps; +1 is tail->head."""
    steps: Tuple[Tuple[int, int], ...]

    def __len__(self):
        return len(self.steps)

    def edges(self) -> Tuple[int, ...]:
        return tuple(e for e, _ in self.steps)

    def direction(self, eid: int) -> int:
        for e, d in self.steps:
            if e == eid:
                return d
        return 0

    def vertices(self, g: PlanarGraph) -> Tuple[int, ...]:
        out = []
        for eid, d in self.steps:
            e = g.edge(eid)
            out.append(e.tail if d == 1 else e.head)
        return tuple(out)

    def start(self, g: PlanarGraph) -> int:
        return self.vertices(g)[0]

    def reversed(self) -> "Cycle":
        return Cycle(tuple((e, -d) for e, d in reversed(self.steps)))

    def canonical(self) -> Tuple[Tuple[int, int], ...]:
        """Least rotation over both orientations; orientation-free key."""
        best = None
        for seq in (self.steps, self.reversed().steps):
            for i in range(len(seq)):
                cand = seq[i:] + seq[:i]
                if best is None or cand < best:
                    best = cand
        return best

    def check(self, g: PlanarGraph) -> List[str]:
        out = []
        if not self.steps:
            return ["empty cycle"]
        verts = self.vertices(g)
        for i, (eid, d) in enumerate(self.steps):
            e = g.edge(eid)
            end_v = e.head if d == 1 else e.tail
            nxt = verts[(i + 1) % len(verts)]
            if end_v != nxt:
                out.append(f"step {i} does not meet step {i + 1}")
        if len(set(verts)) != len(verts):
            out.append("repeated vertex")
        if len(set(self.edges())) != len(self.steps):
            out.append("repeated edge")
        return out


def cycle_from_vertices(g: PlanarGraph, verts: Sequence[int],
                        edge_ids: Optional[Sequence[int]] = None) -> Cycle:
    """Cycle through ``verts`` in order; ``edge_ids`` disambiguates parallels."""
    steps = []
    k = len(verts)
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        if edge_ids is not None:
            e = g.edge(edge_ids[i])
            if (e.tail, e.head) == (a, b):
                steps.append((e.id, 1))
            elif (e.tail, e.head) == (b, a):
                steps.append((e.id, -1))
            else:
                raise GraphError(f"edge {e.id} does not join {a} and {b}")
            continue
        for eid, other in g.neighbors(a):
            if other == b:
                e = g.edge(eid)
                steps.append((eid, 1 if e.tail == a else -1))
                break
        else:
            raise GraphError(f"no edge joins {a} and {b}")
    return Cycle(tuple(steps))


def enumerate_cycles(g: PlanarGraph) -> List[Cycle]:
    """All simple cycles, each once, sorted by canonical form.

    Loops count as 1-cycles and a pair of parallel edges as a 2-cycle.
    """
    order = {v: i for i, v in enumerate(sorted(g.vertices))}
    found = {}
    for s in sorted(g.vertices, key=order.get):
        # cycles whose least vertex is s
        stack = [(s, (), frozenset([s]))]
        while stack:
            v, steps, used = stack.pop()
            for eid, end in g.incidence[v]:
                e = g.edge(eid)
                if steps and eid == steps[-1][0] and not e.is_loop:
                    continue
                w = e.endpoint(1 - end)
                step = (eid, 1 if end == 0 else -1)
                if e.is_loop:
                    if not steps and end == 0:
                        c = Cycle((step,))
                        found.setdefault(c.canonical(), Cycle(c.canonical()))
                    continue
                if w == s:
                    if any(x == eid for x, _ in steps):
                        continue
                    c = Cycle(steps + (step,))
                    found.setdefault(c.canonical(), Cycle(c.canonical()))
                elif w not in used and order[w] > order[s]:
                    stack.append((w, steps + (step,), used | {w}))
    return [found[k] for k in sorted(found)]


def disjoint_cycle_pairs(g: PlanarGraph, cycles: Optional[List[Cycle]] = None):
    """Unordered pairs of vertex-disjoint simple cycles."""
    if cycles is None:
        cycles = enumerate_cycles(g)
    vsets = [frozenset(c.vertices(g)) for c in cycles]
    out = []
    for i, j in combinations(range(len(cycles)), 2):
        if not (vsets[i] & vsets[j]):
            out.append((cycles[i], cycles[j]))
    return out


# ---------------------------------------------------------------------------
# spanning trees

@dataclass(frozen=True)
class SpanningTree:
    edges: frozenset
    root: int

    def check(self, g: PlanarGraph) -> List[str]:
        out = []
        if self.root not in g.incidence:
            out.append("root is not a vertex")
        if len(self.edges) != len(g.vertices) - 1:
            out.append("wrong number of edges")
        sub = {eid: (g.edge(eid).tail, g.edge(eid).head) for eid in self.edges
               if eid in g.edge_map}
        if len(sub) != len(self.edges):
            out.append("unknown edge id")
        elif _components(g.vertices, sub) != 1:
            out.append("not connected / contains a cycle")
        return out

    def degree(self, v: int, g: PlanarGraph) -> int:
        return sum(1 for eid, _ in g.incidence[v] if eid in self.edges)

    def encoding(self) -> Tuple[Tuple[int, ...], int]:
        return tuple(sorted(self.edges)), self.root


def spanning_tree(g: PlanarGraph, strategy: str = "bfs", root: Optional[int] = None):
    """Spanning tree by ``bfs`` or ``dfs``; ``exhaustive-list`` returns all trees."""
    if not g.is_connected():
        raise GraphError("graph is disconnected")
    if root is None:
        root = min(g.vertices)
    if strategy == "exhaustive-list":
        return all_spanning_trees(g, root)
    if strategy == "dfs":
        return SpanningTree(frozenset(_dfs_tree(g, root)), root)
    if strategy != "bfs":
        raise GraphError(f"unknown strategy {strategy!r}")
    seen = {root}
    tree = []
    frontier = deque([root])
    while frontier:
        v = frontier.popleft()
        for eid, w in sorted(g.neighbors(v)):
            if w not in seen:
                seen.add(w)
                tree.append(eid)
                frontier.append(w)
    return SpanningTree(frozenset(tree), root)


def _dfs_tree(g, root):
    seen = {root}
    tree = []
    stack = [(root, iter(sorted(g.neighbors(root))))]
    while stack:
        v, it = stack[-1]
        for eid, w in it:
            if w not in seen:
                seen.add(w)
                tree.append(eid)
                stack.append((w, iter(sorted(g.neighbors(w)))))
                break
        else:
            stack.pop()
    return tree


def all_spanning_trees(g: PlanarGraph, root: Optional[int] = None,
                       cap: int = 200_000) -> List[SpanningTree]:
    """Every spanning tree (edge-subset backtracking with union-find)."""
    if not g.is_connected():
        raise GraphError("graph is disconnected")
    if root is None:
        root = min(g.vertices)
    need = len(g.vertices) - 1
    edges = [e for e in g.edges if not e.is_loop]
    out = []

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i, chosen, parent):
        if len(chosen) == need:
            out.append(SpanningTree(frozenset(chosen), root))
            if len(out) > cap:
                raise GraphError("spanning tree cap exceeded")
            return
        if len(edges) - i < need - len(chosen):
            return
        e = edges[i]
        ra, rb = find(parent, e.tail), find(parent, e.head)
        if ra != rb:
            p2 = dict(parent)
            p2[ra] = rb
            rec(i + 1, chosen + [e.id], p2)
        rec(i + 1, chosen, parent)

    rec(0, [], {v: v for v in g.vertices})
    return out


# ---------------------------------------------------------------------------
# P_{2n+1}

@dataclass(frozen=True)
class PlumGraph:
    """Labeled P_{2n+1}.

    Ids: ``u_k`` -> k-1, ``v_k`` -> m+k-1, north pole 2m, south pole 2m+1
    (m = 2n+1).  Equatorial edge 2(k-1) runs u_k -> v_{k+n+1} and edge
    2(k-1)+1 runs v_{k+n+1} -> u_{k+1}.  North spoke 2m+k-1 runs
    v_N -> u_k, south spoke 3m+k-1 runs v_S -> v_k.
    """
    n: int
    graph: PlanarGraph
    labels: Dict[str, int]
    equator: Cycle
    north_cycles: Tuple[Cycle, ...]
    south_cycles: Tuple[Cycle, ...]

    @property
    def m(self) -> int:
        return 2 * self.n + 1

    @cached_property
    def names(self) -> Dict[int, str]:
        return {v: k for k, v in self.labels.items()}

    def idx(self, i: int) -> int:
        """Suffix reduced into 1..m."""
        return (i - 1) % self.m + 1

    def u(self, k):
        return self.idx(k) - 1

    def v(self, k):
        return self.m + self.idx(k) - 1

    @property
    def north(self):
        return 2 * self.m

    @property
    def south(self):
        return 2 * self.m + 1

    def N(self, i) -> Cycle:
        return self.north_cycles[self.idx(i) - 1]

    def S(self, i) -> Cycle:
        return self.south_cycles[self.idx(i) - 1]

    def edge_class(self, eid: int) -> str:
        if eid < 2 * self.m:
            return "equatorial"
        return "north-spoke" if eid < 3 * self.m else "south-spoke"

    def edge_name(self, eid: int) -> str:
        e = self.graph.edge(eid)
        return f"{self.names[e.tail]}-{self.names[e.head]}"

    @cached_property
    def region_cycles_of_edge(self) -> Dict[int, List[Tuple[str, int, int]]]:
        """edge -> [(side 'N'/'S', index i, traversal sign)]."""
        out = defaultdict(list)
        for side, cyc in (("N", self.north_cycles), ("S", self.south_cycles)):
            for i, c in enumerate(cyc, start=1):
                for eid, d in c.steps:
                    out[eid].append((side, i, d))
        return dict(out)

    @cached_property
    def _region_vertex_sets(self):
        return ([frozenset(c.vertices(self.graph)) for c in self.north_cycles],
                [frozenset(c.vertices(self.graph)) for c in self.south_cycles])

    def disjoint_NS(self, i: int, j: int) -> bool:
        north, south = self._region_vertex_sets
        return north[self.idx(i) - 1].isdisjoint(south[self.idx(j) - 1])


def build_plum_graph(n: int) -> PlumGraph:
    if not isinstance(n, int) or n < 1:
        raise GraphError("n must be a positive integer")
    m = 2 * n + 1
    idx = lambda i: (i - 1) % m + 1
    U = lambda k: idx(k) - 1
    V = lambda k: m + idx(k) - 1
    vN, vS = 2 * m, 2 * m + 1
    pairs = []
    for k in range(1, m + 1):
        pairs.append((U(k), V(k + n + 1)))
        pairs.append((V(k + n + 1), U(k + 1)))
    for k in range(1, m + 1):
        pairs.append((vN, U(k)))
    for k in range(1, m + 1):
        pairs.append((vS, V(k)))
    edges = tuple(Edge(i, a, b) for i, (a, b) in enumerate(pairs))
    eq = lambda p: p % (2 * m)  # equatorial edge leaving equator position p
    nspoke = lambda k: 2 * m + idx(k) - 1
    sspoke = lambda k: 3 * m + idx(k) - 1

    # sphere embedding: equator CCW circle, v_N inside, v_S outside
    rotation = {}
    for p in range(2 * m):
        out_e, in_e = eq(p), eq(p - 1)
        if p % 2 == 0:
            k = p // 2 + 1
            rotation[U(k)] = ((out_e, 0), (nspoke(k), 1), (in_e, 1))
        else:
            k = (p - 1) // 2 + 1 + n + 1
            rotation[V(k)] = ((out_e, 0), (in_e, 1), (sspoke(k), 1))
    rotation[vN] = tuple((nspoke(k), 0) for k in range(1, m + 1))
    # v_S sees the v's in decreasing CCW position along the equator
    v_order = [idx((p - 1) // 2 + 1 + n + 1) for p in range(1, 2 * m, 2)]
    rotation[vS] = tuple((sspoke(k), 0) for k in reversed(v_order))
    graph = PlanarGraph(tuple(range(2 * m + 2)), edges, rotation, True)

    labels = {}
    for k in range(1, m + 1):
        labels[f"u{k}"] = U(k)
        labels[f"v{k}"] = V(k)
    labels["vN"], labels["vS"] = vN, vS

    equator = Cycle(tuple((p, 1) for p in range(2 * m)))
    north, south = [], []
    for i in range(1, m + 1):
        north.append(Cycle(((2 * (i - 1), 1), (2 * (i - 1) + 1, 1),
                            (nspoke(i + 1), -1), (nspoke(i), 1))))
        k = idx(i + n)  # v_i sits between u_{i+n} and u_{i+n+1}
        k1 = idx(i + n + 1)
        south.append(Cycle(((2 * (k - 1) + 1, 1), (2 * (k1 - 1), 1),
                            (sspoke(i + 1), -1), (sspoke(i), 1))))
    return PlumGraph(n, graph, labels, equator, tuple(north), tuple(south))


def cube_graph() -> PlanarGraph:
    return build_plum_graph(1).graph


def cycle_graph(k: int) -> PlanarGraph:
    """C_k drawn as a round circle (k >= 1; k = 1 is a loop, k = 2 a digon)."""
    edges = tuple(Edge(i, i, (i + 1) % k) for i in range(k))
    if k == 1:
        rotation = {0: ((0, 0), (0, 1))}
    else:
        rotation = {i: ((i, 0), ((i - 1) % k, 1)) for i in range(k)}
    return PlanarGraph(tuple(range(k)), edges, rotation, True)


def theta_graph() -> PlanarGraph:
    edges = (Edge(0, 0, 1), Edge(1, 0, 1), Edge(2, 0, 1))
    rotation = {0: ((0, 0), (1, 0), (2, 0)), 1: ((2, 1), (1, 1), (0, 1))}
    return PlanarGraph((0, 1), edges, rotation, True)


def star_graph(k: int) -> PlanarGraph:
    edges = tuple(Edge(i, 0, i + 1) for i in range(k))
    rotation = {0: tuple((i, 0) for i in range(k))}
    rotation.update({i + 1: ((i, 1),) for i in range(k)})
    return PlanarGraph(tuple(range(k + 1)), edges, rotation, True)


def random_planar_graph(rng, n_vertices: int, extra_edges: int) -> PlanarGraph:
    """Random connected plane multigraph (no loops).

    A random tree with random rotations, then ``extra_edges`` chords, each
    drawn inside one face between two of its corners, so every stage is a
    sphere embedding.
    """
    if n_vertices < 1:
        raise GraphError("need at least one vertex")
    rot: Dict[int, List[End]] = {0: []}
    pairs = []
    for v in range(1, n_vertices):
        w = rng.randrange(v)
        eid = len(pairs)
        pairs.append((w, v))
        rot[w].insert(rng.randrange(len(rot[w]) + 1), (eid, 0))
        rot[v] = [(eid, 1)]
    for _ in range(extra_edges if n_vertices > 1 else 0):
        ends_of = {i: p for i, p in enumerate(pairs)}
        faces = trace_faces({v: tuple(r) for v, r in rot.items()}, ends_of)
        face = rng.choice(faces)
        corners = [((lk, 1 if dd == 1 else 0), ends_of[lk][1 if dd == 1 else 0])
                   for lk, dd in face]
        h1, v1 = rng.choice(corners)
        options = [(h, v) for h, v in corners if v != v1]
        if not options:
            continue
        h2, v2 = rng.choice(options)
        eid = len(pairs)
        pairs.append((v1, v2))
        rot[v1].insert(rot[v1].index(h1) + 1, (eid, 0))
        rot[v2].insert(rot[v2].index(h2) + 1, (eid, 1))
    return PlanarGraph.from_edges(pairs, vertices=list(range(n_vertices)),
                                  rotation={v: tuple(r) for v, r in rot.items()},
                                  sphere=True)


def random_spanning_tree(g: PlanarGraph, rng, root: Optional[int] = None) -> SpanningTree:
    """Kruskal over a shuffled edge list."""
    if not g.is_connected():
        raise GraphError("graph is disconnected")
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = list(g.edges)
    rng.shuffle(edges)
    tree = []
    for e in edges:
        a, b = find(e.tail), find(e.head)
        if a != b:
            parent[a] = b
            tree.append(e.id)
    if root is None:
        root = rng.choice(list(g.vertices))
    return SpanningTree(frozenset(tree), root)
