"""Spatial-graph diagrams as combinatorial planar maps.

A diagram has two kinds of nodes: graph vertices ``('v', id)`` and
crossings ``('x', id)``.  Every edge of the abstract graph is cut by the
crossings it passes into *arcs*; arcs are always oriented along their
edge.  An arc-end is ``(arc_id, 0)`` at the arc's tail and ``(arc_id, 1)``
at its head.  ``rotation`` lists the arc-ends at each node in
counter-clockwise order; at a crossing the two strands occupy opposite
positions.

Crossing sign convention: +1 when the under-strand direction is the
over-strand direction turned +90 degrees (counter-clockwise).
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .graph import (Cycle, Edge, PlanarGraph, build_plum_graph,
                    dumps, trace_faces, _components)

Node = Tuple[str, int]
End = Tuple[int, int]


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Arc:
    id: int
    edge: int
    tail: Node
    head: Node


@dataclass(frozen=True)
class Crossing:
    id: int
    over: Optional[Tuple[End, End]] = None
    under: Optional[Tuple[End, End]] = None

    def swapped(self) -> "Crossing":
        return Crossing(self.id, self.under, self.over)


@dataclass(frozen=True)
class Strand:
    edge: int
    in_end: End
    out_end: End
    in_pos: int


def node_name(node: Node) -> str:
    return f"{node[0]}{node[1]}"


def parse_node(name: str) -> Node:
    if not name or name[0] not in "vx":
        raise DiagramError(f"bad node reference {name!r}")
    return (name[0], int(name[1:]))


@dataclass(frozen=True)
class Diagram:
    graph: PlanarGraph
    arcs: Tuple[Arc, ...]
    rotation: Dict[Node, Tuple[End, ...]]
    crossings: Tuple[Crossing, ...]

    # ---- derived structure -------------------------------------------
    @cached_property
    def arc_map(self) -> Dict[int, Arc]:
        return {a.id: a for a in self.arcs}

    @cached_property
    def crossing_map(self) -> Dict[int, Crossing]:
        return {c.id: c for c in self.crossings}

    @property
    def crossing_ids(self) -> List[int]:
        return sorted(self.crossing_map)

    def __len__(self):
        return len(self.crossings)

    @cached_property
    def _position(self) -> Dict[End, Tuple[Node, int]]:
        pos = {}
        for node, ends in self.rotation.items():
            for i, h in enumerate(ends):
                pos[h] = (node, i)
        return pos

    def strands(self, xid: int) -> Tuple[Strand, Strand]:
        rot = self.rotation[("x", xid)]
        out = []
        for i in (0, 1):
            a, b = rot[i], rot[i + 2]
            if a[1] == 1:
                out.append(Strand(self.arc_map[a[0]].edge, a, b, i))
            else:
                out.append(Strand(self.arc_map[b[0]].edge, b, a, i + 2))
        return out[0], out[1]

    def crossing_edges(self, xid: int) -> Tuple[int, int]:
        s, t = self.strands(xid)
        return s.edge, t.edge

    @cached_property
    def edge_arcs(self) -> Dict[int, List[int]]:
        """Arc ids of every edge, in order from its tail to its head."""
        out = {}
        first = {}
        for a in self.arcs:
            if a.tail[0] == "v":
                first[a.edge] = a.id
        for e in self.graph.edges:
            if e.id not in first:
                raise DiagramError(f"edge {e.id} has no arc leaving a vertex")
            seq = [first[e.id]]
            while True:
                arc = self.arc_map[seq[-1]]
                if arc.head[0] == "v":
                    break
                node, i = self._position[(arc.id, 1)]
                nxt = self.rotation[node][(i + 2) % 4]
                seq.append(nxt[0])
                if len(seq) > len(self.arcs):
                    raise DiagramError(f"edge {e.id} does not close up")
            out[e.id] = seq
        return out

    @cached_property
    def edge_passes(self) -> Dict[int, List[int]]:
        """Crossing ids met along each edge (tail to head)."""
        return {eid: [self.arc_map[a].head[1] for a in arcs[:-1]]
                for eid, arcs in self.edge_arcs.items()}

    def sign(self, xid: int) -> int:
        """Crossing sign with strands oriented along their edges."""
        c = self.crossing_map[xid]
        if c.over is None:
            raise DiagramError(f"crossing {xid} has no over/under data")
        rot = self.rotation[("x", xid)]
        in_end = c.over[0] if c.over[0][1] == 1 else c.over[1]
        i = rot.index(in_end)
        under_out = c.under[0] if c.under[0][1] == 0 else c.under[1]
        return 1 if rot[(i + 3) % 4] == under_out else -1

    def over_edge(self, xid: int) -> int:
        c = self.crossing_map[xid]
        return self.arc_map[c.over[0][0]].edge

    def faces(self):
        return trace_faces(self.rotation,
                           {a.id: (a.tail, a.head) for a in self.arcs})

    def node_count(self) -> int:
        return len(self.rotation)

    def component_count(self) -> int:
        return _components(list(self.rotation), {a.id: (a.tail, a.head) for a in self.arcs})

    # ---- validation ---------------------------------------------------
    def violations(self) -> List[str]:
        return validate_diagram(self)

    def is_projection(self) -> bool:
        return any(c.over is None for c in self.crossings)

    # ---- serialization ------------------------------------------------
    def to_dict(self) -> dict:
        doc = self.graph.to_dict()
        doc["arcs"] = [[a.id, a.edge, node_name(a.tail), node_name(a.head)]
                       for a in self.arcs]
        doc["nodeRotation"] = {node_name(k): [list(h) for h in v]
                               for k, v in self.rotation.items()}
        xs = []
        for c in self.crossings:
            item = {"id": c.id}
            if c.over is not None:
                item["over"] = [list(h) for h in c.over]
                item["under"] = [list(h) for h in c.under]
            xs.append(item)
        doc["crossings"] = xs
        return doc

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "Diagram":
        graph = PlanarGraph.from_dict(doc)
        try:
            arcs = tuple(Arc(int(i), int(e), parse_node(t), parse_node(h))
                         for i, e, t, h in doc["arcs"])
            rotation = {parse_node(k): tuple((int(a), int(s)) for a, s in v)
                        for k, v in doc["nodeRotation"].items()}
            xs = []
            projection = False
            for item in doc["crossings"]:
                if "over" in item:
                    xs.append(Crossing(int(item["id"]),
                                       tuple(tuple(map(int, h)) for h in item["over"]),
                                       tuple(tuple(map(int, h)) for h in item["under"])))
                else:
                    projection = True
                    xs.append(Crossing(int(item["id"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise DiagramError(f"malformed diagram document: {exc}") from exc
        kind = Projection if projection else Diagram
        return kind(graph, arcs, rotation, tuple(xs))

    @classmethod
    def from_json(cls, text: str) -> "Diagram":
        return cls.from_dict(json.loads(text))


class Projection(Diagram):
    """A diagram whose crossings carry no over/under information."""


def load(text: str) -> Diagram:
    return Diagram.from_json(text)


# ---------------------------------------------------------------------------
# validation

def validate_diagram(d: Diagram) -> List[str]:
    """Empty list iff all planar-map and smoothing invariants hold."""
    out = []
    g = d.graph
    ids = [a.id for a in d.arcs]
    if len(set(ids)) != len(ids):
        return ["duplicate arc id"]
    xids = {c.id for c in d.crossings}
    if len(xids) != len(d.crossings):
        return ["duplicate crossing id"]
    nodes = {("v", v) for v in g.vertices} | {("x", x) for x in xids}
    if set(d.rotation) != nodes:
        return ["rotation keys differ from the node set"]
    incident = {nd: [] for nd in nodes}
    for a in d.arcs:
        if a.edge not in g.edge_map:
            out.append(f"arc {a.id} names unknown edge {a.edge}")
            continue
        for nd, s in ((a.tail, 0), (a.head, 1)):
            if nd not in incident:
                out.append(f"arc {a.id} ends at unknown node {nd}")
            else:
                incident[nd].append((a.id, s))
    if out:
        return out
    for nd, ends in d.rotation.items():
        if sorted(ends) != sorted(incident[nd]):
            out.append(f"rotation at {node_name(nd)} does not list exactly its arc-ends")
    for v in g.vertices:
        got = sorted((d.arc_map[a].edge, s) for a, s in d.rotation[("v", v)])
        if got != sorted(g.incidence[v]):
            out.append(f"vertex {v} meets the wrong edges")
    if out:
        return out
    for c in d.crossings:
        rot = d.rotation[("x", c.id)]
        if len(rot) != 4:
            out.append(f"crossing {c.id} has degree {len(rot)}")
            continue
        for i in (0, 1):
            a, b = rot[i], rot[i + 2]
            if {a[1], b[1]} != {0, 1} or d.arc_map[a[0]].edge != d.arc_map[b[0]].edge:
                out.append(f"crossing {c.id}: opposite ends do not form one strand")
        if (c.over is None) != (c.under is None):
            out.append(f"crossing {c.id}: over/under half specified")
        elif c.over is not None:
            if sorted(c.over + c.under) != sorted(rot):
                out.append(f"crossing {c.id}: over/under ends differ from rotation")
            else:
                i, j = rot.index(c.over[0]), rot.index(c.over[1])
                if (i - j) % 4 != 2:
                    out.append(f"crossing {c.id}: non-alternating crossing")
    if out:
        return out
    try:
        passes = d.edge_arcs
    except (DiagramError, KeyError, ValueError) as exc:
        return [f"smoothing failed: {exc}"]
    used = sorted(a for seq in passes.values() for a in seq)
    if used != sorted(ids):
        out.append("smoothing does not use every arc exactly once")
    for e in g.edges:
        seq = passes[e.id]
        if d.arc_map[seq[0]].tail != ("v", e.tail) or d.arc_map[seq[-1]].head != ("v", e.head):
            out.append(f"edge {e.id} does not smooth to its endpoints")
    if out:
        return out
    f = len(d.faces())
    comps = d.component_count()
    chi = len(nodes) - len(d.arcs) + f
    if chi != 2 * comps:
        out.append(f"Euler check failed: V'-E'+F' = {chi}, expected {2 * comps}")
    return out


# ---------------------------------------------------------------------------
# generators

def diagram_from_graph(g: PlanarGraph) -> Diagram:
    """Crossing-free diagram drawing ``g`` by its own rotation system."""
    arcs = tuple(Arc(e.id, e.id, ("v", e.tail), ("v", e.head)) for e in g.edges)
    rotation = {("v", v): tuple(g.rotation[v]) for v in g.vertices}
    return Diagram(g, arcs, rotation, ())


def trivial_plum_diagram(n: int) -> Diagram:
    return diagram_from_graph(build_plum_graph(n).graph)


def standard_plum_diagram(n: int) -> Diagram:
    """Diagram of f_{2n+1}: equator drawn as a closed positive 2-braid.

    Crossings c_0..c_{m-1} sit CCW on a circle; the bigon between c_j and
    c_{j+1} has an inner strand I_j carrying u_k (j = 2(k-1)) and an outer
    strand O_j carrying v_l (j = 2(l-1)).  v_N sits inside the circle and
    v_S outside, so spokes need no crossings.
    """
    from .invariants import linking_vector  # cyclic import at call time

    d = _braid_plum_diagram(n)
    P = build_plum_graph(n)
    if linking_vector(d, P)[0] < 0:
        d = mirror(d)
    return d


def _braid_plum_diagram(n: int) -> Diagram:
    P = build_plum_graph(n)
    m = P.m
    inv2 = n + 1  # inverse of 2 mod m
    u_on = lambda j: (j * inv2) % m + 1  # u_k on I_j, v_l on O_j
    eq_in = lambda k: 2 * ((k - 2) % m) + 1  # edge v_{k+n} -> u_k
    eq_out = lambda k: 2 * (k - 1)  # edge u_k -> v_{k+n+1}

    arcs = []
    aid = {}

    def new_arc(key, edge, tail, head):
        aid[key] = len(arcs)
        arcs.append(Arc(len(arcs), edge, tail, head))

    for j in range(m):
        k = u_on(j)  # u_k on inner strand I_j
        new_arc(("I", j, "a"), eq_in(k), ("x", j), ("v", P.u(k)))
        new_arc(("I", j, "b"), eq_out(k), ("v", P.u(k)), ("x", (j + 1) % m))
        l = u_on(j)  # v_l on outer strand O_j
        ku = (l - n - 1 - 1) % m + 1  # u_{ku} -> v_l
        new_arc(("O", j, "a"), eq_out(ku), ("x", j), ("v", P.v(l)))
        new_arc(("O", j, "b"), eq_out(ku) + 1, ("v", P.v(l)), ("x", (j + 1) % m))
    for k in range(1, m + 1):
        new_arc(("N", k), 2 * m + k - 1, ("v", P.north), ("v", P.u(k)))
    for k in range(1, m + 1):
        new_arc(("S", k), 3 * m + k - 1, ("v", P.south), ("v", P.v(k)))

    rotation = {}
    crossings = []
    for j in range(m):
        jp = (j - 1) % m
        r = ((aid[("I", j, "a")], 0), (aid[("I", jp, "b")], 1),
             (aid[("O", jp, "b")], 1), (aid[("O", j, "a")], 0))
        rotation[("x", j)] = r
        # strand I_{j-1} -> O_j passes over
        crossings.append(Crossing(j, (r[1], r[3]), (r[0], r[2])))
    for j in range(m):
        k = u_on(j)
        rotation[("v", P.u(k))] = ((aid[("I", j, "b")], 0), (aid[("N", k)], 1),
                                   (aid[("I", j, "a")], 1))
        rotation[("v", P.v(k))] = ((aid[("O", j, "b")], 0), (aid[("O", j, "a")], 1),
                                   (aid[("S", k)], 1))
    rotation[("v", P.north)] = tuple((aid[("N", u_on(j))], 0) for j in range(m))
    rotation[("v", P.south)] = tuple((aid[("S", u_on(j))], 0)
                                     for j in reversed(range(m)))
    return Diagram(P.graph, tuple(arcs), rotation, tuple(crossings))


def project(d: Diagram) -> Projection:
    return Projection(d.graph, d.arcs, d.rotation,
                      tuple(Crossing(c.id) for c in d.crossings))


def cube_knotted_projection() -> Projection:
    """Three-crossing knotted projection of the cube: the shadow of f_3."""
    return project(standard_plum_diagram(1))


# ---------------------------------------------------------------------------
# edits

def crossing_change(d: Diagram, xid: int) -> Diagram:
    if xid not in d.crossing_map:
        raise DiagramError(f"unknown crossing id {xid}")
    if d.crossing_map[xid].over is None:
        raise DiagramError("cannot change a crossing of a projection")
    xs = tuple(c.swapped() if c.id == xid else c for c in d.crossings)
    return Diagram(d.graph, d.arcs, d.rotation, xs)


def change_crossings(d: Diagram, xids: Iterable[int]) -> Diagram:
    xs = set(xids)
    unknown = xs - set(d.crossing_map)
    if unknown:
        raise DiagramError(f"unknown crossing ids {sorted(unknown)}")
    return Diagram(d.graph, d.arcs, d.rotation,
                   tuple(c.swapped() if c.id in xs else c for c in d.crossings))


def mirror(d: Diagram) -> Diagram:
    return change_crossings(d, d.crossing_map)


def resolve(p: Diagram, choice: Dict[int, int]) -> Diagram:
    """Over/under choice per crossing: 0 puts rotation positions (0, 2) over."""
    xs = []
    for c in p.crossings:
        r = p.rotation[("x", c.id)]
        a, b = (r[0], r[2]), (r[1], r[3])
        xs.append(Crossing(c.id, a, b) if choice[c.id] == 0 else Crossing(c.id, b, a))
    return Diagram(p.graph, p.arcs, p.rotation, tuple(xs))


def resolutions(p: Diagram, cap: int = 20) -> List[Diagram]:
    """All 2^c over/under assignments, binary counter over sorted crossing ids
    (bit i belongs to the i-th smallest id)."""
    ids = p.crossing_ids
    if len(ids) > cap:
        raise DiagramError(f"{len(ids)} crossings exceed the resolution cap {cap}")
    out = []
    for mask in range(1 << len(ids)):
        out.append(resolve(p, {x: (mask >> i) & 1 for i, x in enumerate(ids)}))
    return out


def restrict_to_cycles(d: Diagram, cycles: Sequence[Cycle]) -> Diagram:
    """Knot or 2-component link diagram of the given disjoint cycles.

    Each cycle becomes one loop edge on a single basepoint vertex (its
    start vertex is kept, all other vertices are smoothed) and is oriented
    by the cycle.  Crossings with a deleted strand disappear; the other
    crossings keep their ids.
    """
    g = d.graph
    if not 1 <= len(cycles) <= 2:
        raise DiagramError("restrict_to_cycles takes one or two cycles")
    vsets = []
    for c in cycles:
        bad = c.check(g)
        if bad:
            raise DiagramError(f"not a simple cycle: {bad}")
        vsets.append(set(c.vertices(g)))
    if len(vsets) == 2 and vsets[0] & vsets[1]:
        raise DiagramError("cycles are not vertex-disjoint")
    keep_edges = {e for c in cycles for e in c.edges()}
    kept = [x for x in d.crossing_ids if set(d.crossing_edges(x)) <= keep_edges]
    kept_set = set(kept)

    arcs = []
    endmap = {}
    rotation = {}
    edges = []
    for k, c in enumerate(cycles):
        darts = []
        for eid, dr in c.steps:
            seq = d.edge_arcs[eid]
            darts.extend((a, dr) for a in (seq if dr == 1 else reversed(seq)))
        base = ("v", k)
        start = len(arcs)
        tail = base
        for i, (a, dr) in enumerate(darts):
            arc = d.arc_map[a]
            end_node = arc.head if dr == 1 else arc.tail
            if end_node[0] == "x" and end_node[1] in kept_set:
                cur = len(arcs)
                arcs.append(Arc(cur, k, tail, end_node))
                endmap[(a, 1 if dr == 1 else 0)] = (cur, 1)
                na, ndr = darts[(i + 1) % len(darts)]
                endmap[(na, 0 if ndr == 1 else 1)] = (cur + 1, 0)
                tail = end_node
        arcs.append(Arc(len(arcs), k, tail, base))
        rotation[base] = ((start, 0), (len(arcs) - 1, 1))
        edges.append(Edge(k, k, k))
    xs = []
    for x in kept:
        rotation[("x", x)] = tuple(endmap[h] for h in d.rotation[("x", x)])
        c = d.crossing_map[x]
        if c.over is None:
            xs.append(Crossing(x))
        else:
            xs.append(Crossing(x, tuple(endmap[h] for h in c.over),
                               tuple(endmap[h] for h in c.under)))
    verts = tuple(range(len(cycles)))
    sub = PlanarGraph(verts, tuple(edges), {k: ((k, 0), (k, 1)) for k in verts}, True)
    kind = Projection if d.is_projection() else Diagram
    return kind(sub, tuple(arcs), rotation, tuple(xs))


def finger_move(d: Diagram, dart1: Tuple[int, int], dart2: Tuple[int, int],
                finger_over: bool = True) -> Diagram:
    """Reidemeister II move: push arc ``dart1[0]`` across arc ``dart2[0]``.

    Both darts ``(arc, +1|-1)`` must lie on one face (the face on their
    right).  Two new crossings appear; the pushed strand is over at both
    when ``finger_over``.  The spatial graph is unchanged up to isotopy.
    """
    a, da = dart1
    b, db = dart2
    if a == b:
        raise DiagramError("finger move needs two distinct arcs")
    if not any(dart1 in f and dart2 in f for f in d.faces()):
        raise DiagramError("darts do not share a face")
    arcs = {x.id: x for x in d.arcs}
    rot = {k: list(v) for k, v in d.rotation.items()}
    nxt_arc = max(arcs) + 1
    nxt_x = max(d.crossing_map, default=-1) + 1
    X, Y = ("x", nxt_x), ("x", nxt_x + 1)

    def split(arc_id, dr, mid1, mid2):
        """Cut an arc into three along the dart; return segment end lookup."""
        nonlocal nxt_arc
        old = arcs[arc_id]
        ids = [arc_id, nxt_arc, nxt_arc + 1]
        nxt_arc += 2
        start = old.tail if dr == 1 else old.head
        stop = old.head if dr == 1 else old.tail
        pts = [start, mid1, mid2, stop]
        for sid, p, q in zip(ids, pts, pts[1:]):
            arcs[sid] = Arc(sid, old.edge, p, q) if dr == 1 else Arc(sid, old.edge, q, p)
        s_end = (lambda s: (ids[s], 0)) if dr == 1 else (lambda s: (ids[s], 1))
        e_end = (lambda s: (ids[s], 1)) if dr == 1 else (lambda s: (ids[s], 0))
        # reattach at the outer nodes
        old_start = (arc_id, 0) if dr == 1 else (arc_id, 1)
        old_stop = (arc_id, 1) if dr == 1 else (arc_id, 0)
        return s_end, e_end, old_start, old_stop, start, stop

    s_start, s_stop, a_old_start, a_old_stop, a_from, a_to = split(a, da, X, Y)
    t_start, t_stop, b_old_start, b_old_stop, b_from, b_to = split(b, db, Y, X)
    # replace old ends (the old arc ids are reused by the first segments)
    repl = {a_old_start: s_start(0), a_old_stop: s_stop(2),
            b_old_start: t_start(0), b_old_stop: t_stop(2)}
    for node, ends in rot.items():
        rot[node] = [repl.get(h, h) for h in ends]
    rot[X] = [t_stop(1), s_stop(0), t_start(2), s_start(1)]
    rot[Y] = [t_stop(0), s_start(2), t_start(1), s_stop(1)]
    fx = (s_stop(0), s_start(1))
    fy = (s_stop(1), s_start(2))
    gx = (t_stop(1), t_start(2))
    gy = (t_stop(0), t_start(1))
    cx = Crossing(X[1], fx, gx) if finger_over else Crossing(X[1], gx, fx)
    cy = Crossing(Y[1], fy, gy) if finger_over else Crossing(Y[1], gy, fy)
    old_xs = []
    for c in d.crossings:
        if c.over is None:
            old_xs.append(c)
        else:
            old_xs.append(Crossing(c.id, tuple(repl.get(h, h) for h in c.over),
                                   tuple(repl.get(h, h) for h in c.under)))
    new_arcs = tuple(arcs[i] for i in sorted(arcs))
    rotation = {k: tuple(v) for k, v in rot.items()}
    return Diagram(d.graph, new_arcs, rotation, tuple(old_xs) + (cx, cy))


def random_finger_moves(d: Diagram, rng: random.Random, count: int,
                        edges: Optional[set] = None) -> Diagram:
    """Apply ``count`` random finger moves between arcs whose edges are in
    ``edges`` (all edges when None); over/under chosen at random."""
    for _ in range(count):
        options = []
        for face in d.faces():
            darts = [t for t in face
                     if edges is None or d.arc_map[t[0]].edge in edges]
            for i, p in enumerate(darts):
                for q in darts:
                    if p[0] != q[0]:
                        options.append((p, q))
        if not options:
            break
        p, q = rng.choice(options)
        d = finger_move(d, p, q, rng.random() < 0.5)
    return d
