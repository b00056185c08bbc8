"""Hand-built diagrams used across the test modules."""
import random

import pytest

from plumgraph.diagram import Arc, Crossing, Diagram
from plumgraph.graph import Edge, PlanarGraph


def closed_two_braid(k: int, positive: bool = True) -> Diagram:
    """Closure of sigma_1^k drawn on a CCW circle.

    Crossing c_j has incoming inner/outer strands I_{j-1}, O_{j-1} and
    outgoing I_j, O_j; the strands swap (I_{j-1} -> O_j).  Each component
    carries one vertex with a loop edge, placed on its first inner or outer
    strand, so the graph is a disjoint union of loops.
    """
    # strand s = (kind, j) runs c_j -> c_{j+1}; successor through c_{j+1}
    def succ(s):
        kind, j = s
        return ("O" if kind == "I" else "I", (j + 1) % k)

    comps, seen = [], set()
    for s in [("I", j) for j in range(k)] + [("O", j) for j in range(k)]:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        while succ(comp[-1]) != s:
            comp.append(succ(comp[-1]))
            seen.add(comp[-1])
        comps.append(comp)

    arcs, rotation = [], {}
    tail_of, head_of = {}, {}   # strand -> arc id of its first / last segment
    edges, grot = [], {}
    for ci, comp in enumerate(comps):
        edges.append(Edge(ci, ci, ci))
        grot[ci] = ((ci, 0), (ci, 1))
        for si, s in enumerate(comp):
            kind, j = s
            start, stop = ("x", j), ("x", (j + 1) % k)
            if si == 0:
                a1 = len(arcs)
                arcs.append(Arc(a1, ci, start, ("v", ci)))
                a2 = len(arcs)
                arcs.append(Arc(a2, ci, ("v", ci), stop))
                tail_of[s], head_of[s] = a1, a2
                rotation[("v", ci)] = ((a2, 0), (a1, 1))
            else:
                a = len(arcs)
                arcs.append(Arc(a, ci, start, stop))
                tail_of[s] = head_of[s] = a
    crossings = []
    for j in range(k):
        prev = (j - 1) % k
        o_out, i_out = (tail_of[("O", j)], 0), (tail_of[("I", j)], 0)
        i_in, o_in = (head_of[("I", prev)], 1), (head_of[("O", prev)], 1)
        rotation[("x", j)] = (o_out, i_out, i_in, o_in)
        a, b = (i_in, o_out), (o_in, i_out)
        crossings.append(Crossing(j, a, b) if positive else Crossing(j, b, a))
    g = PlanarGraph(tuple(range(len(comps))), tuple(edges), grot, True)
    return Diagram(g, tuple(arcs), rotation, tuple(crossings))


def kink_diagram(over_first: bool = True, side: int = 1) -> Diagram:
    """One loop edge with a single Reidemeister-I curl."""
    g = PlanarGraph((0,), (Edge(0, 0, 0),), {0: ((0, 0), (0, 1))}, True)
    arcs = (Arc(0, 0, ("v", 0), ("x", 0)), Arc(1, 0, ("x", 0), ("x", 0)),
            Arc(2, 0, ("x", 0), ("v", 0)))
    if side == 1:
        rot = ((0, 1), (1, 1), (1, 0), (2, 0))
    else:
        rot = ((0, 1), (2, 0), (1, 0), (1, 1))
    first, second = (rot[0], rot[2]), (rot[1], rot[3])
    x = Crossing(0, first, second) if over_first else Crossing(0, second, first)
    return Diagram(g, arcs, {("v", 0): ((0, 0), (2, 1)), ("x", 0): rot}, (x,))


@pytest.fixture
def rng():
    return random.Random(12345)
