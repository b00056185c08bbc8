"""Linear unknotting-number bounds: branch indices, reorder cost, the
constants A and B, the halving bound, and descending change sets.

Branch indices follow the tree-shrinking recursion toward a root ``v``:
b(e) = 1 off the tree; for a tree edge, b(e) sums b(d) over the other
edge-ends at the endpoint of e farther from ``v`` (a loop contributes both
ends).  A tree edge whose far endpoint has no other edge-end gets 1.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .diagram import Diagram, change_crossings
from .graph import GraphError, PlanarGraph, SpanningTree, all_spanning_trees


class BoundsError(ValueError):
    pass


BranchIndexMap = Dict[int, int]


def _tree_or_raise(g: PlanarGraph, T: SpanningTree) -> None:
    bad = T.check(g)
    if bad:
        raise BoundsError("invalid spanning tree: " + "; ".join(bad))


def _tree_depths(g: PlanarGraph, T: SpanningTree):
    """Depth of every vertex and the child endpoint of every tree edge."""
    depth = {T.root: 0}
    child = {}
    queue = deque([T.root])
    while queue:
        v = queue.popleft()
        for eid, w in sorted(g.neighbors(v)):
            if eid in T.edges and w not in depth:
                depth[w] = depth[v] + 1
                child[eid] = w
                queue.append(w)
    return depth, child


def branch_indices(g: PlanarGraph, T: SpanningTree) -> BranchIndexMap:
    """b(e) for every edge, evaluated farthest tree edges first."""
    _tree_or_raise(g, T)
    depth, child = _tree_depths(g, T)
    b = {e.id: 1 for e in g.edges if e.id not in T.edges}
    for eid in sorted(child, key=lambda e: (-depth[child[e]], e)):
        w = child[eid]
        total = sum(b[d] for d, _ in g.incidence[w] if d != eid)
        b[eid] = total if total else 1
    return b


def reorder_cost(g: PlanarGraph, T: SpanningTree) -> int:
    """Sum of k_u (l_u - 1) over vertices with tree degree l_u >= 3."""
    _tree_or_raise(g, T)
    total = 0
    for v in g.vertices:
        l = T.degree(v, g)
        if l >= 3:
            total += ((g.degree(v) - 1) // 2) * (l - 1)
    return total


@dataclass(frozen=True)
class BoundConstants:
    k: Dict[int, int]
    l: Dict[int, int]
    b_map: BranchIndexMap
    b: int
    a: int
    A: Fraction
    B: Fraction
    root: int
    tree: Tuple[int, ...]

    def evaluate(self, c: int) -> Fraction:
        """A c + B."""
        return self.A * c + self.B

    def to_dict(self) -> dict:
        return {"tree": list(self.tree), "root": self.root,
                "k": {str(v): x for v, x in sorted(self.k.items())},
                "l": {str(v): x for v, x in sorted(self.l.items())},
                "bMap": {str(e): x for e, x in sorted(self.b_map.items())},
                "b": self.b, "a": self.a,
                "A": _frac(self.A), "B": _frac(self.B)}


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def theorem2_constants(g: PlanarGraph, T: SpanningTree,
                       root: Optional[int] = None) -> BoundConstants:
    """Constants of the bound u(f) <= A c(f) + B for the tree ``T``.

    ``root`` overrides ``T.root`` when given.
    """
    if root is not None and root != T.root:
        T = SpanningTree(T.edges, root)
    bmap = branch_indices(g, T)
    b = reorder_cost(g, T)
    a = max(bmap.values()) ** 2 if bmap else 1
    k = {v: (g.degree(v) - 1) // 2 if g.degree(v) else 0 for v in g.vertices}
    l = {v: T.degree(v, g) for v in g.vertices}
    return BoundConstants(k, l, bmap, b, a, Fraction(a, 2), Fraction(a * b, 2),
                          T.root, tuple(sorted(T.edges)))


def optimize_constants(g: PlanarGraph, cap: int = 20_000) -> BoundConstants:
    """Exhaustive minimum of (A, B) over spanning trees and roots.

    Ties go to the smallest (sorted tree edges, root).  ``cap`` bounds the
    number of tree/root evaluations.
    """
    try:
        trees = all_spanning_trees(g, cap=cap)
    except GraphError as exc:
        raise BoundsError(str(exc)) from None
    if len(trees) * len(g.vertices) > cap:
        raise BoundsError(f"{len(trees)} trees x {len(g.vertices)} roots exceed cap {cap}")
    best = None
    for T in trees:
        for r in sorted(g.vertices):
            c = theorem2_constants(g, SpanningTree(T.edges, r))
            key = (c.A, c.B, c.tree, c.root)
            if best is None or key < best[0]:
                best = (key, c)
    return best[1]


def trivializable_bound(c: int) -> int:
    """floor(c / 2)."""
    if c < 0:
        raise BoundsError("crossing count must be nonnegative")
    return c // 2


# ---------------------------------------------------------------------------
# descending diagrams

@dataclass(frozen=True)
class DescendingChange:
    changes: Tuple[int, ...]       # the subset to change (the smaller side)
    descending: Tuple[int, ...]    # crossings whose change gives a descending diagram
    size: int
    ascending: bool                # True when ``changes`` is the complement

    def to_dict(self):
        return {"changes": list(self.changes), "descending": list(self.descending),
                "size": self.size, "ascending": self.ascending}


def _traversal_keys(d: Diagram, tree_edges, order, orientation):
    tree = frozenset(tree_edges or ())
    free = [e.id for e in d.graph.edges if e.id not in tree]
    order = list(free if order is None else order)
    if sorted(order) != sorted(free):
        raise BoundsError("ordering must list every non-tree edge once")
    rank = {e: i for i, e in enumerate(order)}
    orient = {e: 1 for e in free}
    if orientation:
        orient.update(orientation)
    arcs = d.edge_arcs

    def key(strand):
        if strand.edge in tree:
            raise BoundsError(f"a crossing involves tree edge {strand.edge}")
        pos = arcs[strand.edge].index(strand.in_end[0])
        return rank[strand.edge], pos * orient[strand.edge]

    return key


def _crossing_keys(d: Diagram, key):
    out = {}
    for x in d.crossing_ids:
        c = d.crossing_map[x]
        if c.over is None:
            raise BoundsError("needs over/under data at every crossing")
        s, t = d.strands(x)
        over_in = c.over[0] if c.over[0][1] == 1 else c.over[1]
        if over_in not in (s.in_end, t.in_end):
            raise BoundsError(f"crossing {x} disagrees with its rotation")
        over, under = (s, t) if s.in_end == over_in else (t, s)
        out[x] = (key(over), key(under))
    return out


def descending_change_set(d: Diagram, tree_edges: Optional[Iterable[int]] = None,
                          order: Optional[Sequence[int]] = None,
                          orientation: Optional[Dict[int, int]] = None
                          ) -> DescendingChange:
    """Crossings to change for a descending diagram, or the complement.

    Non-tree edges are traversed in ``order`` (default: by id), each along
    ``orientation`` (+1 tail to head, the default, or -1).  A crossing is
    descending when its over strand comes first.  Changing the complement
    instead gives an ascending diagram, i.e. descending for the reversed
    traversal, so the smaller of the two is returned.
    """
    key = _traversal_keys(d, tree_edges, order, orientation)
    keys = _crossing_keys(d, key)
    bad = tuple(x for x, (ko, ku) in keys.items() if ko > ku)
    rest = tuple(x for x in keys if x not in bad)
    if len(bad) <= len(rest):
        return DescendingChange(bad, bad, len(bad), False)
    return DescendingChange(rest, bad, len(rest), True)


def descending_audit(d: Diagram, tree_edges: Optional[Iterable[int]] = None,
                     order: Optional[Sequence[int]] = None,
                     orientation: Optional[Dict[int, int]] = None,
                     ascending: bool = False) -> List[int]:
    """Crossings inconsistent with the traversal (empty list means pass)."""
    key = _traversal_keys(d, tree_edges, order, orientation)
    keys = _crossing_keys(d, key)
    if ascending:
        return [x for x, (ko, ku) in keys.items() if ko < ku]
    return [x for x, (ko, ku) in keys.items() if ko > ku]


def apply_descending(d: Diagram, result: DescendingChange) -> Diagram:
    return change_crossings(d, result.changes)
