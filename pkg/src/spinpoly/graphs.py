"""Trivalent marked graphs: validation, classification, explosion, enumeration.

A marked graph is a connected trivalent multigraph (loops and parallel edges
allowed) with its degree-1 vertices labeled 1..n.  These are the spin-diagram
skeletons whose edge weightings the polytope modules enumerate.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement, permutations
import json

from .errors import (
    BadLeafLabels,
    BoundsTooLarge,
    Disconnected,
    LengthMismatch,
    NonTrivalent,
)


class GraphClass(Enum):
    CATERPILLAR_TREE = "caterpillar_tree"
    CATERPILLAR_GRAPH = "caterpillar_graph"
    TREE_LIKE = "tree_like"
    OTHER_TRIVALENT = "other_trivalent"


@dataclass(frozen=True)
class MarkedGraph:
    """Connected trivalent multigraph with labeled degree-1 leaves.

    edges are unordered pairs; a loop is encoded as (v, v) and contributes 2
    to the degree of v.  leaves is a tuple of (label, vertex) pairs sorted by
    label; labels are 1..n.
    """

    vertices: tuple
    edges: tuple
    leaves: tuple

    @property
    def leaf_map(self):
        return dict(self.leaves)

    @property
    def n_leaves(self):
        return len(self.leaves)

    def degree(self, v):
        d = 0
        for a, b in self.edges:
            if a == v:
                d += 1
            if b == v:
                d += 1
        return d

    @property
    def genus(self):
        # first Betti number of a connected graph
        return len(self.edges) - len(self.vertices) + 1

    @property
    def leaf_vertices(self):
        return frozenset(v for _, v in self.leaves)

    @property
    def internal_vertices(self):
        leafset = self.leaf_vertices
        return tuple(v for v in self.vertices if v not in leafset)

    def incident_edges(self, v):
        """Edge indices at v, loops listed twice."""
        out = []
        for i, (a, b) in enumerate(self.edges):
            if a == v:
                out.append(i)
            if b == v:
                out.append(i)
        return out

    def leaf_edge_index(self, label):
        v = self.leaf_map[label]
        for i, (a, b) in enumerate(self.edges):
            if v in (a, b):
                return i
        raise BadLeafLabels(f"leaf {label} vertex {v!r} has no edge")

    def to_json_dict(self):
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "leaves": {str(k): v for k, v in self.leaves},
        }


def validate(raw):
    """Check a raw graph description and return a MarkedGraph.

    Accepts a MarkedGraph, or a dict with keys "vertices", "edges", "leaves"
    (the JSON interchange shape; leaf labels may be strings).
    """
    if isinstance(raw, MarkedGraph):
        g = raw
    else:
        vertices = tuple(raw["vertices"])
        edges = tuple(tuple(e) for e in raw["edges"])
        leaves = tuple(sorted((int(k), v) for k, v in dict(raw["leaves"]).items()))
        g = MarkedGraph(vertices, edges, leaves)

    if not g.vertices:
        raise Disconnected("empty graph")
    vset = set(g.vertices)
    if len(vset) != len(g.vertices):
        raise BadLeafLabels("duplicate vertex identifiers")
    for a, b in g.edges:
        if a not in vset or b not in vset:
            raise BadLeafLabels(f"edge ({a!r},{b!r}) uses unknown vertex")

    labels = [k for k, _ in g.leaves]
    if labels != list(range(1, len(labels) + 1)):
        raise BadLeafLabels(f"labels {labels} are not 1..n")
    lmap = dict(g.leaves)
    if len(set(lmap.values())) != len(lmap):
        raise BadLeafLabels("a vertex carries two leaf labels")

    deg1 = {v for v in g.vertices if g.degree(v) == 1}
    if set(lmap.values()) != deg1:
        raise BadLeafLabels(
            f"labels cover {sorted(map(str, lmap.values()))}, degree-1 "
            f"vertices are {sorted(map(str, deg1))}"
        )
    for v in g.vertices:
        if v in deg1:
            continue
        if g.degree(v) != 3:
            raise NonTrivalent(f"vertex {v!r} has degree {g.degree(v)}")

    if not _connected(g.vertices, g.edges):
        raise Disconnected("graph is not connected")
    return g


def _connected(vertices, edges):
    if not vertices:
        return False
    adj = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


def graph_from_json(text):
    return validate(json.loads(text))


# -- classification ---------------------------------------------------------


def _is_trivalent_tree(vertices, edges):
    """Tree with all degrees in {1, 3} (degree-0 single vertex rejected)."""
    if len(edges) != len(vertices) - 1 or not _connected(vertices, edges):
        return False
    deg = {v: 0 for v in vertices}
    for a, b in edges:
        if a == b:
            return False
        deg[a] += 1
        deg[b] += 1
    return all(d in (1, 3) for d in deg.values())


def _is_caterpillar_tree(vertices, edges):
    """Trivalent tree in which every vertex is adjacent to some degree-1
    vertex (spine vertices all touch leaves)."""
    if not _is_trivalent_tree(vertices, edges):
        return False
    deg = {v: 0 for v in vertices}
    adj = {v: set() for v in vertices}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        adj[a].add(b)
        adj[b].add(a)
    leaves = {v for v in vertices if deg[v] == 1}
    if len(vertices) == 2:
        return True  # single edge between two leaves
    return all(v in leaves or adj[v] & leaves for v in vertices)


def _loop_indices(g):
    return [i for i, (a, b) in enumerate(g.edges) if a == b]


def _head_tail_vertices(vertices, edges):
    """Vertices adjacent to >= 2 degree-1 vertices of a caterpillar tree
    (its head and tail), plus degree-1 vertices whose neighbor has another
    degree-1 neighbor (the paired leaves themselves)."""
    deg = {v: 0 for v in vertices}
    adj = {v: [] for v in vertices}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        adj[a].append(b)
        adj[b].append(a)
    leaves = {v for v in vertices if deg[v] == 1}
    heads = {v for v in vertices if len([w for w in adj[v] if w in leaves]) >= 2}
    if len(vertices) == 2 and len(edges) == 1:
        heads = set(vertices)
    paired = {v for v in leaves if adj[v][0] in heads}
    return heads, paired


def _is_caterpillar_graph(g):
    """Genus-1 graph obtained from a caterpillar tree by exactly one of:
    a loop on a head/tail leaf, or a doubled edge at an edge midpoint."""
    if g.genus != 1:
        return False

    # (a) undo a loop: remove the loop at v; v becomes a free leaf that must
    # have been a head/tail leaf of the resulting caterpillar tree.
    for i in _loop_indices(g):
        v = g.edges[i][0]
        rest = [e for j, e in enumerate(g.edges) if j != i]
        if sum(1 for a, b in rest if v in (a, b)) != 1:
            continue
        if not _is_caterpillar_tree(g.vertices, rest):
            continue
        _, paired = _head_tail_vertices(g.vertices, rest)
        if v in paired:
            return True

    # (b) undo a doubled edge: two parallel edges a--b where a and b each
    # have exactly one further edge (to u and v); contracting the gadget to
    # an edge u--v must give a caterpillar tree.
    from collections import Counter

    pair_count = Counter()
    for a, b in g.edges:
        if a != b:
            pair_count[frozenset((a, b))] += 1
    for pair, cnt in pair_count.items():
        if cnt != 2:
            continue
        a, b = tuple(pair)
        others_a = [e for e in g.edges if a in e and b not in e]
        others_b = [e for e in g.edges if b in e and a not in e]
        if len(others_a) != 1 or len(others_b) != 1:
            continue
        (u,) = [x for x in others_a[0] if x != a] or [a]
        (v,) = [x for x in others_b[0] if x != b] or [b]
        if u == a or v == b or u == v:
            continue
        verts = tuple(x for x in g.vertices if x not in (a, b))
        edges = [e for e in g.edges if a not in e and b not in e]
        edges.append((u, v))
        if _is_caterpillar_tree(verts, edges):
            return True
    return False


def _is_tree_like(g):
    """Obtained from a trivalent tree by attaching one loop at each of
    `genus` leaves."""
    loops = _loop_indices(g)
    if len(loops) != g.genus:
        return False
    for i in loops:
        v = g.edges[i][0]
        others = [j for j in g.incident_edges(v) if j != i]
        # incident_edges lists the loop twice
        if len(others) != 1:
            return False
    rest = [e for i, e in enumerate(g.edges) if i not in loops]
    if g.genus == 0:
        return _is_trivalent_tree(g.vertices, rest)
    return _is_trivalent_tree(g.vertices, rest)


def classify(g):
    g = validate(g)
    if g.genus == 0 and _is_caterpillar_tree(g.vertices, g.edges):
        return GraphClass.CATERPILLAR_TREE
    if _is_caterpillar_graph(g):
        return GraphClass.CATERPILLAR_GRAPH
    if _is_tree_like(g):
        return GraphClass.TREE_LIKE
    return GraphClass.OTHER_TRIVALENT


# -- compatibility ------------------------------------------------------------


def odd_leaf_count_is_even(r):
    return sum(1 for x in r if x % 2) % 2 == 0


def is_compatible(g, r):
    """True iff every odd-weighted leaf shares its trinode with another
    odd-weighted leaf."""
    g = validate(g)
    if len(r) != g.n_leaves:
        raise LengthMismatch(f"{len(r)} weights for {g.n_leaves} leaves")
    lmap = g.leaf_map
    odd = [lab for lab, w in zip(sorted(lmap), r) if w % 2]
    # attachment vertex of each leaf (its unique neighbor)
    attach = {}
    for lab in odd:
        v = lmap[lab]
        for a, b in g.edges:
            if a == v:
                attach[lab] = b
            elif b == v:
                attach[lab] = a
    for lab in odd:
        mates = [m for m in odd if m != lab and attach.get(m) == attach[lab]]
        if not mates:
            return False
    return True


# -- explode ------------------------------------------------------------------


@dataclass(frozen=True)
class GraphFragment:
    """A component of an exploded graph.

    stub_edges are the indices (into `edges`) of cut half-edges; their far
    endpoint is a synthetic degree-1 vertex carrying no leaf label.
    original_edges[i] is the index of edges[i] in the source graph.
    """

    vertices: tuple
    edges: tuple
    leaves: tuple
    stub_edges: tuple
    original_edges: tuple

    @property
    def leaf_map(self):
        return dict(self.leaves)

    def degree(self, v):
        d = 0
        for a, b in self.edges:
            d += (a == v) + (b == v)
        return d

    @property
    def internal_vertices(self):
        skip = {v for _, v in self.leaves}
        skip |= {v for v in self.vertices if isinstance(v, tuple) and v and v[0] == "stub"}
        return tuple(v for v in self.vertices if v not in skip and self.degree(v) != 1)

    def incident_edges(self, v):
        out = []
        for i, (a, b) in enumerate(self.edges):
            if a == v:
                out.append(i)
            if b == v:
                out.append(i)
        return out


@dataclass(frozen=True)
class ExplodedGraph:
    components: tuple
    split_edges: tuple  # (original edge index, (comp, edge), (comp, edge))
    source: MarkedGraph


def _bridges(g):
    """Indices of separating edges (loops and parallel edges never qualify)."""
    from collections import Counter

    pair_count = Counter(frozenset(e) for e in g.edges if e[0] != e[1])
    out = []
    for i, (a, b) in enumerate(g.edges):
        if a == b or pair_count[frozenset((a, b))] > 1:
            continue
        rest = [e for j, e in enumerate(g.edges) if j != i]
        if not _connected(g.vertices, rest):
            out.append(i)
    return out


def explode(g):
    """Cut every separating non-leaf edge into two half-edges."""
    g = validate(g)
    leaf_edge_idx = {g.leaf_edge_index(lab) for lab, _ in g.leaves}
    cuts = [i for i in _bridges(g) if i not in leaf_edge_idx]

    verts = list(g.vertices)
    edges = []
    edge_origin = []
    stub_of_cut = {}  # cut edge index -> (edge slot for a-side, edge slot for b-side)
    for i, (a, b) in enumerate(g.edges):
        if i in cuts:
            sa, sb = ("stub", i, 0), ("stub", i, 1)
            verts += [sa, sb]
            edges.append((a, sa))
            edge_origin.append(i)
            edges.append((b, sb))
            edge_origin.append(i)
            stub_of_cut[i] = (len(edges) - 2, len(edges) - 1)
        else:
            edges.append((a, b))
            edge_origin.append(i)

    # connected components of the cut graph
    adj = {v: set() for v in verts}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    comp_of = {}
    comps = []
    for v in verts:
        if v in comp_of:
            continue
        comp = []
        stack = [v]
        comp_of[v] = len(comps)
        while stack:
            x = stack.pop()
            comp.append(x)
            for w in adj[x]:
                if w not in comp_of:
                    comp_of[w] = len(comps)
                    stack.append(w)
        comps.append(comp)

    lmap = g.leaf_map
    fragments = []
    global_to_local = {}  # global edge slot -> (component, local index)
    for ci, comp in enumerate(comps):
        cset = set(comp)
        local_edges = []
        local_origin = []
        local_stubs = []
        local_leaves = []
        for gi, (a, b) in enumerate(edges):
            if a in cset or b in cset:
                global_to_local[gi] = (ci, len(local_edges))
                if isinstance(b, tuple) and b and b[0] == "stub":
                    local_stubs.append(len(local_edges))
                local_edges.append((a, b))
                local_origin.append(edge_origin[gi])
        for lab, v in g.leaves:
            if v in cset:
                local_leaves.append((lab, v))
        fragments.append(
            GraphFragment(
                vertices=tuple(comp),
                edges=tuple(local_edges),
                leaves=tuple(local_leaves),
                stub_edges=tuple(local_stubs),
                original_edges=tuple(local_origin),
            )
        )

    split_records = tuple(
        (i, global_to_local[sa], global_to_local[sb])
        for i, (sa, sb) in sorted(stub_of_cut.items())
    )
    return ExplodedGraph(tuple(fragments), split_records, g)


def reglue(eg):
    """Inverse of explode (up to edge order)."""
    verts = []
    for frag in eg.components:
        for v in frag.vertices:
            if not (isinstance(v, tuple) and v and v[0] == "stub"):
                verts.append(v)
    edges = {}
    for i, (a, b) in enumerate(eg.source.edges):
        edges[i] = (a, b)
    leaves = []
    for frag in eg.components:
        leaves.extend(frag.leaves)
    return validate(
        MarkedGraph(tuple(verts), tuple(edges[i] for i in sorted(edges)), tuple(sorted(leaves)))
    )


# -- builders ------------------------------------------------------------------


def caterpillar_tree(n):
    """The n-leaf caterpillar tree: a spine v1..v_{n-2} with leaf pairs at
    both ends.  n=2 gives a single edge, n=3 a single trinode."""
    if n < 2:
        raise BadLeafLabels("need at least 2 leaves")
    if n == 2:
        return validate(MarkedGraph(("l1", "l2"), (("l1", "l2"),), ((1, "l1"), (2, "l2"))))
    spine = [f"v{i}" for i in range(1, n - 1)]
    edges = [(spine[i], spine[i + 1]) for i in range(len(spine) - 1)]
    leaves = []
    leafv = []

    def add_leaf(at):
        name = f"l{len(leaves) + 1}"
        leafv.append(name)
        edges.append((at, name))
        leaves.append((len(leaves) + 1, name))

    add_leaf(spine[0])
    add_leaf(spine[0])
    for v in spine[1:-1]:
        add_leaf(v)
    if len(spine) > 1:
        add_leaf(spine[-1])
        add_leaf(spine[-1])
    else:
        add_leaf(spine[0])
    return validate(MarkedGraph(tuple(spine) + tuple(leafv), tuple(edges), tuple(leaves)))


def add_loop_at_leaf(g, label):
    """Replace leaf `label` by a loop at its vertex (genus +1, one fewer
    leaf); remaining labels are renumbered preserving order."""
    g = validate(g)
    v = g.leaf_map[label]
    edges = list(g.edges) + [(v, v)]
    leaves = [(lab, w) for lab, w in g.leaves if lab != label]
    leaves = tuple((i + 1, w) for i, (_, w) in enumerate(sorted(leaves)))
    return validate(MarkedGraph(g.vertices, tuple(edges), leaves))


def double_edge_at(g, edge_index):
    """Subdivide edge `edge_index` with two new vertices joined by a pair of
    parallel edges (genus +1)."""
    g = validate(g)
    a, b = g.edges[edge_index]
    m1, m2 = f"d{edge_index}a", f"d{edge_index}b"
    edges = [e for i, e in enumerate(g.edges) if i != edge_index]
    edges += [(a, m1), (m1, m2), (m1, m2), (m2, b)]
    return validate(MarkedGraph(g.vertices + (m1, m2), tuple(edges), g.leaves))


def loop_with_leaf():
    """Single trinode carrying a loop and a pendant labeled leaf."""
    return validate(
        MarkedGraph(("v", "l1"), (("v", "v"), ("v", "l1")), ((1, "l1"),))
    )


# -- enumeration ---------------------------------------------------------------


def enumerate_graphs(genus, n_leaves, max_vertices=8):
    """All connected trivalent multigraphs with the given first Betti number
    and leaf count, up to isomorphism fixing leaf labels."""
    if genus > 2 or n_leaves > 6:
        raise BoundsTooLarge("desk scale is genus <= 2, leaves <= 6")
    n_internal = 2 * genus + n_leaves - 2
    if n_internal > max_vertices:
        raise BoundsTooLarge(f"{n_internal} internal vertices > {max_vertices}")
    if n_internal < 0:
        return []
    if n_internal == 0:
        if genus == 0 and n_leaves == 2:
            return [caterpillar_tree(2)]
        return []

    n_int_edges = 3 * genus + n_leaves - 3
    internal = list(range(n_internal))
    # candidate internal edges: unordered pairs including loops
    slots = [(i, j) for i in internal for j in internal[i:]]

    seen = set()
    out = []
    for combo in combinations_with_replacement(slots, n_int_edges):
        deg = [0] * n_internal
        for i, j in combo:
            deg[i] += 1
            deg[j] += 1
        if any(d > 3 for d in deg):
            continue
        free = [3 - d for d in deg]
        if sum(free) != n_leaves:
            continue
        # attach labeled leaves to the free slots
        for assign in _leaf_assignments(free, n_leaves):
            verts = list(internal) + [f"leaf{k}" for k in range(1, n_leaves + 1)]
            edges = list(combo) + [
                (assign[k - 1], f"leaf{k}") for k in range(1, n_leaves + 1)
            ]
            if not _connected(tuple(verts), edges):
                continue
            key = _canonical_key(n_internal, combo, assign)
            if key in seen:
                continue
            seen.add(key)
            leaves = tuple((k, f"leaf{k}") for k in range(1, n_leaves + 1))
            out.append(validate(MarkedGraph(tuple(verts), tuple(edges), leaves)))
    return out


def _leaf_assignments(free, n_leaves):
    """All maps leaf label -> internal vertex exactly filling the free slots."""
    def rec(label, free):
        if label > n_leaves:
            yield ()
            return
        for v, f in enumerate(free):
            if f > 0:
                free2 = list(free)
                free2[v] -= 1
                for rest in rec(label + 1, free2):
                    yield (v,) + rest

    return rec(1, list(free))


def _canonical_key(n, combo, assign):
    best = None
    for perm in permutations(range(n)):
        edges = tuple(sorted(tuple(sorted((perm[i], perm[j]))) for i, j in combo))
        att = tuple(perm[v] for v in assign)
        key = (edges, att)
        if best is None or key < best:
            best = key
    return best
