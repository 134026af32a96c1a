"""Graded lattice polytopes with parity sublattices.

A GradedPolytope is an integer system a·x <= N·b / c·x = N·d whose right-hand
sides scale with the dilation degree N, together with a parity sublattice
(subsets of coordinates required to have even sum).  Graph polytopes, the
building blocks of their exploded decompositions, fiber products, and the
assembly pipeline all live here.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from .errors import (
    BaseMismatch,
    InvalidParams,
    LengthMismatch,
    OddWeightEncountered,
    ParityViolation,
    Unbounded,
)
from .graphs import GraphFragment, explode, validate

INF = float("inf")


@dataclass(frozen=True)
class ParityLattice:
    """Sublattice of Z^d cut out by even-sum conditions.

    parity_sets are coordinate index tuples; an index may repeat (a loop edge
    counts twice in its trinode sum)."""

    ambient_dim: int
    parity_sets: tuple = ()

    def contains(self, point):
        return all(sum(point[i] for i in s) % 2 == 0 for s in self.parity_sets)


@dataclass(frozen=True)
class GradedPolytope:
    dim: int
    inequalities: tuple  # ((row), rhs): row·x <= N·rhs
    equalities: tuple    # ((row), rhs): row·x == N·rhs
    lattice: ParityLattice
    coord_names: tuple = ()
    to_lattice: tuple = None  # optional rational rows mapping lattice -> Z^k

    def lattice_points(self, N):
        return lattice_points(self, N)

    def transform_point(self, point):
        """Image of a lattice point under to_lattice (identity if absent)."""
        if self.to_lattice is None:
            return tuple(point)
        out = []
        for row in self.to_lattice:
            v = sum(Fraction(c) * x for c, x in zip(row, point))
            if v.denominator != 1:
                raise ParityViolation(f"{point} maps to non-integer {v}")
            out.append(int(v))
        return tuple(out)

    def to_json_dict(self):
        return {
            "dim": self.dim,
            "inequalities": [[list(row), rhs] for row, rhs in self.inequalities],
            "equalities": [[list(row), rhs] for row, rhs in self.equalities],
            "paritySets": [list(s) for s in self.lattice.parity_sets],
        }


# -- lattice point enumeration -------------------------------------------


@lru_cache(maxsize=None)
def lattice_points(P, N):
    """All lattice members of the N-th dilation, lexicographically sorted."""
    if N < 0:
        raise InvalidParams("dilation must be nonnegative")
    rows = [(r, rhs * N) for r, rhs in P.inequalities]
    for r, rhs in P.equalities:
        rows.append((r, rhs * N))
        rows.append((tuple(-c for c in r), -rhs * N))
    if P.dim == 0:
        if all(0 <= rhs for _, rhs in rows):
            return (tuple(),)
        return tuple()

    lo, hi = _propagate_bounds(P.dim, rows)
    if lo is None:
        return tuple()

    # suffix extreme contributions per constraint
    n = len(rows)
    smin = [[0] * (P.dim + 1) for _ in range(n)]
    for c, (r, _) in enumerate(rows):
        acc = 0
        for j in range(P.dim - 1, -1, -1):
            a = r[j]
            acc += min(a * lo[j], a * hi[j])
            smin[c][j] = acc

    psets = [tuple(s) for s in P.lattice.parity_sets]
    pmax = [max(s) if s else -1 for s in psets]
    check_at = {}
    for s, m in zip(psets, pmax):
        check_at.setdefault(m, []).append(s)

    out = []
    point = [0] * P.dim
    partial = [0] * n

    def dfs(k):
        if k == P.dim:
            out.append(tuple(point))
            return
        xlo, xhi = lo[k], hi[k]
        for c, (r, rhs) in enumerate(rows):
            a = r[k]
            if a == 0:
                continue
            room = rhs - partial[c] - smin[c][k + 1]
            if a > 0:
                xhi = min(xhi, room // a)
            else:
                # a*x <= room with a < 0  ->  x >= ceil(room/a)
                xlo = max(xlo, -(room // (-a)))
        for x in range(xlo, xhi + 1):
            point[k] = x
            ok = True
            for c, (r, _) in enumerate(rows):
                partial[c] += r[k] * x
            for s in check_at.get(k, ()):
                if sum(point[i] for i in s) % 2:
                    ok = False
                    break
            if ok:
                dfs(k + 1)
            for c, (r, _) in enumerate(rows):
                partial[c] -= r[k] * x
        point[k] = 0

    dfs(0)
    return tuple(out)


def _propagate_bounds(dim, rows):
    """Exact interval propagation; returns (lo, hi) or (None, None) if
    infeasible; raises Unbounded if a coordinate cannot be bounded."""
    lo = [-INF] * dim
    hi = [INF] * dim
    for _ in range(2 * dim + 6):
        changed = False
        for r, rhs in rows:
            for i in range(dim):
                a = r[i]
                if a == 0:
                    continue
                rest = 0
                ok = True
                for j in range(dim):
                    if j == i or r[j] == 0:
                        continue
                    m = min(r[j] * lo[j], r[j] * hi[j])
                    if m == -INF:
                        ok = False
                        break
                    rest += m
                if not ok:
                    continue
                room = rhs - rest
                if a > 0:
                    b = room // a
                    if b < hi[i]:
                        hi[i] = b
                        changed = True
                else:
                    b = -(room // (-a))
                    if b > lo[i]:
                        lo[i] = b
                        changed = True
        if any(lo[i] > hi[i] for i in range(dim)):
            return None, None
        if not changed:
            break
    if any(lo[i] == -INF or hi[i] == INF for i in range(dim)):
        raise Unbounded("could not bound all coordinates")
    return [int(x) for x in lo], [int(x) for x in hi]


# -- graph polytopes -----------------------------------------------------


def _unit(dim, i, v=1):
    row = [0] * dim
    row[i] = v
    return tuple(row)


def _trinode_rows(dim, inc, L):
    """Triangle + level inequalities and parity set for incident edge index
    triple `inc` (loops appear twice)."""
    ineqs = []
    for i in range(3):
        row = [0] * dim
        row[inc[i]] += 1
        row[inc[(i + 1) % 3]] -= 1
        row[inc[(i + 2) % 3]] -= 1
        ineqs.append((tuple(row), 0))
    level = [0] * dim
    for e in inc:
        level[e] += 1
    ineqs.append((tuple(level), 2 * L))
    return ineqs, tuple(inc)


def from_graph(g, r, L, lattice="parity"):
    """The polytope of nonnegative edge weightings of g with leaf weights r
    and level L: per trinode the triangle inequalities, level sum <= 2L, and
    (parity lattice) even trinode sum."""
    g = validate(g)
    if len(r) != g.n_leaves:
        raise LengthMismatch(f"{len(r)} weights for {g.n_leaves} leaves")
    dim = len(g.edges)
    ineqs = [(_unit(dim, i, -1), 0) for i in range(dim)]
    psets = []
    for v in g.internal_vertices:
        inc = g.incident_edges(v)
        rows, pset = _trinode_rows(dim, inc, L)
        ineqs.extend(rows)
        psets.append(pset)
    eqs = []
    for lab, _ in g.leaves:
        eqs.append((_unit(dim, g.leaf_edge_index(lab)), r[lab - 1]))
    names = tuple(f"w{i}" for i in range(dim))
    pl = ParityLattice(dim, tuple(psets) if lattice == "parity" else ())
    return GradedPolytope(dim, tuple(ineqs), tuple(eqs), pl, names)


def _doubled_pairs(frag):
    """Index pairs of parallel (doubled) edges in a fragment."""
    from collections import Counter

    cnt = Counter()
    for i, (a, b) in enumerate(frag.edges):
        if a != b:
            cnt[frozenset((a, b))] += 1
    pairs = []
    seen = set()
    for key, c in cnt.items():
        if c == 2:
            idx = [i for i, (a, b) in enumerate(frag.edges)
                   if a != b and frozenset((a, b)) == key]
            pairs.append(tuple(idx))
            seen.update(idx)
    return pairs, seen


def fragment_polytope(frag, r_map, L, even_stubs=False):
    """Polytope of a graph fragment; stub edges are free coordinates.

    With even_stubs=True every stub coordinate additionally carries an even
    parity condition (the interior-edge evenness that holds in context for
    compatible weights), and a lattice-coordinate transform is attached:
    doubled-edge pairs map to ((y1-y2)/2, (y1+y2)/2), loop edges stay, all
    other (even) edges are halved."""
    dim = len(frag.edges)
    ineqs = [(_unit(dim, i, -1), 0) for i in range(dim)]
    psets = []
    for v in frag.internal_vertices:
        inc = frag.incident_edges(v)
        rows, pset = _trinode_rows(dim, inc, L)
        ineqs.extend(rows)
        psets.append(pset)
    eqs = []
    for lab, _ in frag.leaves:
        v = frag.leaf_map[lab]
        e = frag.incident_edges(v)[0]
        eqs.append((_unit(dim, e), r_map[lab]))
    to_lattice = None
    if even_stubs:
        for e in frag.stub_edges:
            psets.append((e,))
        loops = {i for i, (a, b) in enumerate(frag.edges) if a == b}
        pairs, paired = _doubled_pairs(frag)
        rows = []
        for i in range(dim):
            if i in paired:
                continue
            if i in loops:
                rows.append(_unit(dim, i))
            else:
                rows.append(tuple(Fraction(c, 2) for c in _unit(dim, i)))
        for y1, y2 in pairs:
            a = [Fraction(0)] * dim
            a[y1], a[y2] = Fraction(1, 2), Fraction(-1, 2)
            b = [Fraction(0)] * dim
            b[y1] = b[y2] = Fraction(1, 2)
            rows.append(tuple(a))
            rows.append(tuple(b))
        to_lattice = tuple(rows)
    names = tuple(f"e{i}" for i in range(dim))
    return GradedPolytope(dim, tuple(ineqs), tuple(eqs),
                          ParityLattice(dim, tuple(psets)), names, to_lattice)


# -- building blocks -----------------------------------------------------


@dataclass(frozen=True)
class BlockKind:
    name: str  # interval | p3 | p3_fixed1 | p3_fixed2 | loop_b | loop_b2
    params: tuple


def interval(L):
    if L < 0:
        raise InvalidParams("L must be nonnegative")
    return GradedPolytope(
        1, ((( -1,), 0), ((1,), L)), (), ParityLattice(1), ("t",),
        ((Fraction(1),),),
    )


def point_polytope():
    """The 0-dimensional polytope (fiber products over it are products)."""
    return GradedPolytope(0, (), (), ParityLattice(0), (), ())


_HALF = Fraction(1, 2)


def p3(L, even_edges=False):
    """Trinode polytope: hull of (0,0,0),(L,L,0),(L,0,L),(0,L,L)."""
    if L < 0:
        raise InvalidParams("L must be nonnegative")
    ineqs = [(_unit(3, i, -1), 0) for i in range(3)]
    rows, pset = _trinode_rows(3, (0, 1, 2), L)
    ineqs.extend(rows)
    psets = [pset]
    if even_edges:
        psets += [(0,), (1,), (2,)]
        trans = tuple(tuple(_HALF * c for c in _unit(3, i)) for i in range(3))
    else:
        # triangle basis (0,1,1),(1,0,1),(1,1,0) for the trinode parity
        # lattice; P3(L) becomes the simplex {t >= 0, sum t <= L}
        trans = (
            (-_HALF, _HALF, _HALF),
            (_HALF, -_HALF, _HALF),
            (_HALF, _HALF, -_HALF),
        )
    return GradedPolytope(3, tuple(ineqs), (), ParityLattice(3, tuple(psets)),
                          ("w1", "w2", "w3"), trans)


def p3_fixed1(r, L, even_edges=False):
    """Trinode with first edge pinned to r."""
    if r < 0 or L < 0 or r > 2 * L:
        raise InvalidParams(f"need 0 <= r <= 2L, got r={r}, L={L}")
    base = p3(L)
    eqs = ((_unit(3, 0), r),)
    psets = [base.lattice.parity_sets[0]]
    trans = None
    if even_edges:
        if r % 2:
            raise InvalidParams("even_edges requires even r")
        psets += [(1,), (2,)]
        trans = (
            (_HALF, Fraction(0), Fraction(0)),
            (Fraction(0), _HALF, Fraction(0)),
            (Fraction(0), Fraction(0), _HALF),
        )
    elif r % 2 == 0:
        # lattice {w2 + w3 even}: basis ((w2+w3)/2, (w2-w3)/2), w1 pinned
        trans = (
            (_HALF, Fraction(0), Fraction(0)),
            (Fraction(0), _HALF, _HALF),
            (Fraction(0), _HALF, -_HALF),
        )
    return GradedPolytope(3, base.inequalities, eqs,
                          ParityLattice(3, tuple(psets)), base.coord_names, trans)


def p3_fixed2(r, s, L):
    """Trinode with two edges pinned to r and s; the free weight t ranges
    over |r-s| <= t <= min(r+s, 2L-r-s) with t = r+s mod 2."""
    if r < 0 or s < 0 or L < 0 or r > 2 * L or s > 2 * L:
        raise InvalidParams(f"need 0 <= r,s <= 2L, got r={r}, s={s}, L={L}")
    base = p3(L)
    eqs = ((_unit(3, 0), r), (_unit(3, 1), s))
    trans = None
    if (r + s) % 2 == 0:
        trans = (
            (_HALF, Fraction(0), Fraction(0)),
            (Fraction(0), _HALF, Fraction(0)),
            (Fraction(0), Fraction(0), _HALF),
        )
    return GradedPolytope(3, base.inequalities, eqs,
                          ParityLattice(3, base.lattice.parity_sets[:1]),
                          base.coord_names, trans)


def loop_b(L):
    """Loop-with-edge block: coordinates (x, y), y <= 2x, 2x + y <= 2L,
    trinode sum 2x + y even (so y even)."""
    if L < 0:
        raise InvalidParams("L must be nonnegative")
    ineqs = (
        ((-1, 0), 0),
        ((0, -1), 0),
        ((-2, 1), 0),
        ((2, 1), 2 * L),
    )
    trans = ((Fraction(1), Fraction(0)), (Fraction(0), _HALF))
    return GradedPolytope(2, ineqs, (), ParityLattice(2, ((0, 0, 1),)),
                          ("x", "y"), trans)


def loop_b2(L):
    """Doubled-edge block at level 2L: coordinates (a, y1, y2, c) with both
    trinode systems, outer edges a, c even.  Lattice coordinates are
    (x, z, A, B) = (a/2, c/2, (y1-y2)/2, (y1+y2)/2)."""
    if L < 0:
        raise InvalidParams("L must be nonnegative")
    ineqs = [(_unit(4, i, -1), 0) for i in range(4)]
    rows_u, pset_u = _trinode_rows(4, (0, 1, 2), 2 * L)
    rows_v, pset_v = _trinode_rows(4, (3, 1, 2), 2 * L)
    ineqs.extend(rows_u)
    ineqs.extend(rows_v)
    psets = (pset_u, pset_v, (0,), (3,))
    trans = (
        (_HALF, Fraction(0), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(0), _HALF),
        (Fraction(0), _HALF, -_HALF, Fraction(0)),
        (Fraction(0), _HALF, _HALF, Fraction(0)),
    )
    return GradedPolytope(4, tuple(ineqs), (), ParityLattice(4, psets),
                          ("a", "y1", "y2", "c"), trans)


def building_block(kind):
    table = {
        "interval": interval,
        "p3": p3,
        "p3_fixed1": p3_fixed1,
        "p3_fixed2": p3_fixed2,
        "loop_b": loop_b,
        "loop_b2": loop_b2,
    }
    if kind.name not in table:
        raise InvalidParams(f"unknown block kind {kind.name!r}")
    return table[kind.name](*kind.params)


def with_full_lattice(P):
    return replace(P, lattice=ParityLattice(P.dim), to_lattice=None)


# -- B_2 change of coordinates and quadrants -----------------------------


def b2_change_of_coords(p):
    """(a, y1, y2, c) -> (x, z, A, B) = (a/2, c/2, (y1-y2)/2, (y1+y2)/2)."""
    a, y1, y2, c = p
    if a % 2 or c % 2 or (y1 + y2) % 2:
        raise ParityViolation(f"{p} is not a doubled-edge lattice point")
    return (a // 2, c // 2, (y1 - y2) // 2, (y1 + y2) // 2)


def b2_change_of_coords_inverse(q):
    x, z, A, B = q
    return (2 * x, B + A, B - A, 2 * z)


def quadrant(q, L):
    """The four interlacing-diagram quadrants of the transformed doubled-edge
    block, in (x, z, A, B) coordinates with the full integer lattice.

    Q1: 0 <= A <= x, z and x, z <= B <= L; Q2 mirrors A -> -A; Q3 and Q4
    are the reflections B -> 2L - B."""
    if q not in (1, 2, 3, 4):
        raise InvalidParams("quadrant index must be 1..4")
    if L < 0:
        raise InvalidParams("L must be nonnegative")
    X, Z, A, B = 0, 1, 2, 3
    ineqs = [(_unit(4, X, -1), 0), (_unit(4, Z, -1), 0)]
    s = 1 if q in (1, 3) else -1
    # s*A >= 0 ;  s*A <= x ;  s*A <= z
    ineqs.append((_unit(4, A, -s), 0))
    row = [0] * 4
    row[A], row[X] = s, -1
    ineqs.append((tuple(row), 0))
    row = [0] * 4
    row[A], row[Z] = s, -1
    ineqs.append((tuple(row), 0))
    if q in (1, 2):
        # x, z <= B <= L
        for i in (X, Z):
            row = [0] * 4
            row[i], row[B] = 1, -1
            ineqs.append((tuple(row), 0))
        ineqs.append((_unit(4, B), L))
        ineqs.append((_unit(4, B, -1), 0))
    else:
        # x, z <= 2L - B, and L <= B <= 2L
        for i in (X, Z):
            row = [0] * 4
            row[i], row[B] = 1, 1
            ineqs.append((tuple(row), 2 * L))
        ineqs.append((_unit(4, B, -1), -L))
        ineqs.append((_unit(4, B), 2 * L))
    return GradedPolytope(4, tuple(ineqs), (), ParityLattice(4),
                          ("x", "z", "A", "B"), None)


# -- lattice maps and fiber products -------------------------------------


@dataclass(frozen=True)
class LatticeMap:
    """Rational matrix mapping source points into a target polytope; required
    to be integral on every lattice point it is applied to."""

    rows: tuple  # tuple of tuples of Fractions
    target: GradedPolytope
    source: GradedPolytope = None

    def apply(self, point):
        out = []
        for row in self.rows:
            v = sum(Fraction(c) * x for c, x in zip(row, point))
            if v.denominator != 1:
                raise OddWeightEncountered(
                    f"point {point} maps to non-integer coordinate {v}")
            out.append(int(v))
        return tuple(out)


def identity_map(P):
    rows = tuple(tuple(Fraction(1 if i == j else 0) for j in range(P.dim))
                 for i in range(P.dim))
    return LatticeMap(rows, P, P)


def edge_projection(P, coord, L):
    """w -> w_coord / 2 into the interval [0, L] (interior edges carry even
    weight in context)."""
    row = tuple(Fraction(1, 2) if j == coord else Fraction(0)
                for j in range(P.dim))
    return LatticeMap((row,), interval(L), P)


@dataclass(frozen=True)
class FiberProduct:
    """A fiber product P1 x_Q P2 on concatenated coordinates."""

    polytope: GradedPolytope
    p1: GradedPolytope
    p2: GradedPolytope
    f1: LatticeMap
    f2: LatticeMap
    offset: int  # dim of p1; p2 coordinates start here
    glued_pairs: tuple = ()  # (i, j) native coordinate pairs with w_i = w_j

    def split(self, point):
        return point[: self.offset], point[self.offset:]


def fiber_product(P1, f1, P2, f2):
    """Points (x, y) with f1(x) = f2(y); BaseMismatch unless the maps share
    a target."""
    if f1.target != f2.target:
        raise BaseMismatch("maps must share a base polytope")
    d1, d2 = P1.dim, P2.dim
    dim = d1 + d2

    def pad1(row):
        return tuple(row) + (0,) * d2

    def pad2(row):
        return (0,) * d1 + tuple(row)

    ineqs = [(pad1(r), b) for r, b in P1.inequalities]
    ineqs += [(pad2(r), b) for r, b in P2.inequalities]
    eqs = [(pad1(r), b) for r, b in P1.equalities]
    eqs += [(pad2(r), b) for r, b in P2.equalities]
    glued = []
    for r1, r2 in zip(f1.rows, f2.rows):
        combined = [Fraction(c) for c in r1] + [-Fraction(c) for c in r2]
        den = 1
        for c in combined:
            den = den * c.denominator // _gcd(den, c.denominator)
        eqs.append((tuple(int(c * den) for c in combined), 0))
        s1 = [j for j, c in enumerate(r1) if c != 0]
        s2 = [j for j, c in enumerate(r2) if c != 0]
        if len(s1) == 1 and len(s2) == 1 and r1[s1[0]] == r2[s2[0]]:
            glued.append((s1[0], d1 + s2[0]))
    psets = [tuple(s) for s in P1.lattice.parity_sets]
    psets += [tuple(d1 + i for i in s) for s in P2.lattice.parity_sets]
    names = tuple(f"L.{n}" for n in (P1.coord_names or [f"x{i}" for i in range(d1)]))
    names += tuple(f"R.{n}" for n in (P2.coord_names or [f"y{i}" for i in range(d2)]))
    trans = None
    if P1.to_lattice is not None and P2.to_lattice is not None:
        trans = tuple(tuple(row) + (Fraction(0),) * d2 for row in P1.to_lattice)
        trans += tuple((Fraction(0),) * d1 + tuple(row) for row in P2.to_lattice)
    poly = GradedPolytope(dim, tuple(ineqs), tuple(eqs),
                          ParityLattice(dim, tuple(psets)), names, trans)
    return FiberProduct(poly, P1, P2, f1, f2, d1, tuple(glued))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- assembly ------------------------------------------------------------


def recognize_block(frag, L):
    """Best-effort naming of a fragment as a building-block kind."""
    loops = [i for i, (a, b) in enumerate(frag.edges) if a == b]
    pairs, _ = _doubled_pairs(frag)
    internal = frag.internal_vertices
    n_leaf, n_stub = len(frag.leaves), len(frag.stub_edges)
    if pairs and len(internal) == 2 and len(frag.edges) == 4:
        return BlockKind("loop_b2", (L,))
    if loops and len(internal) == 1 and len(frag.edges) == 2:
        return BlockKind("loop_b", (L,))
    if len(internal) == 1 and len(frag.edges) == 3 and not loops:
        if n_leaf == 0:
            return BlockKind("p3", (L,))
        if n_leaf == 1:
            return BlockKind("p3_fixed1", (None, L))
        if n_leaf == 2:
            return BlockKind("p3_fixed2", (None, None, L))
    return None


@dataclass(frozen=True)
class Assembly:
    polytope: GradedPolytope
    components: tuple  # (fragment, BlockKind or None, GradedPolytope)
    steps: tuple       # readable fold description
    coord_map: tuple   # per final coordinate: (component, local edge, original edge)
    fiber_products: tuple  # the intermediate FiberProduct records


def assemble(eg, r, L, even_interior=False):
    """Fold the exploded components into a single polytope via fiber products
    over [0, L] along the split edges.

    The result has one coordinate per component edge (split edges appear once
    per side, glued by an equality); its lattice point count matches the
    source graph polytope in every dilation."""
    r_map = {lab: r[lab - 1] for lab, _ in eg.source.leaves}
    if len(r) != eg.source.n_leaves:
        raise LengthMismatch(f"{len(r)} weights for {eg.source.n_leaves} leaves")
    comps = []
    for frag in eg.components:
        P = fragment_polytope(frag, r_map, L, even_stubs=even_interior)
        comps.append((frag, recognize_block(frag, L), P))

    # order components along the split-edge tree, root = component 0
    n = len(eg.components)
    attach = {0: None}
    order = [0]
    pending = list(eg.split_edges)
    while pending:
        progressed = False
        for rec in list(pending):
            _, (ca, ea), (cb, eb) = rec
            if ca in attach and cb not in attach:
                attach[cb] = (rec, ca, ea, cb, eb)
                order.append(cb)
                pending.remove(rec)
                progressed = True
            elif cb in attach and ca not in attach:
                attach[ca] = (rec, cb, eb, ca, ea)
                order.append(ca)
                pending.remove(rec)
                progressed = True
        if not progressed:
            break

    coord_map = []
    placed_coord = {}  # (component, local edge) -> accumulated coordinate
    frag0 = eg.components[0]
    for i in range(len(frag0.edges)):
        placed_coord[(0, i)] = i
        coord_map.append((0, i, frag0.original_edges[i]))
    acc = comps[0][2]
    steps = [f"component0:{comps[0][1].name if comps[0][1] else 'fragment'}"]
    fps = []
    for c in order[1:]:
        rec, ca, ea, cb, eb = attach[c]
        frag = eg.components[c]
        P = comps[c][2]
        f1 = edge_projection(acc, placed_coord[(ca, ea)], L)
        f2 = edge_projection(P, eb, L)
        fp = fiber_product(acc, f1, P, f2)
        offset = fp.offset
        for i in range(len(frag.edges)):
            placed_coord[(c, i)] = offset + i
            coord_map.append((c, i, frag.original_edges[i]))
        acc = fp.polytope
        fps.append(fp)
        steps.append(
            f"x_[0,{L}] component{c}:"
            f"{comps[c][1].name if comps[c][1] else 'fragment'}")
    return Assembly(acc, tuple(comps), tuple(steps), tuple(coord_map), tuple(fps))


def assembled_point_to_graph_point(assembly, point):
    """Collapse an assembled point to edge weights of the source graph."""
    n_edges = max(orig for _, _, orig in assembly.coord_map) + 1
    out = [None] * n_edges
    for coord, (_, _, orig) in enumerate(assembly.coord_map):
        out[orig] = point[coord]
    return tuple(out)


# -- the cubic-relation region -------------------------------------------


def trinode_cubic_region():
    """The standard region of the trinode polytope at the origin whose toric
    ideal needs a cubic generator: in triangle-basis coordinates it is the
    unit cube intersected with the simplex; in edge coordinates its degree-1
    points are (0,0,0),(1,1,2),(1,2,1),(2,1,1),(2,2,2)."""
    ineqs = []
    # t_i >= 0: the triangle inequalities
    for i in range(3):
        row = [0] * 3
        row[i] = -1
        row[(i + 1) % 3] = 1
        row[(i + 2) % 3] = 1
        ineqs.append((tuple(-c for c in row), 0))
    # t_i <= 1: w_j + w_k - w_i <= 2
    for i in range(3):
        row = [0] * 3
        row[i] = -1
        row[(i + 1) % 3] = 1
        row[(i + 2) % 3] = 1
        ineqs.append((tuple(row), 2))
    # triangle inequalities on t: w_j + w_k <= 3 w_i
    for i in range(3):
        row = [1, 1, 1]
        row[i] = -3
        ineqs.append((tuple(row), 0))
    # implied box 0 <= w_i <= 2 (w_i = t_j + t_k with t in the unit cube)
    for i in range(3):
        ineqs.append((_unit(3, i, -1), 0))
        ineqs.append((_unit(3, i), 2))
    trans = (
        (-_HALF, _HALF, _HALF),
        (_HALF, -_HALF, _HALF),
        (_HALF, _HALF, -_HALF),
    )
    return GradedPolytope(3, tuple(ineqs), (), ParityLattice(3, ((0, 1, 2),)),
                          ("w1", "w2", "w3"), trans)
