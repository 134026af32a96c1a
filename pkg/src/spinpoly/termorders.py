"""Term weights and orders on lattice points and monomials.

A TermWeight assigns a rational weight to each lattice point; a monomial's
weight is the sum over its points.  A TotalOrder additionally carries a point
tie-break key; monomials are compared by (degree, weight, point keys sorted
decreasingly), which uniformly realizes lex-on-sorted-sequences, the
doubled-edge cascade, and the concatenation (boxtimes) rule.

Standard monomials are the weight-minimal members of their fiber: the set of
same-degree monomials with the same coordinate sum.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import NotFlag, NotTotal


def sigma_squared(v):
    return sum(x * x for x in v)


def balance_pair(x, y):
    s = x + y
    return (s // 2, s - s // 2)


def balance_tuple(vectors):
    """Repeated entrywise pairwise balancing to a fixpoint: the result has
    the same vector sum and every coordinate slice balanced (max-min <= 1)."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return ()
    dim = len(vecs[0])
    changed = True
    while changed:
        changed = False
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                for k in range(dim):
                    a, b = vecs[i][k], vecs[j][k]
                    lo, hi = balance_pair(a, b)
                    if (a, b) != (lo, hi) and abs(a - b) > 1:
                        vecs[i][k], vecs[j][k] = lo, hi
                        changed = True
    return tuple(tuple(v) for v in vecs)


def is_slice_balanced(vectors):
    if not vectors:
        return True
    dim = len(vectors[0])
    for k in range(dim):
        vals = [v[k] for v in vectors]
        if max(vals) - min(vals) > 1:
            return False
    return True


# -- monomials -----------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    points: tuple  # sorted tuple of coordinate tuples (a multiset)

    @classmethod
    def of(cls, pts):
        return cls(tuple(sorted(tuple(p) for p in pts)))

    @property
    def degree(self):
        return len(self.points)

    @property
    def image(self):
        if not self.points:
            return ()
        return tuple(map(sum, zip(*self.points)))

    def __mul__(self, other):
        return Monomial.of(self.points + other.points)

    def divisors(self, k):
        """Distinct degree-k divisor monomials."""
        seen = set()
        for combo in combinations_with_replacement(sorted(set(self.points)), k):
            cand = Monomial.of(combo)
            if cand in seen:
                continue
            if _multiset_leq(cand.points, self.points):
                seen.add(cand)
        return seen

    def to_json_list(self):
        return [list(p) for p in self.points]


def _multiset_leq(small, big):
    from collections import Counter

    cs, cb = Counter(small), Counter(big)
    return all(cb[p] >= m for p, m in cs.items())


def multiset_difference_size(m1, m2):
    """Degree of the exchanged part between two equal-degree monomials."""
    from collections import Counter

    c1, c2 = Counter(m1.points), Counter(m2.points)
    common = sum((c1 & c2).values())
    return m1.degree - common


# -- weights and orders ---------------------------------------------------


class TermWeight:
    """Weight function on lattice points; kind is a readable tag."""

    def __init__(self, fn, kind="custom"):
        self._fn = fn
        self.kind = kind

    def weight(self, point):
        return self._fn(point)

    def monomial_weight(self, m):
        return sum(self._fn(p) for p in m.points)

    @classmethod
    def sigma2(cls, transform=None):
        if transform is None:
            return cls(sigma_squared, "sigma2")
        return cls(lambda p: sigma_squared(transform(p)), "sigma2∘T")

    @classmethod
    def from_table(cls, table, default=0):
        return cls(lambda p: table.get(tuple(p), default), "table")

    @classmethod
    def zero(cls):
        return cls(lambda p: 0, "zero")


class TotalOrder(TermWeight):
    """TermWeight completed by a total point key.

    point_key(p) starts with the weight and appends the declared tie-break
    coordinates; monomial_key(m) = (degree, total weight, point keys sorted
    in decreasing order), compared lexicographically."""

    def __init__(self, fn, key_fn, kind="total"):
        super().__init__(fn, kind)
        self._key = key_fn

    def point_key(self, point):
        return self._key(point)

    def monomial_key(self, m):
        return (
            m.degree,
            self.monomial_weight(m),
            tuple(sorted((self._key(p) for p in m.points), reverse=True)),
        )


def sigma2_lex_order(transform=None):
    """Degree, then Σ², then lexicographic comparison of (transformed)
    coordinates.  This is the interval order, and for 2-dimensional balanced
    polytopes it is the lex-on-the-unit-square rule
    [1,1] > [1,0] > [0,1] > [0,0]."""
    t = transform or tuple

    def key(p):
        q = tuple(t(p))
        return (sigma_squared(q), q)

    def w(p):
        return sigma_squared(t(p))

    return TotalOrder(w, key, "sigma2-lex")


def b2_cascade_order(transform=None):
    """The doubled-edge block order on (x, z, A, B) points: degree, Σ², then
    B, then z, then x, then A."""
    t = transform or tuple

    def key(p):
        x, z, A, B = t(p)
        return (sigma_squared((x, z, A, B)), B, z, x, A)

    def w(p):
        return sigma_squared(t(p))

    return TotalOrder(w, key, "b2-cascade")


def boxtimes_order(o1, o2, split):
    """Concatenation order on fiber-product points (first `split` coordinates
    from the left factor): weight is the sum of factor weights; ties broken by
    the left factor's total key, then the right's."""
    if not isinstance(o1, TotalOrder) or not isinstance(o2, TotalOrder):
        raise NotTotal("boxtimes needs total component orders")

    def w(p):
        return o1.weight(p[:split]) + o2.weight(p[split:])

    def key(p):
        return (o1.point_key(p[:split]), o2.point_key(p[split:]))

    return TotalOrder(w, key, "boxtimes")


# -- fibers and standard monomials ---------------------------------------


def fiber_set(P, b, N):
    """All degree-N multisets of lattice points of P with coordinate sum b."""
    pts = P.lattice_points(1)
    b = tuple(b)
    out = []
    if N == 0:
        return [Monomial.of(())] if all(x == 0 for x in b) else []
    dim = len(b)
    n = len(pts)
    # suffix coordinate extremes over pts[i:] for pruning
    sufmin = [[0] * dim for _ in range(n + 1)]
    sufmax = [[0] * dim for _ in range(n + 1)]
    if n:
        sufmin[n - 1] = list(pts[n - 1])
        sufmax[n - 1] = list(pts[n - 1])
    for i in range(n - 2, -1, -1):
        for k in range(dim):
            sufmin[i][k] = min(pts[i][k], sufmin[i + 1][k])
            sufmax[i][k] = max(pts[i][k], sufmax[i + 1][k])

    chosen = []

    def dfs(i, rem, target):
        if rem == 0:
            if all(x == 0 for x in target):
                out.append(Monomial.of(chosen))
            return
        if i == n:
            return
        for k in range(dim):
            if target[k] < rem * sufmin[i][k] or target[k] > rem * sufmax[i][k]:
                return
        # skip pts[i] entirely
        dfs(i + 1, rem, target)
        # or take it (staying at i allows multiplicity)
        p = pts[i]
        chosen.append(p)
        dfs(i, rem - 1, tuple(t - x for t, x in zip(target, p)))
        chosen.pop()

    dfs(0, N, b)
    return sorted(out, key=lambda m: m.points)


def monomials_by_image(P, N):
    """Dict image -> list of degree-N monomials over X_P."""
    pts = P.lattice_points(1)
    out = {}
    for combo in combinations_with_replacement(pts, N):
        m = Monomial(tuple(combo))
        out.setdefault(m.image, []).append(m)
    return out


def standard_monomials(P, order, N):
    """Weight-minimal monomials of each nonempty degree-N fiber; exactly one
    per fiber when `order` is total."""
    if N == 0:
        return {Monomial.of(())}
    if N == 1:
        return {Monomial.of((p,)) for p in P.lattice_points(1)}
    out = set()
    for b, fiber in monomials_by_image(P, N).items():
        out.update(_fiber_minima(fiber, order))
    return out


def _fiber_minima(fiber, order):
    if isinstance(order, TotalOrder):
        return [min(fiber, key=order.monomial_key)]
    ws = [order.monomial_weight(m) for m in fiber]
    wmin = min(ws)
    return [m for m, w in zip(fiber, ws) if w == wmin]


def is_standard(P, order, m):
    fiber = fiber_set(P, m.image, m.degree)
    return m in _fiber_minima(fiber, order) if isinstance(order, TotalOrder) \
        else m in set(_fiber_minima(fiber, order))


def has_unique_standard_monomials(P, order, D):
    for N in range(2, D + 1):
        for b, fiber in monomials_by_image(P, N).items():
            if len(_fiber_minima(fiber, order)) != 1:
                return False
    return True


@dataclass
class Check:
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


def standard_pairs_and_powers(P, order):
    """(set of standard degree-2 monomials, whether all squares standard)."""
    std2 = set()
    squares_ok = True
    for b, fiber in monomials_by_image(P, 2).items():
        std2.update(_fiber_minima(fiber, order))
    for p in P.lattice_points(1):
        if Monomial.of((p, p)) not in std2:
            squares_ok = False
    return std2, squares_ok


def is_flag(P, order, D):
    """Check that standardness is equivalent to 'all degree-2 divisors and
    the matching pure powers are standard', for all monomials of degree <= D.
    Returns Check(ok, counterexample monomial)."""
    from collections import Counter

    stdk = {}
    for N in range(2, D + 1):
        stdk[N] = set()
        for b, fiber in monomials_by_image(P, N).items():
            stdk[N].update(_fiber_minima(fiber, order))
    pts = P.lattice_points(1)
    for N in range(3, D + 1):
        for combo in combinations_with_replacement(pts, N):
            m = Monomial(tuple(combo))
            predicted = all(d in stdk[2] for d in m.divisors(2))
            if predicted:
                for p, mult in Counter(m.points).items():
                    if mult >= 3 and Monomial.of((p,) * mult) not in stdk[mult]:
                        predicted = False
                        break
            if predicted != (m in stdk[N]):
                return Check(False, m)
    return Check(True)


def is_balanced(P, D, transform=None):
    """Existential balancedness in lattice coordinates: every multiset of
    2..D lattice points admits a same-size, same-sum multiset of lattice
    points whose coordinate slices are balanced."""
    t = transform or P.transform_point
    pts = P.lattice_points(1)
    tpts = [t(p) for p in pts]
    tset = set(tpts)
    if len(tset) != len(tpts):
        raise NotTotal("lattice transform is not injective on points")
    for N in range(2, D + 1):
        for combo in combinations_with_replacement(tpts, N):
            if is_slice_balanced(combo):
                continue
            target = tuple(map(sum, zip(*combo)))
            if not _balanced_decomposition_exists(tset, target, N):
                native = tuple(pts[tpts.index(q)] for q in combo)
                return Check(False, Monomial.of(native))
    return Check(True)


def _balanced_decomposition_exists(tset, target, N):
    dim = len(target)
    lo = [t // N for t in target]
    # slice k uses values in {lo, lo+1} with (target - N*lo) entries raised
    box = []
    for p in tset:
        if all(lo[k] <= p[k] <= lo[k] + 1 for k in range(dim)):
            box.append(p)
    need = [target[k] - N * lo[k] for k in range(dim)]

    def dfs(i, rem, need):
        if rem == 0:
            return all(x == 0 for x in need)
        if i == len(box):
            return False
        if any(x < 0 or x > rem for x in need):
            return False
        # take box[i] again or move on
        p = box[i]
        off = [p[k] - lo[k] for k in range(dim)]
        if dfs(i, rem - 1, [n - o for n, o in zip(need, off)]):
            return True
        return dfs(i + 1, rem, need)

    return dfs(0, N, need)


def initial_complex_maximal_faces(P, order, D):
    """Maximal supports all of whose monomials are standard, computed from the
    pair/power criterion (exact for flag orders); requires is_flag to D."""
    chk = is_flag(P, order, D)
    if not chk.ok:
        raise NotFlag(f"order is not flag to degree {D}: {chk.witness}")
    import networkx as nx

    std2, _ = standard_pairs_and_powers(P, order)
    pts = list(P.lattice_points(1))
    G = nx.Graph()
    G.add_nodes_from(pts)
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            if Monomial.of((p, q)) in std2:
                G.add_edge(p, q)
    # only points with standard squares can appear in a face at all
    good = [p for p in pts if Monomial.of((p, p)) in std2]
    return {frozenset(c) for c in nx.find_cliques(G.subgraph(good))}
