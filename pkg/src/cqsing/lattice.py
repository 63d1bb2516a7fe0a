"""Affine lattices of divisor classes and their Newton polygons.

For X = X(d;1,q) the monomials x^r y^s of class k form the affine lattice

    L(k) = {(r,s) in N^2 : r + q s == k  (mod d)},

with L = L(0) the structure lattice.  Because any two points of L(k)
differ by a point of the rank-2 lattice {r + q s == 0 (mod d)} of index d
in Z^2, a monomial submodule of the class-k eigenmodule is determined by
componentwise domination: p lies in the module generated by g iff p >= g.

Polygons here are "staircase hulls": the convex hull of a point set plus
the closed first quadrant.  Only the compact vertex chain is stored, from
the y-axis side (smallest r) to the x-axis side (smallest s); the two
axis-parallel rays are implicit.  A polygon is *convenient* when the
chain actually touches both axes.

Counting is exact: areas are kept as twice-areas (integers), lattice
points are enumerated within explicit bounding boxes.
"""

from dataclasses import dataclass
from functools import lru_cache

from . import config
from .arith import greedy_decomposition, hj_expansion
from .errors import InfiniteQuotientError, InvalidInputError


@dataclass(frozen=True)
class ClassLattice:
    """The lattice L(k) of exponents of class-k monomials on X."""

    X: object
    k: int

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % self.X.d)

    def contains(self, p):
        r, s = p
        return r >= 0 and s >= 0 and (r + self.X.q * s - self.k) % self.X.d == 0

    def min_r(self, s):
        """Least r with (r,s) in L(k)."""
        return (self.k - self.X.q * s) % self.X.d

    def points_in_box(self, rmax, smax):
        """All L(k) points with 0 <= r <= rmax, 0 <= s <= smax."""
        d = self.X.d
        pts = []
        for s in range(smax + 1):
            for r in range(self.min_r(s), rmax + 1, d):
                pts.append((r, s))
        return pts


@dataclass(frozen=True)
class NewtonPolygon:
    """Compact vertex chain of a staircase hull, strictly convex.

    ``vertices`` runs from the top vertex (minimal r, then minimal s) to
    the bottom vertex (minimal s, then minimal r); consecutive slopes are
    strictly increasing and collinear edges are merged, so equal polygons
    have equal vertex tuples.
    """

    vertices: tuple

    def __post_init__(self):
        vs = self.vertices
        if not vs:
            raise InvalidInputError("a polygon needs at least one vertex")
        for (r1, s1), (r2, s2) in zip(vs, vs[1:]):
            if not (r2 > r1 and s2 < s1):
                raise InvalidInputError(f"vertex chain not monotone: {vs}")
        for a, b, c in zip(vs, vs[1:], vs[2:]):
            if _cross(a, b, c) <= 0:
                raise InvalidInputError(f"vertex chain not strictly convex: {vs}")

    @property
    def top(self):
        return self.vertices[0]

    @property
    def bottom(self):
        return self.vertices[-1]

    @property
    def x_intercept(self):
        return self.bottom[0]

    @property
    def y_intercept(self):
        return self.top[1]

    @property
    def is_convenient(self):
        """True when the chain touches both coordinate axes."""
        return self.top[0] == 0 and self.bottom[1] == 0

    @property
    def face_count(self):
        """Number of maximal compact faces (collinear edges merged)."""
        return len(self.vertices) - 1

    def edges(self):
        return list(zip(self.vertices, self.vertices[1:]))

    def contains(self, p, strict=False):
        """Membership in the region (chain plus both rays plus everything
        above/right); ``strict`` tests the region's interior."""
        r, s = p
        if strict:
            if r <= self.top[0] or s <= self.bottom[1]:
                return False
        else:
            if r < self.top[0] or s < self.bottom[1]:
                return False
        for a, b in self.edges():
            side = _cross(a, b, p)
            if side < 0 or (strict and side == 0):
                return False
        return True

    def on_boundary(self, p):
        return self.contains(p) and not self.contains(p, strict=True)

    def translate(self, v):
        dr, ds = v
        return NewtonPolygon(tuple((r + dr, s + ds) for r, s in self.vertices))

    def area2_under_chain(self):
        """Twice the area between the chain and the axes (trapezoid sums)."""
        vs = self.vertices
        return sum(
            (s1 + s2) * (r2 - r1) for (r1, s1), (r2, s2) in zip(vs, vs[1:])
        )

    def chain_lattice_points(self, lat):
        """Lattice points of ``lat`` on the compact chain, in chain order."""
        pts = []
        vs = self.vertices
        if len(vs) == 1:
            return [vs[0]] if lat.contains(vs[0]) else []
        from math import gcd

        for (r1, s1), (r2, s2) in zip(vs, vs[1:]):
            g = gcd(r2 - r1, s1 - s2)
            step = ((r2 - r1) // g, (s2 - s1) // g)
            for t in range(g):
                p = (r1 + t * step[0], s1 + t * step[1])
                if lat.contains(p):
                    pts.append(p)
        if lat.contains(vs[-1]):
            pts.append(vs[-1])
        return pts


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _chain_of_points(points):
    """Canonical strictly convex chain of the staircase hull of ``points``."""
    best = {}
    for r, s in points:
        if r not in best or s < best[r]:
            best[r] = s
    cols = sorted(best.items())
    # Lower-left convex chain over column minima (classic lower hull).
    chain = []
    for p in cols:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
            chain.pop()
        chain.append(p)
    # Drop the tail that climbs back up: those points sit inside the region.
    smin = min(s for _, s in chain)
    while chain[-1][1] != smin:
        chain.pop()
    # A trailing horizontal edge lies on the x-side ray, not on the chain.
    out = [chain[0]]
    for p in chain[1:]:
        if p[1] < out[-1][1]:
            out.append(p)
    return NewtonPolygon(tuple(out))


def module_generators(X, k):
    """Staircase-minimal monomials of L(k); they all satisfy r,s < d."""
    if not 0 <= k < X.d:
        raise InvalidInputError(f"need 0 <= k < d, got k={k}")
    lat = ClassLattice(X, k)
    cand = [(lat.min_r(s), s) for s in range(X.d)]
    gens = set()
    rmin = None
    for r, s in cand:  # s increasing: minimal iff r beats every earlier row
        if rmin is None or r < rmin:
            gens.add((r, s))
            rmin = r
    return frozenset(gens)


@lru_cache(maxsize=65536)
def hull_of_class(X, k):
    """L-Newton polygon of the full class lattice L(k).

    The vertex chain is produced from the partial norms of the greedy
    decomposition: the points (||[k]||_j, ||[k]||^{j-1}) for j = 0..n+2,
    deduplicated; the x-intercept is (k,0), the y-intercept (0,kbar).
    The same polygon is recomputed generically as the staircase hull of
    the module generators.
    """
    k = k % X.d
    kd = greedy_decomposition(X, k)
    pts = []
    for j in range(X.n + 3):
        lower = kd.lower_norm(j) if j <= X.n + 1 else 0
        upper = kd.upper_norm(j - 1)
        p = (lower, upper)
        if not pts or pts[-1] != p:
            pts.append(p)
    hull = _chain_of_points(pts) if len(pts) > 1 else NewtonPolygon((pts[0],))
    if config.verifying():
        brute = _chain_of_points(module_generators(X, k))
        config.check(
            "class hull partial-norm formula vs generator hull",
            hull == brute,
            f"{X}, k={k}: {hull.vertices} vs {brute.vertices}",
        )
    return hull


def hull_of_diagram(support, X, k):
    """L-Newton polygon of a germ support inside L(k)."""
    if not support:
        raise InvalidInputError("empty support")
    lat = ClassLattice(X, k % X.d)
    for p in support:
        if not lat.contains(p):
            raise InvalidInputError(
                f"monomial x^{p[0]} y^{p[1]} has class "
                f"{(p[0] + X.q * p[1]) % X.d}, not {k % X.d} on {X}"
            )
    return _chain_of_points(support)


def minkowski_sum(p1, p2):
    """Minkowski sum of two staircase polygons by slope-merging edges."""
    top = (p1.top[0] + p2.top[0], p1.top[1] + p2.top[1])
    evs = [(b[0] - a[0], b[1] - a[1]) for a, b in p1.edges()]
    evs += [(b[0] - a[0], b[1] - a[1]) for a, b in p2.edges()]
    # Sort by increasing slope ds/dr (all dr > 0, ds < 0): steepest first.
    evs.sort(key=_slope_key)
    verts = [top]
    for dr, ds in evs:
        r, s = verts[-1]
        verts.append((r + dr, s + ds))
    # Merge collinear runs via the canonical chain constructor.
    return _chain_of_points(verts)


def _slope_key(v):
    """Exact sort key for edge vectors (dr>0, ds<0) by slope ds/dr."""
    from fractions import Fraction

    return Fraction(v[1], v[0])


@dataclass(frozen=True)
class RegionCount:
    """Exact counts for the region between two nested polygons."""

    interior: int
    boundary: int
    area2: int
    axis1: int  # raw gap on the x-axis (r direction)
    axis2: int  # raw gap on the y-axis (s direction)


def region_count(outer, inner, lat):
    """Count lattice points and area in closure(outer region \\ inner region).

    ``outer`` must contain ``inner`` as regions; both must be convenient
    so the strip is bounded.  Interior points are off the chains and the
    axes; boundary points lie on either chain or on the two axis gaps.
    """
    if not outer.is_convenient or not inner.is_convenient:
        raise InvalidInputError("region_count needs convenient polygons")
    for v in inner.vertices:
        if not outer.contains(v):
            raise InvalidInputError(
                f"inner polygon vertex {v} escapes the outer region"
            )
    axis1 = inner.x_intercept - outer.x_intercept
    axis2 = inner.y_intercept - outer.y_intercept
    if axis1 < 0 or axis2 < 0:
        raise InvalidInputError("inner polygon escapes the outer region on an axis")
    area2 = inner.area2_under_chain() - outer.area2_under_chain()
    interior = boundary = 0
    for p in lat.points_in_box(inner.x_intercept, inner.y_intercept):
        if not outer.contains(p) or inner.contains(p, strict=True):
            continue
        if outer.contains(p, strict=True) and not inner.contains(p):
            interior += 1
        else:
            boundary += 1
    return RegionCount(interior, boundary, area2, axis1, axis2)


def kappa_pi_count(ambient, weights, k, nu_value):
    """#{(i,j) : i,j >= 1, p i + q j <= nu, a i + b j == k (mod d)}.

    Direct enumeration over the triangle 1 <= i <= nu/p, 1 <= j <= nu/q.
    """
    d, a, b = ambient.d, ambient.a, ambient.b
    p, q_w = weights
    if p < 1 or q_w < 1:
        raise InvalidInputError("blow-up weights must be positive")
    if nu_value < 0:
        raise InvalidInputError("nu must be non-negative")
    count = 0
    for j in range(1, nu_value // q_w + 1):
        rest = nu_value - q_w * j
        for i in range(1, rest // p + 1):
            if (a * i + b * j - k) % d == 0:
                count += 1
    return count


def quotient_dimension(X, kclass, submodule_generators):
    """dim of (class-kclass eigenmodule) / (module generated by the points).

    Counts L(kclass)-points dominated by no generator.  The count is
    finite iff some generator sits on each axis; otherwise an
    InfiniteQuotientError is raised.
    """
    kclass = kclass % X.d
    lat = ClassLattice(X, kclass)
    gens = list(submodule_generators)
    if not gens:
        raise InvalidInputError("empty generator set")
    for g in gens:
        if not lat.contains(g):
            raise InvalidInputError(f"generator {g} is not in L({kclass})")
    if all(g[0] > 0 for g in gens) or all(g[1] > 0 for g in gens):
        raise InfiniteQuotientError(
            "staircase is not cofinite: no generator on one of the axes"
        )
    gens.sort(key=lambda g: g[1])
    d = X.d
    smax = max(g[1] for g in gens)
    total = 0
    idx = 0
    rbound = None  # min r over generators with g_s <= current s
    for s in range(smax + 1):
        while idx < len(gens) and gens[idx][1] <= s:
            rbound = gens[idx][0] if rbound is None else min(rbound, gens[idx][0])
            idx += 1
        # A row point (r,s) is dominated iff r >= rbound; rows beyond smax
        # have rbound = 0 thanks to the cofiniteness check above.
        if not rbound:
            continue
        first = lat.min_r(s)
        if first < rbound:
            total += (rbound - 1 - first) // d + 1
    return total


def product_module_generators(X, exponents):
    """Generators of the product of coin eigenmodules q_i^(exponents_i).

    ``exponents`` is indexed like a decomposition (length n+2, sentinels
    ignored).  Generator sets are folded factor by factor, pruning
    dominated sums after each step to keep the sets small.
    """
    gens = {(0, 0)}
    for i in X.coin_indices():
        m = exponents[i]
        if m == 0:
            continue
        factor = sorted(module_generators(X, X.qseq[i]))
        for _ in range(m):
            gens = _minimalize({(g[0] + f[0], g[1] + f[1]) for g in gens for f in factor})
    return frozenset(gens)


def _minimalize(points):
    """Drop every point dominated by another (componentwise)."""
    pts = sorted(points)
    out = []
    smin = None
    for r, s in pts:  # r increasing; keep strictly decreasing s
        if smin is None or s < smin:
            out.append((r, s))
            smin = s
    return set(out)
