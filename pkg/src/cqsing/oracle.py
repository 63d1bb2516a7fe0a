"""Deliberately naive reference implementations used by the test suite.

Nothing here shares a code path with the closed forms it checks: hulls
are gift-wrapped instead of chained, staircases are scanned over boxes,
coin change is solved by dynamic programming, products are expanded with
exact coefficients, and genericity is settled by enumerating valuation
vectors of supports.  Performance is a non-goal.
"""

from fractions import Fraction

from . import config
from .lattice import ClassLattice, NewtonPolygon


def dp_table(denominations, kmax):
    """Optimal coin counts for every amount 0..kmax, by dynamic programming."""
    if kmax < 0:
        raise ValueError("amount must be non-negative")
    coins = [c for c in denominations if c > 0]
    if 1 not in coins:
        raise ValueError("denominations must include 1")
    best = [0] + [None] * kmax
    for amount in range(1, kmax + 1):
        best[amount] = 1 + min(
            best[amount - c] for c in coins if c <= amount
        )
    return best


def dp_coin_optimal(denominations, k):
    """Fewest coins summing to k."""
    return dp_table(denominations, k)[k]


def dp_coin_vector(denominations, k):
    """One optimal coin vector (largest-coin tie-break), for diagnostics."""
    coins = sorted((c for c in denominations if c > 0), reverse=True)
    best = [0] + [None] * k
    choice = [None] * (k + 1)
    for amount in range(1, k + 1):
        for c in coins:
            if c <= amount and best[amount - c] is not None:
                cand = best[amount - c] + 1
                if best[amount] is None or cand < best[amount]:
                    best[amount] = cand
                    choice[amount] = c
    out = {}
    while k > 0:
        c = choice[k]
        out[c] = out.get(c, 0) + 1
        k -= c
    return out


def brute_hull(points):
    """Staircase hull by gift wrapping: walk from the top point picking the
    steepest available descent at every step, farthest point on slope ties."""
    pts = sorted(set(points))
    chain = [pts[0]]
    while True:
        cur = chain[-1]
        cand = [p for p in pts if p[1] < cur[1] and p[0] > cur[0]]
        if not cand:
            break
        best = min(Fraction(p[1] - cur[1], p[0] - cur[0]) for p in cand)
        far = max(
            (p for p in cand if Fraction(p[1] - cur[1], p[0] - cur[0]) == best),
            key=lambda p: p[0],
        )
        chain.append(far)
    return NewtonPolygon(tuple(chain))


def brute_minkowski(points1, points2):
    """Hull of the raw sum set of two point clouds."""
    sums = {(a[0] + b[0], a[1] + b[1]) for a in points1 for b in points2}
    return brute_hull(sums)


def brute_staircase(X, k, periods=None):
    """Minimal generators of L(k) by quadratic domination scan over a box."""
    periods = config.STAIRCASE_SCAN_PERIODS if periods is None else periods
    bound = periods * X.d
    lat = ClassLattice(X, k)
    pts = [
        (r, s) for s in range(bound) for r in range(bound) if lat.contains((r, s))
    ]
    minimal = set()
    for p in pts:
        if not any(
            q != p and q[0] <= p[0] and q[1] <= p[1] for q in pts
        ):
            minimal.add(p)
    return frozenset(minimal)


def brute_quotient_dimension(X, kclass, generators, bound):
    """Count undominated L(kclass)-points by scanning a box of side bound."""
    lat = ClassLattice(X, kclass)
    gens = list(generators)
    count = 0
    for s in range(bound):
        for r in range(bound):
            if not lat.contains((r, s)):
                continue
            if not any(g[0] <= r and g[1] <= s for g in gens):
                count += 1
    return count


def expand_product(factors):
    """Exactly expand a product of binomials x^a - lam y^b.

    ``factors`` yields ((a_exp, b_exp), lam) pairs where the binomial is
    x^{a_exp} - lam * y^{b_exp}; returns the coefficient map of the product.
    """
    poly = {(0, 0): 1}
    for (a_exp, b_exp), lam in factors:
        nxt = {}
        for (r, s), c in poly.items():
            key1 = (r + a_exp, s)
            nxt[key1] = nxt.get(key1, 0) + c
            key2 = (r, s + b_exp)
            nxt[key2] = nxt.get(key2, 0) - lam * c
        poly = {key: c for key, c in nxt.items() if c != 0}
    return poly


def support_valuation_vector(X, points):
    """Diagram valuation of a support, from the monomial closed form only."""
    return tuple(
        min(r * X.qbarseq[i] + s * X.qseq[i] for r, s in points)
        for i in X.coin_indices()
    )


def genericity_search(X, k, periods=3):
    """Minimal diagram-valuation vectors over supports within a box.

    The vector of a support is the componentwise minimum (meet) of the
    single-point vectors it contains, so the set of achievable vectors is
    closed under meets and its unique minimal element is the meet of all
    point vectors -- the vector of the full support.  The search computes
    that meet; when the deduplicated point-vector set is small enough it
    additionally enumerates every subset literally and confirms that the
    minimal elements of the achieved set are exactly {meet}.  Returns
    (minimal vectors, point list, point vectors).
    """
    bound = periods * X.d
    lat = ClassLattice(X, k % X.d)
    pts = lat.points_in_box(bound - 1, bound - 1)
    point_vecs = [support_valuation_vector(X, [p]) for p in pts]
    meet = tuple(min(col) for col in zip(*point_vecs))
    distinct = sorted(set(point_vecs))
    if len(distinct) <= 14:
        achieved = set()
        for mask in range(1, 1 << len(distinct)):
            chosen = [v for b, v in enumerate(distinct) if mask >> b & 1]
            achieved.add(tuple(min(col) for col in zip(*chosen)))
        minimal = {
            v
            for v in achieved
            if not any(
                w != v and all(a <= b for a, b in zip(w, v)) for w in achieved
            )
        }
        assert minimal == {meet}, "meet-closure argument violated"
    return {meet}, pts, point_vecs


def minimizer_transversals(X, k, periods=3):
    """All supports made of one minimizer per exceptional direction.

    A support has the minimal valuation vector iff it meets every
    minimizer set M_i = argmin over L(k) of the i-th weight; the
    transversals are exactly the inclusion-minimal such supports.
    """
    bound = periods * X.d
    lat = ClassLattice(X, k % X.d)
    pts = lat.points_in_box(bound - 1, bound - 1)
    mins = support_valuation_vector(X, pts)
    sets = []
    for idx, i in enumerate(X.coin_indices()):
        sets.append(
            [
                p
                for p in pts
                if p[0] * X.qbarseq[i] + p[1] * X.qseq[i] == mins[idx]
            ]
        )
    out = [frozenset()]
    for m in sets:
        out = [s | {p} for s in out for p in m]
    return sorted(set(out), key=sorted)


def invariant_lattice(d, a, b, bound):
    """The set {(r,s) in [0,bound)^2 : a r + b s == 0 (mod d)}."""
    return frozenset(
        (r, s)
        for r in range(bound)
        for s in range(bound)
        if (a * r + b * s) % d == 0
    )
