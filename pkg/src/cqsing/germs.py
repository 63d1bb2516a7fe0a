"""Curvettes, generic germs, and their valuation data.

A curvette of the i-th exceptional curve is the class-q_i germ
x^{q_i} - lambda y^{qbar_i}.  The generic representative of a divisor
class k is a product of curvettes taken with the multiplicities of the
greedy decomposition [k], with pairwise distinct scalars within each
index:

    f = prod_i prod_{j<=k_i} (x^{q_i} - lambda^i_j y^{qbar_i}).

Two valuation-type vectors are attached to a germ:

* the *diagram valuation* v_i(f) = min over the support of the monomial
  valuations (r qbar_i + s q_i)/d -- the quantity controlled by the
  Newton polygon, computed here both from the closed form and by chart
  tracking.  Its integer multiples m_i = d v_i satisfy m_i == k qbar_i
  (mod d), one congruence per exceptional curve.
* the *branch vector* of a generic germ: the count of curvette factors
  per exceptional index.  It equals [k] and therefore has ||.||_X = k
  exactly and the minimal coin count ||.||_1 = ||k||_1.

Genericity is tested through the polygon: a support is generic iff its
L-Newton polygon fills the polygon of the whole class lattice.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import config
from .arith import Decomposition, greedy_decomposition
from .errors import InvalidInputError
from .lattice import ClassLattice, hull_of_class, hull_of_diagram
from .resolution import support_valuations


@dataclass(frozen=True)
class Curvette:
    """x^{q_i} - lam * y^{qbar_i}, a class-q_i germ transversal to E_i."""

    X: object
    i: int
    lam: int

    def __post_init__(self):
        if not 1 <= self.i <= self.X.n:
            raise InvalidInputError(f"curvette index {self.i} outside 1..{self.X.n}")
        if self.lam == 0:
            raise InvalidInputError("curvette scalar must be nonzero")

    @property
    def k(self):
        return self.X.qseq[self.i]

    @property
    def support(self):
        return ((self.X.qseq[self.i], 0), (0, self.X.qbarseq[self.i]))


@dataclass(frozen=True)
class GenericGerm:
    """A product of curvettes realizing the generic germ of a class."""

    X: object
    k: int
    factors: tuple

    def __post_init__(self):
        counts = [0] * (self.X.n + 2)
        seen = set()
        for c in self.factors:
            counts[c.i] += 1
            if (c.i, c.lam) in seen:
                raise InvalidInputError(
                    f"repeated scalar {c.lam} at curvette index {c.i}"
                )
            seen.add((c.i, c.lam))
        expected = greedy_decomposition(self.X, self.k).entries
        if tuple(counts) != expected:
            raise InvalidInputError(
                f"factor multiplicities {tuple(counts)} do not match the "
                f"greedy decomposition {expected} of {self.k}"
            )


@dataclass(frozen=True)
class GermSupport:
    """The set of exponents appearing in a class-k germ."""

    X: object
    k: int
    points: frozenset

    def __post_init__(self):
        if not self.points:
            raise InvalidInputError("a germ support cannot be empty")
        lat = ClassLattice(self.X, self.k)
        for p in self.points:
            if not lat.contains(p):
                raise InvalidInputError(
                    f"support point {p} is not in L({self.k % self.X.d})"
                )


def generic_germ(X, k, seed=1):
    """The generic class-k germ with scalars seed, seed+1, ... per index."""
    k = k % X.d
    kd = greedy_decomposition(X, k)
    factors = []
    for i in X.coin_indices():
        for j in range(kd.entries[i]):
            factors.append(Curvette(X, i, seed + j))
    return GenericGerm(X, k, tuple(factors))


def germ_support(g):
    """Support of the expanded product, as a Minkowski sum of factor supports.

    Distinct scalars within each index rule out cancellations on the hull;
    interior coefficient collisions only shrink the support towards the
    same polygon, so the subset-sum set is the support for generic scalars.
    """
    pts = {(0, 0)}
    for c in g.factors:
        a, b = c.support
        pts = {(r + a[0], s + a[1]) for r, s in pts} | {
            (r + b[0], s + b[1]) for r, s in pts
        }
    return GermSupport(g.X, g.k, frozenset(pts))


def valuation_vector(X, support):
    """Diagram valuations of a support: (v, m) with m_i = d*v_i integers.

    v_i is the minimum of the monomial valuations over the support,
    asserted equal to the chart-tracked valuation of the whole support;
    each m_i satisfies the class congruence m_i == k*qbar_i (mod d).
    """
    pts = sorted(support.points)
    X_ = X
    mults = [
        min(r * X_.qbarseq[i] + s * X_.qseq[i] for r, s in pts)
        for i in X_.coin_indices()
    ]
    if config.verifying():
        tracked = support_valuations(X_, pts)
        config.check(
            "diagram valuation min-of-monomials vs chart tracking",
            tuple(Fraction(m, X_.d) for m in mults) == tracked,
            f"{X_}, support {pts}",
        )
        k = support.k % X_.d
        config.check(
            "diagram valuation class congruence",
            all(
                (m - k * X_.qbarseq[i]) % X_.d == 0
                for m, i in zip(mults, X_.coin_indices())
            ),
            f"{X_}, k={k}, multiplicities {mults}",
        )
    return tuple(Fraction(m, X_.d) for m in mults), tuple(mults)


def branch_decomposition(g):
    """The per-index curvette count of a generic germ; equals greedy [k].

    This is the vector whose q-weighted norm is k exactly (not just mod d)
    and whose coin count ||.||_1 is minimal.
    """
    counts = [0] * (g.X.n + 2)
    for c in g.factors:
        counts[c.i] += 1
    dec = Decomposition(g.X, tuple(counts))
    if config.verifying():
        config.check(
            "branch vector is the greedy decomposition",
            dec.entries == greedy_decomposition(g.X, g.k).entries
            and dec.norm_x == g.k % g.X.d,
            f"{g.X}, k={g.k}",
        )
    return dec


def is_generic(X, support):
    """Whether the support's polygon fills the polygon of its whole class."""
    return hull_of_diagram(sorted(support.points), X, support.k) == hull_of_class(
        X, support.k
    )


def intersection_multiplicity(X, c1, c2):
    """Intersection multiplicity of two curvettes: min(q_i qbar_j, qbar_i q_j)/d."""
    if c1.i == c2.i and c1.lam == c2.lam:
        raise InvalidInputError("identical curvettes have infinite intersection")
    i, j = c1.i, c2.i
    return Fraction(
        min(X.qseq[i] * X.qbarseq[j], X.qbarseq[i] * X.qseq[j]), X.d
    )
