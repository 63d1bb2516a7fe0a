"""Weighted blow-up charts, the resolution chain, valuations, discrepancies.

The (p,q)-weighted blow-up of X(d;a,b) is covered by two orbifold charts.
With e = gcd(d, p*b - q*a) and a'a == 1 (mod d), the first chart is of
type X(pd/e; 1, (-q + a'pb)/e) and its map sends the point with cover
coordinates (u,v) to (x,y) = (u^(p/e), u^(q/e) v); the second chart is
symmetric, (x,y) = (u v^(p/e), v^(q/e)).  When the weight vector is
proportional to the action (a*q - b*p = 0) the chart types degenerate to
X(p;-d,q) and X(q;p,-d).

Resolving X(d;1,q) blows up with weights (1,q_i) at the chart-2 origin of
each stage: stage i lives in the ambient type X(q_{i-1};1,q_i) and
produces the exceptional curve E_i with self-intersection -c_i, a bamboo.

Valuations v_i are normalized so that v_i(f) = (1/d) * (order of f^d
along E_i); concretely the order of a class-k monomial is read off the
chart-2 substitution, which gives the exact integer recursion

    d*v_i = (d*v_{i-1} * q_i + d * m_i) / q_{i-1},

where m_i is the (1,q_i)-weighted multiplicity of the stage-i strict
transform.  The closed form d*v_i(x^r y^s) = r*qbar_i + s*q_i is asserted
against this chart tracking.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import config
from .arith import RawType, hj_expansion
from .errors import InvalidInputError


@dataclass(frozen=True)
class BlowupCharts:
    """The two charts of one weighted blow-up.

    ``subst1``/``subst2`` hold (p, q_w, e): in chart 1 a monomial
    x^r y^s pulls back to u^((p r + q_w s)/e) v^s, in chart 2 to
    u^r v^((p r + q_w s)/e).
    """

    ambient: RawType
    weights: tuple
    e: int
    chart1: RawType
    chart2: RawType

    def pull_chart2(self, r, s):
        """Chart-2 exponents of the pullback of x^r y^s (may be fractional
        for a germ that is not a function; returned as a Fraction)."""
        p, q_w = self.weights
        return r, Fraction(p * r + q_w * s, self.e)


def blowup_charts(ambient, p, q_w):
    """Chart data of the (p,q_w)-weighted blow-up of a small type (d;a,b)."""
    d, a, b = ambient.d, ambient.a, ambient.b
    if p < 1 or q_w < 1:
        raise InvalidInputError("weights must be positive")
    if d > 1 and (gcd(d, a) != 1 or gcd(d, b) != 1):
        raise InvalidInputError(
            f"({d};{a},{b}) is not small; normalize the type first"
        )
    e = gcd(d, p * b - q_w * a)
    if a * q_w - b * p == 0:
        chart1 = RawType(p, -d % p if p > 1 else 0, q_w)
        chart2 = RawType(q_w, p, -d % q_w if q_w > 1 else 0)
    else:
        ap = pow(a, -1, d) if d > 1 else 0
        bp = pow(b, -1, d) if d > 1 else 0
        num1 = -q_w + ap * p * b
        num2 = -p + bp * q_w * a
        assert num1 % e == 0 and num2 % e == 0
        d1 = p * d // e
        d2 = q_w * d // e
        chart1 = RawType(d1, 1 % d1, (num1 // e) % d1)
        chart2 = RawType(d2, (num2 // e) % d2, 1 % d2)
    return BlowupCharts(ambient, (p, q_w), e, chart1, chart2)


@dataclass(frozen=True)
class ResolutionChain:
    """The resolution bamboo of X(d;1,q).

    ``stages[i]`` is the chart data of the i-th blow-up (ambient type
    X(q_{i-1};1,q_i), weights (1,q_i)); ``intersection_matrix`` is the
    n x n bamboo matrix with diagonal -c_i and off-diagonal 1.
    """

    X: object
    stages: tuple
    intersection_matrix: tuple

    @property
    def self_intersections(self):
        return tuple(-self.X.cseq[i] for i in self.X.coin_indices())


@lru_cache(maxsize=None)
def hj_chain(X):
    """Build the chain of (1,q_i)-blow-ups resolving X."""
    stages = []
    for i in X.coin_indices():
        ambient = RawType(X.qseq[i - 1], 1 % X.qseq[i - 1], X.qseq[i] % X.qseq[i - 1])
        ch = blowup_charts(ambient, 1, X.qseq[i])
        # The next singular point is the chart-2 origin of type
        # (q_i;1,-q_{i-1}) = (q_i;1,q_{i+1}).
        if X.qseq[i] > 1:
            assert ch.chart2.d == X.qseq[i]
            assert ch.chart2.b % X.qseq[i] == X.qseq[i + 1] % X.qseq[i]
        stages.append(ch)
    n = X.n
    rows = []
    for i in range(1, n + 1):
        row = [0] * n
        row[i - 1] = -X.cseq[i]
        if i - 2 >= 0:
            row[i - 2] = 1
        if i < n:
            row[i] = 1
        rows.append(tuple(row))
    return ResolutionChain(X, tuple(stages), tuple(rows))


def _tracked_multiplicities(X, support):
    """Integer multiplicities d*v_i of a germ's total transform, computed
    by pushing the support through the chart-2 substitutions.

    Returns the list [d*v_1, ..., d*v_n].  The strict transform of the
    support stays integral at every stage because weighted multiplicities
    of a fixed class are congruent modulo the chart order.
    """
    out = []
    acc = 0  # d * v_{i-1}
    pts = list(support)
    for i in X.coin_indices():
        prev_q, cur_q = X.qseq[i - 1], X.qseq[i]
        m = min(r + cur_q * s for r, s in pts)
        num = acc * cur_q + X.d * m
        assert num % prev_q == 0, "exceptional multiplicity left the lattice"
        acc = num // prev_q
        out.append(acc)
        nxt = []
        for r, s in pts:
            num_s = r + cur_q * s - m
            assert num_s % prev_q == 0, "strict transform left the lattice"
            nxt.append((r, num_s // prev_q))
        pts = nxt
    return out


def monomial_valuations(X, r, s):
    """The valuation vector (v_1(x^r y^s), ..., v_n(x^r y^s)).

    Chart tracking is the primary computation; the closed form
    v_i = (r*qbar_i + s*q_i)/d is asserted against it.
    """
    if r < 0 or s < 0:
        raise InvalidInputError("monomial exponents must be non-negative")
    tracked = _tracked_multiplicities(X, [(r, s)])
    if config.verifying():
        closed = [r * X.qbarseq[i] + s * X.qseq[i] for i in X.coin_indices()]
        config.check(
            "monomial valuation chart tracking vs closed form",
            tracked == closed,
            f"{X}, x^{r} y^{s}: {tracked} vs {closed}",
        )
    return tuple(Fraction(t, X.d) for t in tracked)


def support_valuations(X, support):
    """Newton-diagram valuations of a support set, by chart tracking."""
    if not support:
        raise InvalidInputError("empty support")
    tracked = _tracked_multiplicities(X, support)
    return tuple(Fraction(t, X.d) for t in tracked)


def nu(p, q_w, support):
    """Weighted multiplicity: min of p*r + q_w*s over the support."""
    if not support:
        raise InvalidInputError("empty support")
    return min(p * r + q_w * s for r, s in support)


def discrepancy(X):
    """Coefficients (eps_1,...,eps_n) of the relative canonical divisor.

    Closed form eps_i = (q_i + qbar_i)/d - 1, asserted against the exact
    solution of 0 = (c_i - 2) + (eps . M) over the bamboo intersection
    matrix M.
    """
    if X.d == 1:
        return ()
    closed = tuple(
        Fraction(X.qseq[i] + X.qbarseq[i], X.d) - 1 for i in X.coin_indices()
    )
    if config.verifying():
        solved = _solve_discrepancy(X)
        config.check(
            "discrepancy closed form vs linear solve",
            closed == solved,
            f"{X}: {closed} vs {solved}",
        )
    return closed


def _solve_discrepancy(X):
    """Solve eps * M = (c-2) for the tridiagonal bamboo matrix M.

    Adjunction on each exceptional P^1 gives K.E_j = c_j - 2, and
    K.E_j = (eps M)_j since the pulled-back canonical class is numerically
    trivial on the fibres; the worked discrepancy values pin this
    orientation of the system.
    """
    n = X.n
    c = [X.cseq[i] for i in X.coin_indices()]
    # Thomas algorithm on the symmetric tridiagonal system M^T eps^T = rhs.
    diag = [Fraction(-ci) for ci in c]
    rhs = [Fraction(ci - 2) for ci in c]
    for i in range(1, n):
        # off-diagonal entries are all 1
        factor = Fraction(1) / diag[i - 1]
        diag[i] -= factor
        rhs[i] -= factor * rhs[i - 1]
    eps = [Fraction(0)] * n
    eps[n - 1] = rhs[n - 1] / diag[n - 1]
    for i in range(n - 2, -1, -1):
        eps[i] = (rhs[i] - eps[i + 1]) / diag[i]
    return tuple(eps)
