"""Continued-fraction arithmetic for cyclic quotient surface singularities.

A cyclic quotient surface singularity is the germ X(d;a,b) of C^2 divided
by the order-d cyclic action zeta.(x,y) = (zeta^a x, zeta^b y).  After
normalization it is presented as X(d;1,q) with gcd(d,q) = 1.  All the
resolution combinatorics of X(d;1,q) is carried by three integer
sequences derived from the negative-regular (round-up) continued fraction
of d/q:

* ``qseq``   : q_0 = d, q_1 = q, q_{i-1} = c_i q_i - q_{i+1}, down to
  q_n = 1, q_{n+1} = 0;
* ``cseq``   : the round-ups c_{i+1} = ceil(q_i / q_{i+1}), padded with
  the sentinels c_0 = c_{n+1} = 2;
* ``qbarseq``: qbar_i is the least positive solution of
  q * qbar_i == q_i (mod d), with qbar_0 = 0 and qbar_{n+1} = d.

On top of these the module implements the greedy decomposition of a
divisor class k over the "coin system" q_1 > ... > q_n, its norms, the
upper-triangular matrix Q of nested qbar-sequences, and the closed-form
decompositions of the canonical class w = d - 1 - q and of k + w.

Everything is exact integer arithmetic; all values are immutable after
construction and every closed form is re-derived through an independent
route when verification is enabled.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from . import config
from .errors import InvalidInputError


@dataclass(frozen=True)
class RawType:
    """An un-normalized quotient type (d; a, b)."""

    d: int
    a: int
    b: int

    def __post_init__(self):
        if self.d < 1:
            raise InvalidInputError(f"group order must be positive, got d={self.d}")
        object.__setattr__(self, "a", self.a % self.d)
        object.__setattr__(self, "b", self.b % self.d)


@dataclass(frozen=True)
class NormalizedSingularity:
    """X(d;1,q) together with its cached resolution sequences."""

    d: int
    q: int
    qseq: tuple
    cseq: tuple
    qbarseq: tuple
    n: int

    def __repr__(self):
        return f"X({self.d};1,{self.q})"

    @property
    def w(self):
        """Degree of the canonical class, w = d - 1 - q."""
        return self.d - 1 - self.q if self.d > 1 else 0

    def coin_indices(self):
        """Indices 1..n of the denominations q_1 > ... > q_n."""
        return range(1, self.n + 1)


@dataclass(frozen=True)
class Decomposition:
    """A vector [k_0,...,k_{n+1}] of coin multiplicities tied to an X.

    The two sentinel entries k_0 and k_{n+1} are always stored; displays
    conventionally trim them.
    """

    X: NormalizedSingularity
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.X.n + 2:
            raise InvalidInputError(
                f"decomposition over {self.X} needs {self.X.n + 2} entries, "
                f"got {len(self.entries)}"
            )
        if any(e < 0 for e in self.entries):
            raise InvalidInputError("decomposition entries must be non-negative")

    @property
    def norm_x(self):
        """||alpha||_X = alpha . qseq."""
        return sum(a * q for a, q in zip(self.entries, self.X.qseq))

    @property
    def norm_1(self):
        return sum(self.entries)

    @property
    def kbar(self):
        """alpha . qbarseq, the y-intercept of the associated polygon."""
        return sum(a * qb for a, qb in zip(self.entries, self.X.qbarseq))

    def lower_norm(self, j):
        """||alpha||_j = sum_{i>=j} alpha_i q_i."""
        return sum(self.entries[i] * self.X.qseq[i] for i in range(j, self.X.n + 2))

    def upper_norm(self, j):
        """||alpha||^j = sum_{i<=j} alpha_i qbar_i (empty for j < 0)."""
        return sum(self.entries[i] * self.X.qbarseq[i] for i in range(0, j + 1))

    def trimmed(self):
        """Entries without the two sentinels, as printed in hand calculations."""
        return self.entries[1 : self.X.n + 1]

    def support_indices(self):
        return tuple(i for i, e in enumerate(self.entries) if e > 0)

    def __add__(self, other):
        if self.X is not other.X and self.X != other.X:
            raise InvalidInputError("cannot add decompositions over different types")
        return Decomposition(
            self.X, tuple(a + b for a, b in zip(self.entries, other.entries))
        )


def decomposition_norms(alpha):
    """All norms of a decomposition: (||.||_X, ||.||_1, kbar, lowers, uppers).

    ``lowers[j]`` is ||alpha||_j and ``uppers[j]`` is ||alpha||^j for
    j = 0..n+1; lowers[0] equals ||alpha||_X and uppers[n+1] equals kbar.
    """
    n = alpha.X.n
    lowers = tuple(alpha.lower_norm(j) for j in range(n + 2))
    uppers = tuple(alpha.upper_norm(j) for j in range(n + 2))
    return alpha.norm_x, alpha.norm_1, alpha.kbar, lowers, uppers


def _qbar_by_search(d, qi, q):
    """Least positive x with q*x == qi (mod d); the verification route."""
    for x in range(1, d + 1):
        if (q * x - qi) % d == 0:
            return x
    raise AssertionError("unreachable: gcd(d,q)=1 guarantees a solution")


@lru_cache(maxsize=None)
def hj_expansion(d, q):
    """Expand d/q as a round-up continued fraction and build X(d;1,q).

    The degenerate smooth point is X(1;1,0) with an empty bamboo (n = 0).
    """
    if d < 1:
        raise InvalidInputError(f"d must be positive, got {d}")
    if d == 1:
        if q != 0:
            raise InvalidInputError("the smooth point is X(1;1,0); use q=0")
        return NormalizedSingularity(1, 0, (1, 0), (2, 2), (0, 1), 0)
    if not 0 < q < d:
        raise InvalidInputError(f"need 0 < q < d, got (d,q)=({d},{q})")
    if gcd(d, q) != 1:
        raise InvalidInputError(f"gcd({d},{q}) != 1: the action is not small")

    qseq = [d, q]
    cs = [2]  # sentinel c_0
    while qseq[-1] != 0:
        prev, cur = qseq[-2], qseq[-1]
        c = -(-prev // cur)  # round-up
        cs.append(c)
        qseq.append(c * cur - prev)
    cs.append(2)  # sentinel c_{n+1}
    n = len(qseq) - 2

    qbar = [0, 1]
    for i in range(2, n + 2):
        qbar.append(cs[i - 1] * qbar[i - 1] - qbar[i - 2])

    X = NormalizedSingularity(d, q, tuple(qseq), tuple(cs), tuple(qbar), n)
    _validate_expansion(X)
    return X


def _validate_expansion(X):
    d, q, qs, cs, qb, n = X.d, X.q, X.qseq, X.cseq, X.qbarseq, X.n
    assert qs[n] == 1 and qs[n + 1] == 0 and cs[n] == qs[n - 1] if n >= 1 else True
    assert all(qs[i] > qs[i + 1] for i in range(1, n + 1))
    assert all(c >= 2 for c in cs)
    assert qb[n + 1] == d
    # Unimodularity qbar_{i+1} q_i - q_{i+1} qbar_i = d holds at every step.
    assert all(qb[i + 1] * qs[i] - qs[i + 1] * qb[i] == d for i in range(n + 1))
    if config.verifying():
        for i in range(1, n + 1):
            found = _qbar_by_search(d, qs[i], q)
            config.check(
                "qbar recurrence vs congruence search",
                found == qb[i],
                f"{X}, i={i}: recurrence {qb[i]}, search {found}",
            )


def normalize_type(t):
    """Present the quotient germ of a raw type (d;a,b) as X(d;1,q).

    Pseudo-reflection subgroups are divided out first: while gcd(d,a) = g
    exceeds 1 the type is replaced by (d/g; a/g, b), and symmetrically in
    b, iterated to a fixed point.  The remaining small action is rotated
    so that the first weight is 1.
    """
    d, a, b = t.d, t.a, t.b
    if d == 1:
        return hj_expansion(1, 0)
    e = gcd(gcd(d, a), b)
    if e > 1:
        raise InvalidInputError(
            f"({d};{a},{b}) is not faithful: the subgroup of order {e} acts "
            f"trivially; reduce to ({d // e};{a // e},{b // e}) first"
        )
    while True:
        g = gcd(d, a)
        if g > 1:
            d, a, b = d // g, (a // g) % (d // g), b % (d // g)
            continue
        g = gcd(d, b)
        if g > 1:
            d, a, b = d // g, a % (d // g), (b // g) % (d // g)
            continue
        break
    if d == 1:
        return hj_expansion(1, 0)
    q = (pow(a, -1, d) * b) % d
    return hj_expansion(d, q)


def equivalent(X, Y):
    """Whether X(d;1,q) and X(d';1,q') present the same germ (q q' == 1 allowed)."""
    if X.d != Y.d:
        return False
    return X.q == Y.q or (X.q * Y.q) % X.d == 1 % X.d


def greedy_decomposition(X, k):
    """Largest-coin-first decomposition of k (mod d) over q_1 > ... > q_n."""
    entries = [0] * (X.n + 2)
    rem = k % X.d
    for i in X.coin_indices():
        if rem == 0:
            break
        entries[i], rem = divmod(rem, X.qseq[i])
    assert rem == 0
    return Decomposition(X, tuple(entries))


def greedy_coin_count(X, k):
    """||[k]||_1 without materializing the decomposition (hot path)."""
    total = 0
    rem = k % X.d
    qseq = X.qseq
    for i in range(1, X.n + 1):
        if rem == 0:
            break
        take, rem = divmod(rem, qseq[i])
        total += take
    return total


@lru_cache(maxsize=None)
def q_matrix(X):
    """The (n+1)-square upper triangular matrix Q_{ij} = (qbar of X_i)_{j-i+1}.

    X_i is the nested singularity X(q_i;1,q_{i+1}).  The same matrix is
    rebuilt independently from its boundary data (unit diagonal,
    superdiagonal c_{i+1}, last column q_i) by forcing every adjacent
    2x2 minor in the upper triangle to equal 1, filling bottom-up.
    """
    n = X.n
    size = n + 1
    rows = []
    for i in range(size):
        Xi = hj_expansion(X.qseq[i], X.qseq[i + 1] if X.qseq[i] > 1 else 0)
        row = [0] * size
        for j in range(i, size):
            row[j] = Xi.qbarseq[j - i + 1]
        rows.append(tuple(row))
    Q = tuple(rows)

    if config.verifying():
        M = [[0] * size for _ in range(size)]
        for i in range(size):
            M[i][i] = 1
            if i + 1 < size:
                M[i][i + 1] = X.cseq[i + 1]
            M[i][size - 1] = X.qseq[i]
        for i in range(size - 3, -1, -1):
            for j in range(size - 2, i + 1, -1):
                num = 1 + M[i][j + 1] * M[i + 1][j]
                den = M[i + 1][j + 1]
                config.check(
                    "Q completion minors divide", num % den == 0, f"{X}, ({i},{j})"
                )
                M[i][j] = num // den
        config.check(
            "Q matrix definition vs minor completion",
            Q == tuple(tuple(r) for r in M),
            f"{X}: {Q} vs {M}",
        )
    return Q


def canonical_class(X):
    """Degree of the canonical divisor, w = d - 1 - q (0 at a smooth point)."""
    return X.w


def canonical_decomposition(X):
    """The decomposition [0, c_1-2, ..., c_n-2, 0] of w, checked against greedy."""
    entries = [0] + [X.cseq[i] - 2 for i in X.coin_indices()] + [0]
    dec = Decomposition(X, tuple(entries))
    if config.verifying():
        g = greedy_decomposition(X, X.w)
        config.check(
            "canonical decomposition vs greedy of w",
            dec.entries == g.entries,
            f"{X}: {dec.entries} vs {g.entries}",
        )
    return dec


def sum_with_canonical(X, k):
    """Closed form for the greedy decomposition of k + w, k != 0 (mod d).

    With [k] supported on indices r..s the answer keeps the middle of [k],
    drops one coin at each end and pays the difference in canonical coins:
    head c_1-2,...,c_{r-2}-2, c_{r-1}-1 (absent for r = 1), then k_r-1,
    k_*, k_s-1, then c_{s+1}-1, c_{s+2}-2, ..., c_n-2 (absent for s = n).
    A lone coin k = q_r needs no carrying at all: [q_r + w] = e_r + [w].
    """
    d = X.d
    k = k % d
    if k == 0:
        raise InvalidInputError("k must be nonzero mod d; w itself is handled "
                                "by canonical_decomposition")
    kd = greedy_decomposition(X, k)
    c = X.cseq
    n = X.n
    nz = [i for i in range(1, n + 1) if kd.entries[i] > 0]
    r, s = nz[0], nz[-1]
    res = [0] * (n + 2)
    if r == s and kd.entries[r] == 1:
        for i in range(1, n + 1):
            res[i] = c[i] - 2
        res[r] += 1
    else:
        if r >= 2:
            for i in range(1, r - 1):
                res[i] = c[i] - 2
            res[r - 1] = c[r - 1] - 1
        if r == s:
            res[r] = kd.entries[r] - 2
        else:
            res[r] = kd.entries[r] - 1
            for i in range(r + 1, s):
                res[i] = kd.entries[i]
            res[s] = kd.entries[s] - 1
        if s <= n - 1:
            res[s + 1] = c[s + 1] - 1
            for i in range(s + 2, n + 1):
                res[i] = c[i] - 2
    dec = Decomposition(X, tuple(res))
    if config.verifying():
        g = greedy_decomposition(X, k + X.w)
        config.check(
            "closed form of [k+w] vs greedy",
            dec.entries == g.entries,
            f"{X}, k={k}: {dec.entries} vs {g.entries}",
        )
    return dec
