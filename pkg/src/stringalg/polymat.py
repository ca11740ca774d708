"""Exact matrices over univariate rational polynomials.

Provides the pivot-driven Smith-style factorization M = U * D * P_sigma * V
in which U and V evaluate at zero to unit upper triangular matrices, plus the
embedding of a one-cycle locally gentle algebra into such a matrix ring.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (MatrixFormatError, NotInImageError, NotInvertibleError,
                     ShapeError)
from .quiver import Path

try:  # GMP-backed integers keep the elimination cascades fast
    from gmpy2 import gcd as _gcd, mpz as _int
except ImportError:  # pragma: no cover - pure-Python fallback
    from math import gcd as _gcd
    _int = int


class Poly:
    """Dense univariate polynomial with exact rational coefficients.

    Stored as an integer coefficient vector over one shared positive
    denominator, normalized so their collective content is 1; this keeps
    exact arithmetic to integer work plus one gcd pass per operation.
    Canonical form: no trailing zero coefficients; the zero polynomial has
    an empty vector and degree -1 (the distinguished marker).
    """

    __slots__ = ("den", "nums")

    def __init__(self, coeffs=()):
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for c in fracs:
            d = c.denominator
            if d != 1:
                den = den * d // _gcd(den, d)
        nums = [_int(c.numerator) * (den // c.denominator) for c in fracs]
        self.den, self.nums = _poly_normalize(den, nums)

    @classmethod
    def _raw(cls, den, nums):
        p = cls.__new__(cls)
        p.den, p.nums = _poly_normalize(den, nums)
        return p

    @staticmethod
    def const(c):
        return Poly((Fraction(c),))

    @staticmethod
    def x(power=1, coeff=1):
        return Poly((Fraction(0),) * power + (Fraction(coeff),))

    @property
    def coeffs(self):
        return tuple(Fraction(n, self.den) for n in self.nums)

    @property
    def is_zero(self):
        return not self.nums

    @property
    def degree(self):
        return len(self.nums) - 1

    def __add__(self, other):
        da, db = self.den, other.den
        g = _gcd(da, db)
        sa, sb = db // g, da // g
        n = max(len(self.nums), len(other.nums))
        a = list(self.nums) + [0] * (n - len(self.nums))
        b = list(other.nums) + [0] * (n - len(other.nums))
        return Poly._raw(da * sa, [x * sa + y * sb for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        # negation preserves canonical form, so skip normalization
        p = Poly.__new__(Poly)
        p.den = self.den
        p.nums = tuple(-v for v in self.nums)
        return p

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Poly._raw(self.den * c.denominator,
                             [v * c.numerator for v in self.nums])
        if self.is_zero or other.is_zero:
            return Poly()
        return Poly._raw(self.den * other.den, _convolve(self.nums, other.nums))

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if len(self.nums) < len(other.nums):
            return Poly(), self
        # long division with remainder and quotient kept over single
        # denominators; the remainder content is stripped only once its
        # denominator has doubled, keeping gcd work amortized while still
        # avoiding per-coefficient rational normalization
        b_nums = other.nums
        lead = b_nums[-1]
        nb = len(b_nums)
        r_den = self.den
        r_nums = list(self.nums)
        strip_at = max(2 * r_den.bit_length(), 64)
        q_pairs = [None] * (len(r_nums) - nb + 1)
        for i in range(len(r_nums) - nb, -1, -1):
            head = r_nums[i + nb - 1]
            if not head:
                continue
            num, den = head * other.den, r_den * lead
            g = _gcd(num, den)
            q_pairs[i] = (num // g, den // g)
            # R <- (R * lead - head * x^i * B) / (r_den * lead)
            r_nums = [v * lead for v in r_nums]
            for j in range(nb):
                r_nums[i + j] -= head * b_nums[j]
            r_den *= lead
            if r_den.bit_length() > strip_at:
                g = r_den
                for v in r_nums[:i + nb - 1]:
                    if v:
                        g = _gcd(g, v)
                        if g == 1:
                            break
                if g > 1:
                    r_den //= g
                    r_nums = [v // g for v in r_nums]
                strip_at = max(2 * r_den.bit_length(), 64)
        q_den = _int(1)
        for pair in q_pairs:
            if pair is not None:
                q_den = q_den * pair[1] // _gcd(q_den, pair[1])
        q_nums = [pair[0] * (q_den // pair[1]) if pair is not None else _int(0)
                  for pair in q_pairs]
        return Poly._raw(q_den, q_nums), Poly._raw(r_den, r_nums[:nb - 1])

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("division is not exact")
        return q

    def drop_constant(self):
        """Zero the constant term (forces membership in x*Q[x])."""
        if not self.nums:
            return self
        return Poly._raw(self.den, [0] + list(self.nums[1:]))

    def at_zero(self):
        return Fraction(self.nums[0], self.den) if self.nums else Fraction(0)

    def monomial_coefficient(self, k):
        return Fraction(self.nums[k], self.den) if k < len(self.nums) else Fraction(0)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.den == other.den
                and self.nums == other.nums)

    def __hash__(self):
        return hash((self.den, self.nums))

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _fma(a, q, b):
    """a + q*b with one normalization instead of two."""
    if q.is_zero or b.is_zero:
        return a
    prod_nums = _convolve(q.nums, b.nums)
    prod_den = q.den * b.den
    if a.is_zero:
        return Poly._raw(prod_den, prod_nums)
    g = _gcd(a.den, prod_den)
    scale_a = prod_den // g
    scale_p = a.den // g
    n = max(len(a.nums), len(prod_nums))
    av = list(a.nums) + [0] * (n - len(a.nums))
    pv = list(prod_nums) + [0] * (n - len(prod_nums))
    return Poly._raw(a.den * scale_a,
                     [x * scale_a + y * scale_p for x, y in zip(av, pv)])


def _convolve(a, b):
    """Integer convolution; balanced Kronecker substitution for large inputs
    turns the whole product into one bigint multiplication."""
    la, lb = len(a), len(b)
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if la * lb < 32 or ma.bit_length() + mb.bit_length() < 96:
        out = [0] * (la + lb - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return out
    k = ma.bit_length() + mb.bit_length() + min(la, lb).bit_length() + 2
    packed_a = sum(v << (k * i) for i, v in enumerate(a))
    packed_b = sum(v << (k * i) for i, v in enumerate(b))
    value = packed_a * packed_b
    mask = (1 << k) - 1
    half = 1 << (k - 1)
    out = []
    for _ in range(la + lb - 1):
        digit = value & mask
        if digit >= half:
            digit -= 1 << k
        out.append(digit)
        value = (value - digit) >> k
    return out


def _poly_normalize(den, nums):
    while nums and not nums[-1]:
        nums.pop()
    if not nums:
        return _int(1), ()
    den = _int(den)
    nums = [_int(v) for v in nums]
    # start the content chain at the smallest coefficient: when the content
    # is 1 (the usual case) a single cheap gcd settles it
    smallest = min((v for v in nums if v), key=lambda v: abs(v).bit_length())
    g = _gcd(den, smallest)
    if g != 1:
        for v in nums:
            g = _gcd(g, v)
            if g == 1:
                break
    if den < 0:
        g = -g
    if g != 1:
        den //= g
        nums = [v // g for v in nums]
    return den, tuple(nums)


def poly_gcd(a, b):
    """Monic greatest common divisor over the rationals."""
    while not b.is_zero:
        a, b = b, divmod(a, b)[1]
    if a.is_zero:
        return a
    return a * (Fraction(1) / a.coeffs[-1])


class PolyMatrix:
    """Square matrix over Q[x] with value semantics."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        self.rows = tuple(tuple(e if isinstance(e, Poly) else Poly.const(e) for e in row)
                          for row in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows) or self.n < 1:
            raise ValueError("matrix must be square of dimension >= 1")

    @staticmethod
    def identity(n):
        return PolyMatrix([[Poly.const(int(i == j)) for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(n):
        return PolyMatrix([[Poly() for _ in range(n)] for _ in range(n)])

    def entry(self, i, j):
        return self.rows[i][j]

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return PolyMatrix([
            [_dot(self.rows[i], [other.rows[k][j] for k in range(self.n)])
             for j in range(self.n)]
            for i in range(self.n)])

    def __add__(self, other):
        return PolyMatrix([[a + b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return PolyMatrix([[a - b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.rows, other.rows)])

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def scale(self, c):
        return PolyMatrix([[e * c for e in row] for row in self.rows])

    def at_zero(self):
        return [[e.at_zero() for e in row] for row in self.rows]

    def is_unit_upper_at_zero(self):
        """Value at zero is upper triangular with unit diagonal."""
        m0 = self.at_zero()
        for i in range(self.n):
            if m0[i][i] != 1:
                return False
            for j in range(i):
                if m0[i][j]:
                    return False
        return True

    def determinant(self):
        """Fraction-free (Bareiss) determinant; exact over Q[x]."""
        n = self.n
        m = [list(row) for row in self.rows]
        sign = 1
        prev = Poly.const(1)
        for k in range(n - 1):
            if m[k][k].is_zero:
                swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
                if swap is None:
                    return Poly()
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
                m[i][k] = Poly()
            prev = m[k][k]
        det = m[n - 1][n - 1]
        return det if sign > 0 else -det

    def delete_row_col(self, i, j):
        rows = [[e for c, e in enumerate(row) if c != j]
                for r, row in enumerate(self.rows) if r != i]
        return PolyMatrix(rows)

    def insert_identity_row_col(self, i, j):
        """Insert a new row i and column j meeting in a 1 (zeros elsewhere)."""
        n = self.n + 1
        out = [[Poly() for _ in range(n)] for _ in range(n)]
        for r in range(self.n):
            for c in range(self.n):
                out[r + (r >= i)][c + (c >= j)] = self.rows[r][c]
        out[i][j] = Poly.const(1)
        return PolyMatrix(out)

    def __repr__(self):
        return f"PolyMatrix({format_poly_matrix(self)!r})"

    def __str__(self):
        return format_poly_matrix(self)


def _dot(row, col):
    acc = Poly()
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


def poly_matrix_inverse(m):
    """Inverse over Q[x]; exists iff the determinant is a nonzero constant."""
    det = m.determinant()
    if det.is_zero or det.degree != 0:
        raise NotInvertibleError(
            f"matrix is not invertible over the polynomial ring: det = {det}",
            determinant=det)
    n = m.n
    inv_det = Fraction(1) / det.at_zero()
    if n == 1:
        return PolyMatrix([[Poly.const(inv_det)]])
    cof = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = m.delete_row_col(i, j).determinant()
            cof[i][j] = minor if (i + j) % 2 == 0 else -minor
    inv = PolyMatrix([[cof[j][i] * inv_det for j in range(n)] for i in range(n)])
    if inv * m != PolyMatrix.identity(n):
        raise RuntimeError("inverse verification failed")
    return inv


# -- modified Smith form -------------------------------------------------------


@dataclass(frozen=True)
class SmithFactorization:
    """M = U * D * P_sigma * V with U(0), V(0) unit upper triangular, D
    diagonal, and P_sigma the permutation matrix (P_sigma)[i][sigma(i)] = 1."""

    U: PolyMatrix
    D: PolyMatrix
    sigma: tuple
    V: PolyMatrix

    @property
    def permutation_matrix(self):
        n = self.D.n
        rows = [[Poly.const(int(self.sigma[i] == j)) for j in range(n)] for i in range(n)]
        return PolyMatrix(rows)

    def product(self):
        # U * D scales columns, * P_sigma permutes them; only one full
        # matrix product is needed
        n = self.D.n
        scaled = [[self.U.rows[r][m] * self.D.rows[m][m] for m in range(n)]
                  for r in range(n)]
        permuted = [[None] * n for _ in range(n)]
        for m in range(n):
            for r in range(n):
                permuted[r][self.sigma[m]] = scaled[r][m]
        return PolyMatrix(permuted) * self.V

    def verify(self, m):
        return (self.product() == m
                and self.U.is_unit_upper_at_zero()
                and self.V.is_unit_upper_at_zero()
                and sorted(self.sigma) == list(range(self.D.n))
                and all(self.D.entry(i, j).is_zero
                        for i in range(self.D.n) for j in range(self.D.n) if i != j))


def _pivot_position(m):
    """Nonzero entry minimizing (degree, n - row, col); None for zero matrix."""
    best = None
    for i in range(m.n):
        for j in range(m.n):
            e = m.entry(i, j)
            if e.is_zero:
                continue
            key = (e.degree, m.n - 1 - i, j)
            if best is None or key < best[0]:
                best = (key, i, j)
    return None if best is None else (best[1], best[2])


def smith_elimination_step(m, i0, j0):
    """One elimination round at the given pivot.

    Builds U0 (row operations into column j0) and V0 (column operations into
    row i0) from polynomial quotients by the pivot.  Quotients aimed below
    the pivot row or left of the pivot column have their constant term
    dropped, which keeps both factors unit upper triangular at zero while
    still never increasing the pivot measure.
    """
    n = m.n
    pivot = m.entry(i0, j0)
    u_rows = [[Poly.const(int(i == j)) for j in range(n)] for i in range(n)]
    v_rows = [[Poly.const(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        if k == i0:
            continue
        q = divmod(m.entry(k, j0), pivot)[0]
        if k > i0:
            q = q.drop_constant()
        u_rows[k][i0] = -q
    for l in range(n):
        if l == j0:
            continue
        q = divmod(m.entry(i0, l), pivot)[0]
        if l < j0:
            q = q.drop_constant()
        v_rows[j0][l] = -q
    u0 = PolyMatrix(u_rows)
    v0 = PolyMatrix(v_rows)
    # u0 and v0 differ from the identity only in one column resp. row, so
    # apply them as row and column operations
    work = [list(row) for row in m.rows]
    for k in range(n):
        q = u_rows[k][i0]
        if k != i0 and not q.is_zero:
            work[k] = [_fma(a, q, b) for a, b in zip(work[k], work[i0])]
    for l in range(n):
        q = v_rows[j0][l]
        if l != j0 and not q.is_zero:
            for r in range(n):
                work[r][l] = _fma(work[r][l], q, work[r][j0])
    return u0, PolyMatrix(work), v0


def _row_col_clear(m, i, j):
    return (all(m.entry(i, c).is_zero for c in range(m.n) if c != j)
            and all(m.entry(r, j).is_zero for r in range(m.n) if r != i))


def modified_smith(m, _verify=True):
    """Factor M = U * D * P_sigma * V with U, V unit upper triangular at zero.

    Repeatedly eliminates at the entry minimizing (degree, n - row, col)
    until some pivot is alone in its row and column, then deflates and
    recurses.  The pivot measure never increases, and a repeat forces the
    clearing that triggers deflation, so the loop terminates.
    """
    n = m.n
    pos = _pivot_position(m)
    if pos is None:
        return SmithFactorization(PolyMatrix.identity(n), PolyMatrix.zero(n),
                                  tuple(range(n)), PolyMatrix.identity(n))
    # left/right accumulate inverses so that m_orig = left * current * right
    left = [[Poly.const(int(i == j)) for j in range(n)] for i in range(n)]
    right = [[Poly.const(int(i == j)) for j in range(n)] for i in range(n)]
    current = m
    prev_measure = None
    while True:
        i0, j0 = _pivot_position(current)
        e = current.entry(i0, j0)
        measure = (e.degree, n - 1 - i0, j0)
        if prev_measure is not None:
            if measure > prev_measure:
                raise RuntimeError("pivot measure increased; elimination is broken")
            if measure == prev_measure and not _row_col_clear(current, i0, j0):
                raise RuntimeError("pivot measure stalled without clearing")
        if _row_col_clear(current, i0, j0):
            break
        u0, current, v0 = smith_elimination_step(current, i0, j0)
        # accumulate left*U0^{-1} and V0^{-1}*right; the inverses are
        # 2I - U0 and 2I - V0 since (U0 - I)^2 = (V0 - I)^2 = 0, and they
        # touch only column i0 resp. row j0
        for r in range(n):
            acc = left[r][i0]
            for k in range(n):
                if k != i0:
                    q = u0.rows[k][i0]
                    if not q.is_zero:
                        acc = _fma(acc, -q, left[r][k])
            left[r][i0] = acc
        new_row = list(right[j0])
        for k in range(n):
            if k != j0:
                q = v0.rows[j0][k]
                if not q.is_zero:
                    new_row = [_fma(a, -q, b) for a, b in zip(new_row, right[k])]
        right[j0] = new_row
        prev_measure = measure
    left = PolyMatrix(left)
    right = PolyMatrix(right)
    if n == 1:
        fact = SmithFactorization(left, current, (0,), right)
    else:
        reduced = current.delete_row_col(i0, j0)
        sub = modified_smith(reduced, _verify=False)
        u_w = sub.U.insert_identity_row_col(i0, i0)
        v_w = sub.V.insert_identity_row_col(j0, j0)
        inner = sub.D * sub.permutation_matrix
        inflated = inner.insert_identity_row_col(i0, j0)
        # replace the inserted 1 by the pivot entry
        rows = [list(r) for r in inflated.rows]
        rows[i0][j0] = current.entry(i0, j0)
        d, sigma = _monomial_split(PolyMatrix(rows))
        fact = SmithFactorization(left * u_w, d, sigma, v_w * right)
    if _verify and not fact.verify(m):
        raise RuntimeError("factorization verification failed")
    return fact


def _monomial_split(m):
    """Split a matrix with at most one nonzero entry per row and column into
    D * P_sigma; zero rows take the unused columns in increasing order."""
    n = m.n
    sigma = [None] * n
    diag = [Poly() for _ in range(n)]
    used = set()
    for i in range(n):
        hits = [j for j in range(n) if not m.entry(i, j).is_zero]
        if len(hits) > 1:
            raise ValueError("matrix is not monomial")
        if hits:
            sigma[i] = hits[0]
            diag[i] = m.entry(i, hits[0])
            used.add(hits[0])
    free = [j for j in range(n) if j not in used]
    for i in range(n):
        if sigma[i] is None:
            sigma[i] = free.pop(0)
    d = PolyMatrix([[diag[i] if i == j else Poly() for j in range(n)] for i in range(n)])
    return d, tuple(sigma)


# -- embedding of a one-cycle locally gentle algebra ---------------------------


class CycleEmbedding:
    """Isomorphism of a locally gentle algebra with a unique (infinite)
    maximal path onto its structured matrix algebra over Q[x].

    Arrows are indexed along the canonical generating cycle a_1 ... a_n; a
    basis path starting at a_i of length l maps to x^w E[i][t] where t is the
    index after the path's last arrow and w counts occurrences of a_n.
    Stationary paths map to sums of diagonal matrix units.
    """

    def __init__(self, algebra):
        cycles = algebra.infinite_cycles()
        report_arrows = {a.name for a in algebra.quiver.arrows}
        if len(cycles) != 1 or set(cycles[0]) != report_arrows:
            raise ShapeError("algebra must have exactly one maximal path, infinite")
        if not algebra.presentation.is_gentle:
            raise ShapeError("algebra must be locally gentle")
        self.algebra = algebra
        self.cycle = cycles[0]
        self.n = len(self.cycle)
        self.index = {a: i for i, a in enumerate(self.cycle)}  # 0-based

    def embed(self, x):
        """Image of an element as a polynomial matrix."""
        n = self.n
        rows = [[Poly() for _ in range(n)] for _ in range(n)]
        for p, c in x.terms.items():
            if p.is_stationary:
                for i, a in enumerate(self.cycle):
                    if self.algebra.quiver.source(a) == p.vertex:
                        rows[i][i] = rows[i][i] + Poly.const(c)
            else:
                i = self.index[p.first_arrow]
                t = (self.index[p.last_arrow] + 1) % n
                wrap = sum(1 for a in p.arrows if a == self.cycle[-1])
                rows[i][t] = rows[i][t] + Poly.x(wrap, c)
        return PolyMatrix(rows)

    def cycle_path(self, i, length):
        """The unique basis path of the given length starting at arrow i."""
        names = tuple(self.cycle[(i + k) % self.n] for k in range(length))
        return Path.of(names)

    def preimage(self, mat):
        """Inverse of embed; raises NotInImageError off the structured image.

        Membership: constant terms below the diagonal vanish, and diagonal
        constant terms agree whenever the corresponding arrows share a
        source.
        """
        if mat.n != self.n:
            raise NotInImageError(f"expected dimension {self.n}, got {mat.n}")
        n = self.n
        source_value = {}
        terms = {}
        for i in range(n):
            for t in range(n):
                poly = mat.entry(i, t)
                for k in range(poly.degree + 1):
                    c = poly.monomial_coefficient(k)
                    if not c:
                        continue
                    if k == 0:
                        if t < i:
                            raise NotInImageError(
                                f"constant term below the diagonal at ({i + 1},{t + 1})")
                        if t == i:
                            v = self.algebra.quiver.source(self.cycle[i])
                            if v in source_value and source_value[v] != c:
                                raise NotInImageError(
                                    f"diagonal constants disagree at vertex {v}")
                            source_value[v] = c
                            continue
                    length = t - i + k * n
                    if length < 1:
                        raise NotInImageError(
                            f"monomial x^{k} at ({i + 1},{t + 1}) matches no path")
                    terms[self.cycle_path(i, length)] = c
        for v, c in source_value.items():
            terms[Path.stationary(v)] = c
        element = self.algebra.element(terms)
        if self.embed(element) != mat:
            raise NotInImageError("matrix does not round-trip through the embedding")
        return element


def cycle_embedding(algebra):
    if "cycle_embedding" not in algebra._cache:
        algebra._cache["cycle_embedding"] = CycleEmbedding(algebra)
    return algebra._cache["cycle_embedding"]


def embed_in_matrix_ring(algebra, x):
    return cycle_embedding(algebra).embed(x)


def matrix_ring_preimage(algebra, mat):
    return cycle_embedding(algebra).preimage(mat)


# -- text format ----------------------------------------------------------------

_MONO = re.compile(r"^(?P<coeff>[+-]?\d+(?:/\d+)?)?\s*(?:(?P<star>\*)?\s*x(?:\^(?P<pow>\d+))?)?$")


def parse_poly(text):
    text = text.strip()
    if not text:
        raise MatrixFormatError("empty polynomial")
    out = {}
    for sgn, chunk in _signed_chunks(text):
        m = _MONO.match(chunk.strip())
        if not m or (m.group("coeff") is None and "x" not in chunk):
            raise MatrixFormatError(f"bad monomial {chunk!r}")
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        power = 0
        if "x" in chunk:
            power = int(m.group("pow")) if m.group("pow") else 1
        out[power] = out.get(power, Fraction(0)) + sgn * coeff
    degree = max(out, default=0)
    return Poly([out.get(k, Fraction(0)) for k in range(degree + 1)])


def _signed_chunks(text):
    chunks = []
    sign = 1
    buf = ""
    for piece in re.split(r"([+-])", text):
        if piece == "+" or piece == "-":
            if buf.strip():
                chunks.append((sign, buf.strip()))
                sign = 1 if piece == "+" else -1
            else:
                sign = sign * (1 if piece == "+" else -1)
            buf = ""
        else:
            buf += piece
    if buf.strip():
        chunks.append((sign, buf.strip()))
    if not chunks:
        raise MatrixFormatError(f"cannot parse {text!r}")
    return chunks


def format_poly(p):
    if p.is_zero:
        return "0"
    pieces = []
    for k in range(p.degree, -1, -1):
        c = p.monomial_coefficient(k)
        if not c:
            continue
        if k == 0:
            body = _fmt_frac(abs(c))
        elif k == 1:
            body = f"{_fmt_frac(abs(c))}*x"
        else:
            body = f"{_fmt_frac(abs(c))}*x^{k}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


def _fmt_frac(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_poly_matrix(text):
    """Rows separated by ';' or newlines, entries by ','."""
    rows = []
    for row_text in re.split(r"[;\n]", text):
        row_text = row_text.split("#", 1)[0].strip()
        if not row_text:
            continue
        rows.append([parse_poly(e) for e in row_text.split(",")])
    if not rows:
        raise MatrixFormatError("empty matrix")
    if any(len(r) != len(rows) for r in rows):
        raise MatrixFormatError("matrix must be square")
    return PolyMatrix(rows)


def format_poly_matrix(m):
    return "; ".join(", ".join(format_poly(e) for e in row) for row in m.rows)
