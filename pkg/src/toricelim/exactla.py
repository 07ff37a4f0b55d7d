"""Exact linear algebra over Q and over the generic coefficient ring.

Everything here is exact: matrices hold ``int``/``Fraction`` entries or
``MPoly`` entries, never floats.  The module provides

* dense Gaussian routines over Q (rank, determinant, linear solve),
* symbolic determinants (fraction-free Bareiss, plus a memoized Laplace
  expansion that is much faster on the structurally sparse matrices produced
  by Koszul differentials),
* integer Hermite normal form (used for degree-class canonicalization),
* the descending method: greedy admissible selections and the alternating
  product of minors that is the determinant of an exact complex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionFailure, ExactnessFailure
from .polyring import MPoly


def _is_zero(x) -> bool:
    return not x


# ---------------------------------------------------------------------------
# dense rational routines
# ---------------------------------------------------------------------------

def mat_rank(rows) -> int:
    """Rank of a dense matrix with int/Fraction entries."""
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def det_rational(rows) -> Fraction:
    """Determinant of a square matrix over Q by Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def solve_with_free_zero(rows, rhs):
    """Particular solution of A x = b with free variables set to 0.

    Returns a list of Fractions, or None when the system is inconsistent.
    Pivot columns are chosen in ascending order, so the solution is
    deterministic.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for row, col in pivots:
        x[col] = aug[row][ncols]
    return x


def hermite_normal_form(rows) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix.

    Returns the nonzero rows: echelon shape, positive pivots, entries above
    each pivot reduced into [0, pivot).
    """
    mat = [list(map(int, row)) for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if mat[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(mat[i][c]))
            if i0 != r:
                mat[r], mat[i0] = mat[i0], mat[r]
            finished = True
            for i in range(r + 1, nrows):
                if mat[i][c]:
                    q = mat[i][c] // mat[r][c]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][c]:
                        finished = False
            if finished:
                break
        if mat[r][c] != 0:
            if mat[r][c] < 0:
                mat[r] = [-a for a in mat[r]]
            for i in range(r):
                q = mat[i][c] // mat[r][c]
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
            r += 1
    return mat[:r]


def reduce_mod_rows(vec, hnf_rows) -> tuple:
    """Canonical representative of vec modulo the integer row lattice."""
    v = list(map(int, vec))
    for row in hnf_rows:
        c = next((j for j, a in enumerate(row) if a), None)
        if c is None:
            continue
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)


# ---------------------------------------------------------------------------
# sparse column-major matrices
# ---------------------------------------------------------------------------

class SparseMatrix:
    """Column-major sparse matrix; entries are numbers or MPoly."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [[] for _ in range(ncols)]

    def to_dense(self):
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, val in col:
                rows[i][j] = val
        return rows

    def submatrix_dense(self, row_idx, col_idx):
        pos = {r: i for i, r in enumerate(row_idx)}
        rows = [[0] * len(col_idx) for _ in range(len(row_idx))]
        for jj, j in enumerate(col_idx):
            for i, val in self.cols[j]:
                if i in pos:
                    rows[pos[i]][jj] = val
        return rows

    def row_adjacency(self, row_idx, col_idx):
        """Per selected row, the list of (column position, value) pairs."""
        pos = {r: i for i, r in enumerate(row_idx)}
        rows = [[] for _ in row_idx]
        for jj, j in enumerate(col_idx):
            for i, val in self.cols[j]:
                if i in pos:
                    rows[pos[i]].append((jj, val))
        return rows

    def map_entries(self, fn) -> "SparseMatrix":
        cols = [[(i, fn(v)) for i, v in col] for col in self.cols]
        return SparseMatrix(self.nrows, self.ncols, cols)

    def rank(self) -> int:
        return mat_rank(self.to_dense())


def compose_is_zero(left: SparseMatrix, right: SparseMatrix) -> bool:
    """True when left∘right is the zero map (exact arithmetic, any entry type)."""
    if left.ncols != right.nrows:
        raise ValueError("shape mismatch in composition")
    for col in right.cols:
        acc: dict[int, object] = {}
        for mid, val in col:
            for i, lval in left.cols[mid]:
                s = acc.get(i, 0) + lval * val
                if _is_zero(s):
                    acc.pop(i, None)
                else:
                    acc[i] = s
        if acc:
            return False
    return True


# ---------------------------------------------------------------------------
# determinants of matrices with polynomial entries
# ---------------------------------------------------------------------------

def bareiss_determinant(rows):
    """Fraction-free Bareiss determinant; entries int or MPoly.

    Every interior division is exact (Sylvester's identity), performed with
    integer division or MPoly.exact_divide.
    """
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for p in range(n - 1):
        pivot = next((r for r in range(p, n) if not _is_zero(m[r][p])), None)
        if pivot is None:
            return 0
        if pivot != p:
            m[p], m[pivot] = m[pivot], m[p]
            sign = -sign
        for i in range(p + 1, n):
            for j in range(p + 1, n):
                num = m[p][p] * m[i][j] - m[i][p] * m[p][j]
                m[i][j] = _exact_quotient(num, prev)
            m[i][p] = 0
        prev = m[p][p]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def _exact_quotient(num, den):
    if isinstance(den, int) and den in (1, -1):
        return num * den
    if isinstance(num, MPoly) or isinstance(den, MPoly):
        num = num if isinstance(num, MPoly) else MPoly.constant(num)
        den = den if isinstance(den, MPoly) else MPoly.constant(den)
        q = num.exact_divide(den)
        if q is None:
            raise ArithmeticError("non-exact division inside Bareiss")
        return q
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("non-exact division inside Bareiss")
    return q


def laplace_determinant(row_entries, ncols):
    """Determinant by row-wise Laplace expansion with memoization.

    ``row_entries[r]`` lists the nonzero (column position, value) pairs of row
    r; column positions run over range(ncols) and len(row_entries) == ncols.
    States are memoized on the bitmask of used columns, which collapses the
    recursion tree for the sparse, structured matrices this package builds.
    """
    n = len(row_entries)
    if n != ncols:
        raise ValueError("laplace_determinant needs a square matrix")
    if n == 0:
        return 1
    cache: dict[int, object] = {}

    def rec(r, used):
        if r == n:
            return 1
        hit = cache.get(used)
        if hit is not None:
            return hit
        acc = 0
        for col, val in row_entries[r]:
            bit = 1 << col
            if used & bit:
                continue
            below = (used & (bit - 1)).bit_count()
            sub = rec(r + 1, used | bit)
            if _is_zero(sub):
                continue
            term = val * sub
            acc = acc + term if (col - below) % 2 == 0 else acc - term
        cache[used] = acc
        return acc

    return rec(0, 0)


def determinant(rows):
    """Exact determinant dispatch.

    Rational matrices use Gaussian elimination.  Polynomial matrices use the
    memoized Laplace expansion when sparse and Bareiss otherwise.
    """
    n = len(rows)
    if n == 0:
        return 1
    symbolic = any(isinstance(x, MPoly) for row in rows for x in row)
    if not symbolic:
        return det_rational(rows)
    nnz = sum(1 for row in rows for x in row if not _is_zero(x))
    if n >= 5 and nnz <= 5 * n:
        entries = [[(j, x) for j, x in enumerate(row) if not _is_zero(x)]
                   for row in rows]
        return laplace_determinant(entries, n)
    return bareiss_determinant(rows)


def sparse_minor(mat: SparseMatrix, row_idx, col_idx):
    """Determinant of the selected square submatrix of a sparse matrix."""
    if len(row_idx) != len(col_idx):
        raise ValueError("minor must be square")
    if not row_idx:
        return 1
    entries = mat.row_adjacency(row_idx, col_idx)
    if any(not r for r in entries):
        return 0
    symbolic = any(isinstance(v, MPoly) for row in entries for _, v in row)
    if symbolic:
        return laplace_determinant(entries, len(col_idx))
    return det_rational(mat.submatrix_dense(row_idx, col_idx))


# ---------------------------------------------------------------------------
# determinants of complexes (descending method)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibleSelection:
    """Nested index data certifying an invertible chain of minors.

    ``kept[i]`` is I_i (basis indices kept at level i, I_0 = B_0 and
    I_k = empty), ``chosen[i-1]`` is B_i \\ I_i, the columns of the level-i
    differential whose minor against rows I_{i-1} is invertible.
    """
    kept: tuple[tuple[int, ...], ...]
    chosen: tuple[tuple[int, ...], ...]


def select_admissible(dims, mats, rng: random.Random | None = None) -> AdmissibleSelection:
    """Greedy descending method on a complex with rational entries.

    ``dims[i]`` is the dimension of level i and ``mats[i]`` (i >= 1) the
    sparse matrix of the differential from level i to level i-1.  Columns are
    scanned in ascending index order (or in rng-shuffled order when an rng is
    supplied); a column is taken when it increases the exact rank against the
    surviving rows.  Raises ExactnessFailure when some level cannot reach full
    rank, which certifies the complex is not exact.
    """
    k = len(dims) - 1
    kept = [tuple(range(dims[0]))]
    chosen_all = []
    for lvl in range(1, k + 1):
        rows = kept[-1]
        need = len(rows)
        row_pos = {r: i for i, r in enumerate(rows)}
        mat = mats[lvl]
        order = list(range(dims[lvl]))
        if rng is not None:
            rng.shuffle(order)
        pivots = []  # (pivot position, normalized reduced column)
        chosen = []
        for j in order:
            if len(chosen) == need:
                break
            vec = [Fraction(0)] * need
            for i, val in mat.cols[j]:
                p = row_pos.get(i)
                if p is not None:
                    vec[p] = Fraction(val)
            for pp, pv in pivots:
                f = vec[pp]
                if f:
                    vec = [a - f * b for a, b in zip(vec, pv)]
            piv = next((idx for idx, a in enumerate(vec) if a), None)
            if piv is None:
                continue
            inv = 1 / vec[piv]
            pivots.append((piv, [a * inv for a in vec]))
            chosen.append(j)
        if len(chosen) < need:
            raise ExactnessFailure(lvl)
        chosen_set = set(chosen)
        kept.append(tuple(j for j in range(dims[lvl]) if j not in chosen_set))
        chosen_all.append(tuple(sorted(chosen)))
    if kept[-1]:
        raise ExactnessFailure(k, "complex does not terminate: I_k is nonempty")
    return AdmissibleSelection(tuple(kept), tuple(chosen_all))


@dataclass(frozen=True)
class ComplexDeterminant:
    """Alternating product of admissible minors, value = content * num/den.

    numerator and denominator are primitive integer polynomials (constants
    when the complex was numeric)."""
    numerator: MPoly
    denominator: MPoly
    content: Fraction

    def reduced_primitive(self) -> tuple[MPoly, Fraction]:
        """(primitive polynomial value, rational content).

        The denominator must divide the numerator exactly; anything else is a
        DivisionFailure (the alternating product of an exact complex is the
        determinant, a polynomial)."""
        quot = self.numerator.exact_divide(self.denominator)
        if quot is None:
            raise DivisionFailure("denominator does not divide numerator")
        c, prim = quot.content_primitive()
        return prim, self.content * c

    def as_fraction(self) -> Fraction:
        """Value as a rational; requires a constant num/den (numeric complex)."""
        num = self.numerator.terms.get((), 1) if not self.numerator.is_zero else 0
        den = self.denominator.terms.get((), 1)
        if self.numerator.total_degree() or self.denominator.total_degree():
            raise ValueError("determinant is not a constant")
        return self.content * Fraction(num, den)


def _split_content(value) -> tuple[Fraction, MPoly]:
    if isinstance(value, MPoly):
        return value.content_primitive()
    return Fraction(value), MPoly.one()


def det_complex(mats, selection: AdmissibleSelection) -> ComplexDeterminant:
    """Determinant of an exact complex w.r.t. its bases, via Prop.-style
    alternating product: minors at odd levels over minors at even levels."""
    k = len(selection.chosen)
    num: object = 1
    den: object = 1
    for lvl in range(1, k + 1):
        rows = selection.kept[lvl - 1]
        cols = selection.chosen[lvl - 1]
        if len(rows) != len(cols):
            raise ValueError("selection is not admissible: size mismatch")
        minor = sparse_minor(mats[lvl], rows, cols)
        if _is_zero(minor):
            raise ExactnessFailure(lvl, "selected minor vanishes")
        if lvl % 2 == 1:
            num = minor * num
        else:
            den = minor * den
    cnum, pnum = _split_content(num)
    cden, pden = _split_content(den)
    return ComplexDeterminant(pnum, pden, cnum / cden)
