"""Exact linear algebra over the rationals.

Matrices are lists of rows of exact rationals (ints when integral, else
:class:`fractions.Fraction`); a matrix with
``m`` rows and ``n`` columns maps column vectors of length ``n`` to column
vectors of length ``m``.  Shapes are carried explicitly because empty
matrices are common (zero-dimensional graded pieces).
"""

from fractions import Fraction

# integral entries are stored as ints: truth tests on them are much cheaper
ZERO = 0
ONE = 1


def exact(x):
    """x as an int when integral, else as a Fraction."""
    if type(x) is not Fraction:
        if type(x) is int:
            return x
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class Matrix:
    """Dense rational matrix with an explicit shape."""

    __slots__ = ("rows", "nrows", "ncols", "_cols")

    def __init__(self, rows, nrows=None, ncols=None):
        rows = [[x if type(x) is int else exact(x) for x in r] for r in rows]
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("matrix rows do not match shape (%d, %d)" % (nrows, ncols))
        self.rows = rows
        self.nrows = nrows
        self.ncols = ncols
        self._cols = None

    @classmethod
    def zeros(cls, m, n):
        z = cls.__new__(cls)
        z.rows, z.nrows, z.ncols = [[ZERO] * n for _ in range(m)], m, n
        z._cols = [[] for _ in range(n)]
        return z

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns, nrows):
        return cls([[c[i] for c in columns] for i in range(nrows)], nrows, len(columns))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def columns(self):
        return [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]

    def column(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        orows = [[(j, y) for j, y in enumerate(r) if y] for r in other.rows]
        out = []
        for r in self.rows:
            row = [ZERO] * other.ncols
            for k, x in enumerate(r):
                if x:
                    for j, y in orows[k]:
                        row[j] += x * y
            out.append(row)
        return Matrix(out, self.nrows, other.ncols)

    def _sparse_columns(self):
        if self._cols is None:
            cols = [[] for _ in range(self.ncols)]
            for i, r in enumerate(self.rows):
                for j, x in enumerate(r):
                    if x:
                        cols[j].append((i, x))
            self._cols = cols
        return self._cols

    def apply(self, vec):
        out = [ZERO] * self.nrows
        cols = self._sparse_columns()
        for j, v in enumerate(vec):
            if v:
                for i, x in cols[j]:
                    out[i] += x * v
        return out

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s + %s" % (self.shape, other.shape))
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.nrows, self.ncols)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows], self.nrows, self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return Matrix([[c * a for a in r] for r in self.rows], self.nrows, self.ncols)

    def transpose(self):
        return Matrix(self.columns(), self.ncols, self.nrows)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return "Matrix(%r)" % ([[str(x) for x in r] for r in self.rows],)


def block_matrix(blocks, row_sizes, col_sizes):
    """Assemble a matrix from a dict ``(i, j) -> Matrix`` of blocks."""
    m, n = sum(row_sizes), sum(col_sizes)
    rows = [[ZERO] * n for _ in range(m)]
    roff = [sum(row_sizes[:i]) for i in range(len(row_sizes))]
    coff = [sum(col_sizes[:j]) for j in range(len(col_sizes))]
    for (i, j), b in blocks.items():
        for r in range(b.nrows):
            row = rows[roff[i] + r]
            for c, x in enumerate(b.rows[r]):
                if x:
                    row[coff[j] + c] = x
    return Matrix(rows, m, n)


def _eliminate(row, pivots):
    """Reduce a sparse row against fully reduced pivot rows (in place)."""
    for c in [c for c in row if c in pivots]:
        f = row.get(c)
        if not f:
            continue
        for pc, pv in pivots[c].items():
            nv = row.get(pc, ZERO) - f * pv
            if nv:
                row[pc] = nv
            else:
                row.pop(pc, None)


def _add_pivot(row, pivots):
    """Normalise a reduced nonzero row and insert it, keeping RREF."""
    lead = min(row)
    inv = 1 / row[lead]
    row = {c: v * inv for c, v in row.items()}
    for pr in pivots.values():
        f = pr.get(lead)
        if f:
            for c, v in row.items():
                nv = pr.get(c, ZERO) - f * v
                if nv:
                    pr[c] = nv
                else:
                    pr.pop(c, None)
    pivots[lead] = row
    return lead


def _reduce(rows, ncols):
    """Reduced row echelon form of sparse rows (dicts col -> value).

    Returns (pivot rows in pivot order, pivot columns).
    """
    pivots = {}
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        _eliminate(row, pivots)
        if row:
            _add_pivot(row, pivots)
    order = sorted(pivots)
    return [pivots[c] for c in order], order


def _sparse_rows(mat):
    return [{j: x for j, x in enumerate(r) if x} for r in mat.rows]


def rref(mat):
    """Reduced row echelon form; returns (Matrix of nonzero rows, pivot columns)."""
    prow, piv = _reduce(_sparse_rows(mat), mat.ncols)
    dense = [[r.get(j, ZERO) for j in range(mat.ncols)] for r in prow]
    return Matrix(dense, len(dense), mat.ncols), piv


def rank(mat):
    if mat.nrows == 0 or mat.ncols == 0:
        return 0
    return len(_reduce(_sparse_rows(mat), mat.ncols)[1])


def rank_sparse(rows, ncols):
    """Rank of a matrix given as sparse row dicts."""
    return len(_reduce(rows, ncols)[1])


def nullspace(mat):
    """Basis of the kernel, as a list of column vectors (canonical RREF basis)."""
    n = mat.ncols
    prow, piv = _reduce(_sparse_rows(mat), n)
    pivset = set(piv)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [ZERO] * n
        v[free] = ONE
        for r, p in zip(prow, piv):
            x = r.get(free)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def span_basis(vectors, n):
    """Canonical (reduced echelon) basis of the span of the given vectors."""
    rows = [{j: x for j, x in enumerate(v) if x} for v in vectors]
    prow, piv = _reduce(rows, n)
    return [[r.get(j, ZERO) for j in range(n)] for r in prow]


def independent_subset(vectors, n):
    """Indices of a maximal independent subset, chosen greedily in order."""
    chosen = []
    pivots = {}
    for idx, v in enumerate(vectors):
        row = {j: Fraction(x) for j, x in enumerate(v) if x}
        _eliminate(row, pivots)
        if row:
            _add_pivot(row, pivots)
            chosen.append(idx)
    return chosen


def extend_to_complement(subspace, candidates, n):
    """Indices of candidates extending ``subspace`` to span ``subspace + candidates``.

    Greedy in candidate order, so the result is deterministic.
    """
    k = len(subspace)
    picked = independent_subset(list(subspace) + list(candidates), n)
    return [i - k for i in picked if i >= k]


def solve_in_basis(basis, vectors, n):
    """Coordinates of each vector in terms of an independent ``basis``.

    Raises ``ValueError`` when a vector is not in the span.
    """
    k = len(basis)
    if not vectors:
        return []
    # rows of the system: for each coordinate j, sum_i c_i basis_i[j] = v[j]
    # Solve all right-hand sides at once by reducing [B^T | V^T] column form.
    # Work with augmented rows: coordinate j -> ({i: basis_i[j]} , {t: v_t[j]})
    m = len(vectors)
    by_coord = {}
    for i, v in enumerate(list(basis) + list(vectors)):
        for j, x in enumerate(v):
            if x:
                by_coord.setdefault(j, {})[i] = Fraction(x)
    aug_rows = [by_coord[j] for j in sorted(by_coord)]
    prow, piv = _reduce(aug_rows, k + m)
    if piv and piv[-1] >= k:
        raise ValueError("vector not in span of basis")
    if len(piv) != k:
        raise ValueError("basis is not independent")
    out = [[ZERO] * k for _ in range(m)]
    for r, p in zip(prow, piv):
        for c, x in r.items():
            if c >= k:
                out[c - k][p] = x
    return out


def in_span(basis, vector, n):
    if not any(vector):
        return True
    return rank_sparse([{j: x for j, x in enumerate(v) if x} for v in list(basis) + [vector]], n) \
        == rank_sparse([{j: x for j, x in enumerate(v) if x} for v in basis], n)


def quotient_projection(sub_basis, n):
    """Projection onto a complement of ``span(sub_basis)`` in ``Q^n``.

    Returns ``(proj, lift)``: ``proj`` is a ``q x n`` Matrix killing the
    subspace, ``lift`` the list of standard basis indices spanning the chosen
    complement (so ``proj`` restricted to them is the identity).
    """
    sub = [sub_basis[i] for i in independent_subset(sub_basis, n)]
    std = []
    for j in range(n):
        e = [ZERO] * n
        e[j] = ONE
        std.append(e)
    comp = extend_to_complement(sub, std, n)
    full = sub + [std[j] for j in comp]
    q = len(comp)
    # coordinates of standard vectors in basis `full`; keep the complement part
    coords = solve_in_basis(full, std, n) if n else []
    rows = [[coords[j][len(sub) + i] for j in range(n)] for i in range(q)]
    return Matrix(rows, q, n), comp
