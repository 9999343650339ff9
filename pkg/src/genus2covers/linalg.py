"""Exact dense linear algebra over the package's fields.

Small matrices (torsion blocks, basis changes) go through the pure-Python
:class:`Mat` class.  The heavy computations -- kernels of point-evaluation
matrices, rank certificates, Galois-descent row reductions -- are dispatched
to numpy int64 kernels: prime-field matrices as 2-d arrays mod p, extension
fields as (rows, cols, deg) coefficient arrays with a precomputed reduction
matrix.  The numpy route is exact; all products stay far below 2**63 because
it is only taken for p < 2**25.

Row conventions: a "row list" is a list of lists of raw field values; kernels
are returned as lists of raw-value vectors.
"""

from __future__ import annotations

import numpy as np

from .errors import Inconsistent
from .fields import Field
from .poly import Poly

_NP_LIMIT = 1 << 25


def _np_ok(field: Field) -> bool:
    return field.is_finite() and field.p < _NP_LIMIT


# ---------------------------------------------------------------------------
# numpy helpers


def _red_tables(field: Field):
    """Cached numpy reduction data for an extension field.

    RED is (2d-1, d): row k holds t^k reduced mod the modulus. REDFOLD is
    (d*d, d): row i*d+j reduces the outer-product coefficient slot (i, j).
    """
    if field._red is None:
        p, d = field.p, field.deg
        m = field.modulus
        red = np.zeros((2 * d - 1, d), dtype=np.int64)
        cur = [0] * d
        cur[0] = 1
        red[0] = cur
        for k in range(1, 2 * d - 1):
            nxt = [0] + cur[: d - 1]
            lead = cur[d - 1]
            if lead:
                for i in range(d):
                    nxt[i] = (nxt[i] - lead * m[i]) % p
            cur = [x % p for x in nxt]
            red[k] = cur
        fold = np.zeros((d * d, 2 * d - 1), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                fold[i * d + j, i + j] = 1
        field._red = (red, (fold @ red) % p)
    return field._red


def to_np(field: Field, rows):
    if field.kind == "prime":
        return np.array([[int(v) for v in row] for row in rows], dtype=np.int64)
    return np.array([[list(v) for v in row] for row in rows], dtype=np.int64)


def from_np(field: Field, arr):
    if field.kind == "prime":
        return [[int(v) % field.p for v in row] for row in arr]
    return [[tuple(int(c) % field.p for c in v) for v in row] for row in arr]


def ext_mul_arrays(field: Field, a, b):
    """Elementwise product of two broadcastable (..., d) coefficient arrays."""
    p, d = field.p, field.deg
    red, _ = _red_tables(field)
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    full = np.zeros(shape + (2 * d - 1,), dtype=np.int64)
    for i in range(d):
        full[..., i : i + d] += a[..., i : i + 1] * b
    return (full % p) @ red % p


def ext_matmul_np(field: Field, A, B):
    """(r, k, d) @ (k, c, d) -> (r, c, d), exact."""
    p, d = field.p, field.deg
    _, redfold = _red_tables(field)
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    full = np.einsum("rka,kcb->rcab", A, B)
    r, c = full.shape[0], full.shape[1]
    return (full.reshape(r, c, d * d) % p) @ redfold % p


def fp_rref(A, p):
    """Reduced row echelon over F_p in place; returns (R, pivot columns)."""
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        rows = np.nonzero(A[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            A[rows] = (A[rows] - np.outer(A[rows, c], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def fq_rref(field: Field, A):
    """Reduced row echelon of an (R, C, d) extension-field array."""
    p, d = field.p, field.deg
    A = np.array(A, dtype=np.int64) % p
    nrows, ncols = A.shape[0], A.shape[1]
    _, rf = _red_tables(field)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(np.any(A[r:, c, :] != 0, axis=-1))[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = np.array(field.inv(tuple(int(x) for x in A[r, c])), dtype=np.int64)
        A[r] = ext_mul_arrays(field, A[r], inv)
        rows = np.nonzero(np.any(A[:, c, :] != 0, axis=-1))[0]
        rows = rows[rows != r]
        if rows.size:
            factors = A[rows, c, :]
            full = np.einsum("ra,cb->rcab", factors, A[r]) % p
            prod = full.reshape(len(rows), ncols, d * d) @ rf % p
            A[rows] = (A[rows] - prod) % p
        pivots.append(c)
        r += 1
    return A, pivots


# ---------------------------------------------------------------------------
# generic row-list interface


def rref_rows(field: Field, rows):
    """(reduced rows, pivot column list) over any field."""
    if not rows:
        return [], []
    if _np_ok(field):
        if field.kind == "prime":
            R, piv = fp_rref(to_np(field, rows), field.p)
        else:
            R, piv = fq_rref(field, to_np(field, rows))
        return from_np(field, R), piv
    # pure python fallback (rationals, or very large p)
    A = [list(row) for row in rows]
    nrows, ncols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if not field.is_zero(A[i][c])), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field.mul(x, inv) for x in A[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank_rows(field: Field, rows) -> int:
    return len(rref_rows(field, rows)[1])


def kernel_rows(field: Field, rows):
    """Basis of the right kernel of the matrix given by rows."""
    if not rows:
        return []
    ncols = len(rows[0])
    R, piv = rref_rows(field, rows)
    pivset = set(piv)
    basis = []
    for j in range(ncols):
        if j in pivset:
            continue
        vec = [field.zero()] * ncols
        vec[j] = field.one()
        for r, c in enumerate(piv):
            vec[c] = field.neg(R[r][j])
        basis.append(vec)
    return basis


def solve_rows(field: Field, rows, rhs_cols):
    """Solve A.X = B columnwise.

    rows: the matrix A; rhs_cols: list of right-hand-side column vectors.
    Returns (solution columns, kernel basis); raises Inconsistent when some
    column has no solution.  Rank is len(A) minus kernel dimension as usual.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    nrhs = len(rhs_cols)
    aug = [list(rows[i]) + [col[i] for col in rhs_cols] for i in range(nrows)]
    R, piv = rref_rows(field, aug)
    main_piv = [c for c in piv if c < ncols]
    if len(main_piv) != len(piv):
        raise Inconsistent("A.X = B has no solution")
    sols = []
    for t in range(nrhs):
        x = [field.zero()] * ncols
        for r, c in enumerate(main_piv):
            x[c] = R[r][ncols + t]
        sols.append(x)
    kernel = kernel_rows(field, rows)
    return sols, kernel


def in_row_span(field: Field, basis_rows, queries):
    """True when every query vector lies in the row span of basis_rows."""
    base = rank_rows(field, basis_rows)
    joint = [list(r) for r in basis_rows] + [list(q) for q in queries]
    return rank_rows(field, joint) == base


# ---------------------------------------------------------------------------
# the small-matrix class


class Mat:
    """Dense matrix over a single Field, raw-value storage, immutable use."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = [[field.coerce(v) for v in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        return Mat(field, [[field.from_int(1 if i == j else 0) for j in range(n)]
                           for i in range(n)])

    @staticmethod
    def zeros(field: Field, r: int, c: int) -> "Mat":
        return Mat(field, [[field.zero()] * c for _ in range(r)])

    @staticmethod
    def diagonal(field: Field, entries) -> "Mat":
        n = len(entries)
        m = Mat.zeros(field, n, n)
        for i, e in enumerate(entries):
            m.rows[i][i] = field.coerce(e)
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field
                and self.rows == other.rows)

    def __repr__(self):
        return "Mat[" + "; ".join(" ".join(self.field.fmt(v) for v in row)
                                  for row in self.rows) + "]"

    def __add__(self, other):
        F = self.field
        return Mat(F, [[F.add(a, b) for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        F = self.field
        return Mat(F, [[F.sub(a, b) for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        F = self.field
        return Mat(F, [[F.neg(a) for a in row] for row in self.rows])

    def scale(self, s) -> "Mat":
        F = self.field
        s = F.coerce(s)
        return Mat(F, [[F.mul(a, s) for a in row] for row in self.rows])

    def __mul__(self, other):
        F = self.field
        if isinstance(other, Mat):
            if _np_ok(F) and self.nrows * self.ncols * other.ncols > 512:
                if F.kind == "prime":
                    out = to_np(F, self.rows) @ to_np(F, other.rows) % F.p
                else:
                    out = ext_matmul_np(F, to_np(F, self.rows), to_np(F, other.rows))
                return Mat(F, from_np(F, out))
            out = []
            bt = list(zip(*other.rows))
            for row in self.rows:
                out.append([_dot(F, row, col) for col in bt])
            return Mat(F, out)
        return self.scale(other)

    def matvec(self, vec):
        F = self.field
        return [_dot(F, row, vec) for row in self.rows]

    def transpose(self) -> "Mat":
        return Mat(self.field, [list(col) for col in zip(*self.rows)])

    def is_symmetric(self) -> bool:
        return self.rows == self.transpose().rows

    def det(self):
        F = self.field
        a = [list(r) for r in self.rows]
        n = self.nrows
        det = F.one()
        for c in range(n):
            pr = next((i for i in range(c, n) if not F.is_zero(a[i][c])), None)
            if pr is None:
                return F.zero()
            if pr != c:
                a[c], a[pr] = a[pr], a[c]
                det = F.neg(det)
            det = F.mul(det, a[c][c])
            inv = F.inv(a[c][c])
            for i in range(c + 1, n):
                if not F.is_zero(a[i][c]):
                    f = F.mul(a[i][c], inv)
                    a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[c])]
        return det

    def inv(self) -> "Mat":
        F = self.field
        n = self.nrows
        aug = [list(r) + [F.from_int(1 if i == j else 0) for j in range(n)]
               for i, r in enumerate(self.rows)]
        R, piv = rref_rows(F, aug)
        if piv != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Mat(F, [row[n:] for row in R])

    def rank(self) -> int:
        return rank_rows(self.field, self.rows)

    def kernel(self):
        return kernel_rows(self.field, self.rows)

    def trace(self):
        F = self.field
        t = F.zero()
        for i in range(self.nrows):
            t = F.add(t, self.rows[i][i])
        return t

    def charpoly(self) -> Poly:
        """Monic characteristic polynomial det(x*I - M) via Hessenberg form."""
        F = self.field
        n = self.nrows
        h = [list(r) for r in self.rows]
        # similarity reduction to upper Hessenberg: each row operation is
        # paired with the inverse column operation
        for c in range(n - 2):
            pr = next((i for i in range(c + 1, n) if not F.is_zero(h[i][c])), None)
            if pr is None:
                continue
            if pr != c + 1:
                h[c + 1], h[pr] = h[pr], h[c + 1]
                for row in h:
                    row[c + 1], row[pr] = row[pr], row[c + 1]
            inv = F.inv(h[c + 1][c])
            for i in range(c + 2, n):
                if F.is_zero(h[i][c]):
                    continue
                f = F.mul(h[i][c], inv)
                h[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(h[i], h[c + 1])]
                for row in h:
                    row[c + 1] = F.add(row[c + 1], F.mul(f, row[i]))
        return self._charpoly_hessenberg(h)

    def _charpoly_hessenberg(self, h):
        F = self.field
        n = self.nrows
        ps = [Poly.const(F, 1)]
        x = Poly.x(F)
        for m in range(1, n + 1):
            term = (x - Poly.const(F, h[m - 1][m - 1])) * ps[m - 1]
            prod = F.one()
            for k in range(1, m):
                prod = F.mul(prod, h[m - k][m - k - 1])
                term = term - Poly.const(F, F.mul(h[m - 1 - k][m - 1], prod)) * ps[m - 1 - k]
            ps.append(term)
        return ps[n]

    def frobenius_fixed(self) -> bool:
        """Entrywise a^p == a: all entries lie in the prime subfield image."""
        F = self.field
        return all(F.eq(F.frobenius(v), v) for row in self.rows for v in row)

    def map_entries(self, fn) -> "Mat":
        return Mat(self.field, [[fn(v) for v in row] for row in self.rows])

    def col(self, j):
        return [row[j] for row in self.rows]

    def to_lists(self):
        return [list(r) for r in self.rows]


def _dot(F: Field, a, b):
    acc = F.zero()
    for x, y in zip(a, b):
        acc = F.add(acc, F.mul(x, y))
    return acc


def block_diag(field: Field, blocks) -> Mat:
    n = sum(b.nrows for b in blocks)
    out = Mat.zeros(field, n, n)
    off = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                out.rows[off + i][off + j] = b.rows[i][j]
        off += b.nrows
    return out


def solve_linear(A: Mat, B: Mat):
    """One solution of A.X = B plus a basis of ker A.

    Returns (X: Mat, kernel: list of column vectors).  Raises Inconsistent
    when no solution exists.
    """
    cols = [B.col(j) for j in range(B.ncols)]
    sols, kernel = solve_rows(A.field, A.rows, cols)
    X = Mat(A.field, [list(r) for r in zip(*sols)]) if sols else Mat.zeros(A.field, A.ncols, 0)
    return X, kernel
