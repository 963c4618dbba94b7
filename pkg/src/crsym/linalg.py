"""Dense exact matrices and subspaces over :class:`~crsym.exactnum.Scalar`."""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .exactnum import ONE, ZERO, Scalar, as_scalar, parse_scalar

Vector = list  # list of Scalar


def _coerce_row(row) -> tuple:
    return tuple(x if isinstance(x, Scalar) else as_scalar(x) for x in row)


class Mat:
    """Immutable dense matrix with exact entries."""

    __slots__ = ("rows", "cols", "e", "_hash")

    def __init__(self, entries, rows: Optional[int] = None, cols: Optional[int] = None):
        e = tuple(_coerce_row(r) for r in entries)
        if rows is None:
            rows = len(e)
        if cols is None:
            cols = len(e[0]) if e else 0
        if len(e) != rows or any(len(r) != cols for r in e):
            raise ValueError("ragged or mis-sized matrix")
        self.rows, self.cols, self.e = rows, cols, e
        self._hash = None

    @classmethod
    def _raw(cls, e, rows, cols) -> Mat:
        m = object.__new__(cls)
        m.e, m.rows, m.cols, m._hash = e, rows, cols, None
        return m

    # -- constructors ------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> Mat:
        cols = rows if cols is None else cols
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def diag(cls, values: Sequence) -> Mat:
        n = len(values)
        vals = [as_scalar(v) for v in values]
        return cls._raw(tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int, value=ONE) -> Mat:
        e = [[ZERO] * cols for _ in range(rows)]
        e[i][j] = as_scalar(value)
        return cls._raw(tuple(tuple(r) for r in e), rows, cols)

    @classmethod
    def blocks(cls, grid: Sequence[Sequence[Mat]]) -> Mat:
        out = []
        for brow in grid:
            h = brow[0].rows
            for i in range(h):
                row: list = []
                for b in brow:
                    if b.rows != h:
                        raise ValueError("block heights differ")
                    row.extend(b.e[i])
                out.append(tuple(row))
        cols = len(out[0]) if out else 0
        return cls._raw(tuple(out), len(out), cols)

    @classmethod
    def from_vec(cls, v: Sequence, rows: int, cols: int) -> Mat:
        if len(v) != rows * cols:
            raise ValueError("vector length does not match shape")
        return cls._raw(tuple(tuple(v[i * cols:(i + 1) * cols]) for i in range(rows)), rows, cols)

    # -- access ------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.e[i][j]

    def sub(self, r0: int, r1: int, c0: int, c1: int) -> Mat:
        return Mat._raw(tuple(row[c0:c1] for row in self.e[r0:r1]), r1 - r0, c1 - c0)

    def vec(self) -> list:
        return [x for row in self.e for x in row]

    def column(self, j: int) -> list:
        return [row[j] for row in self.e]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    # -- algebra -----------------------------------------------------------
    def _check_same(self, o: Mat) -> None:
        if self.shape != o.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {o.shape}")

    def __add__(self, o: Mat) -> Mat:
        self._check_same(o)
        return Mat._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.e, o.e)),
                        self.rows, self.cols)

    def __sub__(self, o: Mat) -> Mat:
        self._check_same(o)
        return Mat._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.e, o.e)),
                        self.rows, self.cols)

    def __neg__(self) -> Mat:
        return Mat._raw(tuple(tuple(-a for a in r) for r in self.e), self.rows, self.cols)

    def scale(self, c) -> Mat:
        c = as_scalar(c)
        if c.is_zero():
            return Mat.zeros(self.rows, self.cols)
        return Mat._raw(tuple(tuple(a * c for a in r) for r in self.e), self.rows, self.cols)

    def __mul__(self, o):
        if isinstance(o, Mat):
            return self.matmul(o)
        return self.scale(o)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, o: Mat) -> Mat:
        return self.matmul(o)

    def matmul(self, o: Mat) -> Mat:
        if self.cols != o.rows:
            raise ValueError(f"cannot multiply {self.shape} by {o.shape}")
        ocols = [o.column(j) for j in range(o.cols)]
        out = []
        for r in self.e:
            nz = [(k, a) for k, a in enumerate(r) if not a.is_zero()]
            row = []
            for col in ocols:
                acc = ZERO
                for k, a in nz:
                    b = col[k]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Mat._raw(tuple(out), self.rows, o.cols)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for r in self.e:
            acc = ZERO
            for a, b in zip(r, v):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return out

    @property
    def T(self) -> Mat:
        return Mat._raw(tuple(zip(*self.e)) if self.rows else tuple(), self.cols, self.rows)

    def conj(self) -> Mat:
        return Mat._raw(tuple(tuple(a.conj() for a in r) for r in self.e), self.rows, self.cols)

    @property
    def H(self) -> Mat:
        return self.conj().T

    def trace(self) -> Scalar:
        acc = ZERO
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.e[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.e for a in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.H

    def rank(self) -> int:
        return len(rref(self.e, self.cols)[1])

    def inv(self) -> Mat:
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.e)]
        R, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Mat._raw(tuple(tuple(R[i][n:]) for i in range(n)), n, n)

    def bracket(self, o: Mat) -> Mat:
        return self.matmul(o) - o.matmul(self)

    # -- comparison / io ---------------------------------------------------
    def __eq__(self, o) -> bool:
        if not isinstance(o, Mat):
            return NotImplemented
        return self.shape == o.shape and self.e == o.e

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self.e))
        return self._hash

    def to_json(self) -> list:
        return [[x.to_json() for x in r] for r in self.e]

    @classmethod
    def from_json(cls, data) -> Mat:
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix must be a list of rows")
        return cls([[parse_scalar(x) for x in r] for r in data])

    def __repr__(self) -> str:
        return "Mat([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.e) + "])"


def block_diag(*ms: Mat) -> Mat:
    n = sum(m.rows for m in ms)
    k = sum(m.cols for m in ms)
    out = [[ZERO] * k for _ in range(n)]
    r0 = c0 = 0
    for m in ms:
        for i in range(m.rows):
            out[r0 + i][c0:c0 + m.cols] = m.e[i]
        r0 += m.rows
        c0 += m.cols
    return Mat._raw(tuple(tuple(r) for r in out), n, k)


# -- elimination ---------------------------------------------------------------

def rref(rows: Iterable[Sequence], ncols: int) -> tuple:
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    A = [list(r) for r in rows]
    pivots: list = []
    r = 0
    nrows = len(A)
    for c in range(ncols):
        if r >= nrows:
            break
        p = None
        # prefer a rational pivot: cheaper inverse
        for i in range(r, nrows):
            a = A[i][c]
            if not a.is_zero():
                if p is None:
                    p = i
                if a.is_rational():
                    p = i
                    break
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        if piv != ONE:
            inv = piv.inv()
            A[r] = [x if x.is_zero() else x * inv for x in A[r]]
        prow = A[r]
        nzc = [j for j in range(c, ncols) if not prow[j].is_zero()]
        for i in range(nrows):
            if i == r:
                continue
            f = A[i][c]
            if f.is_zero():
                continue
            row = A[i]
            for j in nzc:
                row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(m: Mat) -> int:
    return m.rank()


def kernel(m: Mat) -> Subspace:
    """Null space ``{x : m x = 0}``."""
    return _kernel_rows(m.e, m.cols)


def _kernel_rows(rows, ncols: int) -> Subspace:
    R, piv = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, pc in enumerate(piv):
            a = R[i][f]
            if not a.is_zero():
                v[pc] = -a
        basis.append(v)
    return Subspace(ncols, basis)


def solve_linear(A: Mat, b: Sequence) -> Optional[tuple]:
    """Solve ``A x = b``.

    Returns ``None`` when inconsistent, else ``(x0, K)`` with ``x0`` a
    particular solution and ``K`` the kernel of ``A``.
    """
    if len(b) != A.rows:
        raise ValueError("right-hand side length mismatch")
    n = A.cols
    aug = [list(r) + [as_scalar(bi)] for r, bi in zip(A.e, b)]
    R, piv = rref(aug, n + 1)
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for i, pc in enumerate(piv):
        x[pc] = R[i][n]
    return x, _kernel_rows(A.e, n)


def solve_rows(rows: Sequence[Sequence], ncols: int) -> Subspace:
    """Kernel of the linear map whose matrix rows are given."""
    return _kernel_rows(rows, ncols)


# -- subspaces -----------------------------------------------------------------

class Subspace:
    """Span of vectors in a coordinate space, kept in canonical RREF."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = ()):
        vs = []
        for v in vectors:
            v = list(v)
            if len(v) != ambient:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient}")
            vs.append([x if isinstance(x, Scalar) else as_scalar(x) for x in v])
        R, piv = rref(vs, ambient)
        self.ambient = ambient
        self.basis = [tuple(r) for r in R]
        self.pivots = piv

    @classmethod
    def _from_rref(cls, ambient, basis, pivots) -> Subspace:
        s = object.__new__(cls)
        s.ambient, s.basis, s.pivots = ambient, basis, pivots
        return s

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls._from_rref(n, [], [])

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def of_matrices(cls, mats: Sequence[Mat], rows: Optional[int] = None, cols: Optional[int] = None) -> Subspace:
        if rows is None:
            rows, cols = mats[0].shape
        return cls(rows * cols, [m.vec() for m in mats])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def _check(self, other: Subspace) -> None:
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch {self.ambient} vs {other.ambient}")

    def reduce(self, v: Sequence) -> list:
        """Remainder of ``v`` after clearing the pivot columns."""
        if len(v) != self.ambient:
            raise ValueError("ambient mismatch")
        w = [x if isinstance(x, Scalar) else as_scalar(x) for x in v]
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f.is_zero():
                continue
            for j in range(pc, self.ambient):
                a = row[j]
                if not a.is_zero():
                    w[j] = w[j] - f * a
        return w

    def coords(self, v: Sequence) -> Optional[list]:
        """Coordinates of ``v`` in the stored basis, or ``None`` if outside."""
        if not all(x.is_zero() for x in self.reduce(v)):
            return None
        return [as_scalar(v[pc]) for pc in self.pivots]

    def contains(self, v: Sequence) -> bool:
        return all(x.is_zero() for x in self.reduce(v))

    def __contains__(self, v) -> bool:
        if isinstance(v, Mat):
            v = v.vec()
        return self.contains(v)

    def contains_space(self, other: Subspace) -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def combine(self, coeffs: Sequence) -> list:
        out = [ZERO] * self.ambient
        for c, row in zip(coeffs, self.basis):
            c = as_scalar(c)
            if c.is_zero():
                continue
            for j, a in enumerate(row):
                if not a.is_zero():
                    out[j] = out[j] + c * a
        return out

    def sum(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    __add__ = sum

    def intersection(self, other: Subspace) -> Subspace:
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient)
        k, l = self.dim, other.dim
        # columns: u_1..u_k, -v_1..-v_l
        rows = []
        for j in range(self.ambient):
            rows.append([u[j] for u in self.basis] + [-v[j] for v in other.basis])
        K = _kernel_rows(rows, k + l)
        return Subspace(self.ambient, [self.combine(c[:k]) for c in K.basis])

    __and__ = intersection

    def __eq__(self, o) -> bool:
        if not isinstance(o, Subspace):
            return NotImplemented
        return self.ambient == o.ambient and self.basis == o.basis

    def __hash__(self) -> int:
        return hash((self.ambient, tuple(self.basis)))

    def matrices(self, rows: int, cols: int) -> list:
        return [Mat.from_vec(list(b), rows, cols) for b in self.basis]

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"


def matrix_of(fn, n_in: int) -> Mat:
    """Matrix of a linear map given as a function on coordinate vectors.

    Column ``k`` is ``fn(e_k)``.
    """
    cols = []
    for k in range(n_in):
        e = [ZERO] * n_in
        e[k] = ONE
        cols.append(list(fn(e)))
    if not cols:
        return Mat.zeros(0, 0)
    n_out = len(cols[0])
    return Mat._raw(tuple(tuple(cols[k][i] for k in range(n_in)) for i in range(n_out)), n_out, n_in)
