"""Matrix encoding of a 2-nondegenerate CR symbol and its pointwise invariants.

Conventions
-----------
Coordinates on the degree -1 part are ordered so that the first ``m`` span the
``(-1, 1)`` piece and the last ``m`` the ``(-1, -1)`` piece.  A symbol is given
by a Hermitian invertible ``H`` and generators ``C_1..C_r``; the degree
``(0, 2)`` space is spanned by the block matrices ``[[0, C_i], [0, 0]]`` and the
degree ``(0, -2)`` space by ``[[0, 0], [conj(C_i), 0]]``.

The symplectic form is ``omega(x, y) = y^T J x`` with
``J = i [[0, H], [-H^T, 0]]``.  A ``2m x 2m`` matrix ``X`` lies in the
conformal symplectic algebra iff ``X^T J + J X = 2 c J`` for some scalar ``c``;
then ``c = tr(X) / 2m`` and ``X`` acts on the centre by ``2c``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .exactnum import ONE, ZERO, I, Scalar, real_sign
from .linalg import Mat, Subspace, block_diag, kernel, matrix_of, solve_rows


@dataclass(frozen=True)
class CRSymbolData:
    m: int
    r: int
    H: Mat
    C: tuple

    def __post_init__(self):
        object.__setattr__(self, "C", tuple(self.C))

    def to_json(self) -> dict:
        return {"m": self.m, "r": self.r, "H": self.H.to_json(), "C": [c.to_json() for c in self.C]}

    @classmethod
    def from_json(cls, data) -> CRSymbolData:
        if not isinstance(data, dict):
            raise ValueError("symbol must be a JSON object")
        try:
            m, r = data["m"], data["r"]
            H = Mat.from_json(data["H"])
            C = [Mat.from_json(c) for c in data["C"]]
        except KeyError as exc:
            raise ValueError(f"symbol is missing field {exc}") from exc
        if not isinstance(m, int) or not isinstance(r, int) or m < 1 or r < 0:
            raise ValueError("m and r must be non-negative integers with m >= 1")
        if H.shape != (m, m) or any(c.shape != (m, m) for c in C):
            raise ValueError("H and every C_i must be m x m")
        if len(C) != r:
            raise ValueError(f"r = {r} but {len(C)} generators given")
        return cls(m, r, H, tuple(C))

    @property
    def Hinv(self) -> Mat:
        return self.H.inv()


def validate(s: CRSymbolData) -> list:
    """Return a list of human readable violations; empty means valid."""
    out = []
    m = s.m
    if s.H.shape != (m, m):
        return [f"H has shape {s.H.shape}, expected {(m, m)}"]
    if len(s.C) != s.r:
        out.append(f"r = {s.r} but {len(s.C)} generators given")
    if not s.H.is_hermitian():
        out.append("H is not Hermitian")
    if s.H.rank() != m:
        out.append("H is singular")
    Hbar = s.H.conj()
    for k, c in enumerate(s.C):
        if c.shape != (m, m):
            out.append(f"C_{k + 1} has shape {c.shape}, expected {(m, m)}")
            continue
        if not (Hbar @ c).is_symmetric():
            out.append(f"conj(H) C_{k + 1} is not symmetric, so C_{k + 1} is not a conformal symplectic block")
    if s.r > m * (m + 1) // 2:
        out.append(f"r = {s.r} exceeds m(m+1)/2 = {m * (m + 1) // 2}")
    good = [c for c in s.C if c.shape == (m, m)]
    if good and Subspace.of_matrices(good, m, m).dim != len(good):
        out.append("the generators C_i are linearly dependent (not 2-nondegenerate)")
    if s.r == 0:
        out.append("r must be at least 1")
    return out


# -- Hermitian inertia ---------------------------------------------------------

def signature(H: Mat) -> tuple:
    """Inertia ``(p, q)`` of an invertible Hermitian matrix by congruence."""
    if not H.is_hermitian():
        raise ValueError("signature requires a Hermitian matrix")
    n = H.rows
    A = [list(r) for r in H.e]

    def add_multiple(j, l, c):
        # row_j += c row_l ; col_j += conj(c) col_l   (keeps A Hermitian)
        cb = c.conj()
        A[j] = [a + c * b for a, b in zip(A[j], A[l])]
        for row in A:
            row[j] = row[j] + cb * row[l]

    def swap(j, k):
        A[j], A[k] = A[k], A[j]
        for row in A:
            row[j], row[k] = row[k], row[j]

    p = q = 0
    for k in range(n):
        j = next((j for j in range(k, n) if not A[j][j].is_zero()), None)
        if j is None:
            pair = next(((a, b) for a in range(k, n) for b in range(k, n)
                         if a != b and not A[a][b].is_zero()), None)
            if pair is None:
                raise ValueError("signature requires an invertible matrix")
            a, b = pair
            c = ONE if not A[a][b].real_part() == 0 else I
            add_multiple(a, b, c)
            j = a
        swap(j, k)
        d = A[k][k]
        sgn = real_sign(d.real_part())
        if sgn > 0:
            p += 1
        else:
            q += 1
        dinv = d.inv()
        for i in range(k + 1, n):
            f = A[i][k]
            if not f.is_zero():
                add_multiple(i, k, -(f * dinv))
    return p, q


# -- the conformal symplectic algebra -----------------------------------------

def symplectic_J(H: Mat) -> Mat:
    m = H.rows
    Z = Mat.zeros(m, m)
    return Mat.blocks([[Z, H], [-H.T, Z]]).scale(I)


def csp_scale(X: Mat) -> Scalar:
    """The scalar ``c`` with ``X = (symplectic part) + c I``."""
    return X.trace() / Scalar(X.rows)


def is_csp(X: Mat, H: Mat) -> bool:
    J = symplectic_J(H)
    c = csp_scale(X)
    return X.T @ J + J @ X == J.scale(c * 2)


def build_csp_basis(m: int, H: Mat) -> Subspace:
    """Basis of the conformal symplectic algebra as a subspace of 2m x 2m matrices."""
    n = 2 * m
    J = symplectic_J(H)

    def residual(v):
        X = Mat.from_vec(v[:n * n], n, n)
        c = v[n * n]
        return (X.T @ J + J @ X - J.scale(c * 2)).vec()

    K = kernel(matrix_of(residual, n * n + 1))
    return Subspace(n * n, [b[:n * n] for b in K.basis])


def csp00_basis(m: int, H: Mat) -> Subspace:
    """Block-diagonal part of the conformal symplectic algebra."""
    n = 2 * m
    full = build_csp_basis(m, H)
    mask = Subspace(n * n, [Mat.unit(n, n, i, j).vec()
                            for i in range(n) for j in range(n) if (i < m) == (j < m)])
    return full & mask


def split_blocks(X: Mat, m: int) -> tuple:
    return X.sub(0, m, 0, m), X.sub(0, m, m, 2 * m), X.sub(m, 2 * m, 0, m), X.sub(m, 2 * m, m, 2 * m)


def bigrade_project(X: Mat, m: int) -> tuple:
    """Split into the (0,2), (0,0) and (0,-2) components."""
    A, B, C, D = split_blocks(X, m)
    Z = Mat.zeros(m, m)
    return (Mat.blocks([[Z, B], [Z, Z]]),
            Mat.blocks([[A, Z], [Z, D]]),
            Mat.blocks([[Z, Z], [C, Z]]))


def involution(X: Mat, m: int) -> Mat:
    """Antilinear involution induced by swapping the two halves of degree -1."""
    A, B, C, D = split_blocks(X, m)
    return Mat.blocks([[D.conj(), C.conj()], [B.conj(), A.conj()]])


def involution_space(U: Subspace, m: int) -> Subspace:
    n = 2 * m
    return Subspace(U.ambient, [involution(M, m).vec() for M in U.matrices(n, n)])


def upper(C: Mat) -> Mat:
    m = C.rows
    Z = Mat.zeros(m, m)
    return Mat.blocks([[Z, C], [Z, Z]])


def lower(C: Mat) -> Mat:
    m = C.rows
    Z = Mat.zeros(m, m)
    return Mat.blocks([[Z, Z], [C, Z]])


def g02_generators(s: CRSymbolData) -> list:
    return [upper(c) for c in s.C]


def g0m2_generators(s: CRSymbolData) -> list:
    return [lower(c.conj()) for c in s.C]


def embed_alpha(alpha: Mat, H: Mat, Hinv: Optional[Mat] = None) -> Mat:
    """``blockdiag(alpha, -H^{-1} alpha^T H)``."""
    Hinv = H.inv() if Hinv is None else Hinv
    return block_diag(alpha, -(Hinv @ alpha.T @ H))


# -- the algebra of compatible blocks ------------------------------------------

def compute_A(s: CRSymbolData) -> Subspace:
    """Matrices ``alpha`` whose induced block-diagonal element normalises both
    off-diagonal generator spans.  Solved as one linear system in ``alpha`` and
    the span coefficients."""
    m, r = s.m, s.r
    H, Hinv = s.H, s.Hinv
    P = [c @ Hinv for c in s.C]              # C_i H^{-1}
    Q = [H @ c.conj() for c in s.C]          # H conj(C_i)
    nv = m * m + 2 * r * r

    def residual(v):
        alpha = Mat.from_vec(v[:m * m], m, m)
        a = v[m * m:m * m + r * r]
        b = v[m * m + r * r:]
        out = []
        for i in range(r):
            lhs = alpha @ P[i] + P[i] @ alpha.T
            for j in range(r):
                lhs = lhs - P[j].scale(a[i * r + j])
            out.extend(lhs.vec())
            lhs = alpha.T @ Q[i] + Q[i] @ alpha
            for j in range(r):
                lhs = lhs - Q[j].scale(b[i * r + j])
            out.extend(lhs.vec())
        return out

    K = kernel(matrix_of(residual, nv))
    return Subspace(m * m, [b[:m * m] for b in K.basis])


def compute_g00(s: CRSymbolData, A: Optional[Subspace] = None) -> Subspace:
    m = s.m
    n = 2 * m
    A = compute_A(s) if A is None else A
    Hinv = s.Hinv
    gens = [embed_alpha(a, s.H, Hinv).vec() for a in A.matrices(m, m)]
    gens.append(Mat.identity(n).vec())
    return Subspace(n * n, gens)


def normalizer_g00(s: CRSymbolData) -> Subspace:
    """Independent route: block-diagonal csp elements preserving both spans."""
    m = s.m
    n = 2 * m
    base = csp00_basis(m, s.H)
    up = Subspace.of_matrices(g02_generators(s), n, n)
    lo = Subspace.of_matrices(g0m2_generators(s), n, n)
    gens = base.matrices(n, n)

    def residual(v):
        X = Mat.from_vec(base.combine(v), n, n)
        out = []
        for G in g02_generators(s):
            out.extend(up.reduce(X.bracket(G).vec()))
        for G in g0m2_generators(s):
            out.extend(lo.reduce(X.bracket(G).vec()))
        return out

    K = kernel(matrix_of(residual, len(gens)))
    return Subspace(n * n, [base.combine(b) for b in K.basis])


# -- regularity ----------------------------------------------------------------

def is_regular(s: CRSymbolData) -> bool:
    """Triple-product criterion ``C_i conj(C_j) C_k + C_k conj(C_j) C_i`` in span."""
    m = s.m
    span = Subspace.of_matrices(list(s.C), m, m)
    Cb = [c.conj() for c in s.C]
    r = s.r
    for j in range(r):
        for i in range(r):
            left = s.C[i] @ Cb[j]
            for k in range(i, r):
                T = left @ s.C[k] + s.C[k] @ Cb[j] @ s.C[i]
                if not span.contains(T.vec()):
                    return False
    return True


def is_regular_cube(s: CRSymbolData) -> bool:
    """For r = 1: the antilinear operator ``A x = C conj(x)`` satisfies
    ``A^3 = lambda A``, tested by applying it to the standard basis."""
    if s.r != 1:
        raise ValueError("the cube criterion applies only to r = 1")
    C = s.C[0]
    m = s.m

    def A(x):
        return C.apply([v.conj() for v in x])

    U, W = [], []
    for k in range(m):
        e = [ONE if t == k else ZERO for t in range(m)]
        u = A(e)
        U.extend(u)
        W.extend(A(A(u)))
    return Subspace(len(U), [U]).contains(W)


def is_regular_bracket(s: CRSymbolData) -> bool:
    """Brackets of the (0,-2) and (0,2) spans land in the (0,0) algebra."""
    g00 = compute_g00(s)
    for X in g0m2_generators(s):
        for Y in g02_generators(s):
            if not g00.contains(X.bracket(Y).vec()):
                return False
    return True


# -- recoverability ------------------------------------------------------------

def spencer_first_prolongation(Z: Sequence[Mat]) -> Subspace:
    """First prolongation of a space of maps ``V -> W`` given as matrices.

    Coordinates of the result: ``F[s][k]`` (index ``s * dim V + k``) where
    ``f(e_k) = sum_s F[s][k] Z_s`` and ``Z_s`` runs over a basis of span(Z).
    """
    if not Z:
        return Subspace.zero(0)
    w, v = Z[0].shape
    basis = Subspace.of_matrices(list(Z), w, v).matrices(w, v)
    d = len(basis)
    rows = []
    for k in range(v):
        for l in range(k + 1, v):
            for out in range(w):
                row = [ZERO] * (d * v)
                for s_, Zs in enumerate(basis):
                    row[s_ * v + k] = row[s_ * v + k] + Zs[out, l]
                    row[s_ * v + l] = row[s_ * v + l] - Zs[out, k]
                rows.append(row)
    return solve_rows(rows, d * v)


def is_recoverable(s: CRSymbolData) -> bool:
    return spencer_first_prolongation(list(s.C)).dim == 0


# -- change of adapted frame ---------------------------------------------------

def change_basis(s: CRSymbolData, S: Mat) -> CRSymbolData:
    """Transform by ``T = blockdiag(S, conj(S))`` on degree -1.

    ``H' = S^T H conj(S)`` and ``C_i' = S^{-1} C_i conj(S)``.
    """
    Sb = S.conj()
    Sinv = S.inv()
    return CRSymbolData(s.m, s.r, S.T @ s.H @ Sb, tuple(Sinv @ c @ Sb for c in s.C))


# -- report --------------------------------------------------------------------

@dataclass
class SymbolReport:
    signature: tuple
    regular: bool
    recoverable: bool
    dimA: int
    dimG00: int
    A_basis: Subspace = field(repr=False)
    G00_basis: Subspace = field(repr=False)

    def to_json(self) -> dict:
        return {
            "signature": list(self.signature),
            "regular": self.regular,
            "recoverable": self.recoverable,
            "dimA": self.dimA,
            "dimG00": self.dimG00,
        }


def analyze(s: CRSymbolData) -> SymbolReport:
    A = compute_A(s)
    g00 = compute_g00(s, A)
    return SymbolReport(
        signature=signature(s.H),
        regular=is_regular(s),
        recoverable=is_recoverable(s),
        dimA=A.dim,
        dimG00=g00.dim,
        A_basis=A,
        G00_basis=g00,
    )
