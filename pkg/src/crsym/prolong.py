"""Universal Tanaka prolongation of a degree-zero space over a Heisenberg algebra.

Graded pieces are kept as coordinate spaces:

* degree -2: the centre, one coordinate;
* degree -1: ``C^{2m}``;
* degree 0: coordinates with respect to a basis of ``g0`` (2m x 2m matrices);
* degree k >= 1: each basis element ``f`` is stored through its values
  ``f(e_p)`` (coordinates in degree k-1) and ``f(z)`` (coordinates in degree k-2).

Brackets of a positive-degree element with the negative part are evaluation of
these stored values.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .exactnum import ONE, ZERO, Scalar, as_scalar
from .linalg import Mat, Subspace, solve_rows
from .symbol import csp_scale, symplectic_J

DEFAULT_MAX_DEGREE = 10


def default_max_degree() -> int:
    raw = os.environ.get("CRSYM_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_DEGREE
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(f"CRSYM_MAX_DEGREE must be an integer, got {raw!r}") from None
    if val < 1:
        raise ValueError("CRSYM_MAX_DEGREE must be at least 1")
    return val


@dataclass(frozen=True)
class HeisenbergAlg:
    m: int
    J: Mat

    @classmethod
    def from_H(cls, H: Mat) -> HeisenbergAlg:
        return cls(H.rows, symplectic_J(H))

    @property
    def dim(self) -> int:
        return 2 * self.m + 1

    def omega(self, x: Sequence, y: Sequence) -> Scalar:
        """``omega(x, y) = y^T J x``."""
        return sum((a * b for a, b in zip(y, self.J.apply(list(x)))), ZERO)

    def bracket(self, a: Sequence, b: Sequence) -> list:
        """Bracket of two elements written as ``(degree -1 coords..., z coord)``."""
        n = 2 * self.m
        return [ZERO] * n + [self.omega(a[:n], b[:n])]


@dataclass
class GradedSpan:
    g0: Subspace
    heis: HeisenbergAlg

    @property
    def m(self) -> int:
        return self.heis.m

    def g0_matrices(self) -> list:
        n = 2 * self.m
        return self.g0.matrices(n, n)


def semidirect_bracket(heis: HeisenbergAlg, x: tuple, y: tuple) -> tuple:
    """Bracket on ``g_- + csp``; elements are ``(vector of length 2m+1, matrix)``."""
    a, X = x
    b, Y = y
    n = 2 * heis.m
    out = heis.bracket(a, b)

    def act(M, v):
        w = M.apply(list(v[:n]))
        return w + [csp_scale(M) * 2 * v[n]]

    Xb = act(X, b)
    Ya = act(Y, a)
    vec = [o + p - q for o, p, q in zip(out, Xb, Ya)]
    return vec, X.bracket(Y)


def grading_element_check(g: GradedSpan) -> bool:
    n = 2 * g.m
    return g.g0.contains((-Mat.identity(n)).vec())


@dataclass
class ProlongReport:
    dims: list
    total: int
    terminated: bool
    pieces: list = field(default_factory=list, repr=False, compare=False)

    def positive_dim(self) -> int:
        return sum(d for k, d in self.dims if k >= 1)

    def dim_of(self, k: int) -> int:
        for kk, d in self.dims:
            if kk == k:
                return d
        return 0

    def to_json(self) -> dict:
        return {"dims": [[k, d] for k, d in self.dims], "total": self.total, "terminated": self.terminated}


class _Tower:
    """Bookkeeping for the graded pieces computed so far."""

    def __init__(self, g: GradedSpan):
        self.m = g.m
        self.n = 2 * g.m
        self.J = g.heis.J
        self.g0 = g.g0_matrices()
        self.dims = {-2: 1, -1: self.n, 0: len(self.g0)}
        # positive degrees: list of (F1, F2) with F1 a list of n coordinate lists
        self.pos: dict = {}

    def ad_e(self, j: int, p: int) -> Mat:
        """Matrix of ``y -> [y, e_p]`` from degree j to degree j-1."""
        n = self.n
        if j == -1:
            # [y, e_p] = omega(y, e_p) z = (e_p^T J y) z
            return Mat([list(self.J.e[p])])
        if j == 0:
            cols = [M.column(p) for M in self.g0]
            return _from_columns(cols, n)
        cols = [F1[p] for F1, _ in self.pos[j]]
        return _from_columns(cols, self.dims[j - 1])

    def ad_z(self, j: int) -> Mat:
        """Matrix of ``y -> [y, z]`` from degree j to degree j-2."""
        if j == -1:
            return Mat.zeros(0, self.n)
        if j == 0:
            return Mat([[csp_scale(M) * 2 for M in self.g0]])
        cols = [F2 for _, F2 in self.pos[j]]
        return _from_columns(cols, self.dims[j - 2])

    def omega_pq(self, p: int, q: int) -> Scalar:
        return self.J[q, p]

    def step(self, k: int) -> int:
        n = self.n
        d1 = self.dims[k - 1]
        d2 = self.dims[k - 2]
        nv = n * d1 + d2
        f2 = n * d1  # offset of F2 unknowns
        rows = []
        ade1 = [self.ad_e(k - 1, p) for p in range(n)]
        ade2 = [self.ad_e(k - 2, p) for p in range(n)]
        adz1 = self.ad_z(k - 1)
        d3 = self.dims.get(k - 3, 0)
        # pairs (e_p, e_q): omega(e_p,e_q) F2 = [F1[p], e_q] - [F1[q], e_p]
        for p in range(n):
            for q in range(p + 1, n):
                w = self.omega_pq(p, q)
                for t in range(d2):
                    row = [ZERO] * nv
                    if not w.is_zero():
                        row[f2 + t] = w
                    aq, ap = ade1[q].e[t], ade1[p].e[t]
                    for a in range(d1):
                        if not aq[a].is_zero():
                            row[p * d1 + a] = row[p * d1 + a] - aq[a]
                        if not ap[a].is_zero():
                            row[q * d1 + a] = row[q * d1 + a] + ap[a]
                    rows.append(row)
        # pairs (e_p, z): 0 = [F1[p], z] - [F2, e_p]
        for p in range(n):
            for t in range(d3):
                row = [ZERO] * nv
                az = adz1.e[t]
                for a in range(d1):
                    if not az[a].is_zero():
                        row[p * d1 + a] = az[a]
                ae = ade2[p].e[t]
                for b in range(d2):
                    if not ae[b].is_zero():
                        row[f2 + b] = row[f2 + b] - ae[b]
                rows.append(row)
        K = solve_rows(rows, nv)
        elems = []
        for v in K.basis:
            F1 = [list(v[p * d1:(p + 1) * d1]) for p in range(n)]
            F2 = list(v[f2:])
            elems.append((F1, F2))
        self.pos[k] = elems
        self.dims[k] = len(elems)
        return len(elems)

    def residual(self, k: int, elem: tuple) -> bool:
        """Re-check the derivation identity for one element of degree k."""
        F1, F2 = elem
        n = self.n
        d2 = self.dims[k - 2]
        for p in range(n):
            for q in range(n):
                w = self.omega_pq(p, q)
                lhs = [w * x for x in F2]
                a = self.ad_e(k - 1, q).apply(F1[p])
                b = self.ad_e(k - 1, p).apply(F1[q])
                if any(l != x - y for l, x, y in zip(lhs, a, b)) or len(lhs) != d2:
                    return False
            left = self.ad_z(k - 1).apply(F1[p])
            right = self.ad_e(k - 2, p).apply(F2)
            if left != right:
                return False
        return True


def _from_columns(cols: Sequence[Sequence], nrows: int) -> Mat:
    if not cols:
        return Mat.zeros(nrows, 0)
    return Mat._raw(tuple(tuple(col[i] for col in cols) for i in range(nrows)), nrows, len(cols))


def tanaka_prolong(g: GradedSpan, max_degree: Optional[int] = None, verify: bool = False) -> ProlongReport:
    """Dimensions of the universal prolongation, degree by degree.

    Stops at the first vanishing degree after confirming the next degree also
    vanishes.  ``terminated`` is false if ``max_degree`` is reached first.
    """
    if max_degree is None:
        max_degree = default_max_degree()
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    tower = _Tower(g)
    dims = [(-2, 1), (-1, tower.n), (0, tower.dims[0])]
    terminated = False
    for k in range(1, max_degree + 1):
        d = tower.step(k)
        if verify:
            for elem in tower.pos[k]:
                if not tower.residual(k, elem):
                    raise AssertionError(f"degree {k} element fails the derivation identity")
        dims.append((k, d))
        if d == 0:
            if tower.step(k + 1) != 0:
                raise AssertionError(f"degree {k} vanished but degree {k + 1} did not")
            terminated = True
            break
    total = sum(d for _, d in dims)
    return ProlongReport(dims=dims, total=total, terminated=terminated, pieces=[tower])


def brute_force_first_prolongation(g: GradedSpan) -> int:
    """Dimension of degree 1 by brute force over ``Hom(g_-, g_- + gl(2m))``.

    Unknowns are ``f(e_p)`` as full 2m x 2m matrices and ``f(z)`` in ``C^{2m}``.
    Membership of ``f(e_p)`` in ``g0`` is imposed by equations, and the
    derivation identity is imposed on every ordered pair of basis vectors of
    ``g_-``.  Meant as an independent check for small ``m``.
    """
    m = g.m
    n = 2 * m
    J = g.heis.J
    nn = n * n
    nv = n * nn + n
    fz = n * nn
    # annihilator of g0 inside gl(2m)
    g0 = g.g0
    ann = solve_rows([list(b) for b in g0.basis], nn) if g0.dim else Subspace.full(nn)
    rows = []
    for p in range(n):
        for a in ann.basis:
            row = [ZERO] * nv
            row[p * nn:(p + 1) * nn] = list(a)
            rows.append(row)

    def X_entry(p, i, j):
        return p * nn + i * n + j

    # scale(X) = tr(X) / n, acting on z by 2 scale
    two_over_n = as_scalar(2) / as_scalar(n)
    basis_minus = [("e", p) for p in range(n)] + [("z", 0)]
    for u in basis_minus:
        for v in basis_minus:
            # f([u,v]) = [f(u), v] + [u, f(v)]; the (z, z) pair lands in degree -3 and is trivial
            if u[0] == "z" and v[0] == "z":
                continue
            if u[0] == "e" and v[0] == "e":
                p, q = u[1], v[1]
                w = J[q, p]  # [e_p, e_q] = w z
                for t in range(n):
                    row = [ZERO] * nv
                    # f([e_p,e_q]) = w f(z)
                    if not w.is_zero():
                        row[fz + t] = row[fz + t] + w
                    # - [f(e_p), e_q] = - f(e_p) e_q -> entry (t, q)
                    row[X_entry(p, t, q)] = row[X_entry(p, t, q)] - ONE
                    # - [e_p, f(e_q)] = + f(e_q) e_p -> entry (t, p)
                    row[X_entry(q, t, p)] = row[X_entry(q, t, p)] + ONE
                    rows.append(row)
            else:
                if u[0] == "e":
                    p, sign = u[1], ONE
                else:
                    p, sign = v[1], -ONE
                # pair (e_p, z): 0 = [f(e_p), z] + [e_p, f(z)]
                #   [f(e_p), z] = 2 scale(f(e_p)) z ; [e_p, f(z)] = omega(e_p, f(z)) z = f(z)^T J e_p
                row = [ZERO] * nv
                for i in range(n):
                    idx = X_entry(p, i, i)
                    row[idx] = row[idx] + sign * two_over_n
                for t in range(n):
                    c = J[t, p]
                    if not c.is_zero():
                        row[fz + t] = row[fz + t] + sign * c
                rows.append(row)
    return solve_rows(rows, nv).dim

