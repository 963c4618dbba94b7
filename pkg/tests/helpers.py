"""Seeded generators of random test data."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from crsym.exactnum import Scalar
from crsym.linalg import Mat, Subspace
from crsym.symbol import CRSymbolData, change_basis

small = st.integers(min_value=-6, max_value=6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
scalars = st.builds(Scalar, rationals, rationals, rationals, rationals)
nonzero_scalars = scalars.filter(lambda x: not x.is_zero())


def gauss(rng: random.Random, bound: int = 4) -> Scalar:
    return Scalar(rng.randint(-bound, bound), 0, rng.randint(-bound, bound))


def rand_scalar(rng: random.Random, bound: int = 4) -> Scalar:
    return Scalar(*(rng.randint(-bound, bound) for _ in range(4)))


def rand_mat(rng: random.Random, rows: int, cols: int, bound: int = 3) -> Mat:
    return Mat([[gauss(rng, bound) for _ in range(cols)] for _ in range(rows)])


def rand_invertible(rng: random.Random, n: int, bound: int = 2) -> Mat:
    while True:
        S = rand_mat(rng, n, n, bound)
        if S.rank() == n:
            return S


def rand_symmetric(rng: random.Random, n: int, bound: int = 3) -> Mat:
    S = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            S[i][j] = S[j][i] = gauss(rng, bound)
    return Mat(S)


def sign_matrix(p: int, q: int) -> Mat:
    return Mat.diag([1] * p + [-1] * q)


def _generator(rng: random.Random, H: Mat, kind: str) -> Mat:
    """A valid block ``C`` (``conj(H) C`` symmetric) of the requested flavour."""
    m = H.rows
    Hb_inv = H.conj().inv()
    if kind == "dense":
        S = rand_symmetric(rng, m)
    elif kind == "rank1":
        v = [gauss(rng, 2) for _ in range(m)]
        if all(x.is_zero() for x in v):
            v[0] = Scalar(1)
        S = Mat([[a * b for b in v] for a in v])
    elif kind == "unimodular":
        units = [Scalar(1), Scalar(-1), Scalar(0, 0, 1), Scalar(0, 0, -1)]
        S = Mat.diag([rng.choice(units) for _ in range(m)]).scale(gauss(rng, 2) or Scalar(1))
        return Hb_inv @ S
    else:
        vals = [0, 0, 1, -1, Scalar(0, 0, 1)]
        S = [[None] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                S[i][j] = S[j][i] = Scalar.coerce(rng.choice(vals))
        S = Mat(S)
    return Hb_inv @ S


def random_symbol(rng: random.Random, m: int, r: int, kinds=("dense", "rank1", "unimodular", "sparse"),
                  twist: bool = True) -> CRSymbolData:
    """Random valid symbol; with ``twist`` the frame is changed so H is not diagonal."""
    if r > m * (m + 1) // 2:
        raise ValueError("r exceeds m(m+1)/2")
    p = rng.randint(0, m)
    H = sign_matrix(p, m - p)
    while True:
        kind = rng.choice(kinds)
        Cs = [_generator(rng, H, kind) for _ in range(r)]
        if Subspace.of_matrices(Cs, m, m).dim == r:
            break
    s = CRSymbolData(m, r, H, tuple(Cs))
    if twist:
        s = change_basis(s, rand_invertible(rng, m))
    return s


def rand_mr(rng: random.Random, m_max: int = 3, r_max: int = 2) -> tuple:
    m = rng.randint(1, m_max)
    return m, rng.randint(1, min(r_max, m * (m + 1) // 2))
