from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crsym.exactnum import ONE, ZERO, Scalar
from crsym.golden import EG1_C1, EG2_C1, eg1
from crsym.linalg import Mat, Subspace, kernel, rref, solve_linear
from crsym.symbol import compute_A, compute_g00
from helpers import gauss, rand_mat, small


def test_kernel_of_identity_is_zero():
    assert kernel(Mat.identity(3)).dim == 0


def test_ranks_of_worked_generators():
    assert EG1_C1.rank() == 2
    assert EG2_C1.rank() == 2


def test_solve_trivial_cases():
    A = Mat.zeros(2, 3)
    x, K = solve_linear(A, [0, 0])
    assert all(v.is_zero() for v in x) and K.dim == 3
    b = [Scalar(2), Scalar(0, 0, 1), Scalar(-1)]
    x, K = solve_linear(Mat.identity(3), b)
    assert x == b and K.dim == 0


def test_overdetermined_vandermonde_is_inconsistent():
    # x0 + x1*l = l^2 at l = 1, 2, 3: the first two rows force x = (-2, 3), the third gives 7 != 9
    A = Mat([[1, 1], [1, 2], [1, 3]])
    assert solve_linear(A, [1, 4, 9]) is None
    assert solve_linear(A, [1, 2, 3]) is not None


def test_intersection_of_compatible_block_spaces_example_one():
    s = eg1().symbol
    H, C = s.H, s.C[0]
    so2 = Mat([[0, 1], [-1, 0]])
    left = Subspace.of_matrices([Mat.identity(2), so2 @ H @ C.inv()], 2, 2)
    right = Subspace.of_matrices([Mat.identity(2), C.conj().inv() @ H.inv() @ so2], 2, 2)
    inter = left & right
    assert left.dim == right.dim == 2
    assert inter == compute_A(s)
    assert inter.dim == 1
    assert compute_g00(s).dim == 2


def test_subspace_self_intersection_and_sum():
    U = Subspace(3, [[1, 2, 0], [0, 1, 1]])
    assert (U & U) == U
    e1 = Subspace(2, [[1, 0]])
    e2 = Subspace(2, [[0, 1]])
    assert (e1 + e2).dim == 2


def test_ambient_mismatch_is_error():
    with pytest.raises(ValueError):
        Subspace(2, [[1, 0]]) & Subspace(3, [[1, 0, 0]])


def test_inverse_and_transpose():
    rng = random.Random(5)
    for _ in range(30):
        A = rand_mat(rng, 3, 3)
        if A.rank() < 3:
            with pytest.raises(ZeroDivisionError):
                A.inv()
            continue
        assert A @ A.inv() == Mat.identity(3)
        assert A.T.T == A
        assert (A @ A.conj()).conj() == A.conj() @ A


def _random_space(rng, ambient, dim_max):
    k = rng.randint(0, dim_max)
    vecs = []
    for _ in range(k):
        # bias towards low-rank spans so intersections are interesting
        base = [gauss(rng, 2) if rng.random() < 0.6 else ZERO for _ in range(ambient)]
        vecs.append(base)
    return Subspace(ambient, vecs)


def test_dimension_formula_random():
    rng = random.Random(11)
    for _ in range(120):
        n = rng.randint(1, 12)
        U, V = _random_space(rng, n, n), _random_space(rng, n, n)
        assert (U + V).dim + (U & V).dim == U.dim + V.dim
        assert U.contains_space(U & V) and V.contains_space(U & V)
        assert (U + V).contains_space(U)


def test_membership_matches_solvability():
    rng = random.Random(12)
    for _ in range(150):
        n = rng.randint(1, 8)
        k = rng.randint(0, n)
        vecs = [[gauss(rng, 2) for _ in range(n)] for _ in range(k)]
        U = Subspace(n, vecs)
        v = [gauss(rng, 2) for _ in range(n)]
        if rng.random() < 0.5 and vecs:
            v = U.combine([gauss(rng, 2) for _ in range(U.dim)])
        if vecs:
            A = Mat([[w[j] for w in vecs] for j in range(n)])
            solvable = solve_linear(A, v) is not None
        else:
            solvable = all(x.is_zero() for x in v)
        assert U.contains(v) == solvable


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=0, max_size=5))
def test_rref_is_idempotent_and_canonical(rows):
    R, piv = rref([[Scalar(x) for x in r] for r in rows], 4)
    R2, piv2 = rref(R, 4)
    assert R == R2 and piv == piv2
    # same span, different generators: identical stored basis
    U = Subspace(4, rows)
    doubled = rows + [[2 * a + b for a, b in zip(r, rows[0])] for r in rows] if rows else rows
    assert Subspace(4, doubled) == U


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_kernel_dimension(rows):
    A = Mat(rows)
    K = kernel(A)
    assert K.dim == A.cols - A.rank()
    for v in K.basis:
        assert all(x.is_zero() for x in A.apply(list(v)))


def test_json_round_trip():
    rng = random.Random(2)
    A = rand_mat(rng, 2, 3)
    assert Mat.from_json(A.to_json()) == A
    assert Mat.from_json([["1", "i/sqrt2"]])[0, 0] == ONE
