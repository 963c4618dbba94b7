from __future__ import annotations

import random

import pytest

from crsym.cli import full_candidate
from crsym.exactnum import ONE, ZERO
from crsym.golden import eg1, eg2, eg3
from crsym.linalg import Mat, Subspace
from crsym.prolong import (
    DEFAULT_MAX_DEGREE, GradedSpan, HeisenbergAlg, brute_force_first_prolongation,
    default_max_degree, grading_element_check, semidirect_bracket, tanaka_prolong,
)
from crsym.symbol import build_csp_basis
from helpers import gauss, rand_mr, random_symbol, sign_matrix


def contact_dim(m: int, weight: int) -> int:
    """Number of monomials of the given weight in 2m variables of weight 1 and one of weight 2."""
    from math import comb
    return sum(comb(weight - 2 * j + 2 * m - 1, 2 * m - 1) for j in range(weight // 2 + 1))


def span_of(g0, H):
    return GradedSpan(g0, HeisenbergAlg.from_H(H))


def test_heisenberg_form():
    heis = HeisenbergAlg.from_H(sign_matrix(1, 1))
    n = 4
    for p in range(n):
        for q in range(n):
            ep = [ZERO] * n
            eq = [ZERO] * n
            ep[p] = eq[q] = ONE
            assert heis.omega(ep, eq) == -heis.omega(eq, ep)
    assert heis.J.rank() == n
    assert heis.dim == 5


def test_semidirect_jacobi():
    rng = random.Random(3)
    for trial in range(500):
        m = 1 + trial % 2
        H = sign_matrix(m, 0) if trial % 3 else sign_matrix(m - 1, 1)
        heis = HeisenbergAlg.from_H(H)
        csp = build_csp_basis(m, H)
        n = 2 * m

        def elem():
            v = [gauss(rng, 2) for _ in range(n + 1)]
            X = csp.combine([gauss(rng, 2) for _ in range(csp.dim)])
            return v, Mat.from_vec(X, n, n)

        x, y, w = elem(), elem(), elem()
        br = lambda a, b: semidirect_bracket(heis, a, b)
        parts = [br(x, br(y, w)), br(y, br(w, x)), br(w, br(x, y))]
        vec = [a + b + c for a, b, c in zip(*(p[0] for p in parts))]
        mat = parts[0][1] + parts[1][1] + parts[2][1]
        assert all(t.is_zero() for t in vec) and mat.is_zero()


@pytest.mark.parametrize("m", [1, 2])
def test_full_csp_gives_contact_algebra(m):
    H = sign_matrix(m, 0)
    rep = tanaka_prolong(span_of(build_csp_basis(m, H), H), max_degree=2)
    assert not rep.terminated
    for k, d in rep.dims:
        assert d == contact_dim(m, k + 2)


def test_scalars_only():
    H = sign_matrix(1, 1)
    g0 = Subspace.of_matrices([Mat.identity(4)], 4, 4)
    rep = tanaka_prolong(span_of(g0, H))
    assert rep.terminated
    assert rep.dims == [(-2, 1), (-1, 4), (0, 1), (1, 0)]
    assert rep.total == 6


def test_builtin_dimensions():
    for ex, dims in ((eg1(), [1, 4, 3, 0]), (eg2(), [1, 6, 6, 1, 0]), (eg3(), [1, 6, 7, 2, 0])):
        rep = tanaka_prolong(span_of(ex.reduced_candidate.g0, ex.symbol.H), verify=True)
        assert [d for _, d in rep.dims] == dims
        assert rep.dims[1] == (-1, 2 * ex.symbol.m)
        assert rep.terminated


def test_first_degree_matches_brute_force():
    for ex in (eg1(), eg2(), eg3()):
        g = span_of(ex.reduced_candidate.g0, ex.symbol.H)
        assert tanaka_prolong(g).dim_of(1) == brute_force_first_prolongation(g)
    rng = random.Random(11)
    for _ in range(12):
        s = random_symbol(rng, *rand_mr(rng, 2, 2))
        g = span_of(full_candidate(s).g0, s.H)
        assert tanaka_prolong(g, max_degree=1).dim_of(1) == brute_force_first_prolongation(g)


def test_first_degree_brute_force_on_contact():
    H = sign_matrix(1, 0)
    g = span_of(build_csp_basis(1, H), H)
    assert brute_force_first_prolongation(g) == contact_dim(1, 3)


def test_verify_mode_on_random_symbols():
    rng = random.Random(12)
    for _ in range(6):
        s = random_symbol(rng, *rand_mr(rng, 2, 2))
        rep = tanaka_prolong(span_of(full_candidate(s).g0, s.H), max_degree=4, verify=True)
        seen_zero = False
        for k, d in rep.dims:
            if seen_zero:
                assert d == 0
            seen_zero = seen_zero or (k >= 1 and d == 0)


def test_grading_element():
    ex = eg1()
    assert grading_element_check(span_of(ex.reduced_candidate.g0, ex.symbol.H))
    g0 = Subspace.of_matrices([Mat.diag([1, 0, 0, -1])], 4, 4)
    assert not grading_element_check(span_of(g0, ex.symbol.H))


def test_max_degree_env(monkeypatch):
    monkeypatch.delenv("CRSYM_MAX_DEGREE", raising=False)
    assert default_max_degree() == DEFAULT_MAX_DEGREE
    monkeypatch.setenv("CRSYM_MAX_DEGREE", "2")
    assert default_max_degree() == 2
    H = sign_matrix(1, 0)
    rep = tanaka_prolong(span_of(build_csp_basis(1, H), H))
    assert not rep.terminated and rep.dims[-1][0] == 2
    monkeypatch.setenv("CRSYM_MAX_DEGREE", "x")
    with pytest.raises(ValueError):
        default_max_degree()
    monkeypatch.setenv("CRSYM_MAX_DEGREE", "0")
    with pytest.raises(ValueError):
        default_max_degree()


def test_bad_max_degree():
    H = sign_matrix(1, 0)
    with pytest.raises(ValueError):
        tanaka_prolong(span_of(build_csp_basis(1, H), H), max_degree=0)


def test_report_json():
    rep = tanaka_prolong(span_of(eg1().reduced_candidate.g0, eg1().symbol.H))
    j = rep.to_json()
    assert j == {"dims": [[-2, 1], [-1, 4], [0, 3], [1, 0]], "total": 8, "terminated": True}
    assert rep.positive_dim() == 0 and rep.dim_of(7) == 0
