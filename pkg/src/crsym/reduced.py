"""Modified and reduced modified symbols: definition checks, the homogeneity
system, dilation orbits, and the rank-one definite obstruction."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .exactnum import RealScalar, Scalar, as_scalar, real_sign
from .linalg import Mat, Subspace, solve_linear
from .symbol import (
    CRSymbolData,
    bigrade_project,
    compute_A,
    compute_g00,
    csp00_basis,
    embed_alpha,
    g02_generators,
    g0m2_generators,
    involution_space,
    is_csp,
    is_regular,
)

KINDS = ("modified", "reduced")


@dataclass
class ModifiedSymbolCandidate:
    base: CRSymbolData
    g0: Subspace
    omegas: Optional[tuple] = None
    kind: str = "reduced"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.omegas is not None:
            self.omegas = tuple(self.omegas)

    @property
    def m(self) -> int:
        return self.base.m

    def generators(self) -> list:
        n = 2 * self.m
        return self.g0.matrices(n, n)

    def to_json(self) -> dict:
        out = self.base.to_json()
        out["g0"] = [g.to_json() for g in self.generators()]
        out["omegas"] = None if self.omegas is None else [o.to_json() for o in self.omegas]
        out["kind"] = self.kind
        return out

    @classmethod
    def from_json(cls, data) -> ModifiedSymbolCandidate:
        base = CRSymbolData.from_json(data)
        if "g0" not in data:
            raise ValueError("candidate is missing field 'g0'")
        n = 2 * base.m
        mats = [Mat.from_json(g) for g in data["g0"]]
        if any(g.shape != (n, n) for g in mats):
            raise ValueError("g0 generators must be 2m x 2m")
        om = data.get("omegas")
        omegas = None
        if om is not None:
            omegas = tuple(Mat.from_json(o) for o in om)
            if len(omegas) != base.r or any(o.shape != (base.m, base.m) for o in omegas):
                raise ValueError("omegas must be r matrices of size m x m")
        kind = data.get("kind", "reduced")
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        return cls(base, Subspace.of_matrices(mats, n, n) if mats else Subspace.zero(n * n), omegas, kind)


def tilde(omega: Mat, H: Mat, Hinv: Optional[Mat] = None) -> Mat:
    """``-H^{-1} omega^T H``: the lower-right partner of an upper-left block."""
    Hinv = H.inv() if Hinv is None else Hinv
    return -(Hinv @ omega.T @ H)


def up_generator(C: Mat, omega: Mat, H: Mat) -> Mat:
    return Mat.blocks([[omega, C], [Mat.zeros(*C.shape), tilde(omega, H)]])


def down_generator(C: Mat, omega: Mat, H: Mat) -> Mat:
    Hb = H.conj()
    return Mat.blocks([[-(Hb.inv() @ omega.H @ Hb), Mat.zeros(*C.shape)], [C.conj(), omega.conj()]])


def assemble(base: CRSymbolData, omegas: Sequence[Mat], A0: Optional[Subspace] = None,
             kind: str = "reduced") -> ModifiedSymbolCandidate:
    """Span of the normal-form generators, the blocks from ``A0`` and the identity."""
    m = base.m
    n = 2 * m
    gens = []
    for C, om in zip(base.C, omegas):
        gens.append(up_generator(C, om, base.H))
        gens.append(down_generator(C, om, base.H))
    Hinv = base.Hinv
    if A0 is not None:
        gens.extend(embed_alpha(a, base.H, Hinv) for a in A0.matrices(m, m))
    gens.append(Mat.identity(n))
    return ModifiedSymbolCandidate(base, Subspace.of_matrices(gens, n, n), tuple(omegas), kind)


# -- definition checks ---------------------------------------------------------

def _span(mats, n) -> Subspace:
    return Subspace.of_matrices(mats, n, n) if mats else Subspace.zero(n * n)


def bracket_closed(U: Subspace, n: int) -> bool:
    mats = U.matrices(n, n)
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            if not U.contains(mats[a].bracket(mats[b]).vec()):
                return False
    return True


def check_definition(c: ModifiedSymbolCandidate, involution: bool = True) -> list:
    """List of violated properties (empty when the candidate is acceptable).

    ``involution=False`` skips the involution-invariance property, which is
    the only one not preserved by dilations with ``|s| != 1``.
    """
    s = c.base
    m, r = s.m, s.r
    n = 2 * m
    out = []
    gens = c.generators()
    for k, G in enumerate(gens):
        if not is_csp(G, s.H):
            out.append(f"generator {k + 1} is not conformal symplectic")
    if out:
        return out
    g00 = compute_g00(s)
    inter = c.g0 & csp00_basis(m, s.H)
    up = _span(g02_generators(s), n)
    down = _span(g0m2_generators(s), n)
    proj_up = _span([bigrade_project(G, m)[0] for G in gens], n)
    proj_down = _span([bigrade_project(G, m)[2] for G in gens], n)
    if c.kind == "modified":
        if c.g0.dim != g00.dim + 2 * r:
            out.append(f"dimension {c.g0.dim} differs from dim g0 = {g00.dim + 2 * r}")
        if inter != g00:
            out.append("intersection with the (0,0) part is not the (0,0) algebra")
    else:
        if c.g0.dim != inter.dim + 2 * r:
            out.append(f"dimension {c.g0.dim} differs from (0,0) part {inter.dim} + 2r = {inter.dim + 2 * r}")
        if not g00.contains_space(inter):
            out.append("(0,0) part is not contained in the (0,0) algebra")
    if proj_up != up:
        out.append("projection onto the (0,2) part is not the (0,2) span")
    if proj_down != down:
        out.append("projection onto the (0,-2) part is not the (0,-2) span")
    if involution and involution_space(c.g0, m) != c.g0:
        out.append("not invariant under the involution")
    if c.kind == "reduced":
        if not c.g0.contains(Mat.identity(n).vec()):
            out.append("grading element missing")
        if not bracket_closed(c.g0, n):
            out.append("not closed under the bracket")
    return out


# -- the homogeneity system ----------------------------------------------------

@dataclass
class SystemResult:
    ok: bool
    eta: dict = field(default_factory=dict)
    mu: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _unique_coefficients(target: Mat, basis: Sequence[Mat]) -> Optional[list]:
    A = Mat([list(col) for col in zip(*[b.vec() for b in basis])])
    sol = solve_linear(A, target.vec())
    if sol is None:
        return None
    x, K = sol
    if K.dim:
        raise ValueError("span coefficients are not unique; generators must be independent")
    return x


def verify_system(c: ModifiedSymbolCandidate, A0: Subspace) -> SystemResult:
    """Decide the four-item system for the given omegas and subalgebra ``A0``.

    Memberships are tested in ``A0``.  Coefficients are unique because the
    generators are linearly independent.
    """
    if c.omegas is None:
        raise ValueError("candidate carries no omegas")
    s = c.base
    m, r = s.m, s.r
    H, Hinv = s.H, s.Hinv
    A = compute_A(s)
    if not A.contains_space(A0):
        raise ValueError("A0 is not contained in the compatible-block algebra")
    Om = list(c.omegas)
    P = [C @ Hinv for C in s.C]
    Q = [H @ C.conj() for C in s.C]
    W = [(Hinv @ o.T @ H).conj() for o in Om]
    res = SystemResult(True)
    for ai, alpha in enumerate(A0.matrices(m, m)):
        for i in range(r):
            eta = _unique_coefficients(alpha @ P[i] + P[i] @ alpha.T, P)
            if eta is None:
                res.ok = False
                res.failures.append(f"(i) unsolvable for basis element {ai + 1}, i={i + 1}")
                continue
            res.eta[(ai, i)] = eta
            R = alpha.bracket(Om[i])
            for e, o in zip(eta, Om):
                R = R - o.scale(e)
            if not A0.contains(R.vec()):
                res.ok = False
                res.failures.append(f"(ii) fails for basis element {ai + 1}, i={i + 1}")
    for i in range(r):
        for j in range(r):
            mu = _unique_coefficients(Om[j].T @ Q[i] + Q[i] @ Om[j], Q)
            if mu is None:
                res.ok = False
                res.failures.append(f"(iii) unsolvable for i={i + 1}, j={j + 1}")
            else:
                res.mu[(i, j)] = mu
    if not res.ok:
        return res
    for i in range(r):
        for j in range(r):
            R = W[i].bracket(Om[j]) + s.C[j] @ s.C[i].conj()
            for t in range(r):
                R = R - Om[t].scale(res.mu[(j, i)][t].conj()) - W[t].scale(res.mu[(i, j)][t])
            if not A0.contains(R.vec()):
                res.ok = False
                res.failures.append(f"(iv) fails for i={i + 1}, j={j + 1}")
    return res


# -- dilation orbits -----------------------------------------------------------

def dilate(X: Mat, m: int, s: Scalar) -> Mat:
    """Conjugation by ``diag(t^-1 I, t I)`` with ``t^2 = s``."""
    up, mid, down = bigrade_project(X, m)
    return mid + up.scale(s.inv()) + down.scale(s)


def conjugate_by_block_dilation(c: ModifiedSymbolCandidate, s) -> ModifiedSymbolCandidate:
    s = as_scalar(s)
    if s.is_zero():
        raise ValueError("dilation parameter must be nonzero")
    m = c.m
    n = 2 * m
    mats = [dilate(G, m, s) for G in c.generators()]
    om = None if c.omegas is None else tuple(o.scale(s) for o in c.omegas)
    return ModifiedSymbolCandidate(c.base, _span(mats, n), om, c.kind)


def normal_form_generators(c: ModifiedSymbolCandidate) -> tuple:
    """Elements of g0 with off-diagonal part exactly ``C_i`` (resp. ``conj(C_i)``),
    reduced modulo the (0,0) part so they are canonical."""
    s = c.base
    m = s.m
    n = 2 * m
    gens = c.generators()
    inter = c.g0 & csp00_basis(m, s.H)
    cols = []
    for G in gens:
        cols.append(G.sub(0, m, m, n).vec() + G.sub(m, n, 0, m).vec())
    A = Mat([list(r) for r in zip(*cols)])

    def solve(target_up: Mat, target_down: Mat) -> Optional[Mat]:
        sol = solve_linear(A, target_up.vec() + target_down.vec())
        if sol is None:
            return None
        x, _ = sol
        X = Mat.zeros(n, n)
        for coef, G in zip(x, gens):
            if not coef.is_zero():
                X = X + G.scale(coef)
        return Mat.from_vec(inter.reduce(X.vec()), n, n)

    Z = Mat.zeros(m, m)
    ups = [solve(C, Z) for C in s.C]
    downs = [solve(Z, C.conj()) for C in s.C]
    return ups, downs


def involution_invariant(c: ModifiedSymbolCandidate) -> bool:
    return involution_space(c.g0, c.m) == c.g0


# -- rank-one definite obstruction ---------------------------------------------

@dataclass
class Certificate:
    verdict: str
    witness: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, RealScalar):
                return v.to_json()
            if isinstance(v, dict):
                return {k: enc(x) for k, x in v.items()}
            if isinstance(v, list):
                return [enc(x) for x in v]
            return v
        return {"verdict": self.verdict, "witness": enc(self.witness),
                "failures": list(self.failures), "evidence": enc(self.evidence)}


def obstruction_r1_definite(s: CRSymbolData) -> Certificate:
    """Certificate that no reduced modified symbol exists, for r = 1 with
    ``H = +-I`` and ``C_1`` diagonal with pairwise distinct moduli.

    If a reduced symbol existed, its diagonal entries would force
    ``max |lambda|^2 <= 2 Re mu`` while the trace forces
    ``2 m Re mu = sum |lambda|^2 < m max |lambda|^2``.  Both sides are
    evaluated exactly.
    """
    m = s.m
    failures = []
    if s.r != 1:
        failures.append(f"r = {s.r}, expected 1")
    Id = Mat.identity(m)
    if s.H != Id and s.H != -Id:
        failures.append("H is not +-I")
    if m < 2:
        failures.append("m must be at least 2")
    lam = []
    if s.C:
        C = s.C[0]
        if any(not C[i, j].is_zero() for i in range(m) for j in range(m) if i != j):
            failures.append("C_1 is not diagonal")
        lam = [C[i, i] for i in range(m)]
        if any(x.is_zero() for x in lam):
            failures.append("C_1 is singular")
    mods = [x.modulus_squared() for x in lam]
    for a in range(len(mods)):
        for b in range(a + 1, len(mods)):
            if mods[a] == mods[b]:
                failures.append(f"|lambda_{a + 1}| = |lambda_{b + 1}|")
    if failures:
        return Certificate("exists-unknown", failures=failures)
    total = RealScalar(0, 0)
    for x in mods:
        total = total + x
    big = mods[0]
    for x in mods[1:]:
        if x > big:
            big = x
    two_re_mu = total / RealScalar(m, 0)
    # (1) max |lambda|^2 <= 2 Re mu   (2) sum |lambda|^2 < m max |lambda|^2
    s1 = real_sign(two_re_mu - big)
    s2 = real_sign(big * RealScalar(m, 0) - total)
    ineq1_holds = s1 >= 0
    ineq2_holds = s2 > 0
    witness = {
        "moduli_squared": mods,
        "max_modulus_squared": big,
        "two_re_mu": two_re_mu,
        "ineq1": {"lhs": big, "rhs": two_re_mu, "relation": "<=", "holds": ineq1_holds},
        "ineq2": {"lhs": total, "rhs": big * RealScalar(m, 0), "relation": "<", "holds": ineq2_holds},
    }
    A = compute_A(s)
    evidence = {"dimA": A.dim, "regular": is_regular(s)}
    verdict = "no-reduced-symbol" if (ineq2_holds and not ineq1_holds) else "exists-unknown"
    return Certificate(verdict, witness, [], evidence)
