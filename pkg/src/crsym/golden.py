"""Built-in worked examples with their expected invariants."""
from __future__ import annotations

from dataclasses import dataclass

from .exactnum import parse_scalar
from .linalg import Mat, Subspace
from .reduced import ModifiedSymbolCandidate
from .symbol import CRSymbolData, compute_g00, g02_generators, g0m2_generators


def _m(rows) -> Mat:
    return Mat([[parse_scalar(x) for x in r] for r in rows])


# five-dimensional Heisenberg algebra, nonregular
EG1_H = _m([["0", "1"],
            ["1", "0"]])
EG1_C1 = _m([["0", "i"],
             ["1", "0"]])
EG1_M1 = _m([["0", "i/sqrt2", "0", "i"],
             ["1/sqrt2", "0", "1", "0"],
             ["0", "0", "0", "-i/sqrt2"],
             ["0", "0", "-1/sqrt2", "0"]])
EG1_M2 = _m([["0", "i/sqrt2", "0", "0"],
             ["-1/sqrt2", "0", "0", "0"],
             ["0", "-i", "0", "-i/sqrt2"],
             ["1", "0", "1/sqrt2", "0"]])
EG1_OMEGA = _m([["0", "i/sqrt2"],
                ["1/sqrt2", "0"]])

# seven-dimensional Heisenberg algebra, regular
EG2_H = _m([["0", "0", "1"],
            ["0", "1", "0"],
            ["1", "0", "0"]])
EG2_C1 = _m([["0", "1", "0"],
             ["0", "0", "1"],
             ["0", "0", "0"]])
EG2_ADK = _m([["0", "1", "0", "0", "1", "0"],
              ["0", "0", "0", "0", "0", "1"],
              ["0", "0", "0", "0", "0", "0"],
              ["0", "0", "0", "0", "0", "0"],
              ["0", "0", "0", "0", "0", "-1"],
              ["0", "0", "0", "0", "0", "0"]])
EG2_ADKBAR = _m([["0", "0", "0", "0", "0", "0"],
                 ["0", "0", "-1", "0", "0", "0"],
                 ["0", "0", "0", "0", "0", "0"],
                 ["0", "1", "0", "0", "1", "0"],
                 ["0", "0", "1", "0", "0", "0"],
                 ["0", "0", "0", "0", "0", "0"]])
EG2_OMEGA = _m([["0", "1", "0"],
                ["0", "0", "0"],
                ["0", "0", "0"]])


def eg2_g00_reduced(c1=0, c2=0, c3=0, c4=0) -> Mat:
    """Four-parameter (0,0) family of the second example.

    The lower-right diagonal is ``(c1 - c3, c1, c1 - c2)``, which is what the
    conformal symplectic relations force for the upper-left ``(c1 + c2, c1, c1 + c3)``.
    """
    z = "0"
    a = [[f"{c1}+{c2}", z, str(c4), z, z, z],
         [z, str(c1), z, z, z, z],
         [z, z, f"{c1}+{c3}", z, z, z],
         [z, z, z, f"{c1}-{c3}", z, f"-{c4}"],
         [z, z, z, z, str(c1), z],
         [z, z, z, z, z, f"{c1}-{c2}"]]
    return _m(a)


EG2_G00_RED = [eg2_g00_reduced(1, 0, 0, 0), eg2_g00_reduced(0, 1, 0, 0),
               eg2_g00_reduced(0, 0, 1, 0), eg2_g00_reduced(0, 0, 0, 1)]


@dataclass(frozen=True)
class BuiltinExample:
    id: str
    symbol: CRSymbolData
    reduced_candidate: ModifiedSymbolCandidate
    expected: dict
    prolong_mode: str  # "reduced" or "full"


def _span(mats) -> Subspace:
    n = mats[0].rows
    return Subspace.of_matrices(mats, n, n)


def eg1() -> BuiltinExample:
    s = CRSymbolData(2, 1, EG1_H, (EG1_C1,))
    cand = ModifiedSymbolCandidate(s, _span([EG1_M1, EG1_M2, Mat.identity(4)]), (EG1_OMEGA,), "reduced")
    expected = {"signature": [1, 1], "regular": False, "recoverable": True, "dimA": 1, "dimG00": 2,
                "prolong_total": 8, "prolong_positive": 0, "g1": 0}
    return BuiltinExample("eg1", s, cand, expected, "reduced")


def eg2_symbol() -> CRSymbolData:
    return CRSymbolData(3, 1, EG2_H, (EG2_C1,))


def eg2() -> BuiltinExample:
    s = eg2_symbol()
    cand = ModifiedSymbolCandidate(s, _span([EG2_ADK, EG2_ADKBAR] + EG2_G00_RED), (EG2_OMEGA,), "reduced")
    expected = {"signature": [2, 1], "regular": True, "recoverable": True, "dimA": 4, "dimG00": 5,
                "prolong_total": 14, "prolong_positive": 1}
    return BuiltinExample("eg2", s, cand, expected, "reduced")


def eg3() -> BuiltinExample:
    s = eg2_symbol()
    full = compute_g00(s) + _span(g02_generators(s) + g0m2_generators(s))
    cand = ModifiedSymbolCandidate(s, full, (Mat.zeros(3, 3),), "reduced")
    expected = {"signature": [2, 1], "regular": True, "recoverable": True, "dimA": 4, "dimG00": 5,
                "g0_dim": 7, "prolong_total": 16, "prolong_positive": 2}
    return BuiltinExample("eg3", s, cand, expected, "full")


BUILTINS = {"eg1": eg1, "eg2": eg2, "eg3": eg3}


def get_builtin(name: str) -> BuiltinExample:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None
