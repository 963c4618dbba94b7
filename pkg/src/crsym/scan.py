"""Seeded random experiments on the genericity of symbol invariants."""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .exactnum import Scalar
from .linalg import Mat, Subspace
from .reduced import obstruction_r1_definite
from .symbol import CRSymbolData, compute_A, is_recoverable, is_regular, validate

MODES = ("dense", "diagonal")


@dataclass(frozen=True)
class ScanConfig:
    m: int
    r: int
    signature: tuple
    trials: int
    seed: int = 0
    numerator_bound: int = 20
    mode: str = "dense"

    def __post_init__(self):
        object.__setattr__(self, "signature", tuple(self.signature))

    def problems(self) -> list:
        out = []
        p, q = self.signature
        if self.m < 1 or self.r < 1:
            out.append("m and r must be positive")
        if p < 0 or q < 0 or p + q != self.m:
            out.append(f"signature {self.signature} does not add up to m = {self.m}")
        if self.trials < 0:
            out.append("trials must be non-negative")
        if self.numerator_bound < 1:
            out.append("numerator bound must be positive")
        if self.mode not in MODES:
            out.append(f"mode must be one of {MODES}")
        if self.mode == "diagonal" and self.r > self.m:
            out.append("diagonal mode needs r <= m")
        if self.r > self.m * (self.m + 1) // 2:
            out.append("r exceeds m(m+1)/2")
        if not 0 <= self.seed < 2 ** 64:
            out.append("seed must fit in 64 bits")
        return out


@dataclass
class ScanReport:
    config: dict
    total: int
    A_minimal: int
    nonregular: int
    recoverable: int
    obstructed: int
    obstruction_applicable: int
    exceptions: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(trial_index,)))


def _gauss(rng, bound: int) -> Scalar:
    a, b = rng.integers(-bound, bound, size=2, endpoint=True)
    return Scalar(int(a), 0, int(b))


def _nonzero_gauss(rng, bound: int) -> Scalar:
    while True:
        x = _gauss(rng, bound)
        if not x.is_zero():
            return x


def signature_matrix(p: int, q: int) -> Mat:
    return Mat.diag([1] * p + [-1] * q)


def random_symbol(cfg: ScanConfig, trial_index: int) -> CRSymbolData:
    """Deterministic in ``(cfg, trial_index)``; dependent draws are redrawn from the same stream."""
    rng = trial_rng(cfg.seed, trial_index)
    m, b = cfg.m, cfg.numerator_bound
    H = signature_matrix(*cfg.signature)
    while True:
        Cs = []
        for _ in range(cfg.r):
            if cfg.mode == "diagonal":
                Cs.append(Mat.diag([_nonzero_gauss(rng, b) for _ in range(m)]))
            else:
                S = [[None] * m for _ in range(m)]
                for i in range(m):
                    for j in range(i, m):
                        S[i][j] = S[j][i] = _gauss(rng, b)
                # conj(H)^{-1} = H for a real diagonal sign matrix
                Cs.append(H @ Mat(S))
        if Subspace.of_matrices(Cs, m, m).dim == cfg.r:
            return CRSymbolData(m, cfg.r, H, tuple(Cs))


def _definite(cfg: ScanConfig) -> bool:
    return 0 in cfg.signature


def run_trial(cfg: ScanConfig, idx: int) -> dict:
    s = random_symbol(cfg, idx)
    dimA = compute_A(s).dim
    regular = is_regular(s)
    recov = is_recoverable(s)
    applicable = False
    obstructed = False
    if cfg.r == 1 and cfg.mode == "diagonal" and _definite(cfg):
        cert = obstruction_r1_definite(s)
        applicable = not cert.failures
        obstructed = cert.verdict == "no-reduced-symbol"
    return {"trial": idx, "dimA": dimA, "regular": regular, "recoverable": recov,
            "obstruction_applicable": applicable, "obstructed": obstructed,
            "symbol": s.to_json()}


def _run_chunk(args) -> list:
    cfg, indices = args
    return [run_trial(cfg, i) for i in indices]


def run_genericity_scan(cfg: ScanConfig, workers: Optional[int] = None) -> ScanReport:
    bad = cfg.problems()
    if bad:
        raise ValueError("; ".join(bad))
    idx = list(range(cfg.trials))
    workers = workers or 1
    if workers > 1 and cfg.trials > 1:
        chunks = [idx[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = [r for part in ex.map(_run_chunk, [(cfg, c) for c in chunks]) for r in part]
    else:
        results = _run_chunk((cfg, idx))
    results.sort(key=lambda t: t["trial"])
    exceptions = []
    for t in results:
        flags = []
        if t["dimA"] != 1:
            flags.append("A_not_minimal")
        if t["regular"]:
            flags.append("regular")
        if not t["recoverable"]:
            flags.append("not_recoverable")
        if cfg.r == 1 and cfg.mode == "diagonal" and _definite(cfg) and not t["obstructed"]:
            flags.append("not_obstructed")
        if flags:
            exceptions.append({"trial": t["trial"], "flags": flags, "dimA": t["dimA"], "symbol": t["symbol"]})
    cfg_json = asdict(cfg)
    cfg_json["signature"] = list(cfg.signature)
    return ScanReport(
        config=cfg_json,
        total=len(results),
        A_minimal=sum(t["dimA"] == 1 for t in results),
        nonregular=sum(not t["regular"] for t in results),
        recoverable=sum(t["recoverable"] for t in results),
        obstructed=sum(t["obstructed"] for t in results),
        obstruction_applicable=sum(t["obstruction_applicable"] for t in results),
        exceptions=exceptions,
    )


def emit_exceptions(report: ScanReport, directory: str) -> list:
    """Write each exceptional symbol as a standalone symbol file."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for e in report.exceptions:
        path = os.path.join(directory, f"trial_{e['trial']:06d}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(e["symbol"], fh, sort_keys=True, indent=2)
            fh.write("\n")
        paths.append(path)
    return paths


def reverify_exception(entry: dict) -> dict:
    """Recompute the invariants of one exceptional trial from its stored symbol."""
    s = CRSymbolData.from_json(entry["symbol"])
    if validate(s):
        raise ValueError(f"stored symbol for trial {entry['trial']} is invalid")
    return {"dimA": compute_A(s).dim, "regular": is_regular(s), "recoverable": is_recoverable(s)}
