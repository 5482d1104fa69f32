"""Command-line front end: CSV in, JSON (or a model file) out.

Exit codes: 0 success, 2 parameter error, 3 parse error, 4 size guard.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import (
    DomainError,
    GuardError,
    Instance1D,
    ParameterError,
    ParseError,
    Solution,
)
from .dp import solve_budgeted, solve_medoids, solve_unweighted, solve_weighted_heuristic, tradeoff_table
from .heuristics import ProjectionSpec, solve_projected
from .model_export import export_compact, export_extended
from .oracle import OracleConfig, brute_force
from .special_cases import solve_k1_unweighted, solve_k1_weighted_m1

MODES = (
    "exact1d", "budget", "medoids", "heuristic-weighted", "k1",
    "project", "oracle", "export-compact", "export-extended",
)
EXACT_MODES = {"exact1d", "budget", "medoids", "k1"}
ORACLE_MAX_N = 14
_TABLE_MODE = {"exact1d": "exact-1d", "budget": "budget-1d", "medoids": "medoid-1d",
               "heuristic-weighted": "heuristic-weighted"}


@dataclass(frozen=True)
class RunConfig:
    input: Path
    k: int
    m: int
    mode: str
    projection: str | None = None
    output: Path | None = None
    table: bool = False
    crosscheck: bool = False

    def validate(self):
        if self.mode not in MODES:
            raise ParameterError(f"unknown mode {self.mode!r}")
        if self.k < 1:
            raise ParameterError("--k must be >= 1")
        if self.m < 0:
            raise ParameterError("--m must be >= 0")
        if self.mode == "project" and not self.projection:
            raise ParameterError("mode project requires --projection")
        if self.mode == "k1" and self.k != 1:
            raise ParameterError("mode k1 requires --k 1")


def ingest_csv(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read coordinates ``x1..xL`` plus optional ``weight`` and ``budget`` columns."""
    try:
        handle = open(path, newline="")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    with handle:
        reader = csv.reader(handle)
        header = [h.strip() for h in next(reader, [])]
        coord_cols = sorted((int(h[1:]), i) for i, h in enumerate(header) if re.fullmatch(r"x\d+", h))
        if not coord_cols or [c for c, _ in coord_cols] != list(range(1, len(coord_cols) + 1)):
            raise ParseError(f"{path}:1: header must name coordinate columns x1..xL")
        w_col = header.index("weight") if "weight" in header else None
        b_col = header.index("budget") if "budget" in header else None
        X, W, B = [], [], []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ParseError(f"{path}:{lineno}: expected {len(header)} cells, got {len(row)}")
            try:
                X.append([float(row[i]) for _, i in coord_cols])
                w = float(row[w_col]) if w_col is not None else 1.0
                b = float(row[b_col]) if b_col is not None else 1.0
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from None
            if not np.all(np.isfinite(X[-1])) or not np.isfinite(w):
                raise ParseError(f"{path}:{lineno}: non-finite value")
            if not w > 0:
                raise ParseError(f"{path}:{lineno}: weight must be positive")
            if b != int(b) or b < 0:
                raise ParseError(f"{path}:{lineno}: budget must be a nonnegative integer")
            W.append(w)
            B.append(int(b))
    if not X:
        raise ParseError(f"{path}: no data rows")
    return np.array(X), np.array(W), np.array(B, dtype=int)


def _center(c):
    return float(c) if np.ndim(c) == 0 else [float(v) for v in np.ravel(c)]


def solution_json(sol: Solution) -> dict:
    clusters = []
    for c in sol.clusters:
        item = {"members": [i + 1 for i in c.members], "center": _center(c.center), "cost": c.cost}
        if c.inner_outlier is not None:
            item["inner_outlier"] = c.inner_outlier + 1
        clusters.append(item)
    return {"total_cost": sol.total_cost, "clusters": clusters, "outliers": [i + 1 for i in sol.outliers]}


def _need_1d(X):
    if X.shape[1] != 1:
        raise ParameterError(f"this mode needs 1D input, got dimension {X.shape[1]}")
    return X[:, 0]


def _solve(cfg: RunConfig, X, W, B):
    mode, K, M = cfg.mode, cfg.k, cfg.m
    if mode == "project":
        base = "exact-1d" if np.all(W == 1) else "heuristic-weighted"
        return solve_projected(X, K, M, ProjectionSpec.parse(cfg.projection), base, weights=W), None
    if mode == "oracle":
        config = OracleConfig(budget_mode=bool(np.any(B != 1)))
        return brute_force(X, K, M, config, weights=W, budgets=B), None
    x = _need_1d(X)
    inst = Instance1D.from_arrays(x, K, M, weights=W, budgets=B, unit_budget=(mode != "budget"))
    if mode == "exact1d":
        sol = solve_unweighted(inst)[0]
    elif mode == "medoids":
        sol = solve_medoids(inst)[0]
    elif mode == "budget":
        sol = solve_budgeted(inst)[0]
    elif mode == "heuristic-weighted":
        sol = solve_weighted_heuristic(inst)
    elif inst.unit_weights:
        sol = solve_k1_unweighted(inst)
    elif M == 1:
        sol = solve_k1_weighted_m1(inst)
    else:
        raise ParameterError("mode k1 on weighted data supports --m 1 only")
    return sol, inst


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        cfg.validate()
        X, W, B = ingest_csv(cfg.input)
        if cfg.mode.startswith("export-"):
            budget_form = bool(np.any(B != 1))
            export = export_compact if cfg.mode == "export-compact" else export_extended
            _write(cfg, export(X, cfg.k, cfg.m, weights=W, budgets=B, budget_form=budget_form), stdout)
            return 0
        t0 = time.perf_counter()
        sol, inst = _solve(cfg, X, W, B)
        timings = {"solve_ms": (time.perf_counter() - t0) * 1e3}
        doc = {"mode": cfg.mode, "k": cfg.k, "m": cfg.m, "n": len(X)}
        doc.update(solution_json(sol))
        if sol.metadata.get("direction") is not None:
            doc["projection"] = {k: sol.metadata[k] for k in ("method", "direction", "fallback", "base_mode")}
        if cfg.table and cfg.mode in _TABLE_MODE:
            doc["tradeoff_table"] = [float(v) for v in tradeoff_table(inst, _TABLE_MODE[cfg.mode])]
        if cfg.crosscheck:
            doc["crosscheck"] = _crosscheck(cfg, X, W, B, sol, timings)
        doc["timings"] = timings
        _write(cfg, json.dumps(doc, indent=2) + "\n", stdout)
        return 0
    except GuardError as exc:
        return _fail(exc, 4)
    except ParseError as exc:
        return _fail(exc, 3)
    except (ParameterError, DomainError) as exc:
        return _fail(exc, 2)


def _crosscheck(cfg, X, W, B, sol, timings):
    if len(X) > ORACLE_MAX_N:
        return {"oracle_cost": None, "match": None, "skipped": f"N > {ORACLE_MAX_N}"}
    kind = "medoid" if cfg.mode == "medoids" else "centroid"
    t0 = time.perf_counter()
    ref = brute_force(X, cfg.k, cfg.m, OracleConfig(kind, budget_mode=bool(np.any(B != 1))), weights=W, budgets=B)
    timings["oracle_ms"] = (time.perf_counter() - t0) * 1e3
    match = abs(sol.total_cost - ref.total_cost) <= 1e-6 * max(1.0, abs(ref.total_cost))
    return {"oracle_cost": ref.total_cost, "match": bool(match), "exact_mode": cfg.mode in EXACT_MODES}


def _write(cfg, text, stdout):
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        stdout.write(text)


def _fail(exc, code):
    print(f"error: {' '.join(str(exc).split())}", file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pmssc", description="k-means with at most M discarded outliers")
    p.add_argument("--input", required=True, type=Path, help="CSV with columns x1..xL[, weight][, budget]")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--mode", required=True, choices=MODES)
    p.add_argument("--projection", help="coordinate:IDX | random:SEED | pca")
    p.add_argument("--table", action="store_true", help="add optimal costs for every budget 0..m")
    p.add_argument("--crosscheck", action="store_true", help="compare against the exhaustive oracle (N <= 14)")
    p.add_argument("--output", type=Path)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        input=args.input, k=args.k, m=args.m, mode=args.mode, projection=args.projection,
        output=args.output, table=args.table, crosscheck=args.crosscheck,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
