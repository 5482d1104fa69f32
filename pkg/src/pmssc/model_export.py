"""Integer-programming models of partial k-means as plain-text files.

File layout (one item per line, ``\\`` starts a comment)::

    OBJECTIVE
    minimize
     obj: <linear terms>
    BINARY
     <names>
    CONTINUOUS
     <name> >= 0 | <name> free
    CONSTRAINTS
     <label>: <terms> <= | >= <rhs>
    END

Coefficients are written with ``repr`` so they round-trip exactly. Squared
variables appear in LP-format brackets, e.g. ``[ c_1_1 ^ 2 ]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DomainError, GuardError, ParseError, centroid_cost

MAX_EXTENDED_N = 14


def _num(v: float) -> str:
    v = float(v)
    return repr(int(v)) if v.is_integer() and abs(v) < 1e15 else repr(v)


def _terms(pairs) -> str:
    out = []
    for coef, name in pairs:
        sign = "-" if coef < 0 else "+"
        body = name if abs(coef) == 1 else f"{_num(abs(coef))} {name}"
        out.append(f"{sign} {body}")
    text = " ".join(out)
    return text[2:] if text.startswith("+ ") else text


def _inputs(points, weights, budgets):
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    n = len(X)
    if n < 1:
        raise DomainError("at least one point is required")
    w = np.ones(n) if weights is None else np.asarray(weights, dtype=float)
    m = np.ones(n, dtype=int) if budgets is None else np.asarray(budgets, dtype=int)
    return X, w, m


def max_squared_distance(X: np.ndarray) -> float:
    diff = X[:, None, :] - X[None, :, :]
    return float((diff**2).sum(axis=2).max())


@dataclass(frozen=True)
class CompactModel:
    """Assignment model with big-M linearised distances.

    z_n_k = 1 iff point n is in cluster k; s_n_k bounds the weighted term of
    point n in cluster k; c_k_l is coordinate l of center k.
    """

    X: np.ndarray
    weights: np.ndarray
    budgets: np.ndarray
    K: int
    M: int
    budget_form: bool
    D: float

    @property
    def N(self) -> int:
        return len(self.X)

    def binary(self) -> list[str]:
        return [f"z_{n}_{k}" for n in range(1, self.N + 1) for k in range(1, self.K + 1)]

    def continuous(self) -> list[str]:
        s = [f" s_{n}_{k} >= 0" for n in range(1, self.N + 1) for k in range(1, self.K + 1)]
        c = [f" c_{k}_{l} free" for k in range(1, self.K + 1) for l in range(1, self.X.shape[1] + 1)]
        return s + c

    def constraints(self) -> list[str]:
        N, K, L = self.N, self.K, self.X.shape[1]
        rows = []
        for n in range(1, N + 1):
            rows.append(f" assign_{n}: {_terms((1, f'z_{n}_{k}') for k in range(1, K + 1))} <= 1")
        if self.budget_form:
            pairs = [(int(self.budgets[n - 1]), f"z_{n}_{k}") for n in range(1, N + 1) for k in range(1, K + 1)]
            rhs = int(self.budgets.sum()) - self.M
            rows.append(f" coverage: {_terms(p for p in pairs if p[0] != 0) or '0 z_1_1'} >= {rhs}")
        else:
            rows.append(f" coverage: {_terms((1, z) for z in self.binary())} >= {N - self.M}")
        D = self.D
        for n in range(1, N + 1):
            xn = self.X[n - 1]
            for k in range(1, K + 1):
                # [ c_k - x_n ]^2 - s_n_k + D z_n_k <= D - |x_n|^2
                sq = " + ".join(f"c_{k}_{l} ^ 2" for l in range(1, L + 1))
                lin = [(-2 * xn[l - 1], f"c_{k}_{l}") for l in range(1, L + 1) if xn[l - 1] != 0]
                lin += [(-1, f"s_{n}_{k}"), (D, f"z_{n}_{k}")]
                rhs = D - float(xn @ xn)
                rows.append(f" link_{n}_{k}: [ {sq} ] {_signed(_terms(lin))} <= {_num(rhs)}")
        return rows

    def to_text(self) -> str:
        obj = _terms((self.weights[n - 1], f"s_{n}_{k}") for n in range(1, self.N + 1) for k in range(1, self.K + 1))
        lines = [
            "\\ compact partial k-means model",
            f"\\ N={self.N} K={self.K} M={self.M} L={self.X.shape[1]} D={_num(self.D)}"
            + (" budget-form" if self.budget_form else ""),
            "OBJECTIVE",
            "minimize",
            f" obj: {obj}",
            "BINARY",
            *(f" {z}" for z in self.binary()),
            "CONTINUOUS",
            *self.continuous(),
            "CONSTRAINTS",
            *self.constraints(),
            "END",
        ]
        return "\n".join(lines) + "\n"


def _signed(text: str) -> str:
    return text if text.startswith("-") else f"+ {text}"


def build_compact(points, K: int, M: int, weights=None, budgets=None, budget_form: bool = False) -> CompactModel:
    X, w, m = _inputs(points, weights, budgets)
    return CompactModel(X, w, m, int(K), int(M), budget_form, max_squared_distance(X))


def export_compact(points, K: int, M: int, weights=None, budgets=None, budget_form: bool = False) -> str:
    return build_compact(points, K, M, weights, budgets, budget_form).to_text()


def evaluate_compact(model: CompactModel, z, centers) -> tuple[bool, float]:
    """Feasibility and objective of an assignment ``z`` (N x K) with given centers (K x L).

    Each ``s_n_k`` takes its smallest admissible value.
    """
    z = np.asarray(z)
    C = np.asarray(centers, dtype=float).reshape(model.K, model.X.shape[1])
    if z.shape != (model.N, model.K):
        raise DomainError("assignment has the wrong dimension")
    if not np.isin(z, (0, 1)).all():
        raise DomainError("assignment must be binary")
    d2 = ((model.X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)
    s = np.maximum(0.0, d2 - model.D * (1 - z))
    assign_ok = bool((z.sum(axis=1) <= 1).all())
    if model.budget_form:
        cover_ok = int(model.budgets @ z.sum(axis=1)) >= int(model.budgets.sum()) - model.M
    else:
        cover_ok = int(z.sum()) >= model.N - model.M
    return assign_ok and cover_ok, float(model.weights @ s.sum(axis=1))


@dataclass(frozen=True)
class ExtendedModel:
    """Set-covering model: one binary per nonempty subset, one per point for discarding."""

    n_points: int
    subsets: tuple[int, ...]  # bitmasks over the points
    costs: np.ndarray
    budgets: np.ndarray
    K: int
    M: int

    def subset_name(self, mask: int) -> str:
        return "zp_" + "_".join(str(t + 1) for t in range(self.n_points) if mask >> t & 1)

    def to_text(self, budget_form: bool = False) -> str:
        N = self.n_points
        names = [self.subset_name(p) for p in self.subsets]
        lines = [
            "\\ extended partial k-means model",
            f"\\ N={N} K={self.K} M={self.M} subsets={len(self.subsets)}" + (" budget-form" if budget_form else ""),
            "\\ zp_<members> = 1 selects that subset as a cluster; y_n = 1 discards point n",
            "\\ LP relaxation by column generation: duals pi_n (cover_n), lambda (budget),",
            "\\ sigma (clusters). Pricing: SP = min_p c_p - sum_{n in p} pi_n; a subset p",
            "\\ enters the restricted master when c_p - sum_{n in p} pi_n < -sigma.",
            "\\ SP as a convex MIQP: min sum_n s_n - sum_n pi_n z_n",
            "\\   s.t. s_n >= [ c - x_n ]^2 - D (1 - z_n), z_n binary, s_n >= 0",
            "OBJECTIVE",
            "minimize",
            " obj: " + " ".join(f"+ {_num(c)} {nm}" for c, nm in zip(self.costs, names))[2:],
            "BINARY",
            *(f" {nm}" for nm in names),
            *(f" y_{n}" for n in range(1, N + 1)),
            "CONTINUOUS",
            "CONSTRAINTS",
        ]
        for n in range(N):
            cover = [nm for p, nm in zip(self.subsets, names) if p >> n & 1]
            lines.append(f" cover_{n + 1}: {' + '.join(cover)} + y_{n + 1} >= 1")
        if budget_form:
            pairs = [(int(self.budgets[n]), f"y_{n + 1}") for n in range(N) if self.budgets[n] != 0]
            lines.append(f" budget: {_terms(pairs) or '0 y_1'} <= {self.M}")
        else:
            lines.append(f" budget: {' + '.join(f'y_{n}' for n in range(1, N + 1))} <= {self.M}")
        lines.append(f" clusters: {' + '.join(names)} <= {self.K}")
        lines.append("END")
        return "\n".join(lines) + "\n"


def build_extended(points, K: int, M: int, weights=None, budgets=None, max_N: int = MAX_EXTENDED_N) -> ExtendedModel:
    X, w, m = _inputs(points, weights, budgets)
    N = len(X)
    if N > max_N:
        raise GuardError(f"extended model enumerates 2^N subsets; N = {N} exceeds {max_N}")
    subsets = tuple(range(1, 1 << N))
    costs = np.empty(len(subsets))
    for r, mask in enumerate(subsets):
        idx = [t for t in range(N) if mask >> t & 1]
        costs[r] = centroid_cost(X[idx], w[idx])[1]
    return ExtendedModel(N, subsets, costs, m, int(K), int(M))


def export_extended(points, K: int, M: int, weights=None, budgets=None, budget_form: bool = False,
                    max_N: int = MAX_EXTENDED_N) -> str:
    return build_extended(points, K, M, weights, budgets, max_N).to_text(budget_form)


def _parse_terms(text: str) -> list[tuple[float, str]]:
    out = []
    sign, coef = 1.0, None
    for tok in text.split():
        if tok in ("+", "-"):
            sign = -1.0 if tok == "-" else 1.0
            continue
        try:
            coef = float(tok)
            continue
        except ValueError:
            pass
        out.append((sign * (1.0 if coef is None else coef), tok))
        sign, coef = 1.0, None
    return out


def read_extended(text: str) -> ExtendedModel:
    """Rebuild an :class:`ExtendedModel` from the text written by :meth:`ExtendedModel.to_text`."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("\\")]
    try:
        obj_line = next(ln for ln in lines if ln.startswith("obj:"))
        objective = _parse_terms(obj_line[4:])
        names = [nm for _, nm in objective]
        subsets = tuple(sum(1 << (int(t) - 1) for t in nm[3:].split("_")) for nm in names)
        n_points = max(int(ln.split(":")[0][6:]) for ln in lines if ln.startswith("cover_"))
        budget_line = next(ln for ln in lines if ln.startswith("budget:"))
        lhs, rhs = budget_line[7:].split("<=")
        budgets = np.zeros(n_points, dtype=int)
        for coef, name in _parse_terms(lhs):
            budgets[int(name[2:]) - 1] = int(coef)
        clusters_line = next(ln for ln in lines if ln.startswith("clusters:"))
        K = int(clusters_line.split("<=")[1])
        M = int(rhs)
    except (StopIteration, ValueError, IndexError) as exc:
        raise ParseError(f"not an extended model file: {exc}") from None
    for ln in lines:
        if ln.startswith("cover_"):
            n = int(ln.split(":")[0][6:]) - 1
            listed = {nm for _, nm in _parse_terms(ln.split(":", 1)[1].split(">=")[0])}
            expected = {nm for nm, p in zip(names, subsets) if p >> n & 1} | {f"y_{n + 1}"}
            if listed != expected:
                raise ParseError(f"cover row {n + 1} does not match the subset names")
    costs = np.array([c for c, _ in objective])
    return ExtendedModel(n_points, subsets, costs, budgets, K, M)


def evaluate_extended(model: ExtendedModel, z, y) -> tuple[bool, float]:
    """Check a 0/1 assignment against every constraint; return ``(feasible, objective)``."""
    z = np.asarray(z)
    y = np.asarray(y)
    if z.shape != (len(model.subsets),) or y.shape != (model.n_points,):
        raise DomainError("assignment has the wrong dimension")
    if not (np.isin(z, (0, 1)).all() and np.isin(y, (0, 1)).all()):
        raise DomainError("assignment must be binary")
    covered = 0
    for p, on in zip(model.subsets, z):
        if on:
            covered |= p
    cover_ok = all(covered >> n & 1 or y[n] for n in range(model.n_points))
    budget_ok = int(model.budgets @ y) <= model.M
    card_ok = int(z.sum()) <= model.K
    return bool(cover_ok and budget_ok and card_ok), float(model.costs @ z)


def minimize_extended(model: ExtendedModel) -> tuple[float, np.ndarray, np.ndarray]:
    """Exact minimum of the model over its feasible 0/1 points.

    Dynamic programming over (number of chosen subsets, union of chosen
    subsets). For a fixed selection the best ``y`` discards exactly the
    uncovered points, so only the union matters for feasibility.
    """
    N = model.n_points
    unions = np.arange(1 << N)
    layer = np.full(1 << N, np.inf)
    layer[0] = 0.0
    layers = [layer]
    for _ in range(model.K):
        nxt = layers[-1].copy()
        for r, p in enumerate(model.subsets):
            np.minimum.at(nxt, unions | p, layers[-1] + model.costs[r])
        layers.append(nxt)

    uncovered = np.array([sum(int(model.budgets[n]) for n in range(N) if not u >> n & 1) for u in unions])
    final = np.where(uncovered <= model.M, layers[-1], np.inf)
    u = int(np.argmin(final))

    z = np.zeros(len(model.subsets), dtype=int)
    cur = u
    for k in range(model.K, 0, -1):
        value = layers[k][cur]
        if value == layers[k - 1][cur]:
            continue
        for r, p in enumerate(model.subsets):
            if p & ~cur:
                continue
            src = unions[(unions | p) == cur]
            hit = src[layers[k - 1][src] + model.costs[r] == value]
            if len(hit):
                z[r] = 1
                cur = int(hit[0])
                break
    y = np.array([0 if u >> n & 1 else 1 for n in range(N)])
    return float(final[u]), z, y
