"""Pareto efficiency of weight vectors for reciprocal matrices.

A positive vector ``w`` is efficient for ``A`` when no other positive ``v``
gives ``|A - V| <= |A - W|`` entrywise with strict inequality somewhere,
where ``W = [w_i / w_j]`` and ``V = [v_i / v_j]``. The decision procedure
used here: ``w`` is efficient iff the digraph with an edge ``i -> j``
whenever ``w_i >= a_ij w_j`` is strongly connected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ReciprocalMatrix, as_weight_vector

EDGE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ComparisonDigraph:
    """Digraph ``G(A, w)`` as a boolean adjacency matrix (no self-loops)."""

    adjacency: np.ndarray
    edge_tol: float = EDGE_TOL

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i, j])

    def successors(self, i: int) -> list[int]:
        return np.flatnonzero(self.adjacency[i]).tolist()

    def edges(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self.adjacency)]


def build_digraph(A: ReciprocalMatrix, w, edge_tol: float = EDGE_TOL) -> ComparisonDigraph:
    """Edge ``i -> j`` (``i != j``) iff ``w_i / (a_ij w_j) >= 1 - edge_tol``."""
    a = np.asarray(A)
    w = as_weight_vector(w, a.shape[0])
    ratio = w[:, None] / (a * w[None, :])
    adj = ratio >= 1.0 - edge_tol
    np.fill_diagonal(adj, False)
    adj.setflags(write=False)
    return ComparisonDigraph(adj, edge_tol)


def strongly_connected_components(adjacency) -> list[list[int]]:
    """Tarjan's algorithm, iterative.

    Components come out in reverse topological order of the condensation:
    the first is a sink, the last a source.
    """
    rows = np.asarray(adjacency, dtype=bool).tolist()
    n = len(rows)
    succ = [[j for j, e in enumerate(row) if e] for row in rows]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, k = work[-1]
            nbrs = succ[v]
            if k < len(nbrs):
                work[-1] = (v, k + 1)
                u = nbrs[k]
                if index[u] < 0:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack[u] = True
                    work.append((u, 0))
                elif on_stack[u] and index[u] < low[v]:
                    low[v] = index[u]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp.append(u)
                    if u == v:
                        break
                comps.append(sorted(comp))
    return comps


def is_closed_cut(adjacency, subset) -> bool:
    """True iff ``subset`` is a nonempty proper vertex set no edge enters."""
    adj = np.asarray(adjacency, dtype=bool)
    inside = np.zeros(adj.shape[0], dtype=bool)
    inside[list(subset)] = True
    if not inside.any() or inside.all():
        return False
    return not adj[np.ix_(~inside, inside)].any()


@dataclass(frozen=True, eq=False)
class EfficiencyVerdict:
    """Outcome of the strong-connectivity test.

    ``witness_cut`` is set when ``efficient`` is false: a source component
    of ``G(A, w)``, i.e. a vertex set that no edge enters.
    """

    efficient: bool
    digraph: ComparisonDigraph
    components: list[list[int]]
    witness_cut: tuple[int, ...] | None = None

    @property
    def scc_count(self) -> int:
        return len(self.components)

    def check(self) -> bool:
        """Re-verify the certificate against the digraph."""
        if self.efficient:
            return self.scc_count == 1 and self.witness_cut is None
        return self.witness_cut is not None and is_closed_cut(
            self.digraph.adjacency, self.witness_cut
        )

    def to_dict(self) -> dict:
        out = {
            "efficient": self.efficient,
            "scc_count": self.scc_count,
            "edge_tol": self.digraph.edge_tol,
        }
        if self.witness_cut is not None:
            out["witness_cut"] = list(self.witness_cut)
        return out


def is_efficient(A: ReciprocalMatrix, w, edge_tol: float = EDGE_TOL) -> EfficiencyVerdict:
    """Decide whether ``w`` is efficient for ``A``.

    Parameters
    ----------
    A : ReciprocalMatrix
    w : array_like
        Positive vector of length ``A.n``; its scale does not matter.
    edge_tol : float
        Relative slack admitting near-ties as edges.

    Returns
    -------
    EfficiencyVerdict
        With a single strongly connected component when efficient, and a
        vertex cut nothing enters otherwise.
    """
    g = build_digraph(A, w, edge_tol)
    comps = strongly_connected_components(g.adjacency)
    if len(comps) == 1:
        return EfficiencyVerdict(True, g, comps)
    return EfficiencyVerdict(False, g, comps, tuple(comps[-1]))


# --- dominance oracle ------------------------------------------------------

_EPS = np.finfo(float).eps


def deviation(A: ReciprocalMatrix, w) -> np.ndarray:
    """Entrywise ``|A - W|`` with ``W = [w_i / w_j]``."""
    w = np.asarray(w, dtype=float)
    return np.abs(np.asarray(A) - np.divide.outer(w, w))


def _dominates_profile(a, dv, dw, w, strict_tol):
    ulps = 8 * _EPS * (a + np.divide.outer(w, w))
    if np.any(dv > dw + ulps):
        return False
    return bool(np.any(dw - dv > strict_tol * a))


def dominates(A: ReciprocalMatrix, v, w, strict_tol: float = EDGE_TOL) -> bool:
    """True iff ``v`` Pareto-improves on ``w`` as an approximation of ``A``.

    Weak inequalities allow a few ulps of rounding; the strict improvement
    must exceed ``strict_tol`` relative to ``a_ij`` in at least one entry.
    """
    w = np.asarray(w, dtype=float)
    return _dominates_profile(np.asarray(A), deviation(A, v), deviation(A, w), w, strict_tol)


@dataclass(frozen=True, eq=False)
class DominanceWitness:
    v: np.ndarray
    evaluations: int = field(default=0)

    def verify(self, A: ReciprocalMatrix, w) -> bool:
        return dominates(A, self.v, w)


def dominance_search(
    A: ReciprocalMatrix,
    w,
    budget: int = 10_000,
    rng_seed: int = 0,
    initial_step: float = 0.5,
    min_step: float = 1e-7,
) -> DominanceWitness | None:
    """Randomized search for a vector that Pareto-dominates ``w``.

    Heuristic refutation only: each candidate rescales a random nonempty
    proper subset of the coordinates of the current point by ``1 + step`` or
    its inverse, and is accepted when its deviation profile is no worse
    anywhere and better somewhere. The step halves after every sweep of
    unsuccessful attempts and restarts from ``initial_step`` below
    ``min_step``. Once something is accepted, a few more moves are made from
    it; every accepted point is checked against both the previous point and
    ``w`` itself.

    Returns ``None`` when nothing is found within ``budget`` candidate
    evaluations. That is not a proof of efficiency.
    """
    a = np.asarray(A)
    w = as_weight_vector(w, a.shape[0])
    n = w.size
    rng = np.random.default_rng(rng_seed)
    sweep = max(4, 2 ** min(n, 6))
    step = initial_step
    current = w
    dw = dcur = deviation(A, w)
    found = False
    polish = 0
    for k in range(1, budget + 1):
        size = int(rng.integers(1, n))
        subset = rng.choice(n, size=size, replace=False)
        factor = 1.0 + step if rng.random() < 0.5 else 1.0 / (1.0 + step)
        cand = current.copy()
        cand[subset] *= factor
        dc = deviation(A, cand)
        if _dominates_profile(a, dc, dcur, current, EDGE_TOL) and _dominates_profile(
            a, dc, dw, w, EDGE_TOL
        ):
            current, dcur = cand, dc
            found = True
        elif k % sweep == 0:
            step = step / 2 if step / 2 >= min_step else initial_step
        if found:
            polish += 1
            if polish > sweep:
                break
    if found:
        return DominanceWitness(current, k)
    return None
