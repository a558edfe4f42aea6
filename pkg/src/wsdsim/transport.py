"""Exact Word Mover's Distance via the transportation simplex.

Documents are normalized bags of words (nBOW): unique in-vocabulary words
with term-frequency masses summing to one.  The ground cost between two
words is the Euclidean distance between their vectors, and the distance
between two documents is the minimum cost of a flow whose row marginals
equal the first document's masses and whose column marginals equal the
second's.  The solver is exact; no entropic approximation is involved.
"""

import logging
from collections import deque
from dataclasses import dataclass

import numpy as np

from .embedding import WordVectorTable
from .errors import OovError, SolverError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NBowDoc:
    """Normalized bag of words with one dense vector per unique word."""

    words: tuple[str, ...]
    mass: np.ndarray
    vectors: np.ndarray
    oov_dropped: int = 0

    def __post_init__(self):
        n = len(self.words)
        if n == 0:
            raise ValueError("nBOW document needs at least one word")
        if self.mass.shape != (n,) or self.vectors.shape[0] != n:
            raise ValueError("words, mass, and vectors must agree in length")
        if np.any(self.mass <= 0):
            raise ValueError("all masses must be positive")
        if abs(float(self.mass.sum()) - 1.0) > 1e-9:
            raise ValueError(f"masses must sum to 1, got {float(self.mass.sum())!r}")

    def __len__(self):
        return len(self.words)


@dataclass(frozen=True)
class TransportPlan:
    """A feasible flow between two nBOW documents and its total cost."""

    flow: np.ndarray
    cost: float


def build_nbow(tokens, table: WordVectorTable) -> NBowDoc:
    """Count in-vocabulary tokens into an nBOW document.

    Tokens resolving to the same table entry (case variants) are merged.
    Out-of-vocabulary tokens are dropped and counted; a fully OOV token
    list is an error.
    """
    counts: dict[str, int] = {}
    dropped = 0
    for token in tokens:
        key = table.resolve(token)
        if key is None:
            dropped += 1
            continue
        counts[key] = counts.get(key, 0) + 1
    if not counts:
        raise OovError(f"all {len(list(tokens))} tokens are out of vocabulary")
    if dropped:
        logger.debug("build_nbow: dropped %d OOV tokens", dropped)
    words = tuple(counts)
    total = sum(counts.values())
    mass = np.asarray([counts[w] / total for w in words], dtype=float)
    vectors = np.stack([table.entries[w] for w in words])
    return NBowDoc(words=words, mass=mass, vectors=vectors, oov_dropped=dropped)


def ground_cost(doc_x: NBowDoc, doc_y: NBowDoc) -> np.ndarray:
    """Pairwise Euclidean distances between the documents' word vectors."""
    if doc_x.vectors.shape[1] != doc_y.vectors.shape[1]:
        raise ValueError(
            f"vector dimensions differ: {doc_x.vectors.shape[1]} vs {doc_y.vectors.shape[1]}"
        )
    diff = doc_x.vectors[:, None, :] - doc_y.vectors[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


# ---------------------------------------------------------------------------
# Transportation simplex
# ---------------------------------------------------------------------------

def _northwest_corner(supply, demand):
    """Initial basic feasible solution with exactly n+m-1 basic cells."""
    n, m = len(supply), len(demand)
    a = supply.astype(float).copy()
    b = demand.astype(float).copy()
    flow = np.zeros((n, m))
    basis = []
    i = j = 0
    while True:
        q = min(a[i], b[j])
        flow[i, j] = q
        basis.append((i, j))
        a[i] -= q
        b[j] -= q
        if i == n - 1 and j == m - 1:
            break
        # Move down when the row is exhausted, right otherwise; ties move
        # down, leaving a zero-flow (degenerate) basic cell on the path.
        if a[i] <= 0.0 and i < n - 1:
            i += 1
        elif j < m - 1:
            j += 1
        else:
            i += 1
    return flow, basis


def _compute_duals(n, m, cost, row_adj, col_adj):
    u = np.full(n, np.nan)
    v = np.full(m, np.nan)
    u[0] = 0.0
    stack = [(True, 0)]
    while stack:
        is_row, idx = stack.pop()
        if is_row:
            for j in row_adj[idx]:
                if np.isnan(v[j]):
                    v[j] = cost[idx, j] - u[idx]
                    stack.append((False, j))
        else:
            for i in col_adj[idx]:
                if np.isnan(u[i]):
                    u[i] = cost[i, idx] - v[idx]
                    stack.append((True, i))
    return u, v


def _tree_path_cells(ei, ej, row_adj, col_adj):
    """Cells of the unique tree path from row node ei to column node ej."""
    start, goal = (True, ei), (False, ej)
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            break
        is_row, idx = node
        if is_row:
            neighbors = ((False, j) for j in row_adj[idx])
        else:
            neighbors = ((True, i) for i in col_adj[idx])
        for nb in neighbors:
            if nb not in parent:
                parent[nb] = node
                queue.append(nb)
    nodes = [goal]
    while parent[nodes[-1]] is not None:
        nodes.append(parent[nodes[-1]])
    nodes.reverse()
    cells = []
    for a, b in zip(nodes, nodes[1:]):
        cells.append((a[1], b[1]) if a[0] else (b[1], a[1]))
    return cells


def solve_transport(supply, demand, cost, max_iter=None):
    """Minimum-cost flow matrix for a balanced transportation problem."""
    supply = np.asarray(supply, dtype=float)
    demand = np.asarray(demand, dtype=float)
    cost = np.asarray(cost, dtype=float)
    n, m = cost.shape
    if supply.shape != (n,) or demand.shape != (m,):
        raise ValueError("marginal lengths do not match the cost matrix")
    if not np.all(np.isfinite(cost)):
        raise SolverError("cost matrix contains NaN or Inf")
    if abs(supply.sum() - demand.sum()) > 1e-8:
        raise SolverError(
            f"unbalanced problem: supplies sum to {supply.sum()!r},"
            f" demands to {demand.sum()!r}"
        )
    if max_iter is None:
        max_iter = 200 * (n + m) + 200
    tol = 1e-10 * max(1.0, float(np.abs(cost).max()))

    flow, basis = _northwest_corner(supply, demand)
    basis_set = set(basis)
    row_adj = [set() for _ in range(n)]
    col_adj = [set() for _ in range(m)]
    for i, j in basis:
        row_adj[i].add(j)
        col_adj[j].add(i)

    bland = False
    stalled = 0
    for iteration in range(max_iter):
        u, v = _compute_duals(n, m, cost, row_adj, col_adj)
        reduced = cost - u[:, None] - v[None, :]
        for i, j in basis_set:
            reduced[i, j] = 0.0

        if bland:
            candidates = np.argwhere(reduced < -tol)
            if candidates.size == 0:
                return flow
            ei, ej = map(int, candidates[0])
        else:
            ei, ej = map(int, np.unravel_index(np.argmin(reduced), reduced.shape))
            if reduced[ei, ej] >= -tol:
                return flow

        path = _tree_path_cells(ei, ej, row_adj, col_adj)
        # Orientation: entering cell gains theta, then signs alternate
        # backwards along the tree path.
        cycle = [(ei, ej)] + path[::-1]
        minus_cells = cycle[1::2]
        theta = None
        leaving = None
        for cell in minus_cells:
            f = flow[cell]
            if theta is None or f < theta:
                theta = f
                leaving = cell
        for k, cell in enumerate(cycle):
            if k % 2 == 0:
                flow[cell] += theta
            else:
                flow[cell] -= theta
        flow[leaving] = 0.0

        basis_set.remove(leaving)
        row_adj[leaving[0]].remove(leaving[1])
        col_adj[leaving[1]].remove(leaving[0])
        basis_set.add((ei, ej))
        row_adj[ei].add(ej)
        col_adj[ej].add(ei)

        if theta <= 1e-15:
            stalled += 1
            if not bland and stalled > 2 * (n + m):
                bland = True  # anti-cycling fallback
        else:
            stalled = 0

    raise SolverError(
        f"transportation simplex did not converge within {max_iter} iterations"
        f" ({n}x{m} problem, current cost {float((flow * cost).sum())!r})"
    )


def solve_wmd(doc_x: NBowDoc, doc_y: NBowDoc) -> TransportPlan:
    """Exact optimal transport between two nBOW documents."""
    cost = ground_cost(doc_x, doc_y)
    n, m = cost.shape
    if n == 1 and m == 1:
        flow = np.array([[1.0]])
    else:
        flow = solve_transport(doc_x.mass, doc_y.mass, cost)
    total = float((flow * cost).sum())
    _verify_plan(flow, doc_x.mass, doc_y.mass)
    return TransportPlan(flow=flow, cost=total)


def _verify_plan(flow, supply, demand, tol=1e-7):
    row_err = float(np.abs(flow.sum(axis=1) - supply).max())
    col_err = float(np.abs(flow.sum(axis=0) - demand).max())
    if flow.min() < -tol or row_err > tol or col_err > tol:
        raise SolverError(
            f"returned plan violates marginals (row {row_err:.2e}, col {col_err:.2e},"
            f" min flow {float(flow.min()):.2e})"
        )


def wmd_similarity(doc_x: NBowDoc, doc_y: NBowDoc) -> float:
    """Order-reversing similarity: the negated optimal transport cost."""
    return -solve_wmd(doc_x, doc_y).cost
