"""Digraph structure of a matrix: irreducibility, block triangular form,
imprimitivity index.

The digraph has an arc i -> j exactly when a_ij != 0.  A matrix is
irreducible when this digraph is strongly connected; a 1 x 1 matrix is
irreducible by convention.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import Permutation, as_matrix

__all__ = [
    "ReducibleInputError",
    "is_irreducible",
    "irreducibility_path",
    "FrobeniusForm",
    "frobenius_form",
    "ImprimitivityIndex",
    "imprimitivity_index",
    "is_primitive",
]


class ReducibleInputError(ValueError):
    """Raised by operations that require an irreducible matrix."""


def _adjacency(m: np.ndarray) -> list[list[int]]:
    rows, cols = np.nonzero(m)
    adj: list[list[int]] = [[] for _ in range(m.shape[0])]
    for u, v in zip(rows.tolist(), cols.tolist()):
        adj[u].append(v)
    return adj


def _strong_labels(m: np.ndarray) -> tuple[int, np.ndarray]:
    pattern = csr_matrix((m != 0).astype(np.int8))
    return connected_components(pattern, directed=True, connection="strong")


def is_irreducible(a) -> bool:
    """True when the digraph of `a` is strongly connected (n = 1: always)."""
    m = as_matrix(a)
    if m.shape[0] == 1:
        return True
    n_comp, _ = _strong_labels(m)
    return n_comp == 1


def _shortest_path(adj: list[list[int]], src: int, dst: int) -> list[int]:
    """BFS path src..dst as a node list including both ends."""
    if src == dst:
        return [src]
    parent = {src: -1}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in parent:
                parent[v] = u
                if v == dst:
                    path = [v]
                    while path[-1] != src:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(v)
    raise AssertionError("no path in a strongly connected digraph")


def irreducibility_path(a) -> list[int] | None:
    """A closed walk through every node, as a 1-based list with equal ends.

    Returns None when `a` is reducible.  For n = 1 the walk needs a loop:
    [1, 1] when the single entry is nonzero, else None.
    """
    m = as_matrix(a)
    n = m.shape[0]
    if n == 1:
        return [1, 1] if m[0, 0] != 0 else None
    if not is_irreducible(m):
        return None
    adj = _adjacency(m)
    walk = [0]
    for target in range(1, n):
        walk.extend(_shortest_path(adj, walk[-1], target)[1:])
    walk.extend(_shortest_path(adj, walk[-1], 0)[1:])
    return [u + 1 for u in walk]


@dataclass(frozen=True)
class FrobeniusForm:
    """Block lower triangular normal form under a permutation similarity.

    `perm.images` lists the original 1-based indices in their new order, so
    applying the permutation gives a matrix with irreducible diagonal blocks
    and exact zeros above the block diagonal.  Block order is the
    topological order of the condensation that places every block after all
    blocks it reaches, tie-broken by smallest original index.
    """

    perm: Permutation
    block_sizes: tuple[int, ...]
    block_indices: tuple[tuple[int, ...], ...]
    blocks: tuple[np.ndarray, ...]
    rho_per_block: tuple[float, ...]
    rho: float

    def apply(self, a) -> np.ndarray:
        """The permuted matrix P^T a P realizing the block triangular form."""
        m = as_matrix(a)
        if m.shape[0] != self.perm.n:
            raise ValueError(
                f"matrix has dimension {m.shape[0]}, form is for {self.perm.n}"
            )
        order0 = [i - 1 for i in self.perm.images]
        return m[np.ix_(order0, order0)]


def frobenius_form(a) -> FrobeniusForm:
    """Strongly connected components of the digraph, ordered so that every
    arc of the condensation points from a later block to an earlier one."""
    m = as_matrix(a)
    n = m.shape[0]
    n_comp, labels = _strong_labels(m) if n > 1 else (1, np.zeros(1, dtype=np.int64))

    members: list[list[int]] = [[] for _ in range(n_comp)]
    for node in range(n):
        members[labels[node]].append(node)
    min_index = [min(c) for c in members]

    successors: list[set[int]] = [set() for _ in range(n_comp)]
    predecessors: list[set[int]] = [set() for _ in range(n_comp)]
    rows, cols = np.nonzero(m)
    for u, v in zip(rows.tolist(), cols.tolist()):
        cu, cv = int(labels[u]), int(labels[v])
        if cu != cv:
            successors[cu].add(cv)
            predecessors[cv].add(cu)

    # Components with no unplaced successors are eligible; smallest original
    # index first keeps the order deterministic.
    remaining = [len(s) for s in successors]
    heap = [(min_index[c], c) for c in range(n_comp) if remaining[c] == 0]
    heapq.heapify(heap)
    placed: list[int] = []
    while heap:
        _, c = heapq.heappop(heap)
        placed.append(c)
        for p in predecessors[c]:
            remaining[p] -= 1
            if remaining[p] == 0:
                heapq.heappush(heap, (min_index[p], p))
    if len(placed) != n_comp:
        raise AssertionError("condensation was not acyclic")

    block_indices = tuple(tuple(i + 1 for i in sorted(members[c])) for c in placed)
    blocks = tuple(
        m[np.ix_([i - 1 for i in idx], [i - 1 for i in idx])] for idx in block_indices
    )
    rho_per_block = tuple(
        float(np.abs(np.linalg.eigvals(b)).max()) for b in blocks
    )
    images = tuple(i for idx in block_indices for i in idx)
    return FrobeniusForm(
        perm=Permutation(images),
        block_sizes=tuple(len(idx) for idx in block_indices),
        block_indices=block_indices,
        blocks=blocks,
        rho_per_block=rho_per_block,
        rho=max(rho_per_block),
    )


@dataclass(frozen=True)
class ImprimitivityIndex:
    """Imprimitivity index h and the cyclic classes of an irreducible digraph.

    Every arc moves one class forward cyclically; `cyclic_classes` has h
    entries of 1-based indices with node 1 in class 0.
    """

    h: int
    cyclic_classes: tuple[tuple[int, ...], ...]


def imprimitivity_index(a) -> ImprimitivityIndex:
    """Greatest common divisor of all cycle lengths of the digraph.

    Requires irreducibility; raises ReducibleInputError otherwise.  A 1 x 1
    matrix has index 1 by convention.  Computed combinatorially from BFS
    levels: h = gcd over arcs u -> v of |level(u) + 1 - level(v)|.
    """
    m = as_matrix(a)
    n = m.shape[0]
    if n == 1:
        return ImprimitivityIndex(1, ((1,),))
    if not is_irreducible(m):
        raise ReducibleInputError("imprimitivity index requires an irreducible matrix")

    adj = _adjacency(m)
    level = np.full(n, -1, dtype=np.int64)
    level[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if level[v] == -1:
                level[v] = level[u] + 1
                queue.append(v)

    h = 0
    rows, cols = np.nonzero(m)
    for u, v in zip(rows.tolist(), cols.tolist()):
        h = math.gcd(h, abs(int(level[u]) + 1 - int(level[v])))
    if h == 0:
        raise AssertionError("strongly connected digraph with no cycle")

    classes: list[list[int]] = [[] for _ in range(h)]
    for node in range(n):
        classes[int(level[node]) % h].append(node + 1)
    return ImprimitivityIndex(h, tuple(tuple(sorted(c)) for c in classes))


def is_primitive(a) -> bool:
    """True when the matrix is irreducible with imprimitivity index 1."""
    return imprimitivity_index(a).h == 1
