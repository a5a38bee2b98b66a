"""Pair-orientation sets and the candidate construction that pairs sign
certificates of a matrix with those of its second compound.

A W set over {1..n} is a set of ordered pairs such that every (i, i) belongs
to it and exactly one of (i, j), (j, i) belongs to it for each i != j.  It
fixes an orientation for every unordered index pair and thereby a basis
ordering for minor-based matrices.  A transitive W set is exactly a total
order on {1..n}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .core import PairIndexer, Permutation, as_matrix, pair_count

__all__ = [
    "WSet",
    "canonical_m",
    "TransitivityCheck",
    "is_transitive",
    "build_w_hat",
    "WCandidate",
    "WCandidateEnumeration",
    "enumerate_w_candidates",
    "DEFAULT_CANDIDATE_CAP",
]

DEFAULT_CANDIDATE_CAP = 2**16


@dataclass(frozen=True)
class WSet:
    """Orientation of all index pairs over {1..n}.

    `member[i-1, j-1]` is True exactly when the ordered pair (i, j) is in the
    set.  Construction validates the two defining conditions: together with
    the reversed pairs everything is covered, and the only pairs present in
    both directions are the diagonal ones.
    """

    n: int
    member: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        m = np.asarray(self.member, dtype=bool)
        if m.shape != (self.n, self.n):
            raise ValueError(f"member grid must be {self.n}x{self.n}, got {m.shape}")
        if not (m | m.T).all():
            raise ValueError("every pair (i, j) or its reverse must be a member")
        if not np.array_equal(m & m.T, np.eye(self.n, dtype=bool)):
            raise ValueError(
                "exactly the diagonal pairs may be members in both directions"
            )
        object.__setattr__(self, "member", m)
        m.setflags(write=False)

    def contains(self, i: int, j: int) -> bool:
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"pair ({i}, {j}) out of range 1..{self.n}")
        return bool(self.member[i - 1, j - 1])

    @cached_property
    def pairs(self) -> np.ndarray:
        """Off-diagonal members as an (C(n,2), 2) array, 1-based, sorted
        lexicographically by the stored orientation."""
        rows, cols = np.nonzero(self.member & ~np.eye(self.n, dtype=bool))
        out = np.column_stack([rows, cols]) + 1
        out.setflags(write=False)
        return out


def canonical_m(n: int) -> WSet:
    """The W set of all pairs (i, j) with i <= j (natural orientation)."""
    member = np.triu(np.ones((n, n), dtype=bool))
    return WSet(n, member)


@dataclass(frozen=True)
class TransitivityCheck:
    """Outcome of a transitivity test.

    For a transitive W set the induced total order is returned as the
    permutation sigma with W = {(i, j) : sigma(i) <= sigma(j)}; otherwise
    `witness` is a triple (i, j, k) with (i, j) and (j, k) members but
    (i, k) not.
    """

    transitive: bool
    witness: tuple[int, int, int] | None
    order: Permutation | None


def is_transitive(w: WSet) -> TransitivityCheck:
    """Test transitivity of a W set and extract the total order or a witness."""
    m = w.member
    reach2 = (m.astype(np.uint8) @ m.astype(np.uint8)) > 0
    violations = reach2 & ~m
    if violations.any():
        i0, k0 = np.argwhere(violations)[0]
        j0 = int(np.nonzero(m[i0] & m[:, k0])[0][0])
        return TransitivityCheck(False, (int(i0) + 1, j0 + 1, int(k0) + 1), None)
    # Row sums of a total order are n, n-1, ..., 1 from least to greatest.
    sigma = w.n + 1 - m.sum(axis=1)
    order = Permutation(tuple(int(v) for v in sigma))
    if not np.array_equal(m, sigma[:, None] <= sigma[None, :]):
        raise AssertionError("transitive W set did not reconstruct from its order")
    return TransitivityCheck(True, None, order)


def build_w_hat(j_set: Iterable[int], jt_set: Iterable[int], n: int) -> WSet:
    """Orient each pair (i, j), i < j, from a node-level set J and a
    pair-level set Jt.

    The pair keeps its natural orientation when the sides of i and j relative
    to J agree with the membership of the pair's lexicographic position in
    Jt: both on the same side of J and the position in Jt, or on opposite
    sides and the position not in Jt.  Otherwise the pair is reversed.
    """
    j_set = frozenset(j_set)
    jt_set = frozenset(jt_set)
    if not all(isinstance(v, (int, np.integer)) and 1 <= v <= n for v in j_set):
        raise ValueError(f"J must be a subset of 1..{n}, got {sorted(j_set)}")
    mp = pair_count(n)
    if not all(isinstance(v, (int, np.integer)) and 1 <= v <= mp for v in jt_set):
        raise ValueError(f"Jt must be a subset of 1..{mp}, got {sorted(jt_set)}")

    member = np.eye(n, dtype=bool)
    if n >= 2:
        idx = PairIndexer(n)
        i1 = idx.pairs[:, 0]
        j1 = idx.pairs[:, 1]
        in_j = np.zeros(n + 1, dtype=bool)
        in_j[list(j_set)] = True
        in_jt = np.zeros(mp + 1, dtype=bool)
        in_jt[list(jt_set)] = True
        same_side = in_j[i1] == in_j[j1]
        keep = same_side == in_jt[idx.index_array(i1, j1)]
        member[i1 - 1, j1 - 1] = keep
        member[j1 - 1, i1 - 1] = ~keep
    return WSet(n, member)


@dataclass(frozen=True)
class WCandidate:
    """One distinct W set produced by the candidate construction, together
    with every (J, Jt) certificate pair that generated it."""

    w: WSet
    transitive: bool
    witness: tuple[int, int, int] | None
    order: Permutation | None
    generating_pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]


@dataclass(frozen=True)
class WCandidateEnumeration:
    candidates: tuple[WCandidate, ...]
    exists_transitive: bool
    j_count: int
    jt_count: int


def enumerate_w_candidates(a, cap: int = DEFAULT_CANDIDATE_CAP) -> WCandidateEnumeration:
    """Build every candidate W set from the sign certificates of `a` and of
    its second compound, deduplicated as orientation sets.

    Requires both `a` and its second compound to be sign-symmetric; raises
    NotSignSymmetricError otherwise and TooManyCertificatesError when the
    number of (J, Jt) combinations exceeds `cap`.
    """
    from .exterior import compound2
    from .signsym import TooManyCertificatesError, enumerate_j_sets

    m = as_matrix(a)
    n = m.shape[0]
    j_sets = enumerate_j_sets(m, cap=cap)
    if n == 1:
        jt_sets = [frozenset()]  # no pairs, one trivial certificate
    else:
        jt_sets = enumerate_j_sets(compound2(m), cap=cap)
    total = len(j_sets) * len(jt_sets)
    if total > cap:
        raise TooManyCertificatesError(
            f"{total} candidate (J, Jt) combinations exceed the cap {cap}"
        )

    by_key: dict[bytes, list[tuple[frozenset[int], frozenset[int]]]] = {}
    reps: dict[bytes, WSet] = {}
    for js in j_sets:
        for jts in jt_sets:
            w = build_w_hat(js, jts, n)
            key = w.member.tobytes()
            by_key.setdefault(key, []).append((js, jts))
            reps.setdefault(key, w)

    candidates = []
    for key, pairs in by_key.items():
        w = reps[key]
        check = is_transitive(w)
        candidates.append(
            WCandidate(w, check.transitive, check.witness, check.order, tuple(pairs))
        )
    exists = any(c.transitive for c in candidates)
    return WCandidateEnumeration(tuple(candidates), exists, len(j_sets), len(jt_sets))
