"""Negative definite unimodular integral forms.

Characteristic-vector enumeration over a coordinate box, maximization of
the characteristic square (the realizability bound c.c <= -rank), and a
desk-scale search for an orthogonal basis of square -1 vectors.  The
even rank-8 form ships as a fixture: it has no square -1 vectors and its
characteristic maximum is 0 rather than -8, which is exactly the pattern
that cannot occur as the intersection form of a smooth manifold of this
kind.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GuardViolation


def _int_det(rows: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class QuadraticForm:
    """Unimodular negative definite symmetric integer matrix.

    Rank 0 (the empty form) is allowed so that the b2 = 0 case of the
    maximal-square construction goes through trivially.
    """

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        rows = [list(r) for r in gram]
        if abs(_int_det(rows)) != 1:
            raise ValueError("form must be unimodular")
        for k in range(1, n + 1):
            minor = _int_det([row[:k] for row in rows[:k]])
            if minor * (-1) ** k <= 0:
                raise ValueError("form must be negative definite")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def evaluate(self, v: Sequence[int]) -> int:
        return sum(v[i] * self.gram[i][j] * v[j]
                   for i in range(self.rank) for j in range(self.rank))

    def pairing(self, v: Sequence[int], w: Sequence[int]) -> int:
        return sum(v[i] * self.gram[i][j] * w[j]
                   for i in range(self.rank) for j in range(self.rank))


def diagonal_form(rank: int) -> QuadraticForm:
    """diag(-1, ..., -1) of the given rank."""
    return QuadraticForm(tuple(
        tuple(-1 if i == j else 0 for j in range(rank)) for i in range(rank)))


def e8_form() -> QuadraticForm:
    """The negative definite even rank-8 form (negated Cartan matrix)."""
    edges = {(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)}
    gram = [[0] * 8 for _ in range(8)]
    for i in range(8):
        gram[i][i] = -2
    for i, j in edges:
        gram[i][j] = gram[j][i] = 1
    return QuadraticForm(tuple(tuple(r) for r in gram))


def _box(rank: int, bound: int) -> np.ndarray:
    """All integer vectors with coordinates in [-bound, bound], in
    descending lexicographic order."""
    if (2 * bound + 1) ** rank > 5_000_000:
        raise GuardViolation(
            f"search box (2*{bound}+1)^{rank} exceeds the desk-scale limit",
            requirement="desk-scale enumeration")
    axis = np.arange(bound, -bound - 1, -1, dtype=np.int64)
    grids = np.meshgrid(*([axis] * rank), indexing="ij")
    return np.stack(grids, axis=-1).reshape(-1, rank)


def _characteristic_mask(q: QuadraticForm, vectors: np.ndarray) -> np.ndarray:
    g = np.array(q.gram, dtype=np.int64)
    diag = g.diagonal()
    prods = vectors @ g
    return ((prods - diag) % 2 == 0).all(axis=1)


def characteristic_vectors(q: QuadraticForm, bound: int) -> list[tuple[int, ...]]:
    """All c in the box with c.x = x.x mod 2 for every basis vector x."""
    if bound < 1:
        raise GuardViolation("search bound must be at least 1", requirement="bound >= 1")
    if q.rank == 0:
        return [()]
    vectors = _box(q.rank, bound)
    mask = _characteristic_mask(q, vectors)
    return [tuple(int(x) for x in row) for row in vectors[mask]]


@dataclass(frozen=True)
class MaxSquareResult:
    value: int
    achiever: tuple[int, ...]
    bound_limited: bool


def max_characteristic_square(q: QuadraticForm, bound: int) -> MaxSquareResult:
    """Maximum of c.c over characteristic vectors in the box.

    ``bound_limited`` is set when the diagonal certificate -rank is not
    attained, signalling either a too-small box or a form with no
    orthogonal square -1 basis.
    """
    if bound < 1:
        raise GuardViolation("search bound must be at least 1", requirement="bound >= 1")
    if q.rank == 0:
        return MaxSquareResult(0, (), False)
    vectors = _box(q.rank, bound)
    mask = _characteristic_mask(q, vectors)
    chars = vectors[mask]
    if len(chars) == 0:
        raise GuardViolation("no characteristic vectors inside the box",
                             requirement="bound large enough")
    g = np.array(q.gram, dtype=np.int64)
    squares = np.einsum("ij,jk,ik->i", chars, g, chars)
    best = int(squares.max())
    achiever = tuple(int(x) for x in chars[int(np.argmax(squares))])
    return MaxSquareResult(best, achiever, best != -q.rank)


def diagonalize(q: QuadraticForm, depth: int) -> tuple[tuple[int, ...], ...] | None:
    """Search for a pairwise orthogonal basis of square -1 vectors.

    Vectors are drawn from the coordinate box of the given depth and
    extended depth-first; the result, when found, is a basis in which
    the form is exactly diag(-1, ..., -1).  None means the search failed,
    which is conclusive only for small ranks.
    """
    if q.rank > 8:
        raise GuardViolation("diagonalization search is limited to rank <= 8",
                             requirement="rank <= 8")
    if depth < 1:
        raise GuardViolation("search depth must be at least 1", requirement="depth >= 1")
    if q.rank == 0:
        return ()
    vectors = _box(q.rank, depth)
    g = np.array(q.gram, dtype=np.int64)
    squares = np.einsum("ij,jk,ik->i", vectors, g, vectors)
    candidates = vectors[squares == -1]
    if len(candidates) == 0:
        return None
    pair = candidates @ g @ candidates.T

    chosen: list[int] = []

    def extend(start: int) -> bool:
        if len(chosen) == q.rank:
            return True
        for idx in range(start, len(candidates)):
            if all(pair[idx][c] == 0 for c in chosen):
                chosen.append(idx)
                if extend(idx + 1):
                    return True
                chosen.pop()
        return False

    if not extend(0):
        return None
    basis = tuple(tuple(int(x) for x in candidates[i]) for i in chosen)
    for i, v in enumerate(basis):
        for j, w in enumerate(basis):
            expected = -1 if i == j else 0
            if q.pairing(v, w) != expected:
                raise AssertionError("diagonalization postcondition failed")
    return basis


@dataclass(frozen=True)
class SpincResult:
    vector: tuple[int, ...]
    square: int


def spinc_with_max_square(q: QuadraticForm, bound: int) -> SpincResult | None:
    """Characteristic vector of square -rank via a diagonalizing basis.

    Returns the sum of the basis vectors (the all-ones vector in the new
    basis), certified characteristic; None when no diagonalizing basis is
    found inside the box.
    """
    basis = diagonalize(q, bound)
    if basis is None:
        return None
    vector = tuple(sum(v[i] for v in basis) for i in range(q.rank))
    square = q.evaluate(vector)
    if square != -q.rank:
        raise AssertionError("sum of a diag(-1) basis must have square -rank")
    for i in range(q.rank):
        basis_vec = [1 if j == i else 0 for j in range(q.rank)]
        if (q.pairing(vector, basis_vec) - q.evaluate(basis_vec)) % 2 != 0:
            raise AssertionError("constructed vector is not characteristic")
    return SpincResult(vector, square)
