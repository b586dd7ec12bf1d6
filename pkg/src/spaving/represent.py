"""Random-matrix representations for matroids with few nonbases.

If the nonbases X_1, ..., X_t of a rank-r matroid M on [n] satisfy the
Hall-style condition

    |X_{i_1} ∩ ... ∩ X_{i_s}| <= r - s   for every subfamily of size s >= 2,

then M is representable over any large enough field, and a generic
matrix in the following shape represents it: row i <= t is zero exactly
on the columns of X_i, rows t+1..r are free, and all remaining entries
are independent generic values.  Zeroing row i on X_i kills the
determinant of each nonbasis; the Hall condition guarantees a system of
distinct representatives so every true basis keeps a nonzero generic
determinant.

Instantiating the generic entries with uniform random integers keeps
every basis determinant nonzero with high probability (the determinants
are not identically zero, so random evaluation rarely hits their zero
sets); verification is exact integer arithmetic, and a failed seed is
simply retried.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .johnson import elements, vertex_masks
from .matroids import BasisMatroid, SparsePavingMatroid, sp_new, sp_to_basis

MIN_BIT_WIDTH = 32


@dataclass(frozen=True)
class ZeroPattern:
    """Which cells of the r x n matrix are pinned to zero."""

    n: int
    r: int
    nonbases: tuple[int, ...]  # X_i zeroes row i (1-based), i <= len(nonbases)

    def zeroed(self, row: int, element: int) -> bool:
        """True iff the cell (row, element), both 1-based, is pinned."""
        if row > len(self.nonbases):
            return False
        return bool(self.nonbases[row - 1] >> (element - 1) & 1)


@dataclass(frozen=True)
class GenericMatrix:
    """An integer instantiation of a ZeroPattern, rows[i][j] at (i+1, j+1)."""

    pattern: ZeroPattern
    rows: tuple[tuple[int, ...], ...]
    seed: int
    bit_width: int


def hall_condition(nonbases, r: int) -> bool:
    """Check the intersection condition over all subfamilies of size >= 2.

    More than r nonbases always fail (the whole family would need a
    negative intersection bound), so the subset scan is at most 2^r.
    """
    family = sorted(nonbases)
    t = len(family)
    if t > r:
        return False
    for s in range(2, t + 1):
        for sub in combinations(family, s):
            meet = sub[0]
            for x in sub[1:]:
                meet &= x
            if meet.bit_count() > r - s:
                return False
    return True


def build_pattern(m: SparsePavingMatroid) -> ZeroPattern:
    """Zero pattern for a sparse paving matroid passing hall_condition."""
    nb = tuple(sorted(m.ch))
    if not hall_condition(nb, m.r):
        raise ValueError("nonbases do not satisfy the Hall condition")
    return ZeroPattern(m.n, m.r, nb)


def instantiate(pattern: ZeroPattern, seed: int, bit_width: int = 64) -> GenericMatrix:
    """Fill the free cells with uniform integers from [1, 2**bit_width).

    Deterministic per seed.  Wider entries shrink the failure
    probability of the random evaluation.
    """
    if bit_width < MIN_BIT_WIDTH:
        raise ValueError(f"bit_width must be >= {MIN_BIT_WIDTH}")
    rng = random.Random(seed)
    rows = tuple(
        tuple(
            0 if pattern.zeroed(i, j) else rng.randrange(1, 1 << bit_width)
            for j in range(1, pattern.n + 1)
        )
        for i in range(1, pattern.r + 1)
    )
    return GenericMatrix(pattern, rows, seed, bit_width)


def bareiss_det(rows) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    m = [list(row) for row in rows]
    size = len(m)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, size):
            row_i, row_k = m[i], m[k]
            lead = row_i[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[-1][-1]


def _submatrix(matrix: GenericMatrix, s: int):
    cols = [e - 1 for e in elements(s)]
    return [[row[c] for c in cols] for row in matrix.rows]


def verify_represents(matrix: GenericMatrix, m) -> bool:
    """Exact check over every r-subset: nonzero determinant iff basis."""
    bases = m.bases if isinstance(m, BasisMatroid) else sp_to_basis(m).bases
    pattern = matrix.pattern
    if (pattern.n, pattern.r) != (m.n, m.r):
        raise ValueError("matrix shape does not match the matroid")
    for s in vertex_masks(m.n, m.r):
        det = bareiss_det(_submatrix(matrix, s))
        if (det != 0) != (s in bases):
            return False
    return True


def matching_exists(pattern: ZeroPattern, basis: int) -> bool:
    """Perfect matching of rows to the basis columns avoiding zeroed cells.

    Kuhn's augmenting-path search on the r x r bipartite graph; this is
    the combinatorial reason generic determinants of bases survive.
    """
    cols = elements(basis)
    if len(cols) != pattern.r:
        raise ValueError("basis has wrong cardinality")
    match: dict[int, int] = {}  # column -> row

    def try_row(row: int, used: set[int]) -> bool:
        for col in cols:
            if col in used or pattern.zeroed(row, col):
                continue
            used.add(col)
            if col not in match or try_row(match[col], used):
                match[col] = row
                return True
        return False

    return all(try_row(row, set()) for row in range(1, pattern.r + 1))


def represent_with_retries(
    m: SparsePavingMatroid, seed: int, bit_width: int = 64, retries: int = 3
) -> tuple[GenericMatrix, int]:
    """Instantiate and verify, advancing the seed on the rare failures.

    Returns (matrix, attempts_used); raises after `retries` failed seeds.
    """
    pattern = build_pattern(m)
    for attempt in range(retries):
        matrix = instantiate(pattern, seed + attempt, bit_width)
        if verify_represents(matrix, m):
            return matrix, attempt + 1
    raise RuntimeError(f"no verifying instantiation within {retries} seeds from {seed}")


def random_hall_matroid(seed: int, max_n: int = 9) -> SparsePavingMatroid:
    """Seeded random sparse paving matroid whose nonbases pass hall_condition.

    Greedy over a shuffled vertex order; the Hall condition subsumes
    stability, so the result always validates.
    """
    rng = random.Random(seed)
    n = rng.randint(5, max_n)
    r = rng.randint(2, n - 2)
    masks = vertex_masks(n, r)
    rng.shuffle(masks)
    target = rng.randint(1, r)
    chosen: list[int] = []
    for x in masks:
        if len(chosen) >= target:
            break
        if hall_condition(chosen + [x], r):
            chosen.append(x)
    return sp_new(n, r, chosen)
