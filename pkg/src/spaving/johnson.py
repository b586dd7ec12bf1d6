"""Subsets of [n] as bitmasks, colex indexing, and the Johnson graph J(n, r).

Ground sets are [n] = {1, ..., n} with n <= 64.  A subset is stored as a
plain int bitmask with element i on bit i-1, so subset operations are
single machine-word instructions.  The r-subsets of [n] are ordered
colexicographically: X < Y iff the largest element of the symmetric
difference lies in Y.  For equal-size masks this coincides with integer
order, which the hot kernels exploit.

J(n, r) has the r-subsets as vertices, with X ~ Y iff |X ∩ Y| = r - 1.
It is regular of valency r(n - r) on C(n, r) vertices.  A family of
r-subsets is *stable* if it is an independent set of J(n, r); stable
families are exactly the circuit-hyperplane families of sparse paving
matroids, which is why everything downstream builds on this module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from .errors import FormatError

# A subset of [n] as a bitmask; element i <-> bit i-1.
ElementSet = int

# Position of an r-subset in colex order, in range(comb(n, r)).
RSubsetIndex = int

MAX_GROUND_SET = 64


@dataclass(frozen=True)
class JohnsonParams:
    """Size parameters of J(n, r): C(n, r) vertices, valency r(n - r)."""

    n: int
    r: int
    vertices: int
    valency: int


def johnson_params(n: int, r: int) -> JohnsonParams:
    if not 0 <= r <= n <= MAX_GROUND_SET:
        raise ValueError(f"need 0 <= r <= n <= {MAX_GROUND_SET}, got n={n} r={r}")
    return JohnsonParams(n, r, comb(n, r), r * (n - r))


def full_mask(n: int) -> ElementSet:
    return (1 << n) - 1


def elements(s: ElementSet) -> list[int]:
    """The 1-based elements of a mask, ascending."""
    out = []
    while s:
        low = s & -s
        out.append(low.bit_length())
        s ^= low
    return out


def from_elements(elems) -> ElementSet:
    s = 0
    for e in elems:
        if e < 1:
            raise ValueError(f"elements are 1-based, got {e}")
        s |= 1 << (e - 1)
    return s


def set_text(s: ElementSet) -> str:
    """Render a mask in the text form "{1,2,5,6}"."""
    return "{" + ",".join(str(e) for e in elements(s)) + "}"


def parse_set_text(text: str) -> ElementSet:
    t = text.strip()
    if not (t.startswith("{") and t.endswith("}")):
        raise FormatError(f"expected braces around element list, got {text!r}")
    body = t[1:-1].strip()
    if not body:
        return 0
    try:
        return from_elements(int(p) for p in body.split(","))
    except ValueError as exc:
        raise FormatError(f"bad element list {text!r}: {exc}") from None


def set_hex(s: ElementSet) -> str:
    """Lowercase hex of the bitmask; the on-disk form of a subset."""
    return format(s, "x")


def parse_set_hex(text: str) -> ElementSet:
    try:
        s = int(text, 16)
    except ValueError:
        raise FormatError(f"bad hex mask {text!r}") from None
    if s < 0:
        raise FormatError(f"negative mask {text!r}")
    return s


def colex_rank(s: ElementSet, r: int) -> RSubsetIndex:
    """Position of an r-subset in colex order: sum of C(e_i - 1, i)."""
    elems = elements(s)
    if len(elems) != r:
        raise ValueError(f"cardinality mismatch: |{set_text(s)}| != r={r}")
    return sum(comb(e - 1, i) for i, e in enumerate(elems, start=1))


def colex_unrank(index: RSubsetIndex, n: int, r: int) -> ElementSet:
    """Inverse of colex_rank on the r-subsets of [n]."""
    total = comb(n, r)
    if not 0 <= index < total:
        raise ValueError(f"index {index} out of range for C({n},{r}) = {total}")
    s = 0
    rem = index
    m = n
    for i in range(r, 0, -1):
        # Largest m with C(m, i) <= rem; element i is then m+1.
        while comb(m, i) > rem:
            m -= 1
        rem -= comb(m, i)
        s |= 1 << m
    return s


def vertex_masks(n: int, r: int) -> list[ElementSet]:
    """All r-subsets of [n] in colex order (ascending as integers)."""
    johnson_params(n, r)
    if r == 0:
        return [0]
    # Gosper's hack walks equal-popcount masks in increasing order.
    out = []
    s = (1 << r) - 1
    limit = 1 << n
    while s < limit:
        out.append(s)
        low = s & -s
        ripple = s + low
        s = ripple | (((s ^ ripple) >> 2) // low)
    return out


def johnson_adjacent(x: ElementSet, y: ElementSet) -> bool:
    """X ~ Y in J(n, r) iff equal size and |X ∩ Y| = r - 1."""
    if x.bit_count() != y.bit_count():
        return False
    return (x & y).bit_count() == x.bit_count() - 1


def neighbors(x: ElementSet, n: int) -> list[ElementSet]:
    """The r(n - r) neighbours of an r-subset in J(n, r)."""
    out = []
    rest = full_mask(n) & ~x
    inside = x
    while inside:
        a = inside & -inside
        inside ^= a
        outside = rest
        while outside:
            b = outside & -outside
            outside ^= b
            out.append((x ^ a) | b)
    return out


def is_stable(family, n: int, r: int) -> bool:
    """True iff the r-subsets are pairwise non-adjacent in J(n, r)."""
    full = full_mask(n)
    sets = list(family)
    for i, x in enumerate(sets):
        if x & ~full or x.bit_count() != r:
            raise ValueError(f"{set_text(x)} is not an r-subset of [{n}]")
        for y in sets[i + 1 :]:
            if (x & y).bit_count() == r - 1:
                return False
    return True


def random_stable_set(n: int, r: int, seed: int, max_size: int | None = None) -> frozenset[ElementSet]:
    """A seeded random stable family in J(n, r).

    Greedy over a shuffled vertex order up to a random target size, so
    small and large families both occur.  Deterministic per seed.
    """
    rng = random.Random(seed)
    masks = vertex_masks(n, r)
    rng.shuffle(masks)
    cap = max_size if max_size is not None else max(1, len(masks) // 4)
    target = rng.randint(0, cap)
    chosen: list[ElementSet] = []
    for x in masks:
        if len(chosen) >= target:
            break
        if all((x & y).bit_count() != r - 1 for y in chosen):
            chosen.append(x)
    return frozenset(chosen)
