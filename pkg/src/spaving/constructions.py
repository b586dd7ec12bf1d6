"""Constructions of sparse paving matroids.

The sum coloring of Graham and Sloane assigns the r-subset X the color
sum(X) mod n.  Adjacent vertices of J(n, r) differ in one element, so
their colors differ by a nonzero amount mod n: every color class is
stable, and the largest class has at least C(n, r)/n members.  Each
class is therefore the circuit-hyperplane family of a sparse paving
matroid on [n], and these matroids turn out to satisfy the Ingleton
inequality.

Also here: the Vámos matroid V8 (the smallest non-Ingleton sparse paving
matroid) and the two three-element direct sums that accompany it in the
excluded-minor characterization.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import FormatError
from .johnson import elements, from_elements, vertex_masks
from .matroids import BasisMatroid, SparsePavingMatroid, sp_new

# Circuit-hyperplanes of V8: the pairs {1,2},{3,4},{5,6},{7,8} give six
# pair-unions; all but {5,6,7,8} are circuit-hyperplanes.
VAMOS_CH = (
    frozenset({1, 2, 3, 4}),
    frozenset({1, 2, 5, 6}),
    frozenset({1, 2, 7, 8}),
    frozenset({3, 4, 5, 6}),
    frozenset({3, 4, 7, 8}),
)


@dataclass(frozen=True)
class GsColoring:
    """Class sizes of the sum coloring on J(n, r); sizes sum to C(n, r)."""

    n: int
    r: int
    class_sizes: tuple[int, ...]


def gs_color(x: int, n: int) -> int:
    """Color of an r-subset mask: sum of its 1-based elements mod n."""
    return sum(elements(x)) % n


def gs_class_sizes(n: int, r: int) -> GsColoring:
    sizes = [0] * n
    for x in vertex_masks(n, r):
        sizes[gs_color(x, n)] += 1
    return GsColoring(n, r, tuple(sizes))


def gs_matroid(n: int, r: int, gamma: int) -> SparsePavingMatroid:
    """Sparse paving matroid whose circuit-hyperplanes are one color class."""
    if not 0 <= gamma < n:
        raise ValueError(f"color {gamma} out of range for n={n}")
    ch = [x for x in vertex_masks(n, r) if gs_color(x, n) == gamma]
    return sp_new(n, r, ch)


def gs_best(n: int, r: int) -> tuple[int, SparsePavingMatroid]:
    """The largest color class (smallest color on ties).

    Its size is at least C(n, r)/n by pigeonhole.
    """
    sizes = gs_class_sizes(n, r).class_sizes
    gamma = max(range(n), key=lambda g: (sizes[g], -g))
    m = gs_matroid(n, r, gamma)
    assert len(m.ch) * n >= comb(n, r)
    return gamma, m


def vamos() -> SparsePavingMatroid:
    return sp_new(8, 4, [from_elements(s) for s in VAMOS_CH])


def named(name: str):
    """Look up a matroid by name.

    Accepts "vamos", "uniform:R,N", "u02_plus_u11", "u22_plus_u01".
    """
    key = name.strip().lower()
    if key == "vamos":
        return vamos()
    if key.startswith("uniform:"):
        try:
            r_text, n_text = key.removeprefix("uniform:").split(",")
            r, n = int(r_text), int(n_text)
        except ValueError:
            raise FormatError(f"expected uniform:R,N, got {name!r}") from None
        return sp_new(n, r, [])
    if key == "u02_plus_u11":
        # Two loops plus a coloop: rank 1 on {1,2,3}, only basis {3}.
        return BasisMatroid(3, 1, frozenset({0b100}))
    if key == "u22_plus_u01":
        # Two coloops plus a loop: rank 2 on {1,2,3}, only basis {1,2}.
        return BasisMatroid(3, 2, frozenset({0b011}))
    raise FormatError(f"unknown matroid name {name!r}")
