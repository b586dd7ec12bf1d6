"""The Ingleton inequality and its checkers.

For subsets A, B, C, D of the ground set of a matroid with rank function
r, the Ingleton inequality is

    r(A∪B) + r(A∪C) + r(A∪D) + r(B∪C) + r(B∪D)
        >= r(A) + r(B) + r(A∪B∪C) + r(A∪B∪D) + r(C∪D).

It holds in every representable matroid; a matroid is *Ingleton* when it
holds for all quadruples.  Two checkers are implemented:

* ingleton_brute evaluates the inequality exhaustively.  Replacing each
  of A, B, C, D by its closure changes no term, so it suffices to scan
  quadruples of flats; that restriction is exact and much smaller than
  the full 16^n membership-vector space, which remains available as
  mode="subsets" for cross-checks.

* ingleton_fast_sp exploits structure special to sparse paving
  matroids.  Violations are governed by patterns built from a core K of
  r-4 elements and four disjoint pairs P1..P4 outside K: the six sets
  K ∪ Pi ∪ Pj are candidate circuit-hyperplanes, and the matroid is
  non-Ingleton iff for some such pattern exactly five of the six lie in
  H (the sixth being a basis).  Every such pattern shares an "opposite"
  pair of members meeting in exactly K, so scanning pairs of
  circuit-hyperplanes with |X ∩ Y| = r - 4 finds all of them.

The checkers are deliberately independent: the brute force knows nothing
about patterns, and their agreement is a tested invariant.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from ._backend import kernel
from .errors import FormatError, ScaleError
from .johnson import parse_set_hex, set_hex
from .matroids import (
    BasisMatroid,
    SparsePavingMatroid,
    contract,
    delete,
    rank_table,
    sp_to_basis,
)

BRUTE_MAX_N = 8


@dataclass(frozen=True)
class IngletonQuadruple:
    """A quadruple with both sides of the inequality evaluated."""

    a: int
    b: int
    c: int
    d: int
    lhs: int
    rhs: int

    @property
    def violated(self) -> bool:
        return self.lhs < self.rhs

    def to_dict(self) -> dict:
        return {
            "A": set_hex(self.a),
            "B": set_hex(self.b),
            "C": set_hex(self.c),
            "D": set_hex(self.d),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass(frozen=True)
class PairPattern:
    """Core of r-4 elements plus four disjoint pairs; the six sets
    core ∪ Pi ∪ Pj drive sparse paving Ingleton violations."""

    core: int
    pairs: tuple[int, int, int, int]  # ascending masks

    def __post_init__(self):
        if list(self.pairs) != sorted(self.pairs):
            raise ValueError("pairs must be sorted ascending")

    def unions(self) -> list[int]:
        """The six sets core ∪ Pi ∪ Pj, for i < j in pair order."""
        return [self.core | p | q for p, q in combinations(self.pairs, 2)]

    def hits(self, ch) -> int:
        return sum(1 for u in self.unions() if u in ch)


@dataclass(frozen=True)
class ViolationWitness:
    """An exactly-five pattern: basis_pair indexes (1-based) the two
    pairs whose union with the core is the basis among the six."""

    pattern: PairPattern
    basis_pair: tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "K": set_hex(self.pattern.core),
            "P": [set_hex(p) for p in self.pattern.pairs],
            "basis_pair": list(self.basis_pair),
        }

    @classmethod
    def from_dict(cls, obj) -> "ViolationWitness":
        try:
            core = parse_set_hex(obj["K"])
            pairs = tuple(parse_set_hex(p) for p in obj["P"])
            i, j = obj["basis_pair"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad witness record: {exc}") from None
        return cls(PairPattern(core, pairs), (i, j))


def eval_quadruple(rank, a: int, b: int, c: int, d: int) -> IngletonQuadruple:
    """Evaluate both sides of the inequality with one rank call per term."""
    lhs = rank(a | b) + rank(a | c) + rank(a | d) + rank(b | c) + rank(b | d)
    rhs = rank(a) + rank(b) + rank(a | b | c) + rank(a | b | d) + rank(c | d)
    return IngletonQuadruple(a, b, c, d, lhs, rhs)


def ingleton_brute(m, mode: str = "flats") -> IngletonQuadruple | None:
    """Exhaustive check of a matroid on n <= 8; None iff Ingleton holds.

    mode="flats" scans quadruples of flats (exact, see module docstring);
    mode="subsets" scans all subsets and exists for cross-validation.
    """
    if m.n > BRUTE_MAX_N:
        raise ScaleError(
            f"exhaustive check refused for n={m.n} > {BRUTE_MAX_N}; "
            "use ingleton_sampled with an explicit budget"
        )
    table = rank_table(m)
    if mode == "flats":
        candidates = kernel.flats_of_table(table, m.n)
    elif mode == "subsets":
        candidates = range(1 << m.n)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    found = kernel.brute_over_quadruples(table, candidates)
    if found is None:
        return None
    quad = eval_quadruple(table.__getitem__, *found)
    assert quad.violated
    return quad


def ingleton_sampled(m, budget: int, seed: int = 0) -> IngletonQuadruple | None:
    """Random quadruple search for ground sets too large to scan.

    Only a found violation is conclusive; None means nothing more than
    that `budget` random quadruples all satisfied the inequality.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    rng = random.Random(seed)
    table = rank_table(m)
    size = 1 << m.n
    for _ in range(budget):
        a, b, c, d = (rng.randrange(size) for _ in range(4))
        quad = eval_quadruple(table.__getitem__, a, b, c, d)
        if quad.violated:
            return quad
    return None


def _pair_splits(quad: int):
    """The three ways to split a 4-element mask into two pairs."""
    bits = []
    s = quad
    while s:
        low = s & -s
        s ^= low
        bits.append(low)
    a = bits[0]
    for partner in bits[1:]:
        p = a | partner
        yield p, quad ^ p


def _scan_patterns(ch, r: int) -> dict[PairPattern, int]:
    """All patterns with at least five of their six unions in ch, with
    hit counts.  Scans member pairs meeting in exactly r - 4 elements;
    an exactly-five pattern is met twice and a full six-pattern three
    times, so results are deduplicated by the pattern itself.
    """
    members = sorted(ch)
    byset = frozenset(members)
    out: dict[PairPattern, int] = {}
    for i, x in enumerate(members):
        for y in members[i + 1 :]:
            core = x & y
            if core.bit_count() != r - 4:
                continue
            for p1, p2 in _pair_splits(x & ~core):
                for p3, p4 in _pair_splits(y & ~core):
                    hits = 2
                    for p, q in ((p1, p3), (p1, p4), (p2, p3), (p2, p4)):
                        if core | p | q in byset:
                            hits += 1
                    if hits >= 5:
                        pat = PairPattern(core, tuple(sorted((p1, p2, p3, p4))))
                        out[pat] = hits
    return out


def pattern_counts(ch, r: int) -> tuple[int, int]:
    """(exactly-five, full-six) pattern counts over a family of r-subsets."""
    if r < 4:
        return 0, 0
    scan = _scan_patterns(ch, r)
    five = sum(1 for h in scan.values() if h == 5)
    six = sum(1 for h in scan.values() if h == 6)
    return five, six


def find_all_witnesses(m: SparsePavingMatroid) -> list[ViolationWitness]:
    """Every exactly-five pattern of the matroid, in canonical order."""
    if m.r < 4 or m.n < 8:
        return []
    out = []
    for pat, hits in _scan_patterns(m.ch, m.r).items():
        if hits != 5:
            continue
        basis_pair = None
        for p, q in combinations(range(4), 2):
            if (pat.core | pat.pairs[p] | pat.pairs[q]) not in m.ch:
                basis_pair = (p + 1, q + 1)
        assert basis_pair is not None
        out.append(ViolationWitness(pat, basis_pair))
    out.sort(key=lambda w: (w.pattern.core, w.pattern.pairs))
    return out


def ingleton_fast_sp(m: SparsePavingMatroid) -> ViolationWitness | None:
    """Structural checker for sparse paving matroids.

    Returns the canonically first exactly-five pattern, or None when the
    matroid is Ingleton.  Rank below 4 (or fewer than 8 elements) never
    violates, so those return None immediately.
    """
    witnesses = find_all_witnesses(m)
    return witnesses[0] if witnesses else None


def witness_to_quadruple(m: SparsePavingMatroid, w: ViolationWitness) -> IngletonQuadruple:
    """The violating quadruple of a witness: relabel the pairs so the
    basis pair sits at positions 3, 4; then A, B, C, D are the pairs
    joined with the core."""
    i, j = w.basis_pair
    rest = [t for t in range(1, 5) if t not in (i, j)]
    order = rest + [i, j]
    a, b, c, d = (w.pattern.core | w.pattern.pairs[t - 1] for t in order)
    quad = eval_quadruple(m.rank, a, b, c, d)
    assert quad.violated, "witness did not convert to a violating quadruple"
    return quad


def minor_witness(m: SparsePavingMatroid, w: ViolationWitness) -> BasisMatroid:
    """Contract the core and delete everything outside the pattern's
    pairs: an 8-element rank-4 non-Ingleton minor (V8 for V8 itself)."""
    support = w.pattern.core
    for p in w.pattern.pairs:
        support |= p
    result = sp_to_basis(m)
    for e in range(m.n, 0, -1):
        bit = 1 << (e - 1)
        if bit & w.pattern.core:
            result = contract(result, e)
        elif not bit & support:
            result = delete(result, e)
    assert result.n == 8 and result.r == 4
    return result


def enumerate_patterns(n: int, r: int):
    """Every PairPattern on [n] at rank r, by direct enumeration.

    Independent of the pair-scan in _scan_patterns; used to cross-check
    pattern counting.  There are C(n,8) * C(n-8, r-4) * 105 of them.
    """
    if r < 4 or n < 8 + (r - 4):
        return
    ground = list(range(n))
    for support in combinations(ground, 8):
        rest = [e for e in ground if e not in support]
        for core_elems in combinations(rest, r - 4):
            core = 0
            for e in core_elems:
                core |= 1 << e
            for pairs in _pairings(list(support)):
                yield PairPattern(core, tuple(sorted(pairs)))


def _pairings(elems: list[int]):
    """Perfect matchings of a list of bit positions, as pair masks."""
    if not elems:
        yield ()
        return
    first = elems[0]
    for i in range(1, len(elems)):
        pair = (1 << first) | (1 << elems[i])
        rest = elems[1:i] + elems[i + 1 :]
        for tail in _pairings(rest):
            yield (pair,) + tail


def pattern_counts_direct(ch, n: int, r: int) -> tuple[int, int]:
    """(exactly-five, full-six) via full pattern enumeration; small n only."""
    ch = frozenset(ch)
    five = six = 0
    for pat in enumerate_patterns(n, r):
        h = pat.hits(ch)
        if h == 5:
            five += 1
        elif h == 6:
            six += 1
    return five, six
