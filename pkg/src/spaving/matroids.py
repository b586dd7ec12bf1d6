"""Sparse paving matroids and basis-family matroids on small ground sets.

A sparse paving matroid of rank r on [n] is determined by its set H of
circuit-hyperplanes, which is an arbitrary stable family in J(n, r):

    rank(S) = r - 1   if |S| = r and S in H,
              min(|S|, r)   otherwise.

Empty H gives the uniform matroid U(r, n).  The general representation
used for duals and minors is the family of bases; its rank function is
rank(S) = max over bases B of |B ∩ S|.

Isomorphism is decided by a canonical form: the lexicographically
minimal colex-indexed basis-indicator bit array over all n! ground-set
permutations.  Minimizing that bit string is the same as minimizing the
sorted vector of nonbasis masks, which is what the kernel computes.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from math import comb

from ._backend import kernel
from .errors import FormatError, StabilityError
from .johnson import (
    colex_rank,
    full_mask,
    johnson_params,
    parse_set_hex,
    set_hex,
    set_text,
    vertex_masks,
)

CANONICAL_FORM_MAX_N = 12


@dataclass(frozen=True)
class SparsePavingMatroid:
    n: int
    r: int
    ch: frozenset[int]  # circuit-hyperplanes as r-subset masks

    def rank(self, s: int) -> int:
        return sp_rank(self, s)

    @property
    def bases(self) -> frozenset[int]:
        return sp_to_basis(self).bases


@dataclass(frozen=True)
class BasisMatroid:
    n: int
    r: int
    bases: frozenset[int]

    def rank(self, s: int) -> int:
        return bm_rank(self, s)


@dataclass(frozen=True)
class CanonicalForm:
    """Isomorphism invariant: equal forms iff isomorphic matroids."""

    n: int
    r: int
    code: bytes

    def hex(self) -> str:
        return self.code.hex()


def sp_new(n: int, r: int, ch) -> SparsePavingMatroid:
    """Validated constructor; raises StabilityError naming an offending pair."""
    params = johnson_params(n, r)
    family = frozenset(ch)
    if family:
        if not 0 < r < n:
            raise ValueError(f"circuit-hyperplanes need 0 < r < n, got n={n} r={r}")
        if len(family) >= params.vertices:
            raise ValueError("a matroid needs at least one basis")
        full = full_mask(n)
        sets = sorted(family)
        for i, x in enumerate(sets):
            if x & ~full or x.bit_count() != r:
                raise ValueError(f"{set_text(x)} is not an r-subset of [{n}]")
            for y in sets[i + 1 :]:
                if (x & y).bit_count() == r - 1:
                    raise StabilityError(x, y, n, r)
    return SparsePavingMatroid(n, r, family)


def sp_rank(m: SparsePavingMatroid, s: int) -> int:
    size = s.bit_count()
    if size == m.r and s in m.ch:
        return m.r - 1
    return min(size, m.r)


def sp_to_basis(m: SparsePavingMatroid) -> BasisMatroid:
    """Bases are the r-subsets outside H; exchange holds by construction."""
    bases = frozenset(x for x in vertex_masks(m.n, m.r) if x not in m.ch)
    return BasisMatroid(m.n, m.r, bases)


def basis_to_sp(m: BasisMatroid) -> SparsePavingMatroid:
    """Inverse of sp_to_basis; raises if m is not sparse paving."""
    if not is_sparse_paving(m):
        raise ValueError("matroid is not sparse paving")
    ch = frozenset(x for x in vertex_masks(m.n, m.r) if x not in m.bases)
    return sp_new(m.n, m.r, ch)


def bm_rank(m: BasisMatroid, s: int) -> int:
    return max((b & s).bit_count() for b in m.bases)


def dual(m: BasisMatroid) -> BasisMatroid:
    full = full_mask(m.n)
    return BasisMatroid(m.n, m.n - m.r, frozenset(full & ~b for b in m.bases))


def sp_dual(m: SparsePavingMatroid) -> SparsePavingMatroid:
    """Dual of a sparse paving matroid: complement every circuit-hyperplane.

    Agrees with dual(sp_to_basis(m)) because nonbases dualize to
    complements of nonbases.
    """
    full = full_mask(m.n)
    return sp_new(m.n, m.n - m.r, frozenset(full & ~x for x in m.ch))


def _drop_element(s: int, e: int) -> int:
    """Remove element e from a mask and shift higher elements down by one."""
    bit = 1 << (e - 1)
    low = s & (bit - 1)
    high = s >> e
    return low | (high << (e - 1))


def delete(m: BasisMatroid, e: int) -> BasisMatroid:
    """Delete element e (1-based); ground set relabels to [n-1] in order."""
    if not 1 <= e <= m.n:
        raise ValueError(f"element {e} not in [{m.n}]")
    bit = 1 << (e - 1)
    keep = [b for b in m.bases if not b & bit]
    if keep:
        bases = frozenset(_drop_element(b, e) for b in keep)
        return BasisMatroid(m.n - 1, m.r, bases)
    # e is a coloop: every basis contains it and the rank drops.
    bases = frozenset(_drop_element(b & ~bit, e) for b in m.bases)
    return BasisMatroid(m.n - 1, m.r - 1, bases)


def contract(m: BasisMatroid, e: int) -> BasisMatroid:
    return dual(delete(dual(m), e))


def relax(m: SparsePavingMatroid, x: int) -> SparsePavingMatroid:
    """Turn the circuit-hyperplane x into a basis."""
    if x not in m.ch:
        raise ValueError(f"{set_text(x)} is not a circuit-hyperplane")
    return SparsePavingMatroid(m.n, m.r, m.ch - {x})


def is_paving(m: BasisMatroid) -> bool:
    """Every (r-1)-subset independent; smaller sets follow by monotonicity."""
    if m.r == 0:
        return True
    return all(bm_rank(m, s) == m.r - 1 for s in vertex_masks(m.n, m.r - 1))


def is_sparse_paving(m: BasisMatroid) -> bool:
    return is_paving(m) and is_paving(dual(m))


def exchange_check(m: BasisMatroid) -> bool:
    """Verify the basis-exchange axiom pairwise; quadratic in |bases|."""
    if not m.bases:
        return False
    bases = sorted(m.bases)
    if any(b.bit_count() != m.r or b & ~full_mask(m.n) for b in bases):
        return False
    for b1 in bases:
        for b2 in bases:
            only1 = b1 & ~b2
            rest = only1
            while rest:
                x = rest & -rest
                rest ^= x
                cands = b2 & ~b1
                ok = False
                while cands:
                    y = cands & -cands
                    cands ^= y
                    if (b1 ^ x) | y in m.bases:
                        ok = True
                        break
                if not ok:
                    return False
    return True


def nonbases(m: BasisMatroid) -> frozenset[int]:
    return frozenset(x for x in vertex_masks(m.n, m.r) if x not in m.bases)


def canonical_form(m) -> CanonicalForm:
    """Canonical form of a SparsePavingMatroid or BasisMatroid; n <= 12.

    The code packs the basis indicator over colex positions LSB-first,
    minimized over all ground-set permutations.
    """
    if m.n > CANONICAL_FORM_MAX_N:
        raise ValueError(f"canonical_form supports n <= {CANONICAL_FORM_MAX_N}")
    if isinstance(m, SparsePavingMatroid):
        nb = m.ch
    else:
        nb = nonbases(m)
    canon = kernel.canonical_masks(sorted(nb), m.n, m.r)
    return CanonicalForm(m.n, m.r, pack_code(canon, m.n, m.r))


def pack_code(nonbasis_masks, n: int, r: int) -> bytes:
    """Basis-indicator bit array from a family of nonbasis masks."""
    total = comb(n, r)
    buf = bytearray([0xFF] * ((total + 7) // 8))
    extra = 8 * len(buf) - total
    if extra:
        buf[-1] = 0xFF >> extra
    for x in nonbasis_masks:
        i = colex_rank(x, r)
        buf[i >> 3] &= ~(1 << (i & 7))
    return bytes(buf)


def unpack_code(code: bytes, n: int, r: int) -> frozenset[int]:
    """Nonbasis masks encoded by a basis-indicator code."""
    total = comb(n, r)
    if len(code) != (total + 7) // 8:
        raise FormatError(f"code length {len(code)} wrong for C({n},{r}) = {total}")
    masks = vertex_masks(n, r)
    out = []
    for i in range(total):
        if not (code[i >> 3] >> (i & 7)) & 1:
            out.append(masks[i])
    return frozenset(out)


def is_isomorphic(m1, m2) -> bool:
    if (m1.n, m1.r) != (m2.n, m2.r):
        return False
    return canonical_form(m1) == canonical_form(m2)


def permute_sp(m: SparsePavingMatroid, perm) -> SparsePavingMatroid:
    """Relabel by an element permutation; perm[i] is the image bit of bit i."""
    return SparsePavingMatroid(m.n, m.r, frozenset(kernel.permute_mask(x, perm) for x in m.ch))


def permute_basis(m: BasisMatroid, perm) -> BasisMatroid:
    return BasisMatroid(m.n, m.r, frozenset(kernel.permute_mask(b, perm) for b in m.bases))


def rank_table(m) -> bytearray:
    """rank(S) for every subset mask S of [n]; the brute checker's input."""
    size = 1 << m.n
    table = bytearray(size)
    if isinstance(m, SparsePavingMatroid):
        for s in range(size):
            table[s] = sp_rank(m, s)
    else:
        bases = sorted(m.bases)
        for s in range(size):
            table[s] = max((b & s).bit_count() for b in bases)
    return table


def to_json(m) -> str:
    """One-line JSON record; sparse paving uses "ch", general uses "bases"."""
    if isinstance(m, SparsePavingMatroid):
        body = {"n": m.n, "r": m.r, "ch": [set_hex(x) for x in sorted(m.ch)]}
    else:
        body = {"n": m.n, "r": m.r, "bases": [set_hex(b) for b in sorted(m.bases)]}
    return json.dumps(body, separators=(",", ":"))


def from_json(text: str):
    """Parse a matroid record; returns SparsePavingMatroid or BasisMatroid."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad matroid JSON: {exc}") from None
    if not isinstance(obj, dict) or "n" not in obj or "r" not in obj:
        raise FormatError("matroid JSON needs n and r")
    n, r = obj["n"], obj["r"]
    if not (isinstance(n, int) and isinstance(r, int)):
        raise FormatError("n and r must be integers")
    if "ch" in obj:
        ch = [parse_set_hex(s) for s in obj["ch"]]
        return sp_new(n, r, ch)
    if "bases" in obj:
        bases = frozenset(parse_set_hex(s) for s in obj["bases"])
        if not bases:
            raise FormatError("empty basis list")
        m = BasisMatroid(n, r, bases)
        if any(b.bit_count() != r for b in bases):
            raise FormatError("basis of wrong cardinality")
        return m
    raise FormatError('matroid JSON needs a "ch" or "bases" field')


def stable_hash(m) -> str:
    """Content hash used in representation certificates."""
    return hashlib.sha256(to_json(m).encode()).hexdigest()
