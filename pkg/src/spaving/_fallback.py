"""Pure-Python implementations of the hot kernels.

spaving._kernel (Cython) implements the same five entry points with the
same scan orders, so results are interchangeable; spaving._backend picks
whichever is available.  These versions are the readable reference and
the ones exercised when the compiled extension is missing.

Kernel surface:

* brute_over_quadruples -- exhaustive Ingleton scan over a candidate list
* canonical_masks / is_canonical -- minimal image of a vertex family
  under ground-set permutations
* stable_sets / count_stable -- backtracking over Johnson-graph vertices
* census_scan -- stable sets through vertex 0, canonicalized inline

Rank tables are indexable sequences of length 2**n with table[S] the rank
of the subset with bitmask S.
"""

from __future__ import annotations

from itertools import permutations

KERNEL_KIND = "python"


def permute_mask(mask: int, perm) -> int:
    """Apply an element permutation to a subset mask.

    perm[i] is the 0-based image bit of 0-based bit i.
    """
    out = 0
    while mask:
        low = mask & -mask
        mask ^= low
        out |= 1 << perm[low.bit_length() - 1]
    return out


def flats_of_table(table, n: int) -> list[int]:
    """All flats of a rank table: S with rank(S + e) > rank(S) for e outside S."""
    full = (1 << n) - 1
    out = []
    for s in range(1 << n):
        r = table[s]
        rest = full & ~s
        flat = True
        while rest:
            low = rest & -rest
            rest ^= low
            if table[s | low] == r:
                flat = False
                break
        if flat:
            out.append(s)
    return out


def brute_over_quadruples(table, candidates):
    """First quadruple (A, B, C, D) from the candidate list violating Ingleton.

    Scans A < B and C < D in list order and returns None if the inequality
    holds everywhere.  Equal pairs are skipped: with A = B or C = D the
    inequality follows from submodularity, so nothing is lost.

    The test per pair (A, B) is arranged around F = r(A|B) - r(A) - r(B)
    and G[X] = r(A|X) + r(B|X) - r(A|B|X); the quadruple violates iff
    G[C] + G[D] - r(C|D) < -F.  Both G[X] >= r(X) and r(C|D) <= r(E)
    give cheap lower bounds that prune most pairs.
    """
    sets = list(candidates)
    m = len(sets)
    if m == 0:
        return None
    rank_full = table[max(sets)]  # candidates always include the closure of E
    for ia in range(m):
        a = sets[ia]
        ra = table[a]
        for ib in range(ia + 1, m):
            b = sets[ib]
            ab = a | b
            f = table[ab] - ra - table[b]
            if f >= 0:
                continue
            need = -f
            g = [table[a | x] + table[b | x] - table[ab | x] for x in sets]
            min_g = min(g)
            if 2 * min_g - rank_full >= need:
                continue
            min_slack = min(gx - table[x] for gx, x in zip(g, sets))
            if 2 * min_slack >= need:
                continue
            for ic in range(m):
                c = sets[ic]
                gc = g[ic]
                for idx in range(ic + 1, m):
                    if gc + g[idx] - table[c | sets[idx]] < need:
                        return a, b, c, sets[idx]
    return None


def _anchored_perms(w: int, n: int, r: int):
    """Element permutations sending the r-set w onto {bits 0..r-1}.

    Exactly the permutations that can realize the minimal image of a
    nonempty family anchored at w.
    """
    we = []
    oe = []
    for i in range(n):
        (we if (w >> i) & 1 else oe).append(i)
    targets_low = list(range(r))
    targets_high = list(range(r, n))
    perm = [0] * n
    for pa in permutations(targets_low):
        for i, e in enumerate(we):
            perm[e] = pa[i]
        for pb in permutations(targets_high):
            for i, e in enumerate(oe):
                perm[e] = pb[i]
            yield perm


def canonical_masks(masks, n: int, r: int) -> tuple[int, ...]:
    """Lexicographically minimal sorted image of a family of r-subset masks
    over all n! ground-set permutations.

    For equal-size masks colex order is integer order, so minimizing this
    vector also minimizes the packed census code built from it.  Only
    permutations anchoring some member onto {1..r} can be minimal, which
    cuts n! to |family| * r! * (n-r)!.
    """
    family = sorted(masks)
    if not family:
        return ()
    best = None
    for w in family:
        for perm in _anchored_perms(w, n, r):
            img = sorted(permute_mask(x, perm) for x in family)
            if best is None or img < best:
                best = img
    return tuple(best)


def is_canonical(masks, n: int, r: int) -> bool:
    """True iff the sorted family is the minimal image in its orbit."""
    family = sorted(masks)
    if not family:
        return True
    for w in family:
        for perm in _anchored_perms(w, n, r):
            img = sorted(permute_mask(x, perm) for x in family)
            if img < family:
                return False
    return True


def stable_sets(adj_masks, max_size=None):
    """Yield every stable set of the graph as an ascending tuple of vertex
    indices, in depth-first pre-order; adj_masks[v] is a bitmask over
    vertex indices.  The empty set comes first.
    """
    chosen: list[int] = []

    def rec(start: int, blocked: int):
        yield tuple(chosen)
        if max_size is not None and len(chosen) >= max_size:
            return
        for v in range(start, len(adj_masks)):
            if not (blocked >> v) & 1:
                chosen.append(v)
                yield from rec(v + 1, blocked | adj_masks[v])
                chosen.pop()

    yield from rec(0, 0)


def count_stable(adj_masks, max_size=None) -> int:
    n = 0
    for _ in stable_sets(adj_masks, max_size):
        n += 1
    return n


def census_scan(vertex_masks, adj_masks, n: int, r: int, seconds):
    """Canonical codes of stable sets {v0} ∪ {v1} ∪ ... with v1 in seconds.

    Enumerates stable sets whose two smallest vertices are 0 and v1,
    canonicalizes each, and returns (codes in first-seen order, node count).
    Splitting on v1 is the unit of parallelism for the census.
    """
    seen: dict[bytes, None] = {}
    nodes = 0
    chosen: list[int] = []

    def record():
        canon = canonical_masks([vertex_masks[v] for v in chosen], n, r)
        key = b"".join(m.to_bytes(2, "little") for m in canon)
        if key not in seen:
            seen[key] = None

    def rec(start: int, blocked: int):
        nonlocal nodes
        nodes += 1
        record()
        for v in range(start, len(adj_masks)):
            if not (blocked >> v) & 1:
                chosen.append(v)
                rec(v + 1, blocked | adj_masks[v])
                chosen.pop()

    base_blocked = adj_masks[0] | 1
    for v1 in seconds:
        if (base_blocked >> v1) & 1:
            continue
        chosen = [0, v1]
        rec(v1 + 1, base_blocked | adj_masks[v1] | (1 << v1))
    return list(seen.keys()), nodes
