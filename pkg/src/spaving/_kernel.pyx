# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the spaving._fallback kernels.

Same entry points, same scan orders, same results, only faster; the
import-time selector in spaving._backend prefers this module when the
extension built.  Calls outside the supported envelope (more than 128
graph vertices, families over 256 sets, ground sets over 16 elements)
drop back to the pure implementations, so behaviour is identical
everywhere and only the speed differs.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdint cimport uint64_t
from libc.string cimport memcpy

from . import _fallback

KERNEL_KIND = "cython"

cdef enum:
    FAM_CAP = 256
    VERT_CAP = 128
    BRUTE_CAP = 4096

cdef extern from *:
    int __builtin_ctz(unsigned int) nogil


cdef inline int _ctzll(unsigned long long x) nogil:
    cdef int b = 0
    while not x & 1:
        x >>= 1
        b += 1
    return b


def permute_mask(mask, perm):
    """Apply an element permutation to a subset mask.

    perm[i] is the 0-based image bit of 0-based bit i.
    """
    cdef unsigned long long m = mask, low
    out = 0
    while m:
        low = m & (~m + 1)
        m ^= low
        out |= 1 << perm[_ctzll(low)]
    return out


def flats_of_table(table, n):
    """All flats of a rank table: S with rank(S + e) > rank(S) for e outside S."""
    cdef bytes tbl = bytes(table)
    cdef const unsigned char* tp = tbl
    cdef long full = (1 << n) - 1, s, rest, low
    cdef int r
    cdef bint flat
    out = []
    for s in range(1 << n):
        r = tp[s]
        rest = full & ~s
        flat = True
        while rest:
            low = rest & (-rest)
            rest ^= low
            if tp[s | low] == r:
                flat = False
                break
        if flat:
            out.append(s)
    return out


def brute_over_quadruples(table, candidates):
    """First quadruple (A, B, C, D) from the candidate list violating Ingleton.

    Mirror of the reference implementation: identical scan order and
    pruning, so both return the same quadruple or both return None.
    """
    sets_list = list(candidates)
    cdef int m = len(sets_list)
    if m == 0:
        return None
    if m > BRUTE_CAP:
        return _fallback.brute_over_quadruples(table, sets_list)
    cdef bytes tbl = bytes(table)
    cdef const unsigned char* tp = tbl
    cdef int sets[BRUTE_CAP]
    cdef int g[BRUTE_CAP]
    cdef int i, ia, ib, ic, idx, a, b, ab, ra, f, need, gi, slack
    cdef int min_g, min_slack, gc, maxs, rank_full
    for i in range(m):
        sets[i] = sets_list[i]
    maxs = sets[0]
    for i in range(1, m):
        if sets[i] > maxs:
            maxs = sets[i]
    rank_full = tp[maxs]  # candidates always include the closure of E
    for ia in range(m):
        a = sets[ia]
        ra = tp[a]
        for ib in range(ia + 1, m):
            b = sets[ib]
            ab = a | b
            f = tp[ab] - ra - tp[b]
            if f >= 0:
                continue
            need = -f
            min_g = 1 << 20
            min_slack = 1 << 20
            for i in range(m):
                gi = tp[a | sets[i]] + tp[b | sets[i]] - tp[ab | sets[i]]
                g[i] = gi
                if gi < min_g:
                    min_g = gi
                slack = gi - tp[sets[i]]
                if slack < min_slack:
                    min_slack = slack
            if 2 * min_g - rank_full >= need:
                continue
            if 2 * min_slack >= need:
                continue
            for ic in range(m):
                gc = g[ic]
                for idx in range(ic + 1, m):
                    if gc + g[idx] - tp[sets[ic] | sets[idx]] < need:
                        return sets[ia], sets[ib], sets[ic], sets[idx]
    return None


cdef inline unsigned int _pmask(unsigned int mask, const unsigned char* perm) nogil:
    cdef unsigned int out = 0, low
    while mask:
        low = mask & (~mask + 1)
        mask ^= low
        out |= 1u << perm[__builtin_ctz(low)]
    return out


cdef bint _next_perm(unsigned char* a, int ln) nogil:
    cdef int i = ln - 2, j
    cdef unsigned char t
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = ln - 1
    while a[j] <= a[i]:
        j -= 1
    t = a[i]; a[i] = a[j]; a[j] = t
    i += 1
    j = ln - 1
    while i < j:
        t = a[i]; a[i] = a[j]; a[j] = t
        i += 1
        j -= 1
    return True


cdef void _min_image(const unsigned short* fam, int k, int n, int r,
                     unsigned short* best) nogil:
    """Write the lex-min sorted image of the ascending family into best.

    Enumerates only permutations anchoring some member onto the low r
    bits, the same family of candidates the reference version scans.
    """
    cdef unsigned char we[16]
    cdef unsigned char oe[16]
    cdef unsigned char palow[16]
    cdef unsigned char phigh[16]
    cdef unsigned char perm[16]
    cdef unsigned short img[FAM_CAP]
    cdef unsigned short t
    cdef unsigned int w
    cdef int wi, i, j, nw, no
    cdef bint have = False
    for wi in range(k):
        w = fam[wi]
        nw = 0
        no = 0
        for i in range(n):
            if (w >> i) & 1:
                we[nw] = i
                nw += 1
            else:
                oe[no] = i
                no += 1
        for i in range(r):
            palow[i] = i
        while True:
            for i in range(r):
                perm[we[i]] = palow[i]
            for i in range(n - r):
                phigh[i] = r + i
            while True:
                for i in range(n - r):
                    perm[oe[i]] = phigh[i]
                for i in range(k):
                    img[i] = <unsigned short> _pmask(fam[i], perm)
                    j = i
                    while j > 0 and img[j - 1] > img[j]:
                        t = img[j - 1]; img[j - 1] = img[j]; img[j] = t
                        j -= 1
                if not have:
                    memcpy(best, img, k * sizeof(unsigned short))
                    have = True
                else:
                    for i in range(k):
                        if img[i] != best[i]:
                            if img[i] < best[i]:
                                memcpy(best, img, k * sizeof(unsigned short))
                            break
                if not _next_perm(phigh, n - r):
                    break
            if not _next_perm(palow, r):
                break


cdef bint _smaller_exists(const unsigned short* fam, int k, int n, int r) nogil:
    """True iff some anchored image sorts strictly below the family itself."""
    cdef unsigned char we[16]
    cdef unsigned char oe[16]
    cdef unsigned char palow[16]
    cdef unsigned char phigh[16]
    cdef unsigned char perm[16]
    cdef unsigned short img[FAM_CAP]
    cdef unsigned short t
    cdef unsigned int w
    cdef int wi, i, j, nw, no, cmp
    for wi in range(k):
        w = fam[wi]
        nw = 0
        no = 0
        for i in range(n):
            if (w >> i) & 1:
                we[nw] = i
                nw += 1
            else:
                oe[no] = i
                no += 1
        for i in range(r):
            palow[i] = i
        while True:
            for i in range(r):
                perm[we[i]] = palow[i]
            for i in range(n - r):
                phigh[i] = r + i
            while True:
                for i in range(n - r):
                    perm[oe[i]] = phigh[i]
                for i in range(k):
                    img[i] = <unsigned short> _pmask(fam[i], perm)
                    j = i
                    while j > 0 and img[j - 1] > img[j]:
                        t = img[j - 1]; img[j - 1] = img[j]; img[j] = t
                        j -= 1
                cmp = 0
                for i in range(k):
                    if img[i] != fam[i]:
                        cmp = -1 if img[i] < fam[i] else 1
                        break
                if cmp < 0:
                    return True
                if not _next_perm(phigh, n - r):
                    break
            if not _next_perm(palow, r):
                break
    return False


def canonical_masks(masks, n, r):
    """Lexicographically minimal sorted image of a family of r-subset masks
    over all ground-set permutations."""
    family = sorted(masks)
    cdef int k = len(family)
    if k == 0:
        return ()
    if k > FAM_CAP or n > 16:
        return _fallback.canonical_masks(masks, n, r)
    cdef unsigned short fam[FAM_CAP]
    cdef unsigned short best[FAM_CAP]
    cdef int i
    for i in range(k):
        fam[i] = family[i]
    _min_image(fam, k, n, r, best)
    return tuple(best[i] for i in range(k))


def is_canonical(masks, n, r):
    """True iff the sorted family is the minimal image in its orbit."""
    family = sorted(masks)
    cdef int k = len(family)
    if k == 0:
        return True
    if k > FAM_CAP or n > 16:
        return _fallback.is_canonical(masks, n, r)
    cdef unsigned short fam[FAM_CAP]
    cdef int i
    for i in range(k):
        fam[i] = family[i]
    return not _smaller_exists(fam, k, n, r)


def stable_sets(adj_masks, max_size=None):
    # The generator path is Python-bound either way; reuse the reference.
    return _fallback.stable_sets(adj_masks, max_size)


cdef long long _count_rec(const uint64_t* adjlo, const uint64_t* adjhi, int N,
                          int start, uint64_t blo, uint64_t bhi, int room) nogil:
    cdef long long total = 1
    cdef int v
    if room == 0:
        return 1
    for v in range(start, N):
        if v < 64:
            if (blo >> v) & 1:
                continue
        else:
            if (bhi >> (v - 64)) & 1:
                continue
        total += _count_rec(adjlo, adjhi, N, v + 1,
                            blo | adjlo[v], bhi | adjhi[v], room - 1)
    return total


def count_stable(adj_masks, max_size=None):
    cdef int N = len(adj_masks)
    if N > VERT_CAP:
        return _fallback.count_stable(adj_masks, max_size)
    cdef uint64_t adjlo[VERT_CAP]
    cdef uint64_t adjhi[VERT_CAP]
    cdef int v, room
    for v in range(N):
        a = adj_masks[v]
        adjlo[v] = a & 0xFFFFFFFFFFFFFFFF
        adjhi[v] = a >> 64
    room = N if max_size is None else max_size
    return _count_rec(adjlo, adjhi, N, 0, 0, 0, room)


cdef void _record(dict seen, const unsigned short* vm, const int* chosen,
                  int k, int n, int r):
    cdef unsigned short fam[FAM_CAP]
    cdef unsigned short best[FAM_CAP]
    cdef unsigned char buf[2 * FAM_CAP]
    cdef unsigned short t
    cdef int i, j
    for i in range(k):
        fam[i] = vm[chosen[i]]
        j = i
        while j > 0 and fam[j - 1] > fam[j]:
            t = fam[j - 1]; fam[j - 1] = fam[j]; fam[j] = t
            j -= 1
    _min_image(fam, k, n, r, best)
    for i in range(k):
        buf[2 * i] = best[i] & 0xFF
        buf[2 * i + 1] = best[i] >> 8
    key = PyBytes_FromStringAndSize(<char*> buf, 2 * k)
    if key not in seen:
        seen[key] = None


cdef long _scan_rec(dict seen, const uint64_t* adjlo, const uint64_t* adjhi,
                    const unsigned short* vm, int* chosen, int depth,
                    int N, int n, int r, int start, uint64_t blo, uint64_t bhi):
    cdef long nodes = 1
    cdef int v
    _record(seen, vm, chosen, depth, n, r)
    for v in range(start, N):
        if v < 64:
            if (blo >> v) & 1:
                continue
        else:
            if (bhi >> (v - 64)) & 1:
                continue
        chosen[depth] = v
        nodes += _scan_rec(seen, adjlo, adjhi, vm, chosen, depth + 1,
                           N, n, r, v + 1, blo | adjlo[v], bhi | adjhi[v])
    return nodes


def census_scan(vertex_masks, adj_masks, n, r, seconds):
    """Canonical codes of stable sets {v0, v1, ...} with v1 in seconds.

    Same traversal and first-seen code order as the reference version.
    """
    cdef int N = len(adj_masks)
    if N > VERT_CAP or n > 16:
        return _fallback.census_scan(vertex_masks, adj_masks, n, r, seconds)
    cdef uint64_t adjlo[VERT_CAP]
    cdef uint64_t adjhi[VERT_CAP]
    cdef unsigned short vm[VERT_CAP]
    cdef int chosen[VERT_CAP]
    cdef int v, v1
    cdef long nodes = 0
    cdef uint64_t blo, bhi
    for v in range(N):
        a = adj_masks[v]
        adjlo[v] = a & 0xFFFFFFFFFFFFFFFF
        adjhi[v] = a >> 64
        vm[v] = vertex_masks[v]
    seen = {}
    for second in seconds:
        v1 = second
        blo = adjlo[0] | 1
        bhi = adjhi[0]
        if v1 < 64:
            if (blo >> v1) & 1:
                continue
        else:
            if (bhi >> (v1 - 64)) & 1:
                continue
        chosen[0] = 0
        chosen[1] = v1
        blo |= adjlo[v1]
        bhi |= adjhi[v1]
        if v1 < 64:
            blo |= <uint64_t> 1 << v1
        else:
            bhi |= <uint64_t> 1 << (v1 - 64)
        nodes += _scan_rec(seen, adjlo, adjhi, vm, chosen, 2,
                           N, n, r, v1 + 1, blo, bhi)
    return list(seen.keys()), nodes
