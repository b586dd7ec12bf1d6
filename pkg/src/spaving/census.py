"""Isomorph-free census of sparse paving matroids on small ground sets.

Sparse paving matroids on [n] at rank r correspond to stable sets of
J(n, r), so the census enumerates stable sets up to the S_n action on
the ground set.  Two independent strategies are implemented and must
agree:

* "dedup": enumerate labeled stable sets and deduplicate canonical
  forms.  Since S_n is transitive on vertices, every nonempty class has
  a representative containing vertex 0 (the colex-least r-subset), and
  within those the second-smallest vertex can be forced to be minimal
  in its orbit under the stabilizer of vertex 0; both restrictions are
  applied before canonicalizing, which cuts the labeled stream hard.

* "orderly": depth-first generation that extends only canonical stable
  sets by larger vertices.  Removing the largest vertex of a minimal
  image leaves a minimal image, so every class is reached exactly once
  through its canonical representative and no deduplication is needed.

Classification attaches the fast Ingleton verdict (plus a witness) to
every class.  At (8, 4) this recovers the known landscape: the
non-Ingleton classes all relax to the Vámos matroid, and together with
the two three-element direct sums they are exactly the minimal
obstructions whose proper minors are all Ingleton sparse paving.
"""

from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass
from functools import cache
from itertools import permutations

from ._backend import kernel
from .constructions import named, vamos
from .errors import FormatError, ScaleError
from .ingleton import (
    ViolationWitness,
    find_all_witnesses,
    ingleton_brute,
    ingleton_fast_sp,
)
from .johnson import johnson_params, vertex_masks
from .matroids import (
    BasisMatroid,
    SparsePavingMatroid,
    canonical_form,
    contract,
    delete,
    dual,
    is_isomorphic,
    is_sparse_paving,
    pack_code,
    sp_new,
    sp_to_basis,
    unpack_code,
)

ENUM_MAX_VERTICES = 1 << 16
CENSUS_MAX_N = 9
CENSUS_FORMAT = "spaving-census"
CENSUS_VERSION = 1


@dataclass(frozen=True)
class CensusRecord:
    """One isomorphism class: canonical code plus its classification."""

    n: int
    r: int
    code: bytes
    ch_count: int
    ingleton: bool
    witness: ViolationWitness | None
    index: int  # discovery order within the generation strategy

    def matroid(self) -> SparsePavingMatroid:
        return sp_new(self.n, self.r, unpack_code(self.code, self.n, self.r))


def _adjacency(n: int, r: int) -> list[int]:
    """Adjacency of J(n, r) as bitmasks over vertex indices."""
    masks = vertex_masks(n, r)
    adj = [0] * len(masks)
    for i, x in enumerate(masks):
        row = 0
        for j in range(i + 1, len(masks)):
            if (x & masks[j]).bit_count() == r - 1:
                row |= 1 << j
                adj[j] |= 1 << i
        adj[i] |= row
    return adj


def enumerate_stable_sets(n: int, r: int, visitor=None, max_size: int | None = None) -> int:
    """Visit every stable family of J(n, r) exactly once; returns the count.

    The visitor, if given, receives each family as an ascending tuple of
    r-subset masks (the empty tuple first).  Counting without a visitor
    runs entirely in the kernel.
    """
    params = johnson_params(n, r)
    if params.vertices > ENUM_MAX_VERTICES:
        raise ScaleError(f"C({n},{r}) = {params.vertices} exceeds {ENUM_MAX_VERTICES}")
    adj = _adjacency(n, r)
    if visitor is None:
        return kernel.count_stable(adj, max_size)
    masks = vertex_masks(n, r)
    count = 0
    for ids in kernel.stable_sets(adj, max_size):
        visitor(tuple(masks[v] for v in ids))
        count += 1
    return count


@cache
def _allowed_seconds(n: int, r: int) -> tuple[int, ...]:
    """Non-neighbours of vertex 0 that are minimal in their orbit under
    the stabilizer of vertex 0 (the block permutations of {1..r})."""
    masks = vertex_masks(n, r)
    index = {m: i for i, m in enumerate(masks)}
    v0 = masks[0]
    stab = []
    low = list(range(r))
    high = list(range(r, n))
    for pa in permutations(low):
        for pb in permutations(high):
            stab.append(pa + pb)
    allowed = []
    for i, x in enumerate(masks[1:], start=1):
        if (x & v0).bit_count() == r - 1:
            continue
        orbit_min = min(index[kernel.permute_mask(x, perm)] for perm in stab)
        if orbit_min == i:
            allowed.append(i)
    return tuple(allowed)


def _census_task(args):
    n, r, second = args
    masks = vertex_masks(n, r)
    adj = _adjacency(n, r)
    return kernel.census_scan(masks, adj, n, r, [second])


def _canonical_codes_dedup(n: int, r: int, jobs: int) -> tuple[list[bytes], int]:
    """Vector keys of all classes in discovery order, plus nodes scanned."""
    masks = vertex_masks(n, r)
    seconds = _allowed_seconds(n, r)
    # The empty class and the single-vertex class are roots handled here;
    # the kernel scans everything with at least two vertices.
    keys: dict[bytes, None] = {b"": None}
    single = ((1 << r) - 1).to_bytes(2, "little")
    keys[single] = None
    nodes = 2
    if jobs > 1 and len(seconds) > 1:
        with multiprocessing.Pool(min(jobs, len(seconds))) as pool:
            parts = pool.map(_census_task, [(n, r, s) for s in seconds], chunksize=1)
    else:
        adj = _adjacency(n, r)
        parts = [kernel.census_scan(masks, adj, n, r, list(seconds))]
    for part_keys, part_nodes in parts:
        nodes += part_nodes
        for key in part_keys:
            if key not in keys:
                keys[key] = None
    return list(keys.keys()), nodes


def _canonical_codes_orderly(n: int, r: int) -> tuple[list[bytes], int]:
    """Orderly generation: extend canonical stable sets only."""
    masks = vertex_masks(n, r)
    adj = _adjacency(n, r)
    total = len(masks)
    keys: list[bytes] = []
    tested = 0
    chosen: list[int] = []

    def emit():
        keys.append(b"".join(masks[v].to_bytes(2, "little") for v in chosen))

    def rec(blocked: int):
        emit()
        start = chosen[-1] + 1 if chosen else 0
        nonlocal tested
        for v in range(start, total):
            if (blocked >> v) & 1:
                continue
            chosen.append(v)
            tested += 1
            if kernel.is_canonical([masks[u] for u in chosen], n, r):
                rec(blocked | adj[v])
            chosen.pop()

    rec(0)
    return keys, tested


def _key_to_masks(key: bytes) -> tuple[int, ...]:
    return tuple(
        int.from_bytes(key[i : i + 2], "little") for i in range(0, len(key), 2)
    )


def enumerate_iso_classes(
    n: int, r: int, strategy: str = "dedup", jobs: int | None = None
) -> list[CensusRecord]:
    """All isomorphism classes of sparse paving matroids on [n] at rank r,
    classified and sorted by canonical code."""
    if not 0 < r < n:
        raise ValueError(f"need 0 < r < n, got n={n} r={r}")
    if n > CENSUS_MAX_N:
        raise ScaleError(f"census supports n <= {CENSUS_MAX_N}, got {n}")
    if jobs is None:
        jobs = int(os.environ.get("SPAVING_JOBS", "1"))
    if strategy == "dedup":
        keys, _ = _canonical_codes_dedup(n, r, jobs)
    elif strategy == "orderly":
        keys, _ = _canonical_codes_orderly(n, r)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    records = []
    for index, key in enumerate(keys):
        family = _key_to_masks(key)
        m = sp_new(n, r, family)
        witness = ingleton_fast_sp(m)
        records.append(
            CensusRecord(
                n=n,
                r=r,
                code=pack_code(family, n, r),
                ch_count=len(family),
                ingleton=witness is None,
                witness=witness,
                index=index,
            )
        )
    records.sort(key=lambda rec: rec.code)
    return records


def classify_ingleton(
    n: int, r: int, strategy: str = "dedup", jobs: int | None = None
) -> tuple[int, int, list[CensusRecord]]:
    """(ingleton classes, non-Ingleton classes, all records)."""
    records = enumerate_iso_classes(n, r, strategy, jobs)
    non = sum(1 for rec in records if not rec.ingleton)
    return len(records) - non, non, records


def vamos_reachable(m: SparsePavingMatroid) -> bool:
    """True iff relaxing all circuit-hyperplanes outside some exactly-five
    pattern leaves a matroid isomorphic to V8."""
    if (m.n, m.r) != (8, 4):
        raise ValueError("Vámos reachability is a question about (8, 4) matroids")
    target = vamos()
    for w in find_all_witnesses(m):
        surviving = frozenset(u for u in w.pattern.unions() if u in m.ch)
        relaxed = sp_new(8, 4, surviving)
        if is_isomorphic(relaxed, target):
            return True
    return False


@dataclass(frozen=True)
class ExcludedMinorReport:
    total: int
    minors_checked: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _all_single_element_minors(m: BasisMatroid):
    for e in range(1, m.n + 1):
        yield f"delete {e}", delete(m, e)
        yield f"contract {e}", contract(m, e)


def verify_excluded_minors(records: list[CensusRecord] | None = None) -> ExcludedMinorReport:
    """Check minimality of the 39 non-Ingleton (8,4) classes plus the two
    three-element direct sums: each item fails to be Ingleton sparse
    paving, every single-element minor is, and the two extras are duals.
    """
    if records is None:
        records = enumerate_iso_classes(8, 4)
    failures: list[str] = []
    minors_checked = 0
    items: list[tuple[str, BasisMatroid]] = []
    for rec in records:
        if rec.ingleton:
            continue
        m = rec.matroid()
        label = f"class {rec.code.hex()[:12]}"
        if ingleton_fast_sp(m) is None:
            failures.append(f"{label}: expected a violation")
        items.append((label, sp_to_basis(m)))
    extra_a = named("u02_plus_u11")
    extra_b = named("u22_plus_u01")
    for name, extra in (("u02_plus_u11", extra_a), ("u22_plus_u01", extra_b)):
        if is_sparse_paving(extra):
            failures.append(f"{name}: unexpectedly sparse paving")
        items.append((name, extra))
    if not is_isomorphic(dual(extra_a), extra_b):
        failures.append("u02_plus_u11 and u22_plus_u01 are not dual")
    for label, item in items:
        for op, minor in _all_single_element_minors(item):
            minors_checked += 1
            if not is_sparse_paving(minor):
                failures.append(f"{label}, {op}: minor not sparse paving")
            elif ingleton_brute(minor) is not None:
                failures.append(f"{label}, {op}: minor violates Ingleton")
    return ExcludedMinorReport(len(items), minors_checked, tuple(failures))


def census_write(records: list[CensusRecord], path: str) -> None:
    """Line-delimited JSON sorted by canonical code, with a header line.

    The writer is canonical: identical records give identical bytes.
    """
    records = sorted(records, key=lambda rec: rec.code)
    if records:
        n, r = records[0].n, records[0].r
        if any((rec.n, rec.r) != (n, r) for rec in records):
            raise ValueError("census files hold one (n, r) at a time")
    else:
        n = r = 0
    header = {
        "format": CENSUS_FORMAT,
        "version": CENSUS_VERSION,
        "n": n,
        "r": r,
        "count": len(records),
    }
    lines = [json.dumps(header, separators=(",", ":"))]
    for rec in records:
        lines.append(
            json.dumps(
                {
                    "code": rec.code.hex(),
                    "ch": rec.ch_count,
                    "ingleton": rec.ingleton,
                    "witness": rec.witness.to_dict() if rec.witness else None,
                    "index": rec.index,
                },
                separators=(",", ":"),
            )
        )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def census_read(path: str) -> list[CensusRecord]:
    """Inverse of census_write; FormatError messages carry line numbers."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise FormatError(f"{path}:1: missing census header")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:1: bad header: {exc}") from None
    if not isinstance(header, dict) or header.get("format") != CENSUS_FORMAT:
        raise FormatError(f"{path}:1: not a {CENSUS_FORMAT} file")
    if header.get("version") != CENSUS_VERSION:
        raise FormatError(f"{path}:1: unsupported version {header.get('version')!r}")
    n, r = header.get("n"), header.get("r")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            code = bytes.fromhex(obj["code"])
            witness = ViolationWitness.from_dict(obj["witness"]) if obj["witness"] else None
            rec = CensusRecord(
                n=n,
                r=r,
                code=code,
                ch_count=obj["ch"],
                ingleton=obj["ingleton"],
                witness=witness,
                index=obj["index"],
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"{path}:{lineno}: bad census record: {exc}") from None
        records.append(rec)
    if len(records) != header.get("count"):
        raise FormatError(f"{path}: header count {header.get('count')} != {len(records)} records")
    return records
