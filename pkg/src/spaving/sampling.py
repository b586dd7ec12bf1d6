"""Monte Carlo study of random vertex families in J(n, r).

Sampling a k-set H of Johnson-graph vertices and then deleting one
endpoint per edge, one member per five-hit pattern and two per six-hit
pattern leaves a family with no edges and no rich patterns, hence the
circuit-hyperplane family of an Ingleton sparse paving matroid.  With
k = floor(c N / d) the expected damage terms are E(edges) <= ck/2 and
E(b5) <= c^4 k / 64, small next to k, which is what drives the doubly
exponential count of such matroids; the count itself (about 2^64.5
distinct matroids already at (12, 6)) is far beyond enumeration, so
this module measures the damage terms on seeded samples and checks the
pruning bound and goodness on every one.
"""

from __future__ import annotations

import math
import multiprocessing
import random
from dataclasses import dataclass
from itertools import combinations
from statistics import mean, variance

from .ingleton import _scan_patterns, ingleton_fast_sp, pattern_counts
from .johnson import johnson_params, vertex_masks
from .matroids import sp_new


def good_fraction(x: float) -> float:
    """1 - x/2 - x^4/64, the heuristic surviving fraction after pruning."""
    return 1.0 - x / 2.0 - x**4 / 64.0


@dataclass(frozen=True)
class CountingParams:
    """Sampling plan: k = floor(cN/d) vertices of J(n, r) per trial.

    alpha sits at the midpoint of its legal interval (gamma/c, f(c));
    eps = f(c) - alpha is the slack available to the counting argument.
    """

    n: int
    r: int
    c: float
    gamma: float
    alpha: float
    eps: float
    N: int
    d: int
    k: int


def make_params(n: int, r: int, c: float, gamma: float) -> CountingParams:
    if not 0 < r < n:
        raise ValueError(f"need 0 < r < n, got n={n} r={r}")
    jp = johnson_params(n, r)
    fc = good_fraction(c)
    if not 0 < gamma < c * fc:
        raise ValueError(f"gamma must lie in (0, c*f(c)) = (0, {c * fc:.6g}), got {gamma}")
    alpha = (gamma / c + fc) / 2.0
    return CountingParams(
        n=n,
        r=r,
        c=c,
        gamma=gamma,
        alpha=alpha,
        eps=fc - alpha,
        N=jp.vertices,
        d=jp.valency,
        k=math.floor(c * jp.vertices / jp.valency),
    )


def sample_vertices(params: CountingParams, seed: int) -> tuple[int, ...]:
    """Uniform k-subset of vertex indices [0, N), deterministic per seed.

    Partial Fisher-Yates: only the first k swaps are performed.
    """
    rng = random.Random(seed)
    idx = list(range(params.N))
    for i in range(params.k):
        j = rng.randrange(i, params.N)
        idx[i], idx[j] = idx[j], idx[i]
    return tuple(sorted(idx[: params.k]))


def count_edges(family, r: int) -> int:
    """Unordered adjacent pairs within a family of r-subset masks."""
    return sum(
        1 for x, y in combinations(list(family), 2) if (x & y).bit_count() == r - 1
    )


def prune_to_good(family, r: int) -> tuple[int, ...]:
    """Shrink a family of r-subset masks until no edges and no pattern
    with five or six hits remain.

    One removal per offending structure, largest mask first: an endpoint
    of the first surviving edge, else a member of the first surviving
    rich pattern (two members for a six-hit pattern).  Each removal
    kills the structure it is charged to and structures never reappear,
    so the total removed is at most edges + b5 + 2*b6 of the input.
    """
    kept = set(family)
    while True:
        edge = next(
            (
                (x, y)
                for x, y in combinations(sorted(kept), 2)
                if (x & y).bit_count() == r - 1
            ),
            None,
        )
        if edge is not None:
            kept.discard(max(edge))
            continue
        counts = _scan_patterns(frozenset(kept), r)
        rich = sorted(
            (pat for pat, hits in counts.items() if hits >= 5),
            key=lambda pat: (pat.core, pat.pairs),
        )
        if not rich:
            return tuple(sorted(kept))
        pat = rich[0]
        present = sorted((u for u in pat.unions() if u in kept), reverse=True)
        kept.discard(present[0])
        if counts[pat] == 6:
            kept.discard(present[1])


@dataclass(frozen=True)
class SampleStats:
    """Damage terms and pruning outcome of one seeded trial."""

    seed: int
    edges: int
    b5: int
    b6: int
    sampled: int
    kept: int
    good: bool

    def bound_ok(self, k: int) -> bool:
        return self.kept >= k - self.edges - self.b5 - 2 * self.b6


@dataclass(frozen=True)
class TrialSummary:
    params: CountingParams
    trials: int
    seed0: int
    stats: tuple[SampleStats, ...]
    mean_edges: float
    var_edges: float
    mean_b5: float
    var_b5: float
    mean_b6: float
    var_b6: float
    mean_kept: float
    edge_bound: float
    b5_bound: float
    edge_bound_ok: bool
    b5_bound_ok: bool
    under_alpha_fraction: float
    all_good: bool
    pruning_bound_ok: bool
    exponent_bits: float

    def to_dict(self) -> dict:
        p = self.params
        return {
            "n": p.n,
            "r": p.r,
            "c": p.c,
            "gamma": p.gamma,
            "alpha": p.alpha,
            "eps": p.eps,
            "vertices": p.N,
            "valency": p.d,
            "k": p.k,
            "trials": self.trials,
            "seed": self.seed0,
            "mean_edges": self.mean_edges,
            "var_edges": self.var_edges,
            "mean_b5": self.mean_b5,
            "var_b5": self.var_b5,
            "mean_b6": self.mean_b6,
            "var_b6": self.var_b6,
            "mean_kept": self.mean_kept,
            "edge_bound": self.edge_bound,
            "b5_bound": self.b5_bound,
            "edge_bound_ok": self.edge_bound_ok,
            "b5_bound_ok": self.b5_bound_ok,
            "under_alpha_fraction": self.under_alpha_fraction,
            "all_good": self.all_good,
            "pruning_bound_ok": self.pruning_bound_ok,
            "exponent_bits": self.exponent_bits,
        }


def run_trial(params: CountingParams, seed: int) -> tuple[SampleStats, tuple[int, ...]]:
    """One seeded sample: damage terms, pruned family, goodness recheck."""
    masks = vertex_masks(params.n, params.r)
    family = [masks[i] for i in sample_vertices(params, seed)]
    edges = count_edges(family, params.r)
    b5, b6 = pattern_counts(frozenset(family), params.r)
    kept = prune_to_good(family, params.r)
    clean = count_edges(kept, params.r) == 0 and pattern_counts(
        frozenset(kept), params.r
    ) == (0, 0)
    good = clean and ingleton_fast_sp(sp_new(params.n, params.r, kept)) is None
    stats = SampleStats(
        seed=seed,
        edges=edges,
        b5=b5,
        b6=b6,
        sampled=len(family),
        kept=len(kept),
        good=good,
    )
    return stats, kept


def _trial_worker(args) -> SampleStats:
    params, seed = args
    return run_trial(params, seed)[0]


def run_trials(
    params: CountingParams, trials: int, seed0: int = 0, jobs: int = 1
) -> TrialSummary:
    """Seeded trials seed0..seed0+trials-1 with deterministic aggregation.

    Trials are independent (per-trial seed streams), so any parallel
    schedule gives the same result; aggregation folds in index order.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    tasks = [(params, seed0 + t) for t in range(trials)]
    if jobs > 1:
        with multiprocessing.Pool(min(jobs, trials)) as pool:
            all_stats = pool.map(_trial_worker, tasks, chunksize=max(1, trials // (4 * jobs)))
    else:
        all_stats = [_trial_worker(task) for task in tasks]
    edges = [s.edges for s in all_stats]
    b5s = [s.b5 for s in all_stats]
    b6s = [s.b6 for s in all_stats]
    kept = [s.kept for s in all_stats]
    var = (lambda xs: variance(xs)) if trials > 1 else (lambda xs: 0.0)
    k, c = params.k, params.c
    edge_bound = c * k / 2.0
    b5_bound = c**4 * k / 64.0
    sigma = math.sqrt(trials)
    threshold = (1.0 - params.alpha) * k
    return TrialSummary(
        params=params,
        trials=trials,
        seed0=seed0,
        stats=tuple(all_stats),
        mean_edges=mean(edges),
        var_edges=var(edges),
        mean_b5=mean(b5s),
        var_b5=var(b5s),
        mean_b6=mean(b6s),
        var_b6=var(b6s),
        mean_kept=mean(kept),
        edge_bound=edge_bound,
        b5_bound=b5_bound,
        edge_bound_ok=mean(edges) <= edge_bound + 3.0 * math.sqrt(var(edges)) / sigma,
        b5_bound_ok=mean(b5s) <= b5_bound + 3.0 * math.sqrt(var(b5s)) / sigma,
        under_alpha_fraction=mean(
            1.0 if s.edges + s.b5 + 2 * s.b6 <= threshold else 0.0 for s in all_stats
        ),
        all_good=all(s.good for s in all_stats),
        pruning_bound_ok=all(s.bound_ok(k) for s in all_stats),
        exponent_bits=params.gamma * math.log2(params.d) / params.d * params.N,
    )
