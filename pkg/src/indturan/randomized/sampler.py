"""Ordered random embeddings of a bipartite pattern between two vertex sets.

Pattern vertices are embedded in degeneracy order.  Step i lists the
common neighbourhood of the already-embedded neighbours of v_i inside the
side v_i belongs to, orders it (by vertex index, or by a fresh seeded
permutation of the side per step) and takes the w_i-th entry.  Images may
repeat, so a trace is a homomorphism; whether it is injective or induced
is checked afterwards.
"""

from __future__ import annotations

import csv
import hashlib
import itertools
import json
import math
import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from ..graph import Graph, components_and_bipartition, degeneracy_order, iter_bits
from ..graph6 import encode

ORDERINGS = ("fixed", "per_step_random")


@dataclass(frozen=True)
class SamplerConfig:
    prefix_size: int
    epsilon: Fraction
    ordering_mode: str = "fixed"
    seed: int = 0

    def __post_init__(self):
        if self.prefix_size < 1:
            raise ValueError("prefix_size must be at least 1")
        eps = Fraction(self.epsilon)
        if not 0 < eps < 1:
            raise ValueError("epsilon must lie strictly between 0 and 1")
        object.__setattr__(self, "epsilon", eps)
        if self.ordering_mode not in ORDERINGS:
            raise ValueError(f"ordering_mode must be one of {ORDERINGS}")

    @classmethod
    def for_pattern(cls, h: Graph, prefix_size: int, **kwargs) -> "SamplerConfig":
        """Config with epsilon = 1/(100 |V(H)|^2) unless given."""
        kwargs.setdefault("epsilon", Fraction(1, 100 * h.n * h.n))
        return cls(prefix_size, **kwargs)


@dataclass(frozen=True)
class BipartitePattern:
    """A bipartite pattern with its sides and embedding order fixed."""

    graph: Graph
    side: tuple[int, ...]  # 0: embed into U1, 1: into U2
    order: tuple[int, ...]

    @classmethod
    def of(cls, h: Graph, side: Sequence[int] | None = None) -> "BipartitePattern":
        if side is None:
            dec = components_and_bipartition(h)
            if not dec.bipartite:
                raise ValueError(f"pattern is not bipartite (odd cycle {dec.odd_cycle})")
            side = dec.coloring
        side = tuple(side)
        for u, v in h.edges():
            if side[u] == side[v]:
                raise ValueError(f"edge {u}-{v} lies inside one side")
        return cls(h, side, tuple(degeneracy_order(h).order))


@dataclass
class EmbeddingTrace:
    w: tuple[int, ...]
    mapping: tuple[int, ...] | None  # pattern vertex -> host vertex; None if aborted
    order: tuple[int, ...]
    candidate_sizes: tuple[int, ...]
    aborted_at: int | None = None
    injective: bool = False
    induced: bool = False
    forbidden_clean: bool | None = None
    slippery: bool | None = None

    @property
    def complete(self) -> bool:
        return self.mapping is not None

    @property
    def image_sequence(self) -> tuple[int, ...]:
        """Images in embedding order (index j is the j-th embedded vertex)."""
        return tuple(self.mapping[v] for v in self.order)


def _sigma(seed: int, step: int, side: int) -> random.Random:
    return random.Random(f"sigma/{seed}/{step}/{side}")


def _ordered(cands: int, sides: tuple[int, int], side: int, mode: str, seed: int, step: int) -> list[int]:
    if mode == "fixed":
        return list(iter_bits(cands))
    verts = list(iter_bits(sides[side]))
    _sigma(seed, step, side).shuffle(verts)
    return [v for v in verts if cands >> v & 1]


def sample_embedding(host: Graph, u1: int, u2: int, pattern: BipartitePattern, config: SamplerConfig,
                     w: Sequence[int] | None = None, forbidden: Iterable[tuple[int, int]] | None = None,
                     slippery_r: int | None = None, slippery_locality: int | None = None) -> EmbeddingTrace:
    """One ordered embedding; ``w`` (0-based indices below prefix_size) is drawn from the seed if omitted.

    The per-step orderings for ``per_step_random`` depend only on
    ``config.seed`` and the step, so (w, seed) replays to the same map.
    """
    h = pattern.graph
    k = h.n
    if w is None:
        rng = random.Random(f"w/{config.seed}")
        w = tuple(rng.randrange(config.prefix_size) for _ in range(k))
    w = tuple(w)
    if len(w) != k or any(not 0 <= x < config.prefix_size for x in w):
        raise ValueError(f"w must hold {k} indices in [0, {config.prefix_size})")
    sides = (u1, u2)
    img: dict[int, int] = {}
    sizes = []
    for i, v in enumerate(pattern.order):
        cands = sides[pattern.side[v]]
        for u in iter_bits(h.rows[v]):
            if u in img:
                cands &= host.rows[img[u]]
        sizes.append(cands.bit_count())
        if w[i] >= sizes[-1]:
            return EmbeddingTrace(w, None, pattern.order, tuple(sizes), aborted_at=i)
        img[v] = _ordered(cands, sides, pattern.side[v], config.ordering_mode, config.seed, i)[w[i]]
    mapping = tuple(img[v] for v in range(k))
    trace = EmbeddingTrace(w, mapping, pattern.order, tuple(sizes))
    flag_trace(trace, host, h, forbidden)
    if slippery_r is not None:
        trace.slippery = is_slippery(trace, host, u1, u2, pattern, slippery_r, config.epsilon,
                                     prefix_size=config.prefix_size, locality=slippery_locality).slippery
    return trace


def flag_trace(trace: EmbeddingTrace, host: Graph, h: Graph,
               forbidden: Iterable[tuple[int, int]] | None = None) -> None:
    m = trace.mapping
    trace.injective = len(set(m)) == len(m)
    image_edge = lambda a, b: m[a] != m[b] and host.has_edge(m[a], m[b])
    trace.induced = trace.injective and not any(image_edge(a, b) for a, b in h.non_edges())
    if forbidden is not None:
        trace.forbidden_clean = not any(image_edge(a, b) for a, b in forbidden)


def replay(host: Graph, u1: int, u2: int, pattern: BipartitePattern, config: SamplerConfig,
           trace: EmbeddingTrace) -> EmbeddingTrace:
    return sample_embedding(host, u1, u2, pattern, config, trace.w)


@dataclass
class Slippery:
    slippery: bool
    witness: tuple[int, tuple[int, ...]] | None = None  # (j*, (j_1, ..., j_r)) as embedding positions


def is_slippery(trace: EmbeddingTrace, host: Graph, u1: int, u2: int, pattern: BipartitePattern, r: int,
                epsilon: Fraction | float, prefix_size: int | None = None, locality: int | None = None) -> Slippery:
    """Look for an image vertex that electrocutes an r-tuple of other image vertices.

    Tuples are taken with repetition from image vertices of one side.
    Without ``locality``, the target set of a tuple is the first
    ``prefix_size`` vertices (by index) of its common neighbourhood on the
    other side and any other image vertex may electrocute it.  With
    ``locality`` q the target set is the whole common neighbourhood, the
    electrocuting vertex must come from the tuple's side, and positions must
    satisfy max(j_i) - j* <= q.
    """
    if not trace.complete:
        raise ValueError("trace was aborted")
    eps = Fraction(epsilon)
    seq = trace.image_sequence
    k = len(seq)
    side_of = [pattern.side[v] for v in trace.order]
    sides = (u1, u2)
    rows = host.rows
    for j_tuple in itertools.combinations_with_replacement(range(k), r):
        s = side_of[j_tuple[0]]
        if any(side_of[j] != s for j in j_tuple):
            continue
        verts = {seq[j] for j in j_tuple}
        common = sides[1 - s]
        for x in verts:
            common &= rows[x]
        if locality is None:
            target = common if prefix_size is None else _first(common, prefix_size)
        else:
            target = common
        size = target.bit_count()
        if size == 0:
            continue
        need = eps * size
        for j_star in range(k):
            y = seq[j_star]
            if j_star in j_tuple or y in verts:
                continue
            if locality is not None and (side_of[j_star] != s or max(j_tuple) - j_star > locality):
                continue
            if (rows[y] & target).bit_count() >= need:
                return Slippery(True, (j_star, j_tuple))
    return Slippery(False)


def _first(mask: int, count: int) -> int:
    out = 0
    for v in iter_bits(mask):
        if count == 0:
            break
        out |= 1 << v
        count -= 1
    return out


def default_prefix_size(host: Graph, u1: int, u2: int, r: int) -> int:
    """max(4, smallest common neighbourhood of an r-tuple of one side in the other)."""
    smallest = None
    for side, other in ((u1, u2), (u2, u1)):
        for tup in itertools.combinations_with_replacement(list(iter_bits(side)), r):
            m = other
            for v in tup:
                m &= host.rows[v]
            c = m.bit_count()
            smallest = c if smallest is None else min(smallest, c)
    return max(4, smallest or 0)


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    z = statistics.NormalDist().inv_cdf(0.5 + confidence / 2)
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


COUNTERS = ("complete", "injective", "induced", "forbidden_clean", "slippery")


@dataclass
class BatchCounts:
    start: int
    stop: int
    counts: dict[str, int] = field(default_factory=lambda: dict.fromkeys(COUNTERS, 0))

    @property
    def samples(self) -> int:
        return self.stop - self.start


def _run_batch(args) -> BatchCounts:
    host_rows, n, u1, u2, pattern, config, forbidden, r, locality, start, stop = args
    host = Graph._trusted(n, host_rows)
    out = BatchCounts(start, stop)
    for k in range(start, stop):
        cfg = SamplerConfig(config.prefix_size, config.epsilon, config.ordering_mode, _sample_seed(config.seed, k))
        t = sample_embedding(host, u1, u2, pattern, cfg, forbidden=forbidden, slippery_r=r,
                             slippery_locality=locality)
        if not t.complete:
            continue
        out.counts["complete"] += 1
        out.counts["injective"] += t.injective
        out.counts["induced"] += t.induced
        out.counts["forbidden_clean"] += bool(t.forbidden_clean)
        out.counts["slippery"] += bool(t.slippery)
    return out


def _sample_seed(master: int, k: int) -> int:
    digest = hashlib.sha256(f"{master}/{k}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass
class Estimate:
    samples: int
    counts: dict[str, int]
    batches: list[BatchCounts]
    parameters: dict

    def fraction(self, name: str) -> float:
        return self.counts[name] / self.samples if self.samples else 0.0

    def interval(self, name: str) -> tuple[float, float]:
        return wilson_interval(self.counts[name], self.samples)

    def summary(self) -> dict:
        out = {}
        for name in ("induced", "forbidden_clean", "injective", "slippery", "complete"):
            lo, hi = self.interval(name)
            out[f"{name}_fraction"] = self.fraction(name)
            out[f"{name}_ci"] = [lo, hi]
        return out

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            wr = csv.writer(fh)
            header = ["seed_start", "seed_stop", "samples"]
            for name in COUNTERS:
                header += [f"{name}_count", f"{name}_fraction", f"{name}_ci_low", f"{name}_ci_high"]
            wr.writerow(header)
            for b in self.batches:
                row = [b.start, b.stop, b.samples]
                for name in COUNTERS:
                    c = b.counts[name]
                    lo, hi = wilson_interval(c, b.samples)
                    row += [c, f"{c / b.samples:.6f}", f"{lo:.6f}", f"{hi:.6f}"]
                wr.writerow(row)

    def write_json(self, path: str | Path) -> None:
        data = {"parameters": self.parameters, "samples": self.samples, "counts": self.counts, **self.summary()}
        Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def graph_hash(g: Graph) -> str:
    h = hashlib.sha256(str(g.n).encode())
    for row in g.rows:
        h.update(row.to_bytes((g.n + 7) // 8 or 1, "little"))
    return h.hexdigest()


def estimate_induced_probability(host: Graph, u1: int, u2: int, pattern: BipartitePattern, config: SamplerConfig,
                                 samples: int, forbidden: Iterable[tuple[int, int]] | None = None,
                                 r: int | None = None, locality: int | None = None, batch_size: int = 1000,
                                 threads: int = 1) -> Estimate:
    """Monte Carlo estimate of how often a sampled trace is induced, F-clean, injective and slippery.

    Sample k uses a seed derived from (config.seed, k), so the counts do not
    depend on batching or on the number of worker processes.  Aborted traces
    count as failures for every property.  F = None counts every trace as
    F-clean.
    """
    forbidden = tuple(sorted(forbidden)) if forbidden is not None else ()
    if r is None:
        r = max(1, degeneracy_order(pattern.graph).degeneracy)
    jobs = [(host.rows, host.n, u1, u2, pattern, config, forbidden, r, locality, s, min(s + batch_size, samples))
            for s in range(0, samples, batch_size)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(threads) as pool:
            batches = list(pool.map(_run_batch, jobs))
    else:
        batches = [_run_batch(j) for j in jobs]
    totals = dict.fromkeys(COUNTERS, 0)
    for b in batches:
        for name in COUNTERS:
            totals[name] += b.counts[name]
    params = {
        "host_graph_sha256": graph_hash(host),
        "pattern_graph6": encode(pattern.graph),
        "pattern_side": list(pattern.side),
        "U1": list(iter_bits(u1)),
        "U2": list(iter_bits(u2)),
        "forbidden": [list(p) for p in forbidden],
        "r": r,
        "locality": locality,
        "samples": samples,
        "batch_size": batch_size,
        **{k: (str(v) if isinstance(v, Fraction) else v) for k, v in asdict(config).items()},
    }
    return Estimate(samples, totals, batches, params)
