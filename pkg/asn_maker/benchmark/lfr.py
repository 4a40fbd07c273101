"""LFR benchmark graphs with planted disjoint or overlapping communities.

Generation follows the usual LFR recipe: power-law degrees, a mixing
parameter that fixes the share of each node's edges leaving its
communities, power-law community sizes, a per-community configuration
model for internal stubs and a global one for external stubs, then
degree-preserving swaps that remove self-loops, multi-edges and external
edges that landed inside a shared community.
"""

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List, Set, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from asn_maker.benchmark.powerlaw import (
    sample_powerlaw_with_mean,
    sample_truncated_powerlaw,
)
from asn_maker.core.errors import GenerationError
from asn_maker.core.logging import get_logger
from asn_maker.graph.model import Cover, Graph

logger = get_logger("benchmark.lfr")

MAX_ATTEMPTS = 100


class LfrParams(BaseModel):
    """Parameters of one LFR benchmark."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(gt=0, description="Node count")
    mu: float = Field(gt=0.0, lt=1.0, description="Mixing parameter")
    k_avg: float = Field(default=6.0, ge=1.0, description="Target mean degree")
    k_max: int = Field(description="Maximum degree")
    tau1: float = Field(default=2.0, description="Degree exponent")
    tau2: float = Field(default=1.0, description="Community-size exponent")
    c_min: int = Field(default=5, ge=1, description="Smallest community size")
    c_max: int = Field(description="Largest community size")
    o_n: int = Field(default=0, ge=0, description="Number of overlapping nodes")
    o_m: int = Field(default=1, ge=1, description="Memberships per overlapping node")
    seed: int = Field(default=0, description="Random seed")

    @model_validator(mode="after")
    def _check_ranges(self) -> "LfrParams":
        if not self.k_avg <= self.k_max < self.n:
            raise ValueError("need k_avg <= k_max < n")
        if not self.c_min <= self.c_max <= self.n:
            raise ValueError("need c_min <= c_max <= n")
        if self.o_n > self.n:
            raise ValueError("o_n cannot exceed n")
        if self.o_n > 0 and self.o_m < 2:
            raise ValueError("overlapping nodes need o_m >= 2")
        return self

    @property
    def overlapping(self) -> bool:
        return self.o_n > 0


def default_params(
    n: int, mu: float, overlapping: bool, seed: int, k_avg: float = 6.0
) -> LfrParams:
    """Parameters for a grid cell: K = max(ceil(n/5), 2 k_avg),
    c_min = 5, c_max = ceil(n/4), and in overlapping mode o_n = ceil(n/10),
    o_m = 2."""
    return LfrParams(
        n=n,
        mu=mu,
        k_avg=k_avg,
        k_max=max(math.ceil(n / 5), int(math.ceil(2 * k_avg))),
        c_min=5,
        c_max=math.ceil(n / 4),
        o_n=math.ceil(n / 10) if overlapping else 0,
        o_m=2 if overlapping else 1,
        seed=seed,
    )


@dataclass(frozen=True)
class LfrBenchmark:
    """A generated benchmark and its planted cover."""

    graph: Graph
    ground_truth: Cover
    params: LfrParams
    realized_mu: float
    attempts: int

    @property
    def mean_degree(self) -> float:
        return 2.0 * self.graph.m / self.graph.n


class _AttemptFailed(Exception):
    """One generation attempt hit an infeasible draw."""


def realized_mixing(graph: Graph, cover: Cover) -> float:
    """Fraction of edge endpoints whose edge leaves all shared communities."""
    if graph.m == 0:
        return 0.0
    member_of: List[Set[int]] = [set() for _ in range(graph.n)]
    for index, community in enumerate(cover.communities):
        for node in community:
            member_of[node].add(index)
    boundary = sum(1 for u, v in graph.edges if not member_of[u] & member_of[v])
    return boundary / graph.m


def _degree_sequence(params: LfrParams, rng: np.random.Generator) -> np.ndarray:
    degrees = sample_powerlaw_with_mean(
        params.tau1, params.k_avg, params.k_max, params.n, rng
    ).astype(np.int64)
    target = int(round(params.k_avg * params.n))
    target -= target % 2
    # Nudge random nodes until the degree sum hits the (even) target
    while degrees.sum() != target:
        if degrees.sum() < target:
            candidates = np.flatnonzero(degrees < params.k_max)
            step = 1
        else:
            candidates = np.flatnonzero(degrees > 1)
            step = -1
        if len(candidates) == 0:
            raise _AttemptFailed("degree sum cannot reach round(k_avg * n)")
        degrees[rng.choice(candidates)] += step
    return degrees


def _external_degrees(
    degrees: np.ndarray, mu: float, rng: np.random.Generator
) -> np.ndarray:
    """Split mu * sum(d) external stubs by largest fractional remainder."""
    exact = mu * degrees
    external = np.floor(exact).astype(np.int64)
    remaining = int(round(mu * degrees.sum())) - int(external.sum())
    order = rng.permutation(len(degrees))
    order = order[np.argsort(-(exact - external)[order], kind="stable")]
    for node in order[:remaining]:
        external[node] += 1
    return external


def _community_sizes(params: LfrParams, rng: np.random.Generator) -> List[int]:
    total = params.n + params.o_n * (params.o_m - 1)
    sizes: List[int] = []
    while sum(sizes) < total:
        draw = sample_truncated_powerlaw(params.tau2, params.c_min, params.c_max, 1, rng)
        sizes.append(int(draw[0]))
    excess = sum(sizes) - total
    if excess:
        sizes[-1] -= excess
        if sizes[-1] < params.c_min:
            leftover = sizes.pop()
            for _ in range(leftover):
                open_ = [i for i, s in enumerate(sizes) if s < params.c_max]
                if not open_:
                    raise _AttemptFailed("community sizes cannot absorb the remainder")
                sizes[open_[int(rng.integers(len(open_)))]] += 1
    if len(sizes) < params.o_m:
        raise _AttemptFailed(f"fewer than o_m={params.o_m} communities")
    return sizes


def _split_internal(internal: int, memberships: int) -> List[int]:
    base, extra = divmod(internal, memberships)
    return [base + (1 if j < extra else 0) for j in range(memberships)]


def _assign_memberships(
    params: LfrParams,
    internal: np.ndarray,
    sizes: List[int],
    rng: np.random.Generator,
) -> Tuple[List[List[int]], Dict[Tuple[int, int], int]]:
    """Place every membership slot in a community larger than its internal degree.

    Returns:
        Members per community and the internal degree of each
        (node, community) membership
    """
    overlapping = set(rng.choice(params.n, size=params.o_n, replace=False).tolist())
    slots: List[Tuple[int, int]] = []
    for node in range(params.n):
        memberships = params.o_m if node in overlapping else 1
        for share in _split_internal(int(internal[node]), memberships):
            slots.append((share, node))
    # Hardest slots first, random order among equals
    slots = [slots[i] for i in rng.permutation(len(slots))]
    slots.sort(key=lambda slot: -slot[0])

    capacity = list(sizes)
    members: List[List[int]] = [[] for _ in sizes]
    joined: List[Set[int]] = [set() for _ in range(params.n)]
    share_of: Dict[Tuple[int, int], int] = {}
    for share, node in slots:
        candidates = [
            c
            for c in range(len(sizes))
            if capacity[c] > 0 and sizes[c] > share and c not in joined[node]
        ]
        if not candidates:
            raise _AttemptFailed(
                f"no community larger than internal degree {share} has room "
                f"(c_max={params.c_max})"
            )
        weights = np.array([capacity[c] for c in candidates], dtype=float)
        community = candidates[int(rng.choice(len(candidates), p=weights / weights.sum()))]
        capacity[community] -= 1
        members[community].append(node)
        joined[node].add(community)
        share_of[(node, community)] = share
    return members, share_of


def _pair_stubs(stubs: List[int], rng: np.random.Generator) -> List[List[int]]:
    stubs = list(stubs)
    rng.shuffle(stubs)
    return [[stubs[i], stubs[i + 1]] for i in range(0, len(stubs), 2)]


def _key(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _rewire(
    pool: List[List[int]],
    counts: Counter,
    allowed: Callable[[int, int], bool],
    rng: np.random.Generator,
) -> None:
    """Degree-preserving swaps inside one stub pool until every edge is simple,
    unique and allowed. ``counts`` tracks every edge already placed."""

    def bad(edge: List[int]) -> bool:
        u, v = edge
        return u == v or counts[_key(u, v)] > 1 or not allowed(u, v)

    budget = 200 * max(len(pool), 1)
    defects = [i for i, e in enumerate(pool) if bad(e)]
    while defects:
        if budget <= 0 or len(pool) < 2:
            raise _AttemptFailed("rewiring could not remove multi-edges and self-loops")
        i = defects[int(rng.integers(len(defects)))]
        j = int(rng.integers(len(pool)))
        budget -= 1
        if i == j:
            continue
        (a, b), (c, d) = pool[i], pool[j]
        if rng.random() < 0.5:
            c, d = d, c
        new_edges = [(a, c), (b, d)]
        if any(u == v or not allowed(u, v) for u, v in new_edges):
            continue
        if _key(a, c) == _key(b, d):
            continue
        counts[_key(a, b)] -= 1
        counts[_key(pool[j][0], pool[j][1])] -= 1
        if any(counts[_key(u, v)] > 0 for u, v in new_edges):
            counts[_key(a, b)] += 1
            counts[_key(pool[j][0], pool[j][1])] += 1
            continue
        for u, v in new_edges:
            counts[_key(u, v)] += 1
        pool[i], pool[j] = [a, c], [b, d]
        defects = [k for k, e in enumerate(pool) if bad(e)]


def _attempt(params: LfrParams, rng: np.random.Generator) -> Tuple[Graph, Cover]:
    degrees = _degree_sequence(params, rng)
    external = _external_degrees(degrees, params.mu, rng)
    internal = degrees - external
    sizes = _community_sizes(params, rng)
    members, share_of = _assign_memberships(params, internal, sizes, rng)

    # Each community needs an even stub count: move one stub across the
    # internal/external boundary, in whichever direction keeps the external
    # total closest to its target
    target_external = int(external.sum())
    for community, nodes in enumerate(members):
        if sum(share_of[(v, community)] for v in nodes) % 2 == 0:
            continue
        if external.sum() > target_external:
            takers = [
                v
                for v in nodes
                if external[v] > 0 and share_of[(v, community)] + 1 < len(nodes)
            ]
            if takers:
                taker = takers[int(rng.integers(len(takers)))]
                share_of[(taker, community)] += 1
                external[taker] -= 1
                continue
        donors = [v for v in nodes if share_of[(v, community)] > 0]
        donor = donors[int(rng.integers(len(donors)))]
        share_of[(donor, community)] -= 1
        external[donor] += 1
    if external.sum() % 2:
        shrinkable = np.flatnonzero((external > 0) & (degrees > 1))
        growable = np.flatnonzero(degrees < params.k_max)
        if external.sum() > target_external and len(shrinkable):
            node, step = int(rng.choice(shrinkable)), -1
        elif len(growable):
            node, step = int(rng.choice(growable)), 1
        else:
            raise _AttemptFailed("external stub count is odd and no degree can change")
        degrees[node] += step
        external[node] += step

    community_sets = [set(nodes) for nodes in members]
    member_of: List[Set[int]] = [set() for _ in range(params.n)]
    for community, nodes in enumerate(members):
        for v in nodes:
            member_of[v].add(community)

    counts: Counter = Counter()
    edges: List[List[int]] = []
    for community, nodes in enumerate(members):
        stubs = [v for v in nodes for _ in range(share_of[(v, community)])]
        pool = _pair_stubs(stubs, rng)
        for u, v in pool:
            counts[_key(u, v)] += 1
        inside = community_sets[community]
        _rewire(pool, counts, lambda u, v, s=inside: u in s and v in s, rng)
        edges.extend(pool)

    stubs = [v for v in range(params.n) for _ in range(int(external[v]))]
    pool = _pair_stubs(stubs, rng)
    for u, v in pool:
        counts[_key(u, v)] += 1
    _rewire(pool, counts, lambda u, v: not member_of[u] & member_of[v], rng)
    edges.extend(pool)

    graph = Graph.from_edges(params.n, (tuple(e) for e in edges))
    if graph.m != len(edges) or not np.array_equal(graph.degrees, degrees):
        raise _AttemptFailed("wired graph does not match the degree sequence")
    cover = Cover.from_communities(members, params.n, complete=False)
    return graph, cover


def generate_lfr(params: LfrParams) -> LfrBenchmark:
    """Generate one benchmark; deterministic for given parameters.

    Raises:
        GenerationError: After MAX_ATTEMPTS infeasible draws, naming the
            last violated constraint
    """
    rng = np.random.default_rng(params.seed)
    reason = "unknown"
    for attempt in range(1, MAX_ATTEMPTS + 1):
        try:
            graph, cover = _attempt(params, rng)
        except _AttemptFailed as e:
            reason = str(e)
            logger.debug(f"LFR attempt {attempt} failed: {reason}")
            continue
        mu_hat = realized_mixing(graph, cover)
        logger.debug(
            f"LFR n={params.n} mu={params.mu} done in {attempt} attempts, "
            f"realized mu={mu_hat:.4f}"
        )
        return LfrBenchmark(graph, cover, params, mu_hat, attempt)
    raise GenerationError(reason, MAX_ATTEMPTS)
