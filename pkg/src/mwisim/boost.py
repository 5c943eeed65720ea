"""Local-ratio boosting: push phases of an inner algorithm, then greedy pop.

Each of t = ceil(c/eps) phases runs an inner algorithm (anything returning
an independent set whose weight is at least a 1/(c*Delta) fraction of the
remaining positive weight) on the subgraph induced by nodes with positive
residual weight, pushes the selected nodes with their residual weights onto
a stack, and reduces weights in the closed neighborhoods of selected nodes.
The pop stage walks the stack newest-first and keeps every node without a
kept neighbor.

The *stack property* — the popped set's original weight dominates the sum of
all pushed residual weights — holds exactly in integer arithmetic and is the
engine of both the (1+eps)*Delta approximation bound and the arboricity
algorithm built on top of this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .engine import Broadcast, NodeContext, RoundStats, StepResult, run
from .graphs import (GraphError, IndependentSet, ResidualWeights,
                     WeightedGraph, check_int64)
from .heavy import heavy_mis_approx
from .rng import derive_seed
from .wire import Message

TAG_REDUCE = 5


class BoostPhaseError(RuntimeError):
    """The inner algorithm failed during one push phase."""

    def __init__(self, phase: int, reason: str):
        super().__init__(f"phase {phase}: {reason}")
        self.phase = phase


@dataclass(frozen=True)
class PhaseFrame:
    """One stack frame: the phase's independent set and its residual weights."""

    phase: int
    members: frozenset[int]
    pushed_weights: dict[int, int]

    def __post_init__(self):
        if set(self.pushed_weights) != set(self.members):
            raise GraphError("frame weights must cover exactly the members")
        for v, w in self.pushed_weights.items():
            if w <= 0:
                raise GraphError(f"pushed weight of node {v} is {w}, must be > 0")

    def pushed_total(self) -> int:
        return sum(self.pushed_weights.values())


@dataclass(frozen=True)
class InnerResult:
    """What an inner algorithm hands back to the boosting loop."""

    members: frozenset[int]
    stats: RoundStats
    ok: bool = True
    note: str | None = None


# An inner algorithm receives the positive-residual induced subgraph (its
# weights are the residuals), a seed, the communication mode, and the
# original graph's n_upper.
InnerAlgorithm = Callable[[WeightedGraph, int, str, int], InnerResult]


def heavy_inner(g_sub: WeightedGraph, seed: int, mode: str, n_upper: int) -> InnerResult:
    """The good-node MIS algorithm as a boosting inner step (c <= 8)."""
    r = heavy_mis_approx(g_sub, seed=seed, mode=mode, n_upper=n_upper)
    return InnerResult(members=r.iset.members, stats=r.stats,
                       ok=r.mis_valid, note=r.mis_violation)


def reduce_weights(w: ResidualWeights, selected: Iterable[int],
                   g: WeightedGraph) -> ResidualWeights:
    """One local-ratio weight reduction step over all nodes of ``w``.

    Selected nodes drop to zero; every other node loses the residual weight
    of its selected neighbors. Arithmetic is checked signed 64-bit.
    """
    chosen = set(selected)
    if not g.is_independent(chosen):
        raise GraphError("selected set is not independent")
    missing = chosen - set(w.values)
    if missing:
        raise GraphError(f"selected nodes {sorted(missing)} have no residual weight")
    values = {}
    for v, wv in w.values.items():
        if v in chosen:
            values[v] = 0
        else:
            reduction = sum(w.values[u] for u in g.adj[v] if u in chosen)
            values[v] = check_int64(wv - reduction, f"residual of node {v}")
    return ResidualWeights(w.phase + 1, values)


@dataclass(frozen=True)
class ResidualUpdateProgram:
    """One announcement round realizing the weight reduction distributively.

    Run on the positive-residual subgraph (so ctx.weight is the residual):
    selected nodes broadcast their residual weight and end at zero; everyone
    else subtracts the announced weights of selected neighbors.
    """

    selected: frozenset[int]

    def init(self, ctx: NodeContext, rng) -> StepResult:
        if ctx.node_id in self.selected:
            return StepResult(state=None,
                              outbox=Broadcast(Message(TAG_REDUCE, (ctx.weight,))))
        return StepResult(state=None)

    def step(self, state, ctx: NodeContext, inbox, rng) -> StepResult:
        if ctx.node_id in self.selected:
            return StepResult(halt=True, output=0)
        reduction = sum(msg.values[0] for msg in inbox.values()
                        if msg.tag == TAG_REDUCE)
        return StepResult(halt=True, output=ctx.weight - reduction)


def pop_stack(g: WeightedGraph, frames: Iterable[PhaseFrame]) -> frozenset[int]:
    """Second stage: pop newest-first, keep nodes with no kept neighbor."""
    chosen: set[int] = set()
    for frame in sorted(frames, key=lambda f: f.phase, reverse=True):
        for v in sorted(frame.members):
            if not any(u in chosen for u in g.adj[v]):
                chosen.add(v)
    return frozenset(chosen)


def check_stack_property(g: WeightedGraph, iset: IndependentSet,
                         frames: Iterable[PhaseFrame]) -> bool:
    """w(I) >= sum over frames of the pushed residual weights, exactly."""
    return iset.weight >= sum(f.pushed_total() for f in frames)


@dataclass(frozen=True)
class BoostResult:
    iset: IndependentSet
    stack: tuple[PhaseFrame, ...]
    stats: RoundStats
    phases: int
    inner_rounds_max: int


def phase_count(c: float, eps: float) -> int:
    return math.ceil(c / eps)


def boost(g: WeightedGraph, inner: InnerAlgorithm, eps: float, c: float = 8.0,
          seed: int = 0, mode: str = "congest",
          n_upper: int | None = None) -> BoostResult:
    """t = ceil(c/eps) push phases of ``inner``, then the greedy pop stage.

    ``c`` must bound the inner algorithm's fraction guarantee (the good-node
    algorithm has 4*(Delta+1)/Delta <= 8). Each phase costs the inner
    algorithm's rounds plus one announcement round for the weight reduction.
    """
    if eps <= 0:
        raise GraphError(f"eps must be > 0, got {eps}")
    if c < 1:
        raise GraphError(f"c must be >= 1, got {c}")
    if n_upper is None:
        n_upper = g.n
    t = phase_count(c, eps)
    residual: dict[int, int] = dict(g.weights)
    frames: list[PhaseFrame] = []
    stats = RoundStats()
    inner_rounds_max = 0

    for i in range(1, t + 1):
        active = [v for v in g.nodes if residual[v] > 0]
        if not active:
            frames.append(PhaseFrame(i, frozenset(), {}))
            continue
        g_i = g.induced(active, residual)
        res = inner(g_i, derive_seed(seed, 0xB0057 + i), mode, n_upper)
        if not res.ok:
            raise BoostPhaseError(i, res.note or "inner algorithm failed")
        members = frozenset(res.members)
        if not members <= set(g_i.nodes):
            raise BoostPhaseError(i, "inner selected nodes outside its subgraph")
        if not g_i.is_independent(members):
            raise BoostPhaseError(i, "inner returned a non-independent set")
        stats = stats.merge(res.stats)
        inner_rounds_max = max(inner_rounds_max, res.stats.rounds)
        frames.append(PhaseFrame(i, members, {v: residual[v] for v in members}))

        upd_out, upd_stats = run(g_i, ResidualUpdateProgram(members), mode=mode,
                                 seed=derive_seed(seed, 0x0DD + i), n_upper=n_upper)
        stats = stats.merge(upd_stats)
        for v in active:
            residual[v] = check_int64(upd_out[v], f"residual of node {v}")

    iset = IndependentSet.of(g, pop_stack(g, frames))
    return BoostResult(iset=iset, stack=tuple(frames), stats=stats,
                       phases=t, inner_rounds_max=inner_rounds_max)
