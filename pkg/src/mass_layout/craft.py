"""CRAFT-style steepest-descent improvement of block layouts.

Each pass evaluates every candidate exchange of slot positions, recomputing
the load function from scratch, and applies the single move with the largest
strict decrease. Candidate moves:

* two-way: exchange the slots of two facilities, or move a facility into a
  vacant slot (empty slots act as facilities with no flow);
* three-way (optional): rotate the slots of three facilities;
* column exchange (optional): swap the full contents of two grid columns,
  i.e. several two-way exchanges between column-mates made at once. This is
  what moves an adjacent pair as a unit; no single two-way exchange can do
  that without first splitting the pair.

Ties go to the lexicographically smallest moved set, then move kind, then
rotation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .layout import (BlockLayout, DistanceModel, FloorPlan, distance_table, load_function,
                     number, scaled_load)
from .matrix import LoadMatrix

BRUTE_FORCE_MAX_N = 8
BRUTE_FORCE_MAX_PLACEMENTS = 2_000_000


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CraftConfig:
    model: DistanceModel = DistanceModel.RECTILINEAR
    enable_three_way: bool = False
    column_exchange: bool = True
    max_iterations: int = 10_000

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass(frozen=True)
class SwapStep:
    kind: str
    facilities: tuple[int, ...]
    cost_before: Fraction
    cost_after: Fraction

    @property
    def gain(self) -> Fraction:
        return self.cost_before - self.cost_after

    def to_dict(self, names: Sequence[str]) -> dict:
        return {
            "kind": self.kind,
            "facilities": [names[f] for f in self.facilities],
            "cost_before": number(self.cost_before),
            "cost_after": number(self.cost_after),
        }


@dataclass(frozen=True)
class SwapTrace:
    steps: tuple[SwapStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def to_list(self, names: Sequence[str]) -> list[dict]:
        return [s.to_dict(names) for s in self.steps]


@dataclass(frozen=True)
class CraftResult:
    layout: BlockLayout
    trace: SwapTrace
    initial_cost: Fraction
    final_cost: Fraction
    converged: bool

    @property
    def iterations(self) -> int:
        return len(self.trace)


@dataclass(frozen=True)
class _Move:
    kind: str
    slots: dict = field(compare=False)  # facility -> new slot
    key: tuple = ()


def _candidate_moves(layout: BlockLayout, cfg: CraftConfig) -> Iterator[_Move]:
    plan = layout.plan
    n = layout.n
    # Items 0..n-1 are facilities; vacant slots get ids n, n+1, ... in slot order.
    taken = set(layout.placement)
    pos = list(layout.placement) + [s for s in plan.slots() if s not in taken]

    for a, b in itertools.combinations(range(len(pos)), 2):
        if a >= n and b >= n:
            continue
        moves = {f: s for f, s in ((a, pos[b]), (b, pos[a])) if f < n}
        yield _Move("two-way", moves, ((a, b), 0, 0))

    if cfg.enable_three_way:
        for t in itertools.combinations(range(len(pos)), 3):
            if sum(x < n for x in t) < 2:
                continue
            a, b, c = t
            for rot, cyc in enumerate(((a, b, c), (a, c, b))):
                x, y, z = cyc
                moves = {f: s for f, s in ((x, pos[y]), (y, pos[z]), (z, pos[x])) if f < n}
                yield _Move("three-way", moves, (t, 1, rot))

    if cfg.column_exchange and plan.rows > 1:
        for c1, c2 in itertools.combinations(range(plan.cols), 2):
            moves = {}
            ids = []
            for item, (r, c) in enumerate(pos):
                if c == c1:
                    ids.append(item)
                    if item < n:
                        moves[item] = (r, c2)
                elif c == c2:
                    ids.append(item)
                    if item < n:
                        moves[item] = (r, c1)
            if moves:
                yield _Move("column-exchange", moves, (tuple(ids), 2, 0))


def improve_once(layout: BlockLayout, m: LoadMatrix, cfg: CraftConfig
                 ) -> tuple[BlockLayout, SwapStep] | None:
    """Apply the best strictly improving move, or return ``None``."""
    arcs = list(m.arcs())
    plan = layout.plan
    table, scale = distance_table(plan, cfg.model)
    idx = [r * plan.cols + c for r, c in layout.placement]
    current = scaled_load(idx, arcs, table)
    best = None
    for mv in _candidate_moves(layout, cfg):
        p = list(idx)
        for f, (r, c) in mv.slots.items():
            p[f] = r * plan.cols + c
        cost = scaled_load(p, arcs, table)
        if cost >= current:
            continue
        if best is None or (cost, mv.key) < (best[0], best[1].key):
            best = (cost, mv)
    if best is None:
        return None
    cost, mv = best
    step = SwapStep(mv.kind, tuple(sorted(mv.slots)), Fraction(current, scale), Fraction(cost, scale))
    return layout.moved(mv.slots), step


def run_craft(layout: BlockLayout, m: LoadMatrix, cfg: CraftConfig) -> CraftResult:
    """Repeat :func:`improve_once` until no move improves or the iteration
    cap is hit (reported through ``converged``)."""
    start = load_function(layout.placement, list(m.arcs()), layout.plan, cfg.model)
    steps = []
    converged = False
    for _ in range(cfg.max_iterations):
        res = improve_once(layout, m, cfg)
        if res is None:
            converged = True
            break
        layout, step = res
        steps.append(step)
    else:
        converged = improve_once(layout, m, cfg) is None
    final = steps[-1].cost_after if steps else start
    return CraftResult(layout, SwapTrace(tuple(steps)), start, final, converged)


def placement_count(n: int, plan: FloorPlan) -> int:
    return math.perm(plan.n_slots, n)


def brute_force_optimum(m: LoadMatrix, plan: FloorPlan, model: DistanceModel
                        ) -> tuple[Fraction, BlockLayout]:
    """Exact minimum of the load function over every injective placement.

    Placements are enumerated in lexicographic order of slot tuples, so the
    first optimum found is the lexicographically smallest one.
    """
    n = m.n
    if n > BRUTE_FORCE_MAX_N:
        raise InstanceTooLarge(f"{n} facilities exceed the enumeration limit of {BRUTE_FORCE_MAX_N}")
    if n > plan.n_slots:
        raise InstanceTooLarge(f"{n} facilities do not fit into {plan.n_slots} slots")
    count = placement_count(n, plan)
    if count > BRUTE_FORCE_MAX_PLACEMENTS:
        raise InstanceTooLarge(f"{count} placements exceed the enumeration limit")
    arcs = list(m.arcs())
    table, scale = distance_table(plan, model)
    best_cost, best = None, None
    # Row-major slot indices enumerate in the same order as (row, col) tuples.
    for p in itertools.permutations(range(plan.n_slots), n):
        cost = scaled_load(p, arcs, table)
        if best_cost is None or cost < best_cost:
            best_cost, best = cost, p
    slots = plan.slots()
    return Fraction(best_cost, scale), BlockLayout(plan, tuple(slots[k] for k in best))
