"""Hungarian-seeded CRAFT: the full layout pipeline and a seeding benchmark.

The pipeline turns the load matrix into an assignment cost matrix (vacant
cells forbidden), solves it, places each assigned pair side by side across
an aisle, and hands that block layout to the swap-improvement engine.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from statistics import mean
from typing import Sequence

from .craft import (BRUTE_FORCE_MAX_N, BRUTE_FORCE_MAX_PLACEMENTS, CraftConfig, InstanceTooLarge,
                    SwapTrace, brute_force_optimum, placement_count, run_craft)
from .hungarian import Assignment, solve_assignment
from .layout import BlockLayout, FloorPlan, initial_layout, number, total_cost
from .matrix import FORBIDDEN, CostMatrix, LoadMatrix, composite, to_cost_matrix


class MatchingObjective(enum.Enum):
    # Minimise the raw load matrix, as the method prescribes.
    MINIMIZE = "minimize"
    # Maximise the two-way flow between partners instead.
    MAX_COMPOSITE = "max-composite"


def composite_cost_matrix(m: LoadMatrix) -> CostMatrix:
    """Negated two-way flows; a cell is forbidden only when both directions
    are vacant (and on the diagonal)."""
    n = m.n
    return CostMatrix(tuple(
        tuple(FORBIDDEN if i == j or (m.is_vacant(i, j) and m.is_vacant(j, i))
              else -composite(m, i, j) for j in range(n))
        for i in range(n)
    ))


def assignment_to_dict(a: Assignment, names: Sequence[str]) -> dict:
    return {
        "n": a.n,
        "sigma": {names[i]: names[j] for i, j in enumerate(a.sigma)},
        "objective": number(a.objective),
        "certificate_k": a.certificate_k,
    }


@dataclass(frozen=True)
class PipelineResult:
    names: tuple[str, ...]
    assignment: Assignment
    initial_layout: BlockLayout
    initial_cost: Fraction
    final_layout: BlockLayout
    final_cost: Fraction
    trace: SwapTrace
    converged: bool = True

    @property
    def improvement(self) -> Fraction:
        return self.initial_cost - self.final_cost

    def to_dict(self) -> dict:
        return {
            "assignment": assignment_to_dict(self.assignment, self.names),
            "initial_layout": self.initial_layout.to_dict(self.names),
            "initial_cost": number(self.initial_cost),
            "final_layout": self.final_layout.to_dict(self.names),
            "final_cost": number(self.final_cost),
            "improvement": number(self.improvement),
            "trace": self.trace.to_list(self.names),
            "converged": self.converged,
        }


def solve_matching(m: LoadMatrix, objective: MatchingObjective = MatchingObjective.MINIMIZE
                   ) -> Assignment:
    if objective is MatchingObjective.MAX_COMPOSITE:
        return solve_assignment(composite_cost_matrix(m))
    return solve_assignment(to_cost_matrix(m))


def run_mass(m: LoadMatrix, plan: FloorPlan, cfg: CraftConfig = CraftConfig(),
             objective: MatchingObjective = MatchingObjective.MINIMIZE,
             column_order: str = "composite") -> PipelineResult:
    """Assignment seed, initial block layout, then CRAFT to a local optimum.

    ``column_order="index"`` lays the assigned groups out by lowest facility
    index instead of by descending two-way flow.
    """
    if m.n == 1:
        # Nothing to pair; the lone facility takes the only slot it needs.
        a = Assignment(1, (0,), 0, 1)
    else:
        a = solve_matching(m, objective)
    seed = initial_layout(a, m, plan, column_order)
    start = total_cost(seed, m, cfg.model).total
    res = run_craft(seed, m, cfg)
    return PipelineResult(m.names, a, seed, start, res.layout, res.final_cost,
                          res.trace, res.converged)


@dataclass(frozen=True)
class Trial:
    seed: int
    iterations: int
    final_cost: Fraction

    def to_dict(self) -> dict:
        return {"seed": self.seed, "iterations": self.iterations,
                "final_cost": number(self.final_cost)}


@dataclass(frozen=True)
class BenchmarkReport:
    mass_iterations: int
    mass_final_cost: Fraction
    random_trials: tuple[Trial, ...]
    global_optimum: Fraction | None

    @property
    def mean_iterations(self) -> float:
        return mean(t.iterations for t in self.random_trials)

    def to_dict(self) -> dict:
        return {
            "mass_iterations": self.mass_iterations,
            "mass_final_cost": number(self.mass_final_cost),
            "mean_random_iterations": round(self.mean_iterations, 6),
            "global_optimum": None if self.global_optimum is None else number(self.global_optimum),
            "random_trials": [t.to_dict() for t in self.random_trials],
        }


def _oracle(m: LoadMatrix, plan: FloorPlan, cfg: CraftConfig) -> Fraction | None:
    if m.n > BRUTE_FORCE_MAX_N or m.n > plan.n_slots:
        return None
    if placement_count(m.n, plan) > BRUTE_FORCE_MAX_PLACEMENTS:
        return None
    return brute_force_optimum(m, plan, cfg.model)[0]


def random_placement(n: int, plan: FloorPlan, seed: int) -> BlockLayout:
    return BlockLayout(plan, tuple(random.Random(seed).sample(plan.slots(), n)))


def benchmark_seeds(m: LoadMatrix, plan: FloorPlan, cfg: CraftConfig = CraftConfig(),
                    trials: int = 100, rng_seed: int = 0,
                    objective: MatchingObjective = MatchingObjective.MINIMIZE,
                    column_order: str = "composite", with_oracle: bool = True) -> BenchmarkReport:
    """CRAFT from the assignment seed versus from uniformly random placements.

    Trial ``t`` draws its placement from ``random.Random(rng_seed + t)``, so
    each trial is reproducible on its own.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    mass = run_mass(m, plan, cfg, objective, column_order)
    out = []
    for t in range(trials):
        seed = rng_seed + t
        res = run_craft(random_placement(m.n, plan, seed), m, cfg)
        out.append(Trial(seed, res.iterations, res.final_cost))
    opt = _oracle(m, plan, cfg) if with_oracle else None
    return BenchmarkReport(len(mass.trace), mass.final_cost, tuple(out), opt)


def benchmark_exhaustive(m: LoadMatrix, plan: FloorPlan, cfg: CraftConfig = CraftConfig(),
                         objective: MatchingObjective = MatchingObjective.MINIMIZE,
                         column_order: str = "composite") -> BenchmarkReport:
    """Like :func:`benchmark_seeds` but starting from every placement once;
    a trial's ``seed`` is the placement's rank in lexicographic order."""
    if placement_count(m.n, plan) > BRUTE_FORCE_MAX_PLACEMENTS:
        raise InstanceTooLarge("too many placements to start from each one")
    mass = run_mass(m, plan, cfg, objective, column_order)
    out = []
    for rank, p in enumerate(itertools.permutations(plan.slots(), m.n)):
        res = run_craft(BlockLayout(plan, p), m, cfg)
        out.append(Trial(rank, res.iterations, res.final_cost))
    opt = min(t.final_cost for t in out)
    return BenchmarkReport(len(mass.trace), mass.final_cost, tuple(out), opt)
