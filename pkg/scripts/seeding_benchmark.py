"""Improvement passes needed from the assignment seed versus other starts.

    python scripts/seeding_benchmark.py [--instances 50] [--n 6] [--seed 0]

Runs the six-facility example from every placement, then a batch of random
instances with ``--n`` facilities on a 2-row grid, comparing the seeded
start with random starts (and the exhaustive optimum where it is cheap).
"""

import argparse
import random
from pathlib import Path
from statistics import mean

from mass_layout.craft import CraftConfig
from mass_layout.hungarian import InfeasibleAssignment
from mass_layout.layout import DistanceModel, FloorPlan, build_floor_plan
from mass_layout.matrix import VACANT, LoadMatrix, parse_load_matrix
from mass_layout.pipeline import benchmark_exhaustive, benchmark_seeds

DATA = Path(__file__).resolve().parent.parent / "data"


def random_matrix(rng, n, density):
    flow = [[VACANT if i == j or rng.random() > density else rng.randint(1, 50)
             for j in range(n)] for i in range(n)]
    return LoadMatrix(tuple(f"D{k}" for k in range(n)), tuple(map(tuple, flow)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=50)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--model", choices=[m.value for m in DistanceModel], default="rectilinear")
    args = ap.parse_args()

    m = parse_load_matrix((DATA / "appendix_loads.csv").read_text())
    rep = benchmark_exhaustive(m, build_floor_plan(64, 22, 2, 6), CraftConfig(model=DistanceModel.PAPER),
                               column_order="index")
    print(f"worked example: seeded {rep.mass_iterations} pass(es) to {rep.mass_final_cost}, "
          f"all 720 starts mean {rep.mean_iterations:.3f}, optimum {rep.global_optimum}")

    rng = random.Random(args.seed)
    cfg = CraftConfig(model=DistanceModel(args.model))
    cols = -(-args.n // 2)
    plan = FloorPlan(cols * 12, 22, 2, 2, cols)
    seeded_iters, random_iters, seeded_gap, random_gap = [], [], [], []
    skipped = 0
    for k in range(args.instances):
        m = random_matrix(rng, args.n, rng.uniform(0.3, 0.8))
        try:
            rep = benchmark_seeds(m, plan, cfg, args.trials, rng_seed=args.seed * 100_000 + k * 1000)
        except InfeasibleAssignment:
            skipped += 1
            continue
        seeded_iters.append(rep.mass_iterations)
        random_iters.append(rep.mean_iterations)
        if rep.global_optimum:
            seeded_gap.append(float(rep.mass_final_cost / rep.global_optimum) - 1)
            random_gap.append(mean(float(t.final_cost / rep.global_optimum) - 1
                                   for t in rep.random_trials))
    print(f"\n{len(seeded_iters)} random instances (n={args.n}, {args.model}), {skipped} infeasible skipped")
    if seeded_iters:
        print(f"  passes: seeded mean {mean(seeded_iters):.3f}, random mean {mean(random_iters):.3f}")
    if seeded_gap:
        print(f"  gap to optimum: seeded mean {100 * mean(seeded_gap):.2f}%, "
              f"random mean {100 * mean(random_gap):.2f}%")


if __name__ == "__main__":
    main()
