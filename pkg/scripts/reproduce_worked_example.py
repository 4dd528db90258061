"""Walk the six-facility example through every stage and print the tables.

    python scripts/reproduce_worked_example.py
"""

from pathlib import Path

from mass_layout.cli import render_grid
from mass_layout.craft import CraftConfig, brute_force_optimum
from mass_layout.layout import DistanceModel, build_floor_plan, number, total_cost
from mass_layout.matrix import FORBIDDEN, composite_movements, parse_load_matrix
from mass_layout.pipeline import run_mass

DATA = Path(__file__).resolve().parent.parent / "data"


def show_table(table, names):
    w = max(len(s) for s in names) + 2
    print(" " * w + "".join(s.rjust(w) for s in names))
    for i, name in enumerate(names):
        cells = []
        for j in range(len(names)):
            v = table.cost[i][j]
            if v is FORBIDDEN:
                cells.append(f"M-{number(table.row_potential[i] + table.col_potential[j])}")
            else:
                cells.append(str(number(v)))
        print(name.ljust(w) + "".join(c.rjust(w) for c in cells))


def main():
    m = parse_load_matrix((DATA / "appendix_loads.csv").read_text())
    plan = build_floor_plan(64, 22, 2, m.n)
    names = m.names
    print(f"grid {plan.rows}x{plan.cols}, cell {number(plan.cell_w_m)} x {number(plan.cell_h_m)} m\n")

    print("composite movements:")
    for (i, j), c in composite_movements(m):
        print(f"  {names[i]}-{names[j]}: {c}")

    res = run_mass(m, plan, CraftConfig(model=DistanceModel.PAPER), column_order="index")
    for k, it in enumerate(res.assignment.history, 1):
        print(f"\ntable {k} (k = {it.cover.k}"
              + (f", shift {number(it.delta)})" if it.delta is not None else ")"))
        show_table(it.table, names)

    print("\nassignment:", ", ".join(f"{names[i]}->{names[j]}" for i, j in res.assignment.pairs()))
    print("\ninitial layout, L =", number(res.initial_cost))
    print(render_grid(res.initial_layout, names))
    for t in total_cost(res.initial_layout, m, DistanceModel.PAPER).terms:
        print(f"  {names[t.source]}->{names[t.target]}: {t.flow} x {number(t.distance)}")
    for s in res.trace:
        print(f"\n{s.kind} {[names[f] for f in s.facilities]}: "
              f"{number(s.cost_before)} -> {number(s.cost_after)}")
    print("\nfinal layout, L* =", number(res.final_cost), " improvement", number(res.improvement))
    print(render_grid(res.final_layout, names))

    opt, _ = brute_force_optimum(m, plan, DistanceModel.PAPER)
    print("\nexhaustive optimum:", number(opt))

    stuck = run_mass(m, plan, CraftConfig(model=DistanceModel.PAPER, column_exchange=False),
                     column_order="index")
    print("facility swaps only:", number(stuck.initial_cost), "->", number(stuck.final_cost))


if __name__ == "__main__":
    main()
