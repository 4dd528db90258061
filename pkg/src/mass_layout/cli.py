"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 infeasible assignment, 3 instance too
large for the enumeration oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .craft import CraftConfig, InstanceTooLarge, brute_force_optimum
from .hungarian import InfeasibleAssignment
from .layout import (BlockLayout, DistanceModel, FloorPlan, LayoutError, build_floor_plan,
                     number)
from .matrix import LoadMatrix, LoadMatrixError, parse_load_matrix
from .pipeline import (MatchingObjective, assignment_to_dict, benchmark_exhaustive,
                       benchmark_seeds, run_mass, solve_matching)

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_TOO_LARGE = 0, 1, 2, 3
U64_MAX = 2**64 - 1


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v <= U64_MAX:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--loads", required=True, type=Path, help="load-matrix CSV")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--objective", choices=[o.value for o in MatchingObjective],
                        default=MatchingObjective.MINIMIZE.value)

    layout = argparse.ArgumentParser(add_help=False)
    layout.add_argument("--floor", required=True, type=Path, help="floor config JSON")
    layout.add_argument("--model", choices=[m.value for m in DistanceModel],
                        default=DistanceModel.RECTILINEAR.value)
    layout.add_argument("--three-way", action="store_true", help="also try 3-cycles of slots")
    layout.add_argument("--no-column-exchange", action="store_true",
                        help="restrict CRAFT to facility swaps")
    layout.add_argument("--reproduce-paper", action="store_true",
                        help="lay assigned pairs out by facility index (worked-example order)")

    p = _Parser(prog="mass-layout", description="Hungarian-seeded CRAFT plant layout.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("solve", parents=[common, layout], help="assignment seed + CRAFT")
    sub.add_parser("assign", parents=[common], help="assignment stage only")
    b = sub.add_parser("benchmark", parents=[common, layout], help="seeded vs random starts")
    b.add_argument("--trials", type=_positive_int, default=100)
    b.add_argument("--seed", type=_seed, default=0)
    b.add_argument("--exhaustive", action="store_true", help="start once from every placement")
    sub.add_parser("oracle", parents=[common, layout], help="exact optimum by enumeration")
    return p


def read_loads(path: Path) -> LoadMatrix:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    return parse_load_matrix(text)


def read_floor(path: Path, n: int) -> FloorPlan:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: floor config must be a JSON object")
    dims = {}
    for key in ("width_m", "height_m", "aisle_m"):
        v = data.get(key)
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise InputError(f"{path}: {key} must be a number")
        dims[key] = v
    grid = {}
    for key in ("rows", "cols"):
        v = data.get(key)
        if v is not None and (isinstance(v, bool) or not isinstance(v, int) or v < 1):
            raise InputError(f"{path}: {key} must be a positive integer")
        grid[key] = v
    return build_floor_plan(dims["width_m"], dims["height_m"], dims["aisle_m"], n, **grid)


def render_grid(layout: BlockLayout, names: Sequence[str]) -> str:
    """Fixed-width box per slot, one-character gutter and a blank line per aisle."""
    width = max(len(s) for s in names) + 2
    edge = " ".join("+" + "-" * width + "+" for _ in range(layout.plan.cols))
    blocks = []
    for row in layout.grid():
        body = " ".join("|" + (names[f] if f is not None else "").center(width) + "|" for f in row)
        blocks.append("\n".join((edge, body, edge)))
    return "\n\n".join(blocks)


def _config(args) -> CraftConfig:
    return CraftConfig(model=DistanceModel(args.model), enable_three_way=args.three_way,
                       column_exchange=not args.no_column_exchange)


def _order(args) -> str:
    return "index" if args.reproduce_paper else "composite"


def cmd_solve(args, out) -> int:
    m = read_loads(args.loads)
    plan = read_floor(args.floor, m.n)
    res = run_mass(m, plan, _config(args), MatchingObjective(args.objective), _order(args))
    if args.format == "json":
        out.write(json.dumps(res.to_dict(), indent=2) + "\n")
        return EXIT_OK
    names = m.names
    lines = [
        "matching: " + ", ".join(f"{names[i]}->{names[j]}" for i, j in res.assignment.pairs()),
        f"initial cost: {number(res.initial_cost)}",
        f"final cost: {number(res.final_cost)}",
        f"improvement: {number(res.improvement)}",
        f"iterations: {len(res.trace)}",
    ]
    for k, s in enumerate(res.trace, 1):
        moved = " ".join(names[f] for f in s.facilities)
        lines.append(f"  {k}. {s.kind} [{moved}]: {number(s.cost_before)} -> {number(s.cost_after)}")
    if not res.converged:
        lines.append("warning: iteration limit reached before a local optimum")
    lines += ["", "initial layout:", render_grid(res.initial_layout, names),
              "", "final layout:", render_grid(res.final_layout, names)]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_assign(args, out) -> int:
    m = read_loads(args.loads)
    a = solve_matching(m, MatchingObjective(args.objective))
    if args.format == "json":
        out.write(json.dumps(assignment_to_dict(a, m.names), indent=2) + "\n")
        return EXIT_OK
    names = m.names
    w = max(len(s) for s in names) + 1
    lines = [" " * w + "".join(s.rjust(w) for s in names)]
    for i, name in enumerate(names):
        lines.append(name.ljust(w) + "".join(("*" if a.sigma[i] == j else "-").rjust(w)
                                             for j in range(m.n)))
    lines += ["", "pairs: " + ", ".join(f"({names[i]},{names[j]})" for i, j in a.pairs()),
              f"objective: {number(a.objective)}", f"k: {a.certificate_k}"]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_benchmark(args, out) -> int:
    m = read_loads(args.loads)
    plan = read_floor(args.floor, m.n)
    cfg, obj = _config(args), MatchingObjective(args.objective)
    if args.exhaustive:
        rep = benchmark_exhaustive(m, plan, cfg, obj, _order(args))
    else:
        rep = benchmark_seeds(m, plan, cfg, args.trials, args.seed, obj, _order(args))
    if args.format == "json":
        out.write(json.dumps(rep.to_dict(), indent=2) + "\n")
        return EXIT_OK
    d = rep.to_dict()
    lines = [f"{'seed':>8} {'iterations':>10} {'final cost':>12}"]
    lines += [f"{t['seed']:>8} {t['iterations']:>10} {t['final_cost']:>12}" for t in d["random_trials"]]
    lines += [
        "",
        f"seeded start: {d['mass_iterations']} iterations, final cost {d['mass_final_cost']}",
        f"random starts: mean {d['mean_random_iterations']} iterations over {len(rep.random_trials)} trials",
        f"global optimum: {d['global_optimum'] if d['global_optimum'] is not None else 'not computed'}",
    ]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    m = read_loads(args.loads)
    plan = read_floor(args.floor, m.n)
    cost, layout = brute_force_optimum(m, plan, DistanceModel(args.model))
    if args.format == "json":
        out.write(json.dumps({"global_optimum": number(cost), "layout": layout.to_dict(m.names)},
                             indent=2) + "\n")
        return EXIT_OK
    out.write(f"global optimum: {number(cost)}\n{render_grid(layout, m.names)}\n")
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "assign": cmd_assign, "benchmark": cmd_benchmark,
            "oracle": cmd_oracle}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (InputError, LoadMatrixError, LayoutError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleAssignment as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InstanceTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_TOO_LARGE


if __name__ == "__main__":
    sys.exit(main())
