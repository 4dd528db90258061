"""Plant layout by assignment-seeded CRAFT improvement."""

from .craft import (CraftConfig, CraftResult, InstanceTooLarge, SwapStep, SwapTrace,
                    brute_force_optimum, improve_once, run_craft)
from .hungarian import (Assignment, InfeasibleAssignment, LineCover, adjust, min_line_cover,
                        reduce, solve_assignment)
from .layout import (BlockLayout, CostReport, DistanceModel, FloorPlan, LayoutError,
                     build_floor_plan, distance, initial_layout, total_cost)
from .matrix import (FORBIDDEN, VACANT, CompositeRanking, CostMatrix, LoadMatrix,
                     LoadMatrixError, composite_movements, parse_load_matrix, to_cost_matrix)
from .pipeline import (BenchmarkReport, MatchingObjective, PipelineResult, benchmark_exhaustive,
                       benchmark_seeds, run_mass)

__version__ = "0.1.0"
