"""Independent brute-force references. Nothing here imports the solver paths
under test."""

import itertools
import math
from fractions import Fraction


def brute_assignment(rows):
    """Minimum cost over permutations avoiding ``None`` cells, and every
    permutation attaining it (sorted). ``(None, [])`` when infeasible."""
    n = len(rows)
    best, argbest = None, []
    for p in itertools.permutations(range(n)):
        if any(rows[i][p[i]] is None for i in range(n)):
            continue
        c = sum(rows[i][p[i]] for i in range(n))
        if best is None or c < best:
            best, argbest = c, [p]
        elif c == best:
            argbest.append(p)
    return best, argbest


def brute_zero_matching(rows):
    """Largest number of zero cells a single permutation can pick up."""
    n = len(rows)
    return max(sum(rows[i][p[i]] == 0 for i in range(n) if rows[i][p[i]] is not None)
               for p in itertools.permutations(range(n)))


def slot_geometry(width, height, aisle, nrows, ncols):
    w = (Fraction(width) - (ncols - 1) * Fraction(aisle)) / ncols
    h = (Fraction(height) - (nrows - 1) * Fraction(aisle)) / nrows
    return w, h


def paper_distance(a, b, width, height, aisle, nrows, ncols):
    """Aisle width inside a column, otherwise cell pitch times column gap."""
    if a == b:
        return 0
    w, _ = slot_geometry(width, height, aisle, nrows, ncols)
    if a[1] == b[1]:
        return Fraction(aisle)
    return (w + Fraction(aisle)) * abs(a[1] - b[1])


def rectilinear_distance(a, b, width, height, aisle, nrows, ncols):
    w, h = slot_geometry(width, height, aisle, nrows, ncols)
    pitch_x, pitch_y = w + Fraction(aisle), h + Fraction(aisle)
    return pitch_x * abs(a[1] - b[1]) + pitch_y * abs(a[0] - b[0])


def layout_cost(flows, placement, dist):
    """``flows`` maps (i, j) -> load; ``placement[i]`` is (row, col)."""
    return sum(v * dist(placement[i], placement[j]) for (i, j), v in flows.items())


def brute_layout_optimum(flows, n, nrows, ncols, dist):
    slots = [(r, c) for r in range(nrows) for c in range(ncols)]
    table = {(a, b): Fraction(dist(a, b)) for a in slots for b in slots}
    scale = math.lcm(*(d.denominator for d in table.values()))
    table = {k: int(d * scale) for k, d in table.items()}
    arcs = list(flows.items())
    best = min(sum(v * table[p[i], p[j]] for (i, j), v in arcs)
               for p in itertools.permutations(slots, n))
    return Fraction(best, scale)
