"""Hungarian method for square assignment problems with forbidden cells.

The solver follows the classical table procedure: subtract row minima then
column minima, cover all zeros with the fewest lines, and while fewer than
``n`` lines are needed shift the smallest uncovered value. Forbidden cells are
never a row/column minimum, never covered as zeros and never assigned.

Ties are resolved by lowest row index, then lowest column index.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Rational
from typing import Sequence

from .matrix import FORBIDDEN, CostMatrix


class InfeasibleAssignment(ValueError):
    """No perfect assignment avoids the forbidden cells.

    ``rows`` is a set of rows whose finite cells all lie in ``cols`` while
    ``len(rows) > len(cols)`` (a Hall violator).
    """

    def __init__(self, rows: Sequence[int], cols: Sequence[int], detail: str = ""):
        self.rows = tuple(sorted(rows))
        self.cols = tuple(sorted(cols))
        msg = (f"infeasible assignment: rows {list(self.rows)} can only use "
               f"columns {list(self.cols)}")
        super().__init__(f"{msg} ({detail})" if detail else msg)


@dataclass(frozen=True)
class LineCover:
    covered_rows: frozenset[int]
    covered_cols: frozenset[int]

    @property
    def k(self) -> int:
        return len(self.covered_rows) + len(self.covered_cols)

    def covers(self, i: int, j: int) -> bool:
        return i in self.covered_rows or j in self.covered_cols


@dataclass(frozen=True)
class IterationRecord:
    """One pass of the table procedure: the table, its cover, and the shift
    applied to produce the next table (``None`` on the final pass)."""

    table: CostMatrix
    cover: LineCover
    delta: Rational | None


@dataclass(frozen=True)
class Assignment:
    n: int
    sigma: tuple[int, ...]
    objective: Rational
    certificate_k: int
    history: tuple[IterationRecord, ...] = ()

    def pairs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.sigma))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles of ``sigma``, each starting at its smallest member."""
        seen = set()
        out = []
        for start in range(self.n):
            if start in seen:
                continue
            cyc = []
            i = start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self.sigma[i]
            out.append(tuple(cyc))
        return out


def _check_lines(c: CostMatrix) -> None:
    n = c.n
    for i in range(n):
        if not any(c.finite(i, j) for j in range(n)):
            raise InfeasibleAssignment([i], [], f"row {i} is entirely forbidden")
    for j in range(n):
        if not any(c.finite(i, j) for i in range(n)):
            raise InfeasibleAssignment(range(n), [jj for jj in range(n) if jj != j],
                                       f"column {j} is entirely forbidden")


def reduce(c: CostMatrix) -> CostMatrix:
    """Subtract each row's finite minimum, then each column's.

    The subtracted amounts are added to the potentials so the reduced table
    still records its offset from the original costs.
    """
    _check_lines(c)
    n = c.n
    rows = [list(r) for r in c.cost]
    a = list(c.row_potential)
    b = list(c.col_potential)
    for i in range(n):
        lo = min(v for v in rows[i] if v is not FORBIDDEN)
        if lo:
            rows[i] = [v if v is FORBIDDEN else v - lo for v in rows[i]]
            a[i] += lo
    for j in range(n):
        lo = min(rows[i][j] for i in range(n) if rows[i][j] is not FORBIDDEN)
        if lo:
            for i in range(n):
                if rows[i][j] is not FORBIDDEN:
                    rows[i][j] -= lo
            b[j] += lo
    return CostMatrix(tuple(map(tuple, rows)), tuple(a), tuple(b))


def _max_matching(adj: list[list[int]], n_cols: int) -> list[int | None]:
    """Kuhn's augmenting-path matching; returns ``match_col[j] -> row``."""
    match_col: list[int | None] = [None] * n_cols

    def augment(i, seen):
        for j in adj[i]:
            if j in seen:
                continue
            seen.add(j)
            if match_col[j] is None or augment(match_col[j], seen):
                match_col[j] = i
                return True
        return False

    for i in range(len(adj)):
        augment(i, set())
    return match_col


def _konig(adj: list[list[int]], n: int) -> tuple[list[int | None], set[int], set[int]]:
    """Maximum matching plus the rows/columns reachable by alternating paths
    from unmatched rows."""
    match_col = _max_matching(adj, n)
    matched_rows = {i for i in match_col if i is not None}
    z_rows = {i for i in range(n) if i not in matched_rows}
    z_cols: set[int] = set()
    stack = sorted(z_rows)
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if j in z_cols:
                continue
            z_cols.add(j)
            r = match_col[j]
            if r is not None and r not in z_rows:
                z_rows.add(r)
                stack.append(r)
    return match_col, z_rows, z_cols


def _zero_adjacency(c: CostMatrix) -> list[list[int]]:
    return [[j for j, v in enumerate(row) if v is not FORBIDDEN and v == 0] for row in c.cost]


def _finite_adjacency(c: CostMatrix) -> list[list[int]]:
    return [[j for j, v in enumerate(row) if v is not FORBIDDEN] for row in c.cost]


def max_zero_matching(c: CostMatrix) -> int:
    """Size of a maximum matching using zero cells only."""
    return sum(r is not None for r in _max_matching(_zero_adjacency(c), c.n))


def check_feasible(c: CostMatrix) -> None:
    """Raise :class:`InfeasibleAssignment` unless a perfect matching over
    finite cells exists."""
    adj = _finite_adjacency(c)
    match_col, z_rows, z_cols = _konig(adj, c.n)
    if sum(r is not None for r in match_col) < c.n:
        raise InfeasibleAssignment(z_rows, z_cols)


def min_line_cover(c: CostMatrix) -> LineCover:
    """Fewest row/column lines covering every zero (König construction)."""
    n = c.n
    _, z_rows, z_cols = _konig(_zero_adjacency(c), n)
    return LineCover(frozenset(i for i in range(n) if i not in z_rows), frozenset(z_cols))


def adjust(c: CostMatrix, cover: LineCover) -> CostMatrix:
    """Shift by the smallest uncovered finite value.

    It is subtracted from uncovered cells and added to cells covered twice,
    which is the same as raising the potential of every uncovered row and
    lowering the potential of every covered column.
    """
    n = c.n
    if cover.k >= n:
        raise ValueError(f"cover already has k={cover.k} >= n={n}; nothing to adjust")
    free_rows = [i for i in range(n) if i not in cover.covered_rows]
    free_cols = [j for j in range(n) if j not in cover.covered_cols]
    vals = [c.cost[i][j] for i in free_rows for j in free_cols if c.finite(i, j)]
    if not vals:
        raise InfeasibleAssignment(free_rows, sorted(cover.covered_cols),
                                   "every uncovered cell is forbidden")
    delta = min(vals)
    rows = []
    for i, row in enumerate(c.cost):
        shift = (-delta if i not in cover.covered_rows else 0)
        out = []
        for j, v in enumerate(row):
            if v is FORBIDDEN:
                out.append(v)
            else:
                out.append(v + shift + (delta if j in cover.covered_cols else 0))
        rows.append(tuple(out))
    a = tuple(p + delta if i not in cover.covered_rows else p
              for i, p in enumerate(c.row_potential))
    b = tuple(p - delta if j in cover.covered_cols else p
              for j, p in enumerate(c.col_potential))
    return CostMatrix(tuple(rows), a, b)


def _smallest_zero_permutation(c: CostMatrix) -> tuple[int, ...]:
    """Lexicographically smallest perfect matching on zero cells."""
    n = c.n
    adj = _zero_adjacency(c)
    sigma: list[int] = []
    used: set[int] = set()
    for i in range(n):
        for j in adj[i]:
            if j in used:
                continue
            rest = [[jj for jj in adj[r] if jj not in used and jj != j] for r in range(i + 1, n)]
            if sum(x is not None for x in _max_matching(rest, n)) == n - i - 1:
                sigma.append(j)
                used.add(j)
                break
        else:  # pragma: no cover - guarded by the k == n certificate
            raise AssertionError("no perfect zero matching despite k == n")
    return tuple(sigma)


def solve_assignment(c: CostMatrix) -> Assignment:
    """Minimum-cost assignment avoiding forbidden cells.

    Among optimal permutations the lexicographically smallest is returned:
    once ``k == n`` the optimal permutations are exactly the perfect
    matchings on zero cells of the final table.
    """
    check_feasible(c)
    table = reduce(c)
    history = []
    while True:
        cover = min_line_cover(table)
        if cover.k == c.n:
            history.append(IterationRecord(table, cover, None))
            break
        nxt = adjust(table, cover)
        history.append(IterationRecord(table, cover, _delta(table, nxt, cover)))
        table = nxt
    sigma = _smallest_zero_permutation(table)
    objective = sum(c.cost[i][j] for i, j in enumerate(sigma))
    return Assignment(c.n, sigma, objective, cover.k, tuple(history))


def _delta(before: CostMatrix, after: CostMatrix, cover: LineCover) -> Rational:
    i = next(i for i in range(before.n) if i not in cover.covered_rows)
    return after.row_potential[i] - before.row_potential[i]


def assignment_cost(c: CostMatrix, sigma: Sequence[int]) -> Rational | None:
    """Cost of ``sigma`` under ``c``; ``None`` if it uses a forbidden cell."""
    total = 0
    for i, j in enumerate(sigma):
        v = c.cost[i][j]
        if v is FORBIDDEN:
            return None
        total += v
    return total
