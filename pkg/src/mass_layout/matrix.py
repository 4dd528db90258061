"""Load matrices, composite movements and assignment cost matrices.

A load matrix holds the directed material flow ``l[i][j]`` (in load-units)
from facility ``i`` to facility ``j``. Cells without any flow are *vacant*.
When the matrix is handed to the assignment solver, vacant cells become
*forbidden* cells. The usual textbook device is to write a big ``M`` into
them; here they are a symbolic marker so that no magnitude has to be chosen
and reductions stay exact.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from numbers import Rational
from typing import Iterator, Sequence, Union


class Marker(enum.Enum):
    VACANT = "-"
    FORBIDDEN = "M"

    def __repr__(self) -> str:
        return self.name


VACANT = Marker.VACANT
FORBIDDEN = Marker.FORBIDDEN

Flow = Union[int, Marker]
Cost = Union[Rational, Marker]


class LoadMatrixError(ValueError):
    """Malformed or invalid load-matrix input.

    ``row`` and ``column`` locate the offending cell (1-based data row,
    1-based data column) when the problem is tied to one cell.
    """

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.row = row
        self.column = column


@dataclass(frozen=True)
class LoadMatrix:
    names: tuple[str, ...]
    flow: tuple[tuple[Flow, ...], ...]

    def __post_init__(self):
        names = tuple(self.names)
        flow = tuple(tuple(row) for row in self.flow)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "flow", flow)
        n = len(names)
        if n < 1:
            raise LoadMatrixError("load matrix needs at least one facility")
        if any(not isinstance(s, str) or not s.strip() for s in names):
            raise LoadMatrixError("facility names must be non-empty strings")
        if len(set(names)) != n:
            dup = sorted({s for s in names if names.count(s) > 1})
            raise LoadMatrixError(f"duplicate facility names: {', '.join(dup)}")
        if len(flow) != n:
            raise LoadMatrixError(f"expected {n} rows, got {len(flow)}")
        for i, row in enumerate(flow):
            if len(row) != n:
                raise LoadMatrixError(f"expected {n} cells, got {len(row)}", row=i + 1)
            for j, v in enumerate(row):
                if v is VACANT:
                    continue
                if i == j:
                    raise LoadMatrixError("diagonal cell must be vacant", row=i + 1, column=j + 1)
                if isinstance(v, bool) or not isinstance(v, int):
                    raise LoadMatrixError(f"flow must be an integer, got {v!r}", row=i + 1, column=j + 1)
                if v < 0:
                    raise LoadMatrixError(f"negative flow {v}", row=i + 1, column=j + 1)

    @property
    def n(self) -> int:
        return len(self.names)

    def load(self, i: int, j: int) -> int:
        """Flow from ``i`` to ``j``, with vacant cells counted as zero."""
        v = self.flow[i][j]
        return 0 if v is VACANT else v

    def is_vacant(self, i: int, j: int) -> bool:
        return self.flow[i][j] is VACANT

    def index(self, name: str) -> int:
        return self.names.index(name)

    def arcs(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(i, j, flow)`` for every non-vacant cell, row-major."""
        for i, row in enumerate(self.flow):
            for j, v in enumerate(row):
                if v is not VACANT:
                    yield i, j, v

    def transpose(self) -> LoadMatrix:
        return LoadMatrix(self.names, tuple(zip(*self.flow)))

    def relabel(self, perm: Sequence[int]) -> LoadMatrix:
        """Return the same flows with facility ``k`` renumbered as ``perm[k]``."""
        n = self.n
        inv = [0] * n
        for old, new in enumerate(perm):
            inv[new] = old
        names = tuple(self.names[inv[k]] for k in range(n))
        flow = tuple(tuple(self.flow[inv[a]][inv[b]] for b in range(n)) for a in range(n))
        return LoadMatrix(names, flow)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", *self.names])
        for name, row in zip(self.names, self.flow):
            w.writerow([name, *("-" if v is VACANT else str(v) for v in row)])
        return buf.getvalue()


def parse_load_matrix(text: str) -> LoadMatrix:
    """Parse the ``name,<facilities...>`` CSV format.

    Cells are non-negative integers, ``-`` or empty (vacant). The diagonal
    must be vacant. Errors carry the 1-based data row and column.
    """
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise LoadMatrixError("empty load matrix")
    header = [c.strip() for c in rows[0]]
    if len(header) < 2:
        raise LoadMatrixError("header must list at least one facility")
    names = header[1:]
    n = len(names)
    if len(rows) - 1 != n:
        raise LoadMatrixError(f"matrix is not square: {n} columns but {len(rows) - 1} rows")

    flow = []
    for i, raw in enumerate(rows[1:]):
        cells = [c.strip() for c in raw]
        if len(cells) != n + 1:
            raise LoadMatrixError(f"expected {n} cells, got {len(cells) - 1}", row=i + 1)
        if cells[0] != names[i]:
            raise LoadMatrixError(
                f"row label {cells[0]!r} does not match header {names[i]!r}", row=i + 1
            )
        out: list[Flow] = []
        for j, c in enumerate(cells[1:]):
            if c in ("", "-"):
                out.append(VACANT)
                continue
            try:
                v = int(c)
            except ValueError:
                raise LoadMatrixError(
                    f"non-numeric cell {c!r} ({names[i]} -> {names[j]})", row=i + 1, column=j + 1
                ) from None
            if v < 0:
                raise LoadMatrixError(
                    f"negative flow {v} ({names[i]} -> {names[j]})", row=i + 1, column=j + 1
                )
            out.append(v)
        flow.append(out)
    return LoadMatrix(tuple(names), tuple(tuple(r) for r in flow))


@dataclass(frozen=True)
class CompositeRanking:
    """Facility pairs ``(i, j)`` with ``i < j`` ranked by two-way flow."""

    entries: tuple[tuple[tuple[int, int], int], ...] = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)


def composite(m: LoadMatrix, i: int, j: int) -> int:
    return m.load(i, j) + m.load(j, i)


def composite_movements(m: LoadMatrix) -> CompositeRanking:
    pairs = []
    for i in range(m.n):
        for j in range(i + 1, m.n):
            c = composite(m, i, j)
            if c > 0:
                pairs.append(((i, j), c))
    pairs.sort(key=lambda e: (-e[1], e[0]))
    return CompositeRanking(tuple(pairs))


@dataclass(frozen=True)
class CostMatrix:
    """Assignment costs with forbidden cells and reduction potentials.

    For a matrix obtained by reductions of an original ``C`` the identity
    ``cost[i][j] == C[i][j] - row_potential[i] - col_potential[j]`` holds on
    every finite cell.
    """

    cost: tuple[tuple[Cost, ...], ...]
    row_potential: tuple[Rational, ...] = None
    col_potential: tuple[Rational, ...] = None

    def __post_init__(self):
        cost = tuple(tuple(row) for row in self.cost)
        n = len(cost)
        if n < 1 or any(len(r) != n for r in cost):
            raise ValueError("cost matrix must be square and non-empty")
        for row in cost:
            for v in row:
                if v is FORBIDDEN:
                    continue
                if isinstance(v, (bool, Marker)) or not isinstance(v, Rational):
                    raise ValueError(f"cost cells must be exact numbers or FORBIDDEN, got {v!r}")
        rp = tuple(self.row_potential) if self.row_potential is not None else (0,) * n
        cp = tuple(self.col_potential) if self.col_potential is not None else (0,) * n
        if len(rp) != n or len(cp) != n:
            raise ValueError("potentials must have one entry per row/column")
        object.__setattr__(self, "cost", cost)
        object.__setattr__(self, "row_potential", rp)
        object.__setattr__(self, "col_potential", cp)

    @property
    def n(self) -> int:
        return len(self.cost)

    def finite(self, i: int, j: int) -> bool:
        return self.cost[i][j] is not FORBIDDEN

    def original(self, i: int, j: int) -> Cost:
        """The cell value before any reduction."""
        v = self.cost[i][j]
        if v is FORBIDDEN:
            return FORBIDDEN
        return v + self.row_potential[i] + self.col_potential[j]

    def zeros(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.cost) for j, v in enumerate(row)
                if v is not FORBIDDEN and v == 0]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Cost | None]]) -> CostMatrix:
        """Build from nested lists, with ``None`` accepted for FORBIDDEN."""
        return cls(tuple(tuple(FORBIDDEN if v is None else v for v in r) for r in rows))


def to_cost_matrix(m: LoadMatrix) -> CostMatrix:
    return CostMatrix(tuple(
        tuple(FORBIDDEN if v is VACANT else v for v in row) for row in m.flow
    ))
