"""Floor geometry, block layouts, inter-facility distances and the load function.

Facilities occupy equal rectangular slots on a ``rows x cols`` grid separated
by aisles. All geometry is kept in :class:`fractions.Fraction` so that cost
comparisons are exact.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .hungarian import Assignment
from .matrix import LoadMatrix, composite


class LayoutError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    """Exact conversion; floats go through their shortest decimal repr."""
    if isinstance(x, bool):
        raise TypeError("bool is not a dimension")
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class FloorPlan:
    width_m: Fraction
    height_m: Fraction
    aisle_m: Fraction
    rows: int
    cols: int

    def __post_init__(self):
        for name in ("width_m", "height_m", "aisle_m"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.rows < 1 or self.cols < 1:
            raise LayoutError("grid needs at least one row and one column")
        if min(self.width_m, self.height_m, self.aisle_m) <= 0:
            raise LayoutError("floor dimensions and aisle width must be positive")
        if self.cell_w_m <= 0 or self.cell_h_m <= 0:
            raise LayoutError(
                f"aisle {self.aisle_m} m leaves no room for a {self.rows}x{self.cols} grid "
                f"on a {self.width_m} x {self.height_m} m floor"
            )

    @property
    def cell_w_m(self) -> Fraction:
        return (self.width_m - (self.cols - 1) * self.aisle_m) / self.cols

    @property
    def cell_h_m(self) -> Fraction:
        return (self.height_m - (self.rows - 1) * self.aisle_m) / self.rows

    @property
    def n_slots(self) -> int:
        return self.rows * self.cols

    def slots(self) -> list[tuple[int, int]]:
        return [(r, c) for r in range(self.rows) for c in range(self.cols)]

    def centroid(self, slot: tuple[int, int]) -> tuple[Fraction, Fraction]:
        r, c = slot
        x = c * (self.cell_w_m + self.aisle_m) + self.cell_w_m / 2
        y = r * (self.cell_h_m + self.aisle_m) + self.cell_h_m / 2
        return x, y

    def to_dict(self) -> dict:
        return {
            "width_m": number(self.width_m),
            "height_m": number(self.height_m),
            "aisle_m": number(self.aisle_m),
            "rows": self.rows,
            "cols": self.cols,
            "cell_w_m": number(self.cell_w_m),
            "cell_h_m": number(self.cell_h_m),
        }


def number(x: Rational):
    """JSON/text form of an exact quantity: int when integral, else float."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else float(x)


def _fits(width, height, aisle, rows, cols) -> bool:
    return width - (cols - 1) * aisle > 0 and height - (rows - 1) * aisle > 0


def build_floor_plan(width_m, height_m, aisle_m, n: int,
                     rows: int | None = None, cols: int | None = None) -> FloorPlan:
    """Choose a slot grid for ``n`` facilities.

    Without an override the grid uses the fewest slots that hold ``n``
    facilities; among equally small grids the one whose columns-to-rows
    ratio is closest (multiplicatively) to the floor's width-to-height ratio
    wins, then the one with fewer rows.
    """
    w, h, a = as_fraction(width_m), as_fraction(height_m), as_fraction(aisle_m)
    if n < 1:
        raise LayoutError("need at least one facility")
    if min(w, h, a) <= 0:
        raise LayoutError("floor dimensions and aisle width must be positive")
    if rows is not None or cols is not None:
        if rows is None:
            rows = math.ceil(n / cols)
        if cols is None:
            cols = math.ceil(n / rows)
        if rows * cols < n:
            raise LayoutError(f"{rows}x{cols} grid has fewer than {n} slots")
        return FloorPlan(w, h, a, rows, cols)

    floor_ratio = w / h
    shapes = []
    for r in range(1, n + 1):
        c = math.ceil(n / r)
        if _fits(w, h, a, r, c):
            q = Fraction(c, r) / floor_ratio
            shapes.append((r * c, max(q, 1 / q), r, c))
    if not shapes:
        raise LayoutError(f"aisle {a} m is too wide to fit {n} facilities on a {w} x {h} m floor")
    _, _, r, c = min(shapes)
    return FloorPlan(w, h, a, r, c)


class DistanceModel(enum.Enum):
    """``PAPER``: the aisle width within a column, otherwise
    ``(cell width + aisle) * column gap`` with rows ignored.
    ``RECTILINEAR``: Manhattan distance between slot centroids."""

    PAPER = "paper"
    RECTILINEAR = "rectilinear"


@dataclass(frozen=True)
class BlockLayout:
    plan: FloorPlan
    placement: tuple[tuple[int, int], ...]

    def __post_init__(self):
        placement = tuple(tuple(s) for s in self.placement)
        object.__setattr__(self, "placement", placement)
        for s in placement:
            if not (0 <= s[0] < self.plan.rows and 0 <= s[1] < self.plan.cols):
                raise LayoutError(f"slot {s} lies outside the {self.plan.rows}x{self.plan.cols} grid")
        if len(set(placement)) != len(placement):
            raise LayoutError("two facilities share a slot")

    @property
    def n(self) -> int:
        return len(self.placement)

    def occupant(self) -> dict[tuple[int, int], int]:
        return {s: f for f, s in enumerate(self.placement)}

    def grid(self) -> list[list[int | None]]:
        g: list[list[int | None]] = [[None] * self.plan.cols for _ in range(self.plan.rows)]
        for f, (r, c) in enumerate(self.placement):
            g[r][c] = f
        return g

    def moved(self, new_slots: dict[int, tuple[int, int]]) -> BlockLayout:
        p = list(self.placement)
        for f, s in new_slots.items():
            p[f] = s
        return BlockLayout(self.plan, tuple(p))

    def to_dict(self, names: Sequence[str]) -> dict:
        return {
            "plan": self.plan.to_dict(),
            "placement": [{"facility": names[f], "row": r, "col": c}
                          for f, (r, c) in enumerate(self.placement)],
        }

    @classmethod
    def from_dict(cls, data: dict, names: Sequence[str]) -> BlockLayout:
        p = data["plan"]
        plan = FloorPlan(p["width_m"], p["height_m"], p["aisle_m"], p["rows"], p["cols"])
        slots = {e["facility"]: (e["row"], e["col"]) for e in data["placement"]}
        return cls(plan, tuple(slots[name] for name in names))


def _slot_distance(plan: FloorPlan, a: tuple[int, int], b: tuple[int, int],
                   model: DistanceModel) -> Fraction:
    if a == b:
        return Fraction(0)
    if model is DistanceModel.PAPER:
        if a[1] == b[1]:
            return plan.aisle_m
        return (plan.cell_w_m + plan.aisle_m) * abs(a[1] - b[1])
    (xa, ya), (xb, yb) = plan.centroid(a), plan.centroid(b)
    return abs(xa - xb) + abs(ya - yb)


def distance(layout: BlockLayout, i: int, j: int, model: DistanceModel) -> Fraction:
    if not (0 <= i < layout.n and 0 <= j < layout.n):
        raise LayoutError(f"facility {i if not 0 <= i < layout.n else j} is not placed")
    return _slot_distance(layout.plan, layout.placement[i], layout.placement[j], model)


@dataclass(frozen=True)
class CostTerm:
    source: int
    target: int
    flow: int
    distance: Fraction

    @property
    def cost(self) -> Fraction:
        return self.flow * self.distance


@dataclass(frozen=True)
class CostReport:
    total: Fraction
    terms: tuple[CostTerm, ...]

    def to_dict(self, names: Sequence[str]) -> dict:
        return {
            "total": number(self.total),
            "terms": [{"from": names[t.source], "to": names[t.target], "flow": t.flow,
                       "distance": number(t.distance), "cost": number(t.cost)}
                      for t in self.terms],
        }


def total_cost(layout: BlockLayout, m: LoadMatrix, model: DistanceModel) -> CostReport:
    if layout.n != m.n:
        raise LayoutError(f"layout places {layout.n} facilities, load matrix has {m.n}")
    terms = tuple(CostTerm(i, j, v, distance(layout, i, j, model)) for i, j, v in m.arcs())
    return CostReport(sum((t.cost for t in terms), Fraction(0)), terms)


@functools.lru_cache(maxsize=128)
def distance_table(plan: FloorPlan, model: DistanceModel) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Slot-to-slot distances as integers times ``1/scale``.

    Slots are indexed row-major. Integer tables keep the inner loops of the
    improvement search and the enumeration oracle exact and fast.
    """
    slots = plan.slots()
    d = [[_slot_distance(plan, a, b, model) for b in slots] for a in slots]
    scale = math.lcm(*(x.denominator for row in d for x in row))
    return tuple(tuple(int(x * scale) for x in row) for row in d), scale


def scaled_load(slot_index: Sequence[int], arcs: Iterable[tuple[int, int, int]],
                table: Sequence[Sequence[int]]) -> int:
    return sum(v * table[slot_index[i]][slot_index[j]] for i, j, v in arcs)


def load_function(placement: Sequence[tuple[int, int]], arcs: Iterable[tuple[int, int, int]],
                  plan: FloorPlan, model: DistanceModel) -> Fraction:
    """``sum(flow * distance)`` without building a report."""
    table, scale = distance_table(plan, model)
    idx = [r * plan.cols + c for r, c in placement]
    return Fraction(scaled_load(idx, arcs, table), scale)


def snake_slots(plan: FloorPlan) -> list[tuple[int, int]]:
    """Column-major slot order, alternating down and up, so consecutive slots
    are always adjacent."""
    out = []
    for c in range(plan.cols):
        rs = range(plan.rows) if c % 2 == 0 else range(plan.rows - 1, -1, -1)
        out.extend((r, c) for r in rs)
    return out


def assignment_groups(a: Assignment, m: LoadMatrix, order: str = "composite") -> list[tuple[int, ...]]:
    """Split ``sigma`` into placement groups in left-to-right order.

    Each cycle becomes one group in cycle order (a 2-cycle is an adjacent
    pair, a longer cycle a chain). Even-sized groups go first so that pairs
    start at the top of a column on grids with an even row count. Within
    that, ``order="composite"`` sorts by descending two-way flow along the
    group's cycle edges and ``order="index"`` by lowest facility index.
    """
    if order not in ("composite", "index"):
        raise ValueError(f"unknown column order {order!r}")
    groups = a.cycles()

    def weight(g):
        if len(g) < 2:
            return 0
        edges = {tuple(sorted((g[k], g[(k + 1) % len(g)]))) for k in range(len(g))}
        return sum(composite(m, i, j) for i, j in edges)

    if order == "composite":
        groups.sort(key=lambda g: (len(g) % 2, -weight(g), g[0]))
    else:
        groups.sort(key=lambda g: (len(g) % 2, g[0]))
    return groups


def initial_layout(a: Assignment, m: LoadMatrix, plan: FloorPlan,
                   order: str = "composite") -> BlockLayout:
    """Place assigned partners next to each other.

    Groups from :func:`assignment_groups` are laid along :func:`snake_slots`
    so each pair shares a column (across the aisle) when the grid has an
    even number of rows, and chain members always occupy adjacent slots.
    """
    if a.n != m.n:
        raise LayoutError(f"assignment covers {a.n} facilities, load matrix has {m.n}")
    if m.n > plan.n_slots:
        raise LayoutError(f"{m.n} facilities do not fit into {plan.n_slots} slots")
    seq = iter(snake_slots(plan))
    placement: list[tuple[int, int] | None] = [None] * m.n
    for g in assignment_groups(a, m, order):
        for f in g:
            placement[f] = next(seq)
    return BlockLayout(plan, tuple(placement))
