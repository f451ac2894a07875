"""Data series comparing the bound formulas, as deterministic CSV tables.

Single-curve ids (``fig1a`` ... ``fig5``) give one :class:`Series`; the
table ids ``fig1`` ... ``fig5`` put every curve of a figure into one table
with columns ``(x, y1[, y2])``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable

from . import hermite, kzconst, schnorr_rankin


class UnknownFigureError(KeyError):
    pass


@dataclass(frozen=True)
class Series:
    figure_id: str
    x_label: str
    y_label: str
    points: tuple[tuple[int, float], ...]

    def __post_init__(self):
        xs = [x for x, _ in self.points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("x must be strictly increasing")
        if not all(math.isfinite(y) and y > 0 for _, y in self.points):
            raise ValueError("y must be finite and positive")

    @property
    def xs(self) -> list[int]:
        return [x for x, _ in self.points]

    @property
    def ys(self) -> list[float]:
        return [y for _, y in self.points]


def _hermite_ratio(method: str) -> Callable[[int], float]:
    def f(n: int) -> float:
        return math.exp(math.log(hermite.linear_upper(n, method).value) - hermite.log_blichfeldt(n))
    return f


def _kz_ratio(n: int) -> float:
    return math.exp(kzconst.log_kz_upper(n, "new") - kzconst.log_kz_upper(n, "wc18"))


def _schnorr_ratio(method: str) -> Callable[[int], float]:
    def f(k: int) -> float:
        return math.exp(schnorr_rankin.log_schnorr_upper(k, method) - schnorr_rankin.log_schnorr_upper(k, "old"))
    return f


def _rankin_lower_ratio(k: int) -> float:
    return math.exp(schnorr_rankin.log_rankin(k, "new_lower") - schnorr_rankin.log_rankin(k, "old_lower"))


def _schnorr_lower_ratio(k: int) -> float:
    # the formulas are evaluated as written even at k = 1, where the
    # lower bounds themselves are not claimed
    return math.exp(schnorr_rankin.log_schnorr_lower(k, "new") - math.log(k / 12))


# id -> (x label, y label, grid, function)
_SERIES = {
    "fig1a": ("n", "new_hermite_over_blichfeldt", range(109, 1001), _hermite_ratio("new")),
    "fig1b": ("n", "wc18_hermite_over_blichfeldt", range(109, 1001), _hermite_ratio("wc18")),
    "fig2": ("n", "new_kz_over_wc18_kz", range(111, 1001), _kz_ratio),
    "fig3a": ("k", "new_schnorr_over_old", range(5, 1001, 5), _schnorr_ratio("new")),
    "fig3b": ("k", "simple_schnorr_over_old", range(5, 1001, 5), _schnorr_ratio("simple")),
    "fig4": ("k", "new_rankin_lower_over_old", range(5, 51, 5), _rankin_lower_ratio),
    "fig5": ("k", "new_schnorr_lower_over_k_div_12", range(1, 501), _schnorr_lower_ratio),
}

TABLES = {
    "fig1": ("fig1a", "fig1b"),
    "fig2": ("fig2",),
    "fig3": ("fig3a", "fig3b"),
    "fig4": ("fig4",),
    "fig5": ("fig5",),
}

SERIES_IDS = tuple(_SERIES)
FIGURE_IDS = tuple(dict.fromkeys(list(TABLES) + list(_SERIES)))


def figure_series(figure_id: str) -> Series:
    """One curve on its captioned grid."""
    try:
        x_label, y_label, grid, fn = _SERIES[figure_id]
    except KeyError:
        raise UnknownFigureError(f"unknown figure id {figure_id!r}") from None
    return Series(figure_id, x_label, y_label, tuple((x, fn(x)) for x in grid))


def figure_table(figure_id: str) -> tuple[list[str], list[tuple]]:
    """Header and rows for a table id (``fig1``..``fig5``) or a single series id."""
    ids = TABLES.get(figure_id, (figure_id,))
    series = [figure_series(s) for s in ids]
    header = [series[0].x_label] + [s.y_label for s in series]
    rows = [(x,) + tuple(s.points[i][1] for s in series) for i, x in enumerate(series[0].xs)]
    return header, rows


def _fmt(v) -> str:
    return str(v) if isinstance(v, int) else format(v, ".17g")


def to_csv(figure_id: str) -> str:
    header, rows = figure_table(figure_id)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def row_count(figure_id: str) -> int:
    return len(figure_table(figure_id)[1])
