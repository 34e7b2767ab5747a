"""Exponents of the filling-volume bounds, as affine functions of n."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence


@dataclass(frozen=True)
class Affine:
    """``slope * n + offset`` for a fixed c."""

    slope: int
    offset: int

    def __call__(self, n: int) -> int:
        return self.slope * n + self.offset

    def __str__(self):
        if self.slope == 0:
            return str(self.offset)
        head = "n" if self.slope == 1 else f"{self.slope}n"
        if self.offset == 0:
            return head
        # prefer the factored form k(n-1) when it applies
        if self.offset == -self.slope:
            k = "" if self.slope == 1 else str(self.slope)
            return f"{k}(n-1)"
        return f"{head} {'+' if self.offset > 0 else '-'} {abs(self.offset)}"


@dataclass(frozen=True)
class Cell:
    kind: str          # "upper", "lower" or "conjecture"
    column: str        # simply_connected | simple | c_step | coformal
    formula: str       # symbolic in n and c
    exponent: Affine   # evaluated at the model's c
    note: str = ""
    flagged: bool = False


def upper_cells(c: int) -> Dict[str, Cell]:
    return {
        "simply_connected": Cell("upper", "simply_connected", "2n", Affine(2, 0)),
        "simple": Cell("upper", "simple", "2n+1", Affine(2, 1)),
        "c_step": Cell("upper", "c_step", "(4c-1)n", Affine(4 * c - 1, 0)),
        "coformal": Cell("upper", "coformal", "(c+1)n", Affine(c + 1, 0)),
    }


def lower_cells(c: int) -> Dict[str, Cell]:
    return {
        "simply_connected": Cell("lower", "simply_connected", "2(n-1)", Affine(2, -2)),
        "coformal": Cell("lower", "coformal", "(c+1)(n-1)", Affine(c + 1, -(c + 1))),
    }


def flagged_alternatives(c: int) -> List[Cell]:
    """Variant coformal exponents with c-1 in place of c+1, kept only as flagged alternatives."""
    note = "variant with c-1; the derived coformal bound uses c+1"
    return [
        Cell("lower", "coformal", "(c-1)(n-1)", Affine(c - 1, -(c - 1)), note, True),
        Cell("upper", "coformal", "(c-1)n", Affine(c - 1, 0), note, True),
    ]


def conjecture_cell(c: int) -> Cell:
    return Cell("conjecture", "c_step", "3nc", Affine(3 * c, 0), "conjectural, unproved", True)


def columns_for(simply_connected: bool, c: int, coformal: bool) -> List[str]:
    """Table columns the space belongs to."""
    cols = []
    if simply_connected:
        cols.append("simply_connected")
    if c <= 1 and not simply_connected:
        cols.append("simple")
    cols.append("c_step")
    if coformal:
        cols.append("coformal")
    return cols


def sharpest_upper(simply_connected: bool, c: int, coformal: bool) -> Cell:
    cells = upper_cells(max(c, 1))
    applicable = [cells[col] for col in columns_for(simply_connected, c, coformal)]
    # all candidates are proportional-or-shifted lines; compare at n = 1 and the slope
    return min(applicable, key=lambda cell: (cell.exponent.slope, cell.exponent.offset))


@dataclass
class ExponentReport:
    classification: str
    c: int
    simply_connected: bool
    coformal: bool
    upper: Cell
    lower: Optional[Cell]
    conjecture: Optional[Cell]
    alternatives: List[Cell] = field(default_factory=list)
    applicable_upper: List[Cell] = field(default_factory=list)
    per_n: Dict[int, Dict[str, Optional[int]]] = field(default_factory=dict)


def exponent_report_for(simply_connected: bool, c: int, coformal: bool,
                        n_range: Sequence[int] = range(2, 6), label: str = "") -> ExponentReport:
    c_eff = max(c, 1)
    upper = sharpest_upper(simply_connected, c, coformal)
    lowers = lower_cells(c_eff)
    if simply_connected:
        lower = lowers["simply_connected"]
    elif coformal:
        lower = lowers["coformal"]
    else:
        lower = None
    alternatives = [a for a in flagged_alternatives(c_eff) if coformal and not simply_connected]
    conj = None if simply_connected else conjecture_cell(c_eff)
    cells = upper_cells(c_eff)
    applicable = [cells[col] for col in columns_for(simply_connected, c, coformal)]
    per_n = {}
    for n in n_range:
        row = {"upper": upper.exponent(n), "lower": lower.exponent(n) if lower else None,
               "conjecture": conj.exponent(n) if conj else None}
        for alt in alternatives:
            row[f"table_print_{alt.kind}"] = alt.exponent(n)
        per_n[n] = row
    return ExponentReport(label, c, simply_connected, coformal, upper, lower, conj, alternatives, applicable, per_n)


def exponent_report(model, n_range: Sequence[int] = range(2, 6)) -> ExponentReport:
    from .filtration import classification_label, classify

    info = classify(model)
    return exponent_report_for(info["simply_connected"], info["nilpotency_class"], info["coformal"],
                               n_range, classification_label(info))
