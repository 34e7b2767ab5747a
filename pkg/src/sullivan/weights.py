"""Weights of indecomposables and the weight bounds they satisfy.

The recursive weight of a basis element (its degree when closed, otherwise
the largest summed factor weight over the monomials of its differential)
depends on the basis: in ∧(a1, a2, a3, b1, b2) with db1 = db2 = a1*a2*a3 the
basis {b1, b2} gives b2 weight 3 while {b1, b1 - b2} gives the closed element
weight 2.  We therefore work with the weight filtration

    F_w V^n = {v in V^n : dv is a sum of products of elements of total weight <= w}

and a basis adapted to it (and to the cautious filtration).  In such a basis
the recursive weight of each element is its filtration level, which is the
smallest weight it has in any basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .filtration import (AdaptedModel, cautious_filtration, is_coformal, nilpotency_class, rebase,
                         split_differential)
from .gca import Element, GradedAlgebra
from .linalg import Subspace, generator_combination, generator_labels, preimage, span_of_elements
from .model import MinimalModel


def recursive_weights(model: MinimalModel, order: Optional[Sequence[str]] = None) -> Dict[str, int]:
    """Weights of the generators of ``model`` taken as the basis, by direct recursion."""
    alg = model.algebra
    wt: Dict[str, int] = {}
    pending = list(order or [g.name for g in sorted(alg.generators, key=lambda g: (g.degree, g.step or 0))])
    stalled = 0
    while pending:
        name = pending.pop(0)
        g = alg.generators[alg.index[name]]
        dg = model.differential(name)
        if not dg:
            wt[name] = g.degree
            stalled = 0
            continue
        facts = [[alg.generators[i].name for i in m] for m in dg.terms]
        if any(f not in wt for fs in facts for f in fs):
            pending.append(name)
            stalled += 1
            if stalled > len(pending):
                raise ValueError(f"weight recursion is not well-founded at {name}")
            continue
        wt[name] = max(sum(wt[f] for f in fs) for fs in facts)
        stalled = 0
    return wt


@dataclass
class WeightData:
    levels: Dict[int, List[Tuple[int, Subspace]]]     # n -> [(w, F_w V^n)] where the filtration grows
    basis: AdaptedModel                                # adapted to steps and weights
    weight_of: Dict[str, int]                          # weight of each basis generator

    def level(self, n: int, v) -> int:
        for w, sub in self.levels[n]:
            if sub.contains(v):
                return w
        raise ValueError("vector outside V^n")


def _products(items: List[Tuple[Element, int, int]], degree: int) -> List[Tuple[Element, int]]:
    """Products of at least two of ``items`` (element, degree, weight) in the given degree."""
    out: List[Tuple[Element, int]] = []

    def rec(start: int, remaining: int, acc: Optional[Element], weight: int, count: int):
        if remaining == 0:
            if count >= 2:
                out.append((acc, weight))
            return
        for k in range(start, len(items)):
            e, d, w = items[k]
            if d > remaining:
                continue
            prod = e if acc is None else acc * e
            if prod:
                rec(k if d % 2 == 0 else k + 1, remaining - d, prod, weight + w, count + 1)

    rec(0, degree, None, 0, 0)
    return out


def weight_data(model: MinimalModel) -> WeightData:
    cache = model.__dict__.setdefault("_filtrations", {})
    if "weights" not in cache:
        cache["weights"] = _weight_data(model)
    return cache["weights"]


def _weight_data(model: MinimalModel) -> WeightData:
    alg = model.algebra
    table = cautious_filtration(model)
    c = nilpotency_class(model)
    found: List[Tuple[Element, int, int]] = []
    levels: Dict[int, List[Tuple[int, Subspace]]] = {}
    entries = []
    weights_by_entry = []
    for n in table.degrees:
        labels = generator_labels(alg, n)
        depth = len(table.spaces[n])
        prods = _products([f for f in found if f[1] < n], n + 1)
        deg1 = [f for f in found if f[1] == 1]
        prev = Subspace(labels)
        levels[n] = []
        w = n
        while True:
            span = span_of_elements(alg, n + 1, [e for e, pw in prods if pw <= w])
            cur = preimage(model.d, n, span)
            if cur != prev:
                levels[n].append((w, cur))
                fresh = []
                for J in range(1, depth + 1):
                    cj = table.space(n, J)
                    have = (table.space(n, J - 1) & cur) + (cj & prev)
                    for v in have.complement_in(cj & cur).basis:
                        entries.append((n, J, v))
                        weights_by_entry.append(w)
                        fresh.append(generator_combination(alg, n, v))
                for e in fresh:
                    found.append((e, n, w))
                    partners = deg1 if n > 1 else [f for f in found if f[1] == 1]
                    for x, _, wx in partners:
                        p = x * e
                        if p:
                            prods.append((p, w + wx))
                prev = cur
            if cur.dim == len(labels):
                break
            later = [pw for _, pw in prods if pw > w]
            if not later:
                raise ValueError(f"weight filtration of V^{n} does not exhaust (model not nilpotent?)")
            w = min(later)
    basis = rebase(model, entries, c)
    weight_of = {name: wt for name, wt in zip(basis.basis, weights_by_entry)}
    return WeightData(levels, basis, weight_of)


def weights(model: MinimalModel) -> Dict[str, int]:
    """Weight of every declared generator (its level in the weight filtration)."""
    data = weight_data(model)
    out = {}
    for n in model.degrees_present():
        labels = generator_labels(model.algebra, n)
        for i, lab in enumerate(labels):
            out[lab] = data.level(n, tuple(int(j == i) for j in range(len(labels))))
    return out


def monomial_weight(wt: Dict[str, int], alg: GradedAlgebra, mono) -> int:
    return sum(wt[alg.generators[i].name] for i in mono)


@dataclass
class BoundLine:
    generator: str
    degree: int
    step: int
    weight: int
    bound: str
    limit: int

    @property
    def margin(self) -> int:
        return self.limit - self.weight

    @property
    def ok(self) -> bool:
        return self.weight <= self.limit


def applicable_bounds(n: int, J: int, c: int, coformal: bool) -> List[Tuple[str, int]]:
    """(name, limit) for every weight bound that applies to a step-J element of degree n."""
    out = []
    if n == 1:
        out.append(("degree one: J", J))
    if n == 2:
        out.append(("degree two: J + 2c", J + 2 * c))
    if n >= 2:
        out.append(("general: n(4c-1) - 3(2c-1) + (J-1)", n * (4 * c - 1) - 3 * (2 * c - 1) + (J - 1)))
    if c <= 1:
        out.append(("simple: 2n - 1", 2 * n - 1))
    if coformal and n >= 2:
        out.append(("coformal: (c+1)(n-1) + J - c", (c + 1) * (n - 1) + J - c))
    return out


@dataclass
class WeightBoundReport:
    lines: List[BoundLine] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(line.ok for line in self.lines)

    @property
    def failures(self) -> List[BoundLine]:
        return [line for line in self.lines if not line.ok]

    def sharpest(self) -> Dict[str, BoundLine]:
        """Per generator, the applicable bound with the smallest limit."""
        out: Dict[str, BoundLine] = {}
        for line in self.lines:
            cur = out.get(line.generator)
            if cur is None or line.limit < cur.limit:
                out[line.generator] = line
        return out


def check_weight_bounds(model: MinimalModel) -> WeightBoundReport:
    """Every bound, for every generator of the step- and weight-adapted basis."""
    data = weight_data(model)
    coformal = is_coformal(model)
    c = data.basis.c
    report = WeightBoundReport()
    for g in data.basis.model.generators:
        for name, limit in applicable_bounds(g.degree, g.step, c, coformal):
            report.lines.append(BoundLine(g.name, g.degree, g.step, data.weight_of[g.name], name, limit))
    return report


def check_light_factor(model: MinimalModel) -> Dict[str, Optional[bool]]:
    """Conjectural check: where only simple-part summands reach the weight,
    one of them has a factor of step 1.

    Returns generator -> True/False where the hypothesis applies and None
    elsewhere.  A False answer refutes the conjecture on that model; it is
    not a bug in this package.
    """
    data = weight_data(model)
    adapted = data.basis
    alg = adapted.model.algebra
    wt = data.weight_of
    out: Dict[str, Optional[bool]] = {}
    for g in adapted.model.generators:
        if not adapted.model.differential(g.name):
            out[g.name] = None
            continue
        split = split_differential(adapted, g.name)
        target = wt[g.name]
        nil_max = [m for m in split.nilpotent.terms if monomial_weight(wt, alg, m) == target]
        sim_max = [m for m in split.simple.terms if monomial_weight(wt, alg, m) == target]
        if nil_max or not sim_max:
            out[g.name] = None
            continue
        out[g.name] = any(any(alg.generators[i].step == 1 for i in m) for m in sim_max)
    return out
