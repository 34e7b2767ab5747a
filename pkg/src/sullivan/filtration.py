"""Cautious and naive filtrations of the indecomposables, step-adapted bases,
and the block structure of the differential."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .gca import Element, Generator, GradedAlgebra, Monomial
from .linalg import (Subspace, element_vector, generator_combination, generator_labels, monomial_span,
                     preimage, rank, solve, span_of_elements, transpose)
from .model import MinimalModel

CAUTIOUS = "cautious"
NAIVE = "naive"


class FiltrationError(ValueError):
    pass


@dataclass
class FiltrationTable:
    """``spaces[n][J-1]`` is the J-th filtration stage of V^n, up to stabilization."""

    kind: str
    degrees: List[int]
    labels: Dict[int, Tuple[str, ...]]
    spaces: Dict[int, List[Subspace]]
    exhausted: bool

    def depth(self) -> int:
        return max((len(v) for v in self.spaces.values()), default=0)

    def space(self, n: int, J: int) -> Subspace:
        if n not in self.spaces:
            return Subspace(())
        if J <= 0:
            return Subspace(self.labels[n])
        stages = self.spaces[n]
        return stages[min(J, len(stages)) - 1]

    def step(self, n: int, J: int) -> Subspace:
        """E^n(J): the orthogonal complement of stage J-1 inside stage J."""
        return self.space(n, J - 1).complement_in(self.space(n, J))

    def steps(self, n: int) -> List[Subspace]:
        return [self.step(n, J) for J in range(1, len(self.spaces.get(n, [])) + 1)]

    def full_at(self, n: int) -> Optional[int]:
        """Smallest J with stage J equal to all of V^n (None if never)."""
        dim = len(self.labels[n])
        for J, sub in enumerate(self.spaces[n], start=1):
            if sub.dim == dim:
                return J
        return None

    def table(self) -> Dict[int, List[Tuple[Tuple[Fraction, ...], ...]]]:
        """Plain nested data (bases per stage) for comparison and reports."""
        depth = self.depth()
        return {n: [tuple(self.space(n, J).basis) for J in range(1, depth + 1)] for n in self.degrees}

    def same_subspaces(self, other: "FiltrationTable") -> bool:
        """Stage-by-stage equality (a shorter table is padded with its last stage)."""
        if self.degrees != other.degrees:
            return False
        depth = max(self.depth(), other.depth())
        return all(self.space(n, J) == other.space(n, J)
                   for n in self.degrees for J in range(1, depth + 1))

    def describe(self) -> Dict[str, Dict[str, List[str]]]:
        out = {}
        for n in self.degrees:
            rows = {}
            for J in range(1, len(self.spaces[n]) + 1):
                rows[str(J)] = [_format_vector(self.labels[n], v) for v in self.step(n, J).basis]
            out[str(n)] = rows
        return out


def _format_vector(labels, v) -> str:
    parts = []
    for lab, c in zip(labels, v):
        if not c:
            continue
        coeff = "" if c == 1 else ("-" if c == -1 else f"{c}*")
        parts.append(f"{coeff}{lab}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def _elements(alg: GradedAlgebra, n: int, sub: Subspace) -> List[Element]:
    return [generator_combination(alg, n, v) for v in sub.basis]


def _product_span(alg: GradedAlgebra, degree: int, left: List[Element], right: List[Element]) -> List[Element]:
    out = []
    for a in left:
        for b in right:
            p = a * b
            if p:
                out.append(p)
    return out


def _filtration(model: MinimalModel, kind: str) -> FiltrationTable:
    alg = model.algebra
    degrees = model.degrees_present()
    labels = {n: generator_labels(alg, n) for n in degrees}
    # ∧^{≥2}V^{<n} in degree n+1 is spanned by the monomials whose factors all have degree < n
    simple = {n: monomial_span(alg, n + 1, lambda m, n=n: len(m) >= 2 and all(alg.degrees[i] < n for i in m))
              for n in degrees}
    v1 = [alg.gen(g.name) for g in alg.generators_of_degree(1)]
    prev: Dict[int, Subspace] = {n: Subspace(labels[n]) for n in degrees}
    spaces: Dict[int, List[Subspace]] = {n: [] for n in degrees}
    limit = sum(len(x) for x in labels.values()) + 2
    for J in range(1, limit + 1):
        cur = {}
        for n in degrees:
            if J == 1:
                target = simple[n]
            else:
                first = v1 if kind == NAIVE else _elements(alg, 1, prev[1]) if 1 in prev else []
                prods = _product_span(alg, n + 1, first, _elements(alg, n, prev[n]))
                target = simple[n] + span_of_elements(alg, n + 1, prods)
            cur[n] = preimage(model.d, n, target)
        if J > 1 and cur == prev:
            break
        for n in degrees:
            spaces[n].append(cur[n])
        prev = cur
    exhausted = all(prev[n].dim == len(labels[n]) for n in degrees)
    return FiltrationTable(kind, degrees, labels, spaces, exhausted)


def cautious_filtration(model: MinimalModel) -> FiltrationTable:
    return _cached(model, CAUTIOUS)


def naive_filtration(model: MinimalModel) -> FiltrationTable:
    return _cached(model, NAIVE)


def _cached(model: MinimalModel, kind: str) -> FiltrationTable:
    cache = model.__dict__.setdefault("_filtrations", {})
    if kind not in cache:
        cache[kind] = _filtration(model, kind)
    return cache[kind]


def filtration_mismatches(model: MinimalModel) -> List[Tuple[int, int, List[str], List[str]]]:
    """(n, J, cautious basis, naive basis) wherever the two stages differ."""
    caut, naive = cautious_filtration(model), naive_filtration(model)
    depth = max(caut.depth(), naive.depth())
    out = []
    for n in caut.degrees:
        for J in range(1, depth + 1):
            a, b = caut.space(n, J), naive.space(n, J)
            if a != b:
                out.append((n, J, [_format_vector(caut.labels[n], v) for v in a.basis],
                            [_format_vector(naive.labels[n], v) for v in b.basis]))
    return out


def nilpotency_class(model: MinimalModel) -> int:
    """Smallest c with C^n(c) = V^n for every degree (0 for the trivial model)."""
    table = cautious_filtration(model)
    if not table.exhausted:
        raise FiltrationError(f"filtration of {model.name!r} does not exhaust the generators")
    return max((table.full_at(n) for n in table.degrees if table.labels[n]), default=0)


def is_coformal(model: MinimalModel) -> bool:
    return all(len(m) == 2 for g in model.generators for m in model.differential(g.name).terms)


def is_simply_connected(model: MinimalModel) -> bool:
    return not model.generators_of_degree(1)


# -- step-adapted basis ---------------------------------------------------------

@dataclass
class AdaptedModel:
    """A model rewritten in a basis where every generator lies in one step.

    ``basis[name]`` is the vector of declared generators that the adapted
    generator stands for.  ``source`` is the declared model.
    """

    model: MinimalModel
    source: MinimalModel
    basis: Dict[str, Tuple[int, Tuple[Fraction, ...]]]
    c: int

    def step(self, name: str) -> int:
        return self.model.algebra.generators[self.model.algebra.index[name]].step

    def degree(self, name: str) -> int:
        return self.model.algebra.generators[self.model.algebra.index[name]].degree

    @property
    def renamed(self) -> List[str]:
        """Adapted generators that are not declared generators."""
        return [name for name in self.basis if name not in self.source.algebra.index]


def _fresh_name(base: str, taken: set) -> str:
    k = 1
    while f"{base}_{k}" in taken:
        k += 1
    name = f"{base}_{k}"
    taken.add(name)
    return name


def adapted_model(model: MinimalModel) -> AdaptedModel:
    cache = model.__dict__.setdefault("_filtrations", {})
    if "adapted" not in cache:
        cache["adapted"] = _adapt(model)
    return cache["adapted"]


def _adapt(model: MinimalModel) -> AdaptedModel:
    table = cautious_filtration(model)
    entries = [(n, J, v) for n in table.degrees for J in range(1, len(table.spaces[n]) + 1)
               for v in table.step(n, J).basis]
    return rebase(model, entries, nilpotency_class(model))


def rebase(model: MinimalModel, entries: List[Tuple[int, int, Tuple[Fraction, ...]]], c: int) -> AdaptedModel:
    """Rewrite ``model`` in the basis given by ``entries`` = (degree, step, vector).

    A basis vector that is a declared generator keeps its name; the others
    get fresh names.  The vectors of each degree must form a basis.
    """
    alg = model.algebra
    taken = set(alg.index)
    new_gens: List[Generator] = []
    basis: Dict[str, Tuple[int, Tuple[Fraction, ...]]] = {}
    for n, J, v in entries:
        labels = generator_labels(alg, n)
        nz = [i for i, x in enumerate(v) if x]
        if len(nz) == 1 and v[nz[0]] == 1:
            name = labels[nz[0]]
        else:
            name = _fresh_name(f"v{n}", taken)
        new_gens.append(Generator(name, n, J))
        basis[name] = (n, tuple(v))
    new_alg = GradedAlgebra(new_gens)
    # express declared generators in the new basis, degree by degree
    inverse: Dict[int, Element] = {}
    for n in model.degrees_present():
        labels = generator_labels(alg, n)
        names = [g.name for g in new_alg.generators_of_degree(n)]
        rows = [basis[name][1] for name in names]
        if len(rows) != len(labels):
            raise FiltrationError(f"new basis of V^{n} has {len(rows)} vectors, expected {len(labels)}")
        for i, lab in enumerate(labels):
            unit = tuple(Fraction(int(j == i)) for j in range(len(labels)))
            coeffs = solve(rows, unit)
            if coeffs is None:
                raise FiltrationError(f"new basis does not span V^{n}")
            elem = new_alg.zero()
            for name, c_ in zip(names, coeffs):
                if c_:
                    elem = elem + new_alg.gen(name).scale(c_)
            inverse[alg.index[lab]] = elem
    diffs = {}
    for name, (n, v) in basis.items():
        image = alg.zero()
        for lab, x in zip(generator_labels(alg, n), v):
            if x:
                image = image + model.differential(lab).scale(x)
        diffs[name] = image.substitute(inverse, new_alg.one())
    return AdaptedModel(MinimalModel(model.name, new_gens, diffs, model.max_degree), model, basis, c)


def declared_step_mismatches(model: MinimalModel) -> Dict[str, Tuple[int, Optional[int]]]:
    """Generators whose declared step differs from the computed one.

    Maps name -> (declared, computed); computed is None when the generator
    is not a single step element in the declared basis.
    """
    adapted = adapted_model(model)
    out = {}
    for g in model.generators:
        if g.step is None:
            continue
        computed = adapted.step(g.name) if g.name in adapted.basis else None
        if computed != g.step:
            out[g.name] = (g.step, computed)
    return out


# -- splitting the differential ---------------------------------------------------

@dataclass
class DifferentialSplit:
    name: str
    degree: int
    step: int
    simple: Element
    nilpotent: Element
    blocks: Dict[Tuple[int, int], Element] = field(default_factory=dict)

    @property
    def delta(self) -> Element:
        """The block D_{1,J-1}."""
        key = _block_key(self.degree, 1, self.step - 1)
        return self.blocks.get(key, self.nilpotent.algebra.zero())


def _block_key(n: int, i: int, j: int) -> Tuple[int, int]:
    return (min(i, j), max(i, j)) if n == 1 else (i, j)


def _is_nil(alg: GradedAlgebra, n: int, mono: Monomial) -> bool:
    return len(mono) == 2 and sorted(alg.degrees[i] for i in mono) == sorted((1, n))


def split_differential(adapted: AdaptedModel, name: str) -> DifferentialSplit:
    model = adapted.model
    alg = model.algebra
    g = alg.generators[alg.index[name]]
    n = g.degree
    dg = model.differential(name)
    nil = dg.filter(lambda m: _is_nil(alg, n, m))
    sim = dg - nil
    blocks: Dict[Tuple[int, int], Element] = {}
    for mono, coeff in nil.terms.items():
        a, b = mono
        if alg.degrees[a] != 1:
            a, b = b, a
        key = _block_key(n, alg.generators[a].step, alg.generators[b].step)
        blocks[key] = blocks.get(key, alg.zero()) + Element(alg, {mono: coeff})
    return DifferentialSplit(name, n, g.step, sim, nil, blocks)


@dataclass
class CheckResult:
    name: str
    ok: bool
    failures: List[str] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)


def check_delta_injective(model: MinimalModel) -> CheckResult:
    adapted = adapted_model(model)
    alg = adapted.model.algebra
    failures = []
    checked = 0
    by_slot: Dict[Tuple[int, int], List[str]] = {}
    for g in alg.generators:
        by_slot.setdefault((g.degree, g.step), []).append(g.name)
    for (n, J), names in sorted(by_slot.items()):
        if J < 2:
            continue
        labels = alg.monomials(n + 1)
        cols = [element_vector(split_differential(adapted, nm).delta, labels) for nm in names]
        checked += 1
        r = rank(transpose(cols), len(cols)) if labels else 0
        if r < len(names):
            failures.append(f"delta has a kernel on E^{n}({J}) (rank {r} < {len(names)})")
    return CheckResult("delta_injective", not failures, failures, {"steps_checked": checked})


def check_dnil_step_bound(model: MinimalModel) -> CheckResult:
    adapted = adapted_model(model)
    alg = adapted.model.algebra
    coformal = is_coformal(model)
    c = adapted.c
    failures = []
    for g in alg.generators:
        split = split_differential(adapted, g.name)
        for (i, j) in split.blocks:
            if i + j > g.step:
                failures.append(f"{g.name}: nilpotent block ({i},{j}) exceeds step {g.step}")
        if coformal:
            for mono in adapted.model.differential(g.name).terms:
                s = sum(alg.generators[k].step for k in mono)
                if len(mono) == 2 and s > g.step + c:
                    failures.append(f"{g.name}: quadratic block steps sum {s} > J + c = {g.step + c}")
    return CheckResult("dnil_step_bound", not failures, failures, {"coformal": coformal})


def classify(model: MinimalModel) -> Dict[str, object]:
    c = nilpotency_class(model)
    sc = is_simply_connected(model)
    return {
        "simply_connected": sc,
        "simple": c <= 1 and not sc,
        "nilpotency_class": c,
        "coformal": is_coformal(model),
    }


def classification_label(info: Dict[str, object]) -> str:
    c = info["nilpotency_class"]
    if info["simply_connected"]:
        base = "simply connected"
    elif info["simple"]:
        base = "simple"
    else:
        base = f"{c}-step nilpotent"
    return base + (", coformal" if info["coformal"] else "")
