"""Minimal Sullivan models and their validity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .gca import AlgebraError, Derivation, Element, Generator, GradedAlgebra, check_d_squared
from .linalg import Subspace, generator_labels, preimage, span_of_elements


class ModelError(ValueError):
    """Malformed model data (degree mismatch, unknown or duplicate generator)."""


class MinimalModel:
    """A free graded-commutative algebra with a differential, up to ``max_degree``.

    Construction only checks well-formedness (degrees, generator ids).  Use
    :meth:`validate` for d² = 0, minimality and the nilpotence condition.
    """

    def __init__(self, name: str, generators: Sequence[Generator],
                 differential: Mapping[str, Element], max_degree: Optional[int] = None,
                 recipe: Optional[Dict[str, object]] = None):
        if max_degree is None:
            max_degree = max((g.degree for g in generators), default=1)
        too_high = [g.name for g in generators if g.degree > max_degree]
        if too_high:
            raise ModelError(f"generators above maxdeg {max_degree}: {', '.join(too_high)}")
        try:
            self.algebra = GradedAlgebra(generators, truncation=max_degree + 2)
        except AlgebraError as exc:
            raise ModelError(str(exc)) from None
        images = {}
        for g in self.algebra.generators:
            value = differential.get(g.name)
            if value is None:
                value = self.algebra.zero()
            elif value.algebra != self.algebra:
                value = _rehome(value, self.algebra)
            images[g.name] = value
        unknown = set(differential) - set(self.algebra.index)
        if unknown:
            raise ModelError(f"differential given for unknown generators: {', '.join(sorted(unknown))}")
        try:
            self.d = Derivation(self.algebra, images)
        except AlgebraError as exc:
            raise ModelError(str(exc)) from None
        self.name = name
        self.max_degree = max_degree
        self.recipe = recipe

    # -- convenience constructors ------------------------------------------
    @classmethod
    def build(cls, name: str, generators: Iterable[Union[Tuple[str, int], Tuple[str, int, int], Generator]],
              differential: Mapping[str, str] = (), max_degree: Optional[int] = None) -> "MinimalModel":
        """Build from ``(id, degree[, step])`` tuples and expression strings.

        >>> MinimalModel.build("S2", [("x", 2), ("y", 3)], {"y": "x^2"}).differential("y")
        Element(x^2)
        """
        from .io import parse_expression

        gens = [g if isinstance(g, Generator) else Generator(*g) for g in generators]
        alg = GradedAlgebra(gens)
        diff = {k: parse_expression(v, alg) for k, v in dict(differential).items()}
        return cls(name, gens, diff, max_degree)

    # -- accessors -------------------------------------------------------------
    @property
    def generators(self) -> Tuple[Generator, ...]:
        return self.algebra.generators

    def gen(self, name: str) -> Element:
        return self.algebra.gen(name)

    def differential(self, name: str) -> Element:
        return self.d.image(name)

    def degrees_present(self) -> List[int]:
        return sorted({g.degree for g in self.generators})

    def generators_of_degree(self, n: int) -> List[Generator]:
        return self.algebra.generators_of_degree(n)

    def __repr__(self):
        return f"MinimalModel({self.name!r}, {len(self.generators)} generators, maxdeg {self.max_degree})"

    def restricted(self, max_degree: int) -> "MinimalModel":
        """Sub-model on the generators of degree <= ``max_degree``."""
        gens = [g for g in self.generators if g.degree <= max_degree]
        sub = GradedAlgebra(gens)
        images = {g.name: _rehome(self.differential(g.name), sub) for g in gens}
        return MinimalModel(self.name, gens, images, max_degree)

    def reordered(self, names: Sequence[str]) -> "MinimalModel":
        """Same model with generators renamed in the order given (for order-invariance tests)."""
        mapping = dict(zip([g.name for g in self.generators], names))
        gens = [Generator(mapping[g.name], g.degree, g.step) for g in self.generators]
        alg = GradedAlgebra(gens)
        images = {g.name: self.algebra.gen(g.name) for g in self.generators}
        sub = {self.algebra.index[old]: alg.gen(new) for old, new in mapping.items()}
        diff = {mapping[name]: self.differential(name).substitute(sub, alg.one()) for name in images}
        return MinimalModel(self.name, gens, diff, self.max_degree)

    # -- validity ----------------------------------------------------------------
    def validate(self) -> "ValidationReport":
        return validate(self)

    @cached_property
    def validation(self) -> "ValidationReport":
        return validate(self)

    def require_valid(self):
        report = self.validation
        if not report.ok:
            raise ModelError(f"model {self.name!r} is not a valid minimal model: {report.summary()}")


def _rehome(elem: Element, algebra: GradedAlgebra) -> Element:
    """Move an element to an algebra with the same generator names."""
    images = {i: algebra.gen(g.name) for i, g in enumerate(elem.algebra.generators) if g.name in algebra.index}
    return elem.substitute(images, algebra.one())


@dataclass
class ValidationReport:
    d_squared: Dict[str, Element] = field(default_factory=dict)
    minimality: List[str] = field(default_factory=list)
    nilpotence: List[str] = field(default_factory=list)
    tower: List[Dict[int, Subspace]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.d_squared or self.minimality or self.nilpotence)

    def summary(self) -> str:
        parts = []
        if self.d_squared:
            parts.append("d^2 != 0 on " + ", ".join(self.d_squared))
        if self.minimality:
            parts.append("word length 1 violates minimality on " + ", ".join(self.minimality))
        if self.nilpotence:
            parts.append("nilpotence condition fails on " + ", ".join(self.nilpotence))
        return "; ".join(parts) or "valid"

    def tower_names(self) -> List[List[str]]:
        """Generator names spanned by each stage of the tower (coordinate stages only)."""
        out = []
        for stage in self.tower:
            names = []
            for sub in stage.values():
                for lab in sub.labels:
                    unit = tuple(int(x == lab) for x in sub.labels)
                    if sub.contains(unit):
                        names.append(lab)
            out.append(sorted(names))
        return out


def _products_in_degree(alg: GradedAlgebra, basis: Dict[int, List[Element]], degree: int) -> List[Element]:
    """Spanning set of the degree-``degree`` part of the subalgebra generated by ``basis``."""
    items = [(d, e) for d in sorted(basis) for e in basis[d]]
    out: List[Element] = []

    def rec(start: int, remaining: int, acc: Element):
        if remaining == 0:
            out.append(acc)
            return
        for k in range(start, len(items)):
            d, e = items[k]
            if d > remaining:
                continue
            prod = acc * e
            if prod:
                rec(k if d % 2 == 0 else k + 1, remaining - d, prod)

    rec(0, degree, alg.one())
    return out


def nilpotence_tower(model: MinimalModel, max_stages: Optional[int] = None) -> List[Dict[int, Subspace]]:
    """Stages Z(1) ⊆ Z(2) ⊆ ... with d(Z(r)) inside the algebra on Z(r-1).

    Iterates until the tower stabilizes; each stage maps degree -> subspace.
    """
    alg = model.algebra
    degrees = model.degrees_present()
    stage: Dict[int, Subspace] = {n: Subspace(generator_labels(alg, n)) for n in degrees}
    tower = []
    limit = max_stages or (len(alg.generators) + 1)
    for _ in range(limit):
        basis = {n: [_vector_to_generator_element(alg, n, v) for v in stage[n].basis] for n in degrees}
        new = {}
        for n in degrees:
            products = _products_in_degree(alg, basis, n + 1)
            target = span_of_elements(alg, n + 1, products)
            new[n] = preimage(model.d, n, target)
        if new == stage:
            break
        tower.append(new)
        stage = new
    return tower


def _vector_to_generator_element(alg: GradedAlgebra, n: int, v) -> Element:
    from .linalg import generator_combination
    return generator_combination(alg, n, v)


def validate(model: MinimalModel) -> ValidationReport:
    """Check d² = 0, minimality and the nilpotence condition."""
    report = ValidationReport()
    report.d_squared = check_d_squared(model.d)
    for g in model.generators:
        dg = model.differential(g.name)
        if dg and dg.min_wordlength() < 2:
            report.minimality.append(g.name)
    tower = nilpotence_tower(model)
    report.tower = tower
    final = tower[-1] if tower else {}
    for n in model.degrees_present():
        sub = final.get(n)
        labels = generator_labels(model.algebra, n)
        if sub is None or sub.dim < len(labels):
            missing = sub.orthogonal_complement() if sub is not None else Subspace.full(labels)
            names = {lab for v in missing.basis for lab, x in zip(labels, v) if x}
            report.nilpotence.extend(sorted(names))
    return report
