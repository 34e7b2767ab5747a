"""Seeded random minimal models.

Generators are added one at a time in increasing degree.  Each new
generator of degree n gets a differential drawn from the cocycles among the
allowed decomposable monomials of degree n+1 in the generators already
present.  Drawing from cocycles makes d² = 0 hold by construction, decomposable
monomials give minimality, and building on earlier generators only gives the
nilpotence condition.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional

from .gca import Derivation, Element, Generator, GradedAlgebra
from .linalg import element_vector, nullspace, transpose
from .model import MinimalModel, _rehome

KINDS = ("general", "coformal", "simple", "simply_connected")


def _allowed(alg: GradedAlgebra, kind: str, n: int):
    degs = alg.degrees

    def keep(mono) -> bool:
        if len(mono) < 2:
            return False
        if kind == "coformal" and len(mono) != 2:
            return False
        if kind in ("simple", "simply_connected") and any(degs[i] >= n for i in mono):
            return False
        return True

    return keep


def _random_cocycle(rng: random.Random, alg: GradedAlgebra, d: Derivation, n: int, kind: str,
                    closed_prob: float) -> Element:
    monos = [m for m in alg.monomials(n + 1) if _allowed(alg, kind, n)(m)]
    if not monos or rng.random() < closed_prob:
        return alg.zero()
    labels = alg.monomials(n + 2)
    cols = [element_vector(d(alg.monomial(m)), labels) for m in monos]
    rows = transpose(cols)
    kernel = nullspace(rows, len(monos)) if rows else [
        tuple(Fraction(int(i == j)) for j in range(len(monos))) for i in range(len(monos))]
    if not kernel:
        return alg.zero()
    out = alg.zero()
    for vec in kernel:
        coeff = rng.choice((-2, -1, 0, 0, 1, 1, 2, 3))
        if coeff:
            out = out + Element(alg, {m: Fraction(coeff) * x for m, x in zip(monos, vec) if x})
    return out


def random_model(seed: int, kind: str = "general", max_degree: int = 3, width: int = 2,
                 name: Optional[str] = None, closed_prob: float = 0.25) -> MinimalModel:
    """A valid minimal model with at most ``width`` generators per degree."""
    if kind not in KINDS:
        raise ValueError(f"unknown sampler kind {kind!r}; expected one of {', '.join(KINDS)}")
    if max_degree < 1 or width < 1:
        raise ValueError("sampler needs max_degree >= 1 and width >= 1")
    rng = random.Random(f"{kind}:{seed}:{max_degree}:{width}")
    gens: List[Generator] = []
    diffs: Dict[str, Element] = {}
    for n in range(1, max_degree + 1):
        if n == 1 and kind == "simply_connected":
            continue
        count = rng.randint(1 if n == 1 or not gens else 0, width)
        for k in range(count):
            g = Generator(f"{'abcdefghij'[n - 1]}{k + 1}", n)
            alg = GradedAlgebra(gens, truncation=max_degree + 2)
            images = {h.name: _rehome(diffs[h.name], alg) for h in gens}
            d = Derivation(alg, images)
            diffs[g.name] = _random_cocycle(rng, alg, d, n, kind, closed_prob)
            gens.append(g)
    final = GradedAlgebra(gens)
    images = {h.name: _rehome(diffs[h.name], final) for h in gens}
    recipe = {"kind": kind, "seed": seed, "width": width}
    return MinimalModel(name or f"random_{kind}_{seed}", gens, images, max_degree, recipe=recipe)


def random_models(count: int, seed: int = 0, kinds=KINDS, max_degree: Optional[int] = None,
                  width: Optional[int] = None) -> List[MinimalModel]:
    """A reproducible corpus cycling through ``kinds`` with varied sizes."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        kind = kinds[i % len(kinds)]
        deg = max_degree or rng.randint(2, 5)
        w = width or rng.randint(1, 3 if deg > 3 else 4)
        out.append(random_model(rng.randrange(10 ** 6), kind, deg, w))
    return out
