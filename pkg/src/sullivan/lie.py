"""Free graded Lie algebras inside their tensor algebras, and the ζ classes.

Elements are stored as their expansion in the free associative algebra:
a map from words (tuples of generator names) to rationals.  The bracket is
the graded commutator, so zero-testing is just comparing expansions.

Degrees are Samelson degrees (Whitehead degree minus one).  The generators
α_j, β_j (j = 1..c) have degree 1 and scale weight j + 1.  The action of the
circle class t is the degree-0 derivation D with D α_j = α_{j+1},
D α_c = 0 and likewise for β.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

Word = Tuple[str, ...]


class LieError(ValueError):
    pass


@dataclass(frozen=True)
class LieGenerator:
    name: str
    samelson_degree: int
    scale_weight: int = 0


class LieElement:
    __slots__ = ("universe", "terms", "tree")

    def __init__(self, universe: Mapping[str, LieGenerator], terms: Mapping[Word, Fraction], tree: str = ""):
        self.universe = universe
        self.terms = {w: Fraction(c) for w, c in terms.items() if c}
        self.tree = tree or self._expansion_str()

    @classmethod
    def generator(cls, universe, name: str) -> "LieElement":
        if name not in universe:
            raise LieError(f"unknown Lie generator {name}")
        return cls(universe, {(name,): Fraction(1)}, name)

    @classmethod
    def zero(cls, universe) -> "LieElement":
        return cls(universe, {}, "0")

    def word_degree(self, w: Word) -> int:
        return sum(self.universe[g].samelson_degree for g in w)

    def word_weight(self, w: Word) -> int:
        return sum(self.universe[g].scale_weight for g in w)

    @property
    def degree(self) -> int:
        degs = {self.word_degree(w) for w in self.terms}
        if len(degs) > 1:
            raise LieError("inhomogeneous element has no degree")
        return degs.pop() if degs else 0

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LieElement):
            return self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return LieElement(self.universe, out, f"{self.tree} + {other.tree}")

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + other.scale(-1)

    def scale(self, c) -> "LieElement":
        c = Fraction(c)
        tree = self.tree if c == 1 else f"{c}*({self.tree})"
        return LieElement(self.universe, {w: c * v for w, v in self.terms.items()}, tree)

    def _expansion_str(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for w, c in sorted(self.terms.items()):
            a = abs(c)
            body = ".".join(w) if a == 1 else f"{a}*{'.'.join(w)}"
            pieces.append(("-" if c < 0 else "+", body))
        head = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        return head + "".join(f" {s} {b}" for s, b in pieces[1:])

    def expansion(self) -> str:
        return self._expansion_str()

    def __str__(self):
        return self.tree

    def __repr__(self):
        return f"LieElement({self.tree})"


def _product(x: LieElement, y: LieElement) -> Dict[Word, Fraction]:
    out: Dict[Word, Fraction] = {}
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            out[u + v] = out.get(u + v, 0) + a * b
    return out


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """[x, y] = xy - (-1)^{|x||y|} yx, term by term on homogeneous parts."""
    out: Dict[Word, Fraction] = {}
    for u, a in x.terms.items():
        du = x.word_degree(u)
        for v, b in y.terms.items():
            sign = -1 if (du * y.word_degree(v)) % 2 else 1
            out[u + v] = out.get(u + v, 0) + a * b
            out[v + u] = out.get(v + u, 0) - sign * a * b
    return LieElement(x.universe, out, f"[{x.tree}, {y.tree}]")


def iterated_bracket(left: List[LieElement], last: LieElement) -> LieElement:
    """[l1, [l2, ... [lm, last]...]]."""
    out = last
    for x in reversed(left):
        out = bracket(x, out)
    return out


def torus_universe(c: int) -> Dict[str, LieGenerator]:
    if c < 1:
        raise LieError("c must be at least 1")
    gens = {}
    for j in range(1, c + 1):
        gens[f"a{j}"] = LieGenerator(f"a{j}", 1, j + 1)
        gens[f"b{j}"] = LieGenerator(f"b{j}", 1, j + 1)
    return gens


class TorusAction:
    """The derivation D = [t, -] on the free Lie algebra on α_1..α_c, β_1..β_c."""

    def __init__(self, c: int):
        self.c = c
        self.universe = torus_universe(c)
        self.images: Dict[str, Optional[str]] = {}
        for j in range(1, c + 1):
            for s in "ab":
                self.images[f"{s}{j}"] = f"{s}{j + 1}" if j < c else None

    def gen(self, name: str) -> LieElement:
        return LieElement.generator(self.universe, name)

    def alpha(self, j: int) -> LieElement:
        return self.gen(f"a{j}")

    def beta(self, j: int) -> LieElement:
        return self.gen(f"b{j}")

    def __call__(self, x: LieElement) -> LieElement:
        out: Dict[Word, Fraction] = {}
        for w, coeff in x.terms.items():
            for i, g in enumerate(w):
                img = self.images[g]
                if img is None:
                    continue
                nw = w[:i] + (img,) + w[i + 1:]
                out[nw] = out.get(nw, 0) + coeff
        return LieElement(self.universe, out, f"[t, {x.tree}]")

    def matrix(self) -> List[List[int]]:
        """The c×c matrix of D on span{α_1..α_c} (columns are images)."""
        return [[1 if i == j + 1 else 0 for j in range(self.c)] for i in range(self.c)]


def t_bracket(action: TorusAction, x: LieElement) -> LieElement:
    return action(x)


class Zeta:
    """Memoized ζ_{k,j}: ζ_{2,1} = β_1, ζ_{k,1} = [α_1, ζ_{k-1,c}], ζ_{k,j} = [t, ζ_{k,j-1}]."""

    def __init__(self, c: int):
        self.c = c
        self.action = TorusAction(c)
        self._memo: Dict[Tuple[int, int], LieElement] = {}

    def __call__(self, k: int, j: int) -> LieElement:
        if k < 2 or not 1 <= j <= self.c:
            raise LieError(f"ζ_{{{k},{j}}} is undefined for c = {self.c}")
        key = (k, j)
        if key not in self._memo:
            if j > 1:
                val = self.action(self(k, j - 1))
            elif k == 2:
                val = self.action.beta(1)
            else:
                val = bracket(self.action.alpha(1), self(k - 1, self.c))
            self._memo[key] = LieElement(val.universe, val.terms, f"zeta({k},{j})")
        return self._memo[key]


_ZETAS: Dict[int, Zeta] = {}


def zeta(k: int, j: int, c: int) -> LieElement:
    if c not in _ZETAS:
        _ZETAS[c] = Zeta(c)
    return _ZETAS[c](k, j)


def scaling_weight(x: LieElement):
    """The common scale weight of all words of x, or a per-word report if they differ."""
    weights = {w: x.word_weight(w) for w in x.terms}
    values = set(weights.values())
    if len(values) == 1:
        return values.pop()
    if not values:
        raise LieError("zero element has no scaling weight")
    return weights


@dataclass
class Failure:
    check: str
    k: int
    j: int
    detail: str = ""


@dataclass
class LieReport:
    checks: int = 0
    failures: List[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, check: str, k: int = 0, j: int = 0, detail: str = ""):
        self.checks += 1
        if not ok:
            self.failures.append(Failure(check, k, j, detail))


def _random_lie(rng: random.Random, action: TorusAction, depth: int) -> LieElement:
    names = sorted(action.universe)
    if depth == 0 or rng.random() < 0.3:
        return action.gen(rng.choice(names)).scale(rng.choice((1, 2, -1, Fraction(1, 2))))
    return bracket(_random_lie(rng, action, depth - 1), _random_lie(rng, action, depth - 1))


def verify_jacobi_lemmas(k_max: int, c: int, samples: int = 20, seed: int = 0) -> LieReport:
    """[t, ζ_{k,c}] = 0, ζ_{k,j} = [α_j, ζ_{k-1,c}] (k > 2), and the derivation rule on samples."""
    report = LieReport()
    z = Zeta(c)
    D = z.action
    for k in range(2, k_max + 1):
        report.record(not D(z(k, c)), "t_kills_top", k, c, D(z(k, c)).expansion())
        if k > 2:
            for j in range(1, c + 1):
                lhs = z(k, j)
                rhs = bracket(D.alpha(j), z(k - 1, c))
                report.record(lhs == rhs, "zeta_is_alpha_bracket", k, j, (lhs - rhs).expansion())
    rng = random.Random(f"jacobi:{c}:{seed}")
    for _ in range(samples):
        x, y, w = (_random_lie(rng, D, 2) for _ in range(3))
        lhs = D(bracket(x, y))
        rhs = bracket(D(x), y) + bracket(x, D(y))
        report.record(lhs == rhs, "derivation", detail=(lhs - rhs).expansion())
        try:
            dx, dy = x.degree, y.degree
        except LieError:
            continue
        sign = -1 if (dx * dy) % 2 else 1
        jac = bracket(x, bracket(y, w)) - bracket(bracket(x, y), w) - bracket(y, bracket(x, w)).scale(sign)
        report.record(not jac, "jacobi", detail=jac.expansion())
        anti = bracket(x, y) + bracket(y, x).scale(sign)
        report.record(not anti, "antisymmetry", detail=anti.expansion())
    return report


def retract(x: LieElement, c: int) -> LieElement:
    """Send α_j, β_j to 0 for j < c and α_c, β_c to the classes α̂, β̂."""
    universe = {"A": LieGenerator("A", 1, c + 1), "B": LieGenerator("B", 1, c + 1)}
    rename = {f"a{c}": "A", f"b{c}": "B"}
    out: Dict[Word, Fraction] = {}
    for w, coeff in x.terms.items():
        if all(g in rename for g in w):
            nw = tuple(rename[g] for g in w)
            out[nw] = out.get(nw, 0) + coeff
    return LieElement(universe, out, f"retract({x.tree})")


def proportional(x: LieElement, y: LieElement) -> Optional[Fraction]:
    """r with x = r*y (y nonzero), else None."""
    if not y.terms or set(x.terms) != set(y.terms):
        return None
    w = next(iter(y.terms))
    r = x.terms[w] / y.terms[w]
    return r if all(x.terms[v] == r * y.terms[v] for v in y.terms) else None


def verify_nonvanishing(k_max: int, c: int) -> LieReport:
    """ζ_{k,c} != 0 directly, and its retraction is a nonzero multiple of [Â, [Â, ... [Â, B̂]]]."""
    report = LieReport()
    z = Zeta(c)
    for k in range(2, k_max + 1):
        val = z(k, c)
        report.record(bool(val), "nonzero", k, c)
        r = retract(val, c)
        hat = {"A": LieGenerator("A", 1, c + 1), "B": LieGenerator("B", 1, c + 1)}
        target = iterated_bracket([LieElement.generator(hat, "A")] * (k - 2), LieElement.generator(hat, "B"))
        scalar = proportional(r, target)
        report.record(bool(target) and scalar is not None and scalar != 0, "retraction", k, c,
                      f"retraction {r.expansion()} vs {target.expansion()}")
    return report


def verify_scaling(k_max: int, c: int) -> LieReport:
    report = LieReport()
    z = Zeta(c)
    for k in range(2, k_max + 1):
        w = scaling_weight(z(k, c))
        report.record(w == (c + 1) * (k - 1), "scaling_weight", k, c, f"got {w}, expected {(c + 1) * (k - 1)}")
    return report


def whitehead_suite(k_max: int, c_values: Iterable[int]) -> Dict[int, Dict[str, LieReport]]:
    out = {}
    for c in c_values:
        out[c] = {
            "jacobi": verify_jacobi_lemmas(k_max, c),
            "nonvanishing": verify_nonvanishing(k_max, c),
            "scaling": verify_scaling(k_max, c),
        }
    return out
