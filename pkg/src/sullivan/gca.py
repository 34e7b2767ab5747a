"""Free graded-commutative algebras over Q.

Monomials are nondecreasing tuples of generator indices.  Generators are
ordered by (degree, name), odd generators occur at most once, and the sign
produced by bringing a product into this order is absorbed into the
coefficient, so equality of elements is equality of their term maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

Monomial = Tuple[int, ...]


class AlgebraError(ValueError):
    """Raised on malformed algebra data or mixed generator universes."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    step: Optional[int] = None

    def __post_init__(self):
        if self.degree < 1:
            raise AlgebraError(f"generator {self.name!r} must have positive degree")
        if self.step is not None and self.step < 1:
            raise AlgebraError(f"generator {self.name!r} has non-positive step")


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


class GradedAlgebra:
    """The free graded-commutative algebra on a finite set of generators.

    ``truncation`` (if set) discards products of degree above it.
    """

    def __init__(self, generators: Iterable[Generator], truncation: Optional[int] = None):
        gens = sorted(generators, key=lambda g: (g.degree, g.name))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise AlgebraError(f"duplicate generator ids: {', '.join(dup)}")
        self.generators: Tuple[Generator, ...] = tuple(gens)
        self.index: Dict[str, int] = {g.name: i for i, g in enumerate(gens)}
        self.degrees: Tuple[int, ...] = tuple(g.degree for g in gens)
        self.truncation = truncation
        self._monomial_cache: Dict[int, List[Monomial]] = {}

    def __eq__(self, other):
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return self.generators == other.generators and self.truncation == other.truncation

    def __hash__(self):
        return hash((self.generators, self.truncation))

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"GradedAlgebra({gens})"

    # -- construction helpers -------------------------------------------
    def gen(self, name: str) -> "Element":
        try:
            i = self.index[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None
        return Element(self, {(i,): Fraction(1)})

    def gens(self) -> List["Element"]:
        return [Element(self, {(i,): Fraction(1)}) for i in range(len(self.generators))]

    def one(self) -> "Element":
        return Element(self, {(): Fraction(1)})

    def zero(self) -> "Element":
        return Element(self, {})

    def scalar(self, c) -> "Element":
        return Element(self, {(): _as_fraction(c)})

    def monomial(self, mono: Monomial) -> "Element":
        return Element(self, {mono: Fraction(1)})

    def generators_of_degree(self, n: int) -> List[Generator]:
        return [g for g in self.generators if g.degree == n]

    def indices_of_degree(self, n: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == n]

    # -- monomial arithmetic --------------------------------------------
    def monomial_degree(self, mono: Monomial) -> int:
        return sum(self.degrees[i] for i in mono)

    def multiply_monomials(self, a: Monomial, b: Monomial) -> Tuple[int, Monomial]:
        """Return ``(sign, product)``; sign 0 means the product vanishes."""
        if not a:
            return 1, b
        if not b:
            return 1, a
        degs = self.degrees
        odd_b = [j for j in b if degs[j] % 2]
        swaps = 0
        for i in a:
            if degs[i] % 2 == 0:
                continue
            for j in odd_b:
                if j == i:
                    return 0, ()
                if j < i:
                    swaps += 1
        return (-1 if swaps % 2 else 1), tuple(sorted(a + b))

    def monomials(self, degree: int) -> List[Monomial]:
        """All nonzero canonical monomials of the given degree, sorted."""
        if degree in self._monomial_cache:
            return self._monomial_cache[degree]
        degs = self.degrees
        out: List[Monomial] = []

        def rec(start: int, remaining: int, prefix: Tuple[int, ...]):
            if remaining == 0:
                out.append(prefix)
                return
            for i in range(start, len(degs)):
                d = degs[i]
                if d > remaining:
                    break
                if d % 2:
                    if prefix and prefix[-1] == i:
                        continue
                    rec(i + 1, remaining - d, prefix + (i,))
                else:
                    rec(i, remaining - d, prefix + (i,))

        if degree >= 0:
            rec(0, degree, ())
        out.sort(key=self.monomial_key)
        self._monomial_cache[degree] = out
        return out

    def monomial_key(self, mono: Monomial):
        return (len(mono), mono)

    def format_monomial(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        parts = []
        i = 0
        while i < len(mono):
            j = i
            while j < len(mono) and mono[j] == mono[i]:
                j += 1
            name = self.generators[mono[i]].name
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)


def format_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Element:
    """An exact rational linear combination of canonical monomials."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedAlgebra, terms: Mapping[Monomial, Fraction]):
        self.algebra = algebra
        self.terms: Dict[Monomial, Fraction] = {m: c for m, c in terms.items() if c != 0}

    # -- structural --------------------------------------------------------
    def _check(self, other: "Element"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError("elements belong to different generator universes")

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        raise TypeError(f"cannot combine Element with {type(other).__name__}")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def degrees(self) -> set:
        return {self.algebra.monomial_degree(m) for m in self.terms}

    @property
    def degree(self) -> int:
        """Degree of a homogeneous element; raises if inhomogeneous or zero."""
        ds = self.degrees()
        if len(ds) != 1:
            raise AlgebraError(f"element {self} is not homogeneous" if ds else "zero has no degree")
        return next(iter(ds))

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (degree is None or degree in ds)

    def homogeneous_parts(self) -> Dict[int, "Element"]:
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.algebra.monomial_degree(m), {})[m] = c
        return {d: Element(self.algebra, t) for d, t in parts.items()}

    def wordlength_part(self, k: int) -> "Element":
        return Element(self.algebra, {m: c for m, c in self.terms.items() if len(m) == k})

    def min_wordlength(self) -> int:
        return min((len(m) for m in self.terms), default=0)

    def filter(self, keep: Callable[[Monomial], bool]) -> "Element":
        return Element(self.algebra, {m: c for m, c in self.terms.items() if keep(m)})

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Element(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Element":
        c = _as_fraction(c)
        if c == 0:
            return self.algebra.zero()
        return Element(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        return wedge(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    # -- maps ------------------------------------------------------------------
    def substitute(self, images: Mapping[int, object], one):
        """Image under the algebra map sending generator ``i`` to ``images[i]``.

        ``one`` is the unit of the target algebra; target elements only need
        ``+``, ``*`` and scalar multiplication.
        """
        total = None
        for mono, c in self.terms.items():
            term = one
            for i in mono:
                try:
                    term = term * images[i]
                except KeyError:
                    name = self.algebra.generators[i].name
                    raise AlgebraError(f"no image given for generator {name!r}") from None
            term = term * c
            total = term if total is None else total + term
        return one * 0 if total is None else total

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda kv: self.algebra.monomial_key(kv[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self:
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = self.algebra.format_monomial(mono)
            if not mono:
                text = format_rational(a)
            elif a == 1:
                text = body
            else:
                text = f"{format_rational(a)}*{body}"
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"Element({self})"


def wedge(a: Element, b: Element) -> Element:
    """Graded-commutative product with Koszul signs."""
    a._check(b)
    alg = a.algebra
    trunc = alg.truncation
    terms: Dict[Monomial, Fraction] = {}
    for ma, ca in a.terms.items():
        da = alg.monomial_degree(ma)
        for mb, cb in b.terms.items():
            if trunc is not None and da + alg.monomial_degree(mb) > trunc:
                continue
            sign, m = alg.multiply_monomials(ma, mb)
            if sign:
                terms[m] = terms.get(m, 0) + sign * ca * cb
    return Element(alg, terms)


class Derivation:
    """A degree +1 derivation given by its values on generators."""

    def __init__(self, algebra: GradedAlgebra, images: Mapping[str, Element]):
        self.algebra = algebra
        imgs: Dict[int, Element] = {}
        for name, value in images.items():
            if name not in algebra.index:
                raise AlgebraError(f"unknown generator {name!r}")
            g = algebra.generators[algebra.index[name]]
            if value.algebra != algebra:
                raise AlgebraError(f"image of {name!r} lives in a different algebra")
            if not value.is_homogeneous(g.degree + 1):
                raise AlgebraError(
                    f"degree mismatch: d({name}) must have degree {g.degree + 1}, got {value}")
            imgs[algebra.index[name]] = value
        self._images = imgs
        self._cache: Dict[Monomial, Element] = {}

    def image(self, name: str) -> Element:
        return self._images[self.algebra.index[name]]

    @property
    def images(self) -> Dict[str, Element]:
        return {self.algebra.generators[i].name: v for i, v in sorted(self._images.items())}

    def defined_on(self, name: str) -> bool:
        return self.algebra.index.get(name) in self._images

    def _on_monomial(self, mono: Monomial) -> Element:
        if mono in self._cache:
            return self._cache[mono]
        alg = self.algebra
        out = alg.zero()
        prefix_deg = 0
        for k, i in enumerate(mono):
            if i not in self._images:
                raise AlgebraError(f"derivation undefined on {alg.generators[i].name!r}")
            term = alg.monomial(mono[:k]) * self._images[i] * alg.monomial(mono[k + 1:])
            out = out - term if prefix_deg % 2 else out + term
            prefix_deg += alg.degrees[i]
        self._cache[mono] = out
        return out

    def __call__(self, a: Element) -> Element:
        if a.algebra != self.algebra:
            raise AlgebraError("element belongs to a different algebra")
        out = self.algebra.zero()
        for mono, c in a.terms.items():
            out = out + self._on_monomial(mono).scale(c)
        return out

    apply = __call__


def apply_derivation(d: Derivation, a: Element) -> Element:
    return d(a)


def check_d_squared(d: Derivation) -> Dict[str, Element]:
    """Generators whose image under d∘d is nonzero, with that image."""
    bad = {}
    for i in sorted(d._images):
        dd = d(d._images[i])
        if dd:
            bad[d.algebra.generators[i].name] = dd
    return bad


def wordlength_component(d: Derivation, k: int) -> Derivation:
    """The part of ``d`` raising word length by exactly ``k``."""
    if k < 1:
        raise AlgebraError("word-length component index must be positive")
    return Derivation(d.algebra, {name: v.wordlength_part(k + 1) for name, v in d.images.items()})
