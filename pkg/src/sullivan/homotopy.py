"""Interval algebras, algebraic homotopies and obstruction cochains.

Conventions.  ``B ⊗ Q<t, dt>`` elements are stored as two maps from the
power of t to a coefficient in B: the polynomial part (terms b t^i) and the
dt part (terms b t^i dt, with dt written to the right of b).  A homotopy Φ
runs from Φ|_{t=0} to Φ|_{t=1}.

For an elementary extension A<Z> of A, a square f: A -> B, eta: B -> C,
g: A<Z> -> C and a homotopy Φ: A -> C ⊗ Q<t, dt> from g|_A to eta∘f, the
obstruction is

    O(z) = (f(dz), g(z) + ∫_0^1 Φ(dz))

in the relative complex C(eta) = B ⊕ C[-1] with d(a, b) = (da, eta(a) - db).
Solving d(b, c) = O gives f~(z) = b and Φ~(z) = g(z) + d(c ⊗ t) + ∫_0^t Φ(dz),
a homotopy from g to eta∘f~.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .gca import AlgebraError, Element, format_rational
from .linalg import element_vector, solve
from .model import MinimalModel


class HomotopyError(ValueError):
    pass


def _sign_by_degree(elem: Element) -> Element:
    """Multiply each homogeneous part b by (-1)^{|b|}."""
    alg = elem.algebra
    return Element(alg, {m: (-c if alg.monomial_degree(m) % 2 else c) for m, c in elem.terms.items()})


# -- DGAs used as targets ---------------------------------------------------------

class FreeDga:
    """A model viewed as a target DGA (its truncated free algebra)."""

    def __init__(self, model: MinimalModel):
        self.model = model
        self.algebra = model.algebra

    def one(self) -> Element:
        return self.algebra.one()

    def zero(self) -> Element:
        return self.algebra.zero()

    def d(self, x: Element) -> Element:
        return self.model.d(x)

    def basis(self, degree: int) -> List[Tuple]:
        return list(self.algebra.monomials(degree))

    def coordinates(self, x: Element, degree: int) -> Tuple[Fraction, ...]:
        return element_vector(x.homogeneous_parts().get(degree, self.zero()), self.basis(degree))

    def from_coordinates(self, v: Sequence, degree: int) -> Element:
        return Element(self.algebra, {m: Fraction(c) for m, c in zip(self.basis(degree), v) if c})

    def __repr__(self):
        return f"FreeDga({self.model.name})"


class IntervalElement:
    """An element of B ⊗ Q<t, dt>."""

    __slots__ = ("space", "poly", "dt")

    def __init__(self, space: "IntervalAlgebra", poly: Mapping[int, Element] = (), dt: Mapping[int, Element] = ()):
        self.space = space
        self.poly = {i: b for i, b in dict(poly).items() if b}
        self.dt = {i: b for i, b in dict(dt).items() if b}

    # structural
    def __bool__(self):
        return bool(self.poly or self.dt)

    def __eq__(self, other):
        if isinstance(other, IntervalElement):
            return self.poly == other.poly and self.dt == other.dt
        if isinstance(other, int) and other == 0:
            return not self
        return NotImplemented

    def __hash__(self):
        return hash((frozenset(self.poly.items()), frozenset(self.dt.items())))

    def _merge(self, other: "IntervalElement", sign: int) -> "IntervalElement":
        poly = dict(self.poly)
        for i, b in other.poly.items():
            poly[i] = poly[i] + b.scale(sign) if i in poly else b.scale(sign)
        dt = dict(self.dt)
        for i, b in other.dt.items():
            dt[i] = dt[i] + b.scale(sign) if i in dt else b.scale(sign)
        return IntervalElement(self.space, poly, dt)

    def _coerce(self, other) -> "IntervalElement":
        if isinstance(other, IntervalElement):
            return other
        if isinstance(other, Element):
            return self.space.const(other)
        if isinstance(other, (int, Fraction)):
            return self.space.const(self.space.base.one().scale(other))
        raise TypeError(f"cannot combine IntervalElement with {type(other).__name__}")

    def __add__(self, other):
        return self._merge(self._coerce(other), 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._merge(self._coerce(other), -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "IntervalElement":
        c = Fraction(c)
        return IntervalElement(self.space, {i: b.scale(c) for i, b in self.poly.items()},
                               {i: b.scale(c) for i, b in self.dt.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        poly: Dict[int, Element] = {}
        dt: Dict[int, Element] = {}

        def add(target, k, v):
            target[k] = target[k] + v if k in target else v

        for i, a in self.poly.items():
            for j, b in other.poly.items():
                add(poly, i + j, a * b)
            for j, b in other.dt.items():
                add(dt, i + j, a * b)
        for i, a in self.dt.items():
            # (a t^i dt)(b t^j) = (-1)^{|b|} ab t^{i+j} dt
            for j, b in other.poly.items():
                add(dt, i + j, a * _sign_by_degree(b))
        return IntervalElement(self.space, poly, dt)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Element):
            return self.space.const(other) * self
        return NotImplemented

    # structure maps
    def d(self) -> "IntervalElement":
        return self.space.d(self)

    def at(self, value) -> Element:
        """Restriction to t = value, dt = 0."""
        value = Fraction(value)
        out = self.space.base.zero()
        for i, b in self.poly.items():
            out = out + b.scale(value ** i)
        return out

    def degrees(self) -> set:
        out = set()
        for b in self.poly.values():
            out |= b.degrees()
        for b in self.dt.values():
            out |= {x + 1 for x in b.degrees()}
        return out

    def rescale(self, T) -> "IntervalElement":
        """Substitute t -> t/T (so dt -> dt/T)."""
        T = Fraction(T)
        return IntervalElement(self.space, {i: b.scale(1 / T ** i) for i, b in self.poly.items()},
                               {i: b.scale(1 / T ** (i + 1)) for i, b in self.dt.items()})

    def map_coefficients(self, fn: Callable[[Element], Element], space: "IntervalAlgebra") -> "IntervalElement":
        return IntervalElement(space, {i: fn(b) for i, b in self.poly.items()},
                               {i: fn(b) for i, b in self.dt.items()})

    def __str__(self):
        pieces = []
        for flag, part in ((False, self.poly), (True, self.dt)):
            for i in sorted(part):
                alg = part[i].algebra
                for mono, c in part[i]:
                    factors = [] if not mono else [alg.format_monomial(mono)]
                    if i:
                        factors.append("t" if i == 1 else f"t^{i}")
                    if flag:
                        factors.append("dt")
                    a = abs(c)
                    if not factors:
                        text = format_rational(a)
                    elif a == 1:
                        text = "*".join(factors)
                    else:
                        text = f"{format_rational(a)}*" + "*".join(factors)
                    pieces.append(("-" if c < 0 else "+", text))
        if not pieces:
            return "0"
        head = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        return head + "".join(f" {s} {t}" for s, t in pieces[1:])

    def __repr__(self):
        return f"IntervalElement({self})"


class IntervalAlgebra:
    """B ⊗ Q<t, dt> over a free DGA B."""

    def __init__(self, base: FreeDga):
        self.base = base

    def __eq__(self, other):
        return isinstance(other, IntervalAlgebra) and other.base.algebra == self.base.algebra

    def __hash__(self):
        return hash(self.base.algebra)

    def one(self) -> IntervalElement:
        return self.const(self.base.one())

    def zero(self) -> IntervalElement:
        return IntervalElement(self)

    def const(self, b: Element) -> IntervalElement:
        return IntervalElement(self, {0: b})

    def t(self, power: int = 1) -> IntervalElement:
        return IntervalElement(self, {power: self.base.one()})

    def dt_(self) -> IntervalElement:
        return IntervalElement(self, {}, {0: self.base.one()})

    def term(self, b: Element, i: int = 0, dt: bool = False) -> IntervalElement:
        return IntervalElement(self, {}, {i: b}) if dt else IntervalElement(self, {i: b})

    def d(self, u: IntervalElement) -> IntervalElement:
        poly: Dict[int, Element] = {}
        dt: Dict[int, Element] = {}
        for i, b in u.poly.items():
            poly[i] = poly.get(i, self.base.zero()) + self.base.d(b)
            if i:
                dt[i - 1] = dt.get(i - 1, self.base.zero()) + _sign_by_degree(b).scale(i)
        for i, b in u.dt.items():
            dt[i] = dt.get(i, self.base.zero()) + self.base.d(b)
        return IntervalElement(self, poly, dt)

    # coordinates over (monomial, t-power, has-dt) up to a t-degree cap
    def basis(self, degree: int, max_t: int) -> List[Tuple]:
        out = []
        for i in range(max_t + 1):
            out += [(m, i, 0) for m in self.base.basis(degree)]
            out += [(m, i, 1) for m in self.base.basis(degree - 1)]
        return out

    def coordinates(self, u: IntervalElement, degree: int, max_t: int) -> Tuple[Fraction, ...]:
        pos = {lab: k for k, lab in enumerate(self.basis(degree, max_t))}
        v = [Fraction(0)] * len(pos)
        for part, flag in ((u.poly, 0), (u.dt, 1)):
            for i, b in part.items():
                for m, c in b.terms.items():
                    key = (m, i, flag)
                    if key not in pos:
                        raise HomotopyError("interval element outside coordinate range")
                    v[pos[key]] = c
        return tuple(v)

    def from_coordinates(self, v: Sequence, degree: int, max_t: int) -> IntervalElement:
        alg = self.base.algebra
        poly: Dict[int, Dict] = {}
        dt: Dict[int, Dict] = {}
        for (m, i, flag), c in zip(self.basis(degree, max_t), v):
            if c:
                (dt if flag else poly).setdefault(i, {})[m] = Fraction(c)
        return IntervalElement(self, {i: Element(alg, t) for i, t in poly.items()},
                               {i: Element(alg, t) for i, t in dt.items()})

    def __repr__(self):
        return f"IntervalAlgebra({self.base!r})"


def integrate_0_1(u: IntervalElement) -> Element:
    """∫_0^1: kills b t^i, sends b t^i dt to (-1)^{|b|} b/(i+1)."""
    out = u.space.base.zero()
    for i, b in u.dt.items():
        out = out + _sign_by_degree(b).scale(Fraction(1, i + 1))
    return out


def integrate_0_t(u: IntervalElement) -> IntervalElement:
    """∫_0^t: kills b t^i, sends b t^i dt to (-1)^{|b|} b t^{i+1}/(i+1)."""
    return IntervalElement(u.space, {i + 1: _sign_by_degree(b).scale(Fraction(1, i + 1)) for i, b in u.dt.items()})


@dataclass
class FundamentalTheoremCheck:
    first: bool
    second: bool
    residual_first: Element
    residual_second: IntervalElement

    @property
    def ok(self) -> bool:
        return self.first and self.second


def check_fundamental_theorems(u: IntervalElement) -> FundamentalTheoremCheck:
    space = u.space
    base = space.base
    lhs1 = base.d(integrate_0_1(u)) + integrate_0_1(space.d(u))
    r1 = lhs1 - (u.at(1) - u.at(0))
    lhs2 = space.d(integrate_0_t(u)) + integrate_0_t(space.d(u))
    r2 = lhs2 - (u - space.const(u.at(0)))
    return FundamentalTheoremCheck(not r1, not r2, r1, r2)


def random_interval_element(rng: random.Random, space: IntervalAlgebra, max_t: int = 3,
                            terms: int = 4, max_degree: Optional[int] = None) -> IntervalElement:
    """A random (generally inhomogeneous) element with small integer coefficients."""
    alg = space.base.algebra
    top = max_degree if max_degree is not None else (alg.truncation or 4)
    monos = [m for k in range(0, top + 1) for m in alg.monomials(k)]
    poly: Dict[int, Dict] = {}
    dt: Dict[int, Dict] = {}
    for _ in range(terms):
        m = rng.choice(monos)
        i = rng.randint(0, max_t)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        target = dt if rng.random() < 0.5 else poly
        bucket = target.setdefault(i, {})
        bucket[m] = bucket.get(m, 0) + c
    return IntervalElement(space, {i: Element(alg, t) for i, t in poly.items()},
                           {i: Element(alg, t) for i, t in dt.items()})


# -- morphisms and homotopies -------------------------------------------------------

class DgaMorphism:
    """An algebra map from (part of) a model, given on generators.

    ``target`` is a :class:`FreeDga` or an :class:`IntervalAlgebra`.  The map
    may be partial: it is defined on the generators listed in ``images``.
    """

    def __init__(self, source: MinimalModel, target, images: Mapping[str, object], name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        alg = source.algebra
        unknown = [k for k in images if k not in alg.index]
        if unknown:
            raise HomotopyError(f"images given for unknown generators: {', '.join(sorted(unknown))}")
        self.images = dict(images)
        for gname, img in self.images.items():
            deg = alg.generators[alg.index[gname]].degree
            found = img.degrees() if img else set()
            if found and found != {deg}:
                raise HomotopyError(f"image of {gname} has degree {sorted(found)}, expected {deg}")
        self._idx = {alg.index[k]: v for k, v in self.images.items()}

    @property
    def domain(self) -> List[str]:
        return [g.name for g in self.source.generators if g.name in self.images]

    def __call__(self, x: Element):
        if x.algebra != self.source.algebra:
            raise AlgebraError("element is not in the source algebra")
        try:
            return x.substitute(self._idx, self.target.one())
        except AlgebraError as exc:
            raise HomotopyError(str(exc)) from None

    def target_d(self, y):
        return self.target.d(y)

    def chain_map_defects(self) -> Dict[str, object]:
        """Generators g in the domain with d(φ(g)) != φ(dg)."""
        bad = {}
        for name in self.domain:
            lhs = self.target.d(self.images[name])
            rhs = self(self.source.differential(name))
            diff = lhs - rhs
            if diff:
                bad[name] = diff
        return bad

    def check_chain_map(self) -> bool:
        return not self.chain_map_defects()

    def compose(self, after: "DgaMorphism") -> "DgaMorphism":
        """``after ∘ self``; ``after`` must be defined on the free algebra self lands in."""
        return DgaMorphism(self.source, after.target, {k: after(v) for k, v in self.images.items()},
                           f"{after.name}∘{self.name}")

    def restrict(self, names: Iterable[str]) -> "DgaMorphism":
        names = set(names)
        return DgaMorphism(self.source, self.target, {k: v for k, v in self.images.items() if k in names},
                           self.name)

    def equals(self, other: "DgaMorphism") -> bool:
        return self.domain == other.domain and all(self.images[k] == other.images[k] for k in self.domain)

    def __repr__(self):
        body = ", ".join(f"{k} -> {v}" for k, v in self.images.items())
        return f"DgaMorphism({body})"


class AlgebraicHomotopy:
    """A DGA morphism into B ⊗ Q<t, dt>, with its endpoint morphisms."""

    def __init__(self, morphism: DgaMorphism):
        if not isinstance(morphism.target, IntervalAlgebra):
            raise HomotopyError("a homotopy must land in an interval algebra")
        self.morphism = morphism
        base = morphism.target.base
        self.start = DgaMorphism(morphism.source, base, {k: v.at(0) for k, v in morphism.images.items()}, "start")
        self.end = DgaMorphism(morphism.source, base, {k: v.at(1) for k, v in morphism.images.items()}, "end")

    @property
    def source(self) -> MinimalModel:
        return self.morphism.source

    @property
    def space(self) -> IntervalAlgebra:
        return self.morphism.target

    def __call__(self, x: Element) -> IntervalElement:
        return self.morphism(x)

    def check(self) -> bool:
        return self.morphism.check_chain_map()

    def restrict(self, names) -> "AlgebraicHomotopy":
        return AlgebraicHomotopy(self.morphism.restrict(names))

    def rescaled(self, T) -> "AlgebraicHomotopy":
        return AlgebraicHomotopy(DgaMorphism(self.source, self.space,
                                             {k: v.rescale(T) for k, v in self.morphism.images.items()}))


def constant_homotopy(phi: DgaMorphism) -> AlgebraicHomotopy:
    space = IntervalAlgebra(phi.target)
    return AlgebraicHomotopy(DgaMorphism(phi.source, space, {k: space.const(v) for k, v in phi.images.items()}))


# -- relative complexes -------------------------------------------------------------

@dataclass
class RelativeComplex:
    """C^k(eta) = B^k ⊕ C^{k-1} with d(a, b) = (da, eta(a) - db)."""

    eta: DgaMorphism

    @property
    def B(self) -> FreeDga:
        return FreeDga(self.eta.source)

    @property
    def C(self) -> FreeDga:
        return self.eta.target

    def d(self, a: Element, b: Element) -> Tuple[Element, Element]:
        return self.eta.source.d(a), self.eta(a) - self.C.d(b)

    def solve(self, a: Element, b: Element, degree: int) -> Optional[Tuple[Element, Element]]:
        """(x, y) in C^{degree-1} with d(x, y) = (a, b), or None if (a, b) is not exact."""
        B, C = self.B, self.C
        xs = B.basis(degree - 1)
        ys = C.basis(degree - 2) if degree >= 2 else []
        cols = []
        for m in xs:
            x = Element(B.algebra, {m: Fraction(1)})
            da, db = self.d(x, C.zero())
            cols.append(B.coordinates(da, degree) + C.coordinates(db, degree - 1))
        for m in ys:
            y = Element(C.algebra, {m: Fraction(1)})
            cols.append(tuple(Fraction(0) for _ in B.basis(degree)) + C.coordinates(-C.d(y), degree - 1))
        rhs = B.coordinates(a, degree) + C.coordinates(b, degree - 1)
        if not cols:
            return (B.zero(), C.zero()) if not any(rhs) else None
        sol = solve(cols, rhs)
        if sol is None:
            return None
        x = B.from_coordinates(sol[:len(xs)], degree - 1)
        y = C.from_coordinates(sol[len(xs):], degree - 2) if ys else C.zero()
        return x, y


def _check_extension(source: MinimalModel, base: Iterable[str]) -> Tuple[List[str], int]:
    """The generators outside ``base``; they must share one degree and have d in the base."""
    base = set(base)
    new = [g for g in source.generators if g.name not in base]
    if not new:
        raise HomotopyError("extension adds no generators")
    degs = {g.degree for g in new}
    if len(degs) != 1:
        raise HomotopyError("extension generators must have a single degree")
    alg = source.algebra
    for g in new:
        for m in source.differential(g.name).terms:
            for i in m:
                if alg.generators[i].name not in base:
                    raise HomotopyError(f"d{g.name} leaves the base algebra")
    return [g.name for g in new], degs.pop()


@dataclass
class ObstructionData:
    f: DgaMorphism          # A -> B
    eta: DgaMorphism        # B -> C
    g: DgaMorphism          # A<Z> -> C
    Phi: AlgebraicHomotopy  # A -> C ⊗ I, from g|A to eta∘f

    def validate(self):
        base = self.f.domain
        if set(self.Phi.morphism.domain) != set(base):
            raise HomotopyError("homotopy and f must be defined on the same base")
        z, _ = _check_extension(self.g.source, base)
        for name in base:
            if self.Phi.start.images[name] != self.g.images[name]:
                raise HomotopyError(f"homotopy does not start at g on {name}")
            if self.Phi.end.images[name] != self.eta(self.f.images[name]):
                raise HomotopyError(f"homotopy does not end at eta∘f on {name}")
        return z


def obstruction_cochain(data: ObstructionData) -> Dict[str, Tuple[Element, Element]]:
    zs = data.validate()
    src = data.g.source
    out = {}
    for z in zs:
        dz = src.differential(z)
        out[z] = (data.f(dz), data.g.images[z] + integrate_0_1(data.Phi(dz)))
    return out


def relative_cocycle_defects(eta: DgaMorphism, cochain: Mapping[str, Tuple[Element, Element]]) -> Dict[str, tuple]:
    rel = RelativeComplex(eta)
    bad = {}
    for z, (a, b) in cochain.items():
        da, db = rel.d(a, b)
        if da or db:
            bad[z] = (da, db)
    return bad


def solve_obstruction(data: ObstructionData) -> Optional[Dict[str, Tuple[Element, Element]]]:
    """Preimages (b, c) of the obstruction, or None if some O(z) is not exact."""
    cochain = obstruction_cochain(data)
    rel = RelativeComplex(data.eta)
    out = {}
    for z, (a, b) in cochain.items():
        n = data.g.source.algebra.generators[data.g.source.algebra.index[z]].degree
        sol = rel.solve(a, b, n + 1)
        if sol is None:
            return None
        out[z] = sol
    return out


@dataclass
class Extension:
    f: DgaMorphism
    Phi: AlgebraicHomotopy


def extend_homotopy(data: ObstructionData, bc: Mapping[str, Tuple[Element, Element]]) -> Extension:
    """Extend f and Φ over Z using d(b, c) = O; errors carry the residual."""
    cochain = obstruction_cochain(data)
    rel = RelativeComplex(data.eta)
    space = data.Phi.space
    f_images = dict(data.f.images)
    h_images = dict(data.Phi.morphism.images)
    src = data.g.source
    for z, (o1, o2) in cochain.items():
        if z not in bc:
            raise HomotopyError(f"no (b, c) given for {z}")
        b, c = bc[z]
        d1, d2 = rel.d(b, c)
        if d1 != o1 or d2 != o2:
            raise HomotopyError(f"d(b, c) != O({z}): residual ({d1 - o1}, {d2 - o2})")
        f_images[z] = b
        ct = space.term(c, 1)
        h_images[z] = space.const(data.g.images[z]) + space.d(ct) + integrate_0_t(data.Phi(src.differential(z)))
    f_new = DgaMorphism(src, data.f.target, f_images, data.f.name)
    phi_new = AlgebraicHomotopy(DgaMorphism(src, space, h_images))
    return Extension(f_new, phi_new)


def check_extension(data: ObstructionData, ext: Extension) -> Dict[str, bool]:
    """Postconditions: Φ~ starts at g, ends at eta∘f~, and commutes with d."""
    starts = all(ext.Phi.start.images[k] == data.g.images[k] for k in ext.Phi.morphism.domain)
    ends = all(ext.Phi.end.images[k] == data.eta(ext.f.images[k]) for k in ext.Phi.morphism.domain)
    return {
        "starts_at_g": starts,
        "ends_at_eta_f": ends,
        "chain_map": ext.Phi.check(),
        "f_chain_map": ext.f.check_chain_map(),
        "restricts": all(ext.Phi.morphism.images[k] == data.Phi.morphism.images[k] for k in data.f.domain),
    }


# -- relative obstruction ---------------------------------------------------------------

def check_surjective(mu: DgaMorphism, max_degree: int) -> List[int]:
    """Degrees (up to max_degree) where the free-algebra map mu is not onto."""
    from .linalg import rank

    B = FreeDga(mu.source)
    C = mu.target
    bad = []
    for k in range(0, max_degree + 1):
        cols = [C.coordinates(mu(Element(B.algebra, {m: Fraction(1)})), k) for m in B.basis(k)]
        if rank([list(r) for r in zip(*cols)] if cols else [], len(cols)) < len(C.basis(k)):
            bad.append(k)
    return bad


@dataclass
class RelativeObstruction:
    cochain: Dict[str, Tuple[Element, Element]]
    exact: Dict[str, bool]
    truncation: int

    @property
    def vanishes(self) -> bool:
        return all(self.exact.values())


def relative_obstruction(phi: DgaMorphism, psi: DgaMorphism, Phi: AlgebraicHomotopy,
                         chi: AlgebraicHomotopy, mu: DgaMorphism) -> RelativeObstruction:
    """O(z) = (psi(z) - phi(z) - ∫_0^1 Φ(dz), ∫_0^1 χ(z)) in C(mu), and whether it is exact.

    Φ runs from phi to psi on the base; χ runs from mu∘phi to mu∘psi and
    extends mu∘Φ.
    """
    src = phi.source
    zs, n = _check_extension(src, Phi.morphism.domain)
    top = max(n + 1, mu.target.algebra.truncation or 0)
    bad = check_surjective(mu, min(top, mu.source.max_degree + 2))
    if bad:
        raise HomotopyError(f"mu is not surjective in degrees {bad}")
    for name in Phi.morphism.domain:
        if Phi.start.images[name] != phi.images[name] or Phi.end.images[name] != psi.images[name]:
            raise HomotopyError(f"Φ does not run from phi to psi on {name}")
        mapped = Phi.morphism.images[name].map_coefficients(mu, chi.space)
        if chi.morphism.images[name] != mapped:
            raise HomotopyError(f"χ does not extend mu∘Φ on {name}")
    for name in chi.morphism.domain:
        if chi.start.images[name] != mu(phi.images[name]) or chi.end.images[name] != mu(psi.images[name]):
            raise HomotopyError(f"χ does not run from mu∘phi to mu∘psi on {name}")
    rel = RelativeComplex(mu)
    cochain, exact = {}, {}
    for z in zs:
        dz = src.differential(z)
        a = psi.images[z] - phi.images[z] - integrate_0_1(Phi(dz))
        b = integrate_0_1(chi.morphism.images[z])
        cochain[z] = (a, b)
        exact[z] = rel.solve(a, b, n) is not None
    return RelativeObstruction(cochain, exact, mu.source.max_degree + 2)


# -- dilatation ---------------------------------------------------------------------------

@dataclass
class Dilatation:
    norms: Dict[int, Fraction]

    def at_most(self, L) -> bool:
        """Dil <= L, decided as norm_k <= L^k for every k."""
        L = Fraction(L)
        return all(v <= L ** k for k, v in self.norms.items())

    def approx(self) -> float:
        return max((float(v) ** (1.0 / k) for k, v in self.norms.items() if k > 0), default=0.0)


def _operator_norm(columns: List[Dict]) -> Fraction:
    """Max absolute row sum of the matrix given by sparse columns."""
    rows: Dict[object, Fraction] = {}
    for col in columns:
        for key, c in col.items():
            rows[key] = rows.get(key, Fraction(0)) + abs(c)
    return max(rows.values(), default=Fraction(0))


def _sparse(img) -> Dict:
    if isinstance(img, IntervalElement):
        out = {}
        for i, b in img.poly.items():
            for m, c in b.terms.items():
                out[(m, i, 0)] = c
        for i, b in img.dt.items():
            for m, c in b.terms.items():
                out[(m, i, 1)] = c
        return out
    return dict(img.terms)


def dilatation(phi, T=None) -> Dilatation:
    """Per-degree coefficient operator norms of a morphism or homotopy on generators.

    For a homotopy and a given T the images are first rescaled by t -> t/T.
    """
    if isinstance(phi, AlgebraicHomotopy):
        phi = phi.rescaled(T).morphism if T is not None else phi.morphism
    by_degree: Dict[int, List[Dict]] = {}
    alg = phi.source.algebra
    for name, img in phi.images.items():
        k = alg.generators[alg.index[name]].degree
        by_degree.setdefault(k, []).append(_sparse(img))
    return Dilatation({k: _operator_norm(cols) for k, cols in sorted(by_degree.items())})


def formal_length(Phi: AlgebraicHomotopy) -> Dilatation:
    """Dil(∫_0^1 Φ) with the unscaled interval (T = 1)."""
    alg = Phi.source.algebra
    by_degree: Dict[int, List[Dict]] = {}
    for name, img in Phi.morphism.images.items():
        k = alg.generators[alg.index[name]].degree
        by_degree.setdefault(k, []).append(dict(integrate_0_1(img).terms))
    return Dilatation({k: _operator_norm(cols) for k, cols in sorted(by_degree.items())})


# -- random instances ------------------------------------------------------------------------

def identity_morphism(model: MinimalModel) -> DgaMorphism:
    return DgaMorphism(model, FreeDga(model), {g.name: model.gen(g.name) for g in model.generators}, "id")


def dependency_order(model: MinimalModel) -> List:
    """Generators ordered so that each differential only involves earlier ones."""
    alg = model.algebra
    pending = list(model.generators)
    done: set = set()
    out = []
    while pending:
        ready = [g for g in pending
                 if all(alg.generators[i].name in done for m in model.differential(g.name).terms for i in m)]
        if not ready:
            raise HomotopyError("differential is not well-founded (nilpotence fails)")
        for g in ready:
            out.append(g)
            done.add(g.name)
        pending = [g for g in pending if g.name not in done]
    return out


def random_homotopy(rng: random.Random, model: MinimalModel, max_t: int = 2, terms: int = 2) -> AlgebraicHomotopy:
    """A random self-homotopy H of ``model`` starting at the identity.

    Generators are processed in :func:`dependency_order`; H(v) = v + ∫_0^t H(dv) + dK
    with K random and vanishing at t = 0, which makes H a chain map with
    H|_{t=0} = id.
    """
    space = IntervalAlgebra(FreeDga(model))
    alg = model.algebra
    images: Dict[str, IntervalElement] = {}
    partial = DgaMorphism(model, space, {})
    for g in dependency_order(model):
        partial = DgaMorphism(model, space, images)
        w = partial(model.differential(g.name))
        K = _random_homogeneous(rng, space, g.degree - 1, max_t, terms)
        images[g.name] = space.const(alg.gen(g.name)) + integrate_0_t(w) + space.d(K)
    return AlgebraicHomotopy(DgaMorphism(model, space, images, "H"))


def _random_homogeneous(rng: random.Random, space: IntervalAlgebra, degree: int, max_t: int,
                        terms: int) -> IntervalElement:
    """Random element of the given total degree with no t^0 polynomial part."""
    alg = space.base.algebra
    out = space.zero()
    if degree < 0:
        return out
    for _ in range(terms):
        use_dt = rng.random() < 0.5
        monos = alg.monomials(degree - 1 if use_dt else degree)
        if not monos:
            continue
        m = rng.choice(monos)
        i = rng.randint(0 if use_dt else 1, max_t)
        c = Fraction(rng.choice((-2, -1, 1, 2, 3)))
        out = out + space.term(Element(alg, {m: c}), i, use_dt)
    return out


def random_cocycle(rng: random.Random, model: MinimalModel, degree: int) -> Element:
    """A random closed element of the given degree (possibly zero)."""
    from .linalg import nullspace

    dga = FreeDga(model)
    monos = dga.basis(degree)
    if not monos:
        return dga.zero()
    cols = [dga.coordinates(model.d(Element(model.algebra, {m: Fraction(1)})), degree + 1) for m in monos]
    rows = [list(r) for r in zip(*cols)]
    kernel = nullspace(rows, len(monos)) if rows and rows[0] else [
        tuple(Fraction(int(i == j)) for j in range(len(monos))) for i in range(len(monos))]
    out = dga.zero()
    for v in kernel:
        c = rng.choice((-1, 0, 1, 2))
        if c:
            out = out + dga.from_coordinates(v, degree).scale(c)
    return out


def extension_generators(model: MinimalModel) -> List[str]:
    """Top-degree generators that occur in no differential.

    Removing them leaves a sub-DGA, so the model is an elementary extension
    of what remains.
    """
    alg = model.algebra
    used = set()
    for g in model.generators:
        for m in model.differential(g.name).terms:
            used.update(alg.generators[i].name for i in m)
    top = max(g.degree for g in model.generators)
    zs = [g.name for g in model.generators if g.degree == top and g.name not in used]
    if not zs:
        raise HomotopyError(f"{model.name} has no top-degree generator free of differentials")
    return zs


def obstruction_instance(rng: random.Random, model: MinimalModel, perturb: bool = True,
                         max_t: int = 2) -> Tuple[ObstructionData, List[str]]:
    """A random instance of the extension problem on ``model``.

    The extension adds :func:`extension_generators`.  B = C = the model,
    eta = id, Φ = H restricted to the base, f = H|_{t=1}, and g agrees with
    the identity except that g(z) may be shifted by a random cocycle.
    """
    zs = extension_generators(model)
    base = [g.name for g in model.generators if g.name not in zs]
    top = model.algebra.generators[model.algebra.index[zs[0]]].degree
    H = random_homotopy(rng, model, max_t)
    C = FreeDga(model)
    eta = identity_morphism(model)
    g_images = {name: model.gen(name) for name in base}
    for z in zs:
        shift = random_cocycle(rng, model, top) if perturb else C.zero()
        g_images[z] = model.gen(z) + shift
    g = DgaMorphism(model, C, g_images, "g")
    f = DgaMorphism(model, C, {k: H.end.images[k] for k in base}, "f")
    Phi = H.restrict(base)
    return ObstructionData(f, eta, g, Phi), zs
