"""Exact linear algebra over Q and labelled subspaces.

Elimination runs on integer rows (fraction-free, rows kept primitive by
dividing out their content) and only the final reduced row-echelon form is
converted back to fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .gca import Derivation, Element, GradedAlgebra

Vector = Tuple[Fraction, ...]


def _integer_row(row: Sequence) -> List[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    return [int(Fraction(x) * den) for x in row]


def _primitive(row: List[int]) -> List[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row] if g > 1 else row


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[List[Vector], List[int]]:
    """Reduced row-echelon form of ``rows`` and its pivot columns."""
    mat = [_primitive(_integer_row(r)) for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][col]:
                if piv is None or abs(mat[i][col]) < abs(mat[piv][col]):
                    piv = i
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][col]
        prow = mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = _primitive([p * a - f * b for a, b in zip(mat[i], prow)])
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    out = []
    for i, col in enumerate(pivots):
        p = mat[i][col]
        out.append(tuple(Fraction(x, p) for x in mat[i]))
    return out, pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """Basis of ``{v : M v = 0}`` for the matrix with the given rows."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(columns: Sequence[Sequence], rhs: Sequence) -> Optional[Vector]:
    """One solution ``x`` of ``sum_j x_j columns[j] = rhs`` or ``None``."""
    n = len(columns)
    m = len(rhs)
    rows = [[columns[j][i] for j in range(n)] + [rhs[i]] for i in range(m)]
    red, pivots = rref(rows, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


def transpose(rows: Sequence[Sequence]) -> List[List]:
    return [list(col) for col in zip(*rows)]


class Subspace:
    """A subspace of Q^labels stored by its reduced row-echelon basis.

    The coordinate basis indexed by ``labels`` is orthonormal, so
    complements are orthogonal complements for the coefficient pairing.
    """

    __slots__ = ("labels", "basis", "pivots", "_pos")

    def __init__(self, labels: Sequence[Hashable], vectors: Sequence[Sequence] = ()):
        self.labels = tuple(labels)
        vecs = [v for v in vectors if any(v)]
        self.basis, self.pivots = rref(vecs, len(self.labels)) if vecs else ([], [])
        self._pos: Dict[Hashable, int] = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def full(cls, labels):
        n = len(labels)
        return cls(labels, [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)])

    @classmethod
    def zero(cls, labels):
        return cls(labels)

    @classmethod
    def coordinate(cls, labels, chosen):
        chosen = set(chosen)
        n = len(labels)
        rows = [tuple(Fraction(int(i == j)) for j in range(n)) for i, lab in enumerate(labels) if lab in chosen]
        return cls(labels, rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.labels)

    def _compatible(self, other: "Subspace"):
        if self.labels != other.labels:
            raise ValueError("subspaces live in different ambient spaces")

    def vector(self, coords: Dict[Hashable, Fraction]) -> Vector:
        v = [Fraction(0)] * len(self.labels)
        for lab, c in coords.items():
            v[self._pos[lab]] = Fraction(c)
        return tuple(v)

    def residual(self, v: Sequence) -> Vector:
        """``v`` minus its reduction against the echelon basis."""
        out = [Fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            a = out[p]
            if a:
                for j, rj in enumerate(row):
                    if rj:
                        out[j] -= a * rj
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        return not any(self.residual(v))

    __contains__ = contains

    def __le__(self, other: "Subspace") -> bool:
        self._compatible(other)
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.labels == other.labels and self.basis == other.basis

    def __hash__(self):
        return hash((self.labels, tuple(self.basis)))

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        return Subspace(self.labels, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        if not self.basis or not other.basis:
            return Subspace(self.labels)
        # a in A, b in B with a - b = 0
        cols = list(self.basis) + [tuple(-x for x in v) for v in other.basis]
        kernel = nullspace(transpose(cols), len(cols))
        k = len(self.basis)
        vecs = []
        for coeffs in kernel:
            v = [Fraction(0)] * len(self.labels)
            for c, row in zip(coeffs[:k], self.basis):
                if c:
                    for j, x in enumerate(row):
                        v[j] += c * x
            vecs.append(tuple(v))
        return Subspace(self.labels, vecs)

    __and__ = intersection

    def orthogonal_complement(self) -> "Subspace":
        return Subspace(self.labels, nullspace(self.basis, len(self.labels)) if self.basis
                        else Subspace.full(self.labels).basis)

    def complement_in(self, bigger: "Subspace") -> "Subspace":
        """Orthogonal complement of ``self`` inside ``bigger``."""
        return self.orthogonal_complement() & bigger

    def coordinates(self, v: Sequence) -> Optional[Vector]:
        """Coefficients of ``v`` in the echelon basis, or None if v is outside."""
        if not self.contains(v):
            return None
        return tuple(Fraction(v[p]) for p in self.pivots)

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.ambient_dim})"


# -- bridges between elements and coordinate vectors -----------------------

def element_vector(elem: Element, labels: Sequence) -> Vector:
    pos = {lab: i for i, lab in enumerate(labels)}
    v = [Fraction(0)] * len(labels)
    for m, c in elem.terms.items():
        try:
            v[pos[m]] = c
        except KeyError:
            raise ValueError(f"monomial {elem.algebra.format_monomial(m)} outside coordinate range") from None
    return tuple(v)


def vector_element(algebra: GradedAlgebra, labels: Sequence, v: Sequence) -> Element:
    return Element(algebra, {lab: Fraction(c) for lab, c in zip(labels, v) if c})


def generator_combination(algebra: GradedAlgebra, degree: int, v: Sequence) -> Element:
    """Element sum v_i g_i over the degree-``degree`` generators."""
    idx = algebra.indices_of_degree(degree)
    return Element(algebra, {(i,): Fraction(c) for i, c in zip(idx, v) if c})


def generator_labels(algebra: GradedAlgebra, degree: int) -> Tuple[str, ...]:
    return tuple(g.name for g in algebra.generators_of_degree(degree))


def monomial_span(algebra: GradedAlgebra, degree: int, keep=None) -> Subspace:
    """Coordinate subspace of the degree-``degree`` monomials accepted by ``keep``."""
    labels = algebra.monomials(degree)
    chosen = labels if keep is None else [m for m in labels if keep(m)]
    return Subspace.coordinate(labels, chosen)


def span_of_elements(algebra: GradedAlgebra, degree: int, elems: Sequence[Element]) -> Subspace:
    labels = algebra.monomials(degree)
    return Subspace(labels, [element_vector(e, labels) for e in elems])


def differential_matrix(d: Derivation, degree: int) -> List[Vector]:
    """Columns: coordinates of d(g) for the degree-``degree`` generators."""
    alg = d.algebra
    labels = alg.monomials(degree + 1)
    return [element_vector(d(alg.monomial((i,))), labels) for i in alg.indices_of_degree(degree)]


def preimage(d: Derivation, degree: int, target: Subspace) -> Subspace:
    """``{v in V^degree : d(v) in target}`` as a subspace over generator names."""
    alg = d.algebra
    if tuple(target.labels) != tuple(alg.monomials(degree + 1)):
        raise ValueError("target must be a subspace of the degree-(n+1) monomial span")
    cols = [target.residual(col) for col in differential_matrix(d, degree)]
    labels = generator_labels(alg, degree)
    if not cols:
        return Subspace(labels)
    rows = transpose(cols)
    return Subspace(labels, nullspace(rows, len(cols)) if rows else Subspace.full(labels).basis)
