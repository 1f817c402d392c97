"""Exterior forms, the Chevalley-Eilenberg differential, complex structures.

Sign convention, fixed globally: d alpha (X, Y) = -alpha([X, Y]) on 1-forms,
extended to 2-forms as an antiderivation, i.e.

    d beta (X, Y, Z) = -beta([X,Y], Z) + beta([X,Z], Y) - beta([Y,Z], X).

The taming condition is packaged as the symmetric Gram form
G(X, Y) = (Omega(X, JY) + Omega(Y, JX)) / 2, so taming = G positive definite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .algebra import LieAlgebra
from .errors import NotAComplexStructure, OddDimension
from .linalg import (
    Mat,
    Vec,
    ZERO,
    ONE,
    det,
    frac,
    identity,
    mat_eq,
    mat_from_rows,
    mat_mul,
    mat_vec,
    nullspace,
    unit_vec,
    vec,
)


@dataclass(frozen=True)
class OneForm:
    dim: int
    coeffs: Vec

    @classmethod
    def from_coeffs(cls, entries: Sequence) -> "OneForm":
        v = vec(entries)
        return cls(len(v), v)

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * frac(xi) for c, xi in zip(self.coeffs, x)), ZERO)


@dataclass(frozen=True)
class TwoForm:
    """Omega = sum over i<j of coeffs[i,j] e^i ^ e^j."""

    dim: int
    coeffs: tuple[tuple[tuple[int, int], Fraction], ...]

    @classmethod
    def from_dict(cls, dim: int, entries: Mapping[tuple[int, int], object]) -> "TwoForm":
        norm: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in entries.items():
            c = frac(c)
            if c == 0:
                continue
            if i == j:
                raise ValueError("a 2-form has no (i,i) component")
            if i > j:
                i, j, c = j, i, -c
            if not 0 <= i < j < dim:
                raise ValueError(f"index pair ({i},{j}) out of range for dim {dim}")
            norm[(i, j)] = norm.get((i, j), ZERO) + c
        frozen = tuple(sorted((k, v) for k, v in norm.items() if v != 0))
        return cls(dim, frozen)

    def coeff(self, i: int, j: int) -> Fraction:
        if i == j:
            return ZERO
        sign = ONE
        if i > j:
            i, j, sign = j, i, -ONE
        for key, c in self.coeffs:
            if key == (i, j):
                return sign * c
        return ZERO

    def __call__(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        x, y = vec(x), vec(y)
        total = ZERO
        for (i, j), c in self.coeffs:
            total += c * (x[i] * y[j] - x[j] * y[i])
        return total

    def matrix(self) -> Mat:
        m = [[ZERO] * self.dim for _ in range(self.dim)]
        for (i, j), c in self.coeffs:
            m[i][j] = c
            m[j][i] = -c
        return m

    def coeff_vector(self, pairs: Sequence[tuple[int, int]]) -> Vec:
        return tuple(self.coeff(i, j) for i, j in pairs)

    def add(self, other: "TwoForm") -> "TwoForm":
        entries = dict(self.coeffs)
        for k, c in other.coeffs:
            entries[k] = entries.get(k, ZERO) + c
        return TwoForm.from_dict(self.dim, entries)

    def scale(self, c) -> "TwoForm":
        c = frac(c)
        return TwoForm.from_dict(self.dim, {k: c * v for k, v in self.coeffs})

    def is_zero(self) -> bool:
        return not self.coeffs


@dataclass(frozen=True)
class ThreeForm:
    dim: int
    coeffs: tuple[tuple[tuple[int, int, int], Fraction], ...]

    @classmethod
    def from_dict(cls, dim: int, entries: Mapping[tuple[int, int, int], object]) -> "ThreeForm":
        norm: dict[tuple[int, int, int], Fraction] = {}
        for key, c in entries.items():
            c = frac(c)
            if c != 0:
                i, j, k = key
                if not 0 <= i < j < k < dim:
                    raise ValueError(f"triple {key} must be strictly increasing within dim {dim}")
                norm[key] = norm.get(key, ZERO) + c
        frozen = tuple(sorted((k, v) for k, v in norm.items() if v != 0))
        return cls(dim, frozen)

    def coeff(self, i: int, j: int, k: int) -> Fraction:
        for key, c in self.coeffs:
            if key == (i, j, k):
                return c
        return ZERO

    def is_zero(self) -> bool:
        return not self.coeffs


def two_form_pairs(dim: int) -> list[tuple[int, int]]:
    return list(combinations(range(dim), 2))


def three_form_triples(dim: int) -> list[tuple[int, int, int]]:
    return list(combinations(range(dim), 3))


def ce_d(g: LieAlgebra, form: OneForm | TwoForm) -> TwoForm | ThreeForm:
    """Chevalley-Eilenberg differential on 1- and 2-forms."""
    if isinstance(form, OneForm):
        entries = {}
        for i, j in two_form_pairs(g.dim):
            entries[(i, j)] = -form(g.bracket_basis(i, j))
        return TwoForm.from_dict(g.dim, entries)
    if isinstance(form, TwoForm):
        entries = {}
        for i, j, k in three_form_triples(g.dim):
            ei, ej, ek = (unit_vec(g.dim, t) for t in (i, j, k))
            val = (
                -form(g.bracket_basis(i, j), ek)
                + form(g.bracket_basis(i, k), ej)
                - form(g.bracket_basis(j, k), ei)
            )
            entries[(i, j, k)] = val
        return ThreeForm.from_dict(g.dim, entries)
    raise TypeError(f"ce_d expects a OneForm or TwoForm, got {type(form).__name__}")


def d2_matrix(g: LieAlgebra) -> tuple[list[list[Fraction]], list[tuple[int, int]], list[tuple[int, int, int]]]:
    """Matrix of d on 2-forms in the lexicographic wedge bases."""
    pairs = two_form_pairs(g.dim)
    triples = three_form_triples(g.dim)
    cols = []
    for i, j in pairs:
        image = ce_d(g, TwoForm.from_dict(g.dim, {(i, j): ONE}))
        cols.append([image.coeff(*t) for t in triples])
    matrix = [[cols[c][r] for c in range(len(pairs))] for r in range(len(triples))]
    return matrix, pairs, triples


def closed_two_forms(g: LieAlgebra) -> list[TwoForm]:
    """Echelon-canonical basis of the closed 2-forms."""
    matrix, pairs, _ = d2_matrix(g)
    if not matrix:
        kernel = [unit_vec(len(pairs), i) for i in range(len(pairs))]
    else:
        kernel = nullspace(matrix, ncols=len(pairs))
    return [
        TwoForm.from_dict(g.dim, {pairs[c]: v for c, v in enumerate(k) if v != 0})
        for k in kernel
    ]


@dataclass(frozen=True)
class ComplexStructure:
    """An endomorphism with J^2 = -I, row-major, acting on column coordinates."""

    dim: int
    matrix: tuple[Vec, ...]

    @classmethod
    def from_matrix(cls, rows: Iterable[Sequence]) -> "ComplexStructure":
        m = mat_from_rows(rows)
        n = len(m)
        if any(len(r) != n for r in m):
            raise NotAComplexStructure("J must be square")
        if n % 2 != 0:
            raise NotAComplexStructure("J^2 = -I forces an even dimension")
        square = mat_mul(m, m)
        minus_id = [[-x for x in row] for row in identity(n)]
        if not mat_eq(square, minus_id):
            raise NotAComplexStructure("J^2 != -I")
        return cls(n, tuple(tuple(r) for r in m))

    def apply(self, v: Sequence[Fraction]) -> Vec:
        return mat_vec(self.matrix, vec(v))

    def column(self, j: int) -> Vec:
        return tuple(self.matrix[i][j] for i in range(self.dim))


def standard_complex_structure(dim: int) -> ComplexStructure:
    """J e_{2k} = e_{2k+1}, J e_{2k+1} = -e_{2k} (0-indexed pairs)."""
    if dim % 2 != 0:
        raise NotAComplexStructure("even dimension required")
    rows = [[ZERO] * dim for _ in range(dim)]
    for k in range(dim // 2):
        rows[2 * k + 1][2 * k] = ONE
        rows[2 * k][2 * k + 1] = -ONE
    return ComplexStructure.from_matrix(rows)


def nijenhuis(g: LieAlgebra, J: ComplexStructure) -> dict[tuple[int, int], Vec]:
    """N(e_i, e_j) = [Je_i,Je_j] - [e_i,e_j] - J[Je_i,e_j] - J[e_i,Je_j]."""
    if J.dim != g.dim:
        raise NotAComplexStructure("J dimension does not match the algebra")
    out = {}
    for i, j in two_form_pairs(g.dim):
        ei, ej = unit_vec(g.dim, i), unit_vec(g.dim, j)
        ji, jj = J.apply(ei), J.apply(ej)
        n = list(g.bracket(ji, jj))
        for k, c in enumerate(g.bracket(ei, ej)):
            n[k] -= c
        for k, c in enumerate(J.apply(g.bracket(ji, ej))):
            n[k] -= c
        for k, c in enumerate(J.apply(g.bracket(ei, jj))):
            n[k] -= c
        out[(i, j)] = tuple(n)
    return out


def is_integrable(g: LieAlgebra, J: ComplexStructure) -> bool:
    return all(all(x == 0 for x in v) for v in nijenhuis(g, J).values())


def taming_gram(omega: TwoForm, J: ComplexStructure) -> Mat:
    """Symmetric Gram matrix G(X,Y) = (Omega(X,JY) + Omega(Y,JX)) / 2."""
    n = omega.dim
    half = Fraction(1, 2)
    cols = [J.column(j) for j in range(n)]
    m = omega.matrix()
    mj = [[sum((m[i][k] * cols[j][k] for k in range(n)), ZERO) for j in range(n)] for i in range(n)]
    return [[half * (mj[i][j] + mj[j][i]) for j in range(n)] for i in range(n)]


def leading_minors_positive(m: Mat) -> bool:
    return all(det([row[: k + 1] for row in m[: k + 1]]) > 0 for k in range(len(m)))


@dataclass(frozen=True)
class TamingResult:
    value: bool
    margin: float  # numeric lambda_min of the Gram, for reporting

    def __bool__(self) -> bool:
        return self.value


def is_taming(omega: TwoForm, J: ComplexStructure, exact: bool = True, tol: float = 1e-9) -> TamingResult:
    """Strict taming check: Gram positive definite.

    Exact mode decides by leading principal minors; numeric mode by
    lambda_min > tol.  The margin is always reported numerically.
    """
    gram = taming_gram(omega, J)
    if omega.dim == 0:
        return TamingResult(True, float("inf"))
    eigs = np.linalg.eigvalsh(np.array([[float(x) for x in row] for row in gram]))
    margin = float(eigs[0])
    ok = leading_minors_positive(gram) if exact else margin > tol
    return TamingResult(ok, margin)


def pfaffian(omega: TwoForm) -> Fraction:
    if omega.dim % 2 != 0:
        raise OddDimension("the Pfaffian needs an even-dimensional form")
    m = omega.matrix()

    def pf(indices: tuple[int, ...]) -> Fraction:
        if not indices:
            return ONE
        i = indices[0]
        rest = indices[1:]
        total = ZERO
        for pos, j in enumerate(rest):
            if m[i][j] == 0:
                continue
            sign = ONE if pos % 2 == 0 else -ONE
            remaining = rest[:pos] + rest[pos + 1:]
            total += sign * m[i][j] * pf(remaining)
        return total

    return pf(tuple(range(omega.dim)))


def is_nondegenerate(omega: TwoForm) -> bool:
    if omega.dim % 2 != 0:
        return False  # an alternating form on odd dimension is always degenerate
    return det(omega.matrix()) != 0


def is_compatible(omega: TwoForm, J: ComplexStructure) -> bool:
    """Omega(J.,J.) = Omega plus taming: the Kaehler condition at this level."""
    for i, j in two_form_pairs(omega.dim):
        lhs = omega(J.apply(unit_vec(omega.dim, i)), J.apply(unit_vec(omega.dim, j)))
        if lhs != omega.coeff(i, j):
            return False
    return bool(is_taming(omega, J))
