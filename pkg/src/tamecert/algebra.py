"""Real Lie algebras with exact structure constants and their invariants.

Structure constants are kept as sparse maps over ``Fraction``; every
structural decision (Jacobi, series, ideals, unimodularity) is made in exact
arithmetic.  Floating point enters only in the documented fallback for
adjoint weights beyond the exact-characteristic-polynomial cutoff, and the
result is then flagged as numeric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, JacobiViolation, NotAnIdeal, NotASubalgebra, NotSolvable
from .linalg import (
    Mat,
    Subspace,
    Vec,
    ZERO,
    all_roots_real,
    charpoly,
    frac,
    is_zero_vec,
    mat_mul,
    mat_trace,
    nullspace,
    rational_roots,
    unit_vec,
    vec,
    vec_add,
    zero_vec,
)

# Exact weight/eigenvalue extraction is attempted up to this dimension;
# beyond it the numeric fallback (tolerance 1e-9 on imaginary parts) is used.
EXACT_WEIGHT_DIM_LIMIT = 8
NUMERIC_IMAG_TOL = 1e-9

Brackets = Mapping[tuple[int, int], Mapping[int, Fraction]]


def _normalize_brackets(dim: int, brackets: Brackets) -> dict[tuple[int, int], dict[int, Fraction]]:
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), comps in brackets.items():
        if not (0 <= i < j < dim):
            raise DimensionMismatch(f"bracket key ({i},{j}) must satisfy 0 <= i < j < dim={dim}")
        entry = {}
        for k, c in comps.items():
            k = int(k)
            if not 0 <= k < dim:
                raise DimensionMismatch(f"bracket ({i},{j}) targets component {k} outside dim={dim}")
            c = frac(c)
            if c != 0:
                entry[k] = c
        if entry:
            out[(i, j)] = entry
    return out


@dataclass(frozen=True)
class LieAlgebra:
    """A finite-dimensional real Lie algebra in a fixed basis.

    ``structure_constants`` stores [e_i, e_j] for i < j only; antisymmetry is
    implied and the Jacobi identity is validated at construction.
    """

    dim: int
    basis_labels: tuple[str, ...]
    structure_constants: tuple[tuple[tuple[int, int], tuple[tuple[int, Fraction], ...]], ...]

    @classmethod
    def from_brackets(
        cls,
        dim: int,
        brackets: Brackets,
        labels: Sequence[str] | None = None,
        check: bool = True,
    ) -> "LieAlgebra":
        if dim < 0:
            raise DimensionMismatch("dimension must be nonnegative")
        if labels is None:
            labels = tuple(f"e{i+1}" for i in range(dim))
        labels = tuple(str(x) for x in labels)
        if len(labels) != dim:
            raise DimensionMismatch(f"{len(labels)} labels for dimension {dim}")
        norm = _normalize_brackets(dim, brackets)
        frozen = tuple(
            (key, tuple(sorted(norm[key].items()))) for key in sorted(norm)
        )
        alg = cls(dim, labels, frozen)
        if check:
            alg.check_jacobi()
        return alg

    # --- bracket machinery ---

    def bracket_table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        return {key: dict(comps) for key, comps in self.structure_constants}

    def bracket_basis(self, i: int, j: int) -> Vec:
        """[e_i, e_j] as a coordinate vector."""
        if i == j:
            return zero_vec(self.dim)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        out = [ZERO] * self.dim
        for key, comps in self.structure_constants:
            if key == (i, j):
                for k, c in comps:
                    out[k] = sign * c
                break
        return tuple(out)

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
        """[x, y] by bilinear expansion."""
        x = vec(x)
        y = vec(y)
        out = [ZERO] * self.dim
        for (i, j), comps in self.structure_constants:
            coeff = x[i] * y[j] - x[j] * y[i]
            if coeff != 0:
                for k, c in comps:
                    out[k] += coeff * c
        return tuple(out)

    def jacobi_residual(self, i: int, j: int, k: int) -> Vec:
        ei, ej, ek = unit_vec(self.dim, i), unit_vec(self.dim, j), unit_vec(self.dim, k)
        r = self.bracket(self.bracket(ei, ej), ek)
        r = vec_add(r, self.bracket(self.bracket(ej, ek), ei))
        r = vec_add(r, self.bracket(self.bracket(ek, ei), ej))
        return r

    def check_jacobi(self) -> None:
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    r = self.jacobi_residual(i, j, k)
                    if not is_zero_vec(r):
                        raise JacobiViolation((i, j, k), r)

    def adjoint(self, x: Sequence[Fraction]) -> Mat:
        """Matrix of ad_x = [x, .] acting on column coordinates."""
        x = vec(x)
        cols = [self.bracket(x, unit_vec(self.dim, j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.dim)]

    def adjoint_of_basis(self, i: int) -> Mat:
        return self.adjoint(unit_vec(self.dim, i))

    # --- structural invariants ---

    def is_abelian(self) -> bool:
        return not self.structure_constants

    def is_unimodular(self) -> tuple[bool, int | None]:
        """True iff every basis adjoint is traceless; else (False, witness index)."""
        for i in range(self.dim):
            if mat_trace(self.adjoint_of_basis(i)) != 0:
                return False, i
        return True, None

    def bracket_subspaces(self, a: Subspace, b: Subspace) -> Subspace:
        """Span of [a, b]."""
        vecs = [self.bracket(x, y) for x in a.basis for y in b.basis]
        return Subspace.from_vectors(self.dim, vecs)

    def derived_series(self) -> list[Subspace]:
        series = [Subspace.full(self.dim)]
        while True:
            nxt = self.bracket_subspaces(series[-1], series[-1])
            if nxt.dim == series[-1].dim:
                break
            series.append(nxt)
            if nxt.dim == 0:
                break
        return series

    def lower_central_series(self) -> list[Subspace]:
        full = Subspace.full(self.dim)
        series = [full]
        while True:
            nxt = self.bracket_subspaces(full, series[-1])
            if nxt.dim == series[-1].dim:
                break
            series.append(nxt)
            if nxt.dim == 0:
                break
        return series

    def derived_subalgebra(self) -> Subspace:
        full = Subspace.full(self.dim)
        return self.bracket_subspaces(full, full)

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].dim == 0

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1].dim == 0

    def center(self) -> Subspace:
        rows: list[list[Fraction]] = []
        for i in range(self.dim):
            rows.extend(self.adjoint_of_basis(i))
        if not rows:
            return Subspace.full(self.dim)
        return Subspace.from_vectors(self.dim, nullspace(rows, ncols=self.dim))

    def killing_matrix(self) -> Mat:
        ads = [self.adjoint_of_basis(i) for i in range(self.dim)]
        return [[mat_trace(mat_mul(ads[i], ads[j])) for j in range(self.dim)] for i in range(self.dim)]

    def is_ideal(self, h: Subspace) -> bool:
        for i in range(self.dim):
            for b in h.basis:
                if not h.contains_vector(self.bracket(unit_vec(self.dim, i), b)):
                    return False
        return True

    def is_subalgebra(self, s: Subspace) -> bool:
        for a in s.basis:
            for b in s.basis:
                if not s.contains_vector(self.bracket(a, b)):
                    return False
        return True


def validate(
    dim: int,
    brackets: Brackets,
    labels: Sequence[str] | None = None,
) -> LieAlgebra:
    """Construct a LieAlgebra, raising JacobiViolation on the first bad triple."""
    return LieAlgebra.from_brackets(dim, brackets, labels=labels, check=True)


# --- weights of the adjoint representation ---


@dataclass(frozen=True)
class Weight:
    """A complex-valued linear functional on the algebra, as two value rows."""

    real: tuple
    imag: tuple
    exact: bool

    def value(self, x: Sequence) -> complex:
        xr = [float(c) for c in x]
        re = sum(float(a) * b for a, b in zip(self.real, xr))
        im = sum(float(a) * b for a, b in zip(self.imag, xr))
        return complex(re, im)

    def is_real(self) -> bool:
        if self.exact:
            return all(c == 0 for c in self.imag)
        return all(abs(float(c)) <= NUMERIC_IMAG_TOL for c in self.imag)


@dataclass(frozen=True)
class WeightList:
    """Diagonal weights of a triangularized adjoint representation.

    ``flag`` is the ascending chain of ad-invariant subspaces realizing the
    triangularization; it is only available when the computation stayed
    exact (all weights rational).
    """

    weights: tuple[Weight, ...]
    flag: tuple[Subspace, ...] | None
    exact: bool


class _ExactFlagFailed(Exception):
    pass


def _induced_ops(g: LieAlgebra, flag_space: Subspace) -> tuple[list[Mat], list[int]]:
    """Adjoint actions induced on the quotient by flag_space.

    Quotient coordinates are the standard positions outside the pivot set.
    """
    comp = flag_space.standard_complement_positions()
    ops = []
    for i in range(g.dim):
        cols = []
        for c in comp:
            w = flag_space.reduce_vector(g.bracket(unit_vec(g.dim, i), unit_vec(g.dim, c)))
            cols.append([w[p] for p in comp])
        ops.append([[cols[b][a] for b in range(len(comp))] for a in range(len(comp))])
    return ops, comp


def _rational_joint_eigenspaces(ops: list[Mat], n: int) -> list[tuple[Subspace, tuple[Fraction, ...]]]:
    """All joint eigenspaces of ops with fully rational weight tuples.

    Branches over rational eigenvalues of each operator, intersecting
    eigenspaces; complete for joint eigenvectors whose weights are rational.
    """
    branches: list[tuple[Subspace, tuple[Fraction, ...]]] = [(Subspace.full(n), ())]
    for a in ops:
        nxt = []
        eigs = rational_roots(charpoly(a))
        for space, wt in branches:
            for mu in eigs:
                shifted = [list(row) for row in a]
                for d in range(n):
                    shifted[d][d] -= mu
                eigenspace = Subspace.from_vectors(n, nullspace(shifted, ncols=n))
                inter = space.intersect(eigenspace)
                if inter.dim > 0:
                    nxt.append((inter, wt + (mu,)))
        branches = nxt
        if not branches:
            break
    return branches


def _exact_weight_flag(g: LieAlgebra) -> WeightList:
    """Full flag + weights by iterated rational common-eigenvector extraction."""
    flag: list[Subspace] = []
    weights: list[Weight] = []
    current = Subspace.zero(g.dim)
    while current.dim < g.dim:
        ops, comp = _induced_ops(g, current)
        m = len(comp)
        joint = _rational_joint_eigenspaces(ops, m)
        if not joint:
            raise _ExactFlagFailed
        # deterministic pick: smallest weight tuple, then first echelon line
        joint.sort(key=lambda sw: sw[1])
        space, wt = joint[0]
        w = space.basis[0]
        ambient = [ZERO] * g.dim
        for c, x in zip(comp, w):
            ambient[c] = x
        current = current.add(Subspace.from_vectors(g.dim, [ambient]))
        flag.append(current)
        weights.append(Weight(real=wt, imag=(ZERO,) * g.dim, exact=True))
    return WeightList(tuple(weights), tuple(flag), exact=True)


def _numeric_weight_flag(g: LieAlgebra) -> WeightList:
    """Floating flag over the complexification; used beyond the exact cutoff
    or when weights are irrational/complex."""
    n = g.dim
    ads = [np.array([[float(x) for x in row] for row in g.adjoint_of_basis(i)]) for i in range(n)]
    tol = 1e-8

    def null_basis(mat: np.ndarray) -> np.ndarray:
        # columns spanning the (numeric) kernel
        u, s, vh = np.linalg.svd(mat)
        nullity = sum(1 for x in s if x <= tol * max(1.0, s[0] if len(s) else 1.0))
        nullity += mat.shape[1] - len(s)
        return vh.conj().T[:, mat.shape[1] - nullity:] if nullity else np.zeros((mat.shape[1], 0))

    flag_vectors: list[np.ndarray] = []
    weights: list[Weight] = []
    basis_change = np.eye(n, dtype=complex)  # columns: flag vectors then complement
    while len(flag_vectors) < n:
        k = len(flag_vectors)
        # complement via QR of current flag
        if k:
            q, _ = np.linalg.qr(np.column_stack(flag_vectors))
            proj = np.eye(n) - q @ q.conj().T
            cb = np.linalg.svd(proj)[0][:, : n - k]
        else:
            cb = np.eye(n, dtype=complex)
        induced = []
        for a in ads:
            # action on quotient in complement coordinates
            act = cb.conj().T @ a @ cb
            induced.append(act)
        m = n - k
        branches = [(np.eye(m, dtype=complex), ())]
        for a in induced:
            nxt = []
            eigs = np.linalg.eigvals(a)
            # cluster eigenvalues
            uniq: list[complex] = []
            for e in sorted(eigs, key=lambda z: (round(z.real, 9), round(z.imag, 9))):
                if not any(abs(e - u) <= 1e-7 for u in uniq):
                    uniq.append(e)
            for space, wt in branches:
                for mu in uniq:
                    mat = (a - mu * np.eye(m)) @ space
                    nb = null_basis(mat)
                    if nb.shape[1]:
                        nxt.append((space @ nb, wt + (mu,)))
            branches = nxt
            if not branches:
                break
        if not branches:  # pragma: no cover - Lie's theorem guarantees a branch
            raise RuntimeError("no numeric joint eigenvector found for a solvable algebra")
        space, wt = branches[0]
        v = cb @ space[:, 0]
        v = v / np.linalg.norm(v)
        flag_vectors.append(v)
        re = tuple(float(x.real) for x in wt)
        im = tuple(float(x.imag) for x in wt)
        weights.append(Weight(real=re, imag=im, exact=False))
    del basis_change
    return WeightList(tuple(weights), None, exact=False)


def adjoint_weights(g: LieAlgebra) -> WeightList:
    """Weights and (when exact) the invariant flag of the adjoint representation."""
    if not g.is_solvable():
        raise NotSolvable("adjoint weights require a solvable algebra")
    if g.dim <= EXACT_WEIGHT_DIM_LIMIT:
        try:
            return _exact_weight_flag(g)
        except _ExactFlagFailed:
            pass
    return _numeric_weight_flag(g)


@dataclass(frozen=True)
class CompleteSolvability:
    value: bool
    exact: bool
    witness: Weight | None  # an offending (non-real) weight when value is False

    def __bool__(self) -> bool:
        return self.value


def is_completely_solvable(g: LieAlgebra) -> CompleteSolvability:
    """Solvable with all adjoint weights real.

    Decided exactly (Sturm real-root count of each basis adjoint's
    characteristic polynomial) up to the cutoff dimension: the eigenvalues of
    ad_x are the weight values at x, so realness of all weights is equivalent
    to realness of every basis adjoint's spectrum.
    """
    if not g.is_solvable():
        return CompleteSolvability(False, True, None)
    if g.dim <= EXACT_WEIGHT_DIM_LIMIT:
        for i in range(g.dim):
            if not all_roots_real(charpoly(g.adjoint_of_basis(i))):
                return CompleteSolvability(False, True, _offending_weight(g))
        return CompleteSolvability(True, True, None)
    wl = _numeric_weight_flag(g)
    for w in wl.weights:
        if not w.is_real():
            return CompleteSolvability(False, False, w)
    return CompleteSolvability(True, False, None)


def _offending_weight(g: LieAlgebra) -> Weight | None:
    wl = _numeric_weight_flag(g)
    for w in wl.weights:
        if not w.is_real():
            return w
    return None


def nilradical(g: LieAlgebra) -> Subspace:
    """Largest nilpotent ideal of a solvable algebra.

    Characterized as the set of ad-nilpotent elements.  For completely
    solvable algebras that set is exactly the kernel of the Killing form
    (the form is positive semidefinite there, being a sum of squares of the
    real weights), which keeps the computation rational.
    """
    if not g.is_solvable():
        raise NotSolvable("nilradical computation requires a solvable algebra")
    if is_completely_solvable(g).value:
        kern = nullspace(g.killing_matrix(), ncols=g.dim) if g.dim else []
        n = Subspace.from_vectors(g.dim, kern)
    else:
        n = _nilradical_from_weights(g)
    _assert_nilradical(g, n)
    return n


def _nilradical_from_weights(g: LieAlgebra) -> Subspace:
    wl = adjoint_weights(g)
    if wl.exact:
        rows = [list(w.real) for w in wl.weights] + [list(w.imag) for w in wl.weights]
        return Subspace.from_vectors(g.dim, nullspace(rows, ncols=g.dim))
    rows = np.array(
        [[float(x) for x in w.real] for w in wl.weights]
        + [[float(x) for x in w.imag] for w in wl.weights]
    )
    _, s, vh = np.linalg.svd(rows)
    r = sum(1 for x in s if x > 1e-8 * max(1.0, s[0]))
    approx = vh[r:, :]
    cand = []
    for row in approx:
        scale = max(abs(x) for x in row)
        cand.append([Fraction(x / scale).limit_denominator(10**6) for x in row])
    space = Subspace.from_vectors(g.dim, [[frac(x) for x in c] for c in cand])
    return space


def _assert_nilradical(g: LieAlgebra, n: Subspace) -> None:
    # exact safety net; a nilpotent ideal consists of ad-nilpotent elements,
    # so these checks certify the candidate elementwise
    if not g.is_ideal(n):
        raise NotSolvable("internal: nilradical candidate is not an ideal")
    if n.dim:
        sub, _ = subalgebra(g, n)
        if not sub.is_nilpotent():
            raise NotSolvable("internal: nilradical candidate is not nilpotent")
    if not n.contains(g.derived_subalgebra()):
        raise NotSolvable("internal: nilradical candidate misses the derived algebra")


def one_dim_ideals(g: LieAlgebra) -> list[Subspace]:
    """Rational lines L with [g, L] contained in L.

    Lines are extracted from the joint eigenspaces of the basis adjoints
    (one line per echelon basis vector) and returned sorted by pivot
    position and basis entries, so the order is deterministic.
    """
    ads = [g.adjoint_of_basis(i) for i in range(g.dim)]
    joint = _rational_joint_eigenspaces(ads, g.dim)
    lines: list[Subspace] = []
    seen = set()
    for space, _ in joint:
        for b in space.basis:
            line = Subspace.from_vectors(g.dim, [b])
            if line.basis not in seen:
                seen.add(line.basis)
                lines.append(line)
    lines.sort(key=lambda l: (l.pivots()[0], l.basis[0]))
    return lines


def quotient(g: LieAlgebra, h: Subspace) -> tuple[LieAlgebra, list[Vec], "QuotientMap"]:
    """Quotient algebra g/h for an ideal h.

    Returns the quotient, the representative vectors of its basis (the
    standard coordinates outside h's pivot set), and the projection map.
    """
    if not g.is_ideal(h):
        raise NotAnIdeal("quotient requires an ideal")
    comp = h.standard_complement_positions()
    reps = [unit_vec(g.dim, c) for c in comp]
    proj = QuotientMap(h, tuple(comp))
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(len(comp)):
        for b in range(a + 1, len(comp)):
            w = proj.project(g.bracket(reps[a], reps[b]))
            entry = {k: c for k, c in enumerate(w) if c != 0}
            if entry:
                brackets[(a, b)] = entry
    labels = [g.basis_labels[c] for c in comp]
    q = LieAlgebra.from_brackets(len(comp), brackets, labels=labels, check=True)
    return q, reps, proj


@dataclass(frozen=True)
class QuotientMap:
    kernel: Subspace
    complement_positions: tuple[int, ...]

    def project(self, v: Sequence[Fraction]) -> Vec:
        w = self.kernel.reduce_vector(v)
        return tuple(w[p] for p in self.complement_positions)


def subalgebra(g: LieAlgebra, s: Subspace) -> tuple[LieAlgebra, list[Vec]]:
    """Algebra structure induced on a bracket-closed subspace.

    Returns the subalgebra in s's echelon basis together with those basis
    vectors as ambient representatives.
    """
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(s.dim):
        for b in range(a + 1, s.dim):
            w = g.bracket(s.basis[a], s.basis[b])
            coords = s.coordinates_of(w)
            if coords is None:
                raise NotASubalgebra("subspace is not closed under the bracket")
            entry = {k: c for k, c in enumerate(coords) if c != 0}
            if entry:
                brackets[(a, b)] = entry
    labels = []
    for b in s.basis:
        nonzero = [(i, c) for i, c in enumerate(b) if c != 0]
        if len(nonzero) == 1 and nonzero[0][1] == 1:
            labels.append(g.basis_labels[nonzero[0][0]])
        else:
            labels.append(f"f{len(labels)+1}")
    sub = LieAlgebra.from_brackets(s.dim, brackets, labels=labels, check=True)
    return sub, list(s.basis)


def scale_structure_constants(g: LieAlgebra, t: Fraction) -> LieAlgebra:
    """Rescale every bracket by t (exact); used for homogeneity checks."""
    t = frac(t)
    table = {
        key: {k: t * c for k, c in comps.items()}
        for key, comps in g.bracket_table().items()
    }
    return LieAlgebra.from_brackets(g.dim, table, labels=g.basis_labels, check=True)
