"""End-to-end analysis, proof-trace checks, and corpus aggregation.

The analysis report records structural flags, the feasibility verdict with
certificates, and a consistency check against the structure theorem: on a
unimodular completely solvable algebra with integrable J, a Feasible verdict
on a non-abelian algebra is an inconsistency (numerical false positive or
bug) and drives a nonzero exit code.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import LieAlgebra, is_completely_solvable
from .errors import (
    FixtureError,
    NoOneDimIdeal,
    RelationViolation,
    TamecertError,
    TripleVerificationError,
)
from .feasibility import (
    Feasible,
    FeasibilityConfig,
    FeasibilityVerdict,
    Infeasible,
    Unknown,
    decide,
)
from .fixtures import Fixture, load_fixture, rational_str
from .forms import TwoForm, is_integrable
from .linalg import Subspace, Vec, ZERO, is_zero_vec, mat_inverse, mat_mul, mat_from_rows, vec_sub, vec_scale
from .reduction import TamedTriple, find_isotropic_ideal, omega_perp, reduction_tower

# exit codes: CI-friendly contract
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INCONSISTENT = 2
EXIT_UNKNOWN = 3

SCOPE_NOTE = (
    "Lie-algebra level analysis over invariant forms; "
    "lattices and solvmanifold topology are out of scope."
)


@dataclass(frozen=True)
class TheoremConsistency:
    applicable: bool
    consistent: bool
    detail: str


@dataclass(frozen=True)
class AnalysisReport:
    name: str
    flags: dict
    j_status: dict
    feasibility: FeasibilityVerdict | None
    theorem_consistency: TheoremConsistency
    reduction: dict | None

    @property
    def exit_code(self) -> int:
        if not self.theorem_consistency.consistent:
            return EXIT_INCONSISTENT
        if isinstance(self.feasibility, Unknown):
            return EXIT_UNKNOWN
        return EXIT_OK

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "flags": dict(self.flags),
            "j_status": dict(self.j_status),
            "feasibility": verdict_to_dict(self.feasibility),
            "theorem_consistency": {
                "applicable": self.theorem_consistency.applicable,
                "consistent": self.theorem_consistency.consistent,
                "detail": self.theorem_consistency.detail,
            },
            "reduction": self.reduction,
        }


def omega_to_entries(omega: TwoForm) -> list[dict]:
    return [{"i": i, "j": j, "v": rational_str(c)} for (i, j), c in omega.coeffs]


def verdict_to_dict(v: FeasibilityVerdict | None) -> dict | None:
    if v is None:
        return None
    if isinstance(v, Feasible):
        return {
            "verdict": "feasible",
            "lambda_min": v.lambda_min,
            "exact_pd": v.exact_pd,
            "omega": omega_to_entries(v.omega),
        }
    if isinstance(v, Infeasible):
        return {
            "verdict": "infeasible",
            "residual": v.residual,
            "rank_one_direction": (
                [rational_str(x) for x in v.rank_one_direction]
                if v.rank_one_direction is not None
                else None
            ),
            "dual": [[_cell(x) for x in row] for row in v.dual],
            "best_primal": v.best_primal,
        }
    if isinstance(v, Unknown):
        return {
            "verdict": "unknown",
            "best_lambda_min": v.best_lambda_min,
            "degenerate_logged": v.degenerate_logged,
        }
    raise TypeError(f"unexpected verdict {v!r}")


def _cell(x):
    if isinstance(x, Fraction):
        return rational_str(x)
    return float(x)


def analyze(fixture: Fixture, config: FeasibilityConfig | None = None) -> AnalysisReport:
    g = fixture.algebra
    config = config or FeasibilityConfig()

    solvable = g.is_solvable()
    nilpotent = g.is_nilpotent()
    cs = is_completely_solvable(g)
    unimodular, witness = g.is_unimodular()
    abelian = g.is_abelian()
    flags = {
        "solvable": solvable,
        "nilpotent": nilpotent,
        "completely_solvable": bool(cs),
        "completely_solvable_exact": cs.exact,
        "unimodular": unimodular,
        "unimodular_witness": g.basis_labels[witness] if witness is not None else None,
        "abelian": abelian,
    }

    j_present = fixture.J is not None
    j_status = {
        "present": j_present,
        "j_squared_ok": True if j_present else None,  # enforced by the fixture parser
        "integrable": None,
    }
    feas: FeasibilityVerdict | None = None
    integrable = False
    if j_present:
        integrable = is_integrable(g, fixture.J)
        j_status["integrable"] = integrable
        feas = decide(g, fixture.J, config)

    applicable = bool(unimodular and cs and j_present and integrable)
    feasible = isinstance(feas, Feasible)
    consistent = not (applicable and feasible and not abelian)
    if not j_present:
        detail = "no complex structure supplied; theorem sweep not applicable"
    elif not applicable:
        reasons = []
        if not unimodular:
            reasons.append(f"not unimodular (witness {flags['unimodular_witness']})")
        if not cs:
            reasons.append("not completely solvable")
        if not integrable:
            reasons.append("J not integrable")
        detail = "not applicable: " + "; ".join(reasons)
    elif not consistent:
        detail = "INCONSISTENT: Feasible taming form on a non-abelian unimodular completely solvable algebra"
    elif isinstance(feas, Unknown):
        detail = "applicable; verdict Unknown (budget exhausted)" + (
            "; near-zero supremum logged as degenerate boundary case"
            if feas.degenerate_logged
            else ""
        )
    else:
        detail = "applicable and consistent"

    reduction = None
    if fixture.omega is not None and j_present:
        reduction = _reduction_summary(g, fixture.omega, fixture.J)

    return AnalysisReport(
        name=fixture.name,
        flags=flags,
        j_status=j_status,
        feasibility=feas,
        theorem_consistency=TheoremConsistency(applicable, consistent, detail),
        reduction=reduction,
    )


def _reduction_summary(g: LieAlgebra, omega: TwoForm, J) -> dict:
    try:
        triple = TamedTriple.build(g, omega, J)
    except TripleVerificationError as exc:
        return {"verified": False, "failed_flags": list(exc.failed_flags)}
    try:
        tower = reduction_tower(triple)
    except TamecertError as exc:
        return {"verified": True, "error": str(exc)}
    unimodular_in, _ = g.is_unimodular()
    preserved = None
    if unimodular_in:
        preserved = all(step.reduced.algebra.is_unimodular()[0] for step in tower.steps)
    return {
        "verified": True,
        "steps": len(tower.steps),
        "terminal_dim": tower.terminal_dim,
        "all_steps_verified": all(step.reduced.verified for step in tower.steps),
        "unimodular_preserved": preserved,
    }


# --- proof trace: the bracket relations of the structure argument ---


@dataclass(frozen=True)
class ProofTraceRow:
    y: Vec
    a: Fraction
    b: Fraction
    z1: Vec
    residuals: dict


@dataclass(frozen=True)
class ProofTraceRecord:
    generator: Vec
    h_scalar: Fraction
    v_space: Subspace
    rows: tuple[ProofTraceRow, ...]
    trace_zero_checked: bool  # trace(ad_Y | v) = 0 asserted (unimodular input)
    reduced_unimodular: bool | None


def proof_trace(t: TamedTriple) -> ProofTraceRecord:
    """Check the bracket relations forced on a tamed completely solvable algebra.

    With X spanning a 1-dimensional isotropic ideal and v = the J-invariant
    complement h^perp intersect J(h^perp), every Y in v must satisfy, exactly:

        [X, Y]  = a X,   [X, JY] = b X,
        [JX, Y] = -2b X - a JX + Z1,   [JX, JY] = 2a X - b JX + J Z1,

    with a = Omega([X,Y], JX) / Omega(X, JX) and b likewise for JY, and Z1
    the v-component of [JX, Y].  A nonzero residual is a bug, not a verdict.
    """
    g = t.algebra
    if not t.verified:
        raise TripleVerificationError(["proof_trace requires a verified triple"])
    if not is_completely_solvable(g):
        raise NoOneDimIdeal("proof trace requires a completely solvable algebra")
    h = find_isotropic_ideal(t)
    x = h.basis[0]
    jx = t.J.apply(x)
    denom = t.omega(x, jx)

    bx = g.bracket(x, jx)
    h_coords = h.coordinates_of(bx)
    if h_coords is None:
        raise RelationViolation("[X, JX] in span(X)", x, bx)
    h_scalar = h_coords[0]

    perp, _ = omega_perp(t, h)
    jperp = Subspace.from_vectors(g.dim, [t.J.apply(b) for b in perp.basis])
    vspace = perp.intersect(jperp)

    if vspace.dim:
        basis_mat = mat_from_rows([list(col) for col in zip(x, jx, *vspace.basis)])
        inv = mat_inverse(basis_mat)

    def decompose(w: Vec) -> tuple[Fraction, Fraction, Vec]:
        """coefficients on X, JX and the v-component (ambient coords)."""
        coords = [sum(inv[r][c] * w[c] for c in range(g.dim)) for r in range(g.dim)]
        z = [ZERO] * g.dim
        for coeff, vb in zip(coords[2:], vspace.basis):
            z = [u + coeff * vv for u, vv in zip(z, vb)]
        return coords[0], coords[1], tuple(z)

    rows = []
    unimodular, _ = g.is_unimodular()
    trace_checked = False
    for y in vspace.basis:
        jy = t.J.apply(y)
        a = t.omega(g.bracket(x, y), jx) / denom
        b = t.omega(g.bracket(x, jy), jx) / denom
        r1 = vec_sub(g.bracket(x, y), vec_scale(a, x))
        r2 = vec_sub(g.bracket(x, jy), vec_scale(b, x))
        bxy = g.bracket(jx, y)
        p, q, z1 = decompose(bxy)
        expected3 = [(-2) * b * xi - a * ji + zi for xi, ji, zi in zip(x, jx, z1)]
        r3 = vec_sub(bxy, expected3)
        jz1 = t.J.apply(z1)
        expected4 = [2 * a * xi - b * ji + zi for xi, ji, zi in zip(x, jx, jz1)]
        r4 = vec_sub(g.bracket(jx, jy), expected4)
        residuals = {
            "[X,Y] = aX": r1,
            "[X,JY] = bX": r2,
            "[JX,Y] = -2bX - aJX + Z1": r3,
            "[JX,JY] = 2aX - bJX + JZ1": r4,
        }
        for relation, res in residuals.items():
            if not is_zero_vec(res):
                raise RelationViolation(relation, y, res)
        rows.append(ProofTraceRow(y=y, a=a, b=b, z1=z1, residuals=residuals))

    if unimodular and vspace.dim:
        for y in vspace.basis:
            ad = g.adjoint(y)
            conj = mat_mul(mat_mul(inv, ad), basis_mat)
            block_trace = sum((conj[i][i] for i in range(2, g.dim)), ZERO)
            if block_trace != 0:
                raise RelationViolation("trace(ad_Y | v) = 0", y, (block_trace,))
        trace_checked = True

    reduced_unimodular = None
    if unimodular:
        from .reduction import reduce as reduce_step

        step = reduce_step(t, h)
        reduced_unimodular = step.reduced.algebra.is_unimodular()[0]
        if not reduced_unimodular:
            raise RelationViolation("reduced algebra unimodular", x, ())

    return ProofTraceRecord(
        generator=x,
        h_scalar=h_scalar,
        v_space=vspace,
        rows=tuple(rows),
        trace_zero_checked=trace_checked,
        reduced_unimodular=reduced_unimodular,
    )


# --- corpus runs ---


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    path: str
    report: AnalysisReport | None
    error: str | None


@dataclass(frozen=True)
class CorpusResult:
    entries: tuple[CorpusEntry, ...]

    @property
    def exit_code(self) -> int:
        if any(e.report is not None and not e.report.theorem_consistency.consistent for e in self.entries):
            return EXIT_INCONSISTENT
        if any(e.error is not None for e in self.entries):
            return EXIT_INPUT_ERROR
        if any(isinstance(e.report.feasibility, Unknown) for e in self.entries if e.report):
            return EXIT_UNKNOWN
        return EXIT_OK

    def to_dict(self) -> dict:
        return {
            "scope": SCOPE_NOTE,
            "entries": [
                {
                    "name": e.name,
                    "path": e.path,
                    "error": e.error,
                    "report": e.report.to_dict() if e.report else None,
                }
                for e in self.entries
            ],
            "inconsistencies": sum(
                1
                for e in self.entries
                if e.report is not None and not e.report.theorem_consistency.consistent
            ),
            "exit_code": self.exit_code,
        }


def _analyze_path(path_and_config) -> CorpusEntry:
    path, config = path_and_config
    try:
        fx = load_fixture(path)
    except FixtureError as exc:
        return CorpusEntry(name=Path(path).stem, path=str(path), report=None, error=str(exc))
    try:
        report = analyze(fx, config)
    except TamecertError as exc:
        return CorpusEntry(name=fx.name, path=str(path), report=None, error=str(exc))
    return CorpusEntry(name=fx.name, path=str(path), report=report, error=None)


def corpus_run(
    directory: str | Path,
    config: FeasibilityConfig | None = None,
    jobs: int = 1,
) -> CorpusResult:
    """Analyze every *.json fixture in a directory; errors are collected, not fatal.

    Entries are ordered by fixture name regardless of completion order.
    """
    config = config or FeasibilityConfig()
    paths = sorted(Path(directory).glob("*.json"))
    tasks = [(str(p), config) for p in paths]
    if jobs > 1 and len(tasks) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_analyze_path, tasks))
    else:
        entries = [_analyze_path(t) for t in tasks]
    entries.sort(key=lambda e: e.name)
    return CorpusResult(tuple(entries))
