"""Structural predictors for monomial PQR models, checked against the solver.

Everything here works from the exponent data of ``P, Q, R`` alone (Cramer
systems on the exponent matrix, pattern matching of normal forms) and is
compared afterwards with the components computed by :mod:`crsym.grading`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .algebra import GaussRational, HoloPoly, rank, solve_unique
from .fields import VectorField, tangency_residual
from .grading import AlgebraReport, GradedComponent, rigid_split
from .model import ModelSurface, PQRSpec, exponent_matrix_det

__all__ = [
    "TheoremViolation",
    "RotationDecomposition",
    "NormalFormClass",
    "GcPrediction",
    "StructuralPrediction",
    "Discrepancy",
    "PERMUTATIONS",
    "split_rotation",
    "classify_normal_form",
    "predict_gc",
    "predict_g_minus",
    "g1_generator",
    "diagonal_rotation_flags",
    "rotation_parameter_counts",
    "predict",
    "crosscheck",
    "annotate",
    "is_nilpotent",
]

# identity, transpositions (12) (13) (23), then the two 3-cycles
PERMUTATIONS = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
OFFDIAG_SLOTS = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
FAMILY_PARAMETERS = {"Family1": 3, "Family2": 2, "Family3": 1, None: 0}


class TheoremViolation(AssertionError):
    """A structural statement failed on concrete input."""


def _matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), GaussRational(0)) for j in range(n)] for i in range(n)]


def is_nilpotent(matrix: Sequence[Sequence[GaussRational]]) -> bool:
    n = len(matrix)
    power = [list(r) for r in matrix]
    for _ in range(n - 1):
        power = _matmul(power, matrix)
    return all(x.is_zero() for row in power for x in row)


def _is_tangent(x: VectorField, model: ModelSurface) -> bool:
    return tangency_residual(x, model).is_zero()


@dataclass
class RotationDecomposition:
    diagonal: VectorField
    offdiag: VectorField
    split: tuple | None
    nilpotent: bool
    split_nilpotent: tuple = ()
    slots: tuple = ()

    @property
    def ok(self) -> bool:
        """Offdiagonal part is nilpotent or splits into two nilpotent rotations."""
        return self.nilpotent or self.split is not None

    def to_json(self) -> dict:
        return {
            "offdiag_slots": [f"a{j + 1}{k + 1}" for j, k in self.slots],
            "nilpotent": self.nilpotent,
            "split": None if self.split is None else [str(self.split[0]), str(self.split[1])],
            "ok": self.ok,
        }


def _restrict(matrix, slots) -> list[list[GaussRational]]:
    n = len(matrix)
    out = [[GaussRational(0)] * n for _ in range(n)]
    for j, k in slots:
        out[j][k] = matrix[j][k]
    return out


def split_rotation(x: VectorField, model: ModelSurface) -> RotationDecomposition:
    """Write a weight-0 field as diagonal plus offdiagonal rotation parts.

    ``x`` may carry a ``c w d/dw`` term, which stays with the diagonal part.
    The offdiagonal part, when not nilpotent, is split by searching subsets
    of its nonzero slots for two tangent nilpotent pieces.
    """
    n = x.n
    for f in x.F:
        for (a, m), _c in f.items():
            if m or sum(a) != 1:
                raise ValueError(f"not a linear field: {x}")
    for (a, m), _c in x.G.items():
        if m != 1 or sum(a):
            raise ValueError(f"d/dw coefficient must be a multiple of w: {x}")
    a = x.linear_matrix()
    diag = _restrict(a, [(j, j) for j in range(n)])
    slots = tuple((j, k) for j in range(n) for k in range(n) if j != k and not a[j][k].is_zero())
    d_part = VectorField.linear(diag)
    d_part = VectorField(d_part.F, x.G)
    n_part = VectorField.linear(_restrict(a, slots))
    if not _is_tangent(d_part, model):
        raise TheoremViolation(f"diagonal part of {x} is not tangent")
    if not _is_tangent(n_part, model):
        raise TheoremViolation(f"offdiagonal part of {x} is not tangent")
    nmat = _restrict(a, slots)
    if is_nilpotent(nmat):
        return RotationDecomposition(d_part, n_part, None, True, slots=slots)
    for mask in range(1, 2 ** len(slots) - 1):
        first = [s for i, s in enumerate(slots) if mask >> i & 1]
        second = [s for i, s in enumerate(slots) if not mask >> i & 1]
        m1, m2 = _restrict(a, first), _restrict(a, second)
        if not (is_nilpotent(m1) and is_nilpotent(m2)):
            continue
        n1, n2 = VectorField.linear(m1), VectorField.linear(m2)
        if _is_tangent(n1, model) and _is_tangent(n2, model):
            return RotationDecomposition(d_part, n_part, (n1, n2), False, (True, True), slots)
    return RotationDecomposition(d_part, n_part, None, False, slots=slots)


@dataclass(frozen=True)
class NormalFormClass:
    family: str | None
    permutation: tuple | None = None
    swapped: bool = False
    parameters: tuple = ()

    @property
    def offdiag_parameters(self) -> int:
        return FAMILY_PARAMETERS[self.family]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "permutation": None if self.permutation is None else list(self.permutation),
            "swapped": self.swapped,
            "parameters": list(self.parameters),
            "offdiag_parameters": self.offdiag_parameters,
        }


def _family1(a, b, g):
    k = a[1]
    if k >= 1 and a == (1, k, 0) and b == (0, k + 1, 0) and g == (0, k, 1):
        return (k,)
    return None


def _family2(a, b, g):
    k = a[2]
    if k >= 1 and a == (1, 0, k) and b == (0, 1, k) and g == (0, 0, k + 1):
        return (k,)
    return None


def _family3(a, b, g):
    _, a2, a3 = a
    if a[0] == 1 and b == (0, a2 + 1, a3) and g[0] == 0 and g[1] + g[2] == a2 + a3 + 1:
        return (a2, a3, g[1], g[2])
    return None


_FAMILIES = [("Family1", _family1), ("Family2", _family2), ("Family3", _family3)]


def classify_normal_form(spec: PQRSpec) -> NormalFormClass:
    """Match the exponent pattern against the three nilpotent normal forms.

    Families are tried in order 1, 2, 3 (each later family contains the
    earlier ones); within a family permutations follow ``PERMUTATIONS`` and
    the unswapped orientation comes first.
    """
    for family, match in _FAMILIES:
        for perm in PERMUTATIONS:
            s = spec.permuted(perm)
            for swapped, t in ((False, s), (True, s.swapped())):
                params = match(t.alpha, t.beta, t.gamma)
                if params is not None:
                    return NormalFormClass(family, perm, swapped, params)
    return NormalFormClass(None)


def _exp_field(n: int, pieces: Sequence[tuple]) -> VectorField:
    F = [HoloPoly.zero(n) for _ in range(n)]
    for k, expo, c in pieces:
        F[k] = F[k] + HoloPoly.monomial(n, expo, 0, c)
    return VectorField(F, HoloPoly.zero(n))


@dataclass
class GcPrediction:
    dimension: int
    generators: list = field(default_factory=list)
    reason: str = ""
    cases: dict = field(default_factory=dict)


def _cramer_column(rows, target: int):
    rhs = [Fraction(int(i == target)) for i in range(3)]
    return solve_unique(rows, rhs)


def _monomial_terms(u, shift, coeff):
    """Terms ``coeff * u_k * z^{shift + e_k}`` of ``f_k = z_k h_k``; ``None`` if not polynomial."""
    pieces = []
    for k in range(3):
        if u[k] == 0:
            continue
        expo = list(shift)
        expo[k] += 1
        if min(expo) < 0:
            return None
        pieces.append((k, tuple(expo), coeff * GaussRational(u[k])))
    return pieces


def predict_gc(spec: PQRSpec) -> GcPrediction:
    """Dimension and generators of rigid fields of weight in (0, 1).

    With ``deg P < deg Q`` a field either satisfies ``X(P) = a R``,
    ``X(R) = -conj(a) Q``, ``X(Q) = 0`` (two real parameters) or
    ``X(P) = i c Q``, ``X(R) = X(Q) = 0`` (one).  Writing ``f_k = z_k h_k``
    turns each into a Cramer system on the exponent matrix; a case counts only
    when its solution is polynomial.
    """
    if exponent_matrix_det(spec) == 0:
        return GcPrediction(0, reason="degenerate")
    if sum(spec.alpha) == sum(spec.beta):
        return GcPrediction(0, reason="equal-degrees")
    if sum(spec.alpha) > sum(spec.beta):
        spec = spec.swapped()
    al, be, ga = spec.alpha, spec.beta, spec.gamma
    rows = [list(al), list(ga), list(be)]
    u1 = _cramer_column(rows, 0)
    u2 = _cramer_column(rows, 1)
    gens = []
    cases = {}
    sh1 = tuple(x - y for x, y in zip(ga, al))
    sh2 = tuple(x - y for x, y in zip(be, ga))
    sh3 = tuple(x - y for x, y in zip(be, al))
    case1 = []
    for a in (GaussRational(1), GaussRational(0, 1)):
        A = a * spec.cR / spec.cP
        B = -a.conjugate() * spec.cQ / spec.cR
        p1 = _monomial_terms(u1, sh1, A)
        p2 = _monomial_terms(u2, sh2, B)
        if p1 is None or p2 is None:
            case1 = []
            break
        case1.append(_exp_field(3, p1 + p2))
    cases["XP=aR"] = len(case1)
    gens += case1
    A = GaussRational(0, 1) * spec.cQ / spec.cP
    p3 = _monomial_terms(u1, sh3, A)
    case2 = [] if p3 is None else [_exp_field(3, p3)]
    cases["XP=icQ"] = len(case2)
    gens += case2
    return GcPrediction(len(gens), gens, "cramer", cases)


def predict_g_minus(spec: PQRSpec) -> int:
    """Real dimension of ``g_{-1/d}`` predicted from the exponent pattern."""
    if spec.d == 2:
        # Hermitian form: every constant direction lifts
        return 6 if exponent_matrix_det(spec) != 0 else 0
    exps = (spec.alpha, spec.beta, spec.gamma)
    for idx in (0, 1):
        e = exps[idx]
        if sum(e) != 1:
            continue
        k = e.index(1)
        others = [exps[j] for j in range(3) if j != idx]
        if all(o[k] == 0 for o in others):
            return 2
    return 0


def g1_generator(spec: PQRSpec, model: ModelSurface | None = None) -> VectorField:
    """``Y = sum l_j z_j w d/dz_j + 1/2 w^2 d/dw`` with ``l.alpha = l.beta = l.gamma = 1/2``."""
    half = Fraction(1, 2)
    lam = solve_unique([list(spec.alpha), list(spec.beta), list(spec.gamma)], [half] * 3)
    if lam is None:
        raise TheoremViolation("exponent system is singular; model is degenerate")
    n = 3
    F = [HoloPoly.monomial(n, tuple(int(j == k) for j in range(n)), 1, GaussRational(lam[k])) for k in range(n)]
    F = [f if lam[k] else HoloPoly.zero(n) for k, f in enumerate(F)]
    y = VectorField(F, HoloPoly.monomial(n, (0,) * n, 2, GaussRational(half)))
    if model is not None and not tangency_residual(y, model).is_zero():
        raise TheoremViolation(f"weight-one generator {y} is not tangent")
    return y


def _linear_coords(x: VectorField) -> list[Fraction]:
    out = []
    for row in x.linear_matrix():
        for c in row:
            out += [c.re, c.im]
    return out


def _intersection_dim(span: Sequence[Sequence], sub: Sequence[Sequence]) -> int:
    if not span:
        return 0
    width = len(sub[0])
    return rank(span, width) + rank(sub, width) - rank(list(span) + list(sub), width)


def _diag_subspaces(n: int):
    real, imag = [], []
    for j in range(n):
        v = [Fraction(0)] * (2 * n * n)
        v[2 * (j * n + j)] = Fraction(1)
        real.append(v)
        w = [Fraction(0)] * (2 * n * n)
        w[2 * (j * n + j) + 1] = Fraction(1)
        imag.append(w)
    return real, imag


def rotation_parameter_counts(rotations: Sequence[VectorField], n: int) -> dict:
    """Real dimensions of the real-diagonal, imaginary-diagonal and offdiagonal rotation spaces."""
    span = [_linear_coords(x) for x in rotations]
    real, imag = _diag_subspaces(n)
    offdiag = []
    for v in span:
        w = list(v)
        for j in range(n):
            w[2 * (j * n + j)] = w[2 * (j * n + j) + 1] = Fraction(0)
        offdiag.append(w)
    return {
        "real_diagonal": _intersection_dim(span, real),
        "imaginary_diagonal": _intersection_dim(span, imag),
        "offdiagonal": rank(offdiag, 2 * n * n) if offdiag else 0,
    }


def diagonal_rotation_flags(g0: GradedComponent) -> tuple[bool, bool]:
    """(has real diagonal rotation, has imaginary diagonal rotation).

    Rotations are the rigid fields of ``g_0``; only their ``z``-linear parts
    matter.
    """
    counts = rotation_parameter_counts(rigid_split(g0)[0], g0.n)
    return counts["real_diagonal"] > 0, counts["imaginary_diagonal"] > 0


@dataclass
class StructuralPrediction:
    applicable: bool
    reason: str = ""
    g_minus: int | None = None
    gc: GcPrediction | None = None
    g1: int | None = None
    g1_field: VectorField | None = None
    normal_form: NormalFormClass | None = None
    has_real_diagonal: bool | None = None
    has_imaginary_diagonal: bool | None = None


def predict(model: ModelSurface, report: AlgebraReport | None = None) -> StructuralPrediction:
    """Predictions from the exponents; diagonal flags need the solved ``g_0``."""
    flags = (None, None)
    if report is not None:
        flags = diagonal_rotation_flags(report.component(0))
    spec = model.pqr
    if spec is None:
        return StructuralPrediction(False, "not a monomial PQR model", has_real_diagonal=flags[0], has_imaginary_diagonal=flags[1])
    if exponent_matrix_det(spec) == 0:
        return StructuralPrediction(False, "degenerate", has_real_diagonal=flags[0], has_imaginary_diagonal=flags[1])
    return StructuralPrediction(
        True,
        "monomial PQR",
        g_minus=predict_g_minus(spec),
        gc=predict_gc(spec),
        g1=1,
        g1_field=g1_generator(spec, model),
        normal_form=classify_normal_form(spec),
        has_real_diagonal=flags[0],
        has_imaginary_diagonal=flags[1],
    )


@dataclass(frozen=True)
class Discrepancy:
    check: str
    expected: object
    observed: object
    detail: str = ""

    def to_json(self) -> dict:
        return {"check": self.check, "expected": _jsonable(self.expected), "observed": _jsonable(self.observed), "detail": self.detail}


def _jsonable(x):
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def crosscheck(report: AlgebraReport, pred: StructuralPrediction, decompositions: list | None = None) -> list[Discrepancy]:
    """Compare solver output with the structural predictions and implications."""
    out: list[Discrepancy] = []
    d = report.d
    gc = report.gc_dimension()
    g1 = report.dim(1)
    gminus = report.dim(Fraction(-1, d))
    gdual = report.dim(1 - Fraction(1, d))
    for msg in report.closure_failures:
        out.append(Discrepancy("bracket_closure", "closed", "open", msg))
    if pred.has_imaginary_diagonal is False and g1 != 0:
        out.append(Discrepancy("no_imaginary_diagonal_implies_g1_zero", 0, g1))
    if g1 != 0 and pred.has_real_diagonal is False and gc != 0:
        out.append(Discrepancy("g1_and_no_real_diagonal_implies_gc_zero", 0, gc))
    if not pred.applicable:
        return out
    if not 0 <= gc <= 3:
        out.append(Discrepancy("gc_bound", "0..3", gc))
    if pred.gc.dimension != gc:
        out.append(Discrepancy("gc_dimension", pred.gc.dimension, gc, "predicted vs solver rigid dimension over 0 < mu < 1"))
    else:
        for x in pred.gc.generators:
            if not _in_components(report, x):
                out.append(Discrepancy("gc_generator", "in solver span", "missing", str(x)))
    if pred.g_minus != gminus:
        out.append(Discrepancy("g_minus_dimension", pred.g_minus, gminus))
    if g1 != 1:
        out.append(Discrepancy("g1_dimension", 1, g1))
    if pred.g1_field is not None and not report.component(1).contains(pred.g1_field):
        out.append(Discrepancy("g1_generator", "in solver span", "missing", str(pred.g1_field)))
    if (gminus > 0) != (gdual > 0):
        out.append(Discrepancy("duality", gminus > 0, gdual > 0, f"dim g_-1/d = {gminus}, dim g_1-1/d = {gdual}"))
    rotations = report.rotations()
    if decompositions is None:
        decompositions = _decompose_all(rotations, report.model)
    for x, dec in zip(rotations, decompositions):
        if isinstance(dec, Exception):
            out.append(Discrepancy("rotation_decomposition", "tangent parts", "violation", str(dec)))
            continue
        if not dec.ok:
            out.append(Discrepancy("rotation_decomposition", "nilpotent or 2-split", "neither", str(x)))
    counts = rotation_parameter_counts(rotations, report.model.n)
    expected_off = pred.normal_form.offdiag_parameters
    if d > 2:
        if counts["offdiagonal"] != expected_off:
            out.append(Discrepancy("offdiag_parameters", expected_off, counts["offdiagonal"], str(pred.normal_form.family)))
        if (counts["real_diagonal"], counts["imaginary_diagonal"]) != (1, 2):
            out.append(Discrepancy("diagonal_parameters", (1, 2), (counts["real_diagonal"], counts["imaginary_diagonal"])))
    return out


def _decompose_all(rotations: list, model: ModelSurface) -> list:
    out = []
    for x in rotations:
        try:
            out.append(split_rotation(x, model))
        except (TheoremViolation, ValueError) as exc:
            out.append(exc)
    return out


def _in_components(report: AlgebraReport, x: VectorField) -> bool:
    from .fields import weight_of

    mu = weight_of(x, report.d)
    if mu is None:
        return False
    try:
        return report.component(mu).contains(x)
    except KeyError:
        return False


def annotate(report: AlgebraReport) -> StructuralPrediction:
    """Fill ``report.structure`` with predictions, decompositions and discrepancies."""
    pred = predict(report.model, report)
    rotations = report.rotations()
    found = _decompose_all(rotations, report.model)
    decs = [{"error": str(x)} if isinstance(x, Exception) else x.to_json() for x in found]
    disc = crosscheck(report, pred, found)
    counts = rotation_parameter_counts(rotations, report.model.n)
    report.structure = {
        "applicable": pred.applicable,
        "reason": pred.reason,
        "normal_form": pred.normal_form.to_json() if pred.normal_form else None,
        "gc_predicted": None if pred.gc is None else {
            "dim": pred.gc.dimension,
            "reason": pred.gc.reason,
            "cases": pred.gc.cases,
            "generators": [str(x) for x in pred.gc.generators],
        },
        "g_minus_predicted": pred.g_minus,
        "g1_generator": None if pred.g1_field is None else str(pred.g1_field),
        "duality": {
            "g_minus": report.dim(Fraction(-1, report.d)),
            "g_dual": report.dim(1 - Fraction(1, report.d)),
            "holds": (report.dim(Fraction(-1, report.d)) > 0) == (report.dim(1 - Fraction(1, report.d)) > 0),
        },
        "rotation_decomposition": decs,
        "rotation_parameters": counts,
        "flags": {"real_diagonal": pred.has_real_diagonal, "imaginary_diagonal": pred.has_imaginary_diagonal},
        "discrepancies": [x.to_json() for x in disc],
    }
    return pred
