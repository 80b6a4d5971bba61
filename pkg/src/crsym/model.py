"""Model hypersurfaces ``Im w = phi(z, zbar)`` and the monomial PQR form.

The PQR form is ``Im w = P Qbar + Q Pbar + R Rbar`` with
``P = cP z^alpha``, ``Q = cQ z^beta``, ``R = cR z^gamma`` in three variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .algebra import (
    GaussRational,
    HoloPoly,
    MixedPoly,
    as_gauss,
    det,
    kernel_basis,
)
from .algebra.poly import DimensionError
from .fields import VectorField, apply

__all__ = [
    "ModelSurface",
    "PQRSpec",
    "Violation",
    "ValidationError",
    "NondegeneracyCertificate",
    "validate",
    "build_from_pqr",
    "exponent_matrix_det",
    "jacobian_nondegenerate",
    "holomorphic_nondegeneracy",
    "pqr_from_phi",
]


class ValidationError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Violation:
    invariant: str
    detail: str

    def __str__(self):
        return f"{self.invariant}: {self.detail}"


def _mono(a, b) -> str:
    return MixedPoly._mono_str(MixedPoly.zero(len(a)), (a, b, 0)) or "1"


def validate(model: "ModelSurface") -> list[Violation]:
    """Every broken model invariant, each naming the offending term."""
    phi = model.phi
    out = []
    if phi.is_zero():
        return [Violation("nonzero", "phi is identically zero")]
    for (a, b, k), c in phi.sorted_items():
        if k:
            out.append(Violation("no-u", f"term {c}*{_mono(a, b)}*u^{k} depends on u"))
        elif sum(a) == 0 or sum(b) == 0:
            out.append(Violation("pluriharmonic", f"pluriharmonic term {_mono(a, b)}"))
    degs = {sum(a) + sum(b) for a, b, _ in phi}
    if len(degs) > 1:
        top = phi.degree()
        odd = [
            _mono(a, b) for (a, b, _), _c in phi.sorted_items() if sum(a) + sum(b) != top
        ]
        out.append(
            Violation(
                "homogeneous",
                f"degrees {sorted(degs)} differ; off-degree terms {', '.join(odd)}",
            )
        )
    for (a, b, k), c in phi.sorted_items():
        if phi.coeff((b, a, k)) != c.conjugate():
            out.append(Violation("real", f"term {_mono(a, b)} lacks a conjugate partner"))
    return out


@dataclass(frozen=True)
class ModelSurface:
    """Validated model ``Im w = phi``; ``d`` is read off ``phi``."""

    phi: MixedPoly
    pqr: "PQRSpec | None" = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        bad = validate(self)
        if bad:
            raise ValidationError(bad)

    @property
    def n(self) -> int:
        return self.phi.n

    @property
    def d(self) -> int:
        return self.phi.degree()

    @classmethod
    def from_terms(cls, n: int, terms, name: str = "") -> "ModelSurface":
        return cls(MixedPoly(n, terms), name=name)

    def describe(self) -> str:
        return f"Im w = {self.phi}"


def _exp(v, what: str) -> tuple[int, ...]:
    v = tuple(int(x) for x in v)
    if len(v) != 3 or min(v) < 0:
        raise ValueError(f"{what} must be 3 non-negative integers, got {v!r}")
    return v


@dataclass(frozen=True)
class PQRSpec:
    alpha: tuple
    beta: tuple
    gamma: tuple
    cP: GaussRational = GaussRational(1)
    cQ: GaussRational = GaussRational(1)
    cR: GaussRational = GaussRational(1)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _exp(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _exp(self.beta, "beta"))
        object.__setattr__(self, "gamma", _exp(self.gamma, "gamma"))
        for name in ("cP", "cQ", "cR"):
            object.__setattr__(self, name, as_gauss(getattr(self, name)))

    @property
    def d(self) -> int:
        return sum(self.alpha) + sum(self.beta)

    def violations(self) -> list[Violation]:
        out = []
        if sum(self.alpha) + sum(self.beta) != 2 * sum(self.gamma):
            out.append(
                Violation(
                    "homogeneous",
                    f"|alpha| + |beta| = {sum(self.alpha) + sum(self.beta)} but 2|gamma| = {2 * sum(self.gamma)}",
                )
            )
        for name in ("cP", "cQ", "cR"):
            if getattr(self, name).is_zero():
                out.append(Violation("nonzero-coefficient", f"{name} is zero"))
        if sum(self.alpha) == 0 or sum(self.beta) == 0:
            out.append(Violation("pluriharmonic", "alpha or beta is zero, P Qbar is pluriharmonic"))
        return out

    def P(self) -> HoloPoly:
        return HoloPoly.monomial(3, self.alpha, 0, self.cP)

    def Q(self) -> HoloPoly:
        return HoloPoly.monomial(3, self.beta, 0, self.cQ)

    def R(self) -> HoloPoly:
        return HoloPoly.monomial(3, self.gamma, 0, self.cR)

    def swapped(self) -> "PQRSpec":
        return PQRSpec(self.beta, self.alpha, self.gamma, self.cQ, self.cP, self.cR)

    def permuted(self, perm: Sequence[int]) -> "PQRSpec":
        """Rename variables: new ``z_{perm[j]}`` is old ``z_j``."""

        def move(e):
            out = [0, 0, 0]
            for j, x in enumerate(e):
                out[perm[j]] = x
            return tuple(out)

        return PQRSpec(move(self.alpha), move(self.beta), move(self.gamma), self.cP, self.cQ, self.cR)

    def canonical_key(self) -> tuple:
        """Exponent key invariant under variable permutations and P <-> Q."""
        keys = []
        for perm in permutations(range(3)):
            s = self.permuted(perm)
            keys.append((s.alpha, s.beta, s.gamma))
            keys.append((s.beta, s.alpha, s.gamma))
        return min(keys)

    def to_json(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "gamma": list(self.gamma),
            "cP": self.cP.encode(),
            "cQ": self.cQ.encode(),
            "cR": self.cR.encode(),
        }


def build_from_pqr(spec: PQRSpec, name: str = "") -> ModelSurface:
    bad = spec.violations()
    if bad:
        raise ValidationError(bad)
    z0 = spec.alpha, spec.beta, spec.gamma
    a, b, g = z0
    terms = [
        ((a, b, 0), spec.cP * spec.cQ.conjugate()),
        ((b, a, 0), spec.cQ * spec.cP.conjugate()),
        ((g, g, 0), spec.cR * spec.cR.conjugate()),
    ]
    return ModelSurface(MixedPoly(3, terms), pqr=spec, name=name)


def exponent_matrix_det(spec: PQRSpec) -> Fraction:
    """Determinant of the 3x3 matrix with columns alpha, beta, gamma."""
    (a1, a2, a3), (b1, b2, b3), (g1, g2, g3) = spec.alpha, spec.beta, spec.gamma
    return Fraction(
        a1 * (b2 * g3 - b3 * g2) - b1 * (a2 * g3 - a3 * g2) + g1 * (a2 * b3 - a3 * b2)
    )


@dataclass(frozen=True)
class NondegeneracyCertificate:
    verdict: bool
    determinant: HoloPoly | None = None
    witness: VectorField | None = None
    reason: str = ""


def _monomial_exponent(p: HoloPoly):
    if len(p) != 1:
        return None
    ((a, m),) = p.terms.keys()
    return None if m else a


def _diagonal_witness(exponents: Sequence[tuple], n: int) -> VectorField | None:
    """``sum v_j z_j d/dz_j`` with ``v . e = 0`` for every exponent ``e``."""
    ker = kernel_basis([list(e) for e in exponents], n)
    if not ker:
        return None
    v = ker[0]
    F = [HoloPoly.z(n, j).scale(v[j]) if v[j] else HoloPoly.zero(n) for j in range(n)]
    return VectorField(F, HoloPoly.zero(n))


def jacobian_nondegenerate(P: HoloPoly, Q: HoloPoly, R: HoloPoly) -> NondegeneracyCertificate:
    """Decide whether the Jacobian of ``(P, Q, R)`` vanishes identically.

    For monomial input a degenerate verdict carries a diagonal witness field
    annihilating all three; otherwise only the verdict is returned.
    """
    polys = (P, Q, R)
    if any(p.n != 3 for p in polys):
        raise DimensionError("the Jacobian test needs three polynomials in three variables")
    if any(p.uses_w() for p in polys):
        raise DimensionError("P, Q, R must not depend on w")
    jac = det([[p.partial(k) for k in range(3)] for p in polys])
    if jac:
        return NondegeneracyCertificate(True, determinant=jac)
    exps = [_monomial_exponent(p) for p in polys]
    if all(e is not None for e in exps):
        wit = _diagonal_witness(exps, 3)
        assert wit is not None and all(apply(wit, p).is_zero() for p in polys)
        return NondegeneracyCertificate(False, determinant=jac, witness=wit, reason="monomial")
    return NondegeneracyCertificate(False, determinant=jac, reason="no witness for non-monomial data")


def coefficient_functions(phi: MixedPoly) -> list[HoloPoly]:
    """The holomorphic polynomials ``phi_b`` with ``phi = sum_b phi_b(z) zbar^b``."""
    groups: dict = {}
    for (a, b, _k), c in phi.items():
        groups.setdefault(b, []).append(((a, 0), c))
    return [HoloPoly(phi.n, groups[b]) for b in sorted(groups, reverse=True)]


def holomorphic_nondegeneracy(model: ModelSurface) -> NondegeneracyCertificate:
    """Nondegeneracy of a general model.

    A holomorphic tangent field must annihilate every coefficient function
    ``phi_b``; none exists iff some ``n`` of them have a nonvanishing Jacobian.
    """
    if model.pqr is not None:
        s = model.pqr
        return jacobian_nondegenerate(s.P(), s.Q(), s.R())
    n = model.n
    funcs = coefficient_functions(model.phi)
    for subset in combinations(funcs, n):
        jac = det([[p.partial(k) for k in range(n)] for p in subset])
        if jac:
            return NondegeneracyCertificate(True, determinant=jac)
    exps = sorted({a for (a, _b, _k) in model.phi})
    wit = _diagonal_witness(exps, n)
    if wit is not None:
        return NondegeneracyCertificate(False, witness=wit, reason="diagonal")
    return NondegeneracyCertificate(False, reason="no witness found")


def pqr_from_phi(phi: MixedPoly) -> PQRSpec | None:
    """Recognize a three-variable monomial PQR model, unit-normalized.

    Returns a spec with ``cQ = cR = 1`` (up to the irrelevant phases) whose
    model equals ``phi``, or ``None``.
    """
    if phi.n != 3:
        return None
    diag = [(a, c) for (a, b, _k), c in phi.items() if a == b]
    off = [((a, b), c) for (a, b, _k), c in phi.items() if a != b]
    if len(diag) != 1 or len(off) != 2:
        return None
    (g, cg), = diag
    (a, b), c = max(off)
    if not cg.is_real() or cg.re <= 0:
        return None
    # |cR|^2 = cg must be a rational square to stay in Q(i) with cR real.
    num, den = cg.re.numerator, cg.re.denominator
    from math import isqrt

    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    if sum(g) * 2 != sum(a) + sum(b):
        return None
    spec = PQRSpec(a, b, g, c, GaussRational(1), GaussRational(Fraction(rn, rd)))
    if spec.violations():
        return None
    return spec
