"""Holomorphic vector fields, weights, tangency residuals and brackets.

A field ``X = sum_j F_j d/dz_j + G d/dw`` is stored as the tuple ``F`` of
:class:`HoloPoly` coefficients plus ``G``.  Weights follow the usual model
convention: ``z_j`` has weight ``1/d``, ``w`` has weight ``1``.

Tangency to ``Im w = phi(z, zbar)`` is tested through the residual

    T = Im G(z, u + i phi) - 2 Re sum_j F_j(z, u + i phi) d phi / d z_j,

which vanishes identically exactly when ``Re X`` is tangent (apply ``X`` to
``v - phi`` and restrict to the hypersurface).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import ONE, GaussRational, HoloPoly, MixedPoly, as_gauss
from .algebra.poly import DimensionError

__all__ = [
    "VectorField",
    "weight_of",
    "apply",
    "tangency_residual",
    "lie_bracket",
    "grading_element",
    "w_powers",
    "UndefinedWeight",
]


class UndefinedWeight(ValueError):
    """The zero field has no weight."""


class VectorField:
    __slots__ = ("F", "G")

    def __init__(self, F: Sequence[HoloPoly], G: HoloPoly):
        F = tuple(F)
        n = G.n
        if len(F) != n or any(f.n != n for f in F):
            raise DimensionError(f"field needs {n} z-coefficients in {n} variables")
        self.F = F
        self.G = G

    @property
    def n(self) -> int:
        return self.G.n

    @classmethod
    def zero(cls, n: int) -> "VectorField":
        return cls([HoloPoly.zero(n)] * n, HoloPoly.zero(n))

    @classmethod
    def d_dw(cls, n: int) -> "VectorField":
        return cls([HoloPoly.zero(n)] * n, HoloPoly.constant(n, 1))

    @classmethod
    def d_dz(cls, n: int, j: int, coeff: HoloPoly | None = None) -> "VectorField":
        F = [HoloPoly.zero(n)] * n
        F[j] = HoloPoly.constant(n, 1) if coeff is None else coeff
        return cls(F, HoloPoly.zero(n))

    @classmethod
    def linear(cls, matrix: Sequence[Sequence]) -> "VectorField":
        """``sum_{j,k} a_jk z_k d/dz_j`` from the matrix ``a``."""
        n = len(matrix)
        F = []
        for j in range(n):
            f = HoloPoly.zero(n)
            for k in range(n):
                c = as_gauss(matrix[j][k])
                if not c.is_zero():
                    f = f + HoloPoly.z(n, k).scale(c)
            F.append(f)
        return cls(F, HoloPoly.zero(n))

    def components(self) -> tuple[HoloPoly, ...]:
        return self.F + (self.G,)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components())

    def is_rigid(self) -> bool:
        return not any(p.uses_w() for p in self.components())

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.components() == other.components()

    def __hash__(self):
        return hash(self.components())

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField([a + b for a, b in zip(self.F, other.F)], self.G + other.G)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField([a - b for a, b in zip(self.F, other.F)], self.G - other.G)

    def __neg__(self) -> "VectorField":
        return VectorField([-a for a in self.F], -self.G)

    def scale(self, c) -> "VectorField":
        return VectorField([a.scale(c) for a in self.F], self.G.scale(c))

    def __rmul__(self, c):
        return self.scale(c)

    def linear_matrix(self) -> list[list[GaussRational]]:
        """Matrix ``a_jk`` of the ``z``-linear, ``w``-free part of ``F``."""
        n = self.n
        out = [[GaussRational(0)] * n for _ in range(n)]
        for j, f in enumerate(self.F):
            for (a, m), c in f.items():
                if m == 0 and sum(a) == 1:
                    out[j][a.index(1)] = c
        return out

    def __repr__(self):
        return f"VectorField({self})"

    def __str__(self):
        parts = []
        for j, f in enumerate(self.F):
            if f:
                parts.append(f"({f})*d/dz{j + 1}")
        if self.G:
            parts.append(f"({self.G})*d/dw")
        return " + ".join(parts) if parts else "0"


def weight_of(x: VectorField, d: int) -> Fraction | None:
    """Weight of a weighted-homogeneous field, ``None`` when inhomogeneous."""
    if x.is_zero():
        raise UndefinedWeight("the zero field has no weight")
    seen = set()
    for f in x.F:
        # F_j of weighted degree mu + 1/d
        seen |= {Fraction(s - 1, d) for s in f.weighted_degrees(d)}
    seen |= {Fraction(s, d) - 1 for s in x.G.weighted_degrees(d)}
    if len(seen) != 1:
        return None
    return seen.pop()


def apply(x: VectorField, p: HoloPoly) -> HoloPoly:
    """Derivation ``X(p) = sum F_j dp/dz_j + G dp/dw``."""
    if p.n != x.n:
        raise DimensionError("field and polynomial live in different spaces")
    out = HoloPoly.zero(p.n)
    for j, f in enumerate(x.components()):
        if f:
            dp = p.partial(j)
            if dp:
                out = out + f * dp
    return out


def lie_bracket(x: VectorField, y: VectorField) -> VectorField:
    if x.n != y.n:
        raise DimensionError("fields live in different spaces")
    comps = [apply(x, b) - apply(y, a) for a, b in zip(x.components(), y.components())]
    return VectorField(comps[:-1], comps[-1])


def grading_element(n: int, d: int) -> VectorField:
    """``E = sum (1/d) z_j d/dz_j + w d/dw``."""
    if n < 1 or d < 1:
        raise ValueError("grading element needs n, d >= 1")
    inv = GaussRational(Fraction(1, d))
    return VectorField([HoloPoly.z(n, j).scale(inv) for j in range(n)], HoloPoly.w(n))


def w_powers(phi: MixedPoly, top: int) -> list[MixedPoly]:
    """``(u + i phi)^m`` for ``m = 0..top``."""
    n = phi.n
    base = MixedPoly.u(n) + phi.scale(GaussRational(0, 1))
    out = [MixedPoly.constant(n, ONE)]
    for _ in range(top):
        out.append(out[-1] * base)
    return out


def _max_w(x: VectorField) -> int:
    return max((m for p in x.components() for (_, m) in p), default=0)


def tangency_residual(x: VectorField, model) -> MixedPoly:
    """Residual ``T(z, zbar, u)``; ``X`` is tangent iff it is identically 0.

    ``model`` is a :class:`~crsym.model.ModelSurface` or a bare ``phi``.
    """
    phi = model if isinstance(model, MixedPoly) else model.phi
    if phi.n != x.n:
        raise DimensionError("field and model live in different spaces")
    pw = w_powers(phi, _max_w(x))
    g = x.G.evaluate_w(pw)
    s = MixedPoly.zero(phi.n)
    for j, f in enumerate(x.F):
        if f:
            s = s + f.evaluate_w(pw) * phi.partial_z(j)
    return g.imag_part() - s.real_part().scale(2)
