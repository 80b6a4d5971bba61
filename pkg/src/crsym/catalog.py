"""Built-in models and fields used by the examples command and the tests."""

from __future__ import annotations

from typing import Callable

from .algebra import GaussRational, HoloPoly, MixedPoly
from .fields import VectorField
from .model import ModelSurface, PQRSpec, build_from_pqr

__all__ = [
    "CATALOG",
    "FIELDS",
    "get",
    "imag_diagonal_model",
    "imag_diagonal_rotation",
    "nilpotent_model",
    "split_nilpotent_model",
    "gc3_model",
    "gc3_printed_generators",
    "odd_family_model",
    "lilia_model",
]


def imag_diagonal_model() -> ModelSurface:
    """A five-term model in three variables with an imaginary diagonal rotation."""
    one = GaussRational(1)
    terms = [
        (((2, 1, 3), (2, 0, 0), 0), one),
        (((1, 4, 1), (2, 0, 0), 0), one),
        (((2, 0, 0), (2, 1, 3), 0), one),
        (((2, 0, 0), (1, 4, 1), 0), one),
        (((2, 2, 0), (2, 2, 0), 0), one),
    ]
    return ModelSurface(MixedPoly(3, terms), name="imag-diag")


def imag_diagonal_rotation() -> VectorField:
    """``i (11 z1 d1 + 3 z2 d2 - z3 d3)``, tangent to :func:`imag_diagonal_model`."""
    return VectorField.linear([[GaussRational(0, 11), 0, 0], [0, GaussRational(0, 3), 0], [0, 0, GaussRational(0, -1)]])


def nilpotent_model() -> ModelSurface:
    """``z1 z3 zb3^2 + z3^2 zb1 zb3 + z2 z3 zb2 zb3``: the rotations have a 3-parameter nilpotent part."""
    return build_from_pqr(PQRSpec((1, 0, 1), (0, 0, 2), (0, 1, 1)), name="nilpotent")


def split_nilpotent_model() -> ModelSurface:
    """``i z1 z2 zb1 zb3 - i z1 z3 zb1 zb2 + z1^2 zb1^2``: nilpotent part splits in two."""
    return build_from_pqr(PQRSpec((1, 1, 0), (1, 0, 1), (2, 0, 0), cP=GaussRational(0, 1)), name="split-nilpotent")


def gc3_model() -> ModelSurface:
    """A degree-10 model whose rigid positive-weight part is three-dimensional."""
    return build_from_pqr(PQRSpec((1, 1, 2), (2, 1, 3), (1, 1, 3)), name="gc3")


def gc3_printed_generators() -> list[VectorField]:
    """Real generators of the rigid positive-weight fields of :func:`gc3_model`.

    With ``a`` complex the first family is ``f1 = -b z1^2``,
    ``f2 = 3a z2 z3 - b z1 z2``, ``f3 = -a z3^2 + b z1 z3`` where
    ``b = -conj(a)``; taking ``a = 1`` and ``a = i`` gives two real
    generators.  The second family is ``(0, 3ic z1 z2 z3, -ic z1 z3^2)``.
    """
    z1, z2, z3 = (HoloPoly.z(3, j) for j in range(3))
    out = []
    for a in (GaussRational(1), GaussRational(0, 1)):
        b = -a.conjugate()
        f1 = (z1 * z1).scale(-b)
        f2 = (z2 * z3).scale(3 * a) - (z1 * z2).scale(b)
        f3 = (z3 * z3).scale(-a) + (z1 * z3).scale(b)
        out.append(VectorField([f1, f2, f3], HoloPoly.zero(3)))
    ic = GaussRational(0, 1)
    out.append(VectorField([HoloPoly.zero(3), (z1 * z2 * z3).scale(3 * ic), (z1 * z3 * z3).scale(-ic)], HoloPoly.zero(3)))
    return out


def odd_family_model(l: int = 3) -> ModelSurface:
    """``P = z1``, ``Q = z2^l``, ``R = z2^((l-1)/2) z3``; ``l`` must be odd and at least 3."""
    if l < 3 or l % 2 == 0:
        raise ValueError(f"l must be odd and >= 3 so that (l-1)/2 is a positive integer, got {l}")
    h = (l - 1) // 2
    return build_from_pqr(PQRSpec((1, 0, 0), (0, l, 0), (0, h, 1)), name=f"dim13-l{l}")


def lilia_model(k: int = 1) -> ModelSurface:
    """``P = z1 z2^k``, ``Q = z2^(k+1)``, ``R = z2^k z3``."""
    if k < 1:
        raise ValueError("k must be positive")
    return build_from_pqr(PQRSpec((1, k, 0), (0, k + 1, 0), (0, k, 1)), name=f"dim9-k{k}")


CATALOG: dict[str, Callable[[], ModelSurface]] = {
    "imag-diag": imag_diagonal_model,
    "nilpotent": nilpotent_model,
    "split-nilpotent": split_nilpotent_model,
    "gc3": gc3_model,
    "dim13-l3": odd_family_model,
    "dim9-k1": lilia_model,
}


FIELDS: dict[str, Callable[[], VectorField]] = {
    "imag-diag-rotation": imag_diagonal_rotation,
}


def get(name: str) -> ModelSurface:
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(CATALOG)}") from None
