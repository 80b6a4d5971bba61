"""Graded components of the infinitesimal automorphism algebra of a model.

For each candidate weight ``mu = j/d - 1`` the general weighted-homogeneous
field is written as a combination of monomial fields with complex
coefficients.  The tangency residual is real-linear in the real and
imaginary parts of those coefficients; collecting the coefficient of every
``z^a zbar^b u^k`` gives a rational linear system whose kernel is ``g_mu``.

Only one representative of each conjugate pair of monomials is constrained
(the residual is real, so its partner carries the conjugate equation).
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .algebra import GaussRational, HoloPoly, MixedPoly, kernel_basis, monomials_of_degree, rank
from .algebra.linalg import _int_row, _rref_int, sparse_kernel_basis
from .fields import VectorField, lie_bracket, tangency_residual, w_powers, weight_of
from .model import ModelSurface, NondegeneracyCertificate, holomorphic_nondegeneracy

log = logging.getLogger(__name__)

__all__ = [
    "GradedComponent",
    "AlgebraReport",
    "DegenerateModel",
    "candidate_weights",
    "ansatz_basis",
    "ansatz_keys",
    "solve_component",
    "full_algebra",
    "rigid_split",
    "field_coordinates",
    "weight_label",
]


class DegenerateModel(ValueError):
    """Holomorphically degenerate models have an infinite-dimensional algebra."""

    def __init__(self, certificate: NondegeneracyCertificate):
        self.certificate = certificate
        super().__init__("model is holomorphically degenerate; the symmetry algebra is infinite-dimensional")


def candidate_weights(d: int, extended: bool = False) -> list[Fraction]:
    """``j/d - 1`` for ``j = 0..2d`` (``..3d`` when ``extended``)."""
    if d < 1:
        raise ValueError("d must be positive")
    top = 3 * d if extended else 2 * d
    return [Fraction(j, d) - 1 for j in range(top + 1)]


def weight_label(mu: Fraction) -> str:
    return str(Fraction(mu))


def _weight_index(mu: Fraction, d: int) -> int:
    j = (Fraction(mu) + 1) * d
    if j.denominator != 1 or j < 0:
        raise ValueError(f"weight {mu} is not of the form j/{d} - 1")
    return int(j)


def ansatz_keys(mu: Fraction, n: int, d: int) -> list[tuple[int, tuple, int]]:
    """Monomial slots ``(slot, a, m)`` for weight ``mu``.

    ``slot < n`` means ``z^a w^m d/dz_{slot+1}`` (with ``|a| + m d = mu d + 1``);
    ``slot == n`` means ``z^a w^m d/dw`` (with ``|a| + m d = mu d + d``).
    """
    j = _weight_index(mu, d)
    keys = []
    for slot in range(n + 1):
        target = j - d + 1 if slot < n else j
        m = 0
        while m * d <= target:
            for a in monomials_of_degree(n, target - m * d):
                keys.append((slot, a, m))
            m += 1
    return keys


def _key_field(key, n: int, c=1) -> VectorField:
    slot, a, m = key
    F = [HoloPoly.zero(n)] * n
    G = HoloPoly.zero(n)
    mono = HoloPoly.monomial(n, a, m, c)
    if slot < n:
        F = list(F)
        F[slot] = mono
    else:
        G = mono
    return VectorField(F, G)


def ansatz_basis(mu: Fraction, n: int, d: int) -> list[VectorField]:
    """Monomial fields spanning all fields of weight ``mu`` (complex span)."""
    return [_key_field(k, n) for k in ansatz_keys(mu, n, d)]


def field_coordinates(x: VectorField, keys: Sequence) -> tuple[Fraction, ...] | None:
    """Real coordinates of ``x`` against ``keys`` (re, im per key), ``None`` if outside."""
    index = {k: i for i, k in enumerate(keys)}
    out = [Fraction(0)] * (2 * len(keys))
    n = x.n
    for slot, p in enumerate(x.components()):
        for (a, m), c in p.items():
            i = index.get((slot, a, m))
            if i is None:
                return None
            out[2 * i] = c.re
            out[2 * i + 1] = c.im
    return tuple(out)


def _vector_field(v: Sequence, keys: Sequence, n: int) -> VectorField:
    comps = [dict() for _ in range(n + 1)]
    for i, (slot, a, m) in enumerate(keys):
        re, im = v[2 * i], v[2 * i + 1]
        if re or im:
            comps[slot][(a, m)] = GaussRational(re, im)
    polys = [HoloPoly(n, c) for c in comps]
    return VectorField(polys[:n], polys[n])


class _ResidualTable:
    """Per-model cache of the residual pieces of monomial fields.

    For a monomial field ``c z^a w^m d/dz_j`` the residual is
    ``2 Re(c K)`` with ``K = -z^a (u + i phi)^m phi_{z_j}``; for
    ``c z^a w^m d/dw`` it is ``K = -(i/2) z^a (u + i phi)^m``.  Pieces are
    stored without the ``z^a`` shift as integer triples ``(re, im, den)``.
    """

    def __init__(self, phi: MixedPoly):
        self.phi = phi
        self.n = phi.n
        self._pw = [MixedPoly.constant(self.n, 1)]
        self._pieces: dict = {}

    def _power(self, m: int) -> MixedPoly:
        while len(self._pw) <= m:
            self._pw = w_powers(self.phi, len(self._pw))
        return self._pw[m]

    def piece(self, slot: int, m: int) -> list:
        hit = self._pieces.get((slot, m))
        if hit is None:
            pw = self._power(m)
            if slot < self.n:
                k = (pw * self.phi.partial_z(slot)).scale(-1)
            else:
                k = pw.scale(GaussRational(0, Fraction(-1, 2)))
            hit = [(key, c.parts) for key, c in k.items()]
            self._pieces[(slot, m)] = hit
        return hit


def _columns(table: _ResidualTable, keys: Sequence) -> list[dict]:
    """Sparse real columns (two per key) of the tangency system.

    Every row is multiplied by one common denominator, so the entries are
    plain integers and the kernel is unchanged.
    """
    cols = []
    big = 1
    for slot, a, m in keys:
        # per representative monomial: p from K itself, q from conj(K) of the partner
        acc: dict = {}
        for (a2, b2, k2), (re, im, q) in table.piece(slot, m):
            az = tuple(x + y for x, y in zip(a, a2))
            if az >= b2:
                e = acc.setdefault((az, b2, k2), [0, 0, 0, 0, q])
                _accum(e, 0, re, im, q)
            if b2 >= az:
                e = acc.setdefault((b2, az, k2), [0, 0, 0, 0, q])
                _accum(e, 2, re, -im, q)
        xcol, ycol = {}, {}
        for key, (pr, pi, qr, qi, den) in acc.items():
            # x (p + q) + i y (p - q): real and imaginary rows
            sr, si = pr + qr, pi + qi
            dr, di = pr - qr, pi - qi
            if den != 1:
                big = big * den // gcd(big, den)
            if sr:
                xcol[(key, 0)] = (sr, den)
            if si:
                xcol[(key, 1)] = (si, den)
            if di:
                ycol[(key, 0)] = (-di, den)
            if dr:
                ycol[(key, 1)] = (dr, den)
        cols.append(xcol)
        cols.append(ycol)
    return [{k: num * (big // den) for k, (num, den) in col.items()} for col in cols]


def _accum(e: list, off: int, re: int, im: int, q: int) -> None:
    den = e[4]
    if den != q:
        lcm = den * q // gcd(den, q)
        f = lcm // den
        e[0] *= f
        e[1] *= f
        e[2] *= f
        e[3] *= f
        e[4] = lcm
        re *= lcm // q
        im *= lcm // q
    e[off] += re
    e[off + 1] += im


@dataclass
class GradedComponent:
    weight: Fraction
    d: int
    n: int
    basis: list
    keys: list = field(repr=False, default_factory=list)
    vectors: list = field(repr=False, default_factory=list)
    _split: tuple | None = field(repr=False, default=None, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def j(self) -> int:
        return _weight_index(self.weight, self.d)

    def rigid_dimension(self) -> int:
        return len(rigid_split(self)[0])

    def coordinates(self, x: VectorField):
        return field_coordinates(x, self.keys)

    def contains(self, x: VectorField) -> bool:
        """Whether ``x`` lies in the real span of the basis."""
        if x.is_zero():
            return True
        v = self.coordinates(x)
        if v is None:
            return False
        if not self.vectors:
            return False
        return rank(list(self.vectors) + [v]) == len(self.vectors)


def solve_component(
    model: ModelSurface,
    mu: Fraction,
    table: _ResidualTable | None = None,
    extra_weights: Sequence[Fraction] = (),
) -> GradedComponent:
    """Solve the tangency system at weight ``mu``.

    ``extra_weights`` enlarges the ansatz with monomials of other weights; the
    returned component keeps only solutions supported on weight ``mu``.
    """
    n, d = model.n, model.d
    mu = Fraction(mu)
    table = table or _ResidualTable(model.phi)
    keys = ansatz_keys(mu, n, d)
    all_keys = list(keys)
    for nu in extra_weights:
        all_keys += [k for k in ansatz_keys(nu, n, d) if k not in keys]
    cols = _columns(table, all_keys)
    ker = sparse_kernel_basis(cols, len(cols))
    width = 2 * len(keys)
    if extra_weights:
        # the system decouples by weight; keep the vectors living on ``keys``
        ker = [v[:width] for v in ker if not any(v[width:])]
    basis = [_vector_field(v, keys, n) for v in ker]
    return GradedComponent(mu, d, n, basis, keys, [tuple(v) for v in ker])


def _w_columns(keys: Sequence) -> list[int]:
    return [i for i, (_s, _a, m) in enumerate(keys) if m]


def rigid_split(c: GradedComponent) -> tuple[list[VectorField], list[VectorField]]:
    """Split a component basis into a rigid part and a complement.

    The rigid part is a basis of the ``w``-free subspace; the complement is a
    subset of the original basis independent modulo it.  The result is
    cached on the component.
    """
    if c._split is None:
        c._split = _rigid_split(c)
    rigid, nonrigid = c._split
    return list(rigid), list(nonrigid)


def _rigid_split(c: GradedComponent) -> tuple[list[VectorField], list[VectorField]]:
    if not c.basis:
        return [], []
    wcols = _w_columns(c.keys)
    rows = []
    for i in wcols:
        rows.append([v[2 * i] for v in c.vectors])
        rows.append([v[2 * i + 1] for v in c.vectors])
    if not rows:
        return list(c.basis), []
    combos = kernel_basis(rows, len(c.vectors))
    rigid = []
    for comb in combos:
        v = [sum(x * vec[t] for x, vec in zip(comb, c.vectors)) for t in range(len(c.vectors[0]))]
        rigid.append(_vector_field(v, c.keys, c.n))
    # complement: basis elements at pivot columns of the w-projection
    _, pivots = _rref_int([_int_row(r) for r in rows], len(c.vectors))
    nonrigid = [c.basis[i] for i in pivots]
    return rigid, nonrigid


@dataclass
class AlgebraReport:
    model: ModelSurface
    components: list
    closure_failures: list = field(default_factory=list)
    structure: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.model.d

    @property
    def total_dimension(self) -> int:
        return sum(c.dimension for c in self.components)

    def component(self, mu) -> GradedComponent:
        mu = Fraction(mu)
        for c in self.components:
            if c.weight == mu:
                return c
        raise KeyError(f"no component at weight {mu}")

    def dim(self, mu) -> int:
        return self.component(mu).dimension

    def gc_dimension(self) -> int:
        """Rigid fields of weight strictly between 0 and 1."""
        return sum(c.rigid_dimension() for c in self.components if 0 < c.weight < 1)

    def gc_basis(self) -> list[VectorField]:
        out = []
        for c in self.components:
            if 0 < c.weight < 1:
                out += rigid_split(c)[0]
        return out

    def rotations(self) -> list[VectorField]:
        """Basis of rigid weight-0 fields."""
        return rigid_split(self.component(0))[0]


def check_bracket_closure(components: Sequence[GradedComponent]) -> list[str]:
    by_weight = {c.weight: c for c in components}
    failures = []
    for i, ci in enumerate(components):
        for cj in components[i:]:
            target = by_weight.get(ci.weight + cj.weight)
            for a_idx, x in enumerate(ci.basis):
                start = a_idx + 1 if ci is cj else 0
                for y in cj.basis[start:]:
                    br = lie_bracket(x, y)
                    if br.is_zero():
                        continue
                    if target is None or not target.contains(br):
                        failures.append(
                            f"[{weight_label(ci.weight)}, {weight_label(cj.weight)}] bracket {br} "
                            f"not in g_{weight_label(ci.weight + cj.weight)}"
                        )
    return failures


def full_algebra(
    model: ModelSurface,
    extended: bool | None = None,
    check_closure: bool = True,
    certificate: NondegeneracyCertificate | None = None,
) -> AlgebraReport:
    """All graded components ``g_mu`` for ``-1 <= mu <= 1``.

    Refuses degenerate models.  With ``extended`` (or the environment
    variable ``CRSYM_DIAG_WEIGHTS=extended``) weights up to 2 are also
    solved and reported under ``diagnostics``.
    """
    cert = certificate or holomorphic_nondegeneracy(model)
    if not cert.verdict:
        raise DegenerateModel(cert)
    if extended is None:
        extended = os.environ.get("CRSYM_DIAG_WEIGHTS", "") == "extended"
    table = _ResidualTable(model.phi)
    comps = [solve_component(model, mu, table) for mu in candidate_weights(model.d)]
    report = AlgebraReport(model, comps)
    if check_closure:
        report.closure_failures = check_bracket_closure(comps)
    if extended:
        extra = [mu for mu in candidate_weights(model.d, extended=True) if mu > 1]
        report.diagnostics["extended_weights"] = [
            {"weight": weight_label(mu), "dim": solve_component(model, mu, table).dimension} for mu in extra
        ]
    log.debug("solved %s: total %d", model.describe(), report.total_dimension)
    return report
