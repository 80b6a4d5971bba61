"""Sparse multivariate polynomials with Gaussian-rational coefficients.

Two flavours share one implementation:

* :class:`HoloPoly` in ``(z_1..z_n, w)``; a term key is ``(a, m)`` with ``a``
  the z-exponent tuple and ``m`` the power of ``w``.
* :class:`MixedPoly` in ``(z, zbar, u)``; a term key is ``(a, b, k)``.

Values are immutable once built.  Terms are printed and serialized in graded
lexicographic order (highest total degree first).
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .numbers import ONE, ZERO, GaussRational, as_gauss

__all__ = ["HoloPoly", "MixedPoly", "DimensionError", "det", "monomials_of_degree"]


class DimensionError(ValueError):
    """Operands live in incompatible variable contexts or shapes."""


def monomials_of_degree(n: int, deg: int) -> list[tuple[int, ...]]:
    """All exponent tuples of length ``n`` summing to ``deg``, lex-descending."""
    if deg < 0:
        return []
    if n == 1:
        return [(deg,)]
    out = []
    for first in range(deg, -1, -1):
        for rest in monomials_of_degree(n - 1, deg - first):
            out.append((first,) + rest)
    return out


def _add_into(acc: dict, key, c: GaussRational) -> None:
    prev = acc.get(key)
    if prev is None:
        if not c.is_zero():
            acc[key] = c
    else:
        s = prev + c
        if s.is_zero():
            del acc[key]
        else:
            acc[key] = s


class _Poly:
    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                c = as_gauss(c)
                if c is None:
                    raise TypeError("coefficients must be Gaussian rationals")
                key = self._check_key(key)
                _add_into(clean, key, c)
        self._terms = clean

    @classmethod
    def _trusted(cls, n: int, terms: dict):
        obj = object.__new__(cls)
        obj.n = n
        obj._terms = terms
        return obj

    # -- container protocol --------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def coeff(self, key) -> GaussRational:
        return self._terms.get(key, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _same(self, other):
        if type(other) is not type(self):
            raise DimensionError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise DimensionError(f"variable count mismatch: {self.n} vs {other.n}")

    def __eq__(self, other):
        if type(other) is type(self):
            return self.n == other.n and self._terms == other._terms
        c = as_gauss(other)
        if c is not None:
            return self == self.constant(self.n, c)
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.n, frozenset(self._terms.items())))

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, _Poly):
            c = as_gauss(other)
            if c is None:
                return NotImplemented
            other = self.constant(self.n, c)
        self._same(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            _add_into(acc, k, c)
        return self._trusted(self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        return self._trusted(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, _Poly):
            c = as_gauss(other)
            if c is None:
                return NotImplemented
            other = self.constant(self.n, c)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "_Poly":
        c = as_gauss(c)
        if c.is_zero():
            return self._trusted(self.n, {})
        return self._trusted(self.n, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, _Poly):
            c = as_gauss(other)
            if c is None:
                return NotImplemented
            return self.scale(c)
        self._same(other)
        acc: dict = {}
        join = self._join
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                _add_into(acc, join(k1, k2), c1 * c2)
        return self._trusted(self.n, acc)

    def __rmul__(self, other):
        c = as_gauss(other)
        if c is None:
            return NotImplemented
        return self.scale(c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = self.constant(self.n, ONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: self._order(kv[0]), reverse=True)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for key, c in self.sorted_items():
            mono = self._mono_str(key)
            if not mono:
                parts.append(str(c))
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _pow_str(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


class HoloPoly(_Poly):
    """Polynomial in ``z_1..z_n`` and ``w``; key ``(a, m)``."""

    __slots__ = ()

    def _check_key(self, key):
        a, m = key
        a = tuple(int(x) for x in a)
        if len(a) != self.n or min(a, default=0) < 0 or m < 0:
            raise DimensionError(f"bad holomorphic exponent {key!r} for n={self.n}")
        return (a, int(m))

    @staticmethod
    def _join(k1, k2):
        return (tuple(x + y for x, y in zip(k1[0], k2[0])), k1[1] + k2[1])

    @staticmethod
    def _order(key):
        a, m = key
        return (sum(a) + m, a, m)

    def _mono_str(self, key):
        a, m = key
        out = [_pow_str(f"z{j + 1}", e) for j, e in enumerate(a) if e]
        if m:
            out.append(_pow_str("w", m))
        return "*".join(out)

    # -- constructors --------------------------------------------------------
    @classmethod
    def constant(cls, n: int, c=1) -> "HoloPoly":
        c = as_gauss(c)
        return cls._trusted(n, {} if c.is_zero() else {((0,) * n, 0): c})

    @classmethod
    def zero(cls, n: int) -> "HoloPoly":
        return cls._trusted(n, {})

    @classmethod
    def monomial(cls, n: int, a, m: int = 0, c=1) -> "HoloPoly":
        return cls(n, {(tuple(a), m): c})

    @classmethod
    def z(cls, n: int, j: int) -> "HoloPoly":
        a = [0] * n
        a[j] = 1
        return cls._trusted(n, {(tuple(a), 0): ONE})

    @classmethod
    def w(cls, n: int) -> "HoloPoly":
        return cls._trusted(n, {((0,) * n, 1): ONE})

    # -- calculus ------------------------------------------------------------
    def partial(self, var: int) -> "HoloPoly":
        """Derivative in ``z_{var+1}`` for ``var < n``; ``var == n`` means ``w``."""
        if not 0 <= var <= self.n:
            raise DimensionError(f"variable index {var} out of range for n={self.n}")
        acc = {}
        for (a, m), c in self._terms.items():
            if var == self.n:
                if m:
                    acc[(a, m - 1)] = c * m
            elif a[var]:
                e = a[var]
                b = a[:var] + (e - 1,) + a[var + 1:]
                acc[(b, m)] = c * e
        return self._trusted(self.n, acc)

    def conjugate_coeffs(self) -> "HoloPoly":
        return self._trusted(self.n, {k: c.conjugate() for k, c in self._terms.items()})

    def degree(self) -> int:
        return max((sum(a) + m for a, m in self._terms), default=-1)

    def uses_w(self) -> bool:
        return any(m for _, m in self._terms)

    def weighted_degrees(self, d: int) -> set:
        """Set of ``|a| + m d`` (weighted degree times ``d``) over all terms."""
        return {sum(a) + m * d for a, m in self._terms}

    def evaluate_w(self, w_powers: list["MixedPoly"]) -> "MixedPoly":
        """Substitute ``w`` by a mixed polynomial given through its powers."""
        acc: dict = {}
        zero_b = (0,) * self.n
        for (a, m), c in self._terms.items():
            for (a2, b2, k2), c2 in w_powers[m].items():
                key = (tuple(x + y for x, y in zip(a, a2)), b2, k2)
                _add_into(acc, key, c * c2)
        return MixedPoly._trusted(self.n, acc)

    def as_mixed(self) -> "MixedPoly":
        """Embed a w-free polynomial as a mixed one (z only)."""
        if self.uses_w():
            raise ValueError("polynomial depends on w")
        zb = (0,) * self.n
        return MixedPoly._trusted(self.n, {(a, zb, 0): c for (a, _), c in self._terms.items()})


class MixedPoly(_Poly):
    """Polynomial in ``z, zbar, u``; key ``(a, b, k)``."""

    __slots__ = ()

    def _check_key(self, key):
        a, b, k = key
        a = tuple(int(x) for x in a)
        b = tuple(int(x) for x in b)
        if len(a) != self.n or len(b) != self.n or min(a + b, default=0) < 0 or k < 0:
            raise DimensionError(f"bad mixed exponent {key!r} for n={self.n}")
        return (a, b, int(k))

    @staticmethod
    def _join(k1, k2):
        return (
            tuple(x + y for x, y in zip(k1[0], k2[0])),
            tuple(x + y for x, y in zip(k1[1], k2[1])),
            k1[2] + k2[2],
        )

    @staticmethod
    def _order(key):
        a, b, k = key
        return (sum(a) + sum(b) + k, a, b, k)

    def _mono_str(self, key):
        a, b, k = key
        out = [_pow_str(f"z{j + 1}", e) for j, e in enumerate(a) if e]
        out += [_pow_str(f"zb{j + 1}", e) for j, e in enumerate(b) if e]
        if k:
            out.append(_pow_str("u", k))
        return "*".join(out)

    @classmethod
    def constant(cls, n: int, c=1) -> "MixedPoly":
        c = as_gauss(c)
        z0 = (0,) * n
        return cls._trusted(n, {} if c.is_zero() else {(z0, z0, 0): c})

    @classmethod
    def zero(cls, n: int) -> "MixedPoly":
        return cls._trusted(n, {})

    @classmethod
    def monomial(cls, n: int, a, b, k: int = 0, c=1) -> "MixedPoly":
        return cls(n, {(tuple(a), tuple(b), k): c})

    @classmethod
    def z(cls, n: int, j: int) -> "MixedPoly":
        a = [0] * n
        a[j] = 1
        return cls._trusted(n, {(tuple(a), (0,) * n, 0): ONE})

    @classmethod
    def zbar(cls, n: int, j: int) -> "MixedPoly":
        a = [0] * n
        a[j] = 1
        return cls._trusted(n, {((0,) * n, tuple(a), 0): ONE})

    @classmethod
    def u(cls, n: int) -> "MixedPoly":
        z0 = (0,) * n
        return cls._trusted(n, {(z0, z0, 1): ONE})

    def conjugate(self) -> "MixedPoly":
        return self._trusted(
            self.n, {(b, a, k): c.conjugate() for (a, b, k), c in self._terms.items()}
        )

    def is_real(self) -> bool:
        t = self._terms
        for (a, b, k), c in t.items():
            if t.get((b, a, k), ZERO) != c.conjugate():
                return False
        return True

    def real_part(self) -> "MixedPoly":
        return (self + self.conjugate()).scale(GaussRational(1, 0) / 2)

    def imag_part(self) -> "MixedPoly":
        # (p - conj p) / (2i) = -(i/2)(p - conj p)
        return (self - self.conjugate()).scale(GaussRational(0, -1) / 2)

    def partial_z(self, j: int) -> "MixedPoly":
        acc = {}
        for (a, b, k), c in self._terms.items():
            e = a[j]
            if e:
                acc[(a[:j] + (e - 1,) + a[j + 1:], b, k)] = c * e
        return self._trusted(self.n, acc)

    def degree(self) -> int:
        return max((sum(a) + sum(b) + k for a, b, k in self._terms), default=-1)

    def bidegrees(self) -> set:
        return {(sum(a), sum(b)) for a, b, _ in self._terms}

    def uses_u(self) -> bool:
        return any(k for _, _, k in self._terms)


def det(matrix: list[list[HoloPoly]]) -> HoloPoly:
    """Determinant by cofactor expansion along the first row."""
    size = len(matrix)
    if size == 0:
        raise DimensionError("empty matrix")
    if any(len(row) != size for row in matrix):
        raise DimensionError("determinant of a non-square matrix")
    n = matrix[0][0].n
    if size == 1:
        return matrix[0][0]
    total = HoloPoly.zero(n)
    for col in range(size):
        entry = matrix[0][col]
        if entry.is_zero():
            continue
        minor = [row[:col] + row[col + 1:] for row in matrix[1:]]
        term = entry * det(minor)
        total = total - term if col % 2 else total + term
    return total


def sum_polys(polys: Iterable[_Poly], like: _Poly) -> _Poly:
    acc: dict = {}
    for p in polys:
        for k, c in p.items():
            _add_into(acc, k, c)
    return like._trusted(like.n, acc)
