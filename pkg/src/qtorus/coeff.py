"""Exact coefficient fields containing a primitive ``ell``-th root of unity.

Two backends share one scalar type:

* ``cyclotomic``: Q(zeta_ell), elements stored as rational coordinates in the
  power basis 1, zeta, ..., zeta^(phi(ell)-1) modulo the cyclotomic polynomial.
* ``prime``: F_p with ``ell | p - 1``; epsilon is g^((p-1)/ell) for the
  smallest primitive root g.

Nothing here touches floating point.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import ConfigurationError

__all__ = [
    "FieldSpec",
    "Scalar",
    "CyclotomicField",
    "PrimeField",
    "cyclotomic_polynomial",
    "get_field",
    "root_power",
    "add",
    "mul",
    "neg",
    "inv",
]


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, lowest degree first)


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_exact_div(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Quotient of ``num`` by monic ``den``; raises if the division is inexact."""
    rem = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * (len(rem) - dd)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + dd]
        quot[k] = c
        if c:
            for j, y in enumerate(den):
                rem[k + j] -= c * y
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return quot


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


@lru_cache(maxsize=None)
def _cyclotomic(ell: int) -> tuple[int, ...]:
    num = [-1] + [0] * (ell - 1) + [1]  # x^ell - 1
    den = [1]
    for d in _divisors(ell)[:-1]:
        den = _poly_mul(den, _cyclotomic(d))
    return tuple(_poly_exact_div(num, den))


def cyclotomic_polynomial(ell: int) -> tuple[int, ...]:
    """Return Phi_ell as integer coefficients, constant term first.

    Computed by exact division of x^ell - 1 by the product of Phi_d over the
    proper divisors d of ell.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if ell < 1:
        raise ConfigurationError(f"ell must be positive, got {ell}")
    return _cyclotomic(ell)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def _prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ConfigurationError(f"no primitive root modulo {p}")  # unreachable for primes


# ---------------------------------------------------------------------------
# field specification


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "cyclotomic"
    ell: int = 1
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("cyclotomic", "prime"):
            raise ConfigurationError(f"unknown coefficient field kind {self.kind!r}")
        if not isinstance(self.ell, int) or self.ell < 1:
            raise ConfigurationError(f"ell must be a positive integer, got {self.ell!r}")
        if self.kind == "prime":
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ConfigurationError(f"prime field needs a prime p, got {self.p!r}")
            if (self.p - 1) % self.ell:
                raise ConfigurationError(
                    f"ell={self.ell} does not divide p-1={self.p - 1}; "
                    f"F_{self.p} has no primitive {self.ell}-th root of unity"
                )
            if self.ell % self.p == 0:
                warnings.warn(
                    f"characteristic {self.p} divides ell={self.ell}; roots of unity degenerate",
                    stacklevel=2,
                )
        elif self.p is not None:
            raise ConfigurationError("p is only meaningful for prime fields")

    @classmethod
    def from_config(cls, obj: dict | None, ell: int) -> "FieldSpec":
        """Build from the ``coeff_field`` block of a config file."""
        if obj is None:
            return cls("cyclotomic", ell)
        if not isinstance(obj, dict):
            raise ConfigurationError("coeff_field must be an object")
        extra = set(obj) - {"kind", "p"}
        if extra:
            raise ConfigurationError(f"unknown coeff_field keys: {sorted(extra)}")
        return cls(obj.get("kind", "cyclotomic"), ell, obj.get("p"))

    def to_config(self) -> dict:
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        return {"kind": "cyclotomic"}


# ---------------------------------------------------------------------------
# scalars


class Scalar:
    """Immutable field element. Arithmetic is delegated to the owning field."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise TypeError("scalars from different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field.add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field.add(self, self.field.neg(other))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field.add(other, self.field.neg(self))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field.mul(self, self.field.inv(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.field.mul(other, self.field.inv(self))

    def __neg__(self):
        return self.field.neg(self)

    def __pow__(self, e: int):
        if e < 0:
            return self.field.inv(self) ** (-e)
        acc = self.field.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def inverse(self) -> "Scalar":
        return self.field.inv(self)

    def is_zero(self) -> bool:
        return self.field.is_zero(self)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field is other.field and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def encode(self):
        return self.field.encode(self)

    def __repr__(self):
        return f"Scalar({self.field.format(self)})"

    def __str__(self):
        return self.field.format(self)


class CyclotomicField:
    """Q(zeta_ell) in the power basis modulo Phi_ell."""

    kind = "cyclotomic"

    def __init__(self, ell: int):
        self.ell = ell
        self.modulus = cyclotomic_polynomial(ell)
        self.degree = len(self.modulus) - 1
        phi = self.degree
        # x^k mod Phi for phi <= k <= 2*phi - 2, as integer coordinate rows
        self._reduce: list[list[int]] = []
        cur = [-c for c in self.modulus[:-1]]  # x^phi
        for _ in range(max(phi - 1, 0)):
            self._reduce.append(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * m for c, m in zip(cur, self.modulus[:-1])]
        self.zero = Scalar(self, (Fraction(0),) * phi)
        self.one = self.from_int(1)
        zeta = [Fraction(0)] * phi
        if phi == 1:
            zeta[0] = Fraction(-self.modulus[0])
        else:
            zeta[1] = Fraction(1)
        self.zeta = Scalar(self, tuple(zeta))
        powers = [self.one]
        for _ in range(ell - 1):
            powers.append(self.mul(powers[-1], self.zeta))
        self._powers = tuple(powers)

    def from_int(self, c: int) -> Scalar:
        return self.from_coords([c])

    def from_coords(self, coords) -> Scalar:
        vals = [Fraction(c) for c in coords]
        if len(vals) > self.degree:
            raise ConfigurationError(
                f"cyclotomic scalar needs at most {self.degree} coordinates, got {len(vals)}"
            )
        vals += [Fraction(0)] * (self.degree - len(vals))
        return Scalar(self, tuple(vals))

    def root_power(self, e: int) -> Scalar:
        return self._powers[e % self.ell]

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return Scalar(self, tuple(x + y for x, y in zip(a.value, b.value)))

    def neg(self, a: Scalar) -> Scalar:
        return Scalar(self, tuple(-x for x in a.value))

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        phi = self.degree
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a.value):
            if x:
                for j, y in enumerate(b.value):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(self._reduce[k - phi]):
                    if r:
                        out[i] += c * r
        return Scalar(self, tuple(out))

    def inv(self, a: Scalar) -> Scalar:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero scalar")
        # solve (multiplication-by-a matrix) * x = e_0 over Q
        phi = self.degree
        cols = []
        basis = self.one
        for _ in range(phi):
            cols.append(self.mul(a, basis).value)
            basis = self.mul(basis, self.zeta)
        aug = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            piv = next(r for r in range(c, phi) if aug[r][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            pv = aug[c][c]
            aug[c] = [x / pv for x in aug[c]]
            for r in range(phi):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return Scalar(self, tuple(row[-1] for row in aug))

    def is_zero(self, a: Scalar) -> bool:
        return not any(a.value)

    def encode(self, a: Scalar) -> list[str]:
        return [str(x) for x in a.value]

    def decode(self, obj) -> Scalar:
        if not isinstance(obj, list) or len(obj) != self.degree:
            raise ConfigurationError(
                f"cyclotomic scalar must be a list of {self.degree} rational strings, got {obj!r}"
            )
        try:
            return Scalar(self, tuple(Fraction(str(x)) for x in obj))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigurationError(f"bad rational in scalar {obj!r}") from exc

    def format(self, a: Scalar) -> str:
        parts = []
        for i, c in enumerate(a.value):
            if c:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                if not mono:
                    parts.append(str(c))
                elif c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append("-" + mono)
                else:
                    parts.append(f"({c})*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"CyclotomicField({self.ell})"


class PrimeField:
    kind = "prime"

    def __init__(self, p: int, ell: int):
        self.p = p
        self.ell = ell
        self.generator = smallest_primitive_root(p)
        self.epsilon = pow(self.generator, (p - 1) // ell, p)
        self.zero = Scalar(self, 0)
        self.one = Scalar(self, 1 % p)
        self._powers = tuple(Scalar(self, pow(self.epsilon, k, p)) for k in range(ell))

    def from_int(self, c: int) -> Scalar:
        return Scalar(self, c % self.p)

    def root_power(self, e: int) -> Scalar:
        return self._powers[e % self.ell]

    def add(self, a, b):
        return Scalar(self, (a.value + b.value) % self.p)

    def neg(self, a):
        return Scalar(self, -a.value % self.p)

    def mul(self, a, b):
        return Scalar(self, a.value * b.value % self.p)

    def inv(self, a):
        if a.value == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self, pow(a.value, -1, self.p))

    def is_zero(self, a):
        return a.value == 0

    def encode(self, a) -> str:
        return str(a.value)

    def decode(self, obj) -> Scalar:
        try:
            return Scalar(self, int(str(obj)) % self.p)
        except ValueError as exc:
            raise ConfigurationError(f"bad prime-field residue {obj!r}") from exc

    def format(self, a) -> str:
        return str(a.value)

    def __repr__(self):
        return f"PrimeField(p={self.p}, ell={self.ell})"


@lru_cache(maxsize=None)
def get_field(spec: FieldSpec):
    """Return the (cached, shared) field object for ``spec``."""
    if spec.kind == "prime":
        return PrimeField(spec.p, spec.ell)
    return CyclotomicField(spec.ell)


def root_power(spec: FieldSpec, e: int) -> Scalar:
    """epsilon**e; depends only on e mod ell."""
    return get_field(spec).root_power(e)


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def neg(a: Scalar) -> Scalar:
    return -a


def inv(a: Scalar) -> Scalar:
    return a.inverse()
