"""Truncated skew power series and Laurent series.

An element is stored as x^(-v) * f where v >= 0 is the shift and f is a
power series in normal-ordered monomials x^s = x_1^s_1 ... x_n^s_n, known
modulo monomials of total degree >= precision.

Arithmetic runs on the equivalent normal-ordered Laurent expansion
sum c_u x^u with u = s - v. There the precision becomes an absolute degree
bound A = precision - |v|: the element is known modulo Laurent monomials
of total degree >= A. Products of x^(-v) f and x^(-w) g are known below
min(A_f - |w|, A_g - |v|), which in stored form is min of the precisions.
"""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterable, Mapping, Optional, Sequence

from . import kernels
from .coeff import Scalar
from .commutation import CommutationData, is_central_exponent, ordering_exponent
from .errors import DimensionMismatch, MismatchedRing, NotCentral, NotInvertible, InternalConsistencyError
from .lattice import LatticeBasis

__all__ = [
    "INF",
    "SkewSeries",
    "series_add",
    "series_scale",
    "series_mul",
    "series_invert",
    "is_central",
    "central_coordinates",
    "grlex_key",
]

INF = math.inf

Exp = tuple[int, ...]


def grlex_key(s: Sequence[int]):
    """Graded lex with x_1 > x_2 > ...: lower degree first."""
    return (sum(s), tuple(-x for x in s))


def _deg(s: Sequence[int]) -> int:
    return sum(s)


def _norm1(v: Sequence[int]) -> int:
    return sum(abs(x) for x in v)


class SkewSeries:
    __slots__ = ("cd", "field", "shift", "terms", "precision")

    def __init__(
        self,
        cd: CommutationData,
        field,
        terms: Mapping[Sequence[int], Scalar] | Iterable = (),
        shift: Optional[Sequence[int]] = None,
        precision: float | int = INF,
    ):
        n = cd.n
        shift = tuple(shift) if shift is not None else (0,) * n
        if len(shift) != n or any(x < 0 for x in shift):
            raise ValueError(f"shift must be {n} non-negative integers, got {shift}")
        if precision != INF and (not isinstance(precision, int) or precision < 1):
            raise ValueError(f"precision must be a positive integer or inf, got {precision!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exp, Scalar] = {}
        for s, c in items:
            s = tuple(s)
            if len(s) != n:
                raise DimensionMismatch(f"exponent {s} has length {len(s)}, expected {n}")
            if any(x < 0 for x in s):
                raise ValueError(f"stored exponents must be non-negative, got {s}")
            if isinstance(c, int):
                c = field.from_int(c)
            elif c.field is not field:
                raise MismatchedRing("coefficient from a different field")
            if _deg(s) >= precision:
                continue
            acc[s] = acc[s] + c if s in acc else c
        object.__setattr__(self, "cd", cd)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(
            self,
            "terms",
            {s: acc[s] for s in sorted(acc, key=grlex_key) if not acc[s].is_zero()},
        )
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, value):
        raise AttributeError("SkewSeries is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, cd, field, precision=INF) -> "SkewSeries":
        return cls(cd, field, {}, precision=precision)

    @classmethod
    def one(cls, cd, field, precision=INF) -> "SkewSeries":
        return cls(cd, field, {(0,) * cd.n: field.one}, precision=precision)

    @classmethod
    def monomial(cls, cd, field, u: Sequence[int], coeff=1, precision=INF) -> "SkewSeries":
        """coeff * x^u for any integer exponent u (Laurent if u has negatives)."""
        if isinstance(coeff, int):
            coeff = field.from_int(coeff)
        return cls.from_laurent(cd, field, {tuple(u): coeff}, precision)

    @classmethod
    def variable(cls, cd, field, i: int) -> "SkewSeries":
        """The generator x_(i+1) (0-based index)."""
        e = [0] * cd.n
        e[i] = 1
        return cls(cd, field, {tuple(e): field.one})

    @classmethod
    def from_laurent(
        cls,
        cd,
        field,
        laurent: Mapping[Exp, Scalar],
        abs_precision: float = INF,
        shift: Optional[Sequence[int]] = None,
    ) -> "SkewSeries":
        """Build from normal-ordered Laurent terms with absolute precision.

        The default shift is the least one making every exponent non-negative.
        """
        n = cd.n
        exps = [tuple(u) for u in laurent]
        if shift is None:
            shift = tuple(max([0] + [-u[i] for u in exps]) for i in range(n))
        shift = tuple(shift)
        precision = abs_precision + _norm1(shift)
        if precision != INF:
            if precision < 1:
                raise ValueError(
                    f"absolute precision {abs_precision} leaves nothing known at shift {shift}"
                )
            precision = int(precision)
        neg = tuple(-x for x in shift)
        stored = [tuple(a + b for a, b in zip(u, shift)) for u in exps]
        if any(shift) and stored:
            # x^(-v) x^s = eps^ord(-v, s) x^(s - v), so c_s = c_u eps^-ord(-v, s)
            table = kernels.ordering_table(cd.h, cd.ell, [neg], stored)[0]
            terms = {s: laurent[u] * field.root_power(-e) for s, u, e in zip(stored, exps, table)}
        else:
            terms = {s: laurent[u] for s, u in zip(stored, exps)}
        return cls(cd, field, terms, shift, precision)

    # -- views --------------------------------------------------------------

    @property
    def abs_precision(self) -> float:
        return self.precision - _norm1(self.shift)

    def laurent(self) -> dict[Exp, Scalar]:
        """Normal-ordered Laurent coefficients {u: c_u}."""
        v = self.shift
        if not any(v):
            return dict(self.terms)
        neg = tuple(-x for x in v)
        exps = list(self.terms)
        table = kernels.ordering_table(self.cd.h, self.cd.ell, [neg], exps)[0]
        return {
            tuple(a - b for a, b in zip(s, v)): self.terms[s] * self.field.root_power(e)
            for s, e in zip(exps, table)
        }

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, precision) -> "SkewSeries":
        return SkewSeries(
            self.cd, self.field, self.terms, self.shift, min(precision, self.precision)
        )

    def coefficient(self, u: Sequence[int]) -> Scalar:
        """Laurent coefficient of x^u."""
        return self.laurent().get(tuple(u), self.field.zero)

    def _same_ring(self, other: "SkewSeries") -> None:
        if self.cd != other.cd or self.field is not other.field:
            raise MismatchedRing("series over different commutation data or fields")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SkewSeries):
            return NotImplemented
        return series_add(self, other)

    def __neg__(self):
        return series_scale(-1, self)

    def __sub__(self, other):
        if not isinstance(other, SkewSeries):
            return NotImplemented
        return series_add(self, series_scale(-1, other))

    def __mul__(self, other):
        if isinstance(other, SkewSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Scalar)):
            return series_scale(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return series_scale(other, self)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use series_invert for negative powers")
        acc = SkewSeries.one(self.cd, self.field)
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if not isinstance(other, SkewSeries):
            return NotImplemented
        return (
            self.cd == other.cd
            and self.field is other.field
            and self.abs_precision == other.abs_precision
            and self.laurent() == other.laurent()
        )

    def __hash__(self):
        return hash((self.cd, self.abs_precision, frozenset(self.laurent().items())))

    # -- serialization ------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "shift": list(self.shift),
            "precision": "inf" if self.precision == INF else self.precision,
            "terms": [{"exp": list(s), "coeff": c.encode()} for s, c in self.terms.items()],
        }

    @classmethod
    def from_json_obj(cls, cd, field, obj) -> "SkewSeries":
        if not isinstance(obj, dict):
            raise ValueError("series must be a JSON object")
        prec = obj.get("precision", "inf")
        prec = INF if prec == "inf" else prec
        terms = []
        for t in obj.get("terms", []):
            terms.append((tuple(t["exp"]), field.decode(t["coeff"])))
        return cls(cd, field, terms, obj.get("shift"), prec)

    def __repr__(self):
        return f"SkewSeries({self})"

    def __str__(self):
        parts = []
        for u, c in sorted(self.laurent().items(), key=lambda kv: grlex_key(kv[0])):
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(u) if e
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self.precision != INF:
            body += f" + O(deg >= {self.abs_precision})"
        return body


# ---------------------------------------------------------------------------


def series_add(f: SkewSeries, g: SkewSeries) -> SkewSeries:
    f._same_ring(g)
    shift = tuple(max(a, b) for a, b in zip(f.shift, g.shift))
    acc = dict(f.laurent())
    for u, c in g.laurent().items():
        acc[u] = acc[u] + c if u in acc else c
    return SkewSeries.from_laurent(
        f.cd, f.field, acc, min(f.abs_precision, g.abs_precision), shift
    )


def series_scale(c, f: SkewSeries) -> SkewSeries:
    if isinstance(c, int):
        c = f.field.from_int(c)
    return SkewSeries(f.cd, f.field, {s: c * x for s, x in f.terms.items()}, f.shift, f.precision)


def _laurent_product(cd, field, lf: Mapping, lg: Mapping, bound: float) -> dict:
    if not lf or not lg:
        return {}
    ef, eg = list(lf), list(lg)
    table = kernels.ordering_table(cd.h, cd.ell, ef, eg)
    out: dict[Exp, Scalar] = {}
    for s, row in zip(ef, table):
        cs = lf[s]
        ds = _deg(s)
        for t, e in zip(eg, row):
            if ds + _deg(t) >= bound:
                continue
            u = tuple(a + b for a, b in zip(s, t))
            term = cs * lg[t]
            if e:
                term = term * field.root_power(e)
            out[u] = out[u] + term if u in out else term
    return out


def series_mul(f: SkewSeries, g: SkewSeries) -> SkewSeries:
    f._same_ring(g)
    bound = min(f.abs_precision - _norm1(g.shift), g.abs_precision - _norm1(f.shift))
    shift = tuple(a + b for a, b in zip(f.shift, g.shift))
    prod = _laurent_product(f.cd, f.field, f.laurent(), g.laurent(), bound)
    return SkewSeries.from_laurent(f.cd, f.field, prod, bound, shift)


def series_invert(f: SkewSeries, target_precision: int) -> SkewSeries:
    """Two-sided inverse of f modulo degree ``target_precision``.

    f must be x^u0 times a power series with invertible constant term, where
    u0 is the componentwise minimum of f's Laurent support.
    """
    if not isinstance(target_precision, int) or target_precision < 1:
        raise ValueError("target_precision must be a positive integer")
    cd, field = f.cd, f.field
    lf = f.laurent()
    if not lf:
        raise NotInvertible("zero is not invertible")
    u0 = tuple(min(u[i] for u in lf) for i in range(cd.n))
    if u0 not in lf:
        raise NotInvertible(
            "lowest part is not a single monomial times a unit; not invertible at this precision"
        )
    neg0 = tuple(-x for x in u0)
    # multiplying by the exact monomial x^(-u0) moves every degree by -deg(u0)
    abs_g = f.abs_precision - _deg(u0)
    if abs_g < 1:
        raise NotInvertible("constant term of the unit part is not known at this precision")
    m = min(target_precision, abs_g)

    # g = x^(-u0) f, a power series with nonzero constant term
    exps = list(lf)
    table = kernels.ordering_table(cd.h, cd.ell, [neg0], exps)[0]
    g_by_deg: dict[int, dict[Exp, Scalar]] = defaultdict(dict)
    for u, e in zip(exps, table):
        w = tuple(a - b for a, b in zip(u, u0))
        g_by_deg[_deg(w)][w] = lf[u] * field.root_power(e)
    zero = (0,) * cd.n
    g0_inv = g_by_deg[0][zero].inverse()

    # right inverse h with g h = 1, solved degree by degree
    h_by_deg: list[dict[Exp, Scalar]] = [{zero: g0_inv}]
    for d in range(1, m):
        acc: dict[Exp, Scalar] = {}
        for k in range(1, d + 1):
            gk = g_by_deg.get(k)
            if gk and h_by_deg[d - k]:
                for u, c in _laurent_product(cd, field, gk, h_by_deg[d - k], INF).items():
                    acc[u] = acc[u] + c if u in acc else c
        h_by_deg.append({w: -(g0_inv * c) for w, c in acc.items() if not c.is_zero()})

    # f^-1 = h x^(-u0)
    h_terms = {w: c for part in h_by_deg for w, c in part.items()}
    hexps = list(h_terms)
    table = kernels.ordering_table(cd.h, cd.ell, hexps, [neg0]) if hexps else []
    result = {
        tuple(a - b for a, b in zip(w, u0)): h_terms[w] * field.root_power(row[0])
        for w, row in zip(hexps, table)
    }
    shift = tuple(max(x, 0) for x in u0)
    return SkewSeries.from_laurent(cd, field, result, m - _deg(u0), shift)


def is_central(f: SkewSeries) -> bool:
    """True iff every Laurent support exponent lies in the central sublattice."""
    return all(is_central_exponent(f.cd, u) for u in f.laurent())


def _power_exponent(cd: CommutationData, b: Sequence[int], m: int) -> int:
    """e with (x^b)^m = eps^e x^(m b); e = ord(b, b) * m (m - 1) / 2 for all integers m."""
    return ordering_exponent(cd, b, b) * (m * (m - 1) // 2)


def central_coordinates(
    cd: CommutationData, s: Sequence[int], basis: LatticeBasis
) -> tuple[tuple[int, ...], int]:
    """Coordinates m of s in ``basis`` and gamma with x^s = eps^gamma z_1^m_1 ... z_n^m_n."""
    s = tuple(s)
    if len(s) != cd.n:
        raise DimensionMismatch(f"expected length {cd.n}, got {len(s)}")
    if not is_central_exponent(cd, s):
        raise NotCentral(f"x^{list(s)} is not central")
    m = basis.coordinates(s)
    if m is None:
        raise InternalConsistencyError(f"{list(s)} is central but not in the span of the basis")
    acc = (0,) * cd.n
    e = 0
    for mi, b in zip(m, basis.rows):
        step = tuple(mi * x for x in b)
        e += _power_exponent(cd, b, mi) + ordering_exponent(cd, acc, step)
        acc = tuple(a + x for a, x in zip(acc, step))
    if acc != s:
        raise InternalConsistencyError("basis coordinates do not reproduce the exponent")
    return m, (-e) % cd.ell
