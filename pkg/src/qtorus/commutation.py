"""Commutation data for q-commutative variables at roots of unity.

The relations x_i x_j = q_ij x_j x_i are presented by exponents:
q_ij = eps**h_ij with eps a primitive ``ell``-th root of unity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, InvalidCommutationMatrix

__all__ = [
    "CommutationData",
    "NonMinimalPresentation",
    "validate",
    "sigma_exponent",
    "ordering_exponent",
    "is_central_exponent",
]

Vector = Sequence[int]


class NonMinimalPresentation(UserWarning):
    """gcd(ell, all h_ij) > 1: the same q_ij admit a smaller ell."""


@dataclass(frozen=True)
class CommutationData:
    n: int
    ell: int
    h: tuple[tuple[int, ...], ...]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.h)

    def scaled(self, c: int) -> "CommutationData":
        """Presentation (c*ell, c*H) of the same relations."""
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonMinimalPresentation)
            return validate(self.n, c * self.ell, [[c * x for x in row] for row in self.h])

    def to_config(self) -> dict:
        return {"n": self.n, "ell": self.ell, "h": [list(r) for r in self.h]}


def validate(n: int, ell: int, h_matrix) -> CommutationData:
    """Check and normalise (n, ell, H).

    Entries are reduced into [0, ell). Raises InvalidCommutationMatrix when
    q_ii != 1 or q_ij != q_ji^-1; warns NonMinimalPresentation when every
    h_ij shares a factor with ell.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidCommutationMatrix(f"n must be a positive integer, got {n!r}")
    if not isinstance(ell, int) or isinstance(ell, bool) or ell < 1:
        raise InvalidCommutationMatrix(f"ell must be a positive integer, got {ell!r}")
    rows = list(h_matrix)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InvalidCommutationMatrix(f"h must be a {n}x{n} matrix")
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if not isinstance(x, int) or isinstance(x, bool):
                raise InvalidCommutationMatrix(f"h[{i}][{j}] is not an integer: {x!r}")
    h = tuple(tuple(x % ell for x in r) for r in rows)
    for i in range(n):
        if h[i][i]:
            raise InvalidCommutationMatrix(
                f"q_{i + 1}{i + 1} ≠ 1: h[{i}][{i}] = {rows[i][i]} is not 0 mod {ell}"
            )
    for i in range(n):
        for j in range(i + 1, n):
            if (h[i][j] + h[j][i]) % ell:
                raise InvalidCommutationMatrix(
                    f"q_{i + 1}{j + 1} ≠ q_{j + 1}{i + 1}^-1: "
                    f"h[{i}][{j}] + h[{j}][{i}] = {rows[i][j] + rows[j][i]} is not 0 mod {ell}"
                )
    g = math.gcd(ell, *(x for r in h for x in r))
    if g > 1:
        warnings.warn(
            f"non-minimal presentation: gcd(ell, h_ij) = {g}; "
            f"the same relations hold with ell = {ell // g}",
            NonMinimalPresentation,
            stacklevel=2,
        )
    return CommutationData(n, ell, h)


def _check(cd: CommutationData, *vecs: Vector) -> None:
    for v in vecs:
        if len(v) != cd.n:
            raise DimensionMismatch(f"expected a vector of length {cd.n}, got {len(v)}")


def sigma_exponent(cd: CommutationData, s: Vector, t: Vector) -> int:
    """Exponent e with x^s x^t = eps**e x^t x^s, i.e. sum h_ij s_i t_j mod ell."""
    _check(cd, s, t)
    acc = 0
    for i, si in enumerate(s):
        if si:
            row = cd.h[i]
            acc += si * sum(row[j] * tj for j, tj in enumerate(t))
    return acc % cd.ell


def ordering_exponent(cd: CommutationData, s: Vector, t: Vector) -> int:
    """Exponent e with x^s * x^t = eps**e x^(s+t) after normal ordering.

    Every x_j^(t_j) passes the x_i^(s_i) with i > j, each swap contributing
    h_ij s_i t_j. Valid for negative exponents as well.
    """
    _check(cd, s, t)
    acc = 0
    for i in range(1, cd.n):
        si = s[i]
        if si:
            row = cd.h[i]
            acc += si * sum(row[j] * t[j] for j in range(i))
    return acc % cd.ell


def is_central_exponent(cd: CommutationData, s: Vector) -> bool:
    """True iff x^s commutes with every x_j (hence with every monomial)."""
    _check(cd, s)
    return all(
        sum(cd.h[i][j] * s[i] for i in range(cd.n)) % cd.ell == 0 for j in range(cd.n)
    )
