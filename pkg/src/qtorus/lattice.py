"""Integer linear algebra for the central sublattice.

S = {s in Z^n : H s = 0 mod ell} is obtained from the Smith form
U H V = D: writing s = V y, the condition becomes d_i y_i = 0 mod ell, so
S = V diag(ell / gcd(d_i, ell)) Z^n. Everything is plain Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .commutation import CommutationData
from .errors import InternalConsistencyError

__all__ = [
    "SNFResult",
    "LatticeBasis",
    "DiagonalVerdict",
    "smith_normal_form",
    "hermite_normal_form",
    "integer_determinant",
    "kernel_lattice",
    "image_cardinality",
    "pi_degree",
    "minimal_axis_multiples",
    "positive_diagonal_decision",
]

Matrix = tuple[tuple[int, ...], ...]


def _freeze(rows) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def integer_determinant(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)))


def smith_normal_form(M: Sequence[Sequence[int]]) -> SNFResult:
    """Unimodular U, V with U M V = D diagonal, d_1 | d_2 | ..., d_i >= 0.

    Pivot choice is the smallest nonzero absolute value, scanning row-major,
    first hit wins; this keeps the output deterministic.
    """
    a = [list(map(int, r)) for r in M]
    r = len(a)
    c = len(a[0]) if r else 0
    U = _identity(r)
    V = _identity(c)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    for k in range(min(r, c)):
        best = None
        for i in range(k, r):
            for j in range(k, c):
                x = abs(a[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            break
        swap_rows(k, best[1])
        swap_cols(k, best[2])
        while True:
            p = a[k][k]
            for i in range(k + 1, r):
                add_row(i, k, -(a[i][k] // p))
            for j in range(k + 1, c):
                add_col(j, k, -(a[k][j] // p))
            cand = None
            for i in range(k + 1, r):
                x = abs(a[i][k])
                if x and (cand is None or x < cand[0]):
                    cand = (x, "row", i)
            for j in range(k + 1, c):
                x = abs(a[k][j])
                if x and (cand is None or x < cand[0]):
                    cand = (x, "col", j)
            if cand is not None:
                if cand[1] == "row":
                    swap_rows(k, cand[2])
                else:
                    swap_cols(k, cand[2])
                continue
            bad = next(
                (i for i in range(k + 1, r) for j in range(k + 1, c) if a[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(k, bad, 1)
                continue
            break
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            U[k] = [-x for x in U[k]]
    return SNFResult(_freeze(U), _freeze(a), _freeze(V))


# ---------------------------------------------------------------------------
# Hermite normal form


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style HNF of the lattice spanned by ``rows``.

    Upper triangular (echelon) with positive pivots; entries above each
    pivot reduced into [0, pivot). Zero rows are dropped.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return ()
    ncols = len(a[0])
    top = 0
    for col in range(ncols):
        if top == len(a):
            break
        while True:
            nz = [i for i in range(top, len(a)) if a[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(a[i][col]), i))
            a[top], a[piv] = a[piv], a[top]
            done = True
            for i in range(top + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // a[top][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if not any(a[i][col] for i in range(top, len(a))):
            continue
        if a[top][col] < 0:
            a[top] = [-x for x in a[top]]
        p = a[top][col]
        for i in range(top):
            q = a[i][col] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[top])]
        top += 1
    return _freeze(r for r in a[:top])


# ---------------------------------------------------------------------------
# the central sublattice


@dataclass(frozen=True)
class LatticeBasis:
    rows: Matrix

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))

    @property
    def index(self) -> int:
        """[Z^n : S], the product of the HNF pivots."""
        return math.prod(self.pivots)

    def coordinates(self, s: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Integer m with s = sum m_i b_i, or None when s is outside the span."""
        if len(s) != self.n:
            raise ValueError(f"expected length {self.n}, got {len(s)}")
        m: list[int] = []
        for j in range(self.n):
            rest = s[j] - sum(m[i] * self.rows[i][j] for i in range(j))
            q, rem = divmod(rest, self.rows[j][j])
            if rem:
                return None
            m.append(q)
        return tuple(m)

    def contains(self, s: Sequence[int]) -> bool:
        return self.coordinates(s) is not None

    def is_diagonal(self) -> bool:
        return all(
            self.rows[i][j] == 0 for i in range(self.n) for j in range(self.n) if i != j
        )


@dataclass(frozen=True)
class DiagonalVerdict:
    is_positive_diagonal: bool
    lambdas: tuple[int, ...]
    witness: Optional[tuple[int, ...]] = None


def _moduli(cd: CommutationData, snf: SNFResult) -> list[int]:
    return [cd.ell // math.gcd(d, cd.ell) for d in snf.diagonal]


def kernel_lattice(cd: CommutationData) -> LatticeBasis:
    snf = smith_normal_form(cd.h)
    gens = [
        [m * snf.V[row][i] for row in range(cd.n)]
        for i, m in enumerate(_moduli(cd, snf))
    ]
    rows = hermite_normal_form(gens)
    if len(rows) != cd.n:
        raise InternalConsistencyError("central sublattice is not of full rank")
    return LatticeBasis(rows)


def image_cardinality(cd: CommutationData) -> int:
    """Size of the image of H: Z^n -> (Z/ell)^n."""
    return math.prod(_moduli(cd, smith_normal_form(cd.h)))


def pi_degree(cd: CommutationData) -> int:
    h = image_cardinality(cd)
    d = math.isqrt(h)
    if d * d != h:
        raise InternalConsistencyError(f"image cardinality {h} is not a perfect square")
    return d


def minimal_axis_multiples(cd: CommutationData) -> tuple[int, ...]:
    """Least lambda_i > 0 with lambda_i e_i in S."""
    return tuple(cd.ell // math.gcd(cd.ell, *cd.column(i)) for i in range(cd.n))


def positive_diagonal_decision(
    cd: CommutationData, basis: Optional[LatticeBasis] = None
) -> DiagonalVerdict:
    """Does S have a basis of the form lambda_1 e_1, ..., lambda_n e_n?

    diag(lambda) Z^n always sits inside S, so the answer is yes exactly when
    the two indices agree. Otherwise an HNF row outside diag(lambda) Z^n is
    returned as witness.
    """
    if basis is None:
        basis = kernel_lattice(cd)
    lambdas = minimal_axis_multiples(cd)
    if math.prod(lambdas) == basis.index:
        return DiagonalVerdict(True, lambdas)
    for row in basis.rows:
        if any(x % lam for x, lam in zip(row, lambdas)):
            return DiagonalVerdict(False, lambdas, row)
    raise InternalConsistencyError("index mismatch but every basis row is diagonal")
