"""Brute-force verifiers.

These enumerate exponent vectors directly and never call into the lattice
module; they exist to check it. The enumeration budget defaults to 10**6
points and can be raised with ``QTORUS_ORACLE_BUDGET``.
"""

from __future__ import annotations

import math
import os
from itertools import product

from . import kernels
from .commutation import CommutationData
from .errors import OracleTooLarge

__all__ = [
    "default_budget",
    "brute_image_cardinality",
    "brute_central_support",
    "brute_axis_multiples",
    "brute_diagonal_check",
]

DEFAULT_BUDGET = 1_000_000


def default_budget() -> int:
    raw = os.environ.get("QTORUS_ORACLE_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise OracleTooLarge(f"QTORUS_ORACLE_BUDGET is not an integer: {raw!r}") from exc
    return value


def _require(points: int, budget: int | None, what: str) -> None:
    budget = default_budget() if budget is None else budget
    if points > budget:
        raise OracleTooLarge(f"{what} needs {points} evaluations, budget is {budget}")


def _rows(cd: CommutationData):
    return [list(r) for r in cd.h]


def brute_image_cardinality(cd: CommutationData, budget: int | None = None) -> int:
    """Count distinct H s mod ell over all s in (Z/ell)^n."""
    _require(cd.ell**cd.n, budget, "image enumeration")
    return kernels.image_count(_rows(cd), cd.ell)


def brute_central_support(
    cd: CommutationData, box_radius: int, budget: int | None = None
) -> set[tuple[int, ...]]:
    """All s in [-r, r]^n whose monomial commutes with every generator."""
    if box_radius < 0:
        raise ValueError("box radius must be non-negative")
    _require((2 * box_radius + 1) ** cd.n, budget, "box enumeration")
    mask = kernels.central_box_mask(_rows(cd), cd.ell, box_radius)
    box = product(range(-box_radius, box_radius + 1), repeat=cd.n)
    return {s for s, hit in zip(box, mask) if hit}


def brute_axis_multiples(cd: CommutationData) -> tuple[int, ...]:
    """Smallest m in 1..ell with x_i^m central, found by trial."""
    out = []
    for i in range(cd.n):
        for m in range(1, cd.ell + 1):
            if all((cd.h[i][j] * m) % cd.ell == 0 for j in range(cd.n)):
                out.append(m)
                break
    return tuple(out)


def brute_diagonal_check(cd: CommutationData, budget: int | None = None) -> bool:
    """True iff no nonzero central exponent lies in the box prod [0, lambda_i)."""
    lambdas = brute_axis_multiples(cd)
    _require(math.prod(lambdas), budget, "diagonal box enumeration")
    return kernels.first_central_in_box(_rows(cd), cd.ell, list(lambdas)) is None
