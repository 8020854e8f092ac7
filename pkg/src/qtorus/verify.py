"""Randomized invariant suite behind ``qtorus verify``.

Each check returns ``(name, ok, detail)``; nothing raises on a failed
invariant so that one report lists everything.
"""

from __future__ import annotations

import math
import random
import warnings
from itertools import product
from typing import Callable, Iterator, Optional

from .coeff import FieldSpec, get_field
from .commutation import (
    CommutationData,
    NonMinimalPresentation,
    ordering_exponent,
    sigma_exponent,
    validate,
)
from .lattice import (
    image_cardinality,
    integer_determinant,
    kernel_lattice,
    matmul,
    positive_diagonal_decision,
    smith_normal_form,
)
from .oracle import brute_central_support, brute_diagonal_check, brute_image_cardinality
from .series import SkewSeries, series_invert

CheckResult = tuple[str, bool, str]


def random_commutation_data(rng: random.Random, max_n: int = 3, max_ell: int = 8) -> CommutationData:
    n = rng.randint(1, max_n)
    ell = rng.randint(1, max_ell)
    h = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            h[i][j] = rng.randrange(ell)
            h[j][i] = -h[i][j]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonMinimalPresentation)
        return validate(n, ell, h)


def random_vector(rng: random.Random, n: int, lo: int = -6, hi: int = 6) -> tuple[int, ...]:
    return tuple(rng.randint(lo, hi) for _ in range(n))


def random_scalar(rng: random.Random, field):
    if field.kind == "prime":
        return field.from_int(rng.randrange(field.p))
    return field.from_coords([rng.randint(-3, 3) for _ in range(field.degree)])


def random_series(
    rng: random.Random,
    cd: CommutationData,
    field,
    precision=6,
    max_terms: int = 5,
    max_degree: int = 4,
    unit: bool = False,
) -> SkewSeries:
    terms = {}
    for _ in range(rng.randint(0 if not unit else 1, max_terms)):
        deg = rng.randint(1 if unit else 0, max_degree)
        e = [0] * cd.n
        for _ in range(deg):
            e[rng.randrange(cd.n)] += 1
        terms[tuple(e)] = random_scalar(rng, field)
    if unit:
        c = random_scalar(rng, field)
        while c.is_zero():
            c = random_scalar(rng, field)
        terms[(0,) * cd.n] = c
    return SkewSeries(cd, field, terms, precision=precision)


# ---------------------------------------------------------------------------


def check_snf(rng, count=100, max_n=5) -> CheckResult:
    for _ in range(count):
        n = rng.randint(1, max_n)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        res = smith_normal_form(m)
        d = res.diagonal
        if matmul(matmul(res.U, m), res.V) != res.D:
            return "snf_contract", False, f"U M V != D for {m}"
        if abs(integer_determinant(res.U)) != 1 or abs(integer_determinant(res.V)) != 1:
            return "snf_contract", False, f"non-unimodular transform for {m}"
        if any(x < 0 for x in d) or any(
            (d[i + 1] % d[i] if d[i] else d[i + 1]) for i in range(n - 1)
        ):
            return "snf_contract", False, f"divisibility chain broken: {d}"
        if any(res.D[i][j] for i in range(n) for j in range(n) if i != j):
            return "snf_contract", False, f"D not diagonal for {m}"
    return "snf_contract", True, f"{count} random matrices"


def check_oracles(cds: list[CommutationData], radius: Optional[int] = None) -> list[CheckResult]:
    out = []
    bad_img = bad_diag = bad_ker = None
    for cd in cds:
        if brute_image_cardinality(cd) != image_cardinality(cd):
            bad_img = bad_img or cd
        if brute_diagonal_check(cd) != positive_diagonal_decision(cd).is_positive_diagonal:
            bad_diag = bad_diag or cd
        basis = kernel_lattice(cd)
        r = cd.ell if radius is None else radius
        central = brute_central_support(cd, r)
        for s in product(range(-r, r + 1), repeat=cd.n):
            if (s in central) != basis.contains(s):
                bad_ker = bad_ker or cd
                break
    out.append(("image_vs_oracle", bad_img is None, f"{len(cds)} configs" if bad_img is None else repr(bad_img)))
    out.append(("diagonal_vs_oracle", bad_diag is None, f"{len(cds)} configs" if bad_diag is None else repr(bad_diag)))
    out.append(("kernel_vs_oracle", bad_ker is None, f"{len(cds)} configs" if bad_ker is None else repr(bad_ker)))
    return out


def check_structure(cds: list[CommutationData]) -> CheckResult:
    for cd in cds:
        basis = kernel_lattice(cd)
        h = image_cardinality(cd)
        if abs(integer_determinant(basis.rows)) != h:
            return "structure", False, f"|det| != h for {cd}"
        d = math.isqrt(h)
        if d * d != h:
            return "structure", False, f"h = {h} not a square for {cd}"
        for c in (2, 3):
            sc = cd.scaled(c)
            if (
                kernel_lattice(sc) != basis
                or image_cardinality(sc) != h
                or positive_diagonal_decision(sc) != positive_diagonal_decision(cd)
            ):
                return "structure", False, f"scaling by {c} changes the answer for {cd}"
    return "structure", True, f"{len(cds)} configs, scalings 2 and 3"


def check_bicharacter(rng, cds, pairs=50) -> CheckResult:
    for cd in cds:
        for _ in range(pairs):
            s, s2, t = (random_vector(rng, cd.n) for _ in range(3))
            ss = tuple(a + b for a, b in zip(s, s2))
            if sigma_exponent(cd, ss, t) != (sigma_exponent(cd, s, t) + sigma_exponent(cd, s2, t)) % cd.ell:
                return "bicharacter", False, f"not additive for {cd}"
            if sigma_exponent(cd, s, s) != 0:
                return "bicharacter", False, f"not alternating for {cd}"
            if sigma_exponent(cd, s, t) != (ordering_exponent(cd, s, t) - ordering_exponent(cd, t, s)) % cd.ell:
                return "bicharacter", False, f"ordering cocycle mismatch for {cd}"
    return "bicharacter", True, f"{len(cds)} configs x {pairs} triples"


def check_series(rng, cds, spec_for: Callable[[CommutationData], FieldSpec], trials=10) -> list[CheckResult]:
    law = assoc = dist = inv = None
    for cd in cds:
        field = get_field(spec_for(cd))
        for _ in range(trials):
            s, t = random_vector(rng, cd.n, -3, 3), random_vector(rng, cd.n, -3, 3)
            xs = SkewSeries.monomial(cd, field, s)
            xt = SkewSeries.monomial(cd, field, t)
            if xs * xt != (xt * xs) * field.root_power(sigma_exponent(cd, s, t)):
                law = law or cd
            f, g, h = (random_series(rng, cd, field) for _ in range(3))
            if (f * g) * h != f * (g * h):
                assoc = assoc or cd
            if f * (g + h) != f * g + f * h or (g + h) * f != g * f + h * f:
                dist = dist or cd
            u = random_series(rng, cd, field, unit=True)
            one = SkewSeries.one(cd, field, 6)
            w = series_invert(u, 6)
            if u * w != one or w * u != one:
                inv = inv or cd
    return [
        (name, bad is None, f"{len(cds)} configs x {trials}" if bad is None else repr(bad))
        for name, bad in (
            ("commutation_law", law),
            ("associativity", assoc),
            ("distributivity", dist),
            ("inverse", inv),
        )
    ]


def run_suite(seed: int = 0, cds: Optional[list[CommutationData]] = None,
              field_kind: str = "cyclotomic", p: Optional[int] = None) -> Iterator[CheckResult]:
    rng = random.Random(seed)
    if cds is None:
        cds = [random_commutation_data(rng) for _ in range(30)]

    def spec_for(cd):
        return FieldSpec(field_kind, cd.ell, p if field_kind == "prime" else None)

    yield check_snf(rng)
    yield from check_oracles(cds)
    yield check_structure(cds)
    yield check_bicharacter(rng, cds)
    yield from check_series(rng, cds, spec_for)
