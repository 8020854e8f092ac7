"""Structure analysis pipeline and report serialization."""

from __future__ import annotations

import json
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional

from .coeff import FieldSpec, get_field
from .commutation import CommutationData, validate
from .errors import ConfigurationError, InternalConsistencyError
from .lattice import (
    LatticeBasis,
    image_cardinality,
    integer_determinant,
    kernel_lattice,
    pi_degree,
    positive_diagonal_decision,
)

__all__ = [
    "Config",
    "StructureReport",
    "load_config",
    "corpus_paths",
    "parse_config",
    "analyze",
    "render_text",
]

AZUMAYA_STATUS = "theorem-derived, not verified"
CRITERION_NOT_MET = (
    "positive-diagonal criterion not met; no description of the centers is known, "
    "and the UFR flags mean 'criterion not met', not 'not a UFR'"
)


@dataclass(frozen=True)
class Config:
    cd: CommutationData
    field_spec: FieldSpec
    warnings: tuple[str, ...] = ()

    @property
    def field(self):
        return get_field(self.field_spec)

    def to_dict(self) -> dict:
        out = self.cd.to_config()
        out["coeff_field"] = self.field_spec.to_config()
        return out


def parse_config(obj: Any) -> Config:
    if not isinstance(obj, dict):
        raise ConfigurationError("config must be a JSON object")
    missing = [k for k in ("n", "ell", "h") if k not in obj]
    if missing:
        raise ConfigurationError(f"config is missing {', '.join(missing)}")
    extra = set(obj) - {"n", "ell", "h", "coeff_field", "name", "notes"}
    if extra:
        raise ConfigurationError(f"unknown config keys: {sorted(extra)}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cd = validate(obj["n"], obj["ell"], obj["h"])
        spec = FieldSpec.from_config(obj.get("coeff_field"), cd.ell)
    return Config(cd, spec, tuple(str(w.message) for w in caught))


def corpus_paths() -> dict[str, Path]:
    """Bundled regression configs, keyed by name."""
    root = Path(__file__).with_name("corpus")
    return {p.stem: p for p in sorted(root.glob("*.json"))}


def load_config(path: str | Path) -> Config:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"{path}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        return parse_config(obj)
    except ConfigurationError as exc:
        raise type(exc)(f"{path}: {exc}") from exc
    except ValueError as exc:
        raise type(exc)(f"{path}: {exc}") from exc


@dataclass
class StructureReport:
    n: int
    ell: int
    h: list[list[int]]
    coeff_field: dict
    pi_degree: int
    image_cardinality: int
    s_basis: list[list[int]]
    lambdas: list[int]
    positive_diagonal: bool
    witness: Optional[list[int]]
    center_of_L: dict
    center_of_R: dict
    azumaya: dict
    ufr_L: bool
    ufr_R: bool
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, obj: dict) -> "StructureReport":
        return cls(**obj)

    @classmethod
    def from_json(cls, text: str) -> "StructureReport":
        return cls.from_dict(json.loads(text))


def _cross_check(cd: CommutationData, basis: LatticeBasis, h: int, d: int) -> None:
    if d * d != h:
        raise InternalConsistencyError(f"pi degree {d} squared is not {h}")
    for row in basis.rows:
        if any(sum(cd.h[i][j] * row[j] for j in range(cd.n)) % cd.ell for i in range(cd.n)):
            raise InternalConsistencyError(f"basis row {row} is not central")
    det = abs(integer_determinant(basis.rows))
    if det != h:
        raise InternalConsistencyError(f"|det S basis| = {det} but image cardinality is {h}")


def analyze(config: Config | dict) -> StructureReport:
    if not isinstance(config, Config):
        config = parse_config(config)
    cd = config.cd
    basis = kernel_lattice(cd)
    h = image_cardinality(cd)
    d = pi_degree(cd)
    _cross_check(cd, basis, h, d)
    verdict = positive_diagonal_decision(cd, basis)
    notes = list(config.warnings)
    if verdict.is_positive_diagonal:
        gens = [list(r) for r in basis.rows]
        center_L = {"kind": "laurent_series", "generators": gens}
        center_R = {"kind": "power_series", "generators": gens}
    else:
        center_L = {"kind": "unknown_form"}
        center_R = {"kind": "unknown_form"}
        notes.append(CRITERION_NOT_MET)
    return StructureReport(
        n=cd.n,
        ell=cd.ell,
        h=[list(r) for r in cd.h],
        coeff_field=config.field_spec.to_config(),
        pi_degree=d,
        image_cardinality=h,
        s_basis=[list(r) for r in basis.rows],
        lambdas=list(verdict.lambdas),
        positive_diagonal=verdict.is_positive_diagonal,
        witness=list(verdict.witness) if verdict.witness is not None else None,
        center_of_L=center_L,
        center_of_R=center_R,
        azumaya={"degree": d, "status": AZUMAYA_STATUS},
        ufr_L=verdict.is_positive_diagonal,
        ufr_R=verdict.is_positive_diagonal,
        warnings=notes,
    )


def _monomial(e, laurent=False) -> str:
    parts = []
    for i, x in enumerate(e):
        if x:
            power = f"±{x}" if laurent else str(x)
            parts.append(f"x{i + 1}" if power == "1" else f"x{i + 1}^{power}")
    return "*".join(parts) or "1"


def render_text(r: StructureReport) -> str:
    lines = [
        f"n = {r.n}, ell = {r.ell}, coefficient field: {r.coeff_field['kind']}",
        "h = " + json.dumps(r.h),
        f"image cardinality h = {r.image_cardinality}",
        f"PI degree d = {r.pi_degree}",
        f"Azumaya (L): degree {r.azumaya['degree']} ({r.azumaya['status']})",
        "central sublattice S (HNF rows):",
    ]
    lines += [f"  {row}" for row in r.s_basis]
    lines.append(f"minimal axis multiples lambda = {r.lambdas}")
    lines.append(f"positive diagonal basis: {'yes' if r.positive_diagonal else 'no'}")
    if r.witness is not None:
        lines.append(f"  witness outside diag(lambda) Z^n: {r.witness}")
    if r.center_of_L["kind"] == "laurent_series":
        gl = ", ".join(_monomial(g, laurent=True) for g in r.center_of_L["generators"])
        gr = ", ".join(_monomial(g) for g in r.center_of_R["generators"])
        lines.append(f"Z(L) = k[[{gl}]]")
        lines.append(f"Z(R) = k[[{gr}]]")
    else:
        lines.append("Z(L), Z(R): unknown form")
    lines.append(f"UFR: L {'yes' if r.ufr_L else 'criterion not met'}, "
                 f"R {'yes' if r.ufr_R else 'criterion not met'}")
    for w in r.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"
