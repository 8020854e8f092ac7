"""Command line interface: ``qtorus <command> ...``.

Exit status is 0 on success, 1 on domain errors (bad config, non-invertible
series, failed verification) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import kernels
from .errors import QTorusError
from .lattice import kernel_lattice, pi_degree
from .oracle import brute_central_support, brute_diagonal_check, brute_image_cardinality
from .report import analyze, load_config, render_text
from .series import SkewSeries, is_central, series_invert
from .lattice import image_cardinality, positive_diagonal_decision


def _read_series(path, config) -> SkewSeries:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise QTorusError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise QTorusError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        return SkewSeries.from_json_obj(config.cd, config.field, obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise QTorusError(f"{path}: malformed series: {exc}") from exc


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    report = analyze(load_config(args.config))
    if args.json:
        _emit(report.to_json(), args.json)
        if args.json == "-":
            return 0
    sys.stdout.write(render_text(report))
    return 0


def cmd_pi_degree(args) -> int:
    print(pi_degree(load_config(args.config).cd))
    return 0


def cmd_center_basis(args) -> int:
    basis = kernel_lattice(load_config(args.config).cd)
    if args.json:
        sys.stdout.write(_dump([list(r) for r in basis.rows]))
    else:
        for row in basis.rows:
            print(" ".join(str(x) for x in row))
    return 0


def cmd_mul(args) -> int:
    config = load_config(args.config)
    product = _read_series(args.lhs, config) * _read_series(args.rhs, config)
    _emit(_dump(product.to_json_obj()), args.out)
    return 0


def cmd_invert(args) -> int:
    config = load_config(args.config)
    inverse = series_invert(_read_series(args.series, config), args.precision)
    _emit(_dump(inverse.to_json_obj()), args.out)
    return 0


def cmd_is_central(args) -> int:
    config = load_config(args.config)
    print("true" if is_central(_read_series(args.series, config)) else "false")
    return 0


def cmd_oracle(args) -> int:
    cd = load_config(args.config).cd
    if args.check == "image":
        brute = brute_image_cardinality(cd)
        agree = brute == image_cardinality(cd)
        print(f"image cardinality (brute force): {brute}")
    elif args.check == "diagonal":
        brute = brute_diagonal_check(cd)
        agree = brute == positive_diagonal_decision(cd).is_positive_diagonal
        print(f"positive diagonal (brute force): {'true' if brute else 'false'}")
    else:
        radius = args.box_radius if args.box_radius is not None else cd.ell
        central = brute_central_support(cd, radius)
        basis = kernel_lattice(cd)
        from itertools import product

        box = list(product(range(-radius, radius + 1), repeat=cd.n))
        agree = all((s in central) == basis.contains(s) for s in box)
        print(f"central exponents in box radius {radius}: {len(central)} of {len(box)}")
    print(f"agrees with lattice computation: {'yes' if agree else 'NO'}")
    return 0 if agree else 1


def cmd_verify(args) -> int:
    from .verify import run_suite

    cds = None
    kind, p = "cyclotomic", None
    if args.config:
        config = load_config(args.config)
        cds = [config.cd]
        kind, p = config.field_spec.kind, config.field_spec.p
    failed = 0
    for name, ok, detail in run_suite(seed=args.seed, cds=cds, field_kind=kind, p=p):
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        failed += not ok
    print(f"kernels: {kernels.BACKEND}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtorus",
        description="Centers, PI degree and skew-series arithmetic for q-commutative "
        "power and Laurent series rings at roots of unity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_config(name, help_, func):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, help="JSON config with n, ell, h, coeff_field")
        p.set_defaults(func=func)
        return p

    p = with_config("analyze", "full structure report", cmd_analyze)
    p.add_argument("--json", metavar="PATH", help="also write the machine-readable report ('-' for stdout only)")
    with_config("pi-degree", "print the PI degree", cmd_pi_degree)
    p = with_config("center-basis", "print the HNF basis of the central sublattice", cmd_center_basis)
    p.add_argument("--json", action="store_true", help="print as a JSON array")
    p = with_config("mul", "multiply two series files", cmd_mul)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--out", help="output path (default stdout)")
    p = with_config("invert", "invert a series to a given precision", cmd_invert)
    p.add_argument("--series", required=True)
    p.add_argument("--precision", type=int, required=True)
    p.add_argument("--out", help="output path (default stdout)")
    p = with_config("is-central", "test whether a series is central", cmd_is_central)
    p.add_argument("--series", required=True)
    p = with_config("oracle", "run a brute-force check against the lattice computation", cmd_oracle)
    p.add_argument("--check", choices=["image", "kernel", "diagonal"], required=True)
    p.add_argument("--box-radius", type=int, default=None, help="box radius for --check kernel (default ell)")
    p = sub.add_parser("verify", help="run the randomized invariant suite")
    p.add_argument("--config", help="restrict to one config (default: random configs)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QTorusError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
