import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional

from src.core.catalog import FAMILY_IDS
from src.core.config_manager import ConfigManager
from src.core.search import search_non_skt_list, search_skt, search_table4
from src.core.verification import (
    family_report,
    verify_algebra_tables,
    verify_compact_torsion,
    verify_conditions,
    verify_everything,
    verify_hermitian,
    verify_tilted_affaff,
    verify_table4,
)
from src.core.verification_report import VerificationReport
from src.library.cohomology import betti, euler_check, generic_betti
from src.library.config import Config
from src.library.exceptions import (
    AmbiguousIdentificationError,
    DegenerateMetricError,
    DimensionMismatchError,
    InadmissibleParametersError,
    IncompatibleStructureError,
    NotAdInvariantError,
    NotationSyntaxError,
    ParametricEvaluationError,
    UnprintableCoefficientError,
    UnrecognizedAlgebraError,
)
from src.library.hermitian import HermitianStructure
from src.library.identification import identify
from src.library.lie_structure import LieAlgebra, jacobi_check
from src.library.misc import SearchVerdict, StructuralCase
from src.library.notation import load_algebra, to_notation
from src.library.scalars import parse_scalar, poly_string

LOGGER = logging.getLogger(__name__)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_USER_ERRORS = (
    AmbiguousIdentificationError,
    DegenerateMetricError,
    DimensionMismatchError,
    InadmissibleParametersError,
    IncompatibleStructureError,
    NotAdInvariantError,
    NotationSyntaxError,
    ParametricEvaluationError,
    UnprintableCoefficientError,
    UnrecognizedAlgebraError,
    ValueError,
    OSError,
)


def _read_algebra(text: str) -> LieAlgebra:
    """Compact notation, an algebra JSON document, or a path to one."""
    path = Path(text)
    if text.endswith(".json") and path.is_file():
        return load_algebra(path.read_text())
    return load_algebra(text)


def _parse_params(items: Optional[list[str]]) -> dict[str, Any]:
    """["k=1", "q=3/5"] -> {"k": 1, "q": 3/5}."""
    params = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ValueError(f"parameter must look like name=value, got {item!r}")
        params[name.strip()] = parse_scalar(value.strip())
    return params


def _print_json(payload: Any) -> None:
    print(json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2))


def _finish(report: VerificationReport, args: argparse.Namespace) -> int:
    if args.json:
        print(report.dumps())
    else:
        report.show_summary()
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_parse(args: argparse.Namespace, manager: ConfigManager) -> int:
    alg = _read_algebra(args.algebra)
    if args.json:
        _print_json(alg.to_json())
    else:
        print(f"{to_notation(alg)}  (dimension {alg.dim})")
    return EXIT_PASS


def cmd_check(args: argparse.Namespace, manager: ConfigManager) -> int:
    alg = _read_algebra(args.algebra)
    residuals = jacobi_check(alg)
    report = VerificationReport("check")
    report.add_unit(alg.name or "algebra", {"jacobi": not residuals}, {"residuals": [poly_string(r) for r in residuals]})
    return _finish(report, args)


def cmd_classify(args: argparse.Namespace, manager: ConfigManager) -> int:
    alg = _read_algebra(args.algebra)
    alg_id = identify(alg, _parse_params(args.at))
    if args.json:
        _print_json(alg_id.to_json())
    else:
        print(alg_id)
    return EXIT_PASS


def cmd_betti(args: argparse.Namespace, manager: ConfigManager) -> int:
    alg = _read_algebra(args.algebra)
    point = _parse_params(args.at)
    settings = manager.verification_settings(args.seed)
    if point or not alg.free_symbols():
        bv, consistent = betti(alg, point), True
    else:
        bv, consistent = generic_betti(alg, settings.generic_betti_samples, settings.sample_seed)
    if args.json:
        _print_json({"betti": list(bv.reduced), "consistent": consistent, "euler_check": euler_check(bv)})
    else:
        print(tuple(bv.reduced))
    return EXIT_PASS if euler_check(bv) else EXIT_FAIL


def cmd_skt_verify(args: argparse.Namespace, manager: ConfigManager) -> int:
    settings = manager.verification_settings(args.seed)
    if args.hermitian:
        file, algebra = args.hermitian
        alg = _read_algebra(algebra)
        h = HermitianStructure.from_json(alg, json.loads(Path(file).read_text()))
        return _finish(verify_hermitian(h), args)
    if args.family:
        return _finish(family_report(args.family, _parse_params(args.param), settings), args)
    return _finish(verify_everything(settings), args)


def cmd_conditions(args: argparse.Namespace, manager: ConfigManager) -> int:
    degree = args.degree or manager.verification_settings().membership_degree_bound
    cases = list(StructuralCase) if args.case == "all" else [StructuralCase.get_from_str(args.case)]
    report = VerificationReport("conditions")
    for case in cases:
        report.merge(verify_conditions(case, degree))
    return _finish(report, args)


def cmd_table4(args: argparse.Namespace, manager: ConfigManager) -> int:
    settings = manager.verification_settings(args.seed)
    report = verify_table4(settings)
    if args.tables:
        report.merge(verify_algebra_tables(settings))
    return _finish(report, args)


def cmd_search(args: argparse.Namespace, manager: ConfigManager) -> int:
    cfg = manager.search_config(
        args.seed, restarts=args.restarts, max_iters=args.max_iters, success_threshold=args.threshold
    )
    if args.table4 or args.non_skt:
        report = VerificationReport("search", evidence_only=True)
        if args.table4:
            report.merge(search_table4(cfg, manager.verification_settings().table4_lambda_points[:1]))
        if args.non_skt:
            report.merge(search_non_skt_list(cfg))
        report.add_log(f"seed {cfg.seed}")
        return _finish(report, args)
    if not args.algebra:
        raise ValueError("search needs an algebra, --table4 or --non-skt")
    result = search_skt(_read_algebra(args.algebra), cfg)
    if args.json:
        _print_json(result.to_json())
    else:
        print(f"verdict: {result.verdict.value}")
        print(f"best residual: {result.best_residual:.3e}")
        print(f"seed: {result.seed}  restarts run: {len(result.traces)}")
        if result.verdict == SearchVerdict.NOT_FOUND:
            print("(numerical evidence, not a proof)")
    return EXIT_PASS


def cmd_compact_torsion(args: argparse.Namespace, manager: ConfigManager) -> int:
    report = verify_compact_torsion()
    report.merge(verify_tilted_affaff())
    return _finish(report, args)


def cmd_init_config(args: argparse.Namespace, manager: ConfigManager) -> int:
    path = Config.create_config_file()
    print(f"Configuration written to {path}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skt-forge", description="Exact and numerical checks of SKT structures on four-dimensional solvable Lie algebras."
    )
    parser.add_argument("--json", action="store_true", help="Print canonical JSON instead of a summary.")
    parser.add_argument("--seed", type=int, default=None, help="Seed for sampled and randomised commands.")
    parser.add_argument("--config", type=Path, default=None, help="YAML configuration file.")
    sub = parser.add_subparsers(dest="command", required=True)

    def algebra_command(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("algebra", help='Compact notation such as "(0,0,21)xR", or algebra JSON.')
        p.set_defaults(handler=handler)
        return p

    algebra_command("parse", cmd_parse, "Parse compact notation and print it back.")
    algebra_command("check", cmd_check, "Check the Jacobi identity (d^2 = 0).")
    algebra_command("classify", cmd_classify, "Identify a solvable algebra of dimension at most four.").add_argument(
        "--at", nargs="*", metavar="NAME=VALUE", help="Parameter values."
    )
    algebra_command("betti", cmd_betti, "Betti numbers b1..bn.").add_argument(
        "--at", nargs="*", metavar="NAME=VALUE", help="Parameter values."
    )

    p = sub.add_parser("skt-verify", help="Verify the SKT families, one family, or an explicit structure.")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--all", action="store_true", help="Every exact check (default).")
    mode.add_argument("--family", choices=FAMILY_IDS)
    mode.add_argument("--hermitian", nargs=2, metavar=("FILE", "ALGEBRA"), help="Hermitian JSON and an algebra.")
    p.add_argument("--param", nargs="*", metavar="NAME=VALUE", help="Family parameters.")
    p.set_defaults(handler=cmd_skt_verify)

    p = sub.add_parser("conditions", help="Compare computed and listed generic condition polynomials.")
    p.add_argument("--case", choices=["complex", "real", "all"], default="all")
    p.add_argument("--degree", type=int, default=None, help="Degree bound of the membership test.")
    p.set_defaults(handler=cmd_conditions)

    p = sub.add_parser("table4", help="Verify the algebras admitting SKT structures.")
    p.add_argument("--tables", action="store_true", help="Also check the algebra tables and identification claims.")
    p.set_defaults(handler=cmd_table4)

    p = sub.add_parser("search", help="Numerical search for an SKT structure.")
    p.add_argument("algebra", nargs="?", help="Compact notation or algebra JSON.")
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--threshold", type=float, default=None, help="Success threshold on the residual.")
    p.add_argument("--table4", action="store_true", help="Search every algebra of the SKT table.")
    p.add_argument("--non-skt", action="store_true", help="Search every algebra of the non-SKT list.")
    p.set_defaults(handler=cmd_search)

    sub.add_parser("compact-torsion", help="Bi-invariant torsion on su(2) + R and the t-family on aff_R x aff_R.").set_defaults(
        handler=cmd_compact_torsion
    )
    sub.add_parser("init-config", help="Write the default configuration to the working directory.").set_defaults(
        handler=cmd_init_config
    )
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    """
    Parse the command line and run one command.

    Returns:
        int: 0 when every verdict passes, 1 on a failed verdict, 2 on usage errors.
    """
    args = build_parser().parse_args(argv)
    manager = ConfigManager(args.config)
    level, fmt = manager.logging_settings()
    logging.basicConfig(level=level, format=fmt)
    try:
        return args.handler(args, manager)
    except _USER_ERRORS as e:
        LOGGER.error(str(e))
        return EXIT_USAGE


def start() -> None:
    sys.exit(run())


if __name__ == "__main__":
    start()
