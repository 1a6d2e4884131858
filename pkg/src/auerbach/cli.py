"""File-based pipelines: construct, evaluate, expand, and verify bases.

Subcommands
-----------
c0       build the basis of a kernel subspace of c0 from a JSON spec
ck       enumerate and materialize tree-space basis vectors
eval     apply one tree-space functional to an element file
expand   expand an element file in its space's basis
verify   re-certify an emitted c0 basis file against its spec

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 invalid subspace spec (zero or dependent functionals). Every run is fully
determined by its flags and input files; randomized checks sit behind an
explicit ``--seed`` with a fixed default.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import c0 as c0mod
from . import ck as ckmod
from . import verify as verifymod
from .ordinals import OrdinalParseError, SpaceDesc, ord_parse
from .rationals import RationalParseError, rat_format
from .report import Report, report_to_json

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_BAD_SPEC = 3


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _write_json(path: str, payload) -> None:
    _write_text(path, json.dumps(payload, indent=2) + "\n")


def _emit_report(report: Report, path: str | None) -> None:
    text = report_to_json(report)
    if path:
        _write_text(path, text)
    else:
        sys.stdout.write(text)


def _load_space(alpha_text: str, copies: int = 1) -> SpaceDesc:
    alpha = ord_parse(alpha_text)
    if alpha.is_zero:
        raise ValueError("the ordinal must be at least 1")
    if copies < 1:
        raise ValueError("copies must be at least 1")
    return SpaceDesc(alpha, copies)


def cmd_c0(args: argparse.Namespace) -> int:
    try:
        spec = c0mod.spec_from_dict(_read_json(args.input))
    except (ValueError, RationalParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        c0mod.validate_spec(spec)
    except (c0mod.ZeroFunctional, c0mod.DependentFunctionals) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SPEC
    selection = c0mod.select_max_det(spec)
    basis = c0mod.construct_basis(spec, selection)
    if args.out:
        _write_json(args.out, c0mod.basis_to_dict(basis))
    if args.debug_corrupt:
        try:
            basis = verifymod.inject_correction_fault(basis)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BAD_INPUT
    if args.verify or args.debug_corrupt:
        report = verifymod.run_c0_suite(
            basis,
            seed=args.seed,
            max_check=args.max_check,
            trials=args.trials,
        )
        _emit_report(report, args.report)
        if not report.passed:
            return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        spec = c0mod.spec_from_dict(_read_json(args.spec))
        basis = c0mod.basis_from_dict(_read_json(args.basis), spec)
    except (ValueError, RationalParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        c0mod.validate_spec(spec)
    except (c0mod.ZeroFunctional, c0mod.DependentFunctionals) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SPEC
    report = verifymod.run_c0_suite(
        basis,
        seed=args.seed,
        max_check=args.max_check,
        trials=args.trials,
    )
    _emit_report(report, args.report)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_ck(args: argparse.Namespace) -> int:
    try:
        desc = _load_space(args.alpha, args.copies)
    except (OrdinalParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    system = ckmod.SumSystem(desc)
    indices = system.indices(args.enumerate)
    listing = {
        "space": {"alpha": args.alpha, "copies": args.copies},
        "indices": [
            {
                "copy": si.copy,
                "index": ckmod.format_index(si.index),
                "element": ckmod.sum_element_to_list(system.materialize(si))
                if desc.copies > 1
                else ckmod.element_to_dict(
                    ckmod.materialize(system.base, si.index)
                ),
            }
            for si in indices
        ],
    }
    if args.out:
        _write_json(args.out, listing)
    else:
        sys.stdout.write(json.dumps(listing, indent=2) + "\n")
    if args.verify:
        report = verifymod.run_ck_suite(
            desc,
            count=args.enumerate,
            trials=args.trials,
            oracle_pairs=args.trials,
            seed=args.seed,
        )
        _emit_report(report, args.report)
        if not report.passed:
            return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    try:
        desc = _load_space(args.alpha)
        index = ckmod.parse_index(args.index)
        element_value = ckmod.element_from_dict(_read_json(args.element))
        if not ckmod.validate_index(desc, index):
            raise ckmod.InvalidIndexError(
                f"{args.index} is not an index of this space"
            )
        value = ckmod.eval_functional(desc, index, element_value)
    except (
        OrdinalParseError,
        RationalParseError,
        ckmod.InvalidIndexError,
        ckmod.InvalidElementError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    print(rat_format(value))
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    try:
        desc = _load_space(args.alpha)
        element_value = ckmod.element_from_dict(_read_json(args.element))
        coeffs = ckmod.expand(desc, element_value)
    except (
        OrdinalParseError,
        RationalParseError,
        ckmod.InvalidElementError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    ordered = sorted(coeffs.items(), key=lambda kv: ckmod.index_sort_key(kv[0]))
    payload = {ckmod.format_index(i): rat_format(c) for i, c in ordered}
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="auerbach",
        description="Exact Auerbach-basis construction and certification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_c0 = sub.add_parser("c0", help="basis of a kernel subspace of c0")
    p_c0.add_argument("--input", required=True, help="subspace spec JSON")
    p_c0.add_argument("--out", help="write the basis JSON here")
    p_c0.add_argument("--report", help="write the verification report here")
    p_c0.add_argument("--verify", action="store_true")
    p_c0.add_argument("--max-check", type=int, default=None,
                      help="how many basis positions the checks cover")
    p_c0.add_argument("--trials", type=int, default=5)
    p_c0.add_argument("--seed", type=int, default=0)
    p_c0.add_argument("--debug-corrupt", action="store_true",
                      help="testing hook: inject a fault, then verify")
    p_c0.set_defaults(handler=cmd_c0)

    p_verify = sub.add_parser("verify", help="re-certify an emitted basis")
    p_verify.add_argument("--spec", required=True)
    p_verify.add_argument("--basis", required=True)
    p_verify.add_argument("--report", help="write the report here")
    p_verify.add_argument("--max-check", type=int, default=None)
    p_verify.add_argument("--trials", type=int, default=5)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(handler=cmd_verify)

    p_ck = sub.add_parser("ck", help="tree-space basis enumeration")
    p_ck.add_argument("--alpha", required=True, help="ordinal, e.g. w^2")
    p_ck.add_argument("--copies", type=int, default=1)
    p_ck.add_argument("--enumerate", type=int, default=20)
    p_ck.add_argument("--out", help="write the index/element listing here")
    p_ck.add_argument("--report", help="write the verification report here")
    p_ck.add_argument("--verify", action="store_true")
    p_ck.add_argument("--trials", type=int, default=20)
    p_ck.add_argument("--seed", type=int, default=0)
    p_ck.set_defaults(handler=cmd_ck)

    p_eval = sub.add_parser("eval", help="apply one functional to an element")
    p_eval.add_argument("--alpha", required=True)
    p_eval.add_argument("--index", required=True, help="e.g. B2.T1")
    p_eval.add_argument("--element", required=True, help="element JSON file")
    p_eval.set_defaults(handler=cmd_eval)

    p_expand = sub.add_parser("expand", help="expand an element in the basis")
    p_expand.add_argument("--alpha", required=True)
    p_expand.add_argument("--element", required=True, help="element JSON file")
    p_expand.set_defaults(handler=cmd_expand)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    raise SystemExit(main())
