"""Command-line interface: analyze states from files or presets, emit reports.

Exit codes: 0 success, 2 malformed input (file, schema, or flag combination),
1 internal error.  Given the same seed and input, output is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bell import (
    bell_report_dict,
    correlation_table,
    general_bell_lhs,
    maximize_general_bell,
    parse_settings_file,
)
from .info import maximize_corr_info
from .lhv import BellBoundError, construct_lhv, verify_lhv
from .pauli import correlation_tensor
from .search import OptimizerOptions
from .states import (
    DensityMatrix,
    InputError,
    StatePreset,
    build_preset,
    parse_state_file,
)
from .werner import scan_to_csv, scan_to_json_dict, visibility_scan

_PRESET_DEFAULT_N = {"bell_phi_minus": 2, "product_plus_x_minus_x": 2}


def _add_state_arguments(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("-i", "--input", help="path to a JSON state file")
    sp.add_argument("--preset", help="named preset instead of a file")
    sp.add_argument("--n", type=int, help="qubit count for presets")
    sp.add_argument("--visibility", type=float, help="visibility for werner_ghz")


def _add_common_arguments(sp: argparse.ArgumentParser, with_restarts: bool = True) -> None:
    sp.add_argument("--seed", type=int, default=0, help="optimizer seed (default 0)")
    if with_restarts:
        sp.add_argument("--restarts", type=int, help="optimizer restarts")
    sp.add_argument("--format", choices=("json", "csv"), default=None, dest="out_format")
    sp.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entcrit",
        description="Entanglement analysis of N-qubit states via correlation "
        "information and general Bell inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("tensor", help="full Pauli correlation tensor")
    _add_state_arguments(sp)
    _add_common_arguments(sp, with_restarts=False)

    sp = sub.add_parser("info", help="maximize the in-plane information sum")
    _add_state_arguments(sp)
    _add_common_arguments(sp)

    sp = sub.add_parser("bell", help="search for a violation of the 2^N bound")
    _add_state_arguments(sp)
    _add_common_arguments(sp)
    sp.add_argument("--settings", help="fixed settings file; skips optimization")

    sp = sub.add_parser("lhv", help="build and check a local model at given settings")
    _add_state_arguments(sp)
    _add_common_arguments(sp, with_restarts=False)
    sp.add_argument("--settings", required=True, help="settings file (required)")

    sp = sub.add_parser("werner-scan", help="criteria across the visibility range")
    sp.add_argument("--n", type=int, required=True, help="qubit count")
    sp.add_argument("--grid", type=int, default=101, help="grid points (default 101)")
    _add_common_arguments(sp)

    sp = sub.add_parser("analyze", help="combined tensor/info/bell/lhv report")
    _add_state_arguments(sp)
    _add_common_arguments(sp)
    sp.add_argument("--settings", help="optional settings for the local-model section")

    return parser


def _load_state(args) -> DensityMatrix:
    if args.input and args.preset:
        raise InputError("give either --input or --preset, not both")
    if args.input:
        path = Path(args.input)
        try:
            text = path.read_bytes()
        except OSError as e:
            raise InputError(f"cannot read {path}: {e}") from e
        return parse_state_file(text)
    if args.preset:
        n = args.n or _PRESET_DEFAULT_N.get(args.preset)
        if n is None:
            raise InputError(f"preset {args.preset!r} needs --n")
        return build_preset(StatePreset(args.preset, n, args.visibility))
    raise InputError("a state is required: give --input or --preset")


def _load_settings(path: str, n_qubits: int):
    try:
        text = Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    return parse_settings_file(text, n_qubits)


def _optimizer_options(args, default_restarts: int) -> OptimizerOptions:
    restarts = getattr(args, "restarts", None)
    return OptimizerOptions(
        restarts=restarts if restarts is not None else default_restarts,
        seed=args.seed,
    )


def _lhv_section(table, n_qubits: int) -> dict:
    evaluation = general_bell_lhs(table)
    section = {
        "n_qubits": int(n_qubits),
        "lhs": float(evaluation.lhs_general),
        "bound": float(evaluation.bound),
    }
    try:
        model = construct_lhv(table)
    except BellBoundError:
        section["refused"] = True
        return section
    section["refused"] = False
    section["model"] = model.to_json_dict()
    section["verify_max_abs_error"] = float(verify_lhv(model, table))
    return section


def _cmd_tensor(args) -> str:
    dm = _load_state(args)
    return _to_json(correlation_tensor(dm).to_json_dict())


def _cmd_info(args) -> str:
    dm = _load_state(args)
    verdict = maximize_corr_info(correlation_tensor(dm), _optimizer_options(args, 32))
    return _to_json(verdict.to_json_dict())


def _cmd_bell(args) -> str:
    dm = _load_state(args)
    tensor = correlation_tensor(dm)
    if args.settings:
        settings = _load_settings(args.settings, dm.n_qubits)
        evaluation = general_bell_lhs(correlation_table(tensor, settings))
    else:
        evaluation, settings = maximize_general_bell(
            tensor, _optimizer_options(args, 64)
        )
    return _to_json(bell_report_dict(dm.n_qubits, evaluation, settings))


def _cmd_lhv(args) -> str:
    dm = _load_state(args)
    tensor = correlation_tensor(dm)
    settings = _load_settings(args.settings, dm.n_qubits)
    table = correlation_table(tensor, settings)
    report = _lhv_section(table, dm.n_qubits)
    report["settings"] = settings.to_json_list()
    return _to_json(report)


def _cmd_werner_scan(args) -> str:
    rows = visibility_scan(args.n, args.grid, _optimizer_options(args, 64))
    if args.out_format == "json":
        return _to_json(scan_to_json_dict(args.n, rows))
    return scan_to_csv(rows)


def _cmd_analyze(args) -> str:
    dm = _load_state(args)
    tensor = correlation_tensor(dm)
    verdict = maximize_corr_info(tensor, _optimizer_options(args, 32))
    evaluation, found_settings = maximize_general_bell(
        tensor, _optimizer_options(args, 64)
    )
    if args.settings:
        lhv_settings = _load_settings(args.settings, dm.n_qubits)
    else:
        lhv_settings = found_settings
    lhv = _lhv_section(correlation_table(tensor, lhv_settings), dm.n_qubits)

    report = {
        "n_qubits": int(dm.n_qubits),
        "purity": float(dm.purity()),
        # full tensors get large quickly; keep combined reports bounded
        "tensor": tensor.to_json_dict() if dm.n_qubits <= 6 else None,
        "info": verdict.to_json_dict(),
        "bell": bell_report_dict(dm.n_qubits, evaluation, found_settings),
        "lhv": lhv,
    }
    if args.preset == "werner_ghz":
        from .werner import analyze_werner

        report["werner"] = analyze_werner(args.n, args.visibility).to_json_dict()
    return _to_json(report)


def _to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


_DISPATCH = {
    "tensor": _cmd_tensor,
    "info": _cmd_info,
    "bell": _cmd_bell,
    "lhv": _cmd_lhv,
    "werner-scan": _cmd_werner_scan,
    "analyze": _cmd_analyze,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command != "werner-scan" and getattr(args, "out_format", None) == "csv":
            raise InputError("csv output is only available for werner-scan")
        text = _DISPATCH[args.command](args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {e}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
