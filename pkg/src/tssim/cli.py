"""Command-line surface: file ingestion, JSON emission, exit-code mapping.

Documents are JSON with a "schema": "1" field, keys sorted, floats in
shortest round-trip form, so identical configurations produce byte-identical
output. Exit codes: 0 success, 2 unreadable input or flags, 3 contract or
domain violations, 4 numeric failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .decompose import (
    PRUNE_TOL_DEFAULT,
    assemble_uh,
    build_decomposition,
    decomposition_from_json,
    decomposition_to_json,
    load_dense_json,
    reconstruct,
    reconstruction_residual,
)
from .encoding import taylor_encoding, uh_from_sum
from .errors import ContractError, NumericError, ParseError, TssimError
from .gates import GateCount, count_dc, count_dense, count_multiplexor, count_select_path
from .linalg import hermitian_eig, max_abs
from .pauli import h2_hamiltonian, parse_pauli_file, sum_matrix
from .phase import MAX_BITS, estimate_ground_energy, histogram_prob_diff

SCHEMA = "1"

_EXIT_BY_ERROR = ((ParseError, 2), (ContractError, 3), (NumericError, 4))


@dataclass
class RunConfig:
    """One command invocation; flags not used by a command are ignored."""

    command: str
    input_path: str | None = None
    format: str = "pauli"
    t: float = 1.0
    bits: int = 16
    method: str = "exact"
    seed: int = 0
    trials: int = 5000
    iterations: int = 20
    prune_tol: float = PRUNE_TOL_DEFAULT
    output_path: str | None = None
    estimator: str = "pea"
    correct: bool = True
    extra_controls: int = 0
    copies: int = 1
    pea_control: bool = False
    emit_matrix: bool = False

    def validate(self) -> None:
        if self.t < 0:
            raise ContractError("t must be non-negative")
        if int(self.bits) != self.bits or not 1 <= self.bits <= MAX_BITS:
            raise ContractError(f"bits must be an integer in [1, {MAX_BITS}]")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ContractError("trials must be a positive integer")
        if int(self.iterations) != self.iterations or self.iterations < 1:
            raise ContractError("iterations must be a positive integer")


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror or e}") from None


def _read_json(path: str) -> dict:
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from None


def _load_pauli(cfg: RunConfig):
    if cfg.format != "pauli":
        raise ContractError(f"command {cfg.command!r} needs --format pauli")
    if not cfg.input_path:
        raise ContractError("missing --input")
    return parse_pauli_file(_read_text(cfg.input_path))


def _load_matrix(cfg: RunConfig) -> np.ndarray:
    if not cfg.input_path:
        raise ContractError("missing --input")
    if cfg.format == "pauli":
        return sum_matrix(parse_pauli_file(_read_text(cfg.input_path)))
    return load_dense_json(_read_json(cfg.input_path))


def _gate_doc(gc: GateCount) -> dict:
    return {
        "cnots": int(gc.cnots),
        "singles": int(gc.singles),
        "ancilla_qubits": int(gc.ancilla_qubits),
        "notes": list(gc.notes),
    }


def _cmd_encode(cfg: RunConfig) -> dict:
    s = _load_pauli(cfg)
    uh = uh_from_sum(s)
    doc = {
        "schema": SCHEMA,
        "command": "encode",
        "terms": len(s.terms),
        "system_dim": int(uh.system_dim),
        "ancilla_dim": int(uh.ancilla_dim),
        "scale": float(uh.scale),
        "block_residual": float(max_abs(uh.top_block() * uh.scale - sum_matrix(s))),
    }
    if cfg.t > 0:
        enc, target = taylor_encoding(uh, cfg.t)
        doc["series"] = {
            "t": float(cfg.t),
            "system_dim": int(enc.system_dim),
            "ancilla_dim": int(enc.ancilla_dim),
            "scale": float(enc.scale),
            "block_residual": float(max_abs(enc.top_block() * enc.scale - target.target)),
        }
        if cfg.emit_matrix:
            doc["series"]["matrix"] = [
                [float(z.real), float(z.imag)] for z in enc.matrix.ravel()
            ]
    return doc


def _cmd_decompose(cfg: RunConfig) -> dict:
    m = _load_matrix(cfg)
    d = build_decomposition(m, prune_tol=cfg.prune_tol)
    doc = decomposition_to_json(d, m)
    doc["schema"] = SCHEMA
    doc["command"] = "decompose"
    doc["residual"] = float(reconstruction_residual(d, m))
    enc = assemble_uh(d)
    doc["encoding"] = {
        "system_dim": int(enc.system_dim),
        "ancilla_dim": int(enc.ancilla_dim),
        "scale": float(enc.scale),
    }
    return doc


def _cmd_verify(cfg: RunConfig) -> dict:
    if not cfg.input_path:
        raise ContractError("missing --input")
    doc = _read_json(cfg.input_path)
    if "matrix" not in doc:
        raise ParseError("document has no embedded matrix to verify against")
    d = decomposition_from_json(doc)
    m = load_dense_json(doc["matrix"])
    residual = float(max_abs(reconstruct(d) - m))
    reported = float(doc.get("residual", 1e-9))
    if residual > max(reported * (1.0 + 1e-9) + 1e-15, 1e-9):
        raise ContractError(f"reconstruction residual {residual} exceeds tolerance")
    return {
        "schema": SCHEMA,
        "command": "verify",
        "ok": True,
        "residual": residual,
        "reported_residual": reported,
        "branches": len(d.terms),
    }


def _cmd_estimate(cfg: RunConfig) -> dict:
    s = _load_pauli(cfg)
    if cfg.method not in ("exact", "taylor", "dc"):
        raise ContractError(f"unknown estimate method {cfg.method!r}")
    energy, est = estimate_ground_energy(
        s, t=cfg.t, m=int(cfg.bits), method=cfg.method,
        estimator=cfg.estimator, correct=cfg.correct,
    )
    return {
        "schema": SCHEMA,
        "command": "estimate",
        "energy": float(energy),
        "method": cfg.method,
        "estimator": cfg.estimator,
        "t": float(cfg.t),
        "phase_bits": [int(b) for b in est.bits],
        "phase": float(est.phase),
        "success_prob": float(est.success_prob),
        "tie": bool(est.tie),
        "coefficient_norm": float(s.coefficient_one_norm()),
    }


def _cmd_gates(cfg: RunConfig) -> dict:
    if cfg.method == "select":
        s = _load_pauli(cfg)
        gc = count_select_path(s, extra_controls=int(cfg.extra_controls), copies=int(cfg.copies))
    elif cfg.method == "dense":
        m = _load_matrix(cfg)
        gc = count_dense(m.shape[0])
    elif cfg.method == "dc":
        m = _load_matrix(cfg)
        d = build_decomposition(m, prune_tol=cfg.prune_tol)
        gc = count_dc(d, pea_control=cfg.pea_control)
    else:
        raise ContractError(f"unknown gates method {cfg.method!r}")
    doc = _gate_doc(gc)
    doc["schema"] = SCHEMA
    doc["command"] = "gates"
    doc["method"] = cfg.method
    return doc


def _cmd_h2(cfg: RunConfig) -> dict:
    """Embedded 15-term hydrogen walkthrough; needs no input files."""
    s = h2_hamiltonian()
    h = sum_matrix(s)
    e0 = float(hermitian_eig(h).values[0])
    d = build_decomposition(h)
    enc = assemble_uh(d)
    bits = int(cfg.bits)
    routes = {}
    for method, t in (("exact", 1.0), ("taylor", 0.2), ("dc", 1.0)):
        energy, est = estimate_ground_energy(s, t=t, m=bits, method=method)
        routes[method] = {
            "t": t,
            "energy": float(energy),
            "error": float(abs(energy - e0)),
            "success_prob": float(est.success_prob),
        }
    return {
        "schema": SCHEMA,
        "command": "h2",
        "terms": len(s.terms),
        "qubits": int(s.n),
        "coefficient_norm": float(s.coefficient_one_norm()),
        "ground_energy": e0,
        "select_path": {
            "select_cnots": count_multiplexor(4, 4),
            "prepare_cnots": count_multiplexor(4, 1),
            "encoding_cnots": _gate_doc(count_select_path(s))["cnots"],
            "series_cnots": _gate_doc(count_select_path(s, extra_controls=2, copies=2))["cnots"],
        },
        "decomposition": {
            "groups": int(d.group_count()),
            "branches": len(d.terms),
            "scale": float(d.scale),
            "residual": float(reconstruction_residual(d, h)),
            "ancilla_dim": int(enc.ancilla_dim),
            "gates": _gate_doc(count_dc(d))["singles"],
            "cnots": _gate_doc(count_dc(d))["cnots"],
            "cnots_with_estimation_control": _gate_doc(count_dc(d, pea_control=True))["cnots"],
        },
        "dense_bound_cnots": _gate_doc(count_dense(h.shape[0]))["cnots"],
        "estimates": routes,
        "bits": bits,
    }


def _cmd_histogram(cfg: RunConfig) -> dict:
    doc = histogram_prob_diff(int(cfg.trials), int(cfg.iterations), int(cfg.seed))
    doc["schema"] = SCHEMA
    doc["command"] = "histogram"
    return doc


_COMMANDS = {
    "encode": _cmd_encode,
    "decompose": _cmd_decompose,
    "estimate": _cmd_estimate,
    "gates": _cmd_gates,
    "h2": _cmd_h2,
    "histogram": _cmd_histogram,
    "verify": _cmd_verify,
}


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns (exit code, JSON document)."""
    try:
        if cfg.command not in _COMMANDS:
            raise ContractError(f"unknown command {cfg.command!r}")
        cfg.validate()
        return 0, _COMMANDS[cfg.command](cfg)
    except TssimError as e:
        for cls, code in _EXIT_BY_ERROR:
            if isinstance(e, cls):
                return code, {
                    "schema": SCHEMA,
                    "error": {"type": type(e).__name__, "message": str(e), "exit": code},
                }
        return 4, {
            "schema": SCHEMA,
            "error": {"type": type(e).__name__, "message": str(e), "exit": 4},
        }


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tssim",
        description="Block-encoding circuits, divide-and-conquer unitary sums, "
        "and phase-estimation eigenvalue recovery as dense matrices.",
    )
    p.add_argument("--version", action="version", version=f"tssim {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_input=True, with_format=True):
        if with_input:
            sp.add_argument("--input", required=True, help="input file path")
        if with_format:
            sp.add_argument("--format", choices=("pauli", "dense"), default="pauli")
        sp.add_argument("--output", default=None, help="write JSON here instead of stdout")

    sp = sub.add_parser("encode", help="prepare/select encoding of a Pauli sum")
    common(sp)
    sp.add_argument("--t", type=float, default=0.0, help="also build the series encoding at this time")
    sp.add_argument("--emit-matrix", action="store_true", help="embed the full unitary")

    sp = sub.add_parser("decompose", help="divide-and-conquer unitary decomposition")
    common(sp)
    sp.add_argument("--prune-tol", type=float, default=PRUNE_TOL_DEFAULT)

    sp = sub.add_parser("estimate", help="ground-energy estimation")
    common(sp)
    sp.add_argument("--method", choices=("exact", "taylor", "dc"), default="exact")
    sp.add_argument("--t", type=float, default=1.0)
    sp.add_argument("--bits", type=int, default=16)
    sp.add_argument("--estimator", choices=("pea", "ipea"), default="pea")
    sp.add_argument("--no-correct", dest="correct", action="store_false",
                    help="skip the series modulus correction")

    sp = sub.add_parser("gates", help="closed-form gate tallies")
    common(sp)
    sp.add_argument("--method", choices=("select", "dense", "dc"), default="select")
    sp.add_argument("--extra-controls", type=int, default=0)
    sp.add_argument("--copies", type=int, default=1)
    sp.add_argument("--pea-control", action="store_true")
    sp.add_argument("--prune-tol", type=float, default=PRUNE_TOL_DEFAULT)

    sp = sub.add_parser("h2", help="embedded hydrogen-molecule walkthrough")
    common(sp, with_input=False, with_format=False)
    sp.add_argument("--bits", type=int, default=16)

    sp = sub.add_parser("histogram", help="probability-difference distribution")
    common(sp, with_input=False, with_format=False)
    sp.add_argument("--trials", type=int, default=5000)
    sp.add_argument("--iterations", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("verify", help="re-check a decompose document's reconstruction")
    common(sp, with_format=False)
    return p


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for src, dst in (
        ("input", "input_path"),
        ("format", "format"),
        ("t", "t"),
        ("bits", "bits"),
        ("method", "method"),
        ("seed", "seed"),
        ("trials", "trials"),
        ("iterations", "iterations"),
        ("prune_tol", "prune_tol"),
        ("output", "output_path"),
        ("estimator", "estimator"),
        ("correct", "correct"),
        ("extra_controls", "extra_controls"),
        ("copies", "copies"),
        ("pea_control", "pea_control"),
        ("emit_matrix", "emit_matrix"),
    ):
        if hasattr(args, src):
            setattr(cfg, dst, getattr(args, src))
    return cfg


def _emit(doc: dict, output_path: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    code, doc = run(_config_from_args(args))
    _emit(doc, getattr(args, "output", None) if code == 0 else None)
    return code


if __name__ == "__main__":
    sys.exit(main())
