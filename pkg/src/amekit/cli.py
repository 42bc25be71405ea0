"""Command-line front end.

Every subcommand reads and writes the plain JSON / CSV formats defined by
the library modules.  Exit status is 0 on success, 1 on bad input or a
failed structural check, 2 when a numerical routine does not converge.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import analysis, catalog
from .circuit import Circuit, simulate, simulate_with_snapshots
from .errors import AmeKitError, ConvergenceError, InputError
from .graphstates import Graph, graph_to_circuit, known_graph
from .quditcompile import ame43_circuit, compile_to_qubits, decode

_NAMED_CIRCUITS = {
    "ame43_original": lambda: ame43_circuit("original"),
    "ame43_optimized": lambda: ame43_circuit("optimized"),
    **{name: (lambda n=name: catalog.named_circuit(n)) for name in catalog.named_circuit_names()},
}


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + ("" if text.endswith("\n") else "\n"))
    else:
        print(text)


def _load_graph(source: str) -> Graph:
    if source.endswith(".json") or Path(source).exists():
        if not Path(source).exists():
            raise InputError(f"no such file: {source}")
        return Graph.from_json(source)
    return known_graph(source)


def _load_circuit(path: str) -> Circuit:
    if not Path(path).exists():
        raise InputError(f"no such file: {path}")
    return Circuit.from_json(path)


def _load_state(source: str):
    path = Path(source)
    if path.exists():
        try:
            records = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid state JSON: {exc}") from exc
        return catalog.state_from_records(records)
    return catalog.reference_state(source)


def _decoded_final_state(circuit: Circuit):
    """Final state over qudits if the circuit carries an encoding, else the raw state."""
    state = simulate(circuit)
    enc = circuit.meta.get("encoding") if circuit.meta else None
    if enc:
        state, leak = decode(state, enc["qudit_dims"])
        return state, leak
    return state, 0.0


def cmd_build(args) -> int:
    if args.graph in _NAMED_CIRCUITS:
        circuit = _NAMED_CIRCUITS[args.graph]()
    else:
        if args.d is None:
            raise InputError("--d is required when building from a graph")
        circuit = graph_to_circuit(_load_graph(args.graph), args.d)
    if args.compile_qubits and any(d > 2 for d in circuit.dims):
        circuit = compile_to_qubits(circuit)
    _emit(circuit.to_json(indent=1), args.out)
    return 0


def cmd_simulate(args) -> int:
    circuit = _load_circuit(args.circuit)
    if args.snapshots:
        payload = [{"step": s, "state": catalog.state_to_records(st)} for s, st in simulate_with_snapshots(circuit)]
    else:
        payload = catalog.state_to_records(simulate(circuit))
    _emit(json.dumps(payload), args.out)
    return 0


def cmd_verify(args) -> int:
    if bool(args.circuit) == bool(args.state):
        raise InputError("give exactly one of --circuit or --state")
    leak = 0.0
    if args.circuit:
        state, leak = _decoded_final_state(_load_circuit(args.circuit))
    else:
        state = _load_state(args.state)
    parties = analysis.parse_parties(args.parties) if args.parties else None
    ok, dev = analysis.verify_ame(state, parties)
    verdict = {
        "ame": ok,
        "max_dev": dev,
        "minimal_support": analysis.minimal_support(state, parties),
    }
    if args.circuit and leak:
        verdict["encoding_leak"] = leak
    print(json.dumps(verdict))
    return 0


def cmd_majorization(args) -> int:
    circuit = _load_circuit(args.circuit)
    parties = analysis.parse_parties(args.parties) if args.parties else None
    report = analysis.majorization_analysis(circuit, parties, circuit_id=Path(args.circuit).stem)
    text = report.to_csv()
    if args.out:
        Path(args.out).write_text(text)
        print(report.summary_json())
    else:
        sys.stdout.write(text)
    return 0


def cmd_mermin(args) -> int:
    if args.settings != "xy":
        raise InputError(f"unknown settings {args.settings!r}")
    value = analysis.mermin_m5(_load_state(args.state), analysis.MerminSettings.xy())
    print(f"{value:.6f}")
    return 0


def cmd_search(args) -> int:
    circuit, report = analysis.greedy_majorizing_search(_load_graph(args.connectivity), args.d, args.max_gates)
    _emit(circuit.to_json(indent=1), args.out)
    if args.out:
        summary = report.summary()
        summary["ame"] = analysis.verify_ame(simulate(circuit))[0]
        print(json.dumps(summary))
    return 0


def cmd_catalog(args) -> int:
    if not args.state:
        print("\n".join(catalog.state_names()))
        return 0
    _emit(json.dumps(catalog.state_to_records(catalog.reference_state(args.state))), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="amekit", description="Build, simulate and analyse AME-state circuits.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="graph-state or named circuit to JSON")
    b.add_argument("--graph", required=True, help="known graph name, graph JSON file, or named circuit")
    b.add_argument("--d", type=int, help="local dimension for graph states")
    b.add_argument("--compile-qubits", action="store_true", help="lower qudit gates onto qubits")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("simulate", help="simulate a circuit JSON from |0...0>")
    s.add_argument("circuit")
    s.add_argument("--snapshots", action="store_true", help="dump the state after each entangling gate")
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify", help="AME and minimal-support check")
    v.add_argument("--circuit")
    v.add_argument("--state", help="catalog name or state JSON file")
    v.add_argument("--parties", help='site groups, e.g. "0 1,2 3,4 5,6 7"')
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("majorization", help="entanglement spectra along a circuit")
    m.add_argument("--circuit", required=True)
    m.add_argument("--parties")
    m.add_argument("--out")
    m.set_defaults(func=cmd_majorization)

    me = sub.add_parser("mermin", help="five-qubit Mermin value")
    me.add_argument("--state", required=True, help="catalog name or state JSON file")
    me.add_argument("--settings", default="xy")
    me.set_defaults(func=cmd_mermin)

    se = sub.add_parser("search", help="greedy majorization-guided graph-state search")
    se.add_argument("--connectivity", required=True, help="graph JSON file or known graph name")
    se.add_argument("--d", type=int, required=True)
    se.add_argument("--max-gates", type=int, required=True)
    se.add_argument("--out")
    se.set_defaults(func=cmd_search)

    c = sub.add_parser("catalog", help="dump a reference state (no --state lists names)")
    c.add_argument("--state")
    c.add_argument("--out")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AmeKitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
