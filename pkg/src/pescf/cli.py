"""
Command-line entry point.

Exit codes: 0 ok / Valid / AllHold, 1 Refuted / RefutedBy / invalid
model, 2 Undetermined / Vacuous, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence, TextIO

from pescf.behavior import all_traces, interleaving_lts, maximal_traces, simulate
from pescf.beliefs import BeliefBase, facts_from_trace, laws_from_model
from pescf.core import PrimeEventStructure, degree_of_concurrency, relation_of
from pescf.counterfactual import Outcome, TraceOutcome, check_over_traces, validate_counterfactual
from pescf.diagnosis import diagnose
from pescf.errors import ModelError, PesError
from pescf.formats import (
    diagnosis_to_dict,
    format_diagnosis,
    format_trace_verdict,
    format_verdict,
    lts_to_dict,
    parse_beliefs,
    parse_model,
    parse_query_file,
    parse_trace,
    trace_verdict_to_dict,
    verdict_to_dict,
)

EXIT_OK, EXIT_REFUTED, EXIT_UNDETERMINED, EXIT_USAGE = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        raise _UsageError(f"{self.prog}: error: {message}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> PrimeEventStructure:
    return parse_model(_read(path)).build()


def _emit(out: TextIO, fmt: str, data: Any, text: str) -> None:
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(text)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="output format")

    parser = _Parser(prog="pescf", description="Prime event structures and counterfactual diagnosis.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check the event-structure axioms")
    p.add_argument("model")

    p = sub.add_parser("relations", parents=[common], help="relation table or one pair")
    p.add_argument("model")
    p.add_argument("pair", nargs="*", metavar="EVENT")

    p = sub.add_parser("traces", parents=[common], help="enumerate conformant traces")
    p.add_argument("model")
    p.add_argument("--maximal", action="store_true", help="only complete runs")

    p = sub.add_parser("lts", parents=[common], help="interleaving transition system")
    p.add_argument("model")

    p = sub.add_parser("simulate", parents=[common], help="seeded random run")
    p.add_argument("model")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-steps", type=int, default=1000)

    p = sub.add_parser("degree", parents=[common], help="degree of concurrency")
    p.add_argument("model")

    p = sub.add_parser("diagnose", parents=[common], help="diagnose a failing trace")
    p.add_argument("model")
    p.add_argument("trace")
    p.add_argument("--error-label", required=True)
    p.add_argument("--beliefs", help="extra belief file")
    p.add_argument("--world", choices=("open", "closed"), default="closed")

    p = sub.add_parser("counterfactual", parents=[common], help="evaluate a counterfactual query")
    p.add_argument("model")
    p.add_argument("query")
    p.add_argument("--trace", help="observed trace; its facts join the belief base")
    p.add_argument("--beliefs", help="extra belief file")
    p.add_argument("--world", choices=("open", "closed"), default="closed")
    return parser


def _cmd_validate(args, out) -> int:
    doc = parse_model(_read(args.model))
    try:
        es = doc.build()
    except ModelError as exc:
        _emit(out, args.format, {"valid": False, "name": doc.name, "error": type(exc).__name__, "message": str(exc)},
              f"invalid: {type(exc).__name__}: {exc}\n")
        return EXIT_REFUTED
    data = {
        "valid": True,
        "name": es.name,
        "events": len(es),
        "causality": len(es.causality) - len(es),
        "conflict": len(es.conflict) // 2,
        "atoms": sorted(es.exogenous_atoms),
    }
    text = (
        f"valid: {es.name}: {len(es)} events, {data['causality']} strict causal pairs, "
        f"{data['conflict']} conflicts, atoms {{{', '.join(data['atoms'])}}}\n"
    )
    _emit(out, args.format, data, text)
    return EXIT_OK


def _cmd_relations(args, out) -> int:
    es = _load(args.model)
    if len(args.pair) not in (0, 2):
        raise _UsageError("relations takes either no events or exactly two")
    pairs = [tuple(args.pair)] if args.pair else [(a, b) for a in es.ids for b in es.ids if a != b]
    rows = [{"a": a, "b": b, "relation": relation_of(es, a, b).value} for a, b in pairs]
    _emit(out, args.format, rows, "".join(f"{r['a']} {r['b']} {r['relation']}\n" for r in rows))
    return EXIT_OK


def _cmd_traces(args, out) -> int:
    es = _load(args.model)
    traces = maximal_traces(es) if args.maximal else all_traces(es)
    _emit(out, args.format, [list(t) for t in traces], "".join(" ".join(t) + "\n" for t in traces))
    return EXIT_OK


def _cmd_lts(args, out) -> int:
    es = _load(args.model)
    lts = interleaving_lts(es)
    data = lts_to_dict(lts)
    lines = [f"states {len(lts.states)}", f"transitions {len(lts.transitions)}"]
    lines += [
        "{" + ",".join(t["source"]) + "} --" + t["event"] + "--> {" + ",".join(t["target"]) + "}"
        for t in data["transitions"]
    ]
    _emit(out, args.format, data, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_simulate(args, out) -> int:
    es = _load(args.model)
    trace = simulate(es, args.seed, args.max_steps)
    _emit(out, args.format, {"seed": args.seed, "trace": list(trace)}, "trace " + " ".join(trace) + "\n")
    return EXIT_OK


def _cmd_degree(args, out) -> int:
    es = _load(args.model)
    d = degree_of_concurrency(es)
    _emit(out, args.format, {"degree": d}, f"{d}\n")
    return EXIT_OK


def _extra_beliefs(args, es) -> BeliefBase | None:
    return parse_beliefs(_read(args.beliefs), es) if args.beliefs else None


def _cmd_diagnose(args, out) -> int:
    es = _load(args.model)
    trace = parse_trace(_read(args.trace), es)
    report = diagnose(es, trace, args.error_label, beliefs=_extra_beliefs(args, es), world=args.world)
    _emit(out, args.format, diagnosis_to_dict(report), format_diagnosis(report))
    return EXIT_OK


def _cmd_counterfactual(args, out) -> int:
    es = _load(args.model)
    doc = parse_query_file(_read(args.query), es)
    if doc.engine == "trace":
        v = check_over_traces(es, doc.antecedent, doc.consequent)
        _emit(out, args.format, trace_verdict_to_dict(v, doc.antecedent, doc.consequent),
              format_trace_verdict(v, doc.antecedent, doc.consequent))
        return {TraceOutcome.ALL_HOLD: EXIT_OK, TraceOutcome.REFUTED_BY: EXIT_REFUTED}.get(v.outcome, EXIT_UNDETERMINED)
    base = laws_from_model(es)
    if args.trace:
        base = base + facts_from_trace(es, parse_trace(_read(args.trace), es), args.world)
    extra = _extra_beliefs(args, es)
    if extra is not None:
        base = base + extra
    v = validate_counterfactual(base, doc.query)
    _emit(out, args.format, verdict_to_dict(v, doc.query), format_verdict(v, doc.query))
    return {Outcome.VALID: EXIT_OK, Outcome.REFUTED: EXIT_REFUTED}.get(v.outcome, EXIT_UNDETERMINED)


_COMMANDS = {
    "validate": _cmd_validate,
    "relations": _cmd_relations,
    "traces": _cmd_traces,
    "lts": _cmd_lts,
    "simulate": _cmd_simulate,
    "degree": _cmd_degree,
    "diagnose": _cmd_diagnose,
    "counterfactual": _cmd_counterfactual,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except ModelError as exc:
        err.write(f"invalid model: {type(exc).__name__}: {exc}\n")
        return EXIT_REFUTED
    except PesError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
