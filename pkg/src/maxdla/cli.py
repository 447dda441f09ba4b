"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 size refusal, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .core import Digraph, WeightedGraph, arrangement_value, complement, levels, positions, signature
from .errors import InputError, SizeLimitError, VerificationError
from .formats import (
    Instance,
    looks_like_dimacs,
    parse_2cnf,
    parse_instance,
    serialize_digraph,
)
from .oracle import MAXDLA_LIMIT, brute_maxdicut, brute_maxdla, cut_profile
from .relations import (
    assignment_from_dicut,
    brute_max2sat,
    check_bounds,
    dicut_from_assignment,
    dicut_to_dla,
    max2sat_to_dicut,
    padded_maxdla,
    sandwich_arrangement,
)
from .solvers import delta2_arrangement, detect_class, tournament_arrangement, transitive_dag_arrangement
from .tree import DEFAULT_MAX_DEGREE, maxdla_forest, minla_complement

EXIT_OK, EXIT_INPUT, EXIT_REFUSED, EXIT_FAILED = 0, 2, 3, 4
METHODS = ("auto", "oracle", "tree", "tournament", "tdag", "delta2")
_CLASS_METHOD = {
    "tournament": "tournament",
    "transitive_dag": "tdag",
    "delta2": "delta2",
    "oriented_forest": "tree",
    "general": "oracle",
}


def _arrangement_fields(inst: Instance, arr) -> dict:
    return {
        "order": [inst.label(v) for v in arr],
        "positions": positions(arr),
    }


def cmd_value(inst: Instance, order: list[str]) -> dict:
    D = inst.digraph
    arr = tuple(inst.vertex(tok) for tok in order)
    return {
        "problem": "value",
        "value": arrangement_value(D, arr),
        **_arrangement_fields(inst, arr),
        "signature": list(signature(D, arr)),
        "levels": list(levels(D, arr)),
    }


def _run_method(D: Digraph, method: str, limit: int, max_degree: int):
    if method == "oracle":
        value, arr = brute_maxdla(D, limit)
        return arr, value
    if method == "tree":
        value, arr = maxdla_forest(D, max_degree)
        return arr, value
    if method == "tournament":
        return tournament_arrangement(D)
    if method == "tdag":
        return transitive_dag_arrangement(D)
    if method == "delta2":
        return delta2_arrangement(D)
    raise InputError(f"unknown method {method!r}")


def cmd_solve(inst: Instance, method: str = "auto", limit: int = MAXDLA_LIMIT,
              max_degree: int = DEFAULT_MAX_DEGREE) -> dict:
    D = inst.digraph
    detected = detect_class(D)
    chosen = _CLASS_METHOD[detected] if method == "auto" else method
    try:
        arr, value = _run_method(D, chosen, limit, max_degree)
    except SizeLimitError:
        if method != "auto" or chosen != "tree":
            raise
        chosen = "oracle"
        arr, value = _run_method(D, chosen, limit, max_degree)
    sig = signature(D, arr)
    recomputed = arrangement_value(D, arr)
    if recomputed != value or sum(sig) != value:
        raise VerificationError(f"{chosen} reported {value} but the arrangement evaluates to {recomputed}")
    return {
        "problem": "maxdla",
        "class": detected,
        "method": chosen,
        "value": value,
        **_arrangement_fields(inst, arr),
        "signature": list(sig),
        "verified": True,
    }


def cmd_dicut(inst: Instance, limit: int = 20) -> dict:
    cert = brute_maxdicut(inst.digraph, limit)
    cert.check(inst.digraph)
    return {
        "problem": "maxdicut",
        "value": cert.size,
        "source_side": [inst.label(v) for v in cert.source_side],
        "sink_side": [inst.label(v) for v in cert.sink_side],
        "verified": True,
    }


def cmd_reduce(kind: str, text: str) -> dict:
    if kind == "2sat-dicut":
        phi = parse_2cnf(text)
        red = max2sat_to_dicut(phi)
        var_map = {f"x{v + 1}": u for v, u in red.var_vertex.items()}
        gadget_map = {f"clause{i + 1}": g for i, g in red.gadget_vertices.items()}
    elif kind == "dicut-dla":
        red = dicut_to_dla(parse_instance(text).digraph)
        var_map = {str(v): u for v, u in red.var_vertex.items()}
        gadget_map = {"padding": [min(red.gadget_vertices.values()), max(red.gadget_vertices.values())]}
    else:
        raise InputError(f"unknown reduction {kind!r}")
    return {
        "problem": "reduce",
        "reduction": kind,
        "threshold": f"k*{red.threshold_factor}",
        "threshold_map": red.threshold_map,
        "var_vertex": var_map,
        "gadget_vertices": gadget_map,
        "instance": serialize_digraph(red.digraph),
    }


def _verify_gadgets(text: str, samples: int, seed: int) -> dict:
    phi = parse_2cnf(text)
    red = max2sat_to_dicut(phi)
    k_star, _ = brute_max2sat(phi)
    cut = brute_maxdicut(red.digraph)
    ok = cut.size == 2 * k_star and phi.satisfied(assignment_from_dicut(red, phi, cut)) * 2 >= cut.size
    rng = random.Random(seed)
    for _ in range(samples):
        tau = tuple(rng.random() < 0.5 for _ in range(phi.num_vars))
        ok &= dicut_from_assignment(red, phi, tau).size == 2 * phi.satisfied(tau)
    return {"reduction": "2sat-dicut", "max_satisfiable": k_star, "maxdicut": cut.size,
            "sampled_assignments": samples, "pass": bool(ok)}


def _verify_padding(D: Digraph) -> dict:
    red = dicut_to_dla(D)
    cut = brute_maxdicut(D)
    t, pad = cut.size, red.threshold_factor
    best = padded_maxdla(D, pad)
    sandwich = arrangement_value(red.digraph, sandwich_arrangement(red, cut))
    ok = sandwich >= t * pad and best >= t * pad and best < (t + 1) * pad
    return {"reduction": "dicut-dla", "maxdicut": t, "padding": pad, "maxdla_padded": best,
            "sandwich_value": sandwich, "threshold_t": t * pad, "threshold_t_plus_1": (t + 1) * pad,
            "pass": bool(ok)}


def cmd_verify(kind: str, text: str, order: list[str] | None = None, limit: int = MAXDLA_LIMIT,
               samples: int = 100, seed: int = 0) -> dict:
    if kind == "reduction":
        report = _verify_gadgets(text, samples, seed) if looks_like_dimacs(text) else \
            _verify_padding(parse_instance(text).digraph)
    elif kind == "bounds":
        r = check_bounds(parse_instance(text).digraph, limit)
        report = {"t": r.t, "maxdla": r.maxdla, "lower": r.lower, "upper": r.upper, "pass": r.holds}
    elif kind == "maximum":
        inst = parse_instance(text)
        D = inst.digraph
        if order:
            arr = tuple(inst.vertex(tok) for tok in order)
        else:
            arr = tuple(inst.vertex(tok) for tok in cmd_solve(inst, limit=limit)["order"])
        sig, profile = signature(D, arr), cut_profile(D)
        report = {**_arrangement_fields(inst, arr), "signature": list(sig),
                  "cut_profile": list(profile), "pass": sig == profile}
    else:
        raise InputError(f"unknown verification {kind!r}")
    return {"problem": "verify", "kind": kind, **report}


def cmd_complement(inst: Instance) -> dict:
    return {"problem": "complement", "instance": serialize_digraph(complement(inst.digraph), inst.names)}


def cmd_minla_complement(inst: Instance, max_degree: int = DEFAULT_MAX_DEGREE) -> dict:
    D = inst.digraph
    edges = {}
    for t, h in D.arcs:
        key = (min(t, h), max(t, h))
        if key in edges or D.arcs[(t, h)] != 1:
            raise InputError(f"edge {key} listed more than once; MinLA takes a simple graph")
        edges[key] = 1
    value, arr = minla_complement(WeightedGraph(D.n, edges), max_degree)
    return {"problem": "minla", "value": value, **_arrangement_fields(inst, arr), "verified": True}


# -- output -----------------------------------------------------------------


def _emit(record: dict, fmt: str, out) -> None:
    if fmt == "records":
        out.write(json.dumps(record, sort_keys=False) + "\n")
        return
    instance = record.pop("instance", None)
    for key, val in record.items():
        if isinstance(val, (list, tuple)):
            val = " ".join(str(x) for x in val)
        elif isinstance(val, dict):
            val = ", ".join(f"{k}->{v}" for k, v in val.items())
        elif isinstance(val, bool):
            val = "yes" if val else "no"
        out.write(f"{key}: {val}\n")
    if instance is not None:
        out.write(instance)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default="text",
                        help="human-readable text or one JSON record per line")
    common.add_argument("--limit", type=int, default=MAXDLA_LIMIT, help="oracle size cap (vertices)")
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE,
                        help="degree bound for the forest solver")

    parser = argparse.ArgumentParser(prog="maxdla", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("value", parents=[common], help="evaluate an arrangement")
    p.add_argument("instance")
    p.add_argument("--order", required=True, help="comma-separated vertices, first to last")

    p = sub.add_parser("solve", parents=[common], help="maximum directed linear arrangement")
    p.add_argument("instance")
    p.add_argument("--method", choices=METHODS, default="auto")

    p = sub.add_parser("dicut", parents=[common], help="maximum directed cut (exhaustive)")
    p.add_argument("instance")

    p = sub.add_parser("reduce", parents=[common], help="run a reduction")
    p.add_argument("kind", choices=("2sat-dicut", "dicut-dla"))
    p.add_argument("instance")
    p.add_argument("-o", "--output", help="write the produced instance here instead of stdout")

    p = sub.add_parser("verify", parents=[common], help="check bounds, maximality or a reduction")
    p.add_argument("kind", choices=("bounds", "maximum", "reduction"))
    p.add_argument("instance")
    p.add_argument("--order", help="arrangement to check (verify maximum)")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled assignments")
    p.add_argument("--samples", type=int, default=100)

    p = sub.add_parser("complement", parents=[common], help="complement of a simple digraph")
    p.add_argument("instance")

    p = sub.add_parser("minla-complement", parents=[common],
                       help="MinLA of a graph whose complement is a bounded-degree forest")
    p.add_argument("instance")
    return parser


def _split(order: str | None) -> list[str] | None:
    return [tok for tok in order.replace(",", " ").split()] if order else None


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        text = _read(args.instance)
        if args.command == "value":
            record = cmd_value(parse_instance(text), _split(args.order))
        elif args.command == "solve":
            record = cmd_solve(parse_instance(text), args.method, args.limit, args.max_degree)
        elif args.command == "dicut":
            record = cmd_dicut(parse_instance(text), max(args.limit, 20))
        elif args.command == "reduce":
            record = cmd_reduce(args.kind, text)
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(record.pop("instance"))
        elif args.command == "verify":
            record = cmd_verify(args.kind, text, _split(args.order), args.limit, args.samples, args.seed)
        elif args.command == "complement":
            record = cmd_complement(parse_instance(text))
        else:
            record = cmd_minla_complement(parse_instance(text), args.max_degree)
    except SizeLimitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    _emit(record, args.format, out)
    if record.get("pass") is False:
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
