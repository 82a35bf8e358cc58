"""Command-line interface.

Every command prints one JSON envelope on stdout:
``{command, inputs, result, timing_ms, version}``.  Errors print a
single JSON line on stderr.  Exit codes: 0 pass, 1 verification failed,
2 bad input or failed precondition, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .cosets import SCOPES, verify_equivalence_condition
from .errors import MalformedInputError, PreadmissibleError, ResourceLimitError
from .gassmann import gassmann_equivalent
from .groups import PermGroup, generate, parse_generators, read_group_file
from .padic import (
    KUMMER_COMPLETIONS,
    SHIFTED_COMPLETIONS,
    REALIZABILITY_TARGET,
    AbelianPGroupShape,
    LocalFieldDescriptor,
    preadmissibility_witness_compare,
    verify_factorizations,
)
from .perm import format_cycles
from .suite import FAULTS, run_claims
from .wreath import MATERIALIZE_DEGREE, sylow_generators

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
BUILTIN_PREFIX = "builtin:"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInputError(message)


def _load_group(source: str) -> tuple[PermGroup, str]:
    if source.startswith(BUILTIN_PREFIX):
        name = source[len(BUILTIN_PREFIX) :]
        res = resources.files("preadmissible").joinpath(f"data/{name}.group")
        if not res.is_file():
            raise MalformedInputError(f"no built-in group named {name!r}")
        text = res.read_text()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise MalformedInputError(f"cannot read group file {source!r}: {exc.strerror}") from None
    degree, gens = read_group_file(text)
    return generate(degree, gens), text


def _subgroup(G: PermGroup, text: str):
    return G.subgroup(parse_generators(text, G.degree))


def cmd_sylow(args) -> tuple[dict, dict, int]:
    ws = sylow_generators(args.l, args.n)
    materialized = ws.degree <= MATERIALIZE_DEGREE
    order = ws.group().order if materialized else ws.expected_order
    if materialized and order != ws.expected_order:
        raise RuntimeError(f"generated order {order} differs from {ws.expected_order}")
    text = ws.group_file()
    if args.out:
        Path(args.out).write_text(text)
    result = {
        "degree": ws.degree,
        "order": order,
        "materialized": materialized,
        "generators": [format_cycles(a) for a in ws.generators],
        "out": args.out,
    }
    return {"l": args.l, "n": args.n, "out": args.out}, result, EXIT_PASS


def cmd_verify(args) -> tuple[dict, dict, int]:
    G, _ = _load_group(args.group)
    H = _subgroup(G, args.subgroup)
    verdict = verify_equivalence_condition(G, H, scope=args.scope, jobs=args.jobs)
    result = {"group_order": G.order, "subgroup_order": H.order, **verdict.to_json()}
    inputs = {"group": args.group, "subgroup": args.subgroup, "scope": args.scope, "jobs": args.jobs}
    return inputs, result, EXIT_PASS if verdict.passed else EXIT_FAIL


def cmd_gassmann(args) -> tuple[dict, dict, int]:
    G, _ = _load_group(args.group)
    H = _subgroup(G, args.h)
    H2 = _subgroup(G, args.h2)
    report = gassmann_equivalent(G, H, H2)
    result = {"group_order": G.order, "orders": [H.order, H2.order], **report.to_json()}
    return {"group": args.group, "h": args.h, "h2": args.h2}, result, EXIT_PASS


def _descriptors(path: Optional[str], default) -> tuple:
    if path is None:
        return tuple(default)
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, list):
        raise MalformedInputError(f"{path}: expected a list of descriptors")
    return tuple(LocalFieldDescriptor.from_json(d) for d in data)


def _shape(text: str) -> AbelianPGroupShape:
    """'16^10' or '16^17,2' style shapes."""
    factors = []
    for part in text.split(","):
        base, _, exp = part.strip().partition("^")
        try:
            factors += [int(base)] * (int(exp) if exp else 1)
        except ValueError:
            raise MalformedInputError(f"bad shape component {part!r}") from None
    return AbelianPGroupShape(factors)


def cmd_padic(args) -> tuple[dict, dict, int]:
    check = verify_factorizations(args.m, args.precision)
    first = _descriptors(args.k_fields, KUMMER_COMPLETIONS)
    second = _descriptors(args.l_fields, SHIFTED_COMPLETIONS)
    target = _shape(args.target) if args.target else REALIZABILITY_TARGET
    cmp = preadmissibility_witness_compare(first, second, target, args.exponent)
    result = {
        "factorization": check.to_json(),
        "realizability": cmp.to_json(),
        "fields": [[f.to_json() for f in first], [f.to_json() for f in second]],
    }
    inputs = {
        "m": args.m,
        "precision": args.precision,
        "exponent": args.exponent,
        "target": str(target),
        "k_fields": args.k_fields,
        "l_fields": args.l_fields,
    }
    ok = check.unshifted and check.shifted
    return inputs, result, EXIT_PASS if ok else EXIT_FAIL


def cmd_suite(args) -> tuple[dict, dict, int]:
    results = run_claims(args.filter, args.inject_fault)
    if not results:
        raise MalformedInputError(f"no claims match filter {args.filter!r}")
    for r in results:
        print(r.line(), file=sys.stderr if args.format == "json" else sys.stdout)
    ok = all(r.passed for r in results)
    result = {
        "claims": [r.to_json() for r in results],
        "passed": sum(r.passed for r in results),
        "total": len(results),
    }
    return {"filter": args.filter, "inject_fault": args.inject_fault}, result, EXIT_PASS if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="preadmissible", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sylow", help="write generators of the Sylow l-subgroup of S_{l^n}")
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sylow)

    v = sub.add_parser("verify", help="check core triviality and S(D,H) > 1 over candidates D")
    v.add_argument("--group", required=True, help=f"group file, or {BUILTIN_PREFIX}NAME")
    v.add_argument("--subgroup", required=True, help="';'-separated generators in cycle notation")
    v.add_argument("--scope", choices=SCOPES, default=SCOPES[0])
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gassmann", help="compare two subgroups for Gassmann equivalence")
    g.add_argument("--group", required=True)
    g.add_argument("--h", required=True)
    g.add_argument("--h2", required=True)
    g.set_defaults(func=cmd_gassmann)

    pa = sub.add_parser("padic", help="2-adic factorization and realizability checks")
    psub = pa.add_subparsers(dest="padic_command", required=True, parser_class=_Parser)
    pv = psub.add_parser("verify")
    pv.add_argument("--m", type=int, required=True)
    pv.add_argument("--precision", type=int, default=40)
    pv.add_argument("--exponent", type=int, default=16)
    pv.add_argument("--target", help="abelian shape such as 16^10 or 16^9,2")
    pv.add_argument("--k-fields", help="JSON list of {label, degree, roots_of_unity}")
    pv.add_argument("--l-fields", help="JSON list of {label, degree, roots_of_unity}")
    pv.set_defaults(func=cmd_padic)

    ps = sub.add_parser("paper-suite", help="run every reproducible claim")
    ps.add_argument("--filter", help="tag (s8, s9, s4, s5, census, cosets, gassmann, padic, inequality) or claim name")
    ps.add_argument("--inject-fault", nargs="?", const=FAULTS[0], choices=FAULTS)
    ps.set_defaults(func=cmd_suite)
    return p


def _render_text(envelope: dict) -> str:
    lines = [f"{envelope['command']} (version {envelope['version']})"]

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        else:
            lines.append(f"  {prefix}: {json.dumps(value)}")

    walk("", envelope["result"])
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    start = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        inputs, result, code = args.func(args)
    except PreadmissibleError as exc:
        code = EXIT_RESOURCE if isinstance(exc, ResourceLimitError) else EXIT_INPUT
        print(json.dumps({"error": exc.kind, "message": str(exc)}), file=sys.stderr)
        return code
    command = args.command if args.command != "padic" else "padic verify"
    envelope = {
        "command": command,
        "inputs": inputs,
        "result": result,
        "timing_ms": round((time.perf_counter() - start) * 1000, 3),
        "version": __version__,
    }
    if args.format == "text":
        print(_render_text(envelope))
    else:
        print(json.dumps(envelope, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
