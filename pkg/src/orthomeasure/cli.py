"""Batch command-line front end.

Commands read lattices (and optionally groups, generating sets, partial
measures) from the documented JSON schemas and print a deterministic report:
the JSON form is the contract, the text form is a human summary of the same
data.  Exit codes: 0 success, 1 mathematical negative (the report is still
printed), 2 input or schema error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .cones import positive_cone, state_polytope
from .errors import (
    DomainMismatchError,
    LatticeInputError,
    NotAnAutomorphismError,
    OrthomeasureError,
    ResourceCapError,
    SchemaError,
)
from .groemer import (
    classical_groemer_extend,
    load_generating_set,
    load_partial_measure,
    orth_groemer_extend,
)
from .indicators import check_indicator_identities
from .lattice import (
    DEFAULT_MAX_ELEMENTS,
    atoms,
    is_atomistic,
    is_boolean,
    is_distributive,
    is_orthomodular,
    load_lattice,
    verify_ortho,
)
from .measures import (
    brute_force_measures,
    coinvariants,
    measure_basis,
    measure_module,
    parse_domain,
)
from .symmetry import (
    DEFAULT_MAX_GROUP,
    automorphism_group,
    generating_subset,
    load_group,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _digest(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _check_result_dict(result) -> dict:
    out = {"ok": result.ok}
    if result.witness is not None:
        out["witness"] = list(result.witness)
    return out


def _load_action(args, lattice):
    if getattr(args, "full_aut", False):
        return automorphism_group(lattice, args.max_group)
    if getattr(args, "group", None):
        return load_group(args.group, lattice, args.max_group)
    return None


def _render_text(value, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def _emit(args, command, inputs, report) -> None:
    envelope = {
        "tool": "orthomeasure",
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "report": report,
    }
    if args.format == "json":
        print(json.dumps(envelope, indent=2))
    else:
        print("\n".join(_render_text(envelope)))


def _measure_json(measure) -> dict:
    return measure.to_json_dict()


def _cmd_check(args) -> int:
    lattice = load_lattice(args.lattice, args.max_elements)
    verification = verify_ortho(lattice)
    omod = is_orthomodular(lattice)
    dist = is_distributive(lattice)
    atomistic = is_atomistic(lattice)
    report = {
        "name": lattice.name,
        "elements": len(lattice),
        "bottom": lattice.bottom,
        "top": lattice.top,
        "orthocomplemented": {
            name: _check_result_dict(res) for name, res in verification.checks.items()
        },
        "orthomodular": _check_result_dict(omod),
        "distributive": _check_result_dict(dist),
        "boolean": is_boolean(lattice),
        "atomistic": _check_result_dict(atomistic),
        "atoms": list(atoms(lattice)),
    }
    _emit(args, "check", {"lattice": _digest(args.lattice)}, report)
    return EXIT_OK if verification.ok and omod.ok else EXIT_NEGATIVE


def _cmd_aut(args) -> int:
    lattice = load_lattice(args.lattice, args.max_elements)
    action = automorphism_group(lattice, args.max_group)
    report = {
        "order": action.order,
        "generators": [g.mapping for g in generating_subset(action)],
    }
    _emit(args, "aut", {"lattice": _digest(args.lattice)}, report)
    return EXIT_OK


def _cmd_module(args) -> int:
    lattice = load_lattice(args.lattice, args.max_elements)
    action = _load_action(args, lattice)
    module = measure_module(lattice)
    if action is not None:
        module = coinvariants(module, action)
    report = module.report_dict()
    report["variant"] = module.variant
    _emit(args, "module", {"lattice": _digest(args.lattice)}, report)
    return EXIT_OK


def _cmd_measures(args, invariant: bool) -> int:
    lattice = load_lattice(args.lattice, args.max_elements)
    action = _load_action(args, lattice)
    if invariant and action is None:
        raise SchemaError("invariant-measures needs --group or --full-aut")
    domain = parse_domain(args.domain)
    basis = measure_basis(lattice, domain, action)
    report = {
        "domain": domain.label,
        "kind": "generators" if domain.kind == "Zmod" else "basis",
        "count": len(basis),
        "measures": [_measure_json(m) for m in basis],
    }
    command = "invariant-measures" if invariant else "measures"
    _emit(args, command, {"lattice": _digest(args.lattice)}, report)
    return EXIT_OK


def _cmd_cone(args) -> int:
    lattice = load_lattice(args.lattice, args.max_elements)
    action = _load_action(args, lattice)
    cone = positive_cone(lattice, action)
    report = {
        "dimension": cone.dim,
        "rays": [list(r) for r in cone.rays],
        "lineality": [list(l) for l in cone.lineality],
    }
    _emit(args, "cone", {"lattice": _digest(args.lattice)}, report)
    return EXIT_OK


def _cmd_states(args) -> int:
    lattice = load_lattice(args.lattice, args.max_elements)
    action = _load_action(args, lattice)
    polytope = state_polytope(lattice, action)
    vertices = [
        {
            "coords": [str(c) for c in v.coords],
            "values": {e: str(v.values[e]) for e in lattice.elements},
        }
        for v in polytope.vertices
    ]
    report = {"count": len(vertices), "vertices": vertices}
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(",".join(lattice.elements) + "\n")
            for v in polytope.vertices:
                fh.write(",".join(str(v.values[e]) for e in lattice.elements) + "\n")
    _emit(args, "states", {"lattice": _digest(args.lattice)}, report)
    return EXIT_OK


def _cmd_extend(args) -> int:
    lattice = load_lattice(args.lattice, args.max_elements)
    action = _load_action(args, lattice)
    domain = parse_domain(args.domain)
    generating = load_generating_set(args.generating_set, lattice)
    partial = load_partial_measure(args.partial, domain)
    if action is None:
        measure = classical_groemer_extend(lattice, generating.members, partial)
        mode = "classical"
    else:
        measure = orth_groemer_extend(lattice, action, generating.members, partial)
        mode = "invariant"
    report = {"mode": mode, "measure": _measure_json(measure)}
    _emit(args, "extend", {"lattice": _digest(args.lattice)}, report)
    return EXIT_OK


def _cmd_boolean_check(args) -> int:
    lattice = load_lattice(args.lattice, args.max_elements)
    result = check_indicator_identities(lattice)
    report = {"identities": _check_result_dict(result)}
    _emit(args, "boolean-check", {"lattice": _digest(args.lattice)}, report)
    return EXIT_OK if result.ok else EXIT_NEGATIVE


def _cmd_oracle(args) -> int:
    lattice = load_lattice(args.lattice, args.max_elements)
    domain = parse_domain(args.domain)
    if args.range:
        lo, _, hi = args.range.partition(":")
        try:
            values = range(int(lo), int(hi) + 1)
        except ValueError as exc:
            raise SchemaError(f"bad --range {args.range!r} (use LO:HI)") from exc
    elif domain.kind == "Zmod":
        values = range(domain.modulus)
    else:
        raise SchemaError("--range LO:HI is required for domains z and q")
    measures = brute_force_measures(lattice, values, domain)
    report = {
        "domain": domain.label,
        "count": len(measures),
        "measures": [_measure_json(m) for m in measures],
    }
    _emit(args, "oracle", {"lattice": _digest(args.lattice)}, report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthomeasure",
        description="measure spaces and state polytopes of finite "
        "orthocomplemented lattices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group=False, domain=False):
        p.add_argument("lattice", help="lattice JSON file")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
        if group:
            src = p.add_mutually_exclusive_group()
            src.add_argument("--group", help="group JSON file")
            src.add_argument("--full-aut", action="store_true",
                             help="use the full automorphism group")
            p.add_argument("--max-group", type=int, default=DEFAULT_MAX_GROUP)
        if domain:
            p.add_argument("--domain", default="q", help="z, q, or z/<m>")

    common(sub.add_parser("check", help="axioms and classification flags"))
    p = sub.add_parser("aut", help="automorphism group order and generators")
    common(p)
    p.add_argument("--max-group", type=int, default=DEFAULT_MAX_GROUP)
    common(sub.add_parser("module", help="rank and torsion of the measure group"),
           group=True)
    common(sub.add_parser("measures", help="measure basis"), group=True, domain=True)
    common(sub.add_parser("invariant-measures", help="invariant measure basis"),
           group=True, domain=True)
    common(sub.add_parser("cone", help="extreme rays of the positive cone"),
           group=True)
    p = sub.add_parser("states", help="vertices of the state polytope")
    common(p, group=True)
    p.add_argument("--csv", help="also write the vertices as CSV")
    p = sub.add_parser("extend", help="extend a partial measure from a file")
    common(p, group=True, domain=True)
    p.add_argument("--generating-set", required=True, help="generating set JSON file")
    p.add_argument("--partial", required=True, help="partial measure JSON file")
    common(sub.add_parser("boolean-check", help="indicator identity suite"))
    p = sub.add_parser("oracle", help="brute-force measure enumeration")
    common(p, domain=True)
    p.add_argument("--range", help="value range LO:HI (defaults to 0..m-1 mod m)")
    return parser


_HANDLERS = {
    "check": _cmd_check,
    "aut": _cmd_aut,
    "module": _cmd_module,
    "measures": lambda args: _cmd_measures(args, invariant=False),
    "invariant-measures": lambda args: _cmd_measures(args, invariant=True),
    "cone": _cmd_cone,
    "states": _cmd_states,
    "extend": _cmd_extend,
    "boolean-check": _cmd_boolean_check,
    "oracle": _cmd_oracle,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ResourceCapError as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}))
        return EXIT_CAP
    except (SchemaError, LatticeInputError, DomainMismatchError,
            NotAnAutomorphismError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}))
        return EXIT_INPUT
    except OrthomeasureError as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}))
        return EXIT_NEGATIVE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
