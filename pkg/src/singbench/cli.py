"""Command line front end.

analyze   symbolic pass: reduced superbracket + identified condition
evaluate  numeric singularity report at one pose
serve     run the HTTP service

Exit codes: 0 ok, 2 bad input (file, schema, flags), 3 numeric degeneracy.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import (
    StructureValidationError,
    analyze_structure,
    evaluate_structure,
    report_to_dict,
)
from .brackets import InvalidInputError
from .entities import ManualEntities
from .geometry import DEFAULT_EPSILON, DegenerateGeometryError, Pose
from .robot import load_robot


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def _load(path: str):
    try:
        return load_robot(path)
    except FileNotFoundError:
        raise InvalidInputError(f"no such file: {path}")


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        structure = _load(args.file)
        manual = None
        if args.manual:
            with open(args.manual) as fh:
                manual = ManualEntities.from_dict(json.load(fh))
        result = analyze_structure(
            structure, auto_reduce=args.auto_reduce, manual=manual
        )
    except StructureValidationError as err:
        lines = ["invalid robot structure:"] + [f"  - {p}" for p in err.problems]
        return _fail("\n".join(lines), 2)
    except (InvalidInputError, json.JSONDecodeError, OSError) as err:
        return _fail(str(err), 2)

    if args.format == "json":
        print(_dump(result.to_dict()))
        return 0
    d = result.to_dict()
    cond = d["condition"]
    print(f"structure: {d['name']} ({d['kind']}, class {d['structure_class']['name']})")
    print("leg order: " + "  ".join("-".join(leg) for leg in d["leg_order"]))
    print(
        f"auto-reduce: suggested={str(d['auto_reduce']['suggested']).lower()}"
        f" applied={str(d['auto_reduce']['applied']).lower()}"
    )
    print(f"polynomial ({d['monomial_count']} monomials): {d['polynomial']}")
    print(f"condition group: {cond['group']} [{cond['verified']}]")
    print(f"statement: {cond['statement']}")
    for e in cond["entities"]:
        star = " (starred)" if e["starred"] else ""
        print(f"  {e['kind']}: {{{', '.join(e['labels'])}}}{star}")
    if cond["residual"]:
        print(f"  residual labels: {', '.join(cond['residual'])}")
    print("stages:")
    for line in d["stages"]:
        print(f"  - {line}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    try:
        structure = _load(args.file)
        values = [float(v) for v in args.pose.split(",")]
        pose = Pose.from_values(values)
        epsilon = args.epsilon if args.epsilon is not None else DEFAULT_EPSILON
        if not epsilon > 0:
            raise InvalidInputError(f"epsilon must be positive, got {epsilon}")
        analysis = analyze_structure(structure)
    except StructureValidationError as err:
        lines = ["invalid robot structure:"] + [f"  - {p}" for p in err.problems]
        return _fail("\n".join(lines), 2)
    except (InvalidInputError, ValueError, OSError) as err:
        return _fail(str(err), 2)
    try:
        report = evaluate_structure(structure, pose, epsilon, analysis=analysis)
    except DegenerateGeometryError as err:
        return _fail(f"degenerate configuration: {err}", 3)
    print(_dump(report_to_dict(report, pose)))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singbench",
        description="singularity analysis of Gough-Stewart-type parallel robots",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="symbolic singularity condition of a robot file")
    pa.add_argument("file", help="robot structure JSON file")
    pa.add_argument(
        "--auto-reduce",
        action="store_true",
        help="always search leg orders for the shortest form",
    )
    pa.add_argument("--manual", metavar="FILE", help="JSON file asserting entities")
    pa.add_argument("--format", choices=("json", "text"), default="text")
    pa.set_defaults(fn=cmd_analyze)

    pe = sub.add_parser("evaluate", help="numeric singularity report at a pose")
    pe.add_argument("file", help="robot structure JSON file")
    pe.add_argument(
        "--pose",
        required=True,
        metavar="TX,TY,TZ,QW,QX,QY,QZ",
        help="translation and unit quaternion (scalar first)",
    )
    pe.add_argument("--epsilon", type=float, default=None, help="near-singular threshold")
    pe.set_defaults(fn=cmd_evaluate)

    ps = sub.add_parser("serve", help="run the HTTP service")
    ps.add_argument("--port", type=int, default=8000)
    ps.add_argument("--host", default="127.0.0.1")
    ps.set_defaults(fn=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
