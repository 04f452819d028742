"""Command-line interface emitting machine-readable reports.

Exit codes: 0 success, 1 verification failure (a checked property does not
hold), 2 usage or input error.  JSON output on stdout is byte-identical for
identical inputs; timing goes to stderr.
"""

import argparse
import json
import sys
import time

from . import bondal as bondal_mod
from . import cohomology as cohomology_mod
from . import divisor as divisor_mod
from . import fan as fan_mod
from . import frobenius as frobenius_mod
from .fan import Fan, InvalidSpec, build_named, poincare_polynomial, validate


class InputError(Exception):
    """Bad file, descriptor, or flag combination: exit code 2."""


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="toricsplit",
        description="Exact toric fans, Frobenius splittings, wall relations, "
                    "and exceptional collections.")

    def add_common(p, fan_source=True, divisor=False, collection=False):
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--threads", type=int, default=1,
                       help="cap on internal parallelism (computation is "
                            "single-threaded; accepted for compatibility)")
        if fan_source:
            p.add_argument("--variety", help="descriptor such as P:2, dP:3, "
                                             "Xd:3, F:2, or products A*B")
            p.add_argument("--fan", help="path to a fan JSON file")
        if divisor:
            p.add_argument("--divisor", help="path to a divisor JSON file "
                                             "({\"coeffs\": [...]})")
        if collection:
            p.add_argument("--collection", help="path to a collection JSON "
                                                "file ({\"bundles\": [[...]]})")

    sub = parser.add_subparsers(dest="command", required=True)

    variety = sub.add_parser("variety", help="build and inspect named varieties")
    vsub = variety.add_subparsers(dest="action", required=True)
    for action in ("info", "export"):
        p = vsub.add_parser(action)
        p.add_argument("descriptor", nargs="?",
                       help="variety descriptor; alternatively pass --fan")
        add_common(p, fan_source=False)
        p.add_argument("--fan", help="path to a fan JSON file")

    frob = sub.add_parser("frobenius", help="Frobenius pushforward splittings")
    fsub = frob.add_subparsers(dest="action", required=True)
    for action in ("split", "verify"):
        p = fsub.add_parser(action)
        add_common(p, divisor=True)
        p.add_argument("--p", type=int, default=5)
        p.add_argument("--base-cone", type=int, default=0, dest="base_cone")
        if action == "split":
            p.add_argument("--no-stabilization-check", action="store_true",
                           help="skip the class-set comparison against p+2")

    bond = sub.add_parser("bondal", help="wall relations and Bondal's criterion")
    bsub = bond.add_subparsers(dest="action", required=True)
    p = bsub.add_parser("check")
    add_common(p)

    cohom = sub.add_parser("cohomology", help="line bundle cohomology")
    csub = cohom.add_subparsers(dest="action", required=True)
    p = csub.add_parser("compute")
    add_common(p, divisor=True)
    p.add_argument("--box", type=int, default=None,
                   help="fixed degree-box radius instead of the adaptive scan")

    coll = sub.add_parser("collection", help="exceptional collections")
    osub = coll.add_subparsers(dest="action", required=True)
    for action in ("verify", "order"):
        p = osub.add_parser(action)
        add_common(p, collection=True)
        p.add_argument("--box", type=int, default=None)
    p = osub.add_parser("product")
    add_common(p, collection=True)
    p.add_argument("--variety2", help="descriptor of the second factor")
    p.add_argument("--fan2", help="fan JSON file of the second factor")
    p.add_argument("--collection2", help="collection file of the second factor")

    return parser


def _load_json(path, what):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} file {path} is not valid JSON: {exc}") from exc


def _load_fan(args, variety_attr="variety", fan_attr="fan"):
    descriptor = getattr(args, variety_attr, None)
    path = getattr(args, fan_attr, None)
    if (descriptor is None) == (path is None):
        label = ("a variety descriptor" if variety_attr == "descriptor"
                 else f"--{variety_attr}")
        raise InputError(f"exactly one of {label} and --{fan_attr} is required")
    if descriptor is not None:
        try:
            return build_named(descriptor)
        except (InvalidSpec, fan_mod.ConstructionFailed) as exc:
            raise InputError(str(exc)) from exc
    data = _load_json(path, "fan")
    try:
        fan = Fan.from_json_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad fan file {path}: {exc}") from exc
    report = validate(fan)
    if not report.ok:
        raise InputError(f"fan in {path} is not smooth and complete: "
                         f"{'; '.join(report.messages)}")
    return fan


def _load_divisor(args, fan):
    path = getattr(args, "divisor", None)
    if path is None:
        return tuple(0 for _ in fan.rays)
    data = _load_json(path, "divisor")
    try:
        coeffs = tuple(int(x) for x in data["coeffs"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad divisor file {path}: {exc}") from exc
    if len(coeffs) != len(fan.rays):
        raise InputError(f"divisor has {len(coeffs)} coefficients, "
                         f"fan has {len(fan.rays)} rays")
    return coeffs


def _load_collection(args, fan, attr="collection"):
    path = getattr(args, attr, None)
    if path is None:
        raise InputError(f"--{attr} is required")
    data = _load_json(path, "collection")
    try:
        bundles = [tuple(int(x) for x in b) for b in data["bundles"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad collection file {path}: {exc}") from exc
    for b in bundles:
        if len(b) != len(fan.rays):
            raise InputError(f"bundle {list(b)} does not match the fan's "
                             f"{len(fan.rays)} rays")
    return bundles


def _inputs_echo(args):
    skip = {"command", "action", "format", "threads"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None:
            continue
        out[key] = value
    return out


# ---------------------------------------------------------------------------
# command handlers: return (result dict, exit status)


def _cmd_variety(args):
    fan = _load_fan(args, variety_attr="descriptor")
    if args.action == "export":
        return fan.to_json_dict(), 0
    poly = poincare_polynomial(fan)
    info = {
        "descriptor": args.descriptor,
        "dim": fan.dim,
        "rays": len(fan.rays),
        "max_cones": len(fan.max_cones),
        "picard_rank": divisor_mod.picard_rank(fan),
        "fano": divisor_mod.is_fano(fan),
        "euler_characteristic": poly.euler_characteristic,
    }
    return info, 0


def _split_payload(result):
    classes = [{"class": list(c), "multiplicity": mult, "representative": list(rep)}
               for c, mult, rep in result.sorted_items()]
    return {"p": result.p, "n": result.fan.dim, "classes": classes}


def _cmd_frobenius(args):
    fan = _load_fan(args)
    div = _load_divisor(args, fan)
    if args.p < 1:
        raise InputError(f"--p must be >= 1, got {args.p}")
    if not 0 <= args.base_cone < len(fan.max_cones):
        raise InputError(f"--base-cone must be in [0, {len(fan.max_cones)})")
    result = frobenius_mod.thomsen_split(fan, div, args.p, args.base_cone)
    if args.action == "split":
        if not args.no_stabilization_check and args.p >= 2:
            stable = frobenius_mod.stabilization_check(fan, div, (args.p, args.p + 2))
            if not stable:
                print(f"warning: splitting class set differs between "
                      f"p={args.p} and p={args.p + 2}", file=sys.stderr)
        return _split_payload(result), 0
    report = frobenius_mod.verify_splitting_invariants(result)
    payload = {
        "multiplicity_ok": report.multiplicity_ok,
        "c1_ok": report.c1_ok,
        "base_cone_ok": report.base_cone_ok,
        "messages": list(report.messages),
    }
    return payload, 0 if report.ok else 1


def _cmd_bondal(args):
    fan = _load_fan(args)
    verdict = bondal_mod.bondal_criterion(fan)
    violations = [{
        "rays": list(rel.wall.rays),
        "u_plus": rel.wall.u_plus,
        "u_minus": rel.wall.u_minus,
        "coeffs": list(rel.coeffs),
    } for rel in verdict.violations]
    payload = {"pass": verdict.passed, "walls": len(verdict.relations),
               "violations": violations}
    return payload, 0 if verdict.passed else 1


def _cmd_cohomology(args):
    fan = _load_fan(args)
    div = _load_divisor(args, fan)
    table = cohomology_mod.line_bundle_cohomology(fan, div, box=args.box)
    return {"dims": list(table.dims), "box": table.box}, 0


def _cmd_collection(args):
    fan = _load_fan(args)
    bundles = _load_collection(args, fan)
    if args.action == "verify":
        report = cohomology_mod.is_strongly_exceptional(fan, bundles, box=args.box)
        payload = {
            "pass": report.passed,
            "violations": [{"kind": kind, "j": j, "k": k, "dims": list(dims)}
                           for kind, j, k, dims in report.violations],
        }
        return payload, 0 if report.passed else 1
    if args.action == "order":
        result = cohomology_mod.find_strong_order(fan, bundles, box=args.box)
        if result.ok:
            return {"ok": True, "order": [list(b) for b in result.order]}, 0
        witness = [x if isinstance(x, (int, str)) else list(x)
                   for x in result.witness]
        return {"ok": False, "witness": witness}, 1
    # product
    fan2 = _load_fan(args, variety_attr="variety2", fan_attr="fan2")
    bundles2 = _load_collection(args, fan2, attr="collection2")
    try:
        product, combined = cohomology_mod.box_product(fan, bundles, fan2, bundles2)
    except cohomology_mod.FactorNotStronglyExceptional as exc:
        return {"ok": False, "error": str(exc)}, 1
    payload = {
        "ok": True,
        "fan": product.to_json_dict(),
        "bundles": [list(b) for b in combined],
    }
    return payload, 0


_HANDLERS = {
    "variety": _cmd_variety,
    "frobenius": _cmd_frobenius,
    "bondal": _cmd_bondal,
    "cohomology": _cmd_cohomology,
    "collection": _cmd_collection,
}


def _format_table(report):
    lines = [f"command: {report['command']}"]
    for key, value in report["inputs"].items():
        lines.append(f"input {key}: {value}")

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}{k}.", v) if isinstance(v, (dict, list)) \
                    else lines.append(f"{prefix}{k}: {v}")
        elif isinstance(value, list):
            for i, v in enumerate(value):
                if isinstance(v, (dict, list)):
                    walk(f"{prefix}{i}.", v)
                else:
                    lines.append(f"{prefix}{i}: {v}")

    walk("", report["result"])
    lines.append(f"exit_status: {report['exit_status']}")
    return "\n".join(lines)


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    started = time.monotonic()
    try:
        result, status = _HANDLERS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    command = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
    report = {
        "command": command,
        "inputs": _inputs_echo(args),
        "result": result,
        "exit_status": status,
    }
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_format_table(report))
    elapsed = time.monotonic() - started
    print(f"wall-clock: {elapsed:.3f}s", file=sys.stderr)
    return status


def console_entry():
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
