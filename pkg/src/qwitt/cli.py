"""Command-line front end: JSON in, JSON (or plain table) out.

Subcommands: classify, split, witt-class, witt-group, gw-group, tensor,
induced-map, metabolic, isometric, absorbing, embed, verify-suite.

Exit codes: 0 success; 2 validation failure (the violated axiom is named);
3 malformed payload; 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import inf
from typing import Optional

from . import acceptance, qform, witt
from .abelian import AbHom, FinAbGroup
from .formparam import (
    FormParameter,
    FPMorphism,
    classify,
    maximal_splitting,
    parse_name,
    split_sum,
    standard,
    standard_name,
)
from .qtensor import present


class SchemaError(Exception):
    pass


def _require(payload: dict, key: str):
    if key not in payload:
        raise SchemaError(f"missing key {key!r}")
    return payload[key]


def parse_group(data) -> FinAbGroup:
    if isinstance(data, dict):
        data = _require(data, "orders")
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise SchemaError("a group is a list of non-negative cyclic orders")
    return FinAbGroup([x for x in data if x != 1])


def parse_parameter(data) -> FormParameter:
    if isinstance(data, str):
        data = {"name": data}
    if not isinstance(data, dict):
        raise SchemaError("parameter must be a name or an object")
    if "name" in data:
        kind, k = parse_name(data["name"])
        p = standard(kind, k)
        if data.get("sum"):
            p = split_sum(p, parse_group(data["sum"]))
        return p
    carrier = parse_group(_require(data, "carrier"))
    hrow = _require(data, "h")
    pone = _require(data, "pOne")
    h = AbHom(carrier, FinAbGroup((0,)), [list(hrow)])
    return FormParameter(carrier, h, carrier.element(pone))


def parse_form(param: FormParameter, data) -> qform.QForm:
    if not isinstance(data, dict):
        raise SchemaError("form must be an object with 'lambda' and 'mu'")
    lam = _require(data, "lambda")
    mu = _require(data, "mu")
    mus = [param.carrier.element(c) for c in mu]
    return qform.QForm(param, lam, mus)


def _param_of(payload: dict) -> FormParameter:
    for key in ("param", "parameter", "Q"):
        if key in payload:
            return parse_parameter(payload[key])
    return parse_parameter(payload)


def cmd_classify(payload, args) -> dict:
    c = classify(_param_of(payload))
    height = "inf" if c.height == inf else c.height
    return {
        "symmetry": c.symmetry,
        "height": height,
        "complement": list(c.complement),
    }


def cmd_split(payload, args) -> dict:
    ms = maximal_splitting(_param_of(payload))
    return {
        "standard": standard_name(ms.standard_kind, ms.k),
        "complement": list(ms.complement.canonical_orders()),
        "iso": [list(r) for r in ms.iso.map.matrix],
    }


def cmd_witt_class(payload, args) -> dict:
    p = _param_of(payload)
    f = parse_form(p, _require(payload, "form"))
    cls = witt.witt_class(f)
    return {
        "coords": list(cls.coords),
        "generators": list(cls.description.names),
        "orders": list(cls.description.orders),
        "zero": cls.is_zero,
    }


def cmd_witt_group(payload, args) -> dict:
    d = witt.witt_group(_param_of(payload))
    return {
        "group": list(d.canonical_orders()),
        "generators": list(d.names),
        "orders": list(d.orders),
    }


def cmd_gw_group(payload, args) -> dict:
    d = witt.gw_group(_param_of(payload))
    return {
        "group": list(d["canonical_orders"]),
        "generators": list(d["names"]),
        "constraint": d["image_constraint"],
    }


def cmd_tensor(payload, args) -> dict:
    g = parse_group(_require(payload, "G"))
    q = parse_parameter(_require(payload, "Q"))
    pres = present(g, q)
    return {"group": list(pres.group.canonical_orders())}


def cmd_induced_map(payload, args) -> dict:
    src = parse_parameter(_require(payload, "source"))
    dst = parse_parameter(_require(payload, "target"))
    mat = _require(payload, "matrix")
    alpha = FPMorphism(src, dst, AbHom(src.carrier, dst.carrier, mat))
    m = witt.induced_witt_map(alpha)
    return {
        "matrix": [list(r) for r in m.matrix],
        "source_group": list(witt.witt_group(src).canonical_orders()),
        "target_group": list(witt.witt_group(dst).canonical_orders()),
    }


def cmd_metabolic(payload, args) -> dict:
    p = _param_of(payload)
    f = parse_form(p, _require(payload, "form"))
    out = qform.metabolic_search(f, bound=args.bound)
    res = {"status": out.status, "reason": out.reason, "bound": args.bound}
    if out.found:
        res["lagrangian"] = [list(v) for v in out.witness]
    return res


def cmd_isometric(payload, args) -> dict:
    p = _param_of(payload)
    f = parse_form(p, _require(payload, "form1"))
    g = parse_form(p, _require(payload, "form2"))
    out = qform.isometry_search(f, g, bound=args.bound)
    res = {"status": out.status, "reason": out.reason, "bound": args.bound}
    if out.found:
        res["matrix"] = [list(r) for r in out.witness]
    return res


def cmd_absorbing(payload, args) -> dict:
    p = _param_of(payload)
    f = parse_form(p, _require(payload, "form"))
    return {
        "absorbing": qform.is_absorbing(f),
        "indefinite": qform.is_indefinite(f),
        "full": qform.is_full(f),
    }


def cmd_embed(payload, args) -> dict:
    p = _param_of(payload)
    f = parse_form(p, _require(payload, "form"))
    eta = parse_form(p, _require(payload, "eta"))
    emb = qform.absorb_embed(f, eta, bound=args.bound)
    return {
        "matrix": [list(r) for r in emb.matrix],
        "copies": 3,
        "primitive": emb.is_primitive,
    }


def cmd_verify_suite(payload, args) -> dict:
    results = acceptance.run_all(
        seed=args.seed, verbose=args.format == "pretty"
    )
    return {
        "passed": sum(1 for r in results.values() if r["ok"]),
        "total": len(results),
        "criteria": {
            name: {"ok": r["ok"], "detail": r["detail"], "seconds": r["seconds"]}
            for name, r in results.items()
        },
    }


COMMANDS = {
    "classify": cmd_classify,
    "split": cmd_split,
    "witt-class": cmd_witt_class,
    "witt-group": cmd_witt_group,
    "gw-group": cmd_gw_group,
    "tensor": cmd_tensor,
    "induced-map": cmd_induced_map,
    "metabolic": cmd_metabolic,
    "isometric": cmd_isometric,
    "absorbing": cmd_absorbing,
    "embed": cmd_embed,
    "verify-suite": cmd_verify_suite,
}


def _render_pretty(result: dict, indent: str = "") -> str:
    lines = []
    for key in sorted(result):
        val = result[key]
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render_pretty(val, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(lines)


def main(argv: Optional[list] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="qwitt",
        description="Exact computations with quadratic form parameters, "
        "their forms, and Witt groups.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument(
        "payload",
        nargs="?",
        default="{}",
        help="JSON payload (defaults to an empty object)",
    )
    parser.add_argument("--bound", type=int, default=3, help="search coefficient bound")
    parser.add_argument(
        "--format", choices=["json", "pretty"], default="json"
    )
    parser.add_argument(
        "--seed", type=int, default=acceptance.DEFAULT_SEED,
        help="seed for randomized verification runs",
    )
    args = parser.parse_args(argv)

    try:
        payload = json.loads(args.payload)
    except json.JSONDecodeError as exc:
        print(f"error: payload is not valid JSON: {exc}", file=sys.stderr)
        return 3
    try:
        result = COMMANDS[args.command](payload, args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, RuntimeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4

    if args.format == "pretty":
        if args.command != "verify-suite":
            print(_render_pretty(result))
        else:
            print(
                f"passed {result['passed']} / {result['total']} criteria"
            )
    else:
        print(json.dumps(result, sort_keys=True, separators=(",", ":")))
    if args.command == "verify-suite" and result["passed"] != result["total"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
