"""Command-line front end.

Every library decision is exposed as a subcommand with text and JSON
output.  Exit codes: 0 for Yes/ok, 1 for No, a violated precondition
on otherwise well-formed input, or an unfactorable matrix, 2 for
input errors.
"""

import argparse
import json
import sys

from .classexpr import (
    ParseError,
    class_to_json,
    model_from_json,
    parse_class,
    parse_form,
    print_class,
)
from .cone import (
    CONE_NO,
    CONE_YES_UP_TO_BOUND,
    enumerate_exceptional,
    in_cone,
    is_lagrangian_spherical,
)
from .decompose import (
    DecompositionError,
    IsometryMatrix,
    decompose_K,
    decompose_K_alpha,
    decompose_ruled,
    validate,
)
from .lattice import RATIONAL, RULED, LatticeModel, form_pairing, is_characteristic, pairing
from .oracle import EnumQuery, crosscheck, enumerate_classes
from .reduction import cremona_reduce, is_K_null_spherical, is_exceptional


def parse_model_spec(text: str) -> LatticeModel:
    """Parse "rational:6" or "ruled:h=2,n=3"."""
    kind, sep, rest = text.partition(":")
    try:
        if kind == "rational" and sep:
            return LatticeModel.rational(int(rest))
        if kind == "ruled" and sep:
            parts = dict(item.split("=", 1) for item in rest.split(","))
            if set(parts) != {"h", "n"}:
                raise ValueError
            return LatticeModel.ruled(int(parts["h"]), int(parts["n"]))
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad model spec {text!r}") from exc
    raise argparse.ArgumentTypeError(f"bad model spec {text!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _word_payload(word) -> dict:
    return {
        "length": len(word),
        "generators": [print_class(g) for g in word.generators],
    }


def _word_lines(word) -> list:
    lines = [f"word length: {len(word)}"]
    for g in word.generators:
        lines.append(f"  R({print_class(g)})")
    return lines


def cmd_classify(args) -> tuple:
    model = args.model
    x = parse_class(args.cls, model)
    k0 = model.k0_form()
    payload = {
        "class": print_class(x),
        "square": pairing(x, x),
        "k_pairing": int(form_pairing(k0, x)),
        "characteristic": is_characteristic(x),
        "exceptional": is_exceptional(x, k0),
        "knull": is_K_null_spherical(x, k0),
    }
    lines = [f"{key}: {value}" for key, value in payload.items()]
    if model.kind == RATIONAL:
        nf = cremona_reduce(x)
        payload["normal_form"] = print_class(nf.representative)
        payload["kind"] = nf.kind
        payload["sign_flipped"] = nf.sign_flipped
        payload["word"] = _word_payload(nf.word)
        lines.append(f"normal form: {print_class(nf.representative)} ({nf.kind})")
        lines.extend(_word_lines(nf.word))
    return 0, payload, lines


def cmd_lagrangian(args) -> tuple:
    model = args.model
    x = parse_class(args.cls, model)
    tau = parse_form(args.form, model)
    res = is_lagrangian_spherical(
        x,
        tau,
        degree_bound=args.degree_bound,
        allow_bounded_cone=args.degree_bound is not None,
    )
    payload = {
        "yes": res.yes,
        "area": str(res.area),
        "characteristic": res.characteristic,
    }
    if res.yes:
        lines = ["Yes"]
        if res.kind is not None:
            payload["kind"] = res.kind
            lines.append(f"kind: {res.kind}")
        if res.word is not None:
            payload["word"] = _word_payload(res.word)
            lines.extend(_word_lines(res.word))
        return 0, payload, lines
    payload["reason"] = res.reason
    return 1, payload, [f"No: {res.reason}"]


def cmd_reduce(args) -> tuple:
    model = args.model
    x = parse_class(args.cls, model)
    nf = cremona_reduce(x)
    payload = {
        "kind": nf.kind,
        "representative": print_class(nf.representative),
        "sign_flipped": nf.sign_flipped,
        "word": _word_payload(nf.word),
    }
    lines = [
        f"kind: {nf.kind}",
        f"representative: {print_class(nf.representative)}",
        f"sign flipped: {nf.sign_flipped}",
    ]
    lines.extend(_word_lines(nf.word))
    return 0, payload, lines


def cmd_decompose(args) -> tuple:
    model = args.model
    with open(args.matrix) as fh:
        data = json.load(fh)
    if model_from_json(data["model"]) != model:
        raise ValueError("matrix file model does not match --model")
    entries = tuple(tuple(v for v in row) for row in data["entries"])
    M = IsometryMatrix(model, entries)
    alpha = parse_form(args.alpha, model) if args.alpha else None
    if model.kind == RULED and alpha is None:
        raise ValueError("ruled decomposition requires --alpha")
    report = validate(M, model.k0_form(), alpha)
    if not report.ok:
        payload = {"valid": False, "failures": list(report.failures)}
        return 1, payload, ["invalid matrix: " + "; ".join(report.failures)]
    if model.kind == RULED:
        word = decompose_ruled(M, alpha)
    elif alpha is not None:
        word = decompose_K_alpha(M, alpha)
    else:
        word = decompose_K(M)
    payload = {"valid": True, "word": _word_payload(word)}
    return 0, payload, _word_lines(word)


def cmd_enumerate(args) -> tuple:
    model = args.model
    if args.kind == "exceptional" and args.bound is None:
        es = enumerate_exceptional(model, degree_bound=args.degree_bound)
        classes = list(es)
        payload = {
            "count": len(classes),
            "complete": es.complete,
            "classes": [print_class(x) for x in classes],
        }
        if es.degree_bound is not None:
            payload["degree_bound"] = es.degree_bound
    else:
        if args.bound is None:
            raise ValueError("--bound required unless --kind exceptional")
        q = EnumQuery(
            model,
            args.bound,
            square=args.square,
            k_pairing=args.k_pairing,
            predicate=args.kind,
        )
        classes = enumerate_classes(q, allow_large=args.allow_large)
        payload = {
            "count": len(classes),
            "complete": False,
            "coeff_bound": args.bound,
            "classes": [print_class(x) for x in classes],
        }
    lines = [f"count: {len(classes)}"]
    lines.extend(f"  {print_class(x)}" for x in classes)
    return 0, payload, lines


def cmd_cone(args) -> tuple:
    model = args.model
    tau = parse_form(args.form, model)
    res = in_cone(tau, degree_bound=args.degree_bound)
    payload = {"verdict": res.verdict}
    if res.note:
        payload["note"] = res.note
    if res.verdict == CONE_NO:
        payload["witness"] = None if res.witness is None else print_class(res.witness)
        lines = ["No"]
        if res.witness is not None:
            lines.append(f"witness: {print_class(res.witness)}")
        if res.note:
            lines.append(f"note: {res.note}")
        return 1, payload, lines
    if res.verdict == CONE_YES_UP_TO_BOUND:
        payload["degree_bound"] = res.degree_bound
        lines = [f"Yes (up to degree bound {res.degree_bound})"]
    else:
        lines = ["Yes"]
    if res.note:
        lines.append(f"note: {res.note}")
    return 0, payload, lines


def cmd_crosscheck(args) -> tuple:
    model = args.model
    q = EnumQuery(
        model,
        args.bound,
        square=args.square,
        k_pairing=args.k_pairing,
        predicate=args.kind,
    )
    report = crosscheck(
        q,
        allow_large=args.allow_large,
        depth=args.depth,
        sample=args.sample,
        seed=args.seed,
    )
    payload = report.to_json()
    if args.seed is not None:
        payload["seed"] = args.seed
    if args.sample is not None:
        payload["sample"] = args.sample
    lines = [f"checked: {report.checked}", f"disagreements: {len(report.disagreements)}"]
    for d in report.disagreements:
        lines.append(
            f"  {print_class(d.cls)} {d.operation}: library={d.library} oracle={d.oracle}"
        )
    code = 0 if report.ok else 1
    return code, payload, lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", type=parse_model_spec, required=True,
                        help='lattice model, "rational:6" or "ruled:h=2,n=3"')
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--degree-bound", type=_positive, default=None,
                        help="cap for bounded exceptional enumeration")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized subsampling, echoed in output")

    parser = argparse.ArgumentParser(
        prog="latwist",
        description="exact homology-lattice decisions for blown-up rational and ruled surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common],
                       help="square, pairings, and normal form of a class")
    p.add_argument("cls", metavar="CLASS")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("lagrangian", parents=[common],
                       help="Lagrangian sphere test for a class against a form")
    p.add_argument("cls", metavar="CLASS")
    p.add_argument("--form", required=True)
    p.set_defaults(handler=cmd_lagrangian)

    p = sub.add_parser("reduce", parents=[common],
                       help="Cremona reduction with certificate word")
    p.add_argument("cls", metavar="CLASS")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("decompose", parents=[common],
                       help="factor an isometry matrix into twist generators")
    p.add_argument("--matrix", required=True, help="JSON matrix file")
    p.add_argument("--alpha", default=None, help="area form for the constrained variants")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("enumerate", parents=[common],
                       help="enumerate classes: complete exceptional sets or bounded scans")
    p.add_argument("--kind", choices=("exceptional", "knull", "characteristic"), default=None)
    p.add_argument("--square", type=int, default=None)
    p.add_argument("--k-pairing", type=int, default=None)
    p.add_argument("--bound", type=_positive, default=None)
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("cone", parents=[common],
                       help="symplectic cone membership of a form")
    p.add_argument("--form", required=True)
    p.set_defaults(handler=cmd_cone)

    p = sub.add_parser("crosscheck", parents=[common],
                       help="compare library classifications against brute-force oracles")
    p.add_argument("--kind", choices=("exceptional", "knull", "characteristic"), default=None)
    p.add_argument("--square", type=int, default=None)
    p.add_argument("--k-pairing", type=int, default=None)
    p.add_argument("--bound", type=_positive, required=True)
    p.add_argument("--depth", type=_positive, default=None)
    p.add_argument("--sample", type=_positive, default=None)
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(handler=cmd_crosscheck)

    return parser


def _emit(payload, lines, output, stream=None):
    stream = stream or sys.stdout
    if output == "json":
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write("\n")
    else:
        for line in lines:
            stream.write(line + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload, lines = args.handler(args)
    except DecompositionError as exc:
        _emit_error(args, "decomposition", exc)
        return 1
    except ParseError as exc:
        _emit_error(args, "parse", exc)
        return 2
    except (ValueError, TypeError, KeyError, OSError, json.JSONDecodeError) as exc:
        _emit_error(args, "input", exc)
        return 2
    _emit(payload, lines, args.output)
    return code


def _emit_error(args, kind, exc):
    if args.output == "json":
        _emit({"error": {"type": kind, "message": str(exc)}}, [], "json")
    else:
        sys.stderr.write(f"error ({kind}): {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
