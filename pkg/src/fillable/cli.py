"""Command-line interface: ``fillable <subcommand> [FILE]``.

Exit codes: 0 definite verdict, 2 unknown (budget exhausted), 1 malformed
input, 3 vertex cap exceeded, 4 vertex out of range.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import replay
from .cache import Cache
from .checks import (
    hierarchy_report,
    is_deletable,
    is_directed_mf,
    is_dual_shellable,
    is_shellable,
    is_totally_deletable,
)
from .collapse import Verdict, collapse_faces, contractibility
from .complex import SimplicialComplex, format_set, members
from .decomposition import DecompositionInputError, DecompositionReport, full_report
from .duality import alexander_dual
from .filling import Budget, find_filling, is_totally_fillable
from .generators import generate_family, generate_random, UnknownFamily
from .homology import all_subcomplex_homology, reduced_homology
from .io import InputError, parse_complex

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2

PROPERTIES = (
    "collapsible", "contractible", "deletable", "totally-deletable", "shellable", "dual-shellable",
    "directed-mf", "fillable", "totally-fillable",
)


def _budget(args) -> Budget:
    b = Budget()
    if args.budget is not None:
        b = Budget(collapse_nodes=args.budget, tietze_moves=b.tietze_moves, search_nodes=args.budget)
    return b


def _params(args, **extra) -> dict:
    b = _budget(args)
    return {"budget": [b.collapse_nodes, b.tietze_moves, b.search_nodes], **extra}


def _check(K: SimplicialComplex, prop: str, budget: Budget, jobs: int, reading: str) -> dict:
    if prop == "collapsible":
        if K.is_void:
            raise InputError("collapsibility is undefined for the void complex")
        r = collapse_faces(K.face_set, budget.collapse_nodes)
        doc = {"verdict": r.verdict.value, "reason": r.reason}
        if r.certificate is not None:
            doc["collapse"] = r.certificate.to_json()
        return doc
    if prop == "contractible":
        if K.is_void:
            raise InputError("contractibility is undefined for the void complex")
        return contractibility(K, budget.collapse_nodes, budget.tietze_moves).to_json()
    if prop == "deletable":
        return is_deletable(K, budget).to_json()
    if prop == "totally-deletable":
        return is_totally_deletable(K, budget).to_json()
    if prop == "shellable":
        return is_shellable(K, budget.search_nodes).to_json()
    if prop == "dual-shellable":
        return is_dual_shellable(K, budget).to_json()
    if prop == "directed-mf":
        return is_directed_mf(K, budget.search_nodes, reading).to_json()
    if prop == "fillable":
        return find_filling(K, budget).to_json()
    if prop == "totally-fillable":
        return is_totally_fillable(K, budget, jobs).to_json()
    raise ValueError(prop)


_CHECK_REPLAY = {
    "collapsible": replay.collapse_ok,
    "contractible": replay.contractible_ok,
    "deletable": replay.deletable_ok,
    "totally-deletable": replay.total_deletion_ok,
    "shellable": replay.shelling_ok,
    "dual-shellable": replay.dual_shelling_ok,
    "directed-mf": replay.mf_ok,
    "fillable": replay.filling_ok,
    "totally-fillable": replay.total_filling_ok,
}


def _sets(rows) -> str:
    return " ".join("{" + ",".join(map(str, r)) + "}" for r in rows) or "(none)"


# -- subcommands -------------------------------------------------------------


def cmd_dual(args, K, cache):
    V = K.ground_set
    D = alexander_dual(K, V)
    doc = {"complex": K.to_json(), "dual": D.to_json()}
    return doc, EXIT_OK, f"dual over {format_set(V)}: {D}"


def cmd_check(args, K, cache):
    budget = _budget(args)
    doc = cache.get_or_compute(
        K, f"check:{args.property}", _params(args, reading=args.reading),
        lambda: _check(K, args.property, budget, args.jobs, args.reading),
        lambda d: _CHECK_REPLAY[args.property](K, d),
    )
    doc = {"property": args.property, **doc}
    code = EXIT_UNKNOWN if doc["verdict"] == "unknown" else EXIT_OK
    text = f"{args.property}: {doc['verdict']}"
    if doc.get("reason"):
        text += f" ({doc['reason']})"
    return doc, code, text


def cmd_fillings(args, K, cache):
    budget = _budget(args)
    if args.all_subcomplexes:
        doc = cache.get_or_compute(
            K, "fillings:all", _params(args), lambda: is_totally_fillable(K, budget, args.jobs).to_json(),
            lambda d: replay.total_filling_ok(K, d),
        )
        lines = [f"totally fillable: {doc['verdict']}"]
        for r in doc["fillings"]:
            fill = _sets(r.get("filling", [])) if r["verdict"] == "yes" else r["verdict"]
            lines.append(f"  I={{{','.join(map(str, r['I']))}}}: {fill}")
    else:
        doc = cache.get_or_compute(
            K, "fillings", _params(args), lambda: find_filling(K, budget).to_json(), lambda d: replay.filling_ok(K, d)
        )
        lines = [f"fillable: {doc['verdict']}"]
        if doc["verdict"] == "yes":
            lines.append(f"  filling: {_sets(doc['filling'])}")
    code = EXIT_UNKNOWN if doc["verdict"] == "unknown" else EXIT_OK
    return doc, code, "\n".join(lines)


def _parse_dims(text: str | None):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"--dims must be comma-separated integers, got {text!r}") from None


def cmd_decompose(args, K, cache):
    budget = _budget(args)
    dims = _parse_dims(args.dims)

    def compute():
        tf = is_totally_fillable(K, budget, args.jobs)
        if tf.verdict is Verdict.YES:
            rep = full_report(K, dims, args.brackets, args.verify, budget, args.jobs, fillings=tf.fillings())
        else:
            rep = DecompositionReport(K, tf.verdict, witness=tf.witness)
        out = rep.to_json()
        out["fillings"] = tf.to_json()
        out["text"] = rep.render()
        return out

    doc = cache.get_or_compute(
        K, "decompose", _params(args, dims=dims, brackets=args.brackets, verify=args.verify), compute,
        lambda d: replay.total_filling_ok(K, d["fillings"]),
    )
    text = doc.pop("text")
    if not args.show_fillings:
        doc = {k: v for k, v in doc.items() if k != "fillings"}
    code = EXIT_UNKNOWN if doc["verdict"] == "unknown" else EXIT_OK
    return doc, code, text


def cmd_homology(args, K, cache):
    if args.all_subcomplexes:
        H = all_subcomplex_homology(K)
        doc = {"subcomplexes": [{"I": [v + 1 for v in members(I)], "homology": h.to_json()} for I, h in H.items()]}
        text = "\n".join(f"I={format_set(I)}: {h}" for I, h in H.items())
    else:
        h = reduced_homology(K)
        doc = {"homology": h.to_json(), "void": h.void}
        text = "void complex" if h.void else str(h)
    return doc, EXIT_OK, text


def cmd_report(args, K, cache):
    budget = _budget(args)
    doc = cache.get_or_compute(
        K, "report", _params(args), lambda: hierarchy_report(K, budget, args.jobs).to_json(details=True),
        lambda d: replay.hierarchy_ok(K, d),
    )
    if not args.details:
        doc = {k: doc[k] for k in ("complex", "verdicts") if k in doc}
    lines = [f"{name}: {v}" for name, v in doc["verdicts"].items()]
    code = EXIT_UNKNOWN if "unknown" in doc["verdicts"].values() else EXIT_OK
    return doc, code, "\n".join(lines)


def _family_params(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise InputError(f"family parameter must be key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k] = [int(x) for x in v.split(",")] if "," in v else int(v)
    return out


def cmd_generate(args):
    if args.kind == "random":
        K = generate_random(args.m, args.density, args.seed)
    else:
        try:
            K = generate_family(args.name, **_family_params(args.param))
        except (UnknownFamily, TypeError) as exc:
            raise InputError(str(exc)) from None
    return K.to_json(), EXIT_OK, str(K)


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=None, help="search node budget (default 10^6)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for per-subset work")
    common.add_argument("--no-cache", action="store_true", help="ignore the cache directory")

    p = argparse.ArgumentParser(prog="fillable", description="Fillable complexes, duals and moment-angle decompositions.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.add_argument("file", nargs="?", default="-", help="complex JSON (default: stdin)")
        return sp

    with_file("dual", help="Alexander dual over the ground set")
    sp = sub.add_parser("check", parents=[common], help="test one property")
    sp.add_argument("property", choices=PROPERTIES)
    sp.add_argument("file", nargs="?", default="-")
    sp.add_argument("--reading", choices=("graded", "face"), default="graded", help="directed MF step condition")
    sp = with_file("fillings", help="a filling of K, or of every full subcomplex")
    sp.add_argument("--all-subcomplexes", action="store_true")
    sp = with_file("decompose", help="wedge decomposition and bracket words")
    sp.add_argument("--dims", help="sphere dimensions n_1,...,n_m for the graded version")
    sp.add_argument("--brackets", action="store_true")
    sp.add_argument("--verify", action="store_true", help="cross-check against the homology oracle")
    sp.add_argument("--show-fillings", action="store_true")
    sp = with_file("homology", help="reduced integer homology")
    sp.add_argument("--all-subcomplexes", action="store_true")
    sp = with_file("report", help="the four verdicts of the implication chain")
    sp.add_argument("--details", action="store_true", help="include certificates")

    sp = sub.add_parser("generate", parents=[common], help="emit a complex as JSON")
    gsub = sp.add_subparsers(dest="kind", required=True)
    gr = gsub.add_parser("random", parents=[common])
    gr.add_argument("--m", type=int, required=True)
    gr.add_argument("--density", type=float, default=0.5)
    gr.add_argument("--seed", type=int, default=0)
    gf = gsub.add_parser("family", parents=[common])
    gf.add_argument("name")
    gf.add_argument("--param", action="append", help="key=value, lists as 1,2,3")
    return p


COMMANDS = {
    "dual": cmd_dual, "check": cmd_check, "fillings": cmd_fillings, "decompose": cmd_decompose,
    "homology": cmd_homology, "report": cmd_report,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # argparse binds an optional FILE before later options; accept it afterwards too
    if extra:
        if len(extra) == 1 and getattr(args, "file", None) == "-" and not extra[0].startswith("-"):
            args.file = extra[0]
        else:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        if args.command == "generate":
            doc, code, text = cmd_generate(args)
        else:
            K = parse_complex(args.file)
            cache = Cache(None) if not args.no_cache else Cache("")
            doc, code, text = COMMANDS[args.command](args, K, cache)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, DecompositionInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
