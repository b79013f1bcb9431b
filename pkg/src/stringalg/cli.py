"""Command-line interface.

Exit codes: 0 success, 1 the input violates a mathematical requirement,
2 malformed input, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import decompose as dec
from . import functors, io, laurent, repmod
from .algebra import AlgebraError
from .exactla import DimensionError
from .functors import CoveringError
from .laurent import BandCoefficient, FactorCapError, parse_poly
from .words import Word, WordError, enumerate_words, parse_any, props

EXIT_OK, EXIT_DOMAIN, EXIT_MALFORMED, EXIT_INTERNAL = 0, 1, 2, 3


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _matrix_text(field, mat) -> str:
    rows = field.to_lists(mat)
    return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in rows) + "]"


# subcommands


def cmd_validate(args) -> int:
    alg = io.load_algebra(args.algebra)
    signs = {str(ell): alg.sign(ell) for ell in alg.letters()}
    cycles = [" ".join(c) for c in alg.primitive_cycles()]
    text = "ok\nsigns: " + ", ".join(f"{k}={v:+d}" for k, v in signs.items())
    text += "\nprimitive cycles: " + (", ".join(cycles) if cycles else "none")
    _emit(args, {"ok": True, "signs": signs, "primitive_cycles": cycles}, text)
    return EXIT_OK


def cmd_words(args) -> int:
    alg = io.load_algebra(args.algebra)
    budget = io.parse_budget(args.budget)
    found = [str(w) for w in enumerate_words(alg, budget)]
    _emit(args, {"budget": budget, "words": found}, "\n".join(found))
    return EXIT_OK


def _maybe_scramble(args, m):
    if args.scramble is None:
        return m, None
    out, _ = repmod.scramble(m, args.scramble)
    return out, args.scramble


def _print_rep(args, m, seed):
    # the algebra goes inline so the file can be read from anywhere
    payload = io.representation_to_json(m)
    if seed is not None:
        payload["seed"] = seed
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
        print(f"wrote {args.output}")
    else:
        print(json.dumps(payload, indent=2))


def cmd_module_string(args) -> int:
    alg = io.load_algebra(args.algebra)
    field = io.parse_field(args.field)
    m = repmod.string_module(alg, field, Word.parse(alg, args.word))
    m, seed = _maybe_scramble(args, m)
    _print_rep(args, m, seed)
    return EXIT_OK


def cmd_module_band(args) -> int:
    alg = io.load_algebra(args.algebra)
    field = io.parse_field(args.field)
    word = args.word if args.word.startswith("periodic:") else "periodic: " + args.word
    coeff = BandCoefficient(field, parse_poly(field, args.poly), args.power)
    m = repmod.band_module(alg, field, Word.parse(alg, word), coeff)
    m, seed = _maybe_scramble(args, m)
    _print_rep(args, m, seed)
    return EXIT_OK


def cmd_eval_functor(args) -> int:
    m = io.load_representation(args.rep)
    f = m.field
    c = Word.parse(m.algebra, args.word)
    if args.other is None:
        pm = functors.plus_minus(m, c)
        payload = {"word": str(c), "plus": pm.plus.to_lists(), "minus": pm.minus.to_lists(),
                   "dim_plus": pm.plus.dim, "dim_minus": pm.minus.dim}
        text = f"C = {c}\nC+ dim {pm.plus.dim}: {pm.plus.to_lists()}\nC- dim {pm.minus.dim}: {pm.minus.to_lists()}"
    else:
        d = Word.parse(m.algebra, args.other)
        val = functors.refined(m, c, d)
        payload = {"B": str(c), "D": str(d), "plus": val.plus.to_lists(), "minus": val.minus.to_lists(),
                   "dim": val.dim}
        text = f"B = {c}, D = {d}\nF+ dim {val.plus.dim}, F- dim {val.minus.dim}, F dim {val.dim}"
        if val.theta is not None:
            payload["theta"] = f.to_lists(val.theta)
            text += f"\ntheta = {_matrix_text(f, val.theta)}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_cover(args) -> int:
    m = io.load_representation(args.rep)
    vec = io.parse_vector(m.field, args.vector)
    if len(vec) != m.dims.get(args.vertex, -1):
        raise io.MalformedInput(f"vector length {len(vec)} does not match dim e_{args.vertex} M")
    if args.refined:
        b, d = functors.refined_covering(m, vec, args.vertex)
        _emit(args, {"B": str(b), "D": str(d)}, f"B = {b}\nD = {d}")
    else:
        c = functors.covering_search(m, vec, args.vertex, args.sign)
        _emit(args, {"word": str(c)}, str(c))
    return EXIT_OK


def _certificate_payload(m, theta) -> dict:
    return {v: m.field.to_lists(mat) for v, mat in theta.items()}


def cmd_decompose(args) -> int:
    m = io.load_representation(args.rep)
    rep = dec.decompose(m)
    payload = rep.to_json()
    text = rep.pretty()
    if args.certify:
        _, theta = dec.certify(m, rep)
        payload["certificate"] = _certificate_payload(m, theta)
        text += "\ncertified: explicit isomorphism found"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_certify(args) -> int:
    m = io.load_representation(args.rep)
    if args.report:
        rep = io.report_from_json(io.read_json(args.report), m.algebra)
    else:
        rep = dec.decompose(m)
    try:
        _, theta = dec.certify(m, rep)
    except dec.CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_DOMAIN if args.report else EXIT_INTERNAL
    payload = {"report": rep.to_json(), "certificate": _certificate_payload(m, theta)}
    text = rep.pretty() + "\n" + "\n".join(
        f"theta[{v}] = {_matrix_text(m.field, mat)}" for v, mat in theta.items())
    _emit(args, payload, text)
    return EXIT_OK


def cmd_krs_check(args) -> int:
    m1, m2 = io.load_representation(args.rep1), io.load_representation(args.rep2)
    same = dec.krs_check(m1, m2)
    _emit(args, {"isomorphic": same}, "true" if same else "false")
    return EXIT_OK


def cmd_graded(args) -> int:
    obj = io.read_json(args.graded)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", repmod.BoundaryWarning)
        m, notes = io.graded_from_json(obj, args.window)
    for note in notes:
        print(f"warning: {note}", file=sys.stderr)
    payload = {"representation": io.representation_to_json(m), "warnings": notes}
    text = f"window {m.algebra.vertices[0]}..{m.algebra.vertices[-1]}, dims {m.dims}"
    if args.decompose:
        rep = dec.decompose(m)
        payload["report"] = rep.to_json()
        text += "\n" + rep.pretty()
    _emit(args, payload, text)
    return EXIT_OK


def cmd_word_props(args) -> int:
    text = args.word.strip()
    symbolic = text.startswith("twosided:") or "@" in text
    if not symbolic and args.algebra is None:
        raise io.MalformedInput("an algebra file is needed for this word")
    alg = io.load_algebra(args.algebra) if args.algebra else None
    w = parse_any(alg, text)
    res = props(w)
    lines = [f"word: {w}"]
    for key in ("eventually_inverse", "vertex_finite"):
        lines.append(f"{key}: C={res[key]['C']}, C^-1={res[key]['C_inverse']}")
    lines.append(f"finitely_generated: {res['finitely_generated']}")
    lines.append(f"finitely_controlled: {res['finitely_controlled']}")
    _emit(args, {"word": str(w), **res}, "\n".join(lines))
    return EXIT_OK


# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stringalg", description="String and band modules over string algebras.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--factor-cap", type=int, default=None,
                   help="maximal degree factored over Q (default 12, or $STRINGALG_FACTOR_CAP)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the string-algebra axioms and print signs and cycles")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("words", help="enumerate words within a per-vertex budget")
    s.add_argument("algebra")
    s.add_argument("--budget", nargs="+", default=[], metavar="V=N")
    s.set_defaults(func=cmd_words)

    for name, func in (("module-string", cmd_module_string), ("module-band", cmd_module_band)):
        s = sub.add_parser(name, help=f"write the {name.split('-')[1]} module of a word as a representation")
        s.add_argument("algebra")
        s.add_argument("word")
        s.add_argument("--field", default="Q")
        s.add_argument("--scramble", type=int, default=None, metavar="SEED",
                       help="conjugate by a random change of basis with this seed")
        s.add_argument("-o", "--output", default=None)
        if name == "module-band":
            s.add_argument("--poly", required=True, help="irreducible polynomial in T, e.g. 'T-2'")
            s.add_argument("--power", type=int, default=1)
        s.set_defaults(func=func)

    s = sub.add_parser("eval-functor", help="C+(M), C-(M), or F_{B,D}(M) with --other")
    s.add_argument("rep")
    s.add_argument("word")
    s.add_argument("--other", default=None, help="second word D for the refined functor")
    s.set_defaults(func=cmd_eval_functor)

    s = sub.add_parser("cover", help="covering search from a vector")
    s.add_argument("rep")
    s.add_argument("--vertex", required=True)
    s.add_argument("--vector", required=True, help="comma separated coordinates in e_v M")
    s.add_argument("--sign", type=int, choices=(1, -1), default=1)
    s.add_argument("--refined", action="store_true", help="search for a pair (B, D)")
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("decompose", help="decompose a representation into string and band modules")
    s.add_argument("rep")
    s.add_argument("--certify", action="store_true")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("certify", help="explicit isomorphism from a direct sum onto the representation")
    s.add_argument("rep")
    s.add_argument("--report", default=None, help="report JSON to certify (default: decompose first)")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("krs-check", help="whether two representations are isomorphic")
    s.add_argument("rep1")
    s.add_argument("rep2")
    s.set_defaults(func=cmd_krs_check)

    s = sub.add_parser("graded", help="ingest a graded k[x,y]/(xy)-module on a window of degrees")
    s.add_argument("graded")
    s.add_argument("--window", nargs=2, type=int, default=None, metavar=("A", "B"))
    s.add_argument("--decompose", action="store_true")
    s.set_defaults(func=cmd_graded)

    s = sub.add_parser("word-props", help="finite generation and finite control of M(C)")
    s.add_argument("algebra", nargs="?", default=None)
    s.add_argument("word")
    s.set_defaults(func=cmd_word_props)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        with laurent.capped(args.factor_cap):
            return args.func(args)
    except io.MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (dec.AuditError, dec.CertificationError, CoveringError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (AlgebraError, WordError, repmod.RelationError, FactorCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
