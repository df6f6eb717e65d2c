"""Command-line interface.

Exit codes: 0 success, 1 validation or check failure, 2 parse/I-O error,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import sys

from . import catalog, modelfile
from .blowup import (
    ConstructionError,
    SpecError,
    all_crepant_candidates,
    blow_up,
    crepant_candidates,
    spec_from_coefficients,
    verify_crepant_invariance,
)
from .exact import format_rat, rat
from .invariants import (
    InvariantViolation,
    e_orb,
    e_quas,
    e_st,
    hodge_numbers,
    orbifold_hodge,
)
from .model import CharacteristicModel, is_positively_omnioriented, is_quasi_sl, validate
from .polytope import PerturbationError, TruncationError, betti_via_index, perturb_and_verify
from .qpoly import QExpPolynomial

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _load_valid(path) -> CharacteristicModel:
    m = modelfile.load(path)
    report = validate(m)
    if not report.ok:
        raise _Fail(EXIT_INVALID, "invalid model: " + "; ".join(report.violations))
    return m


def _method(args) -> str:
    return "scan" if getattr(args, "oracle", False) else "snf"


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _poly_out(poly: QExpPolynomial, fmt: str) -> str:
    if fmt == "csv":
        rows = ["exponent,coefficient"]
        rows += [f"{format_rat(e)},{poly.coeff(e)}" for e in sorted(poly.exponents(), reverse=True)]
        return "\n".join(rows)
    return str(poly)


def cmd_validate(args) -> int:
    m = modelfile.load(args.file)
    report = validate(m)
    if not report.ok:
        for v in report.violations:
            print(f"violation: {v}")
        return EXIT_INVALID
    print(
        f"valid; quasi-SL: {_bool(is_quasi_sl(m))}; "
        f"positively omnioriented: {_bool(is_positively_omnioriented(m))}"
    )
    return EXIT_OK


def cmd_invariants(args) -> int:
    m = _load_valid(args.file)
    method = _method(args)
    which = args.which
    if which == "betti":
        betti = betti_via_index(m.polytope)
        if betti != e_quas(m).coefficient_list():
            raise InvariantViolation("height-function Betti numbers disagree with the h-vector")
        if args.format == "csv":
            print("degree,betti")
            for k, b in enumerate(betti):
                print(f"{2 * k},{b}")
        else:
            print(" ".join(str(b) for b in betti))
    elif which in ("hodge", "orbhodge"):
        table = hodge_numbers(m) if which == "hodge" else orbifold_hodge(m, method)
        sys.stdout.write(table.to_csv())
    else:
        poly = {"epoly": e_quas, "worb": lambda x: e_orb(x, method), "est": lambda x: e_st(x, method)}[which](m)
        print(_poly_out(poly, args.format))
    return EXIT_OK


def _parse_face(m: CharacteristicModel, text: str):
    try:
        idx = frozenset(int(tok) - 1 for tok in text.split(",") if tok.strip())
    except ValueError:
        raise _Fail(EXIT_PARSE, f"cannot parse face {text!r}; expected facet numbers like 1,3") from None
    if not idx or min(idx) < 0 or max(idx) >= m.polytope.num_facets:
        raise _Fail(EXIT_INVALID, f"face {text!r} names facets outside 1..{m.polytope.num_facets}")
    if not m.polytope.has_face(idx):
        raise _Fail(EXIT_INVALID, f"facets {text} do not meet in a face")
    return m.polytope.face(idx)


def cmd_blowup(args) -> int:
    m = _load_valid(args.file)
    face = _parse_face(m, args.face)
    if len(face.facet_set) == 1:
        raise _Fail(EXIT_INVALID, f"face {face.label()} is a facet; blowing up a facet changes nothing")
    eps = rat(args.eps) if args.eps is not None else None
    if args.b is not None:
        spec = spec_from_coefficients(m, face, [rat(x) for x in args.b.split(",")], eps)
    else:
        cands = crepant_candidates(m, face, _method(args))
        if not cands:
            print("no crepant candidates")
            return EXIT_INVALID
        if not 0 <= args.candidate < len(cands):
            raise _Fail(EXIT_INVALID, f"candidate {args.candidate} out of range (0..{len(cands) - 1})")
        spec = cands[args.candidate].with_eps(eps)
    out = blow_up(m, spec)
    print(f"crepant: {_bool(spec.crepant)}; lambda0: {spec.lambda0}; b: ({', '.join(map(format_rat, spec.b))})")
    if args.output:
        modelfile.save(out, args.output)
    else:
        sys.stdout.write(modelfile.dumps(out))
    return EXIT_OK


def cmd_check_crepant(args) -> int:
    m = _load_valid(args.file)
    if not is_quasi_sl(m, _method(args)):
        print("not quasi-SL: some twisted sector has fractional age; the invariance theorem does not apply")
        return EXIT_INVALID
    cands = all_crepant_candidates(m, _method(args))
    print(f"{len(cands)} candidates")
    ok = True
    for spec in cands:
        rep = verify_crepant_invariance(m, spec.with_eps(rat(args.eps) if args.eps else None))
        print(rep.summary())
        ok = ok and rep.all_equal
    return EXIT_OK if ok else EXIT_INVALID


def cmd_generate(args) -> int:
    try:
        m = catalog.generate(args.kind, args.param)
    except ValueError as exc:
        raise _Fail(EXIT_INVALID, str(exc)) from None
    if args.output:
        modelfile.save(m, args.output)
    else:
        sys.stdout.write(modelfile.dumps(m))
    return EXIT_OK


def cmd_perturb(args) -> int:
    m = modelfile.load(args.file)
    q = perturb_and_verify(m.polytope, rat(args.magnitude), seed=args.seed)
    out = CharacteristicModel(q, m.lambdas, m.name)
    if args.output:
        modelfile.save(out, args.output)
    else:
        sys.stdout.write(modelfile.dumps(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quasitoric", description="Invariants of quasitoric orbifolds.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a model file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="print an invariant")
    p.add_argument("file")
    p.add_argument("--which", required=True, choices=["betti", "hodge", "epoly", "worb", "orbhodge", "est"])
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.add_argument("--oracle", action="store_true", help="brute-force box enumeration")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("blowup", help="blow up a face")
    p.add_argument("file")
    p.add_argument("--face", required=True, help="1-based facet numbers, e.g. 1,3")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--candidate", type=int, default=0, help="index into the crepant candidates")
    g.add_argument("--b", help="explicit coefficients, e.g. 1,1 or 1/2,1/2")
    p.add_argument("--eps", help="truncation depth (rational)")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("check-crepant", help="verify invariance for every crepant blowup")
    p.add_argument("file")
    p.add_argument("--eps")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_check_crepant)

    p = sub.add_parser("generate", help="write a built-in model")
    p.add_argument("kind", choices=sorted(catalog.GENERATORS))
    p.add_argument("param", nargs="?", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("perturb", help="perturb the polytope, keeping its combinatorial type")
    p.add_argument("file")
    p.add_argument("--magnitude", default="1/1000")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_perturb)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        _err(str(exc))
        return exc.code
    except modelfile.ModelFileError as exc:
        _err(str(exc))
        return EXIT_PARSE
    except InvariantViolation as exc:
        _err(f"internal invariant violation: {exc}")
        return EXIT_INTERNAL
    except (SpecError, ConstructionError, TruncationError, PerturbationError) as exc:
        _err(str(exc))
        return EXIT_INVALID
    except ValueError as exc:
        _err(str(exc))
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
