"""Command-line front end.

Exit codes: 0 success or positive verdict, 1 negative verdict or validation
failure, 2 usage, parse, field or search-cap errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from .algebra import (
    AxiomViolation,
    LieSuperalgebra,
    SearchCapExceeded,
    combination_label,
)
from .catalog import CATALOG_NAMES, by_name
from .extensions import (
    InvalidCocycle,
    central_extension_from_cocycles,
    construct_stem_cover,
    cover_dimension,
    cocycle_space,
    coboundary_space,
    find_cover_epimorphism,
    multiplier,
    stem_extensions_from_cover,
)
from .fields import Field, FieldError
from .io import DocumentError, algebra_to_json, cocycle_to_json, parse_algebra, parse_cocycles, serialize
from .isoclinism import (
    SearchCaps,
    converse_schur_bound,
    decide_isoclinic,
    fingerprint,
    is_stem,
    stem_reduce,
    verify_isoclinism,
)
from .linalg import GradedSubspace

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Report:
    """Collects key/value output; rendered as sorted JSON or ``key: value`` lines."""

    def __init__(self, command: str):
        self.data: dict = {"command": command}
        self.exit_code = EXIT_OK
        self.attachment: str | None = None  # extra text printed after the human report

    def __setitem__(self, key, value):
        self.data[key] = value

    def finish(self, fmt: str) -> str:
        self.data["exit_code"] = self.exit_code
        if fmt == "machine":
            return json.dumps(self.data, sort_keys=True, indent=2) + "\n"
        lines = []
        for k, v in self.data.items():
            if isinstance(v, (dict, list)):
                v = json.dumps(v, sort_keys=True)
            lines.append(f"{k}: {v}")
        out = "\n".join(lines) + "\n"
        if self.attachment:
            out += self.attachment
        return out


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str) -> LieSuperalgebra:
    return parse_algebra(_read(path))


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


def _space(L: LieSuperalgebra, U: GradedSubspace) -> dict:
    return {"dim": str(U.dim), "basis": [combination_label(v, L.names, L.field) for v in U.basis]}


def _matrix(field: Field, M) -> list[list[str]]:
    return [[field.format(x) for x in row] for row in M]


def _caps(args) -> SearchCaps:
    return SearchCaps(
        max_quotient_dim=args.max_quotient_dim,
        max_derived_dim=args.max_derived_dim,
        max_prime=args.max_prime,
        max_generator_dim=args.max_generator_dim,
        max_nodes=args.max_nodes,
    )


def _emit_document(rep: Report, L: LieSuperalgebra, out: str | None, fmt: str) -> None:
    text = serialize(L)
    if out:
        _write(out, text)
        rep["written"] = out
    elif fmt == "machine":
        rep["document"] = algebra_to_json(L)
    else:
        rep.attachment = text


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(args, rep: Report) -> None:
    L = _load(args.file)
    rep["valid"] = True
    rep["name"] = L.name
    rep["field"] = str(L.field)
    rep["dim"] = str(L.dim)


def cmd_analyze(args, rep: Report) -> None:
    L = _load(args.file)
    Z, D = L.center, L.derived
    rep["name"] = L.name
    rep["field"] = str(L.field)
    rep["dim"] = str(L.dim)
    rep["center"] = _space(L, Z)
    rep["derived"] = _space(L, D)
    rep["center_meet_derived"] = _space(L, Z & D)
    rep["stem"] = is_stem(L)
    rep["abelian"] = L.is_abelian
    rep["fingerprint"] = fingerprint(L).to_json()


def cmd_multiplier(args, rep: Report) -> None:
    L = _load(args.file)
    m = multiplier(L)
    rep["name"] = L.name
    rep["multiplier"] = str(m.dim)
    for parity, tag in ((0, "even"), (1, "odd")):
        rep[f"{tag}_cocycles_dim"] = cocycle_space(L, parity).shape[0]
        rep[f"{tag}_coboundaries_dim"] = coboundary_space(L, parity).shape[0]
    rep["representatives"] = [cocycle_to_json(b) for b in m.even + m.odd]


def cmd_cover(args, rep: Report) -> None:
    L = _load(args.file)
    E = construct_stem_cover(L)
    rep["base"] = L.name
    rep["classification"] = E.classification
    rep["cover_dim"] = str(E.total.dim)
    rep["expected_dim"] = str(cover_dimension(L))
    rep["kernel"] = _space(E.total, E.kernel)
    rep["complement"] = E.note
    _emit_document(rep, E.total, args.out, args.format)


def cmd_extend(args, rep: Report) -> None:
    L = _load(args.file)
    even, odd = parse_cocycles(_read(args.cocycles), L)
    try:
        E = central_extension_from_cocycles(L, even, odd)
    except AxiomViolation as e:
        # cocycles passed their own checks, so this is an internal inconsistency
        raise RuntimeError(f"extension of valid cocycles failed validation: {e}") from e
    rep["valid"] = True
    rep["classification"] = E.classification
    rep["total_dim"] = str(E.total.dim)
    rep["kernel"] = _space(E.total, E.kernel)
    _emit_document(rep, E.total, args.out, args.format)


def cmd_isoclinic(args, rep: Report) -> None:
    L, K = _load(args.file1), _load(args.file2)
    if L.field != K.field:
        raise UsageError(f"algebras are over different fields: {L.field} and {K.field}")
    dec = decide_isoclinic(L, K, exhaustive=True if args.exhaustive else None, caps=_caps(args))
    rep["verdict"] = dec.verdict
    rep["method"] = dec.method
    rep["reason"] = dec.reason
    if dec.pair is not None:
        f = L.field
        rep["witness"] = {
            "alpha": _matrix(f, dec.pair.alpha.matrix),
            "beta": _matrix(f, dec.pair.beta.matrix),
            "verified": verify_isoclinism(dec.pair).ok,
        }
    if not dec.isoclinic:
        rep.exit_code = EXIT_NEGATIVE


def cmd_stem_reduce(args, rep: Report) -> None:
    L = _load(args.file)
    r = stem_reduce(L)
    rep["input_dim"] = str(L.dim)
    rep["stem_dim"] = str(r.stem.dim)
    rep["killed"] = _space(L, r.killed)
    rep["stem"] = is_stem(r.stem)
    rep["witness_verified"] = verify_isoclinism(r.witness).ok
    _emit_document(rep, r.stem, args.out, args.format)


def cmd_schur_bound(args, rep: Report) -> None:
    L = _load(args.file)
    b = converse_schur_bound(L, cap=args.max_generator_dim)
    rep["central_quotient_dim"] = b.lhs
    rep["generators"] = {"even": b.generators.even, "odd": b.generators.odd, "certified": b.generators.certified}
    rep["derived_dim"] = b.derived_dim
    rep["bound"] = b.rhs
    rep["holds"] = b.holds
    if not b.holds:
        rep.exit_code = EXIT_NEGATIVE


def cmd_stem_quotients(args, rep: Report) -> None:
    L = _load(args.file)
    if not L.field.is_finite:
        raise UsageError("stem-quotients enumerates subspaces and needs a GF(p) algebra")
    E = construct_stem_cover(L)
    rows = []
    ok = True
    for sq in stem_extensions_from_cover(E):
        proper = sq.killed.dim != E.kernel.dim
        g = find_cover_epimorphism(sq.extension, E, max_nodes=args.max_nodes)
        stem = sq.extension.is_stem
        if proper and not stem or g is None:
            ok = False
        rows.append(
            {
                "killed": _space(E.total, sq.killed),
                "quotient_dim": str(sq.extension.total.dim),
                "classification": sq.extension.classification,
                "epimorphism": g is not None,
            }
        )
    rep["cover_dim"] = str(E.total.dim)
    rep["quotients"] = rows
    rep["all_consistent"] = ok
    if not ok:
        rep.exit_code = EXIT_NEGATIVE


def cmd_catalog(args, rep: Report) -> None:
    try:
        field = Field.from_string(args.field)
    except FieldError as e:
        raise UsageError(str(e)) from None
    try:
        L = by_name(args.name, field)
    except KeyError:
        raise UsageError(f"unknown catalog entry {args.name!r}; known: {', '.join(CATALOG_NAMES)}") from None
    rep["name"] = L.name
    rep["dim"] = str(L.dim)
    _emit_document(rep, L, args.out, args.format)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    caps = _Parser(add_help=False)
    d = SearchCaps()
    caps.add_argument("--max-quotient-dim", type=int, default=d.max_quotient_dim)
    caps.add_argument("--max-derived-dim", type=int, default=d.max_derived_dim)
    caps.add_argument("--max-prime", type=int, default=d.max_prime)
    caps.add_argument("--max-generator-dim", type=int, default=d.max_generator_dim)
    caps.add_argument("--max-nodes", type=int, default=d.max_nodes)

    p = _Parser(prog="liesuper", description="Exact computations with Lie superalgebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, help: str, *parents):
        sp = sub.add_parser(name, help=help, parents=[common, *parents])
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check the axioms").add_argument("file")
    add("analyze", cmd_analyze, "center, derived subalgebra, stem flag, fingerprint").add_argument("file")
    add("multiplier", cmd_multiplier, "Schur multiplier as graded H^2").add_argument("file")
    sp = add("cover", cmd_cover, "construct a stem cover")
    sp.add_argument("file")
    sp.add_argument("--out")
    sp = add("extend", cmd_extend, "central extension from a cocycle file")
    sp.add_argument("file")
    sp.add_argument("--cocycles", required=True)
    sp.add_argument("--out")
    sp = add("isoclinic", cmd_isoclinic, "decide isoclinism", caps)
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--exhaustive", action="store_true")
    sp = add("stem-reduce", cmd_stem_reduce, "isoclinic stem quotient")
    sp.add_argument("file")
    sp.add_argument("--out")
    sp = add("schur-bound", cmd_schur_bound, "check dim L/Z(L) <= (m+n) dim L'", caps)
    sp.add_argument("file")
    sp = add("stem-quotients", cmd_stem_quotients, "stem extensions K/T of the cover and their epimorphisms", caps)
    sp.add_argument("file")
    sp = add("catalog", cmd_catalog, "print a bundled algebra")
    sp.add_argument("name")
    sp.add_argument("--out")
    sp.add_argument("--field", default="Q")
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    rep = Report(args.command)
    fmt = args.format
    try:
        args.func(args, rep)
    except (DocumentError, UsageError, FieldError, SearchCapExceeded) as e:
        kind = "parse" if isinstance(e, DocumentError) else "usage"
        if fmt == "machine":
            rep["error"] = {"kind": kind, "message": str(e)}
            rep.exit_code = EXIT_USAGE
            stdout.write(rep.finish(fmt))
        else:
            stderr.write(f"{kind} error: {e}\n")
        return EXIT_USAGE
    except (AxiomViolation, InvalidCocycle) as e:
        rep["valid"] = False
        rep["error"] = str(e)
        axiom = type(e).__name__ if isinstance(e, AxiomViolation) else e.axiom
        rep["violation"] = {"axiom": axiom, "indices": list(e.indices)}
        rep.exit_code = EXIT_NEGATIVE
    stdout.write(rep.finish(fmt))
    return rep.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
