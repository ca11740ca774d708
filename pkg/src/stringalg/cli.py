"""Command-line interface with deterministic text (or JSON) reports.

Exit codes: 0 success, 2 invalid input, 3 certification failure, 4 search
cap exhausted, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .algebra import PathAlgebra, format_element
from .decompose import decompose_general, outer_class
from .errors import (BoundExceededError, CapExceededError, CertificationError,
                     DecompositionError, DerivationError, ElementFormatError,
                     InvalidPresentationError, MatrixFormatError, NotAUnitError,
                     NotInImageError, NotInvertibleError, QuiverFormatError,
                     ShapeError, StringAlgError)
from .maximal import classify_maximal, degree_zero_center_dimension, radical_basis
from .morphisms import (exponentiate, format_endomorphism, inner_automorphism,
                        invert_unit, parse_derivation, parse_endomorphism,
                        verify_endomorphism)
from .polymat import format_poly_matrix, modified_smith, parse_poly_matrix
from .quiver import parse_quiver

USAGE_ERROR = 64
INVALID_INPUT = 2
CERTIFICATION_FAILURE = 3
CAP_EXHAUSTED = 4

_INVALID = (QuiverFormatError, ElementFormatError, MatrixFormatError,
            InvalidPresentationError, ShapeError)
_CERT = (CertificationError, DerivationError, NotAUnitError, NotInImageError,
         NotInvertibleError, DecompositionError)
_CAPS = (BoundExceededError, CapExceededError)


@dataclass
class Config:
    max_path_length: int = 64
    nilpotency_cap: int = 0        # 0 means derive from the presentation
    conjugation_degree_cap: int = 32
    verbosity: int = 0

    def __post_init__(self):
        if self.max_path_length <= 0 or self.conjugation_degree_cap <= 0:
            raise ValueError("caps must be positive")
        if self.nilpotency_cap < 0:
            raise ValueError("caps must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser():
    parser = _Parser(prog="stringalg", description=__doc__)
    parser.add_argument("--max-len", type=int, default=64,
                        help="path-length guard for basis and maximal-path searches")
    parser.add_argument("--cap-degree", type=int, default=32,
                        help="degree cap for the conjugation solver")
    parser.add_argument("--json", action="store_true",
                        help="emit a JSON mirror of the text report")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", help="classify a presentation").add_argument("quiver_file")
    sub.add_parser("basis", help="list basis paths up to --max-len").add_argument("quiver_file")
    sub.add_parser("maximal", help="report maximal paths").add_argument("quiver_file")
    sub.add_parser("radical", help="list radical basis paths").add_argument("quiver_file")
    sub.add_parser("center0", help="degree-0 center dimension").add_argument("quiver_file")
    p = sub.add_parser("derivation", help="validate and classify a derivation")
    p.add_argument("quiver_file")
    p.add_argument("map_file")
    p = sub.add_parser("exp", help="exponentiate a derivation")
    p.add_argument("quiver_file")
    p.add_argument("map_file")
    p = sub.add_parser("inner", help="conjugation by a unit")
    p.add_argument("quiver_file")
    p.add_argument("element_file")
    p = sub.add_parser("decompose", help="decompose an automorphism")
    p.add_argument("quiver_file")
    p.add_argument("map_file")
    p = sub.add_parser("smith", help="factor a polynomial matrix")
    p.add_argument("matrix_file")
    sub.add_parser("outer-class", help="outer class of a gentle presentation") \
       .add_argument("quiver_file")
    return parser


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _algebra(args):
    presentation = parse_quiver(_read(args.quiver_file))
    presentation.require_valid()
    return PathAlgebra(presentation, max_path_length=args.max_len)


def _emit(args, lines, data):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _cmd_validate(args):
    presentation = parse_quiver(_read(args.quiver_file))
    if not presentation.is_valid:
        lines = [presentation.classification] + list(presentation.violations)
        _emit(args, lines, {"classification": presentation.classification,
                            "violations": list(presentation.violations)})
        return INVALID_INPUT
    algebra = PathAlgebra(presentation, max_path_length=args.max_len)
    finite, dim = algebra.is_finite_dimensional()
    parts = [presentation.classification,
             "finite-dimensional" if finite else "infinite-dimensional"]
    if finite:
        parts.append(f"dim {dim}")
    _emit(args, ["; ".join(parts)],
          {"classification": presentation.classification,
           "finite_dimensional": finite, "dimension": dim,
           "notes": list(presentation.violations)})
    return 0


def _cmd_basis(args):
    algebra = _algebra(args)
    paths = [str(p) for p in algebra.enumerate_basis(args.max_len)]
    _emit(args, paths, {"basis": paths})
    return 0


def _cmd_maximal(args):
    algebra = _algebra(args)
    report = classify_maximal(algebra, args.max_len)
    lines = ["finite maximal:"]
    lines += [f"  {p}" for p in report.finite_maximal]
    lines.append("infinite maximal:")
    lines += [f"  {imp}" for imp in report.infinite_maximal]
    _emit(args, lines, {
        "finite_maximal": [str(p) for p in report.finite_maximal],
        "infinite_maximal": [str(i) for i in report.infinite_maximal],
        "left_maximal": [str(p) for p in report.left_maximal],
        "right_maximal": [str(p) for p in report.right_maximal]})
    return 0


def _cmd_radical(args):
    algebra = _algebra(args)
    paths = [str(p) for p in radical_basis(algebra)]
    _emit(args, paths, {"radical_basis": paths})
    return 0


def _cmd_center0(args):
    algebra = _algebra(args)
    dim = degree_zero_center_dimension(algebra)
    _emit(args, [f"degree-0 center dimension: {dim}"], {"dimension": dim})
    return 0


def _cmd_derivation(args):
    algebra = _algebra(args)
    d = parse_derivation(algebra, _read(args.map_file))
    tags = sorted(d.type_tags)
    lines = [f"valid derivation; types: {', '.join(tags)}"]
    lines += [f"map {a} = {format_element(img)}" for a, img in d.assignments()]
    _emit(args, lines, {"types": tags,
                        "images": {a: format_element(img) for a, img in d.assignments()}})
    return 0


def _cmd_exp(args):
    algebra = _algebra(args)
    d = parse_derivation(algebra, _read(args.map_file))
    f = exponentiate(d)
    text = format_endomorphism(f)
    _emit(args, text.splitlines(), {"endomorphism": text})
    return 0


def _cmd_inner(args):
    algebra = _algebra(args)
    u = invert_unit(algebra.parse_element(_read(args.element_file).strip()))
    f = inner_automorphism(u)
    text = format_endomorphism(f)
    lines = [f"unit: {format_element(u.value)}",
             f"inverse: {format_element(u.inverse)}"] + text.splitlines()
    _emit(args, lines, {"unit": format_element(u.value),
                        "inverse": format_element(u.inverse),
                        "endomorphism": text})
    return 0


def _cmd_decompose(args):
    algebra = _algebra(args)
    f = verify_endomorphism(parse_endomorphism(algebra, _read(args.map_file)))
    decomposition = decompose_general(f, degree_cap=args.cap_degree)
    lines = []
    data = {"factors": [], "verified": True}
    for i, factor in enumerate(decomposition.factors, start=1):
        entry = {"kind": factor.kind, "trivial": factor.is_trivial}
        lines.append(f"factor {i}: {factor.kind}"
                     + (" (trivial)" if factor.is_trivial else ""))
        if factor.unit is not None:
            lines.append(f"  unit {format_element(factor.unit.value)}")
            entry["unit"] = format_element(factor.unit.value)
        elif not factor.is_trivial:
            for line in format_endomorphism(factor.endomorphism).splitlines():
                lines.append(f"  {line}")
            entry["endomorphism"] = format_endomorphism(factor.endomorphism)
        data["factors"].append(entry)
    lines.append("verified: true")
    _emit(args, lines, data)
    return 0


def _cmd_smith(args):
    matrix = parse_poly_matrix(_read(args.matrix_file))
    fact = modified_smith(matrix)
    sigma = " ".join(str(s + 1) for s in fact.sigma)
    lines = [f"U = {format_poly_matrix(fact.U)}",
             f"D = {format_poly_matrix(fact.D)}",
             f"sigma = {sigma}",
             f"V = {format_poly_matrix(fact.V)}",
             f"verified: {str(fact.verify(matrix)).lower()}"]
    _emit(args, lines, {"U": format_poly_matrix(fact.U),
                        "D": format_poly_matrix(fact.D),
                        "sigma": list(fact.sigma),
                        "V": format_poly_matrix(fact.V),
                        "verified": fact.verify(matrix)})
    return 0


def _cmd_outer_class(args):
    algebra = _algebra(args)
    report = outer_class(algebra)
    _emit(args, [f"shape: {report.shape}", f"group: {report.group_description}"],
          {"shape": report.shape, "group": report.group_description,
           "parallel_maximal_arrows": report.n_parallel_maximal})
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "basis": _cmd_basis,
    "maximal": _cmd_maximal,
    "radical": _cmd_radical,
    "center0": _cmd_center0,
    "derivation": _cmd_derivation,
    "exp": _cmd_exp,
    "inner": _cmd_inner,
    "decompose": _cmd_decompose,
    "smith": _cmd_smith,
    "outer-class": _cmd_outer_class,
}


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    try:
        args.config = Config(max_path_length=args.max_len,
                             conjugation_degree_cap=args.cap_degree)
    except ValueError as exc:
        print(f"stringalg: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except _CAPS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAP_EXHAUSTED
    except _CERT as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CERTIFICATION_FAILURE
    except (_INVALID + (OSError,)) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID_INPUT
    except StringAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
