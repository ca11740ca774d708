"""Exact arithmetic in the quotient of a path algebra by a monomial ideal.

Elements are finite rational combinations of basis paths (paths avoiding the
ideal).  All arithmetic is exact over the rationals; products of basis paths
reduce to a basis path or to zero, so no normal-form computation beyond
subpath filtering is ever needed.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import BoundExceededError, ElementFormatError, InvalidPresentationError
from .quiver import Path, surviving_cycles, unique_continuation, unique_predecessor


class Element:
    """Finite map from basis paths to nonzero rational coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        clean = {}
        for p, c in terms.items():
            c = Fraction(c)
            if c and not algebra.in_ideal(p):
                clean[p] = clean.get(p, Fraction(0)) + c
        self.terms = {p: c for p, c in clean.items() if c}

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, Fraction(0)) + c
        return Element(self.algebra, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Element(self.algebra, {p: -c for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        terms = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                r = self.algebra.concat(p, q)
                if r is not None:
                    terms[r] = terms.get(r, Fraction(0)) + c * d
        return Element(self.algebra, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        c = Fraction(c)
        return Element(self.algebra, {p: c * v for p, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, Element) and self.algebra is other.algebra
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _check(self, other):
        if not isinstance(other, Element) or other.algebra is not self.algebra:
            raise ValueError("elements belong to different algebras")

    # -- graded structure ---------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def degree_part(self, n):
        return Element(self.algebra, {p: c for p, c in self.terms.items() if p.length == n})

    def degree_range_part(self, lo, hi=None):
        return Element(self.algebra, {
            p: c for p, c in self.terms.items()
            if p.length >= lo and (hi is None or p.length <= hi)})

    def min_degree(self):
        """Lowest degree with a nonzero term; None for the zero element."""
        return min((p.length for p in self.terms), default=None)

    def max_degree(self):
        return max((p.length for p in self.terms), default=None)

    def coefficient(self, path):
        return self.terms.get(path, Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"Element({format_element(self)!r})"

    def __str__(self):
        return format_element(self)


class PathAlgebra:
    """Arithmetic context for a valid (locally) string presentation."""

    def __init__(self, presentation, max_path_length=64):
        presentation.require_valid()
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.relations = presentation.relations
        self.max_path_length = max_path_length
        self._cache = {}

    # -- construction helpers ------------------------------------------------

    def zero(self):
        return Element(self, {})

    def one(self):
        return Element(self, {Path.stationary(v): Fraction(1) for v in self.quiver.vertices})

    def stationary(self, vertex):
        if vertex not in self.quiver.arrows_from:
            raise ValueError(f"unknown vertex {vertex}")
        return Element(self, {Path.stationary(vertex): Fraction(1)})

    def arrow(self, name):
        if name not in self.quiver.arrow_by_name:
            raise ValueError(f"unknown arrow {name}")
        return Element(self, {Path.of((name,)): Fraction(1)})

    def path_element(self, path, coeff=1):
        if not isinstance(path, Path):
            path = Path.of(path)
        return Element(self, {path: Fraction(coeff)})

    def element(self, terms):
        return Element(self, terms)

    # -- ideal and multiplication ---------------------------------------------

    def in_ideal(self, path):
        """Monomial ideal membership: a generator occurs as a subpath."""
        return self.relations.contains(path)

    def concat(self, p, q):
        """Concatenation of basis paths, or None when the product is zero."""
        if p.is_stationary:
            return q if p.vertex == self.quiver.path_source(q) else None
        if q.is_stationary:
            return p if self.quiver.path_target(p) == q.vertex else None
        if self.quiver.target(p.arrows[-1]) != self.quiver.source(q.arrows[0]):
            return None
        joined = Path.of(p.arrows + q.arrows)
        return None if self.in_ideal(joined) else joined

    # -- structural maps (require the string overlap conditions) ---------------

    def successor(self, arrow_name):
        key = ("succ", arrow_name)
        if key not in self._cache:
            self._cache[key] = unique_continuation(self.quiver, self.relations, arrow_name)
        return self._cache[key]

    def predecessor(self, arrow_name):
        key = ("pred", arrow_name)
        if key not in self._cache:
            self._cache[key] = unique_predecessor(self.quiver, self.relations, arrow_name)
        return self._cache[key]

    def infinite_cycles(self):
        """Canonical rotations of the cycles generating infinite maximal paths."""
        if "cycles" not in self._cache:
            self._cache["cycles"] = surviving_cycles(self.quiver, self.relations)
        return self._cache["cycles"]

    def cycle_arrows(self):
        if "cycle_arrows" not in self._cache:
            self._cache["cycle_arrows"] = frozenset(
                a for cyc in self.infinite_cycles() for a in cyc)
        return self._cache["cycle_arrows"]

    def radical_arrows(self):
        """Arrows contained in no infinite maximal path."""
        cyc = self.cycle_arrows()
        return tuple(a.name for a in sorted(self.quiver.arrows, key=lambda a: a.name)
                     if a.name not in cyc)

    def _walk(self, arrow_name, max_len):
        """Arrows of the longest basis path from `arrow_name`, capped at max_len."""
        arrows = [arrow_name]
        while len(arrows) < max_len:
            nxt = self.successor(arrows[-1])
            if nxt is None:
                break
            candidate = arrows + [nxt]
            if self.in_ideal(Path.of(candidate)):
                break
            arrows = candidate
        return arrows

    def radical_paths(self):
        """All nonstationary basis paths avoiding every infinite maximal path.

        This is a basis of the Jacobson radical.  Finite because powers of
        non-surviving cycles eventually meet the ideal.
        """
        if "radical_paths" not in self._cache:
            paths = []
            for a in self.radical_arrows():
                run = self._walk(a, self.max_path_length + 1)
                if len(run) > self.max_path_length:
                    raise BoundExceededError(
                        f"basis path from arrow {a} exceeds length bound "
                        f"{self.max_path_length}; raise max_path_length")
                paths.extend(Path.of(run[:k]) for k in range(1, len(run) + 1))
            self._cache["radical_paths"] = tuple(sorted(paths))
        return self._cache["radical_paths"]

    def radical_degree_bound(self):
        """Largest length of a radical basis path (0 when none exist)."""
        return max((p.length for p in self.radical_paths()), default=0)

    # -- basis ------------------------------------------------------------------

    def enumerate_basis(self, max_len):
        """Basis paths of length <= max_len in (length, lexicographic) order."""
        out = [Path.stationary(v) for v in sorted(self.quiver.vertices)]
        for a in sorted(self.quiver.arrow_by_name):
            run = self._walk(a, max_len)
            out.extend(Path.of(run[:k]) for k in range(1, len(run) + 1))
        return sorted(out)

    def is_finite_dimensional(self):
        """(finite?, dimension) with dimension None in the infinite case."""
        if self.infinite_cycles():
            return False, None
        return True, self.dimension()

    def dimension(self):
        if self.infinite_cycles():
            return None
        return len(self.quiver.vertices) + len(self.radical_paths())

    # -- misc --------------------------------------------------------------------

    def generators(self):
        """Stationary paths then arrows, in sorted order."""
        out = [Path.stationary(v) for v in sorted(self.quiver.vertices)]
        out.extend(Path.of((a,)) for a in sorted(self.quiver.arrow_by_name))
        return out

    def parse_element(self, text):
        return parse_element(self, text)

    @property
    def is_polynomial_ring(self):
        return self.presentation.is_polynomial_ring


# -- element text format ----------------------------------------------------
#
# `c1*p1 + c2*p2 + ...` with rational coefficients `p/q`, paths written as
# `e_<vertex>` or `.`-joined arrow names.  A bare constant denotes that
# multiple of the identity.  Round-trips exactly through parse_element.

# coefficients and paths never contain interior +/- so top-level signs
# always separate terms
_TERM_SPLIT = re.compile(r"([+-])")


def format_element(x):
    if x.is_zero:
        return "0"
    terms = x.sorted_terms()
    vertices = x.algebra.quiver.vertices
    unit_coeff = None
    stationary = {p.vertex: c for p, c in terms if p.is_stationary}
    if len(stationary) == len(vertices) and len(set(stationary.values())) == 1:
        unit_coeff = next(iter(stationary.values()))
        terms = [(p, c) for p, c in terms if not p.is_stationary]
    pieces = []
    if unit_coeff is not None:
        pieces.append(_format_coeff(unit_coeff))
    for p, c in terms:
        body = f"{_format_coeff(abs(c))}*{p}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    out = pieces[0]
    for piece in pieces[1:]:
        out += " " + piece
    return out


def _format_coeff(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_element(algebra, text):
    text = text.strip()
    if not text:
        raise ElementFormatError("empty element expression")
    if text == "0":
        return algebra.zero()
    chunks = []
    sign = 1
    buf = ""
    for piece in _TERM_SPLIT.split(text):
        if piece == "+" or piece == "-":
            if buf.strip():
                chunks.append((sign, buf.strip()))
            sign = 1 if piece == "+" else -1
            buf = ""
        else:
            buf += piece
    if buf.strip():
        chunks.append((sign, buf.strip()))
    result = algebra.zero()
    for sgn, chunk in chunks:
        result = result + _parse_term(algebra, chunk).scale(sgn)
    return result


def _parse_term(algebra, chunk):
    if chunk.startswith("-"):
        return _parse_term(algebra, chunk[1:].strip()).scale(-1)
    if "*" in chunk:
        coeff_text, path_text = chunk.split("*", 1)
        coeff = _parse_coeff(coeff_text.strip())
        return _parse_path(algebra, path_text.strip()).scale(coeff)
    # bare constant (multiple of the identity) or bare path
    if re.fullmatch(r"\d+(/\d+)?", chunk):
        return algebra.one().scale(_parse_coeff(chunk))
    return _parse_path(algebra, chunk)


def _parse_coeff(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ElementFormatError(f"bad coefficient {text!r}") from exc


def _parse_path(algebra, text):
    if text.startswith("e_"):
        vertex = text[2:]
        if vertex not in algebra.quiver.arrows_from:
            raise ElementFormatError(f"unknown vertex in {text!r}")
        return algebra.stationary(vertex)
    names = re.split(r"[.·]", text) if ("." in text or "·" in text) else None
    if names is None:
        if text in algebra.quiver.arrow_by_name:
            names = [text]
        elif all(ch in algebra.quiver.arrow_by_name for ch in text):
            names = list(text)  # juxtaposed single-character arrow names
        else:
            raise ElementFormatError(f"unknown path {text!r}")
    for n in names:
        if n not in algebra.quiver.arrow_by_name:
            raise ElementFormatError(f"unknown arrow {n!r} in path {text!r}")
    if not algebra.quiver.is_composable(tuple(names)):
        raise ElementFormatError(f"path {text!r} is not composable")
    return algebra.path_element(tuple(names))
