"""Endomorphisms given on generators, derivations, exponential and inner
automorphisms, and unit inversion.

An endomorphism is stored by its images of stationary paths and arrows; the
image of a longer path is the product of its arrow images, computed on
demand.  Certification checks the defining identities of the presentation
exactly, after which the map is trusted as an algebra endomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (CapExceededError, CertificationError, DerivationError,
                     ElementFormatError, NotAUnitError, NotInvertibleError,
                     ShapeError)
from ._linalg import matrix_inverse
from .algebra import Element, PathAlgebra, format_element, parse_element
from .maximal import (classify_maximal, component_of_path, is_left_maximal,
                      is_right_maximal, parallel_maximal)
from .quiver import AlgebraPresentation, Path, Quiver, RelationSet

# derivation type tags
CYCLE = "cycle"          # arrow -> combination of returning paths through it
MAXIMAL = "maximal"      # arrow -> combination of left-maximal paths of length > 1
PARALLEL = "parallel"    # arrow -> scalar multiple of its parallel maximal path
OTHER = "other"


class Endomorphism:
    """Algebra endomorphism determined by generator images."""

    def __init__(self, algebra, vertex_images, arrow_images, certified=False,
                 inverse=None):
        self.algebra = algebra
        self.vertex_images = dict(vertex_images)
        self.arrow_images = dict(arrow_images)
        missing = (set(algebra.quiver.vertices) - set(self.vertex_images)) | \
                  (set(algebra.quiver.arrow_by_name) - set(self.arrow_images))
        if missing:
            raise ValueError(f"missing generator images: {sorted(missing)}")
        self.certified = certified
        self.inverse = inverse
        self._path_cache = {}

    @staticmethod
    def identity(algebra):
        f = Endomorphism(
            algebra,
            {v: algebra.stationary(v) for v in algebra.quiver.vertices},
            {a: algebra.arrow(a) for a in algebra.quiver.arrow_by_name},
            certified=True)
        f.inverse = f
        return f

    def image_of_path(self, path):
        if path in self._path_cache:
            return self._path_cache[path]
        if path.is_stationary:
            out = self.vertex_images[path.vertex]
        else:
            out = self.arrow_images[path.arrows[0]]
            for a in path.arrows[1:]:
                out = out * self.arrow_images[a]
        self._path_cache[path] = out
        return out

    def apply(self, x):
        if isinstance(x, Path):
            return self.image_of_path(x)
        out = self.algebra.zero()
        for p, c in x.terms.items():
            out = out + self.image_of_path(p).scale(c)
        return out

    def _compose_raw(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("endomorphisms of different algebras")
        return Endomorphism(
            self.algebra,
            {v: self.apply(img) for v, img in other.vertex_images.items()},
            {a: self.apply(img) for a, img in other.arrow_images.items()},
            certified=self.certified and other.certified)

    def compose(self, other):
        """self after other: (self.compose(other))(x) = self(other(x))."""
        f = self._compose_raw(other)
        if self.inverse is not None and other.inverse is not None:
            g = other.inverse._compose_raw(self.inverse)
            f.inverse, g.inverse = g, f
        return f

    def __eq__(self, other):
        return (isinstance(other, Endomorphism) and self.algebra is other.algebra
                and self.vertex_images == other.vertex_images
                and self.arrow_images == other.arrow_images)

    def is_identity(self):
        return self == Endomorphism.identity(self.algebra)

    def generator_images(self):
        for v in sorted(self.vertex_images):
            yield Path.stationary(v), self.vertex_images[v]
        for a in sorted(self.arrow_images):
            yield Path.of((a,)), self.arrow_images[a]


def verify_endomorphism(f):
    """Certify the homomorphism identities; raises naming the failure.

    Checks that vertex images are orthogonal idempotents summing to one,
    that arrow images are compatible with their endpoints, and that every
    relation generator maps to zero.
    """
    algebra = f.algebra
    q = algebra.quiver
    total = algebra.zero()
    for v in q.vertices:
        ev = f.vertex_images[v]
        total = total + ev
        if ev * ev != ev:
            raise CertificationError(f"image of e_{v} is not idempotent")
        for w in q.vertices:
            if w != v and not (ev * f.vertex_images[w]).is_zero:
                raise CertificationError(f"images of e_{v} and e_{w} are not orthogonal")
    if total != algebra.one():
        raise CertificationError("vertex images do not sum to the identity")
    for a in sorted(q.arrow_by_name):
        fa = f.arrow_images[a]
        sandwich = f.vertex_images[q.source(a)] * fa * f.vertex_images[q.target(a)]
        if sandwich != fa:
            raise CertificationError(
                f"e_{q.source(a)}*f({a})*e_{q.target(a)} differs from f({a})")
    for g in algebra.relations:
        if not f.image_of_path(g).is_zero:
            raise CertificationError(f"image of relation {g} is nonzero")
    f.certified = True
    return f


def graded_part(f):
    """The degree-preserving part of a certified endomorphism.

    Maps each generator to the component of its image in the generator's
    own degree; certification of the result is re-checked and failure means
    the input was not an automorphism.
    """
    algebra = f.algebra
    if algebra.is_polynomial_ring:
        raise ShapeError("graded part is not defined for the one-loop free algebra")
    if not f.certified:
        raise CertificationError("graded part requires a certified endomorphism")
    g = Endomorphism(
        algebra,
        {v: img.degree_part(0) for v, img in f.vertex_images.items()},
        {a: img.degree_part(1) for a, img in f.arrow_images.items()})
    return verify_endomorphism(g)


@dataclass(frozen=True)
class MembershipFlags:
    fixes_vertices: bool          # every stationary path is fixed exactly
    permutes_vertices: bool       # stationary paths are permuted modulo higher degree
    graded_identity: bool         # the degree-preserving part is the identity


def membership(f):
    """Subgroup membership flags of a certified endomorphism."""
    if not f.certified:
        raise CertificationError("membership requires a certified endomorphism")
    algebra = f.algebra
    fixes = all(f.vertex_images[v] == algebra.stationary(v)
                for v in algebra.quiver.vertices)
    seen = {}
    permutes = True
    for v in algebra.quiver.vertices:
        low = f.vertex_images[v].degree_part(0)
        if len(low.terms) != 1 or set(low.terms.values()) != {Fraction(1)}:
            permutes = False
            break
        target = next(iter(low.terms)).vertex
        if target in seen:
            permutes = False
            break
        seen[target] = v
    graded_id = all(
        f.vertex_images[v].degree_part(0) == algebra.stationary(v)
        for v in algebra.quiver.vertices) and all(
        f.arrow_images[a].degree_part(1) == algebra.arrow(a)
        for a in algebra.quiver.arrow_by_name)
    return MembershipFlags(fixes, permutes, graded_id)


def invert_graded(f):
    """Inverse of a certified graded endomorphism (vertex permutation plus an
    invertible linear substitution of arrows); raises when singular."""
    algebra = f.algebra
    flags = membership(f)
    if not flags.permutes_vertices:
        raise CertificationError("graded map does not permute vertices")
    perm = {next(iter(f.vertex_images[v].degree_part(0).terms)).vertex: v
            for v in algebra.quiver.vertices}
    arrows = sorted(algebra.quiver.arrow_by_name)
    idx = {a: i for i, a in enumerate(arrows)}
    rows = [[Fraction(0)] * len(arrows) for _ in arrows]
    for a in arrows:
        img = f.arrow_images[a]
        if img.degree_part(1) != img:
            raise CertificationError(f"image of {a} is not homogeneous of degree 1")
        for p, c in img.terms.items():
            rows[idx[a]][idx[p.first_arrow]] = c
    inv = matrix_inverse(rows)
    if inv is None:
        raise CertificationError("graded endomorphism is singular")
    g = Endomorphism(
        algebra,
        {v: algebra.stationary(perm[v]) for v in algebra.quiver.vertices},
        {a: algebra.element({Path.of((b,)): inv[idx[a]][idx[b]] for b in arrows})
         for a in arrows})
    g = verify_endomorphism(g)
    g.inverse = f
    f.inverse = g
    return g


class Derivation:
    """Derivation vanishing on stationary paths, given by arrow images."""

    def __init__(self, algebra, arrow_images, type_tags=frozenset()):
        self.algebra = algebra
        self.arrow_images = {a: img for a, img in arrow_images.items()
                             if not img.is_zero}
        self.type_tags = frozenset(type_tags)
        self._path_cache = {}

    @property
    def is_zero(self):
        return not self.arrow_images

    def image_of_arrow(self, a):
        return self.arrow_images.get(a, self.algebra.zero())

    def apply_path(self, path):
        if path in self._path_cache:
            return self._path_cache[path]
        algebra = self.algebra
        if path.is_stationary:
            out = algebra.zero()
        else:
            out = algebra.zero()
            arrows = path.arrows
            for i, a in enumerate(arrows):
                mid = self.arrow_images.get(a)
                if mid is None:
                    continue
                piece = mid
                if i > 0:
                    piece = algebra.path_element(arrows[:i]) * piece
                if i + 1 < len(arrows):
                    piece = piece * algebra.path_element(arrows[i + 1:])
                out = out + piece
        self._path_cache[path] = out
        return out

    def apply(self, x):
        if isinstance(x, Path):
            return self.apply_path(x)
        out = self.algebra.zero()
        for p, c in x.terms.items():
            out = out + self.apply_path(p).scale(c)
        return out

    def scaled(self, c):
        return make_derivation(
            self.algebra, [(a, img.scale(c)) for a, img in self.arrow_images.items()])

    def negated(self):
        return self.scaled(-1)

    def plus(self, other):
        merged = dict(self.arrow_images)
        for a, img in other.arrow_images.items():
            merged[a] = merged.get(a, self.algebra.zero()) + img
        return make_derivation(self.algebra, list(merged.items()))

    def assignments(self):
        return sorted(self.arrow_images.items())


def make_derivation(algebra, assignments):
    """Build and certify a derivation from (arrow, element) assignments.

    Each basis path in a target must be parallel to its arrow, left maximal
    or starting with it, and right maximal or ending with it; the induced
    map must kill every relation generator.  Classifies the result by type
    tags (the zero derivation carries all three).
    """
    q = algebra.quiver
    merged = {}
    for a, img in assignments:
        if a not in q.arrow_by_name:
            raise DerivationError(f"unknown arrow {a}")
        merged[a] = merged.get(a, algebra.zero()) + img
    merged = {a: img for a, img in merged.items() if not img.is_zero}
    for a, img in merged.items():
        src, tgt = q.source(a), q.target(a)
        for p in img.terms:
            if q.path_source(p) != src or q.path_target(p) != tgt:
                raise DerivationError(f"target path {p} is not parallel to {a}")
            if p.first_arrow != a and not is_left_maximal(algebra, p):
                raise DerivationError(
                    f"target path {p} of {a} is neither left maximal nor starts with {a}")
            if p.last_arrow != a and not is_right_maximal(algebra, p):
                raise DerivationError(
                    f"target path {p} of {a} is neither right maximal nor ends with {a}")
    d = Derivation(algebra, merged)
    for g in algebra.relations:
        if not d.apply_path(g).is_zero:
            raise DerivationError(f"derivation does not vanish on relation {g}")
    d.type_tags = _classify_derivation(algebra, merged)
    return d


def _classify_derivation(algebra, arrow_images):
    if not arrow_images:
        return frozenset({CYCLE, MAXIMAL, PARALLEL})
    tags = set()
    cycle_arrows = algebra.cycle_arrows()
    if all(a not in cycle_arrows
           and all(p.first_arrow == a and p.last_arrow == a and p.length >= 2
                   for p in img.terms)
           for a, img in arrow_images.items()):
        tags.add(CYCLE)
    if all(p.length > 1 and is_left_maximal(algebra, p)
           for img in arrow_images.values() for p in img.terms):
        tags.add(MAXIMAL)
    if all(_is_parallel_assignment(algebra, a, img) for a, img in arrow_images.items()):
        tags.add(PARALLEL)
    return frozenset(tags) if tags else frozenset({OTHER})


def _is_parallel_assignment(algebra, a, img):
    if len(img.terms) != 1:
        return False
    bar = parallel_maximal(algebra, a)
    return bar is not None and next(iter(img.terms)) == bar


def default_nilpotency_cap(algebra):
    """One more than the longest finite maximal path length (at least 2)."""
    report = classify_maximal(algebra)
    longest = max((p.length for p in report.finite_maximal), default=0)
    return max(longest + 1, 2)


def exponentiate(d, cap=None):
    """Exponential automorphism of a locally nilpotent derivation.

    Iterates the derivation on each generator until it vanishes, dividing by
    factorials; raises CapExceededError when the iteration cap is hit (the
    derivation is then not locally nilpotent, or the cap is too small).
    The returned endomorphism is certified and carries its inverse.
    """
    f = _exponential(d, cap)
    g = _exponential(d.negated(), cap)
    f.inverse, g.inverse = g, f
    return f


def _exponential(d, cap):
    algebra = d.algebra
    cap = cap if cap is not None else default_nilpotency_cap(algebra)
    arrow_images = {}
    for a in algebra.quiver.arrow_by_name:
        total = algebra.arrow(a)
        term = algebra.arrow(a)
        k = 0
        factorial = 1
        while not term.is_zero:
            k += 1
            if k > cap:
                raise CapExceededError(
                    f"derivation is not nilpotent on {a} within {cap} iterations")
            factorial *= k
            term = d.apply(term)
            total = total + term.scale(Fraction(1, factorial))
        arrow_images[a] = total
    f = Endomorphism(
        algebra,
        {v: algebra.stationary(v) for v in algebra.quiver.vertices},
        arrow_images)
    return verify_endomorphism(f)


@dataclass(frozen=True)
class Unit:
    """Invertible element with its exactly verified two-sided inverse."""

    value: Element
    inverse: Element

    def __post_init__(self):
        one = self.value.algebra.one()
        if self.value * self.inverse != one or self.inverse * self.value != one:
            raise NotAUnitError("inverse verification failed")


def geometric_inverse(y, bound=None):
    """Inverse of 1 + y for nilpotent y, by the terminating geometric series."""
    algebra = y.algebra
    bound = bound if bound is not None else algebra.max_path_length + 1
    total = algebra.one()
    power = -y
    k = 0
    while not power.is_zero:
        k += 1
        if k > bound:
            raise NotAUnitError("geometric series did not terminate")
        total = total + power
        power = power * (-y)
    return total


def invert_unit(u):
    """Two-sided inverse of an element, or NotAUnitError naming the failure.

    The degree-zero part must have a nonzero coefficient at every vertex.
    The positive part splits across the arrow partition; the radical block
    inverts by a terminating geometric series, while each infinite-cycle
    block inverts through its polynomial-matrix embedding (possible exactly
    when the image determinant is a nonzero constant).
    """
    from .polymat import cycle_embedding, poly_matrix_inverse

    algebra = u.algebra
    low = u.degree_part(0)
    coeffs = {p.vertex: c for p, c in low.terms.items()}
    missing = [v for v in algebra.quiver.vertices if not coeffs.get(v)]
    if missing:
        raise NotAUnitError(f"degree-0 part vanishes at vertex {missing[0]}")
    low_inv = algebra.element(
        {Path.stationary(v): Fraction(1) / coeffs[v] for v in algebra.quiver.vertices})
    y = low_inv * (u - low)
    parts = {}
    for p, c in y.terms.items():
        parts.setdefault(component_of_path(algebra, p), {})[p] = c
    inverse = algebra.one()
    for key in sorted(parts, key=lambda k: (k is not None, k)):
        block = algebra.element(parts[key])
        if key is None:
            inverse = inverse * geometric_inverse(block)
        else:
            comp = algebra  # component elements live in the parent algebra
            sub_algebra, to_sub, from_sub = _component_context(comp, key)
            emb = cycle_embedding(sub_algebra)
            mat = emb.embed(sub_algebra.one() + to_sub(block))
            try:
                inv_mat = poly_matrix_inverse(mat)
            except NotInvertibleError as exc:
                raise NotAUnitError(
                    f"block of infinite maximal path {key} is not invertible "
                    f"(det = {exc.determinant})") from exc
            inverse = inverse * from_sub(emb.preimage(inv_mat) - sub_algebra.one())
    result = inverse * low_inv
    return Unit(u, result)


def _component_context(algebra, index):
    """Component algebra of one infinite maximal path plus element transport.

    Transport shifts only the positive parts: `to_sub` embeds a combination
    of block paths, `from_sub` maps a component element back, replacing the
    component identity by the parent identity (extension by one).
    """
    sub_algebra = component_algebra(algebra, index)

    def to_sub(x):
        return sub_algebra.element(dict(x.terms))

    def from_sub(x):
        return algebra.element(dict(x.terms)) + algebra.one()

    return sub_algebra, to_sub, from_sub


def component_algebra(algebra, index):
    """Standalone presentation of one infinite-maximal-path block."""
    key = ("component_algebra", index)
    if key in algebra._cache:
        return algebra._cache[key]
    cyc = algebra.infinite_cycles()[index]
    names = set(cyc)
    q = algebra.quiver
    vertices = sorted({q.source(a) for a in names} | {q.target(a) for a in names})
    arrows = [(a.name, a.source, a.target)
              for a in q.arrows if a.name in names]
    gens = [g for g in algebra.relations if set(g.arrows) <= names]
    sub_quiver = Quiver(vertices, arrows)
    pres = AlgebraPresentation.build(sub_quiver, RelationSet(sub_quiver, gens))
    if pres.classification != "locally-gentle":
        raise RuntimeError(
            f"infinite-maximal-path block is {pres.classification}, not locally gentle")
    sub = PathAlgebra(pres, max_path_length=algebra.max_path_length)
    algebra._cache[key] = sub
    return sub


def inner_automorphism(u):
    """Conjugation by a unit whose degree-zero part is the identity."""
    if not isinstance(u, Unit):
        u = invert_unit(u)
    algebra = u.value.algebra
    if u.value.degree_part(0) != algebra.one():
        raise NotAUnitError("conjugation requires a unit congruent to 1 mod positive degree")
    f = Endomorphism(
        algebra,
        {v: u.inverse * algebra.stationary(v) * u.value
         for v in algebra.quiver.vertices},
        {a: u.inverse * algebra.arrow(a) * u.value
         for a in algebra.quiver.arrow_by_name})
    f = verify_endomorphism(f)
    g = Endomorphism(
        algebra,
        {v: u.value * algebra.stationary(v) * u.inverse
         for v in algebra.quiver.vertices},
        {a: u.value * algebra.arrow(a) * u.inverse
         for a in algebra.quiver.arrow_by_name})
    g = verify_endomorphism(g)
    f.inverse, g.inverse = g, f
    return f


# -- morphism file format -----------------------------------------------------


def parse_endomorphism(algebra, text):
    """Parse `map e_<v> = <element>` / `map <arrow> = <element>` lines.

    Generators without a line default to themselves, so a file listing only
    the moved arrows describes the full map.
    """
    vertex_images = {v: algebra.stationary(v) for v in algebra.quiver.vertices}
    arrow_images = {a: algebra.arrow(a) for a in algebra.quiver.arrow_by_name}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("map ") or "=" not in line:
            raise ElementFormatError(f"line {lineno}: expected `map <generator> = <element>`")
        lhs, rhs = line[4:].split("=", 1)
        lhs = lhs.strip()
        img = parse_element(algebra, rhs.strip())
        if lhs.startswith("e_"):
            v = lhs[2:]
            if v not in algebra.quiver.arrows_from:
                raise ElementFormatError(f"line {lineno}: unknown vertex {v}")
            vertex_images[v] = img
        elif lhs in algebra.quiver.arrow_by_name:
            arrow_images[lhs] = img
        else:
            raise ElementFormatError(f"line {lineno}: unknown generator {lhs}")
    return Endomorphism(algebra, vertex_images, arrow_images)


def parse_derivation(algebra, text):
    """Parse `map <arrow> = <element>` lines into a certified derivation."""
    assignments = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("map ") or "=" not in line:
            raise ElementFormatError(f"line {lineno}: expected `map <arrow> = <element>`")
        lhs, rhs = line[4:].split("=", 1)
        lhs = lhs.strip()
        if lhs not in algebra.quiver.arrow_by_name:
            raise ElementFormatError(f"line {lineno}: unknown arrow {lhs}")
        assignments.append((lhs, parse_element(algebra, rhs.strip())))
    return make_derivation(algebra, assignments)


def format_endomorphism(f):
    lines = []
    for v in sorted(f.vertex_images):
        lines.append(f"map e_{v} = {format_element(f.vertex_images[v])}")
    for a in sorted(f.arrow_images):
        lines.append(f"map {a} = {format_element(f.arrow_images[a])}")
    return "\n".join(lines)
