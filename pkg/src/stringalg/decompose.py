"""Constructive decomposition of automorphisms into exponential, endpoint
preserving, and inner factors, plus the outer-class report for gentle
presentations.

The pipeline peels factors off the input one degree level at a time:

1. a "maximal" exponential factor moving arrows by parallel maximal paths,
2. one inner factor per infinite maximal path, found by solving a
   commutation system in the block's polynomial-matrix embedding,
3. an inner vertex correction followed by a level-by-level tower over the
   radical, yielding a maximal-type exponential, an endpoint-preserving
   factor, and an inner unit.

Every decomposition is re-verified exactly against the input before it is
returned; factors are emitted in the fixed order [exponential,
endpoint-preserving, inner], preceded by a graded factor when the input is
not graded-identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ._linalg import nullspace, solve_affine
from .errors import (CapExceededError, CertificationError, DecompositionError,
                     ShapeError)
from .maximal import (component_of_path, is_left_maximal, is_right_maximal,
                      parallel_maximal)
from .morphisms import (Derivation, Endomorphism, MAXIMAL, Unit,
                        component_algebra, exponentiate, geometric_inverse,
                        graded_part, inner_automorphism, invert_graded,
                        invert_unit, make_derivation, membership,
                        verify_endomorphism)
from .polymat import Poly, PolyMatrix, cycle_embedding, modified_smith, poly_gcd
from .quiver import Path

EXP_MAXIMAL = "exp-maximal"              # exponential of a maximal-type derivation
ENDPOINT_PRESERVING = "endpoint-preserving"   # generated by cycle-type exponentials
INNER = "inner"
GRADED = "graded"


@dataclass(frozen=True)
class Factor:
    kind: str
    endomorphism: Endomorphism
    derivation: Optional[Derivation] = None
    unit: Optional[Unit] = None

    @property
    def is_trivial(self):
        return self.endomorphism.is_identity()


@dataclass(frozen=True)
class Decomposition:
    """Ordered factors whose composition reproduces the input exactly."""

    factors: tuple
    residual: Endomorphism

    def compose(self):
        out = self.residual
        for factor in reversed(self.factors):
            out = factor.endomorphism.compose(out)
        return out

    def factor(self, kind):
        found = [f for f in self.factors if f.kind == kind]
        return found[0] if found else None


@dataclass(frozen=True)
class OuterClassReport:
    shape: str                 # kronecker | doubled-line | doubled-cycle | general-gentle
    group_description: str
    n_parallel_maximal: int    # arrows admitting a parallel maximal path


# -- stage 1: peel the parallel-maximal-path part ------------------------------


def peel_maximal(f):
    """Split off the exponential factor moving arrows by maximal paths.

    For graded-identity f, each arrow image decomposes as (terms containing
    the arrow) + y with y a combination of finite maximal paths parallel to
    the arrow; returns (d, g) with g = exp(d) o f fixing every arrow into
    the ideal it generates.
    """
    algebra = f.algebra
    if algebra.is_polynomial_ring:
        raise ShapeError("peel requires an algebra beyond the one-loop free algebra")
    if not f.certified or not membership(f).graded_identity:
        raise CertificationError("peel requires a certified graded-identity input")
    assignments = []
    for a in sorted(algebra.quiver.arrow_by_name):
        stray = {p: c for p, c in f.arrow_images[a].terms.items()
                 if a not in p.arrows}
        for p in stray:
            if p.length <= 1:
                raise DecompositionError(
                    f"image of {a} has a stray degree-{p.length} term {p}")
            if not (is_left_maximal(algebra, p) and is_right_maximal(algebra, p)):
                raise DecompositionError(
                    f"image of {a} contains non-maximal stray path {p}")
        if stray:
            assignments.append((a, algebra.element(stray).scale(-1)))
    d = make_derivation(algebra, assignments)
    if not d.is_zero and MAXIMAL not in d.type_tags:
        raise DecompositionError("stray parts do not form a maximal-type derivation")
    g = exponentiate(d).compose(f)
    g = verify_endomorphism(g)
    return d, g


# -- stage 2: conjugation solve on a one-cycle block ---------------------------


def solve_conjugation_unique_max(f, degree_cap=32):
    """Conjugating unit for a graded-identity automorphism of a locally
    gentle algebra with a unique infinite maximal path.

    Transports the commutation condition through the polynomial-matrix
    embedding, solves for a matrix intertwiner of bounded degree (growing
    the bound up to degree_cap), factors it through the modified Smith
    form, and reads the unit off the triangular factors.  The permutation
    must be trivial and the diagonal constant, or the input was not an
    automorphism.
    """
    algebra = f.algebra
    if algebra.is_polynomial_ring:
        raise ShapeError("the one-loop free algebra has no conjugation solver")
    if not f.certified or not membership(f).graded_identity:
        raise CertificationError("solver requires a certified graded-identity input")
    emb = cycle_embedding(algebra)
    images = [(emb.embed(algebra.path_element(g)), emb.embed(f.apply(g)))
              for g in algebra.generators()]
    intertwiner = None
    for degree in range(degree_cap + 1):
        intertwiner = _solve_intertwiner(images, emb.n, degree)
        if intertwiner is not None:
            break
    if intertwiner is None:
        raise CapExceededError(
            f"no polynomial intertwiner up to degree {degree_cap}")
    p = _primitive(intertwiner)
    if p.determinant().is_zero:
        raise DecompositionError("intertwiner is singular; input is not an automorphism")
    fact = modified_smith(p)
    if fact.sigma != tuple(range(emb.n)):
        raise DecompositionError("intertwiner forces a nontrivial permutation")
    diag = [fact.D.entry(i, i) for i in range(emb.n)]
    if any(d != diag[0] for d in diag):
        raise DecompositionError("intertwiner forces a nonconstant diagonal ratio")
    u_elt = emb.preimage(fact.U)
    v_elt = emb.preimage(fact.V)
    unit = invert_unit(u_elt * v_elt)
    if inner_automorphism(unit) != f:
        raise DecompositionError("conjugation verification failed")
    return unit


def _solve_intertwiner(images, n, degree):
    """Nonzero P over Q[x] of entry degree <= degree with
    P * embed(f(g)) = embed(g) * P for all generators, or None."""
    unknowns = n * n * (degree + 1)

    def var(i, j, k):
        return (i * n + j) * (degree + 1) + k

    rows = []
    for before, after in images:
        max_deg = degree + max(
            max((before.entry(i, j).degree for i in range(n) for j in range(n)), default=0),
            max((after.entry(i, j).degree for i in range(n) for j in range(n)), default=0))
        for r in range(n):
            for c in range(n):
                for e in range(max_deg + 1):
                    row = [Fraction(0)] * unknowns
                    hit = False
                    for m in range(n):
                        a_pol = after.entry(m, c)
                        for k in range(degree + 1):
                            coeff = a_pol.monomial_coefficient(e - k) if 0 <= e - k <= a_pol.degree else Fraction(0)
                            if coeff:
                                row[var(r, m, k)] += coeff
                                hit = True
                        b_pol = before.entry(r, m)
                        for k in range(degree + 1):
                            coeff = b_pol.monomial_coefficient(e - k) if 0 <= e - k <= b_pol.degree else Fraction(0)
                            if coeff:
                                row[var(m, c, k)] -= coeff
                                hit = True
                    if hit:
                        rows.append(row)
    basis = nullspace(rows, unknowns)
    if not basis:
        return None
    vec = basis[0]
    entries = [[Poly(vec[var(i, j, k)] for k in range(degree + 1)) for j in range(n)]
               for i in range(n)]
    return PolyMatrix(entries)


def _primitive(m):
    """Divide out the monic polynomial content and normalize the sign."""
    content = Poly()
    for row in m.rows:
        for e in row:
            if e:
                content = poly_gcd(content, e) if content else e
    if content.is_zero:
        return m
    content = content * (Fraction(1) / content.coeffs[-1])
    out = PolyMatrix([[e.exact_div(content) if e else e for e in row] for row in m.rows])
    lead = next(e for row in out.rows for e in row if e)
    if lead.coeffs[-1] < 0:
        out = out.scale(-1)
    return out


# -- stage 3: the level tower over the radical ----------------------------------


def _radical_tower(f, graded_check=True):
    """Peel f (vertex fixing, arrows moved inside the radical) level by level.

    Returns (d, rho, rho_inverse, u) with f = exp(d) o rho o conj(u) exactly;
    d is a maximal-type derivation, rho a composition of cycle-type
    exponentials carrying its inverse, and u a unit congruent to 1.
    """
    algebra = f.algebra
    bound = algebra.radical_degree_bound()
    for v in algebra.quiver.vertices:
        if f.vertex_images[v] != algebra.stationary(v):
            raise DecompositionError(f"input does not fix e_{v}")
    cycle_arrows = algebra.cycle_arrows()
    for a in sorted(algebra.quiver.arrow_by_name):
        moved = f.arrow_images[a] - algebra.arrow(a)
        if any(component_of_path(algebra, p) is not None for p in moved.terms):
            raise DecompositionError(f"image of {a} moves an infinite-maximal-path block")
    d_acc = make_derivation(algebra, [])
    rho = Endomorphism.identity(algebra)
    rho_inv = Endomorphism.identity(algebra)
    u_acc = algebra.one()
    current = f
    while True:
        levels = [img - algebra.arrow(a) for a, img in current.arrow_images.items()]
        degrees = [x.min_degree() for x in levels if not x.is_zero]
        if not degrees:
            break
        n = min(degrees)
        if graded_check and n <= 1:
            raise DecompositionError("input is not graded-identity on arrows")
        if n > bound:
            raise DecompositionError(
                "moved parts persist beyond the radical degree bound; "
                "input is not an automorphism")
        # stage A: cancel terms starting with their own arrow by an inner factor
        y_terms = {}
        for a in algebra.quiver.arrow_by_name:
            part = (current.arrow_images[a] - algebra.arrow(a)).degree_part(n)
            for p, c in part.terms.items():
                if p.first_arrow == a:
                    tail = Path.of(p.arrows[1:])
                    y_terms[tail] = y_terms.get(tail, Fraction(0)) + c
        y = algebra.element(y_terms)
        if not y.is_zero:
            v_value = algebra.one() - y
            v_inverse = geometric_inverse(-y)
            step = inner_automorphism(Unit(v_value, v_inverse))
            current = step.compose(current)
            u_acc = v_inverse * u_acc
        # stage B: remove returning-path terms by a cycle-type exponential
        x_assign = []
        for a in sorted(algebra.quiver.arrow_by_name):
            part = (current.arrow_images[a] - algebra.arrow(a)).degree_part(n)
            returning = {p: c for p, c in part.terms.items() if p.first_arrow == a}
            for p in returning:
                if p.last_arrow != a:
                    raise DecompositionError(
                        f"level-{n} residue {p} of {a} starts but does not end with it")
            if returning:
                x_assign.append((a, algebra.element(returning).scale(-1)))
        if x_assign:
            d_step = make_derivation(algebra, x_assign)
            step = exponentiate(d_step)
            current = step.compose(current)
            rho = rho.compose(step.inverse)
            rho_inv = step.compose(rho_inv)
            u_acc = step.apply(u_acc)
        # stage C: the rest of the level must be left maximal; exponentiate away
        m_assign = []
        for a in sorted(algebra.quiver.arrow_by_name):
            part = (current.arrow_images[a] - algebra.arrow(a)).degree_part(n)
            for p in part.terms:
                if p.first_arrow == a:
                    raise DecompositionError(
                        f"level-{n} residue of {a} still starts with it")
                if not is_left_maximal(algebra, p):
                    raise DecompositionError(
                        f"level-{n} residue {p} of {a} is not left maximal")
                if p.last_arrow != a and not is_right_maximal(algebra, p):
                    raise DecompositionError(
                        f"level-{n} residue {p} of {a} is neither right maximal "
                        f"nor ends with it")
            if not part.is_zero:
                m_assign.append((a, part.scale(-1)))
        if m_assign:
            d_step = make_derivation(algebra, m_assign)
            if MAXIMAL not in d_step.type_tags:
                raise DecompositionError(f"level-{n} residues are not maximal type")
            step = exponentiate(d_step)
            current = step.compose(current)
            d_acc = d_acc.plus(d_step.negated())
            u_acc = step.apply(u_acc)
        still = [img - algebra.arrow(a) for a, img in current.arrow_images.items()]
        if any((not x.is_zero) and x.min_degree() <= n for x in still):
            raise DecompositionError(f"level {n} did not clear")
    return d_acc, rho, rho_inv, u_acc


def _solve_inner_match(rho):
    """Unit u congruent to 1 with conjugation by u equal to rho, or None.

    Looks for u supported on 1 + radical paths by solving the linear system
    u * rho(g) = g * u over the rationals; deterministic via the echelon
    particular solution.
    """
    algebra = rho.algebra
    support = list(algebra.radical_paths())
    if not support:
        return None if not rho.is_identity() else invert_unit(algebra.one())
    index = {p: i for i, p in enumerate(support)}
    rows, rhs = [], []
    gens = algebra.generators()
    for g in gens:
        target = rho.apply(algebra.path_element(g))
        base = algebra.path_element(g)
        # constant part: 1 * rho(g) - g * 1
        const = target - base
        coeffs = {}
        for i, w in enumerate(support):
            we = algebra.path_element(w)
            diff = we * target - base * we
            for p, c in diff.terms.items():
                coeffs.setdefault(p, [Fraction(0)] * len(support))[i] += c
        for p, c in const.terms.items():
            coeffs.setdefault(p, [Fraction(0)] * len(support))
        for p, row in sorted(coeffs.items()):
            rows.append(row)
            rhs.append(-const.coefficient(p))
    sol = solve_affine(rows, rhs)
    if sol is None:
        return None
    u = algebra.one() + algebra.element(
        {p: sol[i] for p, i in index.items()})
    unit = invert_unit(u)
    if inner_automorphism(unit) != rho:
        return None
    return unit


# -- public pipeline -------------------------------------------------------------


def decompose_string(f, absorb_inner=True):
    """Decompose a vertex-fixing graded-identity automorphism of a
    finite-dimensional string presentation into [exponential,
    endpoint-preserving, inner] factors with exact recomposition."""
    algebra = f.algebra
    if not algebra.presentation.is_finite_dimensional:
        raise ShapeError("decompose_string requires a finite-dimensional presentation")
    if not f.certified:
        raise CertificationError("input endomorphism is not certified")
    flags = membership(f)
    if not flags.fixes_vertices or not flags.graded_identity:
        raise CertificationError(
            "decompose_string requires a vertex-fixing graded-identity input")
    factors = _tower_factors(f, absorb_inner=absorb_inner)
    return _verified(Decomposition(tuple(factors), Endomorphism.identity(algebra)), f)


def _tower_factors(f, absorb_inner):
    algebra = f.algebra
    d_acc, rho, rho_inv, u_value = _radical_tower(f)
    if absorb_inner and not rho.is_identity():
        match = _solve_inner_match(rho)
        if match is not None:
            u_value = u_value * match.value
            rho = Endomorphism.identity(algebra)
            rho_inv = rho
    unit = invert_unit(u_value)
    return [
        Factor(EXP_MAXIMAL, exponentiate(d_acc), derivation=d_acc),
        Factor(ENDPOINT_PRESERVING, rho),
        Factor(INNER, inner_automorphism(unit), unit=unit),
    ]


def decompose_general(f, degree_cap=32, absorb_inner=True):
    """Full decomposition of a certified automorphism of any valid
    (locally) string presentation other than the one-loop free algebra.

    A non-graded-identity input contributes a leading graded factor; the
    rest follows the three-stage pipeline.  The factor composition is
    verified exactly against the input before returning.
    """
    algebra = f.algebra
    if algebra.is_polynomial_ring:
        raise ShapeError("decompose requires an algebra beyond the one-loop free algebra")
    if not f.certified:
        raise CertificationError("input endomorphism is not certified")
    factors = []
    g = f
    if not membership(f).graded_identity:
        gr = graded_part(f)
        gr_inverse = invert_graded(gr)
        factors.append(Factor(GRADED, gr))
        g = gr_inverse.compose(f)
        g = verify_endomorphism(g)
        if not membership(g).graded_identity:
            raise DecompositionError("graded correction failed")
    # stage 1: strip parallel-maximal-path terms
    d1, g1 = peel_maximal(g)
    # stage 2: one inner unit per infinite maximal path
    block_positive = algebra.zero()
    for index in range(len(algebra.infinite_cycles())):
        sub = component_algebra(algebra, index)
        fi = _restrict_to_block(g1, index, sub)
        if sub.is_polynomial_ring:
            if not fi.is_identity():
                raise DecompositionError(
                    f"block {index} is a polynomial ring but is moved")
            continue
        unit_i = solve_conjugation_unique_max(fi, degree_cap=degree_cap)
        block_positive = block_positive + algebra.element(
            dict((unit_i.value - sub.one()).terms))
    u2 = invert_unit(algebra.one() + block_positive)
    g2 = inner_automorphism(Unit(u2.inverse, u2.value)).compose(g1)
    g2 = verify_endomorphism(g2)
    for a in sorted(algebra.cycle_arrows()):
        if g2.arrow_images[a] != algebra.arrow(a):
            raise DecompositionError(f"block correction left arrow {a} moved")
    for v in algebra.quiver.vertices:
        moved = g2.vertex_images[v] - algebra.stationary(v)
        if any(component_of_path(algebra, p) is not None for p in moved.terms):
            raise DecompositionError(
                f"block correction left the image of e_{v} moved")
    # stage 2.5: inner vertex correction into the radical tower's domain
    u3_value = algebra.zero()
    for v in algebra.quiver.vertices:
        u3_value = u3_value + g2.vertex_images[v] * algebra.stationary(v)
    u3 = invert_unit(u3_value)
    g3 = inner_automorphism(u3).compose(g2)
    g3 = verify_endomorphism(g3)
    # stage 3: radical tower
    d_acc, rho, rho_inv, u4_value = _radical_tower(g3)
    if absorb_inner and not rho.is_identity():
        match = _solve_inner_match(rho)
        if match is not None:
            u4_value = u4_value * match.value
            rho = Endomorphism.identity(algebra)
            rho_inv = rho
    # assemble: g = exp(d_acc - d1) o rho o conj(u_final)
    d_total = d_acc.plus(d1.negated())
    w = u3.inverse * u2.value
    exp_acc_inv = exponentiate(d_acc).inverse
    u_final_value = u4_value * rho_inv.apply(exp_acc_inv.apply(w))
    unit = invert_unit(u_final_value)
    factors.extend([
        Factor(EXP_MAXIMAL, exponentiate(d_total), derivation=d_total),
        Factor(ENDPOINT_PRESERVING, rho),
        Factor(INNER, inner_automorphism(unit), unit=unit),
    ])
    return _verified(Decomposition(tuple(factors), Endomorphism.identity(algebra)), f)


def _restrict_to_block(f, index, sub):
    """Automorphism induced on one infinite-maximal-path block."""
    algebra = f.algebra
    def block_part(x):
        return sub.element({p: c for p, c in x.terms.items()
                            if component_of_path(algebra, p) == index})
    vertex_images = {}
    for v in sub.quiver.vertices:
        vertex_images[v] = sub.stationary(v) + block_part(
            f.vertex_images[v] - algebra.stationary(v))
    arrow_images = {}
    for a in sub.quiver.arrow_by_name:
        arrow_images[a] = sub.arrow(a) + block_part(
            f.arrow_images[a] - algebra.arrow(a))
    g = Endomorphism(sub, vertex_images, arrow_images)
    try:
        return verify_endomorphism(g)
    except CertificationError as exc:
        raise DecompositionError(
            f"restriction to block {index} is not an endomorphism: {exc}") from exc


def _verified(decomposition, f):
    if decomposition.compose() != f:
        raise DecompositionError("recomposition does not reproduce the input")
    return decomposition


# -- outer classes of gentle presentations ----------------------------------------


def outer_class(algebra):
    """Symbolic description of vertex-fixing automorphisms modulo inner ones
    for a (locally) gentle presentation."""
    pres = algebra.presentation
    if not pres.is_gentle:
        raise ShapeError("outer class report requires a (locally) gentle presentation")
    if pres.is_polynomial_ring:
        raise ShapeError("outer class report excludes the one-loop free algebra")
    q = algebra.quiver
    n_arrows = len(q.arrows)
    n_parallel = sum(1 for a in sorted(q.arrow_by_name)
                     if parallel_maximal(algebra, a) is not None)
    if (len(q.vertices) == 2 and n_arrows == 2 and len(algebra.relations) == 0):
        a1, a2 = q.arrows
        if a1.source == a2.source and a1.target == a2.target and a1.source != a1.target:
            return OuterClassReport("kronecker", "GL_2(k)", n_parallel)
    shape = _doubled_shape(q)
    if shape is not None:
        return OuterClassReport(
            shape, f"Z/2Z ⋉ (k^x)^{n_arrows}", n_parallel)
    return OuterClassReport(
        "general-gentle", f"(k^x)^{n_arrows} ⋉ k^{n_parallel}", n_parallel)


def _doubled_shape(q):
    """Detect the doubled line / doubled cycle quivers: every pair of joined
    vertices carries exactly two parallel arrows and the collapsed simple
    graph is a path or a cycle through all vertices."""
    groups = {}
    for a in q.arrows:
        if a.source == a.target:
            return None
        groups.setdefault((a.source, a.target), []).append(a.name)
    if any(len(names) != 2 for names in groups.values()):
        return None
    degree = {v: 0 for v in q.vertices}
    for (s, t) in groups:
        degree[s] += 1
        degree[t] += 1
    if any(d > 2 for d in degree.values()) or not q.is_connected():
        return None
    n_edges = len(groups)
    n_vertices = len(q.vertices)
    if n_edges == n_vertices and all(d == 2 for d in degree.values()):
        return "doubled-cycle"
    if n_edges == n_vertices - 1 and sum(1 for d in degree.values() if d == 1) == 2:
        return "doubled-line"
    return None
