"""Polynomial matrices, the triangular-at-zero Smith factorization, and the
one-cycle matrix embedding."""

import random
from fractions import Fraction

import pytest

from stringalg import parse_quiver
from stringalg.errors import NotInImageError, NotInvertibleError, ShapeError
from stringalg.maximal import classify_maximal, cycle_sum
from stringalg.polymat import (Poly, PolyMatrix, cycle_embedding, format_poly,
                               format_poly_matrix, modified_smith,
                               parse_poly, parse_poly_matrix,
                               poly_matrix_inverse, embed_in_matrix_ring, matrix_ring_preimage,
                               smith_elimination_step, _pivot_position)

from conftest import SOURCES, make_algebra

EXAMPLE_MATRIX = """
6*x^3 - 4*x^2, -3*x + 2, 9*x^2 - 4;
2*x^2 - 1, -1, 3*x + 2;
2*x^3, -x + 1, 3*x^2 + 2*x
"""


def test_poly_arithmetic():
    p = parse_poly("3*x^2 - 1")
    q = parse_poly("x + 2")
    assert format_poly(p * q) == "3*x^3 + 6*x^2 - 1*x - 2"
    quo, rem = divmod(p, q)
    assert p == quo * q + rem
    assert rem.degree < q.degree
    assert parse_poly("0").is_zero
    assert parse_poly("0").degree == -1


def test_poly_parse_variants():
    assert parse_poly("6x^3") == Poly.x(3, 6)
    assert parse_poly("-x + 1") == Poly((1, -1))
    assert parse_poly("3/2*x") == Poly((0, Fraction(3, 2)))
    assert parse_poly(format_poly(Poly((Fraction(1, 3), 0, -2)))) == \
        Poly((Fraction(1, 3), 0, -2))


def test_first_elimination_matches_worked_example():
    m = parse_poly_matrix(EXAMPLE_MATRIX)
    assert _pivot_position(m) == (1, 1)
    u0, m1, v0 = smith_elimination_step(m, 1, 1)
    assert u0 == parse_poly_matrix("1, -3*x + 2, 0; 0, 1, 0; 0, -x, 1")
    assert v0 == parse_poly_matrix("1, 0, 0; 2*x^2, 1, 3*x + 2; 0, 0, 1")
    assert m1 == parse_poly_matrix("3*x - 2, 0, 0; -1, -1, 0; 2*x^2 + x, 1, 3*x + 2")


def test_second_elimination_matches_worked_example():
    m1 = parse_poly_matrix("3*x - 2, 0, 0; -1, -1, 0; 2*x^2 + x, 1, 3*x + 2")
    assert _pivot_position(m1) == (2, 1)
    u1, m2, v1 = smith_elimination_step(m1, 2, 1)
    assert u1 == parse_poly_matrix("1, 0, 0; 0, 1, 1; 0, 0, 1")
    assert v1 == parse_poly_matrix("1, 0, 0; -2*x^2 - x, 1, -3*x - 2; 0, 0, 1")
    assert m2 == parse_poly_matrix("3*x - 2, 0, 0; 2*x^2 + x - 1, 0, 3*x + 2; 0, 1, 0")


def test_worked_example_factorization_is_exact():
    m = parse_poly_matrix(EXAMPLE_MATRIX)
    fact = modified_smith(m)
    assert fact.verify(m)
    assert fact.U.is_unit_upper_at_zero()
    assert fact.V.is_unit_upper_at_zero()
    assert fact.product() == m


def test_already_diagonal_matrix():
    m = parse_poly_matrix("x, 0; 0, x^2 + 1")
    fact = modified_smith(m)
    assert fact.U == PolyMatrix.identity(2)
    assert fact.V == PolyMatrix.identity(2)
    assert fact.sigma == (0, 1)
    assert fact.D == m


def test_zero_matrix():
    m = PolyMatrix.zero(3)
    fact = modified_smith(m)
    assert fact.verify(m)
    assert fact.D == m


def _random_matrix(rng, n, max_degree=3, span=9):
    return PolyMatrix([
        [Poly([Fraction(rng.randint(-span, span))
               for _ in range(rng.randint(0, max_degree) + 1)])
         for _ in range(n)]
        for _ in range(n)])


def test_random_factorization_properties():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 4)
        m = _random_matrix(rng, n)
        fact = modified_smith(m)
        assert fact.verify(m)
        det_m = m.determinant()
        det_d = fact.D.determinant()
        assert det_m == det_d or det_m == -det_d


def test_triangular_at_zero_closed_under_product_and_inverse():
    m = parse_poly_matrix(EXAMPLE_MATRIX)
    u0, m1, v0 = smith_elimination_step(m, 1, 1)
    u1, m2, v1 = smith_elimination_step(m1, 2, 1)
    prod = u1 * u0
    assert prod.is_unit_upper_at_zero()
    inv = poly_matrix_inverse(prod)
    assert inv.is_unit_upper_at_zero()
    assert inv * prod == PolyMatrix.identity(3)


def test_elimination_factor_inverse_is_reflection():
    # (U0 - I)^2 = 0, so the inverse is I - (U0 - I)
    m = parse_poly_matrix(EXAMPLE_MATRIX)
    u0, _, v0 = smith_elimination_step(m, 1, 1)
    eye = PolyMatrix.identity(3)
    assert poly_matrix_inverse(u0) == eye.scale(2) - u0
    assert poly_matrix_inverse(v0) == eye.scale(2) - v0


def test_poly_matrix_inverse_errors():
    with pytest.raises(NotInvertibleError) as err:
        poly_matrix_inverse(parse_poly_matrix("1, 0; 0, x"))
    assert err.value.determinant == Poly.x()
    assert poly_matrix_inverse(PolyMatrix.identity(3)) == PolyMatrix.identity(3)


# -- the one-cycle embedding -------------------------------------------------


def test_embedding_of_generators(cycle_free):
    emb = cycle_embedding(cycle_free)
    assert emb.embed(cycle_free.arrow("a")) == parse_poly_matrix("0, 1; 0, 0")
    assert emb.embed(cycle_free.arrow("b")) == parse_poly_matrix("0, 0; x, 0")
    ab = cycle_free.path_element(("a", "b"))
    assert emb.embed(ab) == parse_poly_matrix("x, 0; 0, 0")
    assert emb.embed(cycle_free.one()) == PolyMatrix.identity(2)


def test_embedding_of_central_cycle_sum(cycle_free):
    rep = classify_maximal(cycle_free)
    m = cycle_sum(cycle_free, rep.infinite_maximal[0])
    assert embed_in_matrix_ring(cycle_free, m) == parse_poly_matrix("x, 0; 0, x")


def test_preimage_examples(cycle_free):
    assert matrix_ring_preimage(cycle_free, parse_poly_matrix("x, 0; 0, x")) == \
        cycle_free.path_element(("a", "b")) + cycle_free.path_element(("b", "a"))
    assert matrix_ring_preimage(cycle_free, PolyMatrix.identity(2)) == cycle_free.one()
    with pytest.raises(NotInImageError) as err:
        matrix_ring_preimage(cycle_free, parse_poly_matrix("0, 0; 1, 0"))
    assert "below the diagonal" in str(err.value)


def test_preimage_diagonal_mismatch():
    two_loops = make_algebra(SOURCES["two_loops"])
    # both loop arrows share the single vertex, so unequal diagonal
    # constants cannot come from a stationary path
    with pytest.raises(NotInImageError) as err:
        matrix_ring_preimage(two_loops, parse_poly_matrix("1, 0; 0, 2"))
    assert "disagree" in str(err.value)


def test_embedding_is_multiplicative_unital_injective():
    rng = random.Random(17)
    for name in ("two_cycle_free", "three_cycle_free", "two_loops"):
        algebra = make_algebra(SOURCES[name])
        emb = cycle_embedding(algebra)
        basis = algebra.enumerate_basis(6)
        images = {}
        for p in basis:
            mat = emb.embed(algebra.path_element(p))
            assert mat not in images.values(), name  # injective on the basis
            images[p] = mat
        for _ in range(15):
            x = algebra.element({
                p: Fraction(rng.randint(-3, 3)) for p in rng.sample(basis, 3)})
            y = algebra.element({
                p: Fraction(rng.randint(-3, 3)) for p in rng.sample(basis, 3)})
            assert emb.embed(x * y) == emb.embed(x) * emb.embed(y), name
            assert emb.preimage(emb.embed(x)) == x, name


def test_embedding_requires_single_cycle_shape(ex_string, cycle_pendant):
    with pytest.raises(ShapeError):
        cycle_embedding(ex_string)
    with pytest.raises(ShapeError):
        cycle_embedding(cycle_pendant)


def test_matrix_format_round_trip():
    m = parse_poly_matrix(EXAMPLE_MATRIX)
    assert parse_poly_matrix(format_poly_matrix(m)) == m
