from fractions import Fraction

import numpy as np
import pytest

from figlab.errors import DimensionMismatchError, FieldError
from figlab.linalg import (
    FieldSpec,
    Subspace,
    image_basis,
    kernel_basis,
    quotient_map,
    quotient_section,
    rank,
    rref,
    saturate,
    solve,
)


def test_field_construction():
    assert str(FieldSpec.rationals()) == "Q"
    assert str(FieldSpec.prime(7)) == "F7"
    with pytest.raises(FieldError):
        FieldSpec.prime(9)
    with pytest.raises(FieldError):
        FieldSpec.prime(2**31 + 11)


def test_parse_and_format_elements(Q, F3):
    assert Q.parse("-3/6") == Fraction(-1, 2)
    assert Q.format(Fraction(4, 2)) == "2"
    assert F3.parse("2") == 2
    with pytest.raises(FieldError):
        F3.parse("3")
    with pytest.raises(FieldError):
        Q.parse("1/2/3")
    assert F3.coerce(-1) == 2


def test_inverse_over_prime_field(F3):
    assert F3.inverse(2) == 2
    with pytest.raises(ZeroDivisionError):
        F3.inverse(0)


def test_rref_over_rationals(Q):
    m = Q.array([[2, 4], [1, 3]])
    reduced, pivots = rref(Q, m)
    assert pivots == (0, 1)
    assert Q.equal(reduced, Q.identity(2))


def test_rank_depends_on_characteristic(Q, F2):
    data = [[1, 1], [1, -1]]
    assert rank(Q, Q.array(data)) == 2
    assert rank(F2, F2.array(data)) == 1


def test_kernel_and_image_dimensions(Q):
    m = Q.array([[1, 2, 3], [2, 4, 6]])
    assert kernel_basis(Q, m).dim == 2
    assert image_basis(Q, m).dim == 1
    k = kernel_basis(Q, m)
    assert Q.is_zero(Q.matmul(m, k.inclusion()))


def test_quotient_map_kills_subspace(F3):
    space = Subspace.span(F3, 3, F3.array([[1, 1, 0]]))
    q = quotient_map(F3, 3, space)
    assert q.shape == (2, 3)
    assert F3.is_zero(F3.matmul(q, space.inclusion()))
    lift = quotient_section(F3, 3, space)
    assert F3.equal(F3.matmul(q, lift), F3.identity(2))


def test_subspace_equality_is_canonical(Q):
    a = Subspace.span(Q, 2, Q.array([[1, 1]]))
    b = Subspace.span(Q, 2, Q.array([[3, 3]]))
    assert a == b
    assert a.contains(Q.array([2, 2]))
    assert not a.contains(Q.array([1, 0]))


def test_solve(Q):
    m = Q.array([[1, 1], [0, 1]])
    x = solve(Q, m, Q.array([3, 1]))
    assert list(x) == [2, 1]
    assert solve(Q, Q.array([[1], [1]]), Q.array([1, 0])) is None


def test_saturate_reaches_invariant_span(Q):
    swap = Q.array([[0, 1], [1, 0]])
    start = Subspace.span(Q, 2, Q.array([[1, 0]]))
    assert saturate(Q, start, [swap]).dim == 2


def test_matmul_shape_mismatch(Q):
    with pytest.raises(DimensionMismatchError):
        Q.matmul(Q.zeros(2, 3), Q.zeros(2, 2))


def test_prime_arithmetic_stays_reduced(F3):
    a = F3.array([[2, 2], [2, 2]])
    out = F3.matmul(a, a)
    assert out.dtype == np.int64
    assert out.tolist() == [[2, 2], [2, 2]]
