import pytest

from figlab.errors import GroupValidationError, RepresentationError
from figlab.groups import (
    FiniteGroup,
    GnElement,
    Letter,
    RepMatrices,
    WreathContext,
    cyclic_group,
    generator_letters,
    induce_rep,
    regular_rep,
    restrict_rep,
    sign_rep,
    trivial_rep,
    validate_rep,
)


def test_cyclic_group_tables():
    c3 = cyclic_group(3)
    assert c3.order == 3
    assert c3.inverses == (0, 2, 1)
    assert c3.label() == "G3"


def test_non_associative_table_is_rejected():
    # a Latin square with identity 0 that is not a group
    mul = [[0, 1, 2, 3, 4],
           [1, 0, 3, 4, 2],
           [2, 4, 0, 1, 3],
           [3, 2, 4, 0, 1],
           [4, 3, 1, 2, 0]]
    with pytest.raises(GroupValidationError):
        FiniteGroup(5, tuple(tuple(r) for r in mul), (1, 2))


def test_generators_must_generate():
    with pytest.raises(GroupValidationError):
        FiniteGroup(2, ((0, 1), (1, 0)), ())


def test_generator_letters():
    assert generator_letters(1, 3) == (Letter("s", 0), Letter("s", 1), Letter("a", 0))
    assert generator_letters(1, 0) == ()


def test_wreath_order_and_elements(c2):
    ctx = WreathContext(c2)
    assert ctx.order_of(2) == 8
    assert len(ctx.elements(2)) == 8
    assert ctx.elements(2)[0] == ctx.identity(2)


def test_factor_evaluates_back(c2):
    ctx = WreathContext(c2)
    for x in ctx.elements(3):
        assert ctx.evaluate(ctx.factor(x)) == x


def test_inverse_and_compose(c2):
    ctx = WreathContext(c2)
    for x in ctx.elements(2):
        assert ctx.compose(x, ctx.inverse(x)) == ctx.identity(2)


def test_coset_decomposition_roundtrip(c2):
    ctx = WreathContext(c2)
    for y in ctx.elements(3):
        c, z = ctx.coset_decompose(y)
        point, g = divmod(c, c2.order)
        assert ctx.compose(ctx.coset_rep(2, point, g), ctx.embed(z)) == y


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_standard_reps_validate(Q, c2, n):
    validate_rep(trivial_rep(Q, c2, n))
    validate_rep(sign_rep(Q, c2, n))
    validate_rep(regular_rep(Q, c2, n))


def test_regular_rep_dimension(F2, c2):
    assert regular_rep(F2, c2, 2).dim == 8


def test_bad_relation_is_reported(Q, trivial):
    # s0 of order 3 in degree 2 is not a representation of S_2
    bad = RepMatrices(Q, trivial, 2, 3, (Q.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),))
    with pytest.raises(RepresentationError) as err:
        validate_rep(bad)
    assert "s0^2" in str(err.value)


def test_wrong_matrix_count(Q, trivial):
    with pytest.raises(RepresentationError):
        RepMatrices(Q, trivial, 3, 1, (Q.identity(1),))


def test_induce_and_restrict_dimensions(Q, c2):
    W = trivial_rep(Q, c2, 1)
    induced = induce_rep(W)
    assert induced.n == 2
    assert induced.dim == 2 * c2.order
    validate_rep(induced)
    assert restrict_rep(induced).dim == induced.dim
    validate_rep(restrict_rep(induced))


def test_element_evaluator_matches_regular_action(Q, trivial):
    rep = regular_rep(Q, trivial, 3)
    evaluate = rep.evaluator()
    ctx = rep.context
    index = ctx.element_index(3)
    for x in ctx.elements(3):
        column = evaluate(x)[:, 0]
        assert column[index[x]] == 1
        assert sum(column) == 1


def test_factor_evaluates_back_in_degree_four(c2):
    ctx = WreathContext(c2)
    elements = ctx.elements(4)
    assert len(elements) == 384
    for x in elements:
        assert ctx.evaluate(ctx.factor(x)) == x
