import pytest

from figlab.errors import WindowExhaustedError
from figlab.functors import (
    coinduce_R,
    derivative,
    derivative_b,
    hom_space_dimension,
    induce_L,
    induce_map,
    shift,
    shift_b,
    shift_map,
    tau_map,
)
from figlab.groups import regular_rep
from figlab.homology import ext_dims, h0_dims, homology_dims
from figlab.modules import build_M, check_map, identity_map, truncate, validate_module, yoneda_map


def test_shift_of_basic_filtered(M0, M1):
    assert list(shift(M0).dims) == [1, 1, 1, 1, 1]
    assert list(shift(M1).dims) == [1, 2, 3, 4, 5]
    assert shift(M1).valid_through == M1.valid_through - 1
    assert validate_module(shift(M1)) == []
    # S M(1) = M(1) + M(0)
    assert h0_dims(shift(M1))[:2] == [1, 1]


def test_shift_of_torsion(kG0, kG1):
    assert shift(kG0).is_zero()
    assert list(shift(kG1).dims)[:2] == [1, 0]


def test_shift_needs_a_degree(kG0):
    with pytest.raises(WindowExhaustedError):
        shift_b(kG0, 5)


def test_derivative(M0, M1, J0):
    assert derivative(M0).is_zero()
    assert list(derivative(M1).dims) == [1, 1, 1, 1, 1]
    # D J_0 is kG_0
    assert list(derivative(J0).dims) == [1, 0, 0, 0, 0, 0]
    assert list(derivative_b(M1, 2).dims)[:2] == [2, 2]


def test_tau_is_a_map(J0):
    check_map(tau_map(J0))


def test_induction_of_M0_is_M1(M0):
    L = induce_L(M0)
    assert L.window == M0.window + 1
    assert list(L.dims) == [0, 1, 2, 3, 4, 5, 6]
    assert validate_module(L) == []
    assert h0_dims(L) == [0, 1, 0, 0, 0, 0, 0]
    assert not any(homology_dims(L, 1)[1])


def test_induction_over_c2(c2_trivial):
    L = induce_L(c2_trivial)
    assert validate_module(L) == []
    assert list(L.dims)[:3] == [0, 0, 4]


def test_coinduction_of_M0(M0):
    R = coinduce_R(M0)
    assert list(R.dims) == [1, 2, 3, 4, 5, 6]
    assert validate_module(R) == []
    assert not any(homology_dims(R, 1)[1])


def test_coinduction_over_c2(c2_trivial):
    R = coinduce_R(c2_trivial)
    assert validate_module(R) == []
    assert list(R.dims)[:3] == [0, 1, 2 + 2 * 2 * 1]


def test_shift_is_exact_on_augmentation(M0, kG0, J0):
    lhs = list(shift(truncate(M0, 4)).dims)
    rhs = [a + b for a, b in zip(shift(truncate(J0, 4)).dims, shift(kG0).dims)]
    assert lhs == rhs


def test_functors_on_maps(M0, kG0):
    cover = yoneda_map(M0.rep(0), kG0, kG0.field.identity(1), 4)
    check_map(shift_map(cover))
    check_map(induce_map(cover))
    check_map(induce_map(identity_map(M0)))


def test_shift_coinduction_adjunction(M0, M1):
    # Hom(S V, V') = Hom(V, R V')
    assert hom_space_dimension(shift(M1), truncate(M0, 4)) == 2
    assert hom_space_dimension(truncate(M1, 4), truncate(coinduce_R(M0), 4)) == 2


def test_induction_ext_adjunction(kG0, kG1):
    # Ext(L kG_0, V) = Ext(kG_0, S V)
    assert ext_dims(induce_L(kG0), kG1, 1) == ext_dims(kG0, shift(kG1), 1) == [1, 0]


@pytest.mark.parametrize("name, degrees", [
    ("M0", (0, 1, 2)),
    ("J0", (0, 1, 2)),
    ("kG1", (0, 1, 2)),
    ("c2_trivial", (0, 1)),
])
def test_coinduction_counts_maps_out_of_shifted_free_modules(name, degrees, request):
    # R(V)_n = Hom(S M(kG_n), V)
    module = truncate(request.getfixturevalue(name), 4)
    R = coinduce_R(module)
    for n in degrees:
        free = shift(build_M(regular_rep(module.field, module.group, n), 5))
        assert hom_space_dimension(free, module) == R.dims[n]
