import pytest

from figlab.functors import derivative, shift_b
from figlab.homology import (
    Resolution,
    check_orthogonality,
    classical_depth,
    crude_nagpal_bound,
    derivative_depth,
    eventually_projective,
    ext_dims,
    ext_torsion,
    free_cover,
    generating_degree,
    h0_dims,
    h_i,
    hd,
    homology_dims,
    is_projective,
    is_sharp_filtered,
    is_torsion,
    nagpal_number,
    raw_generating_degree,
    raw_torsion_degree,
    regularity,
    sharp_cover,
    torsion_degree,
    torsion_module,
)
from figlab.models import NEG_INF, POS_INF, CertStatus
from figlab.modules import direct_sum


def test_h0_of_catalog_modules(kG0, J0, M1):
    assert h0_dims(kG0) == [1, 0, 0, 0, 0]
    assert h0_dims(J0) == [0, 1, 0, 0, 0, 0, 0]
    assert h0_dims(M1) == [0, 1, 0, 0, 0, 0]


def test_degrees_of_kG0(kG0):
    td = torsion_degree(kG0)
    gd = generating_degree(kG0)
    assert (td.value, gd.value) == (0, 0)
    assert td.certified and gd.certified


def test_torsion_free_degree(J0):
    assert torsion_degree(J0).value == NEG_INF
    assert generating_degree(J0).value == 1


def test_homological_degrees_of_kG0(kG0, golden):
    dims = homology_dims(kG0, 2)
    assert dims[1] == [0, 1, 0, 0, 0]
    assert dims[2] == [0, 0, 1, 0, 0]
    assert [hd(kG0, i).value for i in range(3)] == golden["kG0"]["hd"]


def test_homology_two_ways(kG0, J0):
    for module in (kG0, J0):
        ladder = homology_dims(module, 2)
        for i in (1, 2):
            assert list(h_i(module, i).dims) == ladder[i]


def test_free_and_sharp_covers_agree_on_h1(J0):
    free = homology_dims(J0, 1, free=True)[1]
    sharp = homology_dims(J0, 1, free=False)[1]
    assert free == sharp == [0, 0, 1, 0, 0, 0, 0]


def test_covers_are_surjective(kG1):
    for cover in (free_cover(kG1), sharp_cover(kG1)):
        assert cover.generator_dims()[1] == 1


def test_resolution_of_filtered_module_terminates(M1):
    resolution = Resolution(M1, free=False).extend_to(1)
    assert resolution.terminated()


def test_sharp_filtered(M0, M1, c2_trivial, J0, kG0):
    for module in (M0, M1, c2_trivial):
        assert is_sharp_filtered(module).value
    assert not is_sharp_filtered(J0).value
    assert not is_sharp_filtered(kG0).value


def test_regularity(kG0, kG1, J0, M1, golden):
    assert regularity(kG0).value == golden["kG0"]["reg"]
    assert regularity(kG1).value == golden["kG1"]["reg"]
    assert regularity(J0).value == golden["J0"]["reg"]
    assert regularity(M1).value == NEG_INF


def test_regularity_is_certified_on_kG0(kG0):
    assert regularity(kG0).status == CertStatus.CERTIFIED


def test_nagpal_number(kG0, kG1, J0, M0, golden):
    assert nagpal_number(kG0).value == golden["kG0"]["N"]
    assert nagpal_number(kG1).value == golden["kG1"]["N"]
    assert nagpal_number(J0).value == golden["J0"]["N"]
    assert nagpal_number(M0).value == 0


def test_crude_nagpal_bound(kG1, J0):
    assert nagpal_number(kG1).value <= crude_nagpal_bound(kG1)
    assert nagpal_number(J0).value <= crude_nagpal_bound(J0)


def test_ext_against_J0(J0, golden):
    assert ext_torsion(0, J0, 1) == golden["J0"]["ext1_kG0"]
    assert ext_torsion(0, J0, 0) == 0


def test_ext_hom_of_torsion(kG0, Q, trivial):
    source = torsion_module(Q, trivial, 0, 3)
    assert ext_dims(source, kG0, 0) == [1]


def test_depths(kG0, J0, M0):
    assert classical_depth(kG0).value == 0
    assert classical_depth(J0).value == 1
    assert classical_depth(M0).value == POS_INF
    assert derivative_depth(kG0).value == 0
    assert derivative_depth(J0).value == 1


def test_orthogonality(kG0, kG1, M0, M1):
    for torsion, i_max in ((kG0, 2), (kG1, 1)):
        assert is_torsion(torsion)
        for filtered in (M0, M1):
            report = check_orthogonality(torsion, filtered, i_max=i_max)
            assert report.orthogonal, report.ext_dims


def test_orthogonality_needs_torsion(M0, M1):
    from figlab.errors import PreconditionError

    with pytest.raises(PreconditionError):
        check_orthogonality(M0, M1)


def test_projectivity(M1, J0, F2, c2):
    from figlab.catalog import free_module
    from figlab.modules import materialize

    assert is_projective(M1).value is True
    assert is_projective(J0).value is False
    # char 2 divides |G_1| = 2
    assert is_projective(materialize(free_module(F2, c2, 1), 3)).value is None
    assert eventually_projective(J0).value is True


def test_regularity_closes_below_the_bound(kG0, M1):
    # td 0 and gd 1 give the bound 1, while the torsion summand keeps reg at 0
    module = direct_sum(kG0, M1)
    reg = regularity(module)
    assert reg.value == 0
    assert reg.status == CertStatus.CERTIFIED


# -- properties over the seeded suite --------------------------------------


def test_suite_regularity_within_bound(suite_module):
    reg = regularity(suite_module)
    if not reg.certified:
        pytest.skip("uncertified regularity")
    bound = max(raw_torsion_degree(suite_module), 2 * raw_generating_degree(suite_module) - 1)
    assert reg.value <= bound


def test_suite_derivative_lowers_generating_degree(suite_module):
    D = derivative(suite_module)
    if not D.is_zero():
        assert raw_generating_degree(D) <= raw_generating_degree(suite_module) - 1


@pytest.mark.parametrize("s", [0, 1])
def test_suite_eckmann_shapiro(suite_module, s):
    # Ext^1 reads degrees up to s + 2 on both sides
    if suite_module.valid_through < s + 2:
        pytest.skip("window too short")
    shifted = shift_b(suite_module, s)
    source = torsion_module(suite_module.field, suite_module.group, 0, 2)
    assert [ext_torsion(s, suite_module, i) for i in range(2)] == ext_dims(source, shifted, 1)
