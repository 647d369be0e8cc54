from itertools import permutations, product
from math import comb, perm

import numpy as np
import pytest

from figlab.catalog import basic_filtered, direct_sum_presentation, j_zero, torsion_kG
from figlab.errors import MaxDimensionExceededError, PreconditionError, WindowExhaustedError
from figlab.groups import regular_rep, sign_rep, trivial_rep
from figlab.modules import (
    DecoratedInjection,
    build_M,
    check_map,
    cokernel,
    evaluate_action,
    identity_map,
    kernel,
    materialize,
    module_from_reps,
    morphism_matrix,
    normal_form,
    validate_module,
    yoneda_map,
)


@pytest.mark.parametrize("group_name", ["trivial", "c2"])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_dimension_law(request, Q, group_name, n):
    group = request.getfixturevalue(group_name)
    for W in (trivial_rep(Q, group, n), sign_rep(Q, group, n)):
        module = build_M(W, 6)
        assert list(module.dims) == [comb(m, n) * W.dim if m >= n else 0 for m in range(7)]
        assert validate_module(module) == []


def test_regular_M_dimension_law(F2, c2):
    W = regular_rep(F2, c2, 1)
    module = build_M(W, 4)
    assert list(module.dims) == [0, 2, 4, 6, 8]
    assert validate_module(module) == []


def test_materialized_catalog_modules(kG0, kG1, J0):
    assert list(kG0.dims) == [1, 0, 0, 0, 0]
    assert list(kG1.dims) == [0, 1, 0, 0, 0, 0, 0]
    assert list(J0.dims) == [0, 1, 1, 1, 1, 1, 1]
    for module in (kG0, kG1, J0):
        assert validate_module(module) == []
        assert module.presented


def test_default_window(Q, trivial):
    assert torsion_kG(Q, trivial, 0).default_window() == 4
    assert j_zero(Q).default_window() == 6


def test_materialize_below_max_degree(Q):
    with pytest.raises(WindowExhaustedError):
        materialize(j_zero(Q), 1)


def test_direct_sum_presentation(Q, trivial):
    p = direct_sum_presentation(torsion_kG(Q, trivial, 0), j_zero(Q))
    module = materialize(p, 6)
    assert list(module.dims) == [1, 1, 1, 1, 1, 1, 1]
    assert validate_module(module) == []


def test_morphism_matrix_of_standard_inclusion(M1):
    mor = DecoratedInjection.standard(1, 3)
    assert morphism_matrix(M1, mor).tolist() == [[1], [0], [0]]


def test_evaluate_action_respects_valid_through(M1, Q):
    mor = DecoratedInjection((2,), (0,), 3)
    v = evaluate_action(M1, mor, Q.array([1]))
    assert v.tolist() == [0, 0, 1]
    with pytest.raises(WindowExhaustedError):
        evaluate_action(M1, DecoratedInjection.standard(1, 6), Q.array([1]))


def test_injection_checks():
    with pytest.raises(PreconditionError):
        DecoratedInjection((0, 0), (0, 0), 3)
    with pytest.raises(PreconditionError):
        DecoratedInjection((3,), (0,), 3)


def test_kernel_and_cokernel_of_augmentation(M0, kG0):
    # M(0) -> kG_0 is the cover; its kernel is J_0
    cover = yoneda_map(M0.rep(0), kG0, kG0.field.identity(1), 4)
    check_map(cover)
    ker, incl = kernel(cover)
    assert list(ker.dims) == [0, 1, 1, 1, 1]
    coker, _ = cokernel(cover)
    assert coker.is_zero()
    check_map(incl)


def test_identity_map_is_a_map(J0):
    check_map(identity_map(J0))


def test_broken_exchange_is_reported(Q, trivial):
    reps = [trivial_rep(Q, trivial, 0), trivial_rep(Q, trivial, 1), sign_rep(Q, trivial, 2)]
    trans = [Q.identity(1), Q.identity(1)]
    module = module_from_reps(Q, trivial, reps, trans)
    violations = validate_module(module)
    assert violations
    assert any("exchange" in v.relation for v in violations)


def test_max_dimension_cap(monkeypatch, Q, trivial):
    from figlab.config import config

    monkeypatch.setattr(config, "max_dim", 3)
    with pytest.raises(MaxDimensionExceededError):
        build_M(trivial_rep(Q, trivial, 1), 5)


def test_basic_filtered_presentation(Q, c2):
    p = basic_filtered(trivial_rep(Q, c2, 1))
    module = materialize(p, 3)
    assert list(module.dims) == [0, 1, 2, 3]


@pytest.mark.parametrize("group_name", ["trivial", "c2"])
@pytest.mark.parametrize("n,m", [(0, 2), (1, 1), (1, 3), (2, 2), (2, 4)])
def test_normal_form_is_a_bijection(request, group_name, n, m):
    group = request.getfixturevalue(group_name)
    seen = set()
    for images in permutations(range(m), n):
        for dec in product(range(group.order), repeat=n):
            mor = DecoratedInjection(images, dec, m)
            nf = normal_form(mor)
            assert DecoratedInjection(tuple(nf.subset[p] for p in nf.h.perm), nf.h.dec, m) == mor
            seen.add((nf.subset, nf.h))
    assert len(seen) == perm(m, n) * group.order ** n


def _random_injection(rng, n, m, order):
    images = tuple(int(x) for x in rng.choice(m, n, replace=False))
    dec = tuple(int(x) for x in rng.integers(0, order, n))
    return DecoratedInjection(images, dec, m)


def test_evaluate_action_is_functorial(F3, c2):
    module = build_M(regular_rep(F3, c2, 1), 4)
    rng = np.random.default_rng(0)
    for _ in range(100):
        a, b, c = sorted(int(x) for x in rng.integers(1, 5, 3))
        f = _random_injection(rng, a, b, c2.order)
        g = _random_injection(rng, b, c, c2.order)
        v = F3.array([int(x) for x in rng.integers(0, 3, module.dims[a])])
        direct = evaluate_action(module, g.compose(f, c2), v)
        stepwise = evaluate_action(module, g, evaluate_action(module, f, v))
        assert F3.equal(direct, stepwise)
