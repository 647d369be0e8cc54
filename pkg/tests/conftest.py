"""Shared fixtures: fields, groups and the curated modules."""

import json
from pathlib import Path

import pytest

from figlab.catalog import basic_filtered, free_module, j_zero, torsion_kG
from figlab.generator import GeneratorParams, random_presentation
from figlab.groups import cyclic_group, regular_rep, trivial_group, trivial_rep
from figlab.linalg import FieldSpec
from figlab.local_cohomology import nagpal_complex, with_retries
from figlab.modules import materialize

REPO_ROOT = Path(__file__).resolve().parents[1]
SAMPLES = REPO_ROOT / "sample_modules"
GOLDEN = Path(__file__).resolve().parent / "golden"

# F_2/F_3 over the trivial group keeps G_n small enough for windows near 6
SUITE_PARAMS = GeneratorParams(group_order=1, max_generator_degree=1, max_rank=2, max_relations=2)


@pytest.fixture
def Q():
    return FieldSpec.rationals()


@pytest.fixture
def F2():
    return FieldSpec.prime(2)


@pytest.fixture
def F3():
    return FieldSpec.prime(3)


@pytest.fixture
def trivial():
    return trivial_group()


@pytest.fixture
def c2():
    return cyclic_group(2)


@pytest.fixture
def kG0(Q, trivial):
    p = torsion_kG(Q, trivial, 0)
    return materialize(p, p.default_window())


@pytest.fixture
def kG1(Q, trivial):
    p = torsion_kG(Q, trivial, 1)
    return materialize(p, p.default_window())


@pytest.fixture
def J0(Q):
    p = j_zero(Q)
    return materialize(p, p.default_window())


@pytest.fixture
def M0(Q, trivial):
    return materialize(basic_filtered(trivial_rep(Q, trivial, 0)), 5)


@pytest.fixture
def M1(Q, trivial):
    return materialize(basic_filtered(trivial_rep(Q, trivial, 1)), 5)


@pytest.fixture
def c2_trivial(Q, c2):
    return materialize(basic_filtered(trivial_rep(Q, c2, 1)), 4)


@pytest.fixture
def c2_regular(Q, c2):
    return materialize(free_module(Q, c2, 1), 3)


@pytest.fixture
def golden():
    return json.loads((GOLDEN / "micro_benchmarks.json").read_text())


def _closed(module):
    nagpal_complex(module)
    return module


@pytest.fixture(params=range(8), ids=lambda seed: f"random-{seed}")
def suite_module(request):
    """A seeded random module at the first window where its Nagpal complex closes."""
    presentation = random_presentation(request.param, SUITE_PARAMS)
    return with_retries(presentation, _closed, retries=1)
