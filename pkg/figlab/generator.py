"""
Seeded random presentations over F_2 / F_3 with G trivial or C2.

Relation maps are equivariant by construction: a trivial relation rep maps
to the G_a-average of a random vector, a regular one to the orbit of a
random vector.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .groups import RepMatrices, cyclic_group, regular_rep, sign_rep, trivial_group, trivial_rep
from .linalg import FieldSpec
from .modules import Presentation, RelationSlot, generator_module

logger = logging.getLogger(__name__)

MAX_GENERATOR_DEGREE = 3
MAX_RANK = 3
MAX_RELATIONS = 4
# regular slots only while |G_n| stays small
MAX_REGULAR_ORDER = 8


@dataclass(frozen=True)
class GeneratorParams:
    """Bounds for a random presentation; None picks at random."""
    prime: Optional[int] = None
    group_order: Optional[int] = None
    max_generator_degree: int = 2
    max_rank: int = 2
    max_relations: int = 3

    def __post_init__(self):
        if self.prime not in (None, 2, 3):
            raise ValueError("random presentations use F_2 or F_3")
        if self.group_order not in (None, 1, 2):
            raise ValueError("random presentations use G trivial or C2")
        if not 0 <= self.max_generator_degree <= MAX_GENERATOR_DEGREE:
            raise ValueError(f"max generator degree must be in 0..{MAX_GENERATOR_DEGREE}")
        if not 1 <= self.max_rank <= MAX_RANK:
            raise ValueError(f"rank must be in 1..{MAX_RANK}")
        if not 0 <= self.max_relations <= MAX_RELATIONS:
            raise ValueError(f"relation count must be in 0..{MAX_RELATIONS}")


def _pick_rep(rng: np.random.Generator, field: FieldSpec, group, n: int) -> RepMatrices:
    kinds = ["trivial"]
    if n >= 2:
        kinds.append("sign")
    if group.order ** n * max(1, _factorial(n)) <= MAX_REGULAR_ORDER:
        kinds.append("regular")
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "sign":
        return sign_rep(field, group, n)
    if kind == "regular":
        return regular_rep(field, group, n)
    return trivial_rep(field, group, n)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def random_presentation(seed: int, params: Optional[GeneratorParams] = None) -> Presentation:
    """A reproducible random presentation; the same seed always gives the same module."""
    params = params or GeneratorParams()
    rng = np.random.default_rng(seed)
    p = params.prime or int(rng.choice([2, 3]))
    order = params.group_order or int(rng.choice([1, 2]))
    field = FieldSpec.prime(p)
    group = trivial_group() if order == 1 else cyclic_group(2)
    rank = int(rng.integers(1, params.max_rank + 1))
    generators = tuple(_pick_rep(rng, field, group, int(rng.integers(0, params.max_generator_degree + 1)))
                       for _ in range(rank))
    partial = Presentation(field, group, generators)
    low = min(w.n for w in generators)
    high = max(w.n for w in generators) + 1
    relations = []
    for _ in range(int(rng.integers(0, params.max_relations + 1))):
        a = int(rng.integers(low, high + 1))
        ambient = generator_module(partial, a).rep(a)
        if ambient.dim == 0:
            continue
        x = rng.integers(0, p, size=ambient.dim)
        evaluate = ambient.evaluator()
        elements = ambient.context.elements(a)
        if len(elements) <= MAX_REGULAR_ORDER and rng.random() < 0.5:
            rep = regular_rep(field, group, a)
            image = field.zeros(ambient.dim, len(elements))
            for k, h in enumerate(elements):
                image[:, k] = field.matmul(evaluate(h), x.reshape(-1, 1))[:, 0]
        else:
            rep = trivial_rep(field, group, a)
            image = field.zeros(ambient.dim, 1)
            for h in elements:
                image = field.add(image, field.matmul(evaluate(h), x.reshape(-1, 1)))
        relations.append(RelationSlot(rep, image))
    logger.debug(f"seed {seed}: F{p}, |G|={order}, {rank} generator(s), {len(relations)} relation(s)")
    return Presentation(field, group, generators, tuple(relations))


def generate_suite(seed: int, count: int, params: Optional[GeneratorParams] = None) -> list[tuple[str, Presentation]]:
    """count presentations from consecutive child seeds of seed."""
    return [(f"random-{seed}-{k}", random_presentation(seed * 1000 + k, params)) for k in range(count)]
