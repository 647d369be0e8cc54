"""
Standard presentations: M(W), kG_s, J_0 and direct sums.
"""

from typing import Optional

from .groups import FiniteGroup, RepMatrices, regular_rep, sign_rep, trivial_group, trivial_rep
from .linalg import FieldSpec
from .modules import Presentation, RelationSlot, generator_module


def basic_filtered(W: RepMatrices) -> Presentation:
    """M(W): one generator, no relations."""
    return Presentation(W.field, W.group, (W,))


def free_module(field: FieldSpec, group: FiniteGroup, n: int) -> Presentation:
    """M(kG_n)."""
    return basic_filtered(regular_rep(field, group, n))


def torsion_kG(field: FieldSpec, group: FiniteGroup, s: int) -> Presentation:
    """kG_s = M(kG_s) / J_s, killing every element in degree s + 1."""
    W = regular_rep(field, group, s)
    generators = Presentation(field, group, (W,))
    top = generator_module(generators, s + 1).rep(s + 1)
    # the identity map of M(kG_s)_{s+1}, as a regular-rep slot generated by one basis vector
    image = field.identity(top.dim)
    relation = RelationSlot(top, image)
    return Presentation(field, group, (W,), (relation,))


def j_zero(field: FieldSpec, group: Optional[FiniteGroup] = None) -> Presentation:
    """J_0 = ker(M(0) -> kG_0), generated by e_{0} in degree 1.

    Over FI the only relation is e_{0} - e_{1} = 0 in degree 2. With decorations
    the generator also needs invariance under a, so it is M(trivial G_1) with
    the sign-type relation.
    """
    group = group or trivial_group()
    generator = trivial_rep(field, group, 1)
    relation_rep = sign_rep(field, group, 2)
    # M(trivial_1)_2 has basis e_{0}, e_{1}; the sign rep maps onto their difference
    image = field.array([[1], [-1]])
    return Presentation(field, group, (generator,), (RelationSlot(relation_rep, image),))


def direct_sum_presentation(*parts: Presentation) -> Presentation:
    first = parts[0]
    generators = tuple(w for p in parts for w in p.generators)
    relations = []
    for index, part in enumerate(parts):
        before = parts[:index]
        after = parts[index + 1:]
        for slot in part.relations:
            a = slot.degree
            above = sum(generator_module(p, a).dims[a] for p in before)
            below = sum(generator_module(p, a).dims[a] for p in after)
            f = first.field
            image = f.zeros(above + slot.image.shape[0] + below, slot.rep.dim)
            image[above:above + slot.image.shape[0]] = slot.image
            relations.append(RelationSlot(slot.rep, image))
    return Presentation(first.field, first.group, generators, tuple(relations))
