"""
Windowed FI_G-modules.

A TruncatedFiGModule stores V_0..V_D with a G_n-representation on each V_n
and the transition maps t_n: V_n -> V_{n+1} induced by the standard
inclusion [n] -> [n+1]. Everything else (arbitrary induced maps, maps
between modules, kernels, cokernels, presentations) is built from these.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .config import config
from .errors import (
    MaxDimensionExceededError,
    ModuleValidationError,
    NonEquivariantMapError,
    PreconditionError,
    RepresentationError,
    WindowExhaustedError,
)
from .groups import (
    ElementEvaluator,
    FiniteGroup,
    GnElement,
    Letter,
    RepMatrices,
    WreathContext,
    direct_sum_rep,
    trivial_rep,
    validate_rep,
)
from .linalg import (
    FieldSpec,
    Subspace,
    block_diagonal,
    hstack,
    image_basis,
    kernel_basis,
    quotient_map,
    quotient_section,
)

logger = logging.getLogger(__name__)


# -- morphisms of FI_G ---------------------------------------------------


@dataclass(frozen=True)
class DecoratedInjection:
    """A morphism [n] -> [m] of FI_G: point i goes to images[i] decorated by dec[i]."""

    images: tuple[int, ...]
    dec: tuple[int, ...]
    target: int

    def __post_init__(self):
        if len(set(self.images)) != len(self.images):
            raise PreconditionError(f"map {self.images} is not injective")
        if any(not 0 <= x < self.target for x in self.images):
            raise PreconditionError(f"map {self.images} leaves [{self.target}]")
        if len(self.dec) != len(self.images):
            raise PreconditionError("decoration length differs from source size")

    @property
    def source(self) -> int:
        return len(self.images)

    @classmethod
    def standard(cls, n: int, m: int) -> "DecoratedInjection":
        return cls(tuple(range(n)), (0,) * n, m)

    @classmethod
    def from_element(cls, element: GnElement) -> "DecoratedInjection":
        return cls(element.perm, element.dec, element.n)

    def compose(self, other: "DecoratedInjection", group: FiniteGroup) -> "DecoratedInjection":
        """self after other."""
        images = tuple(self.images[other.images[x]] for x in range(other.source))
        dec = tuple(group.mul[self.dec[other.images[x]]][other.dec[x]] for x in range(other.source))
        return DecoratedInjection(images, dec, self.target)


@dataclass(frozen=True)
class MorphismNF:
    """(f_S, 1) o h with S the image subset and h in G_n."""
    subset: tuple[int, ...]
    h: GnElement


def normal_form(f: DecoratedInjection) -> MorphismNF:
    subset = tuple(sorted(f.images))
    position = {s: i for i, s in enumerate(subset)}
    return MorphismNF(subset, GnElement(tuple(position[x] for x in f.images), f.dec))


@lru_cache(maxsize=None)
def subset_basis(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """The n-subsets of [m] in lexicographic order: the canonical M(W)_m index."""
    return tuple(itertools.combinations(range(m), n))


@lru_cache(maxsize=None)
def subset_index(m: int, n: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(subset_basis(m, n))}


# -- modules and maps ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class TruncatedFiGModule:
    """An FI_G-module known in degrees 0..window, exact through valid_through."""

    field: FieldSpec
    group: FiniteGroup
    dims: tuple[int, ...]
    actions: tuple[RepMatrices, ...]
    trans: tuple[np.ndarray, ...]
    valid_through: int
    presented: bool = False

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        window = len(self.dims) - 1
        if window < 0:
            raise PreconditionError("a module needs at least degree 0")
        if len(self.actions) != window + 1 or len(self.trans) != window:
            raise PreconditionError(
                f"window {window} needs {window + 1} actions and {window} transitions")
        for n, (d, rep) in enumerate(zip(self.dims, self.actions)):
            if rep.n != n or rep.dim != d:
                raise PreconditionError(f"action in degree {n} has degree {rep.n}, dim {rep.dim}")
            if d > config.max_dim:
                raise MaxDimensionExceededError(n, d, config.max_dim)
        for n, t in enumerate(self.trans):
            if t.shape != (self.dims[n + 1], self.dims[n]):
                raise PreconditionError(f"t_{n} has shape {t.shape}")
        if not 0 <= self.valid_through <= window:
            object.__setattr__(self, "valid_through", max(0, min(self.valid_through, window)))

    @property
    def window(self) -> int:
        return len(self.dims) - 1

    @property
    def context(self) -> WreathContext:
        return WreathContext(self.group)

    def rep(self, n: int) -> RepMatrices:
        return self.actions[n]

    def is_zero(self) -> bool:
        return not any(self.dims)

    def transition(self, n: int, m: int) -> np.ndarray:
        """t_{m-1} o ... o t_n : V_n -> V_m."""
        if not 0 <= n <= m <= self.window:
            raise WindowExhaustedError("transition", m, self.window)
        out = self.field.identity(self.dims[n])
        for k in range(n, m):
            out = self.field.matmul(self.trans[k], out)
        return out

    def __repr__(self) -> str:
        return (f"TruncatedFiGModule(field={self.field}, group={self.group.label()}, "
                f"dims={list(self.dims)}, valid_through={self.valid_through})")


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """Degreewise matrices source_n -> target_n for n = 0..window."""

    source: TruncatedFiGModule
    target: TruncatedFiGModule
    mats: tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.source.field != self.target.field or self.source.group != self.target.group:
            raise PreconditionError("map between modules over different fields or groups")
        if len(self.mats) - 1 > min(self.source.window, self.target.window):
            raise WindowExhaustedError("module map", len(self.mats) - 1,
                                       min(self.source.window, self.target.window))
        for n, m in enumerate(self.mats):
            if m.shape != (self.target.dims[n], self.source.dims[n]):
                raise PreconditionError(f"map component {n} has shape {m.shape}")

    @property
    def window(self) -> int:
        return len(self.mats) - 1

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    @property
    def valid_through(self) -> int:
        return min(self.window, self.source.valid_through, self.target.valid_through)

    def is_zero(self) -> bool:
        return all(self.field.is_zero(m) for m in self.mats)


def module_from_reps(field: FieldSpec, group: FiniteGroup, reps: Sequence[RepMatrices],
                     trans: Sequence[np.ndarray], valid_through: Optional[int] = None,
                     presented: bool = False) -> TruncatedFiGModule:
    window = len(reps) - 1
    return TruncatedFiGModule(
        field, group, tuple(r.dim for r in reps), tuple(reps), tuple(trans),
        window if valid_through is None else valid_through, presented)


def zero_rep(field: FieldSpec, group: FiniteGroup, n: int) -> RepMatrices:
    return trivial_rep(field, group, n, dim=0)


def zero_module(field: FieldSpec, group: FiniteGroup, window: int,
                valid_through: Optional[int] = None, presented: bool = True) -> TruncatedFiGModule:
    reps = [zero_rep(field, group, n) for n in range(window + 1)]
    trans = [field.zeros(0, 0) for _ in range(window)]
    return module_from_reps(field, group, reps, trans, valid_through, presented)


def concentrated(rep: RepMatrices, window: int, presented: bool = True) -> TruncatedFiGModule:
    """The module equal to rep in degree rep.n and zero elsewhere."""
    f, g = rep.field, rep.group
    reps = [rep if n == rep.n else zero_rep(f, g, n) for n in range(window + 1)]
    dims = [r.dim for r in reps]
    trans = [f.zeros(dims[n + 1], dims[n]) for n in range(window)]
    return module_from_reps(f, g, reps, trans, presented=presented)


def truncate(module: TruncatedFiGModule, window: int) -> TruncatedFiGModule:
    if window > module.window:
        raise WindowExhaustedError("truncate", window, module.window)
    if window == module.window:
        return module
    return TruncatedFiGModule(
        module.field, module.group, module.dims[:window + 1], module.actions[:window + 1],
        module.trans[:window], min(module.valid_through, window), module.presented)


def truncate_map(f: ModuleMap, window: int) -> ModuleMap:
    return ModuleMap(truncate(f.source, window), truncate(f.target, window), f.mats[:window + 1])


# -- basic filtered modules ----------------------------------------------


def build_M(W: RepMatrices, window: int) -> TruncatedFiGModule:
    """The basic filtered module M(W) = k[Hom([n], -)] (x)_{kG_n} W on degrees 0..window."""
    f, group, n, d = W.field, W.group, W.n, W.dim
    ctx = WreathContext(group)
    evaluate = ElementEvaluator(W)
    reps: list[RepMatrices] = []
    for m in range(window + 1):
        if m < n:
            reps.append(zero_rep(f, group, m))
            continue
        subsets = subset_basis(m, n)
        index = subset_index(m, n)
        size = len(subsets) * d
        mats = []
        for letter in ctx.letters(m):
            x = ctx.letter_element(m, letter)
            mat = f.zeros(size, size)
            for col, subset in enumerate(subsets):
                nf = normal_form(DecoratedInjection(
                    tuple(x.perm[s] for s in subset), tuple(x.dec[s] for s in subset), m))
                row = index[nf.subset]
                mat[row * d:(row + 1) * d, col * d:(col + 1) * d] = evaluate(nf.h)
            mats.append(mat)
        reps.append(RepMatrices(f, group, m, size, tuple(mats)))
    trans = []
    for m in range(window):
        source, target = subset_basis(m, n), subset_index(m + 1, n)
        t = f.zeros(reps[m + 1].dim, reps[m].dim)
        for col, subset in enumerate(source):
            row = target[subset]
            t[row * d:(row + 1) * d, col * d:(col + 1) * d] = f.identity(d)
        trans.append(t)
    logger.debug(f"Built M(W) for degree-{n} W of dim {d} through window {window}")
    return module_from_reps(f, group, reps, trans, presented=True)


def morphism_matrix(module: TruncatedFiGModule, mor: DecoratedInjection,
                    evaluators: Optional[dict[int, ElementEvaluator]] = None) -> np.ndarray:
    """The induced map V_n -> V_m of a decorated injection [n] -> [m]."""
    n, m = mor.source, mor.target
    if m > module.window:
        raise WindowExhaustedError("evaluate_action", m, module.window)
    if evaluators is None:
        evaluators = {}
    for k in (n, m):
        if k not in evaluators:
            evaluators[k] = ElementEvaluator(module.rep(k))
    nf = normal_form(mor)
    ctx = module.context
    sigma = module.rep(m).word_matrix(ctx.coset_word(nf.subset, m))
    f = module.field
    return f.matmul(f.matmul(sigma, module.transition(n, m)), evaluators[n](nf.h))


def evaluate_action(module: TruncatedFiGModule, mor: DecoratedInjection, v: np.ndarray) -> np.ndarray:
    if mor.target > module.valid_through:
        raise WindowExhaustedError("evaluate_action", mor.target, module.valid_through)
    return module.field.matmul(morphism_matrix(module, mor), v.reshape(-1, 1)).reshape(-1)


def check_equivariant(W: RepMatrices, V: RepMatrices, phi: np.ndarray) -> None:
    """Raise unless V(x) phi = phi W(x) for every canonical generator x."""
    f = W.field
    for letter in W.letters:
        if not f.equal(f.matmul(V.letter_matrix(letter), phi), f.matmul(phi, W.letter_matrix(letter))):
            raise NonEquivariantMapError(f"map is not equivariant for {letter} in degree {W.n}")


def coset_matrices(module: TruncatedFiGModule, n: int, m: int) -> list[np.ndarray]:
    """T_S = V(f_S, 1): V_n -> V_m for the n-subsets S of [m] in basis order."""
    ctx = module.context
    rep_m = module.rep(m)
    base = module.transition(n, m)
    f = module.field
    return [f.matmul(rep_m.word_matrix(ctx.coset_word(s, m)), base) for s in subset_basis(m, n)]


def yoneda_map(W: RepMatrices, target: TruncatedFiGModule, phi: np.ndarray,
               window: Optional[int] = None,
               source: Optional[TruncatedFiGModule] = None) -> ModuleMap:
    """The map M(W) -> V restricting to the equivariant phi: W -> V_n in degree n."""
    n, f = W.n, W.field
    if window is None:
        window = target.window
    if n > window:
        raise WindowExhaustedError("yoneda_map", n, window)
    check_equivariant(W, target.rep(n), phi)
    if source is None:
        source = build_M(W, window)
    source = truncate(source, window)
    mats = []
    for m in range(window + 1):
        if m < n:
            mats.append(f.zeros(target.dims[m], 0))
            continue
        mats.append(hstack(f, target.dims[m],
                           [f.matmul(t, phi) for t in coset_matrices(target, n, m)]))
    return ModuleMap(source, truncate(target, window), tuple(mats))


# -- map algebra ---------------------------------------------------------


def identity_map(module: TruncatedFiGModule) -> ModuleMap:
    return ModuleMap(module, module, tuple(module.field.identity(d) for d in module.dims))


def zero_map(source: TruncatedFiGModule, target: TruncatedFiGModule) -> ModuleMap:
    w = min(source.window, target.window)
    f = source.field
    return ModuleMap(source, target, tuple(f.zeros(target.dims[n], source.dims[n]) for n in range(w + 1)))


def compose(after: ModuleMap, before: ModuleMap) -> ModuleMap:
    w = min(after.window, before.window)
    f = after.field
    return ModuleMap(before.source, after.target,
                     tuple(f.matmul(after.mats[n], before.mats[n]) for n in range(w + 1)))


def check_map(fmap: ModuleMap) -> None:
    """Raise NonEquivariantMapError unless the map commutes with actions and transitions."""
    f = fmap.field
    for n, m in enumerate(fmap.mats):
        check_equivariant(fmap.source.rep(n), fmap.target.rep(n), m)
        if n < fmap.window:
            left = f.matmul(fmap.target.trans[n], m)
            right = f.matmul(fmap.mats[n + 1], fmap.source.trans[n])
            if not f.equal(left, right):
                raise NonEquivariantMapError(f"map does not commute with t_{n}")


def direct_sum(*modules: TruncatedFiGModule) -> TruncatedFiGModule:
    first = modules[0]
    window = min(m.window for m in modules)
    f = first.field
    reps = [direct_sum_rep([m.rep(n) for m in modules]) for n in range(window + 1)]
    trans = [block_diagonal(f, [m.trans[n] for m in modules]) for n in range(window)]
    return module_from_reps(f, first.group, reps, trans,
                            min(min(m.valid_through for m in modules), window),
                            all(m.presented for m in modules))


def map_from_sum(maps: Sequence[ModuleMap], source: Optional[TruncatedFiGModule] = None) -> ModuleMap:
    """[f_1 ... f_r]: A_1 (+) ... (+) A_r -> B."""
    target = maps[0].target
    if source is None:
        source = direct_sum(*[m.source for m in maps])
    window = min(min(m.window for m in maps), source.window)
    f = target.field
    mats = tuple(hstack(f, target.dims[n], [m.mats[n] for m in maps]) for n in range(window + 1))
    return ModuleMap(source, target, mats)


def block_map(maps: Sequence[ModuleMap]) -> ModuleMap:
    """f_1 (+) ... (+) f_r between the direct sums."""
    source = direct_sum(*[m.source for m in maps])
    target = direct_sum(*[m.target for m in maps])
    window = min(min(m.window for m in maps), source.window)
    f = source.field
    return ModuleMap(source, target,
                     tuple(block_diagonal(f, [m.mats[n] for m in maps]) for n in range(window + 1)))


def _restricted_rep(rep: RepMatrices, space: Subspace) -> RepMatrices:
    f = rep.field
    incl = space.inclusion()
    mats = tuple(space.coordinates(f.matmul(m, incl)) for m in rep.mats)
    return RepMatrices(f, rep.group, rep.n, space.dim, mats)


def _quotient_rep(rep: RepMatrices, space: Subspace) -> tuple[RepMatrices, np.ndarray, np.ndarray]:
    f = rep.field
    q = quotient_map(f, rep.dim, space)
    lift = quotient_section(f, rep.dim, space)
    mats = tuple(f.matmul(f.matmul(q, m), lift) for m in rep.mats)
    return RepMatrices(f, rep.group, rep.n, q.shape[0], mats), q, lift


def submodule(module: TruncatedFiGModule, spaces: Sequence[Subspace]) -> tuple[TruncatedFiGModule, ModuleMap]:
    """The submodule with the given (stable) degreewise subspaces, and its inclusion."""
    f = module.field
    window = len(spaces) - 1
    reps = [_restricted_rep(module.rep(n), spaces[n]) for n in range(window + 1)]
    trans = [spaces[n + 1].coordinates(f.matmul(module.trans[n], spaces[n].inclusion()))
             for n in range(window)]
    sub = module_from_reps(f, module.group, reps, trans,
                           min(module.valid_through, window), module.presented)
    return sub, ModuleMap(sub, truncate(module, window), tuple(s.inclusion() for s in spaces))


def quotient(module: TruncatedFiGModule, spaces: Sequence[Subspace]) -> tuple[TruncatedFiGModule, ModuleMap]:
    """V / U for a submodule given by degreewise subspaces, and the projection."""
    f = module.field
    window = len(spaces) - 1
    parts = [_quotient_rep(module.rep(n), spaces[n]) for n in range(window + 1)]
    trans = [f.matmul(f.matmul(parts[n + 1][1], module.trans[n]), parts[n][2]) for n in range(window)]
    quo = module_from_reps(f, module.group, [p[0] for p in parts], trans,
                           min(module.valid_through, window), module.presented)
    return quo, ModuleMap(truncate(module, window), quo, tuple(p[1] for p in parts))


def kernel(fmap: ModuleMap) -> tuple[TruncatedFiGModule, ModuleMap]:
    spaces = [kernel_basis(fmap.field, m) for m in fmap.mats]
    sub, incl = submodule(fmap.source, spaces)
    return _with_validity(sub, fmap), incl


def image(fmap: ModuleMap) -> tuple[TruncatedFiGModule, ModuleMap, ModuleMap]:
    """Image with the corestriction source -> image and the inclusion image -> target."""
    spaces = [image_basis(fmap.field, m) for m in fmap.mats]
    sub, incl = submodule(fmap.target, spaces)
    sub = _with_validity(sub, fmap)
    onto = ModuleMap(truncate(fmap.source, fmap.window), sub,
                     tuple(s.coordinates(m) for s, m in zip(spaces, fmap.mats)))
    return sub, onto, incl


def cokernel(fmap: ModuleMap) -> tuple[TruncatedFiGModule, ModuleMap]:
    spaces = [image_basis(fmap.field, m) for m in fmap.mats]
    quo, proj = quotient(fmap.target, spaces)
    return _with_validity(quo, fmap), proj


def _with_validity(module: TruncatedFiGModule, fmap: ModuleMap) -> TruncatedFiGModule:
    valid = min(module.valid_through, fmap.valid_through)
    presented = module.presented and fmap.source.presented and fmap.target.presented
    if valid == module.valid_through and presented == module.presented:
        return module
    return TruncatedFiGModule(module.field, module.group, module.dims, module.actions,
                              module.trans, valid, presented)


def induced_cokernel_map(middle: ModuleMap, alpha: ModuleMap, beta: ModuleMap) -> ModuleMap:
    """coker(alpha) -> coker(beta) induced by middle: alpha.target -> beta.target."""
    source, _ = cokernel(alpha)
    target, _ = cokernel(beta)
    f = middle.field
    window = min(middle.window, source.window, target.window)
    mats = []
    for n in range(window + 1):
        a_space = image_basis(f, alpha.mats[n])
        b_space = image_basis(f, beta.mats[n])
        lift = quotient_section(f, alpha.target.dims[n], a_space)
        q = quotient_map(f, beta.target.dims[n], b_space)
        mats.append(f.matmul(f.matmul(q, middle.mats[n]), lift))
    return ModuleMap(truncate(source, window), truncate(target, window), tuple(mats))


def homology_at(incoming: ModuleMap, outgoing: ModuleMap) -> TruncatedFiGModule:
    """ker(outgoing) / im(incoming) for a composable pair with zero composite."""
    f = outgoing.field
    window = min(incoming.window, outgoing.window)
    kernel_spaces = [kernel_basis(f, outgoing.mats[n]) for n in range(window + 1)]
    ker, _ = submodule(outgoing.source, kernel_spaces)
    into = ModuleMap(truncate(incoming.source, window), ker,
                     tuple(kernel_spaces[n].coordinates(incoming.mats[n]) for n in range(window + 1)))
    result, _ = cokernel(into)
    return result


# -- validation ----------------------------------------------------------


class Violation(NamedTuple):
    degree: int
    relation: str
    witness: str

    def __str__(self) -> str:
        return f"degree {self.degree}: {self.relation} ({self.witness})"


def _first_difference(f: FieldSpec, lhs: np.ndarray, rhs: np.ndarray) -> Optional[str]:
    if f.equal(lhs, rhs):
        return None
    cols = np.flatnonzero(np.any(lhs != rhs, axis=0))
    return f"differs on basis vector e{int(cols[0])}"


def validate_module(module: TruncatedFiGModule) -> list[Violation]:
    """Check representation relations, equivariance, exchange and slot-triviality."""
    f, ctx = module.field, module.context
    violations: list[Violation] = []
    for n in range(module.window + 1):
        try:
            validate_rep(module.rep(n))
        except RepresentationError as e:
            violations.append(Violation(n, e.relation, e.witness))
    for n in range(module.window):
        t = module.trans[n]
        upper = module.rep(n + 1)
        for letter in module.rep(n).letters:
            witness = _first_difference(f, f.matmul(t, module.rep(n).letter_matrix(letter)),
                                        f.matmul(upper.letter_matrix(letter), t))
            if witness:
                violations.append(Violation(n, f"equivariance of t_{n} with {letter}", witness))
        evaluate = ElementEvaluator(upper)
        for k, gen in enumerate(module.group.generators):
            slot = GnElement(tuple(range(n + 1)), (0,) * n + (gen,))
            witness = _first_difference(f, f.matmul(evaluate(slot), t), t)
            if witness:
                violations.append(Violation(n, f"slot-{n} copy of a{k} fixes image of t_{n}", witness))
        if n + 2 <= module.window:
            both = f.matmul(module.trans[n + 1], t)
            swap = module.rep(n + 2).letter_matrix(Letter("s", n))
            witness = _first_difference(f, f.matmul(swap, both), both)
            if witness:
                violations.append(Violation(n, f"exchange s{n} t_{n + 1} t_{n}", witness))
    return violations


def ensure_valid(module: TruncatedFiGModule) -> TruncatedFiGModule:
    violations = validate_module(module)
    if violations:
        raise ModuleValidationError(violations)
    return module


# -- presentations -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RelationSlot:
    """An equivariant map U -> (+)_i M(W_i)_a, given on a basis of U."""
    rep: RepMatrices
    image: np.ndarray

    @property
    def degree(self) -> int:
        return self.rep.n


@dataclass(frozen=True, eq=False)
class Presentation:
    """coker( (+)_j M(U_j) -> (+)_i M(W_i) )."""

    field: FieldSpec
    group: FiniteGroup
    generators: tuple[RepMatrices, ...]
    relations: tuple[RelationSlot, ...] = ()

    def __post_init__(self):
        reps = list(self.generators) + [r.rep for r in self.relations]
        for rep in reps:
            if rep.field != self.field or rep.group != self.group:
                raise PreconditionError("presentation slots disagree on field or group")

    @property
    def max_degree(self) -> int:
        degrees = [w.n for w in self.generators] + [r.degree for r in self.relations]
        return max(degrees, default=0)

    def default_window(self) -> int:
        return 2 * self.max_degree + 2


def generator_module(p: Presentation, window: int) -> TruncatedFiGModule:
    if not p.generators:
        return zero_module(p.field, p.group, window)
    return direct_sum(*[build_M(w, window) for w in p.generators])


def materialize(p: Presentation, window: int) -> TruncatedFiGModule:
    """The presented module on degrees 0..window."""
    if window < p.max_degree:
        raise WindowExhaustedError("materialize", p.max_degree, window)
    free = generator_module(p, window)
    if not p.relations:
        return free
    maps = []
    for slot in p.relations:
        if slot.image.shape != (free.dims[slot.degree], slot.rep.dim):
            raise PreconditionError(
                f"relation in degree {slot.degree} has shape {slot.image.shape}, "
                f"expected {(free.dims[slot.degree], slot.rep.dim)}")
        maps.append(yoneda_map(slot.rep, free, slot.image, window))
    module, _ = cokernel(map_from_sum(maps))
    logger.debug(f"Materialized presentation through {window}: dims {list(module.dims)}")
    return TruncatedFiGModule(module.field, module.group, module.dims, module.actions,
                              module.trans, window, True)


def dimension_of_free(rep: RepMatrices, m: int) -> int:
    return comb(m, rep.n) * rep.dim if m >= rep.n else 0
