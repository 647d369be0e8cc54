"""
Finite groups by Cayley table and the wreath products G_n = G wr S_n.

Elements of G_n are pairs (perm, dec) acting on the points 0..n-1; the
embedding G_n -> G_{n+1} fixes the new last point. All matrix data flows
through words in the canonical generators s_0..s_{n-2} (adjacent swaps)
and a_0..a_{g-1} (copies of the generators of G acting on point 0).
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import GroupValidationError, RepresentationError
from .linalg import FieldSpec, block_diagonal, rank

logger = logging.getLogger(__name__)


def validate_group(order: int, mul: Sequence[Sequence[int]], generators: Sequence[int],
                   identity: int = 0) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """
    Check the group axioms and generation.

    Returns:
        (elem_words, inverses): a word in generator positions for every
        element (BFS over right multiplication) and the inverse table.
    """
    if order <= 0:
        raise GroupValidationError("group order must be positive")
    if identity != 0:
        raise GroupValidationError("identity must be element 0", (identity,))
    if len(mul) != order or any(len(row) != order for row in mul):
        raise GroupValidationError(f"multiplication table must be {order}x{order}")
    for a in range(order):
        for b in range(order):
            if not 0 <= mul[a][b] < order:
                raise GroupValidationError("table entry out of range", (a, b, mul[a][b]))
    for a in range(order):
        if mul[identity][a] != a or mul[a][identity] != a:
            raise GroupValidationError("element 0 is not a two-sided identity", (a,))
    for a in range(order):
        for b in range(order):
            ab = mul[a][b]
            for c in range(order):
                if mul[ab][c] != mul[a][mul[b][c]]:
                    raise GroupValidationError("multiplication is not associative", (a, b, c))
    inverses = []
    for a in range(order):
        inv = [b for b in range(order) if mul[a][b] == identity]
        if not inv or mul[inv[0]][a] != identity:
            raise GroupValidationError("element has no inverse", (a,))
        inverses.append(inv[0])
    for k in generators:
        if not 0 <= k < order:
            raise GroupValidationError("generator out of range", (k,))

    words: list[Optional[tuple[int, ...]]] = [None] * order
    words[identity] = ()
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for pos, gen in enumerate(generators):
            y = mul[x][gen]
            if words[y] is None:
                words[y] = words[x] + (pos,)
                queue.append(y)
    missing = [a for a in range(order) if words[a] is None]
    if missing:
        raise GroupValidationError("generators do not generate the group", (missing[0],))
    return tuple(words), tuple(inverses)


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its Cayley table; element 0 is the identity."""

    order: int
    mul: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...]
    identity: int = 0
    elem_words: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)
    inverses: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        mul = tuple(tuple(int(x) for x in row) for row in self.mul)
        gens = tuple(int(x) for x in self.generators)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "generators", gens)
        words, inverses = validate_group(self.order, mul, gens, self.identity)
        object.__setattr__(self, "elem_words", words)
        object.__setattr__(self, "inverses", inverses)

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def label(self) -> str:
        if self.order == 1:
            return "1"
        if self.order == 2:
            return "C2"
        return f"G{self.order}"

    def to_dict(self) -> dict:
        return {"order": self.order, "identity": self.identity,
                "mul": [list(r) for r in self.mul], "generators": list(self.generators)}


def trivial_group() -> FiniteGroup:
    return FiniteGroup(1, ((0,),), ())


def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return trivial_group()
    return FiniteGroup(n, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), (1,))


class Letter(NamedTuple):
    """A canonical generator of G_n: ("s", i) swaps points i, i+1; ("a", k) decorates point 0."""
    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


@dataclass(frozen=True)
class WreathWord:
    n: int
    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class GnElement:
    perm: tuple[int, ...]
    dec: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)


@lru_cache(maxsize=None)
def generator_letters(num_generators: int, n: int) -> tuple[Letter, ...]:
    """s_0..s_{n-2} followed by a_0..a_{g-1} (the latter only when n >= 1)."""
    swaps = tuple(Letter("s", i) for i in range(n - 1))
    decorations = tuple(Letter("a", k) for k in range(num_generators)) if n >= 1 else ()
    return swaps + decorations


def letter_position(num_generators: int, n: int, letter: Letter) -> int:
    if letter.kind == "s":
        return letter.index
    return max(n - 1, 0) + letter.index


@dataclass(frozen=True)
class WreathContext:
    """Group-theoretic operations in G_n for a fixed base group G."""

    group: FiniteGroup

    def identity(self, n: int) -> GnElement:
        return GnElement(tuple(range(n)), (self.group.identity,) * n)

    def letters(self, n: int) -> tuple[Letter, ...]:
        return generator_letters(self.group.num_generators, n)

    def letter_element(self, n: int, letter: Letter) -> GnElement:
        if letter.kind == "s":
            i = letter.index
            if not 0 <= i < n - 1:
                raise ValueError(f"swap s{i} out of range for degree {n}")
            perm = list(range(n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            return GnElement(tuple(perm), (0,) * n)
        if not (n >= 1 and 0 <= letter.index < self.group.num_generators):
            raise ValueError(f"decoration a{letter.index} out of range for degree {n}")
        dec = (self.group.generators[letter.index],) + (0,) * (n - 1)
        return GnElement(tuple(range(n)), dec)

    def compose(self, x: GnElement, y: GnElement) -> GnElement:
        """x after y."""
        mul = self.group.mul
        perm = tuple(x.perm[y.perm[t]] for t in range(y.n))
        dec = tuple(mul[x.dec[y.perm[t]]][y.dec[t]] for t in range(y.n))
        return GnElement(perm, dec)

    def inverse(self, x: GnElement) -> GnElement:
        inv = [0] * x.n
        for t, image in enumerate(x.perm):
            inv[image] = t
        dec = tuple(self.group.inverses[x.dec[inv[t]]] for t in range(x.n))
        return GnElement(tuple(inv), dec)

    def embed(self, x: GnElement, extra: int = 1) -> GnElement:
        n = x.n
        return GnElement(x.perm + tuple(range(n, n + extra)), x.dec + (0,) * extra)

    def evaluate(self, word: WreathWord) -> GnElement:
        result = self.identity(word.n)
        for letter in word.letters:
            result = self.compose(result, self.letter_element(word.n, letter))
        return result

    def factor(self, element: GnElement) -> WreathWord:
        """A word in the canonical generators evaluating to element."""
        n = element.n
        letters: list[Letter] = list(permutation_letters(element.perm))
        for j, g in enumerate(element.dec):
            if g == self.group.identity:
                continue
            base = [Letter("a", k) for k in self.group.elem_words[g]]
            if j == 0:
                letters.extend(base)
            else:
                # conjugate by a word sending point 0 to point j
                up = [Letter("s", i) for i in range(j - 1, -1, -1)]
                down = [Letter("s", i) for i in range(j)]
                letters.extend(up + base + down)
        return WreathWord(n, tuple(letters))

    def coset_word(self, subset: Sequence[int], m: int) -> WreathWord:
        """Word for the permutation of [m] sending i to the i-th element of subset."""
        return WreathWord(m, permutation_letters(subset_permutation(subset, m)))

    def elements(self, n: int) -> tuple[GnElement, ...]:
        return _enumerate_elements(self.group.order, n)

    def element_index(self, n: int) -> dict[GnElement, int]:
        return _element_index(self.group.order, n)

    def coset_rep(self, n: int, point: int, g: int) -> GnElement:
        """Representative in G_{n+1} sending the last point to point with decoration g."""
        perm = tuple(i if i < point else i + 1 for i in range(n)) + (point,)
        dec = (0,) * n + (g,)
        return GnElement(perm, dec)

    def coset_decompose(self, y: GnElement) -> tuple[int, GnElement]:
        """Split y in G_{n+1} as coset_rep(c) * embed(z); returns (c, z)."""
        n = y.n - 1
        point, g = y.perm[n], y.dec[n]
        rest = self.compose(self.inverse(self.coset_rep(n, point, g)), y)
        z = GnElement(rest.perm[:n], rest.dec[:n])
        return point * self.group.order + g, z

    def order_of(self, n: int) -> int:
        return _factorial(n) * self.group.order ** n


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


@lru_cache(maxsize=None)
def _enumerate_elements(order: int, n: int) -> tuple[GnElement, ...]:
    return tuple(GnElement(perm, dec)
                 for perm in itertools.permutations(range(n))
                 for dec in itertools.product(range(order), repeat=n))


@lru_cache(maxsize=None)
def _element_index(order: int, n: int) -> dict[GnElement, int]:
    return {e: i for i, e in enumerate(_enumerate_elements(order, n))}


def subset_permutation(subset: Sequence[int], m: int) -> tuple[int, ...]:
    chosen = list(subset)
    rest = [x for x in range(m) if x not in set(chosen)]
    return tuple(chosen + rest)


def permutation_letters(perm: Sequence[int]) -> tuple[Letter, ...]:
    """Adjacent-swap word for a permutation, by bubble sort."""
    p = list(perm)
    swaps: list[int] = []
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                swaps.append(i)
                changed = True
    return tuple(Letter("s", i) for i in reversed(swaps))


# -- representations -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class RepMatrices:
    """A representation of G_n: one invertible matrix per canonical generator."""

    field: FieldSpec
    group: FiniteGroup
    n: int
    dim: int
    mats: tuple[np.ndarray, ...]

    def __post_init__(self):
        expected = len(generator_letters(self.group.num_generators, self.n))
        if len(self.mats) != expected:
            raise RepresentationError(
                "generator count", f"degree {self.n} needs {expected} matrices, got {len(self.mats)}")
        for letter, m in zip(self.letters, self.mats):
            if m.shape != (self.dim, self.dim):
                raise RepresentationError(
                    "shape", f"{letter} has shape {m.shape}, expected {(self.dim, self.dim)}")

    @property
    def letters(self) -> tuple[Letter, ...]:
        return generator_letters(self.group.num_generators, self.n)

    @property
    def context(self) -> WreathContext:
        return WreathContext(self.group)

    def letter_matrix(self, letter: Letter) -> np.ndarray:
        return self.mats[letter_position(self.group.num_generators, self.n, letter)]

    def word_matrix(self, word: WreathWord) -> np.ndarray:
        return self.field.chain([self.letter_matrix(x) for x in word.letters], self.dim)

    def evaluator(self) -> "ElementEvaluator":
        return ElementEvaluator(self)


class ElementEvaluator:
    """Matrices of arbitrary G_n elements under a representation, memoized per instance."""

    def __init__(self, rep: RepMatrices):
        self.rep = rep
        self.ctx = rep.context
        self._cache: dict[GnElement, np.ndarray] = {}

    def __call__(self, element: GnElement) -> np.ndarray:
        found = self._cache.get(element)
        if found is None:
            found = self.rep.word_matrix(self.ctx.factor(element))
            self._cache[element] = found
        return found


def _check(field: FieldSpec, lhs: np.ndarray, rhs: np.ndarray, relation: str) -> None:
    if not field.equal(lhs, rhs):
        cols = np.flatnonzero(np.any(lhs != rhs, axis=0))
        raise RepresentationError(relation, f"differs on basis vector e{int(cols[0])}")


def validate_rep(rep: RepMatrices) -> None:
    """Check the defining relations of the canonical presentation of G_n."""
    f, n, d = rep.field, rep.n, rep.dim
    one = f.identity(d)
    mm = f.matmul
    for letter, m in zip(rep.letters, rep.mats):
        if rank(f, m) != d:
            raise RepresentationError(f"{letter} invertible", "matrix is singular")
    s = [rep.letter_matrix(Letter("s", i)) for i in range(n - 1)]
    a = [rep.letter_matrix(Letter("a", k)) for k in range(rep.group.num_generators)] if n >= 1 else []
    for i, si in enumerate(s):
        _check(f, mm(si, si), one, f"s{i}^2 = 1")
    for i in range(len(s) - 1):
        _check(f, mm(mm(s[i], s[i + 1]), s[i]), mm(mm(s[i + 1], s[i]), s[i + 1]), f"braid s{i} s{i + 1}")
    for i in range(len(s)):
        for j in range(i + 2, len(s)):
            _check(f, mm(s[i], s[j]), mm(s[j], s[i]), f"s{i} s{j} commute")
    if n == 0:
        return
    group = rep.group
    slot = [f.chain([a[k] for k in group.elem_words[g]], d) for g in range(group.order)]
    for g in range(group.order):
        for h in range(group.order):
            _check(f, mm(slot[g], slot[h]), slot[group.mul[g][h]], f"decoration table {g}*{h}")
    for k, ak in enumerate(a):
        for j in range(1, n - 1):
            _check(f, mm(ak, s[j]), mm(s[j], ak), f"a{k} s{j} commute")
        if n >= 2:
            for l, al in enumerate(a):
                other = mm(mm(s[0], al), s[0])
                _check(f, mm(ak, other), mm(other, ak), f"a{k} commutes with s0 a{l} s0")


def trivial_rep(field: FieldSpec, group: FiniteGroup, n: int, dim: int = 1) -> RepMatrices:
    letters = generator_letters(group.num_generators, n)
    return RepMatrices(field, group, n, dim, tuple(field.identity(dim) for _ in letters))


def sign_rep(field: FieldSpec, group: FiniteGroup, n: int) -> RepMatrices:
    """Swaps act by -1, decorations trivially."""
    mats = []
    for letter in generator_letters(group.num_generators, n):
        m = field.identity(1)
        if letter.kind == "s":
            m = field.reduce(-m)
        mats.append(m)
    return RepMatrices(field, group, n, 1, tuple(mats))


def regular_rep(field: FieldSpec, group: FiniteGroup, n: int) -> RepMatrices:
    """kG_n acting on itself by left multiplication, basis in element enumeration order."""
    ctx = WreathContext(group)
    elements = ctx.elements(n)
    index = ctx.element_index(n)
    size = len(elements)
    mats = []
    for letter in ctx.letters(n):
        x = ctx.letter_element(n, letter)
        m = field.zeros(size, size)
        for col, h in enumerate(elements):
            m[index[ctx.compose(x, h)], col] = field.coerce(1)
        mats.append(m)
    return RepMatrices(field, group, n, size, tuple(mats))


def restrict_rep(rep: RepMatrices) -> RepMatrices:
    """Restriction from G_{n+1} to G_n along the embedding fixing the last point."""
    if rep.n == 0:
        raise RepresentationError("restriction", "degree 0 has nothing to restrict to")
    n = rep.n - 1
    mats = tuple(rep.letter_matrix(letter) for letter in generator_letters(rep.group.num_generators, n))
    return RepMatrices(rep.field, rep.group, n, rep.dim, mats)


def induce_rep(rep: RepMatrices) -> RepMatrices:
    """Induction from G_n to G_{n+1}; block c = p*|G| + g holds r_{p,g} (x) W."""
    f, ctx, n, d = rep.field, rep.context, rep.n, rep.dim
    order = rep.group.order
    cosets = (n + 1) * order
    evaluate = rep.evaluator()
    mats = []
    for letter in ctx.letters(n + 1):
        x = ctx.letter_element(n + 1, letter)
        m = f.zeros(cosets * d, cosets * d)
        for p in range(n + 1):
            for g in range(order):
                c = p * order + g
                target, z = ctx.coset_decompose(ctx.compose(x, ctx.coset_rep(n, p, g)))
                m[target * d:(target + 1) * d, c * d:(c + 1) * d] = evaluate(z)
        mats.append(m)
    logger.debug(f"Induced degree-{n} rep of dim {d} to dim {cosets * d}")
    return RepMatrices(f, rep.group, n + 1, cosets * d, tuple(mats))


def direct_sum_rep(reps: Sequence[RepMatrices]) -> RepMatrices:
    first = reps[0]
    mats = tuple(block_diagonal(first.field, [r.mats[i] for r in reps])
                 for i in range(len(first.mats)))
    return RepMatrices(first.field, first.group, first.n, sum(r.dim for r in reps), mats)

