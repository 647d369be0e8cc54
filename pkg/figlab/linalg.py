"""
Exact linear algebra over the rationals and prime fields.

Matrices are numpy arrays in the column-vector convention: a linear map
k^a -> k^b is a (b, a) array. Over F_p entries are int64 residues in
[0, p); over Q entries are Fraction objects in an object array. Subspaces
are stored by their canonical reduced row-echelon basis, which doubles as
the equality test.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DimensionMismatchError, FieldError

logger = logging.getLogger(__name__)

_INT64_MAX = 2**63 - 1
_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")
_RESIDUE_RE = re.compile(r"^\d+$")


class FieldKind(str, Enum):
    """Coefficient field kinds."""
    RATIONALS = "Q"
    PRIME = "Fp"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: Q or F_p with 2 <= p < 2^31."""

    kind: FieldKind
    p: int = 0

    def __post_init__(self):
        if self.kind is FieldKind.PRIME:
            if not (2 <= self.p < 2**31) or not _is_prime(self.p):
                raise FieldError(f"characteristic {self.p} is not a prime below 2^31")
        elif self.p != 0:
            raise FieldError("the rationals carry no characteristic parameter")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME, p)

    @property
    def is_prime(self) -> bool:
        return self.kind is FieldKind.PRIME

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def dtype(self):
        return np.int64 if self.is_prime else object

    def __str__(self) -> str:
        return f"F{self.p}" if self.is_prime else "Q"

    # -- scalars ---------------------------------------------------------

    def parse(self, text) -> object:
        """Parse a serialized field element ("a/b" over Q, "a" over F_p)."""
        if isinstance(text, bool):
            raise FieldError(f"not a field element: {text!r}")
        if isinstance(text, int):
            text = str(text)
        if not isinstance(text, str):
            raise FieldError(f"not a field element: {text!r}")
        text = text.strip()
        if self.is_prime:
            if not _RESIDUE_RE.match(text) or int(text) >= self.p:
                raise FieldError(f"{text!r} is not a residue in [0, {self.p})")
            return int(text)
        if not _RATIONAL_RE.match(text):
            raise FieldError(f"{text!r} is not a rational of the form a or a/b")
        value = Fraction(text)
        return value

    def format(self, x) -> str:
        """Serialize a canonical element."""
        if self.is_prime:
            return str(int(x) % self.p)
        return str(Fraction(x))

    def coerce(self, x) -> object:
        if self.is_prime:
            return int(x) % self.p
        return Fraction(x)

    def inverse(self, x) -> object:
        if self.is_prime:
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of zero in F_p")
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def negate(self, x) -> object:
        return (-int(x)) % self.p if self.is_prime else -x

    # -- arrays ----------------------------------------------------------

    def array(self, data) -> np.ndarray:
        """Canonical array from nested lists, ints or Fractions."""
        raw = np.asarray(data, dtype=object)
        if self.is_prime:
            if raw.size == 0:
                return np.zeros(raw.shape, dtype=np.int64)
            return (raw % self.p).astype(np.int64)
        if raw.size == 0:
            return np.empty(raw.shape, dtype=object)
        return np.vectorize(Fraction, otypes=[object])(raw)

    def zeros(self, *shape: int) -> np.ndarray:
        if self.is_prime:
            return np.zeros(shape, dtype=np.int64)
        return np.full(shape, Fraction(0), dtype=object)

    def identity(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        one = 1 if self.is_prime else Fraction(1)
        for i in range(n):
            out[i, i] = one
        return out

    def unit(self, n: int, i: int) -> np.ndarray:
        out = self.zeros(n)
        out[i] = 1 if self.is_prime else Fraction(1)
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p if self.is_prime else arr

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape != b.shape:
            raise DimensionMismatchError("add", a.shape, b.shape)
        return self.reduce(a + b)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape != b.shape:
            raise DimensionMismatchError("sub", a.shape, b.shape)
        return self.reduce(a - b)

    def scale(self, c, a: np.ndarray) -> np.ndarray:
        return self.reduce(a * self.coerce(c))

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact product; over F_p falls back to Python ints on overflow risk."""
        if a.ndim != 2 or a.shape[1] != b.shape[0]:
            raise DimensionMismatchError("matmul", a.shape, b.shape)
        inner = a.shape[1]
        out_shape = (a.shape[0],) + b.shape[1:]
        if inner == 0 or a.shape[0] == 0 or (b.ndim == 2 and b.shape[1] == 0):
            return self.zeros(*out_shape)
        if not self.is_prime:
            return a @ b
        if (self.p - 1) ** 2 * inner <= _INT64_MAX:
            return (a @ b) % self.p
        wide = (a.astype(object) @ b.astype(object)) % self.p
        return wide.astype(np.int64)

    def chain(self, mats: Sequence[np.ndarray], size: int) -> np.ndarray:
        """Product mats[0] @ mats[1] @ ... (identity of given size when empty)."""
        out = None
        for m in mats:
            out = m if out is None else self.matmul(out, m)
        return self.identity(size) if out is None else out

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(np.kron(a, b))

    def is_zero(self, arr: np.ndarray) -> bool:
        return arr.size == 0 or not bool(np.any(arr != 0))

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and bool(np.all(a == b))


# -- elimination ---------------------------------------------------------


def rref(field: FieldSpec, matrix: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form and the strictly increasing pivot columns."""
    a = np.array(matrix, dtype=field.dtype, copy=True)
    if a.ndim != 2:
        raise DimensionMismatchError("rref", a.shape)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p], :] = a[[p, r], :]
        a[r] = field.reduce(a[r] * field.inverse(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col != 0)
        if others.size:
            a[others] = field.reduce(a[others] - np.outer(col[others], a[r]))
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def rank(field: FieldSpec, matrix: np.ndarray) -> int:
    if matrix.size == 0:
        return 0
    return len(rref(field, matrix)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of k^ambient with canonical RREF row basis."""

    field: FieldSpec
    ambient: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, field: FieldSpec, ambient: int, rows: Optional[np.ndarray]) -> "Subspace":
        """Span of the rows of an (r, ambient) array."""
        if rows is None or rows.size == 0:
            return cls.zero(field, ambient)
        if rows.ndim != 2 or rows.shape[1] != ambient:
            raise DimensionMismatchError("span", rows.shape, (ambient,))
        reduced, pivots = rref(field, rows)
        return cls(field, ambient, reduced[: len(pivots)], pivots)

    @classmethod
    def zero(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, field.zeros(0, ambient), ())

    @classmethod
    def full(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, field.identity(ambient), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def inclusion(self) -> np.ndarray:
        """The (ambient, dim) matrix whose columns are the basis vectors."""
        return self.basis.T.copy()

    def coordinates(self, vectors: np.ndarray) -> np.ndarray:
        """Coordinates of column vectors lying in the subspace."""
        return vectors[list(self.pivots)]

    def contains(self, vectors: np.ndarray) -> bool:
        if vectors.ndim == 1:
            vectors = vectors.reshape(-1, 1)
        if self.dim == 0:
            return self.field.is_zero(vectors)
        back = self.field.matmul(self.inclusion(), self.coordinates(vectors))
        return self.field.equal(back, self.field.reduce(vectors))

    def non_pivots(self) -> list[int]:
        taken = set(self.pivots)
        return [c for c in range(self.ambient) if c not in taken]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.pivots == other.pivots
                and self.field.equal(self.basis, other.basis))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field={self.field})"


def kernel_basis(field: FieldSpec, matrix: np.ndarray) -> Subspace:
    """Null space {x : matrix @ x = 0} as a canonical subspace."""
    rows, cols = matrix.shape
    if rows == 0 or matrix.size == 0:
        return Subspace.full(field, cols)
    reduced, pivots = rref(field, matrix)
    free = [c for c in range(cols) if c not in set(pivots)]
    if not free:
        return Subspace.zero(field, cols)
    k = field.zeros(len(free), cols)
    for i, c in enumerate(free):
        k[i, c] = 1 if field.is_prime else Fraction(1)
    if pivots:
        block = reduced[: len(pivots)][:, free]
        k[:, list(pivots)] = field.reduce(-block.T)
    return Subspace.span(field, cols, k)


def image_basis(field: FieldSpec, matrix: np.ndarray) -> Subspace:
    """Column space of matrix, as a subspace of k^rows."""
    return Subspace.span(field, matrix.shape[0], matrix.T.copy())


def quotient_map(field: FieldSpec, ambient: int, subspace: Subspace) -> np.ndarray:
    """Surjection k^ambient -> k^(ambient - dim) with kernel exactly the subspace."""
    if subspace.ambient != ambient:
        raise DimensionMismatchError("quotient_map", (ambient,), (subspace.ambient,))
    keep = subspace.non_pivots()
    q = field.zeros(len(keep), ambient)
    for i, c in enumerate(keep):
        q[i, c] = 1 if field.is_prime else Fraction(1)
    if subspace.dim and keep:
        q[:, list(subspace.pivots)] = field.reduce(-subspace.basis[:, keep].T)
    return q


def quotient_section(field: FieldSpec, ambient: int, subspace: Subspace) -> np.ndarray:
    """Right inverse of quotient_map: lifts quotient coordinates to k^ambient."""
    keep = subspace.non_pivots()
    lift = field.zeros(ambient, len(keep))
    for i, c in enumerate(keep):
        lift[c, i] = 1 if field.is_prime else Fraction(1)
    return lift


def solve(field: FieldSpec, matrix: np.ndarray, vector: np.ndarray) -> Optional[np.ndarray]:
    """Some x with matrix @ x = vector, or None."""
    rows, cols = matrix.shape
    vector = field.reduce(np.asarray(vector).reshape(-1))
    if vector.shape[0] != rows:
        raise DimensionMismatchError("solve", matrix.shape, vector.shape)
    if rows == 0:
        return field.zeros(cols)
    augmented = np.concatenate([matrix, vector.reshape(-1, 1).astype(matrix.dtype)], axis=1)
    reduced, pivots = rref(field, augmented)
    if cols in pivots:
        return None
    x = field.zeros(cols)
    for i, c in enumerate(pivots):
        x[c] = reduced[i, cols]
    return x


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise DimensionMismatchError("subspace_sum", (a.ambient,), (b.ambient,))
    if b.dim == 0:
        return a
    if a.dim == 0:
        return b
    return Subspace.span(a.field, a.ambient, np.concatenate([a.basis, b.basis], axis=0))


def saturate(field: FieldSpec, subspace: Subspace, mats: Iterable[np.ndarray]) -> Subspace:
    """Smallest subspace containing the given one and stable under all mats."""
    mats = list(mats)
    current = subspace
    while True:
        if current.dim == 0 or not mats:
            return current
        images = [field.matmul(m, current.inclusion()).T for m in mats]
        grown = Subspace.span(field, current.ambient,
                              np.concatenate([current.basis] + images, axis=0))
        if grown.dim == current.dim:
            return current
        current = grown


def from_triplets(field: FieldSpec, rows: int, cols: int,
                  triplets: Iterable[tuple[int, int, object]]) -> np.ndarray:
    """Dense matrix from (row, col, value) entries; repeated entries add."""
    out = field.zeros(rows, cols)
    for r, c, v in triplets:
        if not (0 <= r < rows and 0 <= c < cols):
            raise DimensionMismatchError("from_triplets", (rows, cols), (r, c))
        out[r, c] = field.coerce(out[r, c] + field.coerce(v))
    return out


def block_diagonal(field: FieldSpec, blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = field.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def hstack(field: FieldSpec, rows: int, blocks: Sequence[np.ndarray]) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[1]]
    if not blocks:
        return field.zeros(rows, 0)
    return np.concatenate(blocks, axis=1)


def vstack(field: FieldSpec, cols: int, blocks: Sequence[np.ndarray]) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return field.zeros(0, cols)
    return np.concatenate(blocks, axis=0)


def format_matrix(field: FieldSpec, matrix: np.ndarray) -> list[list[str]]:
    return [[field.format(x) for x in row] for row in matrix]


def parse_matrix(field: FieldSpec, rows: Sequence[Sequence], shape: tuple[int, int]) -> np.ndarray:
    """Parse a list of rows of serialized elements, checking the shape."""
    if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
        got = (len(rows), len(rows[0]) if rows else 0)
        raise DimensionMismatchError("parse_matrix", shape, got)
    out = field.zeros(*shape)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            out[i, j] = field.parse(entry)
    return out
