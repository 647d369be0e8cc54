"""
Shift, derivative, induction and coinduction on windowed modules.

Window bookkeeping: shift and derivative consume one degree, shift_b and
derivative_b consume b, induction adds one, coinduction keeps the window.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from .errors import WindowExhaustedError
from .groups import ElementEvaluator, Letter, RepMatrices, induce_rep, restrict_rep
from .linalg import block_diagonal, kernel_basis, vstack
from .modules import (
    DecoratedInjection,
    ModuleMap,
    TruncatedFiGModule,
    cokernel,
    induced_cokernel_map,
    module_from_reps,
    morphism_matrix,
    truncate,
    zero_rep,
)

logger = logging.getLogger(__name__)


def shift(module: TruncatedFiGModule) -> TruncatedFiGModule:
    """(SV)_n = V_{n+1}, restricted along the embedding fixing the new last point."""
    if module.valid_through < 1:
        raise WindowExhaustedError("shift", 1, module.valid_through)
    f = module.field
    reps = [restrict_rep(module.rep(n + 1)) for n in range(module.window)]
    # V applied to the shifted standard inclusion: the top two points trade places
    trans = [f.matmul(module.rep(n + 2).letter_matrix(Letter("s", n)), module.trans[n + 1])
             for n in range(module.window - 1)]
    return module_from_reps(f, module.group, reps, trans,
                            module.valid_through - 1, module.presented)


def shift_b(module: TruncatedFiGModule, b: int) -> TruncatedFiGModule:
    if b > module.valid_through:
        raise WindowExhaustedError("shift_b", b, module.valid_through)
    for _ in range(b):
        module = shift(module)
    return module


def tau_map(module: TruncatedFiGModule) -> ModuleMap:
    """The natural map V -> SV, given by t_n in degree n."""
    return tau_b(module, 1)


def tau_b(module: TruncatedFiGModule, b: int) -> ModuleMap:
    target = shift_b(module, b)
    mats = tuple(module.transition(n, n + b) for n in range(target.window + 1))
    return ModuleMap(module, target, mats)


def derivative(module: TruncatedFiGModule) -> TruncatedFiGModule:
    return cokernel(tau_map(module))[0]


def derivative_b(module: TruncatedFiGModule, b: int) -> TruncatedFiGModule:
    return cokernel(tau_b(module, b))[0]


def shift_map(fmap: ModuleMap) -> ModuleMap:
    source, target = shift(fmap.source), shift(fmap.target)
    window = min(fmap.window - 1, source.window, target.window)
    if window < 0:
        raise WindowExhaustedError("shift_map", 1, fmap.window)
    return ModuleMap(truncate(source, window), truncate(target, window),
                     tuple(fmap.mats[n + 1] for n in range(window + 1)))


def derivative_map(fmap: ModuleMap) -> ModuleMap:
    """D(f): coker(tau_A) -> coker(tau_B)."""
    middle = shift_map(fmap)
    return induced_cokernel_map(middle, truncate_tau(fmap.source, middle.window),
                                truncate_tau(fmap.target, middle.window))


def truncate_tau(module: TruncatedFiGModule, window: int) -> ModuleMap:
    tau = tau_map(module)
    return ModuleMap(truncate(tau.source, window), truncate(tau.target, window), tau.mats[:window + 1])


# -- induction -------------------------------------------------------------


def induce_L(module: TruncatedFiGModule) -> TruncatedFiGModule:
    """L(V)_0 = 0 and L(V)_{m} = Ind_{G_{m-1}}^{G_m} V_{m-1}; window grows by one."""
    f, group, ctx = module.field, module.group, module.context
    order = group.order
    reps: list[RepMatrices] = [zero_rep(f, group, 0)]
    reps += [induce_rep(module.rep(m - 1)) for m in range(1, module.window + 2)]
    trans = [f.zeros(reps[1].dim, 0)]
    for m in range(1, module.window + 1):
        d_src, d_tgt = module.dims[m - 1], module.dims[m]
        t = module.trans[m - 1]
        evaluate = ElementEvaluator(module.rep(m))
        swap = ctx.letter_element(m + 1, Letter("s", m - 1))
        mat = f.zeros(reps[m + 1].dim, reps[m].dim)
        for p in range(m):
            for g in range(order):
                c = p * order + g
                # y (x) v goes to embed(y) s (x) t(v), renormalized to a coset representative
                moved = ctx.compose(ctx.embed(ctx.coset_rep(m - 1, p, g)), swap)
                c2, z = ctx.coset_decompose(moved)
                mat[c2 * d_tgt:(c2 + 1) * d_tgt, c * d_src:(c + 1) * d_src] = f.matmul(evaluate(z), t)
        trans.append(mat)
    logger.debug(f"Induced module dims {[r.dim for r in reps]}")
    return module_from_reps(f, group, reps, trans, module.valid_through + 1, module.presented)


def induce_map(fmap: ModuleMap) -> ModuleMap:
    source, target = induce_L(fmap.source), induce_L(fmap.target)
    f = fmap.field
    cosets = lambda m: m * fmap.source.group.order  # noqa: E731
    mats = [f.zeros(0, 0)]
    for m in range(1, fmap.window + 2):
        mats.append(block_diagonal(f, [fmap.mats[m - 1]] * cosets(m)))
    return ModuleMap(truncate(source, fmap.window + 1), truncate(target, fmap.window + 1), tuple(mats))


# -- coinduction -----------------------------------------------------------


class _CoinductionLayout:
    """R(V)_n = V_n (+) (+)_{(j, g)} V_{n-1}, block (j, g) at position 1 + j|G| + g."""

    def __init__(self, module: TruncatedFiGModule):
        self.module = module
        self.order = module.group.order

    def blocks(self, n: int) -> list[tuple[int, int]]:
        """(offset, size) of every block of R(V)_n."""
        dims = self.module.dims
        out = [(0, dims[n])]
        offset = dims[n]
        for _ in range(n * self.order):
            out.append((offset, dims[n - 1]))
            offset += dims[n - 1]
        return out

    def dim(self, n: int) -> int:
        dims = self.module.dims
        return dims[n] + (n * self.order * dims[n - 1] if n else 0)


def _split_last(mor: DecoratedInjection, order: int) -> tuple[int, DecoratedInjection]:
    """Locate phi(F) for F: [n] -> [r+1]: returns the block index and the map it is pushed along."""
    last = mor.target - 1
    if last not in mor.images:
        return 0, DecoratedInjection(mor.images, mor.dec, last)
    j = mor.images.index(last)
    g = mor.dec[j]
    images = tuple(x for i, x in enumerate(mor.images) if i != j)
    dec = tuple(x for i, x in enumerate(mor.dec) if i != j)
    return 1 + j * order + g, DecoratedInjection(images, dec, last)


def _collapse(n: int, j: int, g: int) -> DecoratedInjection:
    """The element of G_n sending j to the last point with decoration g, order-preserving elsewhere."""
    images = tuple(n - 1 if x == j else (x if x < j else x - 1) for x in range(n))
    dec = tuple(g if x == j else 0 for x in range(n))
    return DecoratedInjection(images, dec, n)


def _coinduced_matrix(layout: _CoinductionLayout, alpha: DecoratedInjection,
                      evaluators: dict) -> np.ndarray:
    """(alpha_* phi)(F) = phi(F o alpha) in block coordinates."""
    module, order, group = layout.module, layout.order, layout.module.group
    f = module.field
    n, n2 = alpha.source, alpha.target
    src_blocks, tgt_blocks = layout.blocks(n), layout.blocks(n2)
    out = f.zeros(layout.dim(n2), layout.dim(n))
    targets = [DecoratedInjection(alpha.images, alpha.dec, n2 + 1)]
    for j in range(n2):
        for g in range(order):
            targets.append(_collapse(n2, j, g).compose(alpha, group))
    for row_block, composite in enumerate(targets):
        col_block, pushed = _split_last(composite, order)
        r0, rs = tgt_blocks[row_block]
        c0, cs = src_blocks[col_block]
        if rs and cs:
            out[r0:r0 + rs, c0:c0 + cs] = morphism_matrix(module, pushed, evaluators)
    return out


def coinduce_R(module: TruncatedFiGModule) -> TruncatedFiGModule:
    """R(V)_n = Hom(S M(kG_n), V), through the free decomposition of S M(kG_n)."""
    f, group, ctx = module.field, module.group, module.context
    layout = _CoinductionLayout(module)
    evaluators: dict = {}
    reps = []
    for n in range(module.window + 1):
        mats = tuple(_coinduced_matrix(layout, DecoratedInjection.from_element(ctx.letter_element(n, letter)),
                                       evaluators)
                     for letter in ctx.letters(n))
        reps.append(RepMatrices(f, group, n, layout.dim(n), mats))
    trans = [_coinduced_matrix(layout, DecoratedInjection.standard(n, n + 1), evaluators)
             for n in range(module.window)]
    return module_from_reps(f, group, reps, trans, module.valid_through, module.presented)


def coinduce_map(fmap: ModuleMap) -> ModuleMap:
    source, target = coinduce_R(fmap.source), coinduce_R(fmap.target)
    f, order = fmap.field, fmap.source.group.order
    mats = []
    for n in range(fmap.window + 1):
        blocks = [fmap.mats[n]] + ([fmap.mats[n - 1]] * (n * order) if n else [])
        mats.append(block_diagonal(f, blocks))
    return ModuleMap(truncate(source, fmap.window), truncate(target, fmap.window), tuple(mats))


# -- hom spaces ------------------------------------------------------------


def hom_space_dimension(source: TruncatedFiGModule, target: TruncatedFiGModule,
                        window: Optional[int] = None) -> int:
    """dim of the space of module maps source -> target on degrees 0..window."""
    f = source.field
    if window is None:
        window = min(source.valid_through, target.valid_through)
    sizes = [target.dims[n] * source.dims[n] for n in range(window + 1)]
    offsets = np.cumsum([0] + sizes)
    unknowns = int(offsets[-1])
    if unknowns == 0:
        return 0
    rows = []
    for n in range(window + 1):
        a, b = source.dims[n], target.dims[n]
        if a * b == 0:
            continue
        for letter in source.rep(n).letters:
            block = f.zeros(a * b, unknowns)
            m_src = source.rep(n).letter_matrix(letter)
            m_tgt = target.rep(n).letter_matrix(letter)
            # X m_src - m_tgt X with X flattened row-major
            block[:, offsets[n]:offsets[n + 1]] = f.sub(
                f.kron(f.identity(b), m_src.T.copy()), f.kron(m_tgt, f.identity(a)))
            rows.append(block)
    for n in range(window):
        a, b = source.dims[n], target.dims[n + 1]
        if a * b == 0:
            continue
        block = f.zeros(a * b, unknowns)
        if sizes[n + 1]:
            block[:, offsets[n + 1]:offsets[n + 2]] = f.kron(f.identity(b), source.trans[n].T.copy())
        if sizes[n]:
            block[:, offsets[n]:offsets[n + 1]] = f.reduce(
                -f.kron(target.trans[n], f.identity(a)))
        rows.append(block)
    system = vstack(f, unknowns, rows)
    return kernel_basis(f, system).dim
