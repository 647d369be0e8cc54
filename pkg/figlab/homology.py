"""
Homology of windowed FI_G-modules.

Covers, resolutions, H_i, the degree invariants td/gd/hd/reg, the Nagpal
number, Ext against finitely supported modules and the two non-cohomological
depths. Every invariant comes back as a CertifiedValue.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import PreconditionError, WindowExhaustedError
from .functors import derivative_map, shift, shift_b
from .groups import ElementEvaluator, RepMatrices, regular_rep
from .linalg import Subspace, image_basis, rank, saturate, subspace_sum
from .models import NEG_INF, POS_INF, CertifiedValue, CertStatus, Degree, OrthogonalityReport
from .modules import (
    ModuleMap,
    TruncatedFiGModule,
    _restricted_rep,
    build_M,
    compose,
    concentrated,
    coset_matrices,
    direct_sum,
    dimension_of_free,
    homology_at,
    kernel,
    map_from_sum,
    module_from_reps,
    quotient,
    yoneda_map,
    zero_map,
    zero_module,
    zero_rep,
)

logger = logging.getLogger(__name__)


# -- H_0 -------------------------------------------------------------------


def lower_spaces(module: TruncatedFiGModule) -> list[Subspace]:
    """V_{<n}: the G_n-span of the image of t_{n-1}, degree by degree."""
    f = module.field
    out = [Subspace.zero(f, module.dims[0])]
    for n in range(1, module.window + 1):
        out.append(saturate(f, image_basis(f, module.trans[n - 1]), module.rep(n).mats))
    return out


def h0_dims(module: TruncatedFiGModule) -> list[int]:
    return [s.codim for s in lower_spaces(module)]


def h0(module: TruncatedFiGModule) -> TruncatedFiGModule:
    """H_0(V)_n = V_n / V_{<n}; all transitions vanish."""
    return quotient(module, lower_spaces(module))[0]


# -- raw degree invariants -------------------------------------------------


def _top_nonzero(dims: Sequence[int], limit: int) -> Degree:
    found = [n for n, d in enumerate(dims[:limit + 1]) if d]
    return max(found) if found else NEG_INF


def raw_torsion_degree(module: TruncatedFiGModule) -> Degree:
    f = module.field
    found = [n for n in range(module.valid_through)
             if module.dims[n] and rank(f, module.trans[n]) < module.dims[n]]
    return max(found) if found else NEG_INF


def raw_generating_degree(module: TruncatedFiGModule) -> Degree:
    return _top_nonzero(h0_dims(module), module.valid_through)


def certification_bound(module: TruncatedFiGModule) -> Degree:
    """max{td, 2 gd - 1} from the observed degrees."""
    return max(raw_torsion_degree(module), 2 * raw_generating_degree(module) - 1)


def certify(module: TruncatedFiGModule, value, consumption: int = 0,
            bound: Optional[Degree] = None, note: Optional[str] = None,
            extra: bool = True) -> CertifiedValue:
    """Certified when presented and the window clears the bound plus what the computation consumed."""
    if bound is None:
        bound = certification_bound(module)
    ok = extra and module.presented and module.valid_through >= max(bound, 0) + consumption
    status = CertStatus.CERTIFIED if ok else CertStatus.WINDOW_EXACT
    if not ok:
        logger.debug(f"value {value} not certified at window {module.valid_through}")
    return CertifiedValue(value=value, status=status, window_used=module.valid_through, note=note)


def torsion_degree(module: TruncatedFiGModule) -> CertifiedValue:
    return certify(module, raw_torsion_degree(module), consumption=1)


def generating_degree(module: TruncatedFiGModule) -> CertifiedValue:
    return certify(module, raw_generating_degree(module))


# -- covers ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoverSlot:
    """One summand M(rep) of a cover, mapped by phi: rep -> V_degree."""
    rep: RepMatrices
    phi: np.ndarray

    @property
    def degree(self) -> int:
        return self.rep.n


@dataclass(frozen=True, eq=False)
class FreeCover:
    """A surjection from a sum of basic filtered modules onto target."""
    target: TruncatedFiGModule
    slots: tuple[CoverSlot, ...]
    cover: ModuleMap
    free: bool

    @property
    def source(self) -> TruncatedFiGModule:
        return self.cover.source

    def generator_dims(self) -> list[int]:
        """dim H_0 of the source per degree."""
        out = [0] * (self.target.window + 1)
        for slot in self.slots:
            out[slot.degree] += slot.rep.dim
        return out


def find_slots(module: TruncatedFiGModule, free: bool = True) -> tuple[CoverSlot, ...]:
    """Lift an RREF complement basis of H_0 degree by degree.

    Free slots are regular representations, one per lift that is not already
    in the span; sharp slots are the G_n-span of all lifts of the degree.
    """
    f, ctx = module.field, module.context
    slots: list[CoverSlot] = []
    for n, current in enumerate(lower_spaces(module)):
        lifts = current.non_pivots()
        if not lifts:
            continue
        d = module.dims[n]
        mats = module.rep(n).mats
        if not free:
            rows = f.zeros(len(lifts), d)
            for i, c in enumerate(lifts):
                rows[i, c] = f.coerce(1)
            span = saturate(f, Subspace.span(f, d, rows), mats)
            slots.append(CoverSlot(_restricted_rep(module.rep(n), span), span.inclusion()))
            continue
        regular = regular_rep(f, module.group, n)
        evaluate = ElementEvaluator(module.rep(n))
        elements = ctx.elements(n)
        for c in lifts:
            v = f.unit(d, c)
            if current.contains(v):
                continue
            phi = f.zeros(d, len(elements))
            for k, h in enumerate(elements):
                phi[:, k] = evaluate(h)[:, c]
            slots.append(CoverSlot(regular, phi))
            current = saturate(f, subspace_sum(current, Subspace.span(f, d, v.reshape(1, -1))), mats)
    return tuple(slots)


def assemble_cover(module: TruncatedFiGModule, slots: Sequence[CoverSlot], free: bool) -> FreeCover:
    window = module.window
    if not slots:
        source = zero_module(module.field, module.group, window)
        return FreeCover(module, (), zero_map(source, module), free)
    built: dict[int, TruncatedFiGModule] = {}
    maps = []
    for slot in slots:
        key = id(slot.rep)
        if key not in built:
            built[key] = build_M(slot.rep, window)
        maps.append(yoneda_map(slot.rep, module, slot.phi, window, source=built[key]))
    return FreeCover(module, tuple(slots), map_from_sum(maps), free)


def free_cover(module: TruncatedFiGModule) -> FreeCover:
    return assemble_cover(module, find_slots(module, free=True), free=True)


def sharp_cover(module: TruncatedFiGModule) -> FreeCover:
    return assemble_cover(module, find_slots(module, free=False), free=False)


def syzygy(module: TruncatedFiGModule, free: bool = True) -> tuple[TruncatedFiGModule, ModuleMap]:
    cover = free_cover(module) if free else sharp_cover(module)
    return kernel(cover.cover)


# -- complexes and resolutions ----------------------------------------------


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """modules[k] with differentials[k-1]: modules[k] -> modules[k-1]."""
    modules: tuple[TruncatedFiGModule, ...]
    differentials: tuple[ModuleMap, ...]

    def __post_init__(self):
        if len(self.differentials) != max(len(self.modules) - 1, 0):
            raise PreconditionError("a complex of r modules needs r - 1 differentials")
        for k in range(1, len(self.differentials)):
            if not compose(self.differentials[k - 1], self.differentials[k]).is_zero():
                raise PreconditionError(f"d_{k} o d_{k + 1} is not zero")

    def homology(self, k: int) -> TruncatedFiGModule:
        module = self.modules[k]
        if k == 0:
            outgoing = zero_map(module, zero_module(module.field, module.group, module.window))
        else:
            outgoing = self.differentials[k - 1]
        if k + 1 < len(self.modules):
            incoming = self.differentials[k]
        else:
            incoming = zero_map(zero_module(module.field, module.group, module.window), module)
        return homology_at(incoming, outgoing)


class Resolution:
    """P_k -> Omega_k with Omega_{k+1} = ker, extended one level at a time."""

    def __init__(self, module: TruncatedFiGModule, free: bool = True):
        self.module = module
        self.free = free
        self.covers: list[FreeCover] = []
        self.syzygies: list[TruncatedFiGModule] = [module]
        self.inclusions: list[ModuleMap] = []

    @property
    def length(self) -> int:
        return len(self.covers)

    def extend(self) -> None:
        k = len(self.covers)
        target = self.syzygies[k]
        cover = assemble_cover(target, find_slots(target, self.free), self.free)
        omega, incl = kernel(cover.cover)
        self.covers.append(cover)
        self.syzygies.append(omega)
        self.inclusions.append(incl)
        logger.debug(f"Resolution level {k}: {len(cover.slots)} slot(s), "
                     f"syzygy dims {list(omega.dims)}")

    def extend_to(self, levels: int) -> "Resolution":
        while len(self.covers) < levels:
            self.extend()
        return self

    def generators(self, k: int) -> tuple[CoverSlot, ...]:
        if k < len(self.covers):
            return self.covers[k].slots
        if k == len(self.covers):
            return find_slots(self.syzygies[k], self.free)
        raise PreconditionError(f"resolution level {k} not reached")

    def differential(self, k: int) -> ModuleMap:
        """d_k: P_k -> P_{k-1}."""
        return compose(self.inclusions[k - 1], self.covers[k].cover)

    def terminated(self) -> bool:
        return self.syzygies[-1].is_zero()

    def complex(self) -> ChainComplex:
        modules = tuple(c.source for c in self.covers)
        return ChainComplex(modules, tuple(self.differentials()))

    def differentials(self) -> list[ModuleMap]:
        return [self.differential(k) for k in range(1, len(self.covers))]


def _top_indices(slots: Sequence[CoverSlot], n: int) -> np.ndarray:
    """Coordinates of the degree-n slots inside degree n of their direct sum."""
    out: list[int] = []
    offset = 0
    for slot in slots:
        size = dimension_of_free(slot.rep, n)
        if slot.degree == n:
            out.extend(range(offset, offset + size))
        offset += size
    return np.array(out, dtype=int)


def _h0_of_cover(cover: FreeCover) -> TruncatedFiGModule:
    target = cover.target
    if not cover.slots:
        return zero_module(target.field, target.group, target.window)
    return direct_sum(*[concentrated(s.rep, target.window) for s in cover.slots])


def h0_complex(resolution: Resolution) -> ChainComplex:
    """H_0 applied termwise to the resolution: the degree-n slots of consecutive levels."""
    covers = resolution.covers
    modules = [_h0_of_cover(c) for c in covers]
    maps = []
    for k in range(1, len(covers)):
        d = resolution.differential(k)
        mats = []
        for n in range(d.window + 1):
            rows = _top_indices(covers[k - 1].slots, n)
            cols = _top_indices(covers[k].slots, n)
            mats.append(d.mats[n][np.ix_(rows, cols)])
        maps.append(ModuleMap(modules[k], modules[k - 1], tuple(mats)))
    return ChainComplex(tuple(modules), tuple(maps))


# -- higher homology ---------------------------------------------------------


def homology_dims(module: TruncatedFiGModule, i_max: int, free: bool = False) -> list[list[int]]:
    """dim H_i(V)_n for i = 0..i_max, by dimension shifting along a resolution.

    0 -> H_1(X) -> H_0(Omega X) -> H_0(P) -> H_0(X) -> 0 for any sharp cover P -> X.
    """
    resolution = Resolution(module, free).extend_to(i_max)
    h0s = [h0_dims(omega) for omega in resolution.syzygies]
    out = [h0s[0]]
    for i in range(1, i_max + 1):
        gens = resolution.covers[i - 1].generator_dims()
        out.append([h0s[i][n] - gens[n] + h0s[i - 1][n] for n in range(module.window + 1)])
    return out


def h_i(module: TruncatedFiGModule, i: int, free: bool = False) -> TruncatedFiGModule:
    """H_i(V) as a module: homology of H_0 applied to a resolution."""
    if i < 0:
        raise PreconditionError("homological index must be non-negative")
    if i == 0:
        return h0(module)
    resolution = Resolution(module, free).extend_to(i + 2)
    return h0_complex(resolution).homology(i)


def hd(module: TruncatedFiGModule, i: int) -> CertifiedValue:
    dims = homology_dims(module, i)[i]
    value = _top_nonzero(dims, module.valid_through)
    return certify(module, value, consumption=i)


def regularity(module: TruncatedFiGModule, upper: Optional[Degree] = None) -> CertifiedValue:
    """max_{i >= 1} hd_i - i.

    The scan over i stops at the bound max{2gd - 1, td}, or once the next
    syzygy is generated low enough that its own bound cannot raise reg.
    """
    td, gd = raw_torsion_degree(module), raw_generating_degree(module)
    bound = max(td, 2 * gd - 1)
    if module.is_zero():
        return certify(module, NEG_INF, bound=bound)
    resolution = Resolution(module, free=False)
    reg: Degree = NEG_INF
    closed = False
    capacity = max(1, module.valid_through - max(bound, 0))
    h0_prev = h0_dims(module)
    for i in range(1, capacity + 1):
        resolution.extend()
        gens = resolution.covers[i - 1].generator_dims()
        h0_next = h0_dims(resolution.syzygies[i])
        dims = [h0_next[n] - gens[n] + h0_prev[n] for n in range(module.window + 1)]
        reg = max(reg, _top_nonzero(dims, module.valid_through) - i)
        logger.debug(f"hd_{i} scan: dims {dims}, running reg {reg}")
        if i == 1 and not any(dims):
            # H_1 = 0 forces every higher homology to vanish
            closed = True
            break
        if resolution.terminated() or reg >= bound:
            closed = True
            break
        # Omega_i is torsion free, so later levels give at most 2gd(Omega_i) - 1 - i
        top = _top_nonzero(h0_next, module.valid_through)
        if top != NEG_INF and 2 * top - 1 - i <= reg:
            closed = True
            break
        h0_prev = h0_next
    closed = closed or (upper is not None and reg == upper)
    return certify(module, reg, consumption=1, bound=bound, extra=closed,
                   note=None if closed else f"scan stopped at i={capacity}")


def _sharp_raw(module: TruncatedFiGModule) -> bool:
    return not any(homology_dims(module, 1)[1][:module.valid_through + 1])


def is_sharp_filtered(module: TruncatedFiGModule) -> CertifiedValue:
    """True iff H_1(V) = 0 on the window."""
    return certify(module, _sharp_raw(module), consumption=1)


def crude_nagpal_bound(module: TruncatedFiGModule) -> Degree:
    td, gd = raw_torsion_degree(module), raw_generating_degree(module)
    return max(td, 2 * gd - 2) + 1


def nagpal_number(module: TruncatedFiGModule) -> CertifiedValue:
    """Smallest b with Sigma_b V sharp-filtered."""
    if module.is_zero():
        return certify(module, 0)
    limit = crude_nagpal_bound(module)
    limit = 0 if limit == NEG_INF else int(limit)
    current, b = module, 0
    while not _sharp_raw(current):
        if b >= limit or current.valid_through < 1:
            raise WindowExhaustedError("nagpal_number", b + 1, module.valid_through)
        current = shift(current)
        b += 1
    logger.debug(f"Nagpal number {b} (search limit {limit})")
    return certify(module, b, consumption=b + 1)


# -- Ext against finitely supported modules ----------------------------------


def torsion_module(field, group, s: int, window: int) -> TruncatedFiGModule:
    """kG_s concentrated in degree s."""
    return concentrated(regular_rep(field, group, s), window)


def ext_dims(source: TruncatedFiGModule, target: TruncatedFiGModule, i_max: int) -> list[int]:
    """dim Ext^i(source, target) for i = 0..i_max via Hom(P_*, target) for a free resolution.

    Hom(M(kG_n), V) = V_n, so the cochain groups are sums of V_{deg} over slots.
    """
    f = target.field
    resolution = Resolution(source, free=True).extend_to(i_max + 1)
    levels = [resolution.covers[k].slots for k in range(i_max + 1)]
    levels.append(resolution.generators(i_max + 1))
    need = max((s.degree for level in levels for s in level), default=0)
    if need > target.valid_through:
        raise WindowExhaustedError("ext_dims", need, target.valid_through)
    hom_dims = [sum(target.dims[s.degree] for s in level) for level in levels]
    evaluators: dict[int, ElementEvaluator] = {}
    cosets: dict[tuple[int, int], list[np.ndarray]] = {}
    ctx = target.context

    def restrict(k: int) -> np.ndarray:
        """delta_k: Hom(P_k, V) -> Hom(P_{k+1}, V)."""
        delta = f.zeros(hom_dims[k + 1], hom_dims[k])
        incl = resolution.inclusions[k]
        row = 0
        for gen in levels[k + 1]:
            a = gen.degree
            x = f.matmul(incl.mats[a], gen.phi[:, :1])[:, 0]
            size_out = target.dims[a]
            col, offset = 0, 0
            for slot in levels[k]:
                n, width = slot.degree, slot.rep.dim
                block_len = dimension_of_free(slot.rep, a)
                size_in = target.dims[n]
                block = x[offset:offset + block_len]
                if size_in and size_out and np.any(block != 0):
                    if n not in evaluators:
                        evaluators[n] = ElementEvaluator(target.rep(n))
                    if (n, a) not in cosets:
                        cosets[(n, a)] = coset_matrices(target, n, a)
                    elements = ctx.elements(n)
                    acc = f.zeros(size_out, size_in)
                    for idx in np.flatnonzero(block != 0):
                        s_index, w = divmod(int(idx), width)
                        term = f.matmul(cosets[(n, a)][s_index], evaluators[n](elements[w]))
                        acc = f.add(acc, f.scale(block[idx], term))
                    delta[row:row + size_out, col:col + size_in] = acc
                col += size_in
                offset += block_len
            row += size_out
        return delta

    ranks = [rank(f, restrict(k)) for k in range(i_max + 1)]
    out = []
    for i in range(i_max + 1):
        out.append(hom_dims[i] - ranks[i] - (ranks[i - 1] if i else 0))
    logger.debug(f"Ext dims through {i_max}: {out}")
    return out


def ext_torsion(s: int, module: TruncatedFiGModule, i: int) -> int:
    """dim Ext^i(kG_s, V)."""
    source = torsion_module(module.field, module.group, s, s + i + 1)
    return ext_dims(source, module, i)[i]


# -- depths ------------------------------------------------------------------


def classical_depth(module: TruncatedFiGModule, i_max: Optional[int] = None) -> CertifiedValue:
    """inf{i : Ext^i(kG_s, V) != 0 for some s < N(V)}."""
    nagpal = nagpal_number(module)
    if nagpal.value == 0:
        return CertifiedValue(value=POS_INF, status=nagpal.status, window_used=module.valid_through)
    gd = raw_generating_degree(module)
    top = max(int(gd), 0) if i_max is None else i_max
    found: Optional[int] = None
    for s in range(int(nagpal.value)):
        dims = ext_dims(torsion_module(module.field, module.group, s, s + top + 1), module, top)
        hits = [i for i, d in enumerate(dims) if d]
        if hits and (found is None or hits[0] < found):
            found = hits[0]
    if found is None:
        return CertifiedValue(value=POS_INF, status=CertStatus.WINDOW_EXACT,
                              window_used=module.valid_through, note=f"> {top}")
    return certify(module, found, consumption=int(nagpal.value) + top, extra=nagpal.certified)


def derivative_depth(module: TruncatedFiGModule, a_max: Optional[int] = None) -> CertifiedValue:
    """inf{a : H_1 of D^{a+1} applied to P_2 -> P_1 -> P_0 is nonzero}."""
    gd = raw_generating_degree(module)
    if a_max is None:
        a_max = max(int(gd) if gd != NEG_INF else 0, 0) + 1
    resolution = Resolution(module, free=False).extend_to(2)
    top = sharp_cover(resolution.syzygies[2])
    maps = [compose(resolution.inclusions[1], top.cover), resolution.differential(1)]
    f = module.field
    for a in range(a_max + 1):
        if maps[0].window < 1:
            return CertifiedValue(value=POS_INF, status=CertStatus.WINDOW_EXACT,
                                  window_used=module.valid_through, note=f"window ran out at a={a}")
        maps = [derivative_map(m) for m in maps]
        outer, inner = maps
        h1 = [inner.source.dims[n] - rank(f, inner.mats[n]) - rank(f, outer.mats[n])
              for n in range(min(outer.window, inner.window) + 1)]
        logger.debug(f"D^{a + 1}: H_1 dims {h1}")
        if any(h1):
            return certify(module, a, consumption=a + 3)
    return CertifiedValue(value=POS_INF, status=CertStatus.WINDOW_EXACT,
                          window_used=module.valid_through, note=f"> {a_max}")


# -- orthogonality and projectivity -----------------------------------------


def is_torsion(module: TruncatedFiGModule) -> bool:
    """Every element dies before the top of the window."""
    f = module.field
    return all(f.is_zero(module.transition(n, module.window)) for n in range(module.window + 1))


def pad_with_zeros(module: TruncatedFiGModule, window: int) -> TruncatedFiGModule:
    """Extend a torsion module by zero spaces up to window."""
    if window <= module.window:
        return module
    if module.dims[-1]:
        raise PreconditionError("only a module vanishing at the top of its window can be padded")
    f, g = module.field, module.group
    reps = list(module.actions) + [zero_rep(f, g, n) for n in range(module.window + 1, window + 1)]
    trans = list(module.trans) + [f.zeros(0, reps[n].dim) for n in range(module.window, window)]
    return module_from_reps(f, g, reps, trans, window, module.presented)


def check_orthogonality(torsion: TruncatedFiGModule, filtered: TruncatedFiGModule,
                        i_max: int = 2, torsion_id: str = "T",
                        filtered_id: str = "F") -> OrthogonalityReport:
    if not is_torsion(torsion):
        raise PreconditionError(f"{torsion_id} is not torsion on its window")
    if not _sharp_raw(filtered):
        raise PreconditionError(f"{filtered_id} is not sharp-filtered")
    td = raw_torsion_degree(torsion)
    top = max(int(td) if td != NEG_INF else 0, torsion.window) + i_max + 1
    dims = ext_dims(pad_with_zeros(torsion, top), filtered, i_max)
    return OrthogonalityReport(torsion_id=torsion_id, filtered_id=filtered_id, ext_dims=dims,
                               violations=[i for i, d in enumerate(dims) if d])


def is_projective(module: TruncatedFiGModule) -> CertifiedValue:
    """Decided only when char k does not divide |G_n| for the generating degrees."""
    sharp = is_sharp_filtered(module)
    if not sharp.value:
        return sharp.model_copy(update={"value": False})
    p = module.field.characteristic
    gd = raw_generating_degree(module)
    degrees = range(int(gd) + 1) if gd != NEG_INF else range(0)
    if p == 0 or all(module.context.order_of(n) % p for n in degrees):
        return sharp.model_copy(update={"value": True})
    return sharp.model_copy(update={"value": None,
                                    "note": f"undetermined: {p} divides some |G_n|, n <= {gd}"})


def eventually_projective(module: TruncatedFiGModule) -> CertifiedValue:
    """Projectivity of Sigma_{N(V)} V."""
    nagpal = nagpal_number(module)
    return is_projective(shift_b(module, int(nagpal.value)))
