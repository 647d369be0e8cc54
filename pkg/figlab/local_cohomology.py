"""
Torsion functor, Nagpal complex and local cohomology.

H^0_m(V) is the torsion submodule; H^{i+1}_m(V) is the torsion part of the
i-th cokernel Q^{(i)} of the Nagpal complex. The report builders here also
drive the window-doubling retries for presented input.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence, TypeVar, Union

from .config import config
from .errors import FigLabError, WindowExhaustedError
from .functors import shift, tau_b
from .groups import FiniteGroup, regular_rep
from .homology import (
    ChainComplex,
    certify,
    classical_depth,
    crude_nagpal_bound,
    derivative_depth,
    ext_dims,
    is_sharp_filtered,
    nagpal_number,
    raw_generating_degree,
    raw_torsion_degree,
    regularity,
)
from .linalg import FieldSpec, Subspace, kernel_basis
from .models import (
    NEG_INF,
    POS_INF,
    CertifiedValue,
    ConjectureRow,
    Degree,
    InvariantReport,
    Violation,
    encode_degree,
)
from .modules import (
    ModuleMap,
    Presentation,
    TruncatedFiGModule,
    build_M,
    cokernel,
    compose,
    materialize,
    quotient,
    submodule,
    truncate,
    zero_module,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")


# -- torsion -----------------------------------------------------------------


def torsion_submodule(module: TruncatedFiGModule) -> tuple[TruncatedFiGModule, ModuleMap]:
    """Kernel of the composite into the top valid degree."""
    top = module.valid_through
    trimmed = truncate(module, top)
    spaces = [kernel_basis(module.field, module.transition(n, top)) for n in range(top + 1)]
    return submodule(trimmed, spaces)


def torsion_free_part(module: TruncatedFiGModule) -> TruncatedFiGModule:
    """V / H^0_m(V)."""
    top = module.valid_through
    spaces = [kernel_basis(module.field, module.transition(n, top)) for n in range(top + 1)]
    return quotient(truncate(module, top), spaces)[0]


def torsion_top(module: TruncatedFiGModule) -> Degree:
    """td of a finitely supported module: its top nonzero degree."""
    found = [n for n, d in enumerate(module.dims[:module.valid_through + 1]) if d]
    return max(found) if found else NEG_INF


def fi_hom_power(module: TruncatedFiGModule, n: int) -> TruncatedFiGModule:
    """Hom(M(r)/m^n, V) in degree r: the kernel of the length-n transition out of V_r."""
    if n < 1:
        raise ValueError("fi_hom_power needs n >= 1")
    top = module.valid_through - n
    if top < 0:
        raise WindowExhaustedError("fi_hom_power", n, module.valid_through)
    spaces = [kernel_basis(module.field, module.transition(r, r + n)) for r in range(top + 1)]
    return submodule(truncate(module, top), spaces)[0]


@lru_cache(maxsize=None)
def _power_quotient(f: FieldSpec, group: FiniteGroup, r: int, n: int, window: int) -> TruncatedFiGModule:
    """M(kG_r)/m^n on degrees 0..window."""
    free = build_M(regular_rep(f, group, r), window)
    # M(r)/m^n keeps the degrees below r + n
    spaces = [Subspace.full(f, d) if s >= r + n else Subspace.zero(f, d)
              for s, d in enumerate(free.dims)]
    return quotient(free, spaces)[0]


def fi_ext_power(module: TruncatedFiGModule, n: int, i: int) -> list[int]:
    """dim Ext^i(M(kG_r)/m^n, V) for every r the window supports."""
    out = []
    r = 0
    while r + n + i <= module.valid_through:
        source = _power_quotient(module.field, module.group, r, n, r + n + i)
        out.append(ext_dims(source, module, i)[i])
        r += 1
    return out


# -- the Nagpal complex ------------------------------------------------------


@dataclass
class NagpalComplex:
    """V -> F^0 -> F^1 -> ... with F^i = Sigma_{b_i} Q^{(i-1)} and Q^{(i)} = coker."""
    source: TruncatedFiGModule
    b: list[int] = field(default_factory=list)
    F: list[TruncatedFiGModule] = field(default_factory=list)
    Q: list[TruncatedFiGModule] = field(default_factory=list)
    taus: list[ModuleMap] = field(default_factory=list)
    projections: list[ModuleMap] = field(default_factory=list)

    @property
    def consumption(self) -> int:
        return sum(self.b)

    def differential(self, i: int) -> ModuleMap:
        """F^i -> F^{i+1}: project to Q^{(i)}, then tau_{b_{i+1}}."""
        return compose(self.taus[i + 1], self.projections[i])

    def chain_complex(self) -> ChainComplex:
        """V -> F^0 -> ... -> F^last, reindexed so V sits in the top position."""
        modules = [self.source, *self.F]
        maps = [self.taus[0]] + [self.differential(i) for i in range(len(self.F) - 1)]
        return ChainComplex(tuple(reversed(modules)), tuple(reversed(maps)))


def nagpal_complex(module: TruncatedFiGModule) -> NagpalComplex:
    """Minimal shifts at every stage; a sharp-filtered input gives 0 -> V -> V -> 0."""
    complex_ = NagpalComplex(module)
    gd = raw_generating_degree(module)
    stages = (int(gd) if gd != NEG_INF else 0) + 2
    current = module
    for stage in range(stages):
        b = int(nagpal_number(current).value)
        tau = tau_b(current, b)
        quo, proj = cokernel(tau)
        complex_.b.append(b)
        complex_.F.append(tau.target)
        complex_.taus.append(tau)
        complex_.Q.append(quo)
        complex_.projections.append(proj)
        logger.debug(f"Nagpal stage {stage}: b={b}, F dims {list(tau.target.dims)}, "
                     f"Q dims {list(quo.dims)}")
        if quo.is_zero():
            return complex_
        current = quo
    # Q^{(i)} is generated below gd - i, so a nonzero cokernel here is a window artefact
    raise WindowExhaustedError("nagpal_complex", module.valid_through + 1, module.valid_through)


def local_cohomology(module: TruncatedFiGModule, i: int,
                     complex_: Optional[NagpalComplex] = None) -> TruncatedFiGModule:
    if i < 0:
        raise ValueError("local cohomology index must be non-negative")
    if i == 0:
        return torsion_submodule(module)[0]
    if complex_ is None:
        complex_ = nagpal_complex(module)
    if i - 1 < len(complex_.Q):
        return torsion_submodule(complex_.Q[i - 1])[0]
    return zero_module(module.field, module.group, 0)


@dataclass
class LocalCohomologyProfile:
    modules: list[TruncatedFiGModule]
    complex_: NagpalComplex

    @property
    def tds(self) -> list[Degree]:
        return [torsion_top(m) for m in self.modules]

    @property
    def depth(self) -> Degree:
        nonzero = [i for i, m in enumerate(self.modules) if not m.is_zero()]
        return min(nonzero) if nonzero else POS_INF

    @property
    def cd(self) -> Degree:
        nonzero = [i for i, m in enumerate(self.modules) if not m.is_zero()]
        return max(nonzero) if nonzero else NEG_INF

    @property
    def nagpal_formula(self) -> Degree:
        top = max(self.tds, default=NEG_INF)
        return 0 if top == NEG_INF else top + 1

    @property
    def rhs(self) -> Degree:
        return max((td + i for i, td in enumerate(self.tds)), default=NEG_INF)


def local_cohomology_profile(module: TruncatedFiGModule) -> LocalCohomologyProfile:
    complex_ = nagpal_complex(module)
    modules = [local_cohomology(module, 0)]
    modules += [torsion_submodule(q)[0] for q in complex_.Q]
    return LocalCohomologyProfile(modules, complex_)


def depth(module: TruncatedFiGModule) -> CertifiedValue:
    profile = local_cohomology_profile(module)
    return certify(module, profile.depth, consumption=profile.complex_.consumption + 1)


def cohomological_dimension(module: TruncatedFiGModule) -> CertifiedValue:
    profile = local_cohomology_profile(module)
    return certify(module, profile.cd, consumption=profile.complex_.consumption + 1)


# -- reports -----------------------------------------------------------------


Source = Union[Presentation, TruncatedFiGModule]


def with_retries(source: Source, fn: Callable[[TruncatedFiGModule], T],
                 window: Optional[int] = None, retries: Optional[int] = None) -> T:
    """Run fn on the materialized module, doubling the window on exhaustion."""
    if isinstance(source, TruncatedFiGModule):
        return fn(source)
    if retries is None:
        retries = config.retries
    window = window if window is not None else source.default_window()
    for attempt in range(retries + 1):
        try:
            return fn(materialize(source, window))
        except WindowExhaustedError as e:
            if attempt == retries:
                raise
            logger.warning(f"{e}; retrying at window {2 * window}")
            window *= 2
    raise AssertionError("unreachable")


def invariant_report(module: TruncatedFiGModule, module_id: str = "module",
                     with_depths: bool = True) -> InvariantReport:
    """All invariants of one module, with the theorem-level cross-checks."""
    td, gd = raw_torsion_degree(module), raw_generating_degree(module)
    profile = local_cohomology_profile(module)
    nagpal = nagpal_number(module)
    rhs = profile.rhs
    sharp = is_sharp_filtered(module).value
    reg = regularity(module, upper=None if sharp else rhs)
    consumption = profile.complex_.consumption + 1
    lc_certified = certify(module, True, consumption=consumption).certified
    depth_classical = depth_derivative = None
    if with_depths:
        cls_depth = classical_depth(module)
        der_depth = derivative_depth(module)
        depth_classical, depth_derivative = cls_depth.value, der_depth.value
    crude_n = crude_nagpal_bound(module)
    crude_reg = max(td, 2 * gd - 1)
    certified = nagpal.certified and reg.certified and lc_certified
    report = InvariantReport(
        module_id=module_id,
        field=str(module.field),
        group=module.group.label(),
        gd=gd,
        td=td,
        reg=reg.value,
        reg_status=reg.status,
        N_direct=nagpal.value,
        N_formula=profile.nagpal_formula,
        depth_lc=profile.depth,
        depth_classical=depth_classical,
        depth_derivative=depth_derivative,
        cd=profile.cd,
        lc_td=profile.tds,
        conjecture_rhs=None if sharp else rhs,
        gap=None if sharp or reg.value == NEG_INF else rhs - reg.value,
        certified=certified,
        window_used=module.valid_through,
        crude_nagpal_bound=crude_n if crude_n != NEG_INF else 0,
        crude_reg_bound=crude_reg,
    )
    violations = []
    if report.N_direct != report.N_formula:
        violations.append(Violation(check="N(V) = max td(H^i) + 1",
                                    detail=f"{report.N_direct} != {report.N_formula}"))
    if not sharp and nagpal.value > report.crude_nagpal_bound:
        violations.append(Violation(check="N(V) <= max{td, 2gd-2} + 1",
                                    detail=f"{nagpal.value} > {report.crude_nagpal_bound}"))
    if not sharp and reg.value > rhs:
        violations.append(Violation(check="reg <= max td(H^i) + i", detail=f"{reg.value} > {rhs}"))
    if not sharp and rhs > crude_reg:
        violations.append(Violation(check="max td(H^i) + i <= max{2gd-1, td}",
                                    detail=f"{rhs} > {crude_reg}"))
    if profile.tds[0] != td:
        violations.append(Violation(check="td(H^0) = td", detail=f"{profile.tds[0]} != {td}"))
    for i, td_i in enumerate(profile.tds[1:], start=1):
        # H^{i-1} of the Nagpal complex is H^i_m, so the complex bound 2gd - 2(i-1) - 2 applies
        if td_i > 2 * gd - 2 * i:
            violations.append(Violation(check=f"td(H^{i}) <= 2gd - 2i",
                                        detail=f"{td_i} > {2 * gd - 2 * i}"))
    if profile.cd > gd:
        violations.append(Violation(check="cd <= gd", detail=f"{profile.cd} > {gd}"))
    if with_depths:
        depths = {profile.depth, depth_classical, depth_derivative}
        if len(depths) != 1:
            violations.append(Violation(
                check="depth agreement",
                detail=f"lc={encode_degree(profile.depth)}, classical={encode_degree(depth_classical)}, "
                       f"derivative={encode_degree(depth_derivative)}"))
    if violations and certified:
        for v in violations:
            logger.warning(f"{module_id}: {v.check} fails ({v.detail})")
    report.violations = violations
    return report


def _torsion_check(module: TruncatedFiGModule, reg: Degree) -> Optional[str]:
    top = module.dims[module.valid_through]
    if top or not torsion_submodule(module)[0].dims == tuple(module.dims[:module.valid_through + 1]):
        return None
    td = raw_torsion_degree(module)
    return f"reg={encode_degree(reg)} td={encode_degree(td)} {'ok' if reg == td else 'differs'}"


def _shift_check(module: TruncatedFiGModule, reg: Degree) -> str:
    shifted = shift(module)
    if is_sharp_filtered(shifted).value:
        return "not-applicable"
    reg_shift = regularity(shifted).value
    expected = reg - 1
    return (f"reg(SV)={encode_degree(reg_shift)} reg(V)-1={encode_degree(expected)} "
            f"{'ok' if reg_shift == expected else 'differs'}")


def conjecture_row(module: TruncatedFiGModule, module_id: str) -> ConjectureRow:
    report = invariant_report(module, module_id, with_depths=False)
    if report.conjecture_rhs is None:
        return ConjectureRow(module_id=module_id, reg=report.reg, certified=report.certified,
                             applicable=False, shift_check="not-applicable")
    return ConjectureRow(
        module_id=module_id, reg=report.reg, rhs=report.conjecture_rhs, gap=report.gap,
        certified=report.certified,
        torsion_check=_torsion_check(module, report.reg),
        shift_check=_shift_check(module, report.reg),
    )


def conjecture_scan(suite: Sequence[tuple[str, Source]], window: Optional[int] = None,
                    retries: Optional[int] = None) -> list[ConjectureRow]:
    """One row per module; failures become rows with an error and the scan continues."""
    rows = []
    for module_id, source in suite:
        try:
            rows.append(with_retries(source, lambda m: conjecture_row(m, module_id), window, retries))
        except FigLabError as e:
            logger.error(f"{module_id}: {e}")
            rows.append(ConjectureRow(module_id=module_id, applicable=False, error=str(e), exception=e))
        else:
            row = rows[-1]
            if row.certified and row.gap not in (None, 0):
                logger.warning(f"{module_id}: certified nonzero conjecture gap {row.gap}")
    return rows
