"""
Data models for figlab: certified values, report rows and the module file format.
"""

import math
from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator

POS_INF = math.inf
NEG_INF = -math.inf

Degree = Union[int, float]


def encode_degree(value: Any) -> Any:
    """Infinite degrees serialize as "+inf" / "-inf"; everything else passes through."""
    if isinstance(value, float) and math.isinf(value):
        return "+inf" if value > 0 else "-inf"
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


class OutputFormat(str, Enum):
    """Report output format."""
    JSON = "json"
    CSV = "csv"
    TABLE = "table"


class CertStatus(str, Enum):
    """How far a computed value can be trusted."""
    CERTIFIED = "certified"
    WINDOW_EXACT = "window-exact"


class Command(str, Enum):
    """CLI command enumeration."""
    VALIDATE = "validate"
    INVARIANTS = "invariants"
    HOMOLOGY = "homology"
    LOCALCOH = "localcoh"
    DEPTH = "depth"
    CONJECTURE = "conjecture"
    GENERATE = "generate"


class RunConfig(BaseModel):
    """One CLI or tool invocation."""
    command: Command = Field(..., description="Command to run")
    paths: List[str] = Field(default_factory=list, description="Input module files")
    window: Optional[int] = Field(None, ge=0, description="Window override")
    retries: int = Field(3, ge=0, description="Window-doubling retry cap")
    output_format: OutputFormat = Field(OutputFormat.TABLE, description="Report format")
    seed: int = Field(0, description="Seed for generated presentations")
    imax: int = Field(2, ge=0, description="Highest homological index to report")
    count: int = Field(20, ge=1, description="Size of a generated suite")


class CertifiedValue(BaseModel):
    """A computed invariant together with its windowing caveat."""
    value: Optional[Union[bool, int, float]] = Field(..., description="Value; +/-inf allowed, None when undetermined")
    status: CertStatus = Field(CertStatus.WINDOW_EXACT, description="Certification status")
    window_used: int = Field(0, description="Window the value was read from")
    note: Optional[str] = Field(None, description="Free-form caveat")

    @property
    def certified(self) -> bool:
        return self.status == CertStatus.CERTIFIED

    @field_serializer("value")
    def _serialize_value(self, value):
        return encode_degree(value)


class Violation(BaseModel):
    """A theorem-level relation that failed on a row."""
    check: str = Field(..., description="Name of the relation")
    detail: str = Field(..., description="Observed values")


class InvariantReport(BaseModel):
    """Per-module summary row; key order is the serialized column order."""
    model_config = ConfigDict(populate_by_name=True)

    module_id: str = Field(..., alias="module-id")
    field: str
    group: str
    gd: Degree
    td: Degree
    reg: Degree
    reg_status: CertStatus
    N_direct: Degree
    N_formula: Degree
    depth_lc: Degree
    depth_classical: Optional[Degree] = None
    depth_derivative: Optional[Degree] = None
    cd: Degree
    lc_td: List[Degree] = Field(default_factory=list)
    conjecture_rhs: Optional[Degree] = None
    gap: Optional[Degree] = None
    certified: bool = False
    window_used: int = 0
    crude_nagpal_bound: Degree = Field(NEG_INF, exclude=True)
    crude_reg_bound: Degree = Field(NEG_INF, exclude=True)
    violations: List[Violation] = Field(default_factory=list, exclude=True)

    def row(self) -> Dict[str, Any]:
        """The schema row, infinities encoded."""
        data = self.model_dump(by_alias=True)
        return {k: ([encode_degree(x) for x in v] if isinstance(v, list) else
                    (v.value if isinstance(v, Enum) else encode_degree(v)))
                for k, v in data.items()}


class HomologyReport(BaseModel):
    """Degreewise dimensions of H_i for one module."""
    module_id: str
    i: int
    dims: List[int]
    hd: Degree
    status: CertStatus

    def row(self) -> Dict[str, Any]:
        return {"module-id": self.module_id, "i": self.i, "dims": self.dims,
                "hd": encode_degree(self.hd), "status": self.status.value}


class LocalCohomologyReport(BaseModel):
    """Degreewise dimensions of H^i_m for one module."""
    module_id: str
    i: int
    dims: List[int]
    td: Degree
    b: Optional[int] = None

    def row(self) -> Dict[str, Any]:
        return {"module-id": self.module_id, "i": self.i, "dims": self.dims,
                "td": encode_degree(self.td), "b": self.b}


class DepthReport(BaseModel):
    """The three depths, which agree on every finitely generated module."""
    module_id: str
    depth_lc: Degree
    depth_classical: Optional[Degree]
    depth_derivative: Optional[Degree]
    cd: Degree
    agree: bool

    def row(self) -> Dict[str, Any]:
        return {"module-id": self.module_id, "depth_lc": encode_degree(self.depth_lc),
                "depth_classical": encode_degree(self.depth_classical),
                "depth_derivative": encode_degree(self.depth_derivative),
                "cd": encode_degree(self.cd), "agree": self.agree}


class OrthogonalityReport(BaseModel):
    """Ext^i(T, F) dimensions for a torsion T against a filtered F."""
    torsion_id: str
    filtered_id: str
    ext_dims: List[int]
    violations: List[int] = Field(default_factory=list, description="Indices i with Ext^i != 0")

    @property
    def orthogonal(self) -> bool:
        return not self.violations


class ConjectureRow(BaseModel):
    """One conjecture-scan row; gaps are data, not failures."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    module_id: str
    reg: Optional[Degree] = None
    rhs: Optional[Degree] = None
    gap: Optional[Degree] = None
    certified: bool = False
    applicable: bool = True
    torsion_check: Optional[str] = None
    shift_check: Optional[str] = None
    error: Optional[str] = None
    exception: Optional[Exception] = Field(None, exclude=True)

    def row(self) -> Dict[str, Any]:
        return {"module-id": self.module_id, "reg": encode_degree(self.reg),
                "rhs": encode_degree(self.rhs), "gap": encode_degree(self.gap),
                "certified": self.certified, "applicable": self.applicable,
                "torsion_check": self.torsion_check, "shift_check": self.shift_check,
                "error": self.error}


# -- module file format --------------------------------------------------


class GroupSpec(BaseModel):
    """Base group by Cayley table; element 0 is the identity."""
    order: int = Field(..., ge=1)
    mul: List[List[int]]
    generators: List[int] = Field(default_factory=list)


class RepSpec(BaseModel):
    """Explicit matrices for the canonical generators s_1..s_{n-1}, a_1..a_g."""
    dim: int = Field(..., ge=0)
    mats: List[List[List[Union[int, str]]]] = Field(default_factory=list)


RepLike = Union[Literal["trivial", "sign", "regular"], RepSpec]


class TermSpec(BaseModel):
    """coeff * [(subset, perm, dec) (x) e_w] in the generator block gen."""
    gen: int = Field(0, ge=0, description="Generator index, 0-based")
    subset: List[int] = Field(default_factory=list, description="Image points, 1-based, increasing")
    perm: Optional[List[int]] = Field(None, description="One-line permutation of 1..b")
    dec: Optional[List[int]] = Field(None, description="Decoration per source point (group element indices)")
    w: int = Field(0, ge=0, description="Basis index in the generator rep")
    coeff: Union[int, str] = 1


class ColumnSpec(BaseModel):
    terms: List[TermSpec] = Field(default_factory=list)


class RelationMapSpec(BaseModel):
    """Either the image of basis vector 0 (terms) or one column per basis vector."""
    terms: Optional[List[TermSpec]] = None
    columns: Optional[List[ColumnSpec]] = None


class GeneratorSpec(BaseModel):
    degree: int = Field(..., ge=0)
    rep: RepLike = "trivial"


class RelationSpec(BaseModel):
    degree: int = Field(..., ge=0)
    rep: RepLike = "trivial"
    map: RelationMapSpec


class ModuleFile(BaseModel):
    """A module file: a presentation, or raw windowed data."""
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    field: Union[Literal["Q"], Dict[str, int]] = "Q"
    group: Optional[GroupSpec] = None
    mode: Literal["presentation", "raw"] = "presentation"
    generators: List[GeneratorSpec] = Field(default_factory=list)
    relations: List[RelationSpec] = Field(default_factory=list)
    window: Optional[int] = Field(None, ge=0)
    dims: Optional[List[int]] = None
    actions: Optional[List[List[List[List[Union[int, str]]]]]] = None
    trans: Optional[List[List[List[Union[int, str]]]]] = None
    valid_through: Optional[int] = None

    @field_validator("field")
    @classmethod
    def _check_field(cls, value):
        if isinstance(value, dict) and set(value) != {"Fp"}:
            raise ValueError('field must be "Q" or {"Fp": p}')
        return value
