from enum import Enum
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from bits import from_mask, lex_key, to_mask
from exceptions import ParameterRangeError

# BigCount is a plain int, ExactRatio a Fraction
BigCount = int
ExactRatio = Fraction


def to_json_value(value: Any) -> Any:
    """Big integers and ratios as decimal strings, containers recursively"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {str(k): to_json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    return value


def _check_increasing(elements: Tuple[int, ...], n: int, lo: int = 1) -> Tuple[int, ...]:
    for left, right in zip(elements, elements[1:]):
        if left >= right:
            raise ValueError(f"elements must be strictly increasing, got {list(elements)}")
    if elements and (elements[0] < lo or elements[-1] > n):
        raise ValueError(f"elements {list(elements)} outside [{lo},{n}]")
    return elements


class Ground(str, Enum):
    FULL = "full"   # [1,n]
    TAIL = "tail"   # [2,n]

    @property
    def start(self) -> int:
        return 1 if self is Ground.FULL else 2


class KSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    elements: Tuple[int, ...]
    n: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _validate_elements(self):
        _check_increasing(self.elements, self.n)
        return self

    @property
    def mask(self) -> int:
        return to_mask(self.elements)

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "KSet":
        return cls.model_construct(elements=from_mask(mask), n=n)

    def __len__(self) -> int:
        return len(self.elements)


class SetFamily(BaseModel):
    """A collection of distinct k-subsets of [1,n], stored as bitmasks"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    k: int = Field(..., ge=0)
    masks: FrozenSet[int] = Field(default_factory=frozenset)

    @field_validator("masks", mode="before")
    @classmethod
    def _accept_element_lists(cls, value):
        if isinstance(value, (list, tuple, set, frozenset)):
            return frozenset(to_mask(item) if isinstance(item, (list, tuple)) else item for item in value)
        return value

    @model_validator(mode="after")
    def _validate_members(self):
        for mask in self.masks:
            if mask.bit_count() != self.k or mask & 1 or mask >> (self.n + 1):
                raise ValueError(f"member {list(from_mask(mask))} is not a {self.k}-subset of [1,{self.n}]")
        return self

    @field_serializer("masks")
    def _serialize_masks(self, masks: FrozenSet[int]) -> List[List[int]]:
        return [list(from_mask(m)) for m in sorted(masks, key=lex_key)]

    @classmethod
    def trusted(cls, n: int, k: int, masks: Iterable[int]) -> "SetFamily":
        """Build without validation; callers guarantee the member invariants"""
        return cls.model_construct(n=n, k=k, masks=frozenset(masks))

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        masks = [to_mask(s) for s in sets]
        if len(set(masks)) != len(masks):
            raise ParameterRangeError("sets", len(masks), "distinct members")
        return cls(n=n, k=k, masks=frozenset(masks))

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, item) -> bool:
        if isinstance(item, KSet):
            return item.mask in self.masks
        if isinstance(item, int):
            return item in self.masks
        return to_mask(item) in self.masks

    def sorted_masks(self) -> List[int]:
        return sorted(self.masks, key=lex_key)

    def sets(self) -> List[Tuple[int, ...]]:
        return [from_mask(m) for m in self.sorted_masks()]

    def members(self) -> List[KSet]:
        return [KSet.from_mask(m, self.n) for m in self.sorted_masks()]

    def to_json_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "k": self.k, "size": str(len(self)), "sets": [list(s) for s in self.sets()]}

    @classmethod
    def from_json_dict(cls, data: Dict[str, Any]) -> "SetFamily":
        return cls(n=data["n"], k=data["k"], masks=[tuple(s) for s in data["sets"]])

    def union_mask(self) -> int:
        out = 0
        for m in self.masks:
            out |= m
        return out


class CharSet(BaseModel):
    """Characteristic set of a lex initial segment.

    On the TAIL ground element 1 may be present as the A-side marker; it is
    ignored by every lex computation (see `effective`).
    """
    model_config = ConfigDict(frozen=True)

    elements: Tuple[int, ...]
    ground: Ground = Ground.TAIL
    n: int = Field(..., ge=1)

    @model_validator(mode="after")
    def _validate_elements(self):
        _check_increasing(self.elements, self.n)
        return self

    @property
    def effective(self) -> Tuple[int, ...]:
        start = self.ground.start
        return tuple(e for e in self.elements if e >= start)

    @property
    def mask(self) -> int:
        return to_mask(self.effective)

    @property
    def has_marker(self) -> bool:
        return self.ground is Ground.TAIL and 1 in self.elements

    @classmethod
    def of(cls, elements: Iterable[int], n: int, ground: Ground = Ground.TAIL) -> "CharSet":
        return cls(elements=tuple(sorted(set(elements))), ground=ground, n=n)

    def __len__(self) -> int:
        return len(self.effective)


class LexSegment(BaseModel):
    model_config = ConfigDict(frozen=True)

    ground: Ground
    n: int
    a: int = Field(..., ge=0)
    boundary: CharSet
    cached_size: BigCount

    @field_serializer("cached_size")
    def _serialize_size(self, value: int) -> str:
        return str(value)


class CascadeForm(BaseModel):
    """gamma = sum_i C(n - b_i, n - k - i) with strictly increasing b_i"""
    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    terms: Tuple[Tuple[int, int], ...]   # (b_i, n - k - i)
    value: BigCount

    @model_validator(mode="after")
    def _validate_terms(self):
        for index, (b, lower) in enumerate(self.terms, start=1):
            if lower != self.n - self.k - index:
                raise ValueError(f"term {index} has lower index {lower}, expected {self.n - self.k - index}")
        bs = [b for b, _ in self.terms]
        if any(x >= y for x, y in zip(bs, bs[1:])):
            raise ValueError(f"b_i must be strictly increasing, got {bs}")
        return self

    @field_serializer("value")
    def _serialize_value(self, value: int) -> str:
        return str(value)

    @property
    def b(self) -> Tuple[int, ...]:
        return tuple(b for b, _ in self.terms)


class PairVariant(str, Enum):
    UNIFORM = "uniform"   # (a,b) = (k-1,k), ground [2,n], 1 in S
    GENERAL = "general"   # (a,b)-resistant pairs on [n]


class ResistantPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=0)
    S: CharSet
    T: CharSet
    a: int
    b: int
    j: int
    variant: PairVariant
    size_a: BigCount     # |L(S, a)|
    size_b: BigCount     # |L(T, b)|
    sentinel: bool = False

    @field_serializer("size_a", "size_b")
    def _serialize_sizes(self, value: int) -> str:
        return str(value)

    @property
    def total(self) -> int:
        return self.size_a + self.size_b


class BoundKind(str, Enum):
    DIVERSITY = "diversity"
    WEIGHTED = "weighted"
    CROSS = "cross"
    FT = "ft"
    SIZE = "size"
    DEGREE = "degree"


class BoundRequest(BaseModel):
    kind: BoundKind
    variant: Optional[str] = None
    params: Dict[str, Any] = Field(default_factory=dict)


class BoundResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: BoundKind
    value: Any                        # int, Fraction, float or a dict of those
    exact: bool = True
    window_l: Optional[int] = None
    flag: Optional[str] = None
    holds: Optional[bool] = None
    lhs: Any = None
    attained_by: Optional[str] = None
    notes: str = ""

    @model_validator(mode="after")
    def _exact_never_float(self):
        if self.exact and isinstance(self.value, float):
            raise ValueError("exact bound returned a float")
        return self

    def to_json_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"value": to_json_value(self.value)}
        if self.window_l is not None:
            data["window_l"] = self.window_l
        if self.flag is not None:
            data["flag"] = self.flag
        if self.holds is not None:
            data["holds"] = self.holds
        if self.lhs is not None:
            data["lhs"] = to_json_value(self.lhs)
        data["kind"] = self.kind.value
        if self.attained_by:
            data["attained_by"] = self.attained_by
        if self.notes:
            data["notes"] = self.notes
        return data


class ConstructionKind(str, Enum):
    STAR = "star"
    HM = "hm"
    H_U = "h_u"
    J_I = "j_i"
    F_L = "f_l"
    A0 = "a0"
    A_K = "a_k"
    MAJORITY3 = "majority3"
    FROM_PAIR = "from_pair"
    FROM_B = "from_B"
    HM_MATCHING = "hm_matching"


class ConstructionSpec(BaseModel):
    kind: ConstructionKind
    n: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    u: Optional[int] = None
    i: Optional[int] = None
    l: Optional[int] = None
    s: Optional[int] = None
    center: int = 1
    S: Optional[CharSet] = None
    T: Optional[CharSet] = None
    G: Optional[SetFamily] = None


class ShiftMode(str, Enum):
    SINGLE = "single"
    CLOSURE = "closure"
    TEST = "test"


class FamilyStats(BaseModel):
    size: BigCount
    max_degree_element: int
    max_degree: BigCount       # Delta
    diversity: BigCount        # gamma
    trivial: bool
    t: Optional[int] = None
    delta_t: Optional[BigCount] = None
    nu: Optional[int] = None
    tau: Optional[int] = None

    @model_validator(mode="after")
    def _size_splits(self):
        if self.size != self.max_degree + self.diversity:
            raise ValueError("size must equal max degree plus diversity")
        return self

    def to_json_dict(self) -> Dict[str, Any]:
        data = {
            "size": str(self.size),
            "max_degree_element": self.max_degree_element,
            "max_degree": str(self.max_degree),
            "diversity": str(self.diversity),
            "trivial": self.trivial,
        }
        if self.delta_t is not None:
            data["t"] = self.t
            data["delta_t"] = str(self.delta_t)
        if self.nu is not None:
            data["nu"] = self.nu
        if self.tau is not None:
            data["tau"] = self.tau
        return data


class CertificateStatus(str, Enum):
    VERIFIED = "verified"
    COUNTEREXAMPLE = "counterexample"
    SKIPPED = "skipped"


class VerificationCertificate(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    theorem_id: str = Field(..., alias="theorem")
    params: Dict[str, Any] = Field(default_factory=dict)
    status: CertificateStatus
    checks: int = Field(0, ge=0)
    witness: Optional[Dict[str, Any]] = None
    elapsed_ms: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _status_consistency(self):
        if self.status is CertificateStatus.COUNTEREXAMPLE and self.witness is None:
            raise ValueError("counterexample certificate needs a witness")
        if self.status is CertificateStatus.VERIFIED and self.checks == 0:
            raise ValueError("verified certificate needs at least one check")
        return self

    def to_json_dict(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True, mode="json")


class Verb(str, Enum):
    BOUND = "bound"
    CASCADE = "cascade"
    RESISTANT = "resistant"
    FAMILY = "family"
    VERIFY = "verify"
    SCAN = "scan"
    ORACLE = "oracle"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class Command(BaseModel):
    verb: Verb
    options: Dict[str, Any] = Field(default_factory=dict)
    output_format: OutputFormat = OutputFormat.JSON
