"""
Run configuration schema.

A run is described by one JSON file: the generator to build, the sampling
grid, the list of requested outputs and the output directory.
"""
import json
from pathlib import Path
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.errors import RunConfigError
from src.generators.kinds import GENERATOR_KINDS, IMMERSIONS, optional_parameters, required_constants, required_parameters
from src.models import Domain

from .config import config

Pair = Tuple[float, float]
GridSize = Annotated[int, Field(ge=2)]


class BasisOverride(BaseModel):
    """Replacement basis columns as comma-separated expression triples"""
    model_config = ConfigDict(extra="forbid")

    w1: str
    w2: str

    @field_validator("w1", "w2")
    @classmethod
    def three_components(cls, value: str) -> str:
        if len(value.split(",")) != 3:
            raise ValueError(f"basis column needs three comma-separated expressions, got {value!r}")
        return value

    def columns(self) -> Tuple[List[str], List[str]]:
        return split_triple(self.w1), split_triple(self.w2)


class GeneratorSpec(BaseModel):
    """Which surface to build and from what"""
    model_config = ConfigDict(extra="forbid")

    kind: str
    parameters: Dict[str, str] = Field(default_factory=dict)
    constants: Dict[str, float] = Field(default_factory=dict)
    domain: Tuple[Pair, Pair] = ((-1.0, 1.0), (-1.0, 1.0))
    basis_override: Optional[BasisOverride] = None
    base: Optional["GeneratorSpec"] = None

    @field_validator("kind")
    @classmethod
    def known_kind(cls, value: str) -> str:
        if value not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {value!r}, expected one of {sorted(GENERATOR_KINDS)}")
        return value

    @field_validator("domain")
    @classmethod
    def nonempty_domain(cls, value: Tuple[Pair, Pair]) -> Tuple[Pair, Pair]:
        (u0, u1), (v0, v1) = value
        if not (u0 < u1 and v0 < v1):
            raise ValueError(f"empty domain {[list(value[0]), list(value[1])]}")
        return value

    @model_validator(mode="after")
    def complete_for_kind(self) -> "GeneratorSpec":
        required = set(required_parameters(self.kind))
        allowed = required | set(optional_parameters(self.kind))
        given = set(self.parameters)
        if required - given:
            raise ValueError(f"{self.kind} is missing parameters {sorted(required - given)}")
        if given - allowed:
            raise ValueError(f"{self.kind} does not take parameters {sorted(given - allowed)}")
        constants = set(required_constants(self.kind))
        if constants != set(self.constants):
            raise ValueError(f"{self.kind} takes constants {sorted(constants)}, got {sorted(self.constants)}")

        base_kind = GENERATOR_KINDS[self.kind].get("base")
        if base_kind is not None:
            if self.base is None:
                raise ValueError(f"{self.kind} needs a base generator of kind {base_kind}")
            if self.base.kind != base_kind:
                raise ValueError(f"{self.kind} needs a {base_kind} base, got {self.base.kind}")
        elif self.base is not None:
            raise ValueError(f"{self.kind} does not take a base generator")

        if self.kind == "explicit":
            for name in ("x", "w1", "w2"):
                if len(self.parameters[name].split(",")) != 3:
                    raise ValueError(f"parameter {name} needs three comma-separated expressions")
        if self.kind == "false-singularity":
            immersion = self.parameters["immersion"]
            if immersion not in IMMERSIONS:
                raise ValueError(f"unknown immersion {immersion!r}, expected one of {list(IMMERSIONS)}")
            if immersion == "graph" and "phi" not in self.parameters:
                raise ValueError("graph immersion needs parameter phi")
        return self

    def to_domain(self) -> Domain:
        (u0, u1), (v0, v1) = self.domain
        return Domain(u0, u1, v0, v1)


GeneratorSpec.model_rebuild()


class MeshOutput(BaseModel):
    type: Literal["mesh"]


class FieldsOutput(BaseModel):
    type: Literal["fields"]


class SingularSetOutput(BaseModel):
    type: Literal["singular-set"]


class ClassifyOutput(BaseModel):
    type: Literal["classify"]
    points: List[Pair] = Field(default_factory=lambda: [(0.0, 0.0)], min_length=1)


class ExtendabilityOutput(BaseModel):
    type: Literal["extendability"]
    mode: Literal["analytic", "numeric"] = "numeric"


class TraceOutput(BaseModel):
    """Trace one field family from each seed; extendable-K wave surfaces use the constant fields"""
    type: Literal["trace"]
    field: Literal["asymptotic-1", "asymptotic-2", "curvature-line-1", "curvature-line-2"]
    seeds: List[Pair] = Field(min_length=1)
    step: float = Field(default=config.RK4_STEP, gt=0)
    steps: int = Field(default=1000, ge=1)
    chart_center: Optional[Pair] = None


class SmoothableOutput(BaseModel):
    type: Literal["smoothable"]
    point: Pair = (0.0, 0.0)
    epsilon: float = Field(default=0.1, gt=0)


OutputRequest = Annotated[
    Union[
        MeshOutput,
        FieldsOutput,
        SingularSetOutput,
        ClassifyOutput,
        ExtendabilityOutput,
        TraceOutput,
        SmoothableOutput,
    ],
    Field(discriminator="type"),
]


class RunConfig(BaseModel):
    """One generator, one grid, any number of output requests"""
    model_config = ConfigDict(extra="forbid")

    generator: GeneratorSpec
    grid: Tuple[GridSize, GridSize] = (config.DEFAULT_GRID, config.DEFAULT_GRID)
    outputs: List[OutputRequest] = Field(default_factory=list)
    output_dir: str = config.OUTPUT_DIR

    @model_validator(mode="after")
    def points_inside_domain(self) -> "RunConfig":
        domain = self.generator.to_domain()
        for i, request in enumerate(self.outputs):
            if isinstance(request, TraceOutput):
                named = [("seed", p) for p in request.seeds]
                if request.chart_center is not None:
                    named.append(("chart_center", request.chart_center))
            elif isinstance(request, ClassifyOutput):
                named = [("point", p) for p in request.points]
            elif isinstance(request, SmoothableOutput):
                named = [("point", request.point)]
            else:
                continue
            for label, p in named:
                if not domain.contains(p):
                    raise ValueError(
                        f"{label} {list(p)} of outputs[{i}] ({request.type}) lies outside the domain "
                        f"u in [{domain.u0}, {domain.u1}], v in [{domain.v0}, {domain.v1}]"
                    )
        return self

    def requests(self, kind: str) -> list:
        return [r for r in self.outputs if r.type == kind]


def split_triple(text: str) -> List[str]:
    return [part.strip() for part in text.split(",")]


def _describe(error: ValidationError) -> str:
    parts = []
    for e in error.errors():
        loc = ".".join(str(x) for x in e["loc"])
        msg = e["msg"].removeprefix("Value error, ")
        parts.append(f"{loc}: {msg}" if loc else msg)
    return "; ".join(parts)


def parse_run_config(data: Union[str, bytes, dict]) -> RunConfig:
    """Validate a run configuration from JSON text or an already-decoded dict

    Raises:
        RunConfigError: malformed JSON or schema violation
    """
    try:
        if isinstance(data, dict):
            return RunConfig.model_validate(data)
        return RunConfig.model_validate_json(data)
    except ValidationError as e:
        raise RunConfigError(_describe(e)) from None


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Read and validate a run configuration file

    Raises:
        RunConfigError: unreadable file, malformed JSON or schema violation
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise RunConfigError(f"cannot read {path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise RunConfigError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}") from None
    if not isinstance(data, dict):
        raise RunConfigError(f"{path} must contain a JSON object")
    return parse_run_config(data)
