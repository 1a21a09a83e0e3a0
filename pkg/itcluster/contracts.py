"""Data contracts and schemas for itcluster using Pydantic v2."""

from typing import Literal, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    FiniteFloat,
    PositiveFloat,
    PositiveInt,
    field_validator,
    model_validator,
)


class Point2(BaseModel):
    """A 2D coordinate pair; one element of the dataset."""

    model_config = ConfigDict(frozen=True)

    x: FiniteFloat = Field(description="x coordinate in data units")
    y: FiniteFloat = Field(description="y coordinate in data units")

    @classmethod
    def of(cls, xy) -> "Point2":
        """Build from any ``(x, y)`` pair."""
        return cls(x=xy[0], y=xy[1])

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


class MixtureComponent(BaseModel):
    """One Gaussian component of a generated dataset."""

    model_config = ConfigDict(frozen=True)

    mean: Point2 = Field(description="Component mean")
    stddev: Tuple[PositiveFloat, PositiveFloat] = Field(
        description="Per-axis standard deviation"
    )
    count: PositiveInt = Field(description="Number of points drawn")

    @field_validator('mean', mode='before')
    @classmethod
    def coerce_mean(cls, v):
        """Accept ``[x, y]`` lists as written in the presets file."""
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise ValueError("mean must have exactly two coordinates")
            return {"x": v[0], "y": v[1]}
        return v

    @field_validator('stddev', mode='before')
    @classmethod
    def coerce_stddev(cls, v):
        """A single number applies to both axes."""
        if isinstance(v, (int, float)):
            return (v, v)
        return v


class MixtureSpec(BaseModel):
    """Seeded Gaussian mixture used in place of downloaded benchmark files."""

    model_config = ConfigDict(frozen=True)

    components: Tuple[MixtureComponent, ...] = Field(min_length=1)
    seed: int = Field(ge=0, lt=2**64, description="64-bit generator seed")

    @property
    def total_count(self) -> int:
        return sum(c.count for c in self.components)


GraphName = Literal["delaunay", "knn", "mst", "rng", "complete"]


class GraphKind(BaseModel):
    """Which proximity graph restricts the descent."""

    model_config = ConfigDict(frozen=True)

    kind: GraphName = "delaunay"
    k: Optional[int] = Field(default=None, description="Neighbour count for knn")
    mutual: bool = Field(
        default=False, description="knn only: symmetrise by intersection"
    )

    @model_validator(mode='after')
    def validate_k(self):
        """k is required (and >= 1) for knn and meaningless otherwise."""
        if self.kind == "knn":
            if self.k is None or self.k < 1:
                raise ValueError("knn graph requires k >= 1")
        elif self.k is not None:
            raise ValueError(f"k is only valid for knn graphs, not {self.kind}")
        elif self.mutual:
            raise ValueError("mutual is only valid for knn graphs")
        return self

    @property
    def label(self) -> str:
        if self.kind == "knn":
            return f"{'mutual-' if self.mutual else ''}knn({self.k})"
        return self.kind


class SweepRow(BaseModel):
    """One sigma of a sensitivity sweep."""

    model_config = ConfigDict(frozen=True)

    sigma: PositiveFloat
    cluster_count: PositiveInt
    ari: Optional[float] = Field(default=None, ge=-1.0, le=1.0)
    nmi: Optional[float] = Field(default=None, ge=0.0, le=1.0)

    @model_validator(mode='after')
    def validate_indexes(self):
        """ARI and NMI come together, only when ground truth was supplied."""
        if (self.ari is None) != (self.nmi is None):
            raise ValueError("ari and nmi must both be present or both absent")
        return self


class RenderOptions(BaseModel):
    """Options for the SVG figure renderer."""

    model_config = ConfigDict(frozen=True)

    point_radius: PositiveFloat = 3.0
    color_by: Literal["potential", "cluster"] = "cluster"
    edge_style: Literal["none", "graph", "forest", "both"] = "both"
    width: PositiveInt = 640
    height: PositiveInt = 640
    margin: int = Field(default=24, ge=0)

    @model_validator(mode='after')
    def validate_canvas(self):
        """Margins must leave a drawable area."""
        if 2 * self.margin >= min(self.width, self.height):
            raise ValueError("margin leaves no drawable area")
        return self
