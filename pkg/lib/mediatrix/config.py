from typing import *

from pydantic import BaseModel, Field


class ExactConfig(BaseModel):
    max_n: int = 10
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None
    workers: int = 1


class DiffCoverConfig(BaseModel):
    max_n: int = 150
    budget_slack: int = 6
    node_limit: Optional[int] = None
    workers: int = 1


class BoundsConfig(BaseModel):
    default_effort: Literal[0, 1, 2] = 1
    workers: int = 1
    table_max_n: int = 1_000_000


class ConstructionConfig(BaseModel):
    randomize_z: bool = False
    seed: int = 1234


class GaloisConfig(BaseModel):
    max_order: int = 2**14


class MediatrixConfig(BaseModel):
    exact: ExactConfig = Field(default_factory=ExactConfig)
    diffcover: DiffCoverConfig = Field(default_factory=DiffCoverConfig)
    bounds: BoundsConfig = Field(default_factory=BoundsConfig)
    construction: ConstructionConfig = Field(default_factory=ConstructionConfig)
    galois: GaloisConfig = Field(default_factory=GaloisConfig)

    @classmethod
    def parse_file(cls, path: str) -> "MediatrixConfig":
        with open(path, "r", encoding="utf8") as f:
            return cls.model_validate_json(f.read())
