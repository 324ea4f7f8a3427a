"""
JSON documents exchanged by the CLI and the harnesses.

Incoming documents are validated with pydantic models; outgoing ones are the
plain dicts produced by ``to_dict`` methods, dumped with sorted keys so the
same inputs always give the same bytes.
"""

import json
import sys
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from engine.faces import MAX_VERTICES, face_from_vertices
from engine.intervals import Interval, interval_as_dict, validate_interval
from engine.matroid import (
    DEFAULT_MAX_N,
    RANDOM_BACKENDS,
    Matroid,
    matroid_explicit,
    matroid_graphic,
    matroid_linear,
    matroid_uniform,
)


class IntervalDocument(BaseModel):
    """{"n": 6, "faces": [[1, 2, 4, 5, 6], [1, 2, 4, 5], ...]}; the empty face is []."""

    n: int = Field(ge=0, le=MAX_VERTICES)
    faces: List[List[int]] = Field(default_factory=list)

    @field_validator("faces")
    @classmethod
    def _distinct_vertices(cls, faces):
        for face in faces:
            if len(set(face)) != len(face):
                raise ValueError(f"face {face} repeats a vertex")
        return faces

    @model_validator(mode="after")
    def _vertices_in_range(self):
        for face in self.faces:
            for v in face:
                if not 1 <= v <= self.n:
                    raise ValueError(f"vertex {v} of face {face} is outside 1..{self.n}")
        return self

    def to_interval(self) -> Interval:
        return validate_interval((face_from_vertices(f) for f in self.faces), self.n)

    @classmethod
    def from_interval(cls, phi: Interval) -> "IntervalDocument":
        return cls(**interval_as_dict(phi))


class MatroidDocument(BaseModel):
    """One of:

    {"backend": "uniform", "r": 2, "n": 4}
    {"backend": "graphic", "edges": [[1, 2], [2, 3], [1, 3]]}
    {"backend": "linear", "p": 2, "columns": [[1, 0], [0, 1], [1, 1]]}
    {"backend": "explicit", "n": 2, "independent": [[], [1], [2]]}
    """

    backend: Literal["uniform", "graphic", "linear", "explicit"]
    n: Optional[int] = Field(default=None, ge=0)
    r: Optional[int] = None
    edges: Optional[List[List[int]]] = None
    p: Optional[int] = None
    columns: Optional[List[List[int]]] = None
    independent: Optional[List[List[int]]] = None

    @model_validator(mode="after")
    def _backend_fields(self):
        required = {
            "uniform": ("r", "n"),
            "graphic": ("edges",),
            "linear": ("p", "columns"),
            "explicit": ("n", "independent"),
        }[self.backend]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.backend} matroid needs {', '.join(missing)}")
        return self

    def to_matroid(self, max_n: int = DEFAULT_MAX_N) -> Matroid:
        if self.backend == "uniform":
            return matroid_uniform(self.r, self.n, max_n)
        if self.backend == "graphic":
            return matroid_graphic([tuple(e) for e in self.edges], max_n)
        if self.backend == "linear":
            return matroid_linear(self.columns, self.p, max_n)
        return matroid_explicit(self.n, self.independent, max_n)


class FuzzConfig(BaseModel):
    """A strong-map fuzz campaign: ground sizes, rank gaps |A|, backends, trials and seed."""

    n_min: int = Field(default=4, ge=1)
    n_max: int = Field(default=7, ge=1, le=9)
    rank_gaps: List[int] = Field(default_factory=lambda: [2])
    backends: List[str] = Field(default_factory=lambda: ["gf2", "gf3", "graphic"])
    trials: int = Field(default=200, ge=0)
    seed: int = 0
    jobs: int = Field(default=1, ge=1)

    @field_validator("backends")
    @classmethod
    def _known_backends(cls, backends):
        unknown = [b for b in backends if b not in RANDOM_BACKENDS]
        if unknown or not backends:
            raise ValueError(f"backends must be drawn from {list(RANDOM_BACKENDS)}, got {backends}")
        return backends

    @field_validator("rank_gaps")
    @classmethod
    def _positive_gaps(cls, gaps):
        if not gaps or any(g < 1 for g in gaps):
            raise ValueError("rank gaps must be positive")
        return gaps

    @model_validator(mode="after")
    def _ordered_range(self):
        if self.n_min > self.n_max:
            raise ValueError(f"n_min {self.n_min} exceeds n_max {self.n_max}")
        return self


def read_source(source: str) -> str:
    """Text of a document given as a path, ``-`` for stdin, or inline JSON."""
    if source == "-":
        return sys.stdin.read()
    stripped = source.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return source
    with open(source, "r", encoding="utf-8") as f:
        return f.read()


def load_interval(source: str) -> Interval:
    return IntervalDocument.model_validate(json.loads(read_source(source))).to_interval()


def load_matroid(source: str, max_n: int = DEFAULT_MAX_N) -> Matroid:
    return MatroidDocument.model_validate(json.loads(read_source(source))).to_matroid(max_n)


def interval_to_dict(phi: Interval) -> dict:
    return interval_as_dict(phi)


def interval_from_dict(data: dict) -> Interval:
    return IntervalDocument.model_validate(data).to_interval()


def dumps(document) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False)
