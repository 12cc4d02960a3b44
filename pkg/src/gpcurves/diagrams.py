"""Persistence diagrams as canonically ordered multisets of (birth, death) points."""

from __future__ import annotations

import hashlib
import io
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, Union

import numpy as np

from .errors import InvalidPoint, ParseError

HEADER = "birth,death"


@dataclass(frozen=True, order=True)
class DiagramPoint:
    birth: float
    death: float

    def __post_init__(self):
        b, d = float(self.birth), float(self.death)
        if not (math.isfinite(b) and math.isfinite(d)):
            raise InvalidPoint(None, f"non-finite coordinate ({b}, {d})")
        if d <= b:
            raise InvalidPoint(None, f"death must exceed birth, got ({b}, {d})")
        object.__setattr__(self, "birth", b)
        object.__setattr__(self, "death", d)

    @property
    def lifespan(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True, eq=True)
class PersistenceDiagram:
    """Finite multiset of points strictly above the diagonal.

    Points are kept sorted by (birth, death), so two diagrams compare equal
    exactly when they are equal as multisets.
    """

    points: tuple = field(default=())

    def __post_init__(self):
        pts = []
        for p in self.points:
            if not isinstance(p, DiagramPoint):
                p = DiagramPoint(*p)
            pts.append(p)
        object.__setattr__(self, "points", tuple(sorted(pts)))

    @classmethod
    def from_array(cls, arr) -> "PersistenceDiagram":
        arr = np.asarray(arr, dtype=float).reshape(-1, 2)
        return cls(tuple(DiagramPoint(b, d) for b, d in arr))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __add__(self, other: "PersistenceDiagram") -> "PersistenceDiagram":
        """Multiset union."""
        return PersistenceDiagram(self.points + other.points)

    def __hash__(self):
        return hash(self.points)

    # numpy views are cached; the dataclass is frozen so they never go stale
    @cached_property
    def births(self) -> np.ndarray:
        return np.array([p.birth for p in self.points], dtype=float)

    @cached_property
    def deaths(self) -> np.ndarray:
        return np.array([p.death for p in self.points], dtype=float)

    @property
    def lifespans(self) -> np.ndarray:
        return self.deaths - self.births

    def as_array(self) -> np.ndarray:
        return np.column_stack([self.births, self.deaths]).reshape(-1, 2)

    def is_empty(self) -> bool:
        return not self.points

    def shifted(self, c: float) -> "PersistenceDiagram":
        """Translate every point along the diagonal by (c, c)."""
        return PersistenceDiagram(tuple((p.birth + c, p.death + c) for p in self.points))

    @property
    def d_max(self) -> float:
        if not self.points:
            raise ValueError("empty diagram has no maximum death")
        return float(self.deaths.max())

    @property
    def b_min(self) -> float:
        if not self.points:
            raise ValueError("empty diagram has no minimum birth")
        return float(self.births.min())

    def digest(self) -> str:
        """Short content hash of the canonical serialization."""
        return hashlib.sha256(dump_diagram(self).encode()).hexdigest()[:16]


def total_lifespan(D: PersistenceDiagram) -> float:
    return math.fsum(p.death - p.birth for p in D)


def min_lifespan(D: PersistenceDiagram) -> float:
    """Smallest bar length; ``inf`` for the empty diagram."""
    if D.is_empty():
        return math.inf
    return float(D.lifespans.min())


def joint_min_lifespan(C: PersistenceDiagram, D: PersistenceDiagram) -> float:
    return min(min_lifespan(C), min_lifespan(D), 1.0)


def _parse_lines(lines: Iterable[str]) -> PersistenceDiagram:
    pts = []
    seen_data = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n").strip()
        if not line or line.startswith("#"):
            continue
        if not seen_data and line == HEADER:
            seen_data = True
            continue
        seen_data = True
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(lineno, f"expected 2 fields, got {len(parts)}")
        try:
            b, d = float(parts[0]), float(parts[1])
        except ValueError:
            raise ParseError(lineno, f"not a number: {line!r}") from None
        try:
            pts.append(DiagramPoint(b, d))
        except InvalidPoint as exc:
            raise InvalidPoint(lineno, str(exc).split(": ", 1)[-1]) from None
    return PersistenceDiagram(tuple(pts))


def load_diagram(source: Union[bytes, str, IO], fmt: str = "csv") -> PersistenceDiagram:
    """Read a diagram from CSV.

    ``source`` may be raw bytes, a binary/text stream, or a filesystem path.
    One ``birth,death`` pair per line; an optional ``birth,death`` header and
    ``#`` comment lines are skipped.
    """
    if fmt != "csv":
        raise ValueError(f"unsupported diagram format {fmt!r}")
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        with open(source, "rb") as fh:
            text = fh.read().decode("utf-8")
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    return _parse_lines(io.StringIO(text, newline=""))


def dump_diagram(D: PersistenceDiagram, header: bool = False) -> str:
    """Serialize with ``repr`` floats so that load/dump round-trips exactly."""
    rows = [HEADER] if header else []
    rows += [f"{p.birth!r},{p.death!r}" for p in D]
    return "\n".join(rows) + ("\n" if rows else "")
