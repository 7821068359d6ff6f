"""Closed polylines in the base of the Lefschetz fibration.

Curves are stored as positively oriented vertex arrays.  The JSON exchange
format is ``{"closed": true, "points": [[re, im], ...]}`` with at least eight
points; the closing edge from the last point back to the first is implicit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from shapely.geometry import LinearRing

from .errors import InvalidInputError, SingularInputError

MIN_POINTS = 8
DEFAULT_VERTICES = 2048
# winding numbers further than this from an integer are rejected
WINDING_SLACK = 0.1


def signed_area(points: np.ndarray) -> float:
    """Shoelace area; positive for counterclockwise vertex order."""
    z = np.asarray(points, dtype=complex)
    return 0.5 * float(np.sum((np.conj(z) * np.roll(z, -1)).imag))


@dataclass(frozen=True)
class PlanarCurve:
    """A simple closed polyline.

    ``points`` is always stored counterclockwise; ``orientation`` records
    whether the input already was (+1) or had to be reversed (-1).
    """

    points: np.ndarray = field(repr=False)
    orientation: int = 1

    def __post_init__(self):
        z = np.asarray(self.points, dtype=complex).ravel()
        if z.size >= 2 and z[0] == z[-1]:
            z = z[:-1]
        if z.size < MIN_POINTS:
            raise InvalidInputError(f"a curve needs at least {MIN_POINTS} points, got {z.size}")
        if not np.all(np.isfinite(z)):
            raise InvalidInputError("curve points must be finite")
        area = signed_area(z)
        if area == 0.0:
            raise InvalidInputError("curve encloses zero area")
        orientation = 1 if area > 0 else -1
        if orientation < 0:
            z = z[::-1].copy()
        z.setflags(write=False)
        object.__setattr__(self, "points", z)
        object.__setattr__(self, "orientation", orientation)

    def __len__(self) -> int:
        return self.points.size

    @property
    def area(self) -> float:
        return signed_area(self.points)

    def translated(self, shift: complex) -> "PlanarCurve":
        return PlanarCurve(self.points + shift)

    def scaled(self, factor: float, center: complex = 0.0) -> "PlanarCurve":
        return PlanarCurve(center + factor * (self.points - center))

    def is_simple(self) -> bool:
        coords = np.column_stack([self.points.real, self.points.imag])
        return bool(LinearRing(coords).is_simple)

    def distance_to(self, point: complex) -> float:
        """Euclidean distance from ``point`` to the polyline."""
        a = self.points
        b = np.roll(a, -1)
        d = b - a
        t = np.clip(((point - a) * np.conj(d)).real / np.maximum(np.abs(d) ** 2, 1e-300), 0.0, 1.0)
        return float(np.min(np.abs(a + t * d - point)))

    def winding_number(self, point: complex) -> int:
        """Winding number about ``point`` from the summed signed vertex angles."""
        rel = self.points - point
        if np.any(rel == 0):
            raise SingularInputError(f"curve passes through {point}")
        turns = float(np.sum(np.angle(np.roll(rel, -1) / rel))) / (2 * np.pi)
        k = round(turns)
        if abs(turns - k) > WINDING_SLACK:
            raise SingularInputError(
                f"ambiguous winding number {turns:.3f} about {point}: curve is nearly tangent"
            )
        return int(k)

    def to_json(self) -> dict:
        return {"closed": True, "points": [[float(z.real), float(z.imag)] for z in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "PlanarCurve":
        if not isinstance(data, dict) or data.get("closed") is not True:
            raise InvalidInputError('curve JSON must be an object with "closed": true')
        pts = data.get("points")
        try:
            z = np.array([complex(float(x), float(y)) for x, y in pts])
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed curve points: {exc}") from None
        return cls(z)

    @classmethod
    def load(cls, path: str | Path) -> "PlanarCurve":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInputError(f"cannot read curve file {path}: {exc}") from None
        return cls.from_json(data)

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()))


def circle(radius: float, center: complex = 0.0, m: int = DEFAULT_VERTICES) -> PlanarCurve:
    """Regular m-gon inscribed in the circle of the given radius."""
    if radius <= 0:
        raise InvalidInputError("radius must be positive")
    phi = 2 * np.pi * np.arange(m) / m
    return PlanarCurve(center + radius * np.exp(1j * phi))


def ellipse(a: float, b: float, center: complex = 0.0, m: int = DEFAULT_VERTICES) -> PlanarCurve:
    """Polyline through m equally spaced parameter values of an axis-aligned ellipse."""
    phi = 2 * np.pi * np.arange(m) / m
    return PlanarCurve(center + a * np.cos(phi) + 1j * b * np.sin(phi))


def polterovich_ellipse(m: int = DEFAULT_VERTICES) -> PlanarCurve:
    """Ellipse with foci at +-1 whose matching torus in the n = 1 fibre is Polterovich's torus."""
    golden = (np.sqrt(5.0) + 1.0) / 2.0
    return ellipse(np.sqrt(golden), np.sqrt(golden - 1.0), m=m)


def star_curve(
    radii: np.ndarray, center: complex = 0.0, phase: float = 0.0, m: int = 256
) -> PlanarCurve:
    """Star-shaped curve ``r(phi) = radii[0] + sum_k radii[k] cos(k phi + k*phase)``."""
    coeffs = np.asarray(radii, dtype=float)
    phi = 2 * np.pi * np.arange(m) / m
    k = np.arange(coeffs.size)
    r = np.cos(np.outer(phi, k) + phase * k) @ coeffs
    if np.any(r <= 0):
        raise InvalidInputError("radial function must stay positive")
    return PlanarCurve(center + r * np.exp(1j * phi))
