"""Parametric terrain surfaces and uniform random sampling on them.

Three topologies are supported:

* corridor -- the lateral surface of a finite cylinder (an enclosing cavity,
  e.g. a lava tube), local axis along +x, robot nominally at the center;
* wall -- a vertical rectangle in the local y-z plane, normal +x;
* floor -- a horizontal rectangle in the local x-y plane, normal +z.

All sampling is uniform by surface area and deterministic given the caller's
generator. Terrain values are immutable and safe to share across threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

CORRIDOR = "corridor"
WALL = "wall"
FLOOR = "floor"

_KINDS = (CORRIDOR, WALL, FLOOR)


@dataclass(frozen=True)
class Frame:
    """Rigid pose of a terrain surface in world coordinates."""

    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    origin: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        R = np.asarray(self.rotation, dtype=float)
        t = np.asarray(self.origin, dtype=float)
        if R.shape != (3, 3) or not np.allclose(R @ R.T, np.eye(3), atol=1e-9):
            raise ValueError("frame rotation must be a 3x3 orthonormal matrix")
        if t.shape != (3,):
            raise ValueError("frame origin must be a 3-vector")
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "origin", t)

    def to_world(self, pts: np.ndarray) -> np.ndarray:
        return np.asarray(pts, dtype=float) @ self.rotation.T + self.origin

    def to_local(self, pts: np.ndarray) -> np.ndarray:
        return (np.asarray(pts, dtype=float) - self.origin) @ self.rotation


@dataclass(frozen=True)
class Terrain:
    """A parametric graspable surface.

    ``dims`` is (radius, length) for a corridor, (width, height) for a wall
    and (width, length) for a floor; dims[1] is always the longitudinal
    extent along which anchor windows apply.
    """

    kind: str
    dims: tuple[float, float]
    frame: Frame = field(default_factory=Frame)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown terrain kind {self.kind!r}")
        names = _DIM_NAMES[self.kind]
        dims = tuple(float(d) for d in self.dims)
        for name, value in zip(names, dims):
            if not value > 0:
                raise ValueError(f"{name} must be positive")
        object.__setattr__(self, "dims", dims)

    @property
    def longitudinal_extent(self) -> float:
        return self.dims[1]


_DIM_NAMES = {
    CORRIDOR: ("radius", "length"),
    WALL: ("width", "height"),
    FLOOR: ("width", "length"),
}


def corridor(radius: float = 15.0, length: float = 100.0, frame: Frame | None = None) -> Terrain:
    return Terrain(CORRIDOR, (radius, length), frame or Frame())


def wall(width: float, height: float, frame: Frame | None = None) -> Terrain:
    return Terrain(WALL, (width, height), frame or Frame())


def floor(width: float, length: float, frame: Frame | None = None) -> Terrain:
    return Terrain(FLOOR, (width, length), frame or Frame())


def make_terrain(spec: dict) -> Terrain:
    """Build a Terrain from a config-file block like {"kind": "corridor", ...}."""
    spec = dict(spec)
    kind = spec.pop("kind", None)
    if kind not in _KINDS:
        raise ValueError(f"terrain kind must be one of {_KINDS}, got {kind!r}")
    names = _DIM_NAMES[kind]
    defaults = {CORRIDOR: (15.0, 100.0)}.get(kind, (None, None))
    dims = []
    for name, default in zip(names, defaults):
        value = spec.pop(name, default)
        if value is None:
            raise ValueError(f"terrain.{name} is required for kind {kind!r}")
        dims.append(float(value))
    frame = Frame()
    if "frame" in spec:
        fr = spec.pop("frame")
        frame = Frame(np.asarray(fr.get("rotation", np.eye(3))), np.asarray(fr.get("origin", np.zeros(3))))
    if spec:
        raise ValueError(f"unknown terrain fields: {sorted(spec)}")
    return Terrain(kind, tuple(dims), frame)


def surface_area(t: Terrain) -> float:
    """Analytic area of the graspable surface (cylinder lateral surface only)."""
    a, b = t.dims
    if t.kind == CORRIDOR:
        return 2.0 * np.pi * a * b
    return a * b


@dataclass(frozen=True)
class AnchorSet:
    """A batch of candidate anchor points on one terrain."""

    points: np.ndarray  # (M, 3) world frame
    terrain: Terrain
    seed: int | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 3)
        object.__setattr__(self, "points", pts)

    @property
    def count(self) -> int:
        return len(self.points)


def _sample_local(t: Terrain, count: int, rng: np.random.Generator, window: float | None) -> np.ndarray:
    span = t.longitudinal_extent if window is None else float(window)
    if span > t.longitudinal_extent + 1e-12:
        raise ValueError("window exceeds terrain longitudinal extent")
    u = rng.uniform(-span / 2.0, span / 2.0, count)
    if t.kind == CORRIDOR:
        radius = t.dims[0]
        theta = rng.uniform(0.0, 2.0 * np.pi, count)
        return np.column_stack([u, radius * np.cos(theta), radius * np.sin(theta)])
    half_w = t.dims[0] / 2.0
    v = rng.uniform(-half_w, half_w, count)
    if t.kind == WALL:
        return np.column_stack([np.zeros(count), v, u])
    return np.column_stack([v, u, np.zeros(count)])


def sample_anchors(
    t: Terrain,
    count: int,
    window: float | None,
    rng: np.random.Generator,
    seed: int | None = None,
) -> AnchorSet:
    """Draw ``count`` i.i.d. area-uniform anchor points within the window."""
    if count < 0:
        raise ValueError("count must be non-negative")
    pts = t.frame.to_world(_sample_local(t, count, rng, window))
    return AnchorSet(points=pts, terrain=t, seed=seed)


def sample_surface_points(t: Terrain, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` area-uniform test points over the full surface."""
    if count < 0:
        raise ValueError("count must be non-negative")
    return t.frame.to_world(_sample_local(t, count, rng, None))


def surface_distance(t: Terrain, pts: np.ndarray) -> np.ndarray:
    """Euclidean distance from each point to the finite graspable surface."""
    local = t.frame.to_local(np.atleast_2d(pts))
    half_len = t.longitudinal_extent / 2.0
    if t.kind == CORRIDOR:
        radial = np.abs(np.hypot(local[:, 1], local[:, 2]) - t.dims[0])
        axial = np.maximum(np.abs(local[:, 0]) - half_len, 0.0)
        return np.hypot(radial, axial)
    half_w = t.dims[0] / 2.0
    if t.kind == WALL:
        off = np.abs(local[:, 0])
        ex_v = np.maximum(np.abs(local[:, 1]) - half_w, 0.0)
        ex_u = np.maximum(np.abs(local[:, 2]) - half_len, 0.0)
    else:
        off = np.abs(local[:, 2])
        ex_v = np.maximum(np.abs(local[:, 0]) - half_w, 0.0)
        ex_u = np.maximum(np.abs(local[:, 1]) - half_len, 0.0)
    return np.sqrt(off**2 + ex_v**2 + ex_u**2)


def unit_square_coords(t: Terrain, pts: np.ndarray) -> np.ndarray:
    """Area-preserving (a, b) in [0,1]^2 for points on the surface.

    Useful for binned uniformity checks: area-uniform points map to
    uniform points on the unit square.
    """
    local = t.frame.to_local(np.atleast_2d(pts))
    half_len = t.longitudinal_extent / 2.0
    if t.kind == CORRIDOR:
        theta = np.mod(np.arctan2(local[:, 2], local[:, 1]), 2.0 * np.pi)
        a = theta / (2.0 * np.pi)
        b = (local[:, 0] + half_len) / t.longitudinal_extent
    else:
        half_w = t.dims[0] / 2.0
        if t.kind == WALL:
            a = (local[:, 1] + half_w) / t.dims[0]
            b = (local[:, 2] + half_len) / t.longitudinal_extent
        else:
            a = (local[:, 0] + half_w) / t.dims[0]
            b = (local[:, 1] + half_len) / t.longitudinal_extent
    return np.column_stack([a, b])


def anchors_to_csv_rows(anchor_sets: list[AnchorSet]) -> list[str]:
    """CSV lines (with header) for one or more trial anchor sets."""
    rows = ["trial,index,x,y,z"]
    for trial, aset in enumerate(anchor_sets):
        for idx, p in enumerate(aset.points):
            rows.append(f"{trial},{idx},{p[0]:.9g},{p[1]:.9g},{p[2]:.9g}")
    return rows
