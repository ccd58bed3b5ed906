"""Stance construction: anchor feasibility, optimal assignment, boom drops.

A boom can reach an anchor iff the anchor sits inside the shoulder's cone of
motion and within the deployable length band. Booms are matched to anchors
by an exact minimum-total-length rectangular assignment.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .mechanics import Stance
from .robot import MountSpec, RobotConfig
from .terrain import AnchorSet

# Penalty cost for infeasible pairs; any assignment using one is strictly
# worse than any fully feasible assignment (real costs are boom lengths).
_BIG = 1e9


@dataclass(frozen=True)
class BodyPose:
    position: np.ndarray = field(default_factory=lambda: np.zeros(3))
    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))

    def __post_init__(self):
        p = np.asarray(self.position, dtype=float).reshape(3)
        R = np.asarray(self.rotation, dtype=float).reshape(3, 3)
        if not np.allclose(R @ R.T, np.eye(3), atol=1e-9):
            raise ValueError("body rotation must be orthonormal")
        object.__setattr__(self, "position", p)
        object.__setattr__(self, "rotation", R)


@dataclass(frozen=True)
class FeasibilityPredicate:
    cone_half_angle: float
    L_min: float
    L_max: float

    def __post_init__(self):
        if not 0 < self.cone_half_angle < math.pi / 2:
            raise ValueError("cone_half_angle must be in (0, pi/2)")
        if not 0 < self.L_min < self.L_max:
            raise ValueError("requires 0 < L_min < L_max")

    @classmethod
    def from_robot(cls, cfg: RobotConfig) -> "FeasibilityPredicate":
        return cls(cfg.cone_half_angle, cfg.L_min, cfg.L_max)


def world_mounts(mounts: list[MountSpec], pose: BodyPose) -> tuple[np.ndarray, np.ndarray]:
    """Shoulder positions and cone axes in the world frame."""
    pos = np.array([m.position for m in mounts], dtype=float)
    ax = np.array([m.axis for m in mounts], dtype=float)
    return pos @ pose.rotation.T + pose.position, ax @ pose.rotation.T


def feasibility_matrix(
    mounts: list[MountSpec],
    pose: BodyPose,
    points: np.ndarray,
    pred: FeasibilityPredicate,
) -> tuple[np.ndarray, np.ndarray]:
    """(ok, lengths) arrays of shape (n_mounts, n_points)."""
    shoulders, axes = world_mounts(mounts, pose)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    d = pts[None, :, :] - shoulders[:, None, :]  # (N, M, 3)
    L = np.linalg.norm(d, axis=2)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos_ang = np.einsum("nmk,nk->nm", d, axes) / np.where(L > 0, L, np.inf)
    ok = (L >= pred.L_min) & (L <= pred.L_max) & (cos_ang >= math.cos(pred.cone_half_angle))
    return ok, L


def feasible(mount: MountSpec, pose: BodyPose, anchor: np.ndarray, pred: FeasibilityPredicate) -> bool:
    ok, _ = feasibility_matrix([mount], pose, np.asarray(anchor, dtype=float).reshape(1, 3), pred)
    return bool(ok[0, 0])


@dataclass(frozen=True)
class Assignment:
    """Boom-to-anchor pairing minimizing total deployed length."""

    pairs: tuple[tuple[int, int], ...]  # (boom index, anchor index), sorted by boom
    total_length: float


def assign(
    mounts: list[MountSpec],
    pose: BodyPose,
    anchors: AnchorSet | np.ndarray,
    pred: FeasibilityPredicate,
) -> Assignment | None:
    """Exact minimum-total-length matching of booms to distinct anchors.

    Returns None when no complete feasible assignment exists.
    """
    points = anchors.points if isinstance(anchors, AnchorSet) else np.atleast_2d(anchors)
    n, m = len(mounts), len(points)
    if m < n:
        raise ValueError(f"anchor pool ({m}) smaller than boom count ({n})")
    ok, L = feasibility_matrix(mounts, pose, points, pred)
    cost = np.where(ok, L, _BIG)
    rows, cols = linear_sum_assignment(cost)
    if not ok[rows, cols].all():
        return None
    order = np.argsort(rows)
    pairs = tuple((int(rows[k]), int(cols[k])) for k in order)
    return Assignment(pairs=pairs, total_length=float(L[rows, cols].sum()))


def build_stance(
    cfg: RobotConfig,
    anchors: AnchorSet | np.ndarray,
    pose: BodyPose | None = None,
) -> Stance | None:
    """Assign booms to anchors and materialize the stance; None if infeasible."""
    pose = pose or BodyPose()
    pred = FeasibilityPredicate.from_robot(cfg)
    result = assign(list(cfg.mounts), pose, anchors, pred)
    if result is None:
        return None
    points = anchors.points if isinstance(anchors, AnchorSet) else np.atleast_2d(anchors)
    shoulders, _ = world_mounts(list(cfg.mounts), pose)
    chosen = np.array([points[j] for _, j in result.pairs])
    return Stance.from_pairs(shoulders, chosen, pose.position, pose.rotation)


def drop_boom(st: Stance, i: int) -> Stance:
    """Stance with boom i detached (one-boom-out footstep state)."""
    n = st.boom_count
    if n < 2:
        raise ValueError("cannot drop the only boom")
    if not 0 <= i < n:
        raise IndexError(f"boom index {i} out of range for {n} booms")
    keep = [j for j in range(n) if j != i]
    return Stance(st.shoulders[keep], st.anchors[keep], st.directions[keep],
                  st.lengths[keep], st.body_center, st.body_rotation)
