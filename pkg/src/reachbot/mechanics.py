"""Grasp mechanics: grasp map, stiffness matrices, eigen-metrics.

The body held by its booms is treated like an object held by manipulator
fingers. Each boom contributes a wrench column [u; (s - c) x u] (unit force
along the boom, torque about the body center from the shoulder lever arm).
Stiffness K = G W G^T is symmetric positive semidefinite; its minimum
eigenvalue is the stability measure (resistance in the weakest wrench
direction) and its maximum eigenvalue the wrench-capability proxy.

Two earlier draft stiffness formulations are kept as ``legacy_*`` functions
for comparison; see their docstrings for the signatures that make them
distinguishable from the default model.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Stance:
    """A matched set of booms: shoulders, anchors, unit directions, lengths."""

    shoulders: np.ndarray  # (N, 3) world
    anchors: np.ndarray  # (N, 3) world
    directions: np.ndarray  # (N, 3) unit vectors shoulder -> anchor
    lengths: np.ndarray  # (N,)
    body_center: np.ndarray  # (3,)
    body_rotation: np.ndarray = field(default_factory=lambda: np.eye(3))

    def __post_init__(self):
        s = np.asarray(self.shoulders, dtype=float).reshape(-1, 3)
        a = np.asarray(self.anchors, dtype=float).reshape(-1, 3)
        u = np.asarray(self.directions, dtype=float).reshape(-1, 3)
        L = np.asarray(self.lengths, dtype=float).reshape(-1)
        c = np.asarray(self.body_center, dtype=float).reshape(3)
        R = np.asarray(self.body_rotation, dtype=float).reshape(3, 3)
        if not (len(s) == len(a) == len(u) == len(L)):
            raise ValueError("stance arrays must have one row per boom")
        if len(s) < 1:
            raise ValueError("stance needs at least one boom")
        if np.max(np.abs(np.linalg.norm(u, axis=1) - 1.0)) > 1e-12:
            raise ValueError("boom directions must be unit vectors")
        if np.max(np.abs(np.linalg.norm(a - s, axis=1) - L)) > 1e-9:
            raise ValueError("boom lengths inconsistent with shoulder/anchor pairs")
        for name, arr in (("shoulders", s), ("anchors", a), ("directions", u),
                          ("lengths", L), ("body_center", c), ("body_rotation", R)):
            object.__setattr__(self, name, arr)

    @property
    def boom_count(self) -> int:
        return len(self.lengths)

    @classmethod
    def from_pairs(cls, shoulders, anchors, body_center, body_rotation=None) -> "Stance":
        s = np.asarray(shoulders, dtype=float).reshape(-1, 3)
        a = np.asarray(anchors, dtype=float).reshape(-1, 3)
        d = a - s
        L = np.linalg.norm(d, axis=1)
        if np.any(L <= 0):
            raise ValueError("anchor coincides with shoulder")
        return cls(s, a, d / L[:, None], L, np.asarray(body_center, dtype=float),
                   np.eye(3) if body_rotation is None else body_rotation)

    def to_dict(self) -> dict:
        return {
            "s": self.shoulders.tolist(),
            "a": self.anchors.tolist(),
            "body_center": self.body_center.tolist(),
            "body_rotation": self.body_rotation.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Stance":
        return cls.from_pairs(d["s"], d["a"], d["body_center"], np.asarray(d.get("body_rotation", np.eye(3))))


def grasp_map(st: Stance) -> np.ndarray:
    """6xN grasp map; column i = [u_i; (s_i - c) x u_i]."""
    lever = st.shoulders - st.body_center
    torque = np.cross(lever, st.directions)
    return np.vstack([st.directions.T, torque.T])


def sym_eig(K: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a symmetric matrix; rejects asymmetric input."""
    K = np.asarray(K, dtype=float)
    scale = np.linalg.norm(K)
    if np.linalg.norm(K - K.T) > 1e-8 * max(scale, 1e-300):
        raise ValueError("matrix is not symmetric")
    return np.linalg.eigvalsh(0.5 * (K + K.T))


@dataclass(frozen=True)
class StiffnessResult:
    """6x6 stiffness matrix with its ascending eigenvalue spectrum."""

    K: np.ndarray
    eigenvalues: np.ndarray

    @property
    def stability(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def wrench_capability(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def torque_capability(self) -> float:
        """Largest eigenvalue of the rotational 3x3 block."""
        return float(np.linalg.eigvalsh(self.K[3:, 3:])[-1])


def _result(K: np.ndarray) -> StiffnessResult:
    K = 0.5 * (K + K.T)
    return StiffnessResult(K=K, eigenvalues=sym_eig(K))


def stiffness(G: np.ndarray, weights: np.ndarray | float) -> StiffnessResult:
    """K = G diag(w) G^T for per-boom axial stiffness weights w > 0."""
    G = np.asarray(G, dtype=float)
    w = np.broadcast_to(np.asarray(weights, dtype=float), (G.shape[1],))
    if np.any(w <= 0):
        raise ValueError("stiffness weights must be positive")
    return _result((G * w) @ G.T)


def stance_stiffness(st: Stance, weights: np.ndarray | float = 1.0) -> StiffnessResult:
    return stiffness(grasp_map(st), weights)


def stability(r: StiffnessResult) -> float:
    return r.stability


def effective_stability(r: StiffnessResult, rel_eps: float = 1e-9) -> float:
    """Stability with rank-deficient near-zeros clamped to exactly 0."""
    lam_min, lam_max = r.stability, r.wrench_capability
    return 0.0 if lam_min <= rel_eps * abs(lam_max) else lam_min


@dataclass(frozen=True)
class WrenchCapability:
    full: float
    torque: float


def wrench_capability(r: StiffnessResult, delta_ref: float) -> WrenchCapability:
    """Stiffness-eigenvalue wrench proxy scaled by a displacement budget."""
    if not delta_ref > 0:
        raise ValueError("delta_ref must be positive")
    return WrenchCapability(full=r.wrench_capability * delta_ref,
                            torque=r.torque_capability * delta_ref)


def manipulability(G: np.ndarray) -> float:
    """w = sqrt(det(G G^T)), zero at rank deficiency."""
    G = np.asarray(G, dtype=float)
    det = np.linalg.det(G @ G.T)
    if det < 1e-12:
        return 0.0
    return float(np.sqrt(det))


def legacy_stiffness_pointmass(st: Stance) -> StiffnessResult:
    """First draft model: per-boom joint Jacobians with unit joint stiffness.

    Each boom contributes columns [u; 0] (extension) plus three pure-moment
    columns, so K = [sum u u^T, 0; 0, N I]. The rotational block is N*I for
    every geometry, which is the signature that made this model a dead end.
    """
    u = st.directions
    K = np.zeros((6, 6))
    K[:3, :3] = u.T @ u
    K[3:, 3:] = st.boom_count * np.eye(3)
    return _result(K)


def legacy_stiffness_cable(st: Stance, omega: np.ndarray | float = 1.0) -> StiffnessResult:
    """Second draft model: cable-robot form K = J^T Omega J.

    With row i of J taken as [u_i^T, ((s_i - c) x u_i)^T] and the geometric
    term dropped (fixed attachment), this coincides exactly with the default
    grasp-map model K = G Omega G^T.
    """
    G = grasp_map(st)
    J = G.T
    w = np.broadcast_to(np.asarray(omega, dtype=float), (st.boom_count,))
    if np.any(w <= 0):
        raise ValueError("omega weights must be positive")
    return _result(J.T @ (w[:, None] * J))
