"""Monte Carlo trade study over boom counts.

For each trial one shared anchor pool is drawn (common random numbers), so
every boom count is evaluated against identical terrain draws and per-N
comparisons are low-variance. Metrics are aggregated per boom count, mission
constraints applied, the Pareto front extracted and a design selected.
"""
from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, field

import numpy as np

from . import mechanics
from .interference import CoverageReport, coverage_curve
from .mechanics import grasp_map, manipulability, stiffness, wrench_capability
from .rng import substream
from .robot import BucklingReport, RobotConfig, check_buckling, total_mass
from .stance import BodyPose, build_stance, drop_boom
from .terrain import Terrain, sample_anchors

# Relative eigenvalue threshold separating rank-deficient zeros from small
# positive stabilities.
REL_EPS = 1e-9

MAX_RESAMPLES = 100


@dataclass(frozen=True)
class Constraints:
    tau_drill: float = 4.0  # N*m, required applicable drilling torque
    m_critical: float | None = None  # N*m boom critical buckling moment; None = not evaluated
    one_boom_out: bool = True

    def __post_init__(self):
        if self.tau_drill < 0:
            raise ValueError("tau_drill must be non-negative")


@dataclass(frozen=True)
class Calibration:
    delta_ref: float = 0.1  # meters-equivalent displacement budget

    def __post_init__(self):
        if not self.delta_ref > 0:
            raise ValueError("delta_ref must be positive")


@dataclass(frozen=True)
class StudyConfig:
    terrain: Terrain
    robot_template: RobotConfig
    n_range: tuple[int, int] = (1, 10)
    trials: int = 100
    seed: int = 0
    layout: str = "uniform"
    pool_multiplier: int = 3
    surface_samples: int = 20000
    coverage_layout: str = "nested"
    aggregate_mode: str = "median"
    constraints: Constraints = field(default_factory=Constraints)
    calibration: Calibration = field(default_factory=Calibration)

    def __post_init__(self):
        lo, hi = self.n_range
        if not 1 <= lo <= hi:
            raise ValueError("n_range must satisfy 1 <= lo <= hi")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.pool_multiplier < 1:
            raise ValueError("pool_multiplier must be >= 1")
        if self.aggregate_mode not in ("median", "mean", "min", "max"):
            raise ValueError("aggregate_mode must be median, mean, min or max")

    @property
    def boom_counts(self) -> list[int]:
        return list(range(self.n_range[0], self.n_range[1] + 1))


@dataclass(frozen=True)
class TrialCell:
    """All metrics of one (boom count, trial) stance."""

    n: int
    trial: int
    feasible: bool
    resamples: int
    lambda_min: float
    lambda_max: float
    manipulability: float
    wrench_full: float
    wrench_torque: float
    one_out_lambda_min: float
    one_out_lambda_max: float
    pool_hash: str


@dataclass(frozen=True)
class MetricsTable:
    cells: tuple[TrialCell, ...]
    boom_counts: tuple[int, ...]
    trials: int

    def column(self, n: int, name: str) -> np.ndarray:
        return np.array([getattr(c, name) for c in self.cells if c.n == n])


def _aggregate(values: np.ndarray, mode: str) -> float:
    fn = {"median": np.median, "mean": np.mean, "min": np.min, "max": np.max}[mode]
    return float(fn(values))


def anchor_window(terrain: Terrain, cfg: RobotConfig) -> float:
    """Longitudinal anchor window: twice the boom reach, capped by the terrain."""
    return min(2.0 * cfg.L_max, terrain.longitudinal_extent)


def one_boom_out(st: mechanics.Stance, weights: float) -> tuple[float, float]:
    """Worst-drop (lambda_min, lambda_max of that same drop)."""
    worst = (np.inf, 0.0)
    for i in range(st.boom_count):
        res = stiffness(grasp_map(drop_boom(st, i)), weights)
        if res.stability < worst[0]:
            worst = (res.stability, res.wrench_capability)
    return worst


def run_trials(sc: StudyConfig, pose: BodyPose | None = None) -> MetricsTable:
    """Evaluate every (boom count, trial) cell under common random numbers."""
    pose = pose or BodyPose()
    robots = {n: sc.robot_template.with_boom_count(n, sc.layout) for n in sc.boom_counts}
    n_max = sc.n_range[1]
    pool_size = sc.pool_multiplier * n_max
    cells = []
    for t in range(sc.trials):
        shared = sample_anchors(sc.terrain, pool_size,
                                anchor_window(sc.terrain, sc.robot_template),
                                substream(sc.seed, t, "anchors"), seed=sc.seed)
        shared_hash = hashlib.sha256(shared.points.tobytes()).hexdigest()[:16]
        for n in sc.boom_counts:
            cfg = robots[n]
            pool, pool_hash = shared, shared_hash
            st = build_stance(cfg, pool, pose)
            resamples = 0
            while st is None and resamples < MAX_RESAMPLES:
                resamples += 1
                pool = sample_anchors(sc.terrain, pool_size,
                                      anchor_window(sc.terrain, cfg),
                                      substream(sc.seed, t, f"resample:{n}:{resamples}"),
                                      seed=sc.seed)
                pool_hash = hashlib.sha256(pool.points.tobytes()).hexdigest()[:16]
                st = build_stance(cfg, pool, pose)
            if st is None:
                cells.append(TrialCell(n, t, False, resamples, 0.0, 0.0, 0.0, 0.0,
                                       0.0, 0.0, 0.0, shared_hash))
                continue
            G = grasp_map(st)
            res = stiffness(G, cfg.boom_stiffness)
            wc = wrench_capability(res, sc.calibration.delta_ref)
            if st.boom_count >= 2:
                oo_min, oo_max = one_boom_out(st, cfg.boom_stiffness)
            else:
                oo_min, oo_max = 0.0, 0.0
            cells.append(TrialCell(
                n=n, trial=t, feasible=True, resamples=resamples,
                lambda_min=res.stability, lambda_max=res.wrench_capability,
                manipulability=manipulability(G),
                wrench_full=wc.full, wrench_torque=wc.torque,
                one_out_lambda_min=oo_min, one_out_lambda_max=oo_max,
                pool_hash=pool_hash))
    return MetricsTable(cells=tuple(cells), boom_counts=tuple(sc.boom_counts), trials=sc.trials)


@dataclass(frozen=True)
class SummaryRow:
    n: int
    mass: float
    worst_stability: float
    mean_stability: float
    mean_marginal_gain: float
    mean_manipulability: float
    agg_stability: float
    agg_lambda_max: float
    agg_wrench_full: float
    agg_wrench_torque: float
    one_out_worst: float
    one_out_agg: float
    one_out_agg_lambda_max: float
    infeasible_trials: int


def aggregate(table: MetricsTable, robot_template: RobotConfig,
              mode: str = "median") -> list[SummaryRow]:
    """Per-boom-count summary, including marginal stability gain vs N-1."""
    rows = []
    prev_lmin = None
    for n in table.boom_counts:
        lmin = table.column(n, "lambda_min")
        gain = float(np.mean(lmin - prev_lmin)) if prev_lmin is not None else 0.0
        rows.append(SummaryRow(
            n=n,
            mass=total_mass(robot_template.with_boom_count(n)),
            worst_stability=float(lmin.min()),
            mean_stability=float(lmin.mean()),
            mean_marginal_gain=gain,
            mean_manipulability=float(table.column(n, "manipulability").mean()),
            agg_stability=_aggregate(lmin, mode),
            agg_lambda_max=_aggregate(table.column(n, "lambda_max"), mode),
            agg_wrench_full=_aggregate(table.column(n, "wrench_full"), mode),
            agg_wrench_torque=_aggregate(table.column(n, "wrench_torque"), mode),
            one_out_worst=float(table.column(n, "one_out_lambda_min").min()),
            one_out_agg=_aggregate(table.column(n, "one_out_lambda_min"), mode),
            one_out_agg_lambda_max=_aggregate(table.column(n, "one_out_lambda_max"), mode),
            infeasible_trials=int((~table.column(n, "feasible").astype(bool)).sum()),
        ))
        prev_lmin = lmin
    return rows


def pareto_front(values: np.ndarray, senses: list[str]) -> list[int]:
    """Indices of nondominated points, in input order.

    ``senses`` gives "min" or "max" per objective column.
    """
    values = np.atleast_2d(np.asarray(values, dtype=float))
    if values.size == 0:
        raise ValueError("pareto_front requires at least one point")
    if values.shape[1] != len(senses):
        raise ValueError("one sense per objective column required")
    signs = np.array([1.0 if s == "min" else -1.0 for s in senses])
    v = values * signs  # now all-minimize
    keep = []
    for i in range(len(v)):
        dominated = False
        for j in range(len(v)):
            if j == i:
                continue
            if np.all(v[j] <= v[i]) and np.any(v[j] < v[i]):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return keep


@dataclass(frozen=True)
class ConstraintVerdict:
    n: int
    stability_ok: bool
    torque_ok: bool
    one_boom_out_ok: bool
    buckling_ok: bool
    feasible: bool
    binding: tuple[str, ...]  # names of failed constraints


@dataclass(frozen=True)
class CandidatePoint:
    n: int
    mass: float
    torque_capability: float
    worst_stability: float
    unique_pct: float
    overlap_pct: float


@dataclass(frozen=True)
class ParetoResult:
    candidates: tuple[CandidatePoint, ...]
    verdicts: tuple[ConstraintVerdict, ...]
    nondominated_n: tuple[int, ...]
    feasible_n: tuple[int, ...]
    selected_n: int | None
    buckling: BucklingReport | None


def select_design(
    summary: list[SummaryRow],
    coverage: list[CoverageReport],
    constraints: Constraints,
    robot_template: RobotConfig,
) -> ParetoResult:
    """Apply mission constraints, then pick the minimum-mass feasible design.

    Ties in mass are broken toward lower overlapping coverage (less
    mechanical interference).
    """
    cov_by_n = {c.boom_count: c for c in coverage}
    buck = None
    buckling_ok = True
    if constraints.m_critical is not None:
        buck = check_buckling(constraints.m_critical, robot_template)
        buckling_ok = buck.satisfied

    candidates, verdicts = [], []
    for row in summary:
        cov = cov_by_n.get(row.n)
        candidates.append(CandidatePoint(
            n=row.n, mass=row.mass, torque_capability=row.agg_wrench_torque,
            worst_stability=row.worst_stability,
            unique_pct=cov.unique_pct if cov else 0.0,
            overlap_pct=cov.overlap_pct if cov else 0.0))
        stability_ok = row.agg_stability > REL_EPS * abs(row.agg_lambda_max)
        torque_ok = row.agg_wrench_torque >= constraints.tau_drill
        obo_ok = (not constraints.one_boom_out
                  or row.one_out_agg > REL_EPS * abs(row.one_out_agg_lambda_max))
        binding = tuple(name for name, ok in (
            ("stability", stability_ok), ("torque", torque_ok),
            ("one_boom_out", obo_ok), ("buckling", buckling_ok)) if not ok)
        verdicts.append(ConstraintVerdict(
            n=row.n, stability_ok=stability_ok, torque_ok=torque_ok,
            one_boom_out_ok=obo_ok, buckling_ok=buckling_ok,
            feasible=not binding, binding=binding))

    front = pareto_front(
        np.array([[c.mass, c.torque_capability] for c in candidates]), ["min", "max"])
    feasible = [v.n for v in verdicts if v.feasible]
    selected = None
    if feasible:
        by_n = {c.n: c for c in candidates}
        selected = min(feasible, key=lambda n: (by_n[n].mass, by_n[n].overlap_pct, n))
    return ParetoResult(
        candidates=tuple(candidates), verdicts=tuple(verdicts),
        nondominated_n=tuple(candidates[i].n for i in front),
        feasible_n=tuple(feasible), selected_n=selected, buckling=buck)


@dataclass(frozen=True)
class StudyReport:
    seed: int
    config_echo: dict
    table: MetricsTable
    summary: list[SummaryRow]
    coverage: list[CoverageReport]
    pareto: ParetoResult

    @property
    def selected_n(self) -> int | None:
        return self.pareto.selected_n

    def to_dict(self) -> dict:
        from . import __version__
        return {
            "schema_version": 1,
            "tool_version": __version__,
            "seed": self.seed,
            "config": self.config_echo,
            "selected_n": self.pareto.selected_n,
            "feasible_n": list(self.pareto.feasible_n),
            "nondominated_n": list(self.pareto.nondominated_n),
            "buckling": asdict(self.pareto.buckling) if self.pareto.buckling else None,
            "verdicts": [asdict(v) for v in self.pareto.verdicts],
            "candidates": [asdict(c) for c in self.pareto.candidates],
            "summary": [asdict(r) for r in self.summary],
            "coverage": [asdict(c) for c in self.coverage],
            "trials": [asdict(c) for c in self.table.cells],
        }


def run_study(sc: StudyConfig, config_echo: dict | None = None,
              pose: BodyPose | None = None) -> StudyReport:
    """End-to-end study: trials, aggregation, coverage, constraints, selection."""
    table = run_trials(sc, pose=pose)
    summary = aggregate(table, sc.robot_template, sc.aggregate_mode)
    cov = coverage_curve(sc.robot_template, sc.terrain, sc.n_range,
                         sc.surface_samples, substream(sc.seed, 0, "surface"),
                         pose=pose, layout_policy=sc.coverage_layout)
    pareto = select_design(summary, cov, sc.constraints, sc.robot_template)
    return StudyReport(seed=sc.seed, config_echo=config_echo or {}, table=table,
                       summary=summary, coverage=cov, pareto=pareto)


def stability_csv_rows(table: MetricsTable) -> list[str]:
    rows = ["N,trial,lambda_min"]
    for c in table.cells:
        rows.append(f"{c.n},{c.trial},{c.lambda_min:.12g}")
    return rows


def summary_csv_rows(summary: list[SummaryRow]) -> list[str]:
    header = ("N,mass_kg,worst_stability,mean_stability,mean_marginal_gain,"
              "mean_manipulability,wrench_full,wrench_torque_nm,one_out_worst,"
              "one_out_agg,infeasible_trials")
    rows = [header]
    for r in summary:
        rows.append(
            f"{r.n},{r.mass:.12g},{r.worst_stability:.12g},{r.mean_stability:.12g},"
            f"{r.mean_marginal_gain:.12g},{r.mean_manipulability:.12g},"
            f"{r.agg_wrench_full:.12g},{r.agg_wrench_torque:.12g},"
            f"{r.one_out_worst:.12g},{r.one_out_agg:.12g},{r.infeasible_trials}")
    return rows


def pareto_csv_rows(pr: ParetoResult) -> list[str]:
    rows = ["N,mass_kg,torque_capability_nm,feasible,nondominated,selected"]
    feas = set(pr.feasible_n)
    front = set(pr.nondominated_n)
    for c in pr.candidates:
        rows.append(
            f"{c.n},{c.mass:.12g},{c.torque_capability:.12g},"
            f"{int(c.n in feas)},{int(c.n in front)},{int(c.n == pr.selected_n)}")
    return rows
