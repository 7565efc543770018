"""Phase sweeps: rediagonalize over a uniform phase grid, pick out in-gap
states, and thread them into continuous branches.

Tracking matches eigenvectors between neighbouring grid points by greedy
bipartite assignment on the overlap matrix |<v_i, v_j>| (energy ordering
alone swaps branches at level crossings). Near-degenerate clusters are
first aligned to the previous step by an orthogonal Procrustes rotation so
that the solver's arbitrary basis inside a cluster cannot scramble the
threading. Grid points are independent diagonalizations and may run on a
thread pool; the threading pass itself is sequential and deterministic.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bdg, bulk, device
from .eigen import EigenSolution, eig_hermitian
from .observables import local_densities

TWO_PI = 2.0 * math.pi
CLUSTER_TOL = 1e-8          # eV; states closer than this get subspace-aligned
MIN_OVERLAP = 0.5           # threading threshold; below this a branch splits


def classify_in_gap(sol: EigenSolution, gap_edge: float,
                    margin: float = bulk.IN_GAP_MARGIN) -> list:
    """Indices of eigenvalues strictly inside the bulk gap."""
    return [int(k) for k in np.where(np.abs(sol.values) < gap_edge - margin)[0]]


@dataclass(frozen=True)
class BoundStatePoint:
    phi: float
    energy: float
    state: np.ndarray
    overlap: float          # threading score from the previous grid point
    grid_index: int


@dataclass
class BoundStateCurve:
    branch_id: int
    points: list
    truncated: bool = False
    label: str | None = None

    def phis(self) -> np.ndarray:
        return np.array([p.phi for p in self.points])

    def energies(self) -> np.ndarray:
        return np.array([p.energy for p in self.points])

    @property
    def mean_energy(self) -> float:
        return float(np.mean([p.energy for p in self.points]))

    @property
    def mean_abs_energy(self) -> float:
        return float(np.mean([abs(p.energy) for p in self.points]))

    @property
    def spread(self) -> float:
        es = self.energies()
        return float(es.max() - es.min())

    def spans(self, n_phi: int) -> bool:
        return len(self.points) == n_phi


@dataclass
class SweepResult:
    phis: np.ndarray
    curves: list
    gap_edge: float
    closure_permutation: dict | None = None
    flags: list = field(default_factory=list)

    def full_curves(self) -> list:
        n = len(self.phis)
        return [c for c in self.curves if c.spans(n)]


@dataclass(frozen=True)
class SweepConfig:
    family: str
    params: dict
    swept_phase: str = "phi"
    n_phi: int = 128
    track: bool = True

    def __post_init__(self):
        if self.n_phi < 16:
            raise ValueError(f"n_phi must be >= 16, got {self.n_phi}")
        if self.family not in ("sc-sc", "sc-tsc", "tsc-tsc", "msq"):
            raise ValueError(f"unknown device family {self.family!r}")
        if self.swept_phase != "phi" and self.family != "msq":
            raise ValueError(
                f"swept phase {self.swept_phase!r} only exists for the msq family")
        if self.swept_phase not in ("phi", "phi1", "phi2"):
            raise ValueError(f"unknown swept phase {self.swept_phase!r}")

    def spec_at(self, value: float):
        p = dict(self.params)
        if self.family == "sc-sc":
            return device.build_sc_sc(p["n_sites"], p["mu"], p["t"], p["delta0"],
                                      value, p.get("v_junction", p["t"]))
        if self.family == "sc-tsc":
            return device.build_sc_tsc(p["n_sites"], p["mu"], p["t"], p["delta0"],
                                       value, p.get("v_c", 1.0))
        if self.family == "tsc-tsc":
            return device.build_tsc_tsc(p["n_sites"], p["mu_left"], p["mu_right"],
                                        p["t"], p["delta0"], value,
                                        p.get("v_junction"))
        phases = {"phi": p.get("phi", 0.0), "phi1": p.get("phi1", 0.0),
                  "phi2": p.get("phi2", 0.0)}
        phases[self.swept_phase] = value
        return device.build_msq(phases["phi"], phases["phi1"], phases["phi2"],
                                p.get("gates", device.DEFAULT_GATES),
                                p.get("geometry"))


def _diagonalize_grid(spec_at, phis, threads):
    def work(phi):
        return eig_hermitian(bdg.assemble(spec_at(phi)))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, phis))
    return [work(phi) for phi in phis]


def _align_clusters(energies, states, prev_states):
    """Rotate near-degenerate column clusters to best match the previous
    step's states (orthogonal Procrustes); returns possibly-rotated states."""
    if prev_states.shape[1] == 0 or len(energies) < 2:
        return states
    states = states.copy()
    start = 0
    n = len(energies)
    while start < n:
        end = start + 1
        while end < n and energies[end] - energies[end - 1] < CLUSTER_TOL:
            end += 1
        m = end - start
        if m > 1:
            block = states[:, start:end]
            ov = np.abs(prev_states.conj().T @ block)
            ref_rows = np.argsort(-ov.sum(axis=1))[:m]
            ref = prev_states[:, sorted(ref_rows)]
            u, _, vh = np.linalg.svd(block.conj().T @ ref)
            states[:, start:end] = block @ (u @ vh)
        start = end
    return states


def _greedy_assign(overlap):
    """Greedy global-max bipartite assignment; returns list of (row, col, score)."""
    pairs = []
    if overlap.size == 0:
        return pairs
    o = overlap.copy()
    used_r, used_c = set(), set()
    flat = np.dstack(np.unravel_index(np.argsort(-o, axis=None), o.shape))[0]
    for r, c in flat:
        if r in used_r or c in used_c:
            continue
        used_r.add(int(r))
        used_c.add(int(c))
        pairs.append((int(r), int(c), float(o[r, c])))
    return pairs


def run_sweep(spec_at, n_phi=128, track=True, gap_edge=None,
              margin=bulk.IN_GAP_MARGIN, energy_window=None,
              threads=1) -> SweepResult:
    """Core sweep over phi in [0, 2*pi] (inclusive grid of n_phi points)."""
    phis = np.linspace(0.0, TWO_PI, n_phi)
    if gap_edge is None:
        gap_edge = bulk.device_gap_edge(spec_at(0.0))
    threshold = gap_edge - margin
    if energy_window is not None:
        threshold = min(threshold, energy_window)

    sols = _diagonalize_grid(spec_at, phis, threads)

    flags = []
    open_branches = []      # dicts: {points: [...], last_state, last_energy}
    closed = []

    for i, (phi, sol) in enumerate(zip(phis, sols)):
        idx = [k for k in range(sol.n) if abs(sol.values[k]) < threshold]
        energies = sol.values[idx]
        states = sol.vectors[:, idx]

        active = [b for b in open_branches if b["points"][-1].grid_index == i - 1]
        stale = [b for b in open_branches if b not in active]
        for b in stale:
            closed.append(b)
        open_branches = active

        assigned_cols = set()
        if i > 0 and open_branches and len(idx):
            prev = np.stack([b["points"][-1].state for b in open_branches], axis=1)
            if track:
                states = _align_clusters(energies, states, prev)
                overlap = np.abs(prev.conj().T @ states)
                for r, c, score in _greedy_assign(overlap):
                    if score < MIN_OVERLAP:
                        flags.append(
                            f"branch split at phi={phi:.6f}: best overlap {score:.3f}")
                        continue
                    open_branches[r]["points"].append(BoundStatePoint(
                        phi=float(phi), energy=float(energies[c]),
                        state=states[:, c], overlap=score, grid_index=i))
                    assigned_cols.add(c)
            else:
                order_prev = sorted(range(len(open_branches)),
                                    key=lambda r: open_branches[r]["points"][-1].energy)
                for rank, r in enumerate(order_prev):
                    if rank >= len(idx):
                        break
                    open_branches[r]["points"].append(BoundStatePoint(
                        phi=float(phi), energy=float(energies[rank]),
                        state=states[:, rank], overlap=0.0, grid_index=i))
                    assigned_cols.add(rank)

        still_open = []
        for b in open_branches:
            if b["points"][-1].grid_index == i:
                still_open.append(b)
            else:
                closed.append(b)
                if i < n_phi:
                    flags.append(
                        f"branch truncated at phi={phis[max(i - 1, 0)]:.6f}")
        open_branches = still_open

        for c in range(len(idx)):
            if c not in assigned_cols:
                if i > 0:
                    flags.append(f"branch appears at phi={phi:.6f}")
                open_branches.append({"points": [BoundStatePoint(
                    phi=float(phi), energy=float(energies[c]),
                    state=states[:, c], overlap=1.0 if i == 0 else 0.0,
                    grid_index=i)]})

    closed.extend(open_branches)
    closed.sort(key=lambda b: np.mean([p.energy for p in b["points"]]))

    curves = []
    for bid, b in enumerate(closed):
        curves.append(BoundStateCurve(
            branch_id=bid, points=b["points"],
            truncated=len(b["points"]) != n_phi))

    closure = None
    full = [c for c in curves if not c.truncated]
    if track and full:
        starts = np.stack([c.points[0].state for c in full], axis=1)
        closure = {}
        for c in full:
            ov = np.abs(starts.conj().T @ c.points[-1].state)
            closure[c.branch_id] = full[int(np.argmax(ov))].branch_id

    return SweepResult(phis=phis, curves=curves, gap_edge=gap_edge,
                       closure_permutation=closure, flags=flags)


def sweep(config: SweepConfig, threads=1, gap_edge=None,
          energy_window=None) -> SweepResult:
    """Run a configured family sweep (delegates to msq_sweep for msq)."""
    if config.family == "msq":
        p = dict(config.params)
        return msq_sweep(p.get("phi1", 0.0), p.get("phi2", 0.0),
                         gates=p.get("gates", device.DEFAULT_GATES),
                         geometry=p.get("geometry"), n_phi=config.n_phi,
                         swept_phase=config.swept_phase,
                         fixed_phi=p.get("phi", 0.0),
                         track=config.track, threads=threads)
    return run_sweep(config.spec_at, n_phi=config.n_phi, track=config.track,
                     gap_edge=gap_edge, energy_window=energy_window,
                     threads=threads)


MSQ_ENERGY_WINDOW = 0.6     # eV; excludes host band-edge states
MSQ_WEIGHT_MIN = 0.5        # minimum mean island weight of a kept branch
MSQ_N_SELECT = 8


def msq_sweep(phi1, phi2, gates=device.DEFAULT_GATES, geometry=None,
              n_phi=48, swept_phase="phi", fixed_phi=0.0, track=True,
              threads=1, energy_window=MSQ_ENERGY_WINDOW,
              weight_min=MSQ_WEIGHT_MIN, n_select=MSQ_N_SELECT) -> SweepResult:
    """Sweep one MSQ phase and keep the island-dominated branches nearest
    zero, labeled alphabetically by mean energy."""
    cfg = SweepConfig(family="msq",
                      params={"phi": fixed_phi, "phi1": phi1, "phi2": phi2,
                              "gates": gates, "geometry": geometry},
                      swept_phase=swept_phase, n_phi=n_phi, track=track)
    result = run_sweep(cfg.spec_at, n_phi=n_phi, track=track,
                       energy_window=energy_window, threads=threads)

    spec0 = cfg.spec_at(0.0)
    island_sites = (spec0.sites_in_region("tsc_wire")
                    + spec0.sites_in_region("tsc_cross"))

    def island_weight(curve):
        w = [float(np.sum(local_densities(p.state).rho[island_sites]))
             for p in curve.points]
        return float(np.mean(w))

    full = [c for c in result.curves if not c.truncated]
    kept = [c for c in full if island_weight(c) >= weight_min]
    kept.sort(key=lambda c: c.mean_abs_energy)
    kept = kept[:n_select]
    kept.sort(key=lambda c: c.mean_energy)
    for label, c in zip("abcdefgh", kept):
        c.label = label

    result.curves = kept
    if result.closure_permutation is not None:
        ids = {c.branch_id for c in kept}
        result.closure_permutation = {
            k: v for k, v in result.closure_permutation.items() if k in ids}
    return result


def zero_crossings(curve: BoundStateCurve) -> list:
    """Linear-interpolation estimates of the phis where a branch changes sign."""
    out = []
    pts = curve.points
    for a, b in zip(pts[:-1], pts[1:]):
        if a.energy == 0.0:
            out.append(a.phi)
        elif a.energy * b.energy < 0:
            frac = a.energy / (a.energy - b.energy)
            out.append(a.phi + frac * (b.phi - a.phi))
    return out


def refine_zero_crossings(curve: BoundStateCurve, spec_at, tol=1e-4,
                          gap_edge=None) -> list:
    """Bisection refinement of branch zero crossings: rediagonalize at the
    midpoint and follow the branch by maximal eigenvector overlap."""
    refined = []
    pts = curve.points
    for a, b in zip(pts[:-1], pts[1:]):
        if a.energy * b.energy >= 0:
            continue
        lo, hi = a.phi, b.phi
        ref_state, lo_sign = a.state, math.copysign(1.0, a.energy)
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            sol = eig_hermitian(bdg.assemble(spec_at(mid)))
            ov = np.abs(sol.vectors.conj().T @ ref_state)
            k = int(np.argmax(ov))
            e_mid = sol.values[k]
            if e_mid == 0.0:
                lo = hi = mid
                break
            if math.copysign(1.0, e_mid) == lo_sign:
                lo, ref_state = mid, sol.vectors[:, k]
            else:
                hi = mid
        refined.append(0.5 * (lo + hi))
    return refined
