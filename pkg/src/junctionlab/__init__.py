"""junctionlab: desk-scale energy-phase simulation of normal and topological
Josephson junctions from tight-binding BdG models, cross-checked by an
independent continuum oracle."""

from .bdg import (
    BdgMatrix,
    assemble,
    kitaev_hopping_block,
    pairing_onsite_block,
    tsc_phase_hopping_block,
)
from .bulk import BulkBands, bloch_block, bulk_bands, device_gap_edge, gap_edge
from .continuum import (
    ContinuumParams,
    CoherencePair,
    abs_energy,
    andreev_coefficients,
    coherence_factors,
    delta_scattering,
    pole_residual,
    pole_root,
    sl_green,
)
from .device import (
    CANONICAL_MSQ,
    DEFAULT_GATES,
    Coupling,
    DeviceSpec,
    MsqGeometry,
    RegionKind,
    RegionModel,
    Site,
    build_msq,
    build_sc_sc,
    build_sc_tsc,
    build_tsc_tsc,
    validate,
    with_region_phase,
)
from .eigen import EigenSolution, eig_hermitian
from .observables import (
    LocalDensityField,
    OrbitTrace,
    local_densities,
    orbit_trace,
    participation_ratio,
    total_charge,
    window_weight,
)
from .presets import PRESETS, run_preset
from .sweep import (
    BoundStateCurve,
    BoundStatePoint,
    SweepConfig,
    SweepResult,
    classify_in_gap,
    msq_sweep,
    refine_zero_crossings,
    run_sweep,
    sweep,
    zero_crossings,
)
from .symmetry import SymmetryReport, ph_defect, spectrum_symmetry_defect

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
