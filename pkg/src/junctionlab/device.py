"""Device geometry: region models, site graphs, and the four junction builders.

A DeviceSpec is the single source of truth for a junction: an ordered site
list with region membership and integer coordinates, intra-region bonds
(ordered pairs, orientation matters for hopping pairing), and couplings
(plain tunneling links, no pairing). Specs are frozen after construction
and safe to share between threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import InvalidGeometryError

TWO_PI = 2.0 * math.pi


class RegionKind(enum.Enum):
    """Which pairing rule a region's sites and bonds carry."""

    NORMAL_SC = "normal-sc"            # onsite pairing block
    KITAEV_TSC = "kitaev-tsc"          # -i*delta0*tau_y on bonds
    TSC_PHASE_HOPPING = "tsc-ph"       # -pairing(phi)*tau_z on bonds


def normalize_phase(phi: float) -> float:
    """Map a phase to [0, 2*pi). 2*pi maps to exactly 0.0."""
    return float(phi) % TWO_PI


@dataclass(frozen=True)
class RegionModel:
    """Per-region material parameters (energies in eV)."""

    kind: RegionKind
    mu: float
    t: float
    delta0: float
    phase: float = 0.0
    lattice_const: float = 1.0
    name: str = ""

    def __post_init__(self):
        if self.delta0 < 0:
            raise ValueError(f"delta0 must be >= 0, got {self.delta0}")
        if self.t <= 0:
            raise ValueError(f"t must be > 0, got {self.t}")
        if self.lattice_const <= 0:
            raise ValueError(f"lattice_const must be > 0, got {self.lattice_const}")
        object.__setattr__(self, "phase", normalize_phase(self.phase))


@dataclass(frozen=True)
class Site:
    """One lattice site: region index plus 2D integer coordinates.

    ``layer`` separates stacked structures (host blocks vs. nanowire
    islands drawn across the junction gap); coordinates must be unique
    within a layer.
    """

    region: int
    x: int
    y: int
    layer: int = 0


@dataclass(frozen=True)
class Coupling:
    """Tunneling link between two sites; assembles as -strength * tau_z."""

    site_a: int
    site_b: int
    strength: float


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    sites: tuple = ()


@dataclass(frozen=True)
class DeviceSpec:
    regions: tuple
    sites: tuple
    bonds: tuple          # ordered (from_site, to_site) within one region
    couplings: tuple
    labels: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    def region_of(self, site_id: int) -> RegionModel:
        return self.regions[self.sites[site_id].region]

    def region_index(self, name: str) -> int:
        for i, r in enumerate(self.regions):
            if r.name == name:
                return i
        raise KeyError(name)

    def sites_in_region(self, name: str) -> list:
        idx = self.region_index(name)
        return [i for i, s in enumerate(self.sites) if s.region == idx]


def make_spec(regions, sites, bonds, couplings, labels=None) -> DeviceSpec:
    return DeviceSpec(
        regions=tuple(regions),
        sites=tuple(sites),
        bonds=tuple(tuple(b) for b in bonds),
        couplings=tuple(couplings),
        labels=MappingProxyType(dict(labels or {})),
    )


def validate(spec: DeviceSpec) -> list:
    """Check all DeviceSpec invariants; violations are data, not errors."""
    out = []
    n = spec.n_sites
    nreg = len(spec.regions)

    for i, s in enumerate(spec.sites):
        if not (0 <= s.region < nreg):
            out.append(Violation("unknown_region",
                                 f"site {i} references region {s.region}", (i,)))
    seen_coords = {}
    for i, s in enumerate(spec.sites):
        key = (s.x, s.y, s.layer)
        if key in seen_coords:
            out.append(Violation("coordinate_collision",
                                 f"sites {seen_coords[key]} and {i} share {key}",
                                 (seen_coords[key], i)))
        else:
            seen_coords[key] = i

    seen_bonds = set()
    for a, b in spec.bonds:
        if a == b:
            out.append(Violation("self_bond", f"bond ({a},{a})", (a,)))
            continue
        if not (0 <= a < n) or not (0 <= b < n):
            out.append(Violation("unknown_site", f"bond ({a},{b})", (a, b)))
            continue
        key = (min(a, b), max(a, b))
        if key in seen_bonds:
            out.append(Violation("duplicate_bond", f"bond ({a},{b})", (a, b)))
        seen_bonds.add(key)
        if spec.sites[a].region != spec.sites[b].region:
            out.append(Violation("cross_region_bond",
                                 f"bond ({a},{b}) spans two regions", (a, b)))

    for c in spec.couplings:
        if not (0 <= c.site_a < n) or not (0 <= c.site_b < n):
            out.append(Violation("unknown_site",
                                 f"coupling ({c.site_a},{c.site_b})",
                                 (c.site_a, c.site_b)))
            continue
        if c.site_a == c.site_b:
            out.append(Violation("self_coupling",
                                 f"coupling ({c.site_a},{c.site_a})", (c.site_a,)))
        if c.strength < 0:
            out.append(Violation("negative_strength",
                                 f"coupling ({c.site_a},{c.site_b}) strength "
                                 f"{c.strength}", (c.site_a, c.site_b)))

    for name, sid in spec.labels.items():
        if not (0 <= sid < n):
            out.append(Violation("unknown_site", f"label {name!r} -> {sid}", (sid,)))
    return out


def _chain_sites(region_index, n, x0, y, layer=0):
    return [Site(region_index, x0 + i, y, layer) for i in range(n)]


def _chain_bonds(first, n):
    return [(first + i, first + i + 1) for i in range(n - 1)]


def _check_even(n_sites):
    if n_sites < 4 or n_sites % 2:
        raise InvalidGeometryError(
            f"chain junctions need an even site count >= 4, got {n_sites}")


def build_sc_sc(n_sites, mu, t, delta0, phi, v_junction) -> DeviceSpec:
    """Two s-wave chains of n_sites/2 each; left phase 0, right phase phi,
    joined by one tunneling link of strength v_junction."""
    _check_even(n_sites)
    half = n_sites // 2
    left = RegionModel(RegionKind.NORMAL_SC, mu, t, delta0, 0.0, name="left")
    right = RegionModel(RegionKind.NORMAL_SC, mu, t, delta0, phi, name="right")
    sites = _chain_sites(0, half, 0, 0) + _chain_sites(1, half, half, 0)
    bonds = _chain_bonds(0, half) + _chain_bonds(half, half)
    couplings = [Coupling(half - 1, half, v_junction)]
    labels = {"junction_left": half - 1, "junction_right": half}
    return make_spec([left, right], sites, bonds, couplings, labels)


def build_sc_tsc(n_sites, mu, t, delta0, phi, v_c) -> DeviceSpec:
    """s-wave half (carrying the variable phase) coupled to a Kitaev half."""
    _check_even(n_sites)
    half = n_sites // 2
    left = RegionModel(RegionKind.NORMAL_SC, mu, t, delta0, phi, name="left")
    right = RegionModel(RegionKind.KITAEV_TSC, mu, t, delta0, 0.0, name="right")
    sites = _chain_sites(0, half, 0, 0) + _chain_sites(1, half, half, 0)
    bonds = _chain_bonds(0, half) + _chain_bonds(half, half)
    couplings = [Coupling(half - 1, half, v_c)]
    labels = {
        "junction_left": half - 1,
        "junction_right": half,
        "tsc_far_edge": n_sites - 1,
    }
    return make_spec([left, right], sites, bonds, couplings, labels)


def build_tsc_tsc(n_sites, mu_left, mu_right, t, delta0, phi,
                  v_junction=None) -> DeviceSpec:
    """Two phase-hopping TSC chains; right half carries phase phi. The
    junction link defaults to the bulk hopping t."""
    _check_even(n_sites)
    half = n_sites // 2
    v = t if v_junction is None else v_junction
    left = RegionModel(RegionKind.TSC_PHASE_HOPPING, mu_left, t, delta0, 0.0,
                       name="left")
    right = RegionModel(RegionKind.TSC_PHASE_HOPPING, mu_right, t, delta0, phi,
                        name="right")
    sites = _chain_sites(0, half, 0, 0) + _chain_sites(1, half, half, 0)
    bonds = _chain_bonds(0, half) + _chain_bonds(half, half)
    couplings = [Coupling(half - 1, half, v)]
    labels = {"junction_left": half - 1, "junction_right": half}
    return make_spec([left, right], sites, bonds, couplings, labels)


@dataclass(frozen=True)
class MsqGeometry:
    """Layout knobs for the two-island 2D junction.

    Hosts are host_rows x host_cols blocks separated by gap_cols empty
    columns. Island one is a straight wire of wire_len sites at wire_row.
    Island two is a cross: a bar of bar_len sites at bar_row with two
    arm_len-site arms (one up, one down) hanging off the bar site at
    arm_attach. Contacts: 1/2 = wire ends, 5/4 = bar ends, 3/6 = arm free
    ends (their gates are normally held at zero).
    """

    host_rows: int = 20
    host_cols: int = 15
    gap_cols: int = 3
    wire_row: int = 7
    wire_x0: int = 7
    wire_len: int = 20
    bar_row: int = 14
    bar_x0: int = 12
    bar_len: int = 10
    arm_attach: int = 4
    arm_len: int = 5

    def total_width(self) -> int:
        return 2 * self.host_cols + self.gap_cols

    def left_cols(self):
        return range(0, self.host_cols)

    def right_cols(self):
        return range(self.host_cols + self.gap_cols, self.total_width())


CANONICAL_MSQ = MsqGeometry()

DEFAULT_GATES = (1.0, 1.0, 0.0, 1.0, 1.0, 0.0)


def build_msq(phi, phi1, phi2, gates=DEFAULT_GATES,
              geometry: MsqGeometry | None = None,
              mu_sc=0.25, mu_tsc=0.25, t=0.5, delta0=1.0) -> DeviceSpec:
    """Two 2D s-wave host blocks bridged by a wire island (phase phi1) and a
    cross island (phase phi2), with six gate couplings at labeled contacts."""
    g = geometry or CANONICAL_MSQ
    gates = tuple(float(v) for v in gates)
    if len(gates) != 6:
        raise InvalidGeometryError(f"exactly 6 gate strengths required, got {len(gates)}")
    if any(v < 0 for v in gates):
        raise InvalidGeometryError("gate strengths must be >= 0")
    if g.wire_len < 2 or g.bar_len < 2 or g.arm_len < 1:
        raise InvalidGeometryError("island segments too short")
    if not (0 <= g.arm_attach < g.bar_len):
        raise InvalidGeometryError("arm_attach outside the bar")

    width = g.total_width()
    right_x0 = g.host_cols + g.gap_cols

    sc_left = RegionModel(RegionKind.NORMAL_SC, mu_sc, t, delta0, 0.0, name="sc_left")
    sc_right = RegionModel(RegionKind.NORMAL_SC, mu_sc, t, delta0, phi, name="sc_right")
    tsc_wire = RegionModel(RegionKind.TSC_PHASE_HOPPING, mu_tsc, t, delta0, phi1,
                           name="tsc_wire")
    tsc_cross = RegionModel(RegionKind.TSC_PHASE_HOPPING, mu_tsc, t, delta0, phi2,
                            name="tsc_cross")
    regions = [sc_left, sc_right, tsc_wire, tsc_cross]

    sites = []
    index = {}

    def add(region, x, y, layer):
        sid = len(sites)
        sites.append(Site(region, x, y, layer))
        index[(x, y, layer)] = sid
        return sid

    for x in g.left_cols():
        for y in range(g.host_rows):
            add(0, x, y, 0)
    for x in g.right_cols():
        for y in range(g.host_rows):
            add(1, x, y, 0)

    bonds = []
    for (x, y, layer), sid in list(index.items()):
        if layer:
            continue
        for dx, dy in ((1, 0), (0, 1)):
            nb = index.get((x + dx, y + dy, 0))
            if nb is not None and sites[sid].region == sites[nb].region:
                bonds.append((sid, nb))

    # island one: straight wire, bonds ordered left to right
    if g.wire_x0 + g.wire_len > width:
        raise InvalidGeometryError("wire extends past the host canvas")
    wire = [add(2, g.wire_x0 + i, g.wire_row, 1) for i in range(g.wire_len)]
    bonds += [(a, b) for a, b in zip(wire[:-1], wire[1:])]

    # island two: bar plus two arms from the attach site (up and down)
    if g.bar_x0 + g.bar_len > width:
        raise InvalidGeometryError("bar extends past the host canvas")
    bar = [add(3, g.bar_x0 + i, g.bar_row, 1) for i in range(g.bar_len)]
    bonds += [(a, b) for a, b in zip(bar[:-1], bar[1:])]
    xc = g.bar_x0 + g.arm_attach
    if g.bar_row - g.arm_len < 0 or g.bar_row + g.arm_len >= g.host_rows:
        raise InvalidGeometryError("arms extend past the host canvas")
    arm_up = [add(3, xc, g.bar_row - 1 - j, 1) for j in range(g.arm_len)]
    arm_dn = [add(3, xc, g.bar_row + 1 + j, 1) for j in range(g.arm_len)]
    for arm in (arm_up, arm_dn):
        prev = bar[g.arm_attach]
        for s in arm:
            bonds.append((prev, s))
            prev = s

    def host_anchor(x, y, side):
        xa = min(x, g.host_cols - 1) if side == "L" else max(x, right_x0)
        sid = index.get((xa, y, 0))
        if sid is None:
            raise InvalidGeometryError(f"no host site near contact at ({x},{y})")
        return sid

    contact_sites = {
        1: wire[0], 2: wire[-1],
        3: arm_up[-1], 6: arm_dn[-1],
        5: bar[0], 4: bar[-1],
    }
    anchors = {
        1: host_anchor(g.wire_x0, g.wire_row, "L"),
        2: host_anchor(g.wire_x0 + g.wire_len - 1, g.wire_row, "R"),
        3: host_anchor(xc, g.bar_row - g.arm_len, "L"),
        6: host_anchor(xc, g.bar_row + g.arm_len, "R"),
        5: host_anchor(g.bar_x0, g.bar_row, "L"),
        4: host_anchor(g.bar_x0 + g.bar_len - 1, g.bar_row, "R"),
    }
    couplings = [Coupling(contact_sites[k], anchors[k], gates[k - 1])
                 for k in (1, 2, 3, 4, 5, 6)]
    labels = {f"contact_{k}": contact_sites[k] for k in range(1, 7)}
    labels.update({f"anchor_{k}": anchors[k] for k in range(1, 7)})

    spec = make_spec(regions, sites, bonds, couplings, labels)
    problems = validate(spec)
    if problems:
        raise InvalidGeometryError("; ".join(v.message for v in problems))
    return spec


def with_region_phase(spec: DeviceSpec, region_name: str, phi: float) -> DeviceSpec:
    """Copy of a spec with one region's phase replaced (used for sweeps)."""
    idx = spec.region_index(region_name)
    regions = list(spec.regions)
    r = regions[idx]
    regions[idx] = RegionModel(r.kind, r.mu, r.t, r.delta0, phi,
                               r.lattice_const, r.name)
    return DeviceSpec(tuple(regions), spec.sites, spec.bonds, spec.couplings,
                      spec.labels)
