"""Continuum Green's-function machinery: coherence factors, the Andreev
bound-state pole condition and its closed form, the Sturm-Liouville
Green's-function constructor, and delta-potential scattering.

This module is the independent analytic oracle for the tight-binding code:
nothing here touches the lattice machinery.

Branch handling: for |E| < delta the square root sqrt(1 - (delta/E)^2) is
continued as +i*sqrt((delta/E)^2 - 1) (upper half plane), which puts the
bound-state poles on the real energy axis. Under this convention the pole
condition e^{i phi} v0^2 - u0^2 = 0 selects the positive-energy root for
phi in (0, pi); the (pi, 2 pi) half follows from the phi -> 2 pi - phi
mirror symmetry of the closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    BoundStatePoleError,
    DegenerateSolutionsError,
    SingularInputError,
)

POLE_TOL = 1e-10


@dataclass(frozen=True)
class ContinuumParams:
    """Natural units by default (m = hbar = 1); energies share one unit."""

    mu: float
    delta0: float
    phi: float = 0.0
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError(f"mu must be > 0, got {self.mu}")

    @property
    def k_f(self) -> float:
        return math.sqrt(2.0 * self.m * self.mu) / self.hbar

    @property
    def andreev_regime(self) -> bool:
        """True when mu dominates the gap (wavenumbers well approximated by k_f)."""
        return self.mu >= 10.0 * self.delta0

    def wavenumbers(self, energy: float) -> tuple:
        """Exact particle/hole wavenumbers (k_plus, k_minus) at the given
        energy, from E^2 = (hbar^2 k^2 / 2m - mu)^2 + delta0^2. Complex when
        the state is evanescent. Diagnostic only; the Andreev approximation
        (k ~ k_f) is what enters the scattering formulas."""
        s = cmath.sqrt(complex(energy) ** 2 - self.delta0 ** 2)
        kp = cmath.sqrt(2.0 * self.m * (self.mu + s)) / self.hbar
        km = cmath.sqrt(2.0 * self.m * (self.mu - s)) / self.hbar
        return kp, km

    def k_squared_variants(self, energy: float) -> dict:
        """Two normalizations of k_plus_minus^2 seen in circulation; the
        quadratic form follows from the dispersion, the linear form is
        dimensionally inconsistent and kept only for comparison. Neither
        enters results under the Andreev approximation."""
        s = cmath.sqrt((complex(energy) ** 2 - self.delta0 ** 2) / self.mu ** 2)
        kf = self.k_f
        return {
            "quadratic": (kf ** 2 * (1 + s), kf ** 2 * (1 - s)),
            "linear": (kf * (1 + s), kf * (1 - s)),
        }


@dataclass(frozen=True)
class CoherencePair:
    u0: complex
    v0: complex


def _branch_root(energy: float, delta: float) -> complex:
    """sqrt(1 - (delta/E)^2) with the upper-half continuation for |E| < delta."""
    ratio2 = (delta / energy) ** 2
    if ratio2 <= 1.0:
        return complex(math.sqrt(1.0 - ratio2))
    return 1j * math.sqrt(ratio2 - 1.0)


def coherence_factors(energy: float, delta: float) -> CoherencePair:
    """Quasiparticle amplitudes u0, v0 at the given energy.

    Real for |E| >= delta; analytically continued inside the gap. The
    identity u0^2 + v0^2 = 1 holds exactly on both branches. E = 0 is
    singular.
    """
    if energy == 0:
        raise SingularInputError("coherence factors are singular at E = 0")
    root = _branch_root(energy, delta)
    u0 = cmath.sqrt(0.5 * (1.0 + root))
    v0 = cmath.sqrt(0.5 * (1.0 - root))
    return CoherencePair(u0=u0, v0=v0)


def pole_residual(energy: float, phi: float, delta: float) -> complex:
    """e^{i phi} v0^2 - u0^2; a bound state exists where this vanishes."""
    if energy == 0:
        raise SingularInputError("pole condition undefined at E = 0")
    pair = coherence_factors(energy, delta)
    return cmath.exp(1j * phi) * pair.v0 ** 2 - pair.u0 ** 2


def abs_energy(phi: float, delta: float = 1.0, eta: float = 1.0) -> tuple:
    """Closed-form junction bound-state energies:
    +/- delta * sqrt(1 - eta^2 sin^2(phi/2)). eta = 1 is the transparent
    junction; eta -> 0 recovers the cosine-like weak-link limit."""
    val = delta * math.sqrt(max(0.0, 1.0 - (eta * math.sin(0.5 * phi)) ** 2))
    return val, -val


def pole_root(phi: float, delta: float, tol: float = 1e-12) -> float:
    """Positive-energy root of the pole condition, located by bisection on
    the real part of the residual over E in (0, delta). Valid for
    phi in (0, pi); use the 2*pi - phi mirror outside that range."""
    phi = phi % (2.0 * math.pi)
    if phi > math.pi:
        phi = 2.0 * math.pi - phi
    if phi <= 0.0 or phi >= math.pi:
        raise SingularInputError(
            "bisection needs phi strictly inside (0, pi) after mirroring")

    def f(e):
        return pole_residual(e, phi, delta).real

    lo, hi = 1e-12 * delta, delta * (1.0 - 1e-14)
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if flo * fhi > 0:
        raise SingularInputError("no sign change for the pole residual")
    while hi - lo > tol * delta:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def andreev_coefficients(energy: float, phi: float, delta: float,
                         params: ContinuumParams) -> dict:
    """Green's-function coefficients of the transparent junction:
    the equal-species amplitude and the cross-species ratio (only the
    ratio is normalization-free). Hitting the bound-state pole raises
    BoundStatePoleError instead of returning infinities."""
    pair = coherence_factors(energy, delta)
    u2, v2 = pair.u0 ** 2, pair.v0 ** 2
    diff = u2 - v2
    if abs(diff) < POLE_TOL:
        raise SingularInputError("u0^2 - v0^2 vanishes at the gap edge")
    denom = cmath.exp(1j * phi) * v2 - u2
    if abs(denom) < POLE_TOL:
        raise BoundStatePoleError(energy, phi)
    a_pp_hh = (1j * params.m / (params.hbar ** 2 * params.k_f)
               * cmath.exp(-1j * phi) / diff)
    ratio = (cmath.exp(1j * phi) * u2 - v2) / denom
    return {"a_pp_hh": a_pp_hh, "a_hp_over_a_ph": ratio}


def _derivative(f, x: float) -> complex:
    """Five-point central difference, adequate for smooth boundary solutions."""
    h = 1e-3 * max(1.0, abs(x))
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def sl_green(psi_left, psi_right, p, x: float, xp: float,
             dpsi_left=None, dpsi_right=None) -> complex:
    """Sturm-Liouville Green's function from boundary solutions:

        G(x, x') = psi_left(min) * psi_right(max) / (p * W)

    p is the leading-coefficient function of the operator and W the
    Wronskian psi_left * psi_right' - psi_left' * psi_right (p * W is
    constant over the interval). Derivative callables are optional;
    otherwise a high-order finite difference is used.
    """
    x0 = 0.5 * (x + xp)
    dl = dpsi_left(x0) if dpsi_left else _derivative(psi_left, x0)
    dr = dpsi_right(x0) if dpsi_right else _derivative(psi_right, x0)
    wron = psi_left(x0) * dr - dl * psi_right(x0)
    scale = max(abs(psi_left(x0)), abs(psi_right(x0)), 1.0)
    if abs(wron) < 1e-12 * scale:
        raise DegenerateSolutionsError(
            "boundary solutions are linearly dependent (Wronskian ~ 0)")
    lo, hi = (x, xp) if x <= xp else (xp, x)
    return psi_left(lo) * psi_right(hi) / (p(x0) * wron)


def delta_scattering(k: float, v_c: float, params: ContinuumParams) -> dict:
    """Reflection/transmission of a point barrier of weight v_c:

        eta      = m v_c / (k hbar^2)
        B/A      = -i eta / (1 + i eta)
        C/A      = 1 / (1 + i eta)
        C        = 1 / (v_c - i k hbar^2 / m)   (jump-condition route)

    |B/A|^2 + |C/A|^2 = 1 identically. The barrier eta here is distinct
    from the junction transparency eta of abs_energy.
    """
    if k <= 0:
        raise SingularInputError(f"wavenumber must be positive, got {k}")
    m, hbar = params.m, params.hbar
    eta = m * v_c / (k * hbar ** 2)
    b_over_a = -1j * eta / (1.0 + 1j * eta)
    c_over_a = 1.0 / (1.0 + 1j * eta)
    c = 1.0 / (v_c - 1j * k * hbar ** 2 / m)
    return {"b_over_a": b_over_a, "c_over_a": c_over_a, "c": c,
            "eta_barrier": eta}
