"""Effective channel synthesis for every regime and architecture.

The continuous aperture is handled through the eigendecomposition of its
spatial correlation operator: the receive surface is sampled on a uniform
grid, the isotropic sinc kernel is assembled into a symmetric Nystrom matrix
(kernel times cell area), and the leading eigenvalues become the per-mode
NLoS variances.  Retained eigenvalues are rescaled so their sum equals the
number of active modes, matching the unit-average-gain budget of the
discrete baseline; the same budget is imposed on the deterministic
line-of-sight mode vector.

Spatially aligned reception concentrates the whole deterministic budget in
one real-positive mode; misaligned reception projects the spherical-wave
field of a displaced source onto the retained eigenvectors, which leaks
energy across modes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .core import (
    AlignmentKind,
    ApertureSpec,
    Architecture,
    ChannelDraw,
    RegimeKind,
    Scenario,
    ScenarioError,
)

#: Retained eigenvalues below this fraction of the leading one make the
#: sqrt-variance scaling degenerate; such scenarios are rejected outright.
EIGENVALUE_FLOOR = 1e-12

_ENERGY_TOL = 1e-10


@dataclass(frozen=True)
class ModeSpectrum:
    """Eigenvalues of the spatial correlation operator plus the LoS modes.

    ``eigenvalues`` are the per-mode NLoS variances in descending order with
    sum equal to the mode count; ``los_modes`` is the deterministic mode
    vector with squared norm equal to the mode count; ``dof_total`` is the
    aperture's spatial degree-of-freedom budget.
    """

    eigenvalues: np.ndarray = field(repr=False)
    los_modes: np.ndarray = field(repr=False)
    dof_total: int

    def __post_init__(self) -> None:
        lam = np.asarray(self.eigenvalues, dtype=float)
        los = np.asarray(self.los_modes, dtype=np.complex128)
        m = lam.size
        if los.size != m:
            raise ValueError("eigenvalues and los_modes must have equal length")
        if np.any(lam <= 0):
            raise ValueError("eigenvalues must be strictly positive")
        if np.any(np.diff(lam) > 0):
            raise ValueError("eigenvalues must be in descending order")
        if abs(float(np.sum(lam)) - m) > _ENERGY_TOL:
            raise ValueError("eigenvalues must sum to the mode count")
        if abs(float(np.sum(np.abs(los) ** 2)) - m) > _ENERGY_TOL:
            raise ValueError("los_modes must carry squared norm equal to the mode count")
        lam.setflags(write=False)
        los.setflags(write=False)
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "los_modes", los)

    @property
    def n_modes(self) -> int:
        return self.eigenvalues.size


def greens_function(r, p, wavelength: float):
    """Free-space spherical-wave response between points ``p`` and ``r``.

    ``r`` may be an (..., 3) array of field points; ``p`` is a 3-vector.
    Returns exp(-j 2 pi d / lambda) / (4 pi d) with d the point separation.
    """
    r = np.asarray(r, dtype=float)
    p = np.asarray(p, dtype=float)
    d = np.linalg.norm(r - p, axis=-1)
    if np.any(d == 0.0):
        raise ValueError("green's function is singular at zero separation")
    out = np.exp(-2j * np.pi * d / wavelength) / (4.0 * np.pi * d)
    return complex(out) if np.ndim(out) == 0 else out


def isotropic_kernel(d, wavelength: float):
    """Isotropic-scattering spatial correlation sinc(2 d / lambda)."""
    return np.sinc(2.0 * np.asarray(d, dtype=float) / wavelength)


def aperture_grid(aperture: ApertureSpec) -> tuple[np.ndarray, float]:
    """Cell-centred sampling of the aperture; returns (points, cell_area).

    Points are (G^2, 3) coordinates in the xz-plane (y = 0), centred on the
    origin.
    """
    g = aperture.grid_points_per_axis
    xs = (np.arange(g) + 0.5) * (aperture.lx_m / g) - aperture.lx_m / 2.0
    zs = (np.arange(g) + 0.5) * (aperture.lz_m / g) - aperture.lz_m / 2.0
    gx, gz = np.meshgrid(xs, zs, indexing="ij")
    pts = np.column_stack([gx.ravel(), np.zeros(g * g), gz.ravel()])
    return pts, (aperture.lx_m / g) * (aperture.lz_m / g)


def source_point(offset_deg: float, distance_m: float) -> np.ndarray:
    """Transmitter location at ``distance_m``, displaced ``offset_deg`` off broadside.

    Broadside is the +y axis; the displacement rotates towards +x within the
    horizontal plane.
    """
    th = np.deg2rad(offset_deg)
    return distance_m * np.array([np.sin(th), np.cos(th), 0.0])


def mode_spectrum(
    aperture: ApertureSpec,
    m_modes: int,
    alignment: AlignmentKind,
    source: np.ndarray,
) -> ModeSpectrum:
    """Eigen-spectrum of the sampled correlation operator plus the LoS vector.

    Keeps the ``m_modes`` largest eigenvalues of the Nystrom-discretised sinc
    kernel (rescaled to sum to ``m_modes``) and projects the phase-aligned
    spherical-wave field of ``source`` onto the retained eigenvectors.  For
    aligned reception the projection is bypassed: the combiner is matched to
    the source and the whole deterministic budget lands in mode one.
    """
    d_total = aperture.dof_limit
    if m_modes > d_total:
        raise ScenarioError(f"m_modes={m_modes} exceeds the aperture's degrees of freedom D={d_total}")
    pts, cell = aperture_grid(aperture)
    lam_wave = aperture.wavelength_m
    dists = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
    kernel = isotropic_kernel(dists, lam_wave) * cell
    n = kernel.shape[0]
    try:
        evals, evecs = scipy.linalg.eigh(kernel, subset_by_index=[n - m_modes, n - 1])
    except scipy.linalg.LinAlgError as exc:
        raise ArithmeticError(f"correlation eigendecomposition failed: {exc}") from exc
    evals = evals[::-1]
    evecs = evecs[:, ::-1]
    if evals[-1] < EIGENVALUE_FLOOR * evals[0]:
        raise ScenarioError(
            f"retained eigenvalue {evals[-1]:.3e} is below {EIGENVALUE_FLOOR:g} of the leading "
            f"one ({evals[0]:.3e}); reduce the mode count"
        )
    lam = evals * (m_modes / evals.sum())

    if alignment is AlignmentKind.ALIGNED:
        los = np.zeros(m_modes, dtype=np.complex128)
        los[0] = np.sqrt(m_modes)
    else:
        g_field = greens_function(pts, source, lam_wave)
        los = np.sqrt(cell) * (evecs.conj().T @ g_field)
        los *= np.sqrt(m_modes / np.sum(np.abs(los) ** 2))
        # The analog combiner derotates the dominant mode ahead of the ADCs.
        dominant = int(np.argmax(np.abs(los)))
        los *= np.exp(-1j * np.angle(los[dominant]))
    return ModeSpectrum(eigenvalues=lam, los_modes=los, dof_total=d_total)


def effective_model(scenario: Scenario) -> ModeSpectrum:
    """Per-scenario channel statistics shared by every Monte Carlo worker.

    The discrete iid architecture maps to unit variances and a uniform
    unit-gain LoS vector; the continuous aperture maps to its correlation
    eigen-spectrum.
    """
    n = scenario.n_branches
    if scenario.architecture is Architecture.SIMO_IID:
        return ModeSpectrum(
            eigenvalues=np.ones(n),
            los_modes=np.ones(n, dtype=np.complex128),
            dof_total=n,
        )
    assert scenario.aperture is not None
    offset = scenario.offset_deg if scenario.alignment is AlignmentKind.MISALIGNED else 0.0
    return mode_spectrum(
        scenario.aperture,
        n,
        scenario.alignment,
        source_point(offset, scenario.source_distance_m),
    )


def draw_channel(spec: ModeSpectrum, regime: RegimeKind, rng: np.random.Generator,
                 k_linear: float | None = None) -> ChannelDraw:
    """Draw one effective channel vector for the given regime.

    Rayleigh draws decorrelated complex-normal mode gains with per-mode
    variances from the spectrum (unit variances reproduce the iid discrete
    case); the Rician mixture splits the unit energy budget K:1 between the
    deterministic LoS vector and the faded part; pure LoS is deterministic.
    """
    m = spec.n_modes
    if regime is RegimeKind.PURE_LOS:
        return ChannelDraw(h=spec.los_modes.copy())
    nlos = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / np.sqrt(2.0)
    nlos *= np.sqrt(spec.eigenvalues)
    if regime is RegimeKind.RAYLEIGH:
        return ChannelDraw(h=nlos)
    if k_linear is None or k_linear < 0:
        raise ValueError("rician draws require k_linear >= 0")
    h = np.sqrt(k_linear / (k_linear + 1.0)) * spec.los_modes + np.sqrt(1.0 / (k_linear + 1.0)) * nlos
    return ChannelDraw(h=h)
