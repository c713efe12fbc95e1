"""Shared domain types: scenario description, QPSK alphabet, seeding policy.

SNR convention: the per-branch SNR is rho = P / sigma_n^2 with the transmit
power fixed to P = 1, so sigma_n^2 = 10**(-snr_db / 10).  Only the ratio
enters any formula or simulation in this package.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact

#: Unit-energy QPSK alphabet, one symbol per quadrant (Gray-labelled).
#: Index 0 -> (+1+j)/sqrt(2), 1 -> (-1+j)/sqrt(2), 2 -> (-1-j)/sqrt(2),
#: 3 -> (+1-j)/sqrt(2).  This set is also the 1-bit ADC output alphabet.
QPSK_SYMBOLS = np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]) / np.sqrt(2.0)
QPSK_SYMBOLS.setflags(write=False)


class ScenarioError(ValueError):
    """A scenario violates one of its construction-time constraints."""


class Architecture(enum.Enum):
    SIMO_IID = "simo_iid"
    CAPA = "capa"


class RegimeKind(enum.Enum):
    RAYLEIGH = "rayleigh"
    RICIAN = "rician"
    PURE_LOS = "pure_los"


class AlignmentKind(enum.Enum):
    ALIGNED = "aligned"
    MISALIGNED = "misaligned"


class Quantization(enum.Enum):
    ONE_BIT = "one_bit"
    UNQUANTIZED = "unquantized"


#: Default off-broadside displacement of the transmitter for misaligned
#: line-of-sight scenarios.  At the nominal 0.25 m^2 / 2.4 GHz geometry this
#: leaves ~77% of the deterministic energy in the dominant spatial mode.
DEFAULT_MISALIGNMENT_DEG = 3.0

#: Default transmitter range for the deterministic spherical-wave component.
#: Far-field at the geometries of interest; a config knob, not a constant of
#: the model.
DEFAULT_SOURCE_DISTANCE_M = 10.0


def qpsk_symbol(index: int) -> complex:
    """Return the unit-modulus QPSK symbol for ``index`` in {0, 1, 2, 3}."""
    if index not in (0, 1, 2, 3):
        raise ValueError(f"QPSK symbol index must be in 0..3, got {index!r}")
    return complex(QPSK_SYMBOLS[index])


@dataclass(frozen=True)
class ApertureSpec:
    """Rectangular continuous aperture in the xz-plane, centred at the origin.

    ``grid_points_per_axis`` controls the uniform sampling used to discretise
    the spatial correlation operator; the resulting cell pitch must stay at or
    below a quarter wavelength so the kernel is sampled Nyquist-dense.
    """

    lx_m: float
    lz_m: float
    carrier_freq_hz: float
    grid_points_per_axis: int = 32

    def __post_init__(self) -> None:
        if self.lx_m <= 0 or self.lz_m <= 0:
            raise ScenarioError("aperture sides lx_m, lz_m must be positive")
        if self.carrier_freq_hz <= 0:
            raise ScenarioError("carrier_freq_hz must be positive")
        if int(self.grid_points_per_axis) != self.grid_points_per_axis or self.grid_points_per_axis < 2:
            raise ScenarioError("grid_points_per_axis must be an integer >= 2")
        lam4 = self.wavelength_m / 4.0
        if self.lx_m / self.grid_points_per_axis > lam4 or self.lz_m / self.grid_points_per_axis > lam4:
            raise ScenarioError(
                "aperture grid pitch exceeds lambda/4 "
                f"(lx/{self.grid_points_per_axis}={self.lx_m / self.grid_points_per_axis:.4g} m, "
                f"lz/{self.grid_points_per_axis}={self.lz_m / self.grid_points_per_axis:.4g} m, "
                f"lambda/4={lam4:.4g} m); increase grid_points_per_axis"
            )

    @property
    def area_m2(self) -> float:
        return self.lx_m * self.lz_m

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq_hz

    @property
    def dof_limit(self) -> int:
        """Spatial degrees of freedom D = floor(A / (lambda/2)^2)."""
        return int(math.floor(self.area_m2 / (self.wavelength_m / 2.0) ** 2))


@dataclass(frozen=True)
class Scenario:
    """Complete description of one experiment.

    ``n_branches`` is the number of receive antennas for the discrete
    architecture and the number of active spatial modes for the continuous
    one.  ``snr_grid_db`` holds per-branch SNR values in dB.
    """

    architecture: Architecture
    channel_regime: RegimeKind
    n_branches: int
    snr_grid_db: tuple[float, ...]
    trials: int
    seed: int
    quantization: Quantization = Quantization.ONE_BIT
    alignment: AlignmentKind = AlignmentKind.ALIGNED
    k_linear: float | None = None
    offset_deg: float | None = None
    aperture: ApertureSpec | None = None
    source_distance_m: float = DEFAULT_SOURCE_DISTANCE_M

    def __post_init__(self) -> None:
        object.__setattr__(self, "snr_grid_db", tuple(float(v) for v in self.snr_grid_db))
        if not self.snr_grid_db:
            raise ScenarioError("snr_grid_db must be non-empty")
        if self.n_branches < 1:
            raise ScenarioError("n_branches must be >= 1")
        if self.trials < 1:
            raise ScenarioError("trials must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise ScenarioError("seed must fit an unsigned 64-bit integer")
        if self.source_distance_m <= 0:
            raise ScenarioError("source_distance_m must be positive")

        if self.channel_regime is RegimeKind.RICIAN:
            if self.k_linear is None or self.k_linear < 0:
                raise ScenarioError("rician regime requires k_linear >= 0")
        elif self.k_linear is not None:
            raise ScenarioError(
                f"k_linear only applies to the rician regime (got {self.channel_regime.value}); "
                "the pure line-of-sight limit is its own regime, not a large K"
            )

        if self.alignment is AlignmentKind.MISALIGNED:
            if self.architecture is not Architecture.CAPA:
                raise ScenarioError("misalignment is modelled for the continuous aperture only")
            if self.offset_deg is None:
                object.__setattr__(self, "offset_deg", DEFAULT_MISALIGNMENT_DEG)
        elif self.offset_deg is not None:
            raise ScenarioError("offset_deg only applies to misaligned scenarios")

        if self.architecture is Architecture.CAPA:
            if self.aperture is None:
                raise ScenarioError("capa architecture requires an aperture spec")
            d = self.aperture.dof_limit
            if self.n_branches > d:
                raise ScenarioError(
                    f"n_branches={self.n_branches} exceeds the aperture's degrees of freedom D={d} "
                    f"(A={self.aperture.area_m2:.6g} m^2, f={self.aperture.carrier_freq_hz:.6g} Hz)"
                )
        elif self.aperture is not None:
            raise ScenarioError("aperture spec only applies to the capa architecture")


@dataclass(frozen=True)
class ChannelDraw:
    """One realization of the effective per-branch complex channel vector."""

    h: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        h = np.asarray(self.h, dtype=np.complex128)
        if not np.all(np.isfinite(h.view(np.float64))):
            raise ValueError("channel draw contains non-finite entries")
        h.setflags(write=False)
        object.__setattr__(self, "h", h)


@dataclass(frozen=True)
class SepEstimate:
    """Monte Carlo SEP point with a 95% Wilson binomial interval."""

    snr_db: float
    errors: int
    trials: int
    sep: float
    ci_low: float
    ci_high: float

    def __post_init__(self) -> None:
        if self.trials < 1 or self.errors < 0 or self.errors > self.trials:
            raise ValueError("errors must lie in [0, trials], trials >= 1")
        if abs(self.sep - self.errors / self.trials) > 1e-12:
            raise ValueError("sep must equal errors/trials")
        if not (0.0 <= self.ci_low <= self.sep <= self.ci_high <= 1.0):
            raise ValueError("interval must satisfy 0 <= ci_low <= sep <= ci_high <= 1")


def derive_stream(seed: int, snr_index: int, chunk_index: int) -> np.random.Generator:
    """Return the deterministic random stream for one (seed, point, chunk) cell.

    The mapping is counter-based: the triple is fed to
    ``np.random.SeedSequence(entropy=seed, spawn_key=(snr_index, chunk_index))``
    which keys a Philox counter generator.  Streams for distinct triples are
    statistically independent, and the mapping does not depend on how many
    chunks run concurrently, so any partition of trials over workers
    reproduces the same draws.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(snr_index, chunk_index))
    return np.random.Generator(np.random.Philox(ss))


def snr_db_to_noise_var(snr_db: float) -> float:
    """Per-branch complex noise variance sigma_n^2 for unit transmit power."""
    return 10.0 ** (-snr_db / 10.0)
