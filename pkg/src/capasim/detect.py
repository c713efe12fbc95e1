"""1-bit quantizer, MRC detectors, and per-trial symbol-error adjudication.

Sign convention: sgn(0) = +1 throughout.  The event has probability zero
under continuous noise but must be pinned for reproducibility; with the
symmetric symbol prior it also realises the half-weight tie term of the
majority-vote analysis without explicit randomisation.

The receiver has perfect channel knowledge at the digital combiner.
"""

from __future__ import annotations

import numpy as np

from .core import QPSK_SYMBOLS, Quantization, RegimeKind, Scenario, ChannelDraw, snr_db_to_noise_var
from .channel import ModeSpectrum

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def quantize_1bit(z):
    """Per-entry 1-bit ADC: (sgn(Re z) + j sgn(Im z)) / sqrt(2), sgn(0) = +1.

    Total on complex scalars and arrays; the output alphabet equals the QPSK
    alphabet.
    """
    z = np.asarray(z)
    out = (np.where(z.real >= 0.0, _INV_SQRT2, -_INV_SQRT2)
           + 1j * np.where(z.imag >= 0.0, _INV_SQRT2, -_INV_SQRT2))
    return complex(out) if out.ndim == 0 else out


def symbol_index(z):
    """QPSK index of the quadrant of ``z`` (boundaries resolve as sgn(0)=+1)."""
    z = np.asarray(z)
    re = z.real >= 0.0
    im = z.imag >= 0.0
    idx = np.where(im, np.where(re, 0, 1), np.where(re, 3, 2))
    return int(idx) if idx.ndim == 0 else idx


def mrc_detect(h, y_tilde) -> int:
    """MRC-and-slice detection on a quantized observation vector.

    Forms the inner product h^H y_tilde and returns the QPSK index of its
    quadrant, i.e. the sign pair of the real/imaginary decision statistics.
    """
    h = np.asarray(h, dtype=np.complex128)
    y_tilde = np.asarray(y_tilde, dtype=np.complex128)
    if h.shape != y_tilde.shape:
        raise ValueError(f"shape mismatch: h {h.shape} vs y {y_tilde.shape}")
    return int(symbol_index(np.vdot(h, y_tilde)))


def unquantized_mrc_detect(h, y) -> int:
    """Maximum-likelihood QPSK detection on the linear observation model.

    For QPSK the ML rule reduces to the quadrant of h^H y, so this shares the
    slicer with the quantized path and is invariant to positive scaling of h.
    """
    return mrc_detect(h, y)


def run_trial(scenario: Scenario, snr_db: float, draw: ChannelDraw, rng: np.random.Generator) -> bool:
    """Simulate one symbol: returns True when the detected symbol is wrong.

    Draws a uniform QPSK symbol, forms y = h s + noise with per-branch
    complex noise variance set by ``snr_db``, applies the scenario's
    quantization path, and compares the MRC decision to the transmitted
    index.
    """
    idx = int(rng.integers(0, 4))
    s = QPSK_SYMBOLS[idx]
    h = draw.h
    sigma = np.sqrt(snr_db_to_noise_var(snr_db))
    noise = sigma * _INV_SQRT2 * (rng.standard_normal(h.size) + 1j * rng.standard_normal(h.size))
    y = h * s + noise
    if scenario.quantization is Quantization.ONE_BIT:
        detected = mrc_detect(h, quantize_1bit(y))
    else:
        detected = unquantized_mrc_detect(h, y)
    return detected != idx


def simulate_chunk(
    spec: ModeSpectrum,
    regime: RegimeKind,
    k_linear: float | None,
    one_bit: bool,
    noise_var: float,
    n_trials: int,
    rng: np.random.Generator,
) -> int:
    """Vectorised batch of independent trials; returns the symbol-error count.

    This is the hot path of the Monte Carlo engine and is the batched
    equivalent of :func:`run_trial`: per trial it draws the symbol, the
    channel for the regime, and the noise, in that fixed order, so a chunk's
    count depends only on its own stream.
    """
    m = spec.n_modes
    idx = rng.integers(0, 4, n_trials)
    s = QPSK_SYMBOLS[idx]

    if regime is RegimeKind.PURE_LOS:
        h = np.broadcast_to(spec.los_modes, (n_trials, m))
    else:
        h = (rng.standard_normal((n_trials, m)) + 1j * rng.standard_normal((n_trials, m)))
        h *= np.sqrt(spec.eigenvalues / 2.0)
        if regime is RegimeKind.RICIAN:
            h *= np.sqrt(1.0 / (k_linear + 1.0))
            h += np.sqrt(k_linear / (k_linear + 1.0)) * spec.los_modes

    sigma_dim = np.sqrt(noise_var / 2.0)
    y = h * s[:, None]
    y += sigma_dim * (rng.standard_normal((n_trials, m)) + 1j * rng.standard_normal((n_trials, m)))

    if one_bit:
        y = (np.where(y.real >= 0.0, _INV_SQRT2, -_INV_SQRT2)
             + 1j * np.where(y.imag >= 0.0, _INV_SQRT2, -_INV_SQRT2))
    z = np.einsum("ij,ij->i", h.conj(), y)
    return int(np.count_nonzero(symbol_index(z) != idx))
