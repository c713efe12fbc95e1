"""Analytical SEP expressions for the 1-bit MRC receivers.

The Rayleigh expressions build on the half-normal decision statistic: for N
iid branches the SEP is 2*E - E^2 with E = E{Q(sqrt(rho/N) * sum_i Z_i)} over
iid standard half-normal Z_i.  For unequal mode variances the weighted sum
W = sum_m sqrt(lambda_m) * Z_m is approximated by a Gamma(k, theta) variable
with matched first and second moments:

    k     = (2/pi) (sum sqrt(lambda_m))^2 / ((1 - 2/pi) sum lambda_m)
    theta = (1 - 2/pi) sum lambda_m / (sqrt(2/pi) sum sqrt(lambda_m))

so that k*theta = sqrt(2/pi) sum sqrt(lambda_m)   (mean of W)
and  k*theta^2 = (1 - 2/pi) sum lambda_m          (variance of W).

The Gamma-weighted tail integral underlying the moment-matched approximation
is accurate at low-to-moderate SNR and becomes over-optimistic above roughly
2 dB, where the Gamma tail falls off faster than the true statistic's.

Line-of-sight forms are exact: the discrete array reduces to a Bernoulli
majority vote across branches, while the phase-aligned single-mode continuous
aperture attains the unquantized coherent-combining AWGN reference.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, stats
from scipy.special import erfc, gammaln, ndtri, roots_genlaguerre

from .core import Architecture, Quantization, RegimeKind, Scenario

#: Seed for the quasi-random evaluation of the iid half-normal-sum bound.
#: Fixed so bound curves are deterministic artifacts.
BOUND_EVAL_SEED = 0x5EB0_0B57

K_IID_PER_BRANCH = (2.0 / math.pi) / (1.0 - 2.0 / math.pi)


class NumericalError(RuntimeError):
    """A quadrature did not reach its requested accuracy."""


def q_function(x):
    """Standard normal tail probability Q(x) = P(N(0,1) > x)."""
    return 0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))


@dataclass(frozen=True)
class GammaParams:
    """Shape/scale pair of the moment-matched Gamma approximation."""

    k: float
    theta: float

    def __post_init__(self) -> None:
        if not (self.k > 0 and self.theta > 0):
            raise ValueError("gamma shape and scale must be positive")


def k_iid(m: int) -> float:
    """Shape parameter of the uniform-variance baseline, ~1.75 per branch."""
    return K_IID_PER_BRANCH * m


def gamma_params(lambdas) -> GammaParams:
    """Moment-matched (k, theta) for the weighted half-normal sum."""
    lam = np.asarray(lambdas, dtype=float)
    if lam.size == 0 or np.any(lam <= 0):
        raise ValueError("mode variances must be a non-empty positive vector")
    s_sqrt = float(np.sum(np.sqrt(lam)))
    s_lin = float(np.sum(lam))
    c = 2.0 / math.pi
    k = c * s_sqrt**2 / ((1.0 - c) * s_lin)
    theta = (1.0 - c) * s_lin / (math.sqrt(c) * s_sqrt)
    return GammaParams(k=k, theta=theta)


def _laguerre_value(k: float, theta: float, coeff: float, order: int) -> float:
    # Generalized Gauss-Laguerre with weight t^(k-1) e^-t absorbs the Gamma
    # density exactly; log-space division by Gamma(k) keeps large k safe.
    nodes, weights = roots_genlaguerre(order, k - 1.0)
    good = weights > 0
    logw = np.log(weights[good]) - gammaln(k)
    return float(np.sum(np.exp(logw) * q_function(coeff * theta * nodes[good])))


def mma_integral(lambdas, rho: float, m: int) -> float:
    """Gamma-weighted Gaussian tail integral of the moment-matched model.

    Evaluates ``int_0^inf Q(sqrt(rho/m) w) pdf_Gamma(w; k, theta) dw`` by
    generalized Gauss-Laguerre quadrature, doubling the order from 64 until
    two successive orders agree to 1e-8 (absolute).  Falls back to adaptive
    quadrature if the rule fails to settle.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    params = gamma_params(lambdas)
    coeff = math.sqrt(rho / m)
    prev = _laguerre_value(params.k, params.theta, coeff, 64)
    for order in (128, 256, 512):
        cur = _laguerre_value(params.k, params.theta, coeff, order)
        if abs(cur - prev) <= 1e-8:
            return cur
        prev = cur
    dist = stats.gamma(a=params.k, scale=params.theta)
    val, err = integrate.quad(lambda w: q_function(coeff * w) * dist.pdf(w), 0.0, np.inf, limit=200)
    if err > 1e-8:
        raise NumericalError(
            f"tail integral did not converge: laguerre residual {abs(cur - prev):.2e}, "
            f"adaptive error {err:.2e} (k={params.k:.4g}, theta={params.theta:.4g}, rho={rho:.4g})"
        )
    return float(val)


def capa_rayleigh_sep_mma(lambdas, rho: float) -> float:
    """Moment-matched SEP approximation for the correlated-mode Rayleigh case."""
    lam = np.asarray(lambdas, dtype=float)
    i_lam = mma_integral(lam, rho, lam.size)
    return 2.0 * i_lam - i_lam**2


def _half_normal_q_mean(n: int, rho: float, samples: int, seed: int) -> tuple[float, float]:
    """Quasi-random E{Q(sqrt(rho/n) sum Z_i)} with a replicate-based std error.

    Uses 16 independently scrambled Sobol replicates; ``samples`` is rounded
    up so each replicate holds a power-of-two number of points.
    """
    n_rep = 16
    m = max(int(math.ceil(math.log2(max(samples, n_rep) / n_rep))), 4)
    coeff = math.sqrt(rho / n)
    means = np.empty(n_rep)
    seeds = np.random.SeedSequence(entropy=seed, spawn_key=(n,)).spawn(n_rep)
    for r in range(n_rep):
        sob = stats.qmc.Sobol(d=n, scramble=True, seed=np.random.default_rng(seeds[r]))
        u = sob.random_base2(m)
        z = ndtri(0.5 * (1.0 + u))  # inverse CDF of |N(0,1)| per coordinate
        means[r] = float(np.mean(q_function(coeff * z.sum(axis=1))))
    mean = float(np.mean(means))
    stderr = float(np.std(means, ddof=1) / math.sqrt(n_rep))
    return mean, stderr


def simo_rayleigh_sep_exact(n: int, rho: float, samples: int = 10**6, *, seed: int = BOUND_EVAL_SEED) -> float:
    """Exact 1-bit MRC SEP under iid Rayleigh fading, evaluated numerically.

    2*E - E^2 where E = E{Q(sqrt(rho/n) * sum_{i<=n} Z_i)} over iid standard
    half-normal Z_i; the expectation has no closed form and is averaged over
    scrambled quasi-random half-normal vectors, deterministic for a given
    ``seed``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if rho <= 0:
        raise ValueError("rho must be positive")
    e, _ = _half_normal_q_mean(n, rho, samples, seed)
    return 2.0 * e - e**2


def simo_rayleigh_sep_exact_stderr(n: int, rho: float, samples: int = 10**6, *, seed: int = BOUND_EVAL_SEED) -> tuple[float, float]:
    """Same as :func:`simo_rayleigh_sep_exact` but returns (sep, std_error)."""
    e, se = _half_normal_q_mean(n, rho, samples, seed)
    return 2.0 * e - e**2, 2.0 * abs(1.0 - e) * se


def simo_los_sep(n: int, rho: float) -> float:
    """Exact 1-bit SEP for the uniform-gain line-of-sight discrete array.

    Per real dimension the array is a majority vote over n independent
    Bernoulli(p0) branch decisions with p0 = Q(sqrt(rho)); an even-n tie
    contributes with weight 1/2 under the symmetric symbol prior.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if rho <= 0:
        raise ValueError("rho must be positive")
    p0 = float(q_function(math.sqrt(rho)))
    p_err = sum(
        math.comb(n, l) * p0**l * (1.0 - p0) ** (n - l)
        for l in range(n // 2 + 1, n + 1)
    )
    if n % 2 == 0:
        p_err += 0.5 * math.comb(n, n // 2) * p0 ** (n // 2) * (1.0 - p0) ** (n // 2)
    return 2.0 * p_err - p_err**2


def capa_los_sep(m: int, rho: float) -> float:
    """Exact SEP of the phase-aligned single-mode continuous aperture.

    All deterministic energy sits in one real-positive mode of power m, so
    the 1-bit receiver attains the unquantized AWGN value 2p - p^2 with
    p = Q(sqrt(m * rho)).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if rho <= 0:
        raise ValueError("rho must be positive")
    p = float(q_function(math.sqrt(m * rho)))
    return 2.0 * p - p**2


def unquantized_awgn_sep(n: int, rho: float) -> float:
    """Unquantized coherent-combining QPSK reference: 2Q(sqrt(n rho)) - Q^2."""
    return capa_los_sep(n, rho)


class BoundKind(enum.Enum):
    SIMO_RAYLEIGH_EXACT = "simo_rayleigh_exact"
    CAPA_MMA_GAMMA = "capa_mma_gamma"
    SIMO_LOS_BINOMIAL = "simo_los_binomial"
    CAPA_LOS_AWGN = "capa_los_awgn"
    UNQUANTIZED_AWGN_REF = "unquantized_awgn_ref"


@dataclass(frozen=True)
class BoundCurve:
    """One analytical SEP curve over an SNR grid."""

    kind: BoundKind
    points: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        seps = [sep for _, sep in self.points]
        if any(not (0.0 <= s <= 0.75 + 1e-12) for s in seps):
            raise ValueError("SEP values must lie in [0, 3/4]")
        if any(b > a + 1e-12 for a, b in zip(seps, seps[1:])):
            raise ValueError("SEP must be non-increasing in SNR")

    @property
    def snr_db(self) -> np.ndarray:
        return np.array([s for s, _ in self.points])

    @property
    def sep(self) -> np.ndarray:
        return np.array([p for _, p in self.points])


class UnsupportedBound(ValueError):
    """No analytical curve exists for the requested scenario/kind pairing."""


def applicable_bound_kinds(scenario: Scenario) -> list[BoundKind]:
    """Bound kinds that have a defined analytical form for this scenario."""
    if scenario.channel_regime is RegimeKind.RICIAN:
        return []
    if scenario.channel_regime is RegimeKind.PURE_LOS:
        return [BoundKind.SIMO_LOS_BINOMIAL, BoundKind.CAPA_LOS_AWGN, BoundKind.UNQUANTIZED_AWGN_REF]
    if scenario.architecture is Architecture.CAPA:
        return [BoundKind.CAPA_MMA_GAMMA, BoundKind.SIMO_RAYLEIGH_EXACT]
    return [BoundKind.SIMO_RAYLEIGH_EXACT]


def evaluate_bound(kind: BoundKind, scenario: Scenario, *, lambdas=None,
                   exact_samples: int = 10**6) -> BoundCurve:
    """Evaluate one bound kind over the scenario's SNR grid.

    ``lambdas`` (the mode-variance vector) is required for the
    moment-matched Gamma curve and ignored otherwise.
    """
    if kind not in applicable_bound_kinds(scenario):
        regime = scenario.channel_regime.value
        if scenario.channel_regime is RegimeKind.RICIAN:
            raise UnsupportedBound(
                "no closed-form 1-bit SEP bound exists for rician scenarios; run a simulation sweep instead"
            )
        raise UnsupportedBound(f"bound kind {kind.value} is not defined for a {regime} scenario")
    n = scenario.n_branches
    points = []
    for snr_db in scenario.snr_grid_db:
        rho = 10.0 ** (snr_db / 10.0)
        if kind is BoundKind.SIMO_RAYLEIGH_EXACT:
            sep = simo_rayleigh_sep_exact(n, rho, exact_samples)
        elif kind is BoundKind.CAPA_MMA_GAMMA:
            if lambdas is None:
                raise ValueError("the moment-matched gamma curve needs the mode-variance vector")
            sep = capa_rayleigh_sep_mma(lambdas, rho)
        elif kind is BoundKind.SIMO_LOS_BINOMIAL:
            sep = simo_los_sep(n, rho)
        elif kind is BoundKind.CAPA_LOS_AWGN:
            sep = capa_los_sep(n, rho)
        else:
            sep = unquantized_awgn_sep(n, rho)
        points.append((float(snr_db), float(sep)))
    return BoundCurve(kind=kind, points=tuple(points))
