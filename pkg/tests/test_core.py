import numpy as np
import pytest

from capasim.core import (
    AlignmentKind,
    ApertureSpec,
    Architecture,
    ChannelDraw,
    Quantization,
    QPSK_SYMBOLS,
    RegimeKind,
    Scenario,
    ScenarioError,
    SepEstimate,
    derive_stream,
    qpsk_symbol,
    snr_db_to_noise_var,
)


def make_scenario(**overrides):
    base = dict(
        architecture=Architecture.SIMO_IID,
        channel_regime=RegimeKind.RAYLEIGH,
        n_branches=8,
        snr_grid_db=(-10.0, 0.0, 10.0),
        trials=1000,
        seed=42,
    )
    base.update(overrides)
    return Scenario(**base)


NOMINAL_APERTURE = ApertureSpec(lx_m=0.5, lz_m=0.5, carrier_freq_hz=2.4e9)
MIN_APERTURE = ApertureSpec(
    lx_m=0.17677669529663687, lz_m=0.17677669529663687, carrier_freq_hz=2.4e9
)


class TestQpskSymbol:
    def test_index_zero_is_first_quadrant(self):
        assert qpsk_symbol(0) == pytest.approx((1 + 1j) / np.sqrt(2))

    def test_unit_modulus(self):
        for i in range(4):
            assert abs(qpsk_symbol(i)) == pytest.approx(1.0, abs=1e-15)

    def test_one_symbol_per_quadrant(self):
        syms = [qpsk_symbol(i) for i in range(4)]
        assert len(set(syms)) == 4
        quadrants = {(s.real > 0, s.imag > 0) for s in syms}
        assert len(quadrants) == 4

    def test_alphabet_matches_quantizer_outputs(self):
        parts = {(round(s.real, 12), round(s.imag, 12)) for s in QPSK_SYMBOLS}
        v = 1 / np.sqrt(2)
        expected = {(round(a * v, 12), round(b * v, 12)) for a in (1, -1) for b in (1, -1)}
        assert parts == expected

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            qpsk_symbol(4)
        with pytest.raises(ValueError):
            qpsk_symbol(-1)


class TestDeriveStream:
    def test_same_triple_gives_identical_stream(self):
        a = derive_stream(123, 4, 5).integers(0, 2**63, 32)
        b = derive_stream(123, 4, 5).integers(0, 2**63, 32)
        assert np.array_equal(a, b)

    def test_distinct_chunks_share_no_prefix(self):
        a = derive_stream(9, 0, 0).integers(0, 2**63, 16)
        b = derive_stream(9, 0, 1).integers(0, 2**63, 16)
        assert a[0] != b[0]
        assert not np.array_equal(a, b)

    def test_distinct_snr_points_share_no_prefix(self):
        a = derive_stream(9, 0, 0).integers(0, 2**63, 16)
        b = derive_stream(9, 1, 0).integers(0, 2**63, 16)
        assert a[0] != b[0]


class TestApertureSpec:
    def test_dof_limits_at_reference_geometries(self):
        assert NOMINAL_APERTURE.dof_limit == 64
        assert MIN_APERTURE.dof_limit == 8

    def test_mode_budget_fractions(self):
        assert 8 / NOMINAL_APERTURE.dof_limit == pytest.approx(0.125)
        assert 8 / MIN_APERTURE.dof_limit == pytest.approx(1.0)

    def test_rejects_coarse_grid(self):
        # 0.5 m / 2 = 0.25 m pitch >> lambda/4 at 2.4 GHz
        with pytest.raises(ScenarioError, match="lambda/4"):
            ApertureSpec(lx_m=0.5, lz_m=0.5, carrier_freq_hz=2.4e9, grid_points_per_axis=2)

    def test_rejects_nonpositive_dimensions(self):
        with pytest.raises(ScenarioError):
            ApertureSpec(lx_m=0.0, lz_m=0.5, carrier_freq_hz=2.4e9)
        with pytest.raises(ScenarioError):
            ApertureSpec(lx_m=0.5, lz_m=0.5, carrier_freq_hz=-1.0)


class TestScenarioValidation:
    def test_capa_rejects_more_modes_than_dof(self):
        with pytest.raises(ScenarioError, match="degrees of freedom"):
            make_scenario(
                architecture=Architecture.CAPA,
                aperture=MIN_APERTURE,
                n_branches=9,
            )

    def test_capa_accepts_full_dof_budget(self):
        sc = make_scenario(architecture=Architecture.CAPA, aperture=MIN_APERTURE, n_branches=8)
        assert sc.aperture.dof_limit == 8

    def test_capa_requires_aperture(self):
        with pytest.raises(ScenarioError, match="aperture"):
            make_scenario(architecture=Architecture.CAPA)

    def test_simo_rejects_aperture(self):
        with pytest.raises(ScenarioError, match="aperture"):
            make_scenario(aperture=NOMINAL_APERTURE)

    def test_rician_requires_k(self):
        with pytest.raises(ScenarioError, match="k_linear"):
            make_scenario(channel_regime=RegimeKind.RICIAN)

    def test_pure_los_is_not_a_large_k(self):
        with pytest.raises(ScenarioError, match="k_linear"):
            make_scenario(channel_regime=RegimeKind.PURE_LOS, k_linear=1e9)

    def test_misaligned_needs_capa(self):
        with pytest.raises(ScenarioError, match="misalignment"):
            make_scenario(
                channel_regime=RegimeKind.PURE_LOS,
                alignment=AlignmentKind.MISALIGNED,
            )

    def test_misaligned_default_offset(self):
        sc = make_scenario(
            architecture=Architecture.CAPA,
            aperture=NOMINAL_APERTURE,
            channel_regime=RegimeKind.PURE_LOS,
            alignment=AlignmentKind.MISALIGNED,
        )
        assert sc.offset_deg == 3.0

    def test_offset_rejected_when_aligned(self):
        with pytest.raises(ScenarioError, match="offset_deg"):
            make_scenario(offset_deg=3.0)

    def test_empty_grid_rejected(self):
        with pytest.raises(ScenarioError, match="snr_grid_db"):
            make_scenario(snr_grid_db=())

    def test_trials_bound(self):
        with pytest.raises(ScenarioError, match="trials"):
            make_scenario(trials=0)

    def test_seed_range(self):
        with pytest.raises(ScenarioError, match="seed"):
            make_scenario(seed=2**64)
        make_scenario(seed=2**64 - 1)


class TestSmallTypes:
    def test_channel_draw_rejects_nan(self):
        with pytest.raises(ValueError):
            ChannelDraw(h=np.array([1.0 + 0j, np.nan + 0j]))

    def test_channel_draw_immutable(self):
        d = ChannelDraw(h=np.ones(4, dtype=complex))
        with pytest.raises(ValueError):
            d.h[0] = 0

    def test_sep_estimate_consistency(self):
        SepEstimate(snr_db=0.0, errors=5, trials=100, sep=0.05, ci_low=0.01, ci_high=0.12)
        with pytest.raises(ValueError):
            SepEstimate(snr_db=0.0, errors=5, trials=100, sep=0.06, ci_low=0.01, ci_high=0.12)
        with pytest.raises(ValueError):
            SepEstimate(snr_db=0.0, errors=5, trials=100, sep=0.05, ci_low=0.06, ci_high=0.12)

    def test_noise_var_convention(self):
        assert snr_db_to_noise_var(0.0) == pytest.approx(1.0)
        assert snr_db_to_noise_var(10.0) == pytest.approx(0.1)
        assert snr_db_to_noise_var(-10.0) == pytest.approx(10.0)
