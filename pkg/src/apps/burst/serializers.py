from rest_framework import serializers

from apps.burst.lib.graviton import EFFECTIVE_FREQUENCIES, OMEGA_NET_MODES, BurstConfig
from apps.core.serializers import SectionSerializer, open_unit_interval


class BurstConfigSerializer(SectionSerializer):
    """
    Burst table inputs.

    Leaving omega_lo and omega_hi null makes the occupation band follow the
    temperature. The window settings produce the spike; set normalization to
    false for the bare band-averaged occupation.
    """

    domain_class = BurstConfig

    T_star = serializers.FloatField(default=BurstConfig.T_star, help_text="Reference temperature (K)")
    L_hat = serializers.FloatField(default=None, allow_null=True, help_text="Rod length (m); null means l_p")
    m_graviton = serializers.FloatField(default=BurstConfig.m_graviton, help_text="Graviton mass (kg)")
    omega_lo = serializers.FloatField(default=None, allow_null=True, help_text="Lower band edge (1/t_p)")
    omega_hi = serializers.FloatField(default=None, allow_null=True, help_text="Upper band edge (1/t_p)")
    omega_lo_fraction = serializers.FloatField(
        default=BurstConfig.omega_lo_fraction, help_text="Lower edge as a fraction of T when unset",
    )
    omega_hi_multiple = serializers.FloatField(
        default=BurstConfig.omega_hi_multiple, help_text="Upper edge as a multiple of T when unset",
    )
    n_plus = serializers.FloatField(default=BurstConfig.n_plus, help_text="N+ in the open interval (0, 1)")
    quadrature_tol = serializers.FloatField(default=BurstConfig.quadrature_tol, help_text="Relative quadrature tolerance")
    omega_net_mode = serializers.ChoiceField(
        choices=OMEGA_NET_MODES, default=BurstConfig.omega_net_mode,
        help_text="Band normalization: omega_hi - omega_lo or omega_hi",
    )
    effective_frequency = serializers.ChoiceField(
        choices=EFFECTIVE_FREQUENCIES, default=BurstConfig.effective_frequency,
        help_text="Power frequency: occupation times E_critical / hbar, or times the band width",
    )
    normalization = serializers.BooleanField(default=BurstConfig.normalization, help_text="Apply the burst window")
    normalization_scale = serializers.FloatField(
        default=BurstConfig.normalization_scale, help_text="Overall occupation scale",
    )
    burst_temperature = serializers.FloatField(
        default=BurstConfig.burst_temperature, help_text="Centre of the burst window (K)",
    )
    window_sigma = serializers.FloatField(default=BurstConfig.window_sigma, help_text="Window width in ln T")
    power_threshold_fraction = serializers.FloatField(
        default=BurstConfig.power_threshold_fraction,
        help_text="Occupations below this fraction of the peak report zero power",
    )

    def validate_n_plus(self, value):
        return open_unit_interval(value)
