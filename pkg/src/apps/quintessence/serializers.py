from dataclasses import dataclass

from rest_framework import serializers

from apps.core.serializers import SectionSerializer, StrictSerializer
from apps.quintessence.lib.eom import EomParams, RegimeThresholds


@dataclass(frozen=True)
class QuintessenceSettings:
    template: EomParams
    thresholds: RegimeThresholds
    phi0: float
    phidot0: float
    t_end: float
    f_case_iv: float
    rtol: float
    atol: float
    samples: int
    T_min: float
    T_max: float
    points: int
    rel_tol: float


class EomSerializer(SectionSerializer):
    """Equation-of-motion template; T in Kelvin, the rest in Planck units."""

    domain_class = EomParams

    c_tilde = serializers.FloatField(default=EomParams.c_tilde, help_text="Baryon coupling strength")
    M = serializers.FloatField(default=EomParams.M, help_text="Mass scale (m_p)")
    g_b = serializers.FloatField(default=EomParams.g_b, help_text="Baryonic degrees of freedom")
    T = serializers.FloatField(default=EomParams.T, help_text="Temperature (K)")
    H = serializers.FloatField(default=EomParams.H, help_text="Hubble rate, held fixed (1/t_p)")
    m = serializers.FloatField(default=EomParams.m, help_text="Inflaton mass (m_p)")
    f_axion = serializers.FloatField(default=EomParams.f_axion, help_text="Axion contribution f[m_axion(T)]")
    phi_c = serializers.FloatField(default=EomParams.phi_c, help_text="Post-burst field minimum")


class ThresholdsSerializer(SectionSerializer):
    domain_class = RegimeThresholds

    T_low = serializers.FloatField(default=RegimeThresholds.T_low, help_text="Slow roll below this temperature (K)")
    T_high = serializers.FloatField(default=RegimeThresholds.T_high, help_text="Hot cases at or above this temperature (K)")
    c_small = serializers.FloatField(default=RegimeThresholds.c_small, help_text="Largest coupling counted as small")
    f_negligible = serializers.FloatField(
        default=RegimeThresholds.f_negligible, help_text="Axion amplitude below this times m^2 is negligible",
    )
    t_slow_roll = serializers.FloatField(
        default=None, allow_null=True, help_text="Slow roll from this time on (t_p); null disables",
    )


class QuintessenceSerializer(StrictSerializer):
    """Template, case thresholds, integration tolerances and the bifurcation grid."""

    eom = EomSerializer(required=False)
    thresholds = ThresholdsSerializer(required=False)
    phi0 = serializers.FloatField(default=1.0, help_text="Initial field")
    phidot0 = serializers.FloatField(default=0.0, help_text="Initial field velocity")
    t_end = serializers.FloatField(default=50.0, help_text="Integration end time (t_p)")
    f_case_iv = serializers.FloatField(default=0.01, min_value=0.0, help_text="Axion amplitude used by case IV")
    rtol = serializers.FloatField(default=1.0e-10, help_text="Relative local error tolerance")
    atol = serializers.FloatField(default=1.0e-12, help_text="Absolute local error tolerance")
    samples = serializers.IntegerField(default=501, min_value=2, help_text="Output samples per trajectory")
    T_min = serializers.FloatField(default=1.0e28, help_text="Bifurcation grid start (K)")
    T_max = serializers.FloatField(default=1.0e32, help_text="Bifurcation grid end (K)")
    points = serializers.IntegerField(default=200, min_value=1, help_text="Log-spaced bifurcation grid points")
    rel_tol = serializers.FloatField(default=1.0e-6, help_text="Relative bisection tolerance on T_crit")

    def validate(self, data):
        for name in ('t_end', 'rtol', 'atol', 'rel_tol'):
            if not data[name] > 0:
                raise serializers.ValidationError({name: ['Must be > 0.']})
        if not 0 < data['T_min'] <= data['T_max']:
            raise serializers.ValidationError({'T_min': ['Must satisfy 0 < T_min <= T_max.']})
        return data

    def build(self, validated):
        return QuintessenceSettings(
            template=EomParams(**validated['eom']),
            thresholds=RegimeThresholds(**validated['thresholds']),
            **{key: value for key, value in validated.items() if key not in ('eom', 'thresholds')},
        )

    def create(self, validated_data):
        return self.build(validated_data)
