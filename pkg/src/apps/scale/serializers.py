from dataclasses import dataclass

from rest_framework import serializers

from apps.core.serializers import SectionSerializer
from apps.scale.lib.dynamics import EPSILON_CAUSAL, DensityParams


@dataclass(frozen=True)
class ScaleSettings:
    density: DensityParams
    dt: float
    alpha: float
    epsilon_causal: float
    lambda_min: float
    lambda_max: float
    points: int
    t: float


class ScaleSerializer(SectionSerializer):
    """Densities, stepping and causal-scan settings, all in natural Planck units."""

    rho_rel0 = serializers.FloatField(default=DensityParams.rho_rel0, min_value=0.0, help_text="Radiation density today")
    rho_m0 = serializers.FloatField(default=DensityParams.rho_m0, min_value=0.0, help_text="Matter density today")
    a0 = serializers.FloatField(default=DensityParams.a0, help_text="Scale factor today")
    lam = serializers.FloatField(default=DensityParams.lam, help_text="Vacuum-energy parameter")
    G = serializers.FloatField(default=DensityParams.G, help_text="Gravitational constant")
    dt = serializers.FloatField(default=1.0, help_text="Time step (t_p)")
    alpha = serializers.FloatField(default=10.0, min_value=0.0, help_text="Decade exponent, a0 / a(t*) = 10^alpha")
    epsilon_causal = serializers.FloatField(default=EPSILON_CAUSAL, help_text="Bound at or below which the ordering breaks")
    lambda_min = serializers.FloatField(default=1.0e50, help_text="Lower end of the causal scan")
    lambda_max = serializers.FloatField(default=1.0e70, help_text="Upper end of the causal scan")
    points = serializers.IntegerField(default=10000, min_value=1, help_text="Log-spaced causal scan points")
    t = serializers.FloatField(default=1.0, help_text="Time at which the scale polynomial is built")

    def validate(self, data):
        data = super().validate(data)
        if not data['dt'] > 0:
            raise serializers.ValidationError({'dt': ['Must be > 0.']})
        if not 0 < data['lambda_min'] <= data['lambda_max']:
            raise serializers.ValidationError({'lambda_min': ['Must satisfy 0 < lambda_min <= lambda_max.']})
        return data

    def build(self, validated):
        density = DensityParams(**{key: validated[key] for key in ('rho_rel0', 'rho_m0', 'a0', 'lam', 'G')})
        return ScaleSettings(
            density=density,
            dt=validated['dt'],
            alpha=validated['alpha'],
            epsilon_causal=validated['epsilon_causal'],
            lambda_min=validated['lambda_min'],
            lambda_max=validated['lambda_max'],
            points=validated['points'],
            t=validated['t'],
        )
