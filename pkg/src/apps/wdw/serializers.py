from dataclasses import dataclass
from typing import Tuple

from rest_framework import serializers

from apps.core.serializers import SectionSerializer
from apps.wdw.lib.minisuperspace import WdwConfig
from apps.wdw.lib.wavefunction import ModeSpec, ScaleSpec


@dataclass(frozen=True)
class WdwSettings:
    solver: WdwConfig
    scale: ScaleSpec
    modes: Tuple[ModeSpec, ...]
    literal_argument: bool


class ModeSerializer(SectionSerializer):
    domain_class = ModeSpec

    n = serializers.IntegerField(default=ModeSpec.n, min_value=1, help_text="Mode index")
    p_n = serializers.IntegerField(default=ModeSpec.p_n, min_value=0, help_text="Excitation level")
    lambda_n = serializers.FloatField(default=None, allow_null=True, help_text="Mode eigenvalue; null means matched")
    d_n = serializers.FloatField(default=ModeSpec.d_n, help_text="Mode amplitude")


class WdwSerializer(SectionSerializer):
    """Minisuperspace solve and the product wavefunction, natural units."""

    lambda_eff = serializers.FloatField(default=WdwConfig.lambda_eff, help_text="Effective vacuum parameter")
    G = serializers.FloatField(default=WdwConfig.G, help_text="Gravitational constant")
    a_min = serializers.FloatField(default=WdwConfig.a_min, help_text="Left end of the scale-factor domain")
    a_max = serializers.FloatField(default=WdwConfig.a_max, help_text="Right end of the scale-factor domain")
    value = serializers.FloatField(default=WdwConfig.value, help_text="Psi at a_min")
    slope = serializers.FloatField(default=WdwConfig.slope, help_text="Psi' at a_min")
    tol = serializers.FloatField(default=WdwConfig.tol, help_text="Local error tolerance")
    samples = serializers.IntegerField(default=WdwConfig.samples, min_value=2, help_text="Output samples")
    p = serializers.IntegerField(default=ScaleSpec.p, min_value=0, help_text="Scale-sector Hermite degree")
    lambda_scale = serializers.FloatField(
        default=None, allow_null=True, help_text="Scale-sector eigenvalue; null means -(2p + 1)",
    )
    modes = ModeSerializer(many=True, default=list, help_text="Graviton modes")
    literal_argument = serializers.BooleanField(
        default=False, help_text="Evaluate mode eigenfunctions at n d^2 instead of sqrt(n) d",
    )

    def build(self, validated):
        solver_keys = ('lambda_eff', 'G', 'a_min', 'a_max', 'value', 'slope', 'tol', 'samples')
        return WdwSettings(
            solver=WdwConfig(**{key: validated[key] for key in solver_keys}),
            scale=ScaleSpec(p=validated['p'], lambda_scale=validated['lambda_scale']),
            modes=tuple(ModeSpec(**mode) for mode in validated['modes']),
            literal_argument=validated['literal_argument'],
        )
