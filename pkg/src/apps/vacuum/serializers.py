from dataclasses import dataclass

from rest_framework import serializers

from apps.core.serializers import SectionSerializer
from apps.vacuum.lib.vacuum_energy import LambdaModel


@dataclass(frozen=True)
class VacuumSettings:
    model: LambdaModel
    sweep_T_min: float
    sweep_T_max: float
    sweep_points: int


class LambdaModelSerializer(SectionSerializer):
    """Temperature laws of the vacuum-energy parameter. None of these are fixed by the model; all are calibrated defaults."""

    c1 = serializers.FloatField(default=LambdaModel.c1, help_text="5-dim coupling, |lambda_5| = c1 / T^alpha")
    c2 = serializers.FloatField(default=LambdaModel.c2, help_text="4-dim coupling, lambda_4 = c2 * T^beta")
    alpha = serializers.FloatField(default=LambdaModel.alpha, help_text="5-dim temperature exponent")
    beta = serializers.FloatField(default=LambdaModel.beta, help_text="4-dim temperature exponent")
    T_quantum = serializers.FloatField(default=LambdaModel.T_quantum, help_text="Quantum gravity threshold (K)")
    T_park = serializers.FloatField(default=LambdaModel.T_park, help_text="Temperature inside the Park maximum (K)")
    lambda_barvinsky_cap = serializers.FloatField(
        default=LambdaModel.lambda_barvinsky_cap,
        help_text="Post-burst cap in units of m_p^2",
    )
    sweep_T_min = serializers.FloatField(default=1.0e20, help_text="First temperature of the default lambda sweep (K)")
    sweep_T_max = serializers.FloatField(default=1.0e35, help_text="Last temperature of the default lambda sweep (K)")
    sweep_points = serializers.IntegerField(default=16, min_value=1, help_text="Log-spaced sweep points")

    def validate(self, data):
        data = super().validate(data)
        if not 0 < data['sweep_T_min'] <= data['sweep_T_max']:
            raise serializers.ValidationError({'sweep_T_min': ['Must satisfy 0 < sweep_T_min <= sweep_T_max.']})
        return data

    def build(self, validated):
        sweep = {key: validated[key] for key in ('sweep_T_min', 'sweep_T_max', 'sweep_points')}
        model = LambdaModel(**{key: value for key, value in validated.items() if key not in sweep})
        return VacuumSettings(model=model, **sweep)
