from dataclasses import dataclass

from rest_framework import serializers

from apps.core.serializers import SectionSerializer
from apps.info.lib.bounds import EntropyProfileParams


@dataclass(frozen=True)
class InfoSettings:
    profile: EntropyProfileParams
    energy: float
    entropy: float
    rho: float
    age_years: float
    sweep_t_min: float
    sweep_t_max: float
    sweep_points: int


class InfoSerializer(SectionSerializer):
    """
    Lloyd bound inputs (SI) and the entropy profile (Planck units).

    The entropy sweep limits are in seconds and converted with the
    configured constants.
    """

    energy = serializers.FloatField(default=1.0, help_text="Energy for the rate and refined bounds (J)")
    entropy = serializers.FloatField(default=1.0, help_text="Entropy for the memory bound (J/K)")
    rho = serializers.FloatField(default=1.0e-27, help_text="Mass density (kg/m^3)")
    age_years = serializers.FloatField(default=1.0e10, help_text="Age of the universe (yr)")
    s_tau0 = serializers.FloatField(default=EntropyProfileParams.s_tau0, help_text="Entropy density at tau0")
    tau0 = serializers.FloatField(default=EntropyProfileParams.tau0, help_text="Reference proper time (t_p)")
    k_sigma = serializers.FloatField(default=EntropyProfileParams.k_sigma, help_text="Quadratic-law coefficient")
    s_net = serializers.FloatField(default=EntropyProfileParams.s_net, help_text="Average entropy density after t_p")
    t_p = serializers.FloatField(default=EntropyProfileParams.t_p, help_text="Planck time (t_p)")
    t_cmb = serializers.FloatField(default=EntropyProfileParams.t_cmb, help_text="Time at z ~ 1100 (t_p)")
    calibrate = serializers.BooleanField(
        default=False,
        help_text="Replace k_sigma and s_tau0 with the values making the profile continuous",
    )
    sweep_t_min = serializers.FloatField(default=1.0e-45, help_text="First time of the entropy sweep (s)")
    sweep_t_max = serializers.FloatField(default=4.35e17, help_text="Last time of the entropy sweep (s)")
    sweep_points = serializers.IntegerField(default=64, min_value=1, help_text="Log-spaced entropy sweep points")

    def validate(self, data):
        data = super().validate(data)
        for name in ('energy', 'entropy', 'rho', 'age_years'):
            if not data[name] > 0:
                raise serializers.ValidationError({name: ['Must be > 0.']})
        if not 0 < data['sweep_t_min'] <= data['sweep_t_max']:
            raise serializers.ValidationError({'sweep_t_min': ['Must satisfy 0 < sweep_t_min <= sweep_t_max.']})
        return data

    def build(self, validated):
        profile = EntropyProfileParams(
            **{key: validated[key] for key in ('s_tau0', 'tau0', 'k_sigma', 's_net', 't_p', 't_cmb')}
        )
        if validated['calibrate']:
            profile = profile.calibrated()
        return InfoSettings(
            profile=profile,
            energy=validated['energy'],
            entropy=validated['entropy'],
            rho=validated['rho'],
            age_years=validated['age_years'],
            sweep_t_min=validated['sweep_t_min'],
            sweep_t_max=validated['sweep_t_max'],
            sweep_points=validated['sweep_points'],
        )
