from dataclasses import dataclass

from rest_framework import serializers

from apps.core.serializers import SectionSerializer, StrictSerializer
from apps.fields.lib.axion import POST_BURST_FORMS, AxionParams
from apps.fields.lib.branes import BraneParams, RSParams


@dataclass(frozen=True)
class FieldSettings:
    axion: AxionParams
    rs: RSParams
    brane: BraneParams
    rs_tol: float
    probe_m: float
    probe_phi: float
    post_burst_form: str
    sweep_T_min: float
    sweep_T_max: float
    sweep_points: int
    scan_points: int


class AxionSerializer(SectionSerializer):
    domain_class = AxionParams

    m_a0 = serializers.FloatField(default=AxionParams.m_a0, help_text="Zero-temperature axion mass scale")
    lambda_qcd = serializers.FloatField(default=AxionParams.lambda_qcd, help_text="QCD scale (K)")
    f_pq_over_n = serializers.FloatField(default=AxionParams.f_pq_over_n, help_text="Peccei-Quinn scale over N")
    m = serializers.FloatField(default=AxionParams.m, help_text="Inflaton mass (m_p)")
    phi_c = serializers.FloatField(default=AxionParams.phi_c, help_text="Post-burst minimum")
    phi_star = serializers.FloatField(default=AxionParams.phi_star, help_text="Pre-burst minimum")
    T_cold = serializers.FloatField(default=AxionParams.T_cold, help_text="Temperature pinning the amplitude (K)")
    f_cold = serializers.FloatField(default=AxionParams.f_cold, help_text="Amplitude at T_cold in units of m^2")
    epsilon_plus = serializers.FloatField(default=AxionParams.epsilon_plus, help_text="Amplitude floor in units of m^2")


class RSSerializer(SectionSerializer):
    domain_class = RSParams

    K = serializers.FloatField(default=RSParams.K, help_text="First brane coupling")
    K_tilde = serializers.FloatField(default=RSParams.K_tilde, help_text="Second brane coupling")
    m5 = serializers.FloatField(default=RSParams.m5, help_text="First bulk mass")
    m5_tilde = serializers.FloatField(default=RSParams.m5_tilde, help_text="Second bulk mass")
    R_min = serializers.FloatField(default=RSParams.R_min, help_text="Search bracket lower end")
    R_max = serializers.FloatField(default=RSParams.R_max, help_text="Search bracket upper end")


class BraneSerializer(SectionSerializer):
    domain_class = BraneParams

    k5_sq = serializers.FloatField(default=BraneParams.k5_sq, help_text="5-dim gravitational coupling squared")
    v0 = serializers.FloatField(default=BraneParams.v0, help_text="Brane tension")
    lambda5 = serializers.FloatField(default=BraneParams.lambda5, help_text="Bulk vacuum energy (negative)")


class FieldsSerializer(StrictSerializer):
    """Axion, Randall-Sundrum and brane parameters plus the sweep settings of the field subcommands."""

    axion = AxionSerializer(required=False)
    rs = RSSerializer(required=False)
    brane = BraneSerializer(required=False)
    rs_tol = serializers.FloatField(default=1.0e-10, help_text="Gradient tolerance at the minimum")
    probe_m = serializers.FloatField(default=0.0, help_text="Probe mass for the brane validity check")
    probe_phi = serializers.FloatField(default=0.0, help_text="Probe field for the brane validity check")
    post_burst_form = serializers.ChoiceField(
        choices=POST_BURST_FORMS, default='bare', help_text="Post-burst quadratic: bare or massive",
    )
    sweep_T_min = serializers.FloatField(default=1.0, help_text="First temperature of the axion sweep (K)")
    sweep_T_max = serializers.FloatField(default=1.0e13, help_text="Last temperature of the axion sweep (K)")
    sweep_points = serializers.IntegerField(default=27, min_value=1, help_text="Log-spaced axion sweep points")
    scan_points = serializers.IntegerField(default=200, min_value=2, help_text="Radius scan points")

    def validate(self, data):
        if not data['rs_tol'] > 0:
            raise serializers.ValidationError({'rs_tol': ['Must be > 0.']})
        if not 0 < data['sweep_T_min'] <= data['sweep_T_max']:
            raise serializers.ValidationError({'sweep_T_min': ['Must satisfy 0 < sweep_T_min <= sweep_T_max.']})
        return data

    def build(self, validated):
        return FieldSettings(
            axion=AxionParams(**validated['axion']),
            rs=RSParams(**validated['rs']),
            brane=BraneParams(**validated['brane']),
            **{key: value for key, value in validated.items() if key not in ('axion', 'rs', 'brane')},
        )

    def create(self, validated_data):
        return self.build(validated_data)
