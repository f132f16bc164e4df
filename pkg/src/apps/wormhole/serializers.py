from dataclasses import dataclass

from rest_framework import serializers

from apps.core.lib.units import T_QUANTUM
from apps.core.serializers import SectionSerializer
from apps.wormhole.lib.bridge import BridgeConfig, MetricParams


@dataclass(frozen=True)
class WormholeSettings:
    bridge: BridgeConfig
    metric: MetricParams
    T_max: float


class WormholeSerializer(SectionSerializer):
    """
    Bridge wavefunctional and shell metric.

    C1 and C2 are the even-in-time cyclic defaults; other coefficient
    functions are only reachable from Python.
    """

    A = serializers.FloatField(default=BridgeConfig.A, help_text="Bridge amplitude constant")
    omega = serializers.FloatField(default=BridgeConfig.omega, help_text="Bridge frequency (1/t_p)")
    time_samples = serializers.IntegerField(
        default=BridgeConfig.time_samples, min_value=3,
        help_text="Points of the [-t_p, t_p] grid used by the domination and symmetry checks",
    )
    domination_threshold = serializers.FloatField(
        default=BridgeConfig.domination_threshold,
        help_text="Minimum dominant-to-subdominant term ratio",
    )
    M = serializers.FloatField(default=MetricParams.M, help_text="Shell mass (m_p)")
    Q = serializers.FloatField(default=MetricParams.Q, help_text="Shell charge (Planck units)")
    r_shell = serializers.FloatField(default=MetricParams.r_shell, help_text="Shell radius (l_p)")
    T_max = serializers.FloatField(default=T_QUANTUM, help_text="Chain temperature (K)")

    def validate_T_max(self, value):
        if not value > 0:
            raise serializers.ValidationError('Must be > 0.')
        return value

    def build(self, validated):
        bridge = BridgeConfig(
            A=validated['A'],
            omega=validated['omega'],
            time_samples=validated['time_samples'],
            domination_threshold=validated['domination_threshold'],
        )
        metric = MetricParams(M=validated['M'], Q=validated['Q'], r_shell=validated['r_shell'])
        return WormholeSettings(bridge=bridge, metric=metric, T_max=validated['T_max'])
