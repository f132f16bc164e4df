"""
Building blocks for the run-configuration serializers.

Every config section is a Django REST framework serializer that rejects unknown
keys, fills documented defaults and builds the immutable domain object the
numerics consume.
"""

from typing import Any, Dict, List

from rest_framework import serializers

from apps.core.exceptions import DomainError
from apps.core.lib.units import Constants


class StrictSerializer(serializers.Serializer):
    """
    Serializer that rejects keys it does not declare.

    Missing nested sections are validated as empty objects so their
    defaults are filled in.
    """

    def to_internal_value(self, data):
        if not isinstance(data, dict):
            return super().to_internal_value(data)

        unknown = sorted(set(data) - set(self.fields))
        data = {key: value for key, value in data.items() if key not in unknown}
        for name, field in self.fields.items():
            if isinstance(field, serializers.Serializer) and name not in data:
                data[name] = {}

        errors = {}
        try:
            value = super().to_internal_value(data)
        except serializers.ValidationError as exc:
            errors = dict(exc.detail)
        errors.update({key: ['Unknown configuration key.'] for key in unknown})
        if errors:
            raise serializers.ValidationError(errors)
        return value


class SectionSerializer(StrictSerializer):
    """
    One run-configuration section.

    Subclasses set domain_class, or override build() when the section holds
    more than one domain object. Domain invariants are checked by building
    once during validation, so their failures carry the field path.
    """

    domain_class = None

    def build(self, validated: Dict[str, Any]) -> Any:
        return self.domain_class(**validated)

    def validate(self, data):
        try:
            self.build(data)
        except DomainError as exc:
            raise serializers.ValidationError({exc.parameter: [exc.message]})
        return data

    def create(self, validated_data):
        return self.build(validated_data)


def open_unit_interval(value: float) -> float:
    if not 0.0 < value < 1.0:
        raise serializers.ValidationError('Must lie in the open interval (0, 1).')
    return value


def flatten_errors(errors: Any, prefix: str = '') -> Dict[str, List[str]]:
    """Turn nested DRF errors into a dotted field path -> messages mapping."""
    flat: Dict[str, List[str]] = {}
    if isinstance(errors, dict):
        for key, value in errors.items():
            path = prefix if key in ('non_field_errors',) else (f"{prefix}.{key}" if prefix else str(key))
            for inner_path, messages in flatten_errors(value, path).items():
                flat.setdefault(inner_path, []).extend(messages)
    elif isinstance(errors, list):
        if all(not isinstance(item, (dict, list)) for item in errors):
            flat[prefix or '(root)'] = [str(item) for item in errors]
        else:
            for index, item in enumerate(errors):
                flat.update(flatten_errors(item, f"{prefix}[{index}]"))
    else:
        flat[prefix or '(root)'] = [str(errors)]
    return flat


class ConstantsSerializer(SectionSerializer):
    """Overrides for the fundamental constants (SI, CODATA 2018 defaults)."""

    domain_class = Constants

    G = serializers.FloatField(default=Constants.G, help_text="Gravitational constant (m^3 kg^-1 s^-2)")
    hbar = serializers.FloatField(default=Constants.hbar, help_text="Reduced Planck constant (J s)")
    c = serializers.FloatField(default=Constants.c, help_text="Speed of light (m/s)")
    k_B = serializers.FloatField(default=Constants.k_B, help_text="Boltzmann constant (J/K)")
    electron_volt = serializers.FloatField(default=Constants.electron_volt, help_text="Joules per eV")


class OutputSerializer(StrictSerializer):
    """Artifact emission settings."""

    format = serializers.ChoiceField(
        choices=[('csv', 'CSV'), ('json', 'JSON')],
        default='csv',
        help_text="Table format used when a subcommand does not force one",
    )
    path = serializers.CharField(
        default='',
        allow_blank=True,
        help_text="Artifact path; empty writes to stdout",
    )
