"""
Run configuration: one JSON document validated section by section.
"""

import json
import logging

from dataclasses import dataclass
from typing import Any, Dict, Optional

from django.conf import settings
from rest_framework import serializers

from apps.burst.serializers import BurstConfigSerializer
from apps.core.exceptions import ConfigError, DomainError
from apps.core.lib.tables import render_json, to_builtin
from apps.core.serializers import ConstantsSerializer, OutputSerializer, StrictSerializer, flatten_errors
from apps.fields.serializers import FieldsSerializer
from apps.info.serializers import InfoSerializer
from apps.quintessence.serializers import QuintessenceSerializer
from apps.scale.serializers import ScaleSerializer
from apps.vacuum.serializers import LambdaModelSerializer
from apps.wdw.serializers import WdwSerializer
from apps.wormhole.serializers import WormholeSerializer

logger = logging.getLogger(__name__)

SECTIONS = ('constants', 'vacuum', 'wormhole', 'scale', 'info', 'burst', 'fields', 'quintessence', 'wdw')


def default_seed():
    return settings.COSMOTOY_SEED


class RunConfigSerializer(StrictSerializer):
    constants = ConstantsSerializer(required=False)
    vacuum = LambdaModelSerializer(required=False)
    wormhole = WormholeSerializer(required=False)
    scale = ScaleSerializer(required=False)
    info = InfoSerializer(required=False)
    burst = BurstConfigSerializer(required=False)
    fields = FieldsSerializer(required=False)
    quintessence = QuintessenceSerializer(required=False)
    wdw = WdwSerializer(required=False)
    output = OutputSerializer(required=False)
    seed = serializers.IntegerField(default=default_seed, min_value=0, help_text="Seed for fuzz suites")


@dataclass(frozen=True)
class RunConfig:
    """
    Validated configuration with every section built into its domain objects.

    effective is the fully defaulted primitive document; it is what the
    config echo writes and what re-loading the echo reproduces.
    """

    constants: Any
    vacuum: Any
    wormhole: Any
    scale: Any
    info: Any
    burst: Any
    fields: Any
    quintessence: Any
    wdw: Any
    output: Dict[str, str]
    seed: int
    effective: Dict[str, Any]

    def echo(self) -> bytes:
        return render_json(self.effective)


def config_from_dict(data: Any) -> RunConfig:
    """
    Validate a parsed document.

    Raises:
        ConfigError: With a dotted field path for every invalid entry
    """
    serializer = RunConfigSerializer(data=data)
    if not serializer.is_valid():
        errors = flatten_errors(serializer.errors)
        logger.warning(f"Rejected configuration: {sorted(errors)}")
        raise ConfigError('Invalid configuration', errors=errors)

    validated = serializer.validated_data
    try:
        built = {name: serializer.fields[name].build(validated[name]) for name in SECTIONS}
    except DomainError as exc:
        raise ConfigError('Invalid configuration', errors={exc.parameter: [exc.message]})

    effective = json.loads(json.dumps(to_builtin(validated)))
    return RunConfig(
        output=dict(validated['output']),
        seed=validated['seed'],
        effective=effective,
        **built,
    )


def load_config(path: Optional[str] = None) -> RunConfig:
    """
    Load and validate a JSON run configuration.

    Args:
        path: Config file; settings.COSMOTOY_CONFIG when omitted, all
            defaults when that is unset too. An empty file means all defaults.

    Raises:
        ConfigError: On unreadable files, JSON syntax errors (with line and
            column) and invariant violations (with field paths)
    """
    path = path or settings.COSMOTOY_CONFIG
    if not path:
        return config_from_dict({})

    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"Cannot read configuration {path}: {exc.strerror}")

    if not text.strip():
        data = {}
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"Malformed JSON in {path}: {exc.msg}", line=exc.lineno, column=exc.colno)

    config = config_from_dict(data)
    logger.info(f"Loaded configuration from {path}")
    return config
