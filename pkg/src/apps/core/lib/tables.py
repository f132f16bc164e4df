"""
Deterministic table and report emission.

CSV cells carry 17 significant digits, LF line endings and the tokens
nan, inf and -inf for non-finite values. JSON goes through the Django REST
framework renderer with the same tokens for non-finite floats.
"""

import csv
import dataclasses
import io
import json
import logging
import math

from typing import Any, Dict, IO, List, Optional, Sequence

import numpy as np
from rest_framework.renderers import JSONRenderer

from apps.core.exceptions import InputError

logger = logging.getLogger(__name__)

FORMATS = ('csv', 'json')


def format_number(value: float) -> str:
    """Locale-independent 17-significant-digit rendering."""
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return format(value, '.17g')


def to_builtin(value: Any) -> Any:
    """Convert numpy scalars, dataclasses and complex numbers into JSON-ready values."""
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {field.name: to_builtin(getattr(value, field.name)) for field in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(key): to_builtin(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(item) for item in value]
    if isinstance(value, np.ndarray):
        return [to_builtin(item) for item in value.tolist()]
    if isinstance(value, np.generic):
        return to_builtin(value.item())
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, complex):
        return {'real': to_builtin(value.real), 'imag': to_builtin(value.imag)}
    if isinstance(value, float):
        return value if math.isfinite(value) else format_number(value)
    return str(value)


def render_json(document: Any) -> bytes:
    """Render a report document as indented UTF-8 JSON terminated by LF."""
    body = JSONRenderer().render(to_builtin(document), renderer_context={'indent': 2})
    return body + b'\n'


def _cell(value: Any) -> str:
    value = to_builtin(value)
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return format_number(value)
    if value is None:
        return ''
    return str(value)


def _columns(rows: Sequence[Dict[str, Any]], columns: Optional[Sequence[str]]) -> List[str]:
    if columns is not None:
        return list(columns)
    if not rows:
        return []
    return list(rows[0].keys())


def render_table(rows: Sequence[Dict[str, Any]], fmt: str = 'csv',
                 columns: Optional[Sequence[str]] = None) -> bytes:
    """
    Render homogeneous rows as CSV or JSON.

    Args:
        rows: Sequence of dicts sharing the same keys
        fmt: 'csv' or 'json'
        columns: Columns to write, in order; rows may carry extra keys.
            Defaults to the key order of the first row

    Returns:
        Encoded table

    Raises:
        InputError: If the format is unknown or a row lacks a header column
    """
    if fmt not in FORMATS:
        raise InputError(f"Unknown table format: {fmt}", format=fmt)

    header = _columns(rows, columns)
    for index, row in enumerate(rows):
        keys = set(row)
        if not keys.issuperset(header) or (columns is None and keys != set(header)):
            raise InputError(f"Row {index} keys {sorted(row)} differ from header {header}",
                             row=index, header=header)

    if fmt == 'json':
        return render_json([{name: row[name] for name in header} for row in rows])

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row[name]) for name in header])
    return buffer.getvalue().encode('utf-8')


def emit_table(rows: Sequence[Dict[str, Any]], fmt: str = 'csv', path: Optional[str] = None,
               stream: Optional[IO[str]] = None, columns: Optional[Sequence[str]] = None) -> bytes:
    """
    Write a table to a file path or a text stream.

    Raises:
        OSError: If the path cannot be written
    """
    payload = render_table(rows, fmt=fmt, columns=columns)
    write_artifact(payload, path=path, stream=stream)
    logger.debug(f"Emitted {len(rows)} {fmt} rows to {path or 'stream'}")
    return payload


def emit_report(document: Any, path: Optional[str] = None, stream: Optional[IO[str]] = None) -> bytes:
    """Write a report document as JSON to a file path or a text stream."""
    payload = render_json(document)
    write_artifact(payload, path=path, stream=stream)
    return payload


def write_artifact(payload: bytes, path: Optional[str] = None, stream: Optional[IO[str]] = None) -> None:
    if path:
        with open(path, 'wb') as handle:
            handle.write(payload)
    elif stream is not None:
        stream.write(payload.decode('utf-8'))


def parse_csv(text: str) -> List[Dict[str, Any]]:
    """Read a table written by render_table back into floats where possible."""
    reader = csv.DictReader(io.StringIO(text))
    parsed = []
    for row in reader:
        parsed.append({key: _parse_cell(value) for key, value in row.items()})
    return parsed


def _parse_cell(value: str) -> Any:
    if value in ('true', 'false'):
        return value == 'true'
    try:
        return int(value)
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        return value


def parse_json_table(text: str) -> List[Dict[str, Any]]:
    """Inverse of the JSON table rendering, mapping the non-finite tokens back to floats."""
    tokens = {'nan': math.nan, 'inf': math.inf, '-inf': -math.inf}
    return [
        {key: tokens.get(value, value) if isinstance(value, str) else value for key, value in row.items()}
        for row in json.loads(text)
    ]
