# -*- coding: utf-8 -*-
"""
Result files for the command-line tools.

CSV: '#'-prefixed metadata lines (tool version, then key=value), one header
row, floats with 17 significant digits, empty cells for missing values.
JSON: {"metadata": {...}, "data": [row, ...]} with the same content.
Every file is written to a temporary name in its directory and renamed.
"""

import csv
import io
import json
import math
import os
import tempfile
from typing import Dict, List, Tuple

import numpy as np

import config


def format_value(value) -> str:
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        return format(float(value), config.FLOAT_FORMAT)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _json_value(value):
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_json_value(v) for v in value]
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    return value


def write_atomic(path: str, text: str) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix='.tmp-', suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as file:
            file.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    return path


def columns_to_rows(columns: Dict[str, np.ndarray]) -> List[Dict]:
    names = list(columns)
    return [dict(zip(names, values)) for values in zip(*(columns[name] for name in names))]


def render_csv(rows: List[Dict], fieldnames: List[str], metadata: Dict) -> str:
    buffer = io.StringIO()
    buffer.write(f"# {config.TOOL_VERSION}\n")
    for key, value in metadata.items():
        buffer.write(f"# {key}={format_value(value)}\n")
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({name: format_value(row.get(name)) for name in fieldnames})
    return buffer.getvalue()


def render_json(rows: List[Dict], fieldnames: List[str], metadata: Dict) -> str:
    meta = {'tool_version': config.TOOL_VERSION, **metadata}
    data = [{name: row.get(name) for name in fieldnames} for row in rows]
    return json.dumps({'metadata': _json_value(meta), 'data': _json_value(data)}, indent=2) + '\n'


def write_table(output_dir: str, stem: str, rows: List[Dict], fieldnames: List[str],
                metadata: Dict, fmt: str = 'csv') -> str:
    """Write rows as <output_dir>/<stem>.<fmt>; returns the path."""
    if fmt not in ('csv', 'json'):
        raise ValueError(f"unknown output format {fmt!r}")
    render = render_csv if fmt == 'csv' else render_json
    path = os.path.join(output_dir, f"{stem}.{fmt}")
    return write_atomic(path, render(rows, fieldnames, metadata))


def write_json(output_dir: str, stem: str, payload: Dict) -> str:
    path = os.path.join(output_dir, f"{stem}.json")
    return write_atomic(path, json.dumps(_json_value(payload), indent=2) + '\n')


def read_table(path: str) -> Tuple[Dict, List[Dict]]:
    """Read back a table written by write_table: (metadata, rows); numeric cells become floats."""
    with open(path, 'r', encoding='utf-8') as file:
        if path.endswith('.json'):
            payload = json.load(file)
            return payload['metadata'], payload['data']
        lines = file.read().splitlines()

    metadata = {}
    body = []
    for line in lines:
        if line.startswith('# '):
            key, sep, value = line[2:].partition('=')
            if sep:
                metadata[key] = value
            else:
                metadata['tool_version'] = key
        else:
            body.append(line)

    rows = []
    for row in csv.DictReader(body):
        rows.append({key: _parse_cell(value) for key, value in row.items()})
    return metadata, rows


def _parse_cell(text: str):
    if text == '':
        return None
    try:
        return float(text)
    except ValueError:
        return text
