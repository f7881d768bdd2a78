"""``tten-json`` tensor files and CSV helpers.

A tensor file is a JSON object::

    {"format": "tten-json", "version": 1, "m": 2, "n": 2, "p": 3,
     "domain": "spatial", "data": [[[[re, im], ...], ...], ...]}

``data`` is nested slice -> row -> column -> ``[re, im]``. Floats are written
with Python's shortest round-trip repr, so a write/read cycle is lossless.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from ..errors import TSympError
from ..tcore import FOURIER, SPATIAL, Tensor3

FORMAT = "tten-json"
VERSION = 1


class TensorFileError(TSympError, OSError):
    """Unreadable, malformed or inconsistent tensor file."""


def _reject_constant(name):
    raise ValueError(f"non-finite value {name}")


def tensor_to_json(t: Tensor3) -> dict:
    pairs = np.stack([t.data.real, t.data.imag], axis=-1)
    return {
        "format": FORMAT,
        "version": VERSION,
        "m": t.m,
        "n": t.n,
        "p": t.p,
        "domain": t.domain,
        "data": pairs.tolist(),
    }


def write_tensor(path, t: Tensor3) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(tensor_to_json(t), fh, allow_nan=False)
            fh.write("\n")
    except OSError as exc:
        raise TensorFileError(f"{path}: cannot write tensor file: {exc}") from exc


def _field(obj, key, kind, path):
    if key not in obj:
        raise TensorFileError(f"{path}: missing field {key!r}")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise TensorFileError(f"{path}: field {key!r} must be an integer, got {val!r}")
    if kind is str and not isinstance(val, str):
        raise TensorFileError(f"{path}: field {key!r} must be a string, got {val!r}")
    return val


def tensor_from_json(obj, path="<memory>") -> Tensor3:
    if not isinstance(obj, dict):
        raise TensorFileError(f"{path}: top level must be an object")
    if obj.get("format") != FORMAT:
        raise TensorFileError(f"{path}: format marker must be {FORMAT!r}, got {obj.get('format')!r}")
    version = _field(obj, "version", int, path)
    if version != VERSION:
        raise TensorFileError(f"{path}: unknown version {version}")
    m, n, p = (_field(obj, k, int, path) for k in ("m", "n", "p"))
    if min(m, n, p) < 1:
        raise TensorFileError(f"{path}: dimensions must be >= 1, got m={m}, n={n}, p={p}")
    domain = _field(obj, "domain", str, path)
    if domain not in (SPATIAL, FOURIER):
        raise TensorFileError(f"{path}: field 'domain' must be 'spatial' or 'fourier', got {domain!r}")
    data = obj.get("data")
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise TensorFileError(f"{path}: field 'data' is not a regular numeric array: {exc}") from exc
    if arr.shape != (p, m, n, 2):
        raise TensorFileError(f"{path}: field 'data' has shape {arr.shape}, expected {(p, m, n, 2)}")
    if not np.all(np.isfinite(arr)):
        raise TensorFileError(f"{path}: field 'data' contains non-finite values")
    return Tensor3(arr[..., 0] + 1j * arr[..., 1], domain)


def read_tensor(path) -> Tensor3:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TensorFileError(f"{path}: cannot read tensor file: {exc}") from exc
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise TensorFileError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    except ValueError as exc:
        raise TensorFileError(f"{path}: {exc}") from exc
    return tensor_from_json(obj, path)


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            raise ValueError(f"non-finite CSV value {x}")
        return repr(x)
    return x


def write_csv(path, header, rows) -> None:
    """Comma-separated, LF line endings, header first."""
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([_fmt(x) for x in row])
    except OSError as exc:
        raise TensorFileError(f"{path}: cannot write CSV: {exc}") from exc
