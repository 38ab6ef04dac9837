"""Signal and measurement file formats.

Signals are stored either as raw little-endian float64 (``.f64``) or as a
single-column CSV with header ``sample`` (``.csv``). Measurement sets are
JSON documents (see :meth:`MeasurementSet.to_dict`).
"""

from pathlib import Path

import numpy as np

from .shatter import MeasurementSet

FORMATS = ("f64", "csv")


def infer_format(path, fmt=None):
    if fmt is not None:
        if fmt not in FORMATS:
            raise ValueError(f"unknown signal format {fmt!r}")
        return fmt
    suffix = Path(path).suffix.lower().lstrip(".")
    if suffix not in FORMATS:
        raise ValueError(f"cannot infer signal format from {str(path)!r}; use .f64 or .csv")
    return suffix


def write_signal(path, x, fmt=None):
    fmt = infer_format(path, fmt)
    x = np.asarray(x, dtype=np.float64)
    if fmt == "f64":
        Path(path).write_bytes(x.astype("<f8").tobytes())
    else:
        np.savetxt(path, x, fmt="%.17g", header="sample", comments="")


def read_signal(path, fmt=None):
    fmt = infer_format(path, fmt)
    if fmt == "f64":
        raw = Path(path).read_bytes()
        if len(raw) % 8:
            raise ValueError(f"{path}: size {len(raw)} is not a multiple of 8 bytes")
        return np.frombuffer(raw, dtype="<f8").astype(np.float64)
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "sample":
            raise ValueError(f"{path}: expected header 'sample', got {header!r}")
        return np.loadtxt(fh, dtype=np.float64, ndmin=1)


def write_measurements(path, ms):
    Path(path).write_text(ms.to_json(indent=1) + "\n")


def read_measurements(path):
    return MeasurementSet.from_json(Path(path).read_text())
