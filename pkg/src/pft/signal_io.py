"""Signal and spectrum files.

Signals are either CSV (one sample per row, ``re`` or ``re,im``) or a raw
little-endian float64 array behind a 16-byte header::

    magic "PFTS" | u32 complex flag | u32 length | u32 reserved (0)

Spectra are written as CSV ``m,re,im`` (``m1,m2,re,im`` for 2-D) with
``repr`` floats so that reading back is bit-exact.
"""

import csv
import struct
from pathlib import Path

import numpy as np

SIGNAL_MAGIC = b"PFTS"
_SIGNAL_HEADER = struct.Struct("<4sIII")


class SignalFormatError(ValueError):
    pass


def _parse_float(text, where):
    try:
        return float(text)
    except ValueError:
        raise SignalFormatError(f"{where}: cannot parse {text!r} as a number") from None


def read_csv_signal(path):
    values = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in row]
            if not cells or cells == [""]:
                continue
            where = f"{path}:{lineno}"
            if len(cells) == 1:
                values.append(complex(_parse_float(cells[0], where), 0.0))
            elif len(cells) == 2:
                values.append(complex(_parse_float(cells[0], where), _parse_float(cells[1], where)))
            else:
                raise SignalFormatError(f"{where}: expected 're' or 're,im', got {len(cells)} fields")
    if not values:
        raise SignalFormatError(f"{path}: no samples")
    arr = np.array(values, dtype=np.complex128)
    return arr.real.copy() if not np.any(arr.imag) else arr


def read_binary_signal(path):
    data = Path(path).read_bytes()
    if len(data) < _SIGNAL_HEADER.size:
        raise SignalFormatError(f"{path}: file too short for a signal header")
    magic, is_complex, length, _ = _SIGNAL_HEADER.unpack_from(data)
    if magic != SIGNAL_MAGIC:
        raise SignalFormatError(f"{path}: bad magic {magic!r}")
    width = 16 if is_complex else 8
    body = data[_SIGNAL_HEADER.size:]
    if len(body) != width * length:
        raise SignalFormatError(
            f"{path}: header says {length} samples but payload has {len(body)} bytes"
        )
    dtype = "<c16" if is_complex else "<f8"
    out = np.frombuffer(body, dtype=dtype).astype(np.complex128 if is_complex else np.float64)
    if out.size == 0:
        raise SignalFormatError(f"{path}: no samples")
    return out


def read_signal(path, fmt=None):
    """Load a signal, guessing the format from the magic bytes when ``fmt`` is None."""
    path = Path(path)
    if fmt is None:
        with open(path, "rb") as fh:
            fmt = "f64le" if fh.read(4) == SIGNAL_MAGIC else "csv"
    if fmt == "csv":
        return read_csv_signal(path)
    if fmt == "f64le":
        return read_binary_signal(path)
    raise SignalFormatError(f"unknown signal format {fmt!r}")


def write_signal(path, values, fmt="csv"):
    values = np.asarray(values)
    is_complex = np.iscomplexobj(values)
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            for v in values:
                writer.writerow([repr(float(v.real)), repr(float(v.imag))] if is_complex else [repr(float(v))])
    elif fmt == "f64le":
        header = _SIGNAL_HEADER.pack(SIGNAL_MAGIC, int(is_complex), values.size, 0)
        payload = values.astype("<c16" if is_complex else "<f8").tobytes()
        Path(path).write_bytes(header + payload)
    else:
        raise SignalFormatError(f"unknown signal format {fmt!r}")


def read_grid(path):
    """2-D signal from ``.npy`` or a CSV grid whose cells are real or complex literals."""
    path = Path(path)
    if path.suffix == ".npy":
        try:
            grid = np.load(path, allow_pickle=False)
        except ValueError as exc:
            raise SignalFormatError(f"{path}: {exc}") from None
    else:
        rows = []
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or row == [""]:
                    continue
                try:
                    rows.append([complex(c.strip().replace(" ", "")) for c in row])
                except ValueError:
                    raise SignalFormatError(f"{path}:{lineno}: unparsable cell") from None
        if not rows or len({len(r) for r in rows}) != 1:
            raise SignalFormatError(f"{path}: grid rows are empty or ragged")
        grid = np.array(rows, dtype=np.complex128)
        if not np.any(grid.imag):
            grid = grid.real.copy()
    if grid.ndim != 2:
        raise SignalFormatError(f"{path}: expected a 2-D grid, got shape {grid.shape}")
    return grid


def write_spectrum(path, spectrum):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["m", "re", "im"])
        for m, v in zip(spectrum.indices, spectrum.values):
            writer.writerow([int(m), repr(float(v.real)), repr(float(v.imag))])


def read_spectrum(path):
    """Returns ``(m, values)`` arrays from an ``m,re,im`` CSV."""
    ms, vals = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["m", "re", "im"]:
            raise SignalFormatError(f"{path}: missing 'm,re,im' header")
        for row in reader:
            if len(row) != 3:
                raise SignalFormatError(f"{path}: malformed row {row!r}")
            ms.append(int(row[0]))
            vals.append(complex(float(row[1]), float(row[2])))
    return np.array(ms, dtype=np.int64), np.array(vals, dtype=np.complex128)


def write_spectrum_2d(path, spectrum):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["m1", "m2", "re", "im"])
        for i, m1 in enumerate(spectrum.range1.indices):
            for j, m2 in enumerate(spectrum.range2.indices):
                v = spectrum.values[i, j]
                writer.writerow([int(m1), int(m2), repr(float(v.real)), repr(float(v.imag))])
