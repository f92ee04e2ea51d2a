"""On-disk formats.

SignalSet JSON
    ``{"t0", "dt", "n", "labels", "signals": [[[re, im], ...], ...]}``.
AMBG binary (little-endian)
    ``b"AMBG"``, u32 version (=1), u32 n_tau, u32 n_nu, f64 tau0, dtau, nu0,
    dnu, then n_tau*n_nu interleaved f64 (re, im) pairs, row-major, rows = tau.
Correlation field directory
    ``field.json`` (m, spec, kind, entry file names) plus ``r_<i>_<j>.ambg``.
Report JSON
    ``{"set_digest", "grid", "steering", "tool_version", "results": [...]}``;
    see :data:`REPORT_SCHEMA`.
"""

import hashlib
import json
import math
import struct
from pathlib import Path

import numpy as np

from .ambiguity import AmbiguityGrid, GridSpec
from .mimo import CorrelationMatrixField
from .signal import SampledSignal, SignalSet

MAGIC = b"AMBG"
VERSION = 1
_HEADER = struct.Struct("<4sIII4d")


class FormatError(ValueError):
    pass


# --------------------------------------------------------------------------
# SignalSet JSON


def signal_set_to_dict(sigs: SignalSet) -> dict:
    lat = sigs.lattice
    return {
        "t0": lat.t0,
        "dt": lat.dt,
        "n": lat.n,
        "labels": list(sigs.labels),
        "signals": [[[float(z.real), float(z.imag)] for z in s.samples] for s in sigs],
    }


def signal_set_from_dict(d: dict) -> SignalSet:
    try:
        t0, dt, n = float(d["t0"]), float(d["dt"]), int(d["n"])
        raw = d["signals"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed SignalSet: {exc}") from None
    sigs = []
    for k, rows in enumerate(raw):
        arr = np.asarray(rows, dtype=float)
        if arr.shape != (n, 2):
            raise FormatError(f"signal {k} has shape {arr.shape}, expected ({n}, 2)")
        sigs.append(SampledSignal(t0, dt, arr[:, 0] + 1j * arr[:, 1]))
    return SignalSet(tuple(sigs), tuple(d.get("labels") or ()))


def write_signal_set(path, sigs: SignalSet):
    Path(path).write_text(json.dumps(signal_set_to_dict(sigs)), encoding="utf-8")


def read_signal_set(path) -> SignalSet:
    return signal_set_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def set_digest(sigs: SignalSet) -> str:
    """sha256 over the lattice header and little-endian complex128 samples."""
    h = hashlib.sha256()
    lat = sigs.lattice
    h.update(struct.pack("<ddQQ", lat.t0, lat.dt, lat.n, len(sigs)))
    for s in sigs:
        h.update(np.ascontiguousarray(s.samples, dtype="<c16").tobytes())
    return "sha256:" + h.hexdigest()


# --------------------------------------------------------------------------
# AMBG


def ambg_bytes(grid: AmbiguityGrid) -> bytes:
    s = grid.spec
    head = _HEADER.pack(MAGIC, VERSION, s.n_tau, s.n_nu, s.tau0, s.dtau, s.nu0, s.dnu)
    return head + np.ascontiguousarray(grid.values, dtype="<c16").tobytes()


def ambg_from_bytes(buf: bytes) -> AmbiguityGrid:
    if len(buf) < _HEADER.size:
        raise FormatError("truncated AMBG header")
    magic, version, n_tau, n_nu, tau0, dtau, nu0, dnu = _HEADER.unpack_from(buf)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported AMBG version {version}")
    expected = _HEADER.size + 16 * n_tau * n_nu
    if len(buf) != expected:
        raise FormatError(f"AMBG payload is {len(buf)} bytes, expected {expected}")
    vals = np.frombuffer(buf, dtype="<c16", offset=_HEADER.size).reshape(n_tau, n_nu)
    return AmbiguityGrid(GridSpec(tau0, dtau, n_tau, nu0, dnu, n_nu), vals.astype(complex))


def write_ambg(path, grid: AmbiguityGrid):
    Path(path).write_bytes(ambg_bytes(grid))


def read_ambg(path) -> AmbiguityGrid:
    return ambg_from_bytes(Path(path).read_bytes())


# --------------------------------------------------------------------------
# correlation field directory


def write_field(directory, field: CorrelationMatrixField):
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    names = [[f"r_{i}_{j}.ambg" for j in range(field.m)] for i in range(field.m)]
    for i in range(field.m):
        for j in range(field.m):
            write_ambg(d / names[i][j], field.entry(i, j))
    meta = {"m": field.m, "spec": field.spec.to_dict(), "kind": field.kind, "entries": names}
    (d / "field.json").write_text(json.dumps(meta, indent=1), encoding="utf-8")


def read_field(directory) -> CorrelationMatrixField:
    d = Path(directory)
    meta = json.loads((d / "field.json").read_text(encoding="utf-8"))
    m = int(meta["m"])
    spec = GridSpec(**meta["spec"])
    entries = np.empty((m, m) + spec.shape, dtype=complex)
    for i in range(m):
        for j in range(m):
            g = read_ambg(d / meta["entries"][i][j])
            if g.spec != spec:
                raise FormatError(f"entry ({i},{j}) grid differs from field spec")
            entries[i, j] = g.values
    return CorrelationMatrixField(spec, entries, meta.get("kind", "symmetric"))


# --------------------------------------------------------------------------
# report

_NUM = {"type": "number"}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["set_digest", "grid", "steering", "tool_version", "results"],
    "properties": {
        "set_digest": {"type": "string", "pattern": "^sha256:[0-9a-f]{64}$"},
        "tool_version": {"type": "string"},
        "grid": {
            "type": "object",
            "required": ["tau0", "dtau", "n_tau", "nu0", "dnu", "n_nu"],
            "properties": {
                "tau0": _NUM, "dtau": _NUM, "nu0": _NUM, "dnu": _NUM,
                "n_tau": {"type": "integer", "minimum": 1},
                "n_nu": {"type": "integer", "minimum": 1},
            },
        },
        "steering": {
            "type": "object",
            "required": ["gamma", "k_s"],
            "properties": {"gamma": {"type": "integer", "minimum": 1}, "k_s": {"type": "integer", "minimum": 1}},
        },
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "lhs", "rhs", "sense", "slack", "tol", "satisfied", "context"],
                "properties": {
                    "id": {"type": "string"},
                    "lhs": _NUM,
                    "rhs": _NUM,
                    "sense": {"enum": ["le", "ge", "eq"]},
                    "slack": _NUM,
                    "tol": {"type": "number", "minimum": 0},
                    "satisfied": {"type": "boolean"},
                    "context": {"type": "object"},
                },
            },
        },
    },
}


def _jsonable(v):
    if isinstance(v, (np.floating, float)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in v]
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v if isinstance(v, (str, int, bool)) or v is None else str(v)


def report_dict(results, sigs: SignalSet, grid: GridSpec, steering: dict, tool_version: str) -> dict:
    return {
        "set_digest": set_digest(sigs),
        "grid": grid.to_dict(),
        "steering": _jsonable(steering),
        "tool_version": tool_version,
        "results": [_jsonable(r.to_dict()) for r in results],
    }


def write_report(path, report: dict):
    Path(path).write_text(json.dumps(report, indent=1, allow_nan=False), encoding="utf-8")
