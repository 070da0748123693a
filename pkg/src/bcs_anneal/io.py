"""CSV/JSON emission with a manifest next to every data file."""

from __future__ import annotations

import csv
import json
import platform
from dataclasses import asdict, is_dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .hamiltonians import PRNG_NAME
from .sector import SpinSector, to_bitstring


def fmt(v) -> str:
    """Round-trip text for numbers, ``'.'`` decimal, 17 significant digits."""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _jsonable(obj):
    if is_dataclass(obj) and not isinstance(obj, type):
        return _jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, Path):
        return str(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=False, allow_nan=True) + "\n"


def manifest_path(path: Path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".manifest.json")


def write_manifest(path: Path, config) -> Path:
    m = {
        "data_file": Path(path).name,
        "library": "bcs_anneal",
        "version": __version__,
        "prng": PRNG_NAME,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "config": config,
    }
    out = manifest_path(path)
    out.write_text(dumps(m))
    return out


def write_csv(path, header, rows, config=None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    write_manifest(path, config if config is not None else {})
    return path


def write_json(path, payload, config=None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(payload))
    write_manifest(path, config if config is not None else {})
    return path


def evolution_payload(result, sector: SpinSector, params: dict, min_prob: float = 0.0) -> dict:
    """JSON layout of a propagation run."""
    pol = result.polarization_trace
    t = pol[:, 0]
    return {
        "params": params,
        "eta_trace": [[float(a), float(b)] for a, b in result.eta_trace],
        "polarizations": {
            str(j + 1): [[float(ti), float(v)] for ti, v in zip(t, pol[:, j + 1])]
            for j in range(sector.n_spins)
        },
        "final_probs": {
            to_bitstring(int(b), sector.n_spins): float(p)
            for b, p in zip(sector.basis, result.final_probs)
            if p >= min_prob
        },
        "readout": result.readout,
        "norm_drift": float(result.norm_drift),
        "step_count": int(result.step_count),
    }


def trace_rows(result):
    """CSV rows ``t, eta, s_1, ..., s_N``."""
    for e, p in zip(result.eta_trace, result.polarization_trace):
        yield [e[0], e[1], *p[1:]]
