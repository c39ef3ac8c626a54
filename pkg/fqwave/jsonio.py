"""JSON codecs for point sets, certificates and reports.

Output is ``json.dumps(sort_keys=True, indent=2)`` so the same inputs always
produce byte-identical files.
"""

import dataclasses
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from fqwave.errors import ReportFormatError
from fqwave.ff_core import MAX_MODULUS
from fqwave.fourier import GridFunction
from fqwave.frames import FrameReport
from fqwave.geometry import Automorphism
from fqwave.points import Point, PointSet
from fqwave.tiling import SpectralPair, TilingCertificate

MAX_GRID_POINTS = 2**22


def _plain(value: Any) -> Any:
    """Convert numpy scalars, points, fractions and non-finite floats."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Point):
        return list(value.coords)
    if isinstance(value, PointSet):
        return pointset_to_dict(value)
    if isinstance(value, Automorphism):
        return value.to_list()
    if isinstance(value, TilingCertificate):
        return certificate_to_dict(value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return report_to_dict(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def dumps(data: Any) -> str:
    return json.dumps(_plain(data), sort_keys=True, indent=2) + "\n"


def write_json(path: Union[str, Path], data: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data), encoding="utf-8")
    return path


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    """Load a JSON object; OSError propagates, malformed content does not."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ReportFormatError(f"invalid JSON: {e}", str(path)) from e
    if not isinstance(data, dict):
        raise ReportFormatError("top-level value must be an object", str(path))
    return data


def _require_int(data: Dict[str, Any], key: str) -> int:
    value = data.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ReportFormatError(f"field {key!r} must be an integer")
    return value


def _require_shape(data: Dict[str, Any]) -> Tuple[int, int]:
    """(q, d) with 2 ≤ q ≤ MAX_MODULUS and q**d ≤ MAX_GRID_POINTS."""
    q = _require_int(data, "q")
    d = _require_int(data, "d")
    if q < 2 or d < 1:
        raise ReportFormatError(f"invalid shape q={q}, d={d}")
    if q > MAX_MODULUS:
        raise ReportFormatError(f"q={q} exceeds {MAX_MODULUS}")
    size = 1
    for _ in range(d):
        size *= q
        if size > MAX_GRID_POINTS:
            raise ReportFormatError(f"q**d for q={q}, d={d} exceeds {MAX_GRID_POINTS} points")
    return q, d


# =============================================================================
# Point sets
# =============================================================================


def pointset_to_dict(points: PointSet) -> Dict[str, Any]:
    return {
        "q": points.q,
        "d": points.d,
        "points": [[int(c) for c in row] for row in points.coords()],
    }


def pointset_from_dict(data: Dict[str, Any]) -> PointSet:
    q, d = _require_shape(data)
    rows = data.get("points")
    if not isinstance(rows, list):
        raise ReportFormatError("field 'points' must be a list")
    for row in rows:
        if not isinstance(row, list) or len(row) != d:
            raise ReportFormatError(f"point {row!r} must have {d} coordinates")
        for c in row:
            if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < q:
                raise ReportFormatError(f"coordinate {c!r} in {row!r} is not in [0, {q})")
    return PointSet.from_coords(q, d, np.array(rows, dtype=np.int64).reshape(-1, d))


def load_pointset(path: Union[str, Path]) -> PointSet:
    try:
        return pointset_from_dict(read_json(path))
    except ReportFormatError as e:
        if e.path:
            raise
        raise ReportFormatError(str(e), str(path)) from e


# =============================================================================
# Automorphisms and grid functions
# =============================================================================


def automorphisms_to_dict(maps: Sequence[Automorphism]) -> Dict[str, Any]:
    first = maps[0] if maps else None
    return {
        "q": first.q if first else None,
        "d": first.d if first else None,
        "matrices": [a.to_list() for a in maps],
    }


def automorphisms_from_dict(data: Dict[str, Any]) -> List[Automorphism]:
    q = _require_int(data, "q")
    matrices = data.get("matrices")
    if not isinstance(matrices, list):
        raise ReportFormatError("field 'matrices' must be a list")
    return [Automorphism.from_rows(q, m) for m in matrices]


def grid_function_to_dict(f: GridFunction) -> Dict[str, Any]:
    return {
        "q": f.q,
        "d": f.d,
        "values": [[float(v.real), float(v.imag)] for v in f.values],
    }


def grid_function_from_dict(data: Dict[str, Any]) -> GridFunction:
    q, d = _require_shape(data)
    values = data.get("values")
    if not isinstance(values, list) or len(values) != q**d:
        raise ReportFormatError(f"field 'values' must list {q ** d} [re, im] pairs")
    try:
        return GridFunction(q, d, [complex(re, im) for re, im in values])
    except (TypeError, ValueError) as e:
        raise ReportFormatError(f"bad value pair: {e}") from e


# =============================================================================
# Certificates and reports
# =============================================================================


def certificate_to_dict(cert: TilingCertificate) -> Dict[str, Any]:
    return {
        "kind": cert.kind,
        "valid": cert.valid,
        "witness": list(cert.witness.coords) if cert.witness else None,
        "multiplicity_histogram": {str(k): v for k, v in cert.multiplicity_histogram.items()},
    }


def spectral_pair_to_dict(pair: SpectralPair) -> Dict[str, Any]:
    return {
        "kind": "spectral",
        "valid": pair.valid,
        "gram_residual": pair.gram_residual,
        "reason": pair.reason,
        "set_size": len(pair.set),
        "spectrum": pointset_to_dict(pair.spectrum),
    }


def frame_report_to_dict(report: FrameReport) -> Dict[str, Any]:
    data = dataclasses.asdict(report)
    data["redundancy"] = report.redundancy
    return data


def report_to_dict(report: Any) -> Dict[str, Any]:
    """Plain dict for any report dataclass, including computed properties."""
    data = {f.name: getattr(report, f.name) for f in dataclasses.fields(report)}
    for name in ("confirmed", "certified", "answer_forced"):
        if hasattr(type(report), name):
            data[name] = getattr(report, name)
    return _plain(data)
