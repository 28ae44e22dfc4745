"""
Output formatting - meshes, grid tables, curves and the run report
"""
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Sequence

import numpy as np
import pandas as pd

from src.frontal.invariants import frame_arrays
from src.frontal.surface import FrontalSurface
from src.models import TracedCurve
from src.utils.config import config
from src.utils.logger import setup_logger

logger = setup_logger("frontal-lab.output")

FIELD_COLUMNS = ["u", "v", "lambda", "K_omega", "H_omega", "k1_omega", "k2_omega", "K", "H"]


def _float(x: float) -> str:
    return format(float(x), f".{config.FLOAT_DIGITS}g")


def _grid(s: FrontalSurface, n: int, m: int):
    us, vs = s.domain.grid(n, m)
    return np.meshgrid(us, vs, indexing="ij")


def to_obj(s: FrontalSurface, n: int, m: int) -> str:
    """
    Triangulated grid mesh of x in Wavefront OBJ format

    Vertex (i, j) has 1-based index i*m + j + 1; each grid cell gives two
    triangles, so the mesh has n*m vertices and 2(n-1)(m-1) faces.
    """
    U, V = _grid(s, n, m)
    x = s.position(U, V, 0)
    coords = np.stack([np.broadcast_to(c.value, U.shape) for c in x], axis=-1).reshape(-1, 3)

    lines = [f"# {s.provenance.kind} surface, {n}x{m} grid"]
    lines.extend(f"v {_float(a)} {_float(b)} {_float(c)}" for a, b, c in coords)
    for i in range(n - 1):
        for j in range(m - 1):
            a = i * m + j + 1
            b = (i + 1) * m + j + 1
            lines.append(f"f {a} {b} {b + 1}")
            lines.append(f"f {a} {b + 1} {a + 1}")
    return "\n".join(lines) + "\n"


def fields_frame(s: FrontalSurface, n: int, m: int) -> pd.DataFrame:
    """
    Invariants on the sample grid

    Relative principal curvatures are empty where the discriminant is
    negative; classical K and H only at regular points (|lambda| above
    REGULAR_LAMBDA), obtained as K_Omega / lambda and H_Omega / lambda.
    """
    U, V = _grid(s, n, m)
    a = frame_arrays(s, U, V)
    lam, K, H = (np.broadcast_to(x, U.shape) for x in (a.lam, a.K_omega, a.H_omega))

    disc = H * H - lam * K
    root = np.sqrt(np.where(disc >= config.DISC_FLOOR, np.maximum(disc, 0.0), np.nan))
    regular = np.abs(lam) > config.REGULAR_LAMBDA
    safe = np.where(regular, lam, 1.0)
    frame = pd.DataFrame({
        "u": U.ravel(),
        "v": V.ravel(),
        "lambda": lam.ravel(),
        "K_omega": K.ravel(),
        "H_omega": H.ravel(),
        "k1_omega": (H - root).ravel(),
        "k2_omega": (H + root).ravel(),
        "K": np.where(regular, K / safe, np.nan).ravel(),
        "H": np.where(regular, H / safe, np.nan).ravel(),
    })
    return frame[FIELD_COLUMNS]


def singular_frame(polylines: Sequence[np.ndarray]) -> pd.DataFrame:
    """One row per polyline vertex: (polyline, vertex, u, v)"""
    rows = [
        {"polyline": k, "vertex": i, "u": float(u), "v": float(v)}
        for k, line in enumerate(polylines)
        for i, (u, v) in enumerate(line)
    ]
    return pd.DataFrame(rows, columns=["polyline", "vertex", "u", "v"])


def to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=f"%.{config.FLOAT_DIGITS}g", na_rep="", lineterminator="\n")


def _json_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite float {x!r} has no JSON form")
    text = _float(x)
    return text if any(ch in text for ch in ".e") else text + ".0"


class FixedDigitsEncoder(json.JSONEncoder):
    """JSON encoder writing every float with FLOAT_DIGITS significant digits"""

    def iterencode(self, o, _one_shot=False):
        if self.ensure_ascii:
            encode_str = json.encoder.py_encode_basestring_ascii
        else:
            encode_str = json.encoder.py_encode_basestring
        chunks = json.encoder._make_iterencode(
            {} if self.check_circular else None,
            self.default,
            encode_str,
            self.indent,
            _json_float,
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot,
        )
        return chunks(o, 0)


def to_jsonl(curves: List[TracedCurve]) -> str:
    return "".join(json.dumps(finite(c.to_dict()), sort_keys=True, cls=FixedDigitsEncoder) + "\n" for c in curves)


def finite(value: Any) -> Any:
    """
    Replace non-finite floats by None and numpy scalars/arrays by plain values

    Raises:
        TypeError: a value that has no JSON form
    """
    if isinstance(value, dict):
        return {str(k): finite(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [finite(v) for v in value]
    if isinstance(value, np.ndarray):
        return finite(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        return x if math.isfinite(x) else None
    if value is None or isinstance(value, str):
        return value
    raise TypeError(f"cannot serialize {type(value).__name__} into a report")


def to_report_json(report: Dict) -> str:
    """
    Deterministic report text

    Keys are sorted and floats are written with FLOAT_DIGITS significant
    digits.
    """
    return json.dumps(finite(report), sort_keys=True, indent=2, cls=FixedDigitsEncoder) + "\n"


def write_text(directory: Path, name: str, text: str) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / name
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.debug(f"Wrote {path}")
    return path
