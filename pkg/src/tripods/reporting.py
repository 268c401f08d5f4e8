"""Report envelopes, deterministic JSON/CSV serialization, SVG plots.

JSON reports are a single object with keys in fixed insertion order and all
floats rendered with 17 significant digits, so two runs with identical flags
differ at most in the `timestamp` and `elapsed_ms` fields.
"""

from __future__ import annotations

import math
from datetime import datetime, timezone

TOOL_VERSION = "0.1.0"

CSV_COLUMNS = ("R", "total", "primitive", "reduced", "nonreduced",
               "primitive_over_R4", "error")


def envelope(command: str, lattice: str, payload: dict, seed: int | None = None) -> dict:
    out = {
        "tool_version": TOOL_VERSION,
        "command": command,
        "lattice": lattice,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    if seed is not None:
        out["seed"] = seed
    out["payload"] = payload
    return out


def _format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def dumps_json(obj, indent: int = 0) -> str:
    """Serialize with deterministic key order and 17-significant-digit floats."""
    pad = " " * indent
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"')
        out = out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")
        return f'"{out}"'
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {dumps_json(str(k))}: {dumps_json(v, indent + 2)}'
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {dumps_json(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return _format_float(value)
    return str(value)


def census_csv(rows: list[dict]) -> str:
    """Rows with the fixed census column schema."""
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(csv_cell(row.get(col)) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def convergence_svg(rows: list[dict], reference: float, width: int = 640,
                    height: int = 420) -> str:
    """Static convergence plot: N/R^4 against R with a reference line."""
    ml, mr, mt, mb = 60, 20, 20, 45
    xs = [row["R"] for row in rows]
    ys = [row["normalized_ratio"] for row in rows]
    ymin = min(ys + [reference]) * 0.98
    ymax = max(ys + [reference]) * 1.02
    xmin, xmax = min(xs), max(xs)
    if xmax == xmin:
        xmax = xmin + 1

    def px(x):
        return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr)

    def py(y):
        return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb)

    pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
    ref_y = py(reference)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{height - mb}" x2="{width - mr}" y2="{height - mb}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height - mb}" stroke="black"/>',
        f'<line x1="{ml}" y1="{ref_y:.2f}" x2="{width - mr}" y2="{ref_y:.2f}" '
        'stroke="red" stroke-dasharray="6,4"/>',
        f'<polyline points="{pts}" fill="none" stroke="blue" stroke-width="1.5"/>',
    ]
    for x, y in zip(xs, ys):
        parts.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" fill="blue"/>')
        parts.append(f'<text x="{px(x):.2f}" y="{height - mb + 16}" font-size="11" '
                     f'text-anchor="middle">{x:g}</text>')
    parts.append(f'<text x="{(ml + width - mr) / 2:.2f}" y="{height - 8}" font-size="13" '
                 'text-anchor="middle">R</text>')
    parts.append(f'<text x="14" y="{(mt + height - mb) / 2:.2f}" font-size="13" '
                 f'transform="rotate(-90 14 {(mt + height - mb) / 2:.2f})" '
                 'text-anchor="middle">N/R^4</text>')
    parts.append(f'<text x="{width - mr - 4}" y="{ref_y - 5:.2f}" font-size="11" '
                 f'text-anchor="end" fill="red">reference {reference:.8f}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
