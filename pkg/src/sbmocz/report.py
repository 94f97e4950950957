"""Config parsing, result serialisation and gap reporting."""
from __future__ import annotations

import csv
import io
import json
import math
import subprocess
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .presets import REPORTED_GAPS, get_preset
from .sim import PointResult, SimConfig, SweepResult, db_gap_at

__all__ = [
    "CSV_COLUMNS",
    "ConfigError",
    "Curve",
    "parse_config",
    "config_from_dict",
    "emit_results",
    "results_to_csv",
    "results_to_json",
    "load_curves",
    "report_gaps",
    "gap_table",
]

CSV_COLUMNS = [
    "scheme", "channel", "cfo", "ebn0_db", "trials",
    "bit_errors", "block_errors", "ber", "bler", "cfo_rmse",
]

_FIELDS = {f.name for f in fields(SimConfig)}
_REQUIRED = {"scheme", "K", "ebn0_grid_db"}


class ConfigError(ValueError):
    """Invalid experiment configuration."""


def config_from_dict(d: dict, overrides: dict | None = None) -> SimConfig:
    """Validate a flat key-value mapping into a :class:`SimConfig`."""
    d = dict(d)
    if overrides:
        d.update({k: v for k, v in overrides.items() if v is not None})
    unknown = sorted(set(d) - _FIELDS)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    missing = sorted(_REQUIRED - set(d))
    if missing:
        raise ConfigError(f"missing required config key(s): {', '.join(missing)}")
    try:
        return SimConfig(**d)
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e)) from e


def parse_config(source=None, *, preset: str | None = None, overrides: dict | None = None) -> list[SimConfig]:
    """Build validated configs from a preset name, a JSON file, or a mapping.

    A config file holds one flat JSON object with :class:`SimConfig` keys or
    a list of such objects.  ``overrides`` (e.g. ``master_seed``) apply to
    every resulting config.
    """
    if preset is not None:
        try:
            configs = get_preset(preset).expand()
        except ValueError as e:
            raise ConfigError(str(e)) from e
        return [config_from_dict(c.to_dict(), overrides) for c in configs]
    if source is None:
        raise ConfigError("need a preset or a config file")
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            doc = json.loads(path.read_text())
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e.strerror}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: not valid JSON ({e})") from e
    else:
        doc = source
    if isinstance(doc, dict) and "configs" in doc:
        doc = doc["configs"]
    items = doc if isinstance(doc, list) else [doc]
    if not all(isinstance(i, dict) for i in items):
        raise ConfigError("config document must be an object or a list of objects")
    return [config_from_dict(i, overrides) for i in items]


def _rows(results):
    for r in results:
        c = r.config
        for p in r.points:
            yield {
                "scheme": c.scheme.value,
                "channel": c.channel.value,
                "cfo": c.cfo.value,
                "ebn0_db": repr(float(p.ebn0_db)),
                "trials": p.trials,
                "bit_errors": p.bit_errors,
                "block_errors": p.block_errors,
                "ber": repr(float(p.ber)),
                "bler": repr(float(p.bler)),
                "cfo_rmse": repr(float(p.cfo_rmse)),
            }


def results_to_csv(results) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in _rows(results):
        w.writerow(row)
    return buf.getvalue()


def _git_describe() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            capture_output=True, text=True, timeout=5, cwd=Path(__file__).parent,
        )
    except (OSError, subprocess.SubprocessError):
        return "unknown"
    return out.stdout.strip() or "unknown"


def results_to_json(results, wall_time: float | None = None) -> str:
    doc = {
        "git_describe": _git_describe(),
        "wall_time_s": wall_time,
        "stopping_rule": "per point: stop once target_block_errors block errors have been seen "
                         "after at least min_trials trials, or at max_trials",
        "grid_note": "Eb/N0 ranges are chosen to span the reported error-rate targets",
        "sweeps": [
            {
                "config": r.config.to_dict(),
                "seed": r.config.master_seed,
                "points": [
                    {k: (v if not isinstance(v, float) or math.isfinite(v) else None)
                     for k, v in vars(p).items()}
                    for p in r.points
                ],
            }
            for r in results
        ],
    }
    return json.dumps(doc, indent=2)


def emit_results(results, fmt: str, path, wall_time: float | None = None) -> Path:
    """Write sweeps as CSV or JSON to ``path``; returns the path written."""
    path = Path(path)
    if fmt == "csv":
        text = results_to_csv(results)
    elif fmt == "json":
        text = results_to_json(results, wall_time=wall_time)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise OSError(f"cannot write results to {path}: {e.strerror}") from e
    return path


@dataclass
class Curve:
    label: str
    ebn0_db: np.ndarray
    ber: np.ndarray
    bler: np.ndarray

    def rate(self, metric: str) -> np.ndarray:
        return getattr(self, metric)


def _curves_from_results(results) -> dict:
    return {r.config.label: r for r in results}


def load_curves(path) -> dict:
    """Read a CSV or JSON results file into ``label -> Curve``."""
    path = Path(path)
    text = path.read_text()
    rows = []
    if path.suffix == ".json":
        doc = json.loads(text)
        for sw in doc["sweeps"]:
            c = sw["config"]
            for p in sw["points"]:
                rows.append((f"{c['scheme']}/{c['channel']}/{c['cfo']}", p["ebn0_db"], p["ber"], p["bler"]))
    else:
        for r in csv.DictReader(io.StringIO(text)):
            rows.append((f"{r['scheme']}/{r['channel']}/{r['cfo']}",
                         float(r["ebn0_db"]), float(r["ber"]), float(r["bler"])))
    grouped: dict = {}
    for label, x, ber, bler in rows:
        grouped.setdefault(label, []).append((x, ber, bler))
    out = {}
    for label, pts in grouped.items():
        pts.sort()
        a = np.array(pts, dtype=float)
        out[label] = Curve(label, a[:, 0], a[:, 1], a[:, 2])
    return out


def gap_table(curves: dict, preset: str | None = None) -> list[dict]:
    """Measured vs reported gaps for every gap whose two curves are present."""
    rows = []
    for g in REPORTED_GAPS:
        if preset is not None and g.preset != preset:
            continue
        a, b = curves.get(g.curve_a), curves.get(g.curve_b)
        if a is None or b is None:
            missing = [lbl for lbl, cur in ((g.curve_a, a), (g.curve_b, b)) if cur is None]
            rows.append({"gap": g, "measured": None, "note": "missing curve: " + ", ".join(missing)})
            continue
        m = db_gap_at(a, b, g.target, g.metric)
        rows.append({"gap": g, "measured": m, "note": "" if m is not None else "no crossing"})
    return rows


def report_gaps(results, preset: str | None = None) -> str:
    """Text table of measured dB gaps next to the reported values."""
    curves = results if isinstance(results, dict) else _curves_from_results(results)
    lines = [f"{'gap':<50} {'metric':>6} {'target':>8} {'measured':>9} {'reported':>9}"]
    for row in gap_table(curves, preset):
        g = row["gap"]
        meas = f"{row['measured']:9.2f}" if row["measured"] is not None else f"{'-':>9}"
        line = f"{g.description:<50} {g.metric:>6} {g.target:>8.0e} {meas} {g.reported_db:9.2f}"
        if row["note"]:
            line += f"  ({row['note']})"
        lines.append(line)
    return "\n".join(lines)


def results_from_json(path) -> list[SweepResult]:
    """Rebuild full :class:`SweepResult` objects from a JSON results file."""
    doc = json.loads(Path(path).read_text())
    out = []
    for sw in doc["sweeps"]:
        cfg = config_from_dict(sw["config"])
        pts = [PointResult(**{k: (math.nan if v is None else v) for k, v in p.items()}) for p in sw["points"]]
        out.append(SweepResult(config=cfg, points=pts))
    return out
