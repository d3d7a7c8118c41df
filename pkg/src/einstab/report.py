"""Serialisation of reports to deterministic JSON and to plain text."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, is_dataclass

import numpy as np

from . import __version__, linalg, tensor, verdict
from .catalog import EINSTEIN_TOL, KAHLER_TOL, ManifoldModel
from .verdict import CriterionReport, StabilityReport

SCHEMA_ID = "einstab-report/1"

TOLERANCES = {
    "symmetry": tensor.SYMMETRY_TOL,
    "bianchi": tensor.BIANCHI_TOL,
    "einstein": EINSTEIN_TOL,
    "kahler_identity": KAHLER_TOL,
    "jacobi_off_diagonal": linalg.OFF_TOL,
    "jacobi_max_sweeps": linalg.MAX_SWEEPS,
    "equality_margin": verdict.EQUALITY_TOL,
}


def plain(obj):
    """Convert dataclasses, enums and numpy values into JSON-ready builtins."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: plain(v) for k, v in asdict(obj).items()}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _emit(obj, level: int, out: list[str]) -> None:
    pad = "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(k)}: ")
            _emit(v, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append("  " * level + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        if all(not isinstance(v, (dict, list)) for v in obj):
            out.append("[")
            for i, v in enumerate(obj):
                _emit(v, level, out)
                if i < len(obj) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _emit(v, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append("  " * level + "]")
    elif isinstance(obj, float):
        if not math.isfinite(obj):
            out.append("null")
        elif obj == int(obj) and abs(obj) < 1e16:
            out.append(f"{obj:.1f}")
        else:
            out.append(format(obj, ".17g"))
    else:
        out.append(json.dumps(obj))


def dumps(obj) -> str:
    """JSON text with every float written to 17 significant digits."""
    out: list[str] = []
    _emit(plain(obj), 0, out)
    return "".join(out) + "\n"


def model_summary(model: ManifoldModel) -> dict:
    return {
        "name": model.name,
        "dim": model.dim,
        "mu": model.mu,
        "volume": model.volume,
        "euler_char": model.euler_char,
        "kahler": model.complex_structure is not None,
        "symmetric": model.is_symmetric,
        "product_split": list(model.split) if model.split else None,
    }


def criterion_dict(c: CriterionReport) -> dict:
    d = plain(c)
    d["detail"] = plain(dict(sorted(c.detail.items())))
    return d


def stability_dict(rep: StabilityReport) -> dict:
    return {
        "overall": rep.overall.value,
        "criteria": [criterion_dict(c) for c in rep.criteria],
        "witness": None if rep.witness is None else {
            "h": plain(rep.witness.h),
            "quadratic_form_value": rep.witness.quadratic_form_value,
        },
        "spectra": plain(rep.spectra),
    }


def envelope(command: str, spec: dict | None, seed: int) -> dict:
    return {
        "schema": SCHEMA_ID,
        "tool": "einstab",
        "version": __version__,
        "command": command,
        "seed": seed,
        "spec": spec,
        "tolerances": dict(TOLERANCES),
    }


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return "-" if not math.isfinite(x) else f"{x:.10g}"
    return str(x)


def render_human(doc: dict) -> str:
    lines = [f"einstab {doc['version']}  ({doc['command']})"]
    m = doc.get("model")
    if m:
        lines.append(f"model  {m['name']}  n={m['dim']}  mu={_fmt(m['mu'])}  "
                     f"vol={_fmt(m['volume'])}  chi={_fmt(m['euler_char'])}")
    st = doc.get("stability")
    if st:
        lines.append(f"overall verdict: {st['overall']}")
        lines.append(f"  {'criterion':<22}{'threshold':>18}{'measured':>18}{'margin':>18}  contribution")
        for c in st["criteria"]:
            tag = " (advisory)" if c["advisory"] else ""
            lines.append(f"  {c['criterion_id']:<22}{_fmt(c['threshold']):>18}{_fmt(c['measured']):>18}"
                         f"{_fmt(c['margin']):>18}  {c['verdict_contribution']}{tag}")
        if st["witness"]:
            lines.append(f"  instability witness: quadratic form {_fmt(st['witness']['quadratic_form_value'])}")
    gb = doc.get("gauss_bonnet")
    if gb:
        lines.append(f"Euler characteristic (n={gb['dim']}): pfaffian {_fmt(gb['chi_pfaffian'])}, "
                     f"explicit {_fmt(gb['chi_explicit'])}, expected {_fmt(gb['chi_expected'])}")
        for key in ("chi_einstein", "chi_weyl"):
            if gb.get(key) is not None:
                lines.append(f"  {key}: {_fmt(gb[key])}")
    val = doc.get("validation")
    if val:
        for c in val:
            lines.append(f"  check {c['name']:<18} {'ok' if c['passed'] else 'FAIL'}  residual {_fmt(c['residual'])}")
    sp = doc.get("spectra")
    if sp:
        lines.append("spectra  " + "  ".join(f"{k}={_fmt(v)}" for k, v in sp.items()))
    ks = doc.get("kahler_spectra")
    if ks:
        lines.append("kahler   " + "  ".join(f"{k}={_fmt(v)}" for k, v in ks.items()))
    st = doc.get("selftest")
    if st:
        lines.append(f"selftest: {st['passed']} passed, {st['failed']} failed")
        for c in st["checks"]:
            if not c["passed"]:
                lines.append(f"  FAIL {c['name']}: {_fmt(c['value'])} > {_fmt(c['tolerance'])}")
    if "catalog" in doc:
        for name in doc["catalog"]:
            lines.append(f"  {name}")
    return "\n".join(lines) + "\n"
